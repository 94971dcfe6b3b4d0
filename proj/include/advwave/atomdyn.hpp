// Closed-form expectation values of a spontaneously decaying two-level atom
// prepared in |e,0>. Times are in the atom's own clock (t = 0 at preparation).
#pragma once

#include "advwave/core.hpp"

namespace advwave {

enum class AtomCorrKind { PlusMinus, MinusPlus, Commutator, PopulationZ };

/// <sigma^z(t)> = 2 e^{-Gamma t} - 1.
double sigma_z_expect(double t, const DipoleParams& p);

/// <sigma^+(u) sigma^-(v)> = e^{(i w0 - Gamma/2) u} e^{(-i w0 - Gamma/2) v}.
cplx corr_plus_minus(double u, double v, const DipoleParams& p);

/// <sigma^-(u) sigma^+(v)> for 0 <= u <= v:
/// e^{(-i w0 - Gamma/2) u} e^{(i w0 - Gamma/2) v} (e^{Gamma u} - 1).
/// u > v throws std::domain_error.
cplx corr_minus_plus(double u, double v, const DipoleParams& p);

/// <[sigma^-(u), sigma^+(v)]> for 0 <= u <= v:
/// e^{(-i w0 - Gamma/2) u} e^{(i w0 - Gamma/2) v} (e^{Gamma u} - 2).
/// u > v throws std::domain_error.
cplx commutator_expect(double u, double v, const DipoleParams& p);

}  // namespace advwave
