// Two-time, two-point field correlation tensors of the decaying dipole in |e,0>.
//
// Notation: X = coefficient vector of field kind kX at x, Y = that of kY at x'.
// t_r, t_a are the retarded/advanced times of (t, x); primes for (t', x').
//
//   G_ij   = 2 X_i Y*_j th(t_r) th(t_r') <s+(t_r) s-(t_r')>
//   <D>_ij = sX X_i Y_j th(t_r' - t_a) th(t_r') th(t_a) <[s-(t_a), s+(t_r')]>
//          + sY X*_i Y*_j th(t_r - t_a') th(t_r) th(t_a') <[s-(t_r), s+(t_a')]>
//   C      = G + <D>
//
// Gates use th(0) = 1. The two purely retarded gates inside the vacuum-source
// pieces, th(t_r' - t_r) and th(t_r - t_r'), take the value 1/2 at equality so
// that the pieces sum to <D> on the boundary as well.
#pragma once

#include "advwave/core.hpp"
#include "advwave/fieldcoeffs.hpp"

namespace advwave {

enum class CoeffMode { Full, Radiative };
enum class CorrLabel { G, DeltaExpect, C, SourceSource, VacSource, SourceVac };
enum class VacSourceDirection { VacSource, SourceVac };

struct CorrTensor {
    CplxMat3 values;
    FieldKind kindX = FieldKind::Electric;
    FieldKind kindY = FieldKind::Electric;
    Event evX{};
    Event evY{};
    CorrLabel label = CorrLabel::G;

    cplx trace() const { return values.trace(); }
};

/// Correlator for fixed kinds and positions; evaluates at arbitrary (t, t')
/// without recomputing coefficients. Suitable for scans.
class CorrKernel {
public:
    CorrKernel(FieldKind kX, FieldKind kY, const Vec3& x, const Vec3& xp, const DipoleParams& p,
               CoeffMode mode = CoeffMode::Full);

    const CplxVec3& X() const { return X_; }
    const CplxVec3& Y() const { return Y_; }

    /// Scalar time factors multiplying the coefficient structures.
    cplx glauber_factor(double t, double tp) const;        // multiplies X_i Y*_j
    cplx delta_first_factor(double t, double tp) const;    // multiplies X_i Y_j (sign included)
    cplx delta_second_factor(double t, double tp) const;   // multiplies X*_i Y*_j (sign included)
    cplx source_source_factor(double t, double tp) const;  // multiplies X*_i Y_j
    /// Retarded part of a vacuum-source piece, multiplies X*_i Y_j.
    cplx vacsource_retarded_factor(VacSourceDirection dir, double t, double tp) const;

    CplxMat3 glauber(double t, double tp) const;
    CplxMat3 delta(double t, double tp) const;
    CplxMat3 c(double t, double tp) const { return glauber(t, tp) + delta(t, tp); }
    CplxMat3 source_source(double t, double tp) const;
    CplxMat3 vac_source(VacSourceDirection dir, double t, double tp) const;

    cplx glauber_trace(double t, double tp) const { return glauber_factor(t, tp) * tr_XYc_; }
    cplx delta_trace(double t, double tp) const {
        return delta_first_factor(t, tp) * tr_XY_ + delta_second_factor(t, tp) * std::conj(tr_XY_);
    }
    cplx c_trace(double t, double tp) const { return glauber_trace(t, tp) + delta_trace(t, tp); }

    /// sum_ij a_i b_j M_ij for the G and <D> tensors.
    cplx glauber_contract(const Vec3& a, const Vec3& b, double t, double tp) const;
    cplx delta_contract(const Vec3& a, const Vec3& b, double t, double tp) const;

private:
    FieldKind kX_, kY_;
    double rx_, ry_;
    DipoleParams p_;
    CplxVec3 X_, Y_;
    cplx tr_XYc_;  // sum X_i Y*_i
    cplx tr_XY_;   // sum X_i Y_i
};

CorrTensor glauber_tensor(FieldKind kX, FieldKind kY, const Event& e, const Event& ep, const DipoleParams& p,
                          CoeffMode mode = CoeffMode::Full);
CorrTensor delta_expect_tensor(FieldKind kX, FieldKind kY, const Event& e, const Event& ep, const DipoleParams& p,
                               CoeffMode mode = CoeffMode::Full);
CorrTensor c_tensor(FieldKind kX, FieldKind kY, const Event& e, const Event& ep, const DipoleParams& p,
                    CoeffMode mode = CoeffMode::Full);
/// X*_i Y_j th(t_r) th(t_r') <[s-(t_r), s+(t_r')]>. For t_r > t_r' the
/// expectation is conj(<[s-(t_r'), s+(t_r)]>).
CorrTensor source_source_commutator(FieldKind kX, FieldKind kY, const Event& e, const Event& ep,
                                    const DipoleParams& p, CoeffMode mode = CoeffMode::Full);
CorrTensor vac_source_commutator_expect(VacSourceDirection dir, FieldKind kX, FieldKind kY, const Event& e,
                                        const Event& ep, const DipoleParams& p, CoeffMode mode = CoeffMode::Full);

/// Free-field Wightman function sum_i <0|E_i(t,x) E_i(t',x')|0>, regularised by
/// e^{-w/cutoff}, by direct numerical quadrature over k. cutoff <= 0 throws.
cplx vacuum_wightman_trace(const Event& e, const Event& ep, double cutoffFreq);

}  // namespace advwave
