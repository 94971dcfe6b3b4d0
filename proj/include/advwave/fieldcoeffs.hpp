// Spatial coefficients of the dipole source fields.
//
// For a transition of frequency w with real dipole d at position x (r = |x|,
// n = x/r):
//   E(x) = (i w/(4 pi r^2) + 1/(4 pi r^3)) [3 n(n.d) - d] + w^2/(4 pi r) [d - n(n.d)]
//   B(x) = (w^2/(4 pi r) - i w/(4 pi r^2)) (n x d)
// The 1/r^3, 1/r^2 and 1/r structures are kept separately.
#pragma once

#include <vector>

#include "advwave/core.hpp"

namespace advwave {

struct CoeffSet {
    Vec3 position{};
    double omega = 0;   // transition frequency used for this set
    CplxVec3 eNear{};   // 1/r^3
    CplxVec3 eInter{};  // 1/r^2
    CplxVec3 eRad{};    // 1/r
    CplxVec3 bInter{};  // 1/r^2
    CplxVec3 bRad{};    // 1/r
    CplxVec3 eCoeff{};  // eNear + eInter + eRad
    CplxVec3 bCoeff{};  // bInter + bRad
};

struct LevelScheme {
    std::vector<double> energies;
    std::vector<Vec3> dipoles;  // n*n row-major, symmetric, diagonal unused
    int emitterLevel = 0;

    explicit LevelScheme(std::vector<double> levels, int emitter = 0);

    int size() const { return static_cast<int>(energies.size()); }
    /// omega_nm = omega_n - omega_m
    double omega(int n, int m) const { return energies.at(n) - energies.at(m); }
    const Vec3& dipole(int n, int m) const;
    /// Sets d_nm and d_mn together.
    void set_dipole(int n, int m, const Vec3& d);
};

/// Two-level coefficients. |x| = 0 throws std::domain_error.
CoeffSet coeffs_two_level(const Vec3& x, const DipoleParams& p);

/// Same structure for an arbitrary frequency and dipole.
CoeffSet coeffs_for(const Vec3& x, double omega, const Vec3& d);

struct TransitionCoeffs {
    int lower = 0;
    int upper = 0;
    CoeffSet coeffs;
};

/// One coefficient set per level pair n < m, using the pair's frequency
/// (upper minus lower energy) and d_nm. Needs at least two levels.
std::vector<TransitionCoeffs> coeffs_multilevel(const LevelScheme& scheme, const Vec3& x);

/// tau_ij(z) = (delta - n n) sin z/z + (delta - 3 n n)(cos z/z^2 - sin z/z^3).
/// Series expansion below z = 0.05; z = 0 gives (2/3) delta.
RealMat3 tau_kernel(double omega_x, const Vec3& xhat);

}  // namespace advwave
