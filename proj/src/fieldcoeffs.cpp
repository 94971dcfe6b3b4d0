#include "advwave/fieldcoeffs.hpp"

namespace advwave {

LevelScheme::LevelScheme(std::vector<double> levels, int emitter)
    : energies(std::move(levels)), dipoles(energies.size() * energies.size()), emitterLevel(emitter) {
    if (energies.empty()) throw std::invalid_argument("LevelScheme: empty scheme");
    if (emitter < 0 || emitter >= size()) throw std::invalid_argument("LevelScheme: emitter index out of range");
}

const Vec3& LevelScheme::dipole(int n, int m) const {
    if (n < 0 || m < 0 || n >= size() || m >= size()) throw std::out_of_range("LevelScheme::dipole");
    return dipoles[static_cast<std::size_t>(n * size() + m)];
}

void LevelScheme::set_dipole(int n, int m, const Vec3& d) {
    if (n < 0 || m < 0 || n >= size() || m >= size()) throw std::out_of_range("LevelScheme::set_dipole");
    if (n == m) throw std::invalid_argument("LevelScheme::set_dipole: diagonal element");
    dipoles[static_cast<std::size_t>(n * size() + m)] = d;
    dipoles[static_cast<std::size_t>(m * size() + n)] = d;
}

CoeffSet coeffs_for(const Vec3& x, double w, const Vec3& d) {
    double r = norm(x);
    if (!(r > 0)) throw std::domain_error("field coefficients are singular at x = 0");
    Vec3 n{x.x / r, x.y / r, x.z / r};
    double nd = dot(n, d);
    Vec3 longi = 3 * nd * n - d;
    Vec3 trans = d - nd * n;
    Vec3 nxd = cross(n, d);
    double f = 1 / (4 * kPi * r);

    CoeffSet c;
    c.position = x;
    c.omega = w;
    c.eNear = CplxVec3(longi) * cplx(f / (r * r), 0);
    c.eInter = CplxVec3(longi) * cplx(0, f * w / r);
    c.eRad = CplxVec3(trans) * cplx(f * w * w, 0);
    c.bInter = CplxVec3(nxd) * cplx(0, -f * w / r);
    c.bRad = CplxVec3(nxd) * cplx(f * w * w, 0);
    c.eCoeff = c.eNear + c.eInter + c.eRad;
    c.bCoeff = c.bInter + c.bRad;
    return c;
}

CoeffSet coeffs_two_level(const Vec3& x, const DipoleParams& p) { return coeffs_for(x, p.omega0, p.dvec); }

std::vector<TransitionCoeffs> coeffs_multilevel(const LevelScheme& scheme, const Vec3& x) {
    if (scheme.size() < 2) throw std::invalid_argument("coeffs_multilevel: scheme needs at least two levels");
    std::vector<TransitionCoeffs> out;
    for (int n = 0; n < scheme.size(); ++n)
        for (int m = n + 1; m < scheme.size(); ++m) {
            double w = scheme.omega(m, n);
            int lo = w > 0 ? n : m;
            int hi = w > 0 ? m : n;
            if (w == 0) throw std::invalid_argument("coeffs_multilevel: degenerate level pair");
            out.push_back({lo, hi, coeffs_for(x, std::abs(w), scheme.dipole(n, m))});
        }
    return out;
}

RealMat3 tau_kernel(double z, const Vec3& xhat) {
    if (!(z >= 0)) throw std::invalid_argument("tau_kernel: omega_x must be non-negative");
    double j0, j1z;  // sin z/z and (sin z/z^3 - cos z/z^2)
    if (z < 0.05) {
        double z2 = z * z;
        j0 = 1 - z2 / 6 * (1 - z2 / 20 * (1 - z2 / 42));
        j1z = 1.0 / 3 - z2 / 30 + z2 * z2 / 840 - z2 * z2 * z2 / 45360;
    } else {
        double s = std::sin(z), c = std::cos(z);
        j0 = s / z;
        j1z = (s / z - c) / (z * z);
    }
    Vec3 n = xhat / norm(xhat);
    RealMat3 t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double dij = i == j ? 1.0 : 0.0;
            double nn = n[i] * n[j];
            t(i, j) = (dij - nn) * j0 - (dij - 3 * nn) * j1z;
        }
    return t;
}

}  // namespace advwave
