#include "advwave/atomdyn.hpp"

namespace advwave {

namespace {

void check_times(double u, double v, const char* fn) {
    if (!(u >= 0) || !(v >= 0))
        throw std::invalid_argument(std::string(fn) + ": times must be non-negative");
}

void check_order(double u, double v, const char* fn) {
    check_times(u, v, fn);
    if (u > v) throw std::domain_error(std::string(fn) + ": defined only for u <= v");
}

// e^{(-i w0 - G/2) u} e^{(i w0 - G/2) v}
cplx lowering_raising_phase(double u, double v, const DipoleParams& p) {
    return std::exp(-0.5 * p.gamma * (u + v)) * std::polar(1.0, p.omega0 * (v - u));
}

}  // namespace

double sigma_z_expect(double t, const DipoleParams& p) {
    if (!(t >= 0)) throw std::invalid_argument("sigma_z_expect: t must be non-negative");
    return 2 * std::exp(-p.gamma * t) - 1;
}

cplx corr_plus_minus(double u, double v, const DipoleParams& p) {
    check_times(u, v, "corr_plus_minus");
    return std::exp(-0.5 * p.gamma * (u + v)) * std::polar(1.0, p.omega0 * (u - v));
}

cplx corr_minus_plus(double u, double v, const DipoleParams& p) {
    check_order(u, v, "corr_minus_plus");
    return lowering_raising_phase(u, v, p) * std::expm1(p.gamma * u);
}

cplx commutator_expect(double u, double v, const DipoleParams& p) {
    check_order(u, v, "commutator_expect");
    return lowering_raising_phase(u, v, p) * (std::exp(p.gamma * u) - 2);
}

}  // namespace advwave
