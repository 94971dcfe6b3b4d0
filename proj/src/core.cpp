#include "advwave/core.hpp"

#include <algorithm>
#include <sstream>

namespace advwave {

namespace {
void require_positive(double v, const char* what) {
    if (!(v > 0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(what) + " must be positive and finite");
}
}  // namespace

DipoleParams DipoleParams::from_dipole(double omega0, const Vec3& d) {
    require_positive(omega0, "omega0");
    DipoleParams p;
    p.omega0 = omega0;
    p.dvec = d;
    p.gamma = p.golden_rule_rate();
    require_positive(p.gamma, "gamma (|d| = 0?)");
    p.consistent = true;
    return p;
}

DipoleParams DipoleParams::from_rate(double omega0, double gamma, const Vec3& direction) {
    require_positive(omega0, "omega0");
    require_positive(gamma, "gamma");
    double n = norm(direction);
    require_positive(n, "dipole direction norm");
    double dmag = std::sqrt(3 * kPi * gamma / (omega0 * omega0 * omega0));
    DipoleParams p;
    p.omega0 = omega0;
    p.gamma = gamma;
    p.dvec = direction * (dmag / n);
    p.consistent = true;
    return p;
}

DipoleParams DipoleParams::independent(double omega0, double gamma, const Vec3& d) {
    require_positive(omega0, "omega0");
    require_positive(gamma, "gamma");
    DipoleParams p;
    p.omega0 = omega0;
    p.gamma = gamma;
    p.dvec = d;
    p.consistent = std::abs(p.golden_rule_rate() - gamma) <= 1e-12 * gamma;
    return p;
}

std::optional<std::string> DipoleParams::markov_warning() const {
    if (markov_ratio() <= 0.1) return std::nullopt;
    std::ostringstream os;
    os << "gamma/omega0 = " << markov_ratio() << " exceeds 0.1; Markov closed forms are unreliable";
    return os.str();
}

double retarded_time(const Event& ev) { return ev.t_r(); }
double advanced_time(const Event& ev) { return ev.t_a(); }

double default_cone_tol(double t, double tp) {
    return 1e-9 * std::max({1.0, std::abs(t), std::abs(tp)});
}

bool greens_support(GreensKind kind, const Event& ev, const Event& evp, std::optional<double> tol) {
    double R = norm(ev.x - evp.x);
    if (R == 0 && ev.t == evp.t)
        throw std::invalid_argument("greens_support: coincident events are degenerate");
    double eps = tol.value_or(default_cone_tol(ev.t, evp.t));
    double arg = (evp.t - ev.t) + (kind == GreensKind::Retarded ? R : -R);
    return std::abs(arg) <= eps;
}

}  // namespace advwave
