#include "advwave/correlations.hpp"

#include <algorithm>

#include "advwave/atomdyn.hpp"
#include "advwave/quadrature.hpp"

namespace advwave {

namespace {

inline double step(double s) { return s >= 0 ? 1.0 : 0.0; }
inline double step_half(double s) { return s > 0 ? 1.0 : (s == 0 ? 0.5 : 0.0); }

// <[s-(u), s+(v)]> for any ordering of non-negative u, v.
cplx commutator_any(double u, double v, const DipoleParams& p) {
    return u <= v ? commutator_expect(u, v, p) : std::conj(commutator_expect(v, u, p));
}

CplxVec3 pick(const CoeffSet& c, FieldKind k, CoeffMode mode) {
    if (k == FieldKind::Electric) return mode == CoeffMode::Full ? c.eCoeff : c.eRad;
    return mode == CoeffMode::Full ? c.bCoeff : c.bRad;
}

}  // namespace

CorrKernel::CorrKernel(FieldKind kX, FieldKind kY, const Vec3& x, const Vec3& xp, const DipoleParams& p,
                       CoeffMode mode)
    : kX_(kX), kY_(kY), rx_(norm(x)), ry_(norm(xp)), p_(p) {
    X_ = pick(coeffs_two_level(x, p), kX, mode);
    Y_ = pick(coeffs_two_level(xp, p), kY, mode);
    tr_XYc_ = dotu(X_, Y_.conj());
    tr_XY_ = dotu(X_, Y_);
}

cplx CorrKernel::glauber_factor(double t, double tp) const {
    double tr = t - rx_, trp = tp - ry_;
    if (tr < 0 || trp < 0) return {};
    return 2.0 * corr_plus_minus(tr, trp, p_);
}

cplx CorrKernel::delta_first_factor(double t, double tp) const {
    double ta = t + rx_, trp = tp - ry_;
    if (step(trp - ta) * step(trp) * step(ta) == 0) return {};
    return double(field_sign(kX_)) * commutator_expect(ta, trp, p_);
}

cplx CorrKernel::delta_second_factor(double t, double tp) const {
    double tr = t - rx_, tap = tp + ry_;
    if (step(tr - tap) * step(tr) * step(tap) == 0) return {};
    return double(field_sign(kY_)) * std::conj(commutator_expect(tap, tr, p_));
}

cplx CorrKernel::source_source_factor(double t, double tp) const {
    double tr = t - rx_, trp = tp - ry_;
    if (tr < 0 || trp < 0) return {};
    return commutator_any(tr, trp, p_);
}

cplx CorrKernel::vacsource_retarded_factor(VacSourceDirection dir, double t, double tp) const {
    double tr = t - rx_, trp = tp - ry_;
    if (tr < 0 || trp < 0) return {};
    double gate = dir == VacSourceDirection::VacSource ? step_half(trp - tr) : step_half(tr - trp);
    if (gate == 0) return {};
    return -gate * commutator_any(tr, trp, p_);
}

CplxMat3 CorrKernel::glauber(double t, double tp) const {
    cplx f = glauber_factor(t, tp);
    if (f == cplx{}) return {};
    return outer(X_ * f, Y_.conj());
}

CplxMat3 CorrKernel::delta(double t, double tp) const {
    CplxMat3 m;
    cplx f1 = delta_first_factor(t, tp);
    cplx f2 = delta_second_factor(t, tp);
    if (f1 != cplx{}) m += outer(X_ * f1, Y_);
    if (f2 != cplx{}) m += outer(X_.conj() * f2, Y_.conj());
    return m;
}

CplxMat3 CorrKernel::source_source(double t, double tp) const {
    cplx f = source_source_factor(t, tp);
    if (f == cplx{}) return {};
    return outer(X_.conj() * f, Y_);
}

CplxMat3 CorrKernel::vac_source(VacSourceDirection dir, double t, double tp) const {
    CplxMat3 m;
    cplx fr = vacsource_retarded_factor(dir, t, tp);
    if (fr != cplx{}) m += outer(X_.conj() * fr, Y_);
    if (dir == VacSourceDirection::VacSource) {
        cplx f1 = delta_first_factor(t, tp);
        if (f1 != cplx{}) m += outer(X_ * f1, Y_);
    } else {
        cplx f2 = delta_second_factor(t, tp);
        if (f2 != cplx{}) m += outer(X_.conj() * f2, Y_.conj());
    }
    return m;
}

cplx CorrKernel::glauber_contract(const Vec3& a, const Vec3& b, double t, double tp) const {
    cplx f = glauber_factor(t, tp);
    if (f == cplx{}) return {};
    return f * dotu(a, X_) * dotu(b, Y_.conj());
}

cplx CorrKernel::delta_contract(const Vec3& a, const Vec3& b, double t, double tp) const {
    cplx f1 = delta_first_factor(t, tp);
    cplx f2 = delta_second_factor(t, tp);
    cplx s{};
    if (f1 != cplx{}) s += f1 * dotu(a, X_) * dotu(b, Y_);
    if (f2 != cplx{}) s += f2 * std::conj(dotu(a, X_) * dotu(b, Y_));
    return s;
}

namespace {

CorrTensor make(CorrLabel label, FieldKind kX, FieldKind kY, const Event& e, const Event& ep, CplxMat3 v) {
    CorrTensor c;
    c.values = v;
    c.kindX = kX;
    c.kindY = kY;
    c.evX = e;
    c.evY = ep;
    c.label = label;
    return c;
}

}  // namespace

CorrTensor glauber_tensor(FieldKind kX, FieldKind kY, const Event& e, const Event& ep, const DipoleParams& p,
                          CoeffMode mode) {
    CorrKernel k(kX, kY, e.x, ep.x, p, mode);
    return make(CorrLabel::G, kX, kY, e, ep, k.glauber(e.t, ep.t));
}

CorrTensor delta_expect_tensor(FieldKind kX, FieldKind kY, const Event& e, const Event& ep, const DipoleParams& p,
                               CoeffMode mode) {
    CorrKernel k(kX, kY, e.x, ep.x, p, mode);
    return make(CorrLabel::DeltaExpect, kX, kY, e, ep, k.delta(e.t, ep.t));
}

CorrTensor c_tensor(FieldKind kX, FieldKind kY, const Event& e, const Event& ep, const DipoleParams& p,
                    CoeffMode mode) {
    CorrKernel k(kX, kY, e.x, ep.x, p, mode);
    return make(CorrLabel::C, kX, kY, e, ep, k.c(e.t, ep.t));
}

CorrTensor source_source_commutator(FieldKind kX, FieldKind kY, const Event& e, const Event& ep,
                                    const DipoleParams& p, CoeffMode mode) {
    CorrKernel k(kX, kY, e.x, ep.x, p, mode);
    return make(CorrLabel::SourceSource, kX, kY, e, ep, k.source_source(e.t, ep.t));
}

CorrTensor vac_source_commutator_expect(VacSourceDirection dir, FieldKind kX, FieldKind kY, const Event& e,
                                        const Event& ep, const DipoleParams& p, CoeffMode mode) {
    CorrKernel k(kX, kY, e.x, ep.x, p, mode);
    auto label = dir == VacSourceDirection::VacSource ? CorrLabel::VacSource : CorrLabel::SourceVac;
    return make(label, kX, kY, e, ep, k.vac_source(dir, e.t, ep.t));
}

cplx vacuum_wightman_trace(const Event& e, const Event& ep, double cutoff) {
    if (!(cutoff > 0) || !std::isfinite(cutoff))
        throw std::invalid_argument("vacuum_wightman_trace: cutoff frequency must be positive");
    double tau = e.t - ep.t;
    double R = norm(e.x - ep.x);
    double wmax = 60 * cutoff;
    double panelWidth = std::min(0.5 * cutoff, 1.0 / (std::abs(tau) + R + 1e-300));
    long panels = static_cast<long>(std::ceil(wmax / panelWidth));
    if (panels > 400000) throw ResolutionError("vacuum_wightman_trace: |t - t'| + |x - x'| too large for the cutoff");

    // Polarisation sum gives 2; d^3k = w^2 dw dphi dmu with mu the cosine to (x - x').
    // Prefactor w / (2 (2 pi)^3) * 2 * 2 pi (phi) = w / (4 pi^2).
    const auto& g = quad::gauss_legendre(16);
    cplx sum{};
    for (long pi = 0; pi < panels; ++pi) {
        double a = pi * panelWidth, b = std::min(wmax, a + panelWidth);
        if (a >= wmax) break;
        double h = b - a, mid = 0.5 * (a + b);
        for (int k = 0; k < 16; ++k) {
            double w = mid + 0.5 * h * g.nodes[k];
            int nmu = 32 * (1 + static_cast<int>(std::ceil((16 + w * R) / 32)));
            const auto& gm = quad::gauss_legendre(nmu);
            cplx ang{};
            for (int j = 0; j < nmu; ++j) ang += gm.weights[j] * std::polar(1.0, w * R * gm.nodes[j]);
            double radial = w * w * w * std::exp(-w / cutoff) / (4 * kPi * kPi);
            sum += (0.5 * h * g.weights[k] * radial) * std::polar(1.0, -w * tau) * ang;
        }
    }
    return sum;
}

}  // namespace advwave
