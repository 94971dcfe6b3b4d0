// Shared value types for the advwave library.
// Natural units throughout: hbar = c = eps0 = 1.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace advwave {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Thrown when a requested grid or step cannot resolve the integrand.
class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a computation would exceed a configured memory budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Vec3 {
    double x = 0, y = 0, z = 0;

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
    friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
    friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
    friend Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
    friend Vec3 operator*(Vec3 a, double s) { return a *= s; }
    friend Vec3 operator*(double s, Vec3 a) { return a *= s; }
    friend Vec3 operator/(Vec3 a, double s) { return a *= (1.0 / s); }
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double norm2(const Vec3& a) { return dot(a, a); }

struct CplxVec3 {
    cplx x{}, y{}, z{};

    CplxVec3() = default;
    CplxVec3(cplx a, cplx b, cplx c) : x(a), y(b), z(c) {}
    explicit CplxVec3(const Vec3& v) : x(v.x), y(v.y), z(v.z) {}

    cplx operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    cplx& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    CplxVec3& operator+=(const CplxVec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    CplxVec3& operator-=(const CplxVec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    CplxVec3& operator*=(cplx s) { x *= s; y *= s; z *= s; return *this; }
    friend CplxVec3 operator+(CplxVec3 a, const CplxVec3& b) { return a += b; }
    friend CplxVec3 operator-(CplxVec3 a, const CplxVec3& b) { return a -= b; }
    friend CplxVec3 operator*(CplxVec3 a, cplx s) { return a *= s; }
    friend CplxVec3 operator*(cplx s, CplxVec3 a) { return a *= s; }
    friend bool operator==(const CplxVec3&, const CplxVec3&) = default;

    CplxVec3 conj() const { return {std::conj(x), std::conj(y), std::conj(z)}; }
    Vec3 real() const { return {x.real(), y.real(), z.real()}; }
    Vec3 imag() const { return {x.imag(), y.imag(), z.imag()}; }
    bool finite() const {
        return std::isfinite(x.real()) && std::isfinite(x.imag()) && std::isfinite(y.real()) &&
               std::isfinite(y.imag()) && std::isfinite(z.real()) && std::isfinite(z.imag());
    }
};

/// Bilinear product sum_i a_i b_i (no conjugation).
inline cplx dotu(const CplxVec3& a, const CplxVec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
/// Hermitian product sum_i conj(a_i) b_i.
inline cplx dotc(const CplxVec3& a, const CplxVec3& b) {
    return std::conj(a.x) * b.x + std::conj(a.y) * b.y + std::conj(a.z) * b.z;
}
inline cplx dotu(const Vec3& a, const CplxVec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline CplxVec3 cross(const CplxVec3& a, const CplxVec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(const CplxVec3& a) { return dotc(a, a).real(); }

/// Dense 3x3 tensors, row-major.
struct RealMat3 {
    std::array<double, 9> a{};
    double operator()(int i, int j) const { return a[3 * i + j]; }
    double& operator()(int i, int j) { return a[3 * i + j]; }
    double trace() const { return a[0] + a[4] + a[8]; }
};

struct CplxMat3 {
    std::array<cplx, 9> a{};
    cplx operator()(int i, int j) const { return a[3 * i + j]; }
    cplx& operator()(int i, int j) { return a[3 * i + j]; }
    cplx trace() const { return a[0] + a[4] + a[8]; }
    CplxMat3& operator+=(const CplxMat3& o) {
        for (int k = 0; k < 9; ++k) a[k] += o.a[k];
        return *this;
    }
    friend CplxMat3 operator+(CplxMat3 l, const CplxMat3& r) { return l += r; }
    bool is_zero() const {
        for (const auto& v : a)
            if (v != cplx{}) return false;
        return true;
    }
};

/// u_i v_j
inline CplxMat3 outer(const CplxVec3& u, const CplxVec3& v) {
    CplxMat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = u[i] * v[j];
    return m;
}

enum class FieldKind { Electric, Magnetic };

/// (-1)^alpha with alpha = 0 for Electric, 1 for Magnetic.
constexpr int field_sign(FieldKind k) { return k == FieldKind::Electric ? 1 : -1; }

/// Two-level emitter. Build through the factories so the consistency flag is right.
struct DipoleParams {
    double omega0 = 1;
    double gamma = 1;
    Vec3 dvec{0, 0, 1};
    bool consistent = true;

    /// gamma derived from |d|: omega0^3 |d|^2 / (3 pi).
    static DipoleParams from_dipole(double omega0, const Vec3& d);
    /// |d| scaled so that the golden-rule rate equals gamma; direction kept.
    static DipoleParams from_rate(double omega0, double gamma, const Vec3& direction);
    /// gamma supplied independently of d. Flagged consistent only if it matches.
    static DipoleParams independent(double omega0, double gamma, const Vec3& d);

    double golden_rule_rate() const { return omega0 * omega0 * omega0 * norm2(dvec) / (3 * kPi); }
    double markov_ratio() const { return gamma / omega0; }
    /// Non-empty when gamma/omega0 exceeds 0.1.
    std::optional<std::string> markov_warning() const;
};

struct Event {
    double t = 0;
    Vec3 x{};

    double r() const { return norm(x); }
    double t_r() const { return t - r(); }
    double t_a() const { return t + r(); }
};

double retarded_time(const Event& ev);
double advanced_time(const Event& ev);

enum class GreensKind { Retarded, Advanced };

/// Default on-cone tolerance 1e-9 * max(1, |t|, |t'|).
double default_cone_tol(double t, double tp);

/// True when the delta of G+ (retarded) or G- (advanced) fires for field point
/// `ev` = (t, x) and source point `evp` = (t', x'):
/// |(t' - t) + |x - x'|| <= tol (retarded) or |(t' - t) - |x - x'|| <= tol (advanced).
/// Coincident events throw std::invalid_argument.
bool greens_support(GreensKind kind, const Event& ev, const Event& evp,
                    std::optional<double> tol = std::nullopt);

}  // namespace advwave
