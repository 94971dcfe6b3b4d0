// Brute-force cross-checks.
//
// Wigner-Weisskopf bath: a uniform grid of discrete modes around w0 coupled to
// the atom under the rotating-wave approximation. Excitation number is
// conserved, so |e,0> evolves inside N = 1 and sigma^+ applied to it lands in
// N = 2. Amplitudes are stored in the frame rotating at w0 (every N = 1 state
// carries e^{-i w0 t}, every N = 2 state e^{-2 i w0 t}).
//
// Also here: quadrature checks of the Markov delta kernel, the endpoint
// half-weight rule and the angular reduction to tau_ij.
#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "advwave/atomdyn.hpp"
#include "advwave/core.hpp"
#include "advwave/parallel.hpp"

namespace advwave {

class NormDriftError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SpectralDensity {
    Flat,   // g_k^2 = Gamma dw / (2 pi)
    Cubic,  // flat value times (w_k / w0)^3; non-Markovian probe
};

enum class GridPolicy {
    Strict,      // count >= 200 and span >= 50 Gamma
    Permissive,  // any count >= 2, span > 0; for resolution studies
};

struct ModeGrid {
    std::vector<double> freqs;      // midpoints w0 - W + (k + 1/2) dw, ascending
    std::vector<double> couplings;  // g_k
    double omegaMin = 0;            // band edges w0 -+ W
    double omegaMax = 0;
    double spacing = 0;             // dw
    double omega0 = 0;
    int count = 0;
    double span() const { return omegaMax - omegaMin; }
    /// Index range [lo, hi) of modes with |w_k - w0| <= halfWidth.
    std::pair<int, int> window(double halfWidth) const;
};

/// Uniform grid of `count` modes over a band of total width spanGamma * Gamma
/// centred on w0.
ModeGrid build_grid(const DipoleParams& p, int count, double spanGamma, SpectralDensity density = SpectralDensity::Flat,
                    GridPolicy policy = GridPolicy::Strict);

struct SectorState {
    double time = 0;
    cplx amp_e0{};
    std::vector<cplx> amp_g1;  // per mode
    std::vector<cplx> amp_e1;  // per mode, N = 2 sector
    std::vector<cplx> amp_g2;  // unordered pairs a <= b of window modes, packed by rows
    int windowLo = 0;          // first mode index of the pair window
    int windowCount = 0;       // number of modes in the pair window

    /// |e,0> at t = 0.
    static SectorState excited(const ModeGrid& grid);
    bool has_n2() const { return !amp_e1.empty(); }
    double norm2_n1() const;
    double norm2_n2() const;
};

struct OracleOptions {
    double n2HalfWidthGamma = 25;      // pair window half-width in units of Gamma
    double memoryBudgetBytes = 512e6;  // N = 2 sector budget, state plus RK4 stages
    double normDriftTol = 1e-8;
    Exec exec = Exec::Parallel;
};

/// Largest step accepted by propagate: 0.02 / (w_max - w_min).
double max_oracle_step(const ModeGrid& grid);

/// Classical fourth-order Runge-Kutta in the rotating frame from state.time to
/// tEnd. Both sectors present in the state are advanced. Throws
/// std::invalid_argument for dt above max_oracle_step and NormDriftError when
/// a sector norm drifts by more than opt.normDriftTol.
SectorState propagate(SectorState state, const ModeGrid& grid, const DipoleParams& p, double tEnd, double dt,
                      const OracleOptions& opt = {});

/// 2 |c_e(t)|^2 - 1.
double oracle_sigma_z(double t, const ModeGrid& grid, const DipoleParams& p, const OracleOptions& opt = {});

/// <sigma^z> on an ascending time grid from one propagation run.
std::vector<double> oracle_sigma_z_series(const std::vector<double>& times, const ModeGrid& grid,
                                          const DipoleParams& p, const OracleOptions& opt = {});

/// Two-time correlators in the lab frame. MinusPlus and Commutator need u <= v.
/// PopulationZ ignores v. The N = 2 pair window is bounded by
/// opt.memoryBudgetBytes; overflow throws ResourceError naming the largest
/// admissible mode count.
cplx oracle_two_time(AtomCorrKind kind, double u, double v, const ModeGrid& grid, const DipoleParams& p,
                     const OracleOptions& opt = {});

/// 2/Gamma * Re int_0^T K(s) ds with the discrete bath kernel
/// K(s) = sum_k g_k^2 e^{-i (w_k - w0) s}. Unity in the Markov limit.
double bath_kernel_mass(const ModeGrid& grid, double T);

struct MarkovKernelReport {
    double cutoff = 0;        // upper frequency of the kernel integral
    double testWidth = 0;     // Gaussian width of the test function
    cplx action{};            // int dt' h(t') K(t')
    cplx expected{};          // 2 pi f(w0) [h(t_r) +- h(t_a)]
    double relError = 0;
    double mass = 0;          // |action| / |h(centre)|, compare 2 pi f(w0)
    double kernelWidth = 0;   // full width at half maximum of |K| around t_r
};

struct MarkovKernelOptions {
    double cutoffMultiple = 10;  // cutoff = multiple * w0
    double widthOmega = 10;      // test Gaussian width = widthOmega / w0
    int sign = +1;               // +1 or -1 between the t_r and t_a deltas
    double centre = -1;          // test centre; negative means t_r
};

/// Kernel K(t') = int_0^cutoff f(w) e^{i w t'} (e^{-i w t_r} +- e^{-i w t_a}) dw
/// acting on h(t') = g(t') e^{-i w0 t'} with a Gaussian g. Throws ResolutionError
/// when the cutoff does not contain the spectrum of the test function.
MarkovKernelReport markov_kernel_check(const std::function<double(double)>& f, double t_r, double t_a,
                                       const DipoleParams& p, const MarkovKernelOptions& opt = {});

/// int_0^t K_W(t' - t) f(t') dt' with K_W(s) = sin(W s)/(pi s), the
/// band-limited delta; tends to f(t)/2.
double endpoint_half_weight(const std::function<double(double)>& f, double t, double W);

struct AngularReport {
    double maxElementError = 0;  // over the sampled (w x, direction) set
    double maxTraceError = 0;
    double smallArgumentError = 0;  // |tau(1e-3) - (2/3) delta| elementwise
};

/// Direction integral of (delta - k k) e^{i w k.x} divided by 4 pi, compared
/// with tau_ij(w x), at several w x and fixed pseudo-random directions.
AngularReport angular_reduction_check(const std::vector<double>& omegaX = {0.5, 1, 2, 5, 10},
                                      int directions = 8);

}  // namespace advwave
