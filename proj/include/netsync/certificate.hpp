#pragma once

#include <span>
#include <string>
#include <vector>

#include "netsync/classify.hpp"
#include "netsync/kernels.hpp"
#include "netsync/oscillator.hpp"

namespace netsync {

struct SweepConfig {
    double omega_min = 1e-3;
    double omega_max = 1e3;
    std::size_t points = 4000;
    std::size_t refine_iters = 60;
    double refine_tol = 1e-8;

    void validate() const;
    /// Log-spaced omega grid.
    std::vector<double> grid() const;
};

enum class Stability { stable, marginal, unstable };
std::string_view stability_name(Stability s);

struct PoleVerdict {
    Stability stability = Stability::stable;
    std::vector<double> axis_frequencies;  // |Im p| of the marginal poles
};

/// Poles of den after cancelling removable pairs: stable when every
/// Re p < -1e-9 * max(1, |p|), marginal within that band, unstable beyond.
PoleVerdict pole_stability(const RationalFunction& h);

struct HinfResult {
    double peak = 0.0;
    double omega_star = 0.0;
    bool boundary = false;  // maximum sits at an end of the grid
    PoleVerdict poles;
};

/// a / (1 + a b). DegenerateLoop when 1 + a b vanishes identically.
RationalFunction lft_scalar(const RationalFunction& a, const RationalFunction& b);
/// 1 / (1/z_osc + y_shunt)
RationalFunction z_eq(const RationalFunction& z_osc, const RationalFunction& y_shunt);

/// sup |h(j omega)| on the grid, refined by golden-section search around the
/// grid maximum. UnboundedGain for improper h.
HinfResult hinf_scalar(const RationalFunction& h, const SweepConfig& cfg = {}, const Tolerances& tol = {});

enum class Verdict { pass, fail, conditional, inconclusive_boundary };

struct ModeGain {
    double lambda = 0.0;
    HinfResult gain;
};

struct GainReport {
    NetworkKind kind = NetworkKind::unclassified;
    Verdict verdict = Verdict::fail;
    double margin = 0.0;
    double sigma = 0.0;
    std::vector<ModeGain> modes;
    std::vector<std::size_t> critical_modes;  // indices into modes within 1e-9 of the max peak
    std::vector<std::string> warnings;

    bool passed() const noexcept { return verdict == Verdict::pass; }
};

/// The loop-gain transfer function of one Laplacian mode.
RationalFunction mode_gain(const NetworkClass& cls, const OscillatorModel& osc, double lambda);
/// Eigenvalues that the certificate has to cover.
std::vector<double> certified_modes(const NetworkClass& cls, const Tolerances& tol = {});

GainReport certify(const NetworkClass& cls, const OscillatorModel& osc, const SweepConfig& cfg = {},
                   const Tolerances& tol = {});

OrderedJson report_to_json(const GainReport& report);

/// max over modes of |h_j(j omega)| per omega.
std::vector<double> scalar_gain_profile(const NetworkClass& cls, const OscillatorModel& osc,
                                        std::span<const double> omegas, const Tolerances& tol = {});
/// Largest singular value of the deflated (I + z Y)^{-1} z per omega.
std::vector<double> matrix_gain_profile(const kernels::MatrixAt& y_at, const RationalFunction& z_osc,
                                        std::span<const double> omegas, const Tolerances& tol = {});
/// Supremum of matrix_gain_profile over the grid.
double matrix_gain_oracle(const kernels::MatrixAt& y_at, const RationalFunction& z_osc,
                          std::span<const double> omegas, const Tolerances& tol = {});

/// xi(R, L) = sigma * ||z_osc z_net / (z_osc + z_net)||_inf with z_net = R + sL.
double xi_value(double r_net, double l_net, const OscillatorModel& osc, const SweepConfig& cfg = {},
                const Tolerances& tol = {});

struct XiSurface {
    std::vector<double> r;
    std::vector<double> l;
    RealMatrix xi;  // xi(i, j) at (r[i], l[j])
};

XiSurface xi_surface(std::span<const double> r_grid, std::span<const double> l_grid, const OscillatorModel& osc,
                     const SweepConfig& cfg = {}, const Tolerances& tol = {});
/// Header r_net,l_net,xi; r varies slowest.
std::string surface_csv(const XiSurface& surface);

/// Header omega,magnitude for |z_osc || z_net| at fixed (R, L).
std::string bode_csv(double r_net, double l_net, const OscillatorModel& osc, std::span<const double> omegas,
                     const Tolerances& tol = {});

std::vector<double> log_grid(double lo, double hi, std::size_t count);

}  // namespace netsync
