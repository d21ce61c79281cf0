#pragma once

#include <array>
#include <string>
#include <vector>

#include "netsync/linalg.hpp"
#include "netsync/oscillator_params.hpp"
#include "netsync/rational.hpp"

namespace netsync {

/// Odd, continuous, piecewise-linear g(v) with slope slopes[0] on |v| <= phi0,
/// slopes[1] on phi0 < |v| <= phi1 and slopes[2] beyond.
class PiecewiseLinearConductance {
public:
    PiecewiseLinearConductance(std::array<double, 3> slopes, std::array<double, 2> breakpoints);

    double operator()(double v) const noexcept;
    /// dg/dv, taking the inner segment at a breakpoint.
    double slope_at(double v) const noexcept;
    double slope_bound() const noexcept;

    const std::array<double, 3>& slopes() const noexcept { return slopes_; }
    const std::array<double, 2>& breakpoints() const noexcept { return breakpoints_; }

private:
    std::array<double, 3> slopes_;
    std::array<double, 2> breakpoints_;
    std::array<double, 2> offsets_;  // g at phi0 and phi1
};

inline double g_eval(const PiecewiseLinearConductance& g, double v) { return g(v); }
inline double slope_bound(const PiecewiseLinearConductance& g) { return g.slope_bound(); }

/// x' = A x + b_inj (i_g - i_net), v = c x, where i_g = -g(v) is the source
/// current and i_net the current drawn by the network.
struct LinearSubsystem {
    RealMatrix a;
    RealVector b_inj;
    RealVector c;
    std::vector<std::string> labels;

    Eigen::Index order() const noexcept { return a.rows(); }
    /// c (sI - A)^{-1} b_inj
    Complex port_impedance(Complex s) const;
};

struct OscillatorModel {
    OscillatorParams params;
    LinearSubsystem linear;
    PiecewiseLinearConductance g;
    RationalFunction z_osc;
    double sigma = 0.0;
};

/// Chua topology: C_a at the terminal in parallel with R in series with
/// (C_b || L). States (v_a, v_b, i_L). InvalidParams on non-positive
/// components or unordered breakpoints.
OscillatorModel chua_preset(const OscillatorParams& p = {});
OscillatorModel make_oscillator(const OscillatorConfig& config);

/// z_osc assembled from the element impedances with rational arithmetic.
RationalFunction chua_impedance(const OscillatorParams& p);

}  // namespace netsync
