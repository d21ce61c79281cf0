#include "netsync/oscillator.hpp"

#include <algorithm>
#include <cmath>

namespace netsync {

PiecewiseLinearConductance::PiecewiseLinearConductance(std::array<double, 3> slopes, std::array<double, 2> breakpoints)
    : slopes_(slopes), breakpoints_(breakpoints) {
    for (double s : slopes_) {
        if (!std::isfinite(s)) {
            throw InvalidParams("conductance slopes must be finite");
        }
    }
    if (!(breakpoints_[0] > 0.0) || !(breakpoints_[1] > breakpoints_[0]) || !std::isfinite(breakpoints_[1])) {
        throw InvalidParams("breakpoints must satisfy 0 < phi0 < phi1");
    }
    offsets_[0] = slopes_[0] * breakpoints_[0];
    offsets_[1] = offsets_[0] + slopes_[1] * (breakpoints_[1] - breakpoints_[0]);
}

double PiecewiseLinearConductance::operator()(double v) const noexcept {
    const double x = std::abs(v);
    double y;
    if (x <= breakpoints_[0]) {
        y = slopes_[0] * x;
    } else if (x <= breakpoints_[1]) {
        y = offsets_[0] + slopes_[1] * (x - breakpoints_[0]);
    } else {
        y = offsets_[1] + slopes_[2] * (x - breakpoints_[1]);
    }
    return v < 0.0 ? -y : y;
}

double PiecewiseLinearConductance::slope_at(double v) const noexcept {
    const double x = std::abs(v);
    if (x <= breakpoints_[0]) return slopes_[0];
    if (x <= breakpoints_[1]) return slopes_[1];
    return slopes_[2];
}

double PiecewiseLinearConductance::slope_bound() const noexcept {
    return std::max({std::abs(slopes_[0]), std::abs(slopes_[1]), std::abs(slopes_[2])});
}

Complex LinearSubsystem::port_impedance(Complex s) const {
    const Eigen::Index n = order();
    const ComplexMatrix m = s * ComplexMatrix::Identity(n, n) - a.cast<Complex>();
    const ComplexVector x = mat_solve(m, b_inj.cast<Complex>());
    return c.cast<Complex>().dot(x);
}

RationalFunction chua_impedance(const OscillatorParams& p) {
    const RationalFunction s = RationalFunction::s();
    const RationalFunction y_tank = s.scaled(p.c_b) + s.scaled(p.l).reciprocal();
    const RationalFunction z_branch = RationalFunction::constant(p.r) + y_tank.reciprocal();
    const RationalFunction y_port = s.scaled(p.c_a) + z_branch.reciprocal();
    return cancel_common_roots(y_port.reciprocal());
}

OscillatorModel chua_preset(const OscillatorParams& p) {
    for (double v : {p.r, p.l, p.c_a, p.c_b}) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw InvalidParams("oscillator components r, l, c_a, c_b must be positive and finite");
        }
    }
    OscillatorModel m{p, {}, PiecewiseLinearConductance(p.slopes, p.breakpoints), chua_impedance(p), 0.0};
    m.sigma = m.g.slope_bound();

    LinearSubsystem& lin = m.linear;
    lin.a.resize(3, 3);
    lin.a << -1.0 / (p.r * p.c_a), 1.0 / (p.r * p.c_a), 0.0,
              1.0 / (p.r * p.c_b), -1.0 / (p.r * p.c_b), -1.0 / p.c_b,
              0.0, 1.0 / p.l, 0.0;
    lin.b_inj = RealVector::Zero(3);
    lin.b_inj(0) = 1.0 / p.c_a;
    lin.c = RealVector::Zero(3);
    lin.c(0) = 1.0;
    lin.labels = {"v_a", "v_b", "i_L"};
    return m;
}

OscillatorModel make_oscillator(const OscillatorConfig& config) {
    if (config.preset != "chua" && config.preset != "custom") {
        throw InvalidParams("unknown oscillator preset: " + config.preset);
    }
    return chua_preset(config.params);
}

}  // namespace netsync
