#pragma once

#include <span>
#include <string>
#include <vector>

#include "netsync/classify.hpp"
#include "netsync/oscillator.hpp"

namespace netsync {

/// Controllable-canonical realization of a proper admittance y(s):
/// x' = A x + b u, i = c x + d u with u the voltage across the element.
struct ElementDynamics {
    RealMatrix a;
    RealVector b;
    RealVector c;
    double d = 0.0;

    Eigen::Index order() const noexcept { return a.rows(); }
    Complex admittance(Complex s) const;
};

/// UnsupportedForm for improper y.
ElementDynamics realize_admittance(const RationalFunction& y);

/// One two-terminal element of the coupling network. to == npos means ground.
struct CouplingElement {
    static constexpr std::size_t ground = static_cast<std::size_t>(-1);
    std::size_t from = 0;
    std::size_t to = ground;
    double weight = 1.0;            // scales c and d
    std::size_t dynamics = 0;       // index into CouplingRealization::dynamics
    std::size_t state_offset = 0;   // first state in the full state vector
};

struct CouplingRealization {
    std::size_t n = 0;
    std::vector<ElementDynamics> dynamics;  // [0] series, [1] shunt when present
    std::vector<CouplingElement> elements;  // branches (i < j), then shunts
    std::size_t state_count = 0;

    /// Nodal admittance of the realization at s.
    ComplexMatrix admittance(Complex s) const;
};

/// Branch per nonzero off-diagonal of the reduced Laplacian, plus one shunt
/// per node when y_shunt is present. UnsupportedForm for improper admittances
/// or a realization that misses Y(j omega) by more than 1e-8 relative.
CouplingRealization realize_coupling(const NetworkClass& cls, const Tolerances& tol = {});

/// Worst relative mismatch between realization and class over omegas.
double realization_mismatch(const CouplingRealization& r, const NetworkClass& cls, std::span<const double> omegas,
                            const Tolerances& tol = {});

/// State layout: circuit j occupies [3j, 3j+3) as (v_a, v_b, i_L); coupling
/// element states follow in element order.
struct CoupledSystem {
    OscillatorModel osc;
    CouplingRealization coupling;

    std::size_t n() const noexcept { return coupling.n; }
    std::size_t circuit_order() const noexcept { return static_cast<std::size_t>(osc.linear.order()); }
    std::size_t state_dim() const noexcept { return n() * circuit_order() + coupling.state_count; }
    double terminal_voltage(std::span<const double> x, std::size_t j) const;

    void rhs(std::span<const double> x, std::span<double> dxdt, double t = 0.0) const;
};

CoupledSystem make_coupled_system(const NetworkClass& cls, const OscillatorModel& osc, const Tolerances& tol = {});

/// Circuit j starts at v_a = base + spread*j, everything else zero.
std::vector<double> default_initial_state(const CoupledSystem& sys, double base = 0.1, double spread = 0.01);

enum class Method { rk45, rk4 };
std::string_view method_name(Method m);
Method parse_method(std::string_view name);

struct IntegrateConfig {
    Method method = Method::rk45;
    double t_end = 200.0;
    double dt = 1e-3;       // rk4 step
    double stride = 0.1;    // output interval
    double rtol = 1e-6;
    double atol = 1e-9;
    double divergence_limit = 1e6;

    void validate() const;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    std::vector<std::vector<double>> v;  // terminal voltages per time
    std::vector<double> sync_error;
};

/// Divergence when a state exceeds the limit, StepUnderflow when the adaptive
/// stepper stalls.
Trajectory integrate(const CoupledSystem& sys, std::vector<double> x0, const IntegrateConfig& cfg);

/// sqrt((1/2N) sum_{j,k} (v_j - v_k)^2)
double sync_error(std::span<const double> v);
/// ||(I - 11^T/N) v||_2
double sync_error_projected(std::span<const double> v);

struct SyncSummary {
    double initial_error = 0.0;
    double final_error = 0.0;
    double threshold = 0.0;
    bool synchronized = false;
    double t_end = 0.0;
    Method method = Method::rk45;
};

/// threshold = ratio * initial error (1e-10 when that is zero); synchronized
/// when sync_error stays below it for every t >= t_end/2.
SyncSummary summarize(const Trajectory& traj, const IntegrateConfig& cfg, double ratio = 1e-2);

/// Header t,v_1..v_N,sync_error.
std::string trajectory_csv(const Trajectory& traj);
OrderedJson summary_to_json(const SyncSummary& s);

}  // namespace netsync
