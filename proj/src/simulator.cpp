#include "netsync/simulator.hpp"

#include <algorithm>
#include <cmath>

#include <boost/numeric/odeint.hpp>

namespace netsync {

namespace odeint = boost::numeric::odeint;

Complex ElementDynamics::admittance(Complex s) const {
    const Eigen::Index k = order();
    if (k == 0) {
        return d;
    }
    const ComplexMatrix m = s * ComplexMatrix::Identity(k, k) - a.cast<Complex>();
    const ComplexVector x = mat_solve(m, b.cast<Complex>());
    return d + c.cast<Complex>().dot(x);
}

ElementDynamics realize_admittance(const RationalFunction& y) {
    if (!y.is_proper()) {
        throw UnsupportedForm("admittance is improper and has no state-space realization");
    }
    const Polynomial& den = y.den();  // monic
    const int k = den.degree();
    const auto& nc = y.num().coeffs();
    ElementDynamics out;
    out.d = static_cast<int>(nc.size()) - 1 == k ? nc.back() : 0.0;
    out.a = RealMatrix::Zero(k, k);
    out.b = RealVector::Zero(k);
    out.c = RealVector::Zero(k);
    if (k == 0) {
        out.d = nc[0] / den.coeffs()[0];
        return out;
    }
    for (int i = 0; i + 1 < k; ++i) out.a(i, i + 1) = 1.0;
    for (int j = 0; j < k; ++j) {
        out.a(k - 1, j) = -den.coeffs()[j];
        const double numj = j < static_cast<int>(nc.size()) ? nc[j] : 0.0;
        out.c(j) = numj - out.d * den.coeffs()[j];
    }
    out.b(k - 1) = 1.0;
    return out;
}

ComplexMatrix CouplingRealization::admittance(Complex s) const {
    const auto nn = static_cast<Eigen::Index>(n);
    ComplexMatrix y = ComplexMatrix::Zero(nn, nn);
    std::vector<Complex> base(dynamics.size());
    for (std::size_t k = 0; k < dynamics.size(); ++k) base[k] = dynamics[k].admittance(s);
    for (const auto& e : elements) {
        const Complex ye = e.weight * base[e.dynamics];
        const auto i = static_cast<Eigen::Index>(e.from);
        y(i, i) += ye;
        if (e.to != CouplingElement::ground) {
            const auto j = static_cast<Eigen::Index>(e.to);
            y(j, j) += ye;
            y(i, j) -= ye;
            y(j, i) -= ye;
        }
    }
    return y;
}

double realization_mismatch(const CouplingRealization& r, const NetworkClass& cls, std::span<const double> omegas,
                            const Tolerances& tol) {
    double worst = 0.0;
    for (double w : omegas) {
        const Complex s{0.0, w};
        const ComplexMatrix expected = cls.eval(s, tol);
        const double scale = std::max(expected.cwiseAbs().maxCoeff(), 1e-300);
        worst = std::max(worst, (r.admittance(s) - expected).cwiseAbs().maxCoeff() / scale);
    }
    return worst;
}

CouplingRealization realize_coupling(const NetworkClass& cls, const Tolerances& tol) {
    if (cls.kind == NetworkKind::unclassified || !cls.y_series) {
        throw Unclassified("cannot realize an unclassified network: " + cls.reason);
    }
    CouplingRealization out;
    out.n = cls.n;
    out.dynamics.push_back(realize_admittance(*cls.y_series));
    const auto nn = static_cast<Eigen::Index>(cls.n);
    const double scale = cls.laplacian.cwiseAbs().maxCoeff();
    std::size_t offset = 0;
    for (Eigen::Index i = 0; i < nn; ++i) {
        for (Eigen::Index j = i + 1; j < nn; ++j) {
            const double w = -cls.laplacian(i, j);
            if (std::abs(w) <= tol.structural_tol * scale) continue;
            out.elements.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), w, 0, offset});
            offset += static_cast<std::size_t>(out.dynamics[0].order());
        }
    }
    if (cls.y_shunt && !cls.y_shunt->is_zero()) {
        out.dynamics.push_back(realize_admittance(*cls.y_shunt));
        for (std::size_t i = 0; i < cls.n; ++i) {
            out.elements.push_back({i, CouplingElement::ground, 1.0, 1, offset});
            offset += static_cast<std::size_t>(out.dynamics[1].order());
        }
    }
    out.state_count = offset;
    const auto probes = [] {
        std::vector<double> w(10);
        for (std::size_t k = 0; k < w.size(); ++k) w[k] = std::pow(10.0, -2.0 + 4.0 * static_cast<double>(k) / 9.0);
        return w;
    }();
    const double mismatch = realization_mismatch(out, cls, probes, tol);
    if (!(mismatch <= 1e-8)) {
        throw UnsupportedForm("coupling realization does not reproduce the reduced admittance (relative error " +
                              std::to_string(mismatch) + ")");
    }
    return out;
}

CoupledSystem make_coupled_system(const NetworkClass& cls, const OscillatorModel& osc, const Tolerances& tol) {
    return CoupledSystem{osc, realize_coupling(cls, tol)};
}

double CoupledSystem::terminal_voltage(std::span<const double> x, std::size_t j) const {
    const std::size_t m = circuit_order();
    double v = 0.0;
    for (std::size_t k = 0; k < m; ++k) v += osc.linear.c(static_cast<Eigen::Index>(k)) * x[j * m + k];
    return v;
}

void CoupledSystem::rhs(std::span<const double> x, std::span<double> dxdt, double) const {
    const std::size_t nc = n();
    const std::size_t m = circuit_order();
    const std::size_t base = nc * m;
    std::vector<double> v(nc), i_net(nc, 0.0);
    for (std::size_t j = 0; j < nc; ++j) v[j] = terminal_voltage(x, j);

    for (const auto& e : coupling.elements) {
        const ElementDynamics& dyn = coupling.dynamics[e.dynamics];
        const double u = e.to == CouplingElement::ground ? v[e.from] : v[e.from] - v[e.to];
        const auto k = static_cast<std::size_t>(dyn.order());
        const double* xs = x.data() + base + e.state_offset;
        double* dxs = dxdt.data() + base + e.state_offset;
        double current = dyn.d * u;
        for (std::size_t r = 0; r < k; ++r) {
            current += dyn.c(static_cast<Eigen::Index>(r)) * xs[r];
            double acc = dyn.b(static_cast<Eigen::Index>(r)) * u;
            for (std::size_t q = 0; q < k; ++q) {
                acc += dyn.a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(q)) * xs[q];
            }
            dxs[r] = acc;
        }
        current *= e.weight;
        i_net[e.from] += current;
        if (e.to != CouplingElement::ground) i_net[e.to] -= current;
    }

    const LinearSubsystem& lin = osc.linear;
    for (std::size_t j = 0; j < nc; ++j) {
        const double input = -osc.g(v[j]) - i_net[j];
        for (std::size_t r = 0; r < m; ++r) {
            double acc = lin.b_inj(static_cast<Eigen::Index>(r)) * input;
            for (std::size_t q = 0; q < m; ++q) {
                acc += lin.a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(q)) * x[j * m + q];
            }
            dxdt[j * m + r] = acc;
        }
    }
}

std::vector<double> default_initial_state(const CoupledSystem& sys, double base, double spread) {
    std::vector<double> x(sys.state_dim(), 0.0);
    for (std::size_t j = 0; j < sys.n(); ++j) {
        x[j * sys.circuit_order()] = base + spread * static_cast<double>(j);
    }
    return x;
}

std::string_view method_name(Method m) {
    return m == Method::rk4 ? "rk4" : "rk45";
}

Method parse_method(std::string_view name) {
    if (name == "rk45") return Method::rk45;
    if (name == "rk4") return Method::rk4;
    throw InvalidParams("unknown integration method: " + std::string(name));
}

void IntegrateConfig::validate() const {
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw InvalidParams("t_end must be positive");
    if (!(dt > 0.0)) throw InvalidParams("dt must be positive");
    if (!(stride > 0.0)) throw InvalidParams("stride must be positive");
    if (!(rtol > 0.0) || !(atol > 0.0)) throw InvalidParams("rtol and atol must be positive");
    if (!(divergence_limit > 0.0)) throw InvalidParams("divergence limit must be positive");
}

double sync_error(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n == 0) return 0.0;
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            const double d = v[j] - v[k];
            sum += d * d;
        }
    }
    // each unordered pair appears twice in the full double sum
    return std::sqrt(sum / static_cast<double>(n));
}

double sync_error_projected(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n == 0) return 0.0;
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(n);
    double sum = 0.0;
    for (double x : v) sum += (x - mean) * (x - mean);
    return std::sqrt(sum);
}

Trajectory integrate(const CoupledSystem& sys, std::vector<double> x0, const IntegrateConfig& cfg) {
    cfg.validate();
    using State = std::vector<double>;
    if (x0.size() != sys.state_dim()) {
        throw DegenerateInput("initial state has " + std::to_string(x0.size()) + " entries, expected " +
                              std::to_string(sys.state_dim()));
    }
    for (double x : x0) {
        if (!std::isfinite(x)) throw DegenerateInput("initial state is not finite");
    }
    auto check = [&](const State& x, double t) {
        for (double xi : x) {
            if (!(std::abs(xi) <= cfg.divergence_limit)) {
                throw Divergence("state magnitude exceeded " + std::to_string(cfg.divergence_limit) +
                                 " at t = " + std::to_string(t));
            }
        }
    };
    auto system = [&](const State& x, State& dxdt, double t) {
        check(x, t);
        sys.rhs(x, dxdt, t);
    };

    std::vector<double> times;
    const auto steps = static_cast<std::size_t>(std::ceil(cfg.t_end / cfg.stride - 1e-9));
    for (std::size_t k = 0; k < steps; ++k) times.push_back(static_cast<double>(k) * cfg.stride);
    times.push_back(cfg.t_end);

    Trajectory traj;
    traj.times.reserve(times.size());
    auto observer = [&](const State& x, double t) {
        check(x, t);
        std::vector<double> v(sys.n());
        for (std::size_t j = 0; j < sys.n(); ++j) v[j] = sys.terminal_voltage(x, j);
        traj.times.push_back(t);
        traj.states.push_back(x);
        traj.sync_error.push_back(sync_error(v));
        traj.v.push_back(std::move(v));
    };

    const odeint::max_step_checker checker(10'000'000);
    try {
        if (cfg.method == Method::rk45) {
            auto stepper = odeint::make_dense_output(cfg.atol, cfg.rtol, odeint::runge_kutta_dopri5<State>());
            odeint::integrate_times(stepper, system, x0, times.begin(), times.end(), std::min(cfg.dt, cfg.stride),
                                    observer, checker);
        } else {
            odeint::integrate_times(odeint::runge_kutta4<State>(), system, x0, times.begin(), times.end(), cfg.dt,
                                    observer, checker);
        }
    } catch (const Error&) {
        throw;
    } catch (const odeint::odeint_error& e) {
        throw StepUnderflow(std::string("integrator made no progress: ") + e.what());
    }
    return traj;
}

SyncSummary summarize(const Trajectory& traj, const IntegrateConfig& cfg, double ratio) {
    SyncSummary s;
    s.t_end = cfg.t_end;
    s.method = cfg.method;
    if (traj.sync_error.empty()) {
        return s;
    }
    s.initial_error = traj.sync_error.front();
    s.final_error = traj.sync_error.back();
    s.threshold = s.initial_error > 0.0 ? ratio * s.initial_error : 1e-10;
    s.synchronized = true;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        if (traj.times[k] >= 0.5 * cfg.t_end && !(traj.sync_error[k] < s.threshold)) {
            s.synchronized = false;
            break;
        }
    }
    return s;
}

std::string trajectory_csv(const Trajectory& traj) {
    const std::size_t n = traj.v.empty() ? 0 : traj.v.front().size();
    std::string out = "t";
    for (std::size_t j = 1; j <= n; ++j) out += ",v_" + std::to_string(j);
    out += ",sync_error\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        out += format_double(traj.times[k]);
        for (double v : traj.v[k]) out += ',' + format_double(v);
        out += ',' + format_double(traj.sync_error[k]) + '\n';
    }
    return out;
}

OrderedJson summary_to_json(const SyncSummary& s) {
    OrderedJson doc;
    doc["final_error"] = s.final_error;
    doc["initial_error"] = s.initial_error;
    doc["synchronized"] = s.synchronized;
    doc["threshold"] = s.threshold;
    doc["t_end"] = s.t_end;
    doc["method"] = std::string(method_name(s.method));
    return doc;
}

}  // namespace netsync
