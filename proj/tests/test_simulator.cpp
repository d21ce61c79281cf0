#include <doctest.h>

#include <cmath>

#include "netsync/certificate.hpp"
#include "netsync/classify.hpp"
#include "netsync/oscillator.hpp"
#include "netsync/simulator.hpp"
#include "support.hpp"

using namespace netsync;
using netsync::testing::data_path;
using netsync::testing::rel_diff;

namespace {

NetworkClass homogeneous(const RationalFunction& y, std::size_t n) {
    NetworkClass cls;
    cls.kind = NetworkKind::no_shunt_homogeneous;
    cls.n = n;
    cls.y_series = y;
    cls.laplacian = complete_laplacian(static_cast<Eigen::Index>(n));
    cls.eigenvalues = sym_eig(cls.laplacian).values;
    return cls;
}

CoupledSystem uncoupled(const OscillatorModel& osc, std::size_t n) {
    CouplingRealization r;
    r.n = n;
    return CoupledSystem{osc, r};
}

OscillatorModel linear_chua(double slope) {
    OscillatorParams p;
    p.slopes = {slope, slope, slope};
    return chua_preset(p);
}

}  // namespace

TEST_CASE("sync_error examples") {
    const std::vector<double> same{0.3, 0.3, 0.3};
    CHECK(sync_error(same) == 0.0);
    const std::vector<double> pair{1.0, -1.0};
    CHECK(sync_error(pair) == doctest::Approx(std::sqrt(2.0)));
    const std::vector<double> v{0.1, -2.0, 0.7, 3.3};
    std::vector<double> shifted = v;
    for (double& x : shifted) x += 5.0;
    CHECK(std::abs(sync_error(v) - sync_error(shifted)) < 1e-12);
    CHECK(std::abs(sync_error(v) - sync_error_projected(v)) < 1e-12);
}

TEST_CASE("projector identities") {
    for (Eigen::Index n = 1; n <= 10; ++n) {
        const RealMatrix p = projector(n);
        CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((p * RealVector::Ones(n)).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((complete_laplacian(n) - static_cast<double>(n) * p).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("realize_admittance") {
    SUBCASE("constant") {
        const ElementDynamics e = realize_admittance(RationalFunction::constant(2.5));
        CHECK(e.order() == 0);
        CHECK(e.d == 2.5);
    }
    SUBCASE("series RL") {
        const RationalFunction y = SeriesRlc{0.5, 2.0, std::nullopt}.admittance();
        const ElementDynamics e = realize_admittance(y);
        CHECK(e.order() == 1);
        for (double w : {0.1, 1.0, 10.0}) CHECK(rel_diff(e.admittance({0.0, w}), y.eval({0.0, w})) < 1e-12);
    }
    SUBCASE("biproper second order") {
        const RationalFunction y(Polynomial({1.0, 3.0, 2.0}), Polynomial({4.0, 0.5, 1.0}));
        const ElementDynamics e = realize_admittance(y);
        CHECK(e.order() == 2);
        for (double w : {0.1, 1.0, 10.0}) CHECK(rel_diff(e.admittance({0.0, w}), y.eval({0.0, w})) < 1e-12);
    }
    SUBCASE("improper") {
        CHECK_THROWS_AS(realize_admittance(SeriesRlc{0.0, 0.0, 1.0}.impedance().reciprocal()), UnsupportedForm);
    }
}

TEST_CASE("coupling realizations reproduce the reduced network") {
    SUBCASE("case A") {
        const NetworkClass cls = classify(load_netlist(data_path("case_a_set1.json")));
        const CouplingRealization r = realize_coupling(cls);
        std::size_t nonzero = 0;
        for (Eigen::Index i = 0; i < 4; ++i)
            for (Eigen::Index j = i + 1; j < 4; ++j)
                if (std::abs(cls.laplacian(i, j)) > 1e-12) ++nonzero;
        CHECK(r.elements.size() == nonzero);
        CHECK(r.state_count == nonzero);
        CHECK(realization_mismatch(r, cls, log_grid(1e-2, 1e2, 10)) < 1e-8);
    }
    SUBCASE("resistive star has no extra states") {
        const NetworkClass cls = classify(load_netlist(data_path("star.json")));
        const CouplingRealization r = realize_coupling(cls);
        CHECK(r.state_count == 0);
        CHECK(r.elements.size() == 3);
    }
    SUBCASE("star with load") {
        const NetworkClass cls = classify(load_netlist(data_path("star_with_load.json")));
        const CouplingRealization r = realize_coupling(cls);
        CHECK(r.dynamics.size() == 2);
        CHECK(r.elements.size() == 6 + 4);
        CHECK(realization_mismatch(r, cls, log_grid(1e-2, 1e2, 10)) < 1e-8);
    }
    SUBCASE("improper coupling is rejected") {
        CHECK_THROWS_AS(realize_coupling(homogeneous(RationalFunction::s(), 3)), UnsupportedForm);
    }
}

TEST_CASE("rhs at the origin vanishes") {
    const CoupledSystem sys = uncoupled(chua_preset(), 1);
    const std::vector<double> x(3, 0.0);
    std::vector<double> dx(3, 1.0);
    sys.rhs(x, dx);
    for (double d : dx) CHECK(d == 0.0);
}

TEST_CASE("rhs follows the circuit laws") {
    const OscillatorModel osc = chua_preset();
    const CoupledSystem sys = make_coupled_system(homogeneous(RationalFunction::constant(0.3), 2), osc);
    const std::vector<double> x{0.7, -0.2, 0.05, -1.5, 0.4, 0.1};
    std::vector<double> dx(6);
    sys.rhs(x, dx);
    const OscillatorParams& p = osc.params;
    for (int j = 0; j < 2; ++j) {
        const double va = x[3 * j], vb = x[3 * j + 1], il = x[3 * j + 2];
        const double i_net = 0.3 * (va - x[3 * (1 - j)]);
        CHECK(dx[3 * j] == doctest::Approx(((vb - va) / p.r - osc.g(va) - i_net) / p.c_a));
        CHECK(dx[3 * j + 1] == doctest::Approx(((va - vb) / p.r - il) / p.c_b));
        CHECK(dx[3 * j + 2] == doctest::Approx(vb / p.l));
    }
}

TEST_CASE("uncoupled circuit settles on the double scroll") {
    const CoupledSystem sys = uncoupled(chua_preset(), 1);
    IntegrateConfig cfg;
    const Trajectory traj = integrate(sys, {0.1, 0.0, 0.0}, cfg);
    double lo = 0.0, hi = 0.0, bound = 0.0;
    for (const auto& x : traj.states) {
        lo = std::min(lo, x[0]);
        hi = std::max(hi, x[0]);
        for (double xi : x) bound = std::max(bound, std::abs(xi));
    }
    const double phi0 = sys.osc.params.breakpoints[0];
    CHECK(hi > phi0);
    CHECK(lo < -phi0);
    CHECK(bound < 20.0);
    CHECK(traj.times.size() == 2001);
    CHECK(traj.times.back() == cfg.t_end);
}

TEST_CASE("exact synchrony is invariant") {
    for (const char* name : {"case_a_set2.json", "star_with_load.json"}) {
        const NetworkClass cls = classify(load_netlist(data_path(name)));
        const CoupledSystem sys = make_coupled_system(cls, chua_preset());
        IntegrateConfig cfg;
        cfg.t_end = 50.0;
        const Trajectory traj = integrate(sys, default_initial_state(sys, 0.1, 0.0), cfg);
        double worst = 0.0;
        for (double e : traj.sync_error) worst = std::max(worst, e);
        CHECK(worst <= 1e-10);
    }
}

TEST_CASE("two-circuit symmetry decomposition") {
    // with a linear characteristic the mean of the circuits does not feel the coupling
    const OscillatorModel osc = linear_chua(-0.2);
    IntegrateConfig cfg;
    cfg.t_end = 5.0;
    cfg.rtol = 1e-10;
    cfg.atol = 1e-12;
    std::vector<std::vector<double>> means;
    std::vector<double> diffs;
    for (double gc : {0.1, 1.0}) {
        const CoupledSystem sys = make_coupled_system(homogeneous(RationalFunction::constant(gc), 2), osc);
        const Trajectory traj = integrate(sys, {0.3, 0.1, 0.0, -0.1, 0.0, 0.05}, cfg);
        const auto& x = traj.states.back();
        means.push_back({x[0] + x[3], x[1] + x[4], x[2] + x[5]});
        diffs.push_back(std::abs(x[0] - x[3]));
    }
    for (int k = 0; k < 3; ++k) CHECK(std::abs(means[0][k] - means[1][k]) < 1e-8);
    CHECK(diffs[1] < diffs[0]);
}

TEST_CASE("rk4 converges at fourth order") {
    const OscillatorModel osc = linear_chua(-0.2);
    const CoupledSystem sys = make_coupled_system(homogeneous(SeriesRlc{0.5, 1.0, std::nullopt}.admittance(), 3), osc);
    const std::vector<double> x0 = default_initial_state(sys, 0.3, 0.2);
    IntegrateConfig ref;
    ref.t_end = 2.0;
    ref.stride = 0.5;
    ref.rtol = 1e-13;
    ref.atol = 1e-14;
    const std::vector<double> exact = integrate(sys, x0, ref).states.back();
    std::vector<double> errors;
    for (double dt : {1e-2, 5e-3, 2.5e-3}) {
        IntegrateConfig cfg = ref;
        cfg.method = Method::rk4;
        cfg.dt = dt;
        const std::vector<double> x = integrate(sys, x0, cfg).states.back();
        double err = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) err = std::max(err, std::abs(x[k] - exact[k]));
        errors.push_back(err);
    }
    for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
        const double order = std::log2(errors[k] / errors[k + 1]);
        CHECK(order > 3.5);
        CHECK(order < 4.5);
    }
}

TEST_CASE("divergence guard") {
    // negative conductance everywhere grows without bound
    const CoupledSystem sys = uncoupled(linear_chua(-5.0), 1);
    IntegrateConfig cfg;
    cfg.t_end = 1000.0;
    cfg.divergence_limit = 1e3;
    CHECK_THROWS_AS(integrate(sys, {0.1, 0.0, 0.0}, cfg), Divergence);
    cfg.method = Method::rk4;
    cfg.dt = 1e-2;
    CHECK_THROWS_AS(integrate(sys, {0.1, 0.0, 0.0}, cfg), Divergence);
}

TEST_CASE("integrate rejects bad inputs") {
    const CoupledSystem sys = uncoupled(chua_preset(), 2);
    IntegrateConfig cfg;
    CHECK_THROWS_AS(integrate(sys, {0.1, 0.0}, cfg), DegenerateInput);
    cfg.t_end = -1.0;
    CHECK_THROWS_AS(integrate(sys, std::vector<double>(6, 0.0), cfg), InvalidParams);
    CHECK_THROWS_AS(parse_method("euler"), InvalidParams);
    CHECK(parse_method("rk4") == Method::rk4);
}

TEST_CASE("summary and csv") {
    Trajectory traj;
    traj.times = {0.0, 1.0, 2.0};
    traj.v = {{1.0, -1.0}, {0.5, 0.4}, {0.3, 0.3}};
    for (const auto& v : traj.v) traj.sync_error.push_back(sync_error(v));
    IntegrateConfig cfg;
    cfg.t_end = 2.0;
    const SyncSummary s = summarize(traj, cfg);
    CHECK(s.threshold == doctest::Approx(1e-2 * std::sqrt(2.0)));
    CHECK_FALSE(s.synchronized);  // t = 1 is at t_end / 2
    const std::string csv = trajectory_csv(traj);
    CHECK(csv.rfind("t,v_1,v_2,sync_error\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    const OrderedJson doc = summary_to_json(s);
    CHECK(doc.begin().key() == "final_error");
    CHECK(doc["method"] == "rk45");

    traj.sync_error = {0.0, 0.0, 0.0};
    CHECK(summarize(traj, cfg).threshold == 1e-10);
    CHECK(summarize(traj, cfg).synchronized);
}
