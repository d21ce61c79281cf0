#include <doctest.h>

#include <random>

#include "netsync/reduction.hpp"
#include "support.hpp"

using namespace netsync;
using netsync::testing::data_path;
using netsync::testing::max_abs_diff;
using netsync::testing::rel_diff;

namespace {

ComplexMatrix star_matrix() {
    ComplexMatrix y(4, 4);
    y << 1, 0, 0, -1,
         0, 1, 0, -1,
         0, 0, 1, -1,
         -1, -1, -1, 3;
    return y;
}

ComplexMatrix laplacian_c(const RealMatrix& l) { return l.cast<Complex>(); }

ComplexMatrix eval_reduced(const Netlist& net, Complex s) {
    return kron_reduce(eval_admittance(assemble_admittance(net), s), net.n_boundary).y;
}

}  // namespace

TEST_CASE("kron_reduce: star-delta") {
    const KronResult r = kron_reduce(star_matrix(), 3);
    const ComplexMatrix expected =
        ComplexMatrix::Identity(3, 3) - ComplexMatrix::Constant(3, 3, Complex(1.0 / 3.0, 0.0));
    CHECK(max_abs_diff(r.y, expected) < 1e-12);
    CHECK(r.kept == std::vector<std::size_t>{0, 1, 2});
    CHECK(r.eliminated == std::vector<std::size_t>{3});
}

TEST_CASE("kron_reduce: no interior nodes is the identity") {
    const ComplexMatrix y = star_matrix();
    CHECK(max_abs_diff(kron_reduce(y, 4).y, y) == 0.0);
}

TEST_CASE("kron_reduce: case A at s = j") {
    const Netlist net = load_netlist(data_path("case_a_set1.json"));
    const ComplexMatrix y = eval_reduced(net, Complex(0.0, 1.0));
    CHECK(y.rows() == 4);
    CHECK(is_symmetric(y, 1e-12));
    CHECK(y.rowwise().sum().cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("kron_reduce: singular interior block") {
    const Netlist net = load_netlist(data_path("singular_interior.json"));
    const ComplexMatrix y_a = eval_admittance(assemble_admittance(net), Complex(0.0, 1.0));
    CHECK_THROWS_AS(kron_reduce(y_a, net.n_boundary), SingularInterior);
}

TEST_CASE("kron_reduce_uniform: case A") {
    const Netlist net = load_netlist(data_path("case_a_set1.json"));
    const UniformReduction u = kron_reduce_uniform(net);
    CHECK(u.y_series == RationalFunction::s().reciprocal());
    CHECK(u.laplacian.rows() == 4);
    CHECK(u.original_laplacian(0, 1) == doctest::Approx(-1.0 / 0.834));
    for (double w : {0.1, 1.0, 2.5, 10.0}) {
        const Complex s{0.0, w};
        const ComplexMatrix direct = eval_reduced(net, s);
        const ComplexMatrix uniform = laplacian_c(u.laplacian) * u.y_series.eval(s);
        CHECK(max_abs_diff(direct, uniform) <= 1e-9 * direct.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("kron_reduce_uniform: resistive star") {
    const Netlist net = load_netlist(data_path("star.json"));
    const UniformReduction u = kron_reduce_uniform(net);
    CHECK(u.y_series == RationalFunction::constant(1.0));
    const RealMatrix expected = RealMatrix::Identity(3, 3) - RealMatrix::Constant(3, 3, 1.0 / 3.0);
    CHECK((u.laplacian - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("kron_reduce_uniform: mixed lines are not uniform") {
    const Netlist net = load_netlist(data_path("mixed.json"));
    CHECK_FALSE(has_uniform_lines(net));
    CHECK_THROWS_AS(kron_reduce_uniform(net), NotUniform);
    CHECK_THROWS_AS(kron_reduce_uniform(load_netlist(data_path("star_with_load.json"))), NotUniform);
}

TEST_CASE("kron_reduce_symbolic agrees with numeric reduction") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        netsync::testing::NetGen gen;
        gen.max_nodes = 6;
        gen.interior_shunt = trial % 2 == 0;
        const Netlist net = netsync::testing::random_netlist(rng, gen);
        const SymbolicAdmittance sym = kron_reduce_symbolic(assemble_admittance(net), net.n_boundary);
        for (int k = 0; k < 5; ++k) {
            const Complex s{0.0, netsync::testing::random_omega(rng)};
            const ComplexMatrix numeric = eval_reduced(net, s);
            CHECK(max_abs_diff(eval_admittance(sym, s), numeric) <= 1e-8 * numeric.cwiseAbs().maxCoeff());
        }
    }
}

TEST_CASE("augment examples") {
    const ComplexMatrix star = star_matrix();
    const ComplexMatrix a = augment(star);
    CHECK(a.rows() == 5);
    CHECK(max_abs_diff(a.topLeftCorner(4, 4), star) == 0.0);
    CHECK(a.col(4).cwiseAbs().maxCoeff() == 0.0);

    ComplexMatrix y(2, 2);
    y << 2, -1, -1, 2;
    const ComplexMatrix b = augment(y);
    ComplexMatrix expected(3, 3);
    expected << 2, -1, -1,
                -1, 2, -1,
                -1, -1, 2;
    CHECK(max_abs_diff(b, expected) == 0.0);
    CHECK(b.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
    CHECK(b.colwise().sum().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pseudo_inverse_zero_sum examples") {
    std::mt19937 rng(41);
    for (Eigen::Index n = 2; n <= 7; ++n) {
        const Complex y = netsync::testing::random_complex(rng);
        const ComplexMatrix g = laplacian_c(complete_laplacian(n));
        const ComplexMatrix dagger = pseudo_inverse_zero_sum(y * g);
        CHECK(max_abs_diff(dagger, g / (static_cast<double>(n * n) * y)) < 1e-12);
    }
    ComplexMatrix two(2, 2);
    two << 1, -1, -1, 1;
    CHECK(max_abs_diff(pseudo_inverse_zero_sum(two), two / 4.0) < 1e-15);

    ComplexMatrix disconnected = ComplexMatrix::Zero(4, 4);
    disconnected.topLeftCorner(2, 2) = two;
    disconnected.bottomRightCorner(2, 2) = two;
    CHECK_THROWS_AS(pseudo_inverse_zero_sum(disconnected), RankDeficient);
    CHECK_THROWS_AS(pseudo_inverse_zero_sum(ComplexMatrix::Identity(3, 3)), DegenerateInput);
}

TEST_CASE("pseudo-inverse projector identity on random Laplacians") {
    std::mt19937 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 8);
        const ComplexMatrix y = laplacian_c(netsync::testing::random_laplacian(rng, n)) *
                                netsync::testing::random_complex(rng);
        const ComplexMatrix d = pseudo_inverse_zero_sum(y);
        const ComplexMatrix pi = laplacian_c(projector(n));
        CHECK(max_abs_diff(y * d, pi) < 1e-9);
        CHECK(max_abs_diff(d * y, pi) < 1e-9);
    }
}

TEST_CASE("effective_impedance examples") {
    CHECK(std::abs(effective_impedance(star_matrix(), 0, 1) - 2.0) < 1e-12);
    CHECK(effective_impedance(star_matrix(), 2, 2) == Complex(0.0, 0.0));
    std::mt19937 rng(47);
    for (Eigen::Index n = 3; n <= 8; ++n) {
        const Complex y = netsync::testing::random_complex(rng);
        const ComplexMatrix m = laplacian_c(complete_laplacian(n)) * y;
        for (std::size_t a = 0; a < static_cast<std::size_t>(n); ++a) {
            for (std::size_t b = a + 1; b < static_cast<std::size_t>(n); ++b) {
                CHECK(rel_diff(effective_impedance(m, a, b), 2.0 / (static_cast<double>(n) * y)) < 1e-10);
            }
        }
    }
}

TEST_CASE("effective_impedance_matrix: star with load") {
    const Complex z_net{0.3, 0.2};
    const Complex z_load{1.5, -0.4};
    const std::size_t n = 4;
    ComplexMatrix y_a = ComplexMatrix::Zero(n + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        y_a(i, i) += 1.0 / z_net;
        y_a(n, n) += 1.0 / z_net;
        y_a(i, n) -= 1.0 / z_net;
        y_a(n, i) -= 1.0 / z_net;
    }
    y_a(n, n) += 1.0 / z_load;
    const ComplexMatrix y = kron_reduce(y_a, n).y;
    const EffectiveImpedanceMatrix z = effective_impedance_matrix(y, true);
    CHECK(z.dim() == 5);
    for (Eigen::Index i = 0; i < 4; ++i) {
        CHECK(z(i, i) == Complex(0.0, 0.0));
        CHECK(rel_diff(z(i, 4), z_net + z_load) < 1e-12);
        for (Eigen::Index j = i + 1; j < 4; ++j) CHECK(rel_diff(z(i, j), 2.0 * z_net) < 1e-12);
    }
    CHECK(asymmetry(z.z) == 0.0);
}

TEST_CASE("grounded_inverse_entry examples") {
    ComplexMatrix two(2, 2);
    two << 1, -1, -1, 1;
    const ComplexMatrix d = pseudo_inverse_zero_sum(two);
    CHECK(grounded_inverse_entry(d, 1, 1, 1) == Complex(0.0, 0.0));
    CHECK(std::abs(grounded_inverse_entry(d, 0, 0, 1) - 1.0) < 1e-15);

    std::mt19937 rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index n = 3 + static_cast<Eigen::Index>(rng() % 6);
        const ComplexMatrix y = laplacian_c(netsync::testing::random_laplacian(rng, n)) *
                                netsync::testing::random_complex(rng);
        const auto ref = static_cast<std::size_t>(rng() % static_cast<unsigned>(n));
        const ComplexMatrix dagger = pseudo_inverse_zero_sum(y);
        std::vector<std::size_t> keep;
        for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
            if (k != ref) keep.push_back(k);
        }
        ComplexMatrix grounded(n - 1, n - 1);
        for (Eigen::Index i = 0; i < n - 1; ++i) {
            for (Eigen::Index j = 0; j < n - 1; ++j) grounded(i, j) = y(keep[i], keep[j]);
        }
        const ComplexMatrix direct = mat_inverse(grounded);
        for (Eigen::Index i = 0; i < n - 1; ++i) {
            for (Eigen::Index j = 0; j < n - 1; ++j) {
                CHECK(std::abs(grounded_inverse_entry(dagger, keep[i], keep[j], ref) - direct(i, j)) <=
                      1e-9 * direct.cwiseAbs().maxCoeff());
            }
        }
    }
}

TEST_CASE("ydagger_from_z examples") {
    for (Eigen::Index n = 2; n <= 6; ++n) {
        const Complex z_eff{0.7, -0.3};
        EffectiveImpedanceMatrix z{(ComplexMatrix::Constant(n, n, 1.0) - ComplexMatrix::Identity(n, n)) * z_eff};
        const ComplexMatrix expected = laplacian_c(complete_laplacian(n)) * (z_eff / (2.0 * static_cast<double>(n)));
        CHECK(max_abs_diff(ydagger_from_z(z), expected) < 1e-14);
    }
    EffectiveImpedanceMatrix z2{ComplexMatrix::Zero(2, 2)};
    z2.z(0, 1) = z2.z(1, 0) = 4.0;
    ComplexMatrix two(2, 2);
    two << 1, -1, -1, 1;
    CHECK(max_abs_diff(ydagger_from_z(z2), two) < 1e-15);
    CHECK(max_abs_diff(pseudo_inverse_zero_sum(two / 4.0), two) < 1e-14);
}

TEST_CASE("homogeneous_params: star-with-load against direct Schur complement") {
    std::mt19937 rng(59);
    std::uniform_real_distribution<double> val(0.1, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double z_net = val(rng);
        const double z_load = val(rng);
        const std::size_t n = 3;
        ComplexMatrix y_a = ComplexMatrix::Zero(4, 4);
        for (Eigen::Index i = 0; i < 3; ++i) {
            y_a(i, i) += 1.0 / z_net;
            y_a(3, 3) += 1.0 / z_net;
            y_a(i, 3) -= 1.0 / z_net;
            y_a(3, i) -= 1.0 / z_net;
        }
        y_a(3, 3) += 1.0 / z_load;
        const ComplexMatrix y = kron_reduce(y_a, n).y;
        const Complex direct_series = -y(0, 1);
        const Complex direct_shunt = y.row(0).sum();
        CHECK(rel_diff(direct_shunt, 1.0 / (z_net + 3.0 * z_load)) < 1e-12);
        CHECK(rel_diff(direct_series, z_load / (z_net * (z_net + 3.0 * z_load))) < 1e-12);

        const auto h = homogeneous_params<Complex>(2.0 * z_net, Complex(z_net + z_load), n);
        REQUIRE(h.y_shunt.has_value());
        CHECK(rel_diff(h.y_series, direct_series) < 1e-10);
        CHECK(rel_diff(*h.y_shunt, direct_shunt) < 1e-10);
    }
}

TEST_CASE("homogeneous_params: no shunt and forward round trip") {
    const auto h = homogeneous_params<Complex>(2.0, std::nullopt, 4);
    CHECK(std::abs(h.y_series - 0.25) < 1e-15);
    CHECK_FALSE(h.y_shunt.has_value());

    std::mt19937 rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng() % 7;
        const double nd = static_cast<double>(n);
        const Complex ys = netsync::testing::random_complex(rng);
        const Complex ysh = netsync::testing::random_complex(rng);
        const Complex z_es = 2.0 / (nd * ys + ysh);
        const Complex z_esh = (ysh + ys) / (ysh * (nd * ys + ysh));
        const auto back = homogeneous_params<Complex>(z_es, z_esh, n);
        CHECK(rel_diff(back.y_series, ys) < 1e-10);
        CHECK(rel_diff(*back.y_shunt, ysh) < 1e-10);
    }
}

TEST_CASE("homogeneous_params: guard") {
    const std::size_t n = 3;
    const Complex z_esh{1.0, 0.0};
    const Complex z_es = z_esh * (2.0 * 3.0 / 2.0);
    CHECK_THROWS_AS(homogeneous_params<Complex>(z_es, z_esh, n), GuardViolated);
    CHECK_THROWS_AS(homogeneous_params<Complex>(Complex(0.0), std::nullopt, n), GuardViolated);
    CHECK_THROWS_AS(homogeneous_params<Complex>(Complex(1.0), std::nullopt, 1), GuardViolated);
}

TEST_CASE("homogeneous_params on rational functions") {
    // z_net = 1 + s, z_load = 2, N = 3
    const RationalFunction z_net(Polynomial({1.0, 1.0}));
    const RationalFunction z_load = RationalFunction::constant(2.0);
    const auto h = homogeneous_params<RationalFunction>(z_net.scaled(2.0), z_net + z_load, 3);
    for (double w : {0.1, 1.0, 10.0}) {
        const Complex s{0.0, w};
        const Complex zn = 1.0 + s;
        CHECK(rel_diff(h.y_shunt->eval(s), 1.0 / (zn + 6.0)) < 1e-10);
        CHECK(rel_diff(h.y_series.eval(s), 2.0 / (zn * (zn + 6.0))) < 1e-10);
    }
}

TEST_CASE("closure: reduced row sums vanish without shunts only") {
    std::mt19937 rng(67);
    for (int trial = 0; trial < 20; ++trial) {
        netsync::testing::NetGen gen;
        gen.interior_shunt = false;
        const Netlist net = netsync::testing::random_netlist(rng, gen);
        for (int k = 0; k < 10; ++k) {
            const ComplexMatrix y = eval_reduced(net, {0.0, netsync::testing::random_omega(rng)});
            CHECK(y.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-9 * y.norm());
        }
        gen.interior_shunt = true;
        const Netlist shunted = netsync::testing::random_netlist(rng, gen);
        const ComplexMatrix y = eval_reduced(shunted, {0.0, netsync::testing::random_omega(rng)});
        CHECK(y.rowwise().sum().cwiseAbs().maxCoeff() > 1e-6 * y.norm());
    }
}

TEST_CASE("augmentation commutes with Kron reduction") {
    std::mt19937 rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        netsync::testing::NetGen gen;
        gen.interior_shunt = true;
        const Netlist net = netsync::testing::random_netlist(rng, gen);
        const ComplexMatrix y_a = eval_admittance(assemble_admittance(net), {0.0, netsync::testing::random_omega(rng)});
        std::vector<std::size_t> keep;
        for (std::size_t k = 0; k < net.n_boundary; ++k) keep.push_back(k);
        keep.push_back(net.dim());
        const ComplexMatrix left = kron_reduce(augment(y_a), keep).y;
        const ComplexMatrix right = augment(kron_reduce(y_a, net.n_boundary).y);
        CHECK(max_abs_diff(left, right) <= 1e-9 * right.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("effective impedances are invariant under reduction and augmentation") {
    std::mt19937 rng(73);
    for (int trial = 0; trial < 20; ++trial) {
        netsync::testing::NetGen gen;
        gen.interior_shunt = trial % 2 == 0;
        const Netlist net = netsync::testing::random_netlist(rng, gen);
        const ComplexMatrix y_a = eval_admittance(assemble_admittance(net), {0.0, netsync::testing::random_omega(rng)});
        const ComplexMatrix y = kron_reduce(y_a, net.n_boundary).y;
        const auto z_full = effective_impedance_matrix(y_a, false);
        const auto z_red = effective_impedance_matrix(y, false);
        for (Eigen::Index i = 0; i < y.rows(); ++i) {
            for (Eigen::Index j = i + 1; j < y.rows(); ++j) CHECK(rel_diff(z_red(i, j), z_full(i, j)) < 1e-9);
        }
        if (!gen.interior_shunt) continue;
        // with a shunt, ground joins the boundary and node-to-ground values survive too
        const auto z_aug_full = effective_impedance_matrix(y_a, true);
        const auto z_aug_red = effective_impedance_matrix(y, true);
        const auto g_full = static_cast<Eigen::Index>(net.dim());
        const Eigen::Index g_red = y.rows();
        for (Eigen::Index i = 0; i < y.rows(); ++i) {
            CHECK(rel_diff(z_aug_red(i, g_red), z_aug_full(i, g_full)) < 1e-9);
            for (Eigen::Index j = i + 1; j < y.rows(); ++j) CHECK(rel_diff(z_aug_red(i, j), z_aug_full(i, j)) < 1e-9);
        }
    }
}

TEST_CASE("homogeneity is detectable: perturbing one weight breaks uniform Z") {
    for (Eigen::Index n = 3; n <= 8; ++n) {
        RealMatrix l = complete_laplacian(n);
        l(0, 0) += 0.01;
        l(1, 1) += 0.01;
        l(0, 1) -= 0.01;
        l(1, 0) -= 0.01;
        const auto z = effective_impedance_matrix(laplacian_c(l), false);
        CHECK(rel_diff(z(0, 1), z(1, 2)) > 1e-9);
    }
}
