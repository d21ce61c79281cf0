#pragma once

#include <complex>
#include <random>
#include <set>
#include <string>

#include "netsync/netlist.hpp"
#include "netsync/linalg.hpp"

namespace netsync::testing {

inline std::string data_path(const std::string& name) {
    return std::string(NETSYNC_DATA_DIR) + "/" + name;
}

inline double rel_diff(Complex a, Complex b) {
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

enum class Lines { mixed, inductive, resistive };

struct NetGen {
    std::size_t min_nodes = 3;
    std::size_t max_nodes = 10;
    bool interior_shunt = false;
    Lines lines = Lines::mixed;
};

inline SeriesRlc random_element(std::mt19937& rng, Lines lines) {
    std::uniform_real_distribution<double> val(0.2, 2.0);
    SeriesRlc e;
    switch (lines) {
        case Lines::inductive: e.l = val(rng); break;
        case Lines::resistive: e.r = val(rng); break;
        case Lines::mixed:
            e.r = val(rng);
            if (rng() % 2) e.l = val(rng);
            if (rng() % 3 == 0) e.c = val(rng);
            break;
    }
    return e;
}

/// Connected netlist with at least one interior node. Boundary nodes come first.
inline Netlist random_netlist(std::mt19937& rng, const NetGen& gen = {}) {
    std::uniform_int_distribution<std::size_t> size(gen.min_nodes, gen.max_nodes);
    const std::size_t n = size(rng);
    std::uniform_int_distribution<std::size_t> nb_dist(2, n - 1);
    const std::size_t nb = nb_dist(rng);
    Netlist net;
    for (std::size_t i = 0; i < n; ++i) net.nodes.push_back("n" + std::to_string(i));
    net.n_boundary = nb;
    std::set<std::pair<std::size_t, std::size_t>> used;
    auto add = [&](std::size_t a, std::size_t b) {
        const auto key = std::minmax(a, b);
        if (a == b || !used.insert({key.first, key.second}).second) return;
        net.branches.push_back(BranchSpec{net.nodes[a], net.nodes[b], random_element(rng, gen.lines), a, b});
    };
    for (std::size_t i = 1; i < n; ++i) {
        std::uniform_int_distribution<std::size_t> parent(0, i - 1);
        add(i, parent(rng));
    }
    std::uniform_int_distribution<std::size_t> any(0, n - 1);
    const std::size_t extra = n / 2;
    for (std::size_t k = 0; k < extra; ++k) add(any(rng), any(rng));
    if (gen.interior_shunt) {
        std::uniform_int_distribution<std::size_t> interior(nb, n - 1);
        const std::size_t node = interior(rng);
        std::uniform_real_distribution<double> val(0.5, 2.0);
        net.shunts.push_back(ShuntSpec{net.nodes[node], SeriesRlc{val(rng), 0.0, std::nullopt}, node});
    }
    return net;
}

/// Random connected weighted Laplacian with positive weights.
inline RealMatrix random_laplacian(std::mt19937& rng, Eigen::Index n) {
    std::uniform_real_distribution<double> w(0.3, 3.0);
    RealMatrix l = RealMatrix::Zero(n, n);
    auto add = [&](Eigen::Index i, Eigen::Index j, double v) {
        l(i, i) += v;
        l(j, j) += v;
        l(i, j) -= v;
        l(j, i) -= v;
    };
    for (Eigen::Index i = 1; i < n; ++i) {
        add(i, static_cast<Eigen::Index>(rng() % static_cast<unsigned>(i)), w(rng));
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto i = static_cast<Eigen::Index>(rng() % static_cast<unsigned>(n));
        const auto j = static_cast<Eigen::Index>(rng() % static_cast<unsigned>(n));
        if (i != j) add(i, j, w(rng));
    }
    return l;
}

inline Complex random_complex(std::mt19937& rng, double lo = 0.2, double hi = 2.0) {
    std::uniform_real_distribution<double> mag(lo, hi);
    std::uniform_real_distribution<double> ang(-1.2, 1.2);
    return std::polar(mag(rng), ang(rng));
}

inline double random_omega(std::mt19937& rng) {
    std::uniform_real_distribution<double> e(-2.0, 2.0);
    return std::pow(10.0, e(rng));
}

}  // namespace netsync::testing
