#include "netsync/classify.hpp"

#include <algorithm>
#include <sstream>

namespace netsync {

std::string_view kind_name(NetworkKind kind) {
    switch (kind) {
        case NetworkKind::no_shunt_uniform: return "no_shunt_uniform";
        case NetworkKind::no_shunt_homogeneous: return "no_shunt_homogeneous";
        case NetworkKind::shunt_uniform: return "shunt_uniform";
        case NetworkKind::shunt_homogeneous: return "shunt_homogeneous";
        case NetworkKind::unclassified: return "unclassified";
    }
    return "unclassified";
}

bool is_homogeneous(NetworkKind kind) {
    return kind == NetworkKind::no_shunt_homogeneous || kind == NetworkKind::shunt_homogeneous;
}

bool has_shunt(NetworkKind kind) {
    return kind == NetworkKind::shunt_uniform || kind == NetworkKind::shunt_homogeneous;
}

ComplexMatrix NetworkClass::eval(Complex s, const Tolerances& tol) const {
    if (kind == NetworkKind::unclassified || !y_series) {
        throw Unclassified("network class has no reduced form: " + reason);
    }
    ComplexMatrix y = laplacian.cast<Complex>() * y_series->eval(s, tol);
    if (y_shunt) {
        y.diagonal().array() += y_shunt->eval(s, tol);
    }
    return y;
}

namespace {

struct Probe {
    Complex s;
    ComplexMatrix y;  // reduced, numeric
};

std::vector<Probe> reduced_at_probes(const Netlist& net, const SymbolicAdmittance& y_a,
                                     std::span<const double> omegas, const Tolerances& tol) {
    std::vector<Probe> out;
    out.reserve(omegas.size());
    for (double w : omegas) {
        const Complex s{0.0, w};
        out.push_back({s, kron_reduce(eval_admittance(y_a, s, tol), net.n_boundary, tol).y});
    }
    return out;
}

double rel_spread(const std::vector<Complex>& values) {
    const Complex ref = values.front();
    double spread = 0.0;
    for (const Complex& v : values) spread = std::max(spread, std::abs(v - ref));
    return spread / std::max(std::abs(ref), 1e-300);
}

/// Boundary-pair and (optionally) boundary-to-ground effective impedances,
/// when each set is uniform.
struct UniformZ {
    Complex z_series;
    std::optional<Complex> z_shunt;
};

std::optional<UniformZ> uniform_effective_impedances(const ComplexMatrix& y, bool grounded, const Tolerances& tol) {
    const Eigen::Index n = y.rows();
    const auto z = effective_impedance_matrix(y, grounded, tol);
    std::vector<Complex> pairs;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) pairs.push_back(z(i, j));
    }
    if (rel_spread(pairs) > tol.structural_tol) {
        return std::nullopt;
    }
    UniformZ out{pairs.front(), std::nullopt};
    if (grounded) {
        std::vector<Complex> to_ground;
        for (Eigen::Index i = 0; i < n; ++i) to_ground.push_back(z(i, n));
        if (rel_spread(to_ground) > tol.structural_tol) {
            return std::nullopt;
        }
        out.z_shunt = to_ground.front();
    }
    return out;
}

void set_complete_graph(NetworkClass& cls) {
    const auto n = static_cast<Eigen::Index>(cls.n);
    cls.laplacian = complete_laplacian(n);
    cls.eigenvalues = RealVector::Constant(n, static_cast<double>(n));
    cls.eigenvalues(0) = 0.0;
}

/// Symbolic entries must agree with the numerically inverted homogeneous map.
void check_homogeneous_consistency(NetworkClass& cls, const std::vector<Probe>& probes, bool grounded,
                                   const Tolerances& tol) {
    double worst = 0.0;
    for (const auto& p : probes) {
        const auto uz = uniform_effective_impedances(p.y, grounded, tol);
        HomogeneousAdmittances<Complex> h;
        try {
            h = homogeneous_params(uz->z_series, uz->z_shunt, cls.n, tol);
        } catch (const GuardViolated& e) {
            throw DegenerateHomogeneous(std::string("cannot invert effective impedances: ") + e.what());
        }
        const Complex ys = cls.y_series->eval(p.s, tol);
        worst = std::max(worst, std::abs(ys - h.y_series) / std::max(std::abs(h.y_series), 1e-300));
        if (h.y_shunt) {
            const Complex ysh = cls.y_shunt->eval(p.s, tol);
            worst = std::max(worst, std::abs(ysh - *h.y_shunt) / std::max(std::abs(*h.y_shunt), 1e-300));
        }
    }
    std::ostringstream note;
    note.precision(3);
    if (grounded) {
        note << "y_shunt = 2/(2N z_esh - (N-1) z_es), y_series = 2(2 z_esh - z_es)/(z_es (2N z_esh - (N-1) z_es)) "
                "from the effective impedances; max relative deviation from direct reduction "
             << worst;
    } else {
        note << "y_series = 2/(N z_es) from the effective impedances; max relative deviation from direct reduction "
             << worst;
    }
    cls.notes.push_back(note.str());
    if (worst > 1e-6) {
        cls.notes.push_back("warning: inverted homogeneous parameters disagree with the reduced admittance");
    }
}

std::optional<NetworkClass> try_uniform_with_shunt(const SymbolicAdmittance& y_red, const std::vector<Probe>& probes,
                                                  std::size_t n, const Tolerances& tol) {
    const auto nn = static_cast<Eigen::Index>(n);
    // reference branch: largest off-diagonal at the middle probe
    const ComplexMatrix& mid = probes[probes.size() / 2].y;
    Eigen::Index ri = 0, rj = 1;
    double best = -1.0;
    for (Eigen::Index i = 0; i < nn; ++i) {
        for (Eigen::Index j = i + 1; j < nn; ++j) {
            if (std::abs(mid(i, j)) > best) {
                best = std::abs(mid(i, j));
                ri = i;
                rj = j;
            }
        }
    }
    if (!(best > 0.0)) {
        return std::nullopt;
    }
    RealMatrix weights = RealMatrix::Zero(nn, nn);
    for (std::size_t k = 0; k < probes.size(); ++k) {
        const ComplexMatrix& y = probes[k].y;
        const double scale = y.cwiseAbs().maxCoeff();
        const Complex ref = y(ri, rj);
        if (std::abs(ref) <= tol.structural_tol * scale) {
            return std::nullopt;
        }
        const ComplexVector rows = y.rowwise().sum();
        for (Eigen::Index i = 0; i < nn; ++i) {
            if (std::abs(rows(i) - rows(0)) > tol.structural_tol * scale) {
                return std::nullopt;
            }
            for (Eigen::Index j = i + 1; j < nn; ++j) {
                const Complex ratio = y(i, j) / ref;
                if (std::abs(ratio.imag()) > tol.structural_tol * std::max(1.0, std::abs(ratio))) {
                    return std::nullopt;
                }
                if (k == 0) {
                    weights(i, j) = ratio.real();
                } else if (std::abs(weights(i, j) - ratio.real()) > tol.structural_tol * std::max(1.0, std::abs(ratio))) {
                    return std::nullopt;
                }
            }
        }
    }
    NetworkClass cls;
    cls.kind = NetworkKind::shunt_uniform;
    cls.n = n;
    cls.laplacian = RealMatrix::Zero(nn, nn);
    for (Eigen::Index i = 0; i < nn; ++i) {
        for (Eigen::Index j = i + 1; j < nn; ++j) {
            cls.laplacian(i, j) = cls.laplacian(j, i) = -weights(i, j);
            cls.laplacian(i, i) += weights(i, j);
            cls.laplacian(j, j) += weights(i, j);
        }
    }
    cls.y_series = cancel_common_roots(-y_red(static_cast<std::size_t>(ri), static_cast<std::size_t>(rj)));
    cls.y_shunt = cancel_common_roots(y_red.row_sum(0));
    cls.eigenvalues = sym_eig(cls.laplacian, tol).values;
    return cls;
}

}  // namespace

NetworkClass classify(const Netlist& net, std::span<const double> probe_omegas, const Tolerances& tol) {
    if (probe_omegas.empty()) {
        throw InvalidParams("classify needs at least one probe frequency");
    }
    NetworkClass cls;
    cls.n = net.n_boundary;
    if (cls.n < 2) {
        cls.reason = "fewer than two boundary nodes";
        return cls;
    }
    const SymbolicAdmittance y_a = assemble_admittance(net);
    const auto probes = reduced_at_probes(net, y_a, probe_omegas, tol);

    if (!net.has_shunts()) {
        for (const auto& p : probes) {
            if (!has_zero_row_sums(p.y, tol.structural_tol)) {
                cls.notes.push_back("warning: reduced row sums are not zero despite the absence of shunts");
                break;
            }
        }
        if (has_uniform_lines(net, tol)) {
            const UniformReduction u = kron_reduce_uniform(net, tol);
            cls.kind = NetworkKind::no_shunt_uniform;
            cls.y_series = u.y_series;
            cls.laplacian = u.laplacian;
            cls.eigenvalues = sym_eig(u.laplacian, tol).values;
            return cls;
        }
        const bool homogeneous = std::all_of(probes.begin(), probes.end(), [&](const Probe& p) {
            return uniform_effective_impedances(p.y, false, tol).has_value();
        });
        if (homogeneous) {
            const SymbolicAdmittance y_red = kron_reduce_symbolic(y_a, net.n_boundary);
            cls.kind = NetworkKind::no_shunt_homogeneous;
            cls.y_series = cancel_common_roots(-y_red(0, 1));
            set_complete_graph(cls);
            check_homogeneous_consistency(cls, probes, false, tol);
            return cls;
        }
        cls.reason = "branch impedances are not proportional and boundary effective impedances are not uniform";
        return cls;
    }

    const bool homogeneous = std::all_of(probes.begin(), probes.end(), [&](const Probe& p) {
        return uniform_effective_impedances(p.y, true, tol).has_value();
    });
    const SymbolicAdmittance y_red = kron_reduce_symbolic(y_a, net.n_boundary);
    if (homogeneous) {
        cls.kind = NetworkKind::shunt_homogeneous;
        cls.y_series = cancel_common_roots(-y_red(0, 1));
        cls.y_shunt = cancel_common_roots(y_red.row_sum(0));
        set_complete_graph(cls);
        check_homogeneous_consistency(cls, probes, true, tol);
        return cls;
    }
    if (auto uniform = try_uniform_with_shunt(y_red, probes, cls.n, tol)) {
        return *uniform;
    }
    cls.reason = "reduced admittance is not of the form y_shunt I + y_series L";
    return cls;
}

OrderedJson class_to_json(const NetworkClass& cls) {
    OrderedJson doc;
    doc["kind"] = std::string(kind_name(cls.kind));
    doc["n"] = cls.n;
    OrderedJson lambda = OrderedJson::array();
    for (Eigen::Index k = 0; k < cls.eigenvalues.size(); ++k) lambda.push_back(cls.eigenvalues(k));
    doc["lambda"] = lambda;
    doc["y_series"] = cls.y_series ? rf_to_json(*cls.y_series) : OrderedJson(nullptr);
    doc["y_shunt"] = cls.y_shunt ? rf_to_json(*cls.y_shunt) : OrderedJson(nullptr);
    doc["laplacian"] = cls.laplacian.size() > 0 ? real_matrix_to_json(cls.laplacian) : OrderedJson::array();
    if (cls.kind == NetworkKind::unclassified) {
        doc["reason"] = cls.reason;
    }
    doc["notes"] = cls.notes;
    return doc;
}

}  // namespace netsync
