#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netsync/json_io.hpp"
#include "netsync/reduction.hpp"

namespace netsync {

enum class NetworkKind { no_shunt_uniform, no_shunt_homogeneous, shunt_uniform, shunt_homogeneous, unclassified };

std::string_view kind_name(NetworkKind kind);
bool is_homogeneous(NetworkKind kind);
bool has_shunt(NetworkKind kind);

/// Reduced network in one of the certifiable forms
///   Y(s) = y_series(s) L              (no shunt)
///   Y(s) = y_shunt(s) I + y_series(s) L
/// with L = N I - 1 1^T for the homogeneous kinds.
struct NetworkClass {
    NetworkKind kind = NetworkKind::unclassified;
    std::size_t n = 0;
    std::optional<RationalFunction> y_series;
    std::optional<RationalFunction> y_shunt;
    RealMatrix laplacian;
    RealVector eigenvalues;  // ascending
    std::string reason;      // set when unclassified
    std::vector<std::string> notes;

    /// y_shunt(s) I + y_series(s) L at s.
    ComplexMatrix eval(Complex s, const Tolerances& tol = {}) const;
};

inline constexpr std::array<double, 5> kDefaultProbeOmegas{1e-2, 1e-1, 1.0, 1e1, 1e2};

/// Decides the network class from the netlist, testing function identities at
/// s = j*omega for every probe. DegenerateHomogeneous when the inversion guard
/// of homogeneous_params fails.
NetworkClass classify(const Netlist& net, std::span<const double> probe_omegas = kDefaultProbeOmegas,
                      const Tolerances& tol = {});

OrderedJson class_to_json(const NetworkClass& cls);

}  // namespace netsync
