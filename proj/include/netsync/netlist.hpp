#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netsync/oscillator_params.hpp"
#include "netsync/rational.hpp"

namespace netsync {

/// Series R-L-C element. An absent capacitor is a short.
struct SeriesRlc {
    double r = 0.0;
    double l = 0.0;
    std::optional<double> c;

    /// z(s) = R + sL + 1/(sC)
    RationalFunction impedance() const;
    /// y(s) = 1/z(s)
    RationalFunction admittance() const;
    /// (R, L, 1/C), the coefficients that make z linear in the element values.
    std::array<double, 3> coefficient_triple() const;

    friend bool operator==(const SeriesRlc&, const SeriesRlc&) = default;
};

struct BranchSpec {
    std::string from;
    std::string to;
    SeriesRlc rlc;
    std::size_t from_index = 0;
    std::size_t to_index = 0;

    friend bool operator==(const BranchSpec&, const BranchSpec&) = default;
};

struct ShuntSpec {
    std::string node;
    SeriesRlc rlc;
    std::size_t index = 0;

    friend bool operator==(const ShuntSpec&, const ShuntSpec&) = default;
};

/// Validated network. Nodes are densely indexed with the boundary nodes first
/// (in the order listed under "boundary"), then interior nodes in input order.
struct Netlist {
    std::vector<std::string> nodes;
    std::size_t n_boundary = 0;
    std::vector<BranchSpec> branches;
    std::vector<ShuntSpec> shunts;
    OscillatorConfig oscillator;

    std::size_t dim() const noexcept { return nodes.size(); }
    std::size_t n_interior() const noexcept { return nodes.size() - n_boundary; }
    bool has_shunts() const noexcept { return !shunts.empty(); }

    friend bool operator==(const Netlist&, const Netlist&) = default;
};

/// Parses and validates the JSON netlist document.
/// SchemaError: malformed document; ValidationError: disconnected graph,
/// shunt on a boundary node, duplicate branch, bad element values.
Netlist parse_netlist(std::string_view json_text);
Netlist load_netlist(const std::string& path);

/// Canonical JSON form (dense node order, every oscillator parameter explicit).
std::string serialize_netlist(const Netlist& net);

/// Star of n boundary nodes around one interior hub, each spoke z_net and a
/// shunt z_load at the hub.
Netlist star_with_load(std::size_t n, const SeriesRlc& spoke, const SeriesRlc& load);

}  // namespace netsync
