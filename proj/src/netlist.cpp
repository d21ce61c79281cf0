#include "netsync/netlist.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "netsync/json_io.hpp"

namespace netsync {

using nlohmann::json;

RationalFunction SeriesRlc::impedance() const {
    if (c) {
        // (L C s^2 + R C s + 1) / (C s)
        return RationalFunction(Polynomial({1.0, r * *c, l * *c}), Polynomial({0.0, *c}));
    }
    return RationalFunction(Polynomial({r, l}));
}

RationalFunction SeriesRlc::admittance() const {
    return impedance().reciprocal();
}

std::array<double, 3> SeriesRlc::coefficient_triple() const {
    return {r, l, c ? 1.0 / *c : 0.0};
}

namespace {

void require_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) {
        throw SchemaError(where + " must be an object");
    }
    for (const auto& item : obj.items()) {
        if (!allowed.contains(item.key())) {
            throw SchemaError("unknown key '" + item.key() + "' in " + where);
        }
    }
}

double number_at(const json& obj, const char* key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_number()) {
        throw SchemaError(where + "." + key + " must be a number");
    }
    return v.get<double>();
}

std::vector<std::string> string_list(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc.at(key).is_array()) {
        throw SchemaError(std::string("'") + key + "' must be an array of strings");
    }
    std::vector<std::string> out;
    for (const auto& v : doc.at(key)) {
        if (!v.is_string()) {
            throw SchemaError(std::string("'") + key + "' must contain only strings");
        }
        out.push_back(v.get<std::string>());
    }
    return out;
}

SeriesRlc parse_rlc(const json& obj, const std::string& where) {
    SeriesRlc e;
    if (obj.contains("r")) e.r = number_at(obj, "r", where);
    if (obj.contains("l")) e.l = number_at(obj, "l", where);
    if (obj.contains("c") && !obj.at("c").is_null()) e.c = number_at(obj, "c", where);
    if (!(e.r >= 0.0) || !(e.l >= 0.0)) {
        throw ValidationError(where + ": r and l must be >= 0");
    }
    if (e.c && !(*e.c > 0.0)) {
        throw ValidationError(where + ": c must be > 0 when present");
    }
    if (e.r == 0.0 && e.l == 0.0 && !e.c) {
        throw ValidationError(where + ": element is an ideal short (r = l = 0, no c)");
    }
    return e;
}

OscillatorConfig parse_oscillator(const json& obj) {
    require_keys(obj, {"preset", "params"}, "oscillator");
    OscillatorConfig cfg;
    if (obj.contains("preset")) {
        if (!obj.at("preset").is_string()) {
            throw SchemaError("oscillator.preset must be a string");
        }
        cfg.preset = obj.at("preset").get<std::string>();
    }
    if (cfg.preset != "chua" && cfg.preset != "custom") {
        throw SchemaError("oscillator.preset must be \"chua\" or \"custom\"");
    }
    const bool custom = cfg.preset == "custom";
    const json params = obj.value("params", json::object());
    require_keys(params, {"r", "l", "c_a", "c_b", "slopes", "breakpoints"}, "oscillator.params");
    auto scalar = [&](const char* key, double& dst) {
        if (params.contains(key)) {
            dst = number_at(params, key, "oscillator.params");
        } else if (custom) {
            throw SchemaError(std::string("custom oscillator requires params.") + key);
        }
    };
    scalar("r", cfg.params.r);
    scalar("l", cfg.params.l);
    scalar("c_a", cfg.params.c_a);
    scalar("c_b", cfg.params.c_b);
    auto array = [&](const char* key, auto& dst) {
        if (!params.contains(key)) {
            if (custom) throw SchemaError(std::string("custom oscillator requires params.") + key);
            return;
        }
        const auto& a = params.at(key);
        if (!a.is_array() || a.size() != dst.size()) {
            throw SchemaError(std::string("oscillator.params.") + key + " must have " +
                              std::to_string(dst.size()) + " numbers");
        }
        for (std::size_t i = 0; i < dst.size(); ++i) {
            if (!a[i].is_number()) throw SchemaError(std::string("oscillator.params.") + key + " must be numeric");
            dst[i] = a[i].get<double>();
        }
    };
    array("slopes", cfg.params.slopes);
    array("breakpoints", cfg.params.breakpoints);
    return cfg;
}

void check_connected(const Netlist& net) {
    std::vector<std::vector<std::size_t>> adj(net.dim());
    for (const auto& b : net.branches) {
        adj[b.from_index].push_back(b.to_index);
        adj[b.to_index].push_back(b.from_index);
    }
    std::vector<bool> seen(net.dim(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v : adj[u]) {
            if (!seen[v]) {
                seen[v] = true;
                ++count;
                stack.push_back(v);
            }
        }
    }
    if (count != net.dim()) {
        for (std::size_t i = 0; i < net.dim(); ++i) {
            if (!seen[i]) {
                throw ValidationError("network is disconnected: node '" + net.nodes[i] +
                                      "' is unreachable from '" + net.nodes[0] + "'");
            }
        }
    }
}

json rlc_to_json(const SeriesRlc& e) {
    json j = json::object();
    j["r"] = e.r;
    j["l"] = e.l;
    if (e.c) j["c"] = *e.c;
    return j;
}

}  // namespace

Netlist parse_netlist(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    try {
        require_keys(doc, {"nodes", "boundary", "branches", "shunts", "oscillator"}, "netlist");
        const auto node_list = string_list(doc, "nodes");
        const auto boundary = string_list(doc, "boundary");
        if (node_list.empty()) throw ValidationError("netlist has no nodes");
        if (boundary.empty()) throw ValidationError("boundary set is empty");

        std::set<std::string> node_set(node_list.begin(), node_list.end());
        if (node_set.size() != node_list.size()) throw ValidationError("duplicate node id");
        std::set<std::string> boundary_set(boundary.begin(), boundary.end());
        if (boundary_set.size() != boundary.size()) throw ValidationError("duplicate boundary id");

        Netlist net;
        std::map<std::string, std::size_t> index;
        for (const auto& b : boundary) {
            if (!node_set.contains(b)) throw ValidationError("boundary node '" + b + "' is not in nodes");
            index[b] = net.nodes.size();
            net.nodes.push_back(b);
        }
        net.n_boundary = net.nodes.size();
        for (const auto& n : node_list) {
            if (!boundary_set.contains(n)) {
                index[n] = net.nodes.size();
                net.nodes.push_back(n);
            }
        }

        const json branches = doc.value("branches", json::array());
        if (!branches.is_array()) throw SchemaError("'branches' must be an array");
        std::set<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t k = 0; k < branches.size(); ++k) {
            const auto& b = branches[k];
            const std::string where = "branches[" + std::to_string(k) + "]";
            require_keys(b, {"from", "to", "r", "l", "c"}, where);
            if (!b.contains("from") || !b.at("from").is_string() || !b.contains("to") || !b.at("to").is_string()) {
                throw SchemaError(where + " needs string 'from' and 'to'");
            }
            BranchSpec spec;
            spec.from = b.at("from").get<std::string>();
            spec.to = b.at("to").get<std::string>();
            if (!index.contains(spec.from) || !index.contains(spec.to)) {
                throw ValidationError(where + " references an unknown node");
            }
            if (spec.from == spec.to) throw ValidationError(where + " is a self loop");
            spec.from_index = index.at(spec.from);
            spec.to_index = index.at(spec.to);
            spec.rlc = parse_rlc(b, where);
            const auto key = std::minmax(spec.from_index, spec.to_index);
            if (!pairs.insert({key.first, key.second}).second) {
                throw ValidationError(where + " duplicates an existing branch between '" + spec.from + "' and '" +
                                      spec.to + "'; combine parallel branches into one element");
            }
            net.branches.push_back(std::move(spec));
        }

        const json shunts = doc.value("shunts", json::array());
        if (!shunts.is_array()) throw SchemaError("'shunts' must be an array");
        std::set<std::size_t> shunted;
        for (std::size_t k = 0; k < shunts.size(); ++k) {
            const auto& s = shunts[k];
            const std::string where = "shunts[" + std::to_string(k) + "]";
            require_keys(s, {"node", "r", "l", "c"}, where);
            if (!s.contains("node") || !s.at("node").is_string()) throw SchemaError(where + " needs string 'node'");
            ShuntSpec spec;
            spec.node = s.at("node").get<std::string>();
            if (!index.contains(spec.node)) throw ValidationError(where + " references an unknown node");
            spec.index = index.at(spec.node);
            if (spec.index < net.n_boundary) {
                throw ValidationError(where + ": boundary node '" + spec.node + "' must not carry a shunt");
            }
            if (!shunted.insert(spec.index).second) {
                throw ValidationError(where + ": node '" + spec.node + "' already has a shunt");
            }
            spec.rlc = parse_rlc(s, where);
            net.shunts.push_back(std::move(spec));
        }

        if (doc.contains("oscillator")) {
            net.oscillator = parse_oscillator(doc.at("oscillator"));
        }
        check_connected(net);
        return net;
    } catch (const json::exception& e) {
        throw SchemaError(e.what());
    }
}

Netlist load_netlist(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw SchemaError("cannot open netlist file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_netlist(buf.str());
}

std::string serialize_netlist(const Netlist& net) {
    nlohmann::ordered_json doc;
    doc["nodes"] = net.nodes;
    doc["boundary"] = std::vector<std::string>(net.nodes.begin(), net.nodes.begin() + static_cast<long>(net.n_boundary));
    doc["branches"] = nlohmann::ordered_json::array();
    for (const auto& b : net.branches) {
        nlohmann::ordered_json j;
        j["from"] = b.from;
        j["to"] = b.to;
        const auto rlc = rlc_to_json(b.rlc);
        for (const auto& [k, v] : rlc.items()) j[k] = v;
        doc["branches"].push_back(j);
    }
    doc["shunts"] = nlohmann::ordered_json::array();
    for (const auto& s : net.shunts) {
        nlohmann::ordered_json j;
        j["node"] = s.node;
        const auto rlc = rlc_to_json(s.rlc);
        for (const auto& [k, v] : rlc.items()) j[k] = v;
        doc["shunts"].push_back(j);
    }
    const auto& p = net.oscillator.params;
    nlohmann::ordered_json params;
    params["r"] = p.r;
    params["l"] = p.l;
    params["c_a"] = p.c_a;
    params["c_b"] = p.c_b;
    params["slopes"] = p.slopes;
    params["breakpoints"] = p.breakpoints;
    doc["oscillator"] = {{"preset", net.oscillator.preset}, {"params", params}};
    return dump_json(doc);
}

Netlist star_with_load(std::size_t n, const SeriesRlc& spoke, const SeriesRlc& load) {
    if (n < 2) {
        throw InvalidParams("star needs at least two boundary nodes");
    }
    Netlist net;
    for (std::size_t i = 1; i <= n; ++i) {
        net.nodes.push_back(std::to_string(i));
    }
    net.n_boundary = n;
    net.nodes.push_back("hub");
    for (std::size_t i = 0; i < n; ++i) {
        net.branches.push_back(BranchSpec{net.nodes[i], "hub", spoke, i, n});
    }
    net.shunts.push_back(ShuntSpec{"hub", load, n});
    return net;
}

}  // namespace netsync
