#include "netsync/json_io.hpp"

#include <cmath>
#include <cstdio>

namespace netsync {

std::string format_double(double v) {
    if (!std::isfinite(v)) {
        return "null";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    // keep floats recognisable as floats
    if (s.find_first_of(".eEn") == std::string::npos) {
        s += ".0";
    }
    return s;
}

namespace {

template <class J>
void write(const J& j, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += inner + J(it.key()).dump() + ": ";
                write(it.value(), out, indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // arrays of scalars stay on one line
            bool flat = true;
            for (const auto& v : j) {
                if (v.is_structured()) flat = false;
            }
            out += flat ? "[" : "[\n";
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += flat ? ", " : ",\n";
                first = false;
                if (!flat) out += inner;
                write(v, out, indent + 1);
            }
            out += flat ? "]" : "\n" + pad + "]";
            return;
        }
        case nlohmann::json::value_t::number_float:
            out += format_double(j.template get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

std::string dump_json(const OrderedJson& doc) {
    std::string out;
    write(doc, out, 0);
    out += "\n";
    return out;
}

std::string dump_json(const nlohmann::json& doc) {
    std::string out;
    write(doc, out, 0);
    out += "\n";
    return out;
}

OrderedJson rf_to_json(const RationalFunction& f) {
    OrderedJson j;
    j["num"] = f.num().coeffs();
    j["den"] = f.den().coeffs();
    return j;
}

OrderedJson complex_matrix_to_json(const ComplexMatrix& m) {
    OrderedJson j;
    j["dim"] = m.rows();
    OrderedJson entries = OrderedJson::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            entries.push_back({m(r, c).real(), m(r, c).imag()});
        }
    }
    j["entries"] = std::move(entries);
    return j;
}

OrderedJson real_matrix_to_json(const RealMatrix& m) {
    OrderedJson rows = OrderedJson::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        OrderedJson row = OrderedJson::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace netsync
