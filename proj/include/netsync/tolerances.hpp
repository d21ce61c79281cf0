#pragma once

#include <cstdlib>
#include <string>

#include "netsync/errors.hpp"

namespace netsync {

inline constexpr double kDefaultStructuralTol = 1e-9;
inline constexpr double kDefaultNumericTol = 1e-10;

/// Two separate slacks: structural_tol for yes/no questions about structure
/// (symmetry, zero row sums, uniformity), numeric_tol for solver residuals,
/// coefficient stripping and pole proximity.
struct Tolerances {
    double structural_tol = kDefaultStructuralTol;
    double numeric_tol = kDefaultNumericTol;

    void validate() const {
        if (!(structural_tol > 0.0) || !(numeric_tol > 0.0)) {
            throw InvalidParams("tolerances must be strictly positive");
        }
    }

    /// Defaults, with structural_tol overridden by NETSYNC_TOL when set.
    static Tolerances from_environment() {
        Tolerances tol;
        if (const char* env = std::getenv("NETSYNC_TOL"); env != nullptr && *env != '\0') {
            char* end = nullptr;
            const double value = std::strtod(env, &end);
            if (end == env || *end != '\0') {
                throw InvalidParams(std::string("NETSYNC_TOL is not a number: ") + env);
            }
            tol.structural_tol = value;
        }
        tol.validate();
        return tol;
    }
};

}  // namespace netsync
