#pragma once

#include <array>
#include <string>

namespace netsync {

/// Component values of the Chua-topology oscillator: C_a at the terminal, in
/// parallel with R in series with (C_b || L); plus the odd piecewise-linear
/// conductance g. Defaults are the classic double-scroll values.
struct OscillatorParams {
    double r = 10.0 / 7.0;
    double l = 1.0 / 7.0;
    double c_a = 1.0 / 9.0;
    double c_b = 1.0;
    std::array<double, 3> slopes{-0.8, -0.5, 0.8};
    std::array<double, 2> breakpoints{1.0, 14.0};

    friend bool operator==(const OscillatorParams&, const OscillatorParams&) = default;
};

struct OscillatorConfig {
    std::string preset = "chua";  // "chua" | "custom"
    OscillatorParams params;

    friend bool operator==(const OscillatorConfig&, const OscillatorConfig&) = default;
};

}  // namespace netsync
