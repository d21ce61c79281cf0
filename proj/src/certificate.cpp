#include "netsync/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace netsync {

void SweepConfig::validate() const {
    if (!(omega_min > 0.0) || !(omega_max > omega_min) || !std::isfinite(omega_max)) {
        throw InvalidParams("sweep needs 0 < omega_min < omega_max");
    }
    if (points < 100) {
        throw InvalidParams("sweep needs at least 100 points");
    }
    if (!(refine_tol > 0.0)) {
        throw InvalidParams("refine_tol must be positive");
    }
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
    if (count == 0) {
        return {};
    }
    if (count == 1) {
        return {lo};
    }
    std::vector<double> out(count);
    const double a = std::log10(lo);
    const double step = (std::log10(hi) - a) / static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k) out[k] = std::pow(10.0, a + step * static_cast<double>(k));
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::vector<double> SweepConfig::grid() const {
    validate();
    return log_grid(omega_min, omega_max, points);
}

std::string_view stability_name(Stability s) {
    switch (s) {
        case Stability::stable: return "stable";
        case Stability::marginal: return "marginal";
        case Stability::unstable: return "unstable";
    }
    return "unstable";
}

PoleVerdict pole_stability(const RationalFunction& h) {
    PoleVerdict out;
    const RationalFunction reduced = cancel_common_roots(h);
    if (reduced.den().degree() < 1) {
        return out;
    }
    for (const Complex& p : poly_roots(reduced.den())) {
        const double band = 1e-9 * std::max(1.0, std::abs(p));
        if (p.real() > band) {
            out.stability = Stability::unstable;
        } else if (p.real() >= -band) {
            if (out.stability == Stability::stable) out.stability = Stability::marginal;
            out.axis_frequencies.push_back(std::abs(p.imag()));
        }
    }
    std::sort(out.axis_frequencies.begin(), out.axis_frequencies.end());
    return out;
}

RationalFunction lft_scalar(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) {
        return a;
    }
    const Polynomial den = a.den() * b.den() + a.num() * b.num();
    if (den.is_zero()) {
        throw DegenerateLoop("1 + a b vanishes identically");
    }
    return RationalFunction(a.num() * b.den(), den);
}

RationalFunction z_eq(const RationalFunction& z_osc, const RationalFunction& y_shunt) {
    if (y_shunt.is_zero()) {
        return z_osc;
    }
    return lft_scalar(z_osc, y_shunt);
}

HinfResult hinf_scalar(const RationalFunction& h, const SweepConfig& cfg, const Tolerances& tol) {
    if (!h.is_proper()) {
        throw UnboundedGain("numerator degree exceeds denominator degree");
    }
    const std::vector<double> omegas = cfg.grid();
    const std::vector<double> mags = kernels::magnitude_sweep(h, omegas, tol);
    const std::size_t k = kernels::argmax(mags);
    HinfResult out;
    out.peak = mags[k];
    out.omega_star = omegas[k];
    out.poles = pole_stability(h);
    if (!std::isfinite(out.peak)) {
        return out;
    }
    const std::size_t last = omegas.size() - 1;
    if (k == 0 || k == last) {
        const double interior = *std::max_element(mags.begin() + 1, mags.end() - 1);
        out.boundary = interior < out.peak * (1.0 - 1e-12);
    }

    auto f = [&](double u) {
        try {
            return std::abs(h.eval(Complex{0.0, std::exp(u)}, tol));
        } catch (const EvalNearPole&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    double a = std::log(omegas[k == 0 ? 0 : k - 1]);
    double b = std::log(omegas[std::min(k + 1, last)]);
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (std::size_t it = 0; it < cfg.refine_iters && (b - a) > cfg.refine_tol; ++it) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    const double u_best = f1 >= f2 ? x1 : x2;
    const double f_best = std::max(f1, f2);
    if (f_best > out.peak) {
        out.peak = f_best;
        out.omega_star = std::exp(u_best);
    }
    return out;
}

RationalFunction mode_gain(const NetworkClass& cls, const OscillatorModel& osc, double lambda) {
    if (cls.kind == NetworkKind::unclassified || !cls.y_series) {
        throw Unclassified("cannot certify an unclassified network: " + cls.reason);
    }
    const RationalFunction base =
        has_shunt(cls.kind) && cls.y_shunt ? z_eq(osc.z_osc, *cls.y_shunt) : osc.z_osc;
    return cancel_common_roots(lft_scalar(base, cls.y_series->scaled(lambda)));
}

std::vector<double> certified_modes(const NetworkClass& cls, const Tolerances&) {
    if (is_homogeneous(cls.kind)) {
        return {static_cast<double>(cls.n)};
    }
    std::vector<double> out;
    for (Eigen::Index k = 1; k < cls.eigenvalues.size(); ++k) out.push_back(cls.eigenvalues(k));
    return out;
}

GainReport certify(const NetworkClass& cls, const OscillatorModel& osc, const SweepConfig& cfg, const Tolerances& tol) {
    if (cls.kind == NetworkKind::unclassified) {
        throw Unclassified("cannot certify an unclassified network: " + cls.reason);
    }
    cfg.validate();
    GainReport report;
    report.kind = cls.kind;
    report.sigma = osc.sigma;
    if (!is_homogeneous(cls.kind) && cls.eigenvalues.size() > 0) {
        const double scale = std::max(1.0, cls.eigenvalues.cwiseAbs().maxCoeff());
        if (std::abs(cls.eigenvalues(0)) > tol.structural_tol * scale) {
            report.warnings.push_back("smallest Laplacian eigenvalue is not zero");
        }
    }
    for (double lambda : certified_modes(cls, tol)) {
        report.modes.push_back({lambda, hinf_scalar(mode_gain(cls, osc, lambda), cfg, tol)});
    }
    double max_peak = 0.0;
    for (const auto& m : report.modes) max_peak = std::max(max_peak, m.gain.peak);
    report.margin = osc.sigma * max_peak;
    for (std::size_t k = 0; k < report.modes.size(); ++k) {
        if (report.modes[k].gain.peak >= max_peak * (1.0 - 1e-9)) report.critical_modes.push_back(k);
    }

    bool unstable = false, marginal = false, boundary = false;
    for (const auto& m : report.modes) {
        std::ostringstream msg;
        msg.precision(17);
        if (m.gain.poles.stability == Stability::unstable) {
            unstable = true;
            msg << "mode lambda=" << m.lambda << " has a pole in the right half plane";
            report.warnings.push_back(msg.str());
        } else if (m.gain.poles.stability == Stability::marginal) {
            marginal = true;
            msg << "mode lambda=" << m.lambda << " has poles on the imaginary axis at omega =";
            for (double w : m.gain.poles.axis_frequencies) msg << ' ' << w;
            report.warnings.push_back(msg.str());
        }
        if (m.gain.boundary) {
            boundary = true;
            std::ostringstream b;
            b.precision(17);
            b << "mode lambda=" << m.lambda << " peaks at the sweep boundary omega=" << m.gain.omega_star
              << "; the sup over all frequencies may be larger";
            report.warnings.push_back(b.str());
        }
    }
    if (unstable || !(report.margin < 1.0)) {
        report.verdict = Verdict::fail;
    } else if (marginal) {
        report.verdict = Verdict::conditional;
    } else if (boundary) {
        report.verdict = Verdict::inconclusive_boundary;
    } else {
        report.verdict = Verdict::pass;
    }
    return report;
}

OrderedJson report_to_json(const GainReport& report) {
    OrderedJson doc;
    switch (report.verdict) {
        case Verdict::pass: doc["pass"] = true; break;
        case Verdict::fail: doc["pass"] = false; break;
        case Verdict::conditional: doc["pass"] = "conditional"; break;
        case Verdict::inconclusive_boundary: doc["pass"] = "inconclusive-boundary"; break;
    }
    doc["margin"] = report.margin;
    doc["sigma"] = report.sigma;
    OrderedJson modes = OrderedJson::array();
    for (const auto& m : report.modes) {
        OrderedJson jm;
        jm["lambda"] = m.lambda;
        jm["peak"] = m.gain.peak;
        jm["omega_star"] = m.gain.omega_star;
        jm["stability"] = std::string(stability_name(m.gain.poles.stability));
        jm["boundary"] = m.gain.boundary;
        modes.push_back(jm);
    }
    doc["modes"] = modes;
    doc["kind"] = std::string(kind_name(report.kind));
    doc["critical_modes"] = report.critical_modes;
    doc["warnings"] = report.warnings;
    return doc;
}

std::vector<double> scalar_gain_profile(const NetworkClass& cls, const OscillatorModel& osc,
                                        std::span<const double> omegas, const Tolerances& tol) {
    std::vector<double> out(omegas.size(), 0.0);
    for (double lambda : certified_modes(cls, tol)) {
        const auto mags = kernels::magnitude_sweep(mode_gain(cls, osc, lambda), omegas, tol);
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::max(out[k], mags[k]);
    }
    return out;
}

std::vector<double> matrix_gain_profile(const kernels::MatrixAt& y_at, const RationalFunction& z_osc,
                                        std::span<const double> omegas, const Tolerances& tol) {
    return kernels::matrix_gain_sweep(y_at, z_osc, omegas, tol);
}

double matrix_gain_oracle(const kernels::MatrixAt& y_at, const RationalFunction& z_osc,
                          std::span<const double> omegas, const Tolerances& tol) {
    const auto profile = matrix_gain_profile(y_at, z_osc, omegas, tol);
    return profile.empty() ? 0.0 : profile[kernels::argmax(profile)];
}

namespace {

RationalFunction parallel_with_line(double r_net, double l_net, const OscillatorModel& osc) {
    if (!(r_net >= 0.0) || !(l_net >= 0.0) || (r_net == 0.0 && l_net == 0.0)) {
        throw InvalidParams("z_net needs R >= 0, L >= 0, not both zero");
    }
    const RationalFunction y_net = RationalFunction(Polynomial({r_net, l_net})).reciprocal();
    return lft_scalar(osc.z_osc, y_net);
}

}  // namespace

double xi_value(double r_net, double l_net, const OscillatorModel& osc, const SweepConfig& cfg, const Tolerances& tol) {
    return osc.sigma * hinf_scalar(parallel_with_line(r_net, l_net, osc), cfg, tol).peak;
}

XiSurface xi_surface(std::span<const double> r_grid, std::span<const double> l_grid, const OscillatorModel& osc,
                     const SweepConfig& cfg, const Tolerances& tol) {
    if (r_grid.empty() || l_grid.empty()) {
        throw InvalidParams("surface grids must be nonempty");
    }
    cfg.validate();
    XiSurface out{{r_grid.begin(), r_grid.end()}, {l_grid.begin(), l_grid.end()}, {}};
    out.xi = kernels::grid_map(r_grid, l_grid, [&](double r, double l) { return xi_value(r, l, osc, cfg, tol); });
    return out;
}

std::string surface_csv(const XiSurface& surface) {
    std::string out = "r_net,l_net,xi\n";
    for (std::size_t i = 0; i < surface.r.size(); ++i) {
        for (std::size_t j = 0; j < surface.l.size(); ++j) {
            out += format_double(surface.r[i]) + ',' + format_double(surface.l[j]) + ',' +
                   format_double(surface.xi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) + '\n';
        }
    }
    return out;
}

std::string bode_csv(double r_net, double l_net, const OscillatorModel& osc, std::span<const double> omegas,
                     const Tolerances& tol) {
    const auto mags = kernels::magnitude_sweep(parallel_with_line(r_net, l_net, osc), omegas, tol);
    std::string out = "omega,magnitude\n";
    for (std::size_t k = 0; k < omegas.size(); ++k) {
        out += format_double(omegas[k]) + ',' + format_double(mags[k]) + '\n';
    }
    return out;
}

}  // namespace netsync
