#include "eavesim/analytic_strategies.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

#include "eavesim/infotheory.hpp"

namespace eavesim {

namespace {

constexpr double kRangeSlack = 1e-12;

double checked_range(double value, double lo, double hi, const char* name) {
    if (!std::isfinite(value) || value < lo - kRangeSlack || value > hi + kRangeSlack) {
        throw std::invalid_argument(std::string(name) + " = " + std::to_string(value) + " is outside [" +
                                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return std::clamp(value, lo, hi);
}

BasisStats stats(double fidelity) { return BasisStats::from_fidelity(std::clamp(fidelity, 0.0, 1.0)); }

// Eve's information averaged over Alice's two bases and over the phi/phi'
// coin: I_phi^x + I_phi^y + I_phi'^x + I_phi'^y, with the primed terms obtained
// by swapping x and y.
double averaged_eve_info(const BasisStats& x, const BasisStats& y) {
    const double ix = info_from_fidelity(x.fidelity());
    const double iy = info_from_fidelity(y.fidelity());
    return 0.25 * (ix + iy + iy + ix);
}

StrategyReport with_bob(const BasisStats& eve_x, const BasisStats& eve_y, double eve_info, const BasisStats& bob_x,
                        const BasisStats& bob_y) {
    const auto overall = stats(0.5 * (bob_x.fidelity() + bob_y.fidelity()));
    return StrategyReport{eve_x, eve_y, bob_x, bob_y, overall, eve_info, info_from_fidelity(overall.fidelity())};
}

}  // namespace

std::string_view to_label(Strategy s) noexcept {
    switch (s) {
        case Strategy::None: return "none";
        case Strategy::InterceptResend: return "intercept_resend";
        case Strategy::AncillaNoMemory: return "ancilla_no_memory";
        case Strategy::AncillaWithMemory: return "ancilla_with_memory";
    }
    return "none";
}

Strategy parse_strategy(std::string_view label) {
    for (Strategy s : {Strategy::None, Strategy::InterceptResend, Strategy::AncillaNoMemory,
                       Strategy::AncillaWithMemory}) {
        if (to_label(s) == label) return s;
    }
    throw std::invalid_argument("unknown strategy '" + std::string(label) + "'");
}

BasisStats BasisStats::from_fidelity(double fidelity) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw std::domain_error("fidelity outside [0, 1]");
    return BasisStats{fidelity};
}

StrategyReport symmetrized(const StrategyReport& r) {
    const auto eve = stats(0.5 * (r.eve_x.fidelity() + r.eve_y.fidelity()));
    const auto bob = stats(0.5 * (r.bob_x.fidelity() + r.bob_y.fidelity()));
    return StrategyReport{eve, eve, bob, bob, r.bob_overall, r.eve_avg_info, r.bob_info};
}

double checked_phi(double phi) { return checked_range(phi, 0.0, kMaxPhi, "phi"); }
double checked_alpha(double alpha) { return checked_range(alpha, 0.0, kMaxAlpha, "alpha"); }
double checked_fraction(double fraction) { return checked_range(fraction, 0.0, 1.0, "fraction"); }

StrategyReport intercept_resend(double phi) {
    phi = checked_phi(phi);
    const auto eve_x = stats(0.5 * (1.0 + std::cos(phi)));
    const auto eve_y = stats(0.5 * (1.0 + std::sin(phi)));
    // Bob is right when Eve guessed right and he reads her state right, or
    // when both got it wrong: F^2 + D^2.
    const auto bob_fidelity = [](const BasisStats& e) {
        return e.fidelity() * e.fidelity() + e.disturbance() * e.disturbance();
    };
    return with_bob(eve_x, eve_y, averaged_eve_info(eve_x, eve_y), stats(bob_fidelity(eve_x)),
                    stats(bob_fidelity(eve_y)));
}

StrategyReport ancilla_with_memory(double alpha) {
    alpha = checked_alpha(alpha);
    const auto eve = stats(0.5 * (1.0 + std::sin(alpha)));
    const auto bob = stats(0.5 * (1.0 + std::cos(alpha)));
    return with_bob(eve, eve, info_from_fidelity(eve.fidelity()), bob, bob);
}

StrategyReport ancilla_no_memory(double alpha, double phi) {
    alpha = checked_alpha(alpha);
    phi = checked_phi(phi);
    const double s = std::sin(alpha);
    const auto eve_x = stats(0.5 * (1.0 + std::cos(phi) * s));
    const auto eve_y = stats(0.5 * (1.0 + std::sin(phi) * s));
    const auto bob = stats(0.5 * (1.0 + std::cos(alpha)));
    return with_bob(eve_x, eve_y, averaged_eve_info(eve_x, eve_y), bob, bob);
}

std::vector<CurvePoint> intercept_resend_curve(double phi, std::span<const double> fractions) {
    phi = checked_phi(phi);
    const double full_info = intercept_resend(phi).eve_avg_info;
    std::vector<CurvePoint> points;
    points.reserve(fractions.size());
    for (double f : fractions) {
        f = checked_fraction(f);
        const double d_bob = 0.25 * f;
        points.push_back(CurvePoint{Strategy::InterceptResend, phi, std::nullopt, f, d_bob, f * full_info,
                                    info_from_fidelity(1.0 - d_bob)});
    }
    return points;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {lo};
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    }
    out.back() = hi;
    return out;
}

bool curve_order(const CurvePoint& a, const CurvePoint& b) noexcept {
    return std::forward_as_tuple(to_label(a.strategy), a.d_bob, a.phi, a.alpha, a.fraction) <
           std::forward_as_tuple(to_label(b.strategy), b.d_bob, b.phi, b.alpha, b.fraction);
}

std::vector<CurvePoint> curve_sweep(Strategy strategy, const SweepGrid& grid) {
    std::vector<CurvePoint> points;
    switch (strategy) {
        case Strategy::InterceptResend:
            for (double phi : grid.phis) {
                auto part = intercept_resend_curve(phi, grid.fractions);
                points.insert(points.end(), part.begin(), part.end());
            }
            break;
        case Strategy::AncillaWithMemory:
            for (double alpha : grid.alphas) {
                const auto r = ancilla_with_memory(alpha);
                points.push_back(CurvePoint{strategy, std::nullopt, checked_alpha(alpha), std::nullopt,
                                            r.bob_overall.disturbance(), r.eve_avg_info, r.bob_info});
            }
            break;
        case Strategy::AncillaNoMemory:
            for (double phi : grid.phis) {
                for (double alpha : grid.alphas) {
                    const auto r = ancilla_no_memory(alpha, phi);
                    points.push_back(CurvePoint{strategy, checked_phi(phi), checked_alpha(alpha), std::nullopt,
                                                r.bob_overall.disturbance(), r.eve_avg_info, r.bob_info});
                }
            }
            break;
        case Strategy::None:
            throw std::invalid_argument("no information curve for the 'none' strategy");
    }
    std::stable_sort(points.begin(), points.end(), curve_order);
    return points;
}

double alpha_for_disturbance(double d_bob) {
    d_bob = checked_range(d_bob, 0.0, 0.5, "d_bob");
    return std::acos(1.0 - 2.0 * d_bob);
}

}  // namespace eavesim
