#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace eavesim {

enum class Strategy { None, InterceptResend, AncillaNoMemory, AncillaWithMemory };

/// CSV / CLI label: "none", "intercept_resend", "ancilla_no_memory", "ancilla_with_memory".
std::string_view to_label(Strategy s) noexcept;
/// Throws std::invalid_argument for an unknown label.
Strategy parse_strategy(std::string_view label);

/// Identification fidelity and its complement. The disturbance is always
/// stored as 1 - fidelity.
class BasisStats {
public:
    /// Throws std::domain_error when fidelity is outside [0, 1].
    static BasisStats from_fidelity(double fidelity);

    double fidelity() const noexcept { return fidelity_; }
    double disturbance() const noexcept { return 1.0 - fidelity_; }

private:
    explicit BasisStats(double f) noexcept : fidelity_(f) {}
    double fidelity_;
};

/// Closed-form statistics of one attack configuration.
///
/// eve_x / eve_y are for Eve's phi measurement; the mirrored phi' = pi/2 - phi
/// measurement has the two bases swapped. bob_x / bob_y are Bob's statistics
/// on sifted rounds when Eve attacks every qubit.
struct StrategyReport {
    BasisStats eve_x;
    BasisStats eve_y;
    BasisStats bob_x;
    BasisStats bob_y;
    BasisStats bob_overall;
    double eve_avg_info = 0.0;
    double bob_info = 0.0;
};

/// Per-basis statistics when Eve flips a fair coin between phi and phi'.
StrategyReport symmetrized(const StrategyReport& report);

inline constexpr double kMaxPhi = 0.78539816339744830962;  // pi/4
inline constexpr double kMaxAlpha = 1.57079632679489661923;  // pi/2

/// Range checks used by every entry point. Values within 1e-12 outside the
/// interval are clamped onto it, anything further is std::invalid_argument.
double checked_phi(double phi);
double checked_alpha(double alpha);
double checked_fraction(double fraction);

/// Eve measures every qubit in the phi basis and resends the eigenstate she found.
StrategyReport intercept_resend(double phi);

/// Eq.7 ancilla, kept in a quantum memory and measured in the revealed basis.
StrategyReport ancilla_with_memory(double alpha);

/// Eq.7 ancilla measured immediately in the phi basis.
StrategyReport ancilla_no_memory(double alpha, double phi);

struct CurvePoint {
    Strategy strategy = Strategy::None;
    std::optional<double> phi;
    std::optional<double> alpha;
    std::optional<double> fraction;
    double d_bob = 0.0;
    double i_eve = 0.0;
    double i_bob = 0.0;

    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// Fractional interception: d_bob = f/4, i_eve = f * I_E(phi) on the full key.
std::vector<CurvePoint> intercept_resend_curve(double phi, std::span<const double> fractions);

struct SweepGrid {
    std::vector<double> phis;
    std::vector<double> alphas;
    std::vector<double> fractions;
};

/// n evenly spaced points on [lo, hi], endpoints included.
std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Information-vs-disturbance curve for one attack family, sorted by d_bob.
/// Intercept/resend uses grid.phis x grid.fractions; the ancilla attacks are
/// parameterized by alpha (and phi when there is no memory).
std::vector<CurvePoint> curve_sweep(Strategy strategy, const SweepGrid& grid);

/// Order used for emitted curves: strategy label, d_bob, then phi/alpha/fraction.
bool curve_order(const CurvePoint& a, const CurvePoint& b) noexcept;

/// alpha that produces Bob disturbance d_bob in [0, 1/2].
double alpha_for_disturbance(double d_bob);

}  // namespace eavesim
