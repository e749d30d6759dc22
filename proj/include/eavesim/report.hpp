#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eavesim/analytic_strategies.hpp"
#include "eavesim/protocol_sim.hpp"

namespace eavesim {

/// Bad flags or an invalid sweep. The CLI maps it to exit status 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// What to sweep. Empty parameter lists fall back to per-command defaults.
struct SweepSpec {
    std::string strategy = "all";
    std::vector<double> phis;
    std::vector<double> alphas;
    std::vector<double> fractions;
    std::size_t grid = 101;
    std::uint64_t rounds = 1'000'000;
    std::uint64_t seed = 1;
    bool symmetrize = true;
    unsigned threads = 0;
};

/// printf("%.12g"). Every number in emitted CSV goes through this.
std::string format_number(double value);

/// Angle literal: a plain number ("0.3"), or a multiple of pi such as "pi",
/// "pi/4", "3*pi/8", "-pi/2". Throws UsageError.
double parse_angle(std::string_view text);

inline constexpr std::string_view kCurveHeader = "strategy,phi,alpha,fraction,d_bob,i_eve,i_bob";
inline constexpr std::string_view kSimulateHeader =
    "strategy,phi,alpha,fraction,n_rounds,seed,qber,qber_se,i_eve_emp,i_eve_se,f_eve_x,f_eve_y,n_sifted";
inline constexpr std::string_view kCompareHeader =
    "strategy,variant,phi,alpha,fraction,d_bob,i_eve,in_domain,best_memoryless";
inline constexpr std::string_view kTraceHeader =
    "job,round,alice_basis,alice_bit,eve_acted,eve_basis,eve_outcome,eve_guess,bob_basis,bob_bit,sifted";

std::string write_curve_csv(std::span<const CurvePoint> points);
/// Inverse of write_curve_csv. Throws std::invalid_argument on malformed input.
std::vector<CurvePoint> parse_curve_csv(std::string_view document);

/// Curve points for the spec, sorted. With strategy "all" this is the five
/// figure families: intercept/resend and no-memory ancilla at phi = 0 and
/// pi/4, plus the with-memory ancilla.
std::vector<CurvePoint> analytic_curves(const SweepSpec& spec);
std::string cmd_analytic_curves(const SweepSpec& spec);

/// Attack configurations for a simulation spec, in emission order.
std::vector<AttackConfig> simulation_jobs(const SweepSpec& spec);

/// Runs every job and returns the CSV. When `trace_csv` is non-null the
/// per-round records of all jobs are written there as well.
/// InsufficientSample propagates.
std::string cmd_simulate(const SweepSpec& spec, std::string* trace_csv = nullptr);

struct ComparisonEntry {
    Strategy strategy = Strategy::None;
    std::string variant;
    std::optional<double> phi;
    std::optional<double> alpha;
    std::optional<double> fraction;
    double d_bob = 0.0;
    std::optional<double> i_eve;  // absent when out of domain
    bool best_memoryless = false;
};

/// Eve's full-key information of each attack at one Bob disturbance in
/// (0, 1/2]. Optima over phi use the grid k * (pi/4) / phi_steps.
std::vector<ComparisonEntry> compare_at(double d_bob, std::size_t phi_steps = 16);
std::string cmd_compare(double d_bob, std::size_t phi_steps = 16);

}  // namespace eavesim
