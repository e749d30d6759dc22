#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "eavesim/analytic_strategies.hpp"
#include "eavesim/infotheory.hpp"
#include "eavesim/quantum_core.hpp"

namespace eavesim {

struct NoAttack {};

/// Eve intercepts a fraction of the qubits, measures them in the phi basis
/// (or, with symmetrize, in phi or phi' on a fair coin) and resends the
/// eigenstate she found.
struct InterceptResendAttack {
    double phi = 0.0;
    bool symmetrize = true;
    double fraction = 1.0;
};

/// Every qubit is coupled to an ancilla, which Eve measures right away in
/// phi (or phi'/phi on a fair coin).
struct AncillaNoMemoryAttack {
    double alpha = 0.0;
    double phi = 0.0;
    bool symmetrize = true;
};

/// Every qubit is coupled to an ancilla, which Eve stores and measures in
/// Alice's basis once it has been announced.
struct AncillaWithMemoryAttack {
    double alpha = 0.0;
};

using AttackConfig = std::variant<NoAttack, InterceptResendAttack, AncillaNoMemoryAttack, AncillaWithMemoryAttack>;

Strategy strategy_of(const AttackConfig& attack) noexcept;

/// Throws std::invalid_argument when a parameter is outside its range.
void validate(const AttackConfig& attack);

/// Which measurement Eve applied in a round.
enum class EveBasisChoice : std::uint8_t { Phi = 0, PhiPrime = 1, Revealed = 2 };

/// One protocol round.
struct TrialRecord {
    KeyBasis alice_basis = KeyBasis::X;
    std::uint8_t alice_bit = 0;
    bool eve_acted = false;
    EveBasisChoice eve_choice = EveBasisChoice::Phi;
    double eve_phi = 0.0;                 // angle Eve actually measured in, when she acted
    std::optional<Outcome> eve_outcome;
    std::optional<std::uint8_t> eve_guess;  // set after the basis reveal
    std::uint8_t blind_guess = 0;           // coin-flip guess charged to rounds Eve left alone
    KeyBasis bob_basis = KeyBasis::X;
    std::uint8_t bob_bit = 0;
    bool sifted = false;
};

/// P(Alice sent the sign matching Eve's outcome | outcome, revealed basis) is
/// (1 + c) / 2 with c = coupling * cos(eve_phi - theta_revealed). coupling is
/// 1 for a direct measurement and sin(alpha) for an ancilla.
double guess_correlation(double eve_phi, KeyBasis revealed, double coupling) noexcept;

/// Maximum-likelihood bit guess; exact ties (|c| <= 1e-12) are a fair coin
/// drawn from `stream`.
int interpret_outcome(double eve_phi, Outcome eve_outcome, KeyBasis revealed, double coupling, RoundStream& stream);

/// Integer accumulators over sifted rounds. Merging is order-insensitive.
struct Tally {
    /// Context strata for Eve's information: 0-1 untouched rounds by revealed
    /// basis, 2 + 2 * choice + revealed basis for rounds Eve acted on.
    static constexpr std::size_t kStrata = 8;

    bool eavesdropper = false;
    std::uint64_t rounds = 0;
    std::uint64_t sifted = 0;
    std::array<std::uint64_t, 2> sifted_by_basis{};
    std::array<std::uint64_t, 2> bob_errors_by_basis{};
    std::array<std::uint64_t, 2> eve_acted_by_basis{};
    std::array<std::uint64_t, 2> eve_correct_by_basis{};
    std::array<JointCounts, kStrata> eve_strata{};

    void add(const TrialRecord& record) noexcept;
    Tally& operator+=(const Tally& other) noexcept;
};

Tally tally(std::span<const TrialRecord> trace, bool eavesdropper);

/// Empirical statistics over sifted rounds.
struct SimEstimate {
    std::uint64_t n_rounds = 0;
    std::uint64_t n_sifted = 0;
    Estimate qber;
    std::array<std::optional<Estimate>, 2> bob_fidelity;  // by KeyBasis
    /// Full-key information: I(alice_bit; guess | context), where the context
    /// is what Eve knows (whether she acted, her basis, the revealed basis).
    std::optional<Estimate> eve_mutual_info;
    /// Same, restricted to rounds Eve acted on.
    std::optional<Estimate> eve_mutual_info_intercepted;
    /// I(alice_bit; guess) from a single table that ignores the context.
    std::optional<Estimate> eve_mutual_info_pooled;
    std::array<std::optional<Estimate>, 2> eve_fidelity;  // by revealed basis, acted rounds

    double sifting_rate() const noexcept {
        return n_rounds == 0 ? 0.0 : static_cast<double>(n_sifted) / static_cast<double>(n_rounds);
    }
};

/// Fewer sifted rounds than kMinSifted.
class InsufficientSample : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kMinSifted = 100;

/// Throws InsufficientSample when fewer than kMinSifted rounds survived sifting.
SimEstimate estimate(const Tally& tally);

/// One round under `attack`, drawing only from the (seed, round_index) stream.
TrialRecord simulate_round(const AttackConfig& attack, std::uint64_t seed, std::uint64_t round_index);

struct SimOptions {
    std::uint64_t n_rounds = 1'000'000;
    std::uint64_t seed = 1;
    unsigned threads = 0;  // 0 = hardware concurrency
    bool keep_trace = false;
};

struct SimResult {
    SimEstimate estimate;
    Tally tally;
    std::vector<TrialRecord> trace;  // empty unless keep_trace
};

/// Runs n_rounds BB84 rounds. The result is bit-identical for identical
/// (attack, n_rounds, seed) whatever the thread count.
SimResult run_protocol(const AttackConfig& attack, const SimOptions& options);

}  // namespace eavesim
