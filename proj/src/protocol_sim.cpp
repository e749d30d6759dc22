#include "eavesim/protocol_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

namespace eavesim {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr std::uint64_t kChunkRounds = 1 << 15;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::uint8_t bit_of(Outcome o) { return static_cast<std::uint8_t>(to_bit(o)); }

EquatorBasis eve_basis(double phi, EveBasisChoice choice) {
    const EquatorBasis basis{phi};
    return choice == EveBasisChoice::PhiPrime ? basis.conjugate_basis() : basis;
}

EveBasisChoice pick_choice(bool symmetrize, RoundStream& stream) {
    if (!symmetrize) return EveBasisChoice::Phi;
    return stream.coin() ? EveBasisChoice::Phi : EveBasisChoice::PhiPrime;
}

Estimate binomial(std::uint64_t successes, std::uint64_t trials) {
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    return {p, std::sqrt(p * (1.0 - p) / n)};
}

}  // namespace

Strategy strategy_of(const AttackConfig& attack) noexcept {
    return std::visit(overloaded{[](const NoAttack&) { return Strategy::None; },
                                 [](const InterceptResendAttack&) { return Strategy::InterceptResend; },
                                 [](const AncillaNoMemoryAttack&) { return Strategy::AncillaNoMemory; },
                                 [](const AncillaWithMemoryAttack&) { return Strategy::AncillaWithMemory; }},
                      attack);
}

void validate(const AttackConfig& attack) {
    std::visit(overloaded{[](const NoAttack&) {},
                          [](const InterceptResendAttack& a) {
                              checked_phi(a.phi);
                              checked_fraction(a.fraction);
                          },
                          [](const AncillaNoMemoryAttack& a) {
                              checked_alpha(a.alpha);
                              checked_phi(a.phi);
                          },
                          [](const AncillaWithMemoryAttack& a) { checked_alpha(a.alpha); }},
               attack);
}

double guess_correlation(double eve_phi, KeyBasis revealed, double coupling) noexcept {
    return coupling * std::cos(eve_phi - to_equator(revealed).phi());
}

int interpret_outcome(double eve_phi, Outcome eve_outcome, KeyBasis revealed, double coupling, RoundStream& stream) {
    const double c = guess_correlation(eve_phi, revealed, coupling);
    if (std::abs(c) <= kTieTolerance) return stream.coin() ? 0 : 1;
    return to_bit(c > 0.0 ? eve_outcome : flip(eve_outcome));
}

TrialRecord simulate_round(const AttackConfig& attack, std::uint64_t seed, std::uint64_t round_index) {
    RoundStream stream(seed, round_index);
    TrialRecord rec;
    rec.alice_basis = stream.coin() ? KeyBasis::X : KeyBasis::Y;
    rec.alice_bit = stream.coin() ? 0 : 1;
    rec.bob_basis = stream.coin() ? KeyBasis::X : KeyBasis::Y;
    rec.sifted = rec.alice_basis == rec.bob_basis;

    const QubitState sent = make_bb84_state(rec.alice_basis, outcome_from_bit(rec.alice_bit));
    const EquatorBasis bob_basis = to_equator(rec.bob_basis);

    auto bob_measures = [&](const QubitState& arriving) {
        rec.bob_bit = bit_of(sample_outcome(outcome_probabilities(arriving, bob_basis), stream));
    };
    // Both ancilla attacks: the joint Born table gives the same statistics as
    // Eve measuring first and Bob measuring the collapsed signal afterwards.
    auto ancilla_round = [&](double alpha, const EquatorBasis& eve) {
        const auto joint = joint_outcome_probabilities(apply_eve_unitary(sent, alpha), bob_basis, eve);
        const JointOutcome out = sample_joint_outcome(joint, stream);
        rec.eve_acted = true;
        rec.eve_phi = eve.phi();
        rec.eve_outcome = out.eve;
        rec.bob_bit = bit_of(out.bob);
        rec.eve_guess = static_cast<std::uint8_t>(
            interpret_outcome(eve.phi(), out.eve, rec.alice_basis, std::sin(alpha), stream));
    };

    std::visit(overloaded{[&](const NoAttack&) { bob_measures(sent); },
                          [&](const InterceptResendAttack& a) {
                              const bool intercept = stream.uniform() < a.fraction;
                              if (!intercept) {
                                  bob_measures(sent);
                                  return;
                              }
                              rec.eve_acted = true;
                              rec.eve_choice = pick_choice(a.symmetrize, stream);
                              const EquatorBasis eve = eve_basis(a.phi, rec.eve_choice);
                              rec.eve_phi = eve.phi();
                              const Outcome found = sample_outcome(outcome_probabilities(sent, eve), stream);
                              rec.eve_outcome = found;
                              // Eve forwards the eigenstate she found, not a re-encoded BB84 state.
                              bob_measures(project(sent, eve, found));
                              rec.eve_guess = static_cast<std::uint8_t>(
                                  interpret_outcome(eve.phi(), found, rec.alice_basis, 1.0, stream));
                          },
                          [&](const AncillaNoMemoryAttack& a) {
                              rec.eve_choice = pick_choice(a.symmetrize, stream);
                              ancilla_round(a.alpha, eve_basis(a.phi, rec.eve_choice));
                          },
                          [&](const AncillaWithMemoryAttack& a) {
                              rec.eve_choice = EveBasisChoice::Revealed;
                              ancilla_round(a.alpha, to_equator(rec.alice_basis));
                          }},
               attack);

    rec.blind_guess = stream.coin() ? 0 : 1;
    return rec;
}

void Tally::add(const TrialRecord& r) noexcept {
    ++rounds;
    if (!r.sifted) return;
    const std::size_t basis = index_of(r.alice_basis);
    ++sifted;
    ++sifted_by_basis[basis];
    if (r.bob_bit != r.alice_bit) ++bob_errors_by_basis[basis];

    if (r.eve_acted && r.eve_guess) {
        const std::size_t stratum = 2 + 2 * static_cast<std::size_t>(r.eve_choice) + basis;
        eve_strata[stratum].add(r.alice_bit, *r.eve_guess);
        ++eve_acted_by_basis[basis];
        if (*r.eve_guess == r.alice_bit) ++eve_correct_by_basis[basis];
    } else {
        eve_strata[basis].add(r.alice_bit, r.blind_guess);
    }
}

Tally& Tally::operator+=(const Tally& o) noexcept {
    rounds += o.rounds;
    sifted += o.sifted;
    for (std::size_t b = 0; b < 2; ++b) {
        sifted_by_basis[b] += o.sifted_by_basis[b];
        bob_errors_by_basis[b] += o.bob_errors_by_basis[b];
        eve_acted_by_basis[b] += o.eve_acted_by_basis[b];
        eve_correct_by_basis[b] += o.eve_correct_by_basis[b];
    }
    for (std::size_t s = 0; s < kStrata; ++s) eve_strata[s] += o.eve_strata[s];
    return *this;
}

Tally tally(std::span<const TrialRecord> trace, bool eavesdropper) {
    Tally t;
    t.eavesdropper = eavesdropper;
    for (const auto& r : trace) t.add(r);
    return t;
}

SimEstimate estimate(const Tally& t) {
    if (t.sifted < kMinSifted) {
        throw InsufficientSample("only " + std::to_string(t.sifted) + " sifted rounds; at least " +
                                 std::to_string(kMinSifted) + " are needed for error estimates");
    }
    SimEstimate est;
    est.n_rounds = t.rounds;
    est.n_sifted = t.sifted;
    est.qber = binomial(t.bob_errors_by_basis[0] + t.bob_errors_by_basis[1], t.sifted);
    for (std::size_t b = 0; b < 2; ++b) {
        if (t.sifted_by_basis[b] > 0) {
            est.bob_fidelity[b] = binomial(t.sifted_by_basis[b] - t.bob_errors_by_basis[b], t.sifted_by_basis[b]);
        }
        if (t.eve_acted_by_basis[b] > 0) {
            est.eve_fidelity[b] = binomial(t.eve_correct_by_basis[b], t.eve_acted_by_basis[b]);
        }
    }
    if (!t.eavesdropper) return est;

    est.eve_mutual_info = conditional_mutual_information(t.eve_strata);
    if (t.eve_acted_by_basis[0] + t.eve_acted_by_basis[1] > 0) {
        est.eve_mutual_info_intercepted =
            conditional_mutual_information(std::span(t.eve_strata).subspan(2));
    }
    JointCounts pooled;
    for (const auto& s : t.eve_strata) pooled += s;
    est.eve_mutual_info_pooled = conditional_mutual_information(std::span(&pooled, 1));
    return est;
}

SimResult run_protocol(const AttackConfig& attack, const SimOptions& options) {
    validate(attack);
    if (options.n_rounds < 1) throw std::invalid_argument("n_rounds must be at least 1");

    SimResult result;
    if (options.keep_trace) result.trace.resize(options.n_rounds);

    const std::uint64_t chunks = (options.n_rounds + kChunkRounds - 1) / kChunkRounds;
    unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));

    std::vector<Tally> partial(threads);
    std::atomic<std::uint64_t> next_chunk{0};
    auto worker = [&](Tally& local) {
        for (std::uint64_t c = next_chunk++; c < chunks; c = next_chunk++) {
            const std::uint64_t begin = c * kChunkRounds;
            const std::uint64_t end = std::min(options.n_rounds, begin + kChunkRounds);
            for (std::uint64_t i = begin; i < end; ++i) {
                const TrialRecord rec = simulate_round(attack, options.seed, i);
                local.add(rec);
                if (options.keep_trace) result.trace[i] = rec;
            }
        }
    };
    if (threads == 1) {
        worker(partial[0]);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, std::ref(partial[t]));
    }

    result.tally.eavesdropper = strategy_of(attack) != Strategy::None;
    for (const auto& p : partial) result.tally += p;
    result.estimate = estimate(result.tally);
    return result;
}

}  // namespace eavesim
