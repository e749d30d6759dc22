#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>

#include "eavesim/random_stream.hpp"

namespace eavesim {

using Amplitude = std::complex<double>;

/// Tolerance for construction-time and algebraic identities.
inline constexpr double kAlgebraTolerance = 1e-12;
/// Tolerance for probability tables handed to the samplers.
inline constexpr double kSamplingTolerance = 1e-9;

/// Normalized pure state of a single qubit (N = 2) or of a signal qubit
/// together with Eve's ancilla (N = 4).
///
/// Two-qubit amplitudes are ordered |bob, eve>: index = 2 * bob + eve, i.e. the
/// forwarded signal occupies the first tensor slot.
template <std::size_t N>
class StateVector {
    static_assert(N == 2 || N == 4, "only one- and two-qubit states are supported");

public:
    /// Throws std::invalid_argument on non-finite amplitudes or when the squared
    /// norm differs from 1 by more than kAlgebraTolerance.
    explicit StateVector(const std::array<Amplitude, N>& amplitudes);

    const std::array<Amplitude, N>& amplitudes() const noexcept { return amplitudes_; }
    const Amplitude& operator[](std::size_t i) const { return amplitudes_.at(i); }
    static constexpr std::size_t size() noexcept { return N; }

    double squared_norm() const noexcept;

private:
    std::array<Amplitude, N> amplitudes_;
};

using QubitState = StateVector<2>;
using SignalAncillaState = StateVector<4>;

extern template class StateVector<2>;
extern template class StateVector<4>;

/// <a|b>
template <std::size_t N>
Amplitude inner_product(const StateVector<N>& a, const StateVector<N>& b) noexcept {
    Amplitude sum{0.0, 0.0};
    for (std::size_t i = 0; i < N; ++i) sum += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
    return sum;
}

/// |<a|b>|^2. States are rays, so this is the only comparison that is phase-safe.
template <std::size_t N>
double overlap_probability(const StateVector<N>& a, const StateVector<N>& b) noexcept {
    return std::norm(inner_product(a, b));
}

enum class Outcome : std::uint8_t { Plus = 0, Minus = 1 };

/// Key-bit convention used project-wide: Plus -> 0, Minus -> 1.
constexpr int to_bit(Outcome o) noexcept { return o == Outcome::Plus ? 0 : 1; }
constexpr Outcome outcome_from_bit(int bit) noexcept { return bit == 0 ? Outcome::Plus : Outcome::Minus; }
constexpr Outcome flip(Outcome o) noexcept { return o == Outcome::Plus ? Outcome::Minus : Outcome::Plus; }
constexpr std::size_t index_of(Outcome o) noexcept { return static_cast<std::size_t>(o); }

/// Projective measurement on the equator of the Poincare sphere with
/// eigenstates |+-phi> = (|0> +- e^{i phi}|1>) / sqrt(2).
class EquatorBasis {
public:
    constexpr explicit EquatorBasis(double phi) noexcept : phi_(phi) {}

    static EquatorBasis x() noexcept;
    static EquatorBasis y() noexcept;
    /// phi = pi/4, symmetric between x and y.
    static EquatorBasis intermediate() noexcept;

    constexpr double phi() const noexcept { return phi_; }

    /// Mirror basis phi' = pi/2 - phi (swaps the roles of x and y).
    EquatorBasis conjugate_basis() const noexcept;

    QubitState eigenstate(Outcome sign) const;

private:
    double phi_;
};

/// The two BB84 key bases.
enum class KeyBasis : std::uint8_t { X = 0, Y = 1 };

EquatorBasis to_equator(KeyBasis b) noexcept;
constexpr std::size_t index_of(KeyBasis b) noexcept { return static_cast<std::size_t>(b); }
constexpr char label(KeyBasis b) noexcept { return b == KeyBasis::X ? 'x' : 'y'; }

/// Alice's preparation. Throws std::invalid_argument unless basis.phi() is 0 or pi/2.
QubitState make_bb84_state(const EquatorBasis& basis, Outcome sign);
QubitState make_bb84_state(KeyBasis basis, Outcome sign);

struct OutcomeProbabilities {
    double plus = 0.0;
    double minus = 0.0;

    double operator[](Outcome o) const noexcept { return o == Outcome::Plus ? plus : minus; }
};

/// Born rule for a single-qubit measurement.
OutcomeProbabilities outcome_probabilities(const QubitState& state, const EquatorBasis& basis) noexcept;

/// Post-measurement state for `outcome`. Throws std::logic_error if the outcome
/// has probability <= 1e-15.
QubitState project(const QubitState& state, const EquatorBasis& basis, Outcome outcome);

/// Signal/ancilla interaction with the ancilla prepared in |0>:
/// |0>|0> -> |00>,  |1>|0> -> cos(alpha)|10> + sin(alpha)|01>.
SignalAncillaState apply_eve_unitary(const QubitState& state, double alpha);

/// Joint Born table, indexed [bob outcome][eve outcome]. Bob measures the first
/// tensor slot, Eve the second.
using JointProbabilities = std::array<std::array<double, 2>, 2>;

JointProbabilities joint_outcome_probabilities(const SignalAncillaState& state, const EquatorBasis& bob_basis,
                                               const EquatorBasis& eve_basis) noexcept;

/// Inverse-CDF draw. Throws std::invalid_argument if the probabilities do not
/// sum to 1 within kSamplingTolerance.
Outcome sample_outcome(const OutcomeProbabilities& probabilities, RoundStream& stream);

struct JointOutcome {
    Outcome bob;
    Outcome eve;
};

JointOutcome sample_joint_outcome(const JointProbabilities& probabilities, RoundStream& stream);

}  // namespace eavesim
