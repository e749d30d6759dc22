#include "eavesim/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace eavesim {

template <std::size_t N>
StateVector<N>::StateVector(const std::array<Amplitude, N>& amplitudes) : amplitudes_(amplitudes) {
    for (const auto& a : amplitudes_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw std::invalid_argument("state amplitude is not finite");
        }
    }
    const double norm = squared_norm();
    if (std::abs(norm - 1.0) > kAlgebraTolerance) {
        throw std::invalid_argument("state is not normalized: squared norm = " + std::to_string(norm));
    }
}

template <std::size_t N>
double StateVector<N>::squared_norm() const noexcept {
    double sum = 0.0;
    for (const auto& a : amplitudes_) sum += std::norm(a);
    return sum;
}

template class StateVector<2>;
template class StateVector<4>;

EquatorBasis EquatorBasis::x() noexcept { return EquatorBasis{0.0}; }
EquatorBasis EquatorBasis::y() noexcept { return EquatorBasis{std::numbers::pi / 2}; }
EquatorBasis EquatorBasis::intermediate() noexcept { return EquatorBasis{std::numbers::pi / 4}; }

EquatorBasis EquatorBasis::conjugate_basis() const noexcept { return EquatorBasis{std::numbers::pi / 2 - phi_}; }

QubitState EquatorBasis::eigenstate(Outcome sign) const {
    const double r = 1.0 / std::numbers::sqrt2;
    const Amplitude phase = std::polar(1.0, phi_);
    const double s = sign == Outcome::Plus ? 1.0 : -1.0;
    return QubitState{{Amplitude{r, 0.0}, s * r * phase}};
}

EquatorBasis to_equator(KeyBasis b) noexcept { return b == KeyBasis::X ? EquatorBasis::x() : EquatorBasis::y(); }

QubitState make_bb84_state(const EquatorBasis& basis, Outcome sign) {
    if (basis.phi() == 0.0) return make_bb84_state(KeyBasis::X, sign);
    if (std::abs(basis.phi() - std::numbers::pi / 2) <= kAlgebraTolerance) return make_bb84_state(KeyBasis::Y, sign);
    throw std::invalid_argument("BB84 states are prepared only in the x (phi=0) or y (phi=pi/2) basis, got phi = " +
                                std::to_string(basis.phi()));
}

QubitState make_bb84_state(KeyBasis basis, Outcome sign) {
    // Exact amplitudes: (|0> +- |1>)/sqrt2 and (|0> +- i|1>)/sqrt2.
    const double r = 1.0 / std::numbers::sqrt2;
    const double s = sign == Outcome::Plus ? r : -r;
    if (basis == KeyBasis::X) return QubitState{{Amplitude{r, 0.0}, Amplitude{s, 0.0}}};
    return QubitState{{Amplitude{r, 0.0}, Amplitude{0.0, s}}};
}

OutcomeProbabilities outcome_probabilities(const QubitState& state, const EquatorBasis& basis) noexcept {
    const double plus = std::clamp(overlap_probability(basis.eigenstate(Outcome::Plus), state), 0.0, 1.0);
    return {plus, 1.0 - plus};
}

QubitState project(const QubitState& state, const EquatorBasis& basis, Outcome outcome) {
    if (outcome_probabilities(state, basis)[outcome] <= 1e-15) {
        throw std::logic_error("projection onto a zero-probability outcome");
    }
    return basis.eigenstate(outcome);
}

SignalAncillaState apply_eve_unitary(const QubitState& state, double alpha) {
    const Amplitude a = state[0];
    const Amplitude b = state[1];
    // index = 2 * signal + ancilla
    return SignalAncillaState{{a, b * std::sin(alpha), b * std::cos(alpha), Amplitude{0.0, 0.0}}};
}

JointProbabilities joint_outcome_probabilities(const SignalAncillaState& state, const EquatorBasis& bob_basis,
                                               const EquatorBasis& eve_basis) noexcept {
    JointProbabilities table{};
    for (Outcome bob : {Outcome::Plus, Outcome::Minus}) {
        const QubitState bs = bob_basis.eigenstate(bob);
        for (Outcome eve : {Outcome::Plus, Outcome::Minus}) {
            const QubitState es = eve_basis.eigenstate(eve);
            Amplitude amp{0.0, 0.0};
            for (std::size_t i = 0; i < 2; ++i) {
                for (std::size_t j = 0; j < 2; ++j) {
                    amp += std::conj(bs[i]) * std::conj(es[j]) * state[2 * i + j];
                }
            }
            table[index_of(bob)][index_of(eve)] = std::norm(amp);
        }
    }
    return table;
}

Outcome sample_outcome(const OutcomeProbabilities& probabilities, RoundStream& stream) {
    if (std::abs(probabilities.plus + probabilities.minus - 1.0) > kSamplingTolerance) {
        throw std::invalid_argument("outcome probabilities do not sum to 1");
    }
    return stream.uniform() < probabilities.plus ? Outcome::Plus : Outcome::Minus;
}

JointOutcome sample_joint_outcome(const JointProbabilities& probabilities, RoundStream& stream) {
    double total = 0.0;
    for (const auto& row : probabilities)
        for (double p : row) total += p;
    if (std::abs(total - 1.0) > kSamplingTolerance) {
        throw std::invalid_argument("joint outcome probabilities do not sum to 1");
    }

    constexpr std::array<JointOutcome, 4> order{{{Outcome::Plus, Outcome::Plus},
                                                 {Outcome::Plus, Outcome::Minus},
                                                 {Outcome::Minus, Outcome::Plus},
                                                 {Outcome::Minus, Outcome::Minus}}};
    const double u = stream.uniform();
    double cumulative = 0.0;
    const JointOutcome* last_possible = nullptr;
    for (const auto& cell : order) {
        const double p = probabilities[index_of(cell.bob)][index_of(cell.eve)];
        if (p <= 0.0) continue;
        cumulative += p;
        last_possible = &cell;
        if (u < cumulative) return cell;
    }
    // u landed in the rounding gap above the accumulated total
    return *last_possible;
}

}  // namespace eavesim
