#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "born_oracle.hpp"
#include "doctest.h"
#include "eavesim/quantum_core.hpp"

using namespace eavesim;
using std::numbers::pi;

namespace {

constexpr double kTol = 1e-12;

QubitState random_qubit(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Amplitude a{g(rng), g(rng)}, b{g(rng), g(rng)};
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    return QubitState{{a / n, b / n}};
}

std::vector<double> phi_grid(int n, double hi) {
    std::vector<double> out;
    for (int k = 0; k < n; ++k) out.push_back(hi * k / (n - 1));
    return out;
}

}  // namespace

TEST_CASE("state vectors reject unnormalized or non-finite amplitudes") {
    CHECK_THROWS_AS(QubitState({Amplitude{1, 0}, Amplitude{1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(QubitState({Amplitude{std::numeric_limits<double>::quiet_NaN(), 0}, Amplitude{0, 0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(SignalAncillaState({Amplitude{0, 0}, Amplitude{0, 0}, Amplitude{0, 0}, Amplitude{0, 0}}),
                    std::invalid_argument);
    CHECK_NOTHROW(QubitState({Amplitude{0, 0}, Amplitude{0, 1}}));
}

TEST_CASE("make_bb84_state") {
    const double r = 1.0 / std::sqrt(2.0);

    SUBCASE("x plus") {
        const auto s = make_bb84_state(EquatorBasis::x(), Outcome::Plus);
        CHECK(std::abs(s[0] - Amplitude{r, 0}) < kTol);
        CHECK(std::abs(s[1] - Amplitude{r, 0}) < kTol);
    }
    SUBCASE("y plus") {
        const auto s = make_bb84_state(EquatorBasis::y(), Outcome::Plus);
        CHECK(std::abs(s[0] - Amplitude{r, 0}) < kTol);
        CHECK(std::abs(s[1] - Amplitude{0, r}) < kTol);
    }
    SUBCASE("x minus is orthogonal to x plus") {
        CHECK(std::abs(inner_product(make_bb84_state(KeyBasis::X, Outcome::Plus),
                                     make_bb84_state(KeyBasis::X, Outcome::Minus))) < kTol);
    }
    SUBCASE("only the two key bases are accepted") {
        CHECK_THROWS_AS(make_bb84_state(EquatorBasis::intermediate(), Outcome::Plus), std::invalid_argument);
        CHECK_THROWS_AS(make_bb84_state(EquatorBasis{0.1}, Outcome::Minus), std::invalid_argument);
    }
    SUBCASE("key bases are mutually unbiased") {
        for (Outcome a : {Outcome::Plus, Outcome::Minus})
            for (Outcome b : {Outcome::Plus, Outcome::Minus})
                CHECK(overlap_probability(make_bb84_state(KeyBasis::X, a), make_bb84_state(KeyBasis::Y, b)) ==
                      doctest::Approx(0.5).epsilon(kTol));
    }
}

TEST_CASE("equator bases") {
    CHECK(EquatorBasis::x().phi() == 0.0);
    CHECK(EquatorBasis::y().phi() == doctest::Approx(pi / 2));
    CHECK(EquatorBasis::intermediate().phi() == doctest::Approx(pi / 4));
    CHECK(EquatorBasis{pi / 8}.conjugate_basis().phi() == doctest::Approx(3 * pi / 8));

    for (double phi : phi_grid(100, 2 * pi)) {
        const EquatorBasis b{phi};
        const auto plus = b.eigenstate(Outcome::Plus);
        const auto minus = b.eigenstate(Outcome::Minus);
        CHECK(std::abs(inner_product(plus, minus)) < kTol);
        CHECK(std::abs(plus.squared_norm() - 1.0) < kTol);
        CHECK(std::abs(minus.squared_norm() - 1.0) < kTol);
    }
}

TEST_CASE("outcome_probabilities") {
    const auto plus_x = make_bb84_state(KeyBasis::X, Outcome::Plus);
    const auto plus_y = make_bb84_state(KeyBasis::Y, Outcome::Plus);

    CHECK(outcome_probabilities(plus_x, EquatorBasis::x()).plus == doctest::Approx(1.0).epsilon(kTol));

    for (double phi : phi_grid(100, pi / 2)) {
        const EquatorBasis b{phi};
        const auto px = outcome_probabilities(plus_x, b);
        const auto py = outcome_probabilities(plus_y, b);
        CHECK(std::abs(px.plus - 0.5 * (1 + std::cos(phi))) < kTol);
        CHECK(std::abs(py.plus - 0.5 * (1 + std::sin(phi))) < kTol);
        CHECK(std::abs(px.plus + px.minus - 1.0) < kTol);
        // Mirror symmetry: phi against x equals phi' = pi/2 - phi against y.
        CHECK(std::abs(px.plus - outcome_probabilities(plus_y, b.conjugate_basis()).plus) < kTol);
    }
}

TEST_CASE("project") {
    const auto plus_x = make_bb84_state(KeyBasis::X, Outcome::Plus);
    const auto plus_y = make_bb84_state(KeyBasis::Y, Outcome::Plus);

    CHECK(overlap_probability(project(plus_x, EquatorBasis::x(), Outcome::Plus), plus_x) ==
          doctest::Approx(1.0).epsilon(kTol));

    const double phi = 0.3;
    const auto minus_phi = project(plus_x, EquatorBasis{phi}, Outcome::Minus);
    const double r = 1.0 / std::sqrt(2.0);
    const QubitState expected{{Amplitude{r, 0}, -r * std::polar(1.0, phi)}};
    CHECK(overlap_probability(minus_phi, expected) == doctest::Approx(1.0).epsilon(kTol));

    const auto intermediate_plus = project(plus_y, EquatorBasis::intermediate(), Outcome::Plus);
    const QubitState expected_int{{Amplitude{r, 0}, r * std::polar(1.0, pi / 4)}};
    CHECK(overlap_probability(intermediate_plus, expected_int) == doctest::Approx(1.0).epsilon(kTol));

    CHECK_THROWS_AS(project(plus_x, EquatorBasis::x(), Outcome::Minus), std::logic_error);
}

TEST_CASE("apply_eve_unitary") {
    const auto zero = QubitState{{Amplitude{1, 0}, Amplitude{0, 0}}};
    const auto one = QubitState{{Amplitude{0, 0}, Amplitude{1, 0}}};
    const double alpha = 0.7;

    SUBCASE("|0> is untouched") {
        const auto out = apply_eve_unitary(zero, alpha);
        const SignalAncillaState ket00{{Amplitude{1, 0}, Amplitude{}, Amplitude{}, Amplitude{}}};
        CHECK(overlap_probability(out, ket00) == doctest::Approx(1.0).epsilon(kTol));
    }
    SUBCASE("|1> splits into cos|10> + sin|01>") {
        const auto out = apply_eve_unitary(one, alpha);
        CHECK(std::abs(out[2] - Amplitude{std::cos(alpha), 0}) < kTol);
        CHECK(std::abs(out[1] - Amplitude{std::sin(alpha), 0}) < kTol);
        CHECK(std::abs(out[0]) < kTol);
        CHECK(std::abs(out[3]) < kTol);
    }
    SUBCASE("alpha = 0 leaves the signal alone") {
        const auto plus_x = make_bb84_state(KeyBasis::X, Outcome::Plus);
        const double r = 1.0 / std::sqrt(2.0);
        const SignalAncillaState expected{{Amplitude{r, 0}, Amplitude{}, Amplitude{r, 0}, Amplitude{}}};
        CHECK(overlap_probability(apply_eve_unitary(plus_x, 0.0), expected) == doctest::Approx(1.0).epsilon(kTol));
    }
    SUBCASE("unitarity on random inputs") {
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> angle(-2 * pi, 2 * pi);
        for (int i = 0; i < 500; ++i) {
            const auto out = apply_eve_unitary(random_qubit(rng), angle(rng));
            CHECK(std::abs(out.squared_norm() - 1.0) < kTol);
        }
    }
}

TEST_CASE("joint_outcome_probabilities") {
    const auto plus_x = make_bb84_state(KeyBasis::X, Outcome::Plus);
    const auto plus_y = make_bb84_state(KeyBasis::Y, Outcome::Plus);

    SUBCASE("|00> in x is uniform") {
        const SignalAncillaState ket00{{Amplitude{1, 0}, Amplitude{}, Amplitude{}, Amplitude{}}};
        const auto t = joint_outcome_probabilities(ket00, EquatorBasis::x(), EquatorBasis::x());
        for (const auto& row : t)
            for (double p : row) CHECK(p == doctest::Approx(0.25).epsilon(kTol));
    }

    SUBCASE("marginals match the ancilla fidelities on a grid") {
        for (double alpha : phi_grid(25, pi / 2)) {
            for (double phi : phi_grid(25, pi / 4)) {
                const EquatorBasis eve{phi};
                const auto tx = joint_outcome_probabilities(apply_eve_unitary(plus_x, alpha), EquatorBasis::x(), eve);
                const auto ty = joint_outcome_probabilities(apply_eve_unitary(plus_y, alpha), EquatorBasis::y(), eve);
                double total = 0.0;
                for (const auto& row : tx)
                    for (double p : row) total += p;
                CHECK(std::abs(total - 1.0) < kTol);

                const double bob_plus = tx[0][0] + tx[0][1];
                const double eve_plus_x = tx[0][0] + tx[1][0];
                const double eve_plus_y = ty[0][0] + ty[1][0];
                CHECK(std::abs(bob_plus - 0.5 * (1 + std::cos(alpha))) < kTol);
                CHECK(std::abs(eve_plus_x - 0.5 * (1 + std::cos(phi) * std::sin(alpha))) < kTol);
                CHECK(std::abs(eve_plus_y - 0.5 * (1 + std::sin(phi) * std::sin(alpha))) < kTol);

                // Independent route: partial trace over Bob's qubit.
                const auto rho = born_oracle::reduce(born_oracle::couple(born_oracle::alice_state(0, 0), alpha), true);
                CHECK(std::abs(eve_plus_x - born_oracle::expectation(rho, born_oracle::equator_state(phi, 0))) < kTol);
            }
        }
    }
}

TEST_CASE("sample_outcome") {
    RoundStream stream(42, 0);
    for (int i = 0; i < 100; ++i) {
        CHECK(sample_outcome({1.0, 0.0}, stream) == Outcome::Plus);
        CHECK(sample_outcome({0.0, 1.0}, stream) == Outcome::Minus);
    }
    CHECK_THROWS_AS(sample_outcome({0.5, 0.6}, stream), std::invalid_argument);
    CHECK_THROWS_AS(sample_joint_outcome({{{0.5, 0.5}, {0.5, 0.0}}}, stream), std::invalid_argument);

    SUBCASE("certain joint cell") {
        for (int i = 0; i < 50; ++i) {
            const auto j = sample_joint_outcome({{{0.0, 0.0}, {1.0, 0.0}}}, stream);
            CHECK(j.bob == Outcome::Minus);
            CHECK(j.eve == Outcome::Plus);
        }
    }

    SUBCASE("seed 42 golden sequence") {
        // Frozen from the first run; any change to the stream or the
        // inverse-CDF order shows up here.
        const JointProbabilities table{{{0.1, 0.2}, {0.3, 0.4}}};
        std::string seq;
        for (std::uint64_t i = 0; i < 24; ++i) {
            RoundStream s(42, i);
            const auto j = sample_joint_outcome(table, s);
            seq += static_cast<char>('0' + 2 * index_of(j.bob) + index_of(j.eve));
            seq += sample_outcome({0.3, 0.7}, s) == Outcome::Plus ? '+' : '-';
        }
        CHECK(seq == "0+3-3+0-1-3+3-2-1-3-2-3+2-3+2+3-1-3-3-3-3+1+1-0-");
    }
}

TEST_CASE("round streams are keyed by (seed, index)") {
    RoundStream a(7, 3), b(7, 3), c(7, 4), d(8, 3);
    const auto va = a.next_u64();
    CHECK(va == b.next_u64());
    CHECK(va != c.next_u64());
    CHECK(va != d.next_u64());

    // Uniform draws: mean 1/2, variance 1/12.
    double sum = 0.0, sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        RoundStream s(99, static_cast<std::uint64_t>(i));
        const double u = s.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
        sq += u * u;
    }
    CHECK(std::abs(sum / n - 0.5) < 4 * std::sqrt(1.0 / 12 / n));
    CHECK(std::abs(sq / n - sum * sum / n / n - 1.0 / 12) < 2e-3);
}
