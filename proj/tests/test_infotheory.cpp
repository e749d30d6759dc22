#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "eavesim/infotheory.hpp"

using namespace eavesim;

namespace {

// Reference digits from a 30-digit mpmath evaluation of -p log2 p - (1-p) log2(1-p).
constexpr double kEntropyIntermediate = 0.600876036692856100842;  // h((2+sqrt2)/4)
constexpr double kInfoIntermediate = 0.399123963307143899158;     // 1 - h((2+sqrt2)/4)
constexpr double kInfoTable853553 = 0.399122969987689415023;      // 1 - h(0.853553)
constexpr double kEntropy011 = 0.499915958164527995640;           // h(0.11)

JointCounts table(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
    JointCounts t;
    t.counts = {{{a, b}, {c, d}}};
    return t;
}

}  // namespace

TEST_CASE("binary_entropy") {
    CHECK(binary_entropy(0.5) == 1.0);
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy((2 + std::sqrt(2.0)) / 4) == doctest::Approx(kEntropyIntermediate).epsilon(1e-14));
    CHECK(binary_entropy(0.11) == doctest::Approx(kEntropy011).epsilon(1e-14));
    CHECK_THROWS_AS(binary_entropy(-0.01), std::domain_error);
    CHECK_THROWS_AS(binary_entropy(1.5), std::domain_error);
    CHECK_THROWS_AS(binary_entropy(std::nan("")), std::domain_error);
}

TEST_CASE("binary_entropy is concave") {
    for (int i = 0; i <= 50; ++i) {
        for (int j = 0; j <= 50; ++j) {
            const double p = i / 50.0, q = j / 50.0;
            CHECK(binary_entropy((p + q) / 2) >= (binary_entropy(p) + binary_entropy(q)) / 2 - 1e-12);
        }
    }
}

TEST_CASE("info_from_fidelity") {
    CHECK(info_from_fidelity(1.0) == 1.0);
    CHECK(info_from_fidelity(0.0) == 1.0);
    CHECK(info_from_fidelity(0.5) == 0.0);
    CHECK(info_from_fidelity((2 + std::sqrt(2.0)) / 4) == doctest::Approx(kInfoIntermediate).epsilon(1e-14));
    CHECK_THROWS_AS(info_from_fidelity(1.0 + 1e-9), std::domain_error);

    for (int k = 0; k <= 200; ++k) {
        const double f = k / 200.0;
        CHECK(std::abs(info_from_fidelity(f) - info_from_fidelity(1.0 - f)) < 1e-12);
        CHECK(std::abs(info_from_fidelity(f) - (1.0 - binary_entropy(f))) < 1e-12);
    }
}

TEST_CASE("mutual_information") {
    const std::uint64_t n = 1000;
    CHECK(mutual_information(table(n, 0, 0, n)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(mutual_information(table(0, n, n, 0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(mutual_information(table(n, n, n, n)) == 0.0);
    CHECK(mutual_information(table(853553, 146447, 146447, 853553)) ==
          doctest::Approx(kInfoTable853553).epsilon(1e-12));
    CHECK_THROWS_AS(mutual_information(JointCounts{}), std::invalid_argument);

    SUBCASE("binary symmetric tables equal the fidelity formula") {
        for (std::uint64_t k = 0; k <= 1000; k += 7) {
            const double mi = mutual_information(table(k, 1000 - k, 1000 - k, k));
            CHECK(std::abs(mi - info_from_fidelity(k / 1000.0)) < 1e-12);
        }
    }

    SUBCASE("bounded on random tables") {
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<std::uint64_t> cell(0, 50);
        for (int i = 0; i < 2000; ++i) {
            const auto t = table(cell(rng), cell(rng), cell(rng), cell(rng) + 1);
            const double mi = mutual_information(t);
            CHECK(mi >= 0.0);
            CHECK(mi <= 1.0);
        }
    }
}

TEST_CASE("conditional_mutual_information") {
    SUBCASE("one stratum equals the plain estimator") {
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<std::uint64_t> cell(1, 500);
        for (int i = 0; i < 200; ++i) {
            const auto t = table(cell(rng), cell(rng), cell(rng), cell(rng));
            const auto est = conditional_mutual_information(std::span(&t, 1));
            CHECK(std::abs(est.value - mutual_information(t)) < 1e-12);
        }
    }

    SUBCASE("strata are weighted by their size") {
        // Perfect stratum (1 bit) with weight 1/4, useless stratum with weight 3/4.
        const std::vector<JointCounts> strata{table(50, 0, 0, 50), table(75, 75, 75, 75)};
        CHECK(conditional_mutual_information(strata).value == doctest::Approx(0.25).epsilon(1e-12));
        // A pooled table of the same data would carry less information.
        JointCounts pooled = strata[0];
        pooled += strata[1];
        CHECK(mutual_information(pooled) < 0.25);
    }

    SUBCASE("empty strata are skipped, all-empty is an error") {
        const std::vector<JointCounts> strata{JointCounts{}, table(10, 0, 0, 10)};
        CHECK(conditional_mutual_information(strata).value == doctest::Approx(1.0));
        const std::vector<JointCounts> empty(3);
        CHECK_THROWS_AS(conditional_mutual_information(empty), std::invalid_argument);
    }

    SUBCASE("standard error tracks the replicate spread") {
        // 400 replicate samples of a BSC with F = 0.85, n = 4000 each.
        std::mt19937_64 rng(77);
        std::bernoulli_distribution bit(0.5), correct(0.85);
        const int replicates = 400, n = 4000;
        std::vector<double> values;
        double mean_se = 0.0;
        for (int r = 0; r < replicates; ++r) {
            JointCounts t;
            for (int i = 0; i < n; ++i) {
                const int a = bit(rng) ? 1 : 0;
                t.add(a, correct(rng) ? a : 1 - a);
            }
            const auto est = conditional_mutual_information(std::span(&t, 1));
            values.push_back(est.value);
            mean_se += est.standard_error / replicates;
        }
        double mean = 0.0, var = 0.0;
        for (double v : values) mean += v / replicates;
        for (double v : values) var += (v - mean) * (v - mean) / (replicates - 1);
        CHECK(mean_se == doctest::Approx(std::sqrt(var)).epsilon(0.15));
        CHECK(mean == doctest::Approx(info_from_fidelity(0.85)).epsilon(0.02));
    }
}
