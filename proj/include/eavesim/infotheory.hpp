#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace eavesim {

/// h(p) in bits, with 0 log 0 = 0. Throws std::domain_error outside [0, 1].
double binary_entropy(double p);

/// Shannon information of a binary identification that is right with
/// probability `fidelity`: 1 + F log2 F + D log2 D = 1 - h(F).
double info_from_fidelity(double fidelity);

/// 2x2 contingency table indexed [alice_bit][eve_guess].
struct JointCounts {
    std::array<std::array<std::uint64_t, 2>, 2> counts{};

    std::uint64_t total() const noexcept;
    void add(int alice_bit, int eve_guess) noexcept { ++counts[alice_bit][eve_guess]; }
    JointCounts& operator+=(const JointCounts& other) noexcept;
};

/// Plug-in estimate of I(A;E) in bits. Throws std::invalid_argument on an
/// all-zero table.
double mutual_information(const JointCounts& counts);

/// Point estimate with a one-sigma standard error.
struct Estimate {
    double value = 0.0;
    double standard_error = 0.0;
};

/// Plug-in conditional mutual information I(A;E|C) = sum_c p(c) I(A;E|C=c),
/// one JointCounts per context value c. Empty strata are ignored.
///
/// The standard error is the first-order (delta-method) normal approximation
/// sqrt((E[L^2] - I^2) / n) with L = log2 p(a,e,c) p(c) / (p(a,c) p(e,c)).
/// It collapses to zero for exactly independent tables, where the estimator
/// is dominated by its O(1/n) bias instead.
Estimate conditional_mutual_information(std::span<const JointCounts> strata);

}  // namespace eavesim
