#include "eavesim/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eavesim {

namespace {

double plogp(double p) {
    if (p == 0.0) return 0.0;
    return p * std::log2(p);
}

}  // namespace

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binary_entropy: probability outside [0, 1]");
    return -plogp(p) - plogp(1.0 - p);
}

double info_from_fidelity(double fidelity) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw std::domain_error("info_from_fidelity: fidelity outside [0, 1]");
    // 1 + F log2 F + D log2 D written as F log2(2F) + D log2(2D), so that
    // nearly useless channels (F close to 1/2) keep their relative precision.
    const double f = fidelity;
    const double d = 1.0 - fidelity;
    const double bias = f - d;
    double sum = 0.0;
    if (f > 0.0) sum += f * std::log1p(bias);
    if (d > 0.0) sum += d * std::log1p(-bias);
    return std::clamp(sum / std::numbers::ln2, 0.0, 1.0);
}

std::uint64_t JointCounts::total() const noexcept {
    return counts[0][0] + counts[0][1] + counts[1][0] + counts[1][1];
}

JointCounts& JointCounts::operator+=(const JointCounts& other) noexcept {
    for (int a = 0; a < 2; ++a)
        for (int e = 0; e < 2; ++e) counts[a][e] += other.counts[a][e];
    return *this;
}

double mutual_information(const JointCounts& counts) {
    const auto n = static_cast<double>(counts.total());
    if (n == 0.0) throw std::invalid_argument("mutual_information: empty contingency table");

    std::array<double, 2> pa{}, pe{};
    for (int a = 0; a < 2; ++a) {
        for (int e = 0; e < 2; ++e) {
            const double p = static_cast<double>(counts.counts[a][e]) / n;
            pa[a] += p;
            pe[e] += p;
        }
    }
    double mi = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int e = 0; e < 2; ++e) {
            if (counts.counts[a][e] == 0) continue;
            const double p = static_cast<double>(counts.counts[a][e]) / n;
            mi += p * std::log2(p / (pa[a] * pe[e]));
        }
    }
    // Rounding can push independent tables a few ulps negative.
    return std::clamp(mi, 0.0, 1.0);
}

Estimate conditional_mutual_information(std::span<const JointCounts> strata) {
    std::uint64_t total = 0;
    for (const auto& s : strata) total += s.total();
    if (total == 0) throw std::invalid_argument("conditional_mutual_information: no observations");
    const auto n = static_cast<double>(total);

    double mi = 0.0;
    double second_moment = 0.0;
    for (const auto& s : strata) {
        const auto nc = static_cast<double>(s.total());
        if (nc == 0.0) continue;
        std::array<double, 2> na{}, ne{};
        for (int a = 0; a < 2; ++a) {
            for (int e = 0; e < 2; ++e) {
                na[a] += static_cast<double>(s.counts[a][e]);
                ne[e] += static_cast<double>(s.counts[a][e]);
            }
        }
        for (int a = 0; a < 2; ++a) {
            for (int e = 0; e < 2; ++e) {
                const auto k = static_cast<double>(s.counts[a][e]);
                if (k == 0.0) continue;
                const double log_ratio = std::log2(k * nc / (na[a] * ne[e]));
                mi += k / n * log_ratio;
                second_moment += k / n * log_ratio * log_ratio;
            }
        }
    }
    const double variance = std::max(0.0, second_moment - mi * mi) / n;
    return {std::clamp(mi, 0.0, 1.0), std::sqrt(variance)};
}

}  // namespace eavesim
