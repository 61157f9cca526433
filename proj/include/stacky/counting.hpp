#pragma once

#include <string>
#include <vector>

#include "stacky/heights.hpp"
#include "stacky/sectors.hpp"

namespace stacky {

struct CountSeries {
    std::string family;
    std::string raising;
    // (B, N(B)) with N monotone nondecreasing in B
    std::vector<std::pair<double, long long>> samples;
};

struct CountOptions {
    int workers = 1;
    // refuse enumerations beyond this height bound
    long long budget = 10'000'000;
};

// --- mu_l torsor counting (exact enumeration of Kummer classes) ---
//
// Classes of Q^*/(Q^*)^l are enumerated as tuples (m_1,...,m_{l-1}) of
// pairwise coprime squarefree positive integers, a = prod m_j^j. For l = 2
// both signs are counted with the trivial class {+-1} counted once. Height:
// prod_j m_j^{c(j)}.
CountSeries mu_count(long long l, const RaisingFunction& c, const std::vector<double>& b_samples,
                     const CountOptions& opts = {});

// Closed-form sieve identities, implemented independently of the enumerator:
//   l = 2, c(1) = 1:        N(B) = 2 * #{squarefree <= B} - 1
//   l = 3, c = (1,1):       N(B) = sum_{n <= B squarefree} 2^omega(n)
//   l = 3, c = (1,2):       N(B) = #{cubefree <= B}
// Throws if (l, c) matches none of the built-in tables.
long long mu_sieve_oracle(long long l, const RaisingFunction& c, long long b);

// Moebius-sum building blocks (exposed for tests)
long long squarefree_count_mobius(long long b);
long long cubefree_count_mobius(long long b);
long long sum_two_omega_sieve(long long b);

// --- weighted projective counting ---
//
// quasi_toric: counts all isomorphism classes with quasi-toric height <= B;
// on canonical reduced representatives the height is max_i |x_i|^{|a|/a_i},
// so the enumeration is a box scan over canonical representatives.
// stable: counts classes with trivial automorphism group (gcd of the weights
// over the nonzero coordinates is 1) with stable height <= B, by recursing
// over sector-content profiles; classes with automorphisms form infinite
// bounded-height families and are excluded.
CountSeries wps_count(const std::vector<long long>& weights, WpsHeightVariant variant,
                      const std::vector<long long>& b_samples, const CountOptions& opts = {});

// Cross-check: enumerates every tuple in the slack box
// |x_i| <= B^{a_i * max(a) / |a|}, reduces to canonical form, deduplicates,
// filters by exact height, and counts per threshold. Same class conventions
// as wps_count. The box is exhaustive for quasi-toric heights (canonical
// coordinates are bounded by B^{a_i/|a|} outright); for stable heights it is
// exhaustive when every automorphism-free class keeps a weight-1 coordinate
// in play, e.g. P(1,1,2) or P(1,k), where the sector content divides that
// coordinate.
std::vector<long long> wps_oracle_counts(const std::vector<long long>& weights,
                                         WpsHeightVariant variant,
                                         const std::vector<long long>& thresholds);

}  // namespace stacky
