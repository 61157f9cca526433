#pragma once

#include <map>
#include <vector>

#include "stacky/rational.hpp"
#include "stacky/sectors.hpp"

namespace stacky {

// Height value as exact prime-exponent data plus a real archimedean factor.
// value() collapses to a double only at the very end.
struct FormalHeight {
    std::map<long long, Rat> finite;  // prime -> exponent
    double archimedean = 1.0;

    double value() const;
};

// Exact product of prime powers with rational exponents, used to compare
// height values against thresholds without floating-point ties.
struct PowProduct {
    std::map<long long, Rat> exp;

    void mul_pow(long long p, const Rat& e);
    void mul_integer(long long n);  // n >= 1, trial-factored

    // -1, 0, +1 for this < o, == o, > o; exact (falls back to big integers
    // when the log comparison is inside the ambiguity margin)
    int compare(const PowProduct& o) const;
    int compare_integer(long long n) const;
    double log_value() const;
};

// ord_p of n (n != 0)
int ord_p(long long n, long long p);

// --- mu_l ---

// residue of the class of a at p: ord_p(a) mod l
long long mu_residue(long long a, long long p, long long l);

// H(a) = prod_{p | a} p^{c(ord_p a mod l)}; archimedean part 1. The raising
// function is a table on Z/lZ. a must be l-th-power-free.
FormalHeight mu_height(long long a, long long l, const RaisingFunction& c);

// --- weighted projective stacks ---

enum class WpsHeightVariant { QuasiToric, Stable };

struct WpsTuple {
    std::vector<long long> coords;
};

// canonical representative of the class of x: divide out every prime p with
// min_i ord_p(x_i)/a_i >= 1, then normalize the sign so the first nonzero
// odd-weight coordinate is positive
WpsTuple reduce_wps_tuple(const std::vector<long long>& weights, const WpsTuple& x);

// per-prime residues r_p = min_i ord_p(x_i)/a_i of the canonical
// representative (only nonzero residues are listed)
std::map<long long, Rat> wps_profile(const std::vector<long long>& weights, const WpsTuple& x);

// r = min_i ord_p(x_i)/a_i for a p-reduced tuple; errors if the tuple is
// reducible at p or all zero
Rat wps_residue(const std::vector<long long>& weights, const WpsTuple& x, long long p);

// Quasi-toric: the height of the raised anti-canonical bundle with
// c(Y_r) = r|a|; on the canonical representative the finite contributions
// p^{c(r_p)} cancel the sector content exactly, leaving max_i |x_i|^{|a|/a_i}.
// Stable: the quasi-toric value divided by prod_p p^{c(r_p)}; this is the
// product-formula height prod_v max_i |x_i|_v^{|a|/a_i} descending to the
// coarse space.
FormalHeight wps_height(const std::vector<long long>& weights, const WpsTuple& x,
                        WpsHeightVariant variant);

// exact exponent data of the same height, for threshold comparisons
PowProduct wps_height_exact(const std::vector<long long>& weights, const WpsTuple& x,
                            WpsHeightVariant variant);

}  // namespace stacky
