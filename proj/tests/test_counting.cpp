#include <cmath>

#include "doctest.h"
#include "stacky/counting.hpp"
#include "stacky/error.hpp"

using namespace stacky;

namespace {

RaisingFunction mu_table(long long l, std::vector<Rat> twisted) {
    RaisingFunction c;
    c.values[SectorLabel::mu(0)] = Rat(0);
    for (size_t j = 0; j < twisted.size(); ++j)
        c.values[SectorLabel::mu((long long)(j + 1))] = twisted[j];
    return c;
}

std::vector<double> integer_samples(long long bmax) {
    std::vector<double> out;
    for (long long b = 1; b <= bmax; ++b) out.push_back(double(b));
    return out;
}

}  // namespace

TEST_CASE("mu_2 counting basics") {
    RaisingFunction c = mu_table(2, {Rat(1)});
    CountSeries s = mu_count(2, c, {0.5, 1, 2, 10});
    CHECK(s.samples[0].second == 0);   // B < 1: even the trivial class has height 1
    CHECK(s.samples[1].second == 1);   // only the trivial class
    CHECK(s.samples[2].second == 3);   // {1, +-2}
    CHECK(s.samples[3].second == 13);  // 2 * 7 - 1
    CHECK(squarefree_count_mobius(10) == 7);
}

TEST_CASE("mu_2 enumeration matches the Moebius oracle") {
    RaisingFunction c = mu_table(2, {Rat(1)});
    CountSeries s = mu_count(2, c, integer_samples(3000));
    for (const auto& [b, n] : s.samples)
        CHECK(n == mu_sieve_oracle(2, c, (long long)b));
}

TEST_CASE("mu_3 (1,1) matches the 2^omega identity") {
    RaisingFunction c = mu_table(3, {Rat(1), Rat(1)});
    CountSeries s = mu_count(3, c, integer_samples(2000));
    CHECK(s.samples[0].second == 1);
    CHECK(s.samples[1].second == 3);  // classes 1, 2, 4
    for (const auto& [b, n] : s.samples)
        CHECK(n == mu_sieve_oracle(3, c, (long long)b));
}

TEST_CASE("mu_3 (1,2) matches the cubefree identity") {
    RaisingFunction c = mu_table(3, {Rat(1), Rat(2)});
    CountSeries s = mu_count(3, c, integer_samples(2000));
    for (const auto& [b, n] : s.samples)
        CHECK(n == mu_sieve_oracle(3, c, (long long)b));
}

TEST_CASE("mu_5 counting stays consistent") {
    // no closed form pinned; check monotonicity and a tiny hand count:
    // classes of height <= 2 with c = (1,1,1,1): a = 1 and the four classes
    // supported on the prime 2 (2, 4, 8, 16 as 5th-power-free reps)
    RaisingFunction c = mu_table(5, {Rat(1), Rat(1), Rat(1), Rat(1)});
    CountSeries s = mu_count(5, c, {1, 2, 30});
    CHECK(s.samples[0].second == 1);
    CHECK(s.samples[1].second == 5);
    CHECK(s.samples[2].second > s.samples[1].second);
}

namespace {

// brute force over l-power-free representatives, heights by factorization;
// num/den give the c-value at each nonzero residue as a fraction
long long brute_force_mu(long long l, const std::vector<std::pair<int, int>>& c, long long b,
                         long long rep_bound) {
    long long count = 0;
    for (long long a = 1; a <= rep_bound; ++a) {
        long long m = a;
        // h <= b iff h^L <= b^L with L the common denominator
        long long den_lcm = 1;
        for (auto [num, den] : c) den_lcm = std::lcm(den_lcm, (long long)den);
        __int128 h_pow = 1;
        __int128 b_pow = 1;
        for (long long i = 0; i < den_lcm; ++i) b_pow *= b;
        bool powerfree = true;
        for (long long p = 2; p * p <= m; ++p) {
            if (m % p) continue;
            int k = 0;
            while (m % p == 0) { m /= p; ++k; }
            if (k >= l) { powerfree = false; break; }
            // exponent of p in h^L, L the common denominator of the c-values
            long long e = c[size_t(k) - 1].first * (den_lcm / c[size_t(k) - 1].second);
            for (long long i = 0; i < e; ++i) h_pow *= p;
            if (h_pow > b_pow) break;
        }
        if (!powerfree || h_pow > b_pow) continue;
        if (m > 1) {
            long long e = c[0].first * (den_lcm / c[0].second);  // residue 1
            for (long long i = 0; i < e; ++i) h_pow *= m;
        }
        if (h_pow <= b_pow) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("mu_5 counting matches a brute force over representatives") {
    RaisingFunction c = mu_table(5, {Rat(1), Rat(1), Rat(1), Rat(1)});
    // heights are radicals, so representatives reach rad^4
    std::vector<double> samples{5, 10, 20, 30};
    CountSeries s = mu_count(5, c, samples);
    for (const auto& [b, n] : s.samples) {
        long long bb = (long long)b;
        CHECK(n == brute_force_mu(5, {{1, 1}, {1, 1}, {1, 1}, {1, 1}}, bb, bb * bb * bb * bb));
    }

    // c = (1,2,3,4) makes the height the representative itself
    RaisingFunction cid = mu_table(5, {Rat(1), Rat(2), Rat(3), Rat(4)});
    CountSeries si = mu_count(5, cid, {100, 1000});
    for (const auto& [b, n] : si.samples) {
        long long bb = (long long)b;
        long long expect = 0;  // 5th-power-free integers up to b
        for (long long a = 1; a <= bb; ++a) {
            long long m = a;
            bool ok = true;
            for (long long p = 2; p * p <= m; ++p) {
                if (m % p) continue;
                int k = 0;
                while (m % p == 0) { m /= p; ++k; }
                if (k >= 5) { ok = false; break; }
            }
            if (ok) ++expect;
        }
        CHECK(n == expect);
    }
}

TEST_CASE("mu_3 with a non-integral raising value") {
    // c = (3/2, 1): exercises the rational-c bucketing with its exact
    // boundary comparisons
    RaisingFunction c = mu_table(3, {Rat(3, 2), Rat(1)});
    std::vector<double> samples;
    for (long long b = 1; b <= 200; ++b) samples.push_back(double(b));
    CountSeries s = mu_count(3, c, samples);
    for (const auto& [b, n] : s.samples) {
        long long bb = (long long)b;
        // heights h = prod p^{3/2 or 1}; h <= b iff h^2 <= b^2, and
        // representatives satisfy a <= h^2 <= b^2
        CHECK(n == brute_force_mu(3, {{3, 2}, {1, 1}}, bb, bb * bb));
    }
}

TEST_CASE("mu_2 with doubled raising counts squarefree up to sqrt(B)") {
    RaisingFunction c = mu_table(2, {Rat(2)});
    CountSeries s = mu_count(2, c, {100, 10000});
    // heights n^2, so N(B) = 2 #SF(sqrt B) - 1
    CHECK(s.samples[0].second == 2 * squarefree_count_mobius(10) - 1);
    CHECK(s.samples[1].second == 2 * squarefree_count_mobius(100) - 1);
}

TEST_CASE("mu counting input validation") {
    CHECK_THROWS_AS(mu_count(4, mu_table(4, {Rat(1), Rat(1), Rat(1)}), {10}), Error);
    CHECK_THROWS_AS(mu_count(2, mu_table(2, {Rat(0)}), {10}), Error);
    CountOptions tiny;
    tiny.budget = 100;
    CHECK_THROWS_AS(mu_count(2, mu_table(2, {Rat(1)}), {1000}, tiny), Error);
}

TEST_CASE("mu counting is deterministic across worker counts") {
    RaisingFunction c = mu_table(3, {Rat(1), Rat(1)});
    std::vector<double> samples{10, 100, 1000, 10000, 100000};
    CountOptions one;
    one.workers = 1;
    CountOptions four;
    four.workers = 4;
    CountSeries s1 = mu_count(3, c, samples, one);
    CountSeries s4 = mu_count(3, c, samples, four);
    REQUIRE(s1.samples.size() == s4.samples.size());
    for (size_t i = 0; i < s1.samples.size(); ++i)
        CHECK(s1.samples[i].second == s4.samples[i].second);
}

TEST_CASE("P(2,3) quasi-toric counts: frozen B = 1 value and oracle agreement") {
    std::vector<long long> w{2, 3};
    std::vector<long long> thresholds;
    for (long long b = 1; b <= 200; ++b) thresholds.push_back(b);
    CountSeries s = wps_count(w, WpsHeightVariant::QuasiToric, thresholds);
    // classes of height exactly 1: (1,0), (-1,0), (0,1), (1,1), (-1,1)
    CHECK(s.samples[0].second == 5);
    std::vector<long long> oracle = wps_oracle_counts(w, WpsHeightVariant::QuasiToric, thresholds);
    for (size_t i = 0; i < thresholds.size(); ++i)
        CHECK(s.samples[i].second == oracle[i]);
}

TEST_CASE("P(1,1,2) stable counts match the oracle") {
    std::vector<long long> w{1, 1, 2};
    std::vector<long long> thresholds;
    for (long long b = 1; b <= 150; ++b) thresholds.push_back(b);
    CountSeries s = wps_count(w, WpsHeightVariant::Stable, thresholds);
    std::vector<long long> oracle = wps_oracle_counts(w, WpsHeightVariant::Stable, thresholds);
    for (size_t i = 0; i < thresholds.size(); ++i) {
        CAPTURE(thresholds[i]);
        CHECK(s.samples[i].second == oracle[i]);
    }
    // monotone
    for (size_t i = 1; i < s.samples.size(); ++i)
        CHECK(s.samples[i].second >= s.samples[i - 1].second);
}

TEST_CASE("cross-family oracle agreement") {
    struct Case {
        std::vector<long long> w;
        WpsHeightVariant variant;
        long long bmax;
    };
    // quasi-toric heights bound canonical coordinates directly, so the
    // slack box is exhaustive for any weights; for stable heights it is
    // exhaustive only when every automorphism-free class must keep a
    // weight-1 coordinate alive (content then divides that coordinate),
    // so the stable cases here are restricted to such families --
    // wider stable families are cross-checked against the coprime-pair
    // identity in the next test case
    std::vector<Case> cases{{{1, 1, 2}, WpsHeightVariant::QuasiToric, 120},
                            {{1, 2}, WpsHeightVariant::Stable, 100},
                            {{1, 2}, WpsHeightVariant::QuasiToric, 300},
                            {{3, 4}, WpsHeightVariant::QuasiToric, 25},
                            {{1, 1, 3}, WpsHeightVariant::Stable, 60},
                            {{1, 5}, WpsHeightVariant::Stable, 15}};
    for (const Case& c : cases) {
        CAPTURE(c.w[0]);
        CAPTURE(c.bmax);
        CAPTURE(int(c.variant));
        std::vector<long long> thresholds;
        for (long long b = 1; b <= c.bmax; ++b) thresholds.push_back(b);
        CountSeries s = wps_count(c.w, c.variant, thresholds);
        std::vector<long long> oracle = wps_oracle_counts(c.w, c.variant, thresholds);
        for (size_t i = 0; i < thresholds.size(); ++i) {
            CAPTURE(thresholds[i]);
            CHECK(s.samples[i].second == oracle[i]);
        }
    }
}

TEST_CASE("2-weight stable counts match the coprime-pair identity") {
    // For coprime weights (a0, a1) the automorphism-free classes are the
    // tuples with both coordinates nonzero, and they biject with their
    // coarse images in P^1(Q) minus the two stacky points; the stable
    // height is the P^1 height raised to |a|/(a0*a1). Hence
    //   N(B) = 2 * (2 * sum_{u <= X} phi(u) - 1),
    // with X the largest integer satisfying X^|a| <= B^(a0*a1).
    // the stable count grows like B^(2 a0 a1 / |a|), so keep B small for the
    // heavier family
    struct IdCase {
        long long a0, a1;
        std::vector<long long> thresholds;
    };
    for (const IdCase& c : {IdCase{2, 3, {2, 5, 10, 50, 137, 300}},
                            IdCase{3, 4, {2, 5, 10, 15, 20}}}) {
        auto [a0, a1] = std::pair<long long, long long>{c.a0, c.a1};
        long long total = a0 + a1;
        const std::vector<long long>& thresholds = c.thresholds;
        CountSeries s = wps_count({a0, a1}, WpsHeightVariant::Stable, thresholds);
        for (size_t i = 0; i < thresholds.size(); ++i) {
            long long b = thresholds[i];
            long long x = (long long)std::pow(double(b), double(a0 * a1) / double(total));
            auto pw = [](long long v, long long e) {
                __int128 r = 1;
                while (e--) r *= v;
                return r;
            };
            __int128 rhs = pw(b, a0 * a1);
            while (pw(x + 1, total) <= rhs) ++x;
            while (x > 0 && pw(x, total) > rhs) --x;
            long long phi_sum = 0;
            for (long long u = 1; u <= x; ++u) {
                long long phi = u, m = u;
                for (long long p = 2; p * p <= m; ++p) {
                    if (m % p) continue;
                    phi -= phi / p;
                    while (m % p == 0) m /= p;
                }
                if (m > 1) phi -= phi / m;
                phi_sum += phi;
            }
            CAPTURE(a0);
            CAPTURE(b);
            CHECK(s.samples[i].second == 2 * (2 * phi_sum - 1));
        }
    }
}

TEST_CASE("P(1,1) has no twisted sectors: both variants agree") {
    std::vector<long long> w{1, 1};
    std::vector<long long> thresholds{1, 2, 5, 10, 50, 100};
    CountSeries qt = wps_count(w, WpsHeightVariant::QuasiToric, thresholds);
    CountSeries st = wps_count(w, WpsHeightVariant::Stable, thresholds);
    for (size_t i = 0; i < thresholds.size(); ++i)
        CHECK(qt.samples[i].second == st.samples[i].second);
    // P^1 heights: N(1) = #{(0,1),(1,0),(1,1),(1,-1)}... as canonical pairs
    CHECK(qt.samples[0].second > 0);
}

TEST_CASE("wps counting is deterministic across worker counts") {
    std::vector<long long> thresholds{1, 10, 100, 1000, 10000};
    CountOptions one;
    one.workers = 1;
    CountOptions four;
    four.workers = 4;
    for (auto variant : {WpsHeightVariant::QuasiToric, WpsHeightVariant::Stable}) {
        CountSeries s1 = wps_count({1, 1, 2}, variant, thresholds, one);
        CountSeries s4 = wps_count({1, 1, 2}, variant, thresholds, four);
        for (size_t i = 0; i < thresholds.size(); ++i)
            CHECK(s1.samples[i].second == s4.samples[i].second);
    }
}

TEST_CASE("wps counting input validation") {
    CHECK_THROWS_AS(wps_count({2, 3, 4, 5}, WpsHeightVariant::QuasiToric, {10}), Error);
    CHECK_THROWS_AS(wps_count({7, 2}, WpsHeightVariant::QuasiToric, {10}), Error);
    CHECK_THROWS_AS(wps_count({2, 3}, WpsHeightVariant::QuasiToric, {0}), Error);
    CountOptions tiny;
    tiny.budget = 10;
    CHECK_THROWS_AS(wps_count({2, 3}, WpsHeightVariant::QuasiToric, {100}, tiny), Error);
}

TEST_CASE("gerbes have no automorphism-free points") {
    CountSeries s = wps_count({2, 2}, WpsHeightVariant::Stable, {1, 10, 100});
    for (const auto& [b, n] : s.samples) CHECK(n == 0);
}
