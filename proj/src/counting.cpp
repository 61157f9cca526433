#include "stacky/counting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <thread>

#include "stacky/error.hpp"

namespace stacky {

namespace {

using i128 = __int128_t;
constexpr i128 kSat = (i128(1) << 120);

i128 sat_mul(i128 a, i128 b) {
    if (a == 0 || b == 0) return 0;
    if (a >= kSat || b >= kSat) return kSat;
    if (a > kSat / b) return kSat;
    return a * b;
}

i128 sat_pow(long long base, long long e) {
    i128 r = 1;
    for (long long i = 0; i < e; ++i) r = sat_mul(r, base);
    return r;
}

// largest v >= 0 with v^p <= bound^q
long long power_box(long long bound, long long p, long long q) {
    i128 rhs = sat_pow(bound, q);
    long long v = (long long)(std::pow(double(bound), double(q) / double(p)));
    while (v > 0 && sat_pow(v, p) > rhs) --v;
    while (sat_pow(v + 1, p) <= rhs) ++v;
    return v;
}

std::vector<char> squarefree_flags(long long n) {
    std::vector<char> sf(n + 1, 1);
    sf[0] = 0;
    for (long long p = 2; p * p <= n; ++p)
        for (long long q = p * p; q <= n; q += p * p) sf[q] = 0;
    return sf;
}

std::vector<int32_t> spf_sieve(long long n) {
    std::vector<int32_t> spf(n + 1, 0);
    for (long long i = 2; i <= n; ++i) {
        if (spf[i]) continue;
        for (long long j = i; j <= n; j += i)
            if (!spf[j]) spf[j] = int32_t(i);
    }
    return spf;
}

std::vector<int> mobius_sieve(long long n) {
    std::vector<int> mu(n + 1, 1);
    std::vector<char> is_comp(n + 1, 0);
    std::vector<long long> primes;
    for (long long i = 2; i <= n; ++i) {
        if (!is_comp[i]) { primes.push_back(i); mu[i] = -1; }
        for (long long p : primes) {
            if (i * p > n) break;
            is_comp[i * p] = 1;
            if (i % p == 0) { mu[i * p] = 0; break; }
            mu[i * p] = -mu[i];
        }
    }
    return mu;
}

// first index with h <= thresholds[idx], or thresholds.size() if none
size_t bucket_of_int(i128 h, const std::vector<double>& thresholds) {
    size_t lo = 0, hi = thresholds.size();
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (h >= kSat || double(h) > thresholds[mid]) lo = mid + 1;
        else hi = mid;
    }
    return lo;
}

std::vector<long long> prefix_counts(std::vector<long long> hist) {
    long long acc = 0;
    for (long long& v : hist) { acc += v; v = acc; }
    return hist;
}

void run_chunked(long long total, int workers,
                 const std::function<void(long long, long long, int)>& fn) {
    workers = std::max(1, workers);
    if (workers == 1 || total < 2) {
        if (total > 0) fn(0, total, 0);
        return;
    }
    std::vector<std::thread> threads;
    long long chunk = (total + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        long long lo = w * chunk;
        long long hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back(fn, lo, hi, w);
    }
    for (auto& t : threads) t.join();
}

}  // namespace

// ---------------------------------------------------------------------------
// mu_l counting
// ---------------------------------------------------------------------------

namespace {

struct MuContext {
    long long l = 2;
    std::vector<Rat> c;          // index j = 1..l-1
    bool integer_c = true;
    std::vector<long long> ci;   // integer c values when integer_c
    std::vector<double> thresholds;
    std::vector<double> thr_logs;
    double bmax = 1;
    const std::vector<char>* squarefree = nullptr;
    const std::vector<int32_t>* spf = nullptr;
};

// bucket for non-integer c-values: double logs with an exact-comparison
// fallback near threshold boundaries
size_t bucket_rational(const MuContext& ctx, const std::vector<long long>& ms) {
    double logh = 0;
    for (size_t j = 1; j < ms.size(); ++j)
        if (ms[j] > 1) logh += ctx.c[j].to_double() * std::log(double(ms[j]));
    size_t cand = 0;
    while (cand < ctx.thr_logs.size() && ctx.thr_logs[cand] < logh - 1e-7) ++cand;
    if (cand == ctx.thr_logs.size()) return cand;
    if (ctx.thr_logs[cand] > logh + 1e-7) return cand;
    PowProduct h;
    for (size_t j = 1; j < ms.size(); ++j) {
        if (ms[j] <= 1) continue;
        long long m = ms[j];
        while (m > 1) {
            long long p = (*ctx.spf)[m];
            int k = 0;
            while (m % p == 0) { m /= p; ++k; }
            h.mul_pow(p, ctx.c[j] * Rat(k));
        }
    }
    while (cand < ctx.thresholds.size()) {
        double t = ctx.thresholds[cand];
        if (t >= 1 && std::floor(t) == t) {
            if (h.compare_integer((long long)t) <= 0) break;
        } else if (logh <= ctx.thr_logs[cand]) {
            break;
        }
        ++cand;
    }
    return cand;
}

void mu_enumerate(const MuContext& ctx, int level, i128 partial, double log_partial,
                  std::vector<long long>& ms, std::vector<long long>& used_primes,
                  std::vector<long long>& hist) {
    long long bound;
    if (ctx.integer_c) {
        double est = std::pow(ctx.bmax / std::max<double>(1.0, double(partial)),
                              1.0 / double(ctx.ci[level]));
        bound = (long long)(est + 2);
        while (bound > 1 && sat_mul(partial, sat_pow(bound, ctx.ci[level])) > (i128)ctx.bmax)
            --bound;
    } else {
        double budget = (std::log(std::max(ctx.bmax, 1e-300)) - log_partial) /
                        ctx.c[level].to_double();
        bound = budget < 0 ? 1 : (long long)(std::exp(budget) + 2);
    }
    if (bound < 1) bound = 1;
    for (long long m = 1; m <= bound; ++m) {
        if (m > 1) {
            if (!(*ctx.squarefree)[m]) continue;
            bool coprime = true;
            for (long long p : used_primes)
                if (m % p == 0) { coprime = false; break; }
            if (!coprime) continue;
        }
        i128 h = ctx.integer_c ? sat_mul(partial, sat_pow(m, ctx.ci[level])) : 0;
        double logh = log_partial +
                      (m > 1 ? ctx.c[level].to_double() * std::log(double(m)) : 0.0);
        ms[level] = m;
        if (level == 1) {
            size_t idx = ctx.integer_c ? bucket_of_int(h, ctx.thresholds)
                                       : bucket_rational(ctx, ms);
            if (idx < hist.size()) hist[idx] += (ctx.l == 2 && m > 1) ? 2 : 1;
        } else {
            size_t mark = used_primes.size();
            if (m > 1) {
                long long mm = m;
                while (mm > 1) {
                    long long p = (*ctx.spf)[mm];
                    used_primes.push_back(p);
                    while (mm % p == 0) mm /= p;
                }
            }
            mu_enumerate(ctx, level - 1, h, logh, ms, used_primes, hist);
            used_primes.resize(mark);
        }
        ms[level] = 1;
    }
}

}  // namespace

CountSeries mu_count(long long l, const RaisingFunction& c, const std::vector<double>& b_samples,
                     const CountOptions& opts) {
    if (l != 2 && l != 3 && l != 5)
        throw Error("mu counting supports prime l in {2, 3, 5}");
    if (b_samples.empty()) throw Error("no B samples given");
    StackDescriptor stack = StackDescriptor::mu(l);
    c.validate(stack);

    MuContext ctx;
    ctx.l = l;
    ctx.c.assign(l, Rat(0));
    ctx.ci.assign(l, 0);
    for (long long j = 1; j < l; ++j) {
        const Rat& v = c.at(SectorLabel::mu(j));
        if (v.is_zero()) throw Error("mu counting needs c positive on nonzero residues");
        ctx.c[j] = v;
        if (v.is_integer()) ctx.ci[j] = v.num();
        else ctx.integer_c = false;
    }
    ctx.thresholds = b_samples;
    std::sort(ctx.thresholds.begin(), ctx.thresholds.end());
    ctx.bmax = ctx.thresholds.back();
    if (ctx.bmax > double(opts.budget)) throw Error("B sample exceeds the enumeration budget");
    for (double t : ctx.thresholds) ctx.thr_logs.push_back(std::log(std::max(t, 1e-300)));

    double min_c = 1e18;
    for (long long j = 1; j < l; ++j) min_c = std::min(min_c, ctx.c[j].to_double());
    long long sieve_bound =
        ctx.bmax < 1 ? 2 : (long long)(std::pow(ctx.bmax, 1.0 / min_c) + 2);
    sieve_bound = std::max<long long>(sieve_bound, 2);
    if (sieve_bound > 4 * opts.budget) throw Error("mu enumeration bound exceeds the budget");
    std::vector<char> squarefree = squarefree_flags(sieve_bound);
    std::vector<int32_t> spf = spf_sieve(sieve_bound);
    ctx.squarefree = &squarefree;
    ctx.spf = &spf;

    long long outer_bound;
    {
        int level = int(l) - 1;
        if (ctx.integer_c)
            outer_bound = power_box((long long)ctx.bmax, ctx.ci[level], 1);
        else
            outer_bound =
                (long long)(std::pow(std::max(ctx.bmax, 1.0), 1.0 / ctx.c[level].to_double()) + 2);
        if (ctx.bmax < 1) outer_bound = 0;  // even the trivial class has height 1
    }

    int workers = std::max(1, opts.workers);
    std::vector<std::vector<long long>> hists(workers,
                                              std::vector<long long>(ctx.thresholds.size(), 0));
    run_chunked(outer_bound, workers, [&](long long lo, long long hi, int w) {
        std::vector<long long> ms(l, 1);
        std::vector<long long> used;
        int level = int(l) - 1;
        for (long long m = lo + 1; m <= hi; ++m) {
            if (m > 1 && !squarefree[m]) continue;
            ms[level] = m;
            i128 h = ctx.integer_c ? sat_pow(m, ctx.ci[level]) : 0;
            double logh = m > 1 ? ctx.c[level].to_double() * std::log(double(m)) : 0.0;
            if (level == 1) {
                size_t idx = ctx.integer_c ? bucket_of_int(h, ctx.thresholds)
                                           : bucket_rational(ctx, ms);
                if (idx < hists[w].size()) hists[w][idx] += (ctx.l == 2 && m > 1) ? 2 : 1;
            } else {
                used.clear();
                if (m > 1) {
                    long long mm = m;
                    while (mm > 1) {
                        long long p = spf[mm];
                        used.push_back(p);
                        while (mm % p == 0) mm /= p;
                    }
                }
                mu_enumerate(ctx, level - 1, h, logh, ms, used, hists[w]);
            }
            ms[level] = 1;
        }
    });

    std::vector<long long> hist(ctx.thresholds.size(), 0);
    for (const auto& h : hists)
        for (size_t i = 0; i < hist.size(); ++i) hist[i] += h[i];
    std::vector<long long> counts = prefix_counts(std::move(hist));

    CountSeries series;
    series.family = stack.spec_string();
    std::string rdesc = "table:{";
    for (long long j = 1; j < l; ++j) {
        if (j > 1) rdesc += ',';
        rdesc += std::to_string(j) + ":" + ctx.c[j].str();
    }
    series.raising = rdesc + "}";
    for (size_t i = 0; i < ctx.thresholds.size(); ++i)
        series.samples.push_back({ctx.thresholds[i], counts[i]});
    return series;
}

long long squarefree_count_mobius(long long b) {
    if (b < 1) return 0;
    long long d_max = (long long)std::sqrt(double(b)) + 2;
    while (d_max * d_max > b) --d_max;
    std::vector<int> mu = mobius_sieve(d_max);
    long long total = 0;
    for (long long d = 1; d <= d_max; ++d)
        if (mu[d]) total += mu[d] * (b / (d * d));
    return total;
}

long long cubefree_count_mobius(long long b) {
    if (b < 1) return 0;
    long long d_max = (long long)std::cbrt(double(b)) + 2;
    while (d_max * d_max * d_max > b) --d_max;
    std::vector<int> mu = mobius_sieve(d_max);
    long long total = 0;
    for (long long d = 1; d <= d_max; ++d)
        if (mu[d]) total += mu[d] * (b / (d * d * d));
    return total;
}

long long sum_two_omega_sieve(long long b) {
    if (b < 1) return 0;
    std::vector<int32_t> spf = spf_sieve(b);
    long long total = 0;
    for (long long n = 1; n <= b; ++n) {
        long long m = n;
        long long weight = 1;
        bool squarefree = true;
        while (m > 1) {
            long long p = spf[m];
            int k = 0;
            while (m % p == 0) { m /= p; ++k; }
            if (k > 1) { squarefree = false; break; }
            weight *= 2;
        }
        if (squarefree) total += weight;
    }
    return total;
}

long long mu_sieve_oracle(long long l, const RaisingFunction& c, long long b) {
    auto cv = [&](long long j) { return c.at(SectorLabel::mu(j)); };
    if (l == 2 && cv(1) == Rat(1)) {
        if (b < 1) return 0;
        return 2 * squarefree_count_mobius(b) - 1;
    }
    if (l == 3 && cv(1) == Rat(1) && cv(2) == Rat(1)) return sum_two_omega_sieve(b);
    if (l == 3 && cv(1) == Rat(1) && cv(2) == Rat(2)) return cubefree_count_mobius(b);
    throw Error("no sieve identity built in for this (l, c)");
}

// ---------------------------------------------------------------------------
// weighted projective counting
// ---------------------------------------------------------------------------

namespace {

struct WpsShape {
    std::vector<long long> a;
    long long total = 0;  // |a|
    long long a_max = 1;
    std::vector<Rat> twisted_index;  // I \ {0}
};

WpsShape make_shape(const std::vector<long long>& weights) {
    if (weights.size() < 2 || weights.size() > 3)
        throw Error("wps counting supports 2 or 3 weights");
    WpsShape s;
    s.a = weights;
    for (long long ai : weights) {
        if (ai < 1 || ai > 6) throw Error("wps counting supports weights in 1..6");
        s.total += ai;
        s.a_max = std::max(s.a_max, ai);
    }
    std::set<Rat> index_set;
    for (long long ai : weights)
        for (long long k = 1; k < ai; ++k) index_set.insert(Rat(k, ai));
    s.twisted_index.assign(index_set.begin(), index_set.end());
    return s;
}

std::vector<std::vector<int32_t>> powerful_prime_lists(long long bound, long long k) {
    std::vector<std::vector<int32_t>> lists(bound + 1);
    for (long long p = 2;; ++p) {
        i128 pk = sat_pow(p, k);
        if (pk > bound) break;
        bool is_prime = true;
        for (long long q = 2; q * q <= p; ++q)
            if (p % q == 0) { is_prime = false; break; }
        if (!is_prime) continue;
        for (long long v = (long long)pk; v <= bound; v += (long long)pk)
            lists[v].push_back(int32_t(p));
    }
    return lists;
}

bool sign_canonical(const std::vector<long long>& a, const std::vector<long long>& x) {
    for (size_t i = 0; i < x.size(); ++i) {
        if (a[i] % 2 == 0 || x[i] == 0) continue;
        return x[i] > 0;
    }
    return true;  // lambda = -1 acts trivially on this tuple
}

bool tuple_reduced(const WpsShape& s, const std::vector<long long>& x,
                   const std::vector<std::vector<std::vector<int32_t>>>& lists) {
    int j = -1;
    for (size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) { j = int(i); break; }
    if (j < 0) return false;
    long long vj = x[j] < 0 ? -x[j] : x[j];
    for (int32_t p : lists[j][vj]) {
        bool reducible = true;
        for (size_t i = 0; i < x.size() && reducible; ++i) {
            if (int(i) == j || x[i] == 0) continue;
            if (ord_p(x[i], p) < s.a[i]) reducible = false;
        }
        if (reducible) return false;
    }
    return true;
}

// quasi-toric: canonical representatives fill the boxes |x_i| <= B^{a_i/|a|}
// and the height is the archimedean max, so everything is integer data.
std::vector<long long> wps_count_quasi_toric(const WpsShape& s,
                                             const std::vector<long long>& thresholds,
                                             const CountOptions& opts) {
    long long bmax = thresholds.back();
    size_t n = s.a.size();
    std::vector<long long> box(n);
    for (size_t i = 0; i < n; ++i) box[i] = power_box(bmax, s.total, s.a[i]);

    // smallest threshold index admitting coordinate value v: v^|a| <= t^{a_i}
    std::vector<std::vector<int32_t>> min_bucket(n);
    for (size_t i = 0; i < n; ++i) {
        min_bucket[i].assign(box[i] + 1, 0);
        for (long long v = 1; v <= box[i]; ++v) {
            i128 lhs = sat_pow(v, s.total);
            size_t lo = 0, hi = thresholds.size();
            while (lo < hi) {
                size_t mid = (lo + hi) / 2;
                if (sat_pow(thresholds[mid], s.a[i]) >= lhs) hi = mid;
                else lo = mid + 1;
            }
            min_bucket[i][v] = int32_t(lo);
        }
    }

    std::vector<std::vector<std::vector<int32_t>>> lists(n);
    for (size_t i = 0; i < n; ++i) lists[i] = powerful_prime_lists(box[i], s.a[i]);

    double volume = 1;
    for (size_t i = 0; i < n; ++i) volume *= double(2 * box[i] + 1);
    if (volume > 4e9) throw Error("quasi-toric enumeration volume exceeds the budget");

    int workers = std::max(1, opts.workers);
    std::vector<std::vector<long long>> hists(workers,
                                              std::vector<long long>(thresholds.size(), 0));
    run_chunked(2 * box[0] + 1, workers, [&](long long lo, long long hi, int w) {
        std::vector<long long> x(n);
        auto& hist = hists[w];
        for (long long xi = lo; xi < hi; ++xi) {
            x[0] = xi - box[0];
            size_t b0 = x[0] == 0 ? 0 : size_t(min_bucket[0][std::abs(x[0])]);
            if (b0 >= thresholds.size()) continue;
            for (x[1] = -box[1]; x[1] <= box[1]; ++x[1]) {
                size_t b1 = b0;
                if (x[1] != 0) b1 = std::max(b1, size_t(min_bucket[1][std::abs(x[1])]));
                if (b1 >= thresholds.size()) continue;
                if (n == 2) {
                    if (x[0] == 0 && x[1] == 0) continue;
                    if (!sign_canonical(s.a, x)) continue;
                    if (!tuple_reduced(s, x, lists)) continue;
                    ++hist[b1];
                } else {
                    for (x[2] = -box[2]; x[2] <= box[2]; ++x[2]) {
                        if (x[0] == 0 && x[1] == 0 && x[2] == 0) continue;
                        size_t b2 = b1;
                        if (x[2] != 0) b2 = std::max(b2, size_t(min_bucket[2][std::abs(x[2])]));
                        if (b2 >= thresholds.size()) continue;
                        if (!sign_canonical(s.a, x)) continue;
                        if (!tuple_reduced(s, x, lists)) continue;
                        ++hist[b2];
                    }
                }
            }
        }
    });

    std::vector<long long> hist(thresholds.size(), 0);
    for (const auto& h : hists)
        for (size_t i = 0; i < hist.size(); ++i) hist[i] += h[i];
    return prefix_counts(std::move(hist));
}

// --- stable heights: recursion over sector-content profiles ---
//
// A class with residues r_p decomposes as x_i = y_i * prod_p p^{ceil(a_i r_p)}
// where at each content prime some slot i with a_i r_p integral has y_i
// nonzero and coprime to p. Classes with automorphisms (gcd of weights over
// the nonzero slots > 1) are excluded; they form infinite bounded-height
// families and the corresponding profile branches are pruned, which also
// makes the recursion finite.

struct StableContext {
    WpsShape shape;
    std::vector<long long> thresholds;
    std::vector<double> thr_logs;
    long long bmax = 1;
    double log_bmax = 0;
    std::vector<long long> primes;
    std::vector<int32_t> spf;
    int shrink_den = 1;  // lcm of weights: shrink exponents are multiples of 1/den
};

struct StableState {
    std::vector<std::pair<long long, Rat>> profile;
    std::vector<i128> content;  // D_i
    std::vector<double> log_content;
    double log_twist = 0;  // log prod p^{|a| r_p}
    std::vector<long long> beta;
    size_t next_prime_idx = 0;
};

std::vector<long long> loose_boxes(const StableContext& ctx, const StableState& st) {
    std::vector<long long> beta(ctx.shape.a.size());
    for (size_t i = 0; i < beta.size(); ++i) {
        double lb = (double(ctx.shape.a[i]) / double(ctx.shape.total)) *
                        (ctx.log_bmax + st.log_twist) -
                    st.log_content[i];
        beta[i] = lb < 0 ? 0 : (long long)(std::exp(lb)) + 1;
    }
    return beta;
}

bool gcd_live_ok(const WpsShape& s, const std::vector<long long>& beta) {
    long long g = 0;
    for (size_t i = 0; i < beta.size(); ++i)
        if (beta[i] >= 1) g = std::gcd(g, s.a[i]);
    return g == 1;
}

// largest prime that could extend this state: for each residue r, some
// gcd-1 slot set must survive the per-slot shrink p^{ceil(a_i r) - a_i r}
long long state_prime_cap(const StableContext& ctx, const StableState& st) {
    const WpsShape& s = ctx.shape;
    size_t n = s.a.size();
    double best = 0;
    for (const Rat& r : s.twisted_index) {
        // subsets of slots with gcd of weights 1
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            long long g = 0;
            for (size_t i = 0; i < n; ++i)
                if (mask & (1u << i)) g = std::gcd(g, s.a[i]);
            if (g != 1) continue;
            double cap = 1e30;
            bool possible = true;
            for (size_t i = 0; i < n && possible; ++i) {
                if (!(mask & (1u << i))) continue;
                if (st.beta[i] < 1) { possible = false; break; }
                Rat shrink = Rat((r * Rat(s.a[i])).ceil()) - r * Rat(s.a[i]);
                if (shrink.is_zero()) continue;
                cap = std::min(cap, std::pow(double(st.beta[i]) + 1, 1.0 / shrink.to_double()));
            }
            if (possible) best = std::max(best, cap);
        }
    }
    return best > 4e18 ? (long long)4e18 : (long long)best + 1;
}

PowProduct stable_exact_height(const StableContext& ctx, const StableState& st,
                               const std::vector<long long>& y) {
    const WpsShape& s = ctx.shape;
    PowProduct best;
    bool have = false;
    for (size_t i = 0; i < y.size(); ++i) {
        if (y[i] == 0) continue;
        PowProduct cand;
        long long v = y[i] < 0 ? -y[i] : y[i];
        if (v < (long long)ctx.spf.size()) {
            long long m = v;
            while (m > 1) {
                long long p = ctx.spf[m];
                int k = 0;
                while (m % p == 0) { m /= p; ++k; }
                cand.mul_pow(p, Rat(k));
            }
        } else {
            cand.mul_integer(v);
        }
        for (const auto& [p, r] : st.profile) cand.mul_pow(p, Rat((r * Rat(s.a[i])).ceil()));
        for (auto& [p, e] : cand.exp) e = e * Rat(s.total, s.a[i]);
        if (!have || cand.compare(best) > 0) best = std::move(cand);
        have = true;
    }
    for (const auto& [p, r] : st.profile) best.mul_pow(p, -(r * Rat(s.total)));
    return best;
}

void stable_count_state(const StableContext& ctx, const StableState& st,
                        std::vector<long long>& hist) {
    const WpsShape& s = ctx.shape;
    size_t n = s.a.size();
    std::vector<long long> supp;
    std::vector<std::vector<int>> a_slots;
    for (const auto& [p, r] : st.profile) {
        supp.push_back(p);
        std::vector<int> slots;
        for (size_t i = 0; i < n; ++i)
            if ((r * Rat(s.a[i])).is_integer()) slots.push_back(int(i));
        a_slots.push_back(std::move(slots));
    }

    std::vector<long long> y(n);
    auto consider = [&]() {
        bool all_zero = true;
        for (long long v : y) all_zero = all_zero && v == 0;
        if (all_zero) return;
        if (!sign_canonical(s.a, y)) return;
        long long gw = 0;
        for (size_t i = 0; i < n; ++i)
            if (y[i] != 0) gw = std::gcd(gw, s.a[i]);
        if (gw != 1) return;  // class has automorphisms
        for (size_t k = 0; k < supp.size(); ++k) {
            bool ok = false;
            for (int i : a_slots[k])
                if (y[i] != 0 && y[i] % supp[k] != 0) { ok = true; break; }
            if (!ok) return;
        }
        long long g = 0;
        for (long long v : y) g = std::gcd(g, v < 0 ? -v : v);
        for (long long p : supp)
            while (g % p == 0) g /= p;
        if (g != 1) return;  // a residue outside the profile support
        double logh = -1e300;
        for (size_t i = 0; i < n; ++i) {
            if (y[i] == 0) continue;
            double li = (double(s.total) / double(s.a[i])) *
                        (std::log(std::abs(double(y[i]))) + st.log_content[i]);
            logh = std::max(logh, li);
        }
        logh -= st.log_twist;
        size_t cand = size_t(
            std::lower_bound(ctx.thr_logs.begin(), ctx.thr_logs.end(), logh - 1e-7) -
            ctx.thr_logs.begin());
        if (cand >= ctx.thr_logs.size()) return;
        if (ctx.thr_logs[cand] <= logh + 1e-7) {
            PowProduct h = stable_exact_height(ctx, st, y);
            while (cand < ctx.thresholds.size() && h.compare_integer(ctx.thresholds[cand]) > 0)
                ++cand;
            if (cand >= ctx.thresholds.size()) return;
        }
        ++hist[cand];
    };

    if (n == 2) {
        for (y[0] = -st.beta[0]; y[0] <= st.beta[0]; ++y[0])
            for (y[1] = -st.beta[1]; y[1] <= st.beta[1]; ++y[1]) consider();
    } else {
        for (y[0] = -st.beta[0]; y[0] <= st.beta[0]; ++y[0])
            for (y[1] = -st.beta[1]; y[1] <= st.beta[1]; ++y[1])
                for (y[2] = -st.beta[2]; y[2] <= st.beta[2]; ++y[2]) consider();
    }
}

// streams the whole profile tree below st (inclusive) into hist
void stable_dfs(const StableContext& ctx, StableState st, std::vector<long long>& hist,
                double* volume_guard) {
    const WpsShape& s = ctx.shape;
    st.beta = loose_boxes(ctx, st);
    if (!gcd_live_ok(s, st.beta)) return;
    double vol = 1;
    for (long long b : st.beta) vol *= double(2 * b + 1);
    *volume_guard += vol;
    if (*volume_guard > 4e9) throw Error("stable enumeration volume exceeds the budget");
    stable_count_state(ctx, st, hist);

    long long cap = state_prime_cap(ctx, st);
    for (size_t pi = st.next_prime_idx; pi < ctx.primes.size(); ++pi) {
        long long p = ctx.primes[pi];
        if (p > cap) break;
        for (const Rat& r : s.twisted_index) {
            bool admissible = false;
            for (size_t i = 0; i < s.a.size(); ++i)
                if ((r * Rat(s.a[i])).is_integer() && st.beta[i] >= 1) admissible = true;
            if (!admissible) continue;
            StableState next = st;
            next.profile.push_back({p, r});
            next.log_twist += r.to_double() * double(s.total) * std::log(double(p));
            bool dead = false;
            for (size_t i = 0; i < s.a.size(); ++i) {
                long long e = (r * Rat(s.a[i])).ceil();
                next.content[i] = sat_mul(next.content[i], sat_pow(p, e));
                if (next.content[i] >= kSat) dead = true;
                next.log_content[i] += double(e) * std::log(double(p));
            }
            if (dead) continue;
            next.next_prime_idx = pi + 1;
            stable_dfs(ctx, std::move(next), hist, volume_guard);
        }
    }
}

std::vector<long long> wps_count_stable(const WpsShape& s,
                                        const std::vector<long long>& thresholds,
                                        const CountOptions& opts) {
    StableContext ctx;
    ctx.shape = s;
    ctx.thresholds = thresholds;
    ctx.bmax = thresholds.back();
    ctx.log_bmax = std::log(double(ctx.bmax));
    for (long long t : thresholds) ctx.thr_logs.push_back(std::log(double(t)));

    long long g_all = 0;
    for (long long ai : s.a) g_all = std::gcd(g_all, ai);
    if (g_all != 1) {
        // generic gerbe: every point has automorphisms
        return std::vector<long long>(thresholds.size(), 0);
    }

    StableState root;
    root.content.assign(s.a.size(), 1);
    root.log_content.assign(s.a.size(), 0.0);
    root.beta = loose_boxes(ctx, root);

    long long root_box = 0;
    for (long long b : root.beta) root_box = std::max(root_box, b);
    ctx.spf = spf_sieve(std::max<long long>(root_box + 1, 2));

    long long prime_cap = state_prime_cap(ctx, root);
    if (prime_cap > 60'000'000)
        throw Error("stable enumeration needs primes beyond the budget (lower B)");
    {
        std::vector<char> comp(prime_cap + 1, 0);
        for (long long p = 2; p <= prime_cap; ++p) {
            if (comp[p]) continue;
            ctx.primes.push_back(p);
            for (long long q = p * p; q <= prime_cap; q += p) comp[q] = 1;
        }
    }

    // task-level parallelism: the root box, then the root's child subtrees
    // grouped by ranges of the first content prime (small primes carry the
    // heaviest subtrees, so the leading primes get tasks of their own)
    struct Task {
        bool is_root_box = false;
        size_t prime_lo = 0, prime_hi = 0;
    };
    std::vector<Task> tasks;
    tasks.push_back({true, 0, 0});
    {
        size_t nprimes = ctx.primes.size();
        size_t solo = std::min<size_t>(nprimes, 32);
        for (size_t pi = 0; pi < solo; ++pi) tasks.push_back({false, pi, pi + 1});
        size_t chunk = std::max<size_t>(1, (nprimes - solo) / 64);
        for (size_t lo = solo; lo < nprimes; lo += chunk)
            tasks.push_back({false, lo, std::min(nprimes, lo + chunk)});
    }

    auto run_subtrees = [&](size_t prime_lo, size_t prime_hi, std::vector<long long>& hist,
                            double* guard) {
        for (size_t pi = prime_lo; pi < prime_hi; ++pi) {
            long long p = ctx.primes[pi];
            for (const Rat& r : s.twisted_index) {
                StableState next = root;
                next.profile.push_back({p, r});
                next.log_twist += r.to_double() * double(s.total) * std::log(double(p));
                bool dead = false;
                for (size_t i = 0; i < s.a.size(); ++i) {
                    long long e = (r * Rat(s.a[i])).ceil();
                    next.content[i] = sat_mul(next.content[i], sat_pow(p, e));
                    if (next.content[i] >= kSat) dead = true;
                    next.log_content[i] += double(e) * std::log(double(p));
                }
                if (dead) continue;
                next.next_prime_idx = pi + 1;
                stable_dfs(ctx, std::move(next), hist, guard);
            }
        }
    };

    int workers = std::max(1, opts.workers);
    std::vector<std::vector<long long>> hists(workers,
                                              std::vector<long long>(thresholds.size(), 0));
    std::vector<double> guards(workers, 0.0);
    std::vector<std::string> errors(workers);
    run_chunked((long long)tasks.size(), workers, [&](long long lo, long long hi, int w) {
        try {
            for (long long i = lo; i < hi; ++i) {
                if (tasks[i].is_root_box)
                    stable_count_state(ctx, root, hists[w]);
                else
                    run_subtrees(tasks[i].prime_lo, tasks[i].prime_hi, hists[w], &guards[w]);
            }
        } catch (const std::exception& e) {
            errors[w] = e.what();
        }
    });
    for (const auto& err : errors)
        if (!err.empty()) throw Error(err);

    std::vector<long long> hist(thresholds.size(), 0);
    for (const auto& h : hists)
        for (size_t i = 0; i < hist.size(); ++i) hist[i] += h[i];
    return prefix_counts(std::move(hist));
}

}  // namespace

CountSeries wps_count(const std::vector<long long>& weights, WpsHeightVariant variant,
                      const std::vector<long long>& b_samples, const CountOptions& opts) {
    if (b_samples.empty()) throw Error("no B samples given");
    WpsShape shape = make_shape(weights);
    std::vector<long long> thresholds = b_samples;
    std::sort(thresholds.begin(), thresholds.end());
    if (thresholds.front() < 1) throw Error("wps thresholds must be >= 1");
    if (thresholds.back() > opts.budget) throw Error("B sample exceeds the enumeration budget");

    std::vector<long long> counts = variant == WpsHeightVariant::QuasiToric
                                        ? wps_count_quasi_toric(shape, thresholds, opts)
                                        : wps_count_stable(shape, thresholds, opts);

    CountSeries series;
    series.family = StackDescriptor::wps(weights).spec_string() +
                    (variant == WpsHeightVariant::QuasiToric ? "#quasitoric" : "#stable");
    series.raising =
        variant == WpsHeightVariant::QuasiToric ? "builtin:quasitoric" : "builtin:zero";
    for (size_t i = 0; i < thresholds.size(); ++i)
        series.samples.push_back({double(thresholds[i]), counts[i]});
    return series;
}

// ---------------------------------------------------------------------------
// slack-box oracle
// ---------------------------------------------------------------------------

namespace {

void oracle_reduce(const WpsShape& s, std::vector<long long>& x,
                   const std::vector<std::vector<std::vector<int32_t>>>& lists) {
    while (true) {
        int j = -1;
        for (size_t i = 0; i < x.size(); ++i)
            if (x[i] != 0) { j = int(i); break; }
        if (j < 0) return;
        long long vj = x[j] < 0 ? -x[j] : x[j];
        bool reduced_any = false;
        for (int32_t p : lists[j][vj]) {
            while (true) {
                bool ok = true;
                for (size_t i = 0; i < x.size() && ok; ++i) {
                    if (x[i] == 0) continue;
                    if (ord_p(x[i], p) < s.a[i]) ok = false;
                }
                if (!ok) break;
                for (size_t i = 0; i < x.size(); ++i) {
                    if (x[i] == 0) continue;
                    for (long long e = 0; e < s.a[i]; ++e) x[i] /= p;
                }
                reduced_any = true;
            }
            if (reduced_any) break;  // restart with fresh lists for the new value
        }
        if (!reduced_any) break;
    }
    for (size_t i = 0; i < x.size(); ++i) {
        if (s.a[i] % 2 == 0 || x[i] == 0) continue;
        if (x[i] < 0)
            for (size_t j2 = 0; j2 < x.size(); ++j2)
                if (s.a[j2] % 2 == 1) x[j2] = -x[j2];
        break;
    }
}

}  // namespace

std::vector<long long> wps_oracle_counts(const std::vector<long long>& weights,
                                         WpsHeightVariant variant,
                                         const std::vector<long long>& thresholds_in) {
    WpsShape s = make_shape(weights);
    std::vector<long long> thresholds = thresholds_in;
    std::sort(thresholds.begin(), thresholds.end());
    long long bmax = thresholds.back();
    size_t n = s.a.size();

    std::vector<long long> box(n);
    for (size_t i = 0; i < n; ++i) box[i] = power_box(bmax, s.total, s.a[i] * s.a_max);

    // refuse oversized scans before allocating the per-value prime tables
    {
        double volume = 1;
        for (size_t i = 0; i < n; ++i) volume *= double(2 * box[i] + 1);
        if (n == 2 && variant == WpsHeightVariant::QuasiToric) {
            long long naive0 = power_box(bmax, s.total, s.a[0]);
            volume = double(2 * naive0 + 1) * double(2 * box[1] + 1);
        }
        if (volume > 2e9) throw Error("oracle box volume exceeds the budget");
    }

    std::vector<std::vector<std::vector<int32_t>>> lists(n);
    for (size_t i = 0; i < n; ++i) lists[i] = powerful_prime_lists(box[i], s.a[i]);

    std::set<std::vector<long long>> classes;
    std::vector<long long> x(n);

    auto visit = [&](std::vector<long long> tup) {
        bool all_zero = true;
        for (long long v : tup) all_zero = all_zero && v == 0;
        if (all_zero) return;
        oracle_reduce(s, tup, lists);
        if (variant == WpsHeightVariant::QuasiToric) {
            // quasi-toric heights bound each canonical coordinate directly
            for (size_t i = 0; i < n; ++i) {
                long long v = tup[i] < 0 ? -tup[i] : tup[i];
                if (v && sat_pow(v, s.total) > sat_pow(bmax, s.a[i])) return;
            }
        }
        classes.insert(std::move(tup));
    };

    if (n == 3) {
        double volume =
            double(2 * box[0] + 1) * double(2 * box[1] + 1) * double(2 * box[2] + 1);
        if (volume > 2e9) throw Error("oracle box volume exceeds the budget");
        for (x[0] = -box[0]; x[0] <= box[0]; ++x[0])
            for (x[1] = -box[1]; x[1] <= box[1]; ++x[1])
                for (x[2] = -box[2]; x[2] <= box[2]; ++x[2]) visit(x);
    } else {
        long long naive0 = power_box(bmax, s.total, s.a[0]);
        if (variant == WpsHeightVariant::Stable) {
            double full = double(2 * box[0] + 1) * double(2 * box[1] + 1);
            if (full > 2e9) throw Error("oracle box volume exceeds the budget");
            for (x[0] = -box[0]; x[0] <= box[0]; ++x[0])
                for (x[1] = -box[1]; x[1] <= box[1]; ++x[1]) visit(x);
        } else {
            // rows with |x_0| beyond the reduced box B^{a_0/|a|} only matter
            // when some p^{a_0} divides x_0, and then only at y divisible by
            // p^{a_1}; other tuples reduce to canonical forms with the same
            // oversized |x_0| and fail the height filter anyway
            double pruned = double(2 * naive0 + 1) * double(2 * box[1] + 1);
            if (pruned > 2e9) throw Error("oracle box volume exceeds the budget");
            for (x[0] = -box[0]; x[0] <= box[0]; ++x[0]) {
                long long v0 = x[0] < 0 ? -x[0] : x[0];
                bool small_row = v0 <= naive0;
                const auto& plist = lists[0][v0];
                if (!small_row && plist.empty()) continue;
                if (small_row) {
                    for (x[1] = -box[1]; x[1] <= box[1]; ++x[1]) visit(x);
                } else {
                    for (int32_t p : plist) {
                        long long step = 1;
                        for (long long e = 0; e < s.a[1]; ++e) step *= p;
                        for (x[1] = 0; x[1] <= box[1]; x[1] += step) {
                            visit(x);
                            if (x[1] != 0) {
                                x[1] = -x[1];
                                visit(x);
                                x[1] = -x[1];
                            }
                        }
                    }
                    x[1] = 0;
                }
            }
        }
    }

    std::vector<double> thr_logs;
    for (long long t : thresholds) thr_logs.push_back(std::log(double(t)));
    std::vector<long long> hist(thresholds.size(), 0);
    for (const auto& cls : classes) {
        if (variant == WpsHeightVariant::Stable) {
            long long gw = 0;
            for (size_t i = 0; i < n; ++i)
                if (cls[i] != 0) gw = std::gcd(gw, s.a[i]);
            if (gw != 1) continue;  // classes with automorphisms are excluded
        }
        WpsTuple tup{cls};
        FormalHeight h = wps_height(s.a, tup, variant);
        double logh = std::log(std::max(h.archimedean, 1e-300));
        for (const auto& [p, e] : h.finite) logh += e.to_double() * std::log(double(p));
        size_t cand = size_t(
            std::lower_bound(thr_logs.begin(), thr_logs.end(), logh - 1e-7) - thr_logs.begin());
        if (cand >= thresholds.size()) continue;
        if (thr_logs[cand] <= logh + 1e-7) {
            PowProduct exact = wps_height_exact(s.a, tup, variant);
            while (cand < thresholds.size() && exact.compare_integer(thresholds[cand]) > 0)
                ++cand;
            if (cand >= thresholds.size()) continue;
        }
        ++hist[cand];
    }
    return prefix_counts(std::move(hist));
}

}  // namespace stacky
