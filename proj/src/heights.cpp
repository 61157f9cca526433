#include "stacky/heights.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numeric>

#include "stacky/error.hpp"

namespace stacky {

double FormalHeight::value() const {
    double v = archimedean;
    for (const auto& [p, e] : finite) v *= std::pow(double(p), e.to_double());
    return v;
}

void PowProduct::mul_pow(long long p, const Rat& e) {
    if (e.is_zero()) return;
    Rat& slot = exp[p];
    slot = slot + e;
    if (slot.is_zero()) exp.erase(p);
}

void PowProduct::mul_integer(long long n) {
    if (n < 1) throw Error("PowProduct expects positive integers");
    for (long long p = 2; p * p <= n; ++p) {
        int k = 0;
        while (n % p == 0) { n /= p; ++k; }
        if (k) mul_pow(p, Rat(k));
    }
    if (n > 1) mul_pow(n, Rat(1));
}

double PowProduct::log_value() const {
    double s = 0;
    for (const auto& [p, e] : exp) s += e.to_double() * std::log(double(p));
    return s;
}

int PowProduct::compare(const PowProduct& o) const {
    // difference of exponent vectors; equality is exact
    std::map<long long, Rat> diff = exp;
    for (const auto& [p, e] : o.exp) {
        Rat& slot = diff[p];
        slot = slot - e;
        if (slot.is_zero()) diff.erase(p);
    }
    if (diff.empty()) return 0;
    double logdiff = 0;
    long long denom_lcm = 1;
    for (const auto& [p, e] : diff) {
        logdiff += e.to_double() * std::log(double(p));
        denom_lcm = std::lcm(denom_lcm, e.den());
    }
    if (std::abs(logdiff) > 1e-9) return logdiff < 0 ? -1 : 1;
    // ambiguous: compare exactly as big integers after clearing denominators
    namespace mp = boost::multiprecision;
    mp::cpp_int lhs = 1, rhs = 1;
    for (const auto& [p, e] : diff) {
        long long k = e.num() * (denom_lcm / e.den());
        mp::cpp_int power = mp::pow(mp::cpp_int(p), (unsigned)(k < 0 ? -k : k));
        if (k > 0) lhs *= power;
        else rhs *= power;
    }
    if (lhs == rhs) return 0;
    return lhs < rhs ? -1 : 1;
}

int PowProduct::compare_integer(long long n) const {
    PowProduct o;
    o.mul_integer(n);
    return compare(o);
}

int ord_p(long long n, long long p) {
    if (n == 0) throw Error("ord_p of zero");
    if (n < 0) n = -n;
    int k = 0;
    while (n % p == 0) { n /= p; ++k; }
    return k;
}

long long mu_residue(long long a, long long p, long long l) {
    if (a == 0) throw Error("mu residue of 0 is undefined");
    if (p < 2) throw Error("p must be a prime");
    if (l <= 0) throw Error("l must be positive");
    return ord_p(a, p) % l;
}

FormalHeight mu_height(long long a, long long l, const RaisingFunction& c) {
    if (a == 0) throw Error("mu height of 0 is undefined");
    long long n = a < 0 ? -a : a;
    FormalHeight h;
    auto value_at = [&](long long residue) -> const Rat& {
        return c.at(SectorLabel::mu(residue));
    };
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int k = 0;
        while (n % p == 0) { n /= p; ++k; }
        if (k >= l)
            throw Error("representative " + std::to_string(a) + " is not " + std::to_string(l) +
                        "-th-power-free");
        const Rat& v = value_at(k % l);
        if (!v.is_zero()) h.finite[p] = v;
    }
    if (n > 1) {
        const Rat& v = value_at(1 % l);
        if (!v.is_zero()) h.finite[n] = v;
    }
    return h;
}

namespace {

long long ipow(long long base, int e) {
    long long r = 1;
    while (e--) r *= base;
    return r;
}

}  // namespace

WpsTuple reduce_wps_tuple(const std::vector<long long>& weights, const WpsTuple& x) {
    if (x.coords.size() != weights.size())
        throw Error("tuple length does not match the number of weights");
    bool all_zero = true;
    for (long long v : x.coords) all_zero = all_zero && v == 0;
    if (all_zero) throw Error("the zero tuple is not a point");

    WpsTuple out = x;
    // the content primes divide every nonzero coordinate, so trial-divide the
    // smallest one
    long long smallest = 0;
    for (size_t i = 0; i < out.coords.size(); ++i) {
        long long v = out.coords[i] < 0 ? -out.coords[i] : out.coords[i];
        if (v != 0 && (smallest == 0 || v < smallest)) smallest = v;
    }
    auto try_reduce_at = [&](long long p) {
        while (true) {
            bool ok = true;
            for (size_t i = 0; i < out.coords.size() && ok; ++i) {
                if (out.coords[i] == 0) continue;
                if (ord_p(out.coords[i], p) < weights[i]) ok = false;
            }
            if (!ok) break;
            for (size_t i = 0; i < out.coords.size(); ++i)
                if (out.coords[i] != 0) out.coords[i] /= ipow(p, int(weights[i]));
        }
    };
    long long rest = smallest;
    for (long long p = 2; p * p <= rest; ++p) {
        if (rest % p) continue;
        while (rest % p == 0) rest /= p;
        try_reduce_at(p);
    }
    if (rest > 1) try_reduce_at(rest);

    // sign: lambda = -1 flips odd-weight coordinates
    for (size_t i = 0; i < out.coords.size(); ++i) {
        if (weights[i] % 2 == 0) continue;
        if (out.coords[i] == 0) continue;
        if (out.coords[i] < 0)
            for (size_t j = 0; j < out.coords.size(); ++j)
                if (weights[j] % 2 == 1) out.coords[j] = -out.coords[j];
        break;
    }
    return out;
}

std::map<long long, Rat> wps_profile(const std::vector<long long>& weights, const WpsTuple& x) {
    WpsTuple red = reduce_wps_tuple(weights, x);
    // residues are supported on primes dividing every nonzero coordinate
    long long g = 0;
    for (long long v : red.coords) g = std::gcd(g, v < 0 ? -v : v);
    std::map<long long, Rat> profile;
    if (g <= 1) return profile;
    auto residue_at = [&](long long p) {
        Rat r(weights[0]);  // above any possible value
        bool have = false;
        for (size_t i = 0; i < red.coords.size(); ++i) {
            if (red.coords[i] == 0) continue;
            Rat cand(ord_p(red.coords[i], p), weights[i]);
            if (!have || cand < r) r = cand;
            have = true;
        }
        if (!r.is_zero()) profile[p] = r;
    };
    for (long long p = 2; p * p <= g; ++p) {
        if (g % p) continue;
        while (g % p == 0) g /= p;
        residue_at(p);
    }
    if (g > 1) residue_at(g);
    return profile;
}

Rat wps_residue(const std::vector<long long>& weights, const WpsTuple& x, long long p) {
    if (x.coords.size() != weights.size())
        throw Error("tuple length does not match the number of weights");
    bool all_zero = true;
    for (long long v : x.coords) all_zero = all_zero && v == 0;
    if (all_zero) throw Error("the zero tuple is not a point");
    Rat r(0);
    bool have = false;
    for (size_t i = 0; i < x.coords.size(); ++i) {
        if (x.coords[i] == 0) continue;
        Rat cand(ord_p(x.coords[i], p), weights[i]);
        if (!have || cand < r) r = cand;
        have = true;
    }
    if (r >= Rat(1))
        throw Error("tuple is not p-reduced at p = " + std::to_string(p));
    return r;
}

FormalHeight wps_height(const std::vector<long long>& weights, const WpsTuple& x,
                        WpsHeightVariant variant) {
    WpsTuple red = reduce_wps_tuple(weights, x);
    long long total = 0;
    for (long long a : weights) total += a;
    FormalHeight h;
    double arch = 0;
    for (size_t i = 0; i < red.coords.size(); ++i) {
        if (red.coords[i] == 0) continue;
        double v = std::pow(std::abs(double(red.coords[i])), double(total) / double(weights[i]));
        arch = std::max(arch, v);
    }
    h.archimedean = arch;
    if (variant == WpsHeightVariant::Stable) {
        for (const auto& [p, r] : wps_profile(weights, red))
            h.finite[p] = -(r * Rat(total));
    }
    return h;
}

PowProduct wps_height_exact(const std::vector<long long>& weights, const WpsTuple& x,
                            WpsHeightVariant variant) {
    WpsTuple red = reduce_wps_tuple(weights, x);
    long long total = 0;
    for (long long a : weights) total += a;
    // archimedean max: compare |x_i|^{|a|/a_i} pairwise, exactly
    PowProduct best;
    bool have = false;
    for (size_t i = 0; i < red.coords.size(); ++i) {
        if (red.coords[i] == 0) continue;
        PowProduct cand;
        long long v = red.coords[i] < 0 ? -red.coords[i] : red.coords[i];
        cand.mul_integer(v);
        // raise to |a|/a_i
        for (auto& [p, e] : cand.exp) e = e * Rat(total, weights[i]);
        if (!have || cand.compare(best) > 0) best = std::move(cand);
        have = true;
    }
    if (variant == WpsHeightVariant::Stable)
        for (const auto& [p, r] : wps_profile(weights, red))
            best.mul_pow(p, -(r * Rat(total)));
    return best;
}

}  // namespace stacky
