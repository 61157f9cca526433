#include "stacky/galois.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "stacky/error.hpp"

namespace stacky {

FieldDescriptor FieldDescriptor::explicit_units(long long modulus, std::vector<long long> gens) {
    if (modulus <= 0) throw Error("unit-group modulus must be positive");
    for (long long& g : gens) {
        g %= modulus;
        if (g < 0) g += modulus;
        if (std::gcd(g, modulus) != 1)
            throw Error("unit generator " + std::to_string(g) + " not coprime to modulus " +
                        std::to_string(modulus));
    }
    return FieldDescriptor(Kind::Explicit, modulus, std::move(gens));
}

FieldDescriptor FieldDescriptor::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!isspace((unsigned char)c)) s += c;
    if (s == "Q" || s == "q") return rationals();
    if (s == "split") return split();
    if (s.rfind("U(", 0) == 0 && s.back() == ')') {
        std::string body = s.substr(2, s.size() - 3);
        size_t semi = body.find(';');
        if (semi == std::string::npos) throw Error("field descriptor needs U(e;g1,...): " + text);
        long long e = std::stoll(body.substr(0, semi));
        std::vector<long long> gens;
        size_t p = semi + 1;
        while (p < body.size()) {
            size_t comma = body.find(',', p);
            size_t end = comma == std::string::npos ? body.size() : comma;
            gens.push_back(std::stoll(body.substr(p, end - p)));
            p = end + 1;
        }
        return explicit_units(e, gens);
    }
    throw Error("bad field descriptor '" + text + "' (expected Q, split, or U(e;...))");
}

std::string FieldDescriptor::str() const {
    switch (kind_) {
        case Kind::Rationals: return "Q";
        case Kind::Split: return "split";
        case Kind::Explicit: {
            std::string out = "U(" + std::to_string(modulus_) + ";";
            for (size_t i = 0; i < gens_.size(); ++i) {
                if (i) out += ',';
                out += std::to_string(gens_[i]);
            }
            return out + ")";
        }
    }
    return "?";
}

std::vector<long long> FieldDescriptor::units_mod(long long m) const {
    if (m <= 0) throw Error("modulus must be positive");
    std::vector<long long> gens;
    switch (kind_) {
        case Kind::Rationals:
            for (long long u = 1; u < m; ++u)
                if (std::gcd(u, m) == 1) gens.push_back(u);
            if (m == 1) gens.push_back(0);  // (Z/1)^* is trivial
            return gens;
        case Kind::Split:
            return {1 % m};
        case Kind::Explicit: {
            if (modulus_ % m != 0)
                throw Error("field modulus " + std::to_string(modulus_) +
                            " is not a multiple of required modulus " + std::to_string(m));
            std::set<long long> units;
            units.insert(1 % m);
            std::vector<long long> todo(units.begin(), units.end());
            std::vector<long long> reduced;
            for (long long g : gens_) reduced.push_back(g % m);
            for (size_t head = 0; head < todo.size(); ++head) {
                long long u = todo[head];
                for (long long g : reduced) {
                    long long v = (u * g) % m;
                    if (units.insert(v).second) todo.push_back(v);
                }
            }
            return std::vector<long long>(units.begin(), units.end());
        }
    }
    return {};
}

namespace {

std::vector<FConjClass> orbit_partition(const PermGroup& g,
                                        const std::vector<std::vector<int>>& moves) {
    // moves: for each element index, the indices reachable in one step
    std::vector<char> assigned(g.order(), 0);
    std::vector<FConjClass> classes;
    for (size_t i = 0; i < g.order(); ++i) {
        if (assigned[i]) continue;
        FConjClass cls;
        std::vector<int> stack{int(i)};
        assigned[i] = 1;
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            cls.member_idx.push_back(cur);
            for (int nxt : moves[cur])
                if (!assigned[nxt]) { assigned[nxt] = 1; stack.push_back(nxt); }
        }
        std::sort(cls.member_idx.begin(), cls.member_idx.end());
        cls.representative = g.elements()[cls.member_idx[0]];
        for (int idx : cls.member_idx)
            if (g.elements()[idx].cycle_string() < cls.representative.cycle_string())
                cls.representative = g.elements()[idx];
        classes.push_back(std::move(cls));
    }
    std::sort(classes.begin(), classes.end(), [](const FConjClass& a, const FConjClass& b) {
        return a.representative.cycle_string() < b.representative.cycle_string();
    });
    return classes;
}

}  // namespace

std::vector<FConjClass> f_conjugacy_classes(const PermGroup& g, const FieldDescriptor& f) {
    long long m = g.exponent();
    std::vector<long long> units = f.units_mod(m);
    std::vector<std::vector<int>> moves(g.order());
    for (size_t i = 0; i < g.order(); ++i) {
        const Perm& x = g.elements()[i];
        for (const Perm& h : g.generators())
            moves[i].push_back(g.index_of(h * x * h.inverse()));
        for (long long u : units) moves[i].push_back(g.index_of(x.power(u)));
    }
    return orbit_partition(g, moves);
}

std::string twist_mode_name(TwistMode mode) {
    switch (mode) {
        case TwistMode::Trivial: return "trivial";
        case TwistMode::Synchronized: return "synchronized";
        case TwistMode::Independent: return "independent";
    }
    return "?";
}

TwistDatum TwistDatum::conjugation(const PermGroup& h, long long e, const Perm& w, TwistMode mode,
                                   std::map<long long, bool> sigma) {
    TwistDatum t;
    t.group = h;
    t.exponent = e;
    t.mode = mode;
    t.sigma = std::move(sigma);
    t.involution.resize(h.order());
    Perm winv = w.inverse();
    for (size_t i = 0; i < h.order(); ++i) {
        Perm image = w * h.elements()[i] * winv;
        int k = h.index_of(image);
        if (k < 0) throw Error("conjugator does not normalize the group");
        t.involution[i] = k;
    }
    for (size_t i = 0; i < h.order(); ++i)
        if (t.involution[t.involution[i]] != int(i))
            throw Error("twist automorphism is not an involution");
    return t;
}

std::vector<FConjClass> twisted_orbits(const TwistDatum& t) {
    const PermGroup& h = t.group;
    if (t.exponent % h.exponent() != 0)
        throw Error("twist exponent " + std::to_string(t.exponent) +
                    " is not a multiple of the group exponent " + std::to_string(h.exponent()));
    if (int(t.involution.size()) != int(h.order()))
        throw Error("twist involution has wrong size");

    std::vector<long long> units;
    for (long long u = 1; u < t.exponent; ++u)
        if (std::gcd(u, t.exponent) == 1) units.push_back(u);
    if (t.exponent == 1) units.push_back(0);

    if (t.mode == TwistMode::Synchronized) {
        for (long long u : units)
            if (!t.sigma.count(u))
                throw Error("synchronized twist needs sigma(u) for every unit u");
        // sigma must be a homomorphism to {+-1}
        for (long long u : units)
            for (long long v : units) {
                bool lhs = t.sigma.at((u * v) % t.exponent);
                bool rhs = t.sigma.at(u) != t.sigma.at(v);
                if (lhs != rhs) throw Error("sigma is not a character of (Z/eZ)^*");
            }
    }

    std::vector<std::vector<int>> moves(h.order());
    auto power_index = [&](size_t i, long long u) {
        return h.index_of(h.elements()[i].power(u));
    };
    for (size_t i = 0; i < h.order(); ++i) {
        for (const Perm& g : h.generators())
            moves[i].push_back(h.index_of(g * h.elements()[i] * g.inverse()));
        for (long long u : units) {
            int pw = power_index(i, u);
            switch (t.mode) {
                case TwistMode::Trivial:
                    moves[i].push_back(pw);
                    break;
                case TwistMode::Synchronized:
                    moves[i].push_back(t.sigma.at(u) ? t.involution[pw] : pw);
                    break;
                case TwistMode::Independent:
                    moves[i].push_back(pw);
                    moves[i].push_back(t.involution[pw]);
                    break;
            }
        }
    }
    return orbit_partition(h, moves);
}

}  // namespace stacky
