#include "stacky/thin.hpp"

#include <algorithm>

#include "stacky/error.hpp"

namespace stacky {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Breaking: return "breaking";
        case Verdict::WeaklyBreakingOnly: return "weakly-breaking-only";
        case Verdict::NotBreaking: return "not-breaking";
    }
    return "?";
}

Verdict classify(const std::pair<Rat, long long>& sub, const std::pair<Rat, long long>& ambient) {
    if (sub.first > ambient.first) return Verdict::Breaking;
    if (sub.first < ambient.first) return Verdict::NotBreaking;
    if (sub.second > ambient.second) return Verdict::Breaking;
    if (sub.second < ambient.second) return Verdict::NotBreaking;
    return Verdict::WeaklyBreakingOnly;
}

RaisingFunction pullback_raising(const PermGroup& h, const StackDescriptor& bg,
                                 const RaisingFunction& c) {
    const PermGroup& g = bg.group();
    if (!g.has_subgroup(h)) throw Error("pullback: H is not a subgroup of G");
    // c-value of each element of G, read off from its F-class
    std::vector<Rat> by_element(g.order());
    for (const Sector& s : sectors(bg)) {
        const Rat& v = c.at(s.label);
        for (int idx : s.class_members) by_element[idx] = v;
    }
    StackDescriptor bh = StackDescriptor::bg(h, bg.field());
    RaisingFunction out;
    for (const Sector& s : sectors(bh)) {
        const Perm& rep = h.elements()[s.class_members[0]];
        out.values[s.label] = by_element[g.index_of(rep)];
    }
    return out;
}

namespace {

std::vector<ThinVerdict> bg_subgroup_scan(const StackDescriptor& x, const RaisingFunction& c) {
    const PermGroup& g = x.group();
    std::pair<Rat, long long> ambient = ab_invariants(x, c);
    std::vector<ThinVerdict> out;
    for (const PermGroup& h : g.subgroups()) {
        if (h.order() == 1 || h.order() == g.order()) continue;
        StackDescriptor bh = StackDescriptor::bg(h, x.field());
        RaisingFunction ch = pullback_raising(h, x, c);
        auto sub = ab_invariants(bh, ch);
        ThinVerdict v;
        v.source = h.generators_string();
        v.a_sub = sub.first;
        v.b_sub = sub.second;
        v.verdict = classify(sub, ambient);
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<ThinVerdict> mu_subgroup_scan(const StackDescriptor& x, const RaisingFunction& c) {
    long long l = x.mu_order();
    std::pair<Rat, long long> ambient = ab_invariants(x, c);
    std::vector<ThinVerdict> out;
    for (long long m = 2; m < l; ++m) {
        if (l % m != 0) continue;
        // sector j of mu_m maps to j*(l/m) in mu_l
        StackDescriptor sub_stack = StackDescriptor::mu(m);
        RaisingFunction cm;
        for (long long j = 0; j < m; ++j)
            cm.values[SectorLabel::mu(j)] = c.at(SectorLabel::mu(j * (l / m)));
        auto sub = ab_invariants(sub_stack, cm);
        ThinVerdict v;
        v.source = "mu(" + std::to_string(m) + ")";
        v.a_sub = sub.first;
        v.b_sub = sub.second;
        v.verdict = classify(sub, ambient);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

std::vector<ThinVerdict> subgroup_scan(const StackDescriptor& x, const RaisingFunction& c) {
    switch (x.kind()) {
        case StackDescriptor::Kind::BG: return bg_subgroup_scan(x, c);
        case StackDescriptor::Kind::Mu: return mu_subgroup_scan(x, c);
        default:
            throw Error("thin scans are defined for zero-dimensional BG and mu stacks");
    }
}

std::vector<ThinVerdict> twist_scan(const PermGroup& h, long long e, const Perm& involution,
                                    const std::vector<Rat>& c_on_elements,
                                    const std::pair<Rat, long long>& ambient) {
    if (c_on_elements.size() != h.order())
        throw Error("twist_scan: c_on_elements must match the group order");
    std::vector<ThinVerdict> out;
    for (TwistMode mode : {TwistMode::Trivial, TwistMode::Synchronized, TwistMode::Independent}) {
        std::map<long long, bool> sigma;
        if (mode == TwistMode::Synchronized) {
            // quadratic character sending u to whether the involution
            // accompanies it; demand a unique nontrivial one
            std::vector<long long> units;
            for (long long u = 1; u < e; ++u)
                if (std::gcd(u, e) == 1) units.push_back(u);
            if (units.size() != 2)
                throw Error("synchronized mode needs (Z/eZ)^* of order 2; pass sigma explicitly "
                            "through twisted_orbits otherwise");
            sigma[units[0]] = false;
            sigma[units[1]] = true;
        }
        TwistDatum t = TwistDatum::conjugation(h, e, involution, mode, sigma);
        auto orbits = twisted_orbits(t);
        bool have = false;
        Rat min_c(0);
        long long count = 0;
        for (const auto& orb : orbits) {
            if (orb.representative.is_identity()) continue;
            const Rat& v = c_on_elements[orb.member_idx[0]];
            for (int idx : orb.member_idx)
                if (!(c_on_elements[idx] == v))
                    throw Error("c is not constant on a twisted orbit");
            if (v.is_zero()) throw Error("c vanishes on a twisted orbit: not big");
            if (!have || v < min_c) { min_c = v; count = 0; }
            have = true;
            if (v == min_c) ++count;
        }
        if (!have) throw Error("twisted form has no twisted sector");
        ThinVerdict v;
        v.source = twist_mode_name(mode);
        v.a_sub = min_c.inv();
        v.b_sub = count;
        v.verdict = classify({v.a_sub, v.b_sub}, ambient);
        out.push_back(std::move(v));
    }
    return out;
}

ComprehensiveResult is_comprehensive(const PermGroup& g, const std::map<std::string, Rat>& c) {
    auto classes = g.conjugacy_classes();
    // validate: c = 0 exactly on the identity class
    bool have = false;
    Rat min_c(0);
    for (const auto& cls : classes) {
        auto it = c.find(cls.representative.cycle_string());
        if (it == c.end())
            throw Error("comprehensiveness: c missing on class " +
                        cls.representative.cycle_string());
        bool is_id = cls.representative.is_identity();
        if (is_id != it->second.is_zero())
            throw Error("comprehensiveness: c must vanish exactly on the identity class");
        if (is_id) continue;
        if (!have || it->second < min_c) min_c = it->second;
        have = true;
    }
    if (!have) throw Error("group is trivial");
    for (const auto& cls : classes) {
        if (cls.representative.is_identity()) continue;
        if (!(c.at(cls.representative.cycle_string()) == min_c)) continue;
        std::vector<Perm> members;
        for (int idx : cls.member_idx) members.push_back(g.elements()[idx]);
        PermGroup closure = g.normal_closure(members);
        if (closure.order() != g.order()) {
            ComprehensiveResult res;
            res.comprehensive = false;
            res.witness = members;
            res.witness_label = cls.representative.cycle_string();
            return res;
        }
    }
    return {true, std::nullopt, ""};
}

KlunersReport kluners_report() {
    KlunersReport rep;
    std::vector<Perm> gens{Perm::parse("(1,2,3)", 6), Perm::parse("(4,5,6)", 6),
                           Perm::parse("(1,4)(2,5)(3,6)", 6)};
    rep.group = PermGroup::generate(gens);
    StackDescriptor x = StackDescriptor::bg(rep.group, FieldDescriptor::rationals());
    RaisingFunction ind = index_raising(x);
    auto ab = ab_invariants(x, ind);
    rep.a = ab.first;
    rep.b = ab.second;
    rep.subgroup_verdicts = subgroup_scan(x, ind);

    // the unique 3-Sylow subgroup N and its twisted forms N^(K)
    PermGroup n = PermGroup::generate({gens[0], gens[1]});
    std::vector<Rat> c_on_n(n.order());
    for (size_t i = 0; i < n.order(); ++i)
        c_on_n[i] = Rat(n.elements()[i].index());
    rep.twist_verdicts = twist_scan(n, 3, gens[2], c_on_n, ab);

    std::map<std::string, Rat> c_conj;
    for (const auto& cls : rep.group.conjugacy_classes())
        c_conj[cls.representative.cycle_string()] = Rat(cls.representative.index());
    rep.comprehensiveness = is_comprehensive(rep.group, c_conj);
    return rep;
}

}  // namespace stacky
