#include "stacky/invariants.hpp"

#include "stacky/error.hpp"

namespace stacky {

std::string InvariantReport::prediction_string() const {
    return "C*B^(" + predicted_alpha.str() + ")*(log B)^" +
           std::to_string(predicted_log_exponent);
}

std::pair<Rat, long long> ab_invariants(const StackDescriptor& x, const RaisingFunction& c) {
    if (x.dim() != 0)
        throw Error("(a,b)-invariants from raising functions are defined here only for "
                    "zero-dimensional stacks");
    c.validate(x);
    bool have = false;
    Rat min_c(0);
    long long count = 0;
    for (const Sector& s : sectors(x)) {
        if (!s.is_twisted) continue;
        const Rat& v = c.at(s.label);
        if (v.is_zero())
            throw Error("raising function vanishes on twisted sector " + s.label.str() +
                        ": (O,c) is not big");
        if (!have || v < min_c) { min_c = v; count = 0; }
        have = true;
        if (v == min_c) ++count;
    }
    if (!have)
        throw Error("stack has no twisted sector (Spec F is not a nice stack)");
    return {min_c.inv(), count};
}

InvariantReport fano_prediction(const StackDescriptor& x, const RaisingFunction& c) {
    AdequacyResult adq = is_adequate(x, c);
    if (!adq.adequate) throw Error("raising function is not adequate: " + adq.reason);
    InvariantReport rep;
    rep.rho = x.rho();
    rep.j_c = junior_count(x, c);
    rep.adequate = true;
    rep.predicted_alpha = Rat(1);
    rep.predicted_log_exponent = rep.rho + rep.j_c - 1;
    if (x.dim() == 0) {
        auto [a, b] = ab_invariants(x, c);
        rep.a = a;
        rep.b = b;
        if (a != Rat(1) || b - 1 != rep.predicted_log_exponent)
            throw Error("internal cross-check failed: b - 1 != rho + j_c - 1 on a "
                        "zero-dimensional stack");
    } else {
        rep.a = Rat(1);
        rep.b = rep.rho + rep.j_c;
    }
    return rep;
}

InvariantReport ab_report(const StackDescriptor& x, const RaisingFunction& c) {
    auto [a, b] = ab_invariants(x, c);
    InvariantReport rep;
    rep.a = a;
    rep.b = b;
    rep.rho = x.rho();
    rep.j_c = junior_count(x, c);
    rep.adequate = is_adequate(x, c).adequate;
    rep.predicted_alpha = a;
    rep.predicted_log_exponent = b - 1;
    return rep;
}

std::map<SectorLabel, Rat> orbifold_canonical_coefficients(const StackDescriptor& x) {
    std::map<SectorLabel, Rat> out;
    for (const Sector& s : sectors(x))
        if (s.is_twisted) out[s.label] = s.age - Rat(1);
    return out;
}

std::pair<Rat, long long> scaling_check(const StackDescriptor& x, const RaisingFunction& c,
                                        const Rat& r) {
    if (!(r > Rat(0))) throw Error("scaling factor must be positive");
    return ab_invariants(x, c.scaled(r));
}

}  // namespace stacky
