#include "stacky/sectors.hpp"

#include <algorithm>
#include <set>

#include "stacky/error.hpp"

namespace stacky {

SectorLabel SectorLabel::group(std::string rep) {
    SectorLabel l;
    l.kind = Kind::Group;
    l.class_rep = std::move(rep);
    return l;
}

SectorLabel SectorLabel::mu(long long j, long long mod) {
    SectorLabel l;
    l.kind = Kind::Residue;
    l.residue = j;
    l.residue_mod = mod;
    return l;
}

SectorLabel SectorLabel::wps(const Rat& r) {
    SectorLabel l;
    l.kind = Kind::Wps;
    l.r = r;
    return l;
}

SectorLabel SectorLabel::tuple(std::vector<SectorLabel> parts) {
    SectorLabel l;
    l.kind = Kind::Tuple;
    l.parts = std::move(parts);
    return l;
}

std::string SectorLabel::str() const {
    switch (kind) {
        case Kind::Group: return class_rep;
        case Kind::Residue: return std::to_string(residue);
        case Kind::Wps: return r.str();
        case Kind::Tuple: {
            std::string out = "(";
            for (size_t i = 0; i < parts.size(); ++i) {
                if (i) out += ',';
                out += parts[i].str();
            }
            return out + ")";
        }
    }
    return "?";
}

std::string SectorLabel::fraction_str() const {
    if (kind != Kind::Residue || residue_mod <= 0) return "";
    return Rat(residue, residue_mod).str();
}

bool SectorLabel::operator<(const SectorLabel& o) const {
    if (kind != o.kind) return int(kind) < int(o.kind);
    switch (kind) {
        case Kind::Group: return class_rep < o.class_rep;
        case Kind::Residue: return residue < o.residue;
        case Kind::Wps: return r < o.r;
        case Kind::Tuple: return parts < o.parts;
    }
    return false;
}

bool SectorLabel::operator==(const SectorLabel& o) const {
    return !(*this < o) && !(o < *this);
}

StackDescriptor StackDescriptor::bg(PermGroup group, FieldDescriptor field) {
    StackDescriptor x;
    x.kind_ = Kind::BG;
    x.group_ = std::move(group);
    x.field_ = std::move(field);
    return x;
}

StackDescriptor StackDescriptor::mu(long long l) {
    if (l <= 0) throw Error("mu(l) needs l >= 1");
    StackDescriptor x;
    x.kind_ = Kind::Mu;
    x.l_ = l;
    return x;
}

StackDescriptor StackDescriptor::wps(std::vector<long long> weights) {
    if (weights.empty()) throw Error("weighted projective stack needs at least one weight");
    for (long long a : weights)
        if (a <= 0) throw Error("weights must be positive");
    StackDescriptor x;
    x.kind_ = Kind::Wps;
    x.weights_ = std::move(weights);
    return x;
}

StackDescriptor StackDescriptor::product(std::vector<StackDescriptor> factors) {
    if (factors.size() < 2) throw Error("product needs at least two factors");
    StackDescriptor x;
    x.kind_ = Kind::Product;
    x.factors_ = std::move(factors);
    return x;
}

int StackDescriptor::dim() const {
    switch (kind_) {
        case Kind::BG:
        case Kind::Mu: return 0;
        case Kind::Wps: return int(weights_.size()) - 1;
        case Kind::Product: {
            int d = 0;
            for (const auto& f : factors_) d += f.dim();
            return d;
        }
    }
    return 0;
}

int StackDescriptor::rho() const {
    switch (kind_) {
        case Kind::BG:
        case Kind::Mu: return 0;
        case Kind::Wps: return 1;
        case Kind::Product: {
            int r = 0;
            for (const auto& f : factors_) r += f.rho();
            return r;
        }
    }
    return 0;
}

const PermGroup& StackDescriptor::group() const {
    if (kind_ != Kind::BG) throw Error("not a BG descriptor");
    return group_;
}

const FieldDescriptor& StackDescriptor::field() const {
    if (kind_ != Kind::BG) throw Error("not a BG descriptor");
    return field_;
}

long long StackDescriptor::mu_order() const {
    if (kind_ != Kind::Mu) throw Error("not a mu descriptor");
    return l_;
}

const std::vector<long long>& StackDescriptor::weights() const {
    if (kind_ != Kind::Wps) throw Error("not a weighted projective descriptor");
    return weights_;
}

const std::vector<StackDescriptor>& StackDescriptor::factors() const {
    if (kind_ != Kind::Product) throw Error("not a product descriptor");
    return factors_;
}

bool StackDescriptor::is_supported_fano() const {
    switch (kind_) {
        case Kind::BG:
        case Kind::Mu:
        case Kind::Wps: return true;
        case Kind::Product:
            for (const auto& f : factors_)
                if (f.kind() == Kind::Product || (f.dim() > 0 && f.kind() != Kind::Wps))
                    return false;
            return true;
    }
    return false;
}

std::string StackDescriptor::spec_string() const {
    switch (kind_) {
        case Kind::BG:
            return "bg(degree=" + std::to_string(group_.degree()) +
                   "; gens=" + group_.generators_string() + "; field=" + field_.str() + ")";
        case Kind::Mu: return "mu(" + std::to_string(l_) + ")";
        case Kind::Wps: {
            std::string out = "wps(";
            for (size_t i = 0; i < weights_.size(); ++i) {
                if (i) out += ',';
                out += std::to_string(weights_[i]);
            }
            return out + ")";
        }
        case Kind::Product: {
            std::string out = "prod(";
            for (size_t i = 0; i < factors_.size(); ++i) {
                if (i) out += ',';
                out += factors_[i].spec_string();
            }
            return out + ")";
        }
    }
    return "?";
}

std::vector<Sector> sectors(const StackDescriptor& x) {
    std::vector<Sector> out;
    switch (x.kind()) {
        case StackDescriptor::Kind::BG: {
            auto classes = f_conjugacy_classes(x.group(), x.field());
            for (const auto& cls : classes) {
                Sector s;
                s.label = SectorLabel::group(cls.representative.cycle_string());
                s.age = Rat(0);
                s.is_twisted = !cls.representative.is_identity();
                s.class_members = cls.member_idx;
                out.push_back(std::move(s));
            }
            break;
        }
        case StackDescriptor::Kind::Mu: {
            for (long long j = 0; j < x.mu_order(); ++j) {
                Sector s;
                s.label = SectorLabel::mu(j, x.mu_order());
                s.age = Rat(0);
                s.is_twisted = j != 0;
                out.push_back(std::move(s));
            }
            break;
        }
        case StackDescriptor::Kind::Wps: {
            const auto& a = x.weights();
            std::set<Rat> index_set;
            for (long long ai : a)
                for (long long k = 0; k < ai; ++k) index_set.insert(Rat(k, ai));
            for (const Rat& r : index_set) {
                Sector s;
                s.label = SectorLabel::wps(r);
                Rat age(0);
                for (long long aj : a) age = age + (Rat(-aj) * r).frac();
                s.age = age;
                s.is_twisted = !r.is_zero();
                out.push_back(std::move(s));
            }
            break;
        }
        case StackDescriptor::Kind::Product: {
            std::vector<std::vector<Sector>> parts;
            for (const auto& f : x.factors()) parts.push_back(sectors(f));
            std::vector<size_t> idx(parts.size(), 0);
            while (true) {
                Sector s;
                std::vector<SectorLabel> labels;
                Rat age(0);
                bool twisted = false;
                for (size_t i = 0; i < parts.size(); ++i) {
                    const Sector& p = parts[i][idx[i]];
                    labels.push_back(p.label);
                    age = age + p.age;
                    twisted = twisted || p.is_twisted;
                }
                s.label = SectorLabel::tuple(std::move(labels));
                s.age = age;
                s.is_twisted = twisted;
                out.push_back(std::move(s));
                // odometer, last factor fastest
                size_t i = parts.size();
                while (i > 0) {
                    --i;
                    if (++idx[i] < parts[i].size()) break;
                    idx[i] = 0;
                    if (i == 0) return out;
                }
            }
        }
    }
    return out;
}

const Rat& RaisingFunction::at(const SectorLabel& label) const {
    auto it = values.find(label);
    if (it == values.end())
        throw Error("raising function has no value on sector " + label.str());
    return it->second;
}

void RaisingFunction::validate(const StackDescriptor& x) const {
    for (const Sector& s : sectors(x)) {
        const Rat& v = at(s.label);
        if (v < Rat(0))
            throw Error("raising function negative on sector " + s.label.str());
        if (!s.is_twisted && !v.is_zero())
            throw Error("raising function must vanish on the non-twisted sector");
    }
}

RaisingFunction RaisingFunction::scaled(const Rat& r) const {
    RaisingFunction out;
    for (const auto& [label, v] : values) out.values[label] = v * r;
    return out;
}

RaisingFunction quasi_toric_raising(const StackDescriptor& x) {
    if (x.kind() != StackDescriptor::Kind::Wps)
        throw Error("quasi-toric raising needs a weighted projective stack");
    long long total = 0;
    for (long long a : x.weights()) total += a;
    RaisingFunction c;
    for (const Sector& s : sectors(x)) c.values[s.label] = s.label.r * Rat(total);
    return c;
}

RaisingFunction index_raising(const StackDescriptor& x) {
    if (x.kind() != StackDescriptor::Kind::BG)
        throw Error("index raising needs a BG stack with a permutation action");
    const PermGroup& g = x.group();
    RaisingFunction c;
    for (const Sector& s : sectors(x)) {
        int ind = g.elements()[s.class_members[0]].index();
        // ind is constant on F-conjugacy classes: conjugation preserves cycle
        // type and so do coprime powers
        c.values[s.label] = Rat(ind);
    }
    return c;
}

RaisingFunction constant_raising(const StackDescriptor& x, const Rat& r) {
    if (r < Rat(0)) throw Error("raising values must be nonnegative");
    RaisingFunction c;
    for (const Sector& s : sectors(x)) c.values[s.label] = s.is_twisted ? r : Rat(0);
    return c;
}

RaisingFunction table_raising(const StackDescriptor& x,
                              const std::map<std::string, Rat>& table) {
    RaisingFunction c;
    std::set<std::string> used;
    for (const Sector& s : sectors(x)) {
        auto it = table.find(s.label.str());
        if (it == table.end()) {
            // mu sectors may be keyed by the fraction j/l as in the index
            // set of a weighted projective stack
            std::string alt = s.label.fraction_str();
            if (!alt.empty()) it = table.find(alt);
        }
        if (it == table.end()) {
            if (!s.is_twisted) {
                c.values[s.label] = Rat(0);
                continue;
            }
            throw Error("raising table missing sector " + s.label.str());
        }
        used.insert(it->first);
        c.values[s.label] = it->second;
    }
    for (const auto& [key, v] : table)
        if (!used.count(key)) throw Error("raising table key '" + key + "' matches no sector");
    c.validate(x);
    return c;
}

RaisingFunction boxplus(const StackDescriptor& x, const std::vector<RaisingFunction>& parts) {
    if (x.kind() != StackDescriptor::Kind::Product)
        throw Error("boxplus needs a product stack");
    if (parts.size() != x.factors().size())
        throw Error("boxplus: got " + std::to_string(parts.size()) + " raising functions for " +
                    std::to_string(x.factors().size()) + " factors");
    for (size_t i = 0; i < parts.size(); ++i) parts[i].validate(x.factors()[i]);
    RaisingFunction c;
    for (const Sector& s : sectors(x)) {
        Rat sum(0);
        for (size_t i = 0; i < parts.size(); ++i) sum = sum + parts[i].at(s.label.parts[i]);
        c.values[s.label] = sum;
    }
    return c;
}

std::map<SectorLabel, Rat> age_c(const StackDescriptor& x, const RaisingFunction& c) {
    std::map<SectorLabel, Rat> out;
    for (const Sector& s : sectors(x)) out[s.label] = s.age + c.at(s.label);
    return out;
}

int junior_count(const StackDescriptor& x, const RaisingFunction& c) {
    int count = 0;
    for (const Sector& s : sectors(x))
        if (s.is_twisted && s.age + c.at(s.label) == Rat(1)) ++count;
    return count;
}

AdequacyResult is_adequate(const StackDescriptor& x, const RaisingFunction& c) {
    c.validate(x);
    if (x.dim() > 0 && !x.is_supported_fano())
        throw Error("adequacy is only decidable for weighted projective stacks and their "
                    "products with zero-dimensional stacks");
    bool have_twisted = false;
    Rat min_c(0);
    for (const Sector& s : sectors(x)) {
        if (!s.is_twisted) continue;
        Rat ac = s.age + c.at(s.label);
        if (ac < Rat(1))
            return {false, "age_c(" + s.label.str() + ") = " + ac.str() + " < 1"};
        const Rat& v = c.at(s.label);
        if (!have_twisted || v < min_c) min_c = v;
        have_twisted = true;
    }
    if (x.dim() == 0) {
        if (!have_twisted) return {false, "no twisted sector"};
        if (min_c != Rat(1))
            return {false, "min twisted c = " + min_c.str() + " != 1"};
    }
    return {true, ""};
}

}  // namespace stacky
