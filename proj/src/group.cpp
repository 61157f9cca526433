#include "stacky/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "stacky/error.hpp"

namespace stacky {

PermGroup::PermGroup(int degree, std::vector<Perm> gens, std::vector<Perm> elements)
    : degree_(degree), gens_(std::move(gens)), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    exponent_ = 1;
    for (const Perm& p : elements_) exponent_ = std::lcm(exponent_, (long long)p.order());
}

std::vector<Perm> PermGroup::close(const std::vector<Perm>& gens, int degree, size_t bound) {
    std::set<Perm> seen;
    seen.insert(Perm::identity(degree));
    std::vector<Perm> todo(seen.begin(), seen.end());
    for (const Perm& g : gens)
        if (seen.insert(g).second) todo.push_back(g);
    for (size_t head = 0; head < todo.size(); ++head) {
        Perm cur = todo[head];
        for (const Perm& g : gens) {
            Perm prod = cur * g;
            if (seen.insert(prod).second) {
                if (seen.size() > bound)
                    throw Error("group closure exceeds bound of " + std::to_string(bound));
                todo.push_back(std::move(prod));
            }
        }
    }
    return std::vector<Perm>(seen.begin(), seen.end());
}

PermGroup PermGroup::generate(const std::vector<Perm>& gens, const Bounds& bounds) {
    if (gens.empty()) throw Error("generate_group needs at least one generator");
    int degree = gens[0].degree();
    for (const Perm& g : gens)
        if (g.degree() != degree) throw Error("generators have mismatched degrees");
    return PermGroup(degree, gens, close(gens, degree, bounds.closure_bound));
}

PermGroup PermGroup::parse(const std::string& text, const Bounds& bounds) {
    int degree = -1;
    std::vector<Perm> gens;
    size_t pos = 0;
    auto trim = [](std::string s) {
        size_t a = s.find_first_not_of(" \t");
        size_t b = s.find_last_not_of(" \t");
        if (a == std::string::npos) return std::string();
        return s.substr(a, b - a + 1);
    };
    while (pos < text.size()) {
        size_t semi = text.find(';', pos);
        std::string field = trim(text.substr(pos, semi == std::string::npos ? std::string::npos
                                                                            : semi - pos));
        pos = semi == std::string::npos ? text.size() : semi + 1;
        if (field.empty()) continue;
        size_t eq = field.find('=');
        if (eq == std::string::npos) throw Error("bad group field '" + field + "'");
        std::string key = trim(field.substr(0, eq));
        std::string val = trim(field.substr(eq + 1));
        if (key == "degree") {
            degree = std::stoi(val);
        } else if (key == "gens") {
            if (degree <= 0) throw Error("degree must come before gens");
            size_t p = 0;
            while (p < val.size()) {
                size_t bar = val.find('|', p);
                std::string one = trim(val.substr(p, bar == std::string::npos ? std::string::npos
                                                                              : bar - p));
                p = bar == std::string::npos ? val.size() : bar + 1;
                if (one.empty()) continue;
                if (one[0] == '[') {
                    // one-line image list, 1-based
                    if (one.back() != ']') throw Error("unterminated image list '" + one + "'");
                    std::vector<int> img;
                    size_t q = 1;
                    while (q < one.size() - 1) {
                        size_t comma = one.find(',', q);
                        size_t end = comma == std::string::npos ? one.size() - 1 : comma;
                        int v = std::stoi(trim(one.substr(q, end - q)));
                        if (v < 1 || v > degree) throw Error("image out of range in '" + one + "'");
                        img.push_back(v - 1);
                        q = end + (comma == std::string::npos ? 0 : 1);
                        if (comma == std::string::npos) break;
                    }
                    if (int(img.size()) != degree)
                        throw Error("image list length != degree in '" + one + "'");
                    gens.push_back(Perm(img));
                } else {
                    gens.push_back(Perm::parse(one, degree));
                }
            }
        } else {
            throw Error("unknown group field '" + key + "'");
        }
    }
    if (degree <= 0) throw Error("group text needs degree=<n>");
    if (gens.empty()) throw Error("group text needs gens=...");
    return generate(gens, bounds);
}

int PermGroup::index_of(const Perm& p) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
    if (it == elements_.end() || !(*it == p)) return -1;
    return int(it - elements_.begin());
}

int PermGroup::identity_index() const { return index_of(Perm::identity(degree_)); }

std::vector<ConjClass> PermGroup::conjugacy_classes() const {
    std::vector<char> assigned(elements_.size(), 0);
    std::vector<ConjClass> classes;
    for (size_t i = 0; i < elements_.size(); ++i) {
        if (assigned[i]) continue;
        ConjClass cls;
        cls.representative = elements_[i];
        std::vector<int> stack{int(i)};
        assigned[i] = 1;
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            cls.member_idx.push_back(cur);
            for (const Perm& h : gens_) {
                Perm conj = h * elements_[cur] * h.inverse();
                int k = index_of(conj);
                if (!assigned[k]) { assigned[k] = 1; stack.push_back(k); }
            }
        }
        std::sort(cls.member_idx.begin(), cls.member_idx.end());
        cls.representative = elements_[cls.member_idx[0]];
        for (int idx : cls.member_idx)
            if (elements_[idx].cycle_string() < cls.representative.cycle_string())
                cls.representative = elements_[idx];
        classes.push_back(std::move(cls));
    }
    // deterministic order: the identity class "()" first, then by the
    // representative's cycle string
    std::sort(classes.begin(), classes.end(), [](const ConjClass& a, const ConjClass& b) {
        return a.representative.cycle_string() < b.representative.cycle_string();
    });
    return classes;
}

std::vector<PermGroup> PermGroup::subgroups(const Bounds& bounds) const {
    if (order() > bounds.subgroup_order_bound)
        throw Error("subgroup enumeration bound exceeded: |G| = " + std::to_string(order()) +
                    " > " + std::to_string(bounds.subgroup_order_bound));
    // breadth-first closure: grow known subgroups by one element at a time
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> frontier;
    std::vector<int> trivial{identity_index()};
    seen.insert(trivial);
    frontier.push_back(trivial);
    Bounds sub_bounds;
    sub_bounds.closure_bound = order();
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& elems : frontier) {
            for (size_t gi = 0; gi < elements_.size(); ++gi) {
                if (std::binary_search(elems.begin(), elems.end(), int(gi))) continue;
                std::vector<Perm> gens;
                for (int e : elems) gens.push_back(elements_[e]);
                gens.push_back(elements_[gi]);
                std::vector<Perm> closure = close(gens, degree_, order());
                std::vector<int> key;
                key.reserve(closure.size());
                for (const Perm& p : closure) key.push_back(index_of(p));
                std::sort(key.begin(), key.end());
                if (seen.insert(key).second) next.push_back(std::move(key));
            }
        }
        frontier = std::move(next);
    }
    std::vector<std::vector<int>> keys(seen.begin(), seen.end());
    std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::vector<PermGroup> out;
    out.reserve(keys.size());
    for (const auto& key : keys) {
        std::vector<Perm> elems;
        elems.reserve(key.size());
        for (int idx : key) elems.push_back(elements_[idx]);
        std::vector<Perm> gens;
        for (const Perm& p : elems)
            if (!p.is_identity()) gens.push_back(p);
        if (gens.empty()) gens.push_back(Perm::identity(degree_));
        out.push_back(PermGroup(degree_, gens, elems));
    }
    return out;
}

PermGroup PermGroup::normal_closure(const std::vector<Perm>& seed) const {
    for (const Perm& s : seed)
        if (!contains(s)) throw Error("normal_closure seed element not in group");
    // conjugation orbit of the seed under G, then the subgroup it generates;
    // a subgroup generated by a conjugation-invariant set is normal
    std::set<Perm> orbit;
    std::vector<Perm> todo;
    for (const Perm& s : seed)
        if (orbit.insert(s).second) todo.push_back(s);
    for (size_t head = 0; head < todo.size(); ++head) {
        Perm cur = todo[head];
        for (const Perm& g : gens_) {
            Perm conj = g * cur * g.inverse();
            if (orbit.insert(conj).second) todo.push_back(std::move(conj));
        }
    }
    std::vector<Perm> gens(orbit.begin(), orbit.end());
    if (gens.empty()) gens.push_back(Perm::identity(degree_));
    std::vector<Perm> elems = close(gens, degree_, order());
    std::vector<Perm> shown_gens;
    for (const Perm& s : seed)
        if (!s.is_identity()) shown_gens.push_back(s);
    if (shown_gens.empty()) shown_gens.push_back(Perm::identity(degree_));
    return PermGroup(degree_, shown_gens, elems);
}

bool PermGroup::has_subgroup(const PermGroup& h) const {
    if (h.degree() != degree_) return false;
    for (const Perm& p : h.elements())
        if (!contains(p)) return false;
    return true;
}

std::string PermGroup::generators_string() const {
    std::string out;
    for (size_t i = 0; i < gens_.size(); ++i) {
        if (i) out += '|';
        out += gens_[i].cycle_string();
    }
    return out;
}

}  // namespace stacky
