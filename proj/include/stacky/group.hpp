#pragma once

#include <map>
#include <string>
#include <vector>

#include "stacky/perm.hpp"

namespace stacky {

struct Bounds {
    // generate_group refuses closures larger than this
    size_t closure_bound = 10000;
    // subgroups() refuses groups larger than this
    size_t subgroup_order_bound = 360;
};

struct ConjClass {
    Perm representative;            // least member in lex order on images
    std::vector<int> member_idx;    // indices into PermGroup::elements(), sorted
};

// Finite permutation group as an explicit sorted element list. Immutable
// after construction; all downstream computations index into elements().
class PermGroup {
public:
    PermGroup() = default;

    static PermGroup generate(const std::vector<Perm>& gens, const Bounds& bounds = {});
    // "degree=6; gens=(1,2,3)|(4,5,6)|(1,4)(2,5)(3,6)", generators either in
    // cycle notation or as one-line image lists "[2,3,1,...]"
    static PermGroup parse(const std::string& text, const Bounds& bounds = {});

    int degree() const { return degree_; }
    size_t order() const { return elements_.size(); }
    long long exponent() const { return exponent_; }
    const std::vector<Perm>& elements() const { return elements_; }
    const std::vector<Perm>& generators() const { return gens_; }

    int index_of(const Perm& p) const;  // -1 if not a member
    bool contains(const Perm& p) const { return index_of(p) >= 0; }
    int identity_index() const;

    // Partition of the group into conjugacy classes; identity class first,
    // then ordered by least representative.
    std::vector<ConjClass> conjugacy_classes() const;

    // All subgroups, including trivial and full, deduplicated, ordered by
    // (order, element index set). Requires order() <= bounds.subgroup_order_bound.
    std::vector<PermGroup> subgroups(const Bounds& bounds = {}) const;

    // Smallest normal subgroup of *this containing S (S must consist of members).
    PermGroup normal_closure(const std::vector<Perm>& seed) const;

    // Is H a subgroup of *this (as element sets)?
    bool has_subgroup(const PermGroup& h) const;

    std::string generators_string() const;

private:
    PermGroup(int degree, std::vector<Perm> gens, std::vector<Perm> elements);
    static std::vector<Perm> close(const std::vector<Perm>& gens, int degree, size_t bound);

    int degree_ = 0;
    std::vector<Perm> gens_;
    std::vector<Perm> elements_;  // sorted lex by images
    long long exponent_ = 1;
};

}  // namespace stacky
