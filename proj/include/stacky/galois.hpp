#pragma once

#include <map>
#include <string>
#include <vector>

#include "stacky/group.hpp"

namespace stacky {

// Image of the absolute Galois group in (Z/eZ)^*, which is all the sector
// calculus sees of the base field.
class FieldDescriptor {
public:
    enum class Kind { Rationals, Split, Explicit };

    static FieldDescriptor rationals() { return FieldDescriptor(Kind::Rationals, 0, {}); }
    static FieldDescriptor split() { return FieldDescriptor(Kind::Split, 0, {}); }
    static FieldDescriptor explicit_units(long long modulus, std::vector<long long> gens);

    // "Q", "split", or "U(e;g1,g2,...)"
    static FieldDescriptor parse(const std::string& text);
    std::string str() const;

    Kind kind() const { return kind_; }

    // The subgroup U <= (Z/mZ)^* after renormalizing to modulus m.
    // For Explicit descriptors m must divide the stored modulus.
    std::vector<long long> units_mod(long long m) const;

private:
    FieldDescriptor(Kind k, long long e, std::vector<long long> gens)
        : kind_(k), modulus_(e), gens_(std::move(gens)) {}

    Kind kind_;
    long long modulus_;
    std::vector<long long> gens_;
};

struct FConjClass {
    Perm representative;
    std::vector<int> member_idx;  // indices into the ambient group's elements()
};

// Orbits of combined conjugation and u-th power maps, u in the unit image of
// F renormalized to exponent(G). Identity class first, then by least
// representative.
std::vector<FConjClass> f_conjugacy_classes(const PermGroup& g, const FieldDescriptor& f);

enum class TwistMode { Trivial, Synchronized, Independent };

std::string twist_mode_name(TwistMode mode);

// Twisted form of a constant group: the Galois action on sectors combines
// power maps with an involution, correlated according to the mode.
struct TwistDatum {
    PermGroup group;
    long long exponent = 1;
    // involutive automorphism, as images of element indices
    std::vector<int> involution;
    TwistMode mode = TwistMode::Trivial;
    // Synchronized only: for each unit u mod exponent, whether the involution
    // accompanies the u-th power map (the quadratic character sigma(u) = -1)
    std::map<long long, bool> sigma;

    // phi = conjugation by w inside the ambient symmetric group
    static TwistDatum conjugation(const PermGroup& h, long long e, const Perm& w, TwistMode mode,
                                  std::map<long long, bool> sigma = {});
};

// Orbit partition of the group under the twist datum; orbit of the identity
// first, then by least representative.
std::vector<FConjClass> twisted_orbits(const TwistDatum& t);

}  // namespace stacky
