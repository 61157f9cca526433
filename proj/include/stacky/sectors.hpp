#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "stacky/galois.hpp"
#include "stacky/group.hpp"
#include "stacky/rational.hpp"

namespace stacky {

// Label of a connected component of the twisted 0-jet stack. BG sectors are
// named by the least member of the F-conjugacy class, mu_l sectors by the
// residue j in Z/l, weighted projective sectors by r in I, products by
// tuples of factor labels.
struct SectorLabel {
    enum class Kind { Group, Residue, Wps, Tuple };

    Kind kind = Kind::Residue;
    std::string class_rep;            // Group: canonical cycle string
    long long residue = 0;            // Residue
    long long residue_mod = 0;        // Residue: the modulus l, when known
    Rat r;                            // Wps
    std::vector<SectorLabel> parts;   // Tuple

    static SectorLabel group(std::string rep);
    static SectorLabel mu(long long j, long long l = 0);
    static SectorLabel wps(const Rat& r);
    static SectorLabel tuple(std::vector<SectorLabel> parts);

    std::string str() const;
    // "j/l" for mu sectors, matching the identification of mu_l sectors with
    // the rationals j/l; empty when the modulus is unknown
    std::string fraction_str() const;
    bool operator<(const SectorLabel& o) const;
    bool operator==(const SectorLabel& o) const;
};

struct Sector {
    SectorLabel label;
    Rat age;
    bool is_twisted = false;
    // BG sectors: element indices of the F-conjugacy class
    std::vector<int> class_members;
};

class StackDescriptor {
public:
    enum class Kind { BG, Mu, Wps, Product };

    static StackDescriptor bg(PermGroup group, FieldDescriptor field);
    static StackDescriptor mu(long long l);
    static StackDescriptor wps(std::vector<long long> weights);
    static StackDescriptor product(std::vector<StackDescriptor> factors);

    Kind kind() const { return kind_; }
    int dim() const;
    int rho() const;

    const PermGroup& group() const;
    const FieldDescriptor& field() const;
    long long mu_order() const;
    const std::vector<long long>& weights() const;
    const std::vector<StackDescriptor>& factors() const;

    // Every factor is a weighted projective stack or zero-dimensional: the
    // families for which rho and the Fano property are known in closed form.
    bool is_supported_fano() const;

    std::string spec_string() const;

private:
    StackDescriptor() = default;

    Kind kind_ = Kind::Mu;
    PermGroup group_;
    FieldDescriptor field_ = FieldDescriptor::rationals();
    long long l_ = 1;
    std::vector<long long> weights_;
    std::vector<StackDescriptor> factors_;
};

// Sectors in deterministic order: the non-twisted sector first for BG/Mu/Wps
// (identity class / residue 0 / r = 0), products in lexicographic factor
// order as in nested loops with the first factor outermost.
std::vector<Sector> sectors(const StackDescriptor& x);

// Total table of c-values on the sectors of one stack.
struct RaisingFunction {
    std::map<SectorLabel, Rat> values;

    const Rat& at(const SectorLabel& label) const;
    // checks totality and c(non-twisted) = 0
    void validate(const StackDescriptor& x) const;

    RaisingFunction scaled(const Rat& r) const;
};

// c(Y_r) = r * |a|
RaisingFunction quasi_toric_raising(const StackDescriptor& wps);
// c([g]) = ind(g) = degree - #orbits, via the group's permutation action
RaisingFunction index_raising(const StackDescriptor& bg);
// c = r on every twisted sector, 0 on the non-twisted one
RaisingFunction constant_raising(const StackDescriptor& x, const Rat& r);
// explicit table keyed by sector label, checked total against x
RaisingFunction table_raising(const StackDescriptor& x,
                              const std::map<std::string, Rat>& table);
// (c1 [+] c2)(y1,...,yk) = sum of factor values
RaisingFunction boxplus(const StackDescriptor& product,
                        const std::vector<RaisingFunction>& parts);

std::map<SectorLabel, Rat> age_c(const StackDescriptor& x, const RaisingFunction& c);

// twisted sectors with age_c exactly 1
int junior_count(const StackDescriptor& x, const RaisingFunction& c);

struct AdequacyResult {
    bool adequate = false;
    std::string reason;
};

AdequacyResult is_adequate(const StackDescriptor& x, const RaisingFunction& c);

}  // namespace stacky
