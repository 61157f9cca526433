#pragma once

#include <map>
#include <string>

#include "stacky/sectors.hpp"

namespace stacky {

struct InvariantReport {
    Rat a;
    long long b = 0;
    int rho = 0;
    int j_c = 0;
    bool adequate = false;
    Rat predicted_alpha;
    long long predicted_log_exponent = 0;

    // "C*B^(a)*(log B)^k"
    std::string prediction_string() const;
};

// a = 1/min twisted c, b = #minimizing twisted sectors; zero-dimensional
// stacks only, c positive on twisted sectors.
std::pair<Rat, long long> ab_invariants(const StackDescriptor& x, const RaisingFunction& c);

// Predicted asymptotic C*B*(log B)^(rho + j_c - 1) for an adequate pair on a
// supported Fano family. For dim 0 this is cross-checked against b - 1.
InvariantReport fano_prediction(const StackDescriptor& x, const RaisingFunction& c);

// Report for possibly-inadequate dim-0 pairs: alpha = a, log exponent b - 1.
InvariantReport ab_report(const StackDescriptor& x, const RaisingFunction& c);

// Coefficient age(Y) - 1 of each twisted sector in the orbifold canonical class.
std::map<SectorLabel, Rat> orbifold_canonical_coefficients(const StackDescriptor& x);

// (a, b) of the scaled raising function r*c: a scales by 1/r, b is unchanged.
std::pair<Rat, long long> scaling_check(const StackDescriptor& x, const RaisingFunction& c,
                                        const Rat& r);

}  // namespace stacky
