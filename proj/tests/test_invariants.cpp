#include "doctest.h"
#include "stacky/error.hpp"
#include "stacky/invariants.hpp"

using namespace stacky;

namespace {

RaisingFunction mu_table(const StackDescriptor&, std::vector<Rat> twisted) {
    RaisingFunction c;
    c.values[SectorLabel::mu(0)] = Rat(0);
    for (size_t j = 0; j < twisted.size(); ++j)
        c.values[SectorLabel::mu((long long)(j + 1))] = twisted[j];
    return c;
}

}  // namespace

TEST_CASE("ab invariants") {
    StackDescriptor mu3 = StackDescriptor::mu(3);
    auto [a, b] = ab_invariants(mu3, mu_table(mu3, {Rat(1), Rat(1)}));
    CHECK(a == Rat(1));
    CHECK(b == 2);

    PermGroup g = PermGroup::generate({Perm::parse("(1,2,3)", 6), Perm::parse("(4,5,6)", 6),
                                       Perm::parse("(1,4)(2,5)(3,6)", 6)});
    StackDescriptor x = StackDescriptor::bg(g, FieldDescriptor::rationals());
    auto [ak, bk] = ab_invariants(x, index_raising(x));
    CHECK(ak == Rat(1, 2));
    CHECK(bk == 1);

    StackDescriptor mu2 = StackDescriptor::mu(2);
    auto [a2, b2] = ab_invariants(mu2, mu_table(mu2, {Rat(1)}));
    CHECK(a2 == Rat(1));
    CHECK(b2 == 1);

    // vanishing c on a twisted sector: not big
    CHECK_THROWS_AS(ab_invariants(mu3, mu_table(mu3, {Rat(0), Rat(1)})), Error);
    // mu(1) = Spec Q has no twisted sector and is excluded
    StackDescriptor mu1 = StackDescriptor::mu(1);
    CHECK_THROWS_AS(ab_invariants(mu1, mu_table(mu1, {})), Error);
    // positive-dimensional stacks are out of scope for this formula
    CHECK_THROWS_AS(
        ab_invariants(StackDescriptor::wps({2, 3}),
                      quasi_toric_raising(StackDescriptor::wps({2, 3}))),
        Error);
}

TEST_CASE("fano predictions") {
    StackDescriptor p23 = StackDescriptor::wps({2, 3});
    InvariantReport rep = fano_prediction(p23, quasi_toric_raising(p23));
    CHECK(rep.predicted_alpha == Rat(1));
    CHECK(rep.predicted_log_exponent == 0);
    CHECK(rep.rho == 1);
    CHECK(rep.j_c == 0);

    StackDescriptor p112 = StackDescriptor::wps({1, 1, 2});
    InvariantReport rep2 = fano_prediction(p112, constant_raising(p112, Rat(0)));
    CHECK(rep2.predicted_alpha == Rat(1));
    CHECK(rep2.predicted_log_exponent == 1);

    StackDescriptor prod = StackDescriptor::product({p23, StackDescriptor::mu(2)});
    RaisingFunction c2;
    c2.values[SectorLabel::mu(0)] = Rat(0);
    c2.values[SectorLabel::mu(1)] = Rat(1);
    RaisingFunction c = boxplus(prod, {quasi_toric_raising(p23), c2});
    InvariantReport rep3 = fano_prediction(prod, c);
    CHECK(rep3.predicted_alpha == Rat(1));
    CHECK(rep3.predicted_log_exponent == 1);
    CHECK(rep3.prediction_string() == "C*B^(1)*(log B)^1");

    // inadequate pair refused
    StackDescriptor mu2 = StackDescriptor::mu(2);
    RaisingFunction half;
    half.values[SectorLabel::mu(0)] = Rat(0);
    half.values[SectorLabel::mu(1)] = Rat(1, 2);
    CHECK_THROWS_AS(fano_prediction(mu2, half), Error);
}

TEST_CASE("dim-0 prediction cross-check: b = rho + j_c") {
    StackDescriptor mu5 = StackDescriptor::mu(5);
    RaisingFunction c;
    c.values[SectorLabel::mu(0)] = Rat(0);
    c.values[SectorLabel::mu(1)] = Rat(1);
    c.values[SectorLabel::mu(2)] = Rat(1);
    c.values[SectorLabel::mu(3)] = Rat(3, 2);
    c.values[SectorLabel::mu(4)] = Rat(1);
    InvariantReport rep = fano_prediction(mu5, c);
    CHECK(rep.b == 3);
    CHECK(rep.predicted_log_exponent == 2);
}

TEST_CASE("orbifold canonical coefficients") {
    auto p112 = orbifold_canonical_coefficients(StackDescriptor::wps({1, 1, 2}));
    CHECK(p112.at(SectorLabel::wps(Rat(1, 2))) == Rat(0));

    PermGroup c2 = PermGroup::generate({Perm::parse("(1,2)", 2)});
    auto bg = orbifold_canonical_coefficients(
        StackDescriptor::bg(c2, FieldDescriptor::rationals()));
    CHECK(bg.at(SectorLabel::group("(1,2)")) == Rat(-1));

    auto p23 = orbifold_canonical_coefficients(StackDescriptor::wps({2, 3}));
    CHECK(p23.at(SectorLabel::wps(Rat(1, 3))) == Rat(-2, 3));
}

TEST_CASE("scaling") {
    StackDescriptor mu2 = StackDescriptor::mu(2);
    RaisingFunction c = mu_table(mu2, {Rat(1)});
    auto [a, b] = scaling_check(mu2, c, Rat(2));
    CHECK(a == Rat(1, 2));
    CHECK(b == 1);

    PermGroup g = PermGroup::generate({Perm::parse("(1,2,3)", 6), Perm::parse("(4,5,6)", 6),
                                       Perm::parse("(1,4)(2,5)(3,6)", 6)});
    StackDescriptor x = StackDescriptor::bg(g, FieldDescriptor::rationals());
    auto [ak, bk] = scaling_check(x, index_raising(x), Rat(1, 2));
    CHECK(ak == Rat(1));
    CHECK(bk == 1);

    auto [a1, b1] = scaling_check(mu2, c, Rat(1));
    CHECK(a1 == Rat(1));
    CHECK(b1 == 1);
    CHECK_THROWS_AS(scaling_check(mu2, c, Rat(0)), Error);
}
