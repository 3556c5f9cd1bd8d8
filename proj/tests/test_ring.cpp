#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qpdcalc/ring.hpp"

using namespace qpdcalc;

namespace {

RingPtr ring_xy_mod_xy() {
    PolyContext ctx{gf(101), {"x", "y"}, MonomialOrder::DegRevLex};
    return QuotientRing::make(gf(101), {"x", "y"}, {parse_poly("x*y", ctx)}, Regime::Graded);
}

RingPtr ring_m2zero() {
    PolyContext ctx{gf(101), {"x", "y"}, MonomialOrder::DegRevLex};
    return QuotientRing::make(gf(101), {"x", "y"},
                              {parse_poly("x^2", ctx), parse_poly("x*y", ctx),
                               parse_poly("y^2", ctx)},
                              Regime::Artinian);
}

RingPtr ring_x4() {
    PolyContext ctx{gf(101), {"x"}, MonomialOrder::DegRevLex};
    return QuotientRing::make(gf(101), {"x"}, {parse_poly("x^4", ctx)}, Regime::Artinian);
}

}  // namespace

TEST_CASE("graded ring k[x,y]/(xy) has dimension 2 in each positive degree") {
    auto r = ring_xy_mod_xy();
    CHECK(r->basis_degree(0).size() == 1);
    for (int d = 1; d <= 6; ++d) CHECK(r->basis_degree(d).size() == 2);
}

TEST_CASE("Artinian ring dimensions") {
    CHECK(ring_m2zero()->total_dim() == 3);
    CHECK(ring_x4()->total_dim() == 4);

    PolyContext c4{gf(101), {"x", "y", "u", "v"}, MonomialOrder::DegRevLex};
    std::vector<Polynomial> gens;
    for (const char* s : {"x^2", "x*y", "y^2", "x*u", "y*v", "x*v - y*u", "u^2", "u*v", "v^2"})
        gens.push_back(parse_poly(s, c4));
    auto r = QuotientRing::make(gf(101), {"x", "y", "u", "v"}, gens, Regime::Artinian);
    CHECK(r->total_dim() == 6);
}

TEST_CASE("constructor validation") {
    PolyContext ctx{gf(101), {"x", "y"}, MonomialOrder::DegRevLex};
    // linear term: presentation not minimal
    CHECK_THROWS_AS(QuotientRing::make(gf(101), {"x", "y"}, {parse_poly("x + y^2", ctx)},
                                       Regime::Graded),
                    GeneratorInM);
    // not zero-dimensional
    CHECK_THROWS_AS(QuotientRing::make(gf(101), {"x", "y"}, {parse_poly("x*y", ctx)},
                                       Regime::Artinian),
                    NotZeroDimensional);
    // non-homogeneous in graded regime
    CHECK_THROWS_AS(QuotientRing::make(gf(101), {"x", "y"}, {parse_poly("x^2 - y^3", ctx)},
                                       Regime::Graded),
                    NonHomogeneous);
}

TEST_CASE("k[x]/(x^4): action of x is the nilpotent Jordan block") {
    auto r = ring_x4();
    auto acts = variable_actions(*r, std::nullopt);
    REQUIRE(acts.size() == 1);
    const Matrix& a = acts[0];
    // basis 1, x, x^2, x^3; x * x^i = x^{i+1}
    Matrix expect(r->field(), 4, 4);
    for (std::size_t i = 0; i + 1 < 4; ++i) expect.set(i + 1, i, Scalar::one(r->field()));
    CHECK(a == expect);
    // x^4 = 0 on the basis
    CHECK((a * a * a * a).is_zero());
}

TEST_CASE("actions commute and kill the ideal generators") {
    auto r = ring_m2zero();
    auto acts = variable_actions(*r, std::nullopt);
    REQUIRE(acts.size() == 2);
    CHECK((acts[0] * acts[1] - acts[1] * acts[0]).is_zero());
    CHECK((acts[0] * acts[0]).is_zero());  // x^2 = 0
    CHECK((acts[0] * acts[1]).is_zero());  // xy = 0
    CHECK((acts[1] * acts[1]).is_zero());  // y^2 = 0

    auto rg = ring_xy_mod_xy();
    auto ag = variable_actions(*rg, 6);
    CHECK((ag[0] * ag[1] - ag[1] * ag[0]).is_zero());
    CHECK((ag[0] * ag[1]).is_zero());
    CHECK_THROWS_AS(variable_actions(*rg, std::nullopt), RegimeError);
}

TEST_CASE("socle") {
    auto r = ring_m2zero();
    auto s = socle(*r);
    REQUIRE(s.size() == 2);  // socle = m since m^2 = 0

    auto r4 = ring_x4();
    auto s4 = socle(*r4);
    REQUIRE(s4.size() == 1);
    CHECK(poly_str(s4[0], r4->ctx()) == "x^3");

    auto field_ring = QuotientRing::make(gf(101), {}, {}, Regime::Artinian);
    auto sf = socle(*field_ring);
    REQUIRE(sf.size() == 1);
    CHECK(poly_str(sf[0], field_ring->ctx()) == "1");
}

TEST_CASE("annihilator ideal") {
    auto r = ring_x4();
    const auto& ctx = r->ctx();

    // oracle: solve a * x^2 = 0 on the monomial basis directly
    Matrix mul_x2 = multiplication_operator(*r, parse_poly("x^2", ctx));
    Matrix ker = mul_x2.kernel_basis();
    auto ann = annihilator_ideal(*r, {parse_poly("x^2", ctx)});
    CHECK(ann.size() == ker.cols());
    REQUIRE(ann.size() == 2);  // span{x^2, x^3}
    for (const auto& a : ann)
        CHECK(r->nf(poly_mul(ctx, a, parse_poly("x^2", ctx))).is_zero());

    // (0 : 1) = 0
    CHECK(annihilator_ideal(*r, {parse_poly("1", ctx)}).empty());

    // (0 : m) agrees with the socle
    std::vector<Polynomial> vars{Polynomial::variable(ctx, 0)};
    auto ann_m = annihilator_ideal(*r, vars);
    auto soc = socle(*r);
    REQUIRE(ann_m.size() == soc.size());
    for (std::size_t i = 0; i < soc.size(); ++i)
        CHECK(poly_str(ann_m[i], ctx) == poly_str(soc[i], ctx));
}

TEST_CASE("socle equals annihilator of the variables in general") {
    auto r = ring_m2zero();
    std::vector<Polynomial> vars;
    for (std::size_t i = 0; i < r->nvars(); ++i) vars.push_back(Polynomial::variable(r->ctx(), i));
    auto a = annihilator_ideal(*r, vars);
    auto s = socle(*r);
    REQUIRE(a.size() == s.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(poly_str(a[i], r->ctx()) == poly_str(s[i], r->ctx()));
}

TEST_CASE("artinian dim equals sum of per-degree dims") {
    auto r = ring_m2zero();
    std::size_t total = 0;
    for (int d = 0; d <= 4; ++d) total += r->basis_degree(d).size();
    CHECK(total == r->total_dim());
}

TEST_CASE("unit inverse in an Artinian ring") {
    auto r = ring_x4();
    const auto& ctx = r->ctx();
    Polynomial u = parse_poly("1 + x", ctx);
    Polynomial inv = ring_unit_inverse(*r, u);
    CHECK(r->nf(poly_mul(ctx, u, inv)) == Polynomial::constant(ctx, Scalar::one(r->field())));
    CHECK_THROWS_AS(ring_unit_inverse(*r, parse_poly("x", ctx)), ComputeError);
}
