#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "qpdcalc/groebner.hpp"

using namespace qpdcalc;

namespace {

PolyContext ctx_xy(FieldSpec f = gf(101)) {
    return PolyContext{f, {"x", "y"}, MonomialOrder::DegRevLex};
}

}  // namespace

TEST_CASE("parse basics") {
    auto ctx = ctx_xy();
    Polynomial p = parse_poly("x^2 + 2*x*y", ctx);
    CHECK(p.terms().size() == 2);
    CHECK(p.degree() == 2);

    CHECK(parse_poly("x*y - y*x", ctx).is_zero());

    PolyContext ctx4{gf(101), {"w", "x", "y", "z"}, MonomialOrder::DegRevLex};
    Polynomial q = parse_poly("w*z", ctx4);
    REQUIRE(q.terms().size() == 1);
    CHECK(q.terms()[0].mono.e == std::vector<std::uint32_t>{1, 0, 0, 1});
}

TEST_CASE("parse errors carry byte offsets") {
    auto ctx = ctx_xy();
    CHECK_THROWS_AS(parse_poly("x + q", ctx), InputError);
    CHECK_THROWS_AS(parse_poly("x + ", ctx), InputError);
    CHECK_THROWS_AS(parse_poly("x ^", ctx), InputError);
    try {
        parse_poly("x*y + zz", ctx);
        FAIL("expected throw");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("byte 6") != std::string::npos);
    }
}

TEST_CASE("greedy variable matching") {
    PolyContext ctx{gf(101), {"x", "xx"}, MonomialOrder::DegRevLex};
    Polynomial p = parse_poly("xx*x", ctx);
    REQUIRE(p.terms().size() == 1);
    CHECK(p.terms()[0].mono.e == std::vector<std::uint32_t>{1, 1});
}

TEST_CASE("parse-print round trip on random polynomials") {
    std::mt19937_64 rng(5);
    for (FieldSpec f : {gf(101), rationals()}) {
        auto ctx = ctx_xy(f);
        for (int t = 0; t < 40; ++t) {
            std::vector<Term> terms;
            int n = 1 + static_cast<int>(rng() % 5);
            for (int i = 0; i < n; ++i) {
                Monomial m(2);
                m.e[0] = rng() % 4;
                m.e[1] = rng() % 4;
                Scalar c = f.is_rational()
                               ? Scalar::of_fraction(f, static_cast<long long>(rng() % 19) - 9,
                                                     1 + rng() % 7)
                               : Scalar::of_int(f, static_cast<long long>(rng() % 101));
                terms.push_back(Term{m, c});
            }
            Polynomial p = Polynomial::from_terms(ctx, terms);
            CHECK(parse_poly(poly_str(p, ctx), ctx) == p);
        }
    }
}

TEST_CASE("degrevlex leading terms") {
    auto ctx = ctx_xy();
    Polynomial p = parse_poly("y^2 + x*y + x^2 + 1", ctx);
    CHECK(mono_str(p.leading(ctx).mono, ctx) == "x^2");
    Polynomial q = parse_poly("y^2 + x*y", ctx);
    CHECK(mono_str(q.leading(ctx).mono, ctx) == "x*y");
}

TEST_CASE("buchberger on monomial ideals returns them unchanged") {
    auto ctx = ctx_xy();
    auto gb = buchberger(ctx, {parse_poly("x*y", ctx)});
    REQUIRE(gb.gens.size() == 1);
    CHECK(gb.gens[0] == parse_poly("x*y", ctx));

    auto gb2 = buchberger(ctx, {parse_poly("x^2", ctx), parse_poly("x*y", ctx),
                                parse_poly("y^2", ctx)});
    CHECK(gb2.gens.size() == 3);
}

TEST_CASE("buchberger output verified by exhaustive S-pair reduction") {
    auto ctx = ctx_xy();
    auto gb = buchberger(ctx, {parse_poly("x^2 - y^3", ctx), parse_poly("x*y", ctx)});
    for (std::size_t i = 0; i < gb.gens.size(); ++i)
        for (std::size_t j = i + 1; j < gb.gens.size(); ++j) {
            const Term& li = gb.gens[i].leading(ctx);
            const Term& lj = gb.gens[j].leading(ctx);
            Monomial l = Monomial::lcm(li.mono, lj.mono);
            Polynomial s = poly_sub(
                ctx,
                poly_mul_term(ctx, gb.gens[i], l.divided_by(li.mono), li.coeff.inverse()),
                poly_mul_term(ctx, gb.gens[j], l.divided_by(lj.mono), lj.coeff.inverse()));
            CHECK(normal_form(ctx, s, gb).is_zero());
        }
    CHECK(normal_form(ctx, parse_poly("x^2 - y^3", ctx), gb).is_zero());
    CHECK(normal_form(ctx, parse_poly("x*y", ctx), gb).is_zero());
}

TEST_CASE("degree cap fails loudly") {
    auto ctx = ctx_xy();
    BuchbergerOptions opts;
    opts.degree_cap = 2;
    CHECK_THROWS_AS(buchberger(ctx, {parse_poly("x^2 - y^3", ctx), parse_poly("x*y", ctx)}, opts),
                    DegreeCapExceeded);
}

TEST_CASE("pair criteria flag gives the same basis") {
    auto ctx = ctx_xy();
    BuchbergerOptions with;
    with.pair_criteria = true;
    auto a = buchberger(ctx, {parse_poly("x^2 - y^3", ctx), parse_poly("x*y", ctx)});
    auto b = buchberger(ctx, {parse_poly("x^2 - y^3", ctx), parse_poly("x*y", ctx)}, with);
    REQUIRE(a.gens.size() == b.gens.size());
    for (std::size_t i = 0; i < a.gens.size(); ++i) CHECK(a.gens[i] == b.gens[i]);
}

TEST_CASE("normal form") {
    auto ctx = ctx_xy();
    auto gb1 = buchberger(ctx, {parse_poly("x*y", ctx)});
    CHECK(normal_form(ctx, parse_poly("x*y", ctx), gb1).is_zero());

    auto gb2 = buchberger(ctx, {parse_poly("x^2", ctx), parse_poly("x*y", ctx),
                                parse_poly("y^2", ctx)});
    CHECK(normal_form(ctx, parse_poly("x^2 + x", ctx), gb2) == parse_poly("x", ctx));
}

TEST_CASE("normal form is k-linear and detects membership") {
    auto ctx = ctx_xy();
    auto gb = buchberger(ctx, {parse_poly("x^2 - y^3", ctx), parse_poly("x*y", ctx)});
    std::mt19937_64 rng(17);
    for (int t = 0; t < 25; ++t) {
        std::vector<Term> ft, gt;
        for (int i = 0; i < 4; ++i) {
            Monomial m(2);
            m.e[0] = rng() % 3;
            m.e[1] = rng() % 3;
            ft.push_back(Term{m, Scalar::of_int(ctx.field, static_cast<long long>(rng() % 101))});
            Monomial m2(2);
            m2.e[0] = rng() % 3;
            m2.e[1] = rng() % 3;
            gt.push_back(Term{m2, Scalar::of_int(ctx.field, static_cast<long long>(rng() % 101))});
        }
        Polynomial f = Polynomial::from_terms(ctx, ft);
        Polynomial g = Polynomial::from_terms(ctx, gt);
        Scalar a = Scalar::of_int(ctx.field, 3), b = Scalar::of_int(ctx.field, 7);
        Polynomial lhs = normal_form(
            ctx, poly_add(ctx, poly_scale(ctx, f, a), poly_scale(ctx, g, b)), gb);
        Polynomial rhs = poly_add(ctx, poly_scale(ctx, normal_form(ctx, f, gb), a),
                                  poly_scale(ctx, normal_form(ctx, g, gb), b));
        CHECK(lhs == rhs);
        std::size_t which = rng() % gb.gens.size();
        Polynomial shifted = poly_add(ctx, f, poly_mul(ctx, g, gb.gens[which]));
        CHECK(normal_form(ctx, shifted, gb) == normal_form(ctx, f, gb));
    }
}

TEST_CASE("standard monomials") {
    auto ctx = ctx_xy();
    auto gb = buchberger(ctx, {parse_poly("x^2", ctx), parse_poly("x*y", ctx),
                               parse_poly("y^2", ctx)});
    auto all = standard_monomials_all(ctx, gb);
    REQUIRE(all.size() == 3);
    CHECK(mono_str(all[0], ctx) == "1");

    auto gbxy = buchberger(ctx, {parse_poly("x*y", ctx)});
    auto deg3 = standard_monomials_degree(ctx, gbxy, 3);
    REQUIRE(deg3.size() == 2);
    CHECK_THROWS_AS(standard_monomials_all(ctx, gbxy), NotZeroDimensional);

    // oracle: enumerate all degree-3 monomials and filter by divisibility
    std::vector<std::string> got{mono_str(deg3[0], ctx), mono_str(deg3[1], ctx)};
    std::vector<std::string> expect;
    for (unsigned a = 0; a <= 3; ++a)
        if (!(a >= 1 && 3 - a >= 1)) {
            Monomial m(2);
            m.e[0] = a;
            m.e[1] = 3 - a;
            expect.push_back(mono_str(m, ctx));
        }
    std::sort(got.begin(), got.end());
    std::sort(expect.begin(), expect.end());
    CHECK(got == expect);
}

TEST_CASE("standard monomial count matches per-degree sums") {
    auto ctx = ctx_xy();
    auto gb = buchberger(ctx, {parse_poly("x^2", ctx), parse_poly("x*y", ctx),
                               parse_poly("y^2", ctx)});
    std::size_t total = 0;
    for (unsigned d = 0; d < 5; ++d) total += standard_monomials_degree(ctx, gb, d).size();
    CHECK(total == standard_monomials_all(ctx, gb).size());
}
