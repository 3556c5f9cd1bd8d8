#include "qpdcalc/groebner.hpp"

#include <algorithm>

namespace qpdcalc {

namespace {

Polynomial make_monic(const PolyContext& ctx, const Polynomial& f) {
    if (f.is_zero()) return f;
    return poly_scale(ctx, f, f.leading(ctx).coeff.inverse());
}

Polynomial reduce_once(const PolyContext& ctx, const Polynomial& f,
                       const std::vector<Polynomial>& basis, bool* changed) {
    *changed = false;
    for (const auto& t : f.terms()) {
        for (const auto& g : basis) {
            if (g.is_zero()) continue;
            const Term& lg = g.leading(ctx);
            if (lg.mono.divides(t.mono)) {
                Monomial q = t.mono.divided_by(lg.mono);
                Scalar c = t.coeff * lg.coeff.inverse();
                *changed = true;
                return poly_sub(ctx, f, poly_mul_term(ctx, g, q, c));
            }
        }
    }
    return f;
}

Polynomial full_reduce(const PolyContext& ctx, Polynomial f, const std::vector<Polynomial>& basis,
                       int degree_cap) {
    bool changed = true;
    while (changed && !f.is_zero()) {
        if (degree_cap >= 0 && f.degree() > degree_cap) throw DegreeCapExceeded(degree_cap);
        f = reduce_once(ctx, f, basis, &changed);
    }
    return f;
}

Polynomial s_poly(const PolyContext& ctx, const Polynomial& f, const Polynomial& g) {
    const Term& lf = f.leading(ctx);
    const Term& lg = g.leading(ctx);
    Monomial l = Monomial::lcm(lf.mono, lg.mono);
    Polynomial a = poly_mul_term(ctx, f, l.divided_by(lf.mono), lf.coeff.inverse());
    Polynomial b = poly_mul_term(ctx, g, l.divided_by(lg.mono), lg.coeff.inverse());
    return poly_sub(ctx, a, b);
}

bool coprime_leads(const PolyContext& ctx, const Polynomial& f, const Polynomial& g) {
    const Monomial& a = f.leading(ctx).mono;
    const Monomial& b = g.leading(ctx).mono;
    for (std::size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] > 0 && b.e[i] > 0) return false;
    return true;
}

}  // namespace

GroebnerBasis buchberger(const PolyContext& ctx, const std::vector<Polynomial>& gens,
                         const BuchbergerOptions& opts) {
    std::vector<Polynomial> basis;
    for (const auto& g : gens)
        if (!g.is_zero()) basis.push_back(make_monic(ctx, g));

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) pairs.emplace_back(i, j);

    while (!pairs.empty()) {
        auto [i, j] = pairs.back();
        pairs.pop_back();
        if (opts.pair_criteria && coprime_leads(ctx, basis[i], basis[j])) continue;
        Polynomial s = s_poly(ctx, basis[i], basis[j]);
        Polynomial r = full_reduce(ctx, std::move(s), basis, opts.degree_cap);
        if (r.is_zero()) continue;
        if (opts.degree_cap >= 0 && r.degree() > opts.degree_cap)
            throw DegreeCapExceeded(opts.degree_cap);
        r = make_monic(ctx, r);
        std::size_t k = basis.size();
        for (std::size_t t = 0; t < k; ++t) pairs.emplace_back(t, k);
        basis.push_back(std::move(r));
    }

    // reduce to the unique reduced basis: drop redundant leads, then
    // tail-reduce each generator against the rest
    std::vector<Polynomial> kept;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Monomial& li = basis[i].leading(ctx).mono;
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j) continue;
            const Monomial& lj = basis[j].leading(ctx).mono;
            // among equal leads keep the earliest
            if (lj.divides(li) && (!(lj == li) || j < i)) redundant = true;
        }
        if (!redundant) kept.push_back(basis[i]);
    }
    std::vector<Polynomial> reduced;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        std::vector<Polynomial> others;
        for (std::size_t j = 0; j < kept.size(); ++j)
            if (j != i) others.push_back(kept[j]);
        Polynomial r = full_reduce(ctx, kept[i], others, opts.degree_cap);
        if (!r.is_zero()) reduced.push_back(make_monic(ctx, r));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
        return mono_less(a.leading(ctx).mono, b.leading(ctx).mono, ctx.order);
    });
    return GroebnerBasis{std::move(reduced), ctx.order};
}

Polynomial normal_form(const PolyContext& ctx, const Polynomial& f, const GroebnerBasis& gb) {
    if (gb.order != ctx.order) throw InputError("normal_form: order mismatch");
    return full_reduce(ctx, f, gb.gens, -1);
}

bool is_zero_dimensional(const PolyContext& ctx, const GroebnerBasis& gb) {
    for (std::size_t v = 0; v < ctx.nvars(); ++v) {
        bool has_pure_power = false;
        for (const auto& g : gb.gens) {
            const Monomial& l = g.leading(ctx).mono;
            bool pure = l.e[v] > 0;
            for (std::size_t w = 0; pure && w < ctx.nvars(); ++w)
                if (w != v && l.e[w] > 0) pure = false;
            if (pure) { has_pure_power = true; break; }
        }
        if (!has_pure_power) return false;
    }
    return true;
}

namespace {

bool is_standard(const Monomial& m, const PolyContext& ctx, const GroebnerBasis& gb) {
    for (const auto& g : gb.gens)
        if (g.leading(ctx).mono.divides(m)) return false;
    return true;
}

void enumerate_degree(const PolyContext& ctx, unsigned degree, std::size_t var, Monomial& cur,
                      std::vector<Monomial>& out) {
    if (var + 1 == ctx.nvars() || ctx.nvars() == 0) {
        if (ctx.nvars() > 0) cur.e[var] = degree;
        if (ctx.nvars() > 0 || degree == 0) out.push_back(cur);
        if (ctx.nvars() > 0) cur.e[var] = 0;
        return;
    }
    for (unsigned d = 0; d <= degree; ++d) {
        cur.e[var] = d;
        enumerate_degree(ctx, degree - d, var + 1, cur, out);
    }
    cur.e[var] = 0;
}

}  // namespace

std::vector<Monomial> standard_monomials_degree(const PolyContext& ctx, const GroebnerBasis& gb,
                                                unsigned degree) {
    std::vector<Monomial> all;
    Monomial cur(ctx.nvars());
    if (ctx.nvars() == 0) {
        if (degree == 0) all.push_back(cur);
    } else {
        enumerate_degree(ctx, degree, 0, cur, all);
    }
    std::vector<Monomial> out;
    for (auto& m : all)
        if (is_standard(m, ctx, gb)) out.push_back(std::move(m));
    std::sort(out.begin(), out.end(),
              [&](const Monomial& a, const Monomial& b) { return mono_less(a, b, ctx.order); });
    return out;
}

std::vector<Monomial> standard_monomials_all(const PolyContext& ctx, const GroebnerBasis& gb) {
    if (!is_zero_dimensional(ctx, gb) && ctx.nvars() > 0) throw NotZeroDimensional();
    std::vector<Monomial> out;
    for (unsigned d = 0;; ++d) {
        std::vector<Monomial> layer = standard_monomials_degree(ctx, gb, d);
        if (layer.empty()) break;
        for (auto& m : layer) out.push_back(std::move(m));
    }
    return out;
}

}  // namespace qpdcalc
