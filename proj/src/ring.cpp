#include "qpdcalc/ring.hpp"

#include <algorithm>

namespace qpdcalc {

std::shared_ptr<const QuotientRing> QuotientRing::make(FieldSpec field,
                                                       std::vector<std::string> variables,
                                                       const std::vector<Polynomial>& ideal_gens,
                                                       Regime regime,
                                                       const BuchbergerOptions& opts) {
    field.validate();
    for (std::size_t i = 0; i < variables.size(); ++i)
        for (std::size_t j = i + 1; j < variables.size(); ++j)
            if (variables[i] == variables[j]) throw InputError("duplicate variable name");

    auto ring = std::shared_ptr<QuotientRing>(new QuotientRing());
    ring->ctx_ = PolyContext{field, std::move(variables), MonomialOrder::DegRevLex};
    ring->regime_ = regime;

    for (const auto& g : ideal_gens) {
        if (g.is_zero()) continue;
        if (g.min_degree() < 2) throw GeneratorInM();
        if (regime == Regime::Graded && !g.is_homogeneous()) throw NonHomogeneous();
        ring->ideal_gens_.push_back(g);
    }
    ring->gb_ = buchberger(ring->ctx_, ring->ideal_gens_, opts);

    if (regime == Regime::Artinian) {
        if (!is_zero_dimensional(ring->ctx_, ring->gb_) && ring->ctx_.nvars() > 0)
            throw NotZeroDimensional();
        ring->basis_ = standard_monomials_all(ring->ctx_, ring->gb_);
        for (std::size_t i = 0; i < ring->basis_.size(); ++i)
            ring->index_[ring->basis_[i]] = i;
    }
    return ring;
}

std::size_t QuotientRing::total_dim() const {
    if (!is_artinian()) throw RegimeError("total_dim needs the Artinian regime");
    return basis_.size();
}

const std::vector<Monomial>& QuotientRing::basis() const {
    if (!is_artinian()) throw RegimeError("full basis needs the Artinian regime");
    return basis_;
}

std::vector<Monomial> QuotientRing::basis_degree(int d) const {
    if (d < 0) return {};
    if (is_artinian()) {
        std::vector<Monomial> out;
        for (const auto& m : basis_)
            if (static_cast<int>(m.degree()) == d) out.push_back(m);
        return out;
    }
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = graded_cache_.find(d);
    if (it != graded_cache_.end()) return it->second;
    auto layer = standard_monomials_degree(ctx_, gb_, static_cast<unsigned>(d));
    graded_cache_[d] = layer;
    return layer;
}

std::vector<Monomial> QuotientRing::basis_up_to(int hi) const {
    if (is_artinian()) return basis_;
    std::vector<Monomial> out;
    for (int d = 0; d <= hi; ++d) {
        auto layer = basis_degree(d);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

Polynomial QuotientRing::nf(const Polynomial& f) const { return normal_form(ctx_, f, gb_); }

std::size_t QuotientRing::basis_index(const Monomial& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw ComputeError("monomial is not a standard basis element");
    return it->second;
}

int QuotientRing::default_bound() const {
    int maxdeg = 1;
    for (const auto& g : ideal_gens_) maxdeg = std::max(maxdeg, g.degree());
    return 2 * maxdeg + 6;
}

namespace {

// Shared helper: matrices of multiplication by each of the given ring
// elements on the listed monomial basis, products reduced by the GB and
// truncated to the basis span.
std::vector<Matrix> action_matrices(const QuotientRing& r, const std::vector<Monomial>& basis,
                                    const std::vector<Polynomial>& elems) {
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    std::vector<Matrix> out;
    out.reserve(elems.size());
    for (const auto& el : elems) {
        Matrix m(r.field(), basis.size(), basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) {
            Polynomial prod = r.nf(poly_mul(r.ctx(), el, Polynomial::term(r.ctx(), basis[j],
                                                                          Scalar::one(r.field()))));
            for (const auto& t : prod.terms()) {
                auto it = index.find(t.mono);
                if (it == index.end()) continue;  // truncated away (graded bound)
                m.set(it->second, j, t.coeff);
            }
        }
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace

std::vector<Matrix> variable_actions(const QuotientRing& r, std::optional<int> degree_bound) {
    std::vector<Monomial> basis;
    if (r.is_artinian()) {
        basis = r.basis();
    } else {
        if (!degree_bound) throw RegimeError("variable_actions needs a bound in the Graded regime");
        basis = r.basis_up_to(*degree_bound);
    }
    std::vector<Polynomial> vars;
    for (std::size_t i = 0; i < r.nvars(); ++i) vars.push_back(Polynomial::variable(r.ctx(), i));
    return action_matrices(r, basis, vars);
}

Matrix multiplication_operator(const QuotientRing& r, const Polynomial& elem) {
    if (!r.is_artinian()) throw RegimeError("multiplication_operator needs the Artinian regime");
    return action_matrices(r, r.basis(), {r.nf(elem)})[0];
}

namespace {

std::vector<Polynomial> kernel_elements(const QuotientRing& r, const Matrix& stacked) {
    Matrix k = stacked.kernel_basis();
    std::vector<Polynomial> out;
    for (std::size_t j = 0; j < k.cols(); ++j) {
        std::vector<Term> terms;
        for (std::size_t i = 0; i < r.total_dim(); ++i) {
            Scalar c = k.get(i, j);
            if (!c.is_zero()) terms.push_back(Term{r.basis()[i], c});
        }
        out.push_back(Polynomial::from_terms(r.ctx(), std::move(terms)));
    }
    return out;
}

}  // namespace

std::vector<Polynomial> socle(const QuotientRing& r) {
    if (!r.is_artinian()) throw RegimeError("socle needs the Artinian regime");
    std::size_t n = r.total_dim();
    if (r.nvars() == 0) {
        // a field: socle is all of R
        return {Polynomial::constant(r.ctx(), Scalar::one(r.field()))};
    }
    auto acts = variable_actions(r, std::nullopt);
    Matrix stacked(r.field(), 0, n);
    for (const auto& a : acts) stacked = Matrix::vstack(stacked, a);
    return kernel_elements(r, stacked);
}

std::vector<Polynomial> annihilator_ideal(const QuotientRing& r,
                                          const std::vector<Polynomial>& elements) {
    if (!r.is_artinian()) throw RegimeError("annihilator_ideal needs the Artinian regime");
    std::size_t n = r.total_dim();
    Matrix stacked(r.field(), 0, n);
    for (const auto& e : elements) stacked = Matrix::vstack(stacked, multiplication_operator(r, e));
    auto ann = kernel_elements(r, stacked);
    // the result is an ideal: verify closure under the variable actions
    Matrix span(r.field(), n, ann.size());
    for (std::size_t j = 0; j < ann.size(); ++j) span.set_column(j, ring_coords(r, ann[j]));
    SubspaceReducer red(span);
    for (const auto& a : ann)
        for (std::size_t v = 0; v < r.nvars(); ++v) {
            Polynomial xa = r.nf(poly_mul(r.ctx(), a, Polynomial::variable(r.ctx(), v)));
            if (!red.contains(ring_coords(r, xa)))
                throw ComputeError("annihilator closure check failed");
        }
    return ann;
}

std::vector<Scalar> ring_coords(const QuotientRing& r, const Polynomial& f) {
    Polynomial g = r.nf(f);
    std::vector<Scalar> v(r.total_dim(), Scalar::zero(r.field()));
    for (const auto& t : g.terms()) v[r.basis_index(t.mono)] = t.coeff;
    return v;
}

Polynomial ring_unit_inverse(const QuotientRing& r, const Polynomial& u) {
    Matrix mu = multiplication_operator(r, u);
    Matrix e1(r.field(), r.total_dim(), 1);
    std::vector<Scalar> one = ring_coords(r, Polynomial::constant(r.ctx(), Scalar::one(r.field())));
    e1.set_column(0, one);
    auto sol = mu.solve(e1);
    if (!sol) throw ComputeError("element is not a unit");
    std::vector<Term> terms;
    for (std::size_t i = 0; i < r.total_dim(); ++i) {
        Scalar c = sol->get(i, 0);
        if (!c.is_zero()) terms.push_back(Term{r.basis()[i], c});
    }
    return Polynomial::from_terms(r.ctx(), std::move(terms));
}

}  // namespace qpdcalc
