#include "qpdcalc/carrier.hpp"

#include <algorithm>

namespace qpdcalc {

PolyMatrix PolyMatrix::transposed() const {
    PolyMatrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

bool PolyMatrix::is_zero() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const Polynomial& p) { return p.is_zero(); });
}

PolyMatrix poly_matrix_mul(const QuotientRing& r, const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols != b.rows) throw InputError("poly matrix shape mismatch");
    PolyMatrix out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols; ++j) {
                if (b.at(k, j).is_zero()) continue;
                out.at(i, j) =
                    r.nf(poly_add(r.ctx(), out.at(i, j), poly_mul(r.ctx(), a.at(i, k), b.at(k, j))));
            }
        }
    return out;
}

VectorizedModule VectorizedModule::zero(RingPtr ring, bool graded, int trust_hi) {
    VectorizedModule m;
    m.ring = std::move(ring);
    m.graded = graded;
    m.trust_hi = trust_hi;
    m.actions.assign(m.ring->nvars(), Matrix(m.ring->field(), 0, 0));
    m.dim_ = 0;
    return m;
}

VectorizedModule VectorizedModule::make(RingPtr ring, std::size_t dim,
                                        std::vector<Matrix> actions, bool graded,
                                        std::vector<int> degrees, int trust_hi) {
    VectorizedModule m;
    m.ring = std::move(ring);
    m.dim_ = dim;
    m.actions = std::move(actions);
    m.graded = graded;
    m.degrees = std::move(degrees);
    m.trust_hi = trust_hi;
    if (m.actions.size() != m.ring->nvars()) throw InputError("one action per variable required");
    for (const auto& a : m.actions)
        if (a.rows() != dim || a.cols() != dim) throw InputError("action shape mismatch");
    if (m.graded && m.degrees.size() != dim) throw InputError("degree labels missing");
    return m;
}

std::vector<std::size_t> VectorizedModule::hilbert() const {
    if (!graded) throw RegimeError("hilbert() needs a graded carrier");
    std::vector<std::size_t> h(static_cast<std::size_t>(std::max(trust_hi, 0)) + 1, 0);
    for (int d : degrees)
        if (d >= 0 && d <= trust_hi) ++h[static_cast<std::size_t>(d)];
    return h;
}

std::vector<std::size_t> VectorizedModule::radical_filtration() const {
    std::vector<std::size_t> out{dim()};
    if (dim() == 0) return out;
    Matrix span = Matrix::identity(field(), dim());
    while (true) {
        Matrix next(field(), dim(), 0);
        for (const auto& a : actions) next = Matrix::hstack(next, a * span);
        RrefResult r = next.transposed().rref();
        std::vector<std::size_t> keep(r.rank);
        for (std::size_t i = 0; i < r.rank; ++i) keep[i] = i;
        span = r.reduced.select_rows(keep).transposed();
        if (span.cols() == out.back()) break;
        out.push_back(span.cols());
        if (span.cols() == 0) break;
    }
    return out;
}

void VectorizedModule::validate() const {
    for (std::size_t i = 0; i < actions.size(); ++i) {
        if (actions[i].rows() != dim() || actions[i].cols() != dim())
            throw ComputeError("action matrix shape mismatch");
        for (std::size_t j = i + 1; j < actions.size(); ++j)
            if (!(actions[i] * actions[j] - actions[j] * actions[i]).is_zero())
                throw ComputeError("variable actions do not commute");
    }
    for (const auto& g : ring->ideal_generators())
        if (!eval_on_module(*this, g).is_zero())
            throw ComputeError("ideal generator does not annihilate the carrier");
    if (graded) {
        for (std::size_t v = 0; v < actions.size(); ++v)
            for (std::size_t i = 0; i < dim(); ++i)
                for (std::size_t j = 0; j < dim(); ++j)
                    if (!actions[v].get(i, j).is_zero() && degrees[i] != degrees[j] + 1)
                        throw ComputeError("action is not homogeneous of degree 1");
    }
}

Matrix eval_on_module(const VectorizedModule& m, const Polynomial& p) {
    std::size_t n = m.dim();
    Matrix out(m.field(), n, n);
    for (const auto& t : p.terms()) {
        Matrix term = Matrix::identity(m.field(), n).scaled(t.coeff);
        for (std::size_t v = 0; v < t.mono.e.size(); ++v)
            for (std::uint32_t e = 0; e < t.mono.e[v]; ++e) term = m.actions[v] * term;
        out = out + term;
    }
    return out;
}

VectorizedModule direct_sum(const VectorizedModule& a, const VectorizedModule& b) {
    if (a.ring != b.ring) throw InputError("direct sum over different rings");
    std::size_t n = a.dim(), m = b.dim();
    std::vector<Matrix> acts;
    for (std::size_t v = 0; v < a.actions.size(); ++v) {
        Matrix blk(a.field(), n + m, n + m);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) blk.set(i, j, a.actions[v].get(i, j));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) blk.set(n + i, n + j, b.actions[v].get(i, j));
        acts.push_back(std::move(blk));
    }
    std::vector<int> degs;
    if (a.graded) {
        degs = a.degrees;
        degs.insert(degs.end(), b.degrees.begin(), b.degrees.end());
    }
    return VectorizedModule::make(a.ring, n + m, std::move(acts), a.graded, std::move(degs),
                                  std::min(a.trust_hi, b.trust_hi));
}

VectorizedModule direct_power(const VectorizedModule& m, std::size_t copies) {
    VectorizedModule out = VectorizedModule::zero(m.ring, m.graded, m.trust_hi);
    for (std::size_t i = 0; i < copies; ++i) out = direct_sum(out, m);
    return out;
}

VectorizedModule twist_degrees(const VectorizedModule& m, int delta) {
    VectorizedModule out = m;
    for (auto& d : out.degrees) d += delta;
    out.trust_hi += delta;
    return out;
}

std::optional<int> vector_degree(const VectorizedModule& m, const std::vector<Scalar>& v) {
    std::optional<int> deg;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        if (deg && *deg != m.degrees[i]) return std::nullopt;
        deg = m.degrees[i];
    }
    return deg;
}

VectorizedModule truncate_module(const VectorizedModule& m, int hi) {
    if (!m.graded) return m;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < m.dim(); ++i)
        if (m.degrees[i] <= hi) keep.push_back(i);
    std::vector<Matrix> acts;
    for (const auto& a : m.actions) acts.push_back(a.select_rows(keep).select_columns(keep));
    std::vector<int> degs;
    for (auto i : keep) degs.push_back(m.degrees[i]);
    return VectorizedModule::make(m.ring, keep.size(), std::move(acts), true, std::move(degs),
                                  std::min(hi, m.trust_hi));
}

Submodule submodule_from_columns(const VectorizedModule& ambient, const Matrix& columns) {
    std::size_t k = columns.cols();
    std::vector<Matrix> acts;
    for (const auto& a : ambient.actions) {
        Matrix img = a * columns;
        auto c = columns.solve(img);
        if (!c) throw ComputeError("columns are not closed under the actions");
        acts.push_back(std::move(*c));
    }
    std::vector<int> degs;
    if (ambient.graded) {
        for (std::size_t j = 0; j < k; ++j) {
            auto d = vector_degree(ambient, columns.column(j));
            if (!d) throw ComputeError("submodule basis vector is not degree-pure");
            degs.push_back(*d);
        }
    }
    Submodule out{VectorizedModule::make(ambient.ring, k, std::move(acts), ambient.graded,
                                         std::move(degs), ambient.trust_hi),
                  columns};
    return out;
}

std::vector<Scalar> QuotientModule::project(const std::vector<Scalar>& ambient_vec) const {
    auto red = reducer.reduce(ambient_vec);
    std::vector<Scalar> out;
    out.reserve(coords.size());
    for (auto c : coords) out.push_back(red[c]);
    return out;
}

QuotientModule quotient_by_columns(const VectorizedModule& ambient, const Matrix& span_columns) {
    QuotientModule q{VectorizedModule{}, Matrix(), SubspaceReducer(span_columns), {}};
    std::vector<bool> is_pivot(ambient.dim(), false);
    for (auto p : q.reducer.pivot_columns()) is_pivot[p] = true;
    for (std::size_t c = 0; c < ambient.dim(); ++c)
        if (!is_pivot[c]) q.coords.push_back(c);

    std::size_t n = q.coords.size();
    Matrix section(ambient.field(), ambient.dim(), n);
    for (std::size_t j = 0; j < n; ++j)
        section.set(q.coords[j], j, Scalar::one(ambient.field()));
    q.section = std::move(section);

    std::vector<Matrix> acts;
    for (const auto& a : ambient.actions) {
        Matrix act(ambient.field(), n, n);
        for (std::size_t j = 0; j < n; ++j) {
            auto img = q.project(mat_apply(a, q.section.column(j)));
            act.set_column(j, img);
        }
        acts.push_back(std::move(act));
    }
    std::vector<int> degs;
    if (ambient.graded)
        for (auto c : q.coords) degs.push_back(ambient.degrees[c]);
    q.mod = VectorizedModule::make(ambient.ring, n, std::move(acts), ambient.graded,
                                   std::move(degs), ambient.trust_hi);
    return q;
}

std::vector<Scalar> SubquotientModule::coords_of(const std::vector<Scalar>& ambient_vec) const {
    Matrix v(kernel_cols_.field(), kernel_cols_.rows(), 1);
    v.set_column(0, ambient_vec);
    auto sol = kernel_cols_.solve(v);
    if (!sol) throw ComputeError("vector is not in the kernel part of the subquotient");
    return mat_apply(sub_solve_, sol->column(0));
}

SubquotientModule subquotient(const VectorizedModule& ambient, const Matrix& kernel_cols,
                              const Matrix& image_cols) {
    Submodule sub = submodule_from_columns(ambient, kernel_cols);
    Matrix img_in_sub(ambient.field(), kernel_cols.cols(), image_cols.cols());
    if (image_cols.cols() > 0) {
        auto sol = kernel_cols.solve(image_cols);
        if (!sol) throw ComputeError("image is not contained in the kernel");
        img_in_sub = std::move(*sol);
    }
    QuotientModule q = quotient_by_columns(sub.mod, img_in_sub);

    SubquotientModule out;
    out.mod = q.mod;
    out.representatives = kernel_cols * q.section;
    out.kernel_cols_ = kernel_cols;
    out.image_cols_ = image_cols;
    Matrix proj(ambient.field(), q.coords.size(), kernel_cols.cols());
    for (std::size_t j = 0; j < kernel_cols.cols(); ++j) {
        std::vector<Scalar> e(kernel_cols.cols(), Scalar::zero(ambient.field()));
        e[j] = Scalar::one(ambient.field());
        proj.set_column(j, q.project(e));
    }
    out.sub_solve_ = std::move(proj);
    return out;
}

FreeLayout::FreeLayout(RingPtr ring, std::vector<int> twists, std::optional<int> bound)
    : ring_(std::move(ring)), twists_(std::move(twists)), bound_(bound) {
    if (ring_->is_artinian()) {
        for (std::size_t j = 0; j < twists_.size(); ++j)
            for (const auto& m : ring_->basis()) basis_.push_back({j, m});
    } else {
        if (!bound_) throw RegimeError("free layout needs a bound in the Graded regime");
        for (std::size_t j = 0; j < twists_.size(); ++j) {
            int top = *bound_ - twists_[j];
            for (int d = 0; d <= top; ++d)
                for (const auto& m : ring_->basis_degree(d)) basis_.push_back({j, m});
        }
    }
    for (std::size_t k = 0; k < basis_.size(); ++k)
        index_[{basis_[k].slot, basis_[k].mono}] = k;
}

int FreeLayout::degree_of(std::size_t k) const {
    return twists_[basis_[k].slot] + static_cast<int>(basis_[k].mono.degree());
}

VectorizedModule FreeLayout::module() const {
    std::vector<Matrix> acts;
    for (std::size_t v = 0; v < ring_->nvars(); ++v) {
        Matrix a(ring_->field(), dim(), dim());
        Polynomial xv = Polynomial::variable(ring_->ctx(), v);
        for (std::size_t k = 0; k < dim(); ++k) {
            Polynomial prod = ring_->nf(poly_mul(
                ring_->ctx(), xv,
                Polynomial::term(ring_->ctx(), basis_[k].mono, Scalar::one(ring_->field()))));
            for (const auto& t : prod.terms()) {
                auto it = index_.find({basis_[k].slot, t.mono});
                if (it == index_.end()) continue;
                a.set(it->second, k, t.coeff);
            }
        }
        acts.push_back(std::move(a));
    }
    std::vector<int> degs;
    bool graded = !ring_->is_artinian();
    if (graded)
        for (std::size_t k = 0; k < dim(); ++k) degs.push_back(degree_of(k));
    return VectorizedModule::make(ring_, dim(), std::move(acts), graded, std::move(degs),
                                  bound_ ? *bound_ : 0);
}

std::vector<Scalar> FreeLayout::embed(const std::vector<Polynomial>& poly_vec) const {
    if (poly_vec.size() != rank()) throw InputError("embed: rank mismatch");
    std::vector<Scalar> v(dim(), Scalar::zero(ring_->field()));
    for (std::size_t j = 0; j < rank(); ++j) {
        Polynomial p = ring_->nf(poly_vec[j]);
        for (const auto& t : p.terms()) {
            auto it = index_.find({j, t.mono});
            if (it == index_.end()) continue;  // truncated
            v[it->second] = v[it->second] + t.coeff;
        }
    }
    return v;
}

std::vector<Polynomial> FreeLayout::extract(const std::vector<Scalar>& v) const {
    if (v.size() != dim()) throw InputError("extract: dimension mismatch");
    std::vector<std::vector<Term>> terms(rank());
    for (std::size_t k = 0; k < dim(); ++k)
        if (!v[k].is_zero()) terms[basis_[k].slot].push_back(Term{basis_[k].mono, v[k]});
    std::vector<Polynomial> out;
    out.reserve(rank());
    for (auto& t : terms) out.push_back(Polynomial::from_terms(ring_->ctx(), std::move(t)));
    return out;
}

Matrix FreeLayout::vectorized_map(const PolyMatrix& d, const FreeLayout& target) const {
    if (d.cols != rank() || d.rows != target.rank())
        throw InputError("vectorized_map: shape mismatch");
    Matrix out(ring_->field(), target.dim(), dim());
    for (std::size_t k = 0; k < dim(); ++k) {
        std::vector<Polynomial> img(target.rank(), Polynomial::zero());
        Polynomial mono =
            Polynomial::term(ring_->ctx(), basis_[k].mono, Scalar::one(ring_->field()));
        for (std::size_t r = 0; r < target.rank(); ++r) {
            const Polynomial& entry = d.at(r, basis_[k].slot);
            if (entry.is_zero()) continue;
            img[r] = ring_->nf(poly_mul(ring_->ctx(), entry, mono));
        }
        out.set_column(k, target.embed(img));
    }
    return out;
}

FreeTensor free_tensor(RingPtr ring, const std::vector<int>& twists, const VectorizedModule& n) {
    std::size_t rank = twists.size();
    std::size_t nd = n.dim();
    std::vector<Matrix> acts;
    for (std::size_t v = 0; v < ring->nvars(); ++v) {
        Matrix a(ring->field(), rank * nd, rank * nd);
        for (std::size_t s = 0; s < rank; ++s)
            for (std::size_t i = 0; i < nd; ++i)
                for (std::size_t j = 0; j < nd; ++j) {
                    Scalar c = n.actions[v].get(i, j);
                    if (!c.is_zero()) a.set(s * nd + i, s * nd + j, c);
                }
        acts.push_back(std::move(a));
    }
    std::vector<int> degs;
    if (n.graded) {
        for (std::size_t s = 0; s < rank; ++s)
            for (std::size_t i = 0; i < nd; ++i) degs.push_back(twists[s] + n.degrees[i]);
    }
    int trust = n.trust_hi;
    if (n.graded && !twists.empty())
        trust = n.trust_hi + *std::min_element(twists.begin(), twists.end());
    VectorizedModule m = VectorizedModule::make(ring, rank * nd, std::move(acts), n.graded,
                                                std::move(degs), trust);
    FreeTensor out{std::move(m), twists};
    return out;
}

Matrix block_map_on_tensor(const PolyMatrix& d, const VectorizedModule& n) {
    std::size_t nd = n.dim();
    Matrix out(n.field(), d.rows * nd, d.cols * nd);
    for (std::size_t r = 0; r < d.rows; ++r)
        for (std::size_t c = 0; c < d.cols; ++c) {
            if (d.at(r, c).is_zero()) continue;
            Matrix op = eval_on_module(n, d.at(r, c));
            for (std::size_t i = 0; i < nd; ++i)
                for (std::size_t j = 0; j < nd; ++j) {
                    Scalar v = op.get(i, j);
                    if (!v.is_zero()) out.set(r * nd + i, c * nd + j, v);
                }
        }
    return out;
}

FreeTensor free_hom(RingPtr ring, const std::vector<int>& twists, const VectorizedModule& n) {
    std::vector<int> negated;
    negated.reserve(twists.size());
    for (int t : twists) negated.push_back(-t);
    FreeTensor out = free_tensor(std::move(ring), negated, n);
    out.twists = twists;
    return out;
}

}  // namespace qpdcalc
