#include "qpdcalc/complex.hpp"

#include <algorithm>

namespace qpdcalc {

namespace {

bool entry_has_unit(const QuotientRing& r, const Polynomial& p) {
    return !p.is_zero() && !r.nf(p).constant_coefficient(r.field()).is_zero();
}

}  // namespace

FreeComplex FreeComplex::make(RingPtr ring, int lo, std::vector<std::size_t> ranks,
                              std::optional<std::vector<std::vector<int>>> twists,
                              std::vector<PolyMatrix> diffs) {
    FreeComplex c;
    c.ring_ = std::move(ring);
    c.lo_ = lo;
    c.ranks_ = std::move(ranks);
    c.twists_ = std::move(twists);
    c.diffs_ = std::move(diffs);

    bool graded = !c.ring_->is_artinian();
    if (graded && !c.twists_) throw InputError("graded complexes need twists");
    if (c.twists_) {
        if (c.twists_->size() != c.ranks_.size()) throw InputError("twist list shape mismatch");
        for (std::size_t i = 0; i < c.ranks_.size(); ++i)
            if ((*c.twists_)[i].size() != c.ranks_[i])
                throw InputError("twist count differs from rank");
    }
    if (!c.ranks_.empty() && c.diffs_.size() + 1 != c.ranks_.size())
        throw InputError("differential count must be rank count - 1");

    for (std::size_t i = 0; i < c.diffs_.size(); ++i) {
        PolyMatrix& d = c.diffs_[i];
        if (d.rows != c.ranks_[i] || d.cols != c.ranks_[i + 1])
            throw InputError("differential shape mismatch at degree " +
                             std::to_string(c.lo_ + static_cast<int>(i) + 1));
        for (auto& e : d.entries) e = c.ring_->nf(e);
        if (c.twists_) {
            for (std::size_t r = 0; r < d.rows; ++r)
                for (std::size_t j = 0; j < d.cols; ++j) {
                    const Polynomial& e = d.at(r, j);
                    if (e.is_zero()) continue;
                    int want = (*c.twists_)[i + 1][j] - (*c.twists_)[i][r];
                    auto hd = e.homogeneous_degree();
                    if (!hd || *hd != want)
                        throw InputError("differential entry is not homogeneous of the degree "
                                         "required by the twists");
                }
        }
    }
    // d o d = 0, checked symbolically through normal forms
    for (std::size_t i = 0; i + 1 < c.diffs_.size(); ++i) {
        PolyMatrix prod = poly_matrix_mul(*c.ring_, c.diffs_[i], c.diffs_[i + 1]);
        if (!prod.is_zero()) throw DSquareNonzero(c.lo_ + static_cast<int>(i));
    }
    return c;
}

std::vector<int> FreeComplex::twists_at(int i) const {
    if (!in_range(i)) return {};
    if (twists_) return (*twists_)[i - lo_];
    return std::vector<int>(rank_at(i), 0);
}

PolyMatrix FreeComplex::diff(int i) const {
    if (i > lo_ && i <= hi()) return diffs_[i - lo_ - 1];
    return PolyMatrix(rank_at(i - 1), rank_at(i));
}

std::optional<int> FreeComplex::sup() const {
    for (int i = hi(); i >= lo_; --i)
        if (rank_at(i) > 0) return i;
    return std::nullopt;
}

std::optional<int> FreeComplex::inf() const {
    for (int i = lo_; i <= hi(); ++i)
        if (rank_at(i) > 0) return i;
    return std::nullopt;
}

bool FreeComplex::is_minimal() const {
    for (const auto& d : diffs_)
        for (const auto& e : d.entries)
            if (entry_has_unit(*ring_, e)) return false;
    return true;
}

const HomologyEntry& HomologyReport::at(int index) const {
    for (const auto& e : entries)
        if (e.index == index) return e;
    throw InputError("homology index out of range");
}

std::vector<std::size_t> HomologyReport::dims() const {
    std::vector<std::size_t> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.dim);
    return out;
}

VectorizedModule ring_as_module(const RingPtr& ring, std::optional<int> degree_bound) {
    FreeLayout layout(ring, {0}, ring->is_artinian() ? std::nullopt : degree_bound);
    return layout.module();
}

HomologyReport homology(const FreeComplex& c, const VectorizedModule* coefficients,
                        std::optional<int> degree_bound) {
    const RingPtr& ring = c.ring();
    VectorizedModule base;
    if (coefficients) {
        base = *coefficients;
    } else {
        if (!ring->is_artinian() && !degree_bound)
            throw RegimeError("homology needs a degree bound in the Graded regime");
        base = ring_as_module(ring, degree_bound);
    }

    HomologyReport report;
    std::vector<FreeTensor> carriers;
    std::vector<Matrix> boundary;  // boundary[i]: carrier[i+1] -> carrier[i]
    for (int i = c.lo(); i <= c.hi(); ++i)
        carriers.push_back(free_tensor(ring, c.twists_at(i), base));
    for (int i = c.lo() + 1; i <= c.hi(); ++i)
        boundary.push_back(block_map_on_tensor(c.diff(i), base));

    for (int i = c.lo(); i <= c.hi(); ++i) {
        std::size_t idx = static_cast<std::size_t>(i - c.lo());
        const VectorizedModule& v = carriers[idx].mod;
        Matrix ker = (i > c.lo()) ? boundary[idx - 1].kernel_basis()
                                  : Matrix::identity(v.field(), v.dim());
        Matrix img = (i < c.hi()) ? boundary[idx] : Matrix(v.field(), v.dim(), 0);
        SubquotientModule sq = subquotient(v, ker, img);

        HomologyEntry entry;
        entry.index = i;
        if (v.graded) {
            int trust = v.trust_hi;
            if (i > c.lo()) trust = std::min(trust, carriers[idx - 1].mod.trust_hi);
            entry.module = truncate_module(sq.mod, trust);
            // filter representatives to the surviving degrees
            std::vector<std::size_t> keep;
            for (std::size_t kcol = 0; kcol < sq.mod.dim(); ++kcol)
                if (sq.mod.degrees[kcol] <= trust) keep.push_back(kcol);
            entry.representatives = sq.representatives.select_columns(keep);
        } else {
            entry.module = sq.mod;
            entry.representatives = sq.representatives;
        }
        entry.dim = entry.module.dim();
        report.entries.push_back(std::move(entry));
    }

    for (const auto& e : report.entries)
        if (e.dim > 0) {
            if (!report.hinf) report.hinf = e.index;
            report.hsup = e.index;
        }
    return report;
}

FreeComplex minimalize(const FreeComplex& input) {
    const RingPtr& ring = input.ring();
    int lo = input.lo();
    std::vector<std::size_t> ranks(input.ranks());
    std::vector<std::vector<int>> twists;
    for (int i = input.lo(); i <= input.hi(); ++i) twists.push_back(input.twists_at(i));
    std::vector<PolyMatrix> diffs;
    for (int i = input.lo() + 1; i <= input.hi(); ++i) diffs.push_back(input.diff(i));

    auto drop = [](std::vector<int>& v, std::size_t at) { v.erase(v.begin() + static_cast<long>(at)); };

    bool found = true;
    while (found) {
        found = false;
        for (std::size_t di = 0; di < diffs.size() && !found; ++di) {
            PolyMatrix& d = diffs[di];
            for (std::size_t cpos = 0; cpos < d.cols && !found; ++cpos)
                for (std::size_t rpos = 0; rpos < d.rows && !found; ++rpos) {
                    if (!entry_has_unit(*ring, d.at(rpos, cpos))) continue;
                    found = true;
                    Polynomial u = d.at(rpos, cpos);
                    Polynomial uinv;
                    if (ring->is_artinian()) {
                        uinv = ring_unit_inverse(*ring, u);
                    } else {
                        // graded: homogeneity forces unit entries to be constants
                        Scalar c0 = u.constant_coefficient(ring->field());
                        uinv = Polynomial::constant(ring->ctx(), c0.inverse());
                    }

                    // d' = delta - gamma u^{-1} beta on the reduced blocks
                    PolyMatrix nd(d.rows - 1, d.cols - 1);
                    for (std::size_t r = 0, ri = 0; r < d.rows; ++r) {
                        if (r == rpos) continue;
                        for (std::size_t cc = 0, ci = 0; cc < d.cols; ++cc) {
                            if (cc == cpos) continue;
                            Polynomial corr = poly_mul(ring->ctx(), d.at(r, cpos),
                                                       poly_mul(ring->ctx(), uinv, d.at(rpos, cc)));
                            nd.at(ri, ci) = ring->nf(poly_sub(ring->ctx(), d.at(r, cc), corr));
                            ++ci;
                        }
                        ++ri;
                    }
                    d = std::move(nd);

                    // incoming differential loses the cancelled source row
                    if (di + 1 < diffs.size()) {
                        PolyMatrix& up = diffs[di + 1];
                        PolyMatrix nu(up.rows - 1, up.cols);
                        for (std::size_t r = 0, ri = 0; r < up.rows; ++r) {
                            if (r == cpos) continue;
                            for (std::size_t cc = 0; cc < up.cols; ++cc) nu.at(ri, cc) = up.at(r, cc);
                            ++ri;
                        }
                        up = std::move(nu);
                    }
                    // outgoing differential loses the cancelled target column
                    if (di > 0) {
                        PolyMatrix& down = diffs[di - 1];
                        PolyMatrix nl(down.rows, down.cols - 1);
                        for (std::size_t r = 0; r < down.rows; ++r)
                            for (std::size_t cc = 0, ci = 0; cc < down.cols; ++cc) {
                                if (cc == rpos) continue;
                                nl.at(r, ci) = down.at(r, cc);
                                ++ci;
                            }
                        down = std::move(nl);
                    }
                    ranks[di + 1] -= 1;
                    ranks[di] -= 1;
                    drop(twists[di + 1], cpos);
                    drop(twists[di], rpos);
                }
        }
    }

    std::optional<std::vector<std::vector<int>>> tw;
    if (input.has_twists()) tw = twists;
    return FreeComplex::make(ring, lo, std::move(ranks), std::move(tw), std::move(diffs));
}

PolyMatrix ChainMap::map_at(int i) const {
    std::size_t idx = static_cast<std::size_t>(i - lo);
    if (i >= lo && idx < maps.size()) return maps[idx];
    return PolyMatrix(to.rank_at(i), from.rank_at(i));
}

FreeComplex cone(const ChainMap& f) {
    const RingPtr& ring = f.from.ring();
    // verify commutation: f_{i-1} d^X_i = d^Y_i f_i
    for (int i = std::min(f.from.lo(), f.to.lo()); i <= std::max(f.from.hi(), f.to.hi()) + 1; ++i) {
        PolyMatrix lhs = poly_matrix_mul(*ring, f.map_at(i - 1), f.from.diff(i));
        PolyMatrix rhs = poly_matrix_mul(*ring, f.to.diff(i), f.map_at(i));
        if (lhs.rows != rhs.rows || lhs.cols != rhs.cols) throw NotAChainMap();
        for (std::size_t k = 0; k < lhs.entries.size(); ++k)
            if (!(ring->nf(poly_sub(ring->ctx(), lhs.entries[k], rhs.entries[k])).is_zero()))
                throw NotAChainMap();
    }

    int lo = std::min(f.from.lo() + 1, f.to.lo());
    int hi = std::max(f.from.hi() + 1, f.to.hi());
    std::vector<std::size_t> ranks;
    std::vector<std::vector<int>> twists;
    for (int i = lo; i <= hi; ++i) {
        ranks.push_back(f.from.rank_at(i - 1) + f.to.rank_at(i));
        std::vector<int> t = f.from.twists_at(i - 1);
        auto ty = f.to.twists_at(i);
        t.insert(t.end(), ty.begin(), ty.end());
        twists.push_back(std::move(t));
    }
    std::vector<PolyMatrix> diffs;
    for (int i = lo + 1; i <= hi; ++i) {
        std::size_t xr = f.from.rank_at(i - 2), yr = f.to.rank_at(i - 1);
        std::size_t xc = f.from.rank_at(i - 1), yc = f.to.rank_at(i);
        PolyMatrix d(xr + yr, xc + yc);
        PolyMatrix dx = f.from.diff(i - 1);
        for (std::size_t r = 0; r < xr; ++r)
            for (std::size_t c = 0; c < xc; ++c)
                d.at(r, c) = poly_neg(ring->ctx(), dx.at(r, c));
        PolyMatrix fm = f.map_at(i - 1);
        for (std::size_t r = 0; r < yr; ++r)
            for (std::size_t c = 0; c < xc; ++c) d.at(xr + r, c) = fm.at(r, c);
        PolyMatrix dy = f.to.diff(i);
        for (std::size_t r = 0; r < yr; ++r)
            for (std::size_t c = 0; c < yc; ++c) d.at(xr + r, xc + c) = dy.at(r, c);
        diffs.push_back(std::move(d));
    }
    std::optional<std::vector<std::vector<int>>> tw;
    if (f.from.has_twists() || f.to.has_twists()) tw = twists;
    return FreeComplex::make(ring, lo, std::move(ranks), std::move(tw), std::move(diffs));
}

FreeComplex shift(const FreeComplex& c, int by) {
    std::vector<std::size_t> ranks(c.ranks());
    std::vector<std::vector<int>> twists;
    for (int i = c.lo(); i <= c.hi(); ++i) twists.push_back(c.twists_at(i));
    std::vector<PolyMatrix> diffs;
    bool flip = (by % 2) != 0;
    for (int i = c.lo() + 1; i <= c.hi(); ++i) {
        PolyMatrix d = c.diff(i);
        if (flip)
            for (auto& e : d.entries) e = poly_neg(c.ring()->ctx(), e);
        diffs.push_back(std::move(d));
    }
    std::optional<std::vector<std::vector<int>>> tw;
    if (c.has_twists()) tw = twists;
    return FreeComplex::make(c.ring(), c.lo() + by, std::move(ranks), std::move(tw),
                             std::move(diffs));
}

FreeComplex truncate_range(const FreeComplex& c, int keep_lo, int keep_hi) {
    int lo = std::max(keep_lo, c.lo());
    int hi = std::min(keep_hi, c.hi());
    if (lo > hi)
        return FreeComplex::make(c.ring(), keep_lo, {},
                                 c.has_twists()
                                     ? std::optional<std::vector<std::vector<int>>>(
                                           std::vector<std::vector<int>>{})
                                     : std::nullopt,
                                 {});
    std::vector<std::size_t> ranks;
    std::vector<std::vector<int>> twists;
    std::vector<PolyMatrix> diffs;
    for (int i = lo; i <= hi; ++i) {
        ranks.push_back(c.rank_at(i));
        twists.push_back(c.twists_at(i));
        if (i > lo) diffs.push_back(c.diff(i));
    }
    std::optional<std::vector<std::vector<int>>> tw;
    if (c.has_twists()) tw = twists;
    return FreeComplex::make(c.ring(), lo, std::move(ranks), std::move(tw), std::move(diffs));
}

std::optional<int> CohomologyReport::chain_hinf() const {
    std::optional<int> top;
    for (std::size_t i = 0; i < dims.size(); ++i)
        if (dims[i] > 0) top = lo + static_cast<int>(i);
    if (!top) return std::nullopt;
    return -*top;
}

CohomologyReport hom_into_module(const FreeComplex& c, const VectorizedModule& n,
                                 std::optional<int>) {
    const RingPtr& ring = c.ring();
    CohomologyReport report;
    report.lo = c.lo();
    std::vector<FreeTensor> carriers;
    std::vector<Matrix> coboundary;  // coboundary[i]: carrier[i] -> carrier[i+1]
    for (int i = c.lo(); i <= c.hi(); ++i) carriers.push_back(free_hom(ring, c.twists_at(i), n));
    for (int i = c.lo() + 1; i <= c.hi(); ++i)
        coboundary.push_back(block_map_on_tensor(c.diff(i).transposed(), n));

    for (int i = c.lo(); i <= c.hi(); ++i) {
        std::size_t idx = static_cast<std::size_t>(i - c.lo());
        const VectorizedModule& v = carriers[idx].mod;
        Matrix ker = (idx < coboundary.size()) ? coboundary[idx].kernel_basis()
                                               : Matrix::identity(v.field(), v.dim());
        Matrix img = (idx > 0) ? coboundary[idx - 1] : Matrix(v.field(), v.dim(), 0);
        SubquotientModule sq = subquotient(v, ker, img);
        HomologyEntry entry;
        entry.index = i;
        if (v.graded) {
            int trust = v.trust_hi;
            if (idx + 1 < carriers.size()) trust = std::min(trust, carriers[idx + 1].mod.trust_hi);
            entry.module = truncate_module(sq.mod, trust);
            std::vector<std::size_t> keep;
            for (std::size_t kcol = 0; kcol < sq.mod.dim(); ++kcol)
                if (sq.mod.degrees[kcol] <= trust) keep.push_back(kcol);
            entry.representatives = sq.representatives.select_columns(keep);
        } else {
            entry.module = sq.mod;
            entry.representatives = sq.representatives;
        }
        entry.dim = entry.module.dim();
        report.dims.push_back(entry.dim);
        report.entries.push_back(std::move(entry));
    }
    return report;
}

}  // namespace qpdcalc
