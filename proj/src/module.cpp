#include "qpdcalc/module.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace qpdcalc {

ModulePresentation ModulePresentation::free_module(RingPtr ring,
                                                   std::vector<int> generator_degrees) {
    return ModulePresentation{std::move(ring), std::move(generator_degrees), {}};
}

ModulePresentation ModulePresentation::cyclic(RingPtr ring,
                                              const std::vector<Polynomial>& ideal) {
    ModulePresentation p;
    p.ring = std::move(ring);
    p.generator_degrees = {0};
    for (const auto& g : ideal) p.relations.push_back({g});
    return p;
}

ModulePresentation ModulePresentation::residue_field(RingPtr ring) {
    std::vector<Polynomial> vars;
    for (std::size_t v = 0; v < ring->nvars(); ++v)
        vars.push_back(Polynomial::variable(ring->ctx(), v));
    return cyclic(std::move(ring), vars);
}

VectorizedModule vectorize(const ModulePresentation& p, std::optional<int> degree_bound) {
    const RingPtr& ring = p.ring;
    bool graded = !ring->is_artinian();
    if (graded && !degree_bound) throw RegimeError("vectorize needs a bound in the Graded regime");

    FreeLayout layout(ring, p.generator_degrees, graded ? degree_bound : std::nullopt);
    VectorizedModule free_mod = layout.module();

    std::vector<std::vector<Scalar>> span_cols;
    std::vector<Monomial> monos = ring->basis_up_to(graded ? *degree_bound : 0);
    for (const auto& row : p.relations) {
        if (row.size() != p.generator_degrees.size())
            throw InputError("relation row length differs from generator count");
        if (graded) {
            // homogeneity: entry degree + generator degree constant along the row
            std::optional<int> total;
            for (std::size_t j = 0; j < row.size(); ++j) {
                Polynomial e = ring->nf(row[j]);
                if (e.is_zero()) continue;
                auto hd = e.homogeneous_degree();
                if (!hd) throw InputError("relation entry is not homogeneous");
                int t = *hd + p.generator_degrees[j];
                if (total && *total != t) throw InputError("relation row is not homogeneous");
                total = t;
            }
        }
        for (const auto& mono : monos) {
            std::vector<Polynomial> scaled;
            scaled.reserve(row.size());
            for (const auto& e : row)
                scaled.push_back(ring->nf(poly_mul(
                    ring->ctx(), e,
                    Polynomial::term(ring->ctx(), mono, Scalar::one(ring->field())))));
            span_cols.push_back(layout.embed(scaled));
        }
    }
    Matrix span(ring->field(), layout.dim(), span_cols.size());
    for (std::size_t j = 0; j < span_cols.size(); ++j) span.set_column(j, span_cols[j]);
    return quotient_by_columns(free_mod, span).mod;
}

namespace {

Matrix radical_span(const VectorizedModule& m) {
    Matrix span(m.field(), m.dim(), 0);
    for (const auto& a : m.actions) span = Matrix::hstack(span, a);
    return span;
}

}  // namespace

GeneratorData generator_data(const VectorizedModule& m) {
    SubspaceReducer red(radical_span(m));
    std::vector<bool> is_pivot(m.dim(), false);
    for (auto p : red.pivot_columns()) is_pivot[p] = true;
    GeneratorData out;
    for (std::size_t c = 0; c < m.dim(); ++c)
        if (!is_pivot[c]) {
            out.coords.push_back(c);
            if (m.graded) out.degrees.push_back(m.degrees[c]);
        }
    return out;
}

GeneratorSplit minimal_generators(const VectorizedModule& m, bool with_split) {
    GeneratorSplit out;
    out.nu = generator_data(m).coords.size();
    if (!with_split) return out;
    if (!m.ring->is_artinian())
        throw RegimeError("the free/nonfree split needs the Artinian regime");

    out.split_computed = true;
    VectorizedModule cur = m;
    VectorizedModule ring_mod = ring_as_module(m.ring, std::nullopt);
    std::size_t one_idx = m.ring->nvars() == 0 ? 0 : m.ring->basis_index(Monomial(m.ring->nvars()));

    while (cur.dim() > 0) {
        Matrix homs = hom_space(cur, ring_mod, std::nullopt);
        std::size_t dim_r = ring_mod.dim();
        std::size_t found_a = homs.cols(), found_b = 0;
        for (std::size_t a = 0; a < homs.cols() && found_a == homs.cols(); ++a) {
            Matrix phi = unvec(homs, dim_r, cur.dim(), a);
            for (std::size_t b = 0; b < cur.dim(); ++b) {
                if (!phi.get(one_idx, b).is_zero()) {
                    // phi(e_b) has a unit constant coefficient: split off R*e_b
                    found_a = a;
                    found_b = b;
                    break;
                }
            }
        }
        if (found_a == homs.cols()) break;  // no free summand remains

        Matrix phi = unvec(homs, dim_r, cur.dim(), found_a);
        // scale phi so that phi(e_b) becomes a unit u with u^{-1} available
        std::vector<Scalar> u_coords = phi.column(found_b);
        std::vector<Term> terms;
        for (std::size_t i = 0; i < dim_r; ++i)
            if (!u_coords[i].is_zero()) terms.push_back(Term{m.ring->basis()[i], u_coords[i]});
        Polynomial u = Polynomial::from_terms(m.ring->ctx(), std::move(terms));
        Polynomial uinv = ring_unit_inverse(*m.ring, u);
        Matrix beta = multiplication_operator(*m.ring, uinv) * phi;  // beta(e_b) = 1
        Matrix ker = beta.kernel_basis();
        cur = submodule_from_columns(cur, ker).mod;
        out.free_rank += 1;
    }
    out.nonfree = cur;
    return out;
}

namespace {

// Multiplication operators for every monomial in the list, built by one
// variable step at a time in ascending degree order.
std::map<Monomial, Matrix> monomial_operators(const VectorizedModule& m,
                                              const std::vector<Monomial>& monos) {
    std::map<Monomial, Matrix> ops;
    std::vector<Monomial> sorted = monos;
    std::sort(sorted.begin(), sorted.end(), [](const Monomial& a, const Monomial& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a < b;
    });
    for (const auto& mono : sorted) {
        if (ops.count(mono)) continue;
        if (mono.is_one()) {
            ops.emplace(mono, Matrix::identity(m.field(), m.dim()));
            continue;
        }
        std::size_t v = 0;
        while (mono.e[v] == 0) ++v;
        Monomial prev = mono;
        prev.e[v] -= 1;
        auto it = ops.find(prev);
        if (it == ops.end()) {
            // fall back to direct evaluation (list was not divisor-closed)
            ops.emplace(mono, eval_on_module(
                                  m, Polynomial::term(m.ring->ctx(), mono,
                                                      Scalar::one(m.field()))));
        } else {
            ops.emplace(mono, m.actions[v] * it->second);
        }
    }
    return ops;
}

}  // namespace

SyzygyResult syzygy(const VectorizedModule& m) {
    const RingPtr& ring = m.ring;
    bool graded = m.graded;
    GeneratorData gens = generator_data(m);
    std::vector<int> twists = graded ? gens.degrees : std::vector<int>(gens.coords.size(), 0);

    FreeLayout layout(ring, twists, graded ? std::optional<int>(m.trust_hi) : std::nullopt);
    // cover matrix: column (mono, j) -> mono * g_j
    std::vector<Monomial> needed;
    for (const auto& b : layout.basis()) needed.push_back(b.mono);
    auto ops = monomial_operators(m, needed);
    Matrix cover(m.field(), m.dim(), layout.dim());
    for (std::size_t k = 0; k < layout.dim(); ++k) {
        const auto& b = layout.basis()[k];
        cover.set_column(k, ops.at(b.mono).column(gens.coords[b.slot]));
    }

    Matrix kernel = cover.kernel_basis();
    VectorizedModule free_mod = layout.module();
    SyzygyResult out;
    if (kernel.cols() == 0) {
        out.omega = VectorizedModule::zero(ring, graded, m.trust_hi);
        out.cover_twists = twists;
        out.omega_generators = PolyMatrix(twists.size(), 0);
        return out;
    }
    Submodule omega = submodule_from_columns(free_mod, kernel);
    GeneratorData omega_gens = generator_data(omega.mod);

    out.omega = omega.mod;
    out.cover_twists = twists;
    out.omega_generators = PolyMatrix(twists.size(), omega_gens.coords.size());
    for (std::size_t g = 0; g < omega_gens.coords.size(); ++g) {
        std::vector<Scalar> vec = kernel.column(omega_gens.coords[g]);
        std::vector<Polynomial> polys = layout.extract(vec);
        for (std::size_t r = 0; r < twists.size(); ++r) out.omega_generators.at(r, g) = polys[r];
        if (graded) out.omega_twists.push_back(omega.mod.degrees[omega_gens.coords[g]]);
    }
    if (!graded) out.omega_twists.assign(omega_gens.coords.size(), 0);
    return out;
}

MinimalResolution minimal_resolution(const VectorizedModule& m, int steps,
                                     std::optional<int> degree_bound) {
    MinimalResolution out;
    bool graded = m.graded;
    if (graded && degree_bound && *degree_bound > m.trust_hi)
        throw InputError("resolution bound exceeds the module's trusted range");

    std::vector<std::size_t> ranks;
    std::vector<std::vector<int>> twists;
    std::vector<PolyMatrix> diffs;

    VectorizedModule cur = m;
    if (cur.dim() == 0) {
        out.terminated = true;
        out.pd = -1;  // the zero module resolves by the empty complex
    } else {
        for (int step = 0; step <= steps; ++step) {
            SyzygyResult s = syzygy(cur);
            ranks.push_back(s.cover_twists.size());
            twists.push_back(s.cover_twists);
            if (s.omega.dim() == 0) {
                out.terminated = true;
                out.pd = step;
                break;
            }
            if (step == steps) break;
            diffs.push_back(s.omega_generators);
            out.syzygies.push_back(s.omega);
            cur = s.omega;
        }
    }

    std::optional<std::vector<std::vector<int>>> tw;
    if (graded) tw = twists;
    out.complex = FreeComplex::make(m.ring, 0, ranks, std::move(tw), diffs);
    out.betti.ranks = ranks;
    out.betti.twists = twists;
    return out;
}

VectorizedModule tensor(const VectorizedModule& m, const VectorizedModule& n) {
    if (m.ring != n.ring) throw InputError("tensor: ring mismatch");
    std::size_t dm = m.dim(), dn = n.dim();
    const FieldSpec& f = m.field();
    // ambient M (x)_k N with the diagonal action through N
    std::vector<Matrix> acts;
    for (std::size_t v = 0; v < n.actions.size(); ++v) {
        Matrix a(f, dm * dn, dm * dn);
        for (std::size_t i = 0; i < dm; ++i)
            for (std::size_t r = 0; r < dn; ++r)
                for (std::size_t c = 0; c < dn; ++c) {
                    Scalar s = n.actions[v].get(r, c);
                    if (!s.is_zero()) a.set(i * dn + r, i * dn + c, s);
                }
        acts.push_back(std::move(a));
    }
    std::vector<int> degs;
    bool graded = m.graded && n.graded;
    if (graded)
        for (std::size_t i = 0; i < dm; ++i)
            for (std::size_t r = 0; r < dn; ++r) degs.push_back(m.degrees[i] + n.degrees[r]);
    int trust = graded ? std::min(m.trust_hi, n.trust_hi) : 0;
    VectorizedModule ambient =
        VectorizedModule::make(m.ring, dm * dn, std::move(acts), graded, std::move(degs), trust);

    // span of x.(m (x) n) - m (x) x.n over all variables and basis pairs
    Matrix span(f, dm * dn, 0);
    for (std::size_t v = 0; v < m.actions.size(); ++v) {
        Matrix rel(f, dm * dn, dm * dn);
        for (std::size_t i = 0; i < dm; ++i)
            for (std::size_t r = 0; r < dn; ++r) {
                std::size_t col = i * dn + r;
                for (std::size_t i2 = 0; i2 < dm; ++i2) {
                    Scalar s = m.actions[v].get(i2, i);
                    if (!s.is_zero()) rel.set(i2 * dn + r, col, s);
                }
                for (std::size_t r2 = 0; r2 < dn; ++r2) {
                    Scalar s = n.actions[v].get(r2, r);
                    if (!s.is_zero()) rel.set(i * dn + r2, col, rel.get(i * dn + r2, col) - s);
                }
            }
        span = Matrix::hstack(span, rel);
    }
    VectorizedModule q = quotient_by_columns(ambient, span).mod;
    if (graded) q = truncate_module(q, trust);
    return q;
}

Matrix hom_space(const VectorizedModule& m, const VectorizedModule& n,
                 std::optional<int> only_degree) {
    if (m.ring != n.ring) throw InputError("hom: ring mismatch");
    std::size_t dm = m.dim(), dn = n.dim();
    const FieldSpec& f = m.field();
    std::size_t unknowns = dm * dn;  // vec(phi), column-major: phi(e_j) = column j
    if (unknowns == 0) return Matrix(f, 0, 0);

    std::vector<Matrix> rows;
    for (std::size_t v = 0; v < m.actions.size(); ++v) {
        // constraint: A^N phi - phi A^M = 0, one block row per (column j, row i)
        Matrix c(f, unknowns, unknowns);
        for (std::size_t j = 0; j < dm; ++j) {
            // d/dphi of column j of A^N*phi: A^N acting on phi's column j
            for (std::size_t i = 0; i < dn; ++i)
                for (std::size_t i2 = 0; i2 < dn; ++i2) {
                    Scalar s = n.actions[v].get(i, i2);
                    if (!s.is_zero()) c.set(j * dn + i, j * dn + i2, s);
                }
            // minus columns of phi*A^M: (phi A^M) col j = sum_l A^M[l][j] phi col l
            for (std::size_t l = 0; l < dm; ++l) {
                Scalar s = m.actions[v].get(l, j);
                if (s.is_zero()) continue;
                for (std::size_t i = 0; i < dn; ++i)
                    c.set(j * dn + i, l * dn + i, c.get(j * dn + i, l * dn + i) - s);
            }
        }
        rows.push_back(std::move(c));
    }
    Matrix stacked(f, 0, unknowns);
    for (auto& r : rows) stacked = Matrix::vstack(stacked, r);

    if (only_degree) {
        if (!m.graded || !n.graded) throw RegimeError("degree-restricted hom needs graded input");
        // force entries of other degrees to zero by adding unit constraints
        Matrix mask(f, unknowns, unknowns);
        std::size_t extra = 0;
        for (std::size_t j = 0; j < dm; ++j)
            for (std::size_t i = 0; i < dn; ++i)
                if (n.degrees[i] - m.degrees[j] != *only_degree) {
                    mask.set(extra++, j * dn + i, Scalar::one(f));
                }
        std::vector<std::size_t> keep;
        for (std::size_t r = 0; r < extra; ++r) keep.push_back(r);
        stacked = Matrix::vstack(stacked, mask.select_rows(keep));
    }
    return stacked.kernel_basis();
}

Matrix unvec(const Matrix& columns, std::size_t rows, std::size_t cols, std::size_t which) {
    Matrix out(columns.field(), rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) out.set(i, j, columns.get(j * rows + i, which));
    return out;
}

HomModule hom_module(const VectorizedModule& m, const VectorizedModule& n) {
    Matrix basis = hom_space(m, n, std::nullopt);
    std::size_t dm = m.dim(), dn = n.dim();
    std::size_t h = basis.cols();
    const FieldSpec& f = m.field();

    // R acts by post-composition with the action on N
    std::vector<Matrix> acts;
    for (std::size_t v = 0; v < n.actions.size(); ++v) {
        Matrix big(f, dm * dn, h);
        for (std::size_t a = 0; a < h; ++a) {
            Matrix phi = unvec(basis, dn, dm, a);
            Matrix img = n.actions[v] * phi;
            std::vector<Scalar> vec;
            vec.reserve(dm * dn);
            for (std::size_t j = 0; j < dm; ++j)
                for (std::size_t i = 0; i < dn; ++i) vec.push_back(img.get(i, j));
            big.set_column(a, vec);
        }
        auto sol = basis.solve(big);
        if (!sol) throw ComputeError("hom space is not closed under the action");
        acts.push_back(std::move(*sol));
    }
    std::vector<int> degs;
    bool graded = m.graded && n.graded;
    int trust = 0;
    if (graded) {
        for (std::size_t a = 0; a < h; ++a) {
            // degree of the map: determined by any nonzero entry
            std::optional<int> deg;
            for (std::size_t j = 0; j < dm && !deg; ++j)
                for (std::size_t i = 0; i < dn; ++i)
                    if (!basis.get(j * dn + i, a).is_zero()) {
                        deg = n.degrees[i] - m.degrees[j];
                        break;
                    }
            degs.push_back(deg.value_or(0));
        }
        int max_m_deg = 0;
        for (int d : m.degrees) max_m_deg = std::max(max_m_deg, d);
        trust = n.trust_hi - max_m_deg - 1;
    }
    HomModule out{VectorizedModule::make(m.ring, h, std::move(acts), graded, std::move(degs), trust),
                  basis};
    return out;
}

VectorizedModule transpose(const VectorizedModule& m) {
    if (!m.ring->is_artinian()) throw RegimeError("transpose needs the Artinian regime");
    if (m.dim() == 0) return m;
    SyzygyResult s = syzygy(m);
    // Tr M = coker of the dual of the first differential: relations matrix is
    // the differential itself with roles of rows and columns exchanged
    ModulePresentation pres;
    pres.ring = m.ring;
    pres.generator_degrees.assign(s.omega_generators.cols, 0);
    for (std::size_t r = 0; r < s.omega_generators.rows; ++r) {
        std::vector<Polynomial> row;
        for (std::size_t c = 0; c < s.omega_generators.cols; ++c)
            row.push_back(s.omega_generators.at(r, c));
        pres.relations.push_back(std::move(row));
    }
    return vectorize(pres, std::nullopt);
}

namespace {

std::string vec_to_str(const std::vector<std::size_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

std::size_t annihilator_dim(const VectorizedModule& m) {
    // Artinian regime: kernel of R -> End(M)
    const RingPtr& ring = m.ring;
    std::size_t dr = ring->total_dim();
    Matrix big(m.field(), m.dim() * m.dim(), dr);
    for (std::size_t b = 0; b < dr; ++b) {
        Matrix op = eval_on_module(
            m, Polynomial::term(ring->ctx(), ring->basis()[b], Scalar::one(m.field())));
        std::vector<Scalar> vec;
        vec.reserve(m.dim() * m.dim());
        for (std::size_t j = 0; j < m.dim(); ++j)
            for (std::size_t i = 0; i < m.dim(); ++i) vec.push_back(op.get(i, j));
        big.set_column(b, vec);
    }
    return big.kernel_basis().cols();
}

std::vector<std::size_t> socle_series_dims(const VectorizedModule& m) {
    std::vector<std::size_t> out;
    std::size_t nvars = m.actions.size();
    for (int j = 1;; ++j) {
        // (0 : m^j) = vectors killed by every monomial of total degree j
        std::vector<Monomial> monos;
        Monomial cur(nvars);
        std::function<void(std::size_t, unsigned)> rec = [&](std::size_t v, unsigned left) {
            if (v + 1 == nvars) {
                cur.e[v] = left;
                monos.push_back(cur);
                cur.e[v] = 0;
                return;
            }
            for (unsigned d = 0; d <= left; ++d) {
                cur.e[v] = d;
                rec(v + 1, left - d);
            }
            cur.e[v] = 0;
        };
        if (nvars == 0) break;
        rec(0, static_cast<unsigned>(j));
        Matrix stacked(m.field(), 0, m.dim());
        for (const auto& mono : monos)
            stacked = Matrix::vstack(
                stacked, eval_on_module(m, Polynomial::term(m.ring->ctx(), mono,
                                                            Scalar::one(m.field()))));
        std::size_t d = stacked.kernel_basis().cols();
        out.push_back(d);
        if (d == m.dim()) break;
        if (j > static_cast<int>(m.dim()) + 1) break;
    }
    return out;
}

}  // namespace

IsoVerdict iso_test(const VectorizedModule& m, const VectorizedModule& n, std::size_t trials,
                    std::uint64_t seed) {
    IsoVerdict out{IsoVerdict::Kind::Unknown, Matrix(), "", 0, 0};
    if (m.ring != n.ring) throw InputError("iso_test: ring mismatch");
    if (m.graded != n.graded) throw InputError("iso_test: regime mismatch");

    if (m.dim() != n.dim()) {
        out.kind = IsoVerdict::Kind::NotIsomorphic;
        out.distinguishing = "dim " + std::to_string(m.dim()) + " vs " + std::to_string(n.dim());
        return out;
    }
    if (m.dim() == 0) {
        out.kind = IsoVerdict::Kind::Isomorphic;
        out.witness = Matrix(m.field(), 0, 0);
        return out;
    }

    int shift = 0;
    VectorizedModule ms = m;
    if (m.graded) {
        int mmin = *std::min_element(m.degrees.begin(), m.degrees.end());
        int nmin = *std::min_element(n.degrees.begin(), n.degrees.end());
        shift = nmin - mmin;
        ms = twist_degrees(m, shift);
        // compare within the common trusted window
        int hi = std::min(ms.trust_hi, n.trust_hi);
        auto hm = truncate_module(ms, hi).hilbert();
        auto hn = truncate_module(n, hi).hilbert();
        if (hm != hn) {
            out.kind = IsoVerdict::Kind::NotIsomorphic;
            out.distinguishing = "hilbert function";
            return out;
        }
    } else {
        auto rm = m.radical_filtration(), rn = n.radical_filtration();
        if (rm != rn) {
            out.kind = IsoVerdict::Kind::NotIsomorphic;
            out.distinguishing = "radical filtration " + vec_to_str(rm) + " vs " + vec_to_str(rn);
            return out;
        }
        if (m.ring->is_artinian()) {
            if (annihilator_dim(m) != annihilator_dim(n)) {
                out.kind = IsoVerdict::Kind::NotIsomorphic;
                out.distinguishing = "annihilator dimension";
                return out;
            }
            auto sm = socle_series_dims(m), sn = socle_series_dims(n);
            if (sm != sn) {
                out.kind = IsoVerdict::Kind::NotIsomorphic;
                out.distinguishing = "socle series " + vec_to_str(sm) + " vs " + vec_to_str(sn);
                return out;
            }
        }
    }
    std::size_t num = minimal_generators(m, false).nu;
    std::size_t nun = minimal_generators(n, false).nu;
    if (num != nun) {
        out.kind = IsoVerdict::Kind::NotIsomorphic;
        out.distinguishing = "minimal generators " + std::to_string(num) + " vs " +
                             std::to_string(nun);
        return out;
    }

    Matrix homs = m.graded ? hom_space(ms, n, 0) : hom_space(m, n, std::nullopt);
    if (homs.cols() == 0) {
        out.kind = IsoVerdict::Kind::NotIsomorphic;
        out.distinguishing = "no nonzero homomorphisms";
        return out;
    }

    const FieldSpec& f = m.field();
    auto check_witness = [&](const Matrix& phi) -> bool {
        if (phi.rank() != m.dim()) return false;
        for (std::size_t v = 0; v < m.actions.size(); ++v)
            if (!(n.actions[v] * phi - phi * m.actions[v]).is_zero()) return false;
        return true;
    };

    std::mt19937_64 rng(seed);
    auto random_scalar = [&]() {
        if (f.is_rational())
            return Scalar::of_int(f, static_cast<long long>(rng() % 9) - 4);
        return Scalar::of_int(f, static_cast<long long>(rng() % f.characteristic));
    };
    for (std::size_t t = 0; t < trials; ++t) {
        Matrix phi(f, n.dim(), m.dim());
        for (std::size_t a = 0; a < homs.cols(); ++a) {
            Scalar c = random_scalar();
            if (c.is_zero()) continue;
            phi = phi + unvec(homs, n.dim(), m.dim(), a).scaled(c);
        }
        ++out.trials_used;
        if (check_witness(phi)) {
            out.kind = IsoVerdict::Kind::Isomorphic;
            out.witness = phi;
            out.twist = shift;
            return out;
        }
    }

    // exhaustive refutation only on tiny instances over tiny fields
    if (!f.is_rational() && f.characteristic <= 5 && m.dim() < 4) {
        std::size_t p = f.characteristic;
        double combos = 1;
        for (std::size_t a = 0; a < homs.cols(); ++a) combos *= static_cast<double>(p);
        if (combos <= (1 << 21)) {
            std::vector<std::size_t> digits(homs.cols(), 0);
            while (true) {
                Matrix phi(f, n.dim(), m.dim());
                for (std::size_t a = 0; a < homs.cols(); ++a)
                    if (digits[a])
                        phi = phi + unvec(homs, n.dim(), m.dim(), a)
                                        .scaled(Scalar::of_int(f, static_cast<long long>(digits[a])));
                if (check_witness(phi)) {
                    out.kind = IsoVerdict::Kind::Isomorphic;
                    out.witness = phi;
                    out.twist = shift;
                    return out;
                }
                std::size_t pos = 0;
                while (pos < digits.size() && ++digits[pos] == p) digits[pos++] = 0;
                if (pos == digits.size()) break;
            }
            out.kind = IsoVerdict::Kind::NotIsomorphic;
            out.distinguishing = "exhausted all homomorphisms";
            return out;
        }
    }
    out.kind = IsoVerdict::Kind::Unknown;
    return out;
}

std::vector<HomologyEntry> derived_modules(DerivedKind kind, const VectorizedModule& m,
                                           const VectorizedModule& n, int max_index,
                                           std::optional<int> degree_bound) {
    MinimalResolution res = minimal_resolution(m, max_index + 1, degree_bound);
    std::vector<HomologyEntry> out;
    if (kind == DerivedKind::Tor) {
        HomologyReport rep = homology(res.complex, &n, degree_bound);
        for (int i = 0; i <= max_index; ++i) {
            if (res.complex.in_range(i)) {
                out.push_back(rep.at(i));
            } else {
                HomologyEntry e;
                e.index = i;
                e.module = VectorizedModule::zero(m.ring, m.graded, m.trust_hi);
                e.dim = 0;
                out.push_back(std::move(e));
            }
        }
    } else {
        CohomologyReport rep = hom_into_module(res.complex, n, degree_bound);
        for (int i = 0; i <= max_index; ++i) {
            if (res.complex.in_range(i)) {
                out.push_back(rep.entries[static_cast<std::size_t>(i - rep.lo)]);
            } else {
                HomologyEntry e;
                e.index = i;
                e.module = VectorizedModule::zero(m.ring, m.graded, m.trust_hi);
                e.dim = 0;
                out.push_back(std::move(e));
            }
        }
    }
    return out;
}

std::vector<std::size_t> derived_table(DerivedKind kind, const VectorizedModule& m,
                                       const VectorizedModule& n, int max_index,
                                       std::optional<int> degree_bound) {
    auto mods = derived_modules(kind, m, n, max_index, degree_bound);
    std::vector<std::size_t> out;
    out.reserve(mods.size());
    for (const auto& e : mods) out.push_back(e.dim);
    return out;
}

ReflexivityReport reflexivity_probe(const VectorizedModule& m, int window) {
    if (!m.ring->is_artinian()) throw RegimeError("reflexivity_probe needs the Artinian regime");
    ReflexivityReport rep;
    rep.window = window;
    VectorizedModule ring_mod = ring_as_module(m.ring, std::nullopt);

    HomModule dual = hom_module(m, ring_mod);
    HomModule bidual = hom_module(dual.mod, ring_mod);

    // natural map M -> M**: v -> (phi -> phi(v))
    std::size_t dr = ring_mod.dim(), dm = m.dim(), dd = dual.mod.dim();
    Matrix nat_cols(m.field(), dr * dd, dm);
    for (std::size_t v = 0; v < dm; ++v) {
        std::vector<Scalar> vec;
        vec.reserve(dr * dd);
        for (std::size_t a = 0; a < dd; ++a) {
            Matrix phi = unvec(dual.basis_maps, dr, dm, a);
            auto img = phi.column(v);
            for (std::size_t i = 0; i < dr; ++i) vec.push_back(img[i]);
        }
        nat_cols.set_column(v, vec);
    }
    // express in the bidual basis
    auto coords = bidual.basis_maps.solve(nat_cols);
    if (!coords) throw ComputeError("natural biduality map left the bidual space");
    rep.biduality_iso = (bidual.mod.dim() == dm) && (coords->rank() == dm);
    if (!rep.biduality_iso) rep.first_failure = "M -> M** is not an isomorphism";

    rep.ext_m = derived_table(DerivedKind::Ext, m, ring_mod, window, std::nullopt);
    rep.ext_m_star = derived_table(DerivedKind::Ext, dual.mod, ring_mod, window, std::nullopt);
    rep.ext_m.erase(rep.ext_m.begin());            // drop index 0
    rep.ext_m_star.erase(rep.ext_m_star.begin());
    rep.passed = rep.biduality_iso;
    for (int i = 0; i < window && rep.passed; ++i) {
        if (rep.ext_m[static_cast<std::size_t>(i)] != 0) {
            rep.passed = false;
            rep.first_failure = "Ext^" + std::to_string(i + 1) + "(M,R) != 0";
        } else if (rep.ext_m_star[static_cast<std::size_t>(i)] != 0) {
            rep.passed = false;
            rep.first_failure = "Ext^" + std::to_string(i + 1) + "(M*,R) != 0";
        }
    }
    return rep;
}

}  // namespace qpdcalc
