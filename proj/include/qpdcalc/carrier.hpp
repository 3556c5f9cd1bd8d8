#pragma once

#include "qpdcalc/ring.hpp"

namespace qpdcalc {

/// Matrix of ring elements describing a map of free modules; rows index the
/// target basis, columns the source basis. Entries are kept in normal form.
struct PolyMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Polynomial> entries;  // row-major

    PolyMatrix() = default;
    PolyMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}
    const Polynomial& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
    Polynomial& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    PolyMatrix transposed() const;
    bool is_zero() const;
};

PolyMatrix poly_matrix_mul(const QuotientRing& r, const PolyMatrix& a, const PolyMatrix& b);

/// A finitely generated module carried as a finite-dimensional k-space with
/// one commuting action matrix per ring variable. In the Graded regime the
/// basis carries degrees and the carrier is the quotient of the module by
/// everything above trust_hi; computations are exact in degrees <= trust_hi.
struct VectorizedModule {
    RingPtr ring;
    std::vector<Matrix> actions;   // one per variable, dim x dim
    bool graded = false;
    std::vector<int> degrees;      // per basis vector, when graded
    int trust_hi = 0;              // top trusted degree, when graded

    std::size_t dim() const { return dim_; }
    const FieldSpec& field() const { return ring->field(); }

    static VectorizedModule zero(RingPtr ring, bool graded, int trust_hi);
    /// dim is explicit so modules over a field (no variables) work too.
    static VectorizedModule make(RingPtr ring, std::size_t dim, std::vector<Matrix> actions,
                                 bool graded, std::vector<int> degrees, int trust_hi);

    /// Per-degree dimensions on [0, trust_hi] (graded regime).
    std::vector<std::size_t> hilbert() const;
    /// dim m^j M for j = 0, 1, ... until zero (any regime).
    std::vector<std::size_t> radical_filtration() const;
    /// Consistency checks: commuting actions, ideal generators act as zero,
    /// degree labels compatible with the actions.
    void validate() const;

    std::size_t dim_ = 0;
};

/// Evaluate a polynomial on the action matrices (the operator by which the
/// ring element acts on the module).
Matrix eval_on_module(const VectorizedModule& m, const Polynomial& p);

VectorizedModule direct_sum(const VectorizedModule& a, const VectorizedModule& b);
VectorizedModule direct_power(const VectorizedModule& m, std::size_t copies);
/// Shift all degree labels by delta (graded); M(-t) has labels raised by t.
VectorizedModule twist_degrees(const VectorizedModule& m, int delta);

/// Degree of a vector with degree-pure support; nullopt for zero or mixed.
std::optional<int> vector_degree(const VectorizedModule& m, const std::vector<Scalar>& v);

/// Drop basis vectors above the bound; action images into dropped
/// coordinates truncate to zero.
VectorizedModule truncate_module(const VectorizedModule& m, int hi);

/// Submodule spanned by independent columns closed under the actions.
struct Submodule {
    VectorizedModule mod;
    Matrix inclusion;  // ambient_dim x sub_dim
};
Submodule submodule_from_columns(const VectorizedModule& ambient, const Matrix& columns);

/// Quotient of the ambient module by the span of the given columns.
struct QuotientModule {
    VectorizedModule mod;
    Matrix section;     // ambient_dim x quot_dim, representatives
    SubspaceReducer reducer;
    std::vector<std::size_t> coords;  // ambient coordinates carrying the quotient

    std::vector<Scalar> project(const std::vector<Scalar>& ambient_vec) const;
};
QuotientModule quotient_by_columns(const VectorizedModule& ambient, const Matrix& span_columns);

/// ker(span of kernel columns) / im(columns contained in that kernel):
/// the homology building block. Representatives are ambient vectors.
struct SubquotientModule {
    VectorizedModule mod;
    Matrix representatives;  // ambient_dim x dim
    /// Coordinates of an ambient kernel vector in the subquotient basis.
    std::vector<Scalar> coords_of(const std::vector<Scalar>& ambient_vec) const;

    Matrix kernel_cols_;
    Matrix image_cols_;
    Matrix sub_solve_;  // precomputed coordinates helper
};
SubquotientModule subquotient(const VectorizedModule& ambient, const Matrix& kernel_cols,
                              const Matrix& image_cols);

/// Basis layout of a truncated free module F = (+)_j R(-t_j): pairs
/// (slot j, standard monomial), ordered by slot then by the monomial order,
/// overall total degree capped by the bound in the Graded regime.
class FreeLayout {
public:
    FreeLayout(RingPtr ring, std::vector<int> twists, std::optional<int> bound);

    std::size_t rank() const { return twists_.size(); }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<int>& twists() const { return twists_; }
    const RingPtr& ring() const { return ring_; }
    std::optional<int> bound() const { return bound_; }

    struct BasisElement {
        std::size_t slot;
        Monomial mono;
    };
    const std::vector<BasisElement>& basis() const { return basis_; }
    int degree_of(std::size_t k) const;

    /// The free module as a carrier (multiplication actions per variable).
    VectorizedModule module() const;

    /// k-vector of a vector of ring elements (one polynomial per slot).
    std::vector<Scalar> embed(const std::vector<Polynomial>& poly_vec) const;
    /// Back from coordinates to one polynomial per slot.
    std::vector<Polynomial> extract(const std::vector<Scalar>& v) const;

    /// Vectorize a map of free modules given by a PolyMatrix: columns of the
    /// result are images of this layout's basis in the target layout.
    Matrix vectorized_map(const PolyMatrix& d, const FreeLayout& target) const;

private:
    RingPtr ring_;
    std::vector<int> twists_;
    std::optional<int> bound_;
    std::vector<BasisElement> basis_;
    std::map<std::pair<std::size_t, Monomial>, std::size_t> index_;
};

/// F (x) N: carrier of the tensor of a free module with a coefficient
/// module, basis (slot, N-basis vector). Block structure: slot-major.
struct FreeTensor {
    VectorizedModule mod;
    std::vector<int> twists;
};
FreeTensor free_tensor(RingPtr ring, const std::vector<int>& twists, const VectorizedModule& n);

/// Vectorized differential of d (x) N acting between slot-major blocks.
Matrix block_map_on_tensor(const PolyMatrix& d, const VectorizedModule& n);

/// Hom(F, N) for free F: carrier N^rank with degrees deg - twist.
FreeTensor free_hom(RingPtr ring, const std::vector<int>& twists, const VectorizedModule& n);

}  // namespace qpdcalc
