#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qpdcalc/field.hpp"

namespace qpdcalc {

struct RrefResult;

/// Dense row-major matrix over GF(p) or the rationals. All arithmetic is
/// exact; GF(p) entries are stored as machine words, rational entries as
/// shared canonical fractions.
class Matrix {
public:
    Matrix() = default;
    Matrix(FieldSpec field, std::size_t rows, std::size_t cols);  // zero matrix
    static Matrix identity(FieldSpec field, std::size_t n);
    static Matrix from_ints(FieldSpec field, std::size_t rows, std::size_t cols,
                            const std::vector<long long>& entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldSpec& field() const { return field_; }

    Scalar get(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, const Scalar& v);
    bool is_zero() const;

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix scaled(const Scalar& c) const;
    Matrix transposed() const;

    /// Stack columns side by side (same row count).
    static Matrix hstack(const Matrix& a, const Matrix& b);
    /// Stack rows (same column count).
    static Matrix vstack(const Matrix& a, const Matrix& b);
    /// Keep the listed columns, in order.
    Matrix select_columns(const std::vector<std::size_t>& idx) const;
    Matrix select_rows(const std::vector<std::size_t>& idx) const;
    std::vector<Scalar> column(std::size_t j) const;
    void set_column(std::size_t j, const std::vector<Scalar>& v);

    /// Reduced row echelon form with the deterministic pivot rule: columns
    /// scanned left to right, first nonzero row from the top.
    RrefResult rref() const;

    /// Columns form a basis of the null space; cols() - rank of them.
    Matrix kernel_basis() const;

    /// Solve this * X = rhs; nullopt when some rhs column is outside the
    /// column space. Throws InputError on a row-count mismatch.
    std::optional<Matrix> solve(const Matrix& rhs) const;

    std::size_t rank() const;

    bool operator==(const Matrix& o) const;

private:
    FieldSpec field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::uint64_t> fp_;   // used when characteristic > 0
    std::vector<Rational> rat_;       // used when characteristic == 0

    void check_same_field(const Matrix& o) const;
};

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivot_columns;
    std::size_t rank = 0;
};

/// Apply matrix to a coordinate vector.
std::vector<Scalar> mat_apply(const Matrix& m, const std::vector<Scalar>& v);

/// A reusable "reduce modulo a subspace" view. Rows of the internal rref
/// span the subspace; reduce() maps any vector to its canonical
/// representative supported off the pivot coordinates.
class SubspaceReducer {
public:
    SubspaceReducer(FieldSpec field, std::size_t ambient_dim);  // zero subspace
    /// Subspace spanned by the *columns* of span.
    explicit SubspaceReducer(const Matrix& span_columns);

    std::size_t ambient_dim() const { return dim_; }
    std::size_t subspace_dim() const { return basis_.rows(); }
    const std::vector<std::size_t>& pivot_columns() const { return pivots_; }

    std::vector<Scalar> reduce(std::vector<Scalar> v) const;
    bool contains(const std::vector<Scalar>& v) const;

private:
    FieldSpec field_;
    std::size_t dim_;
    Matrix basis_;  // rref rows spanning the subspace
    std::vector<std::size_t> pivots_;
};

}  // namespace qpdcalc
