#include "qpdcalc/matrix.hpp"

#include <algorithm>

namespace qpdcalc {

namespace {

// Elimination kernels shared by both coefficient representations.
struct FpOps {
    std::uint64_t p;
    using Elem = std::uint64_t;
    bool is_zero(Elem a) const { return a == 0; }
    Elem zero() const { return 0; }
    Elem add(Elem a, Elem b) const { return detail::fp_add(a, b, p); }
    Elem sub(Elem a, Elem b) const { return detail::fp_sub(a, b, p); }
    Elem mul(Elem a, Elem b) const { return detail::fp_mul(a, b, p); }
    Elem inv(Elem a) const { return detail::fp_inv(a, p); }
};

struct RatOps {
    using Elem = Rational;
    bool is_zero(const Elem& a) const { return a.is_zero(); }
    Elem zero() const { return Rational(); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem inv(const Elem& a) const { return a.inverse(); }
};

template <class Ops>
void rref_impl(const Ops& ops, std::vector<typename Ops::Elem>& a, std::size_t rows,
               std::size_t cols, std::vector<std::size_t>& pivots) {
    pivots.clear();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (!ops.is_zero(a[i * cols + c])) { piv = i; break; }
        }
        if (piv == rows) continue;
        if (piv != r) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
        }
        auto inv = ops.inv(a[r * cols + c]);
        for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = ops.mul(a[r * cols + j], inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            auto f = a[i * cols + c];
            if (ops.is_zero(f)) continue;
            for (std::size_t j = c; j < cols; ++j)
                a[i * cols + j] = ops.sub(a[i * cols + j], ops.mul(f, a[r * cols + j]));
        }
        pivots.push_back(c);
        ++r;
    }
}

}  // namespace

Matrix::Matrix(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols) {
    if (field_.is_rational())
        rat_.assign(rows * cols, Rational());
    else
        fp_.assign(rows * cols, 0);
}

Matrix Matrix::identity(FieldSpec field, std::size_t n) {
    Matrix m(field, n, n);
    Scalar one = Scalar::one(field);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, one);
    return m;
}

Matrix Matrix::from_ints(FieldSpec field, std::size_t rows, std::size_t cols,
                         const std::vector<long long>& entries) {
    if (entries.size() != rows * cols) throw InputError("entry count mismatch");
    Matrix m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.set(i, j, Scalar::of_int(field, entries[i * cols + j]));
    return m;
}

Scalar Matrix::get(std::size_t i, std::size_t j) const {
    if (field_.is_rational()) return Scalar::of_rational(rat_[i * cols_ + j]);
    return Scalar::of_fp(field_, fp_[i * cols_ + j]);
}

void Matrix::set(std::size_t i, std::size_t j, const Scalar& v) {
    if (v.field() != field_) throw InputError("scalar field mismatch");
    if (field_.is_rational())
        rat_[i * cols_ + j] = v.rational_value();
    else
        fp_[i * cols_ + j] = v.fp_value();
}

bool Matrix::is_zero() const {
    if (field_.is_rational())
        return std::all_of(rat_.begin(), rat_.end(), [](const Rational& r) { return r.is_zero(); });
    return std::all_of(fp_.begin(), fp_.end(), [](std::uint64_t v) { return v == 0; });
}

void Matrix::check_same_field(const Matrix& o) const {
    if (field_ != o.field_) throw InputError("matrix field mismatch");
}

Matrix Matrix::operator+(const Matrix& o) const {
    check_same_field(o);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("shape mismatch in matrix add");
    Matrix m(field_, rows_, cols_);
    if (field_.is_rational()) {
        for (std::size_t k = 0; k < rat_.size(); ++k) m.rat_[k] = rat_[k] + o.rat_[k];
    } else {
        for (std::size_t k = 0; k < fp_.size(); ++k)
            m.fp_[k] = detail::fp_add(fp_[k], o.fp_[k], field_.characteristic);
    }
    return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
    check_same_field(o);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("shape mismatch in matrix sub");
    Matrix m(field_, rows_, cols_);
    if (field_.is_rational()) {
        for (std::size_t k = 0; k < rat_.size(); ++k) m.rat_[k] = rat_[k] - o.rat_[k];
    } else {
        for (std::size_t k = 0; k < fp_.size(); ++k)
            m.fp_[k] = detail::fp_sub(fp_[k], o.fp_[k], field_.characteristic);
    }
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    check_same_field(o);
    if (cols_ != o.rows_) throw InputError("shape mismatch in matrix mul");
    Matrix m(field_, rows_, o.cols_);
    if (field_.is_rational()) {
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rational& a = rat_[i * cols_ + k];
                if (a.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const Rational& b = o.rat_[k * o.cols_ + j];
                    if (b.is_zero()) continue;
                    m.rat_[i * o.cols_ + j] = m.rat_[i * o.cols_ + j] + a * b;
                }
            }
    } else {
        std::uint64_t p = field_.characteristic;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                std::uint64_t a = fp_[i * cols_ + k];
                if (a == 0) continue;
                const std::uint64_t* brow = &o.fp_[k * o.cols_];
                std::uint64_t* mrow = &m.fp_[i * o.cols_];
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    if (brow[j] == 0) continue;
                    mrow[j] = detail::fp_add(mrow[j], detail::fp_mul(a, brow[j], p), p);
                }
            }
    }
    return m;
}

Matrix Matrix::scaled(const Scalar& c) const {
    Matrix m(field_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.set(i, j, get(i, j) * c);
    return m;
}

Matrix Matrix::transposed() const {
    Matrix m(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.set(j, i, get(i, j));
    return m;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
    a.check_same_field(b);
    if (a.rows_ != b.rows_) throw InputError("hstack row mismatch");
    Matrix m(a.field_, a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t j = 0; j < a.cols_; ++j) m.set(i, j, a.get(i, j));
        for (std::size_t j = 0; j < b.cols_; ++j) m.set(i, a.cols_ + j, b.get(i, j));
    }
    return m;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
    a.check_same_field(b);
    if (a.cols_ != b.cols_) throw InputError("vstack column mismatch");
    Matrix m(a.field_, a.rows_ + b.rows_, a.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) m.set(i, j, a.get(i, j));
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) m.set(a.rows_ + i, j, b.get(i, j));
    return m;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& idx) const {
    Matrix m(field_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) m.set(i, j, get(i, idx[j]));
    return m;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
    Matrix m(field_, idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.set(i, j, get(idx[i], j));
    return m;
}

std::vector<Scalar> Matrix::column(std::size_t j) const {
    std::vector<Scalar> v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back(get(i, j));
    return v;
}

void Matrix::set_column(std::size_t j, const std::vector<Scalar>& v) {
    if (v.size() != rows_) throw InputError("column length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) set(i, j, v[i]);
}

RrefResult Matrix::rref() const {
    RrefResult out;
    out.reduced = *this;
    if (field_.is_rational()) {
        RatOps ops;
        rref_impl(ops, out.reduced.rat_, rows_, cols_, out.pivot_columns);
    } else {
        FpOps ops{field_.characteristic};
        rref_impl(ops, out.reduced.fp_, rows_, cols_, out.pivot_columns);
    }
    out.rank = out.pivot_columns.size();
    return out;
}

Matrix Matrix::kernel_basis() const {
    RrefResult r = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : r.pivot_columns) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < cols_; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Matrix k(field_, cols_, free_cols.size());
    Scalar one = Scalar::one(field_);
    for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
        std::size_t c = free_cols[fi];
        k.set(c, fi, one);
        for (std::size_t i = 0; i < r.rank; ++i) {
            Scalar v = r.reduced.get(i, c);
            if (!v.is_zero()) k.set(r.pivot_columns[i], fi, v.negated());
        }
    }
    return k;
}

std::optional<Matrix> Matrix::solve(const Matrix& rhs) const {
    check_same_field(rhs);
    if (rhs.rows() != rows_) throw InputError("solve: row-count mismatch");
    Matrix aug = hstack(*this, rhs);
    RrefResult r = aug.rref();
    for (std::size_t c : r.pivot_columns)
        if (c >= cols_) return std::nullopt;
    Matrix x(field_, cols_, rhs.cols());
    for (std::size_t i = 0; i < r.pivot_columns.size(); ++i) {
        std::size_t pc = r.pivot_columns[i];
        for (std::size_t j = 0; j < rhs.cols(); ++j) x.set(pc, j, r.reduced.get(i, cols_ + j));
    }
    return x;
}

std::size_t Matrix::rank() const { return rref().rank; }

bool Matrix::operator==(const Matrix& o) const {
    if (field_ != o.field_ || rows_ != o.rows_ || cols_ != o.cols_) return false;
    if (field_.is_rational()) {
        for (std::size_t k = 0; k < rat_.size(); ++k)
            if (!(rat_[k] == o.rat_[k])) return false;
        return true;
    }
    return fp_ == o.fp_;
}

std::vector<Scalar> mat_apply(const Matrix& m, const std::vector<Scalar>& v) {
    if (v.size() != m.cols()) throw InputError("apply: dimension mismatch");
    std::vector<Scalar> out(m.rows(), Scalar::zero(m.field()));
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (v[j].is_zero()) continue;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            Scalar a = m.get(i, j);
            if (!a.is_zero()) out[i] = out[i] + a * v[j];
        }
    }
    return out;
}

SubspaceReducer::SubspaceReducer(FieldSpec field, std::size_t ambient_dim)
    : field_(field), dim_(ambient_dim), basis_(field, 0, ambient_dim) {}

SubspaceReducer::SubspaceReducer(const Matrix& span_columns)
    : field_(span_columns.field()), dim_(span_columns.rows()) {
    RrefResult r = span_columns.transposed().rref();
    pivots_ = r.pivot_columns;
    std::vector<std::size_t> keep(r.rank);
    for (std::size_t i = 0; i < r.rank; ++i) keep[i] = i;
    basis_ = r.reduced.select_rows(keep);
}

std::vector<Scalar> SubspaceReducer::reduce(std::vector<Scalar> v) const {
    if (v.size() != dim_) throw InputError("reduce: dimension mismatch");
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
        Scalar c = v[pivots_[i]];
        if (c.is_zero()) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            Scalar b = basis_.get(i, j);
            if (!b.is_zero()) v[j] = v[j] - c * b;
        }
    }
    return v;
}

bool SubspaceReducer::contains(const std::vector<Scalar>& v) const {
    auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](const Scalar& s) { return s.is_zero(); });
}

}  // namespace qpdcalc
