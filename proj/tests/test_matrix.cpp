#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qpdcalc/matrix.hpp"

using namespace qpdcalc;

namespace {

Matrix random_matrix(FieldSpec f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    Matrix m(f, rows, cols);
    std::uniform_int_distribution<long long> d(-20, 20);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, Scalar::of_int(f, d(rng)));
    return m;
}

// Independent rank oracle: column elimination instead of row reduction.
std::size_t rank_by_column_elimination(Matrix m) {
    std::size_t rank = 0;
    std::size_t rows = m.rows(), cols = m.cols();
    std::size_t c = 0;
    for (std::size_t r = 0; r < rows && c < cols; ++r) {
        std::size_t piv = cols;
        for (std::size_t j = c; j < cols; ++j)
            if (!m.get(r, j).is_zero()) { piv = j; break; }
        if (piv == cols) continue;
        for (std::size_t i = 0; i < rows; ++i) {
            Scalar tmp = m.get(i, c);
            m.set(i, c, m.get(i, piv));
            m.set(i, piv, tmp);
        }
        Scalar inv = m.get(r, c).inverse();
        for (std::size_t j = c + 1; j < cols; ++j) {
            Scalar f = m.get(r, j) * inv;
            if (f.is_zero()) continue;
            for (std::size_t i = 0; i < rows; ++i) m.set(i, j, m.get(i, j) - m.get(i, c) * f);
        }
        ++rank;
        ++c;
    }
    return rank;
}

}  // namespace

TEST_CASE("rref identity") {
    FieldSpec f = gf(101);
    Matrix id = Matrix::identity(f, 2);
    auto r = id.rref();
    CHECK(r.reduced == id);
    CHECK(r.pivot_columns == std::vector<std::size_t>{0, 1});
    CHECK(r.rank == 2);
}

TEST_CASE("rref dependent rows over GF(101)") {
    FieldSpec f = gf(101);
    Matrix m = Matrix::from_ints(f, 2, 2, {1, 2, 2, 4});
    auto r = m.rref();
    CHECK(r.rank == 1);
    CHECK(r.reduced == Matrix::from_ints(f, 2, 2, {1, 2, 0, 0}));
}

TEST_CASE("rref is idempotent") {
    std::mt19937_64 rng(7);
    for (FieldSpec f : {gf(101), rationals()}) {
        Matrix m = random_matrix(f, 8, 11, rng);
        auto r1 = m.rref();
        auto r2 = r1.reduced.rref();
        CHECK(r1.reduced == r2.reduced);
    }
}

TEST_CASE("rank equals rank of transpose on random 20x30") {
    std::mt19937_64 rng(42);
    FieldSpec f = gf(101);
    Matrix m = random_matrix(f, 20, 30, rng);
    CHECK(m.rank() == rank_by_column_elimination(m));
    CHECK(m.rank() == m.transposed().rank());
}

TEST_CASE("kernel basics") {
    FieldSpec f = gf(101);
    CHECK(Matrix::identity(f, 3).kernel_basis().cols() == 0);
    Matrix z(f, 3, 3);
    Matrix k = z.kernel_basis();
    CHECK(k.cols() == 3);
    CHECK(k == Matrix::identity(f, 3));

    Matrix row = Matrix::from_ints(f, 1, 2, {1, 1});
    Matrix kb = row.kernel_basis();
    REQUIRE(kb.cols() == 1);
    // spans (1,-1) up to scalar
    Scalar a = kb.get(0, 0), b = kb.get(1, 0);
    CHECK(a == b.negated());
    CHECK_FALSE(a.is_zero());
}

TEST_CASE("m * kernel_basis(m) == 0 and rank-nullity, 100 random per field") {
    std::mt19937_64 rng(2024);
    for (FieldSpec f : {gf(101), gf(5), rationals()}) {
        int cases = f.is_rational() ? 30 : 100;  // rationals are slower, same property
        for (int t = 0; t < cases; ++t) {
            std::size_t rows = 1 + (rng() % 8), cols = 1 + (rng() % 8);
            Matrix m = random_matrix(f, rows, cols, rng);
            Matrix k = m.kernel_basis();
            CHECK((m * k).is_zero());
            CHECK(m.rank() + k.cols() == cols);
        }
    }
}

TEST_CASE("solve") {
    FieldSpec f = gf(101);
    Matrix id = Matrix::identity(f, 4);
    Matrix b = Matrix::from_ints(f, 4, 1, {3, 1, 4, 1});
    auto x = id.solve(b);
    REQUIRE(x.has_value());
    CHECK(*x == b);

    Matrix a = Matrix::from_ints(f, 2, 1, {1, 0});
    Matrix rhs = Matrix::from_ints(f, 2, 1, {0, 1});
    CHECK_FALSE(a.solve(rhs).has_value());

    CHECK_THROWS_AS(a.solve(Matrix::from_ints(f, 3, 1, {1, 2, 3})), InputError);

    // consistent random system: residual must be exactly zero
    std::mt19937_64 rng(9);
    for (int t = 0; t < 20; ++t) {
        Matrix m = random_matrix(f, 6, 4, rng);
        Matrix x0 = random_matrix(f, 4, 2, rng);
        Matrix rhs2 = m * x0;
        auto sol = m.solve(rhs2);
        REQUIRE(sol.has_value());
        CHECK((m * *sol - rhs2).is_zero());
    }
}

TEST_CASE("rational elimination stays canonical") {
    FieldSpec f = rationals();
    Matrix m(f, 2, 2);
    m.set(0, 0, Scalar::of_fraction(f, 1, 2));
    m.set(0, 1, Scalar::of_fraction(f, 1, 3));
    m.set(1, 0, Scalar::of_fraction(f, 1, 5));
    m.set(1, 1, Scalar::of_fraction(f, 1, 7));
    auto r = m.rref();
    CHECK(r.rank == 2);
    CHECK(r.reduced == Matrix::identity(f, 2));
}

TEST_CASE("subspace reducer") {
    FieldSpec f = gf(101);
    Matrix span = Matrix::from_ints(f, 3, 2, {1, 0, 0, 1, 1, 1});  // columns span a plane
    SubspaceReducer red(span);
    CHECK(red.subspace_dim() == 2);
    CHECK(red.contains(span.column(0)));
    std::vector<Scalar> v{Scalar::of_int(f, 5), Scalar::of_int(f, 3), Scalar::of_int(f, 8)};
    CHECK(red.contains(v));  // 5*(1,0,1) + 3*(0,1,1)
    v[2] = Scalar::of_int(f, 9);
    CHECK_FALSE(red.contains(v));
}

TEST_CASE("field validation") {
    CHECK_THROWS_AS(gf(100), InputError);
    CHECK_NOTHROW(gf(2));
    CHECK_NOTHROW(gf((1ull << 61) - 1));  // Mersenne prime
    CHECK_THROWS_AS(gf(1ull << 61), InputError);
}
