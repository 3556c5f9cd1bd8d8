#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace qpdcalc {

/// Raised on malformed inputs: bad descriptors, parse errors, violated
/// preconditions that indicate user error rather than a computation outcome.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a computation cannot proceed (degree cap exceeded,
/// unstable truncation, regime mismatch, ...).
class ComputeError : public std::runtime_error {
public:
    explicit ComputeError(const std::string& what) : std::runtime_error(what) {}
};

/// Coefficient field: GF(p) for a prime p < 2^61, or the rationals (char 0).
struct FieldSpec {
    std::uint64_t characteristic = 0;

    bool is_rational() const { return characteristic == 0; }
    bool operator==(const FieldSpec&) const = default;

    /// Throws InputError unless characteristic is 0 or a prime < 2^61.
    void validate() const;
};

FieldSpec rationals();
FieldSpec gf(std::uint64_t p);

/// Immutable shared rational; null pointer encodes zero. Copies are free.
class Rational {
public:
    Rational() = default;
    explicit Rational(mpq_class v);
    Rational(long num, unsigned long den);

    bool is_zero() const { return v_ == nullptr; }
    const mpq_class& value() const;  // valid only when nonzero

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational negated() const;
    Rational inverse() const;  // throws on zero
    bool operator==(const Rational& o) const;

    std::string str() const;

private:
    std::shared_ptr<const mpq_class> v_;
};

namespace detail {

inline std::uint64_t fp_add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;  // p < 2^61 so no overflow
    return s >= p ? s - p : s;
}
inline std::uint64_t fp_sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}
inline std::uint64_t fp_neg(std::uint64_t a, std::uint64_t p) { return a == 0 ? 0 : p - a; }
inline std::uint64_t fp_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}
std::uint64_t fp_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p);

}  // namespace detail

/// An exact field element tagged with its field. GF(p) values live in a
/// machine word; rationals are shared immutable GMP values.
class Scalar {
public:
    Scalar() = default;  // zero of GF(2) placeholder; prefer the factories

    static Scalar zero(FieldSpec f);
    static Scalar one(FieldSpec f);
    static Scalar of_int(FieldSpec f, long long n);
    static Scalar of_fraction(FieldSpec f, long long num, unsigned long long den);
    static Scalar of_fp(FieldSpec f, std::uint64_t reduced);   // GF(p), value already in [0,p)
    static Scalar of_rational(Rational r);

    const FieldSpec& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar negated() const;
    Scalar inverse() const;  // throws ComputeError on zero
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::uint64_t fp_value() const { return fp_; }
    const Rational& rational_value() const { return rat_; }

    /// Canonical text: integer in [0,p) for GF(p); "n" or "n/d" for rationals.
    std::string str() const;

private:
    FieldSpec field_{2};
    std::uint64_t fp_ = 0;
    Rational rat_;

    void check_same(const Scalar& o) const;
};

}  // namespace qpdcalc
