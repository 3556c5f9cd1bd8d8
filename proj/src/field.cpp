#include "qpdcalc/field.hpp"

namespace qpdcalc {

namespace {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    // deterministic Miller-Rabin for 64-bit inputs
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = detail::fp_pow(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = detail::fp_mul(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

}  // namespace

void FieldSpec::validate() const {
    if (characteristic == 0) return;
    if (characteristic >= (1ull << 61))
        throw InputError("field characteristic must be below 2^61");
    if (!is_prime_u64(characteristic))
        throw InputError("field characteristic " + std::to_string(characteristic) + " is not prime");
}

FieldSpec rationals() { return FieldSpec{0}; }

FieldSpec gf(std::uint64_t p) {
    FieldSpec f{p};
    f.validate();
    if (p == 0) throw InputError("gf() needs a positive prime");
    return f;
}

Rational::Rational(mpq_class v) {
    v.canonicalize();
    if (v != 0) v_ = std::make_shared<const mpq_class>(std::move(v));
}

Rational::Rational(long num, unsigned long den) : Rational(mpq_class(num, den)) {}

const mpq_class& Rational::value() const {
    static const mpq_class zero_q(0);
    return v_ ? *v_ : zero_q;
}

Rational Rational::operator+(const Rational& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    return Rational(mpq_class(value() + o.value()));
}

Rational Rational::operator-(const Rational& o) const {
    if (o.is_zero()) return *this;
    return Rational(mpq_class(value() - o.value()));
}

Rational Rational::operator*(const Rational& o) const {
    if (is_zero() || o.is_zero()) return Rational();
    return Rational(mpq_class(value() * o.value()));
}

Rational Rational::negated() const {
    if (is_zero()) return *this;
    return Rational(mpq_class(-value()));
}

Rational Rational::inverse() const {
    if (is_zero()) throw ComputeError("division by zero");
    return Rational(mpq_class(1 / value()));
}

bool Rational::operator==(const Rational& o) const {
    if (is_zero() || o.is_zero()) return is_zero() == o.is_zero();
    return value() == o.value();
}

std::string Rational::str() const {
    if (is_zero()) return "0";
    return value().get_str();
}

namespace detail {

std::uint64_t fp_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = fp_mul(r, a, p);
        a = fp_mul(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p) {
    if (a == 0) throw ComputeError("division by zero in GF(p)");
    return fp_pow(a, p - 2, p);
}

}  // namespace detail

Scalar Scalar::zero(FieldSpec f) {
    Scalar s;
    s.field_ = f;
    return s;
}

Scalar Scalar::one(FieldSpec f) {
    Scalar s;
    s.field_ = f;
    if (f.is_rational())
        s.rat_ = Rational(1, 1);
    else
        s.fp_ = 1 % f.characteristic;
    return s;
}

Scalar Scalar::of_int(FieldSpec f, long long n) {
    Scalar s;
    s.field_ = f;
    if (f.is_rational()) {
        s.rat_ = Rational(mpq_class(static_cast<long>(n)));
    } else {
        long long m = n % static_cast<long long>(f.characteristic);
        if (m < 0) m += static_cast<long long>(f.characteristic);
        s.fp_ = static_cast<std::uint64_t>(m);
    }
    return s;
}

Scalar Scalar::of_fraction(FieldSpec f, long long num, unsigned long long den) {
    if (den == 0) throw InputError("zero denominator");
    if (f.is_rational()) {
        Scalar s;
        s.field_ = f;
        s.rat_ = Rational(mpq_class(static_cast<long>(num), static_cast<unsigned long>(den)));
        return s;
    }
    Scalar n = of_int(f, num);
    Scalar d = of_int(f, static_cast<long long>(den % f.characteristic));
    return n * d.inverse();
}

Scalar Scalar::of_fp(FieldSpec f, std::uint64_t reduced) {
    Scalar s;
    s.field_ = f;
    s.fp_ = reduced;
    return s;
}

Scalar Scalar::of_rational(Rational r) {
    Scalar s;
    s.field_ = rationals();
    s.rat_ = std::move(r);
    return s;
}

bool Scalar::is_zero() const {
    return field_.is_rational() ? rat_.is_zero() : fp_ == 0;
}

bool Scalar::is_one() const {
    return field_.is_rational() ? rat_ == Rational(1, 1) : fp_ == 1 % field_.characteristic;
}

void Scalar::check_same(const Scalar& o) const {
    if (field_ != o.field_) throw InputError("mixed-field scalar arithmetic");
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same(o);
    Scalar s;
    s.field_ = field_;
    if (field_.is_rational())
        s.rat_ = rat_ + o.rat_;
    else
        s.fp_ = detail::fp_add(fp_, o.fp_, field_.characteristic);
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_same(o);
    Scalar s;
    s.field_ = field_;
    if (field_.is_rational())
        s.rat_ = rat_ - o.rat_;
    else
        s.fp_ = detail::fp_sub(fp_, o.fp_, field_.characteristic);
    return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same(o);
    Scalar s;
    s.field_ = field_;
    if (field_.is_rational())
        s.rat_ = rat_ * o.rat_;
    else
        s.fp_ = detail::fp_mul(fp_, o.fp_, field_.characteristic);
    return s;
}

Scalar Scalar::negated() const {
    Scalar s;
    s.field_ = field_;
    if (field_.is_rational())
        s.rat_ = rat_.negated();
    else
        s.fp_ = detail::fp_neg(fp_, field_.characteristic);
    return s;
}

Scalar Scalar::inverse() const {
    Scalar s;
    s.field_ = field_;
    if (field_.is_rational())
        s.rat_ = rat_.inverse();
    else
        s.fp_ = detail::fp_inv(fp_, field_.characteristic);
    return s;
}

bool Scalar::operator==(const Scalar& o) const {
    if (field_ != o.field_) return false;
    return field_.is_rational() ? rat_ == o.rat_ : fp_ == o.fp_;
}

std::string Scalar::str() const {
    return field_.is_rational() ? rat_.str() : std::to_string(fp_);
}

}  // namespace qpdcalc
