#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpdcalc/field.hpp"

namespace qpdcalc {

/// Exponent vector; the length is fixed by the ambient variable context.
struct Monomial {
    std::vector<std::uint32_t> e;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e(nvars, 0) {}

    std::size_t nvars() const { return e.size(); }
    unsigned degree() const;
    bool is_one() const;
    bool divides(const Monomial& m) const;
    Monomial operator*(const Monomial& m) const;
    Monomial divided_by(const Monomial& m) const;  // caller guarantees divisibility
    static Monomial lcm(const Monomial& a, const Monomial& b);
    bool operator==(const Monomial&) const = default;
    /// Container ordering only; monomial orders live in mono_less.
    auto operator<=>(const Monomial& o) const { return e <=> o.e; }
};

enum class MonomialOrder { DegRevLex, Lex };

/// Strict "a < b" in the given order.
bool mono_less(const Monomial& a, const Monomial& b, MonomialOrder ord);

/// Variable context shared by all polynomial arithmetic: coefficient field,
/// declared variable names, monomial order.
struct PolyContext {
    FieldSpec field;
    std::vector<std::string> vars;
    MonomialOrder order = MonomialOrder::DegRevLex;

    std::size_t nvars() const { return vars.size(); }
    std::optional<std::size_t> var_index(const std::string& name) const;
    bool operator==(const PolyContext&) const = default;
};

struct Term {
    Monomial mono;
    Scalar coeff;
};

/// Terms kept strictly descending in the context order, no zero coefficients.
class Polynomial {
public:
    Polynomial() = default;

    static Polynomial zero();
    static Polynomial constant(const PolyContext& ctx, const Scalar& c);
    static Polynomial variable(const PolyContext& ctx, std::size_t i);
    static Polynomial term(const PolyContext& ctx, Monomial m, Scalar c);

    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    const Term& leading(const PolyContext&) const;  // throws on zero

    /// Max total degree among terms; -1 for the zero polynomial.
    int degree() const;
    /// Min total degree among terms; -1 for the zero polynomial.
    int min_degree() const;
    bool is_homogeneous() const;
    /// Degree when homogeneous and nonzero, else nullopt (0 poly: nullopt).
    std::optional<int> homogeneous_degree() const;

    Scalar coefficient_of(const Monomial& m, const FieldSpec& f) const;
    /// Coefficient of the constant monomial.
    Scalar constant_coefficient(const FieldSpec& f) const;

    bool operator==(const Polynomial& o) const;

    /// Builds from unsorted term data, combining duplicates, dropping zeros.
    static Polynomial from_terms(const PolyContext& ctx, std::vector<Term> terms);

private:
    std::vector<Term> terms_;
};

Polynomial poly_add(const PolyContext& ctx, const Polynomial& a, const Polynomial& b);
Polynomial poly_sub(const PolyContext& ctx, const Polynomial& a, const Polynomial& b);
Polynomial poly_neg(const PolyContext& ctx, const Polynomial& a);
Polynomial poly_mul(const PolyContext& ctx, const Polynomial& a, const Polynomial& b);
Polynomial poly_scale(const PolyContext& ctx, const Polynomial& a, const Scalar& c);
Polynomial poly_mul_term(const PolyContext& ctx, const Polynomial& a, const Monomial& m,
                         const Scalar& c);

/// Parse per the descriptor grammar:
///   poly  := term (('+'|'-') term)*
///   term  := coeff ('*' factor)* | factor ('*' factor)*
///   factor:= var ('^' nat)?
///   coeff := integer | integer '/' nat
/// Whitespace is insignificant; variables are the declared names, matched
/// greedily. Throws InputError with a byte offset on malformed input.
Polynomial parse_poly(const std::string& text, const PolyContext& ctx);

/// Canonical printing; parse(print(f)) == f.
std::string poly_str(const Polynomial& p, const PolyContext& ctx);
std::string mono_str(const Monomial& m, const PolyContext& ctx);

}  // namespace qpdcalc
