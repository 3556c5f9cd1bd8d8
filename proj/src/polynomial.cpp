#include "qpdcalc/polynomial.hpp"

#include <algorithm>
#include <cctype>

namespace qpdcalc {

unsigned Monomial::degree() const {
    unsigned d = 0;
    for (auto x : e) d += x;
    return d;
}

bool Monomial::is_one() const {
    return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
}

bool Monomial::divides(const Monomial& m) const {
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] > m.e[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& m) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += m.e[i];
    return r;
}

Monomial Monomial::divided_by(const Monomial& m) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] -= m.e[i];
    return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = std::max(a.e[i], b.e[i]);
    return r;
}

bool mono_less(const Monomial& a, const Monomial& b, MonomialOrder ord) {
    if (ord == MonomialOrder::Lex) {
        for (std::size_t i = 0; i < a.e.size(); ++i)
            if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
        return false;
    }
    // degrevlex: by total degree, ties broken by the reversed exponent list,
    // larger exponent at the last differing variable means smaller monomial
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    for (std::size_t i = a.e.size(); i-- > 0;)
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
    return false;
}

std::optional<std::size_t> PolyContext::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return i;
    return std::nullopt;
}

Polynomial Polynomial::zero() { return Polynomial(); }

Polynomial Polynomial::constant(const PolyContext& ctx, const Scalar& c) {
    return term(ctx, Monomial(ctx.nvars()), c);
}

Polynomial Polynomial::variable(const PolyContext& ctx, std::size_t i) {
    Monomial m(ctx.nvars());
    m.e[i] = 1;
    return term(ctx, std::move(m), Scalar::one(ctx.field));
}

Polynomial Polynomial::term(const PolyContext& ctx, Monomial m, Scalar c) {
    Polynomial p;
    if (m.nvars() != ctx.nvars()) throw InputError("monomial arity mismatch");
    if (!c.is_zero()) p.terms_.push_back(Term{std::move(m), std::move(c)});
    return p;
}

const Term& Polynomial::leading(const PolyContext&) const {
    if (terms_.empty()) throw ComputeError("leading term of the zero polynomial");
    return terms_.front();
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono.degree()));
    return d;
}

int Polynomial::min_degree() const {
    if (terms_.empty()) return -1;
    int d = static_cast<int>(terms_.front().mono.degree());
    for (const auto& t : terms_) d = std::min(d, static_cast<int>(t.mono.degree()));
    return d;
}

bool Polynomial::is_homogeneous() const {
    if (terms_.empty()) return true;
    unsigned d = terms_.front().mono.degree();
    return std::all_of(terms_.begin(), terms_.end(),
                       [d](const Term& t) { return t.mono.degree() == d; });
}

std::optional<int> Polynomial::homogeneous_degree() const {
    if (terms_.empty() || !is_homogeneous()) return std::nullopt;
    return static_cast<int>(terms_.front().mono.degree());
}

Scalar Polynomial::coefficient_of(const Monomial& m, const FieldSpec& f) const {
    for (const auto& t : terms_)
        if (t.mono == m) return t.coeff;
    return Scalar::zero(f);
}

Scalar Polynomial::constant_coefficient(const FieldSpec& f) const {
    for (const auto& t : terms_)
        if (t.mono.is_one()) return t.coeff;
    return Scalar::zero(f);
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (!(terms_[i].mono == o.terms_[i].mono) || terms_[i].coeff != o.terms_[i].coeff)
            return false;
    return true;
}

Polynomial Polynomial::from_terms(const PolyContext& ctx, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
        return mono_less(b.mono, a.mono, ctx.order);  // descending
    });
    Polynomial p;
    for (auto& t : terms) {
        if (t.mono.nvars() != ctx.nvars()) throw InputError("monomial arity mismatch");
        if (t.coeff.is_zero()) continue;
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coeff = p.terms_.back().coeff + t.coeff;
            if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
        } else {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

Polynomial poly_add(const PolyContext& ctx, const Polynomial& a, const Polynomial& b) {
    std::vector<Term> merged;
    merged.reserve(a.terms().size() + b.terms().size());
    for (const auto& t : a.terms()) merged.push_back(t);
    for (const auto& t : b.terms()) merged.push_back(t);
    return Polynomial::from_terms(ctx, std::move(merged));
}

Polynomial poly_neg(const PolyContext& ctx, const Polynomial& a) {
    std::vector<Term> out;
    out.reserve(a.terms().size());
    for (const auto& t : a.terms()) out.push_back(Term{t.mono, t.coeff.negated()});
    return Polynomial::from_terms(ctx, std::move(out));
}

Polynomial poly_sub(const PolyContext& ctx, const Polynomial& a, const Polynomial& b) {
    return poly_add(ctx, a, poly_neg(ctx, b));
}

Polynomial poly_mul(const PolyContext& ctx, const Polynomial& a, const Polynomial& b) {
    std::vector<Term> out;
    out.reserve(a.terms().size() * b.terms().size());
    for (const auto& s : a.terms())
        for (const auto& t : b.terms()) out.push_back(Term{s.mono * t.mono, s.coeff * t.coeff});
    return Polynomial::from_terms(ctx, std::move(out));
}

Polynomial poly_scale(const PolyContext& ctx, const Polynomial& a, const Scalar& c) {
    if (c.is_zero()) return Polynomial::zero();
    std::vector<Term> out;
    out.reserve(a.terms().size());
    for (const auto& t : a.terms()) out.push_back(Term{t.mono, t.coeff * c});
    return Polynomial::from_terms(ctx, std::move(out));
}

Polynomial poly_mul_term(const PolyContext& ctx, const Polynomial& a, const Monomial& m,
                         const Scalar& c) {
    if (c.is_zero()) return Polynomial::zero();
    std::vector<Term> out;
    out.reserve(a.terms().size());
    for (const auto& t : a.terms()) out.push_back(Term{t.mono * m, t.coeff * c});
    return Polynomial::from_terms(ctx, std::move(out));
}

namespace {

struct Parser {
    const std::string& s;
    const PolyContext& ctx;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError("parse error at byte " + std::to_string(pos) + ": " + msg);
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eof() {
        skip_ws();
        return pos >= s.size();
    }

    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    unsigned long long parse_nat() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            fail("expected a number");
        unsigned long long v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + static_cast<unsigned long long>(s[pos] - '0');
            if (v > (1ull << 62)) fail("number too large");
            ++pos;
        }
        return v;
    }

    // Greedy variable match: longest declared name starting here.
    std::optional<std::size_t> try_var() {
        skip_ws();
        std::optional<std::size_t> best;
        std::size_t best_len = 0;
        for (std::size_t i = 0; i < ctx.vars.size(); ++i) {
            const std::string& v = ctx.vars[i];
            if (v.size() > best_len && s.compare(pos, v.size(), v) == 0) {
                best = i;
                best_len = v.size();
            }
        }
        if (best) pos += best_len;
        return best;
    }

    Polynomial parse_factor() {
        auto vi = try_var();
        if (!vi) {
            skip_ws();
            if (pos < s.size() &&
                (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                fail("unknown variable name");
            fail("expected a variable");
        }
        Monomial m(ctx.nvars());
        if (accept('^')) {
            unsigned long long n = parse_nat();
            if (n > 100000) fail("exponent too large");
            m.e[*vi] = static_cast<std::uint32_t>(n);
        } else {
            m.e[*vi] = 1;
        }
        return Polynomial::term(ctx, std::move(m), Scalar::one(ctx.field));
    }

    Polynomial parse_term() {
        skip_ws();
        Polynomial acc;
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            unsigned long long n = parse_nat();
            Scalar c = Scalar::of_int(ctx.field, static_cast<long long>(n));
            if (accept('/')) {
                if (ctx.field.characteristic != 0)
                    fail("rational coefficients need characteristic 0");
                unsigned long long d = parse_nat();
                if (d == 0) fail("zero denominator");
                c = Scalar::of_fraction(ctx.field, static_cast<long long>(n), d);
            }
            acc = Polynomial::constant(ctx, c);
            while (accept('*')) acc = poly_mul(ctx, acc, parse_factor());
            return acc;
        }
        acc = parse_factor();
        while (accept('*')) acc = poly_mul(ctx, acc, parse_factor());
        return acc;
    }

    Polynomial parse() {
        // a leading sign is tolerated so canonical prints re-parse
        bool lead_neg = accept('-');
        if (!lead_neg) accept('+');
        Polynomial acc = parse_term();
        if (lead_neg) acc = poly_neg(ctx, acc);
        while (!eof()) {
            if (accept('+')) {
                acc = poly_add(ctx, acc, parse_term());
            } else if (accept('-')) {
                acc = poly_sub(ctx, acc, parse_term());
            } else {
                fail("expected '+' or '-'");
            }
        }
        return acc;
    }
};

}  // namespace

Polynomial parse_poly(const std::string& text, const PolyContext& ctx) {
    Parser p{text, ctx};
    return p.parse();
}

std::string mono_str(const Monomial& m, const PolyContext& ctx) {
    std::string out;
    for (std::size_t i = 0; i < m.e.size(); ++i) {
        if (m.e[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += ctx.vars[i];
        if (m.e[i] > 1) out += "^" + std::to_string(m.e[i]);
    }
    return out.empty() ? "1" : out;
}

std::string poly_str(const Polynomial& p, const PolyContext& ctx) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : p.terms()) {
        std::string cs = t.coeff.str();
        bool neg = !cs.empty() && cs[0] == '-';
        std::string mag = neg ? cs.substr(1) : cs;
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (t.mono.is_one()) {
            out += mag;
        } else if (mag == "1") {
            out += mono_str(t.mono, ctx);
        } else {
            out += mag + "*" + mono_str(t.mono, ctx);
        }
        first = false;
    }
    return out;
}

}  // namespace qpdcalc
