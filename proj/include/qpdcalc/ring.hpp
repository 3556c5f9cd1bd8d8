#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "qpdcalc/groebner.hpp"
#include "qpdcalc/matrix.hpp"

namespace qpdcalc {

enum class Regime { Artinian, Graded };

class GeneratorInM : public InputError {
public:
    GeneratorInM() : InputError("ideal generator has a term of degree < 2") {}
};

class NonHomogeneous : public InputError {
public:
    NonHomogeneous() : InputError("graded regime requires homogeneous ideal generators") {}
};

class RegimeError : public ComputeError {
public:
    explicit RegimeError(const std::string& what) : ComputeError(what) {}
};

/// R = k[x_1..x_n]/I with Groebner normal forms. Artinian regime keeps the
/// full standard-monomial basis; Graded caches per-degree bases. Ideal
/// generators must lie in m^2, so edim R = n throughout.
class QuotientRing {
public:
    static std::shared_ptr<const QuotientRing> make(FieldSpec field,
                                                    std::vector<std::string> variables,
                                                    const std::vector<Polynomial>& ideal_gens,
                                                    Regime regime,
                                                    const BuchbergerOptions& opts = {});

    const PolyContext& ctx() const { return ctx_; }
    const FieldSpec& field() const { return ctx_.field; }
    std::size_t nvars() const { return ctx_.nvars(); }
    Regime regime() const { return regime_; }
    const GroebnerBasis& gb() const { return gb_; }
    const std::vector<Polynomial>& ideal_generators() const { return ideal_gens_; }

    bool is_artinian() const { return regime_ == Regime::Artinian; }
    std::size_t total_dim() const;                       // Artinian only
    const std::vector<Monomial>& basis() const;          // Artinian only
    std::vector<Monomial> basis_degree(int d) const;     // Graded (cached)
    /// All standard monomials of total degree <= hi (Graded) or the full
    /// basis (Artinian; hi ignored).
    std::vector<Monomial> basis_up_to(int hi) const;

    Polynomial nf(const Polynomial& f) const;
    /// Index of a standard monomial in the Artinian basis.
    std::size_t basis_index(const Monomial& m) const;

    /// Default truncation bound for graded computations:
    /// 2 * (max ideal generator degree, at least 1) + 6.
    int default_bound() const;

private:
    PolyContext ctx_;
    GroebnerBasis gb_;
    std::vector<Polynomial> ideal_gens_;
    Regime regime_;
    std::vector<Monomial> basis_;              // Artinian
    std::map<Monomial, std::size_t> index_;    // Artinian
    mutable std::map<int, std::vector<Monomial>> graded_cache_;
    mutable std::mutex cache_mutex_;

    QuotientRing() = default;
};

using RingPtr = std::shared_ptr<const QuotientRing>;

/// Multiplication-by-x_i operators on the k-basis, one matrix per variable.
/// Graded regime needs a bound; products past the bound truncate to zero.
std::vector<Matrix> variable_actions(const QuotientRing& r, std::optional<int> degree_bound);

/// Multiplication operator of an arbitrary ring element on the Artinian basis.
Matrix multiplication_operator(const QuotientRing& r, const Polynomial& elem);

/// k-basis of (0 : m), as normal-form polynomials. Artinian only.
std::vector<Polynomial> socle(const QuotientRing& r);

/// k-basis of {a in R : a*e = 0 for all listed e}. Artinian only.
std::vector<Polynomial> annihilator_ideal(const QuotientRing& r,
                                          const std::vector<Polynomial>& elements);

/// Coordinates of nf(f) in the Artinian basis.
std::vector<Scalar> ring_coords(const QuotientRing& r, const Polynomial& f);

/// Inverse of a unit in an Artinian ring.
Polynomial ring_unit_inverse(const QuotientRing& r, const Polynomial& u);

}  // namespace qpdcalc
