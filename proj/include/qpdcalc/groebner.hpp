#pragma once

#include <vector>

#include "qpdcalc/polynomial.hpp"

namespace qpdcalc {

/// Reduced Groebner basis: generators monic, no term of one divisible by the
/// leading term of another; every S-polynomial reduces to zero.
struct GroebnerBasis {
    std::vector<Polynomial> gens;
    MonomialOrder order = MonomialOrder::DegRevLex;
};

struct BuchbergerOptions {
    int degree_cap = 30;        // fail instead of truncating past this
    bool pair_criteria = false; // coprime-leading-term pair elimination
};

class DegreeCapExceeded : public ComputeError {
public:
    explicit DegreeCapExceeded(int cap)
        : ComputeError("Groebner computation exceeded degree cap " + std::to_string(cap)) {}
};

class NotZeroDimensional : public ComputeError {
public:
    NotZeroDimensional() : ComputeError("ideal is not zero-dimensional") {}
};

/// Buchberger's algorithm; returns the reduced basis. Accepts an empty or
/// all-zero generator list (the zero ideal).
GroebnerBasis buchberger(const PolyContext& ctx, const std::vector<Polynomial>& gens,
                         const BuchbergerOptions& opts = {});

/// Full normal form: no term of the result is divisible by any leading term.
Polynomial normal_form(const PolyContext& ctx, const Polynomial& f, const GroebnerBasis& gb);

/// True when every variable has a pure power among the leading terms.
bool is_zero_dimensional(const PolyContext& ctx, const GroebnerBasis& gb);

/// All standard monomials; throws NotZeroDimensional for infinite quotients.
/// Sorted ascending in the context order.
std::vector<Monomial> standard_monomials_all(const PolyContext& ctx, const GroebnerBasis& gb);

/// Standard monomials of one total degree, sorted ascending in the order.
std::vector<Monomial> standard_monomials_degree(const PolyContext& ctx, const GroebnerBasis& gb,
                                                unsigned degree);

}  // namespace qpdcalc
