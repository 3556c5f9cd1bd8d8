#pragma once

#include "qpdcalc/carrier.hpp"

namespace qpdcalc {

class DSquareNonzero : public InputError {
public:
    explicit DSquareNonzero(int degree)
        : InputError("d o d is nonzero into homological degree " + std::to_string(degree)) {}
};

class NotAChainMap : public InputError {
public:
    NotAChainMap() : InputError("the given maps do not commute with the differentials") {}
};

/// Bounded complex of free R-modules ... -> F_{i+1} -> F_i -> ... given by
/// ranks, twists (Graded) and differential matrices with d o d = 0.
class FreeComplex {
public:
    FreeComplex() = default;

    /// twists: one list per homological degree (empty optional in the
    /// Artinian regime). diffs[i] maps F_{lo+i+1} -> F_{lo+i}.
    static FreeComplex make(RingPtr ring, int lo, std::vector<std::size_t> ranks,
                            std::optional<std::vector<std::vector<int>>> twists,
                            std::vector<PolyMatrix> diffs);

    const RingPtr& ring() const { return ring_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
    bool in_range(int i) const { return i >= lo() && i <= hi(); }
    std::size_t rank_at(int i) const { return in_range(i) ? ranks_[i - lo_] : 0; }
    std::vector<int> twists_at(int i) const;
    bool has_twists() const { return twists_.has_value(); }
    /// Differential d_i : F_i -> F_{i-1} (zero-shaped outside the range).
    PolyMatrix diff(int i) const;

    /// Largest/smallest index with a nonzero term; nullopt for the zero
    /// complex.
    std::optional<int> sup() const;
    std::optional<int> inf() const;

    /// All differential entries in the maximal ideal.
    bool is_minimal() const;

    const std::vector<std::size_t>& ranks() const { return ranks_; }

private:
    RingPtr ring_;
    int lo_ = 0;
    std::vector<std::size_t> ranks_;
    std::optional<std::vector<std::vector<int>>> twists_;
    std::vector<PolyMatrix> diffs_;
};

struct HomologyEntry {
    int index = 0;
    VectorizedModule module;
    /// dim over k within the trusted window.
    std::size_t dim = 0;
    /// Representatives inside the vectorized carrier F_i (x) N.
    Matrix representatives;
};

struct HomologyReport {
    std::vector<HomologyEntry> entries;  // ascending homological degree
    std::optional<int> hsup, hinf;

    const HomologyEntry& at(int index) const;
    std::vector<std::size_t> dims() const;
};

/// Homology of the complex, optionally with coefficients (of C (x)_R N).
/// The Graded regime needs a degree bound when coefficients is null.
HomologyReport homology(const FreeComplex& c, const VectorizedModule* coefficients,
                        std::optional<int> degree_bound);

/// The ring itself as a carrier (Graded regime truncated at the bound).
VectorizedModule ring_as_module(const RingPtr& ring, std::optional<int> degree_bound);

/// Quasi-isomorphic complex with every differential entry in m, obtained by
/// cancelling unit pivots, lowest homological degree first, leftmost pivot.
FreeComplex minimalize(const FreeComplex& c);

struct ChainMap {
    FreeComplex from, to;
    /// maps[i]: (from)_{lo+i} -> (to)_{lo+i} aligned at lo = min(from.lo, to.lo)
    int lo = 0;
    std::vector<PolyMatrix> maps;

    PolyMatrix map_at(int i) const;
};

/// Standard mapping cone; throws NotAChainMap unless f commutes with the
/// differentials.
FreeComplex cone(const ChainMap& f);

FreeComplex shift(const FreeComplex& c, int by);
/// Hard truncation keeping degrees in [keep_lo, keep_hi].
FreeComplex truncate_range(const FreeComplex& c, int keep_lo, int keep_hi);

struct CohomologyReport {
    int lo = 0;                       // cohomological index of the first entry
    std::vector<std::size_t> dims;    // H^i(Hom(C, N)) for i = lo..lo+n-1
    /// hinf of Hom(C,N) as a chain complex: -(largest i with H^i != 0).
    std::optional<int> chain_hinf() const;
    std::vector<HomologyEntry> entries;  // cohomological degree ascending
};

CohomologyReport hom_into_module(const FreeComplex& c, const VectorizedModule& n,
                                 std::optional<int> degree_bound);

}  // namespace qpdcalc
