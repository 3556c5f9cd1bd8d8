#pragma once

#include "qpdcalc/complex.hpp"

namespace qpdcalc {

/// Finitely presented module: rows of `relations` are relations, columns
/// line up with the generators.
struct ModulePresentation {
    RingPtr ring;
    std::vector<int> generator_degrees;
    std::vector<std::vector<Polynomial>> relations;

    static ModulePresentation free_module(RingPtr ring, std::vector<int> generator_degrees);
    /// R/I as a cyclic module (one generator in degree 0).
    static ModulePresentation cyclic(RingPtr ring, const std::vector<Polynomial>& ideal);
    /// The residue field k = R/m.
    static ModulePresentation residue_field(RingPtr ring);
};

/// Cokernel of the relation matrix on the (truncated) free module.
VectorizedModule vectorize(const ModulePresentation& p, std::optional<int> degree_bound);

struct GeneratorSplit {
    std::size_t nu = 0;          // dim_k M/mM
    std::size_t free_rank = 0;   // Artinian split: M = R^f (+) N
    VectorizedModule nonfree;    // N, no free summand (Artinian split only)
    bool split_computed = false;
};

/// nu in both regimes; the free/nonfree split only in the Artinian regime.
GeneratorSplit minimal_generators(const VectorizedModule& m, bool with_split);

/// Positions (coordinates) of a minimal generating set, with degrees.
struct GeneratorData {
    std::vector<std::size_t> coords;
    std::vector<int> degrees;  // graded only
};
GeneratorData generator_data(const VectorizedModule& m);

struct SyzygyResult {
    VectorizedModule omega;           // minimal first syzygy
    std::vector<int> cover_twists;    // degrees of the chosen generators
    /// Columns: minimal generators of omega written in R^nu (one polynomial
    /// per slot) -- exactly the next differential of a minimal resolution.
    PolyMatrix omega_generators;
    std::vector<int> omega_twists;
};
SyzygyResult syzygy(const VectorizedModule& m);

struct BettiTable {
    std::vector<std::size_t> ranks;
    std::vector<std::vector<int>> twists;  // per step (graded)
};

struct MinimalResolution {
    FreeComplex complex;  // F_steps -> ... -> F_0, lo = 0
    BettiTable betti;
    bool terminated = false;           // a syzygy hit zero: pd certified
    std::optional<int> pd;
    std::vector<VectorizedModule> syzygies;  // Omega^1 .. (as far as computed)
};

MinimalResolution minimal_resolution(const VectorizedModule& m, int steps,
                                     std::optional<int> degree_bound);

VectorizedModule tensor(const VectorizedModule& m, const VectorizedModule& n);

/// Basis of Hom_R(M, N) as vectorized maps (columns are column-major
/// vec(phi), phi a dimN x dimM matrix); graded: restrict to maps of one
/// degree when only_degree is set.
Matrix hom_space(const VectorizedModule& m, const VectorizedModule& n,
                 std::optional<int> only_degree);
Matrix unvec(const Matrix& column, std::size_t rows, std::size_t cols, std::size_t which);

struct HomModule {
    VectorizedModule mod;
    Matrix basis_maps;  // hom_space output, one column per basis element
};
HomModule hom_module(const VectorizedModule& m, const VectorizedModule& n);

/// Auslander transpose from the dual of the minimal presentation (Artinian).
VectorizedModule transpose(const VectorizedModule& m);

struct IsoVerdict {
    enum class Kind { Isomorphic, NotIsomorphic, Unknown } kind;
    Matrix witness;                 // dimN x dimM invertible equivariant map
    std::string distinguishing;     // invariant that differs
    std::size_t trials_used = 0;
    int twist = 0;                  // graded: N ~ M(-twist)

    bool isomorphic() const { return kind == Kind::Isomorphic; }
};

IsoVerdict iso_test(const VectorizedModule& m, const VectorizedModule& n, std::size_t trials,
                    std::uint64_t seed);

enum class DerivedKind { Tor, Ext };

/// dim_k Tor_i(M,N) or Ext^i(M,N) for i = 0..max_index.
std::vector<std::size_t> derived_table(DerivedKind kind, const VectorizedModule& m,
                                       const VectorizedModule& n, int max_index,
                                       std::optional<int> degree_bound);

/// Same computation, carrying the homology modules (index 0..max_index).
std::vector<HomologyEntry> derived_modules(DerivedKind kind, const VectorizedModule& m,
                                           const VectorizedModule& n, int max_index,
                                           std::optional<int> degree_bound);

struct ReflexivityReport {
    bool biduality_iso = false;
    std::vector<std::size_t> ext_m;       // Ext^i(M,R), i = 1..window
    std::vector<std::size_t> ext_m_star;  // Ext^i(M*,R), i = 1..window
    int window = 0;
    bool passed = false;
    std::string first_failure;
};

/// Checks M -> M** and Ext^i(M,R) = 0 = Ext^i(M*,R) for 1 <= i <= window.
ReflexivityReport reflexivity_probe(const VectorizedModule& m, int window);

}  // namespace qpdcalc
