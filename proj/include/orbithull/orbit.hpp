#pragma once

#include "orbithull/matrix.hpp"
#include "orbithull/states.hpp"
#include "orbithull/tolerances.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace orbithull::orbit {

enum class OrbitType { UnitaryConjugation, ContractionConjugation, TwoSided };

// An orbit of the base matrix: {UBU*}, {uBu* : ||u||_op <= 1}, or {UBV*}.
// Whether the base is Hermitian is detected once; it decides which support
// oracles are exact.
struct OrbitKind {
    OrbitType type = OrbitType::UnitaryConjugation;
    ComplexMatrix base;
    bool hermitian_base = false;

    OrbitKind(OrbitType t, ComplexMatrix b, const Tolerances& tol = Tolerances{});
};

// Support-function evaluation: value = max Re<direction, w> over the orbit,
// w the maximizer found, parameters reproducing it, and whether a closed
// form (exact) or ascent (lower bound) produced it.
struct SupportValue {
    double value = 0.0;
    ComplexMatrix maximizer;
    ComplexMatrix param_u;
    std::optional<ComplexMatrix> param_v; // two-sided orbits only
    bool exact = false;
};

struct LmoOptions {
    int restarts = 20;
    std::uint64_t seed = 0;
    int max_iter = 500;
};

// Exact support of the unitary-conjugation orbit for Hermitian direction and
// base: paired descending spectra, maximizer aligning the eigenbases.
SupportValue support_conjugation_hermitian(const HermitianMatrix& c, const HermitianMatrix& b,
                                           const Tolerances& tol = Tolerances{});

// Exact support of the two-sided orbit: paired singular values, maximizer
// assembled from the two SVDs.
SupportValue support_twosided(const ComplexMatrix& c, const ComplexMatrix& b,
                              const Tolerances& tol = Tolerances{});

// Gradient ascent over the orbit parameters with unitary retraction
// (singular-value clipping for the contraction orbit). Returns a certified
// lower bound: the maximizer is re-validated and its inner product
// recomputed. Deterministic in (seed, restarts) regardless of scheduling.
SupportValue support_riemannian(const ComplexMatrix& c, const ComplexMatrix& b, OrbitType type,
                                int restarts, std::uint64_t seed, int max_iter = 500,
                                const Tolerances& tol = Tolerances{});

// Dispatch: exact closed forms where available (two-sided always;
// unitary conjugation when the base is Hermitian, any direction, since orbit
// points are then Hermitian and only the Hermitian part of the direction
// contributes), ascent otherwise.
SupportValue lmo(const OrbitKind& kind, const ComplexMatrix& direction,
                 const LmoOptions& opts = LmoOptions{}, const Tolerances& tol = Tolerances{});

enum class MembershipStatus { Inside, Outside, Undecided };

struct OrbitAtom {
    ComplexMatrix point;
    ComplexMatrix param_u;
    std::optional<ComplexMatrix> param_v;
};

// Explicit convex combination of orbit points approximating the target.
struct HullCombination {
    std::vector<double> weights;
    std::vector<OrbitAtom> atoms;
    ComplexMatrix base;
    ComplexMatrix target;
    double residual = 0.0;
};

struct SeparationWitness {
    ComplexMatrix direction;
    double margin = 0.0; // Re<D, target> - h(D), recomputed at emission
};

struct MembershipVerdict {
    MembershipStatus status = MembershipStatus::Undecided;
    double distance_estimate = 0.0;
    std::optional<HullCombination> certificate; // Inside verdicts
    std::optional<SeparationWitness> witness;   // Outside verdicts
    bool lmo_exact = false;
    std::size_t iterations = 0;
    ComplexMatrix projection_estimate; // best iterate, for downstream use
};

// Away-step Frank-Wolfe over the orbit hull. Inside when the iterate
// reaches the target within tol (certificate attached); Outside only when
// an exact oracle certifies distance >= 2 * tol via the hyperplane bound
// (Re<D, A> - h(D)) / ||D||; Undecided otherwise.
MembershipVerdict frank_wolfe_project(const ComplexMatrix& a, const OrbitKind& kind, double tol,
                                      int max_iter = 2000, const LmoOptions& opts = LmoOptions{},
                                      const Tolerances& tolerances = Tolerances{});

// Constructive Russo-Dye: a = (U1 + U2)/2 through the polar decomposition
// a = W|a| and |a| = cos(Theta).
std::pair<ComplexMatrix, ComplexMatrix> russo_dye_mean2(const ComplexMatrix& a,
                                                        const Tolerances& tol = Tolerances{});

struct KadisonPedersenResult {
    std::vector<ComplexMatrix> unitaries;
    bool fallback_even = false;    // odd peeling failed, even cover returned
    bool paper_hypothesis = false; // ||a||_op < 1 - 2/n held on entry
};

// a as the average of n_terms unitaries: replicated Russo-Dye pairs for even
// counts, one peeled polar unitary then the even case for odd counts.
KadisonPedersenResult kadison_pedersen_mean(const ComplexMatrix& a, int n_terms,
                                            const Tolerances& tol = Tolerances{});

struct ChainEntry {
    double h1 = 0.0; // unitary conjugation
    double h2 = 0.0; // contraction conjugation
    double h3 = 0.0; // two-sided
    bool h1_exact = false;
    bool h2_exact = false;
    bool h3_exact = true;
    bool hard_violation = false;
    bool advisory = false; // a heuristic bound was involved in a comparison
};

struct ChainReport {
    std::vector<ChainEntry> entries;
    bool any_hard_violation = false;
};

// h1 <= h2 <= h3 per direction. Violations count as hard only when the
// offending side is exact or a certified lower bound exceeds an exact value;
// the contraction ascent is seeded with the h1 maximizer so its bound never
// falls below h1 by construction.
ChainReport inclusion_chain_check(const ComplexMatrix& b, const std::vector<ComplexMatrix>& directions,
                                  const LmoOptions& opts = LmoOptions{},
                                  const Tolerances& tol = Tolerances{});

// Remark-level scaling: a contraction-orbit certificate for x turns into one
// for t*x by scaling every parameter by sqrt(t); the residual scales by t.
HullCombination contraction_scaling_check(const HullCombination& cert, double t,
                                          const Tolerances& tol = Tolerances{});

} // namespace orbithull::orbit
