#pragma once

#include "orbithull/matrix.hpp"
#include "orbithull/orbit.hpp"
#include "orbithull/states.hpp"
#include "orbithull/tolerances.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace orbithull::metric {

// Outcome of the two-norm duel: does some U make the base orbit point at
// least as close to A as to the challenger C? Decided through the support
// function of the orbit in direction (A - C) rho.
struct DuelOutcome {
    bool success = false;
    bool certified = false; // decided by an exact support oracle
    std::optional<ComplexMatrix> u;
    double lhs = 0.0; // ||A - U B U*|| in the weighted two-norm
    double rhs = 0.0; // ||C - U B U*||
    double threshold = 0.0;     // (||A||^2 - ||C||^2) / 2
    double support_value = 0.0; // oracle value in direction (A - C) rho
    std::optional<bool> weight_faithful;
};

DuelOutcome duel(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                 const std::optional<DensityMatrix>& weight = std::nullopt,
                 const orbit::LmoOptions& opts = orbit::LmoOptions{},
                 const Tolerances& tol = Tolerances{});

enum class CriterionVerdict { ConsistentWithMembership, Refuted, Inconclusive };

struct Refutation {
    ComplexMatrix challenger;
    double margin; // threshold minus exact support value, recomputed
};

struct CriterionReport {
    ComplexMatrix target;
    ComplexMatrix base;
    std::size_t challengers_tested = 0;
    std::vector<Refutation> refutations;
    CriterionVerdict verdict = CriterionVerdict::Inconclusive;
    std::size_t uncertified_failures = 0;
};

struct ScanStrategy {
    std::size_t random_count = 200;
    bool include_adversarial = true;
};

// Duels A against random challengers (and optionally the hull-projection
// challenger, the provably hardest one). Refuted requires a certified
// failure; all-success reads consistent-with-membership.
CriterionReport criterion_scan(const ComplexMatrix& a, const ComplexMatrix& b,
                               const ScanStrategy& strategy,
                               const std::optional<DensityMatrix>& weight, std::uint64_t seed,
                               const orbit::LmoOptions& opts = orbit::LmoOptions{},
                               const Tolerances& tol = Tolerances{});

struct FamilySubsetReport {
    std::vector<std::size_t> subset; // indices into the family
    double hull_distance = 0.0;      // distance of x to conv(X) in the F-geometry
    std::size_t condition_failures = 0;
    bool implication_ok = true; // hull member implies no failures
};

struct FamilyCriterionReport {
    std::vector<FamilySubsetReport> subsets;
    std::size_t challengers_tested = 0;
    bool all_conditions_hold = true;
    bool any_implication_violation = false;
};

// For every nonempty subset F of the family up to the size cap and every
// challenger y, checks whether some z among the points satisfies
// ||x - z||_{2,F} <= ||y - z||_{2,F}, and cross-checks against exact hull
// projection in the (possibly degenerate) F-weighted geometry.
FamilyCriterionReport family_criterion_check(const ComplexMatrix& x,
                                             const std::vector<ComplexMatrix>& points,
                                             const StateFamily& family,
                                             const std::vector<ComplexMatrix>& challengers,
                                             std::size_t subset_size_cap,
                                             const Tolerances& tol = Tolerances{});

// The two-block diagonal counterexample: per-state conditions hold with
// seminorm zero while the point sits strictly outside the hull.
struct CounterexampleReport {
    double norm_x_minus_a_phi = 0.0;
    double norm_x_minus_b_psi = 0.0;
    double hull_distance = 0.0; // expected sqrt(2)/2
    bool per_state_condition_holds = false;
    bool hull_member = false;
    bool separates_conditions = false; // per-state holds yet membership fails
};

CounterexampleReport counterexample_c2(const Tolerances& tol = Tolerances{});

struct EquivalenceRecord {
    bool positive_instance = false;
    bool majorizes = false;
    orbit::MembershipStatus membership = orbit::MembershipStatus::Undecided;
    CriterionVerdict scan = CriterionVerdict::Inconclusive;
    bool agree = false;
    std::optional<ComplexMatrix> a; // populated on disagreement
    std::optional<ComplexMatrix> b;
};

struct EquivalenceSummary {
    std::vector<EquivalenceRecord> records;
    std::size_t agreements = 0;
    std::size_t disagreements = 0;
};

// Spectral majorization, hull membership, and the duel criterion must agree
// on Hermitian instances: positives are random mixings of the base, negatives
// carry a spectrum pushed strictly above in the partial-sum order.
EquivalenceSummary equivalence_suite(std::size_t n, std::size_t trials, std::uint64_t seed,
                                     const Tolerances& tol = Tolerances{});

} // namespace orbithull::metric
