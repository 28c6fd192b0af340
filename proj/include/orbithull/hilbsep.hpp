#pragma once

#include "orbithull/tolerances.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace orbithull::hilbsep {

// Complex data enters as a real vector of doubled length; every routine here
// works over plain Euclidean coordinates.
using EuclideanVector = std::vector<double>;

class FinitePointSet {
  public:
    explicit FinitePointSet(std::vector<EuclideanVector> points);
    const std::vector<EuclideanVector>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    std::size_t dim() const { return points_.front().size(); }

  private:
    std::vector<EuclideanVector> points_;
};

struct ProjectionResult {
    EuclideanVector point;             // nearest hull element found
    double distance = 0.0;             // ||xi - point||
    std::vector<double> coefficients;  // convex weights over the input points
    double gap = 0.0;                  // max_p <xi - point, p - point> at return
    std::size_t iterations = 0;
    bool converged = true;
};

// Nearest point of conv(X) to xi via away-step conditional gradient with
// exact line search. On return either gap <= tol * (1 + ||xi||) and
// converged is true, or the iteration cap was hit and the best iterate is
// reported with its gap.
ProjectionResult project_hull(const EuclideanVector& xi, const FinitePointSet& x, double tol);

struct MetricConditionReport {
    bool holds_for_all = true;
    std::vector<std::size_t> failures; // indices of refuting challengers
};

// For each challenger eta, asks whether some point zeta of X satisfies
// ||xi - zeta|| <= ||eta - zeta||, exhaustively over the finite X.
MetricConditionReport metric_condition_check(const EuclideanVector& xi, const FinitePointSet& x,
                                             const std::vector<EuclideanVector>& challengers);

// Strict refutation of the metric condition for points outside the hull:
// an eta on the segment (xi, projection] with ||eta - p|| < ||xi - p|| for
// every extreme point p (the difference of squared norms is affine over the
// hull, so extreme points decide it). Returns nullopt when xi is within
// tol.separation of the hull.
std::optional<EuclideanVector> separating_challenger(const EuclideanVector& xi, const FinitePointSet& x,
                                                     const Tolerances& tol = Tolerances{});

// Half-space scenario: X = {z : z_1 <= 0}, xi = e_1, challengers restricted
// to eta outside the axis R*xi. Returns a boundary point zeta (zeta_1 = 0)
// strictly closer to xi than to eta, found where the median hyperplane of
// [xi, eta] meets the boundary and pushed along the boundary to strictness.
EuclideanVector halfspace_scenario(std::size_t dim, const EuclideanVector& eta,
                                   const Tolerances& tol = Tolerances{});

struct BoundaryConditionReport {
    double fraction = 1.0;
    std::size_t satisfied = 0;
    std::size_t total = 0;
    bool vacuous = false; // no samples supplied
};

// Fraction of the supplied boundary samples eta that satisfy the metric
// condition against xi.
BoundaryConditionReport boundary_condition_check(const EuclideanVector& xi, const FinitePointSet& x,
                                                 const std::vector<EuclideanVector>& boundary_samples);

double dot(const EuclideanVector& a, const EuclideanVector& b);
double norm(const EuclideanVector& a);
double distance(const EuclideanVector& a, const EuclideanVector& b);

} // namespace orbithull::hilbsep
