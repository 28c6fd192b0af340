#pragma once

#include "orbithull/matrix.hpp"
#include "orbithull/tolerances.hpp"

#include <vector>

namespace orbithull {

// Validated wrappers. Construction throws std::invalid_argument when the
// defining property fails at the configured tolerance; afterwards the stored
// matrix is exactly Hermitian where the type promises it.

class HermitianMatrix {
  public:
    explicit HermitianMatrix(const ComplexMatrix& m, const Tolerances& tol = Tolerances{});
    const ComplexMatrix& matrix() const { return m_; }
    std::size_t dim() const { return m_.rows(); }

  private:
    ComplexMatrix m_;
};

class UnitaryMatrix {
  public:
    explicit UnitaryMatrix(const ComplexMatrix& m, const Tolerances& tol = Tolerances{});
    const ComplexMatrix& matrix() const { return m_; }
    std::size_t dim() const { return m_.rows(); }

  private:
    ComplexMatrix m_;
};

// Hermitian, positive semidefinite, unit trace. faithful() reports whether
// the smallest eigenvalue clears tol.faithful; the zero-padded states in the
// direct-sum counterexample are the intended non-faithful inputs.
class DensityMatrix {
  public:
    explicit DensityMatrix(const ComplexMatrix& m, const Tolerances& tol = Tolerances{});
    const ComplexMatrix& matrix() const { return m_; }
    std::size_t dim() const { return m_.rows(); }
    bool faithful() const { return faithful_; }
    double min_eigenvalue() const { return min_eig_; }

    static DensityMatrix maximally_mixed(std::size_t n);

  private:
    ComplexMatrix m_;
    double min_eig_ = 0.0;
    bool faithful_ = false;
};

// Nonempty list of density matrices on a common dimension. The family is
// separating iff the summed density is positive definite; construction
// enforces that only when require_separating is set.
class StateFamily {
  public:
    explicit StateFamily(std::vector<DensityMatrix> states, bool require_separating = false,
                         const Tolerances& tol = Tolerances{});
    const std::vector<DensityMatrix>& states() const { return states_; }
    std::size_t size() const { return states_.size(); }
    std::size_t dim() const { return states_.front().dim(); }
    bool all_faithful() const;
    bool separating() const { return separating_; }

    // Sum of the member densities; the Gram weight of the family seminorm.
    ComplexMatrix weight_sum() const;

  private:
    std::vector<DensityMatrix> states_;
    bool separating_ = false;
};

// sqrt(Re tr(weight x^* x)) for PSD weight; clamped at zero against rounding.
double seminorm2(const ComplexMatrix& x, const ComplexMatrix& weight);
double seminorm2(const ComplexMatrix& x, const DensityMatrix& state);

// sqrt(sum over the family of seminorm2(x, state)^2).
double seminorm2_family(const ComplexMatrix& x, const StateFamily& family);

} // namespace orbithull
