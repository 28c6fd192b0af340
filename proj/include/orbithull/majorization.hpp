#pragma once

#include "orbithull/matrix.hpp"
#include "orbithull/states.hpp"
#include "orbithull/tolerances.hpp"

#include <cstddef>
#include <vector>

namespace orbithull::majorization {

// Real spectrum sorted descending; the fixed convention every partial-sum
// formula in this module relies on.
class SpectrumVector {
  public:
    explicit SpectrumVector(std::vector<double> values);
    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }

  private:
    std::vector<double> values_;
};

class DoublyStochasticMatrix {
  public:
    explicit DoublyStochasticMatrix(std::vector<std::vector<double>> entries,
                                    const Tolerances& tol = Tolerances{});
    const std::vector<std::vector<double>>& entries() const { return entries_; }
    std::size_t dim() const { return entries_.size(); }

    static DoublyStochasticMatrix identity(std::size_t n);
    std::vector<double> apply(const std::vector<double>& v) const;

  private:
    std::vector<std::vector<double>> entries_;
};

// One factor lambda*I + (1-lambda)*Q_{ij} of the transfer product.
struct TTransform {
    std::size_t i = 0;
    std::size_t j = 0;
    double lambda = 1.0;
};

struct HlpTransfer {
    DoublyStochasticMatrix transfer;
    std::vector<TTransform> factors; // applied first-to-last, at most n-1
};

// permutation[i] is the column carrying the 1 in row i, so applying the
// matrix sends v to (v[permutation[0]], ..., v[permutation[n-1]]).
struct BirkhoffTerm {
    double weight = 0.0;
    std::vector<std::size_t> permutation;
};

struct BirkhoffDecomposition {
    std::vector<BirkhoffTerm> terms;
};

struct MixingCertificate {
    std::vector<double> weights;
    std::vector<ComplexMatrix> unitaries;
    ComplexMatrix base;
    ComplexMatrix target;
    double residual = 0.0;
};

struct CertificateReport {
    bool valid = false;
    double residual = 0.0;
    double weight_defect = 0.0;
    double max_unitarity_defect = 0.0;
};

// Partial-sum majorization: every prefix of a is dominated by the prefix of
// b within tol and the totals agree within tol.
bool majorizes_partial_sums(const SpectrumVector& a, const SpectrumVector& b, double tol);

// Spectral-scale form with the normalized trace: traces agree within tol and
// tr((x - r)_+)/n <= tr((y - r)_+)/n + tol at every breakpoint r drawn from
// the union of the two spectra. Both sides are piecewise linear in r with
// kinks only at eigenvalues and vanish for r beyond the spectra, so the
// breakpoints decide the predicate.
bool majorizes_levelsets(const HermitianMatrix& x, const HermitianMatrix& y, double tol);

// Constructive Hardy-Littlewood-Polya witness: a product of at most n-1
// T-transforms carrying b to a. Requires majorizes_partial_sums(a, b, tol);
// throws with the failing prefix index otherwise.
HlpTransfer hlp_transfer(const SpectrumVector& a, const SpectrumVector& b, double tol = 1e-10);

// Greedy Birkhoff decomposition: repeatedly extracts the lexicographically
// smallest maximal-bottleneck perfect matching on the positive entries.
// At most (n-1)^2 + 1 terms.
BirkhoffDecomposition birkhoff_decompose(const DoublyStochasticMatrix& d,
                                         const Tolerances& tol = Tolerances{});

// Full pipeline: spectra, transfer, Birkhoff terms, then one conjugating
// unitary per permutation. The mix of conjugates of B reconstructs A.
MixingCertificate unitary_mixing_certificate(const HermitianMatrix& a, const HermitianMatrix& b,
                                             const Tolerances& tol = Tolerances{});

// Recomputes every certificate invariant. Never throws; malformed
// certificates come back invalid with infinite defects.
CertificateReport verify_certificate(const MixingCertificate& cert, double tol);

} // namespace orbithull::majorization
