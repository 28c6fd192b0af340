#pragma once

#include "orbithull/matrix.hpp"
#include "orbithull/tolerances.hpp"

#include <vector>

namespace orbithull {

// h = vectors * diag(values) * vectors^*, eigenvalues descending.
// Equal eigenvalues keep the column order the sweep produced (stable sort).
struct EighResult {
    std::vector<double> values;
    ComplexMatrix vectors;
};

// a = u * diag(values) * v^*, singular values descending, square input.
struct SvdResult {
    ComplexMatrix u;
    std::vector<double> values;
    ComplexMatrix v;
};

// Cyclic complex Jacobi. Input must be Hermitian within
// tol.hermitian * (1 + ||h||_F).
EighResult eigh(const ComplexMatrix& h, const Tolerances& tol = Tolerances{});

// One-sided Jacobi on the columns of a.
SvdResult svd(const ComplexMatrix& a, const Tolerances& tol = Tolerances{});

std::vector<double> spectrum(const ComplexMatrix& h, const Tolerances& tol = Tolerances{});
std::vector<double> singular_values(const ComplexMatrix& a, const Tolerances& tol = Tolerances{});
double operator_norm(const ComplexMatrix& a, const Tolerances& tol = Tolerances{});

// exp(k) for skew-Hermitian k, via the Hermitian eigenproblem of -i*k.
// Result is unitary within tol.expm_unitary.
ComplexMatrix expm_skew(const ComplexMatrix& k, const Tolerances& tol = Tolerances{});

// Spectral clamp of a Hermitian matrix: V max(Lambda - r, 0) V^*.
ComplexMatrix positive_part(const ComplexMatrix& h, double r = 0.0, const Tolerances& tol = Tolerances{});

// V sqrt(max(Lambda, 0)) V^* for Hermitian PSD input.
ComplexMatrix psd_sqrt(const ComplexMatrix& h, const Tolerances& tol = Tolerances{});

} // namespace orbithull
