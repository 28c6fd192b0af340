#pragma once

namespace orbithull {

// Central tolerance record. Every verdict-style report echoes the values it
// used, so a run is reproducible from its output alone.
struct Tolerances {
    double hermitian = 1e-10;       // ||H - H*||_F <= hermitian * (1 + ||H||_F)
    double unitary = 1e-8;          // ||U*U - I||_F <= unitary * n
    double skew = 1e-10;            // skew-Hermitian input check
    double density_psd = 1e-10;     // rho >= -density_psd
    double density_trace = 1e-10;   // |tr(rho) - 1| <= density_trace
    double faithful = 1e-10;        // faithful iff lambda_min(rho) > faithful
    double factorization = 1e-8;    // eigh/svd residual * (1 + ||input||_F)
    double expm_unitary = 1e-8;     // unitarity of exp(skew)
    double certificate = 1e-8;      // mixing-certificate residual * (1 + ||B||_F)
    double sum_check = 1e-8;        // weight sums, row/column sums
    double entry_positive = 1e-10;  // entries treated as positive above this
    double membership = 1e-5;       // Frank-Wolfe inside threshold
    double separation = 1e-6;       // challenger construction: outside threshold
    double strictness = 1e-10;      // strict-inequality margin * (1 + ||xi||)
    double duel_slack = 1e-10;      // lhs <= rhs + duel_slack
};

} // namespace orbithull
