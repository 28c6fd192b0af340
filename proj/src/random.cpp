#include "orbithull/random.hpp"

#include "orbithull/factorize.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace orbithull {

std::uint64_t Rng::integer(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::integer: bound must be positive");
    // Rejection sampling keeps the draw exactly uniform.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = eng_();
    } while (x >= limit);
    return x % bound;
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

ComplexMatrix ginibre(std::size_t n, Rng& rng) {
    ComplexMatrix g(n, n);
    const double scale = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double re = rng.gaussian();
            const double im = rng.gaussian();
            g(i, j) = cplx(re * scale, im * scale);
        }
    return g;
}

ComplexMatrix haar_unitary(std::size_t n, Rng& rng) {
    while (true) {
        ComplexMatrix g = ginibre(n, rng);
        ComplexMatrix q(n, n);
        bool degenerate = false;
        for (std::size_t j = 0; j < n && !degenerate; ++j) {
            std::vector<cplx> w(n);
            for (std::size_t k = 0; k < n; ++k) w[k] = g(k, j);
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t c = 0; c < j; ++c) {
                    cplx dot = 0.0;
                    for (std::size_t k = 0; k < n; ++k) dot += std::conj(q(k, c)) * w[k];
                    for (std::size_t k = 0; k < n; ++k) w[k] -= dot * q(k, c);
                }
            }
            double norm = 0.0;
            for (std::size_t k = 0; k < n; ++k) norm += std::norm(w[k]);
            norm = std::sqrt(norm);
            if (norm < 1e-12) {
                degenerate = true;
                break;
            }
            for (std::size_t k = 0; k < n; ++k) q(k, j) = w[k] / norm;
        }
        if (!degenerate) return q;
    }
}

ComplexMatrix haar_unitary(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return haar_unitary(n, rng);
}

ComplexMatrix gaussian_hermitian(std::size_t n, Rng& rng) { return hermitian_part(ginibre(n, rng)); }

ComplexMatrix random_contraction(std::size_t n, Rng& rng) {
    ComplexMatrix g = ginibre(n, rng);
    const double target = rng.uniform();
    const double norm = operator_norm(g);
    if (norm < 1e-12) return ComplexMatrix::zero(n);
    g *= cplx(target / norm, 0.0);
    return g;
}

ComplexMatrix random_density(std::size_t n, Rng& rng) {
    ComplexMatrix g = ginibre(n, rng);
    ComplexMatrix w = g * g.adjoint();
    const double tr = w.trace().real();
    w *= cplx(1.0 / tr, 0.0);
    return hermitian_part(w);
}

} // namespace orbithull
