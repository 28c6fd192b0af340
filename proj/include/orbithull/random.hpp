#pragma once

#include "orbithull/matrix.hpp"

#include <cstdint>
#include <random>

namespace orbithull {

// Deterministic random source. Gaussians come from an explicit Box-Muller on
// the raw mt19937_64 stream, so the same seed draws the same sequence on
// every platform and standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t integer(std::uint64_t bound); // uniform in [0, bound)

    double gaussian();

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// splitmix64-style mix of a base seed and a stream index, so parallel
// substreams are independent of iteration order.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Entries (g1 + i g2)/sqrt(2) with independent standard Gaussians.
ComplexMatrix ginibre(std::size_t n, Rng& rng);

// Ginibre followed by modified Gram-Schmidt; the triangular factor has a
// positive diagonal by construction, so the factor is Haar distributed.
ComplexMatrix haar_unitary(std::size_t n, Rng& rng);
ComplexMatrix haar_unitary(std::size_t n, std::uint64_t seed);

// (G + G^*)/2 for Ginibre G.
ComplexMatrix gaussian_hermitian(std::size_t n, Rng& rng);

// Ginibre rescaled so the operator norm is a uniform draw from [0, 1].
ComplexMatrix random_contraction(std::size_t n, Rng& rng);

// Wishart G G^* normalized to unit trace; faithful with probability one.
ComplexMatrix random_density(std::size_t n, Rng& rng);

} // namespace orbithull
