#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "orbithull/factorize.hpp"
#include "orbithull/matrix.hpp"
#include "orbithull/parallel.hpp"
#include "orbithull/random.hpp"
#include "orbithull/states.hpp"

#include <cmath>
#include <vector>

using namespace orbithull;

namespace {

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

double reconstruction_residual(const ComplexMatrix& h, const EighResult& eig) {
    ComplexMatrix rebuilt = eig.vectors * ComplexMatrix::diag(eig.values) * eig.vectors.adjoint();
    return (rebuilt - h).frobenius_norm();
}

} // namespace

TEST_CASE("frobenius inner product") {
    CHECK(frobenius_inner(ComplexMatrix::identity(2), ComplexMatrix::identity(2)).real() == doctest::Approx(2.0));
    CHECK(std::abs(frobenius_inner(ComplexMatrix::diag(std::vector<double>{5.0, -2.0}), ComplexMatrix::zero(2))) == 0.0);
    CHECK(frobenius_inner(ComplexMatrix::diag(std::vector<double>{1.0, 2.0}),
                          ComplexMatrix::diag(std::vector<double>{3.0, 4.0}))
              .real() == doctest::Approx(11.0));

    // Conjugate symmetry and first-argument linearity on random data.
    Rng rng(11);
    const ComplexMatrix a = ginibre(3, rng), b = ginibre(3, rng), c = ginibre(3, rng);
    const cplx ab = frobenius_inner(a, b);
    const cplx ba = frobenius_inner(b, a);
    CHECK(std::abs(ab - std::conj(ba)) < 1e-12);
    const cplx lhs = frobenius_inner(a + c, b);
    CHECK(std::abs(lhs - (ab + frobenius_inner(c, b))) < 1e-12);
    CHECK(std::abs(frobenius_inner(a, b) - (b.adjoint() * a).trace()) < 1e-12);
    CHECK_THROWS_AS((void)frobenius_inner(a, ComplexMatrix::identity(2)), std::invalid_argument);
}

TEST_CASE("seminorm basics") {
    const DensityMatrix half = DensityMatrix::maximally_mixed(2);
    CHECK(seminorm2(ComplexMatrix::identity(2), half) == doctest::Approx(1.0));
    CHECK(seminorm2(ComplexMatrix::identity(5), DensityMatrix::maximally_mixed(5)) == doctest::Approx(1.0));

    const DensityMatrix e2(ComplexMatrix::diag(std::vector<double>{0.0, 1.0}));
    CHECK(seminorm2(ComplexMatrix::diag(std::vector<double>{1.0, 0.0}), e2) == doctest::Approx(0.0));
    CHECK_FALSE(e2.faithful());
    CHECK(half.faithful());

    CHECK_THROWS_AS((void)seminorm2(ComplexMatrix::identity(3), half), std::invalid_argument);
}

TEST_CASE("seminorm faithfulness separates nonzero matrices") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const DensityMatrix rho{random_density(3, rng)};
        REQUIRE(rho.faithful());
        const ComplexMatrix x = ginibre(3, rng);
        REQUIRE(x.frobenius_norm() > 1e-6);
        CHECK(seminorm2(x, rho) > 0.0);
    }
}

TEST_CASE("family seminorm") {
    const DensityMatrix p(ComplexMatrix::diag(std::vector<double>{1.0, 0.0}));
    const DensityMatrix q(ComplexMatrix::diag(std::vector<double>{0.0, 1.0}));

    const StateFamily singleton{std::vector<DensityMatrix>{p}};
    Rng rng(3);
    const ComplexMatrix x = ginibre(2, rng);
    CHECK(seminorm2_family(x, singleton) == doctest::Approx(seminorm2(x, p)));

    const StateFamily doubled{std::vector<DensityMatrix>{p, p}};
    CHECK(seminorm2_family(x, doubled) == doctest::Approx(std::sqrt(2.0) * seminorm2(x, p)));

    const StateFamily pair{std::vector<DensityMatrix>{p, q}};
    CHECK(seminorm2_family(ComplexMatrix::identity(2), pair) == doctest::Approx(std::sqrt(2.0)));
    CHECK(pair.separating());
    CHECK_FALSE(singleton.separating());
    CHECK_THROWS_AS(StateFamily(std::vector<DensityMatrix>{p}, true), std::invalid_argument);
    CHECK_THROWS_AS(StateFamily(std::vector<DensityMatrix>{}), std::invalid_argument);

    // Squared family seminorm equals the sum of squared member seminorms.
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix y = ginibre(2, rng);
        const double direct = seminorm2_family(y, pair);
        const double bysum = std::sqrt(std::pow(seminorm2(y, p), 2) + std::pow(seminorm2(y, q), 2));
        CHECK(direct == doctest::Approx(bysum).epsilon(1e-12));
    }
}

TEST_CASE("averaged-state identity") {
    Rng rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<DensityMatrix> members;
        const std::size_t count = 1 + trial % 4;
        for (std::size_t i = 0; i < count; ++i) members.emplace_back(random_density(3, rng));
        const StateFamily family{members};

        ComplexMatrix avg = family.weight_sum();
        avg *= cplx(1.0 / static_cast<double>(count), 0.0);
        const DensityMatrix averaged{avg};

        const ComplexMatrix x = ginibre(3, rng);
        const double lhs = seminorm2(x, averaged);
        const double rhs = seminorm2_family(x, family) / std::sqrt(static_cast<double>(count));
        CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + rhs));
    }
}

TEST_CASE("eigh on fixed inputs") {
    const EighResult diag13 = eigh(ComplexMatrix::diag(std::vector<double>{1.0, 3.0}));
    CHECK(diag13.values[0] == doctest::Approx(3.0));
    CHECK(diag13.values[1] == doctest::Approx(1.0));
    // Eigenvector matrix on a diagonal input is a permutation.
    CHECK(std::abs(diag13.vectors(0, 1)) == doctest::Approx(1.0));
    CHECK(std::abs(diag13.vectors(1, 0)) == doctest::Approx(1.0));

    const EighResult px = eigh(pauli_x());
    CHECK(px.values[0] == doctest::Approx(1.0));
    CHECK(px.values[1] == doctest::Approx(-1.0));
    CHECK(reconstruction_residual(pauli_x(), px) < 1e-12);

    // Degenerate spectrum: no rotations fire, the basis stays put.
    const EighResult id = eigh(ComplexMatrix::identity(3));
    CHECK((id.vectors - ComplexMatrix::identity(3)).frobenius_norm() == 0.0);

    CHECK_THROWS_AS((void)eigh(pauli_x() * cplx(0.0, 1.0)), std::invalid_argument);
}

TEST_CASE("eigh and svd random reconstruction") {
    Rng rng(23);
    const int trials = 1000;
    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t n = 2 + trial % 7; // dimensions 2..8
        const ComplexMatrix h = gaussian_hermitian(n, rng);
        const EighResult eig = eigh(h);
        const double scale = 1.0 + h.frobenius_norm();
        REQUIRE(reconstruction_residual(h, eig) <= 1e-8 * scale);
        for (std::size_t i = 0; i + 1 < n; ++i) REQUIRE(eig.values[i] >= eig.values[i + 1]);
        UnitaryMatrix check_v{eig.vectors};

        const ComplexMatrix a = ginibre(n, rng);
        const SvdResult s = svd(a);
        ComplexMatrix rebuilt = s.u * ComplexMatrix::diag(s.values) * s.v.adjoint();
        REQUIRE((rebuilt - a).frobenius_norm() <= 1e-8 * (1.0 + a.frobenius_norm()));
        for (std::size_t i = 0; i + 1 < n; ++i) REQUIRE(s.values[i] >= s.values[i + 1]);
        REQUIRE(s.values.back() >= 0.0);
        UnitaryMatrix check_u{s.u};
        UnitaryMatrix check_w{s.v};
    }
}

TEST_CASE("svd fixed inputs") {
    const SvdResult id = svd(ComplexMatrix::identity(3));
    for (double v : id.values) CHECK(v == doctest::Approx(1.0));

    const SvdResult d = svd(ComplexMatrix::diag(std::vector<double>{-2.0, 1.0}));
    CHECK(d.values[0] == doctest::Approx(2.0));
    CHECK(d.values[1] == doctest::Approx(1.0));

    // Rank-deficient input: the null column of u still comes back orthonormal.
    ComplexMatrix rank1(2, 2);
    rank1(0, 0) = 3.0;
    const SvdResult r1 = svd(rank1);
    CHECK(r1.values[0] == doctest::Approx(3.0));
    CHECK(r1.values[1] == doctest::Approx(0.0));
    UnitaryMatrix full_u{r1.u};

    CHECK(operator_norm(ComplexMatrix::diag(std::vector<double>{-7.0, 2.0})) == doctest::Approx(7.0));
}

TEST_CASE("expm_skew") {
    const ComplexMatrix zero = ComplexMatrix::zero(3);
    CHECK((expm_skew(zero) - ComplexMatrix::identity(3)).frobenius_norm() < 1e-12);

    const double theta = std::numbers::pi / 2.0;
    ComplexMatrix k(2, 2);
    k(0, 1) = theta;
    k(1, 0) = -theta;
    const ComplexMatrix u = expm_skew(k);
    ComplexMatrix expected(2, 2);
    expected(0, 1) = 1.0;
    expected(1, 0) = -1.0;
    CHECK((u - expected).frobenius_norm() < 1e-10);

    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        ComplexMatrix g = ginibre(4, rng);
        ComplexMatrix skew = g - g.adjoint();
        skew *= cplx(0.5, 0.0);
        const ComplexMatrix e = expm_skew(skew);
        ComplexMatrix minus = skew;
        minus *= cplx(-1.0, 0.0);
        const ComplexMatrix einv = expm_skew(minus);
        CHECK((e * einv - ComplexMatrix::identity(4)).frobenius_norm() <= 1e-9);
    }

    CHECK_THROWS_AS((void)expm_skew(ComplexMatrix::identity(2)), std::invalid_argument);
}

TEST_CASE("haar unitary sampling") {
    const ComplexMatrix scalar = haar_unitary(1, 99);
    CHECK(std::abs(scalar(0, 0)) == doctest::Approx(1.0));

    const ComplexMatrix a = haar_unitary(4, 1234);
    const ComplexMatrix b = haar_unitary(4, 1234);
    CHECK((a - b).frobenius_norm() == 0.0);
    UnitaryMatrix ua{a};

    Rng rng(2026);
    double mean = 0.0;
    const int samples = 10000;
    for (int i = 0; i < samples; ++i) {
        const ComplexMatrix u = haar_unitary(4, rng);
        mean += std::norm(u.trace());
    }
    mean /= samples;
    CHECK(std::abs(mean - 1.0) < 0.05);
}

TEST_CASE("positive part") {
    const ComplexMatrix h = ComplexMatrix::diag(std::vector<double>{3.0, 1.0});
    CHECK((positive_part(h, 2.0) - ComplexMatrix::diag(std::vector<double>{1.0, 0.0})).frobenius_norm() < 1e-12);
    CHECK((positive_part(h, 0.5) - ComplexMatrix::diag(std::vector<double>{2.5, 0.5})).frobenius_norm() < 1e-12);
    CHECK(positive_part(h, 5.0).frobenius_norm() < 1e-12);

    Rng rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        const ComplexMatrix m = gaussian_hermitian(4, rng);
        const ComplexMatrix u = haar_unitary(4, rng);
        const double r = rng.uniform(-1.0, 1.0);
        const ComplexMatrix lhs = positive_part(u * m * u.adjoint(), r);
        const ComplexMatrix rhs = u * positive_part(m, r) * u.adjoint();
        CHECK((lhs - rhs).frobenius_norm() <= 1e-8);
        CHECK(spectrum(positive_part(m, r)).back() >= -1e-12);
    }
}

TEST_CASE("validated wrappers reject bad inputs") {
    CHECK_THROWS_AS(HermitianMatrix{pauli_x() * cplx(0.0, 1.0)}, std::invalid_argument);
    CHECK_THROWS_AS(UnitaryMatrix{ComplexMatrix::diag(std::vector<double>{2.0, 1.0})}, std::invalid_argument);
    CHECK_THROWS_AS(DensityMatrix{ComplexMatrix::diag(std::vector<double>{0.7, 0.7})}, std::invalid_argument);
    CHECK_THROWS_AS(DensityMatrix{ComplexMatrix::diag(std::vector<double>{1.5, -0.5})}, std::invalid_argument);
    ComplexMatrix nan2(2, 2);
    nan2(0, 0) = std::nan("");
    CHECK_THROWS_AS(HermitianMatrix{nan2}, std::invalid_argument);

    const DensityMatrix ok{ComplexMatrix::diag(std::vector<double>{0.25, 0.75})};
    CHECK(ok.faithful());
    CHECK(ok.min_eigenvalue() == doctest::Approx(0.25));
}

TEST_CASE("parallel_for is deterministic and propagates work") {
    std::vector<double> out(64, 0.0);
    parallel_for(out.size(), [&](std::size_t i) { out[i] = std::sqrt(static_cast<double>(i)); });
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == doctest::Approx(std::sqrt(static_cast<double>(i))));
    CHECK(thread_count() >= 1);
}
