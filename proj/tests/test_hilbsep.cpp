#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "orbithull/hilbsep.hpp"
#include "orbithull/random.hpp"

#include "oracles.hpp"

#include <cmath>
#include <vector>

using namespace orbithull;
using namespace orbithull::hilbsep;

namespace {

EuclideanVector random_vector(std::size_t dim, Rng& rng, double scale = 1.0) {
    EuclideanVector v(dim);
    for (auto& c : v) c = scale * rng.gaussian();
    return v;
}

FinitePointSet random_point_set(std::size_t dim, std::size_t count, Rng& rng) {
    std::vector<EuclideanVector> pts;
    for (std::size_t i = 0; i < count; ++i) pts.push_back(random_vector(dim, rng));
    return FinitePointSet{pts};
}

EuclideanVector random_hull_member(const FinitePointSet& x, Rng& rng) {
    std::vector<double> w(x.size());
    double sum = 0.0;
    for (auto& v : w) {
        v = -std::log(1.0 - rng.uniform());
        sum += v;
    }
    EuclideanVector out(x.dim(), 0.0);
    for (std::size_t j = 0; j < x.size(); ++j)
        for (std::size_t k = 0; k < x.dim(); ++k) out[k] += (w[j] / sum) * x.points()[j][k];
    return out;
}

} // namespace

TEST_CASE("project_hull fixed geometry") {
    const FinitePointSet seg{{{0.0, 0.0}, {0.0, 2.0}}};
    const auto nearest = project_hull({2.0, 0.0}, seg, 1e-10);
    CHECK(nearest.converged);
    CHECK(nearest.distance == doctest::Approx(2.0));
    CHECK(nearest.point[0] == doctest::Approx(0.0));
    CHECK(nearest.point[1] == doctest::Approx(0.0));

    const FinitePointSet diag{{{1.0, 0.0}, {0.0, 1.0}}};
    const auto mid = project_hull({1.0, 1.0}, diag, 1e-10);
    CHECK(mid.distance == doctest::Approx(std::sqrt(2.0) / 2.0));
    CHECK(mid.point[0] == doctest::Approx(0.5));
    CHECK(mid.point[1] == doctest::Approx(0.5));

    // Membership: a point of X projects to itself at distance zero.
    const auto member = project_hull({0.0, 2.0}, seg, 1e-10);
    CHECK(member.distance == doctest::Approx(0.0));
    CHECK(member.point[1] == doctest::Approx(2.0));

    CHECK_THROWS_AS((void)project_hull({1.0, 2.0, 3.0}, seg, 1e-10), std::invalid_argument);
    CHECK_THROWS_AS((void)project_hull({1.0, 2.0}, seg, 0.0), std::invalid_argument);
}

TEST_CASE("project_hull certificate and weights") {
    Rng rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t dim = 2 + trial % 4;
        const FinitePointSet x = random_point_set(dim, 3 + trial % 5, rng);
        const EuclideanVector xi = random_vector(dim, rng, 1.5);
        const auto res = project_hull(xi, x, 1e-9);
        REQUIRE(res.converged);

        double wsum = 0.0;
        for (double v : res.coefficients) {
            REQUIRE(v >= 0.0);
            wsum += v;
        }
        REQUIRE(std::abs(wsum - 1.0) <= 1e-10);

        EuclideanVector rebuilt(dim, 0.0);
        for (std::size_t j = 0; j < x.size(); ++j)
            for (std::size_t k = 0; k < dim; ++k) rebuilt[k] += res.coefficients[j] * x.points()[j][k];
        REQUIRE(hilbsep::distance(rebuilt, res.point) <= 1e-8);

        // First-order optimality against every input point.
        EuclideanVector residual(dim);
        for (std::size_t k = 0; k < dim; ++k) residual[k] = xi[k] - res.point[k];
        for (const auto& p : x.points()) {
            EuclideanVector offset(dim);
            for (std::size_t k = 0; k < dim; ++k) offset[k] = p[k] - res.point[k];
            REQUIRE(dot(residual, offset) <= 1e-9 * (1.0 + norm(xi)));
        }
    }
}

TEST_CASE("project_hull matches exhaustive face enumeration") {
    Rng rng(202);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t dim = 2 + trial % 2;
        const std::size_t count = 2 + trial % 3; // at most 4 points
        std::vector<EuclideanVector> pts;
        for (std::size_t i = 0; i < count; ++i) pts.push_back(random_vector(dim, rng));
        const EuclideanVector xi = random_vector(dim, rng, 1.5);

        const auto fast = project_hull(xi, FinitePointSet{pts}, 1e-10);
        const auto exact = oracles::exact_hull_projection(xi, pts);
        REQUIRE(std::abs(fast.distance - exact.distance) <= 1e-4);
    }
}

TEST_CASE("metric condition on fixed geometry") {
    const FinitePointSet x{{{1.0, 0.0}, {0.0, 1.0}}};
    const EuclideanVector xi{1.0, 1.0};

    const auto self_report = metric_condition_check(xi, x, {xi});
    CHECK(self_report.holds_for_all);

    // A challenger strictly between xi and the hull refutes the condition.
    const auto refuted = metric_condition_check(xi, x, {{0.75, 0.75}});
    CHECK_FALSE(refuted.holds_for_all);
    CHECK(refuted.failures == std::vector<std::size_t>{0});

    Rng rng(7);
    std::vector<EuclideanVector> random_etas;
    for (int i = 0; i < 1000; ++i) random_etas.push_back(random_vector(2, rng, 2.0));
    const auto inside_report = metric_condition_check({0.5, 0.5}, x, random_etas);
    CHECK(inside_report.holds_for_all);
}

TEST_CASE("metric condition forward direction on random hulls") {
    Rng rng(303);
    int pairs = 0;
    while (pairs < 1000) {
        const std::size_t dim = 2 + pairs % 5; // dims 2..6
        const FinitePointSet x = random_point_set(dim, 3 + pairs % 4, rng);
        const EuclideanVector xi = random_hull_member(x, rng);
        const EuclideanVector eta = random_vector(dim, rng, 2.0);
        const auto report = metric_condition_check(xi, x, {eta});
        REQUIRE(report.holds_for_all);
        ++pairs;
    }
}

TEST_CASE("separating challenger fixed geometry") {
    const FinitePointSet origin{{{0.0, 0.0}}};
    const auto simple = separating_challenger({2.0, 0.0}, origin);
    REQUIRE(simple.has_value());
    CHECK(hilbsep::distance(*simple, {0.0, 0.0}) <= 1e-9);

    const FinitePointSet diag{{{1.0, 0.0}, {0.0, 1.0}}};
    const auto eta = separating_challenger({1.0, 1.0}, diag);
    REQUIRE(eta.has_value());
    CHECK(hilbsep::distance(*eta, {0.5, 0.5}) <= 1e-6);
    for (const auto& p : diag.points())
        CHECK(hilbsep::distance(*eta, p) < hilbsep::distance({1.0, 1.0}, p));

    CHECK_FALSE(separating_challenger({0.5, 0.5}, diag).has_value());
}

TEST_CASE("separating challenger refutes the metric condition outside the hull") {
    Rng rng(404);
    int instances = 0;
    while (instances < 1000) {
        const std::size_t dim = 2 + instances % 5;
        const FinitePointSet x = random_point_set(dim, 2 + instances % 4, rng);
        const EuclideanVector xi = random_vector(dim, rng, 2.0);
        const auto proj = project_hull(xi, x, 1e-12);
        if (proj.distance <= 1e-4) continue;

        const auto eta = separating_challenger(xi, x);
        REQUIRE(eta.has_value());
        for (const auto& p : x.points()) REQUIRE(hilbsep::distance(*eta, p) < hilbsep::distance(xi, p));
        const auto report = metric_condition_check(xi, x, {*eta});
        REQUIRE_FALSE(report.holds_for_all);
        ++instances;
    }
}

TEST_CASE("halfspace scenario") {
    // eta = (0,1): the witness sits on the negative second axis.
    const auto zeta = halfspace_scenario(2, {0.0, 1.0});
    CHECK(zeta[0] == doctest::Approx(0.0));
    CHECK(zeta[1] < 0.0);
    const EuclideanVector xi{1.0, 0.0};
    CHECK(hilbsep::distance(xi, zeta) < hilbsep::distance({0.0, 1.0}, zeta));

    const auto nearly_axial = halfspace_scenario(2, {-1.0, 1e-3});
    CHECK(nearly_axial[0] <= 0.0);
    CHECK(hilbsep::distance(xi, nearly_axial) < hilbsep::distance({-1.0, 1e-3}, nearly_axial));

    CHECK_THROWS_AS((void)halfspace_scenario(1, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS((void)halfspace_scenario(2, {3.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS((void)halfspace_scenario(2, {-0.5, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS((void)halfspace_scenario(2, {0.0, 0.0}), std::invalid_argument);

    Rng rng(505);
    int done = 0;
    while (done < 1000) {
        EuclideanVector eta = random_vector(3, rng, 2.0);
        double off_axis = std::sqrt(eta[1] * eta[1] + eta[2] * eta[2]);
        if (off_axis <= 1e-6) continue;
        const auto witness = halfspace_scenario(3, eta);
        REQUIRE(witness[0] <= 0.0);
        const EuclideanVector xi3{1.0, 0.0, 0.0};
        REQUIRE(hilbsep::distance(xi3, witness) < hilbsep::distance(eta, witness));
        ++done;
    }
}

TEST_CASE("boundary condition check") {
    const FinitePointSet x{{{1.0, 0.0}, {0.0, 1.0}}};

    Rng rng(606);
    std::vector<EuclideanVector> segment_samples;
    for (int i = 0; i <= 100; ++i) {
        const double t = i / 100.0;
        segment_samples.push_back({1.0 - t, t});
    }
    const auto inside = boundary_condition_check({0.5, 0.5}, x, segment_samples);
    CHECK(inside.fraction == doctest::Approx(1.0));
    CHECK_FALSE(inside.vacuous);

    // Strictly outside with samples near the projection: some sample refutes.
    const EuclideanVector xi{1.0, 1.0};
    std::vector<EuclideanVector> near_projection;
    for (int i = 0; i < 50; ++i)
        near_projection.push_back({0.5 + 0.01 * rng.gaussian(), 0.5 + 0.01 * rng.gaussian()});
    const auto outside = boundary_condition_check(xi, x, near_projection);
    CHECK(outside.fraction < 1.0);

    const auto vacuous = boundary_condition_check(xi, x, {});
    CHECK(vacuous.vacuous);
    CHECK(vacuous.total == 0);
}
