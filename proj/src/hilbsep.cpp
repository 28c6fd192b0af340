#include "orbithull/hilbsep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace orbithull::hilbsep {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

EuclideanVector combination(const FinitePointSet& x, const std::vector<double>& w) {
    EuclideanVector out(x.dim(), 0.0);
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (w[j] == 0.0) continue;
        const auto& p = x.points()[j];
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += w[j] * p[k];
    }
    return out;
}

// True when some point of X is at least as close to eta as xi is to it.
bool condition_holds(const EuclideanVector& xi, const FinitePointSet& x, const EuclideanVector& eta) {
    for (const auto& zeta : x.points())
        if (distance(xi, zeta) <= distance(eta, zeta)) return true;
    return false;
}

} // namespace

double dot(const EuclideanVector& a, const EuclideanVector& b) {
    require_same_dim(a.size(), b.size(), "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const EuclideanVector& a) { return std::sqrt(dot(a, a)); }

double distance(const EuclideanVector& a, const EuclideanVector& b) {
    require_same_dim(a.size(), b.size(), "distance");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

FinitePointSet::FinitePointSet(std::vector<EuclideanVector> points) : points_(std::move(points)) {
    if (points_.empty()) throw std::invalid_argument("FinitePointSet: at least one point required");
    for (const auto& p : points_) {
        if (p.size() != points_.front().size())
            throw std::invalid_argument("FinitePointSet: all points must share one dimension");
        for (double v : p)
            if (!std::isfinite(v)) throw std::invalid_argument("FinitePointSet: non-finite coordinate");
    }
}

ProjectionResult project_hull(const EuclideanVector& xi, const FinitePointSet& x, double tol) {
    require_same_dim(xi.size(), x.dim(), "project_hull");
    if (!(tol > 0.0)) throw std::invalid_argument("project_hull: tol must be positive");

    const std::size_t m = x.size();
    const std::size_t dim = x.dim();
    const double stop = tol * (1.0 + norm(xi));

    std::vector<double> w(m, 0.0);
    std::size_t start = 0;
    double best = distance(xi, x.points()[0]);
    for (std::size_t j = 1; j < m; ++j) {
        const double d = distance(xi, x.points()[j]);
        if (d < best) {
            best = d;
            start = j;
        }
    }
    w[start] = 1.0;
    EuclideanVector pt = x.points()[start];

    const std::size_t cap = 200000;
    std::size_t iter = 0;
    double gap = 0.0;
    bool converged = false;

    for (; iter < cap; ++iter) {
        EuclideanVector residual(dim);
        for (std::size_t k = 0; k < dim; ++k) residual[k] = xi[k] - pt[k];

        // Frank-Wolfe vertex maximizes <residual, p>; away vertex minimizes
        // it over the active set. Ties resolve to the lowest index.
        std::size_t fw = 0, away = m;
        double fw_score = -std::numeric_limits<double>::infinity();
        double away_score = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < m; ++j) {
            const double s = dot(residual, x.points()[j]);
            if (s > fw_score) {
                fw_score = s;
                fw = j;
            }
            if (w[j] > 0.0 && s < away_score) {
                away_score = s;
                away = j;
            }
        }
        const double base = dot(residual, pt);
        gap = fw_score - base;
        if (gap <= stop) {
            converged = true;
            break;
        }

        const double away_gap = base - away_score;
        EuclideanVector dir(dim);
        double gamma_max;
        bool is_away = away < m && away_gap > gap && w[away] < 1.0;
        if (is_away) {
            const auto& pv = x.points()[away];
            for (std::size_t k = 0; k < dim; ++k) dir[k] = pt[k] - pv[k];
            gamma_max = w[away] / (1.0 - w[away]);
        } else {
            const auto& ps = x.points()[fw];
            for (std::size_t k = 0; k < dim; ++k) dir[k] = ps[k] - pt[k];
            gamma_max = 1.0;
        }
        const double dd = dot(dir, dir);
        if (dd <= 0.0) break;
        double gamma = dot(residual, dir) / dd;
        gamma = std::clamp(gamma, 0.0, gamma_max);
        if (gamma <= 0.0) break;

        if (is_away) {
            for (auto& v : w) v *= 1.0 + gamma;
            w[away] -= gamma;
            if (w[away] < 1e-15) w[away] = 0.0;
        } else if (gamma == 1.0) {
            std::fill(w.begin(), w.end(), 0.0);
            w[fw] = 1.0;
        } else {
            for (auto& v : w) v *= 1.0 - gamma;
            w[fw] += gamma;
        }

        if ((iter + 1) % 64 == 0) {
            double sum = 0.0;
            for (double v : w) sum += v;
            for (auto& v : w) v /= sum;
            pt = combination(x, w);
        } else {
            for (std::size_t k = 0; k < dim; ++k) pt[k] += gamma * dir[k];
        }
    }

    double sum = 0.0;
    for (double v : w) sum += v;
    for (auto& v : w) v /= sum;
    pt = combination(x, w);

    ProjectionResult out;
    out.point = std::move(pt);
    out.distance = distance(xi, out.point);
    out.coefficients = std::move(w);
    out.gap = gap;
    out.iterations = iter;
    out.converged = converged;
    return out;
}

MetricConditionReport metric_condition_check(const EuclideanVector& xi, const FinitePointSet& x,
                                             const std::vector<EuclideanVector>& challengers) {
    MetricConditionReport report;
    for (std::size_t i = 0; i < challengers.size(); ++i) {
        require_same_dim(challengers[i].size(), x.dim(), "metric_condition_check");
        if (!condition_holds(xi, x, challengers[i])) {
            report.holds_for_all = false;
            report.failures.push_back(i);
        }
    }
    require_same_dim(xi.size(), x.dim(), "metric_condition_check");
    return report;
}

std::optional<EuclideanVector> separating_challenger(const EuclideanVector& xi, const FinitePointSet& x,
                                                     const Tolerances& tol) {
    const ProjectionResult proj = project_hull(xi, x, 1e-12);
    if (proj.distance <= tol.separation) return std::nullopt;

    const double margin_required = tol.strictness * (1.0 + norm(xi));
    auto min_margin = [&](const EuclideanVector& eta) {
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& p : x.points()) worst = std::min(worst, distance(xi, p) - distance(eta, p));
        return worst;
    };

    // eta(s) walks from the projection toward xi; an inexact projection can
    // tie against an extreme point, and the walk restores strictness.
    EuclideanVector eta = proj.point;
    double s = 0.0;
    double best_margin = min_margin(eta);
    EuclideanVector best_eta = eta;
    for (int step = 0; step < 60 && best_margin < margin_required; ++step) {
        s = 0.5 * (s + 1.0);
        for (std::size_t k = 0; k < eta.size(); ++k) eta[k] = proj.point[k] + s * (xi[k] - proj.point[k]);
        const double m = min_margin(eta);
        if (m > best_margin) {
            best_margin = m;
            best_eta = eta;
        }
    }
    if (best_margin >= margin_required || best_margin > 0.0) return best_eta;
    throw std::runtime_error("separating_challenger: could not certify a strict challenger");
}

EuclideanVector halfspace_scenario(std::size_t dim, const EuclideanVector& eta, const Tolerances& tol) {
    if (dim < 2) throw std::invalid_argument("halfspace_scenario: dim must be at least 2");
    require_same_dim(eta.size(), dim, "halfspace_scenario");

    const double eta_norm = norm(eta);
    bool on_axis = eta_norm <= 1e-12;
    if (!on_axis) {
        double plus = 0.0, minus = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            const double unit = eta[k] / eta_norm;
            const double axis = k == 0 ? 1.0 : 0.0;
            plus += (unit - axis) * (unit - axis);
            minus += (unit + axis) * (unit + axis);
        }
        on_axis = std::sqrt(plus) <= 1e-9 || std::sqrt(minus) <= 1e-9;
    }
    if (on_axis) throw std::invalid_argument("halfspace_scenario: eta lies on the axis through xi");

    EuclideanVector xi(dim, 0.0);
    xi[0] = 1.0;

    // Median hyperplane of [xi, eta]: 2<eta - xi, z> = ||eta||^2 - 1. Within
    // the boundary z_1 = 0 only the off-axis part of eta matters, and it is
    // nonzero by the precondition.
    double perp_sq = 0.0;
    for (std::size_t k = 1; k < dim; ++k) perp_sq += eta[k] * eta[k];
    const double tau = (eta_norm * eta_norm - 1.0) / (2.0 * perp_sq);
    EuclideanVector zeta(dim, 0.0);
    for (std::size_t k = 1; k < dim; ++k) zeta[k] = tau * eta[k];

    // Pushing along -eta_perp keeps zeta on the boundary and grows
    // ||eta - zeta||^2 - ||xi - zeta||^2 linearly.
    const double perp = std::sqrt(perp_sq);
    const double margin_required = tol.strictness * (1.0 + 1.0);
    double t = 1.0;
    for (int step = 0; step < 200; ++step) {
        EuclideanVector candidate = zeta;
        for (std::size_t k = 1; k < dim; ++k) candidate[k] -= t * eta[k] / perp;
        if (distance(eta, candidate) - distance(xi, candidate) >= margin_required) return candidate;
        t *= 2.0;
    }
    throw std::runtime_error("halfspace_scenario: failed to reach a strict witness");
}

BoundaryConditionReport boundary_condition_check(const EuclideanVector& xi, const FinitePointSet& x,
                                                 const std::vector<EuclideanVector>& boundary_samples) {
    BoundaryConditionReport report;
    report.total = boundary_samples.size();
    if (boundary_samples.empty()) {
        report.vacuous = true;
        report.fraction = 1.0;
        return report;
    }
    for (const auto& eta : boundary_samples) {
        require_same_dim(eta.size(), x.dim(), "boundary_condition_check");
        if (condition_holds(xi, x, eta)) ++report.satisfied;
    }
    report.fraction = static_cast<double>(report.satisfied) / static_cast<double>(report.total);
    return report;
}

} // namespace orbithull::hilbsep
