#include "orbithull/orbit.hpp"

#include "orbithull/factorize.hpp"
#include "orbithull/parallel.hpp"
#include "orbithull/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace orbithull::orbit {

namespace {

double re_inner(const ComplexMatrix& direction, const ComplexMatrix& w) {
    return frobenius_inner(direction, w).real();
}

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& b) { return u * b * u.adjoint(); }

// Projection onto the operator-norm unit ball by singular-value clipping.
ComplexMatrix clip_contraction(const ComplexMatrix& m, const Tolerances& tol) {
    const SvdResult s = svd(m, tol);
    if (s.values.empty() || s.values.front() <= 1.0) return m;
    const std::size_t n = m.rows();
    ComplexMatrix scaled(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const double sv = std::min(s.values[j], 1.0);
        for (std::size_t i = 0; i < n; ++i) scaled(i, j) = s.u(i, j) * sv;
    }
    return scaled * s.v.adjoint();
}

struct AscentResult {
    double value = -std::numeric_limits<double>::infinity();
    ComplexMatrix param_u;
    std::optional<ComplexMatrix> param_v;
};

ComplexMatrix skew_part(const ComplexMatrix& g, const ComplexMatrix& u) {
    ComplexMatrix k = g * u.adjoint();
    k -= (g * u.adjoint()).adjoint();
    k *= cplx(0.5, 0.0);
    return k;
}

// Ascent of Re<c, U b U*> over the unitary group from a given start.
AscentResult ascend_conjugation(const ComplexMatrix& c, const ComplexMatrix& b, ComplexMatrix u,
                                int max_iter, const Tolerances& tol) {
    auto objective = [&](const ComplexMatrix& v) { return re_inner(c, conjugate(v, b)); };
    double f = objective(u);
    double eta = 1.0;
    for (int iter = 0; iter < max_iter; ++iter) {
        const ComplexMatrix g = c * u * b.adjoint() + c.adjoint() * u * b;
        const ComplexMatrix k = skew_part(g, u);
        const double slope = k.frobenius_norm() * k.frobenius_norm();
        if (std::sqrt(slope) <= 1e-9) break;

        double step = eta;
        bool accepted = false;
        for (int h = 0; h < 30; ++h) {
            const ComplexMatrix candidate = expm_skew(cplx(step, 0.0) * k, tol) * u;
            const double fc = objective(candidate);
            if (fc >= f + 0.1 * step * slope) {
                u = candidate;
                f = fc;
                eta = std::min(step * 2.0, 1.0);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
    }
    AscentResult out;
    out.value = f;
    out.param_u = std::move(u);
    return out;
}

// Joint ascent of Re<c, U b V*> over two unitary factors.
AscentResult ascend_twosided(const ComplexMatrix& c, const ComplexMatrix& b, ComplexMatrix u,
                             ComplexMatrix v, int max_iter, const Tolerances& tol) {
    auto objective = [&](const ComplexMatrix& lu, const ComplexMatrix& rv) {
        return re_inner(c, lu * b * rv.adjoint());
    };
    double f = objective(u, v);
    double eta = 1.0;
    for (int iter = 0; iter < max_iter; ++iter) {
        const ComplexMatrix gu = c * v * b.adjoint();
        const ComplexMatrix gv = c.adjoint() * u * b;
        const ComplexMatrix ku = skew_part(gu, u);
        const ComplexMatrix kv = skew_part(gv, v);
        const double slope = ku.frobenius_norm() * ku.frobenius_norm() + kv.frobenius_norm() * kv.frobenius_norm();
        if (std::sqrt(slope) <= 1e-9) break;

        double step = eta;
        bool accepted = false;
        for (int h = 0; h < 30; ++h) {
            const ComplexMatrix cu = expm_skew(cplx(step, 0.0) * ku, tol) * u;
            const ComplexMatrix cv = expm_skew(cplx(step, 0.0) * kv, tol) * v;
            const double fc = objective(cu, cv);
            if (fc >= f + 0.1 * step * slope) {
                u = cu;
                v = cv;
                f = fc;
                eta = std::min(step * 2.0, 1.0);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
    }
    AscentResult out;
    out.value = f;
    out.param_u = std::move(u);
    out.param_v = std::move(v);
    return out;
}

// Projected gradient ascent of Re<c, u b u*> over the contraction ball.
AscentResult ascend_contraction(const ComplexMatrix& c, const ComplexMatrix& b, ComplexMatrix u,
                                int max_iter, const Tolerances& tol) {
    auto objective = [&](const ComplexMatrix& v) { return re_inner(c, conjugate(v, b)); };
    u = clip_contraction(u, tol);
    double f = objective(u);
    double eta = 1.0;
    for (int iter = 0; iter < max_iter; ++iter) {
        const ComplexMatrix g = c * u * b.adjoint() + c.adjoint() * u * b;
        const double gnorm2 = g.frobenius_norm() * g.frobenius_norm();
        if (std::sqrt(gnorm2) <= 1e-9) break;

        double step = eta;
        bool accepted = false;
        ComplexMatrix fallback;
        double fallback_value = f;
        for (int h = 0; h < 30; ++h) {
            const ComplexMatrix candidate = clip_contraction(u + cplx(step, 0.0) * g, tol);
            const double fc = objective(candidate);
            if (fc >= f + 1e-4 * step * gnorm2) {
                u = candidate;
                f = fc;
                eta = std::min(step * 2.0, 1.0);
                accepted = true;
                break;
            }
            if (fc > fallback_value) {
                fallback_value = fc;
                fallback = candidate;
            }
            step *= 0.5;
        }
        if (!accepted) {
            // The clipped step can flatten the Armijo slope near the
            // boundary; keep any plain improvement before giving up.
            if (fallback_value > f + 1e-13 * (1.0 + std::abs(f))) {
                u = fallback;
                f = fallback_value;
                continue;
            }
            break;
        }
    }
    AscentResult out;
    out.value = f;
    out.param_u = std::move(u);
    return out;
}

SupportValue finalize_from_params(const ComplexMatrix& c, const ComplexMatrix& b, OrbitType type,
                                  const ComplexMatrix& u, const std::optional<ComplexMatrix>& v) {
    SupportValue out;
    out.param_u = u;
    if (type == OrbitType::TwoSided) {
        out.param_v = v;
        out.maximizer = u * b * v->adjoint();
    } else {
        out.maximizer = conjugate(u, b);
    }
    out.value = re_inner(c, out.maximizer);
    out.exact = false;
    return out;
}

double chain_tolerance(const ComplexMatrix& c, const ComplexMatrix& b) {
    return 1e-8 * (1.0 + c.frobenius_norm() * b.frobenius_norm());
}

} // namespace

OrbitKind::OrbitKind(OrbitType t, ComplexMatrix b, const Tolerances& tol) : type(t), base(std::move(b)) {
    if (!base.is_square() || base.rows() == 0)
        throw std::invalid_argument("OrbitKind: square nonempty base required");
    if (!base.all_finite()) throw std::invalid_argument("OrbitKind: non-finite base");
    ComplexMatrix d = base - base.adjoint();
    hermitian_base = d.frobenius_norm() <= tol.hermitian * (1.0 + base.frobenius_norm());
}

SupportValue support_conjugation_hermitian(const HermitianMatrix& c, const HermitianMatrix& b,
                                           const Tolerances& tol) {
    if (c.dim() != b.dim())
        throw std::invalid_argument("support_conjugation_hermitian: dimension mismatch");
    const EighResult ec = eigh(c.matrix(), tol);
    const EighResult eb = eigh(b.matrix(), tol);

    SupportValue out;
    out.param_u = ec.vectors * eb.vectors.adjoint();
    out.maximizer = conjugate(out.param_u, b.matrix());
    out.value = 0.0;
    for (std::size_t i = 0; i < c.dim(); ++i) out.value += ec.values[i] * eb.values[i];
    out.exact = true;
    return out;
}

SupportValue support_twosided(const ComplexMatrix& c, const ComplexMatrix& b, const Tolerances& tol) {
    if (c.rows() != b.rows() || c.cols() != b.cols() || !c.is_square())
        throw std::invalid_argument("support_twosided: dimension mismatch");
    const SvdResult sc = svd(c, tol);
    const SvdResult sb = svd(b, tol);

    SupportValue out;
    out.param_u = sc.u * sb.u.adjoint();
    out.param_v = sc.v * sb.v.adjoint();
    out.maximizer = out.param_u * b * out.param_v->adjoint();
    out.value = 0.0;
    for (std::size_t i = 0; i < c.rows(); ++i) out.value += sc.values[i] * sb.values[i];
    out.exact = true;
    return out;
}

SupportValue support_riemannian(const ComplexMatrix& c, const ComplexMatrix& b, OrbitType type,
                                int restarts, std::uint64_t seed, int max_iter, const Tolerances& tol) {
    if (c.rows() != b.rows() || c.cols() != b.cols() || !c.is_square())
        throw std::invalid_argument("support_riemannian: dimension mismatch");
    if (restarts < 1) throw std::invalid_argument("support_riemannian: restarts must be >= 1");

    const std::size_t n = c.rows();
    const double cn = c.frobenius_norm(), bn = b.frobenius_norm();
    if (cn <= 1e-300 || bn <= 1e-300) {
        const ComplexMatrix id = ComplexMatrix::identity(n);
        return finalize_from_params(c, b, type, id, type == OrbitType::TwoSided ? std::optional(id) : std::nullopt);
    }
    const ComplexMatrix cs = cplx(1.0 / cn, 0.0) * c;
    const ComplexMatrix bs = cplx(1.0 / bn, 0.0) * b;

    std::vector<AscentResult> results(static_cast<std::size_t>(restarts));
    parallel_for(results.size(), [&](std::size_t r) {
        Rng rng(mix_seed(seed, r));
        ComplexMatrix u0 =
            r == 0 ? ComplexMatrix::identity(n)
                   : (type == OrbitType::ContractionConjugation ? clip_contraction(ginibre(n, rng), tol)
                                                                : haar_unitary(n, rng));
        switch (type) {
            case OrbitType::UnitaryConjugation:
                results[r] = ascend_conjugation(cs, bs, std::move(u0), max_iter, tol);
                break;
            case OrbitType::ContractionConjugation:
                results[r] = ascend_contraction(cs, bs, std::move(u0), max_iter, tol);
                break;
            case OrbitType::TwoSided: {
                ComplexMatrix v0 = r == 0 ? ComplexMatrix::identity(n) : haar_unitary(n, rng);
                results[r] = ascend_twosided(cs, bs, std::move(u0), std::move(v0), max_iter, tol);
                break;
            }
        }
    });

    std::size_t best = 0;
    for (std::size_t r = 1; r < results.size(); ++r)
        if (results[r].value > results[best].value) best = r;

    // Re-validate the winner and recompute the bound against the original
    // (unscaled) inputs, so the value is certified from the parameters alone.
    ComplexMatrix u = results[best].param_u;
    if (type == OrbitType::ContractionConjugation) {
        u = clip_contraction(u, tol);
    } else {
        (void)UnitaryMatrix{u, tol};
    }
    std::optional<ComplexMatrix> v = results[best].param_v;
    if (v) (void)UnitaryMatrix{*v, tol};
    return finalize_from_params(c, b, type, u, v);
}

SupportValue lmo(const OrbitKind& kind, const ComplexMatrix& direction, const LmoOptions& opts,
                 const Tolerances& tol) {
    if (direction.rows() != kind.base.rows() || direction.cols() != kind.base.cols())
        throw std::invalid_argument("lmo: dimension mismatch");

    if (kind.type == OrbitType::TwoSided) return support_twosided(direction, kind.base, tol);

    if (kind.type == OrbitType::UnitaryConjugation && kind.hermitian_base) {
        // Orbit points are Hermitian, so only the Hermitian part of the
        // direction contributes to Re<D, w>; the closed form stays exact for
        // arbitrary directions.
        const HermitianMatrix hd{hermitian_part(direction), tol};
        const HermitianMatrix hb{kind.base, tol};
        SupportValue sv = support_conjugation_hermitian(hd, hb, tol);
        sv.value = re_inner(direction, sv.maximizer);
        return sv;
    }

    return support_riemannian(direction, kind.base, kind.type, opts.restarts, opts.seed, opts.max_iter, tol);
}

MembershipVerdict frank_wolfe_project(const ComplexMatrix& a, const OrbitKind& kind, double tol,
                                      int max_iter, const LmoOptions& opts, const Tolerances& tolerances) {
    if (a.rows() != kind.base.rows() || a.cols() != kind.base.cols())
        throw std::invalid_argument("frank_wolfe_project: dimension mismatch");
    if (!(tol > 0.0)) throw std::invalid_argument("frank_wolfe_project: tol must be positive");

    const bool exact_oracle = kind.type == OrbitType::TwoSided ||
                              (kind.type == OrbitType::UnitaryConjugation && kind.hermitian_base);
    constexpr std::size_t atom_cap = 64;

    MembershipVerdict verdict;
    verdict.lmo_exact = exact_oracle;

    std::vector<OrbitAtom> atoms;
    std::vector<double> weights;
    {
        const SupportValue first = lmo(kind, a, opts, tolerances);
        atoms.push_back(OrbitAtom{first.maximizer, first.param_u, first.param_v});
        weights.push_back(1.0);
    }
    ComplexMatrix x = atoms.front().point;

    auto recombine = [&]() {
        ComplexMatrix z = ComplexMatrix::zero(a.rows());
        for (std::size_t j = 0; j < atoms.size(); ++j) z += cplx(weights[j], 0.0) * atoms[j].point;
        return z;
    };

    double best_dist = std::numeric_limits<double>::infinity();
    ComplexMatrix best_x = x;

    auto make_inside = [&]() {
        HullCombination cert;
        cert.weights = weights;
        cert.atoms = atoms;
        cert.base = kind.base;
        cert.target = a;
        x = recombine();
        cert.residual = (x - a).frobenius_norm();
        verdict.status = MembershipStatus::Inside;
        verdict.distance_estimate = cert.residual;
        verdict.certificate = std::move(cert);
        verdict.projection_estimate = x;
    };

    int iter = 0;
    for (; iter < max_iter; ++iter) {
        ComplexMatrix d = a - x;
        const double dist = d.frobenius_norm();
        if (dist < best_dist) {
            best_dist = dist;
            best_x = x;
        }
        if (dist <= tol) {
            // Resync against the stored atoms before certifying.
            x = recombine();
            d = a - x;
            if (d.frobenius_norm() <= tol) {
                verdict.iterations = static_cast<std::size_t>(iter);
                make_inside();
                return verdict;
            }
        }

        const SupportValue sv = lmo(kind, d, opts, tolerances);
        const double h = sv.value;
        if (exact_oracle) {
            const double margin = re_inner(d, a) - h;
            if (margin / dist >= 2.0 * tol) {
                verdict.status = MembershipStatus::Outside;
                verdict.distance_estimate = dist;
                verdict.iterations = static_cast<std::size_t>(iter);
                verdict.witness = SeparationWitness{d, margin};
                verdict.projection_estimate = x;
                return verdict;
            }
        }

        const double gap = h - re_inner(d, x);
        if (gap <= 1e-15 * (1.0 + a.frobenius_norm())) break; // stationary

        // Away vertex: active atom minimizing Re<D, atom>.
        std::size_t away = atoms.size();
        double away_score = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < atoms.size(); ++j) {
            const double s = re_inner(d, atoms[j].point);
            if (weights[j] > 0.0 && s < away_score) {
                away_score = s;
                away = j;
            }
        }
        const double away_gap = re_inner(d, x) - away_score;

        const bool use_away = away < atoms.size() && away_gap > gap && weights[away] < 1.0 - 1e-15;
        if (use_away) {
            ComplexMatrix dir = x - atoms[away].point;
            const double dd = dir.frobenius_norm() * dir.frobenius_norm();
            if (dd <= 0.0) break;
            const double gamma_max = weights[away] / (1.0 - weights[away]);
            const double gamma = std::clamp(frobenius_inner(dir, d).real() / dd, 0.0, gamma_max);
            if (gamma <= 0.0) break;
            for (auto& wj : weights) wj *= 1.0 + gamma;
            weights[away] -= gamma;
            x += cplx(gamma, 0.0) * dir;
        } else {
            // Reuse a stored atom when the oracle returns a near-duplicate.
            std::size_t target = atoms.size();
            for (std::size_t j = 0; j < atoms.size(); ++j) {
                if ((atoms[j].point - sv.maximizer).frobenius_norm() <=
                    1e-12 * (1.0 + sv.maximizer.frobenius_norm())) {
                    target = j;
                    break;
                }
            }
            if (target == atoms.size()) {
                if (atoms.size() >= atom_cap) {
                    std::size_t evict = 0;
                    for (std::size_t j = 1; j < atoms.size(); ++j)
                        if (weights[j] < weights[evict]) evict = j;
                    const double we = weights[evict];
                    if (we >= 1.0 - 1e-12) break; // degenerate; stop with Undecided
                    atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(evict));
                    weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(evict));
                    for (auto& wj : weights) wj /= 1.0 - we;
                    x = recombine();
                    d = a - x;
                }
                atoms.push_back(OrbitAtom{sv.maximizer, sv.param_u, sv.param_v});
                weights.push_back(0.0);
                target = atoms.size() - 1;
            }
            ComplexMatrix dir = atoms[target].point - x;
            const double dd = dir.frobenius_norm() * dir.frobenius_norm();
            if (dd <= 0.0) break;
            const double gamma = std::clamp(frobenius_inner(dir, d).real() / dd, 0.0, 1.0);
            if (gamma <= 0.0) break;
            for (auto& wj : weights) wj *= 1.0 - gamma;
            weights[target] += gamma;
            x += cplx(gamma, 0.0) * dir;
        }

        // Prune dead atoms and periodically resynchronize the iterate.
        for (std::size_t j = atoms.size(); j-- > 0;) {
            if (weights[j] <= 1e-15) {
                atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(j));
                weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(j));
            }
        }
        if ((iter + 1) % 50 == 0) {
            double sum = 0.0;
            for (double wj : weights) sum += wj;
            for (auto& wj : weights) wj /= sum;
            x = recombine();
        }
    }

    x = recombine();
    const double final_dist = (a - x).frobenius_norm();
    verdict.iterations = static_cast<std::size_t>(iter);
    if (final_dist <= tol) {
        make_inside();
        return verdict;
    }
    if (final_dist < best_dist) {
        best_dist = final_dist;
        best_x = x;
    }
    verdict.status = MembershipStatus::Undecided;
    verdict.distance_estimate = best_dist;
    verdict.projection_estimate = best_x;
    return verdict;
}

std::pair<ComplexMatrix, ComplexMatrix> russo_dye_mean2(const ComplexMatrix& a, const Tolerances& tol) {
    if (!a.is_square() || a.rows() == 0) throw std::invalid_argument("russo_dye_mean2: square matrix required");
    const SvdResult s = svd(a, tol);
    if (!s.values.empty() && s.values.front() > 1.0 + tol.density_psd)
        throw std::invalid_argument("russo_dye_mean2: operator norm exceeds 1");

    const std::size_t n = a.rows();
    const ComplexMatrix w = s.u * s.v.adjoint();

    // |a| = V Sigma V^* and Theta = arccos(Sigma) give
    // W V exp(+-i Theta) V^*, whose average is W V cos(Theta) V^* = a.
    ComplexMatrix plus(n, n), minus(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const double sigma = std::clamp(s.values[j], 0.0, 1.0);
        // acos amplifies rounding near sigma = 1 (theta ~ sqrt(2 eps)); snap
        // so unitary inputs split into two copies of themselves.
        const double theta = sigma >= 1.0 - 1e-12 ? 0.0 : std::acos(sigma);
        const cplx ep = std::exp(cplx(0.0, theta));
        const cplx em = std::exp(cplx(0.0, -theta));
        for (std::size_t i = 0; i < n; ++i) {
            plus(i, j) = s.v(i, j) * ep;
            minus(i, j) = s.v(i, j) * em;
        }
    }
    ComplexMatrix u1 = w * (plus * s.v.adjoint());
    ComplexMatrix u2 = w * (minus * s.v.adjoint());

    (void)UnitaryMatrix{u1, tol};
    (void)UnitaryMatrix{u2, tol};
    ComplexMatrix mean = u1 + u2;
    mean *= cplx(0.5, 0.0);
    if ((mean - a).frobenius_norm() > 1e-9 * static_cast<double>(n))
        throw std::runtime_error("russo_dye_mean2: reconstruction check failed");
    return {std::move(u1), std::move(u2)};
}

KadisonPedersenResult kadison_pedersen_mean(const ComplexMatrix& a, int n_terms, const Tolerances& tol) {
    if (n_terms < 2) throw std::invalid_argument("kadison_pedersen_mean: need at least two terms");
    if (!a.is_square() || a.rows() == 0)
        throw std::invalid_argument("kadison_pedersen_mean: square matrix required");
    const std::size_t n = a.rows();
    const double op = operator_norm(a, tol);
    if (op > 1.0 + tol.density_psd)
        throw std::invalid_argument("kadison_pedersen_mean: operator norm exceeds 1");

    KadisonPedersenResult out;
    out.paper_hypothesis = op < 1.0 - 2.0 / static_cast<double>(n_terms);

    if (a.frobenius_norm() <= 1e-14 * static_cast<double>(n)) {
        // Equally spaced phases average to zero exactly.
        for (int k = 0; k < n_terms; ++k) {
            const double angle = 2.0 * std::numbers::pi * k / n_terms;
            out.unitaries.push_back(std::exp(cplx(0.0, angle)) * ComplexMatrix::identity(n));
        }
        return out;
    }

    auto even_cover = [&](const ComplexMatrix& m, int count) {
        const auto [u1, u2] = russo_dye_mean2(m, tol);
        std::vector<ComplexMatrix> list;
        for (int k = 0; k < count / 2; ++k) {
            list.push_back(u1);
            list.push_back(u2);
        }
        return list;
    };

    if (n_terms % 2 == 0) {
        out.unitaries = even_cover(a, n_terms);
    } else {
        // Peel the polar unitary: a = (1/n) W + ((n-1)/n) b with
        // sigma(b) = |n sigma(a) - 1| / (n - 1) <= 1.
        const SvdResult s = svd(a, tol);
        const ComplexMatrix w = s.u * s.v.adjoint();
        ComplexMatrix b = cplx(static_cast<double>(n_terms), 0.0) * a - w;
        b *= cplx(1.0 / static_cast<double>(n_terms - 1), 0.0);
        if (operator_norm(b, tol) <= 1.0 + tol.density_psd) {
            out.unitaries.push_back(w);
            auto rest = even_cover(b, n_terms - 1);
            out.unitaries.insert(out.unitaries.end(), rest.begin(), rest.end());
        } else {
            out.fallback_even = true;
            out.unitaries = even_cover(a, n_terms + 1);
        }
    }

    ComplexMatrix mean = ComplexMatrix::zero(n);
    for (const auto& u : out.unitaries) mean += u;
    mean *= cplx(1.0 / static_cast<double>(out.unitaries.size()), 0.0);
    if ((mean - a).frobenius_norm() > 1e-9 * static_cast<double>(n))
        throw std::runtime_error("kadison_pedersen_mean: reconstruction check failed");
    return out;
}

ChainReport inclusion_chain_check(const ComplexMatrix& b, const std::vector<ComplexMatrix>& directions,
                                  const LmoOptions& opts, const Tolerances& tol) {
    const OrbitKind unitary_kind{OrbitType::UnitaryConjugation, b, tol};
    ChainReport report;

    for (const auto& c : directions) {
        ChainEntry entry;
        const SupportValue s3 = support_twosided(c, b, tol);
        entry.h3 = s3.value;

        const SupportValue s1 = lmo(unitary_kind, c, opts, tol);
        entry.h1 = s1.value;
        entry.h1_exact = s1.exact;

        SupportValue s2 =
            support_riemannian(c, b, OrbitType::ContractionConjugation, opts.restarts, opts.seed, opts.max_iter, tol);
        // A unitary is a contraction, so the h1 maximizer is feasible for h2;
        // folding it in keeps the h2 bound from undercutting h1.
        const double via_h1 = re_inner(c, conjugate(s1.param_u, b));
        if (via_h1 > s2.value) {
            s2.value = via_h1;
            s2.param_u = s1.param_u;
            s2.maximizer = conjugate(s1.param_u, b);
        }
        entry.h2 = s2.value;

        const double slack = chain_tolerance(c, b);
        if (entry.h1 > entry.h3 + slack || entry.h2 > entry.h3 + slack) entry.hard_violation = true;
        if (entry.h1 > entry.h2 + slack && !entry.hard_violation) entry.advisory = true;
        report.any_hard_violation = report.any_hard_violation || entry.hard_violation;
        report.entries.push_back(entry);
    }
    return report;
}

HullCombination contraction_scaling_check(const HullCombination& cert, double t, const Tolerances& tol) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("contraction_scaling_check: t must lie in [0, 1]");
    const double root = std::sqrt(t);

    HullCombination scaled;
    scaled.weights = cert.weights;
    scaled.base = cert.base;
    scaled.target = cplx(t, 0.0) * cert.target;
    for (const auto& atom : cert.atoms) {
        OrbitAtom next;
        next.param_u = cplx(root, 0.0) * atom.param_u;
        const double op = operator_norm(next.param_u, tol);
        if (op > 1.0 + tol.density_psd)
            throw std::invalid_argument("contraction_scaling_check: scaled parameter is not a contraction");
        next.point = conjugate(next.param_u, cert.base);
        scaled.atoms.push_back(std::move(next));
    }
    ComplexMatrix mix = ComplexMatrix::zero(cert.base.rows());
    for (std::size_t j = 0; j < scaled.atoms.size(); ++j)
        mix += cplx(scaled.weights[j], 0.0) * scaled.atoms[j].point;
    scaled.residual = (mix - scaled.target).frobenius_norm();
    return scaled;
}

} // namespace orbithull::orbit
