#include "orbithull/factorize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace orbithull {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
    if (!m.is_square() || m.rows() == 0) throw std::invalid_argument(std::string(what) + ": square nonempty matrix required");
    if (!m.all_finite()) throw std::invalid_argument(std::string(what) + ": non-finite entries");
}

void require_hermitian(const ComplexMatrix& m, double tol, const char* what) {
    ComplexMatrix d = m - m.adjoint();
    if (d.frobenius_norm() > tol * (1.0 + m.frobenius_norm()))
        throw std::invalid_argument(std::string(what) + ": matrix is not Hermitian within tolerance");
}

double offdiag_norm(const ComplexMatrix& h) {
    double s = 0.0;
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j)
            if (i != j) s += std::norm(h(i, j));
    return std::sqrt(s);
}

// Jacobi tangent for the symmetric block [[a, r], [r, b]]: the smaller root
// of t^2 + 2*omega*t - 1 = 0 with omega = (a - b) / (2r).
double jacobi_tangent(double a, double b, double r) {
    const double omega = (a - b) / (2.0 * r);
    const double root = std::sqrt(omega * omega + 1.0);
    return omega >= 0.0 ? 1.0 / (omega + root) : -1.0 / (-omega + root);
}

// Sorts columns by descending key, preserving original order on ties.
template <typename Apply>
void sort_descending(std::vector<double>& keys, Apply apply_permutation) {
    std::vector<std::size_t> idx(keys.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return keys[i] > keys[j]; });
    apply_permutation(idx);
    std::vector<double> sorted(keys.size());
    for (std::size_t i = 0; i < idx.size(); ++i) sorted[i] = keys[idx[i]];
    keys = std::move(sorted);
}

ComplexMatrix permute_columns(const ComplexMatrix& m, const std::vector<std::size_t>& idx) {
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t j = 0; j < idx.size(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) = m(i, idx[j]);
    return out;
}

} // namespace

EighResult eigh(const ComplexMatrix& input, const Tolerances& tol) {
    require_square(input, "eigh");
    require_hermitian(input, tol.hermitian, "eigh");

    const std::size_t n = input.rows();
    ComplexMatrix h = hermitian_part(input);
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = 1.0 + h.frobenius_norm();
    const double stop = 1e-14 * scale;

    for (int sweep = 0; sweep < 100 && offdiag_norm(h) > stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx hpq = h(p, q);
                const double r = std::abs(hpq);
                if (r <= 1e-300) {
                    h(p, q) = 0.0;
                    h(q, p) = 0.0;
                    continue;
                }
                const cplx phase = hpq / r;
                const double t = jacobi_tangent(h(p, p).real(), h(q, q).real(), r);
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx wpp = c * phase, wpq = -s * phase;

                // h <- h * W, then h <- W^* h; v <- v * W.
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx hp = h(k, p), hq = h(k, q);
                    h(k, p) = hp * wpp + hq * s;
                    h(k, q) = hp * wpq + hq * c;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx hp = h(p, k), hq = h(q, k);
                    h(p, k) = std::conj(wpp) * hp + s * hq;
                    h(q, k) = std::conj(wpq) * hp + c * hq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vp = v(k, p), vq = v(k, q);
                    v(k, p) = vp * wpp + vq * s;
                    v(k, q) = vp * wpq + vq * c;
                }
                h(p, q) = 0.0;
                h(q, p) = 0.0;
                h(p, p) = h(p, p).real();
                h(q, q) = h(q, q).real();
            }
        }
    }

    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = h(i, i).real();
    sort_descending(values, [&](const std::vector<std::size_t>& idx) { v = permute_columns(v, idx); });
    return EighResult{std::move(values), std::move(v)};
}

SvdResult svd(const ComplexMatrix& a, const Tolerances& tol) {
    require_square(a, "svd");
    const std::size_t n = a.rows();
    ComplexMatrix g = a;
    ComplexMatrix v = ComplexMatrix::identity(n);

    bool rotated = true;
    for (int sweep = 0; sweep < 100 && rotated; ++sweep) {
        rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0;
                cplx gamma = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    alpha += std::norm(g(k, p));
                    beta += std::norm(g(k, q));
                    gamma += std::conj(g(k, p)) * g(k, q);
                }
                const double r = std::abs(gamma);
                if (r * r <= 1e-28 * alpha * beta || r <= 1e-300) continue;
                rotated = true;
                const cplx phase = gamma / r;
                const double t = jacobi_tangent(alpha, beta, r);
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx wpp = c * phase, wpq = -s * phase;
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx gp = g(k, p), gq = g(k, q);
                    g(k, p) = gp * wpp + gq * s;
                    g(k, q) = gp * wpq + gq * c;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vp = v(k, p), vq = v(k, q);
                    v(k, p) = vp * wpp + vq * s;
                    v(k, q) = vp * wpq + vq * c;
                }
            }
        }
    }

    std::vector<double> values(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += std::norm(g(k, j));
        values[j] = std::sqrt(s);
    }
    sort_descending(values, [&](const std::vector<std::size_t>& idx) {
        g = permute_columns(g, idx);
        v = permute_columns(v, idx);
    });

    // u from normalized columns of g; null columns completed to an
    // orthonormal basis from the standard one.
    ComplexMatrix u(n, n);
    const double rank_cut = values.empty() ? 0.0 : 1e-13 * (1.0 + values[0]);
    std::size_t filled = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (values[j] <= rank_cut) break;
        for (std::size_t k = 0; k < n; ++k) u(k, j) = g(k, j) / values[j];
        ++filled;
    }
    std::size_t basis = 0;
    for (std::size_t j = filled; j < n; ++j) {
        while (true) {
            if (basis >= n) throw std::runtime_error("svd: failed to complete orthonormal basis");
            std::vector<cplx> w(n, cplx(0.0, 0.0));
            w[basis++] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t c = 0; c < j; ++c) {
                    cplx dot = 0.0;
                    for (std::size_t k = 0; k < n; ++k) dot += std::conj(u(k, c)) * w[k];
                    for (std::size_t k = 0; k < n; ++k) w[k] -= dot * u(k, c);
                }
            }
            double norm = 0.0;
            for (std::size_t k = 0; k < n; ++k) norm += std::norm(w[k]);
            norm = std::sqrt(norm);
            if (norm > 1e-6) {
                for (std::size_t k = 0; k < n; ++k) u(k, j) = w[k] / norm;
                break;
            }
        }
    }
    (void)tol;
    return SvdResult{std::move(u), std::move(values), std::move(v)};
}

std::vector<double> spectrum(const ComplexMatrix& h, const Tolerances& tol) { return eigh(h, tol).values; }

std::vector<double> singular_values(const ComplexMatrix& a, const Tolerances& tol) { return svd(a, tol).values; }

double operator_norm(const ComplexMatrix& a, const Tolerances& tol) {
    const auto sv = singular_values(a, tol);
    return sv.empty() ? 0.0 : sv.front();
}

ComplexMatrix expm_skew(const ComplexMatrix& k, const Tolerances& tol) {
    require_square(k, "expm_skew");
    ComplexMatrix sum = k + k.adjoint();
    if (sum.frobenius_norm() > tol.skew * (1.0 + k.frobenius_norm()))
        throw std::invalid_argument("expm_skew: matrix is not skew-Hermitian within tolerance");

    const std::size_t n = k.rows();
    ComplexMatrix h = cplx(0.0, -1.0) * k;
    const EighResult eig = eigh(h, tol);
    ComplexMatrix u(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx e = std::exp(cplx(0.0, eig.values[i]));
        for (std::size_t r = 0; r < n; ++r) u(r, i) = eig.vectors(r, i) * e;
    }
    u = u * eig.vectors.adjoint();

    ComplexMatrix gram = u.adjoint() * u;
    gram -= ComplexMatrix::identity(n);
    if (gram.frobenius_norm() > tol.expm_unitary * static_cast<double>(n))
        throw std::runtime_error("expm_skew: result failed the unitarity check");
    return u;
}

ComplexMatrix positive_part(const ComplexMatrix& h, double r, const Tolerances& tol) {
    const EighResult eig = eigh(h, tol);
    const std::size_t n = h.rows();
    ComplexMatrix scaled(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lam = std::max(eig.values[i] - r, 0.0);
        for (std::size_t k = 0; k < n; ++k) scaled(k, i) = eig.vectors(k, i) * lam;
    }
    return scaled * eig.vectors.adjoint();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& h, const Tolerances& tol) {
    const EighResult eig = eigh(h, tol);
    const std::size_t n = h.rows();
    ComplexMatrix scaled(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lam = std::sqrt(std::max(eig.values[i], 0.0));
        for (std::size_t r = 0; r < n; ++r) scaled(r, i) = eig.vectors(r, i) * lam;
    }
    return scaled * eig.vectors.adjoint();
}

} // namespace orbithull
