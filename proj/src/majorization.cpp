#include "orbithull/majorization.hpp"

#include "orbithull/factorize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace orbithull::majorization {

namespace {

constexpr double kMismatchEps = 1e-11;

// Kuhn augmenting-path matching restricted to allowed[r][c]; returns true
// when rows [from, n) can all be matched into unused columns.
class Matcher {
  public:
    explicit Matcher(const std::vector<std::vector<bool>>& allowed) : allowed_(allowed), n_(allowed.size()) {}

    bool feasible(const std::vector<bool>& row_done, const std::vector<bool>& col_done) {
        col_owner_.assign(n_, n_);
        for (std::size_t r = 0; r < n_; ++r) {
            if (row_done[r]) continue;
            visited_.assign(n_, false);
            if (!augment(r, col_done)) return false;
        }
        return true;
    }

  private:
    bool augment(std::size_t r, const std::vector<bool>& col_done) {
        for (std::size_t c = 0; c < n_; ++c) {
            if (col_done[c] || visited_[c] || !allowed_[r][c]) continue;
            visited_[c] = true;
            if (col_owner_[c] == n_ || augment(col_owner_[c], col_done)) {
                col_owner_[c] = r;
                return true;
            }
        }
        return false;
    }

    const std::vector<std::vector<bool>>& allowed_;
    std::size_t n_;
    std::vector<std::size_t> col_owner_;
    std::vector<bool> visited_;
};

// Lexicographically smallest perfect matching on allowed entries, or empty
// when none exists.
std::vector<std::size_t> lex_smallest_matching(const std::vector<std::vector<bool>>& allowed) {
    const std::size_t n = allowed.size();
    Matcher matcher(allowed);
    std::vector<bool> row_done(n, false), col_done(n, false);
    if (!matcher.feasible(row_done, col_done)) return {};

    std::vector<std::size_t> perm(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        row_done[r] = true;
        bool assigned = false;
        for (std::size_t c = 0; c < n && !assigned; ++c) {
            if (col_done[c] || !allowed[r][c]) continue;
            col_done[c] = true;
            if (matcher.feasible(row_done, col_done)) {
                perm[r] = c;
                assigned = true;
            } else {
                col_done[c] = false;
            }
        }
        if (!assigned) return {};
    }
    return perm;
}

ComplexMatrix permutation_matrix(const std::vector<std::size_t>& perm) {
    const std::size_t n = perm.size();
    ComplexMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i) p(i, perm[i]) = 1.0;
    return p;
}

double unitarity_defect(const ComplexMatrix& u) {
    ComplexMatrix gram = u.adjoint() * u;
    gram -= ComplexMatrix::identity(u.rows());
    return gram.frobenius_norm();
}

} // namespace

SpectrumVector::SpectrumVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("SpectrumVector: empty");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) throw std::invalid_argument("SpectrumVector: non-finite value");
        if (i > 0 && values_[i] > values_[i - 1] + 1e-12)
            throw std::invalid_argument("SpectrumVector: values must be sorted descending");
    }
}

DoublyStochasticMatrix::DoublyStochasticMatrix(std::vector<std::vector<double>> entries, const Tolerances& tol)
    : entries_(std::move(entries)) {
    const std::size_t n = entries_.size();
    if (n == 0) throw std::invalid_argument("DoublyStochasticMatrix: empty");
    std::vector<double> col_sums(n, 0.0);
    for (const auto& row : entries_) {
        if (row.size() != n) throw std::invalid_argument("DoublyStochasticMatrix: not square");
        double row_sum = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            if (!std::isfinite(row[c])) throw std::invalid_argument("DoublyStochasticMatrix: non-finite entry");
            if (row[c] < -tol.density_psd) throw std::invalid_argument("DoublyStochasticMatrix: negative entry");
            row_sum += row[c];
            col_sums[c] += row[c];
        }
        if (std::abs(row_sum - 1.0) > tol.sum_check)
            throw std::invalid_argument("DoublyStochasticMatrix: row sum differs from 1");
    }
    for (double s : col_sums)
        if (std::abs(s - 1.0) > tol.sum_check)
            throw std::invalid_argument("DoublyStochasticMatrix: column sum differs from 1");
}

DoublyStochasticMatrix DoublyStochasticMatrix::identity(std::size_t n) {
    std::vector<std::vector<double>> e(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) e[i][i] = 1.0;
    return DoublyStochasticMatrix{std::move(e)};
}

std::vector<double> DoublyStochasticMatrix::apply(const std::vector<double>& v) const {
    if (v.size() != dim()) throw std::invalid_argument("DoublyStochasticMatrix::apply: dimension mismatch");
    std::vector<double> out(dim(), 0.0);
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) out[i] += entries_[i][j] * v[j];
    return out;
}

bool majorizes_partial_sums(const SpectrumVector& a, const SpectrumVector& b, double tol) {
    if (a.size() != b.size()) throw std::invalid_argument("majorizes_partial_sums: length mismatch");
    double sa = 0.0, sb = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        sa += a.values()[k];
        sb += b.values()[k];
        if (k + 1 < a.size() && sa > sb + tol) return false;
    }
    return std::abs(sa - sb) <= tol;
}

bool majorizes_levelsets(const HermitianMatrix& x, const HermitianMatrix& y, double tol) {
    if (x.dim() != y.dim()) throw std::invalid_argument("majorizes_levelsets: dimension mismatch");
    const double n = static_cast<double>(x.dim());
    const auto sx = spectrum(x.matrix());
    const auto sy = spectrum(y.matrix());

    double tx = 0.0, ty = 0.0;
    for (double v : sx) tx += v;
    for (double v : sy) ty += v;
    if (std::abs(tx - ty) / n > tol) return false;

    std::vector<double> breakpoints = sx;
    breakpoints.insert(breakpoints.end(), sy.begin(), sy.end());
    auto clipped_trace = [](const std::vector<double>& spec, double r) {
        double s = 0.0;
        for (double v : spec) s += std::max(v - r, 0.0);
        return s;
    };
    for (double r : breakpoints)
        if (clipped_trace(sx, r) / n > clipped_trace(sy, r) / n + tol) return false;
    return true;
}

HlpTransfer hlp_transfer(const SpectrumVector& a, const SpectrumVector& b, double tol) {
    if (a.size() != b.size()) throw std::invalid_argument("hlp_transfer: length mismatch");
    const std::size_t n = a.size();
    {
        double sa = 0.0, sb = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            sa += a.values()[k];
            sb += b.values()[k];
            const bool bad = k + 1 < n ? sa > sb + tol : std::abs(sa - sb) > tol;
            if (bad)
                throw std::invalid_argument("hlp_transfer: majorization fails at prefix " + std::to_string(k + 1));
        }
    }

    std::vector<double> c = b.values();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 1.0;
    std::vector<TTransform> factors;

    for (std::size_t step = 0; step + 1 < n; ++step) {
        // Largest index still undershooting the target, then the largest
        // overshooting index before it.
        std::size_t j = n;
        for (std::size_t k = n; k-- > 0;) {
            if (a.values()[k] - c[k] > kMismatchEps) {
                j = k;
                break;
            }
        }
        if (j == n) break;
        std::size_t i = n;
        for (std::size_t k = j; k-- > 0;) {
            if (c[k] - a.values()[k] > kMismatchEps) {
                i = k;
                break;
            }
        }
        if (i == n) break;

        const double delta =
            std::max(0.0, std::min(c[i] - a.values()[i], a.values()[j] - c[j]));
        const double span = c[i] - c[j];
        if (span <= 0.0) break;
        const double lambda = std::clamp(1.0 - delta / span, 0.0, 1.0);

        const double ci = c[i], cj = c[j];
        c[i] = lambda * ci + (1.0 - lambda) * cj;
        c[j] = (1.0 - lambda) * ci + lambda * cj;
        for (std::size_t col = 0; col < n; ++col) {
            const double ri = d[i][col], rj = d[j][col];
            d[i][col] = lambda * ri + (1.0 - lambda) * rj;
            d[j][col] = (1.0 - lambda) * ri + lambda * rj;
        }
        factors.push_back(TTransform{i, j, lambda});
    }

    return HlpTransfer{DoublyStochasticMatrix{std::move(d)}, std::move(factors)};
}

BirkhoffDecomposition birkhoff_decompose(const DoublyStochasticMatrix& input, const Tolerances& tol) {
    const std::size_t n = input.dim();
    std::vector<std::vector<double>> r = input.entries();
    BirkhoffDecomposition out;
    double remaining = 1.0;

    const std::size_t term_cap = (n - 1) * (n - 1) + 1;
    while (remaining > 1e-12) {
        if (out.terms.size() >= term_cap)
            throw std::runtime_error("birkhoff_decompose: term cap exceeded with residual mass " +
                                     std::to_string(remaining));

        // Candidate bottleneck values are the distinct positive entries;
        // binary search the largest one admitting a perfect matching.
        std::vector<double> candidates;
        for (const auto& row : r)
            for (double v : row)
                if (v > tol.entry_positive) candidates.push_back(v);
        if (candidates.empty()) break; // residual is sub-threshold dust
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

        auto allowed_at = [&](double threshold) {
            std::vector<std::vector<bool>> allowed(n, std::vector<bool>(n, false));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) allowed[i][j] = r[i][j] >= threshold;
            return allowed;
        };
        std::size_t lo = 0, hi = candidates.size();
        while (lo + 1 < hi) {
            const std::size_t mid = (lo + hi) / 2;
            auto allowed = allowed_at(candidates[mid]);
            Matcher matcher(allowed);
            std::vector<bool> none(n, false);
            if (matcher.feasible(none, none))
                lo = mid;
            else
                hi = mid;
        }
        auto allowed = allowed_at(candidates[lo]);
        {
            Matcher matcher(allowed);
            std::vector<bool> none(n, false);
            if (!matcher.feasible(none, none))
                throw std::runtime_error("birkhoff_decompose: no perfect matching with residual mass " +
                                         std::to_string(remaining));
        }

        const auto perm = lex_smallest_matching(allowed);
        if (perm.empty()) throw std::runtime_error("birkhoff_decompose: matching extraction failed");

        double weight = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) weight = std::min(weight, r[i][perm[i]]);
        weight = std::min(weight, remaining);
        for (std::size_t i = 0; i < n; ++i) r[i][perm[i]] -= weight;
        remaining -= weight;
        out.terms.push_back(BirkhoffTerm{weight, perm});
    }
    return out;
}

MixingCertificate unitary_mixing_certificate(const HermitianMatrix& a, const HermitianMatrix& b,
                                             const Tolerances& tol) {
    if (a.dim() != b.dim()) throw std::invalid_argument("unitary_mixing_certificate: dimension mismatch");
    const EighResult ea = eigh(a.matrix(), tol);
    const EighResult eb = eigh(b.matrix(), tol);
    const SpectrumVector sa{ea.values};
    const SpectrumVector sb{eb.values};

    const HlpTransfer transfer = hlp_transfer(sa, sb, tol.certificate);
    const BirkhoffDecomposition decomposition = birkhoff_decompose(transfer.transfer, tol);

    MixingCertificate cert;
    cert.base = b.matrix();
    cert.target = a.matrix();
    for (const auto& term : decomposition.terms) {
        cert.weights.push_back(term.weight);
        cert.unitaries.push_back(ea.vectors * permutation_matrix(term.permutation) * eb.vectors.adjoint());
    }

    ComplexMatrix mix = ComplexMatrix::zero(a.dim());
    for (std::size_t k = 0; k < cert.weights.size(); ++k)
        mix += cplx(cert.weights[k], 0.0) * (cert.unitaries[k] * cert.base * cert.unitaries[k].adjoint());
    cert.residual = (mix - cert.target).frobenius_norm();
    return cert;
}

CertificateReport verify_certificate(const MixingCertificate& cert, double tol) {
    CertificateReport report;
    report.residual = std::numeric_limits<double>::infinity();
    report.weight_defect = std::numeric_limits<double>::infinity();
    report.max_unitarity_defect = std::numeric_limits<double>::infinity();
    try {
        if (cert.weights.empty() || cert.weights.size() != cert.unitaries.size()) return report;
        if (!cert.base.is_square() || cert.base.rows() != cert.target.rows() ||
            cert.base.cols() != cert.target.cols())
            return report;

        double sum = 0.0;
        bool positive = true;
        for (double w : cert.weights) {
            if (!(w > 0.0)) positive = false;
            sum += w;
        }
        report.weight_defect = std::abs(sum - 1.0);

        report.max_unitarity_defect = 0.0;
        for (const auto& u : cert.unitaries) {
            if (u.rows() != cert.base.rows() || !u.is_square()) return report;
            report.max_unitarity_defect = std::max(report.max_unitarity_defect, unitarity_defect(u));
        }

        ComplexMatrix mix = ComplexMatrix::zero(cert.base.rows());
        for (std::size_t k = 0; k < cert.weights.size(); ++k)
            mix += cplx(cert.weights[k], 0.0) * (cert.unitaries[k] * cert.base * cert.unitaries[k].adjoint());
        report.residual = (mix - cert.target).frobenius_norm();

        const Tolerances defaults{};
        report.valid = positive && report.weight_defect <= defaults.sum_check &&
                       report.max_unitarity_defect <= defaults.unitary * static_cast<double>(cert.base.rows()) &&
                       report.residual <= tol;
    } catch (...) {
        report.valid = false;
    }
    return report;
}

} // namespace orbithull::majorization
