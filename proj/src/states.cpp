#include "orbithull/states.hpp"

#include "orbithull/factorize.hpp"

#include <cmath>
#include <stdexcept>

namespace orbithull {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
    if (!m.is_square() || m.rows() == 0) throw std::invalid_argument(std::string(what) + ": square nonempty matrix required");
    if (!m.all_finite()) throw std::invalid_argument(std::string(what) + ": non-finite entries");
}

} // namespace

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, const Tolerances& tol) {
    require_square(m, "HermitianMatrix");
    ComplexMatrix d = m - m.adjoint();
    if (d.frobenius_norm() > tol.hermitian * (1.0 + m.frobenius_norm()))
        throw std::invalid_argument("HermitianMatrix: not Hermitian within tolerance");
    m_ = hermitian_part(m);
}

UnitaryMatrix::UnitaryMatrix(const ComplexMatrix& m, const Tolerances& tol) {
    require_square(m, "UnitaryMatrix");
    ComplexMatrix gram = m.adjoint() * m;
    gram -= ComplexMatrix::identity(m.rows());
    if (gram.frobenius_norm() > tol.unitary * static_cast<double>(m.rows()))
        throw std::invalid_argument("UnitaryMatrix: not unitary within tolerance");
    m_ = m;
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m, const Tolerances& tol) {
    require_square(m, "DensityMatrix");
    ComplexMatrix d = m - m.adjoint();
    if (d.frobenius_norm() > tol.hermitian * (1.0 + m.frobenius_norm()))
        throw std::invalid_argument("DensityMatrix: not Hermitian within tolerance");
    m_ = hermitian_part(m);
    if (std::abs(m_.trace().real() - 1.0) > tol.density_trace)
        throw std::invalid_argument("DensityMatrix: trace is not 1 within tolerance");
    const auto eigs = spectrum(m_, tol);
    min_eig_ = eigs.back();
    if (min_eig_ < -tol.density_psd)
        throw std::invalid_argument("DensityMatrix: not positive semidefinite within tolerance");
    faithful_ = min_eig_ > tol.faithful;
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n) {
    ComplexMatrix m = ComplexMatrix::identity(n);
    m *= cplx(1.0 / static_cast<double>(n), 0.0);
    return DensityMatrix(m);
}

StateFamily::StateFamily(std::vector<DensityMatrix> states, bool require_separating, const Tolerances& tol)
    : states_(std::move(states)) {
    if (states_.empty()) throw std::invalid_argument("StateFamily: at least one state required");
    for (const auto& s : states_)
        if (s.dim() != states_.front().dim())
            throw std::invalid_argument("StateFamily: all states must share one dimension");
    const auto eigs = spectrum(weight_sum(), tol);
    separating_ = eigs.back() > tol.faithful;
    if (require_separating && !separating_)
        throw std::invalid_argument("StateFamily: summed density is not positive definite");
}

bool StateFamily::all_faithful() const {
    for (const auto& s : states_)
        if (!s.faithful()) return false;
    return true;
}

ComplexMatrix StateFamily::weight_sum() const {
    ComplexMatrix r = ComplexMatrix::zero(dim());
    for (const auto& s : states_) r += s.matrix();
    return r;
}

double seminorm2(const ComplexMatrix& x, const ComplexMatrix& weight) {
    if (x.rows() != weight.rows() || !weight.is_square() || !x.is_square())
        throw std::invalid_argument("seminorm2: dimension mismatch");
    // tr(W x^* x) = <x^* x, W>_F for Hermitian W.
    const ComplexMatrix gram = x.adjoint() * x;
    const double val = frobenius_inner(gram, weight).real();
    return std::sqrt(std::max(val, 0.0));
}

double seminorm2(const ComplexMatrix& x, const DensityMatrix& state) {
    return seminorm2(x, state.matrix());
}

double seminorm2_family(const ComplexMatrix& x, const StateFamily& family) {
    return seminorm2(x, family.weight_sum());
}

} // namespace orbithull
