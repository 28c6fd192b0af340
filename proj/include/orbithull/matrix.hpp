#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace orbithull {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Small dimensions throughout (n <= 64), so
// no blocking or expression templates; clarity wins.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);

    static ComplexMatrix zero(std::size_t n);
    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diag(const std::vector<double>& d);
    static ComplexMatrix diag(const std::vector<cplx>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conj() const;

    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx s);

// tr(b* a) = sum_ij conj(b_ij) a_ij; the inner product whose real part drives
// every support-function bound in this project.
cplx frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);

// (a + a*)/2
ComplexMatrix hermitian_part(const ComplexMatrix& a);

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

} // namespace orbithull
