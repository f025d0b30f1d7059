#pragma once

// Dense complex linear algebra at MPFR precision for the small matrices that
// appear here (dimension at most ~2n): LU solves, inverses, determinants,
// Hermitian eigenvalues (cyclic Jacobi), and singular values via the Gram
// matrix.

#include <vector>

#include "cyclolab/real.hpp"

namespace cyclolab {

class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(int rows, int cols, Prec prec)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, Cplx(prec)) {}

    static CMatrix identity(int n, Prec prec);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Cplx& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    const Cplx& at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

    CMatrix transposed_conjugate() const;
    Real max_abs() const;

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Cplx> data_;
};

CMatrix mat_mul(const CMatrix& a, const CMatrix& b);
CMatrix mat_sub(const CMatrix& a, const CMatrix& b);

// Solves A X = B by LU with partial pivoting. Throws SingularJacobian when a
// pivot falls below `pivot_tol` times the matrix scale.
CMatrix solve(const CMatrix& a, const CMatrix& b, const Real& pivot_tol);
CMatrix inverse(const CMatrix& a, const Real& pivot_tol);
Cplx determinant(const CMatrix& a);

// Eigenvalues of a Hermitian matrix, ascending. `digits` controls the
// off-diagonal sweep tolerance.
std::vector<Real> hermitian_eigenvalues(CMatrix a, int digits);

// Singular values, descending, via eigenvalues of A^H A.
std::vector<Real> singular_values(const CMatrix& a, int digits);

}  // namespace cyclolab
