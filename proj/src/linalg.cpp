#include "cyclolab/linalg.hpp"

#include <algorithm>

#include "cyclolab/errors.hpp"

namespace cyclolab {

CMatrix CMatrix::identity(int n, Prec prec) {
    CMatrix m(n, n, prec);
    for (int i = 0; i < n; ++i) m.at(i, i) = Cplx(1.0, 0.0, prec);
    return m;
}

CMatrix CMatrix::transposed_conjugate() const {
    CMatrix out(cols_, rows_, 64);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out.at(c, r) = conj(at(r, c));
    return out;
}

Real CMatrix::max_abs() const {
    Real m(0.0, 64);
    for (const auto& z : data_) m = max(m, abs(z));
    return m;
}

CMatrix mat_mul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw DomainError("mat_mul: shape mismatch");
    Prec prec = std::max(a.rows() && a.cols() ? a.at(0, 0).prec() : 64,
                         b.rows() && b.cols() ? b.at(0, 0).prec() : 64);
    CMatrix out(a.rows(), b.cols(), prec);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            Cplx acc(prec);
            for (int k = 0; k < a.cols(); ++k) acc += a.at(i, k) * b.at(k, j);
            out.at(i, j) = acc;
        }
    return out;
}

CMatrix mat_sub(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("mat_sub: shape mismatch");
    CMatrix out(a.rows(), a.cols(), 64);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j) - b.at(i, j);
    return out;
}

namespace {

struct LU {
    CMatrix lu;
    std::vector<int> perm;
    int sign = 1;
};

LU factor(CMatrix a, const Real& pivot_tol) {
    int n = a.rows();
    if (n != a.cols()) throw DomainError("solve: matrix must be square");
    Real scale = a.max_abs();
    LU f{std::move(a), {}, 1};
    f.perm.resize(n);
    for (int i = 0; i < n; ++i) f.perm[i] = i;
    for (int k = 0; k < n; ++k) {
        int best = k;
        Real best_mag = abs(f.lu.at(k, k));
        for (int r = k + 1; r < n; ++r) {
            Real m = abs(f.lu.at(r, k));
            if (m > best_mag) {
                best = r;
                best_mag = m;
            }
        }
        if (!(best_mag > scale * pivot_tol))
            throw SingularJacobian("solve: pivot below tolerance");
        if (best != k) {
            for (int c = 0; c < n; ++c) std::swap(f.lu.at(best, c), f.lu.at(k, c));
            std::swap(f.perm[best], f.perm[k]);
            f.sign = -f.sign;
        }
        for (int r = k + 1; r < n; ++r) {
            Cplx m = f.lu.at(r, k) / f.lu.at(k, k);
            f.lu.at(r, k) = m;
            for (int c = k + 1; c < n; ++c) f.lu.at(r, c) -= m * f.lu.at(k, c);
        }
    }
    return f;
}

}  // namespace

CMatrix solve(const CMatrix& a, const CMatrix& b, const Real& pivot_tol) {
    if (a.rows() != b.rows()) throw DomainError("solve: shape mismatch");
    LU f = factor(a, pivot_tol);
    int n = a.rows(), m = b.cols();
    Prec prec = a.at(0, 0).prec();
    CMatrix x(n, m, prec);
    for (int j = 0; j < m; ++j) {
        // Forward substitution on the permuted right-hand side.
        std::vector<Cplx> y(static_cast<size_t>(n), Cplx(prec));
        for (int i = 0; i < n; ++i) {
            Cplx acc = b.at(f.perm[i], j);
            for (int k = 0; k < i; ++k) acc -= f.lu.at(i, k) * y[k];
            y[i] = acc;
        }
        for (int i = n - 1; i >= 0; --i) {
            Cplx acc = y[i];
            for (int k = i + 1; k < n; ++k) acc -= f.lu.at(i, k) * x.at(k, j);
            x.at(i, j) = acc / f.lu.at(i, i);
        }
    }
    return x;
}

CMatrix inverse(const CMatrix& a, const Real& pivot_tol) {
    return solve(a, CMatrix::identity(a.rows(), a.at(0, 0).prec()), pivot_tol);
}

Cplx determinant(const CMatrix& a) {
    Real tiny = pow10(-static_cast<long>(a.at(0, 0).prec()));  // effectively no tolerance
    LU f = factor(a, tiny);
    Prec prec = a.at(0, 0).prec();
    Cplx det(1.0, 0.0, prec);
    for (int i = 0; i < a.rows(); ++i) det = det * f.lu.at(i, i);
    if (f.sign < 0) det = -det;
    return det;
}

std::vector<Real> hermitian_eigenvalues(CMatrix a, int digits) {
    int n = a.rows();
    if (n != a.cols()) throw DomainError("hermitian_eigenvalues: square matrix required");
    Prec prec = a.at(0, 0).prec();
    Real tol = a.max_abs() * pow10(-(digits + 2));

    for (int sweep = 0; sweep < 60 * n; ++sweep) {
        Real off(0.0, prec);
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = max(off, abs(a.at(p, q)));
        if (!(off > tol)) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                Real apq = abs(a.at(p, q));
                if (!(apq > tol)) continue;
                // Unitary plane rotation U = [[c, -s e^{i phi}], [s e^{-i phi}, c]]
                // with phi = arg(a_pq); t = s/c is the small root of
                // t^2 - 2 tau t - 1 = 0, tau = (a_qq - a_pp) / (2 |a_pq|).
                Real phase = arg(a.at(p, q));
                Real app = a.at(p, p).re;
                Real aqq = a.at(q, q).re;
                Real tau = (aqq - app) / (apq * 2);
                Real root = sqrt(tau * tau + Real(1.0, prec));
                Real t = (tau.sign() >= 0) ? Real(-1.0, prec) / (tau + root)
                                           : Real(1.0, prec) / (-tau + root);
                Real c = Real(1.0, prec) / sqrt(t * t + Real(1.0, prec));
                Real s = t * c;
                Cplx eip = polar(Real(1.0, prec), phase);
                // A <- A U
                for (int r = 0; r < n; ++r) {
                    Cplx arp = a.at(r, p);
                    Cplx arq = a.at(r, q);
                    a.at(r, p) = arp * c + arq * conj(eip) * s;
                    a.at(r, q) = arq * c - arp * eip * s;
                }
                // A <- U^H A
                for (int col = 0; col < n; ++col) {
                    Cplx apc = a.at(p, col);
                    Cplx aqc = a.at(q, col);
                    a.at(p, col) = apc * c + aqc * eip * s;
                    a.at(q, col) = aqc * c - apc * conj(eip) * s;
                }
            }
        }
    }
    std::vector<Real> eig;
    eig.reserve(n);
    for (int i = 0; i < n; ++i) eig.push_back(a.at(i, i).re);
    std::sort(eig.begin(), eig.end(), [](const Real& x, const Real& y) { return x < y; });
    return eig;
}

std::vector<Real> singular_values(const CMatrix& a, int digits) {
    CMatrix gram = mat_mul(a.transposed_conjugate(), a);
    std::vector<Real> eig = hermitian_eigenvalues(std::move(gram), digits);
    std::vector<Real> sv;
    sv.reserve(eig.size());
    for (auto it = eig.rbegin(); it != eig.rend(); ++it)
        sv.push_back(it->sign() > 0 ? sqrt(*it) : Real(0.0, it->prec()));
    return sv;
}

}  // namespace cyclolab
