#include "cyclolab/lll.hpp"

#include "cyclolab/errors.hpp"

namespace cyclolab {

mpz_class dot(const ZVec& a, const ZVec& b) {
    mpz_class s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

namespace {

// Nearest integer to a/b for b > 0, ties toward +inf.
mpz_class div_round(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_class num = 2 * a + b;
    mpz_class den = 2 * b;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

mpz_class div_exact(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

struct LLLState {
    ZMat& b;
    size_t m;
    std::vector<mpz_class> dd;        // dd[i] = Gram det of first i rows, dd[0] = 1
    std::vector<ZVec> lam;            // lam[i][j], j < i: scaled Gram-Schmidt coefficients

    explicit LLLState(ZMat& basis) : b(basis), m(basis.size()) {
        dd.assign(m + 1, mpz_class(0));
        dd[0] = 1;
        lam.assign(m, ZVec());
        for (size_t i = 0; i < m; ++i) lam[i].assign(i, mpz_class(0));
        for (size_t i = 0; i < m; ++i) {
            for (size_t j = 0; j <= i; ++j) {
                mpz_class u = dot(b[i], b[j]);
                for (size_t k = 0; k < j; ++k)
                    u = div_exact(dd[k + 1] * u - lam[i][k] * lam[j][k], dd[k]);
                if (j < i)
                    lam[i][j] = u;
                else
                    dd[i + 1] = u;
            }
            if (dd[i + 1] == 0) throw DomainError("lll_reduce: basis rows are linearly dependent");
        }
    }

    void redi(size_t k, size_t l) {
        mpz_class two_lam = 2 * lam[k][l];
        if (abs(two_lam) > dd[l + 1]) {
            mpz_class q = div_round(lam[k][l], dd[l + 1]);
            for (size_t c = 0; c < b[k].size(); ++c) b[k][c] -= q * b[l][c];
            lam[k][l] -= q * dd[l + 1];
            for (size_t i = 0; i < l; ++i) lam[k][i] -= q * lam[l][i];
        }
    }

    void swapi(size_t k) {
        std::swap(b[k], b[k - 1]);
        for (size_t j = 0; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
        mpz_class lt = lam[k][k - 1];
        mpz_class B = div_exact(dd[k - 1] * dd[k + 1] + lt * lt, dd[k]);
        for (size_t i = k + 1; i < m; ++i) {
            mpz_class t = lam[i][k];
            lam[i][k] = div_exact(dd[k + 1] * lam[i][k - 1] - lt * t, dd[k]);
            lam[i][k - 1] = div_exact(B * t + lt * lam[i][k], dd[k + 1]);
        }
        dd[k] = B;
    }
};

}  // namespace

void lll_reduce(ZMat& basis, long delta_num, long delta_den) {
    if (basis.size() < 2) return;
    LLLState st(basis);
    size_t k = 1;
    while (k < st.m) {
        st.redi(k, k - 1);
        mpz_class lhs = delta_den * (st.dd[k + 1] * st.dd[k - 1] + st.lam[k][k - 1] * st.lam[k][k - 1]);
        mpz_class rhs = delta_num * st.dd[k] * st.dd[k];
        if (lhs < rhs) {
            st.swapi(k);
            k = (k > 1) ? k - 1 : 1;
        } else {
            for (size_t l = k - 1; l-- > 0;) st.redi(k, l);
            ++k;
        }
    }
}

}  // namespace cyclolab
