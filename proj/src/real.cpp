#include "cyclolab/real.hpp"

#include <cstdio>
#include <vector>

namespace cyclolab {

std::string Real::to_string(int digits) const {
    if (is_nan()) return "nan";
    if (is_inf()) return sign() < 0 ? "-inf" : "inf";
    std::vector<char> buf(static_cast<size_t>(digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
    return std::string(buf.data());
}

#define CYCLOLAB_UNARY(name, mpfr_fn)              \
    Real name(const Real& a) {                     \
        Real r(a.prec());                          \
        mpfr_fn(r.raw(), a.raw(), MPFR_RNDN);      \
        return r;                                  \
    }

CYCLOLAB_UNARY(abs, mpfr_abs)
CYCLOLAB_UNARY(sqrt, mpfr_sqrt)
CYCLOLAB_UNARY(exp, mpfr_exp)
CYCLOLAB_UNARY(log, mpfr_log)
CYCLOLAB_UNARY(sin, mpfr_sin)
CYCLOLAB_UNARY(cos, mpfr_cos)
CYCLOLAB_UNARY(tgamma, mpfr_gamma)
#undef CYCLOLAB_UNARY

Real floor(const Real& a) {
    Real r(a.prec());
    mpfr_floor(r.raw(), a.raw());
    return r;
}

Real round(const Real& a) {
    Real r(a.prec());
    mpfr_round(r.raw(), a.raw());
    return r;
}

Real atan2(const Real& y, const Real& x) {
    Real r(std::max(y.prec(), x.prec()));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}

Real hypot(const Real& x, const Real& y) {
    Real r(std::max(y.prec(), x.prec()));
    mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}

Real agm(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_agm(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

Real pow_si(const Real& a, long k) {
    Real r(a.prec());
    mpfr_pow_si(r.raw(), a.raw(), k, MPFR_RNDN);
    return r;
}

Real pi(Prec prec) {
    Real r(prec);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

Real pow10(long e, Prec prec) {
    Real r(prec);
    mpfr_set_si(r.raw(), 10, MPFR_RNDN);
    mpfr_pow_si(r.raw(), r.raw(), e, MPFR_RNDN);
    return r;
}

Real max(const Real& a, const Real& b) { return a >= b ? a : b; }

Real real_infinity(Prec prec) {
    Real r(prec);
    mpfr_set_inf(r.raw(), 1);
    return r;
}

Real abs(const Cplx& z) { return hypot(z.re, z.im); }
Real norm2(const Cplx& z) { return z.re * z.re + z.im * z.im; }
Real arg(const Cplx& z) { return atan2(z.im, z.re); }
Cplx conj(const Cplx& z) { return {z.re, -z.im}; }

Cplx exp(const Cplx& z) {
    Real m = exp(z.re);
    Real c(z.prec()), s(z.prec());
    mpfr_sin_cos(s.raw(), c.raw(), z.im.raw(), MPFR_RNDN);
    return {m * c, m * s};
}

Cplx log(const Cplx& z) { return {log(abs(z)), arg(z)}; }

Cplx sqrt(const Cplx& z) { return polar(sqrt(abs(z)), arg(z) / 2); }

Cplx polar(const Real& mag, const Real& ang) {
    Real c(std::max(mag.prec(), ang.prec()));
    Real s(c.prec());
    mpfr_sin_cos(s.raw(), c.raw(), ang.raw(), MPFR_RNDN);
    return {mag * c, mag * s};
}

Cplx pow_si(const Cplx& z, long k) {
    Cplx acc(1.0, 0.0, z.prec());
    Cplx base = z;
    bool invert = k < 0;
    unsigned long e = invert ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    if (invert) return Cplx(1.0, 0.0, z.prec()) / acc;
    return acc;
}

Cplx from_double(double re, double im, Prec prec) { return Cplx(re, im, prec); }

}  // namespace cyclolab
