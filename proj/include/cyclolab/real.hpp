#pragma once

// Arbitrary-precision real and complex scalars on top of MPFR.
//
// Every value carries its own precision; binary operations produce results at
// the larger of the two operand precisions. There is no global rounding or
// precision state, so values are safe to share across threads as read-only
// data and to create/destroy concurrently.

#include <mpfr.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

namespace cyclolab {

using Prec = mpfr_prec_t;

// Decimal digits -> working mantissa bits, with guard bits for intermediate
// rounding. 64 guard bits keep multi-term sums well below the reported
// error bounds at every precision used here.
inline Prec bits_for_digits(int digits) {
    return static_cast<Prec>(std::ceil(digits * 3.3219280948873623)) + 64;
}

class Real {
  public:
    Real() { mpfr_init2(v_, 64); mpfr_set_nan(v_); }
    explicit Real(Prec prec) { mpfr_init2(v_, prec); mpfr_set_nan(v_); }
    Real(double d, Prec prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, d, MPFR_RNDN); }
    Real(long i, Prec prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, i, MPFR_RNDN); }
    Real(const char* s, Prec prec) { mpfr_init2(v_, prec); mpfr_set_str(v_, s, 10, MPFR_RNDN); }

    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, 64); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Real() { mpfr_clear(v_); }

    Prec prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_inf() const { return mpfr_inf_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    // Fixed notation would lose leading zeros for tiny magnitudes; scientific
    // notation with `digits` significant digits round-trips deterministically.
    std::string to_string(int digits) const;

    friend Real operator+(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a) {
        Real r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    Real& operator+=(const Real& b) { mpfr_add(v_, v_, b.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& b) { mpfr_sub(v_, v_, b.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& b) { mpfr_mul(v_, v_, b.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& b) { mpfr_div(v_, v_, b.v_, MPFR_RNDN); return *this; }

    friend Real operator*(const Real& a, long k) {
        Real r(a.prec());
        mpfr_mul_si(r.v_, a.v_, k, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, long k) {
        Real r(a.prec());
        mpfr_div_si(r.v_, a.v_, k, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

  private:
    mpfr_t v_;
};

Real abs(const Real& a);
Real sqrt(const Real& a);
Real exp(const Real& a);
Real log(const Real& a);
Real sin(const Real& a);
Real cos(const Real& a);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& x, const Real& y);
Real agm(const Real& a, const Real& b);
Real tgamma(const Real& a);
Real floor(const Real& a);
Real round(const Real& a);
Real pow_si(const Real& a, long k);
Real pi(Prec prec);
// 10^e at modest precision; used for tolerances and error bounds.
Real pow10(long e, Prec prec = 96);
Real max(const Real& a, const Real& b);
Real real_infinity(Prec prec = 64);

struct Cplx {
    Real re, im;

    Cplx() = default;
    explicit Cplx(Prec prec) : re(0.0, prec), im(0.0, prec) {}
    Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Cplx(double r, double i, Prec prec) : re(r, prec), im(i, prec) {}

    Prec prec() const { return std::max(re.prec(), im.prec()); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }
    friend Cplx operator*(const Cplx& a, const Cplx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cplx operator*(const Cplx& a, const Real& s) { return {a.re * s, a.im * s}; }
    friend Cplx operator/(const Cplx& a, const Cplx& b) {
        Real n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    friend Cplx operator/(const Cplx& a, const Real& s) { return {a.re / s, a.im / s}; }
    Cplx& operator+=(const Cplx& b) { re += b.re; im += b.im; return *this; }
    Cplx& operator-=(const Cplx& b) { re -= b.re; im -= b.im; return *this; }

    std::string to_string(int digits) const {
        return re.to_string(digits) + (im.sign() < 0 ? " - " : " + ") + abs(im).to_string(digits) + "i";
    }
};

Real abs(const Cplx& z);
Real norm2(const Cplx& z);
Real arg(const Cplx& z);
Cplx conj(const Cplx& z);
Cplx exp(const Cplx& z);
Cplx log(const Cplx& z);
Cplx sqrt(const Cplx& z);
Cplx polar(const Real& mag, const Real& ang);
Cplx pow_si(const Cplx& z, long k);
Cplx from_double(double re, double im, Prec prec);
inline double to_double_re(const Cplx& z) { return z.re.to_double(); }
inline double to_double_im(const Cplx& z) { return z.im.to_double(); }

// Value with a worst-case error radius. Arithmetic propagates radii as
// first-order interval bounds; the radius lives at low precision.
struct Ball {
    Cplx value;
    Real err;  // radius, >= 0

    Ball() = default;
    Ball(Cplx v, Real e) : value(std::move(v)), err(std::move(e)) {}
    explicit Ball(Prec prec) : value(prec), err(0.0, 64) {}

    friend Ball operator+(const Ball& a, const Ball& b) { return {a.value + b.value, a.err + b.err}; }
    friend Ball operator-(const Ball& a, const Ball& b) { return {a.value - b.value, a.err + b.err}; }
    friend Ball operator*(const Ball& a, const Ball& b) {
        Real e = a.err * abs(b.value) + b.err * abs(a.value) + a.err * b.err;
        return {a.value * b.value, e};
    }
    friend Ball operator*(const Ball& a, const Cplx& c) { return {a.value * c, a.err * abs(c)}; }
};

}  // namespace cyclolab
