#include "cyclolab/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "cyclolab/errors.hpp"
#include "cyclolab/lll.hpp"

namespace cyclolab::cyclo {

namespace {

// Quotient of integer polynomials, exact division assumed (used only for
// x^n - 1 divided by products of lower cyclotomic polynomials).
std::vector<mpz_class> poly_div_exact(std::vector<mpz_class> num, const std::vector<mpz_class>& den) {
    std::vector<mpz_class> q(num.size() - den.size() + 1, mpz_class(0));
    for (size_t i = num.size(); i-- >= den.size();) {
        mpz_class c;
        mpz_divexact(c.get_mpz_t(), num[i].get_mpz_t(), den.back().get_mpz_t());
        q[i - den.size() + 1] = c;
        for (size_t j = 0; j < den.size(); ++j) num[i - den.size() + 1 + j] -= c * den[j];
        if (i == den.size() - 1) break;
    }
    return q;
}

std::vector<mpz_class> poly_mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    std::vector<mpz_class> r(a.size() + b.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

std::vector<mpz_class> cyclotomic_poly(int n) {
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    std::vector<mpz_class> num(n + 1, mpz_class(0));
    num[0] = -1;
    num[n] = 1;
    std::vector<mpz_class> den{1};
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        den = poly_mul(den, cyclotomic_poly(d));
    }
    return poly_div_exact(std::move(num), den);
}

// Reduce a rational polynomial modulo the monic integer polynomial phi.
void reduce_mod(std::vector<mpq_class>& p, const std::vector<mpz_class>& phi) {
    size_t deg = phi.size() - 1;
    while (p.size() > deg) {
        mpq_class lead = p.back();
        size_t top = p.size() - 1;
        p.pop_back();
        if (lead == 0) continue;
        for (size_t j = 0; j < deg; ++j) p[top - deg + j] -= lead * mpq_class(phi[j]);
    }
    p.resize(deg, mpq_class(0));
}

void canonicalize(Element& e) {
    for (auto& c : e.coeffs) c.canonicalize();
}

}  // namespace

Context::Context(int n) : n_(n) {
    if (n < 2) throw DomainError("cyclotomic context requires n >= 2");
    for (int r = 1; r < n; ++r)
        if (std::gcd(r, n) == 1) units_.push_back(r);
    phi_ = static_cast<int>(units_.size());
    phi_poly_ = cyclotomic_poly(n);
    // powers_[k] = x^k mod Phi_n
    powers_.resize(n);
    std::vector<mpq_class> cur(phi_, mpq_class(0));
    cur[0] = 1;
    for (int k = 0; k < n; ++k) {
        powers_[k].resize(phi_);
        for (int j = 0; j < phi_; ++j) {
            if (cur[j].get_den() != 1)
                throw DomainError("cyclotomic power table must be integral");
            powers_[k][j] = cur[j].get_num();
        }
        std::vector<mpq_class> next(phi_ + 1, mpq_class(0));
        for (int j = 0; j < phi_; ++j) next[j + 1] = cur[j];
        reduce_mod(next, phi_poly_);
        cur = next;
    }
}

std::shared_ptr<const Context> Context::get(int n) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const Context>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto ctx = std::make_shared<const Context>(n);
    cache.emplace(n, ctx);
    return ctx;
}

Element Element::zero(const Context& ctx) {
    Element e;
    e.n = ctx.n();
    e.coeffs.assign(ctx.phi(), mpq_class(0));
    return e;
}

Element Element::one(const Context& ctx) {
    Element e = zero(ctx);
    e.coeffs[0] = 1;
    return e;
}

Element Element::zeta_power(const Context& ctx, int k) {
    Element e = zero(ctx);
    int kk = ((k % ctx.n()) + ctx.n()) % ctx.n();
    for (int j = 0; j < ctx.phi(); ++j) e.coeffs[j] = mpq_class(ctx.power_table()[kk][j]);
    return e;
}

Element Element::from_rational(const Context& ctx, const mpq_class& q) {
    Element e = zero(ctx);
    e.coeffs[0] = q;
    e.coeffs[0].canonicalize();
    return e;
}

bool Element::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const mpq_class& c) { return c == 0; });
}

bool Element::operator==(const Element& other) const {
    return n == other.n && coeffs == other.coeffs;
}

Element add(const Element& a, const Element& b) {
    Element r = a;
    for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
    canonicalize(r);
    return r;
}

Element sub(const Element& a, const Element& b) {
    Element r = a;
    for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] -= b.coeffs[i];
    canonicalize(r);
    return r;
}

Element neg(const Element& a) {
    Element r = a;
    for (auto& c : r.coeffs) c = -c;
    return r;
}

Element mul(const Context& ctx, const Element& a, const Element& b) {
    int phi = ctx.phi();
    std::vector<mpq_class> prod(2 * phi - 1, mpq_class(0));
    for (int i = 0; i < phi; ++i) {
        if (a.coeffs[i] == 0) continue;
        for (int j = 0; j < phi; ++j) prod[i + j] += a.coeffs[i] * b.coeffs[j];
    }
    reduce_mod(prod, ctx.cyclotomic_polynomial());
    Element r;
    r.n = ctx.n();
    r.coeffs = std::move(prod);
    canonicalize(r);
    return r;
}

Element inv(const Context& ctx, const Element& a) {
    if (a.is_zero()) throw DomainError("inverse of zero cyclotomic element");
    // Extended Euclid in Q[x] for gcd(Phi_n, a) = 1.
    using Poly = std::vector<mpq_class>;
    auto degree = [](const Poly& p) {
        for (size_t i = p.size(); i-- > 0;)
            if (p[i] != 0) return static_cast<long>(i);
        return -1L;
    };
    Poly r0(ctx.cyclotomic_polynomial().size());
    for (size_t i = 0; i < r0.size(); ++i) r0[i] = mpq_class(ctx.cyclotomic_polynomial()[i]);
    Poly r1 = a.coeffs;
    Poly s0{mpq_class(0)}, s1{mpq_class(1)};  // Bezout coefficients w.r.t. a
    while (degree(r1) > 0) {
        long d0 = degree(r0), d1 = degree(r1);
        Poly q(d0 - d1 + 1, mpq_class(0));
        Poly rem = r0;
        for (long i = d0; i >= d1; --i) {
            mpq_class c = rem[i] / r1[d1];
            if (c == 0) continue;
            q[i - d1] = c;
            for (long j = 0; j <= d1; ++j) rem[i - d1 + j] -= c * r1[j];
        }
        Poly s_new(std::max(s0.size(), q.size() + s1.size()), mpq_class(0));
        for (size_t i = 0; i < s0.size(); ++i) s_new[i] = s0[i];
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < s1.size(); ++j) s_new[i + j] -= q[i] * s1[j];
        r0 = r1;
        r1 = rem;
        while (!r1.empty() && r1.back() == 0) r1.pop_back();
        s0 = s1;
        s1 = s_new;
    }
    if (degree(r1) != 0) throw DomainError("cyclotomic inverse: unexpected gcd");
    mpq_class unit = r1[0];
    Element out = Element::zero(ctx);
    for (size_t i = 0; i < s1.size() && i < out.coeffs.size(); ++i) out.coeffs[i] = s1[i] / unit;
    canonicalize(out);
    return out;
}

Element div(const Context& ctx, const Element& a, const Element& b) {
    return mul(ctx, a, inv(ctx, b));
}

mpz_class height(const Element& e) {
    mpz_class h = 0;
    for (const auto& c : e.coeffs) {
        mpq_class q = c;
        q.canonicalize();
        mpz_class num = abs(q.get_num());
        mpz_class den = abs(q.get_den());
        if (num > h) h = num;
        if (den > h) h = den;
    }
    return h;
}

Element galois_conjugate(const Context& ctx, const Element& e, int r) {
    int rr = ((r % ctx.n()) + ctx.n()) % ctx.n();
    if (std::gcd(rr, ctx.n()) != 1)
        throw InvalidAutomorphism("galois_conjugate: residue not coprime to n");
    Element out = Element::zero(ctx);
    for (int k = 0; k < ctx.phi(); ++k) {
        if (e.coeffs[k] == 0) continue;
        int ex = static_cast<int>((static_cast<long>(rr) * k) % ctx.n());
        for (int j = 0; j < ctx.phi(); ++j)
            out.coeffs[j] += e.coeffs[k] * mpq_class(ctx.power_table()[ex][j]);
    }
    canonicalize(out);
    return out;
}

Element conjugate(const Context& ctx, const Element& e) {
    return galois_conjugate(ctx, e, ctx.n() - 1);
}

Ball embed(const Context& ctx, const Element& e, int r, int digits) {
    int rr = ((r % ctx.n()) + ctx.n()) % ctx.n();
    if (std::gcd(rr, ctx.n()) != 1) throw InvalidEmbedding("embed: residue not coprime to n");
    if (digits < 16) throw DomainError("embed: precision must be at least 16 digits");

    Real coeff_mass(0.0, 64);
    for (const auto& c : e.coeffs) {
        Real rc(64);
        mpfr_set_q(rc.raw(), c.get_mpq_t(), MPFR_RNDN);
        coeff_mass += abs(rc);
    }

    Prec wb = bits_for_digits(digits);
    Cplx acc(wb);
    Real two_pi = pi(wb) * 2;
    for (int k = 0; k < ctx.phi(); ++k) {
        if (e.coeffs[k] == 0) continue;
        Real c(wb);
        mpfr_set_q(c.raw(), e.coeffs[k].get_mpq_t(), MPFR_RNDN);
        long ex = (static_cast<long>(rr) * k) % ctx.n();
        Real ang = two_pi * ex / ctx.n();
        acc += polar(c, ang);
    }
    // Worst-case rounding: a few ulps per term, scaled by the coefficient mass.
    Real eps(64);
    mpfr_set_ui_2exp(eps.raw(), 64, -static_cast<long>(wb), MPFR_RNDN);
    Real bound = eps * (coeff_mass + Real(1.0, 64)) * (ctx.phi() + 2);
    Real cap = pow10(1 - digits);
    if (!(bound <= cap)) {
        // Enormous coefficients: retry with enough extra bits to absorb them.
        long extra = static_cast<long>(mpfr_get_exp(coeff_mass.raw())) + 16;
        Prec wb2 = wb + std::max(64L, extra);
        Cplx acc2(wb2);
        Real two_pi2 = pi(wb2) * 2;
        for (int k = 0; k < ctx.phi(); ++k) {
            if (e.coeffs[k] == 0) continue;
            Real c(wb2);
            mpfr_set_q(c.raw(), e.coeffs[k].get_mpq_t(), MPFR_RNDN);
            long ex = (static_cast<long>(rr) * k) % ctx.n();
            acc2 += polar(c, two_pi2 * ex / ctx.n());
        }
        return {acc2, cap / 10};
    }
    return {acc, bound};
}

RecognizeResult recognize(const Ball& z, const Context& ctx, const mpz_class& height_bound,
                          int digits) {
    if (height_bound < 1) throw DomainError("recognize: height_bound must be >= 1");
    double log10H = std::log10(std::max(1.0, mpz_get_d(height_bound.get_mpz_t())));
    double needed = 4.0 * ctx.phi() * log10H + 20.0;
    if (digits < needed) {
        std::ostringstream os;
        os << "recognize: " << digits << " digits insufficient for height bound " << height_bound
           << " (needs >= " << needed << ")";
        throw InsufficientPrecision(os.str());
    }
    Real half_tol = pow10(-(digits / 2));
    if (!(z.err <= half_tol))
        throw InsufficientPrecision("recognize: input error bound exceeds 10^(-digits/2)");

    int phi = ctx.phi();
    int dim = 2 * phi;
    Prec wb = bits_for_digits(digits + 8);

    // Column scale 10^digits.
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Real scale_r(wb);
    mpfr_set_z(scale_r.raw(), scale.get_mpz_t(), MPFR_RNDN);

    auto scaled = [&](const Real& x) {
        Real t = x * scale_r;
        mpz_class out;
        mpfr_get_z(out.get_mpz_t(), t.raw(), MPFR_RNDN);
        return out;
    };

    ZMat basis(dim, ZVec(dim + 2, mpz_class(0)));
    Real two_pi = pi(wb) * 2;
    for (int k = 0; k < phi; ++k) {
        Cplx zk = polar(Real(1.0, wb), two_pi * k / ctx.n());
        Cplx zzk = z.value * zk;
        basis[k][k] = 1;
        basis[k][dim] = scaled(zk.re);
        basis[k][dim + 1] = scaled(zk.im);
        basis[phi + k][phi + k] = 1;
        basis[phi + k][dim] = scaled(zzk.re);
        basis[phi + k][dim + 1] = scaled(zzk.im);
    }
    lll_reduce(basis);

    // Candidate rows in order of norm: reconstruct e = -A/B and keep the
    // first one that passes the height bound and the residual contract.
    std::vector<size_t> order(basis.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return dot(basis[a], basis[a]) < dot(basis[b], basis[b]);
    });

    for (size_t row_idx : order) {
        const ZVec& row = basis[row_idx];
        Element A = Element::zero(ctx);
        Element B = Element::zero(ctx);
        for (int k = 0; k < phi; ++k) {
            A = add(A, mul(ctx, Element::from_rational(ctx, mpq_class(row[k])),
                           Element::zeta_power(ctx, k)));
            B = add(B, mul(ctx, Element::from_rational(ctx, mpq_class(row[phi + k])),
                           Element::zeta_power(ctx, k)));
        }
        if (B.is_zero()) continue;
        Element e = neg(div(ctx, A, B));
        if (height(e) > height_bound) continue;
        Ball approx = embed(ctx, e, 1, digits);
        Real residual = abs(approx.value - z.value);
        if (residual <= half_tol) return {e, residual};
    }
    return {std::nullopt, real_infinity()};
}

std::string to_string(const Element& e) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < e.coeffs.size(); ++i) {
        if (i) os << ", ";
        os << e.coeffs[i].get_str();
    }
    os << "]";
    return os.str();
}

}  // namespace cyclolab::cyclo
