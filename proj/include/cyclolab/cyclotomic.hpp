#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta_n), its complex embeddings,
// the Galois action, and recognition of complex numbers as bounded-height
// field elements via exact LLL on a scaled relation lattice.

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <vector>

#include "cyclolab/real.hpp"

namespace cyclolab::cyclo {

// Immutable per-n data: unit group, cyclotomic polynomial, power-basis
// reduction table. Instances are shared and safe for concurrent reads.
class Context {
  public:
    explicit Context(int n);

    int n() const { return n_; }
    int phi() const { return phi_; }
    const std::vector<int>& units() const { return units_; }

    // Coefficients of Phi_n, degree phi, monic.
    const std::vector<mpz_class>& cyclotomic_polynomial() const { return phi_poly_; }

    // zeta^k on the power basis 1, zeta, ..., zeta^{phi-1}, for 0 <= k < n.
    const std::vector<std::vector<mpz_class>>& power_table() const { return powers_; }

    // Shared immutable instance; the cache is mutex-guarded.
    static std::shared_ptr<const Context> get(int n);

  private:
    int n_;
    int phi_;
    std::vector<int> units_;
    std::vector<mpz_class> phi_poly_;
    std::vector<std::vector<mpz_class>> powers_;
};

// Element of Q(zeta_n) as exact rationals on the power basis.
struct Element {
    int n = 0;
    std::vector<mpq_class> coeffs;  // length phi(n)

    static Element zero(const Context& ctx);
    static Element one(const Context& ctx);
    static Element zeta_power(const Context& ctx, int k);  // zeta^k reduced
    static Element from_rational(const Context& ctx, const mpq_class& q);

    bool is_zero() const;
    bool operator==(const Element& other) const;
};

Element add(const Element& a, const Element& b);
Element sub(const Element& a, const Element& b);
Element neg(const Element& a);
Element mul(const Context& ctx, const Element& a, const Element& b);
Element inv(const Context& ctx, const Element& a);   // throws DomainError on zero
Element div(const Context& ctx, const Element& a, const Element& b);

// Height: max over coefficients (in lowest terms) of |numerator|, |denominator|.
mpz_class height(const Element& e);

// Image under zeta -> zeta^r, r coprime to n. Throws InvalidAutomorphism.
Element galois_conjugate(const Context& ctx, const Element& e, int r);

// Complex conjugation = galois r = n-1.
Element conjugate(const Context& ctx, const Element& e);

// Numerical embedding zeta -> exp(2*pi*i*r/n), r coprime to n, with a
// worst-case rounding bound <= 10^(1-digits). Throws InvalidEmbedding.
Ball embed(const Context& ctx, const Element& e, int r, int digits);

struct RecognizeResult {
    std::optional<Element> element;
    Real residual;  // |embed(element) - z| when found; +inf otherwise
};

// Integer-relation search: decides whether z is (numerically) an element of
// Q(zeta_n) whose coefficient height is at most height_bound. The relation
// lattice spans (1, zeta, ..., zeta^{phi-1}, z, z*zeta, ..., z*zeta^{phi-1})
// split into real and imaginary parts and scaled by 10^digits.
//
// Returns the element only if its height passes the bound and the residual
// |embed(e,1) - z| is at most 10^(-digits/2). Throws InsufficientPrecision
// when digits < 4*phi*log10(height_bound) + 20 (a conservative sufficiency
// heuristic; below it, misses could be silent) or when z's own error bound
// exceeds 10^(-digits/2).
RecognizeResult recognize(const Ball& z, const Context& ctx, const mpz_class& height_bound,
                          int digits);

std::string to_string(const Element& e);

}  // namespace cyclolab::cyclo
