#include "cyclolab/cyclotomic.hpp"

#include "cyclolab/errors.hpp"
#include "cyclolab/rng.hpp"
#include "doctest.h"

using namespace cyclolab;
using namespace cyclolab::cyclo;

namespace {

Element random_element(const Context& ctx, Rng& rng, long height) {
    Element e = Element::zero(ctx);
    for (auto& c : e.coeffs) {
        long num = rng.next_int(-height, height);
        long den = rng.next_int(1, height);
        c = mpq_class(num, den);
        c.canonicalize();
    }
    return e;
}

}  // namespace

TEST_CASE("context basics") {
    auto c5 = Context::get(5);
    CHECK(c5->phi() == 4);
    CHECK(c5->units() == std::vector<int>{1, 2, 3, 4});
    auto c12 = Context::get(12);
    CHECK(c12->phi() == 4);
    CHECK(c12->units() == std::vector<int>{1, 5, 7, 11});
    // Phi_12 = x^4 - x^2 + 1
    CHECK(c12->cyclotomic_polynomial() ==
          std::vector<mpz_class>{1, 0, -1, 0, 1});
    CHECK_THROWS_AS(Context(1), DomainError);
}

TEST_CASE("embed identity and fourth root") {
    auto ctx = Context::get(4);
    Ball one = embed(*ctx, Element::one(*ctx), 1, 40);
    CHECK(abs(one.value - Cplx(1.0, 0.0, 64)).to_double() < 1e-38);

    Ball z = embed(*ctx, Element::zeta_power(*ctx, 1), 1, 40);
    CHECK(abs(z.value - Cplx(0.0, 1.0, 64)).to_double() < 1e-38);
    CHECK(z.err.to_double() < 1e-39);

    CHECK_THROWS_AS(embed(*ctx, Element::one(*ctx), 2, 40), InvalidEmbedding);
}

TEST_CASE("embed golden ratio identity for n=5") {
    // zeta + zeta^{-1} = 2 cos(2 pi / 5) = (sqrt 5 - 1)/2
    auto ctx = Context::get(5);
    Element e = add(Element::zeta_power(*ctx, 1), Element::zeta_power(*ctx, 4));
    Ball v = embed(*ctx, e, 1, 60);
    Prec wb = bits_for_digits(60);
    Real expect = cos(pi(wb) * 2 / 5) * 2;
    CHECK(abs(v.value.re - expect).to_double() < 1e-58);
    CHECK(abs(v.value.im).to_double() < 1e-58);
    Real golden = (sqrt(Real(5.0, wb)) - Real(1.0, wb)) / 2;
    CHECK(abs(v.value.re - golden).to_double() < 1e-58);
}

TEST_CASE("galois conjugation") {
    auto ctx5 = Context::get(5);
    Element one = Element::one(*ctx5);
    for (int r : ctx5->units()) CHECK(galois_conjugate(*ctx5, one, r) == one);
    CHECK(galois_conjugate(*ctx5, Element::zeta_power(*ctx5, 1), 2) ==
          Element::zeta_power(*ctx5, 2));

    // n=4: zeta^3 = -zeta after reduction mod x^2 + 1
    auto ctx4 = Context::get(4);
    Element img = galois_conjugate(*ctx4, Element::zeta_power(*ctx4, 1), 3);
    CHECK(img == neg(Element::zeta_power(*ctx4, 1)));

    CHECK_THROWS_AS(galois_conjugate(*ctx4, one, 2), InvalidAutomorphism);
}

TEST_CASE("galois compatibility with embeddings") {
    auto ctx = Context::get(7);
    Rng rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        Element e = random_element(*ctx, rng, 9);
        for (int r : ctx->units()) {
            Ball lhs = embed(*ctx, galois_conjugate(*ctx, e, r), 1, 50);
            Ball rhs = embed(*ctx, e, r, 50);
            CHECK(abs(lhs.value - rhs.value) <= lhs.err + rhs.err);
        }
    }
}

TEST_CASE("embedding is a ring homomorphism") {
    auto ctx = Context::get(8);
    Rng rng(23);
    for (int trial = 0; trial < 8; ++trial) {
        Element a = random_element(*ctx, rng, 7);
        Element b = random_element(*ctx, rng, 7);
        Ball ea = embed(*ctx, a, 1, 50);
        Ball eb = embed(*ctx, b, 1, 50);
        Ball eab = embed(*ctx, mul(*ctx, a, b), 1, 50);
        Ball prod = ea * eb;
        CHECK(abs(eab.value - prod.value) <= eab.err + prod.err);
        Ball esum = embed(*ctx, add(a, b), 1, 50);
        CHECK(abs(esum.value - (ea.value + eb.value)) <= esum.err + ea.err + eb.err);
    }
}

TEST_CASE("field arithmetic round trips") {
    auto ctx = Context::get(9);
    Rng rng(5);
    for (int trial = 0; trial < 6; ++trial) {
        Element a = random_element(*ctx, rng, 6);
        if (a.is_zero()) continue;
        Element b = mul(*ctx, a, inv(*ctx, a));
        CHECK(b == Element::one(*ctx));
    }
}

TEST_CASE("height is computed in lowest terms") {
    auto ctx = Context::get(5);
    Element e = Element::zero(*ctx);
    e.coeffs[0] = mpq_class(2, 4);  // = 1/2
    e.coeffs[0].canonicalize();
    e.coeffs[2] = mpq_class(-7, 3);
    CHECK(height(e) == 7);
}

TEST_CASE("recognize rational input") {
    auto ctx = Context::get(5);
    Ball z(Cplx(0.5, 0.0, bits_for_digits(60)), Real(0.0, 64));
    auto res = recognize(z, *ctx, 100, 60);
    REQUIRE(res.element.has_value());
    Element expect = Element::from_rational(*ctx, mpq_class(1, 2));
    CHECK(*res.element == expect);
    CHECK(res.residual.to_double() < 1e-30);
}

TEST_CASE("recognize round trip of (1+zeta)/2") {
    auto ctx = Context::get(5);
    Element e = Element::zero(*ctx);
    e.coeffs[0] = mpq_class(1, 2);
    e.coeffs[1] = mpq_class(1, 2);
    Ball z = embed(*ctx, e, 1, 60);
    auto res = recognize(z, *ctx, 10, 60);
    REQUIRE(res.element.has_value());
    CHECK(*res.element == e);
}

TEST_CASE("recognize rejects pi") {
    // 50 digits covers height bound 100 for phi(n) = 2; the n = 5 lattice
    // needs a slightly smaller bound to clear the precision guard.
    auto ctx3 = Context::get(3);
    Ball z3(Cplx(pi(bits_for_digits(50)), Real(0.0, 64)), Real(0.0, 64));
    auto res3 = recognize(z3, *ctx3, 100, 50);
    CHECK_FALSE(res3.element.has_value());
    CHECK(res3.residual.is_inf());

    auto ctx5 = Context::get(5);
    Ball z5(Cplx(pi(bits_for_digits(50)), Real(0.0, 64)), Real(0.0, 64));
    auto res5 = recognize(z5, *ctx5, 50, 50);
    CHECK_FALSE(res5.element.has_value());
}

TEST_CASE("recognize precision guard") {
    auto ctx = Context::get(5);
    Ball z(Cplx(0.5, 0.0, 64), Real(0.0, 64));
    CHECK_THROWS_AS(recognize(z, *ctx, 1000000, 20), InsufficientPrecision);
    Ball noisy(Cplx(0.5, 0.0, 64), Real(1e-3, 64));
    CHECK_THROWS_AS(recognize(noisy, *ctx, 10, 40), InsufficientPrecision);
}

TEST_CASE("recognize round-trip property") {
    for (int n : {3, 5, 8}) {
        auto ctx = Context::get(n);
        long H = 40;
        int digits = static_cast<int>(4 * ctx->phi() * std::log10(static_cast<double>(H)) + 21);
        Rng rng(1000 + n);
        for (int trial = 0; trial < 25; ++trial) {
            Element e = random_element(*ctx, rng, H);
            Ball z = embed(*ctx, e, 1, digits);
            auto res = recognize(z, *ctx, H, digits);
            REQUIRE(res.element.has_value());
            CHECK(*res.element == e);
        }
    }
}
