#include "cyclolab/shimura.hpp"

#include <numeric>

#include "cyclolab/curve.hpp"
#include "cyclolab/errors.hpp"
#include "doctest.h"

using namespace cyclolab::shimura;

TEST_CASE("dim_sh values") {
    CHECK(dim_sh(3) == 3);
    CHECK(dim_sh(4) == 5);
    CHECK(dim_sh(5) == 22);
    CHECK(dim_sh(6) == 9);
    CHECK(dim_sh(7) == 73);
    CHECK(dim_sh(2) == 1);
    CHECK_THROWS_AS(dim_sh(1), cyclolab::DomainError);

    // Shimura cases: dim_sh = 2n-3 exactly when phi(n) = 2 (and n = 2).
    for (int n : {3, 4, 6}) CHECK(dim_sh(n) == 2 * n - 3);
}

TEST_CASE("hodge cross-check of dim_sh") {
    // dim_sh = sum over conjugate pair representatives of h10_r * h01_r,
    // computed through the curve module's Hodge table.
    for (int n = 2; n <= 30; ++n) {
        auto hp = cyclolab::curve::hodge_profile(n);
        mpz_class sum = 0;
        for (int r = 1; r < n; ++r) {
            if (std::gcd(r, n) != 1 || r > n - r) continue;
            sum += mpz_class(hp.row(r).first) * mpz_class(hp.row(r).second);
        }
        CHECK(dim_sh(n) == sum);
    }
}

TEST_CASE("cm type enumeration") {
    auto t5 = enumerate_cm_types(5);
    REQUIRE(t5.size() == 2);
    CHECK(t5[0].at(1) == 1);
    CHECK(t5[1].at(1) == 1);
    // The two types differ exactly in the free bit at i = 2.
    CHECK(((t5[0].at(2) == 0 && t5[1].at(2) == 1) || (t5[0].at(2) == 1 && t5[1].at(2) == 0)));

    CHECK(enumerate_cm_types(3).size() == 1);
    CHECK(enumerate_cm_types(7).size() == 4);
    CHECK(enumerate_cm_types(2).size() == 1);

    for (int n = 3; n <= 30; ++n) {
        size_t expected = size_t{1} << (euler_phi(n) / 2 - 1);
        CHECK(enumerate_cm_types(n).size() == expected);
        for (const auto& t : enumerate_cm_types(n)) {
            CHECK(t.at(1) == 1);
            for (const auto& [i, v] : t.values) CHECK(v + t.at(n - i) == 1);
        }
    }
}

TEST_CASE("subvariety dims for n=5") {
    auto types = enumerate_cm_types(5);
    for (const auto& t : types) {
        auto d = dims_sh_A(5, t);
        if (t.at(2) == 1) {
            CHECK(d.dim == 10);
            CHECK(d.codim == 12);
        } else {
            CHECK(d.dim == 12);
            CHECK(d.codim == 10);
        }
        CHECK(d.dim + d.codim == dim_sh(5));
    }
}

TEST_CASE("n=3 equality case") {
    auto types = enumerate_cm_types(3);
    REQUIRE(types.size() == 1);
    auto d = dims_sh_A(3, types[0]);
    CHECK(d.codim == 3);
    CHECK(d.codim == 2 * 3 - 3);
}

TEST_CASE("additivity and inequality exhaustive to 30") {
    for (int n = 2; n <= 30; ++n) {
        bool equality_seen = false;
        for (const auto& t : enumerate_cm_types(n)) {
            auto d = dims_sh_A(n, t);
            CHECK(d.dim + d.codim == dim_sh(n));
            CHECK(d.codim >= 2 * n - 3);
            if (d.codim == 2 * n - 3) equality_seen = true;
        }
        CHECK(equality_seen == (euler_phi(n) <= 2));
    }
}

TEST_CASE("gap reports") {
    auto r5 = gap_report(5);
    CHECK(r5.min_codim == 10);
    CHECK(r5.dim_moduli == 7);
    CHECK(r5.unlikely);
    CHECK_FALSE(r5.equality_case);

    auto r4 = gap_report(4);
    CHECK_FALSE(r4.unlikely);
    CHECK(r4.equality_case);

    auto r2 = gap_report(2);
    CHECK(r2.equality_case);
    CHECK_FALSE(r2.unlikely);

    CHECK(gap_report_table_row(r5) ==
          "n=5 dim_M=7 dim_Sh=22 cm_types=2 min_codim=10 unlikely=yes equality=no");
}

TEST_CASE("consistency identity") {
    CHECK(consistency_identity(5));
    CHECK(consistency_identity(2));
    CHECK(consistency_identity(10));
    for (int n = 2; n <= 100; ++n) CHECK(consistency_identity(n));
}

TEST_CASE("counterexample dimensions") {
    CHECK(counterexample_dimensions(7) == std::vector<long>{7, 11});
    CHECK(counterexample_dimensions(2).empty());

    // Excluded dims up to 9 come from n in {2,3,4,6}.
    std::vector<long> dims = counterexample_dimensions(30);
    std::vector<long> expect;
    for (int n = 2; n <= 30; ++n) {
        long d = 2 * n - 3;
        if (d != 1 && d != 3 && d != 5 && d != 9) expect.push_back(d);
    }
    CHECK(dims == expect);
}
