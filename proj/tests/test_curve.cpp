#include "cyclolab/curve.hpp"

#include "cyclolab/errors.hpp"
#include "doctest.h"

using namespace cyclolab;
using namespace cyclolab::curve;

TEST_CASE("hodge profile") {
    auto h5 = hodge_profile(5);
    CHECK(h5.rows == std::vector<std::pair<long, long>>{{1, 7}, {3, 5}, {5, 3}, {7, 1}});
    CHECK(hodge_profile(2).rows == std::vector<std::pair<long, long>>{{1, 1}});
    CHECK(hodge_profile(3).rows == std::vector<std::pair<long, long>>{{1, 3}, {3, 1}});
    CHECK_THROWS_AS(hodge_profile(1), DomainError);

    // Hodge symmetry h10_i = h01_{n-i}
    for (int n = 2; n <= 12; ++n) {
        auto hp = hodge_profile(n);
        for (int i = 1; i <= n - 1; ++i) CHECK(hp.row(i).first == hp.row(n - i).second);
    }
}

TEST_CASE("genus") {
    CHECK(genus(2) == 1);
    CHECK(genus(3) == 4);
    CHECK(genus(5) == 16);
    for (int n = 2; n <= 12; ++n) CHECK(genus(n) == static_cast<long>(n - 1) * (n - 1));
}

TEST_CASE("eigenform bases") {
    auto b1 = eigenform_basis(5, 1);
    REQUIRE(b1.size() == 1);
    CHECK(b1[0].a == 0);
    CHECK(b1[0].b == 1);

    CHECK(eigenform_basis(5, 4).size() == 7);
    CHECK(eigenform_basis(2, 1).size() == 1);
    CHECK_THROWS_AS(eigenform_basis(5, 5), DomainError);

    for (int n = 2; n <= 12; ++n) {
        long total = 0;
        for (int i = 1; i <= n - 1; ++i) {
            auto basis = eigenform_basis(n, i);
            CHECK(static_cast<long>(basis.size()) == 2 * i - 1);
            for (const auto& f : basis) CHECK(f.a <= 2 * f.b - 2);
            total += static_cast<long>(basis.size());
        }
        CHECK(total == genus(n));
    }
}

TEST_CASE("prym profile") {
    auto p5 = prym_profile(5);
    CHECK(p5.prym_dim == 16);
    CHECK(p5.prym_dim == genus(5));
    CHECK(p5.quotient_genera.empty());

    auto p4 = prym_profile(4);
    CHECK(p4.prym_dim == 6);
    REQUIRE(p4.quotient_genera.count(2) == 1);
    CHECK(p4.quotient_genera.at(2) == 3);
    CHECK(p4.prym_dim + p4.quotient_genera.at(2) == genus(4));

    auto p2 = prym_profile(2);
    CHECK(p2.prym_dim == 1);
    CHECK(p2.quotient_genera.empty());

    // prym_dim = sum over coprime eigenspaces of (h10 + h01)/2
    for (int n = 2; n <= 12; ++n) {
        auto pp = prym_profile(n);
        auto hp = hodge_profile(n);
        long sum = 0;
        for (int r : pp.eigenspaces) sum += (hp.row(r).first + hp.row(r).second);
        CHECK(pp.prym_dim == sum / 2);
    }
}

TEST_CASE("normalize already-normalized input") {
    Prec prec = bits_for_digits(40);
    std::vector<ProjectivePoint> pts{
        ProjectivePoint::finite(Cplx(0.0, 0.0, prec)),
        ProjectivePoint::finite(Cplx(1.0, 0.0, prec)),
        ProjectivePoint::infinity(),
        ProjectivePoint::finite(Cplx(0.3, 0.7, prec)),
    };
    auto res = normalize(pts, 40);
    REQUIRE(res.config.free_coords.size() == 1);
    CHECK(abs(res.config.free_coords[0] - Cplx(0.3, 0.7, prec)).to_double() < 1e-35);
}

TEST_CASE("normalize (1,2,3,4)") {
    // Moebius map with (1,2,3) -> (0,1,inf) evaluated at 4, cross-checked
    // against ((x-a)(b-c))/((x-c)(b-a)): both give -3.
    Prec prec = bits_for_digits(40);
    std::vector<ProjectivePoint> pts{
        ProjectivePoint::finite(Cplx(1.0, 0.0, prec)),
        ProjectivePoint::finite(Cplx(2.0, 0.0, prec)),
        ProjectivePoint::finite(Cplx(3.0, 0.0, prec)),
        ProjectivePoint::finite(Cplx(4.0, 0.0, prec)),
    };
    auto res = normalize(pts, 40);
    REQUIRE(res.config.free_coords.size() == 1);
    CHECK(abs(res.config.free_coords[0] - Cplx(-3.0, 0.0, prec)).to_double() < 1e-35);

    Cplx a(1.0, 0.0, prec), b(2.0, 0.0, prec), c(3.0, 0.0, prec), x(4.0, 0.0, prec);
    Cplx cross = ((x - a) * (b - c)) / ((x - c) * (b - a));
    CHECK(abs(res.config.free_coords[0] - cross).to_double() < 1e-35);
}

TEST_CASE("normalize rejects repeats") {
    Prec prec = bits_for_digits(40);
    std::vector<ProjectivePoint> pts{
        ProjectivePoint::finite(Cplx(0.0, 0.0, prec)),
        ProjectivePoint::finite(Cplx(1.0, 0.0, prec)),
        ProjectivePoint::finite(Cplx(1.0, 0.0, prec)),
        ProjectivePoint::finite(Cplx(4.0, 0.0, prec)),
    };
    CHECK_THROWS_AS(normalize(pts, 40), DegenerateConfiguration);
}

TEST_CASE("normalize is idempotent and gauge invariant") {
    Prec prec = bits_for_digits(50);
    std::vector<ProjectivePoint> pts{
        ProjectivePoint::finite(Cplx(0.0, 0.0, prec)),
        ProjectivePoint::finite(Cplx(1.0, 0.0, prec)),
        ProjectivePoint::infinity(),
        ProjectivePoint::finite(Cplx(2.5, 0.4, prec)),
        ProjectivePoint::finite(Cplx(-1.2, 0.9, prec)),
        ProjectivePoint::finite(Cplx(0.4, -1.3, prec)),
    };
    auto base = normalize(pts, 50);

    // Apply an arbitrary Moebius transform to every point and re-normalize.
    MoebiusMap g{Cplx(2.0, 1.0, prec), Cplx(0.3, -0.2, prec), Cplx(1.0, 0.5, prec),
                 Cplx(4.0, 0.0, prec)};
    std::vector<ProjectivePoint> moved;
    for (const auto& p : pts) moved.push_back(g.apply(p));
    auto again = normalize(moved, 50);

    REQUIRE(again.config.free_coords.size() == base.config.free_coords.size());
    for (size_t i = 0; i < base.config.free_coords.size(); ++i)
        CHECK(abs(again.config.free_coords[i] - base.config.free_coords[i]).to_double() < 1e-44);
}

TEST_CASE("config_from_free") {
    Prec prec = bits_for_digits(40);
    auto cfg = config_from_free(2, {Cplx(0.5, 0.0, prec)});
    CHECK(cfg.points.size() == 4);
    auto fin = cfg.finite_points();
    REQUIRE(fin.size() == 3);
    CHECK(fin[2].re.to_double() == doctest::Approx(0.5));
    CHECK_THROWS_AS(config_from_free(2, {Cplx(1.0, 0.0, prec)}), DegenerateConfiguration);
}
