#include "cyclolab/curve.hpp"

#include <numeric>

#include "cyclolab/errors.hpp"

namespace cyclolab::curve {

namespace {

long euler_phi(int n) {
    long count = 0;
    for (int r = 1; r < n; ++r)
        if (std::gcd(r, n) == 1) ++count;
    return std::max(count, 1L);
}

void check_distinct(const std::vector<ProjectivePoint>& pts, int digits) {
    int infinities = 0;
    Real scale(1.0, 64);
    for (const auto& p : pts) {
        if (p.at_infinity)
            ++infinities;
        else
            scale = max(scale, abs(p.z));
    }
    if (infinities > 1) throw DegenerateConfiguration("more than one point at infinity");
    Real tol = scale * pow10(-(digits - 6));
    for (size_t i = 0; i < pts.size(); ++i) {
        for (size_t j = i + 1; j < pts.size(); ++j) {
            if (pts[i].at_infinity || pts[j].at_infinity) continue;
            if (abs(pts[i].z - pts[j].z) <= tol)
                throw DegenerateConfiguration("coincident branch points");
        }
    }
}

}  // namespace

ProjectivePoint MoebiusMap::apply(const ProjectivePoint& p) const {
    Cplx num(a.prec()), den(a.prec());
    if (p.at_infinity) {
        num = a;
        den = c;
    } else {
        num = a * p.z + b;
        den = c * p.z + d;
    }
    Real mag_scale = max(abs(num), max(abs(a), abs(d)));
    if (abs(den) <= mag_scale * pow10(-(static_cast<long>(a.prec()) / 4)))
        return ProjectivePoint::infinity();
    return ProjectivePoint::finite(num / den);
}

std::vector<Cplx> PointConfiguration::finite_points() const {
    std::vector<Cplx> out;
    out.reserve(points.size() - 1);
    for (const auto& p : points)
        if (!p.at_infinity) out.push_back(p.z);
    return out;
}

PointConfiguration PointConfiguration::conjugated() const {
    PointConfiguration out = *this;
    for (auto& p : out.points)
        if (!p.at_infinity) p.z = conj(p.z);
    for (auto& f : out.free_coords) f = conj(f);
    return out;
}

PointConfiguration config_from_free(int n, std::vector<Cplx> free_coords) {
    if (n < 2) throw DomainError("config_from_free: n must be >= 2");
    if (free_coords.size() != static_cast<size_t>(2 * n - 3))
        throw DomainError("config_from_free: expected 2n-3 free coordinates");
    Prec prec = 64;
    for (const auto& f : free_coords) prec = std::max(prec, f.prec());
    PointConfiguration cfg;
    cfg.n = n;
    cfg.points.push_back(ProjectivePoint::finite(Cplx(0.0, 0.0, prec)));
    cfg.points.push_back(ProjectivePoint::finite(Cplx(1.0, 0.0, prec)));
    cfg.points.push_back(ProjectivePoint::infinity());
    for (const auto& f : free_coords) cfg.points.push_back(ProjectivePoint::finite(f));
    cfg.free_coords = std::move(free_coords);
    int digits = static_cast<int>(prec / 3.33);
    check_distinct(cfg.points, std::max(16, digits));
    return cfg;
}

NormalizeResult normalize(const std::vector<ProjectivePoint>& raw, int digits) {
    if (raw.size() < 4 || raw.size() % 2 != 0)
        throw DomainError("normalize: expected an even number (2n >= 4) of points");
    check_distinct(raw, digits);
    int n = static_cast<int>(raw.size()) / 2;

    Prec prec = bits_for_digits(digits);
    auto lift = [&](const Cplx& z) { return Cplx(z.re, z.im); };
    Cplx one(1.0, 0.0, prec), zero(0.0, 0.0, prec);

    // Map sending (p0, p1, p2) -> (0, 1, inf): ((x-p0)(p1-p2)) / ((x-p2)(p1-p0)),
    // with the usual limit forms when one of the three is infinity.
    MoebiusMap map;
    const ProjectivePoint &p0 = raw[0], &p1 = raw[1], &p2 = raw[2];
    if (p0.at_infinity) {
        map = {zero, lift(p1.z) - lift(p2.z), one, -lift(p2.z)};
    } else if (p1.at_infinity) {
        map = {one, -lift(p0.z), one, -lift(p2.z)};
    } else if (p2.at_infinity) {
        map = {one, -lift(p0.z), zero, lift(p1.z) - lift(p0.z)};
    } else {
        Cplx bc = lift(p1.z) - lift(p2.z);
        Cplx ba = lift(p1.z) - lift(p0.z);
        map = {bc, -(lift(p0.z) * bc), ba, -(lift(p2.z) * ba)};
    }

    PointConfiguration cfg;
    cfg.n = n;
    cfg.points.push_back(ProjectivePoint::finite(zero));
    cfg.points.push_back(ProjectivePoint::finite(one));
    cfg.points.push_back(ProjectivePoint::infinity());
    for (size_t i = 3; i < raw.size(); ++i) {
        ProjectivePoint img = map.apply(raw[i]);
        if (img.at_infinity)
            throw DegenerateConfiguration("normalize: free point collides with the gauge anchor");
        cfg.points.push_back(img);
        cfg.free_coords.push_back(img.z);
    }
    check_distinct(cfg.points, digits);
    return {std::move(cfg), map};
}

HodgeProfile hodge_profile(int n) {
    if (n < 2) throw DomainError("hodge_profile: n must be >= 2");
    HodgeProfile hp;
    hp.n = n;
    for (int i = 1; i <= n - 1; ++i)
        hp.rows.emplace_back(2L * i - 1, 2L * (n - i) - 1);
    return hp;
}

long genus(int n) {
    if (n < 2) throw DomainError("genus: n must be >= 2");
    // Riemann-Hurwitz for the degree-n cover totally ramified over 2n points:
    // 2 - 2g = 2n - 2n(n-1).
    long g_rh = (2L * n * (n - 1) - 2L * n + 2) / 2;
    long g_rows = 0;
    for (const auto& row : hodge_profile(n).rows) g_rows += row.first;
    if (g_rh != g_rows) throw DomainError("genus: Riemann-Hurwitz and Hodge row sum disagree");
    return g_rh;
}

std::vector<Eigenform> eigenform_basis(int n, int i) {
    if (n < 2) throw DomainError("eigenform_basis: n must be >= 2");
    if (i < 1 || i > n - 1) throw DomainError("eigenform_basis: eigenspace index out of range");
    std::vector<Eigenform> basis;
    for (int a = 0; a <= 2 * i - 2; ++a) basis.push_back({a, i});
    if (static_cast<long>(basis.size()) != hodge_profile(n).row(i).first)
        throw DomainError("eigenform_basis: dimension mismatch against the Hodge table");
    return basis;
}

PrymProfile prym_profile(int n) {
    if (n < 2) throw DomainError("prym_profile: n must be >= 2");
    PrymProfile pp;
    pp.prym_dim = (n - 1) * euler_phi(n);
    for (int r = 1; r < n; ++r)
        if (std::gcd(r, n) == 1) pp.eigenspaces.push_back(r);
    // Genus of C' = C/(Z/n') from Riemann-Hurwitz for the (n/n')-fold cover
    // of P^1 totally ramified over the same 2n points.
    for (int np = 2; np < n; ++np) {
        if (n % np != 0) continue;
        long q = n / np;
        long g = (2L * n * (q - 1) - 2 * q + 2) / 2;
        if (g != (n - 1) * (q - 1))
            throw DomainError("prym_profile: quotient genus cross-check failed");
        pp.quotient_genera[np] = g;
    }
    return pp;
}

}  // namespace cyclolab::curve
