#pragma once

// Combinatorial and exact data of the n-fold cyclic cover of P^1 branched at
// 2n points: point configurations in normalized gauge, eigenform bases,
// Hodge dimension tables, genus, and the Prym dimension bookkeeping.

#include <map>
#include <vector>

#include "cyclolab/real.hpp"

namespace cyclolab::curve {

struct ProjectivePoint {
    Cplx z;
    bool at_infinity = false;

    static ProjectivePoint infinity() {
        ProjectivePoint p;
        p.at_infinity = true;
        return p;
    }
    static ProjectivePoint finite(Cplx v) { return {std::move(v), false}; }
};

// Moebius map (a z + b) / (c z + d).
struct MoebiusMap {
    Cplx a, b, c, d;
    ProjectivePoint apply(const ProjectivePoint& p) const;
};

// Ordered tuple of 2n distinct points of P^1 in the normalized gauge
// points[0] = 0, points[1] = 1, points[2] = inf. The moduli coordinates are
// the remaining 2n-3 entries ("free"). The affine chart used for integration
// keeps infinity as a branch point: finite_points() lists the other 2n-1 in
// tuple order (0, 1, free...).
struct PointConfiguration {
    int n = 0;
    std::vector<ProjectivePoint> points;  // size 2n
    std::vector<Cplx> free_coords;        // size 2n-3

    std::vector<Cplx> finite_points() const;
    PointConfiguration conjugated() const;
};

// Builds the normalized configuration directly from moduli coordinates.
PointConfiguration config_from_free(int n, std::vector<Cplx> free_coords);

struct NormalizeResult {
    PointConfiguration config;
    MoebiusMap map;  // the gauge transformation that was applied
};

// Gauge-fixes the PGL2 action: sends points[0], points[1], points[2] to
// 0, 1, inf. Throws DegenerateConfiguration on coincident points.
// `digits` sets the arithmetic precision and the collision threshold.
NormalizeResult normalize(const std::vector<ProjectivePoint>& raw, int digits);

// Differential x^a dx / y^b on the affine model; holomorphic iff a <= 2b-2.
struct Eigenform {
    int a = 0;
    int b = 1;
};

struct HodgeProfile {
    int n = 0;
    // rows[i-1] = (h10, h01) of the zeta^i eigenspace, i = 1..n-1.
    std::vector<std::pair<long, long>> rows;
    std::pair<long, long> row(int i) const { return rows.at(static_cast<size_t>(i) - 1); }
};

// (2i-1, 2(n-i)-1) for each eigenspace.
HodgeProfile hodge_profile(int n);

// (n-1)^2, computed by Riemann-Hurwitz and by the Hodge row sum; the two
// routes are asserted to agree.
long genus(int n);

// The 2i-1 forms x^a dx / y^i, a = 0..2i-2, spanning H^{1,0}[i]. The
// eigenspace <-> exponent dictionary b = i is the unique choice matching the
// Hodge table, and is asserted against hodge_profile on every call.
std::vector<Eigenform> eigenform_basis(int n, int i);

struct PrymProfile {
    long prym_dim = 0;                  // (n-1) phi(n)
    std::vector<int> eigenspaces;       // residues coprime to n
    std::map<int, long> quotient_genera;  // proper divisor n' -> genus of C/(Z/n')
};

PrymProfile prym_profile(int n);

}  // namespace cyclolab::curve
