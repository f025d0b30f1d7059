#pragma once

// Double-exponential (tanh-sinh) quadrature for products of complex powers
// prod_f (x - p_f)^{e_f} along polyline paths, with endpoint algebraic
// singularities of exponent > -1 and winding-aware branch tracking.
//
// Branch policy: each factor's argument is anchored at the path start and
// continued by local unwrapping (a straight segment subtends less than pi
// from any off-segment point, so per-node unwrapping against the segment
// start is exact). Principal values are never recomputed mid-path.

#include <gmpxx.h>

#include <vector>

#include "cyclolab/real.hpp"

namespace cyclolab::quad {

struct BranchedProduct {
    std::vector<Cplx> points;
    std::vector<mpq_class> exponents;  // each > -1 where the path touches the point
};

struct Polyline {
    std::vector<Cplx> vertices;  // at least 2; first/last may be branch points
    int sing_from = -1;          // factor index anchored at vertices.front(), or -1
    int sing_to = -1;            // factor index anchored at vertices.back(), or -1
};

// Continuous arguments of (vertices.front() - p_f). The entry for sing_from
// (if any) is the argument of the initial tangent instead.
std::vector<Real> principal_start_args(const BranchedProduct& f, const Polyline& path, int digits);

// Arguments transported to the end vertex (the sing_to entry holds the
// incoming tangent argument). Used to chain paths and for diagnostics.
std::vector<Real> transport_args(const BranchedProduct& f, const Polyline& path,
                                 const std::vector<Real>& start_args);

Ball integrate(const BranchedProduct& f, const Polyline& path, const std::vector<Real>& start_args,
               int digits);

// Convenience overload with principal start arguments.
Ball integrate(const BranchedProduct& f, const Polyline& path, int digits);

// Wrap an angle difference into (-pi, pi].
Real wrap_angle(const Real& delta);

}  // namespace cyclolab::quad
