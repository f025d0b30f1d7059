#pragma once

// Period integrals of eigenforms along branch-point paths, the cycle basis
// built from deck-translate differences of consecutive paths, eigenspace
// period matrices, the Schwarz vector, and its finite-difference Jacobian.

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "cyclolab/curve.hpp"
#include "cyclolab/cyclotomic.hpp"
#include "cyclolab/linalg.hpp"
#include "cyclolab/quadrature.hpp"
#include "cyclolab/real.hpp"

namespace cyclolab::periods {

// Path between two branch points, indices into the engine's finite point
// list, with optional interior waypoints keeping clear of other points.
struct BranchPath {
    int from_idx = 0;
    int to_idx = 0;
    std::vector<Cplx> detour;
};

// Formal Z[zeta]-combination of deck-translated lifted paths.
struct CycleTerm {
    BranchPath path;
    int deck = 0;
    cyclo::Element weight;
};

struct Cycle {
    std::vector<CycleTerm> terms;
};

struct PeriodMatrix {
    int n = 0;
    int eigenspace = 0;
    int digits = 0;
    bool includes_antiholomorphic = false;
    std::vector<curve::Eigenform> hol_forms;
    std::vector<std::vector<Ball>> entries;  // rows x (2n-2) cycles
};

class PeriodEngine {
  public:
    PeriodEngine(const curve::PointConfiguration& cfg, int digits);
    // All-finite chart (no branch point at infinity); used for monodromy
    // moves that displace the gauge points.
    PeriodEngine(int n, std::vector<Cplx> finite_points, int digits);

    int n() const { return n_; }
    int digits() const { return digits_; }
    const std::vector<Cplx>& finite_points() const { return finite_; }
    bool infinity_is_branch() const { return infinity_branch_; }
    curve::PointConfiguration config() const;  // only for the infinity chart

    // Integral of x^a prod (x - p_j)^{-b/n} dx along the path, branch
    // anchored at the principal value of the initial tangent. Throws
    // PathTooClose if the polyline passes within clearance of a
    // non-endpoint branch point.
    Ball integrate_eigenform(const curve::Eigenform& form, const BranchPath& path) const;

    // Same integrand family on the conjugated configuration along the
    // conjugated path with negated branch anchors; used to assemble
    // antiholomorphic pairings.
    Ball integrate_eigenform_conj(const curve::Eigenform& form, const BranchPath& path) const;

    // 2n-2 cycles (mu - 1) applied to consecutive branch-point paths.
    const std::vector<Cycle>& cycle_basis() const;

    // <form, cycle> pairing: sum of weight * zeta^{-b*deck} * path integrals.
    Ball pair(const curve::Eigenform& form, const Cycle& cycle) const;

    // Pairing of the antiholomorphic class conj(x^a dx / y^b) against a
    // basis cycle (by index, so the conjugated path is reused).
    Ball pair_antiholomorphic(const curve::Eigenform& form, int cycle_index) const;

    // Schwarz vector: omega = dx/y against the cycle basis.
    std::vector<Ball> schwarz_vector() const;

    PeriodMatrix period_matrix(int eigenspace, bool include_antiholomorphic) const;

    // Square matrix: omega row + antiholomorphic completions of eigenspace 1.
    CMatrix full_period_matrix() const;
    Real full_period_matrix_error() const;

    // Default polyline (with automatic detours) between two branch points.
    BranchPath standard_path(int from_idx, int to_idx) const;
    quad::Polyline realize(const BranchPath& path) const;

    Real clearance() const { return clearance_; }

  private:
    quad::BranchedProduct integrand(const curve::Eigenform& form, bool conjugated) const;
    void check_clearance(const quad::Polyline& poly, int from_idx, int to_idx) const;

    int n_ = 0;
    int digits_ = 0;
    bool infinity_branch_ = true;
    std::vector<Cplx> finite_;
    Real clearance_;
    mutable std::vector<Cycle> basis_;
    mutable std::once_flag basis_once_;
    mutable std::mutex memo_mu_;
    mutable std::map<std::uint64_t, Ball> memo_;
};

std::vector<Ball> schwarz_map(const curve::PointConfiguration& cfg, int digits);

struct JacobianReport {
    CMatrix jacobian;                // (2n-2) x (2n-2): moduli columns + scale column
    std::vector<Real> singular_values;  // descending, normalized by the largest
    int rank = 0;                    // values above 10^-6 after normalization
};

JacobianReport schwarz_jacobian(const curve::PointConfiguration& cfg, int digits, int threads = 1);

// Chunked parallel map over [0, count); fn must be safe on distinct indices.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace cyclolab::periods
