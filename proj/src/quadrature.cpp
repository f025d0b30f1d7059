#include "cyclolab/quadrature.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "cyclolab/errors.hpp"

namespace cyclolab::quad {

namespace {

// Node of the tanh-sinh rule at u = k*h: abscissa t = tanh((pi/2) sinh u),
// the stable complements 1 -/+ t and their logs, and the weight
// w = (pi/2) cosh(u) / cosh^2((pi/2) sinh u).
struct Node {
    Real t, om, op, log_om, log_op, w;
};

constexpr int kBaseLevel = 3;
constexpr int kMaxLevel = 12;
constexpr double kMaxU = 10.0;  // covers endpoint exponents > -1+1/30 beyond 400 digits

class NodeTable {
  public:
    explicit NodeTable(int digits) : prec_(bits_for_digits(digits) + 16) {
        levels_.resize(kMaxLevel - kBaseLevel + 1);
        built_.resize(levels_.size(), false);
        for (int l = kBaseLevel; l <= 8; ++l) build(l);
    }

    const std::vector<Node>& level(int l) const {
        size_t idx = static_cast<size_t>(l - kBaseLevel);
        {
            std::lock_guard<std::mutex> lock(mu_);
            if (!built_[idx]) const_cast<NodeTable*>(this)->build(l);
        }
        return levels_[idx];
    }

    Prec prec() const { return prec_; }

    static std::shared_ptr<const NodeTable> get(int digits) {
        int bucket = ((digits + 31) / 32) * 32;
        static std::mutex mu;
        static std::map<int, std::shared_ptr<const NodeTable>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(bucket);
        if (it != cache.end()) return it->second;
        auto table = std::make_shared<const NodeTable>(bucket);
        cache.emplace(bucket, table);
        return table;
    }

  private:
    void build(int l) {
        size_t idx = static_cast<size_t>(l - kBaseLevel);
        if (built_[idx]) return;
        std::vector<Node>& nodes = levels_[idx];
        double h = std::ldexp(1.0, -l);
        long kmax = static_cast<long>(kMaxU / h);
        Real half_pi = pi(prec_) / 2;
        long step = (l == kBaseLevel) ? 1 : 2;
        long start = (l == kBaseLevel) ? 0 : 1;
        for (long k = start; k <= kmax; k += step) {
            Real u(prec_);
            mpfr_set_d(u.raw(), h, MPFR_RNDN);
            mpfr_mul_si(u.raw(), u.raw(), k, MPFR_RNDN);
            Real sh(prec_), ch(prec_);
            mpfr_sinh_cosh(sh.raw(), ch.raw(), u.raw(), MPFR_RNDN);
            Real g = half_pi * sh;
            // 1 -/+ tanh(g) without cancellation: e = exp(-2g),
            // om = 2e/(1+e), op = 2/(1+e).
            Real e(prec_);
            mpfr_mul_si(e.raw(), g.raw(), -2, MPFR_RNDN);
            mpfr_exp(e.raw(), e.raw(), MPFR_RNDN);
            Real denom = e + Real(1.0, prec_);
            Real om = (e * 2) / denom;
            Real op = Real(2.0, prec_) / denom;
            Real t = op - Real(1.0, prec_);  // tanh(g) = op - 1, exact to rounding
            Real chg(prec_);
            mpfr_cosh(chg.raw(), g.raw(), MPFR_RNDN);
            Real w = half_pi * ch / (chg * chg);
            nodes.push_back({t, om, op, log(om), log(op), w});
        }
        built_[idx] = true;
    }

    Prec prec_;
    mutable std::mutex mu_;
    std::vector<std::vector<Node>> levels_;
    std::vector<bool> built_;
};

struct FactorData {
    Cplx point;
    Real exponent;
    Real start_arg;      // continuous arg at segment start (tangent arg if singular at start)
    Real principal_ref;  // principal Arg(a - p); unused for endpoint factors
    bool sing_a = false;
    bool sing_b = false;
};

// One straight segment with endpoint-singularity bookkeeping.
struct SegmentIntegrator {
    Cplx a, b, mid, half;
    Real log_half_abs;
    std::vector<FactorData> factors;
    Prec wb;
    Real pi_wb;

    SegmentIntegrator(const Cplx& a_, const Cplx& b_, Prec wb_)
        : a(a_), b(b_), mid((a_ + b_) / Real(2.0, wb_)), half((b_ - a_) / Real(2.0, wb_)),
          log_half_abs(log(abs(half))), wb(wb_), pi_wb(pi(wb_)) {}

    // Accumulated integrand value at x = mid + half * tau, tau = s * t.
    void eval(const Node& nd, int s, Cplx& out, Real& out_abs) const {
        Real tau = (s > 0) ? nd.t : -nd.t;
        Cplx x = mid + half * tau;
        Real logmag(0.0, wb);
        Real phase(0.0, wb);
        for (const auto& f : factors) {
            if (f.sing_a) {
                const Real& lg = (s > 0) ? nd.log_op : nd.log_om;
                logmag += f.exponent * (log_half_abs + lg);
                phase += f.exponent * f.start_arg;
            } else if (f.sing_b) {
                const Real& lg = (s > 0) ? nd.log_om : nd.log_op;
                logmag += f.exponent * (log_half_abs + lg);
                phase += f.exponent * f.start_arg;
            } else {
                Cplx v = x - f.point;
                logmag += f.exponent * (log(norm2(v)) / 2);
                Real delta = atan2(v.im, v.re) - f.principal_ref;
                if (delta > pi_wb) delta -= pi_wb * 2;
                if (delta <= -pi_wb) delta += pi_wb * 2;
                phase += f.exponent * (f.start_arg + delta);
            }
        }
        Real mag = exp(logmag) * nd.w;
        Real c(wb), sn(wb);
        mpfr_sin_cos(sn.raw(), c.raw(), phase.raw(), MPFR_RNDN);
        out = Cplx(mag * c, mag * sn);
        out_abs = abs(mag);
    }

    Ball run(const NodeTable& table, int digits) const {
        Real eps_trunc = pow10(-(digits + 6));
        Real eps_conv = pow10(-(digits + 4));

        Cplx sum(wb);
        Real t_abs(0.0, wb);
        Cplx prev_s(wb);
        bool have_prev = false;

        for (int l = kBaseLevel; l <= kMaxLevel; ++l) {
            const auto& nodes = table.level(l);
            Cplx level_sum(wb);
            Real level_abs(0.0, wb);
            // Each side truncates independently once terms are negligible.
            for (int s : {+1, -1}) {
                int consecutive_small = 0;
                for (size_t i = 0; i < nodes.size(); ++i) {
                    if (l == kBaseLevel && nodes[i].t.is_zero()) {
                        if (s < 0) continue;  // include the origin once
                    }
                    Cplx term(wb);
                    Real term_abs(0.0, wb);
                    eval(nodes[i], s, term, term_abs);
                    level_sum += term;
                    level_abs += term_abs;
                    if (term_abs <= eps_trunc * max(level_abs, Real(1e-300, 64))) {
                        if (++consecutive_small >= 3) break;
                    } else {
                        consecutive_small = 0;
                    }
                }
            }
            Real h(wb);
            mpfr_set_d(h.raw(), std::ldexp(1.0, -l), MPFR_RNDN);
            if (l == kBaseLevel) {
                sum = level_sum * h;
                t_abs = level_abs * h;
            } else {
                sum = sum / Real(2.0, wb) + level_sum * h;
                t_abs = t_abs / Real(2.0, wb) + level_abs * h;
            }
            if (have_prev) {
                Real delta = abs(sum - prev_s);
                if (delta <= eps_conv * max(t_abs, Real(1e-300, 64))) {
                    Real rounding = t_abs * pow10(-(digits + 6));
                    Real err = (delta + rounding) * abs(half);
                    return {sum * half, err};
                }
                
            }
            prev_s = sum;
            have_prev = true;
        }
        throw PrecisionFailure("tanh-sinh quadrature did not converge by level 12");
    }
};

void check_polyline(const BranchedProduct& f, const Polyline& path) {
    if (path.vertices.size() < 2) throw DomainError("integrate: polyline needs two vertices");
    if (path.sing_from >= static_cast<int>(f.points.size()) ||
        path.sing_to >= static_cast<int>(f.points.size()))
        throw DomainError("integrate: singular factor index out of range");
    if (path.sing_from >= 0 && path.sing_to == path.sing_from)
        throw DomainError("integrate: degenerate path from a branch point to itself");
}

}  // namespace

Real wrap_angle(const Real& delta) {
    Real p = pi(delta.prec());
    Real out = delta;
    while (out > p) out -= p * 2;
    while (out <= -p) out += p * 2;
    return out;
}

std::vector<Real> principal_start_args(const BranchedProduct& f, const Polyline& path, int digits) {
    (void)digits;
    std::vector<Real> args;
    args.reserve(f.points.size());
    const Cplx& w0 = path.vertices.front();
    const Cplx& w1 = path.vertices[1];
    for (size_t i = 0; i < f.points.size(); ++i) {
        if (static_cast<int>(i) == path.sing_from)
            args.push_back(arg(w1 - w0));  // initial tangent
        else
            args.push_back(arg(w0 - f.points[i]));
    }
    return args;
}

std::vector<Real> transport_args(const BranchedProduct& f, const Polyline& path,
                                 const std::vector<Real>& start_args) {
    std::vector<Real> args = start_args;
    size_t nseg = path.vertices.size() - 1;
    for (size_t seg = 0; seg < nseg; ++seg) {
        const Cplx& a = path.vertices[seg];
        const Cplx& b = path.vertices[seg + 1];
        for (size_t i = 0; i < f.points.size(); ++i) {
            bool from_here = static_cast<int>(i) == path.sing_from && seg == 0;
            bool to_here = static_cast<int>(i) == path.sing_to && seg == nseg - 1;
            if (from_here || to_here) continue;  // constant along the anchored segment
            Real ref = arg(a - f.points[i]);
            Real now = arg(b - f.points[i]);
            args[i] += wrap_angle(now - ref);
        }
    }
    return args;
}

Ball integrate(const BranchedProduct& f, const Polyline& path, const std::vector<Real>& start_args,
               int digits) {
    check_polyline(f, path);
    if (start_args.size() != f.points.size())
        throw DomainError("integrate: start_args size mismatch");

    auto table = NodeTable::get(digits);
    Prec wb = bits_for_digits(digits) + 16;

    std::vector<Real> args = start_args;
    Ball total(wb);
    total.err = Real(0.0, 64);

    size_t nseg = path.vertices.size() - 1;
    for (size_t seg = 0; seg < nseg; ++seg) {
        const Cplx& a = path.vertices[seg];
        const Cplx& b = path.vertices[seg + 1];
        SegmentIntegrator integ(a, b, wb);
        for (size_t i = 0; i < f.points.size(); ++i) {
            FactorData fd{f.points[i], Real(wb), args[i], Real(0.0, wb), false, false};
            mpfr_set_q(fd.exponent.raw(), f.exponents[i].get_mpq_t(), MPFR_RNDN);
            if (static_cast<int>(i) == path.sing_from && seg == 0) {
                fd.sing_a = true;
            } else if (static_cast<int>(i) == path.sing_to && seg == nseg - 1) {
                fd.sing_b = true;
            } else {
                fd.principal_ref = arg(a - f.points[i]);
            }
            integ.factors.push_back(std::move(fd));
        }
        Ball piece = integ.run(*table, digits);
        total.value += piece.value;
        total.err += piece.err;

        // Transport the argument anchors across this segment.
        if (seg + 1 < nseg) {
            for (size_t i = 0; i < f.points.size(); ++i) {
                if (static_cast<int>(i) == path.sing_from && seg == 0) continue;
                args[i] += wrap_angle(arg(b - f.points[i]) - arg(a - f.points[i]));
            }
        }
    }
    return total;
}

Ball integrate(const BranchedProduct& f, const Polyline& path, int digits) {
    return integrate(f, path, principal_start_args(f, path, digits), digits);
}

}  // namespace cyclolab::quad
