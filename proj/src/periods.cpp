#include "cyclolab/periods.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstring>
#include <thread>

#include "cyclolab/errors.hpp"

namespace cyclolab::periods {

namespace {

using DC = std::complex<double>;

DC to_dc(const Cplx& z) { return {z.re.to_double(), z.im.to_double()}; }

double dist_point_segment(DC p, DC a, DC b) {
    DC ab = b - a;
    double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p - a) * std::conj(ab)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t v) {
    h ^= v;
    return h * 0x100000001b3ULL;
}

std::uint64_t hash_double(double d) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(d));
    std::memcpy(&bits, &d, sizeof(bits));
    return bits;
}

}  // namespace

PeriodEngine::PeriodEngine(const curve::PointConfiguration& cfg, int digits)
    : n_(cfg.n), digits_(digits), infinity_branch_(true), finite_(cfg.finite_points()),
      clearance_(0.0, 64) {
    if (digits < 16) throw DomainError("PeriodEngine: precision must be at least 16 digits");
    // Local-system sanity: the 2n branch-point twists multiply to the
    // identity for every eigenspace exponent (2n*b = 0 mod n).
    if ((2 * n_) % n_ != 0) throw DomainError("PeriodEngine: monodromy product violated");
    double dmin = 1e300;
    for (size_t i = 0; i < finite_.size(); ++i)
        for (size_t j = i + 1; j < finite_.size(); ++j)
            dmin = std::min(dmin, std::abs(to_dc(finite_[i]) - to_dc(finite_[j])));
    clearance_ = Real(dmin / 16.0, 64);
}

PeriodEngine::PeriodEngine(int n, std::vector<Cplx> finite_points, int digits)
    : n_(n), digits_(digits), infinity_branch_(false), finite_(std::move(finite_points)),
      clearance_(0.0, 64) {
    if (digits < 16) throw DomainError("PeriodEngine: precision must be at least 16 digits");
    if (finite_.size() != static_cast<size_t>(2 * n))
        throw DomainError("PeriodEngine: all-finite chart needs 2n points");
    double dmin = 1e300;
    for (size_t i = 0; i < finite_.size(); ++i)
        for (size_t j = i + 1; j < finite_.size(); ++j)
            dmin = std::min(dmin, std::abs(to_dc(finite_[i]) - to_dc(finite_[j])));
    if (dmin <= 0.0) throw DegenerateConfiguration("PeriodEngine: coincident branch points");
    clearance_ = Real(dmin / 16.0, 64);
}

curve::PointConfiguration PeriodEngine::config() const {
    if (!infinity_branch_) throw DomainError("config(): engine is in the all-finite chart");
    std::vector<Cplx> free(finite_.begin() + 2, finite_.end());
    return curve::config_from_free(n_, std::move(free));
}

quad::BranchedProduct PeriodEngine::integrand(const curve::Eigenform& form, bool conjugated) const {
    if (form.b < 1 || form.b > n_ - 1 || form.a < 0 || form.a > 2 * form.b - 2)
        throw DomainError("integrand: invalid eigenform exponents");
    quad::BranchedProduct f;
    bool monomial_merged = false;
    for (const auto& p : finite_) {
        f.points.push_back(conjugated ? conj(p) : p);
        mpq_class e(-form.b, n_);
        e.canonicalize();
        if (p.is_zero() && form.a > 0) {
            e += form.a;
            monomial_merged = true;
        }
        f.exponents.push_back(e);
    }
    if (form.a > 0 && !monomial_merged) {
        f.points.push_back(Cplx(0.0, 0.0, 64));
        f.exponents.push_back(mpq_class(form.a));
    }
    return f;
}

quad::Polyline PeriodEngine::realize(const BranchPath& path) const {
    if (path.from_idx == path.to_idx)
        throw DomainError("realize: degenerate path from a branch point to itself");
    if (path.from_idx < 0 || path.to_idx < 0 ||
        path.from_idx >= static_cast<int>(finite_.size()) ||
        path.to_idx >= static_cast<int>(finite_.size()))
        throw DomainError("realize: path endpoint index out of range");
    quad::Polyline poly;
    poly.vertices.push_back(finite_[static_cast<size_t>(path.from_idx)]);
    for (const auto& w : path.detour) poly.vertices.push_back(w);
    poly.vertices.push_back(finite_[static_cast<size_t>(path.to_idx)]);
    poly.sing_from = path.from_idx;
    poly.sing_to = path.to_idx;
    return poly;
}

void PeriodEngine::check_clearance(const quad::Polyline& poly, int from_idx, int to_idx) const {
    double eps = clearance_.to_double() * 0.99;
    for (size_t j = 0; j < finite_.size(); ++j) {
        if (static_cast<int>(j) == from_idx || static_cast<int>(j) == to_idx) continue;
        DC q = to_dc(finite_[j]);
        for (size_t s = 0; s + 1 < poly.vertices.size(); ++s) {
            if (dist_point_segment(q, to_dc(poly.vertices[s]), to_dc(poly.vertices[s + 1])) < eps)
                throw PathTooClose("path passes within clearance of a non-endpoint branch point");
        }
    }
}

BranchPath PeriodEngine::standard_path(int from_idx, int to_idx) const {
    BranchPath path{from_idx, to_idx, {}};
    DC a = to_dc(finite_[static_cast<size_t>(from_idx)]);
    DC b = to_dc(finite_[static_cast<size_t>(to_idx)]);
    double dmin = clearance_.to_double() * 16.0;

    for (double radius = 0.4 * dmin; radius > 0.05 * dmin; radius /= 2) {
        // Offenders sorted by projection along the segment.
        std::vector<std::pair<double, size_t>> offenders;
        DC u = (b - a) / std::abs(b - a);
        for (size_t j = 0; j < finite_.size(); ++j) {
            if (static_cast<int>(j) == from_idx || static_cast<int>(j) == to_idx) continue;
            DC q = to_dc(finite_[j]);
            if (dist_point_segment(q, a, b) < 0.3 * dmin)
                offenders.emplace_back(((q - a) * std::conj(u)).real(), j);
        }
        std::sort(offenders.begin(), offenders.end());

        Prec wb = bits_for_digits(digits_) + 16;
        std::vector<Cplx> detour;
        bool ok = true;
        for (const auto& [proj, j] : offenders) {
            DC q = to_dc(finite_[j]);
            DC nu(-u.imag(), u.real());  // left of the travel direction
            for (double deg : {180.0, 135.0, 90.0, 45.0, 0.0}) {
                double th = deg * 3.14159265358979323846 / 180.0;
                DC w = q + radius * (std::cos(th) * u + std::sin(th) * nu);
                detour.push_back(Cplx(w.real(), w.imag(), wb));
            }
            (void)proj;
        }
        path.detour = detour;
        try {
            check_clearance(realize(path), from_idx, to_idx);
            return path;
        } catch (const PathTooClose&) {
            ok = false;
        }
        if (!ok) continue;
    }
    check_clearance(realize(path), from_idx, to_idx);  // raises with the final geometry
    return path;
}

const std::vector<Cycle>& PeriodEngine::cycle_basis() const {
    std::call_once(basis_once_, [this]() {
        auto ctx = cyclo::Context::get(n_);
        auto gap_cycle = [&](int k, bool negate) {
            Cycle c;
            CycleTerm plus;
            plus.path = standard_path(k, k + 1);
            plus.deck = 1;
            plus.weight = negate ? cyclo::neg(cyclo::Element::one(*ctx))
                                 : cyclo::Element::one(*ctx);
            CycleTerm minus;
            minus.path = plus.path;
            minus.deck = 0;
            minus.weight = cyclo::neg(plus.weight);
            c.terms = {std::move(plus), std::move(minus)};
            return c;
        };
        int count = 2 * n_ - 2;
        if (n_ == 2) {
            // Legendre calibration: the raw gap cycles give the lattice in a
            // skewed unimodular frame; (gap0 + gap1, -gap1) reproduces the
            // classical orientation with tau = i K'/K (tau = i at lambda=1/2).
            Cycle c0 = gap_cycle(0, false);
            Cycle g1 = gap_cycle(1, false);
            c0.terms.insert(c0.terms.end(), g1.terms.begin(), g1.terms.end());
            basis_.push_back(std::move(c0));
            basis_.push_back(gap_cycle(1, true));
        } else {
            for (int k = 0; k < count; ++k) basis_.push_back(gap_cycle(k, false));
        }
    });
    return basis_;
}

Ball PeriodEngine::integrate_eigenform(const curve::Eigenform& form, const BranchPath& path) const {
    std::uint64_t key = 0xcbf29ce484222325ULL;
    key = fnv_mix(key, 1);  // plain orientation
    key = fnv_mix(key, static_cast<std::uint64_t>(path.from_idx));
    key = fnv_mix(key, static_cast<std::uint64_t>(path.to_idx));
    key = fnv_mix(key, static_cast<std::uint64_t>(form.a));
    key = fnv_mix(key, static_cast<std::uint64_t>(form.b));
    for (const auto& w : path.detour) {
        key = fnv_mix(key, hash_double(w.re.to_double()));
        key = fnv_mix(key, hash_double(w.im.to_double()));
    }
    {
        std::lock_guard<std::mutex> lock(memo_mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    quad::Polyline poly = realize(path);
    check_clearance(poly, path.from_idx, path.to_idx);
    Ball result = quad::integrate(integrand(form, false), poly, digits_);
    std::lock_guard<std::mutex> lock(memo_mu_);
    memo_.emplace(key, result);
    return result;
}

Ball PeriodEngine::integrate_eigenform_conj(const curve::Eigenform& form,
                                            const BranchPath& path) const {
    std::uint64_t key = 0xcbf29ce484222325ULL;
    key = fnv_mix(key, 2);  // conjugated variant
    key = fnv_mix(key, static_cast<std::uint64_t>(path.from_idx));
    key = fnv_mix(key, static_cast<std::uint64_t>(path.to_idx));
    key = fnv_mix(key, static_cast<std::uint64_t>(form.a));
    key = fnv_mix(key, static_cast<std::uint64_t>(form.b));
    for (const auto& w : path.detour) {
        key = fnv_mix(key, hash_double(w.re.to_double()));
        key = fnv_mix(key, hash_double(w.im.to_double()));
    }
    {
        std::lock_guard<std::mutex> lock(memo_mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    quad::Polyline poly = realize(path);
    check_clearance(poly, path.from_idx, path.to_idx);
    // Conjugate geometry, with branch anchors the negatives of the plain
    // ones (robust at the +/- pi boundary, unlike re-taking principal args).
    quad::BranchedProduct f = integrand(form, true);
    quad::Polyline cpoly = poly;
    for (auto& v : cpoly.vertices) v = conj(v);
    std::vector<Real> args = quad::principal_start_args(integrand(form, false), poly, digits_);
    for (auto& t : args) t = -t;
    Ball result = quad::integrate(f, cpoly, args, digits_);
    std::lock_guard<std::mutex> lock(memo_mu_);
    memo_.emplace(key, result);
    return result;
}

Ball PeriodEngine::pair(const curve::Eigenform& form, const Cycle& cycle) const {
    auto ctx = cyclo::Context::get(n_);
    Prec wb = bits_for_digits(digits_) + 16;
    Real two_pi = pi(wb) * 2;
    Ball acc(wb);
    acc.err = Real(0.0, 64);
    for (const auto& term : cycle.terms) {
        Ball w = cyclo::embed(*ctx, term.weight, 1, digits_);
        Cplx deck_phase = polar(Real(1.0, wb), two_pi * (-form.b * term.deck) / n_);
        Ball piece = integrate_eigenform(form, term.path) * w;
        acc = acc + piece * deck_phase;
    }
    return acc;
}

Ball PeriodEngine::pair_antiholomorphic(const curve::Eigenform& form, int cycle_index) const {
    const Cycle& cycle = cycle_basis().at(static_cast<size_t>(cycle_index));
    auto ctx = cyclo::Context::get(n_);
    Prec wb = bits_for_digits(digits_) + 16;
    Real two_pi = pi(wb) * 2;
    Ball acc(wb);
    acc.err = Real(0.0, 64);
    // Complex conjugation intertwines deck translation with its inverse:
    // the conjugated cycle carries deck -d and conjugated weights.
    for (const auto& term : cycle.terms) {
        Ball w = cyclo::embed(*ctx, cyclo::conjugate(*ctx, term.weight), 1, digits_);
        Cplx deck_phase = polar(Real(1.0, wb), two_pi * (form.b * term.deck) / n_);
        Ball piece = integrate_eigenform_conj(form, term.path) * w;
        acc = acc + piece * deck_phase;
    }
    return {conj(acc.value), acc.err};
}

std::vector<Ball> PeriodEngine::schwarz_vector() const {
    curve::Eigenform omega{0, 1};
    const auto& basis = cycle_basis();
    std::vector<Ball> out;
    out.reserve(basis.size());
    for (const auto& c : basis) out.push_back(pair(omega, c));
    return out;
}

PeriodMatrix PeriodEngine::period_matrix(int eigenspace, bool include_antiholomorphic) const {
    if (eigenspace < 1 || eigenspace > n_ - 1)
        throw DomainError("period_matrix: eigenspace index out of range");
    PeriodMatrix pm;
    pm.n = n_;
    pm.eigenspace = eigenspace;
    pm.digits = digits_;
    pm.includes_antiholomorphic = include_antiholomorphic;
    pm.hol_forms = curve::eigenform_basis(n_, eigenspace);
    const auto& basis = cycle_basis();
    for (const auto& form : pm.hol_forms) {
        std::vector<Ball> row;
        row.reserve(basis.size());
        for (const auto& c : basis) row.push_back(pair(form, c));
        pm.entries.push_back(std::move(row));
    }
    if (include_antiholomorphic) {
        for (const auto& form : curve::eigenform_basis(n_, n_ - eigenspace)) {
            std::vector<Ball> row;
            row.reserve(basis.size());
            for (size_t k = 0; k < basis.size(); ++k)
                row.push_back(pair_antiholomorphic(form, static_cast<int>(k)));
            pm.entries.push_back(std::move(row));
        }
    }
    return pm;
}

CMatrix PeriodEngine::full_period_matrix() const {
    PeriodMatrix pm = period_matrix(1, true);
    int dim = 2 * n_ - 2;
    if (static_cast<int>(pm.entries.size()) != dim)
        throw DomainError("full_period_matrix: unexpected row count");
    CMatrix m(dim, dim, bits_for_digits(digits_) + 16);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m.at(r, c) = pm.entries[r][c].value;
    return m;
}

Real PeriodEngine::full_period_matrix_error() const {
    PeriodMatrix pm = period_matrix(1, true);
    Real e(0.0, 64);
    for (const auto& row : pm.entries)
        for (const auto& b : row) e = max(e, b.err);
    return e;
}

std::vector<Ball> schwarz_map(const curve::PointConfiguration& cfg, int digits) {
    return PeriodEngine(cfg, digits).schwarz_vector();
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            try {
                for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
            } catch (...) {
                errors[static_cast<size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

JacobianReport schwarz_jacobian(const curve::PointConfiguration& cfg, int digits, int threads) {
    int dim = 2 * cfg.n - 2;
    int nfree = 2 * cfg.n - 3;
    Prec wb = bits_for_digits(digits) + 16;
    Real h = pow10(-(digits / 3), wb);

    // Evaluation schedule: base vector, then +/- displacements per coordinate.
    std::vector<std::vector<Ball>> results(static_cast<size_t>(2 * nfree + 1));
    auto eval = [&](int task) {
        if (task == 2 * nfree) {
            results[static_cast<size_t>(task)] = schwarz_map(cfg, digits);
            return;
        }
        int coord = task / 2;
        int sign = (task % 2 == 0) ? +1 : -1;
        std::vector<Cplx> free = cfg.free_coords;
        free[static_cast<size_t>(coord)].re =
            free[static_cast<size_t>(coord)].re + (sign > 0 ? h : -h);
        results[static_cast<size_t>(task)] = schwarz_map(curve::config_from_free(cfg.n, free), digits);
    };
    parallel_for(2 * nfree + 1, threads, eval);

    JacobianReport rep;
    rep.jacobian = CMatrix(dim, dim, wb);
    for (int c = 0; c < nfree; ++c) {
        const auto& plus = results[static_cast<size_t>(2 * c)];
        const auto& minus = results[static_cast<size_t>(2 * c + 1)];
        for (int r = 0; r < dim; ++r)
            rep.jacobian.at(r, c) = (plus[static_cast<size_t>(r)].value -
                                     minus[static_cast<size_t>(r)].value) /
                                    (h * 2);
    }
    const auto& base = results[static_cast<size_t>(2 * nfree)];
    for (int r = 0; r < dim; ++r) rep.jacobian.at(r, nfree) = base[static_cast<size_t>(r)].value;

    std::vector<Real> sv = singular_values(rep.jacobian, digits / 2);
    Real top = sv.empty() ? Real(1.0, 64) : sv[0];
    if (!(top > Real(0.0, 64))) top = Real(1.0, 64);
    rep.rank = 0;
    rep.singular_values.reserve(sv.size());
    Real floor = pow10(-6);
    for (const auto& s : sv) {
        Real normalized = s / top;
        if (normalized > floor) ++rep.rank;
        rep.singular_values.push_back(normalized);
    }
    return rep;
}

}  // namespace cyclolab::periods
