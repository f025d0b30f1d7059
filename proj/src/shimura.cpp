#include "cyclolab/shimura.hpp"

#include <numeric>
#include <sstream>

#include "cyclolab/errors.hpp"

namespace cyclolab::shimura {

long euler_phi(int n) {
    long count = 0;
    for (int r = 1; r < n; ++r)
        if (std::gcd(r, n) == 1) ++count;
    return std::max(count, 1L);
}

namespace {

// Representatives of the conjugate pairs {i, n-i} among units, each pair once.
// For n = 2 this is the single self-paired residue 1.
std::vector<int> pair_representatives(int n) {
    std::vector<int> reps;
    for (int i = 1; i < n; ++i)
        if (std::gcd(i, n) == 1 && i <= n - i) reps.push_back(i);
    if (n == 2) reps = {1};
    return reps;
}

}  // namespace

mpz_class dim_sh(int n) {
    if (n < 2) throw DomainError("dim_sh: n must be >= 2");
    if (n > 2) {
        // The unit-sum form, asserted even before halving.
        mpz_class total = 0;
        for (int r = 1; r < n; ++r)
            if (std::gcd(r, n) == 1) total += mpz_class(2 * r - 1) * mpz_class(2 * n - 1 - 2 * r);
        if (total % 2 != 0) throw DomainError("dim_sh: unit sum is odd");
        mpz_class halved = total / 2;
        // Cross-check against the conjugate-pair form.
        mpz_class paired = 0;
        for (int r : pair_representatives(n))
            paired += mpz_class(2 * r - 1) * mpz_class(2 * n - 1 - 2 * r);
        if (halved != paired) throw DomainError("dim_sh: pair/unit sum mismatch");
        return halved;
    }
    // n = 2: the residue 1 is self-paired; the pair form counts it once.
    return mpz_class(1);
}

std::vector<CMType> enumerate_cm_types(int n) {
    if (n < 2) throw DomainError("enumerate_cm_types: n must be >= 2");
    std::vector<int> units;
    for (int r = 1; r < n; ++r)
        if (std::gcd(r, n) == 1) units.push_back(r);

    if (n == 2) {
        CMType t;
        t.n = 2;
        t.values[1] = 1;
        return {t};
    }

    // Free bits: one per conjugate pair not containing 1.
    std::vector<int> free_reps;
    for (int i : pair_representatives(n))
        if (i != 1 && i != n - 1) free_reps.push_back(i);

    std::vector<CMType> out;
    size_t count = size_t{1} << free_reps.size();
    for (size_t mask = 0; mask < count; ++mask) {
        CMType t;
        t.n = n;
        t.values[1] = 1;
        t.values[n - 1] = 0;
        for (size_t k = 0; k < free_reps.size(); ++k) {
            int bit = (mask >> (free_reps.size() - 1 - k)) & 1;
            t.values[free_reps[k]] = bit;
            t.values[n - free_reps[k]] = 1 - bit;
        }
        out.push_back(std::move(t));
    }
    return out;
}

SubvarietyDims dims_sh_A(int n, const CMType& t) {
    if (t.n != n) throw DomainError("dims_sh_A: CM type built for a different n");
    if (!t.values.count(1) || t.values.at(1) != 1)
        throw DomainError("dims_sh_A: CM type must have n_A(1) = 1");
    for (const auto& [i, v] : t.values) {
        if (std::gcd(i, n) != 1 || i < 1 || i > n - 1 || (v != 0 && v != 1))
            throw DomainError("dims_sh_A: malformed CM type");
        if (n > 2 && t.values.at(n - i) + v != 1)
            throw DomainError("dims_sh_A: conjugate-pair constraint violated");
    }

    SubvarietyDims d{0, 0};
    for (int i : pair_representatives(n)) {
        long na = t.at(i);
        d.dim += mpz_class(2 * i - 1 - na) * mpz_class(2 * (n - i) - 2 + na);
        d.codim += mpz_class(na) * mpz_class(2 * (n - i) - 1) +
                   mpz_class(1 - na) * mpz_class(2 * i - 1);
    }
    if (d.dim + d.codim != dim_sh(n))
        throw DomainError("dims_sh_A: dim + codim does not equal dim_sh");
    return d;
}

GapReport gap_report(int n) {
    if (n < 2) throw DomainError("gap_report: n must be >= 2");
    GapReport r;
    r.n = n;
    r.dim_moduli = 2 * n - 3;
    r.dim_sh = dim_sh(n);
    r.cm_types = enumerate_cm_types(n);
    bool first = true;
    for (const auto& t : r.cm_types) {
        SubvarietyDims d = dims_sh_A(n, t);
        if (first || d.codim < r.min_codim) r.min_codim = d.codim;
        first = false;
        r.dims.push_back(std::move(d));
    }
    r.unlikely = r.min_codim > r.dim_moduli;
    r.equality_case = r.min_codim == r.dim_moduli;
    bool phi_small = euler_phi(n) <= 2;
    if (r.unlikely == phi_small)
        throw DomainError("gap_report: unlikely flag disagrees with phi(n) > 2");
    return r;
}

bool consistency_identity(int n) {
    if (n < 2) throw DomainError("consistency_identity: n must be >= 2");
    mpz_class lhs = mpz_class(2 * n) - 3;
    mpz_class rhs = mpz_class(2 * n - 3) * mpz_class(2 * n) -
                    (mpz_class(2 * n - 2) * mpz_class(2 * n - 2) - 1);
    return lhs == rhs;
}

std::vector<long> counterexample_dimensions(int n_max) {
    if (n_max < 2) throw DomainError("counterexample_dimensions: n_max must be >= 2");
    std::vector<long> dims;
    for (int n = 2; n <= n_max; ++n)
        if (euler_phi(n) > 2) dims.push_back(2L * n - 3);
    return dims;
}

std::string gap_report_table_row(const GapReport& r) {
    std::ostringstream os;
    os << "n=" << r.n << " dim_M=" << r.dim_moduli.get_str() << " dim_Sh=" << r.dim_sh.get_str()
       << " cm_types=" << r.cm_types.size() << " min_codim=" << r.min_codim.get_str()
       << " unlikely=" << (r.unlikely ? "yes" : "no")
       << " equality=" << (r.equality_case ? "yes" : "no");
    return os.str();
}

}  // namespace cyclolab::shimura
