#pragma once

// Exact dimension and codimension formulas for the unitary-group moduli of
// abelian varieties with cyclotomic multiplication, CM-type enumeration, and
// the dimension-gap report that decides when dense special intersections are
// "unlikely". Everything here is exact integer arithmetic; no floats.

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace cyclolab::shimura {

// 0/1 vector over the units of Z/n recording which embedding carries the
// holomorphic direction. Constraints: values at 1 is 1; conjugate residues
// i, n-i carry complementary values. For n = 2 the single residue is
// self-conjugate and the pair constraint degenerates; the unique type is
// {1 -> 1}.
struct CMType {
    int n = 0;
    std::map<int, int> values;  // residue in [1, n-1], coprime to n -> 0/1

    int at(int i) const { return values.at(i); }
};

// Dimension of the ambient unitary-group moduli: the sum of h10*h01 over
// conjugate pairs of embeddings (equivalently half the full unit sum for
// n > 2, where the halved sum is asserted even before dividing).
mpz_class dim_sh(int n);

// All CM types satisfying both constraints, lexicographic in the free bits.
// Count: 2^(phi(n)/2 - 1) for n > 2, and exactly one for n = 2.
std::vector<CMType> enumerate_cm_types(int n);

struct SubvarietyDims {
    mpz_class dim;
    mpz_class codim;
};

// dim  = sum over i coprime, pair representatives, of (2i-1-n_A(i))(2(n-i)-2+n_A(i))
// codim = sum of n_A(i)(2(n-i)-1) + (1-n_A(i))(2i-1)
// Asserts dim + codim = dim_sh(n).
SubvarietyDims dims_sh_A(int n, const CMType& t);

struct GapReport {
    int n = 0;
    mpz_class dim_moduli;           // 2n-3
    mpz_class dim_sh;
    std::vector<CMType> cm_types;
    std::vector<SubvarietyDims> dims;  // parallel to cm_types
    mpz_class min_codim;
    bool unlikely = false;       // min_codim > 2n-3
    bool equality_case = false;  // min_codim == 2n-3, i.e. phi(n) <= 2
};

GapReport gap_report(int n);

// The moduli-dimension bookkeeping identity
// (2n) - 3 = (2n-3)(2n) - ((2n-2)^2 - 1), evaluated exactly on both sides.
bool consistency_identity(int n);

// {2n-3 : 2 <= n <= n_max, phi(n) > 2} -- the odd dimensions in which the
// gap argument applies. Equals all odd numbers in range except 1, 3, 5, 9.
std::vector<long> counterexample_dimensions(int n_max);

long euler_phi(int n);

std::string gap_report_table_row(const GapReport& r);

}  // namespace cyclolab::shimura
