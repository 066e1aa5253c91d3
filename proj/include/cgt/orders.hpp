#pragma once
// Exact arbitrary-precision group-order formulas, p-parts, integer
// factorization, primitive-prime-divisor computation, minimal permutation
// degrees, and a registry of arithmetic feasibility claims evaluated as
// exact integer comparisons over finite parameter grids.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace cgt {

using Big = mpz_class;

enum class Family {
  linear,           // GL / SL / PGL / PSL
  unitary,          // GU / SU / PGU / PSU
  symplectic,       // Sp / GSp / PGSp / PSp
  orthogonal_odd,   // GO / SO / Omega (= POmega) in odd dimension
  orthogonal_plus,  // GO+ / SO+ / Omega+ / POmega+
  orthogonal_minus,
  symmetric,
  alternating,
  mathieu11,  // fixed table entry, order 7920
  suzuki,     // fixed table entry, order q^2(q^2+1)(q-1)
};

enum class Variant {
  simple,        // PSL, PSU, PSp, POmega^eps, Omega_odd, Alt, ...
  linear_group,  // full isometry / matrix group: GL, GU, Sp, GO^eps
  projective,    // PGL, PGU, PGSp, PGO^eps
  conformal,     // GL, GU, GSp (similitudes); unsupported for orthogonal
};

struct OrderExpr {
  Family family;
  int n;
  long long q;
  Variant variant;
  Big value;
};

// Exact order by product formula; throws std::invalid_argument for
// unsupported (family, variant, n, q) combinations.
Big group_order(Family family, int n, long long q, Variant variant = Variant::simple);
OrderExpr order_expr(Family family, int n, long long q, Variant variant = Variant::simple);

// Name-based dispatch: "GL","SL","PGL","PSL","GU","SU","PGU","PSU","Sp",
// "PSp","GSp","PGSp","GO","SO","Omega","GO+","SO+","Omega+","POmega+",
// "GO-","SO-","Omega-","POmega-","Sym","Alt","M11","Sz".
Big group_order(const std::string& name, int n, long long q);

Big factorial(int n);

// Largest power of p dividing N (N >= 1). p prime.
Big p_part(const Big& N, long long p);
long long p_part_ll(long long N, long long p);

// Prime factorization with multiplicity, sorted ascending.
// Trial division followed by Pollard rho for large cofactors.
std::vector<Big> factorize(Big n);

bool is_prime_ll(long long n);
// q = r^f with r prime; returns false if q is not a prime power.
bool split_prime_power(long long q, long long& r, int& f);
// All prime powers in [2, limit], ascending.
std::vector<long long> prime_powers_upto(long long limit);

struct PpdResult {
  long long q = 0;
  int n = 0;
  std::vector<Big> ppds;  // primes t | q^n - 1 with mult. order of q mod t == n
  enum class Exception { none, six_two, mersenne } exception = Exception::none;
};

// Primitive prime divisors of q^n - 1 (q a prime power >= 2, n >= 2).
PpdResult zsigmondy(long long q, int n);

struct MinDegree {
  Big value;
  bool exact = true;  // false: certified lower bound only
};
// Minimal faithful permutation degree for the encoded table subset:
// ("PSp", 4, q) exact; ("PSU", 4, q) exact; ("PSU", 6, q) lower bound.
MinDegree min_perm_degree(const std::string& family, int n, long long q);

// ---- audit claim registry -------------------------------------------------

struct AuditRange {
  int n_max = 24;
  long long q_max = 81;
};

struct AuditResult {
  std::vector<long long> params;
  bool satisfied = false;
};

std::vector<std::string> audit_claim_ids();
const std::vector<std::string>& audit_param_names(const std::string& id);

// Evaluates the claim's exact integer inequality / identity over its grid
// (restricted by `range`).  Deterministic output order; the scan itself is
// OpenMP-parallel unless `parallel` is false (serial reference path).
std::vector<AuditResult> audit_claim(const std::string& id, const AuditRange& range = {},
                                     bool parallel = true);

// Only the satisfying tuples, in grid order.
std::vector<std::vector<long long>> audit_satisfying(const std::string& id,
                                                     const AuditRange& range = {});

}  // namespace cgt
