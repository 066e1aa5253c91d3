#include "cgt/orders.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace cgt {

namespace {

Big qpow(long long q, unsigned long e) {
  Big b = (long)q, out;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
  return out;
}

Big big_pow(const Big& b, unsigned long e) {
  Big out;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
  return out;
}

long d2(long long q) { return q % 2 == 1 ? 2 : 1; }

void require_prime_power(long long q) {
  long long r;
  int f;
  if (!split_prime_power(q, r, f)) throw std::invalid_argument("q is not a prime power");
}

Big gl_order(int n, long long q) {
  Big v = qpow(q, (unsigned long)n * (n - 1) / 2);
  for (int i = 1; i <= n; ++i) v *= qpow(q, i) - 1;
  return v;
}

Big gu_order(int n, long long q) {
  Big v = qpow(q, (unsigned long)n * (n - 1) / 2);
  for (int i = 1; i <= n; ++i) v *= qpow(q, i) - (i % 2 == 0 ? 1 : -1);
  return v;
}

Big sp_order(int n, long long q) {
  if (n % 2 != 0 || n < 2) throw std::invalid_argument("Sp needs even n >= 2");
  int m = n / 2;
  Big v = qpow(q, (unsigned long)m * m);
  for (int i = 1; i <= m; ++i) v *= qpow(q, 2 * i) - 1;
  return v;
}

// |SO_n(q)| for odd n (determinant-one isometries; equals the full isometry
// group when q is even).
Big so_odd_order(int n, long long q) {
  if (n % 2 != 1 || n < 3) throw std::invalid_argument("odd orthogonal needs odd n >= 3");
  int m = (n - 1) / 2;
  Big v = qpow(q, (unsigned long)m * m);
  for (int i = 1; i <= m; ++i) v *= qpow(q, 2 * i) - 1;
  return v;
}

Big omega_odd_order(int n, long long q) { return so_odd_order(n, q) / d2(q); }

Big go_even_order(int n, long long q, int eps) {
  if (n % 2 != 0 || n < 2) throw std::invalid_argument("even orthogonal needs even n >= 2");
  int m = n / 2;
  Big v = 2 * qpow(q, (unsigned long)m * (m - 1)) * (qpow(q, m) - eps);
  for (int i = 1; i < m; ++i) v *= qpow(q, 2 * i) - 1;
  return v;
}

Big omega_even_order(int n, long long q, int eps) { return go_even_order(n, q, eps) / (2 * d2(q)); }

Big pomega_even_order(int n, long long q, int eps) {
  int m = n / 2;
  Big z;
  Big t = qpow(q, m) - eps;
  mpz_gcd_ui(z.get_mpz_t(), t.get_mpz_t(), 4);
  z /= d2(q);
  return omega_even_order(n, q, eps) / z;
}

// ---- Pollard rho ----------------------------------------------------------

Big pollard_rho(const Big& n, unsigned long seed) {
  // Brent's cycle finding on f(x) = x^2 + c mod n.
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(seed);
  while (true) {
    Big c = rng.get_z_range(n - 1) + 1;
    Big x = rng.get_z_range(n), y = x, d = 1;
    Big saved_y = y;
    long long limit = 1;
    while (d == 1) {
      x = y;
      for (long long i = 0; i < limit; ++i) y = (y * y + c) % n;
      long long k = 0;
      while (k < limit && d == 1) {
        saved_y = y;
        Big prod = 1;
        long long chunk = std::min((long long)128, limit - k);
        for (long long i = 0; i < chunk; ++i) {
          y = (y * y + c) % n;
          Big diff = x > y ? x - y : y - x;
          if (diff != 0) prod = prod * diff % n;
        }
        mpz_gcd(d.get_mpz_t(), prod.get_mpz_t(), n.get_mpz_t());
        k += chunk;
      }
      limit *= 2;
      if (limit > (1LL << 40)) break;
    }
    if (d == n) {
      // backtrack one by one
      d = 1;
      y = saved_y;
      while (d == 1) {
        y = (y * y + c) % n;
        Big diff = x > y ? x - y : y - x;
        if (diff == 0) break;
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      }
    }
    if (d != 1 && d != n) return d;
    ++seed;
  }
}

void factorize_into(Big n, std::vector<Big>& out) {
  if (n <= 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
    out.push_back(n);
    return;
  }
  Big d = pollard_rho(n, 0xC0FFEE);
  factorize_into(d, out);
  factorize_into(n / d, out);
}

// multiplicative order of q modulo prime t equals n?
bool order_is(long long q, int n, const Big& t, const std::vector<int>& prime_divs_of_n) {
  Big base = (long)q, e = n, r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), t.get_mpz_t());
  if (r != 1) return false;
  for (int p : prime_divs_of_n) {
    e = n / p;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), t.get_mpz_t());
    if (r == 1) return false;
  }
  return true;
}

}  // namespace

bool is_prime_ll(long long n) {
  if (n < 2) return false;
  for (long long p = 2; p * p <= n; ++p)
    if (n % p == 0) return n == p;
  return true;
}

bool split_prime_power(long long q, long long& r, int& f) {
  if (q < 2) return false;
  long long p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (p * p > q) p = q;  // q prime
  long long v = q;
  int e = 0;
  while (v % p == 0) {
    v /= p;
    ++e;
  }
  if (v != 1) return false;
  r = p;
  f = e;
  return true;
}

std::vector<long long> prime_powers_upto(long long limit) {
  std::vector<long long> out;
  for (long long q = 2; q <= limit; ++q) {
    long long r;
    int f;
    if (split_prime_power(q, r, f)) out.push_back(q);
  }
  return out;
}

Big factorial(int n) {
  Big out;
  mpz_fac_ui(out.get_mpz_t(), (unsigned long)n);
  return out;
}

Big p_part(const Big& N, long long p) {
  if (N < 1) throw std::invalid_argument("p_part needs N >= 1");
  Big out = 1, v = N;
  while (mpz_divisible_ui_p(v.get_mpz_t(), (unsigned long)p)) {
    v /= (long)p;
    out *= (long)p;
  }
  return out;
}

long long p_part_ll(long long N, long long p) {
  long long out = 1;
  while (N % p == 0) {
    N /= p;
    out *= p;
  }
  return out;
}

std::vector<Big> factorize(Big n) {
  std::vector<Big> out;
  if (n <= 1) return out;
  for (long p = 2; p < 1000000 && Big(p) * p <= n; p = (p == 2 ? 3 : p + 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), (unsigned long)p)) {
      out.push_back(Big(p));
      n /= p;
    }
  }
  factorize_into(n, out);
  std::sort(out.begin(), out.end());
  return out;
}

Big group_order(Family family, int n, long long q, Variant variant) {
  switch (family) {
    case Family::symmetric:
      return factorial(n);
    case Family::alternating:
      return n < 2 ? Big(1) : factorial(n) / 2;
    case Family::mathieu11:
      return 7920;
    case Family::suzuki: {
      long long r;
      int f;
      if (!split_prime_power(q, r, f) || r != 2 || f % 2 == 0 || f < 3)
        throw std::invalid_argument("Suzuki table entry needs q = 2^f, f odd >= 3");
      return qpow(q, 2) * (qpow(q, 2) + 1) * (long)(q - 1);
    }
    default:
      break;
  }
  require_prime_power(q);
  switch (family) {
    case Family::linear:
      switch (variant) {
        case Variant::linear_group:
        case Variant::conformal:
          return gl_order(n, q);
        case Variant::projective:
          return gl_order(n, q) / (long)(q - 1);
        case Variant::simple: {
          Big v = gl_order(n, q) / (long)(q - 1);
          return v / (long)std::gcd((long long)n, q - 1);
        }
      }
      break;
    case Family::unitary:
      switch (variant) {
        case Variant::linear_group:
        case Variant::conformal:
          return gu_order(n, q);
        case Variant::projective:
          return gu_order(n, q) / (long)(q + 1);
        case Variant::simple: {
          Big v = gu_order(n, q) / (long)(q + 1);
          return v / (long)std::gcd((long long)n, q + 1);
        }
      }
      break;
    case Family::symplectic:
      switch (variant) {
        case Variant::linear_group:
          return sp_order(n, q);
        case Variant::conformal:
          return sp_order(n, q) * (long)(q - 1);
        case Variant::projective:
          return sp_order(n, q);  // GSp / scalars
        case Variant::simple:
          return sp_order(n, q) / d2(q);
      }
      break;
    case Family::orthogonal_odd:
      switch (variant) {
        case Variant::linear_group:
          return q % 2 == 1 ? 2 * so_odd_order(n, q) : so_odd_order(n, q);
        case Variant::projective:
          return so_odd_order(n, q);  // GO / {+-1}
        case Variant::simple:
          return omega_odd_order(n, q);
        case Variant::conformal:
          throw std::invalid_argument("conformal orthogonal orders are not supported");
      }
      break;
    case Family::orthogonal_plus:
    case Family::orthogonal_minus: {
      int eps = family == Family::orthogonal_plus ? 1 : -1;
      switch (variant) {
        case Variant::linear_group:
          return go_even_order(n, q, eps);
        case Variant::projective:
          return go_even_order(n, q, eps) / d2(q);
        case Variant::simple:
          return pomega_even_order(n, q, eps);
        case Variant::conformal:
          throw std::invalid_argument("conformal orthogonal orders are not supported");
      }
      break;
    }
    default:
      break;
  }
  throw std::invalid_argument("unsupported family/variant");
}

OrderExpr order_expr(Family family, int n, long long q, Variant variant) {
  return OrderExpr{family, n, q, variant, group_order(family, n, q, variant)};
}

Big group_order(const std::string& name, int n, long long q) {
  if (name == "GL") return group_order(Family::linear, n, q, Variant::linear_group);
  if (name == "SL") return gl_order(n, q) / (long)(q - 1);
  if (name == "PGL") return group_order(Family::linear, n, q, Variant::projective);
  if (name == "PSL") return group_order(Family::linear, n, q, Variant::simple);
  if (name == "GU") return group_order(Family::unitary, n, q, Variant::linear_group);
  if (name == "SU") return gu_order(n, q) / (long)(q + 1);
  if (name == "PGU") return group_order(Family::unitary, n, q, Variant::projective);
  if (name == "PSU") return group_order(Family::unitary, n, q, Variant::simple);
  if (name == "Sp") return group_order(Family::symplectic, n, q, Variant::linear_group);
  if (name == "GSp") return group_order(Family::symplectic, n, q, Variant::conformal);
  if (name == "PGSp") return group_order(Family::symplectic, n, q, Variant::projective);
  if (name == "PSp") return group_order(Family::symplectic, n, q, Variant::simple);
  if (name == "GO") return group_order(Family::orthogonal_odd, n, q, Variant::linear_group);
  if (name == "SO") {
    require_prime_power(q);
    return so_odd_order(n, q);
  }
  if (name == "Omega" || name == "POmega")
    return group_order(Family::orthogonal_odd, n, q, Variant::simple);
  if (name == "GO+") return group_order(Family::orthogonal_plus, n, q, Variant::linear_group);
  if (name == "GO-") return group_order(Family::orthogonal_minus, n, q, Variant::linear_group);
  if (name == "SO+") {
    require_prime_power(q);
    return q % 2 == 1 ? go_even_order(n, q, 1) / 2 : go_even_order(n, q, 1);
  }
  if (name == "SO-") {
    require_prime_power(q);
    return q % 2 == 1 ? go_even_order(n, q, -1) / 2 : go_even_order(n, q, -1);
  }
  if (name == "Omega+") {
    require_prime_power(q);
    return omega_even_order(n, q, 1);
  }
  if (name == "Omega-") {
    require_prime_power(q);
    return omega_even_order(n, q, -1);
  }
  if (name == "POmega+") return group_order(Family::orthogonal_plus, n, q, Variant::simple);
  if (name == "POmega-") return group_order(Family::orthogonal_minus, n, q, Variant::simple);
  if (name == "Sym") return factorial(n);
  if (name == "Alt") return group_order(Family::alternating, n, q);
  if (name == "M11") return 7920;
  if (name == "Sz") return group_order(Family::suzuki, 4, q);
  throw std::invalid_argument("unknown group name: " + name);
}

PpdResult zsigmondy(long long q, int n) {
  require_prime_power(q);
  if (n < 2) throw std::invalid_argument("zsigmondy needs n >= 2");
  PpdResult res;
  res.q = q;
  res.n = n;
  Big M = qpow(q, (unsigned long)n) - 1;
  std::vector<Big> primes = factorize(M);
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::vector<int> pdn;
  for (int p = 2, v = n; v > 1; ++p)
    if (v % p == 0) {
      pdn.push_back(p);
      while (v % p == 0) v /= p;
    }
  for (const Big& t : primes) {
    // n | t - 1 is necessary for order n
    Big tm = t - 1;
    if (!mpz_divisible_ui_p(tm.get_mpz_t(), (unsigned long)n)) continue;
    if (order_is(q, n, t, pdn)) res.ppds.push_back(t);
  }
  if (res.ppds.empty()) {
    if (q == 2 && n == 6)
      res.exception = PpdResult::Exception::six_two;
    else if (n == 2 && is_prime_ll(q) && ((q + 1) & q) == 0)
      res.exception = PpdResult::Exception::mersenne;
  }
  return res;
}

MinDegree min_perm_degree(const std::string& family, int n, long long q) {
  require_prime_power(q);
  if (family == "PSp" && n == 4) {
    if (q == 2) return {Big(6), true};
    if (q == 3) return {Big(27), true};
    return {Big((qpow(q, 4) - 1) / (long)(q - 1)), true};
  }
  if (family == "PSU" && n == 4) return {Big(Big((long)(q + 1)) * (qpow(q, 3) + 1)), true};
  if (family == "PSU" && n == 6) return {qpow(q, 5) * (qpow(q, 4) + qpow(q, 2) + 1), false};
  throw std::invalid_argument("min_perm_degree: outside the encoded table subset");
}

// ---- audit claims -----------------------------------------------------------

namespace {

std::vector<int> prime_divisors_int(int n) {
  std::vector<int> out;
  for (int p = 2; p <= n; ++p)
    if (n % p == 0 && is_prime_ll(p)) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  return out;
}

// Combined exponent [n(n/l - 1) + (n-1)(n-2) - (n-l)(n/l - 2)] / 2 used by the
// two field-extension-subgroup inequalities; each summand is even whenever
// l | n.
long long half_exponent(long long n, long long l) {
  long long s = n * (n / l - 1) + (n - 1) * (n - 2) - (n - l) * (n / l - 2);
  return s / 2;
}

struct Claim {
  std::vector<std::string> names;
  std::vector<std::vector<long long>> (*grid)(const AuditRange&);
  bool (*pred)(const std::vector<long long>&);
};

bool pred_psl_kappa_gt1(const std::vector<long long>& t) {
  long long n = t[0], q = t[1], l = t[2], k = t[3], r;
  int f;
  split_prime_power(q, r, f);
  Big lhs = qpow(q, (unsigned long)(n * (n - 1) / 2));
  long long e1 = n * (n / l - 1) / 2;
  long long e2 = (n - 1) * ((n - 1) / k - 1) / 2;
  Big rhs = Big((long)(p_part_ll(2 * f, r) * l * k)) * qpow(q, (unsigned long)(e1 + e2));
  return lhs < rhs;
}

std::vector<std::vector<long long>> grid_psl_kappa_gt1(const AuditRange& rg) {
  std::vector<std::vector<long long>> g;
  for (long long q : prime_powers_upto(rg.q_max))
    for (int n = 3; n <= rg.n_max; ++n)
      for (int l : prime_divisors_int(n))
        for (int k : prime_divisors_int(n - 1)) g.push_back({n, q, l, k});
  return g;
}

bool pred_psl_kappa_eq1(const std::vector<long long>& t) {
  long long n = t[0], q = t[1], l = t[2], r;
  int f;
  split_prime_power(q, r, f);
  Big lhs = qpow(q, (unsigned long)(n * (n - 1) / 2));
  Big rhs = Big((long)(p_part_ll(2 * f, r) * p_part_ll(l, r))) *
            qpow(q, (unsigned long)half_exponent(n, l));
  return lhs < rhs;
}

std::vector<std::vector<long long>> grid_psl_l(const AuditRange& rg) {
  std::vector<std::vector<long long>> g;
  for (long long q : prime_powers_upto(rg.q_max))
    for (int n = 3; n <= rg.n_max; ++n)
      for (int l : prime_divisors_int(n)) g.push_back({n, q, l});
  return g;
}

bool pred_psl_sp_never(const std::vector<long long>& t) {
  long long n = t[0], q = t[1], l = t[2], r;
  int f;
  split_prime_power(q, r, f);
  Big lhs = qpow(q, (unsigned long)(n * n + 6 * n - 3));
  Big rhs = big_pow(Big((long)p_part_ll(2 * l * f, r)), 12);
  return lhs <= rhs;
}

std::vector<std::vector<long long>> grid_psl_sp(const AuditRange& rg) {
  std::vector<std::vector<long long>> g;
  for (long long q : prime_powers_upto(rg.q_max))
    for (int n = 3; n <= rg.n_max; n += 2)
      for (int l : prime_divisors_int(n)) g.push_back({n, q, l});
  return g;
}

bool pred_psu_ell(const std::vector<long long>& t) {
  long long n = t[0], q = t[1], l = t[2], r;
  int f;
  split_prime_power(q, r, f);
  Big lhs = qpow(q, (unsigned long)(n * (n - 1) / 2));
  Big rhs = Big((long)p_part_ll(2 * f * l, r)) * qpow(q, (unsigned long)half_exponent(n, l));
  return lhs <= rhs;
}

std::vector<std::vector<long long>> grid_psu_ell(const AuditRange& rg) {
  std::vector<std::vector<long long>> g;
  for (long long q : prime_powers_upto(rg.q_max))
    for (int n = 4; n <= rg.n_max; n += 2)
      for (int l : prime_divisors_int(n))
        if (l % 2 == 0) g.push_back({n, q, l});
  return g;
}

bool pred_psp_borel(const std::vector<long long>& t) {
  long long q = t[0], r;
  int f;
  split_prime_power(q, r, f);
  Big m = min_perm_degree("PSp", 4, q).value;
  Big rhs = Big(4 * (long)f) * (qpow(q, 2) + 1);
  return m <= rhs;
}

std::vector<std::vector<long long>> grid_q(const AuditRange& rg) {
  std::vector<std::vector<long long>> g;
  for (long long q : prime_powers_upto(rg.q_max)) g.push_back({q});
  return g;
}

bool pred_po_indices(const std::vector<long long>& t) {
  long long q = t[0];
  Big o7 = group_order(Family::orthogonal_odd, 7, q, Variant::simple);
  Big o6m = group_order("Omega-", 6, q);
  Big o6p = group_order("Omega+", 6, q);
  Big o5 = group_order(Family::orthogonal_odd, 5, q, Variant::simple);
  Big i1 = qpow(q, 3) * (qpow(q, 3) - 1) / 2;
  Big i2 = qpow(q, 3) * (qpow(q, 3) + 1) / 2;
  Big i3 = qpow(q, 5) * (qpow(q, 6) - 1) / (long)(2 * (q - 1));
  Big i4 = qpow(q, 5) * (qpow(q, 6) - 1) / (long)(2 * (q + 1));
  Big i5 = (qpow(q, 6) - 1) / (long)(q - 1);
  if (o7 != 2 * o6m * i1) return false;
  if (o7 != 2 * o6p * i2) return false;
  if (o7 != (long)(2 * (q - 1)) * o5 * i3) return false;
  if (o7 != (long)(2 * (q + 1)) * o5 * i4) return false;
  return mpz_divisible_p(o7.get_mpz_t(), i5.get_mpz_t());
}

std::vector<std::vector<long long>> grid_q_odd(const AuditRange& rg) {
  std::vector<std::vector<long long>> g;
  for (long long q : prime_powers_upto(rg.q_max))
    if (q % 2 == 1) g.push_back({q});
  return g;
}

const std::map<std::string, Claim>& registry() {
  static const std::map<std::string, Claim> reg = {
      {"psl-kappa-gt1", {{"n", "q", "ell", "kappa"}, grid_psl_kappa_gt1, pred_psl_kappa_gt1}},
      {"psl-kappa-eq1", {{"n", "q", "ell"}, grid_psl_l, pred_psl_kappa_eq1}},
      {"psl-sp-never", {{"n", "q", "ell"}, grid_psl_sp, pred_psl_sp_never}},
      {"psu-ell", {{"n", "q", "ell"}, grid_psu_ell, pred_psu_ell}},
      {"psp-borel", {{"q"}, grid_q, pred_psp_borel}},
      {"po-indices", {{"q"}, grid_q_odd, pred_po_indices}},
  };
  return reg;
}

}  // namespace

std::vector<std::string> audit_claim_ids() {
  std::vector<std::string> out;
  for (auto& [id, c] : registry()) out.push_back(id);
  return out;
}

const std::vector<std::string>& audit_param_names(const std::string& id) {
  auto it = registry().find(id);
  if (it == registry().end()) throw std::invalid_argument("unknown claim id: " + id);
  return it->second.names;
}

std::vector<AuditResult> audit_claim(const std::string& id, const AuditRange& range,
                                     bool parallel) {
  auto it = registry().find(id);
  if (it == registry().end()) throw std::invalid_argument("unknown claim id: " + id);
  auto grid = it->second.grid(range);
  std::vector<AuditResult> out(grid.size());
  auto pred = it->second.pred;
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (size_t i = 0; i < grid.size(); ++i) out[i] = {grid[i], pred(grid[i])};
  } else {
    for (size_t i = 0; i < grid.size(); ++i) out[i] = {grid[i], pred(grid[i])};
  }
  return out;
}

std::vector<std::vector<long long>> audit_satisfying(const std::string& id,
                                                     const AuditRange& range) {
  std::vector<std::vector<long long>> out;
  for (auto& r : audit_claim(id, range)) {
    if (r.satisfied) out.push_back(r.params);
  }
  return out;
}

}  // namespace cgt
