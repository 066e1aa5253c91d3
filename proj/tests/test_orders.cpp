#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "cgt/ff.hpp"
#include "cgt/linalg.hpp"
#include "cgt/orders.hpp"

using cgt::AuditRange;
using cgt::Big;
using cgt::Family;
using cgt::group_order;
using cgt::p_part;
using cgt::Variant;

namespace {

// Independent Miller-Rabin with fixed witness bases (deterministic for
// 64-bit inputs, overwhelming confidence beyond) -- used to audit the
// library's factorization output without relying on its primality path.
bool mr_prime(const Big& n) {
  if (n < 2) return false;
  for (long small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
    if (n % small == 0) return n == small;
  Big d = n - 1;
  unsigned long s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (long a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    Big x, base = a;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned long i = 1; i < s; ++i) {
      x = x * x % n;
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Big qpow(long long q, unsigned long e) {
  Big b = (long)q, out;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
  return out;
}

// Brute-force count of 2x2 matrices over F preserving the given form.
long count_isometries_2x2(const cgt::ClassicalForm& form) {
  const cgt::Fq& F = *form.F;
  long count = 0;
  for (int a = 0; a < F.q(); ++a)
    for (int b = 0; b < F.q(); ++b)
      for (int c = 0; c < F.q(); ++c)
        for (int d = 0; d < F.q(); ++d) {
          cgt::Mat m = cgt::Mat::from_rows(F, {{a, b}, {c, d}});
          if (cgt::mat_rank(m) == 2 && cgt::is_isometry(form, m)) ++count;
        }
  return count;
}

}  // namespace

TEST_CASE("classical order formulas: small anchors") {
  CHECK(group_order("PSL", 2, 7) == 168);
  CHECK(group_order("PSL", 3, 2) == 168);
  CHECK(group_order("PSL", 2, 4) == 60);
  CHECK(group_order("PSL", 2, 5) == 60);
  CHECK(group_order("Alt", 5, 1) == 60);
  CHECK(group_order("Sp", 4, 2) == group_order("Sym", 6, 1));  // Sp4(2) = Sym(6)
  CHECK(group_order("M11", 11, 1) == 7920);
  CHECK(group_order("Sz", 4, 8) == 29120);
  CHECK(group_order("PSU", 3, 2) == 72);
  CHECK(group_order("Omega", 3, 3) == 12);       // isomorphic to Alt(4)
  CHECK(group_order("POmega+", 6, 2) == 20160);  // isomorphic to Alt(8)
  CHECK(group_order("Alt", 8, 1) == 20160);
  CHECK(group_order("PSL", 4, 2) == 20160);
}

TEST_CASE("brute-force isometry counts match formulas (rank-2 groups)") {
  // |GL_2(q)| by enumeration over tiny fields
  for (long long q : {2, 3, 4, 5}) {
    const cgt::Fq& F = q == 4 ? cgt::field(2, 2) : cgt::field((int)q, 1);
    long invertible = 0;
    for (int a = 0; a < F.q(); ++a)
      for (int b = 0; b < F.q(); ++b)
        for (int c = 0; c < F.q(); ++c)
          for (int d = 0; d < F.q(); ++d)
            if (cgt::mat_rank(cgt::Mat::from_rows(F, {{a, b}, {c, d}})) == 2) ++invertible;
    CHECK(Big(invertible) == group_order("GL", 2, q));
  }
  // |Sp_2(3)| = 24 by enumeration
  auto symp = cgt::standard_form(cgt::FormKind::symplectic, cgt::field(3, 1), 2);
  CHECK(count_isometries_2x2(symp) == 24);
  CHECK(group_order("Sp", 2, 3) == 24);
  // |GU_2(2)| = 18 by enumeration over GF(4)
  auto herm = cgt::standard_form(cgt::FormKind::hermitian, cgt::field(2, 2), 2);
  CHECK(count_isometries_2x2(herm) == 18);
  CHECK(group_order("GU", 2, 2) == 18);
}

TEST_CASE("derived indices: odd-dim minus-point stabilizer and minus-plane count") {
  // |Omega_9(3)| / |Omega_8^-(3).2| = 3^4 (3^4 - 1)/2 = 3240
  Big idx = group_order("Omega", 9, 3) / (2 * group_order("Omega-", 8, 3));
  CHECK(idx == 3240);
  CHECK(idx == qpow(3, 4) * (qpow(3, 4) - 1) / 2);
  // number of non-degenerate minus-type 2-subspaces of the O_8^+(4) space
  Big stab = group_order("GO-", 2, 4) * group_order("GO-", 6, 4) / 2;
  CHECK(group_order("Omega+", 8, 4) / stab == 6580224);
}

TEST_CASE("projective x center = full group; simple divides projective") {
  for (long long q : cgt::prime_powers_upto(9)) {
    for (int n = 2; n <= 8; ++n) {
      long d = q % 2 == 1 ? 2 : 1;
      CHECK(group_order(Family::linear, n, q, Variant::projective) * (long)(q - 1) ==
            group_order(Family::linear, n, q, Variant::linear_group));
      CHECK(group_order(Family::unitary, n, q, Variant::projective) * (long)(q + 1) ==
            group_order(Family::unitary, n, q, Variant::linear_group));
      if (n % 2 == 0) {
        CHECK(group_order(Family::symplectic, n, q, Variant::projective) * (long)(q - 1) ==
              group_order(Family::symplectic, n, q, Variant::conformal));
        CHECK(group_order(Family::orthogonal_plus, n, q, Variant::projective) * d ==
              group_order(Family::orthogonal_plus, n, q, Variant::linear_group));
        CHECK(group_order(Family::orthogonal_minus, n, q, Variant::projective) * d ==
              group_order(Family::orthogonal_minus, n, q, Variant::linear_group));
      } else if (n >= 3) {
        CHECK(group_order(Family::orthogonal_odd, n, q, Variant::projective) * d ==
              group_order(Family::orthogonal_odd, n, q, Variant::linear_group));
      }
      // the simple order divides every other variant
      for (Family fam : {Family::linear, Family::unitary}) {
        Big s = group_order(fam, n, q, Variant::simple);
        for (Variant v : {Variant::linear_group, Variant::projective, Variant::conformal}) {
          Big g = group_order(fam, n, q, v);
          CHECK(g % s == 0);
        }
      }
    }
  }
}

TEST_CASE("p_part") {
  CHECK(p_part(48, 2) == 16);
  CHECK(p_part(168, 2) == 8);
  CHECK(p_part(group_order("PSL", 4, 3), 3) == 729);  // 3^6
  // multiplicativity
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    Big a = (long)(rng() % 1000000 + 1), b = (long)(rng() % 1000000 + 1);
    for (long long p : {2, 3, 5, 7}) CHECK(p_part(a * b, p) == p_part(a, p) * p_part(b, p));
  }
  CHECK_THROWS(p_part(0, 2));
}

TEST_CASE("factorize: product restores input, every factor is prime") {
  std::vector<Big> inputs{Big(600851475143L), Big(2047), Big("4611686018427387904"),
                          Big(qpow(2, 64) - 1), Big(qpow(3, 20) - 1),
                          Big(Big(7919) * 7927 * 104729)};
  for (const Big& n : inputs) {
    auto fs = cgt::factorize(n);
    Big prod = 1;
    for (auto& f : fs) {
      CHECK(mr_prime(f));
      prod *= f;
    }
    CHECK(prod == n);
    CHECK(std::is_sorted(fs.begin(), fs.end()));
  }
  CHECK(cgt::factorize(2047) == std::vector<Big>{23, 89});
}

TEST_CASE("zsigmondy: quoted examples") {
  auto r1 = cgt::zsigmondy(2, 6);
  CHECK(r1.ppds.empty());
  CHECK(r1.exception == cgt::PpdResult::Exception::six_two);
  auto r2 = cgt::zsigmondy(7, 2);
  CHECK(r2.ppds.empty());
  CHECK(r2.exception == cgt::PpdResult::Exception::mersenne);
  auto r3 = cgt::zsigmondy(2, 11);
  CHECK(r3.ppds == std::vector<Big>{23, 89});
  CHECK(r3.exception == cgt::PpdResult::Exception::none);
  CHECK(cgt::zsigmondy(2, 4).ppds == std::vector<Big>{5});
  CHECK(cgt::zsigmondy(4, 3).ppds == std::vector<Big>{7});
  CHECK(cgt::zsigmondy(2, 12).ppds == std::vector<Big>{13});
  auto r4 = cgt::zsigmondy(3, 2);
  CHECK(r4.ppds.empty());
  CHECK(r4.exception == cgt::PpdResult::Exception::mersenne);
}

TEST_CASE("zsigmondy vs brute-force cofactor sieve, q <= 128, n <= 12") {
  for (long long q : cgt::prime_powers_upto(128)) {
    for (int n = 2; n <= 12; ++n) {
      auto res = cgt::zsigmondy(q, n);
      // Oracle: strip from q^n - 1 every prime shared with q^d - 1, d | n
      // proper; what survives is exactly the ppd part.
      Big c = qpow(q, n) - 1;
      for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        Big qd = qpow(q, d) - 1, g;
        while (true) {
          mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), qd.get_mpz_t());
          if (g == 1) break;
          c /= g;
        }
      }
      for (const Big& t : res.ppds) {
        CHECK(mr_prime(t));
        CHECK((t - 1) % n == 0);  // n | t - 1
        CHECK((qpow(q, n) - 1) % t == 0);
        for (int i = 1; i < n; ++i) CHECK((qpow(q, i) - 1) % t != 0);
        while (c % t == 0) c /= t;  // strip claimed ppds from the cofactor
      }
      CHECK(c == 1);  // completeness: nothing survives but claimed ppds
      bool empty = res.ppds.empty();
      bool expect_six_two = (q == 2 && n == 6);
      bool expect_mersenne = (n == 2 && (q == 3 || q == 7 || q == 31 || q == 127));
      CHECK(empty == (expect_six_two || expect_mersenne));
      CHECK((res.exception == cgt::PpdResult::Exception::six_two) == expect_six_two);
      CHECK((res.exception == cgt::PpdResult::Exception::mersenne) == expect_mersenne);
    }
  }
}

TEST_CASE("min_perm_degree table subset") {
  CHECK(cgt::min_perm_degree("PSp", 4, 5).value == 156);
  CHECK(cgt::min_perm_degree("PSp", 4, 5).exact);
  CHECK(cgt::min_perm_degree("PSp", 4, 2).value == 6);
  CHECK(cgt::min_perm_degree("PSp", 4, 3).value == 27);
  CHECK(cgt::min_perm_degree("PSp", 4, 4).value == 85);
  CHECK(cgt::min_perm_degree("PSU", 4, 3).value == 112);
  CHECK(cgt::min_perm_degree("PSU", 4, 3).exact);
  auto lb = cgt::min_perm_degree("PSU", 6, 2);
  CHECK(lb.value == 672);
  CHECK(!lb.exact);
  CHECK_THROWS(cgt::min_perm_degree("PSL", 4, 3));
  CHECK_THROWS(cgt::min_perm_degree("PSp", 6, 3));
}

TEST_CASE("audit claim: linear-group torus/parabolic bound, kappa > 1") {
  auto sat = cgt::audit_satisfying("psl-kappa-gt1");
  REQUIRE(sat.size() == 1);
  CHECK(sat[0] == std::vector<long long>{3, 2, 3, 2});
}

TEST_CASE("audit claim: linear-group torus/parabolic bound, kappa = 1") {
  auto sat = cgt::audit_satisfying("psl-kappa-eq1");
  std::vector<std::vector<long long>> expect;
  for (long long n = 4; n <= 24; n += 2)
    for (long long q : {2, 4}) expect.push_back({n, q, 2});
  std::sort(sat.begin(), sat.end());
  std::sort(expect.begin(), expect.end());
  CHECK(sat == expect);
}

TEST_CASE("audit claim: odd-dimension symplectic-type subgroup never factorizes") {
  CHECK(cgt::audit_satisfying("psl-sp-never").empty());
}

TEST_CASE("audit claim: unitary even-degree field-extension bound") {
  auto sat = cgt::audit_satisfying("psu-ell");
  std::set<long long> qs;
  for (auto& t : sat) {
    CHECK(t[2] == 2);  // ell = 2 only
    qs.insert(t[1]);
  }
  CHECK(qs == std::set<long long>{2, 4, 16});
  // every even n participates for each satisfying q
  std::set<std::pair<long long, long long>> nq;
  for (auto& t : sat) nq.insert({t[0], t[1]});
  CHECK(nq.size() == 11 * 3);  // n in {4,6,...,24} x q in {2,4,16}
}

TEST_CASE("audit claim: rank-2 symplectic torus vs minimal degree") {
  auto sat = cgt::audit_satisfying("psp-borel");
  std::vector<std::vector<long long>> expect{{2}, {3}, {4}, {8}};
  CHECK(sat == expect);
}

TEST_CASE("audit claim: 7-dimensional orthogonal index identities") {
  auto sat = cgt::audit_satisfying("po-indices");
  std::vector<std::vector<long long>> expect;
  for (long long q : cgt::prime_powers_upto(81))
    if (q % 2 == 1) expect.push_back({q});
  CHECK(sat == expect);
}

TEST_CASE("audit scans: parallel and serial paths agree; registry is sane") {
  for (const auto& id : cgt::audit_claim_ids()) {
    AuditRange small{12, 27};
    auto par = cgt::audit_claim(id, small, true);
    auto ser = cgt::audit_claim(id, small, false);
    REQUIRE(par.size() == ser.size());
    for (size_t i = 0; i < par.size(); ++i) {
      CHECK(par[i].params == ser[i].params);
      CHECK(par[i].satisfied == ser[i].satisfied);
      CHECK(par[i].params.size() == cgt::audit_param_names(id).size());
    }
  }
  CHECK_THROWS(cgt::audit_claim("no-such-claim"));
  CHECK_THROWS(cgt::audit_param_names("no-such-claim"));
}

TEST_CASE("prime power utilities") {
  CHECK(cgt::prime_powers_upto(16) ==
        std::vector<long long>{2, 3, 4, 5, 7, 8, 9, 11, 13, 16});
  long long r;
  int f;
  CHECK(cgt::split_prime_power(81, r, f));
  CHECK(r == 3);
  CHECK(f == 4);
  CHECK(!cgt::split_prime_power(12, r, f));
  CHECK(cgt::is_prime_ll(127));
  CHECK(!cgt::is_prime_ll(128));
  CHECK_THROWS(group_order("PSL", 3, 6));
  CHECK_THROWS(group_order("Nope", 3, 5));
}
