#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>
#include <vector>

#include "cgt/domain.hpp"
#include "cgt/orders.hpp"

using namespace cgt;

namespace {

Mat mk(const Fq& f, const std::vector<std::vector<int>>& rows) { return Mat::from_rows(f, rows); }

// brute-force list of all k-subspaces by closing over all spanning tuples
std::set<std::vector<int>> all_k_subspaces(const Fq& f, int n, int k) {
  REQUIRE(k == 2);
  std::set<std::vector<int>> out;
  long long qn = 1;
  for (int i = 0; i < n; ++i) qn *= f.q();
  for (long long a = 1; a < qn; ++a)
    for (long long b = a + 1; b < qn; ++b) {
      std::vector<int> u(n), v(n);
      long long x = a, y = b;
      for (int i = 0; i < n; ++i) {
        u[i] = (int)(x % f.q());
        x /= f.q();
        v[i] = (int)(y % f.q());
        y /= f.q();
      }
      Subspace s = canonical_subspace(f, n, {u, v});
      if (s.k == 2) out.insert(s.basis.a);
    }
  return out;
}

}  // namespace

TEST_CASE("projective line and plane sizes") {
  CHECK(projective_domain(field(7, 1), 2).size() == 8);
  CHECK(projective_domain(field(2, 1), 3).size() == 7);
  CHECK(projective_domain(field(3, 1), 4).size() == 40);
  CHECK(projective_domain(field(2, 2), 2).size() == 5);
  CHECK(projective_domain(field(2, 2), 8).size() == 21845);
}

TEST_CASE("key interning round trip") {
  auto d = projective_domain(field(3, 1), 4);
  for (Pt id = 0; id < d.size(); ++id) {
    Mat m = d.object(id);
    CHECK(d.id_of(d.encode(m)) == id);
  }
  Mat zero(field(3, 1), 1, 4);
  CHECK(!d.contains(d.encode(zero)));
}

TEST_CASE("projective action of a 2-dimensional special linear group") {
  const Fq& f = field(7, 1);
  auto d = projective_domain(f, 2);
  std::vector<Perm> gens{perm_of(d, mk(f, {{1, 1}, {0, 1}})), perm_of(d, mk(f, {{0, 1}, {6, 0}}))};
  BSGS b = schreier_sims(gens);
  CHECK(b.order == group_order("PSL", 2, 7));
  CHECK(b.order == 168);
  // scalars act trivially on projective points
  CHECK(perm_of(d, mk(f, {{3, 0}, {0, 3}})).is_identity());
}

TEST_CASE("projective action of a 4-dimensional special linear group") {
  const Fq& f = field(3, 1);
  auto d = projective_domain(f, 4);
  REQUIRE(d.size() == 40);
  std::vector<Perm> gens{
      perm_of(d, mk(f, {{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})),
      perm_of(d, mk(f, {{1, 0, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})),
      perm_of(d, mk(f, {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {2, 0, 0, 0}})),
  };
  CHECK(schreier_sims(gens).order == 6065280);
  CHECK(schreier_sims(gens).order == group_order("PSL", 4, 3));
}

TEST_CASE("semilinear generators on the projective line over the 4-element field") {
  const Fq& f = field(2, 2);
  auto d = projective_domain(f, 2);
  REQUIRE(d.size() == 5);
  int w = f.gen();
  std::vector<SemilinearMap> lin{{mk(f, {{1, 1}, {0, 1}}), 0, false},
                                 {mk(f, {{1, w}, {0, 1}}), 0, false},
                                 {mk(f, {{0, 1}, {1, 0}}), 0, false}};
  auto gens = perms_of(d, lin);
  CHECK(schreier_sims(gens).order == 60);  // PSL2(4) = Alt(5)
  Perm frob = perm_of(d, SemilinearMap{Mat::identity(f, 2), 1, false});
  CHECK(frob.order() == 2);
  gens.push_back(frob);
  CHECK(schreier_sims(gens).order == 120);  // PGammaL2(4) = Sym(5)
}

TEST_CASE("singular and nonsingular point counts of quadratic spaces") {
  // minus type, 12-dimensional, q=2: 2079 singular of 4095 points
  auto fm12 = standard_form(FormKind::quadratic_minus, field(2, 1), 12);
  CHECK(singular_point_domain(fm12).size() == 2015);
  CHECK(nonsingular_point_domain(fm12).size() == 2080);
  // minus type, 10-dimensional, q=2: 495 singular, 528 nonsingular
  auto fm10 = standard_form(FormKind::quadratic_minus, field(2, 1), 10);
  CHECK(singular_point_domain(fm10).size() == 495);
  CHECK(nonsingular_point_domain(fm10).size() == 528);
  // minus type, 8-dimensional, q=2: (q^3-1)(q^4+1)/(q-1) = 119
  auto fm8 = standard_form(FormKind::quadratic_minus, field(2, 1), 8);
  CHECK(singular_point_domain(fm8).size() == 119);
  // plus type, 8-dimensional: (q^3+1)(q^4-1)/(q-1) -> 135 (q=2), 5525 (q=4)
  auto fp8 = standard_form(FormKind::quadratic_plus, field(2, 1), 8);
  CHECK(singular_point_domain(fp8).size() == 135);
  auto fp8_4 = standard_form(FormKind::quadratic_plus, field(2, 2), 8);
  CHECK(singular_point_domain(fp8_4).size() == 5525);
  // the two domains partition the projective space
  CHECK(singular_point_domain(fm12).size() + nonsingular_point_domain(fm12).size() ==
        projective_domain(field(2, 1), 12).size());
}

TEST_CASE("typed 2-subspace counts match exhaustive classification") {
  struct Case {
    FormKind kind;
    int r, f, n;
  };
  for (Case c : {Case{FormKind::quadratic_plus, 2, 1, 4}, Case{FormKind::quadratic_minus, 2, 1, 4},
                 Case{FormKind::quadratic_minus, 2, 2, 4}, Case{FormKind::quadratic_plus, 2, 2, 4},
                 Case{FormKind::quadratic_odd, 3, 1, 5}}) {
    const Fq& f = field(c.r, c.f);
    auto form = standard_form(c.kind, f, c.n);
    // oracle: enumerate every 2-subspace from spanning pairs and classify
    std::map<TypeLabel, size_t> counts;
    size_t total = 0;
    for (const auto& basis : all_k_subspaces(f, c.n, 2)) {
      Mat m(f, 2, c.n);
      m.a = basis;
      Subspace s{&f, c.n, 2, m};
      ++counts[classify_subspace(form, s)];
      ++total;
    }
    for (TypeLabel t : {TypeLabel::totally_singular, TypeLabel::nondeg_plus,
                        TypeLabel::anisotropic, TypeLabel::degenerate}) {
      auto d = subspace_type_domain(form, 2, t);
      CHECK(d.size() == counts[t]);
      for (Pt id = 0; id < d.size(); ++id) {
        Subspace s{&f, c.n, 2, d.object(id)};
        CHECK(classify_subspace(form, s) == t);
      }
    }
    // Gaussian binomial [n choose 2]_q
    long long q = f.q(), qn = 1, qn1 = 1;
    for (int i = 0; i < c.n; ++i) qn *= q;
    for (int i = 0; i < c.n - 1; ++i) qn1 *= q;
    long long gauss = (qn - 1) / (q - 1) * ((qn1 - 1) / (q - 1)) / (q + 1);
    CHECK(total == (size_t)gauss);
  }
}

TEST_CASE("orthogonal group action on typed subspaces") {
  // O4+(2) acting on its 6 totally singular 2-subspaces: the group permutes
  // them and scalars are trivial, so the image is a subgroup of Sym(6)
  const Fq& f = field(2, 1);
  auto form = standard_form(FormKind::quadratic_plus, f, 4);
  auto d = subspace_type_domain(form, 2, TypeLabel::totally_singular);
  CHECK(d.size() == 6);
  // an isometry: swap e1<->f1 (antidiagonal basis e1 e2 f2 f1)
  Mat g = mk(f, {{0, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 0, 0, 0}});
  REQUIRE(is_isometry(form, g));
  Perm p = perm_of(d, g);
  CHECK(p.size() == 6);
  // a non-isometry must be rejected
  Mat bad = mk(f, {{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  REQUIRE(!is_isometry(form, bad));
  CHECK_THROWS_AS(perm_of(d, bad), std::domain_error);
}

TEST_CASE("points-and-hyperplanes domain with a duality generator") {
  const Fq& f = field(2, 1);
  auto d = points_and_hyperplanes_domain(f, 3);
  REQUIRE(d.size() == 14);
  for (Pt id = 0; id < 7; ++id) CHECK(!d.is_hyperplane(id));
  for (Pt id = 7; id < 14; ++id) CHECK(d.is_hyperplane(id));
  std::vector<Perm> lin{perm_of(d, mk(f, {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}})),
                        perm_of(d, mk(f, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}))};
  // linear generators preserve blocks
  for (const Perm& p : lin)
    for (Pt id = 0; id < 14; ++id) CHECK(d.is_hyperplane(p(id)) == d.is_hyperplane(id));
  CHECK(schreier_sims(lin).order == 168);
  // the inverse-transpose duality swaps the blocks and squares to identity
  Perm tau = perm_of(d, SemilinearMap{Mat::identity(f, 3), 0, true});
  for (Pt id = 0; id < 14; ++id) CHECK(d.is_hyperplane(tau(id)) != d.is_hyperplane(id));
  CHECK((tau * tau).is_identity());
  auto gens = lin;
  gens.push_back(tau);
  CHECK(schreier_sims(gens).order == 336);
  // incidence is preserved: p on H iff tau(H) on tau(p)
  for (Pt pid = 0; pid < 7; ++pid)
    for (Pt hid = 7; hid < 14; ++hid) {
      Mat pv = d.object(pid), hv = d.object(hid);
      int dot = 0;
      for (int j = 0; j < 3; ++j) dot = f.add(dot, f.mul(pv.at(0, j), hv.at(0, j)));
      Mat pv2 = d.object(tau(hid)), hv2 = d.object(tau(pid));
      int dot2 = 0;
      for (int j = 0; j < 3; ++j) dot2 = f.add(dot2, f.mul(pv2.at(0, j), hv2.at(0, j)));
      CHECK((dot == 0) == (dot2 == 0));
    }
}

TEST_CASE("minus-type 2-subspace domain of the 8-dimensional plus-type space over GF(4)") {
  auto form = standard_form(FormKind::quadratic_plus, field(2, 2), 8);
  auto d = subspace_type_domain(form, 2, TypeLabel::anisotropic);
  CHECK(d.size() == 6580224);
}
