#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cgt/grpgen.hpp"

using namespace cgt;

namespace {

// Constructs the group and returns its claimed order (the constructor throws
// if the generators fail containment or the stabilizer chain misses the
// closed-form order).
Big built_order(const std::string& spec) {
  GroupWitness w = classical_group(parse_group_spec(spec));
  CHECK(w.gens.size() + w.perm_gens.size() <= 8);
  return w.claimed_order;
}

Big chain_order_on_vectors(const GroupWitness& w) {
  ActionDomain dom = vector_domain(*w.F, w.spec.n);
  std::vector<Perm> perms = perms_of(dom, w.gens);
  return schreier_sims(perms).order;
}

}  // namespace

TEST_CASE("group spec parsing") {
  GroupSpec s = parse_group_spec("Sp:4:9");
  CHECK(s.family == GroupFamily::Sp);
  CHECK(s.n == 4);
  CHECK(s.r == 3);
  CHECK(s.f == 2);
  CHECK(s.q() == 9);
  CHECK(s.name() == "Sp:4:9");

  GroupSpec t = parse_group_spec("OmegaMinus:10:2:graph,field");
  CHECK(t.family == GroupFamily::OmegaMinus);
  CHECK(t.ext == std::vector<std::string>{"graph", "field"});

  CHECK_THROWS_AS(parse_group_spec("Foo:2:3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_group_spec("SL:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_group_spec("SL:2:6"), std::invalid_argument);
}

TEST_CASE("linear and symplectic orders match the closed forms") {
  for (int q : {2, 3, 4, 5, 7, 8, 9, 13, 16})
    CHECK(built_order("SL:2:" + std::to_string(q)) == group_order("SL", 2, q));
  for (int q : {2, 3, 4})
    CHECK(built_order("SL:3:" + std::to_string(q)) == group_order("SL", 3, q));
  for (int q : {2, 3})
    CHECK(built_order("SL:4:" + std::to_string(q)) == group_order("SL", 4, q));
  CHECK(built_order("GL:1:5") == 4);
  CHECK(built_order("GL:2:4") == group_order("GL", 2, 4));
  CHECK(built_order("GL:2:5") == group_order("GL", 2, 5));
  CHECK(built_order("GL:3:3") == group_order("GL", 3, 3));

  CHECK(built_order("Sp:2:9") == group_order("Sp", 2, 9));
  for (int q : {2, 3, 4, 5})
    CHECK(built_order("Sp:4:" + std::to_string(q)) == group_order("Sp", 4, q));
  CHECK(built_order("Sp:6:2") == group_order("Sp", 6, 2));
}

TEST_CASE("unitary orders match the closed forms") {
  CHECK(built_order("SU:2:3") == group_order("SU", 2, 3));
  for (int q : {2, 3}) {
    CHECK(built_order("SU:3:" + std::to_string(q)) == group_order("SU", 3, q));
    CHECK(built_order("SU:4:" + std::to_string(q)) == group_order("SU", 4, q));
  }
  CHECK(built_order("GU:1:3") == 4);
  CHECK(built_order("GU:2:2") == group_order("GU", 2, 2));
  CHECK(built_order("GU:3:2") == group_order("GU", 3, 2));
  CHECK(built_order("GU:4:2") == group_order("GU", 4, 2));
}

TEST_CASE("orthogonal orders match the closed forms") {
  // 2-dimensional tori
  CHECK(built_order("OmegaPlus:2:4") == 3);
  CHECK(built_order("OmegaPlus:2:5") == 2);
  CHECK(built_order("SOPlus:2:5") == 4);
  CHECK(built_order("GOPlus:2:5") == 8);
  CHECK(built_order("OmegaMinus:2:4") == 5);
  CHECK(built_order("GOMinus:2:4") == 10);
  CHECK(built_order("OmegaMinus:2:7") == 4);

  for (int q : {2, 3})
    CHECK(built_order("OmegaPlus:4:" + std::to_string(q)) == group_order("Omega+", 4, q));
  for (int q : {2, 3, 4})
    CHECK(built_order("OmegaMinus:4:" + std::to_string(q)) == group_order("Omega-", 4, q));
  for (int q : {2, 3})
    CHECK(built_order("OmegaPlus:6:" + std::to_string(q)) == group_order("Omega+", 6, q));
  for (int q : {2, 3, 4})
    CHECK(built_order("OmegaMinus:6:" + std::to_string(q)) == group_order("Omega-", 6, q));
  CHECK(built_order("OmegaPlus:8:2") == group_order("Omega+", 8, 2));
  CHECK(built_order("OmegaMinus:8:2") == group_order("Omega-", 8, 2));
  CHECK(built_order("OmegaMinus:10:2") == group_order("Omega-", 10, 2));

  CHECK(built_order("OmegaOdd:3:3") == group_order("Omega", 3, 3));
  CHECK(built_order("OmegaOdd:5:3") == group_order("Omega", 5, 3));
  CHECK(built_order("OmegaOdd:5:5") == group_order("Omega", 5, 5));
  CHECK(built_order("OmegaOdd:7:3") == group_order("Omega", 7, 3));

  CHECK(built_order("SOPlus:4:3") == group_order("SO+", 4, 3));
  CHECK(built_order("GOPlus:4:3") == group_order("GO+", 4, 3));
  CHECK(built_order("SOMinus:6:3") == group_order("SO-", 6, 3));
  CHECK(built_order("GOMinus:6:2") == group_order("GO-", 6, 2));
  CHECK(built_order("GOMinus:4:4") == group_order("GO-", 4, 4));
  CHECK(built_order("SOOdd:5:3") == group_order("SO", 5, 3));
  CHECK(built_order("GOOdd:5:3") == group_order("GO", 5, 3));
}

TEST_CASE("permutation families") {
  CHECK(built_order("Sym:6:2") == 720);
  CHECK(built_order("Alt:7:2") == 2520);
  CHECK(built_order("M11:11:2") == 7920);
  GroupWitness m = classical_group(parse_group_spec("M11:11:2"));
  CHECK(schreier_sims(m.perm_gens).order == 7920);
}

TEST_CASE("Dickson invariant and spinor norm separate the cosets") {
  // even characteristic: Dickson
  GroupSpec sp = parse_group_spec("OmegaPlus:6:2");
  GroupWitness w = classical_group(sp);
  for (const auto& g : w.gens) CHECK(dickson_invariant(*w.form, g.m) == 0);
  Mat t = special_element(sp, "so_minus_omega").m;
  CHECK(dickson_invariant(*w.form, t) == 1);
  CHECK(in_omega(*w.form, t) == false);
  CHECK(dickson_invariant(*w.form, w.gens[0].m * t) == 1);  // additivity
  CHECK(dickson_invariant(*w.form, t * t) == 0);

  // odd characteristic: spinor norm
  GroupSpec so = parse_group_spec("OmegaPlus:6:3");
  GroupWitness v = classical_group(so);
  for (const auto& g : v.gens) {
    CHECK(spinor_norm(*v.form, g.m) == 0);
    CHECK(in_omega(*v.form, g.m));
  }
  Mat s = special_element(so, "so_minus_omega").m;
  CHECK(determinant(s) == v.form->F->one());
  CHECK(spinor_norm(*v.form, s) == 1);
  CHECK(in_omega(*v.form, s) == false);
  CHECK(spinor_norm(*v.form, s * s) == 0);
  Mat r = special_element(so, "reflection", {0}).m;
  CHECK(determinant(r) == v.form->F->neg(v.form->F->one()));
  CHECK(in_omega(*v.form, r) == false);
}

TEST_CASE("special elements have the advertised shapes") {
  const Fq& f5 = field(5, 1);
  Mat t = special_element(parse_group_spec("SL:3:5"), "transvection").m;
  CHECK(t.order() == 5);
  CHECK(determinant(t) == f5.one());
  CHECK(eigenspace_dim(t, f5.one()) == 2);

  GroupSpec sp43 = parse_group_spec("Sp:4:3");
  Mat ts = special_element(sp43, "transvection").m;
  CHECK(is_isometry(standard_form(FormKind::symplectic, field(3, 1), 4), ts));
  CHECK(ts.order() == 3);

  GroupSpec su32 = parse_group_spec("SU:3:2");
  Mat ut = special_element(su32, "unitary_transvection").m;
  CHECK(is_isometry(standard_form(FormKind::hermitian, field(2, 2), 3), ut));
  CHECK(ut.order() == 2);

  GroupSpec om62 = parse_group_spec("OmegaMinus:6:2");
  Mat sg = special_element(om62, "siegel").m;
  auto form62 = standard_form(FormKind::quadratic_minus, field(2, 1), 6);
  CHECK(in_omega(form62, sg));
  CHECK(sg.order() == 2);

  GroupSpec o73 = parse_group_spec("OmegaOdd:7:3");
  Mat z = special_element(o73, "parabolic_unipotent_z").m;
  auto form73 = standard_form(FormKind::quadratic_odd, field(3, 1), 7);
  CHECK(in_omega(form73, z));
  CHECK(z.order() == 3);

  GroupSpec so53 = parse_group_spec("SOOdd:5:3");
  Mat nr = special_element(so53, "negated_reflection", {0}).m;
  const Fq& f3 = field(3, 1);
  CHECK(determinant(nr) == f3.one());
  CHECK(eigenspace_dim(nr, f3.one()) == 1);
  CHECK((nr * nr).is_identity());

  Mat d = special_element(parse_group_spec("GL:4:3"), "semisimple_diag", {1}).m;
  CHECK(eigenspace_dim(d, f3.one()) == 3);
  CHECK(d.order() == 2);

  GroupSpec gu42 = parse_group_spec("GU:4:2");
  Mat y = special_element(gu42, "semisimple_diag", {1}).m;
  const Fq& f4 = field(2, 2);
  CHECK(is_isometry(standard_form(FormKind::hermitian, f4, 4), y));
  CHECK(eigenspace_dim(y, f4.one()) == 3);
  CHECK(y.order() == 3);
}

TEST_CASE("Singer torus acts irreducibly with order q + 1") {
  for (int q : {4, 5, 16}) {
    GroupSpec gs = parse_group_spec("GL:2:" + std::to_string(q));
    Mat m = special_element(gs, "singer_torus").m;
    CHECK(m.order() == q + 1);
    const Fq& F = field(gs.r, gs.f);
    for (int c = 1; c < q; ++c) CHECK(eigenspace_dim(m, c) == 0);
  }
}

TEST_CASE("field and graph automorphism wrappers") {
  GroupSpec sp44 = parse_group_spec("Sp:4:4");
  SemilinearMap phi = special_element(sp44, "field_aut", {1});
  CHECK(phi.frob_e == 1);
  ActionDomain dom = vector_domain(field(2, 2), 4);
  CHECK(perm_of(dom, phi).order() == 2);

  SemilinearMap tau = special_element(parse_group_spec("SL:3:2"), "graph_aut");
  CHECK(tau.duality);
  ActionDomain ph = points_and_hyperplanes_domain(field(2, 1), 3);
  CHECK(perm_of(ph, tau).order() == 2);
}

TEST_CASE("decorated witnesses extend the group") {
  GroupWitness w = classical_group(parse_group_spec("Sp:4:4:field"));
  CHECK(w.claimed_order == 0);
  CHECK(chain_order_on_vectors(w) == 2 * group_order("Sp", 4, 4));

  GroupWitness d = classical_group(parse_group_spec("SL:2:4:diagonal"));
  CHECK(chain_order_on_vectors(d) == group_order("GL", 2, 4));
}

TEST_CASE("minus-type groups over GF(2) become plus type over GF(4)") {
  for (int n : {4, 8}) {
    GroupSpec gs = parse_group_spec("OmegaMinus:" + std::to_string(n) + ":2");
    GroupWitness inner = classical_group(gs);
    GroupWitness big = subfield_reinterpret(inner, field(2, 2));
    REQUIRE(big.form.has_value());
    for (const auto& g : big.gens) CHECK(is_isometry(*big.form, g.m));
    // the scalar-extended form has plus-type singular point counts
    auto plus = standard_form(FormKind::quadratic_plus, field(2, 2), n);
    CHECK(singular_point_domain(*big.form).size() == singular_point_domain(plus).size());
  }
}

TEST_CASE("unitary groups blow up to orthogonal groups of type (-1)^m") {
  GroupWitness gu3 = classical_group(parse_group_spec("GU:3:2"));
  GroupWitness b3 = restrict_scalars_unitary(gu3);
  CHECK(b3.form->kind == FormKind::quadratic_minus);
  CHECK(b3.F->q() == 2);
  CHECK(chain_order_on_vectors(b3) == group_order("GU", 3, 2));

  GroupWitness su4 = classical_group(parse_group_spec("SU:4:2"));
  GroupWitness b4 = restrict_scalars_unitary(su4);
  CHECK(b4.form->kind == FormKind::quadratic_plus);
  CHECK(chain_order_on_vectors(b4) == group_order("SU", 4, 2));

  // GU_1(4) lands in the order-5 torus of a 2-dimensional minus form
  GroupWitness gu1 = classical_group(parse_group_spec("GU:1:4"));
  GroupWitness b1 = restrict_scalars_unitary(gu1);
  CHECK(b1.form->kind == FormKind::quadratic_minus);
  CHECK(b1.F->q() == 4);
  CHECK(chain_order_on_vectors(b1) == 5);
}

TEST_CASE("orthogonal groups over GF(q^2) blow up via the trace form") {
  GroupWitness inner = classical_group(parse_group_spec("OmegaMinus:4:4"));
  GroupWitness big = restrict_scalars_orthogonal(inner);
  CHECK(big.F->q() == 2);
  CHECK(big.form->kind == FormKind::quadratic_minus);
  CHECK(chain_order_on_vectors(big) == group_order("Omega-", 4, 4));
}

TEST_CASE("form transport carries a scrambled form onto the standard one") {
  const Fq& F = field(3, 1);
  auto std_form = standard_form(FormKind::quadratic_plus, F, 4);
  Mat t0 = Mat::from_rows(F, {{1, 1, 0, 2}, {0, 1, 2, 0}, {2, 0, 1, 1}, {0, 0, 1, 1}});
  REQUIRE(determinant(t0) != 0);
  ClassicalForm src;
  src.kind = FormKind::quadratic_plus;
  src.F = &F;
  src.n = 4;
  src.quad = upper_triangular_fold(t0 * std_form.quad * t0.transpose());
  src.gram = t0 * std_form.gram * t0.transpose();
  Mat t = form_transport(src, std_form);
  // Q_dst(x t) = Q_src(x) and the same for the polarization
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          std::vector<int> x{a, b, c, d};
          std::vector<int> xt = apply_row(x, t);
          CHECK(std_form.qval(xt) == src.qval(x));
        }
}
