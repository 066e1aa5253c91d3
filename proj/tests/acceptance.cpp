// Acceptance suite: nine top-level criteria, one PASS/FAIL line each.
// Exit status is the number of failing criteria.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "cgt/domain.hpp"
#include "cgt/grpgen.hpp"
#include "cgt/normfact.hpp"
#include "cgt/orders.hpp"
#include "cgt/perm.hpp"
#include "cgt/table1.hpp"

using namespace cgt;

namespace {

int failures = 0;

void report(int k, const char* title, bool ok, double secs) {
  std::printf("criterion %d (%s): %s  [%.1f s]\n", k, title, ok ? "PASS" : "FAIL", secs);
  std::fflush(stdout);
  if (!ok) ++failures;
}

bool expect(bool cond, const char* what) {
  if (!cond) std::printf("  check failed: %s\n", what);
  return cond;
}
#define EXPECT(cond) ok &= expect((cond), #cond)

std::vector<Perm> sym_gens(int n) {
  return {Perm::from_cycles(n, {{0, 1}}),
          Perm::from_cycles(n, {[&] {
            std::vector<Pt> c(n);
            std::iota(c.begin(), c.end(), 0);
            return c;
          }()})};
}

std::vector<Perm> alt_gens(int n) {
  std::vector<Pt> c;
  if (n % 2 == 1) {
    c.resize(n);
    std::iota(c.begin(), c.end(), 0);
  } else {
    c.resize(n - 1);
    std::iota(c.begin(), c.end(), 1);
  }
  return {Perm::from_cycles(n, {{0, 1, 2}}), Perm::from_cycles(n, {c})};
}

size_t moved_points(const Perm& p) {
  size_t m = 0;
  for (Pt i = 0; i < p.size(); ++i)
    if (p(i) != i) ++m;
  return m;
}

// unordered (prime(x), prime(y), moved(x), moved(y)) signatures of the
// factorizing pairs found by the explorer
std::multiset<std::array<long long, 4>> pair_signatures(const std::vector<Perm>& gens) {
  auto reps = cyclic_class_reps(gens);
  std::multiset<std::array<long long, 4>> out;
  for (const auto& r : explore_all_pairs(gens)) {
    const auto& a = reps[(size_t)r.class_x];
    const auto& b = reps[(size_t)r.class_y];
    std::array<long long, 4> sig{a.prime, b.prime, (long long)moved_points(a.rep),
                                 (long long)moved_points(b.rep)};
    if (std::tie(sig[0], sig[2]) > std::tie(sig[1], sig[3])) {
      std::swap(sig[0], sig[1]);
      std::swap(sig[2], sig[3]);
    }
    out.insert(sig);
  }
  return out;
}

// ---------------------------------------------------------------------------

bool criterion1() {
  bool ok = true;
  // Sym(5): transposition vs 5-cycle and 3-cycle vs 5-cycle (the prime-order
  // shadow of the order-{3,6} line), nothing else.
  auto s5 = pair_signatures(sym_gens(5));
  EXPECT((s5 == std::multiset<std::array<long long, 4>>{{2, 5, 2, 5}, {3, 5, 3, 5}}));
  // Sym(6): degree not prime, no line applies.
  EXPECT(pair_signatures(sym_gens(6)).empty());
  // Sym(7): transposition vs 7-cycle only.
  auto s7 = pair_signatures(sym_gens(7));
  EXPECT((s7 == std::multiset<std::array<long long, 4>>{{2, 7, 2, 7}}));
  // Alternating groups: nothing.
  for (int n : {5, 6, 7}) EXPECT(pair_signatures(alt_gens(n)).empty());
  // Composite follow-up on Sym(5): cyclic <x> with G = N(<x>) N(<y>) for the
  // 5-cycle y have |x| in {2, 3, 6}; 3 and 6 are the order-{3,6} line.
  auto g5 = sym_gens(5);
  Perm y5 = g5[1];
  auto ords = factorizing_orders_with(g5, y5);
  EXPECT((ords == std::vector<long long>{2, 3, 6}));
  return ok;
}

bool criterion2() {
  bool ok = true;
  for (int q : {5, 7}) {
    LineResult r = verify_line("3", 2, q);
    EXPECT(r.normalizer_report.verdict == Verdict::factorizes);
  }
  for (int q : {7, 11}) {
    LineResult r = verify_line("4", 2, q);
    EXPECT(r.normalizer_report.verdict == Verdict::factorizes);
  }
  EXPECT(negative_control("PSL2(13)").pairs.empty());
  EXPECT(negative_control("PGammaL2(8)").pairs.empty());
  LineResult r5 = verify_line("5", 2, 16);
  EXPECT(r5.normalizer_report.verdict == Verdict::factorizes);
  EXPECT(r5.normalizer_report.order_Y == 136);
  return ok;
}

bool criterion3() {
  bool ok = true;
  NegativeControlReport m11 = negative_control("M11");
  EXPECT(m11.order_G == 7920);
  EXPECT(m11.pairs.empty());
  EXPECT(m11.max_normalizer_order == 55);
  return ok;
}

bool criterion4() {
  bool ok = true;
  struct Case {
    const char* id;
    int n, q;
    bool centralizer_holds;
  };
  for (Case c : {Case{"6", 4, 3, true}, Case{"9", 4, 2, true}, Case{"10", 4, 3, true},
                 Case{"14", 9, 3, true}, Case{"7", 4, 4, false}, Case{"8", 4, 4, false}}) {
    LineResult r = verify_line(c.id, c.n, c.q);
    bool norm_ok = r.normalizer_report.verdict == Verdict::factorizes;
    bool cent_ok = r.has_centralizer_report &&
                   r.centralizer_report.verdict ==
                       (c.centralizer_holds ? Verdict::factorizes : Verdict::fails);
    if (!norm_ok || !cent_ok)
      std::printf("  line %s (%d, %d): normalizer %s centralizer %s\n", c.id, c.n, c.q,
                  norm_ok ? "ok" : "BAD", cent_ok ? "ok" : "BAD");
    ok &= norm_ok && cent_ok;
  }
  return ok;
}

bool criterion5() {
  bool ok = true;
  LineResult r11 = verify_line("11", 10, 2);
  EXPECT(r11.normalizer_report.verdict == Verdict::factorizes);
  EXPECT(r11.normalizer_report.strategy == "geometric-transitivity");
  EXPECT(r11.normalizer_report.domain_size == 528);
  LineResult r13 = verify_line("13", 12, 2);
  EXPECT(r13.normalizer_report.verdict == Verdict::factorizes);
  EXPECT(r13.normalizer_report.strategy == "geometric-transitivity");
  EXPECT(r13.normalizer_report.domain_size == 2080);
  return ok;
}

bool criterion6() {
  bool ok = true;
  Section2Report r = verify_section2(4);
  EXPECT(r.domain_size == 6580224);
  EXPECT((r.subfield_orbit_lengths == std::vector<size_t>{3290112, 3290112}));
  EXPECT(r.augmented_transitive);
  EXPECT((r.augmented_orbit_lengths == std::vector<size_t>{6580224}));
  EXPECT(!r.inconclusive_by_scale);
  Section2Report big = verify_section2(16);
  EXPECT(big.inconclusive_by_scale);
  return ok;
}

bool criterion7() {
  bool ok = true;
  // parameter layouts: (n, q, ell[, kappa]) and (q) — see audit_param_names
  auto s1 = audit_satisfying("psl-kappa-gt1");
  EXPECT(s1.size() == 1 && s1[0][0] == 3 && s1[0][1] == 2);

  auto s2 = audit_satisfying("psl-kappa-eq1");
  EXPECT(!s2.empty());
  std::set<long long> qs2;
  for (const auto& t : s2) {
    qs2.insert(t[1]);
    EXPECT((t[1] == 2 || t[1] == 4) && t[2] == 2);
  }
  EXPECT((qs2 == std::set<long long>{2, 4}));

  auto s3 = audit_satisfying("psu-ell");
  EXPECT(!s3.empty());
  std::set<long long> qs3;
  for (const auto& t : s3) {
    qs3.insert(t[1]);
    EXPECT((t[1] == 2 || t[1] == 4 || t[1] == 16) && t[2] == 2);
  }
  EXPECT((qs3 == std::set<long long>{2, 4, 16}));

  EXPECT(audit_satisfying("psl-sp-never").empty());

  std::set<long long> qs5;
  for (const auto& t : audit_satisfying("psp-borel")) qs5.insert(t[0]);
  // r = 2 with f <= 3, i.e. q in {2, 4, 8}, together with q = r = 3
  EXPECT((qs5 == std::set<long long>{2, 3, 4, 8}));
  return ok;
}

bool criterion8() {
  bool ok = true;
  for (long long q : prime_powers_upto(128)) {
    for (int n = 2; n <= 12; ++n) {
      PpdResult r = zsigmondy(q, n);
      // brute force: factor q^n - 1, keep primes whose multiplicative order is n
      Big N = 1;
      for (int i = 0; i < n; ++i) N *= (long)q;
      N -= 1;
      std::vector<Big> expect_ppds;
      Big prev;
      for (const Big& t : factorize(N)) {
        if (t == prev) continue;
        prev = t;
        bool primitive = true;
        Big pw = 1;
        for (int k = 1; k < n && primitive; ++k) {
          pw = (pw * (long)q) % t;
          if (pw == 1) primitive = false;
        }
        if (primitive) expect_ppds.push_back(t);
      }
      if (r.ppds != expect_ppds) {
        std::printf("  mismatch at q=%lld n=%d\n", q, n);
        ok = false;
      }
      for (const Big& t : r.ppds)
        if ((t - 1) % n != 0) {
          std::printf("  n does not divide t-1 at q=%lld n=%d\n", q, n);
          ok = false;
        }
      if (r.ppds.empty()) {
        bool six_two = (q == 2 && n == 6);
        long long s = q + 1;
        bool mersenne = (n == 2 && (s & (s - 1)) == 0);
        if (!six_two && !mersenne) {
          std::printf("  empty without exception at q=%lld n=%d\n", q, n);
          ok = false;
        }
      }
    }
  }
  return ok;
}

// ---- criterion 9 property suites -------------------------------------------

bool prop_form_preservation() {
  bool ok = true;
  for (const char* s :
       {"Sp:4:3", "SU:4:2", "GU:3:3", "SL:3:5", "OmegaPlus:6:3", "OmegaMinus:6:2",
        "OmegaOdd:5:3", "SOMinus:4:5", "GOPlus:4:3", "OmegaMinus:8:2"}) {
    GroupWitness w = classical_group(parse_group_spec(s));
    if (!w.form) continue;
    for (const auto& g : w.gens) EXPECT(is_isometry(*w.form, g));
  }
  return ok;
}

bool prop_order_vs_bsgs() {
  bool ok = true;
  struct Case {
    const char* spec;
    const char* order_name;
  };
  for (Case c : {Case{"SL:2:5", "SL"}, Case{"SL:2:7", "SL"}, Case{"SL:3:2", "SL"},
                 Case{"SL:3:3", "SL"}, Case{"Sp:4:2", "Sp"}, Case{"Sp:4:3", "Sp"},
                 Case{"SU:3:2", "SU"}, Case{"OmegaPlus:4:3", "Omega+"},
                 Case{"OmegaMinus:4:3", "Omega-"}, Case{"OmegaOdd:5:3", "Omega"},
                 Case{"OmegaMinus:6:2", "Omega-"}}) {
    GroupSpec spec = parse_group_spec(c.spec);
    GroupWitness w = classical_group(spec);
    ActionDomain d = vector_domain(*w.F, spec.n);
    BSGS chain = schreier_sims(perms_of(d, w.gens));
    EXPECT(chain.order == group_order(c.order_name, spec.n, spec.q()));
  }
  for (int n : {6, 7}) {
    EXPECT(schreier_sims(sym_gens(n)).order == factorial(n));
    EXPECT(schreier_sims(alt_gens(n)).order == factorial(n) / 2);
  }
  return ok;
}

long long totient(long long m) {
  long long t = m;
  Big prev;
  for (const Big& p : factorize(Big((long)m))) {
    if (p == prev) continue;
    prev = p;
    long long pl = p.get_si();
    t = t / pl * (pl - 1);
  }
  return t;
}

bool prop_normalizer_centralizer() {
  bool ok = true;
  struct Ctx {
    std::vector<Perm> gens;
    Big order;
  };
  GroupWitness m11 = classical_group(parse_group_spec("M11:11:2"));
  std::vector<Ctx> ctxs = {{sym_gens(6), factorial(6)}, {m11.perm_gens, 7920}};
  std::mt19937_64 rng(7);
  for (const auto& c : ctxs) {
    std::vector<Perm> els;
    els.push_back(c.gens[0] * c.gens[1]);
    els.push_back(c.gens[1] * c.gens[0] * c.gens[1]);
    els.push_back(c.gens[0]);
    for (const Perm& x : els) {
      if (x.is_identity()) continue;
      SubgroupWitness C = centralizer(c.gens, c.order, x);
      SubgroupWitness N = normalizer_cyclic(c.gens, c.order, x);
      EXPECT(N.order % C.order == 0);
      Big idx = N.order / C.order;
      EXPECT(totient(x.order()) % idx.get_si() == 0);
      BSGS chainN = schreier_sims(N.gens);
      EXPECT(chainN.order == N.order);
      for (const Perm& g : C.gens) EXPECT(membership(chainN, g));
      EXPECT(membership(chainN, x));
    }
  }
  return ok;
}

bool prop_conjugation_invariance() {
  bool ok = true;
  auto gens = sym_gens(5);
  Big order = factorial(5);
  Perm x = Perm::from_cycles(5, {{0, 1}});
  Perm y = Perm::from_cycles(5, {{0, 1, 2, 3, 4}});
  Perm y2 = Perm::from_cycles(5, {{2, 3}});
  for (auto [a, b] : {std::pair<Perm, Perm>{x, y}, {x, y2}}) {
    SubgroupWitness X = normalizer_cyclic(gens, order, a);
    SubgroupWitness Y = normalizer_cyclic(gens, order, b);
    Verdict base = test_factorization(gens, order, X, Y).verdict;
    for (const Perm& g : {gens[0] * gens[1], gens[1] * gens[1] * gens[0]}) {
      SubgroupWitness Xg = normalizer_cyclic(gens, order, conjugate(a, g));
      SubgroupWitness Yg = normalizer_cyclic(gens, order, conjugate(b, g));
      EXPECT(test_factorization(gens, order, Xg, Yg).verdict == base);
      // centralizer verdicts are conjugation-invariant too
      EXPECT(test_centralizer_factorization(gens, order, conjugate(a, g), conjugate(b, g)).verdict ==
             test_centralizer_factorization(gens, order, a, b).verdict);
    }
  }
  return ok;
}

// transitive normalizer in Sym(n) forces semiregularity, checked exhaustively
bool prop_transitive_normalizer_semiregular() {
  bool ok = true;
  for (int n = 2; n <= 7; ++n) {
    auto gens = sym_gens(n);
    Big order = factorial(n);
    for (const Perm& g : enumerate_small(gens)) {
      if (g.is_identity()) continue;
      SubgroupWitness N = normalizer_cyclic(gens, order, g);
      if (is_transitive(N.gens, (size_t)n) && !is_semiregular(g)) {
        std::printf("  counterexample in Sym(%d)\n", n);
        ok = false;
      }
    }
  }
  return ok;
}

// G = MN and T <= N imply: G = MT iff N = (M cap N) T, on random triples
bool prop_factorization_restriction() {
  bool ok = true;
  auto gens6 = sym_gens(6);
  auto sym6 = enumerate_small(gens6);
  std::mt19937_64 rng(11);
  auto rand_el = [&] { return sym6[rng() % sym6.size()]; };
  auto inter = [](const std::vector<Perm>& a, const std::vector<Perm>& b) {
    std::vector<Perm> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  };
  int premise_cases = 0;
  for (int trial = 0; trial < 400 && premise_cases < 40; ++trial) {
    std::vector<Perm> M = enumerate_small({rand_el(), rand_el()});
    std::vector<Perm> N =
        (trial % 4 == 0) ? sym6 : enumerate_small({rand_el(), rand_el()});
    std::vector<Perm> G = enumerate_small({M[M.size() - 1], M[0], N[N.size() - 1], N[0],
                                           M[M.size() / 2], N[N.size() / 2]});
    auto MN = inter(M, N);
    if (M.size() * N.size() != G.size() * MN.size()) continue;  // premise G = MN fails
    ++premise_cases;
    std::vector<Perm> T = enumerate_small({N[rng() % N.size()], N[rng() % N.size()]});
    auto MT = inter(M, T);
    auto MNT = inter(MN, T);
    bool g_eq_mt = M.size() * T.size() == G.size() * MT.size();
    bool n_eq_mnt = MN.size() * T.size() == N.size() * MNT.size();
    if (g_eq_mt != n_eq_mnt) {
      std::printf("  equivalence failed at trial %d\n", trial);
      ok = false;
    }
  }
  EXPECT(premise_cases >= 40);
  return ok;
}

bool prop_strategy_agreement() {
  bool ok = true;
  auto gens = sym_gens(6);
  Big order = factorial(6);
  SubgroupWitness X{stabilizer(gens, 0), factorial(5)};
  for (const Perm& y : {Perm::from_cycles(6, {{0, 1, 2, 3, 4, 5}}),
                        Perm::from_cycles(6, {{0, 1}}),
                        Perm::from_cycles(6, {{0, 1, 2}, {3, 4, 5}})}) {
    std::vector<Perm> ygens{y};
    Big yorder((long)y.order());
    Verdict enumerated =
        test_factorization(gens, order, X, SubgroupWitness{ygens, yorder},
                           "enumerate-intersection")
            .verdict;
    Verdict geometric =
        test_factorization_geometric(order, X.order, ygens, yorder, "points").verdict;
    EXPECT(enumerated == geometric);
  }
  return ok;
}

bool criterion9() {
  bool ok = true;
  ok &= expect(prop_form_preservation(), "form preservation");
  ok &= expect(prop_order_vs_bsgs(), "order formula vs stabilizer chain");
  ok &= expect(prop_normalizer_centralizer(), "normalizer/centralizer containment");
  ok &= expect(prop_conjugation_invariance(), "conjugation invariance");
  ok &= expect(prop_transitive_normalizer_semiregular(), "transitive normalizer => semiregular");
  ok &= expect(prop_factorization_restriction(), "factorization restriction equivalence");
  ok &= expect(prop_strategy_agreement(), "strategy agreement");
  return ok;
}

template <class F>
void run(int k, const char* title, F f) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = f();
  } catch (const std::exception& e) {
    std::printf("  exception: %s\n", e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(k, title, ok, secs);
}

}  // namespace

int main() {
  run(1, "explorer completeness on Sym/Alt 5-7", criterion1);
  run(2, "projective 2-dimensional linear family", criterion2);
  run(3, "M11 control", criterion3);
  run(4, "classical lines with centralizer companions", criterion4);
  run(5, "geometric transitivity lines", criterion5);
  run(6, "minus-type 2-subspace special case", criterion6);
  run(7, "order-arithmetic audits", criterion7);
  run(8, "primitive prime divisor oracle", criterion8);
  run(9, "property suites", criterion9);
  return failures;
}
