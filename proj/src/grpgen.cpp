#include "cgt/grpgen.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace cgt {

namespace {

// ---- small vector/matrix helpers (row convention throughout) ----------------

std::vector<int> basis_vec(int n, int i) {
  std::vector<int> v(n, 0);
  v[i] = 1;  // caller scales; 1 is the field's one for every representation
  return v;
}

std::vector<int> vec_add(const Fq& F, std::vector<int> a, const std::vector<int>& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] = F.add(a[i], b[i]);
  return a;
}

std::vector<int> vec_scale(const Fq& F, int c, std::vector<int> a) {
  for (auto& x : a) x = F.mul(c, x);
  return a;
}

// matrix of the map x -> fn(x) acting on rows
template <class Fn>
Mat map_matrix(const Fq& F, int n, Fn&& fn) {
  Mat m(F, n, n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> img = fn(basis_vec(n, i));
    for (int j = 0; j < n; ++j) m.at(i, j) = img[j];
  }
  return m;
}

// x -> x + lambda B(x,v) v  (symplectic or unitary transvection shape)
Mat transvection_mat(const ClassicalForm& form, const std::vector<int>& v, int lambda) {
  const Fq& F = *form.F;
  return map_matrix(F, form.n, [&](std::vector<int> x) {
    int c = F.mul(lambda, form.bilin(x, v));
    return vec_add(F, std::move(x), vec_scale(F, c, v));
  });
}

// Siegel transformation: u singular, v in u-perp:
// x -> x + B(x,v) u - B(x,u) v - Q(v) B(x,u) u
Mat siegel_mat(const ClassicalForm& form, const std::vector<int>& u, const std::vector<int>& v) {
  const Fq& F = *form.F;
  return map_matrix(F, form.n, [&](std::vector<int> x) {
    int bu = form.bilin(x, u), bv = form.bilin(x, v);
    std::vector<int> img = vec_add(F, std::move(x), vec_scale(F, bv, u));
    img = vec_add(F, std::move(img), vec_scale(F, F.neg(bu), v));
    img = vec_add(F, std::move(img), vec_scale(F, F.neg(F.mul(form.qval(v), bu)), u));
    return img;
  });
}

// reflection in a nonsingular vector u: x -> x - (B(x,u)/Q(u)) u
Mat reflection_mat(const ClassicalForm& form, const std::vector<int>& u) {
  const Fq& F = *form.F;
  int qu = form.qval(u);
  if (qu == 0) throw std::invalid_argument("reflection needs a nonsingular vector");
  int qinv = F.inv(qu);
  return map_matrix(F, form.n, [&](std::vector<int> x) {
    int c = F.neg(F.mul(form.bilin(x, u), qinv));
    return vec_add(F, std::move(x), vec_scale(F, c, u));
  });
}

void require_isometry(const ClassicalForm& form, const Mat& g, const char* what) {
  if (!is_isometry(form, g)) throw std::logic_error(std::string("not an isometry: ") + what);
}

// index of e_i (1-based) is i-1; index of f_i is n-i
int e_idx(int i) { return i - 1; }
int f_idx(int n, int i) { return n - i; }

// ---- family constructions ----------------------------------------------------

// gen()^0 .. gen()^(f-1) is an additive basis over the prime field (the
// polynomial basis when f > 1); transvection parameters range over it so the
// full parameter group is reachable additively.
std::vector<int> additive_basis(const Fq& F) {
  std::vector<int> out;
  for (int t = 0; t < F.f(); ++t) out.push_back(F.pow(F.gen(), t));
  return out;
}

std::vector<Mat> sl_gens(const Fq& F, int n) {
  std::vector<Mat> out;
  for (int lam : additive_basis(F)) {
    Mat t = Mat::identity(F, n);
    t.at(0, 1) = lam;
    out.push_back(t);
  }
  if (F.r() > 2 && F.f() == 1) {
    Mat tg = Mat::identity(F, n);
    tg.at(0, 1) = F.gen();
    out.push_back(tg);
  }
  if (n >= 2) {
    Mat c(F, n, n);
    for (int i = 0; i + 1 < n; ++i) c.at(i, i + 1) = F.one();
    c.at(n - 1, 0) = (n % 2 == 1) ? F.one() : F.neg(F.one());
    out.push_back(c);
  }
  return out;
}

std::vector<Mat> sp_gens(const ClassicalForm& form) {
  const Fq& F = *form.F;
  int n = form.n, m = n / 2;
  std::vector<int> e1 = basis_vec(n, e_idx(1)), f1 = basis_vec(n, f_idx(n, 1));
  std::vector<Mat> out{transvection_mat(form, f1, 1)};
  for (int lam : additive_basis(F)) out.push_back(transvection_mat(form, e1, lam));
  if (F.r() > 2 && F.f() == 1) out.push_back(transvection_mat(form, e1, F.gen()));
  if (m >= 2) {
    std::vector<int> e2 = basis_vec(n, e_idx(2)), f2 = basis_vec(n, f_idx(n, 2));
    out.push_back(transvection_mat(form, vec_add(F, e1, e2), 1));
    out.push_back(transvection_mat(form, vec_add(F, e1, f2), 1));
    // cycle of hyperbolic pairs
    Mat c(F, n, n);
    for (int i = 1; i <= m; ++i) {
      int j = i % m + 1;
      c.at(e_idx(i), e_idx(j)) = F.one();
      c.at(f_idx(n, i), f_idx(n, j)) = F.one();
    }
    out.push_back(c);
  }
  return out;
}

// unitary transvection parameters at an isotropic u: all lambda making an
// isometry (the trace-zero line)
std::vector<int> unitary_transvection_params(const ClassicalForm& form, const std::vector<int>& u) {
  const Fq& E = *form.F;
  std::vector<int> ok;
  for (int lam = 1; lam < E.q(); ++lam) {
    Mat t = transvection_mat(form, u, lam);
    if (is_isometry(form, t)) ok.push_back(lam);
  }
  return ok;
}

// searches b, c completing  x -> x + a B(x,u) v + b B(x,v) u + c B(x,u) u
// into an isometry of determinant one
std::optional<Mat> unitary_siegel(const ClassicalForm& form, const std::vector<int>& u,
                                  const std::vector<int>& v, int a) {
  const Fq& E = *form.F;
  for (int b = 0; b < E.q(); ++b)
    for (int c = 0; c < E.q(); ++c) {
      Mat g = map_matrix(E, form.n, [&](std::vector<int> x) {
        int bu = form.bilin(x, u), bv = form.bilin(x, v);
        std::vector<int> img = vec_add(E, std::move(x), vec_scale(E, E.mul(a, bu), v));
        img = vec_add(E, std::move(img), vec_scale(E, E.mul(b, bv), u));
        img = vec_add(E, std::move(img), vec_scale(E, E.mul(c, bu), u));
        return img;
      });
      if (g.is_identity()) continue;
      if (is_isometry(form, g) && determinant(g) == E.one()) return g;
    }
  return std::nullopt;
}

std::vector<Mat> su_gens(const ClassicalForm& form) {
  const Fq& E = *form.F;
  int n = form.n;
  std::vector<int> e1 = basis_vec(n, e_idx(1)), f1 = basis_vec(n, f_idx(n, 1));
  std::vector<Mat> out;
  for (const auto& u : {e1, f1}) {
    auto params = unitary_transvection_params(form, u);
    for (size_t i = 0; i < params.size() && i < 2; ++i)
      out.push_back(transvection_mat(form, u, params[i]));
  }
  for (int j = 0; j < n; ++j) {
    if (j == e_idx(1) || j == f_idx(n, 1)) continue;
    std::vector<int> v = basis_vec(n, j);
    for (const auto& u : {e1, f1})
      for (int a : additive_basis(E)) {
        auto g = unitary_siegel(form, u, v, a);
        if (g) out.push_back(std::move(*g));
      }
  }
  return out;
}

std::vector<Mat> omega_gens(const ClassicalForm& form) {
  const Fq& F = *form.F;
  int n = form.n;
  std::vector<int> e1 = basis_vec(n, e_idx(1)), f1 = basis_vec(n, f_idx(n, 1));
  std::vector<Mat> out;
  for (const auto& u : {e1, f1})
    for (int j = 0; j < n; ++j) {
      if (j == e_idx(1) || j == f_idx(n, 1)) continue;
      std::vector<int> v = basis_vec(n, j);
      for (int lam : additive_basis(F))
        out.push_back(siegel_mat(form, u, vec_scale(F, lam, v)));
      if (F.r() > 2 && F.f() == 1)
        out.push_back(siegel_mat(form, u, vec_scale(F, F.gen(), v)));
    }
  return out;
}

// 2-dimensional orthogonal groups by exhaustive enumeration
std::vector<Mat> tiny_orthogonal_gens(const ClassicalForm& form, bool want_omega, bool want_go) {
  const Fq& F = *form.F;
  int q = F.q();
  std::vector<Mat> rotations;  // the index-2 cyclic subgroup of O_2
  std::vector<Mat> all;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int c = 0; c < q; ++c)
        for (int d = 0; d < q; ++d) {
          Mat g = Mat::from_rows(F, {{a, b}, {c, d}});
          if (determinant(g) == 0 || !is_isometry(form, g)) continue;
          all.push_back(g);
          // rotations: det 1 (odd q) / Dickson invariant 0 (even q)
          bool rot = F.r() == 2 ? mat_rank(g - Mat::identity(F, 2)) % 2 == 0
                                : determinant(g) == F.one();
          if (rot) rotations.push_back(g);
        }
  if (want_go) return all;  // tiny: no need to thin
  // SO_2 is cyclic; find a generator
  Mat best = rotations[0];
  long long best_ord = 1;
  for (const auto& g : rotations) {
    long long o = g.order();
    if (o > best_ord) {
      best_ord = o;
      best = g;
    }
  }
  if ((long long)rotations.size() != best_ord)
    throw std::logic_error("2-dimensional rotation group is not cyclic");
  int d2 = (F.r() == 2) ? 1 : 2;
  if (want_omega) return {best.pow(d2)};
  return {best};
}

// ---- witness assembly: checks, compression, order proof ----------------------

std::vector<SemilinearMap> wrap(const std::vector<Mat>& ms) {
  std::vector<SemilinearMap> out;
  for (const auto& m : ms) out.push_back(SemilinearMap{m, 0, false});
  return out;
}

constexpr long long kDomainCap = 100000;
const char* kOrderCap = "1000000000000000";  // 1e15

// Proven lower bound for the order of the matrix group on the nonzero-vector
// domain (orbit products of any partial stabilizer chain divide the order).
Big matrix_order_lower_bound(const std::vector<Mat>& gens, const ActionDomain& dom,
                             uint64_t seed) {
  std::vector<Perm> perms;
  for (const auto& g : gens) perms.push_back(perm_of(dom, g));
  return schreier_sims(perms, {}, seed, /*verify=*/false).order;
}

std::vector<Mat> compress_gens(const std::vector<Mat>& gens, const ActionDomain& dom,
                               size_t target) {
  if (gens.size() <= target) return gens;
  std::vector<Perm> orig;
  for (const auto& g : gens) orig.push_back(perm_of(dom, g));
  std::mt19937_64 rng(20240917);
  for (int attempt = 0; attempt < 32; ++attempt) {
    std::vector<Mat> sub;
    for (size_t k = 0; k < target; ++k) {
      Mat p = Mat::identity(*gens[0].F, gens[0].rows);
      bool any = false;
      for (const auto& g : gens)
        if (rng() & 1) {
          p = p * g;
          any = true;
        }
      if (any && !p.is_identity()) sub.push_back(std::move(p));
    }
    if (sub.empty()) continue;
    std::vector<Perm> sub_perms;
    for (const auto& g : sub) sub_perms.push_back(perm_of(dom, g));
    BSGS chain = schreier_sims(sub_perms, {}, rng(), /*verify=*/false);
    bool ok = true;
    for (const auto& p : orig)
      if (!membership(chain, p)) {
        ok = false;
        break;
      }
    if (ok) return sub;
  }
  throw std::logic_error("generator compression failed to reproduce the group");
}

void finalize_matrix_witness(GroupWitness& w, const std::string& order_name) {
  std::vector<Mat> mats;
  for (const auto& g : w.gens) mats.push_back(g.m);
  if (w.form)
    for (const auto& g : mats) require_isometry(*w.form, g, w.spec.name().c_str());

  long long dom_size = 1;
  const Fq& F = *w.F;
  for (int i = 0; i < w.spec.n && dom_size <= kDomainCap; ++i) dom_size *= F.q();
  bool small_dom = dom_size - 1 <= kDomainCap;

  std::optional<ActionDomain> dom;
  if (small_dom) dom = vector_domain(F, w.spec.n);

  if (mats.size() > 8) {
    if (!dom) throw std::logic_error("cannot compress generators: domain too large");
    mats = compress_gens(mats, *dom, 8);
    w.gens = wrap(mats);
  }

  w.claimed_order = group_order(order_name, w.spec.n, w.spec.q());
  if (dom && w.claimed_order <= Big(kOrderCap)) {
    bool proved = false;
    for (uint64_t seed = 1; seed <= 5 && !proved; ++seed)
      proved = matrix_order_lower_bound(mats, *dom, seed) == w.claimed_order;
    if (!proved) throw std::logic_error("constructed group has wrong order: " + w.spec.name());
  }
}

std::vector<Perm> alt_perm_gens(int n) {
  std::vector<Pt> cyc;
  if (n % 2 == 1)
    for (int i = 0; i < n; ++i) cyc.push_back(i);
  else
    for (int i = 1; i < n; ++i) cyc.push_back(i);
  return {Perm::from_cycles(n, {{0, 1, 2}}), Perm::from_cycles(n, {cyc})};
}

}  // namespace

std::string to_string(GroupFamily f) {
  switch (f) {
    case GroupFamily::SL: return "SL";
    case GroupFamily::GL: return "GL";
    case GroupFamily::SU: return "SU";
    case GroupFamily::GU: return "GU";
    case GroupFamily::Sp: return "Sp";
    case GroupFamily::OmegaPlus: return "OmegaPlus";
    case GroupFamily::OmegaMinus: return "OmegaMinus";
    case GroupFamily::OmegaOdd: return "OmegaOdd";
    case GroupFamily::SOPlus: return "SOPlus";
    case GroupFamily::SOMinus: return "SOMinus";
    case GroupFamily::SOOdd: return "SOOdd";
    case GroupFamily::GOPlus: return "GOPlus";
    case GroupFamily::GOMinus: return "GOMinus";
    case GroupFamily::GOOdd: return "GOOdd";
    case GroupFamily::Sym: return "Sym";
    case GroupFamily::Alt: return "Alt";
    case GroupFamily::M11: return "M11";
  }
  return "?";
}

std::string GroupSpec::name() const {
  std::ostringstream os;
  os << to_string(family) << ":" << n << ":" << q();
  for (const auto& e : ext) os << ":" << e;
  return os.str();
}

GroupSpec parse_group_spec(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else
      cur.push_back(ch);
  }
  parts.push_back(cur);
  if (parts.size() < 3) throw std::invalid_argument("group spec needs family:n:q");
  static const std::map<std::string, GroupFamily> names = {
      {"SL", GroupFamily::SL},         {"GL", GroupFamily::GL},
      {"SU", GroupFamily::SU},         {"GU", GroupFamily::GU},
      {"Sp", GroupFamily::Sp},         {"OmegaPlus", GroupFamily::OmegaPlus},
      {"OmegaMinus", GroupFamily::OmegaMinus}, {"OmegaOdd", GroupFamily::OmegaOdd},
      {"SOPlus", GroupFamily::SOPlus}, {"SOMinus", GroupFamily::SOMinus},
      {"SOOdd", GroupFamily::SOOdd},   {"GOPlus", GroupFamily::GOPlus},
      {"GOMinus", GroupFamily::GOMinus}, {"GOOdd", GroupFamily::GOOdd},
      {"Sym", GroupFamily::Sym},       {"Alt", GroupFamily::Alt},
      {"M11", GroupFamily::M11}};
  auto it = names.find(parts[0]);
  if (it == names.end()) throw std::invalid_argument("unknown family: " + parts[0]);
  GroupSpec spec;
  spec.family = it->second;
  spec.n = std::stoi(parts[1]);
  long long r = 0;
  int f = 0;
  if (!split_prime_power(std::stoll(parts[2]), r, f))
    throw std::invalid_argument("q is not a prime power: " + parts[2]);
  spec.r = (int)r;
  spec.f = f;
  for (size_t i = 3; i < parts.size(); ++i) {
    std::string e = parts[i];
    // comma-separated extension list in a single segment is also accepted
    std::string item;
    for (char ch : e + ",") {
      if (ch == ',') {
        if (!item.empty()) spec.ext.push_back(item);
        item.clear();
      } else
        item.push_back(ch);
    }
  }
  return spec;
}

GroupWitness classical_group(const GroupSpec& spec) {
  GroupWitness w;
  w.spec = spec;
  const int n = spec.n;
  const long long q = spec.q();

  switch (spec.family) {
    case GroupFamily::Sym:
      w.degree = n;
      w.perm_gens = {Perm::from_cycles(n, {[&] {
                       std::vector<Pt> c;
                       for (int i = 0; i < n; ++i) c.push_back(i);
                       return c;
                     }()}),
                     Perm::from_cycles(n, {{0, 1}})};
      w.claimed_order = factorial(n);
      return w;
    case GroupFamily::Alt:
      w.degree = n;
      w.perm_gens = alt_perm_gens(n);
      w.claimed_order = factorial(n) / 2;
      return w;
    case GroupFamily::M11:
      w.degree = 11;
      w.perm_gens = {Perm::from_cycles(11, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}}),
                     Perm::from_cycles(11, {{2, 6, 10, 7}, {3, 9, 4, 5}})};
      w.claimed_order = 7920;
      return w;
    default: break;
  }

  const bool unitary = spec.family == GroupFamily::SU || spec.family == GroupFamily::GU;
  const Fq& F = unitary ? field(spec.r, 2 * spec.f) : field(spec.r, spec.f);
  w.F = &F;

  std::vector<Mat> mats;
  std::string order_name;

  switch (spec.family) {
    case GroupFamily::SL:
      if (n < 2) throw std::invalid_argument("SL needs n >= 2");
      mats = sl_gens(F, n);
      order_name = "SL";
      break;
    case GroupFamily::GL:
      if (n == 1)
        mats = {Mat::from_rows(F, {{F.gen()}})};
      else {
        mats = sl_gens(F, n);
        Mat d = Mat::identity(F, n);
        d.at(0, 0) = F.gen();
        mats.push_back(d);
      }
      order_name = "GL";
      break;
    case GroupFamily::Sp:
      if (n < 2 || n % 2) throw std::invalid_argument("Sp needs even n >= 2");
      w.form = standard_form(FormKind::symplectic, F, n);
      mats = sp_gens(*w.form);
      order_name = "Sp";
      break;
    case GroupFamily::SU:
    case GroupFamily::GU: {
      if (n == 1) {
        // norm-one scalars
        int zeta = F.pow(F.gen(), q - 1);  // order q+1
        w.form = standard_form(FormKind::hermitian, F, 1);
        if (spec.family == GroupFamily::SU)
          mats = {Mat::identity(F, 1)};
        else
          mats = {Mat::from_rows(F, {{zeta}})};
        order_name = spec.family == GroupFamily::SU ? "SU" : "GU";
        break;
      }
      w.form = standard_form(FormKind::hermitian, F, n);
      mats = su_gens(*w.form);
      if (spec.family == GroupFamily::GU) {
        Mat d = Mat::identity(F, n);
        d.at(0, 0) = F.gen();
        d.at(n - 1, n - 1) = F.inv(F.frobenius(F.gen(), spec.f));  // alpha^{-q}
        mats.push_back(d);
      }
      order_name = spec.family == GroupFamily::SU ? "SU" : "GU";
      break;
    }
    case GroupFamily::OmegaPlus:
    case GroupFamily::OmegaMinus:
    case GroupFamily::SOPlus:
    case GroupFamily::SOMinus:
    case GroupFamily::GOPlus:
    case GroupFamily::GOMinus:
    case GroupFamily::OmegaOdd:
    case GroupFamily::SOOdd:
    case GroupFamily::GOOdd: {
      bool odd_dim = spec.family == GroupFamily::OmegaOdd || spec.family == GroupFamily::SOOdd ||
                     spec.family == GroupFamily::GOOdd;
      bool minus = spec.family == GroupFamily::OmegaMinus ||
                   spec.family == GroupFamily::SOMinus || spec.family == GroupFamily::GOMinus;
      bool is_omega = spec.family == GroupFamily::OmegaPlus ||
                      spec.family == GroupFamily::OmegaMinus ||
                      spec.family == GroupFamily::OmegaOdd;
      bool is_go = spec.family == GroupFamily::GOPlus || spec.family == GroupFamily::GOMinus ||
                   spec.family == GroupFamily::GOOdd;
      if (odd_dim && (n % 2 == 0 || spec.r == 2))
        throw std::invalid_argument("odd-type orthogonal needs odd n and odd q");
      if (!odd_dim && n % 2) throw std::invalid_argument("even-type orthogonal needs even n");
      FormKind kind = odd_dim ? FormKind::quadratic_odd
                              : (minus ? FormKind::quadratic_minus : FormKind::quadratic_plus);
      w.form = standard_form(kind, F, n);
      if (n == 2)
        // SO coincides with the full orthogonal group in characteristic 2
        mats = tiny_orthogonal_gens(*w.form, is_omega,
                                    is_go || (spec.r == 2 && !is_omega));
      else {
        mats = omega_gens(*w.form);
        if (!is_omega) {
          // coset representatives over Omega
          std::vector<int> u = basis_vec(n, e_idx(1));
          std::vector<int> fv = basis_vec(n, f_idx(n, 1));
          std::vector<int> v1 = vec_add(F, u, fv);                      // Q = 1
          std::vector<int> vg = vec_add(F, u, vec_scale(F, F.gen(), fv));  // Q = gen
          if (spec.r == 2) {
            mats.push_back(reflection_mat(*w.form, v1));  // Dickson-one transvection
          } else {
            Mat r1 = reflection_mat(*w.form, v1), rg = reflection_mat(*w.form, vg);
            if (is_go) {
              mats.push_back(r1);
              mats.push_back(rg);
              if (odd_dim) mats.push_back(Mat::identity(F, n).scaled(F.neg(F.one())));
            } else {
              mats.push_back(r1 * rg);  // non-square spinor norm, determinant one
            }
          }
        }
      }
      if (odd_dim)
        order_name = is_omega ? "Omega" : (is_go ? "GO" : "SO");
      else
        order_name = std::string(is_omega ? "Omega" : (is_go ? "GO" : "SO")) +
                     (minus ? "-" : "+");
      break;
    }
    default: throw std::invalid_argument("unsupported family");
  }

  // Semantic containment: together with the isometry check in
  // finalize_matrix_witness these bound <gens> above by the named group, so a
  // matching stabilizer-chain lower bound proves the order exactly.
  {
    auto fam = spec.family;
    bool need_det1 = fam == GroupFamily::SL || fam == GroupFamily::SU ||
                     fam == GroupFamily::Sp || fam == GroupFamily::OmegaPlus ||
                     fam == GroupFamily::OmegaMinus || fam == GroupFamily::OmegaOdd ||
                     (spec.r != 2 &&
                      (fam == GroupFamily::SOPlus || fam == GroupFamily::SOMinus ||
                       fam == GroupFamily::SOOdd));
    bool need_omega = (fam == GroupFamily::OmegaPlus || fam == GroupFamily::OmegaMinus ||
                       fam == GroupFamily::OmegaOdd) &&
                      n >= 3;
    for (const auto& g : mats) {
      if (need_det1 && determinant(g) != F.one())
        throw std::logic_error("generator outside the determinant-one group");
      if (need_omega && !in_omega(*w.form, g))
        throw std::logic_error("generator outside Omega");
    }
  }

  w.gens = wrap(mats);
  finalize_matrix_witness(w, order_name);

  // decorations
  if (!spec.ext.empty()) {
    for (const auto& e : spec.ext) {
      if (e == "field")
        w.gens.push_back(SemilinearMap{Mat::identity(F, n), 1, false});
      else if (e == "graph")
        w.gens.push_back(SemilinearMap{Mat::identity(F, n), 0, true});
      else if (e == "diagonal")
        w.gens.push_back(special_element(spec, "diagonal_rep"));
      else
        throw std::invalid_argument("unknown extension: " + e);
    }
    w.claimed_order = 0;  // no claim for decorated witnesses
  }
  return w;
}

// ---- coset invariants --------------------------------------------------------

int dickson_invariant(const ClassicalForm& form, const Mat& g) {
  if (form.F->r() != 2) throw std::invalid_argument("Dickson invariant needs characteristic 2");
  return mat_rank(g - Mat::identity(*form.F, g.rows)) % 2;
}

// Zassenhaus: the spinor norm of g is the square class of the discriminant
// of the Wall form [x(1-g), y(1-g)] := B(x, y(1-g)) on U = Im(1-g).  (For a
// reflection r_u this gives the class of Q(u), and the map is multiplicative
// on O(V), so it agrees with the reflection-product definition.)
int spinor_norm(const ClassicalForm& form, const Mat& g) {
  const Fq& F = *form.F;
  if (F.r() == 2) throw std::invalid_argument("spinor norm needs odd characteristic");
  const int n = form.n;
  Mat m = Mat::identity(F, n) - g;  // row i is e_i (1 - g)
  int k = mat_rank(m);
  if (k == 0) return 0;
  // greedy row subset forming a basis of U, remembering the preimages e_i
  std::vector<int> idx;
  {
    Mat sub(F, 0, n);
    for (int i = 0; i < n && (int)idx.size() < k; ++i) {
      Mat trial(F, (int)idx.size() + 1, n);
      for (size_t t = 0; t < idx.size(); ++t)
        for (int j = 0; j < n; ++j) trial.at((int)t, j) = m.at(idx[t], j);
      for (int j = 0; j < n; ++j) trial.at((int)idx.size(), j) = m.at(i, j);
      if (mat_rank(trial) == (int)idx.size() + 1) idx.push_back(i);
    }
  }
  Mat wall(F, k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      // B(e_{idx[i]}, row idx[j] of m)
      int s = 0;
      for (int t = 0; t < n; ++t) s = F.add(s, F.mul(form.gram.at(idx[i], t), m.at(idx[j], t)));
      wall.at(i, j) = s;
    }
  int d = determinant(wall);
  if (d == 0) throw std::logic_error("spinor norm: Wall form is degenerate");
  return F.log(d) % 2;
}

bool in_omega(const ClassicalForm& form, const Mat& g) {
  if (!is_isometry(form, g)) return false;
  if (form.F->r() == 2) return dickson_invariant(form, g) == 0;
  if (determinant(g) != form.F->one()) return false;
  return spinor_norm(form, g) == 0;
}

// ---- special elements ---------------------------------------------------------

SemilinearMap special_element(const GroupSpec& spec, const std::string& kind,
                              const std::vector<long long>& params) {
  const bool unitary = spec.family == GroupFamily::SU || spec.family == GroupFamily::GU;
  const Fq& F = unitary ? field(spec.r, 2 * spec.f) : field(spec.r, spec.f);
  const int n = spec.n;
  const long long q = spec.q();
  auto lin = [](Mat m) { return SemilinearMap{std::move(m), 0, false}; };

  if (kind == "field_aut") {
    int e = params.empty() ? 1 : (int)params[0];
    return SemilinearMap{Mat::identity(F, n), e, false};
  }
  if (kind == "graph_aut") {
    if (spec.family != GroupFamily::SL && spec.family != GroupFamily::GL)
      throw std::invalid_argument("graph_aut supported for linear families only");
    return SemilinearMap{Mat::identity(F, n), 0, true};
  }
  if (kind == "transvection") {
    if (spec.family == GroupFamily::SL || spec.family == GroupFamily::GL) {
      Mat t = Mat::identity(F, n);
      t.at(0, 1) = F.one();
      return lin(t);
    }
    if (spec.family == GroupFamily::Sp) {
      auto form = standard_form(FormKind::symplectic, F, n);
      return lin(transvection_mat(form, basis_vec(n, e_idx(1)), 1));
    }
    throw std::invalid_argument("transvection: unsupported family");
  }
  if (kind == "unitary_transvection") {
    auto form = standard_form(FormKind::hermitian, F, n);
    auto ps = unitary_transvection_params(form, basis_vec(n, e_idx(1)));
    if (ps.empty()) throw std::logic_error("no unitary transvection parameter found");
    return lin(transvection_mat(form, basis_vec(n, e_idx(1)), ps[0]));
  }
  if (kind == "siegel" || kind == "parabolic_unipotent_z") {
    FormKind fk = (n % 2) ? FormKind::quadratic_odd
                          : (spec.family == GroupFamily::OmegaMinus ? FormKind::quadratic_minus
                                                                    : FormKind::quadratic_plus);
    auto form = standard_form(fk, F, n);
    int j = kind == "parabolic_unipotent_z" ? e_idx(2) : (params.empty() ? e_idx(2) : (int)params[0]);
    Mat g = siegel_mat(form, basis_vec(n, e_idx(1)), basis_vec(n, j));
    require_isometry(form, g, kind.c_str());
    return lin(g);
  }
  if (kind == "reflection" || kind == "so_minus_omega" || kind == "negated_reflection") {
    FormKind fk = (n % 2) ? FormKind::quadratic_odd
                          : ((spec.family == GroupFamily::OmegaMinus ||
                              spec.family == GroupFamily::SOMinus ||
                              spec.family == GroupFamily::GOMinus)
                                 ? FormKind::quadratic_minus
                                 : FormKind::quadratic_plus);
    auto form = standard_form(fk, F, n);
    auto vec_c = [&](long long c) {
      return vec_add(F, basis_vec(n, e_idx(1)),
                     vec_scale(F, F.pow(F.gen(), c), basis_vec(n, f_idx(n, 1))));
    };
    if (kind == "reflection") return lin(reflection_mat(form, vec_c(params.empty() ? 0 : params[0])));
    if (kind == "so_minus_omega") {
      if (spec.r == 2) return lin(reflection_mat(form, vec_c(0)));
      return lin(reflection_mat(form, vec_c(0)) * reflection_mat(form, vec_c(1)));
    }
    // negated_reflection
    if (spec.r == 2 || n % 2 == 0)
      throw std::invalid_argument("negated_reflection needs odd q and odd n");
    Mat r = reflection_mat(form, vec_c(params.empty() ? 0 : params[0]));
    return lin(r.scaled(F.neg(F.one())));
  }
  if (kind == "semisimple_diag") {
    long long k = params.empty() ? 1 : params[0];
    if (spec.family == GroupFamily::GL || spec.family == GroupFamily::SL) {
      Mat d = Mat::identity(F, n);
      d.at(0, 0) = F.pow(F.gen(), k);
      return lin(d);
    }
    if (unitary) {
      // pseudoreflection: eigenvalue zeta^k on a nonsingular vector,
      // identity on its perp
      auto form = standard_form(FormKind::hermitian, F, n);
      int zeta = F.pow(F.gen(), q - 1);  // norm-one, order q+1
      int lambda = F.pow(zeta, k);
      for (int dpow = 0; dpow < F.q() - 1; ++dpow) {
        std::vector<int> v = vec_add(
            F, basis_vec(n, e_idx(1)),
            vec_scale(F, F.exp(dpow), basis_vec(n, f_idx(n, 1))));
        int bvv = form.bilin(v, v);
        if (bvv == 0) continue;
        int binv = F.inv(bvv);
        Mat g = map_matrix(F, n, [&](std::vector<int> x) {
          int c = F.mul(F.sub(lambda, F.one()), F.mul(form.bilin(x, v), binv));
          return vec_add(F, std::move(x), vec_scale(F, c, v));
        });
        if (is_isometry(form, g)) return lin(g);
      }
      throw std::logic_error("no unitary pseudoreflection found");
    }
    throw std::invalid_argument("semisimple_diag: unsupported family");
  }
  if (kind == "singer_torus") {
    if (n != 2) throw std::invalid_argument("singer_torus implemented for n = 2");
    const Fq& E = field(spec.r, 2 * spec.f);
    SubfieldEmbed down(F, E);
    int delta = E.pow(E.gen(), q - 1);  // order q+1
    int tr = E.add(delta, E.frobenius(delta, spec.f));
    int nm = E.mul(delta, E.frobenius(delta, spec.f));
    int tr_s = down.down(tr), nm_s = down.down(nm);
    if (tr_s < 0 || nm_s < 0) throw std::logic_error("trace/norm not in base field");
    Mat c = Mat::from_rows(F, {{0, 1}, {F.neg(nm_s), tr_s}});
    return lin(c);
  }
  if (kind == "diagonal_rep") {
    // coset representative of the diagonal extension
    switch (spec.family) {
      case GroupFamily::SL: {
        Mat d = Mat::identity(F, n);
        d.at(0, 0) = F.gen();
        return lin(d);
      }
      case GroupFamily::SU: {
        Mat d = Mat::identity(F, n);
        d.at(0, 0) = F.gen();
        d.at(n - 1, n - 1) = F.inv(F.frobenius(F.gen(), spec.f));
        return lin(d);
      }
      case GroupFamily::Sp: {
        // similitude: e_i -> e_i, f_i -> gen * f_i scales the form by gen
        Mat d = Mat::identity(F, n);
        for (int i = 1; i <= n / 2; ++i) d.at(f_idx(n, i), f_idx(n, i)) = F.gen();
        return lin(d);
      }
      case GroupFamily::OmegaPlus:
      case GroupFamily::OmegaMinus:
      case GroupFamily::OmegaOdd:
        return special_element(spec, "so_minus_omega");
      default: throw std::invalid_argument("diagonal_rep: unsupported family");
    }
  }
  throw std::invalid_argument("unknown special element kind: " + kind);
}

// ---- embeddings ----------------------------------------------------------------

GroupWitness subfield_reinterpret(const GroupWitness& inner, const Fq& big) {
  if (!inner.is_matrix_group()) throw std::invalid_argument("matrix witness required");
  SubfieldEmbed emb(*inner.F, big);
  GroupWitness out = inner;
  out.spec.r = big.r();
  out.spec.f = big.f();
  out.F = &big;
  out.gens.clear();
  for (const auto& g : inner.gens) {
    if (g.frob_e || g.duality) throw std::invalid_argument("cannot reinterpret semilinear maps");
    Mat m(big, g.m.rows, g.m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) m.a[i] = emb(g.m.a[i]);
    out.gens.push_back(SemilinearMap{std::move(m), 0, false});
  }
  if (inner.form) out.form = extend_scalars_form(*inner.form, emb);
  return out;
}

namespace {

// Solves for the subspace of `span` (rows) orthogonal to each of vs.
std::vector<std::vector<int>> perp_within(const ClassicalForm& form,
                                          const std::vector<std::vector<int>>& span,
                                          const std::vector<std::vector<int>>& vs) {
  const Fq& F = *form.F;
  // coefficient matrix: rows index span vectors, cols index constraints
  int k = (int)span.size(), c = (int)vs.size();
  Mat sys(F, k, c);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < c; ++j) sys.at(i, j) = form.bilin(span[i], vs[j]);
  // nullspace of sys^T x = 0 where x are coefficients on span
  RrefResult rf = rref(sys.transpose());
  std::vector<int> free_cols;
  for (int col = 0; col < k; ++col)
    if (std::find(rf.pivots.begin(), rf.pivots.end(), col) == rf.pivots.end())
      free_cols.push_back(col);
  std::vector<std::vector<int>> out;
  for (int fc : free_cols) {
    std::vector<int> coef(k, 0);
    coef[fc] = F.one();
    for (size_t pi = 0; pi < rf.pivots.size(); ++pi)
      coef[rf.pivots[pi]] = F.neg(rf.m.at((int)pi, fc));
    std::vector<int> v(form.n, 0);
    for (int i = 0; i < k; ++i)
      v = vec_add(F, std::move(v), vec_scale(F, coef[i], span[i]));
    out.push_back(std::move(v));
  }
  return out;
}

// Finds a nonzero singular vector in the span (random search with
// deterministic fallback); empty if the span is anisotropic.
std::vector<int> find_singular(const ClassicalForm& form,
                               const std::vector<std::vector<int>>& span, std::mt19937_64& rng) {
  const Fq& F = *form.F;
  int k = (int)span.size();
  long long total = 1;
  for (int i = 0; i < k && total <= (1 << 20); ++i) total *= F.q();
  auto make = [&](const std::vector<int>& coef) {
    std::vector<int> v(form.n, 0);
    for (int i = 0; i < k; ++i) v = vec_add(F, std::move(v), vec_scale(F, coef[i], span[i]));
    return v;
  };
  if (total <= (1 << 16)) {  // exhaustive
    std::vector<int> coef(k, 0);
    for (long long idx = 1; idx < total; ++idx) {
      for (int i = 0; i < k; ++i) {
        coef[i] = (coef[i] + 1) % F.q();
        if (coef[i]) break;
      }
      auto v = make(coef);
      bool zero = true;
      for (int x : v) zero &= x == 0;
      if (!zero && form.qval(v) == 0) return v;
    }
    return {};
  }
  for (int t = 0; t < 4096; ++t) {
    std::vector<int> coef(k);
    for (auto& x : coef) x = (int)(rng() % F.q());
    auto v = make(coef);
    bool zero = true;
    for (int x : v) zero &= x == 0;
    if (!zero && form.qval(v) == 0) return v;
  }
  return {};
}

// Returns rows b_1..b_n (basis) whose Gram/quad values under `form` equal
// those of the standard form of the same kind.
Mat reduce_to_standard(const ClassicalForm& form) {
  const Fq& F = *form.F;
  const int n = form.n;
  ClassicalForm std_form = standard_form(form.kind, F, n);
  std::mt19937_64 rng(777);

  std::vector<std::vector<int>> span;
  for (int i = 0; i < n; ++i) span.push_back(basis_vec(n, i));
  std::vector<std::vector<int>> es, fs;
  int tail = (form.kind == FormKind::quadratic_odd) ? 1
             : (form.kind == FormKind::quadratic_minus) ? 2
                                                        : 0;
  while ((int)span.size() > tail) {
    std::vector<int> u = find_singular(form, span, rng);
    if (u.empty()) throw std::logic_error("form has smaller Witt index than its kind claims");
    // partner with B(u, z) != 0
    std::vector<int> z;
    for (const auto& cand : span)
      if (form.bilin(u, cand) != 0) {
        z = cand;
        break;
      }
    if (z.empty()) throw std::logic_error("degenerate form in reduction");
    z = vec_scale(F, F.inv(form.bilin(u, z)), z);
    // make the partner singular: f = z - Q(z) u
    std::vector<int> fvec = vec_add(F, z, vec_scale(F, F.neg(form.qval(z)), u));
    if (form.qval(fvec) != 0 || form.bilin(u, fvec) != F.one())
      throw std::logic_error("hyperbolic pair construction failed");
    es.push_back(u);
    fs.push_back(fvec);
    span = perp_within(form, span, {u, fvec});
  }

  std::vector<std::vector<int>> mid;
  if (tail == 1) {
    // scale so Q matches the standard middle value
    int target = std_form.qval(basis_vec(n, n / 2));
    std::vector<int> wv = span.at(0);
    int qw = form.qval(wv);
    bool ok = false;
    for (int s = 1; s < F.q() && !ok; ++s)
      if (F.mul(F.mul(s, s), qw) == target) {
        mid.push_back(vec_scale(F, s, wv));
        ok = true;
      }
    if (!ok) throw std::logic_error("middle vector square class mismatch");
  } else if (tail == 2) {
    // align the anisotropic pair, sitting at indices m-1 and m of the
    // standard minus form, by exhaustive search over the residual plane
    int m = n / 2;
    std::vector<int> sa = basis_vec(n, m - 1), sb = basis_vec(n, m);
    int ta = std_form.qval(sa), tb = std_form.qval(sb), tab = std_form.bilin(sa, sb);
    bool ok = false;
    for (int c1 = 1; c1 < F.q() * F.q() && !ok; ++c1)
      for (int c2 = 1; c2 < F.q() * F.q() && !ok; ++c2) {
        std::vector<int> x = vec_add(F, vec_scale(F, c1 % F.q(), span[0]),
                                     vec_scale(F, c1 / F.q(), span[1]));
        std::vector<int> y = vec_add(F, vec_scale(F, c2 % F.q(), span[0]),
                                     vec_scale(F, c2 / F.q(), span[1]));
        if (form.qval(x) == ta && form.qval(y) == tb && form.bilin(x, y) == tab &&
            mat_rank(Mat::from_rows(F, {x, y})) == 2) {
          mid = {x, y};
          ok = true;
        }
      }
    if (!ok) throw std::logic_error("anisotropic tail alignment failed");
  }

  // assemble rows in standard order: e_1..e_m, tail, f_m..f_1
  Mat R(F, n, n);
  int row = 0;
  for (const auto& v : es) {
    for (int j = 0; j < n; ++j) R.at(row, j) = v[j];
    ++row;
  }
  for (const auto& v : mid) {
    for (int j = 0; j < n; ++j) R.at(row, j) = v[j];
    ++row;
  }
  for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
    for (int j = 0; j < n; ++j) R.at(row, j) = (*it)[j];
    ++row;
  }

  // verify: the transported values equal the standard ones
  for (int i = 0; i < n; ++i) {
    std::vector<int> bi(R.a.begin() + (size_t)i * n, R.a.begin() + (size_t)(i + 1) * n);
    if (form.qval(bi) != std_form.qval(basis_vec(n, i)))
      throw std::logic_error("reduction: Q mismatch");
    for (int j = 0; j < n; ++j) {
      std::vector<int> bj(R.a.begin() + (size_t)j * n, R.a.begin() + (size_t)(j + 1) * n);
      if (form.bilin(bi, bj) != std_form.bilin(basis_vec(n, i), basis_vec(n, j)))
        throw std::logic_error("reduction: Gram mismatch");
    }
  }
  return R;
}

}  // namespace

Mat form_transport(const ClassicalForm& src, const ClassicalForm& dst) {
  if (!src.is_quadratic() || !dst.is_quadratic())
    throw std::invalid_argument("form_transport handles quadratic forms");
  if (src.F != dst.F || src.n != dst.n || src.kind != dst.kind)
    throw std::invalid_argument("form_transport: incompatible forms");
  Mat rs = reduce_to_standard(src), rd = reduce_to_standard(dst);
  // x (src coords) -> coords wrt rs -> dst coords via rd
  return rs.inverse() * rd;
}

namespace {

// Builds the quadratic form over the small field for a blown-up space,
// given Q on big-field basis vectors expressed through a value callback.
ClassicalForm blowup_form(const Fq& small, int big_n, FormKind guess_plus, FormKind guess_minus,
                          const std::function<int(const std::vector<int>&)>& qbig,
                          const std::function<int(const std::vector<int>&, const std::vector<int>&)>& bbig) {
  ClassicalForm form;
  form.F = &small;
  form.n = big_n;
  Mat p(small, big_n, big_n);
  for (int i = 0; i < big_n; ++i) {
    p.at(i, i) = qbig(basis_vec(big_n, i));
    for (int j = i + 1; j < big_n; ++j) p.at(i, j) = bbig(basis_vec(big_n, i), basis_vec(big_n, j));
  }
  form.quad = upper_triangular_fold(p);
  // polarization
  Mat g(small, big_n, big_n);
  for (int i = 0; i < big_n; ++i)
    for (int j = 0; j < big_n; ++j)
      g.at(i, j) = i == j ? small.add(qbig(basis_vec(big_n, i)), qbig(basis_vec(big_n, i)))
                          : bbig(basis_vec(big_n, i), basis_vec(big_n, j));
  // B(x,x) = 2Q(x)
  for (int i = 0; i < big_n; ++i) g.at(i, i) = small.mul(small.from_int(2), p.at(i, i));
  form.gram = g;
  // decide the type by counting singular projective points
  form.kind = guess_minus;
  auto try_kind = [&](FormKind k) {
    form.kind = k;
    auto want = standard_form(k, small, big_n);
    return singular_point_domain(form).size() == singular_point_domain(want).size();
  };
  if (!try_kind(guess_minus) && !try_kind(guess_plus))
    throw std::logic_error("blown-up form matches neither type");
  return form;
}

GroupWitness finish_blowup(const GroupWitness& inner, const Fq& small, int big_n,
                           ClassicalForm&& bform, std::vector<Mat>&& big_gens) {
  ClassicalForm target = standard_form(bform.kind, small, big_n);
  Mat T = form_transport(bform, target);
  Mat Tinv = T.inverse();
  GroupWitness out;
  out.spec = inner.spec;  // family records the abstract group
  out.spec.n = big_n;
  out.spec.r = small.r();
  out.spec.f = small.f();
  out.F = &small;
  out.form = target;
  for (auto& g : big_gens) {
    Mat h = Tinv * g * T;
    require_isometry(target, h, "blown-up generator");
    out.gens.push_back(SemilinearMap{std::move(h), 0, false});
  }
  out.claimed_order = inner.claimed_order;
  return out;
}

}  // namespace

GroupWitness restrict_scalars_unitary(const GroupWitness& inner) {
  if (!inner.form || inner.form->kind != FormKind::hermitian)
    throw std::invalid_argument("hermitian witness required");
  const Fq& E = *inner.F;  // GF(q^2)
  const Fq& small = field(E.r(), E.f() / 2);
  SubfieldEmbed emb(small, E);
  int m = inner.spec.n, big_n = 2 * m;
  const ClassicalForm& h = *inner.form;

  // small-field vector -> big-field vector via the power basis {1, g}
  auto up = [&](const std::vector<int>& v) {
    std::vector<int> V(m, 0);
    for (int j = 0; j < m; ++j)
      for (int t = 0; t < 2; ++t)
        V[j] = E.add(V[j], E.mul(emb(v[2 * j + t]), E.pow(E.gen(), t)));
    return V;
  };
  auto down = [&](int x) {
    int d = emb.down(x);
    if (d < 0) throw std::logic_error("trace value escaped the base field");
    return d;
  };
  auto qbig = [&](const std::vector<int>& v) { return down(h.bilin(up(v), up(v))); };
  auto bbig = [&](const std::vector<int>& x, const std::vector<int>& y) {
    auto X = up(x), Y = up(y);
    return down(E.add(h.bilin(X, Y), h.bilin(Y, X)));
  };
  ClassicalForm bform =
      blowup_form(small, big_n, FormKind::quadratic_plus, FormKind::quadratic_minus, qbig, bbig);

  std::vector<Mat> big_gens;
  for (const auto& g : inner.gens) {
    if (g.frob_e || g.duality) throw std::invalid_argument("cannot blow up semilinear maps");
    big_gens.push_back(restrict_scalars(g.m, emb));
  }
  return finish_blowup(inner, small, big_n, std::move(bform), std::move(big_gens));
}

GroupWitness restrict_scalars_orthogonal(const GroupWitness& inner) {
  if (!inner.form || !inner.form->is_quadratic())
    throw std::invalid_argument("quadratic witness required");
  const Fq& E = *inner.F;
  if (E.f() % 2) throw std::invalid_argument("entry field must be a square extension");
  const Fq& small = field(E.r(), E.f() / 2);
  SubfieldEmbed emb(small, E);
  int m = inner.spec.n, big_n = 2 * m;
  const ClassicalForm& P = *inner.form;
  int half = small.f();

  auto up = [&](const std::vector<int>& v) {
    std::vector<int> V(m, 0);
    for (int j = 0; j < m; ++j)
      for (int t = 0; t < 2; ++t)
        V[j] = E.add(V[j], E.mul(emb(v[2 * j + t]), E.pow(E.gen(), t)));
    return V;
  };
  auto tr_down = [&](int x) {
    int t = E.add(x, E.frobenius(x, half));
    int d = emb.down(t);
    if (d < 0) throw std::logic_error("trace value escaped the base field");
    return d;
  };
  auto qbig = [&](const std::vector<int>& v) { return tr_down(P.qval(up(v))); };
  auto bbig = [&](const std::vector<int>& x, const std::vector<int>& y) {
    return tr_down(P.bilin(up(x), up(y)));
  };
  ClassicalForm bform =
      blowup_form(small, big_n, FormKind::quadratic_plus, FormKind::quadratic_minus, qbig, bbig);

  std::vector<Mat> big_gens;
  for (const auto& g : inner.gens) {
    if (g.frob_e || g.duality) throw std::invalid_argument("cannot blow up semilinear maps");
    big_gens.push_back(restrict_scalars(g.m, emb));
  }
  return finish_blowup(inner, small, big_n, std::move(bform), std::move(big_gens));
}

}  // namespace cgt
