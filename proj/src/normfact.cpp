#include "cgt/normfact.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace cgt {

namespace {

uint64_t fp(const Perm& p) {
  uint64_t h = 1469598103934665603ull;
  for (Pt v : p.img) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

long long now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

Big exact_div(const Big& a, const Big& b, const char* what) {
  if (b == 0 || a % b != 0) throw std::logic_error(std::string("non-integral index: ") + what);
  return a / b;
}

// Compresses a stabilizer generating set to <= 32 random subproducts whose
// chain order matches `target`; the Schreier generators themselves are exact
// (Schreier's lemma), so a matching order certifies the compressed set.
std::vector<Perm> compress_stab(const std::vector<Perm>& sgens, const Big& target, size_t n) {
  if (sgens.empty()) {
    if (target != 1) throw std::logic_error("empty stabilizer with nontrivial target order");
    return {};
  }
  if (sgens.size() <= 32 && schreier_sims(sgens).order == target) return sgens;
  std::mt19937_64 rng(97531);
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::vector<Perm> sub;
    for (int k = 0; k < 32; ++k) {
      Perm p = Perm::identity(n);
      bool any = false;
      for (const auto& g : sgens)
        if (rng() & 1) {
          p = p * g;
          any = true;
        }
      if (any && !p.is_identity()) sub.push_back(std::move(p));
    }
    if (!sub.empty() && schreier_sims(sub, {}, rng()).order == target) return sub;
  }
  if (schreier_sims(sgens).order == target) return sgens;
  throw std::logic_error("stabilizer generators do not reach the predicted order");
}

// Shared machinery for conjugation orbit-stabilizer runs.  `locate` must
// return the orbit index of a conjugate equal (as an orbit point) to z, or
// -1; `store` records a new point.  Returns the Schreier generators.
template <class Locate, class Store>
std::vector<Perm> conj_orbit_stab(const std::vector<Perm>& gens, const Perm& start,
                                  size_t cap, size_t* orbit_size, Locate&& locate,
                                  Store&& store) {
  std::vector<Perm> pts{start};
  std::vector<Perm> trans{Perm::identity(start.size())};
  store(start, 0);
  std::vector<Perm> sgens;
  std::unordered_map<uint64_t, std::vector<uint32_t>> sseen;
  for (size_t i = 0; i < pts.size(); ++i) {
    for (const auto& g : gens) {
      Perm z = conjugate(pts[i], g);
      int j = locate(z);
      if (j < 0) {
        if (pts.size() >= cap) throw std::length_error("conjugation orbit exceeds cap");
        pts.push_back(z);
        trans.push_back(trans[i] * g);
        store(pts.back(), (int)pts.size() - 1);
      } else {
        Perm c = trans[i] * g * trans[j].inverse();
        if (c.is_identity()) continue;
        uint64_t h = fp(c);
        auto& bucket = sseen[h];
        bool dup = false;
        for (uint32_t t : bucket) dup |= sgens[t] == c;
        if (!dup) {
          bucket.push_back((uint32_t)sgens.size());
          sgens.push_back(std::move(c));
        }
      }
    }
  }
  *orbit_size = pts.size();
  return sgens;
}

std::string json_big(const Big& b) { return b.get_str(); }

}  // namespace

Perm conjugate(const Perm& x, const Perm& g) { return g.inverse() * x * g; }

SubgroupWitness centralizer(const std::vector<Perm>& gens, const Big& group_order,
                            const Perm& x, size_t cap) {
  std::vector<Perm> pts_copy;
  std::unordered_map<uint64_t, std::vector<uint32_t>> idx;
  auto locate = [&](const Perm& z) -> int {
    auto it = idx.find(fp(z));
    if (it == idx.end()) return -1;
    for (uint32_t t : it->second)
      if (pts_copy[t] == z) return (int)t;
    return -1;
  };
  auto store = [&](const Perm& p, int id) {
    pts_copy.push_back(p);
    idx[fp(p)].push_back((uint32_t)id);
  };
  size_t orbit_size = 0;
  std::vector<Perm> sgens = conj_orbit_stab(gens, x, cap, &orbit_size, locate, store);
  Big target = exact_div(group_order, Big((unsigned long)orbit_size), "centralizer");
  SubgroupWitness w;
  w.gens = compress_stab(sgens, target, x.size());
  w.order = target;
  for (const auto& g : w.gens)
    if (conjugate(x, g) != x) throw std::logic_error("centralizer generator moves x");
  return w;
}

SubgroupWitness normalizer_cyclic(const std::vector<Perm>& gens, const Big& group_order,
                                  const Perm& x, size_t cap) {
  const long long ord = x.order();
  // power-invariant subgroup hash: XOR of the element fingerprints
  auto subgroup_hash = [&](const Perm& z) {
    uint64_t h = 0;
    Perm p = z;
    for (long long k = 1; k < ord; ++k) {
      h ^= fp(p);
      p = p * z;
    }
    return h;
  };
  auto same_subgroup = [&](const Perm& z, const Perm& y) {
    Perm p = y;
    for (long long k = 1; k < ord; ++k) {
      if (p == z) return true;
      p = p * y;
    }
    return false;
  };
  std::vector<Perm> pts_copy;
  std::unordered_map<uint64_t, std::vector<uint32_t>> idx;
  auto locate = [&](const Perm& z) -> int {
    auto it = idx.find(subgroup_hash(z));
    if (it == idx.end()) return -1;
    for (uint32_t t : it->second)
      if (same_subgroup(z, pts_copy[t])) return (int)t;
    return -1;
  };
  auto store = [&](const Perm& p, int id) {
    pts_copy.push_back(p);
    idx[subgroup_hash(p)].push_back((uint32_t)id);
  };
  size_t orbit_size = 0;
  std::vector<Perm> sgens = conj_orbit_stab(gens, x, cap, &orbit_size, locate, store);
  Big target = exact_div(group_order, Big((unsigned long)orbit_size), "normalizer");
  SubgroupWitness w;
  w.gens = compress_stab(sgens, target, x.size());
  w.order = target;
  for (const auto& g : w.gens)
    if (!same_subgroup(conjugate(x, g), x))
      throw std::logic_error("normalizer generator does not normalize <x>");
  return w;
}

std::vector<CyclicClassRep> cyclic_class_reps(const std::vector<Perm>& gens, size_t cap) {
  std::vector<Perm> all = enumerate_small(gens, cap);
  // canonical subgroup key: lexicographically minimal non-identity element
  auto canonical = [&](const Perm& z, long long p) {
    Perm best = z, cur = z;
    for (long long k = 2; k < p; ++k) {
      cur = cur * z;
      if (cur.img < best.img) best = cur;
    }
    return best;
  };
  std::map<std::vector<Pt>, int> subgroup_id;  // canonical rep -> index
  std::vector<Perm> reps;
  std::vector<long long> primes;
  std::map<long long, size_t> elems_of_order;
  for (const auto& e : all) {
    if (e.is_identity()) continue;
    long long o = e.order();
    if (!is_prime_ll(o)) continue;
    ++elems_of_order[o];
    Perm c = canonical(e, o);
    if (subgroup_id.emplace(c.img, (int)reps.size()).second) {
      reps.push_back(c);
      primes.push_back(o);
    }
  }
  // completeness: prime-order subgroups partition the elements of order p
  std::map<long long, size_t> subs_of_order;
  for (long long p : primes) ++subs_of_order[p];
  for (auto& [p, cnt] : subs_of_order)
    if (cnt * (size_t)(p - 1) != elems_of_order[p])
      throw std::logic_error("cyclic class enumeration is incomplete");

  // conjugacy classes by orbit closure over the canonical representatives
  std::vector<int> cls(reps.size(), -1);
  std::vector<CyclicClassRep> out;
  for (size_t i = 0; i < reps.size(); ++i) {
    if (cls[i] >= 0) continue;
    std::vector<int> frontier{(int)i};
    cls[i] = (int)i;
    size_t count = 1;
    int min_idx = (int)i;
    while (!frontier.empty()) {
      int t = frontier.back();
      frontier.pop_back();
      for (const auto& g : gens) {
        Perm z = canonical(conjugate(reps[t], g), primes[t]);
        auto it = subgroup_id.find(z.img);
        if (it == subgroup_id.end()) throw std::logic_error("conjugate escaped the subgroup set");
        if (cls[it->second] < 0) {
          cls[it->second] = (int)i;
          ++count;
          if (reps[it->second].img < reps[min_idx].img) min_idx = it->second;
          frontier.push_back(it->second);
        }
      }
    }
    CyclicClassRep r;
    r.rep = reps[min_idx];
    r.prime = primes[min_idx];
    r.class_size = count;
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [](const CyclicClassRep& a, const CyclicClassRep& b) {
    if (a.prime != b.prime) return a.prime < b.prime;
    return a.rep.img < b.rep.img;
  });
  for (size_t i = 0; i < out.size(); ++i) out[i].class_id = (int)i;
  return out;
}

std::vector<Perm> coset_action(const std::vector<Perm>& gens,
                               const std::vector<Perm>& subgroup_elements,
                               size_t* domain_size, size_t cap) {
  if (subgroup_elements.empty() || !subgroup_elements.front().is_identity())
    throw std::invalid_argument("coset_action needs a sorted element list with the identity");
  auto canonical = [&](const Perm& r) {
    Perm best = subgroup_elements[0] * r;
    for (size_t i = 1; i < subgroup_elements.size(); ++i) {
      Perm c = subgroup_elements[i] * r;
      if (c.img < best.img) best = c;
    }
    return best;
  };
  std::map<std::vector<Pt>, uint32_t> ids;
  std::vector<Perm> reps;
  Perm start = canonical(Perm::identity(gens.at(0).size()));
  ids.emplace(start.img, 0);
  reps.push_back(std::move(start));
  for (size_t i = 0; i < reps.size(); ++i)
    for (const auto& g : gens) {
      Perm c = canonical(reps[i] * g);
      if (ids.emplace(c.img, (uint32_t)reps.size()).second) {
        if (reps.size() >= cap) throw std::length_error("coset domain exceeds cap");
        reps.push_back(std::move(c));
      }
    }
  *domain_size = reps.size();
  std::vector<Perm> out;
  for (const auto& g : gens) {
    Perm p;
    p.img.resize(reps.size());
    for (size_t i = 0; i < reps.size(); ++i) p.img[i] = ids.at(canonical(reps[i] * g).img);
    out.push_back(std::move(p));
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::factorizes: return "factorizes";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive_cap: return "inconclusive-cap";
  }
  return "?";
}

std::string FactorizationReport::to_json() const {
  nlohmann::json j;
  j["group"] = group;
  j["line"] = line;
  j["params"] = params;
  j["strategy"] = strategy;
  j["orders"]["G"] = json_big(order_G);
  j["orders"]["X"] = json_big(order_X);
  j["orders"]["Y"] = json_big(order_Y);
  if (has_intersection) j["orders"]["XcapY"] = json_big(order_intersection);
  j["domain"]["kind"] = domain_kind;
  j["domain"]["size"] = domain_size;
  j["domain"]["orbit_lengths"] = orbit_lengths;
  j["verdict"] = cgt::to_string(verdict);
  j["seed"] = seed;
  j["elapsed_ms"] = elapsed_ms;
  return j.dump();
}

FactorizationReport test_factorization(const std::vector<Perm>& g_gens, const Big& group_order,
                                       const SubgroupWitness& X, const SubgroupWitness& Y,
                                       const std::string& strategy, size_t cap) {
  (void)g_gens;
  long long t0 = now_ms();
  FactorizationReport r;
  r.order_G = group_order;
  r.order_X = X.order;
  r.order_Y = Y.order;
  r.strategy = "enumerate-intersection";
  const SubgroupWitness& small = X.order <= Y.order ? X : Y;
  const SubgroupWitness& large = X.order <= Y.order ? Y : X;
  if (strategy != "auto" && strategy != "enumerate-intersection")
    throw std::invalid_argument("unknown strategy: " + strategy);
  if (small.order > (long)cap) {
    r.verdict = Verdict::inconclusive_cap;
    r.elapsed_ms = now_ms() - t0;
    return r;
  }
  std::vector<Perm> elems = small.gens.empty()
                                ? std::vector<Perm>{}
                                : enumerate_small(small.gens, cap);
  if (elems.empty()) elems.push_back(Perm::identity(large.gens.at(0).size()));
  if (Big((unsigned long)elems.size()) != small.order)
    throw std::logic_error("witness order does not match its element count");
  size_t cnt = 0;
  if (large.gens.empty()) {
    cnt = 1;  // trivial large factor: intersection is the identity
  } else {
    BSGS chain = schreier_sims(large.gens);
    if (chain.order != large.order)
      throw std::logic_error("witness order does not match its chain order");
    for (const auto& e : elems)
      if (membership(chain, e)) ++cnt;
  }
  r.has_intersection = true;
  r.order_intersection = (unsigned long)cnt;
  r.verdict = (X.order * Y.order == group_order * Big((unsigned long)cnt)) ? Verdict::factorizes
                                                                           : Verdict::fails;
  r.elapsed_ms = now_ms() - t0;
  return r;
}

FactorizationReport test_factorization_geometric(const Big& group_order, const Big& stab_order,
                                                 const std::vector<Perm>& partner_gens,
                                                 const Big& partner_order,
                                                 const std::string& domain_kind) {
  long long t0 = now_ms();
  FactorizationReport r;
  r.strategy = "geometric-transitivity";
  r.order_G = group_order;
  r.order_X = stab_order;
  r.order_Y = partner_order;
  r.domain_kind = domain_kind;
  size_t n = partner_gens.at(0).size();
  r.domain_size = n;
  if (stab_order * Big((unsigned long)n) != group_order) {
    r.verdict = Verdict::inconclusive_cap;  // X is not the stabilizer of a point here
    r.elapsed_ms = now_ms() - t0;
    return r;
  }
  for (const auto& o : orbits(partner_gens, n)) r.orbit_lengths.push_back(o.size());
  r.verdict = r.orbit_lengths.size() == 1 ? Verdict::factorizes : Verdict::fails;
  r.elapsed_ms = now_ms() - t0;
  return r;
}

FactorizationReport test_centralizer_factorization(const std::vector<Perm>& g_gens,
                                                   const Big& group_order, const Perm& x,
                                                   const Perm& y, size_t cap) {
  SubgroupWitness X = centralizer(g_gens, group_order, x);
  SubgroupWitness Y = centralizer(g_gens, group_order, y);
  return test_factorization(g_gens, group_order, X, Y, "auto", cap);
}

std::vector<FactorizationReport> explore_all_pairs(const std::vector<Perm>& gens, size_t cap) {
  Big go = schreier_sims(gens).order;
  std::vector<CyclicClassRep> reps = cyclic_class_reps(gens, cap);
  std::vector<SubgroupWitness> norms;
  for (const auto& r : reps) norms.push_back(normalizer_cyclic(gens, go, r.rep));
  std::vector<std::pair<int, int>> pairs;
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = i; j < reps.size(); ++j)
      if (norms[i].order * norms[j].order >= go) pairs.emplace_back((int)i, (int)j);
  std::vector<FactorizationReport> slots(pairs.size());
  std::vector<char> keep(pairs.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (size_t t = 0; t < pairs.size(); ++t) {
    auto [i, j] = pairs[t];
    FactorizationReport r = test_factorization(gens, go, norms[i], norms[j], "auto", cap);
    if (r.verdict == Verdict::factorizes) {
      r.class_x = i;
      r.class_y = j;
      slots[t] = std::move(r);
      keep[t] = 1;
    }
  }
  std::vector<FactorizationReport> out;
  for (size_t t = 0; t < pairs.size(); ++t)
    if (keep[t]) out.push_back(std::move(slots[t]));
  return out;
}

}  // namespace cgt
