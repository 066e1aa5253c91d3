#include "cgt/perm.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace cgt {

Perm Perm::from_cycles(size_t n, const std::vector<std::vector<Pt>>& cycles) {
  Perm p(n);
  for (const auto& c : cycles) {
    for (size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= n) throw std::out_of_range("cycle point out of range");
      p.img[c[i]] = c[(i + 1) % c.size()];
    }
  }
  // bijectivity check
  std::vector<uint8_t> seen(n, 0);
  for (Pt v : p.img) {
    if (seen[v]) throw std::invalid_argument("cycles are not disjoint");
    seen[v] = 1;
  }
  return p;
}

Perm Perm::operator*(const Perm& o) const {
  if (size() != o.size()) throw std::invalid_argument("size mismatch");
  Perm r;
  r.img.resize(size());
  for (size_t i = 0; i < size(); ++i) r.img[i] = o.img[img[i]];
  return r;
}

Perm Perm::inverse() const {
  Perm r;
  r.img.resize(size());
  for (size_t i = 0; i < size(); ++i) r.img[img[i]] = (Pt)i;
  return r;
}

bool Perm::is_identity() const {
  for (size_t i = 0; i < size(); ++i)
    if (img[i] != i) return false;
  return true;
}

long long Perm::order() const {
  long long l = 1;
  std::vector<uint8_t> seen(size(), 0);
  for (size_t i = 0; i < size(); ++i) {
    if (seen[i]) continue;
    long long len = 0;
    for (Pt j = (Pt)i; !seen[j]; j = img[j]) {
      seen[j] = 1;
      ++len;
    }
    long long g = std::gcd(l, len);
    if (l / g > (4611686018427387904LL / len)) throw std::overflow_error("permutation order overflow");
    l = l / g * len;
  }
  return l;
}

std::vector<Pt> orbit(const std::vector<Perm>& gens, Pt seed, bool parallel) {
  if (gens.empty()) return {seed};
  size_t n = gens[0].size();
  std::vector<uint8_t> visited(n, 0);
  std::vector<Pt> frontier{seed};
  visited[seed] = 1;
  std::vector<Pt> all{seed};
  while (!frontier.empty()) {
    std::vector<Pt> next;
    if (parallel && frontier.size() > 4096) {
      int nt = omp_get_max_threads();
      std::vector<std::vector<Pt>> buf(nt);
#pragma omp parallel for schedule(static)
      for (size_t i = 0; i < frontier.size(); ++i) {
        auto& local = buf[omp_get_thread_num()];
        for (const Perm& g : gens) {
          Pt y = g.img[frontier[i]];
          if (!visited[y]) local.push_back(y);  // benign race: deduped below
        }
      }
      for (auto& b : buf)
        for (Pt y : b)
          if (!visited[y]) {
            visited[y] = 1;
            next.push_back(y);
          }
    } else {
      for (Pt x : frontier)
        for (const Perm& g : gens) {
          Pt y = g.img[x];
          if (!visited[y]) {
            visited[y] = 1;
            next.push_back(y);
          }
        }
    }
    all.insert(all.end(), next.begin(), next.end());
    frontier.swap(next);
  }
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<std::vector<Pt>> orbits(const std::vector<Perm>& gens, size_t n) {
  std::vector<uint8_t> done(n, 0);
  std::vector<std::vector<Pt>> out;
  for (Pt s = 0; s < n; ++s) {
    if (done[s]) continue;
    auto o = orbit(gens, s, false);
    for (Pt x : o) done[x] = 1;
    out.push_back(std::move(o));
  }
  return out;
}

bool is_transitive(const std::vector<Perm>& gens, size_t domain_size) {
  if (domain_size == 0) return true;
  return orbit(gens, 0).size() == domain_size;
}

bool is_semiregular(const Perm& p) {
  std::vector<uint8_t> seen(p.size(), 0);
  size_t common = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    size_t len = 0;
    for (Pt j = (Pt)i; !seen[j]; j = p.img[j]) {
      seen[j] = 1;
      ++len;
    }
    if (common == 0)
      common = len;
    else if (len != common)
      return false;
  }
  return true;
}

// ---- Schreier-Sims ----------------------------------------------------------

namespace {

void rebuild_transversal(BSGS::Transversal& t, const std::vector<Perm>& gens, size_t n) {
  t.via.assign(n, -2);
  t.parent.assign(n, 0);
  t.orbit_pts.clear();
  t.via[t.beta] = -1;
  t.orbit_pts.push_back(t.beta);
  for (size_t head = 0; head < t.orbit_pts.size(); ++head) {
    Pt x = t.orbit_pts[head];
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      Pt y = gens[gi].img[x];
      if (t.via[y] == -2) {
        t.via[y] = (int32_t)gi;
        t.parent[y] = x;
        t.orbit_pts.push_back(y);
      }
    }
  }
}

}  // namespace

Perm BSGS::rep(int level, Pt p) const {
  const Transversal& t = trans[level];
  if (!t.contains(p)) throw std::invalid_argument("point not in fundamental orbit");
  std::vector<int32_t> path;  // gen indices along root -> p
  for (Pt x = p; t.via[x] != -1; x = t.parent[x]) path.push_back(t.via[x]);
  std::reverse(path.begin(), path.end());
  Perm u = Perm::identity(n);
  for (int32_t gi : path) u = u * level_gens[level][gi];
  return u;
}

Perm BSGS::rep_inverse(int level, Pt p) const { return rep(level, p).inverse(); }

namespace {

// strips g through levels [from, ...); returns level where it got stuck
// (== base.size() if it fixes all base points); g becomes the residue.
int strip(const BSGS& b, Perm& g, int from) {
  for (int i = from; i < (int)b.base.size(); ++i) {
    Pt p = g.img[b.base[i]];
    if (!b.trans[i].contains(p)) return i;
    g = g * b.rep_inverse(i, p);
  }
  return (int)b.base.size();
}

// Adds g (which must fix base[0..from-1]) to levels from..j where j is the
// first level >= from whose base point g moves (extending the base if
// needed).  Adding across the whole range keeps the strong generating sets
// nested: S[l] generates a subgroup of <S[l-1]>.  Returns j.
int add_generator(BSGS& b, const Perm& g, int from) {
  int j = from;
  while (j < (int)b.base.size() && g.img[b.base[j]] == b.base[j]) ++j;
  if (j == (int)b.base.size()) {
    // extend base with a point g moves
    Pt beta = 0;
    bool found = false;
    for (size_t x = 0; x < b.n; ++x)
      if (g.img[x] != x) {
        beta = (Pt)x;
        found = true;
        break;
      }
    if (!found) return -1;  // identity, nothing to add
    b.base.push_back(beta);
    b.level_gens.emplace_back();
    b.trans.emplace_back();
    b.trans.back().beta = beta;
  }
  for (int l = from; l <= j && l < (int)b.base.size(); ++l) b.level_gens[l].push_back(g);
  return j;
}

constexpr size_t kMaxLevelGens = 32;

void compress_level(BSGS& b, int level, std::mt19937_64& rng) {
  auto& S = b.level_gens[level];
  if (S.size() <= kMaxLevelGens) return;
  std::vector<Perm> reduced;
  // random subproducts generate the same subgroup with high probability; the
  // verification pass re-adds anything that was lost
  for (size_t k = 0; k < kMaxLevelGens; ++k) {
    Perm p = Perm::identity(b.n);
    bool nontrivial = false;
    for (const Perm& s : S)
      if (rng() & 1) {
        p = p * s;
        nontrivial = true;
      }
    if (nontrivial && !p.is_identity()) reduced.push_back(std::move(p));
  }
  if (!reduced.empty()) S = std::move(reduced);
}

}  // namespace

BSGS schreier_sims(const std::vector<Perm>& gens, const std::vector<Pt>& base_hint,
                   uint64_t seed, bool verify) {
  BSGS b;
  b.n = gens.empty() ? 0 : gens[0].size();
  std::mt19937_64 rng(seed);

  for (Pt beta : base_hint) {
    b.base.push_back(beta);
    b.level_gens.emplace_back();
    b.trans.emplace_back();
    b.trans.back().beta = beta;
  }
  for (const Perm& g : gens)
    if (!g.is_identity()) add_generator(b, g, 0);
  if (b.base.empty()) {
    b.order = 1;
    return b;
  }
  for (int i = 0; i < (int)b.base.size(); ++i)
    rebuild_transversal(b.trans[i], b.level_gens[i], b.n);

  // randomized construction: sift products of random generators / coset reps
  auto random_element = [&]() {
    Perm p = Perm::identity(b.n);
    for (int steps = 0; steps < 12; ++steps) {
      const Perm& s = gens[rng() % gens.size()];
      p = p * s;
      int lvl = (int)(rng() % b.base.size());
      const auto& pts = b.trans[lvl].orbit_pts;
      p = p * b.rep(lvl, pts[rng() % pts.size()]);
    }
    return p;
  };
  int consecutive_ok = 0;
  while (consecutive_ok < 24) {
    Perm g = random_element();
    strip(b, g, 0);
    if (g.is_identity()) {
      ++consecutive_ok;
      continue;
    }
    consecutive_ok = 0;
    // the level-0 orbit is closed under the full generator set, so the
    // residue always fixes base[0]; insert from level 1 to keep nesting
    int j = add_generator(b, g, 1);
    if (j >= 0) {
      for (int l = 1; l <= std::min(j, (int)b.base.size() - 1); ++l) {
        compress_level(b, l, rng);
        rebuild_transversal(b.trans[l], b.level_gens[l], b.n);
      }
    }
  }

  // deterministic verification: every Schreier generator must sift to identity
  int i = verify ? (int)b.base.size() - 1 : -1;
  while (i >= 0) {
    rebuild_transversal(b.trans[i], b.level_gens[i], b.n);
    bool clean = true;
    const auto& pts = b.trans[i].orbit_pts;
    for (size_t pi = 0; pi < pts.size() && clean; ++pi) {
      Pt p = pts[pi];
      Perm up = b.rep(i, p);
      for (size_t gi = 0; gi < b.level_gens[i].size() && clean; ++gi) {
        const Perm& s = b.level_gens[i][gi];
        Pt q = s.img[p];
        if (b.trans[i].via[q] == (int32_t)gi && b.trans[i].parent[q] == p)
          continue;  // tree edge: Schreier generator is trivial
        Perm h = up * s * b.rep_inverse(i, q);
        if (h.is_identity()) continue;
        strip(b, h, i + 1);
        if (h.is_identity()) continue;
        int j = add_generator(b, h, i + 1);
        if (j < 0) continue;
        for (int l = i + 1; l <= std::min(j, (int)b.base.size() - 1); ++l) {
          compress_level(b, l, rng);
          rebuild_transversal(b.trans[l], b.level_gens[l], b.n);
        }
        i = std::min(j, (int)b.base.size() - 1);
        clean = false;
      }
    }
    if (clean) --i;
  }

  b.order = 1;
  for (const auto& t : b.trans) b.order *= (long)t.orbit_pts.size();
  return b;
}

bool membership(const BSGS& b, const Perm& p) {
  if (b.n == 0) return p.is_identity();
  Perm g = p;
  strip(b, g, 0);
  return g.is_identity();
}

std::vector<Perm> stabilizer(const std::vector<Perm>& gens, Pt point, uint64_t seed) {
  BSGS b = schreier_sims(gens, {point}, seed);
  if (b.base.size() < 2) {
    // either the whole group fixes the point (orbit length 1) or the
    // stabilizer is trivial
    if (!b.trans.empty() && b.trans[0].orbit_pts.size() > 1) return {};
    std::vector<Perm> out;
    for (const Perm& g : gens)
      if (!g.is_identity()) out.push_back(g);
    return out;
  }
  return b.level_gens[1];
}

std::vector<Perm> enumerate_small(const std::vector<Perm>& gens, size_t cap) {
  size_t n = gens.empty() ? 0 : gens[0].size();
  struct VecHash {
    size_t operator()(const std::vector<Pt>& v) const {
      size_t h = 1469598103934665603ull;
      for (Pt x : v) {
        h ^= x;
        h *= 1099511628211ull;
      }
      return h;
    }
  };
  std::unordered_set<std::vector<Pt>, VecHash> seen;
  std::vector<Perm> frontier{Perm::identity(n)}, all{Perm::identity(n)};
  seen.insert(all[0].img);
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const Perm& x : frontier)
      for (const Perm& g : gens) {
        Perm y = x * g;
        if (seen.insert(y.img).second) {
          if (seen.size() > cap) throw std::length_error("enumerate_small cap exceeded");
          all.push_back(y);
          next.push_back(std::move(y));
        }
      }
    frontier.swap(next);
  }
  std::sort(all.begin(), all.end());
  return all;
}

// ---- binary dumps -----------------------------------------------------------

namespace {
constexpr uint32_t kMagic = 0x43475444;  // "CGTD"
constexpr uint32_t kVersion = 1;
}  // namespace

void dump_ids(const std::string& path, uint32_t domain_size, const std::vector<Pt>& ids) {
  FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  uint32_t header[4] = {kMagic, kVersion, domain_size, (uint32_t)ids.size()};
  std::fwrite(header, sizeof(header), 1, f);
  if (!ids.empty()) std::fwrite(ids.data(), sizeof(Pt), ids.size(), f);
  std::fclose(f);
}

std::vector<Pt> load_ids(const std::string& path, uint32_t* domain_size) {
  FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  uint32_t header[4];
  if (std::fread(header, sizeof(header), 1, f) != 1 || header[0] != kMagic ||
      header[1] != kVersion) {
    std::fclose(f);
    throw std::runtime_error("bad id-dump header: " + path);
  }
  std::vector<Pt> ids(header[3]);
  if (!ids.empty() && std::fread(ids.data(), sizeof(Pt), ids.size(), f) != ids.size()) {
    std::fclose(f);
    throw std::runtime_error("truncated id dump: " + path);
  }
  std::fclose(f);
  if (domain_size) *domain_size = header[2];
  return ids;
}

}  // namespace cgt
