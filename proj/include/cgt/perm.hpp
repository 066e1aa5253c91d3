#pragma once
// Permutation-group core: permutations over dense integer domains, orbit
// computation (parallel frontier with a serial reference path), deterministic
// Schreier-Sims with base/strong-generator structure, membership by sifting,
// point stabilizers, exhaustive small-group enumeration, and sorted-id binary
// dumps for resumable large-domain runs.

#include <cstdint>
#include <string>
#include <vector>

#include "cgt/orders.hpp"

namespace cgt {

using Pt = uint32_t;

struct Perm {
  std::vector<Pt> img;

  Perm() = default;
  explicit Perm(size_t n) : img(n) {
    for (size_t i = 0; i < n; ++i) img[i] = (Pt)i;
  }
  static Perm identity(size_t n) { return Perm(n); }
  // one-line cycle notation on 0-based points, e.g. {{0,1,2},{3,4}}
  static Perm from_cycles(size_t n, const std::vector<std::vector<Pt>>& cycles);

  size_t size() const { return img.size(); }
  Pt operator()(Pt x) const { return img[x]; }

  // apply *this first, then o
  Perm operator*(const Perm& o) const;
  Perm inverse() const;
  bool is_identity() const;
  bool operator==(const Perm& o) const { return img == o.img; }
  bool operator!=(const Perm& o) const { return img != o.img; }
  bool operator<(const Perm& o) const { return img < o.img; }
  long long order() const;  // lcm of cycle lengths (throws if > 2^62)
};

// BFS orbit of seed; output sorted ascending.  The parallel path shards the
// frontier across OpenMP threads; both paths return identical output.
std::vector<Pt> orbit(const std::vector<Perm>& gens, Pt seed, bool parallel = true);

// All orbits, each sorted, ordered by minimal element.
std::vector<std::vector<Pt>> orbits(const std::vector<Perm>& gens, size_t n);

bool is_transitive(const std::vector<Perm>& gens, size_t domain_size);

// true iff all cycles of p have the same length.
bool is_semiregular(const Perm& p);

struct BSGS {
  size_t n = 0;
  std::vector<Pt> base;
  std::vector<std::vector<Perm>> level_gens;  // gens fixing base[0..i-1]
  struct Transversal {
    Pt beta = 0;
    std::vector<int32_t> via;     // generator index used to reach point, -1 root, -2 unseen
    std::vector<Pt> parent;       // predecessor in the BFS tree
    std::vector<Pt> orbit_pts;    // BFS discovery order
    bool contains(Pt p) const { return via[p] != -2; }
  };
  std::vector<Transversal> trans;
  Big order = 1;

  // coset representative mapping base[level] to p (p must lie in the orbit)
  Perm rep(int level, Pt p) const;
  Perm rep_inverse(int level, Pt p) const;
};

// Deterministic Schreier-Sims: every Schreier generator is verified to sift
// to the identity before the structure is returned.  Stabilizer generating
// sets are compressed to <= 32 random subproducts (seeded) when they grow
// past that bound; the verification pass re-adds anything lost.
// If base_hint is nonempty its points are used as the leading base points.
// With verify = false the deterministic pass is skipped: the resulting
// .order is then only a proven lower bound on the true group order (the
// orbit product of any partial chain divides into the group).
BSGS schreier_sims(const std::vector<Perm>& gens, const std::vector<Pt>& base_hint = {},
                   uint64_t seed = 1, bool verify = true);

// Strips p through the chain; returns true iff the residue is the identity.
bool membership(const BSGS& b, const Perm& p);

// Generators of the stabilizer of `point` (builds a chain based at the point;
// returns the level-1 strong generators).
std::vector<Perm> stabilizer(const std::vector<Perm>& gens, Pt point, uint64_t seed = 1);

// Exhaustive element list (sorted) of the generated group; throws if more
// than cap elements are discovered.
std::vector<Perm> enumerate_small(const std::vector<Perm>& gens, size_t cap = 1u << 21);

// Sorted-id binary dump: 16-byte header (magic, version, domain size N,
// count), then count uint32 ids.
void dump_ids(const std::string& path, uint32_t domain_size, const std::vector<Pt>& ids);
std::vector<Pt> load_ids(const std::string& path, uint32_t* domain_size = nullptr);

}  // namespace cgt
