#pragma once
// Centralizers and normalizers of cyclic subgroups inside permutation groups
// (orbit-stabilizer over conjugation actions with Schreier generators),
// representatives of prime-order cyclic subgroup classes, coset actions, the
// two factorization tests (intersection counting and geometric
// transitivity), and the exhaustive pair explorer.

#include <cstdint>
#include <string>
#include <vector>

#include "cgt/perm.hpp"

namespace cgt {

// g^{-1} x g under the left-to-right composition convention.
Perm conjugate(const Perm& x, const Perm& g);

struct SubgroupWitness {
  std::vector<Perm> gens;  // <= 32 generators
  Big order = 1;           // exact
};

// Stabilizer of x in the conjugation action of <gens> (orbit-stabilizer with
// Schreier generators, compressed).  group_order must be the exact order of
// <gens>; the result satisfies order * class size = group_order (verified).
// Throws std::length_error when the conjugation orbit exceeds cap.
SubgroupWitness centralizer(const std::vector<Perm>& gens, const Big& group_order,
                            const Perm& x, size_t cap = 1u << 22);

// Stabilizer of the subgroup <x> under conjugation.  Contains the
// centralizer; every returned generator conjugates x to a power of x
// (asserted), and |N : C| divides totient(|x|).
SubgroupWitness normalizer_cyclic(const std::vector<Perm>& gens, const Big& group_order,
                                  const Perm& x, size_t cap = 1u << 22);

struct CyclicClassRep {
  Perm rep;                   // minimal generator (lexicographic) of the class
  long long prime = 0;        // |rep|, prime
  size_t class_size = 0;      // number of conjugate subgroups
  int class_id = 0;           // position in (prime, minimal-rep) order
};

// One representative per conjugacy class of prime-order cyclic subgroups,
// by exhaustive element enumeration (throws past cap).  Completeness is
// verified by matching subgroup counts against element-order counts.
std::vector<CyclicClassRep> cyclic_class_reps(const std::vector<Perm>& gens,
                                              size_t cap = 1u << 21);

// Action of <gens> on the right cosets Y\G, Y given by its full (sorted)
// element list containing the identity.  Cosets are identified by their
// lexicographically minimal element.  Returns the images of `gens` on the
// coset domain; *domain_size receives the index |G : Y|.
std::vector<Perm> coset_action(const std::vector<Perm>& gens,
                               const std::vector<Perm>& subgroup_elements,
                               size_t* domain_size, size_t cap = 1u << 22);

enum class Verdict { factorizes, fails, inconclusive_cap };
std::string to_string(Verdict v);

struct FactorizationReport {
  std::string group;     // free-form identifier
  std::string line;      // scenario tag, may be empty
  std::string params;    // free-form parameter string
  std::string strategy;  // "enumerate-intersection" or "geometric-transitivity"
  Big order_G = 0, order_X = 0, order_Y = 0;
  Big order_intersection = 0;  // meaningful iff has_intersection
  bool has_intersection = false;
  std::string domain_kind;  // geometric strategy only
  size_t domain_size = 0;
  std::vector<size_t> orbit_lengths;
  Verdict verdict = Verdict::inconclusive_cap;
  uint64_t seed = 0;
  long long elapsed_ms = 0;
  int class_x = -1, class_y = -1;  // explorer bookkeeping

  std::string to_json() const;
};

// Does G = X Y?  strategy "enumerate-intersection" counts |X ∩ Y| by sifting
// the smaller factor's elements through the larger factor's chain and decides
// by |X||Y| = |G||X∩Y|; "auto" falls back to inconclusive-cap when the
// smaller factor exceeds cap.  All generators must act on the same domain.
FactorizationReport test_factorization(const std::vector<Perm>& g_gens, const Big& group_order,
                                       const SubgroupWitness& X, const SubgroupWitness& Y,
                                       const std::string& strategy = "auto",
                                       size_t cap = 1u << 21);

// Geometric variant: X is promised to be the stabilizer of a point of a
// transitive G-domain of the given size (checked via |X| * size = |G|,
// otherwise inconclusive); then G = X Y iff the partner Y is transitive on
// the domain.  partner_gens act on that domain.
FactorizationReport test_factorization_geometric(const Big& group_order, const Big& stab_order,
                                                 const std::vector<Perm>& partner_gens,
                                                 const Big& partner_order,
                                                 const std::string& domain_kind);

// G = C_G(x) C_G(y)?
FactorizationReport test_centralizer_factorization(const std::vector<Perm>& g_gens,
                                                   const Big& group_order, const Perm& x,
                                                   const Perm& y, size_t cap = 1u << 21);

// Tests every unordered pair of prime-order cyclic class representatives
// with X = N(<g_i>), Y = N(<g_j>); returns the factorizing pairs in
// (class_x, class_y) order.  Complete for existence questions: some pair of
// arbitrary cyclic subgroups factorizes iff some prime-order pair does.
std::vector<FactorizationReport> explore_all_pairs(const std::vector<Perm>& gens,
                                                   size_t cap = 1u << 21);

}  // namespace cgt
