#pragma once
// Geometric action domains: canonical objects (normalized projective points,
// RREF subspace bases, point/hyperplane pairs) interned into dense integer
// ids via sorted 128-bit packed keys, plus conversion of (semi)linear
// generators into permutations of a domain.

#include <cstdint>
#include <vector>

#include "cgt/linalg.hpp"
#include "cgt/perm.hpp"

namespace cgt {

using Key128 = unsigned __int128;

struct ActionDomain {
  enum class Kind {
    projective_points,
    subspaces_of_type,
    nonsingular_points,
    singular_points,
    points_and_hyperplanes,
    nonzero_vectors,
  };

  Kind kind;
  const Fq* F = nullptr;
  const ClassicalForm* form = nullptr;  // null for form-free domains
  int n = 0;                            // ambient dimension
  int k = 1;                            // object dimension
  TypeLabel type = TypeLabel::degenerate;  // target label for subspaces_of_type
  int bits = 0;                         // bits per packed field element
  std::vector<Key128> keys;             // sorted ascending; id = rank

  size_t size() const { return keys.size(); }
  bool contains(Key128 key) const;
  Pt id_of(Key128 key) const;  // throws std::out_of_range if absent

  Key128 encode(const Mat& rows) const;  // rows must be canonical (k x n)
  Mat object(Pt id) const;               // canonical k x n basis / vector
  bool is_hyperplane(Pt id) const;       // points_and_hyperplanes only
};

// All 1-dimensional subspaces, represented by the vector whose first nonzero
// coordinate is 1.  N = (q^n - 1)/(q - 1).
ActionDomain projective_domain(const Fq& f, int n);

// Projective points that are nonsingular (Q != 0 / B(v,v) != 0) resp.
// singular for the given form.
ActionDomain nonsingular_point_domain(const ClassicalForm& form);
ActionDomain singular_point_domain(const ClassicalForm& form);

// All k-dimensional subspaces whose classification equals `type`, enumerated
// by streaming every RREF k x n basis (an independent count, not an orbit
// closure).  Char-2 quadratic forms with k = 2 and q^n <= 2^20 take a packed
// table fast path; its verdicts are spot-checked against the exhaustive
// classifier.  Throws if more than `cap` objects match.
ActionDomain subspace_type_domain(const ClassicalForm& form, int k, TypeLabel type,
                                  size_t cap = 1u << 24);

// All q^n - 1 nonzero row vectors, no normalization: a faithful domain for
// any matrix group (scalars act nontrivially), used for order verification.
ActionDomain vector_domain(const Fq& f, int n);

// Disjoint union of projective points and hyperplanes (each hyperplane
// represented by its normalized normal vector).  Supports duality
// generators, which swap the two blocks.
ActionDomain points_and_hyperplanes_domain(const Fq& f, int n);

// Converts a generator into a permutation of the domain.  Row convention:
// a point v maps to normalize(frob^e(v) * m); a subspace basis maps to the
// RREF of the image rows; a hyperplane with normal u maps to
// normalize(frob^e(u) * (m^{-1})^T).  Duality generators additionally swap
// the point and hyperplane blocks.  Throws std::domain_error if any image
// falls outside the domain (the generator does not stabilize it).
Perm perm_of(const ActionDomain& d, const SemilinearMap& s);
Perm perm_of(const ActionDomain& d, const Mat& m);
std::vector<Perm> perms_of(const ActionDomain& d, const std::vector<SemilinearMap>& gens);

}  // namespace cgt
