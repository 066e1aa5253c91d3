#pragma once
// Construction of the classical matrix groups (special linear, unitary,
// symplectic, orthogonal of every type, plus their special/general
// decorations), permutation families, distinguished elements (transvections,
// reflections, tori, Siegel/parabolic unipotents, field and graph
// automorphisms), coset invariants (Dickson invariant, spinor norm), and the
// field-change embeddings.  Every emitted generator is checked semantically
// (form preservation, determinant, order claims) rather than by citation.

#include <optional>
#include <string>
#include <vector>

#include "cgt/domain.hpp"

namespace cgt {

enum class GroupFamily {
  SL,
  GL,
  SU,
  GU,
  Sp,
  OmegaPlus,
  OmegaMinus,
  OmegaOdd,
  SOPlus,
  SOMinus,
  SOOdd,
  GOPlus,
  GOMinus,
  GOOdd,
  Sym,
  Alt,
  M11,
};

std::string to_string(GroupFamily f);

struct GroupSpec {
  GroupFamily family;
  int n = 0;  // dimension (or degree for Sym/Alt)
  int r = 2, f = 1;
  std::vector<std::string> ext;  // subset of {"diagonal","field","graph"}

  int q() const {
    int v = 1;
    for (int i = 0; i < f; ++i) v *= r;
    return v;
  }
  std::string name() const;
};

// "family:n:q[:ext,...]" e.g. "OmegaMinus:10:2:graph" or "Sp:4:3".
GroupSpec parse_group_spec(const std::string& s);

struct GroupWitness {
  GroupSpec spec;
  const Fq* F = nullptr;                 // matrix entry field (GF(q^2) for unitary)
  std::optional<ClassicalForm> form;     // attached form, if any
  std::vector<SemilinearMap> gens;       // matrix families
  std::vector<Perm> perm_gens;           // Sym / Alt / M11
  size_t degree = 0;                     // permutation degree for those
  Big claimed_order = 0;                 // 0 = no claim (decorated groups)

  bool is_matrix_group() const { return F != nullptr; }
};

// Builds the group with <= 8 generators.  Generators are verified against
// the attached form; for undecorated groups the order claim is taken from
// the closed-form order and, when the q^n - 1 vector domain has at most 1e5
// points and the order is at most 1e15, proved by a stabilizer chain whose
// orbit product reaches the claim.  Extensions append a diagonal coset
// representative / Frobenius map / duality map and clear the order claim.
GroupWitness classical_group(const GroupSpec& spec);

// Distinguished elements.  Kinds:
//   transvection              (SL, Sp)   x -> x + B(x,e1) e1 flavor
//   unitary_transvection      (SU, GU)
//   siegel                    (Omega*)   params {i}: pairs e1 with the i-th
//                                        other basis vector
//   reflection                (GO*/SO*)  params {c}: r_u with Q(u) = c-th
//                                        power of the primitive root
//   so_minus_omega            (SO*)      product of two reflections with
//                                        non-square norm ratio (odd q), or an
//                                        orthogonal transvection (even q)
//   negated_reflection        (SOOdd)    -r_v, +1 exactly on <v>; params {c}
//                                        select Q(v)'s power as in reflection
//   semisimple_diag           params {k, e}: diag with e-dim eigenspace of
//                                        the primitive root's k-th power,
//                                        balanced to stay in the family
//   singer_torus              (GL/SL 2)  order-(q+1) companion matrix acting
//                                        irreducibly
//   field_aut                 params {e}: entrywise Frobenius x -> x^(r^e)
//   graph_aut                 (SL/GL)    inverse-transpose duality
//   parabolic_unipotent_z     (OmegaOdd) Siegel element in Z(Q), order r
SemilinearMap special_element(const GroupSpec& spec, const std::string& kind,
                              const std::vector<long long>& params = {});

// Dickson invariant of an isometry, even characteristic: rank(g - 1) mod 2.
// 0 on Omega, 1 on its complement in the full orthogonal group.
int dickson_invariant(const ClassicalForm& form, const Mat& g);

// Spinor norm (odd characteristic) as a square-class bit: 0 if the product
// of reflection norms in a factorization of g is a square, 1 otherwise.
int spinor_norm(const ClassicalForm& form, const Mat& g);

// true iff g lies in Omega (Dickson 0 / spinor 0, and det 1 when q is odd).
bool in_omega(const ClassicalForm& form, const Mat& g);

// ---- embeddings -------------------------------------------------------------

// Reinterprets the generators of `inner` (over GF(r^d)) as matrices over the
// larger field GF(r^f), d | f.  The attached form is the scalar extension.
GroupWitness subfield_reinterpret(const GroupWitness& inner, const Fq& big);

// Finds a basis change T with  form_src(x T, y T) = form_dst(x, y) (and
// matching Q), i.e. transports form_src onto the standard destination form.
// Quadratic forms only; throws if the types differ.
Mat form_transport(const ClassicalForm& src, const ClassicalForm& dst);

// Blows up a unitary group over GF(q^2) to an orthogonal group over GF(q)
// via the norm form Q(x) = B_h(x, x); the result is expressed in the
// standard quadratic form of type (-1)^m and dimension 2m.
GroupWitness restrict_scalars_unitary(const GroupWitness& inner);

// Blows up an orthogonal group over GF(q^2) (form P) to one over GF(q) via
// Q = Tr o P, expressed in the standard form of the resulting type.
GroupWitness restrict_scalars_orthogonal(const GroupWitness& inner);

}  // namespace cgt
