#pragma once
// Dense matrices and subspaces over a small finite field, classical forms
// (symplectic / quadratic of either type / hermitian), isometry tests,
// subspace type classification by exhaustive vector counting, semilinear
// maps, and restriction of scalars.  All values are immutable in spirit:
// operations return new objects; concurrent reads are safe.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cgt/ff.hpp"

namespace cgt {

struct Mat {
  const Fq* F = nullptr;
  int rows = 0, cols = 0;
  std::vector<int> a;  // row-major field elements

  Mat() = default;
  Mat(const Fq& f, int r, int c) : F(&f), rows(r), cols(c), a((size_t)r * c, 0) {}

  int& at(int i, int j) { return a[(size_t)i * cols + j]; }
  int at(int i, int j) const { return a[(size_t)i * cols + j]; }

  static Mat identity(const Fq& f, int n);
  static Mat from_rows(const Fq& f, const std::vector<std::vector<int>>& rows);

  Mat operator*(const Mat& o) const;
  bool operator==(const Mat& o) const { return F == o.F && rows == o.rows && cols == o.cols && a == o.a; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat transpose() const;
  Mat frob(int e) const;  // entrywise Frobenius a -> a^(r^e)
  Mat inverse() const;    // throws std::domain_error if singular
  Mat pow(long long k) const;
  Mat scaled(int lambda) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  bool is_identity() const;
  bool is_zero() const;
  // Multiplicative order (throws if not invertible or order > cap).
  long long order(long long cap = 1 << 20) const;
};

// v * M for a row vector v.
std::vector<int> apply_row(const std::vector<int>& v, const Mat& m);

// Determinant by Gaussian elimination.
int determinant(const Mat& m);

struct RrefResult {
  Mat m;
  int rank = 0;
  std::vector<int> pivots;
};
RrefResult rref(const Mat& m);
int mat_rank(const Mat& m);

// dim ker (m - lambda I) for square m.
int eigenspace_dim(const Mat& m, int lambda);

struct Subspace {
  const Fq* F = nullptr;
  int n = 0;  // ambient dimension
  int k = 0;  // dimension
  Mat basis;  // k x n, reduced row-echelon form

  bool operator==(const Subspace& o) const { return n == o.n && k == o.k && basis == o.basis; }
};

// RREF span of the given vectors; the unique canonical representative of the
// row space (empty input yields the zero subspace).
Subspace canonical_subspace(const Fq& f, int n, const std::vector<std::vector<int>>& vectors);

enum class FormKind {
  symplectic,
  quadratic_plus,
  quadratic_minus,
  quadratic_odd,
  hermitian,
  symmetric_bilinear,
};

enum class TypeLabel {
  totally_singular,
  nondeg_plus,
  nondeg_minus,
  nondeg_odd,
  anisotropic,
  degenerate,
  nonsingular_point,
};
std::string to_string(TypeLabel t);

struct ClassicalForm {
  FormKind kind;
  const Fq* F = nullptr;  // the field the form lives over (q^2-size for hermitian)
  int n = 0;
  Mat gram;  // bilinear / sesquilinear matrix (polarization for quadratic kinds)
  Mat quad;  // upper-triangular coefficients of Q; quadratic kinds only

  bool is_quadratic() const {
    return kind == FormKind::quadratic_plus || kind == FormKind::quadratic_minus ||
           kind == FormKind::quadratic_odd;
  }
  // hermitian conjugation x -> x^q (frobenius by half the field degree)
  int conj(int x) const;
  Mat conj_mat(const Mat& m) const;
  // B(u, v); sesquilinear in v for hermitian.
  int bilin(const std::vector<int>& u, const std::vector<int>& v) const;
  // Q(v); quadratic kinds only.
  int qval(const std::vector<int>& v) const;
  // isotropic/singular test for one vector (Q = 0 for quadratic kinds,
  // B(v,v) = 0 for hermitian, always true for symplectic).
  bool singular(const std::vector<int>& v) const;
};

// Standard forms on the conventional basis e_1..e_m [, w] [, anisotropic
// pair], f_m..f_1 with B(e_i, f_i) = 1.  Hermitian uses the antidiagonal
// Gram over the quadratic extension field.
ClassicalForm standard_form(FormKind kind, const Fq& f, int n);

// Fold an arbitrary coefficient matrix of a quadratic form into the
// canonical upper-triangular representative (same Q values).
Mat upper_triangular_fold(const Mat& p);

// Scalar-extend a form: same coefficient matrices reinterpreted over the
// bigger field via the embedding.
ClassicalForm extend_scalars_form(const ClassicalForm& form, const SubfieldEmbed& e);

// Exhaustive classification by singular-vector counting; requires
// q^dim(s) <= vec_cap vectors to enumerate.
TypeLabel classify_subspace(const ClassicalForm& form, const Subspace& s,
                            long long vec_cap = 1 << 20);

// Fast early-exit check: no nonzero singular vector in the span of the rows.
bool span_is_anisotropic(const ClassicalForm& form, const Mat& rows);

bool is_isometry(const ClassicalForm& form, const Mat& m);

struct SemilinearMap {
  Mat m;           // invertible matrix part
  int frob_e = 0;  // field-automorphism exponent: v -> frob^e(v) * m
  bool duality = false;  // acts on a point/hyperplane-swapped domain

  std::vector<int> apply(const std::vector<int>& v) const;
};

// Form preserved up to the declared field automorphism.
bool is_isometry(const ClassicalForm& form, const SemilinearMap& s);

// Block blow-up of a matrix over GF(q^d) into one over GF(q), using the
// power basis of the big field's primitive root.
Mat restrict_scalars(const Mat& m, const SubfieldEmbed& e);

// Matrix text format: first line "field r f", then rows of integers.
std::string mat_to_text(const Mat& m);
Mat mat_from_text(const std::string& text);

}  // namespace cgt
