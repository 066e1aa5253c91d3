#include "cgt/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cgt {

Mat Mat::identity(const Fq& f, int n) {
  Mat m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
  return m;
}

Mat Mat::from_rows(const Fq& f, const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) return Mat(f, 0, 0);
  Mat m(f, (int)rows.size(), (int)rows[0].size());
  for (int i = 0; i < m.rows; ++i) {
    if ((int)rows[i].size() != m.cols) throw std::invalid_argument("Mat: ragged rows");
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (F != o.F || cols != o.rows) throw std::invalid_argument("Mat: dimension/field mismatch");
  Mat out(*F, rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      int x = at(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.cols; ++j) {
        int y = o.at(k, j);
        if (y == 0) continue;
        out.at(i, j) = F->add(out.at(i, j), F->mul(x, y));
      }
    }
  return out;
}

Mat Mat::transpose() const {
  Mat out(*F, cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out.at(j, i) = at(i, j);
  return out;
}

Mat Mat::frob(int e) const {
  Mat out(*F, rows, cols);
  for (size_t i = 0; i < a.size(); ++i) out.a[i] = F->frobenius(a[i], e);
  return out;
}

Mat Mat::inverse() const {
  if (rows != cols) throw std::invalid_argument("Mat: inverse of non-square");
  int n = rows;
  Mat work = *this;
  Mat inv = Mat::identity(*F, n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (work.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw std::domain_error("Mat: singular");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(work.a[(size_t)piv * n + j], work.a[(size_t)col * n + j]);
        std::swap(inv.a[(size_t)piv * n + j], inv.a[(size_t)col * n + j]);
      }
    int s = F->inv(work.at(col, col));
    for (int j = 0; j < n; ++j) {
      work.at(col, j) = F->mul(work.at(col, j), s);
      inv.at(col, j) = F->mul(inv.at(col, j), s);
    }
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      int c = work.at(i, col);
      if (c == 0) continue;
      for (int j = 0; j < n; ++j) {
        work.at(i, j) = F->sub(work.at(i, j), F->mul(c, work.at(col, j)));
        inv.at(i, j) = F->sub(inv.at(i, j), F->mul(c, inv.at(col, j)));
      }
    }
  }
  return inv;
}

Mat Mat::pow(long long k) const {
  if (rows != cols) throw std::invalid_argument("Mat: pow of non-square");
  Mat base = k < 0 ? inverse() : *this;
  unsigned long long e = k < 0 ? -(unsigned long long)k : (unsigned long long)k;
  Mat acc = Mat::identity(*F, rows);
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

Mat Mat::scaled(int lambda) const {
  Mat out(*F, rows, cols);
  for (size_t i = 0; i < a.size(); ++i) out.a[i] = F->mul(a[i], lambda);
  return out;
}

Mat Mat::operator+(const Mat& o) const {
  Mat out(*F, rows, cols);
  for (size_t i = 0; i < a.size(); ++i) out.a[i] = F->add(a[i], o.a[i]);
  return out;
}

Mat Mat::operator-(const Mat& o) const {
  Mat out(*F, rows, cols);
  for (size_t i = 0; i < a.size(); ++i) out.a[i] = F->sub(a[i], o.a[i]);
  return out;
}

bool Mat::is_identity() const {
  if (rows != cols) return false;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (at(i, j) != (i == j ? F->one() : 0)) return false;
  return true;
}

bool Mat::is_zero() const {
  for (int x : a)
    if (x != 0) return false;
  return true;
}

long long Mat::order(long long cap) const {
  Mat acc = *this;
  for (long long k = 1; k <= cap; ++k) {
    if (acc.is_identity()) return k;
    acc = acc * *this;
  }
  throw std::runtime_error("Mat: order exceeds cap (or element not invertible)");
}

int determinant(const Mat& m) {
  if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
  const Fq& F = *m.F;
  int n = m.rows;
  Mat work = m;
  int det = F.one();
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (work.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      for (int j = 0; j < n; ++j)
        std::swap(work.a[(size_t)piv * n + j], work.a[(size_t)col * n + j]);
      det = F.neg(det);
    }
    det = F.mul(det, work.at(col, col));
    int s = F.inv(work.at(col, col));
    for (int i = col + 1; i < n; ++i) {
      int c = F.mul(work.at(i, col), s);
      if (c == 0) continue;
      for (int j = col; j < n; ++j)
        work.at(i, j) = F.sub(work.at(i, j), F.mul(c, work.at(col, j)));
    }
  }
  return det;
}

std::vector<int> apply_row(const std::vector<int>& v, const Mat& m) {
  if ((int)v.size() != m.rows) throw std::invalid_argument("apply_row: size mismatch");
  std::vector<int> out(m.cols, 0);
  const Fq& F = *m.F;
  for (int i = 0; i < m.rows; ++i) {
    int x = v[i];
    if (x == 0) continue;
    for (int j = 0; j < m.cols; ++j) {
      int y = m.at(i, j);
      if (y != 0) out[j] = F.add(out[j], F.mul(x, y));
    }
  }
  return out;
}

RrefResult rref(const Mat& m) {
  RrefResult res;
  res.m = m;
  Mat& w = res.m;
  const Fq& F = *m.F;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int piv = -1;
    for (int i = row; i < m.rows; ++i)
      if (w.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols; ++j)
        std::swap(w.a[(size_t)piv * m.cols + j], w.a[(size_t)row * m.cols + j]);
    int s = F.inv(w.at(row, col));
    for (int j = 0; j < m.cols; ++j) w.at(row, j) = F.mul(w.at(row, j), s);
    for (int i = 0; i < m.rows; ++i) {
      if (i == row) continue;
      int c = w.at(i, col);
      if (c == 0) continue;
      for (int j = 0; j < m.cols; ++j)
        w.at(i, j) = F.sub(w.at(i, j), F.mul(c, w.at(row, j)));
    }
    res.pivots.push_back(col);
    ++row;
  }
  res.rank = row;
  return res;
}

int mat_rank(const Mat& m) { return rref(m).rank; }

int eigenspace_dim(const Mat& m, int lambda) {
  if (m.rows != m.cols) throw std::invalid_argument("eigenspace_dim: non-square");
  Mat d = m;
  for (int i = 0; i < m.rows; ++i) d.at(i, i) = m.F->sub(d.at(i, i), lambda);
  return m.rows - mat_rank(d);
}

Subspace canonical_subspace(const Fq& f, int n, const std::vector<std::vector<int>>& vectors) {
  Mat m = vectors.empty() ? Mat(f, 0, n) : Mat::from_rows(f, vectors);
  RrefResult r = rref(m);
  Subspace s;
  s.F = &f;
  s.n = n;
  s.k = r.rank;
  s.basis = Mat(f, r.rank, n);
  for (int i = 0; i < r.rank; ++i)
    for (int j = 0; j < n; ++j) s.basis.at(i, j) = r.m.at(i, j);
  return s;
}

std::string to_string(TypeLabel t) {
  switch (t) {
    case TypeLabel::totally_singular: return "totally-singular";
    case TypeLabel::nondeg_plus: return "nondegenerate-plus";
    case TypeLabel::nondeg_minus: return "nondegenerate-minus";
    case TypeLabel::nondeg_odd: return "nondegenerate-odd";
    case TypeLabel::anisotropic: return "anisotropic";
    case TypeLabel::degenerate: return "degenerate";
    case TypeLabel::nonsingular_point: return "nonsingular-point";
  }
  return "?";
}

int ClassicalForm::conj(int x) const {
  if (kind != FormKind::hermitian) return x;
  return F->frobenius(x, F->f() / 2);
}

Mat ClassicalForm::conj_mat(const Mat& m) const {
  if (kind != FormKind::hermitian) return m;
  return m.frob(F->f() / 2);
}

int ClassicalForm::bilin(const std::vector<int>& u, const std::vector<int>& v) const {
  int acc = 0;
  for (int i = 0; i < n; ++i) {
    if (u[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      int g = gram.at(i, j);
      if (g == 0 || v[j] == 0) continue;
      acc = F->add(acc, F->mul(u[i], F->mul(g, conj(v[j]))));
    }
  }
  return acc;
}

int ClassicalForm::qval(const std::vector<int>& v) const {
  if (!is_quadratic()) throw std::logic_error("qval: not a quadratic form");
  int acc = 0;
  for (int i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    for (int j = i; j < n; ++j) {
      int c = quad.at(i, j);
      if (c == 0 || v[j] == 0) continue;
      acc = F->add(acc, F->mul(v[i], F->mul(c, v[j])));
    }
  }
  return acc;
}

bool ClassicalForm::singular(const std::vector<int>& v) const {
  if (is_quadratic()) return qval(v) == 0;
  if (kind == FormKind::symplectic) return true;
  return bilin(v, v) == 0;
}

Mat upper_triangular_fold(const Mat& p) {
  Mat out(*p.F, p.rows, p.cols);
  for (int i = 0; i < p.rows; ++i) {
    out.at(i, i) = p.at(i, i);
    for (int j = i + 1; j < p.cols; ++j) out.at(i, j) = p.F->add(p.at(i, j), p.at(j, i));
  }
  return out;
}

namespace {

// Polarization B(u,v) = Q(u+v) - Q(u) - Q(v) of an upper-triangular Q matrix.
Mat polarize(const Mat& quad) {
  const Fq& F = *quad.F;
  int n = quad.rows;
  Mat g(F, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j)
        g.at(i, j) = F.add(quad.at(i, i), quad.at(i, i));  // 2*Q_ii
      else if (i < j)
        g.at(i, j) = quad.at(i, j);
      else
        g.at(i, j) = quad.at(j, i);
    }
  return g;
}

// least a with t^2 + t + a irreducible over F (exists for every finite field)
int anisotropic_coeff(const Fq& F) {
  std::vector<char> reducible(F.q(), 0);
  for (int t = 0; t < F.q(); ++t) {
    // a = -(t^2 + t) gives a root t
    int v = F.neg(F.add(F.mul(t, t), t));
    reducible[v] = 1;
  }
  for (int a = 0; a < F.q(); ++a)
    if (!reducible[a]) return a;
  throw std::logic_error("anisotropic_coeff: none found");
}

}  // namespace

ClassicalForm standard_form(FormKind kind, const Fq& f, int n) {
  ClassicalForm c;
  c.kind = kind;
  c.F = &f;
  c.n = n;
  int m = n / 2;
  switch (kind) {
    case FormKind::symplectic: {
      if (n % 2) throw std::invalid_argument("symplectic form needs even dimension");
      c.gram = Mat(f, n, n);
      for (int i = 0; i < m; ++i) {
        c.gram.at(i, n - 1 - i) = f.one();
        c.gram.at(n - 1 - i, i) = f.neg(f.one());
      }
      return c;
    }
    case FormKind::quadratic_plus: {
      if (n % 2) throw std::invalid_argument("plus-type form needs even dimension");
      c.quad = Mat(f, n, n);
      for (int i = 0; i < m; ++i) c.quad.at(i, n - 1 - i) = f.one();
      c.gram = polarize(c.quad);
      return c;
    }
    case FormKind::quadratic_minus: {
      if (n % 2) throw std::invalid_argument("minus-type form needs even dimension");
      c.quad = Mat(f, n, n);
      for (int i = 0; i < m - 1; ++i) c.quad.at(i, n - 1 - i) = f.one();
      int a = anisotropic_coeff(f);
      c.quad.at(m - 1, m - 1) = f.one();
      c.quad.at(m - 1, m) = f.one();
      c.quad.at(m, m) = a;
      c.gram = polarize(c.quad);
      return c;
    }
    case FormKind::quadratic_odd: {
      if (n % 2 == 0) throw std::invalid_argument("odd-type form needs odd dimension");
      if (f.r() == 2) throw std::invalid_argument("odd-dimensional quadratic space needs odd characteristic");
      c.quad = Mat(f, n, n);
      for (int i = 0; i < m; ++i) c.quad.at(i, n - 1 - i) = f.one();
      c.quad.at(m, m) = f.one();
      c.gram = polarize(c.quad);
      return c;
    }
    case FormKind::hermitian: {
      if (f.f() % 2) throw std::invalid_argument("hermitian form needs a square field");
      c.gram = Mat(f, n, n);
      for (int i = 0; i < n; ++i) c.gram.at(i, n - 1 - i) = f.one();
      return c;
    }
    case FormKind::symmetric_bilinear: {
      c.gram = Mat(f, n, n);
      for (int i = 0; i < n; ++i) c.gram.at(i, n - 1 - i) = f.one();
      return c;
    }
  }
  throw std::logic_error("standard_form: bad kind");
}

ClassicalForm extend_scalars_form(const ClassicalForm& form, const SubfieldEmbed& e) {
  ClassicalForm out = form;
  out.F = &e.big();
  auto lift = [&](const Mat& m) {
    Mat r(e.big(), m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = e(m.a[i]);
    return r;
  };
  if (form.gram.F) out.gram = lift(form.gram);
  if (form.quad.F) out.quad = lift(form.quad);
  return out;
}

TypeLabel classify_subspace(const ClassicalForm& form, const Subspace& s, long long vec_cap) {
  const Fq& F = *form.F;
  int k = s.k, q = F.q();
  if (k == 0) return TypeLabel::totally_singular;
  long long total = 1;
  for (int i = 0; i < k; ++i) {
    total *= q;
    if (total > vec_cap) throw std::invalid_argument("classify_subspace: dimension cap exceeded");
  }

  std::vector<std::vector<int>> rows(k, std::vector<int>(s.n));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < s.n; ++j) rows[i][j] = s.basis.at(i, j);

  // restricted polar/sesquilinear form
  Mat R(F, k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) R.at(i, j) = form.bilin(rows[i], rows[j]);
  int radical_dim = k - mat_rank(R);

  // enumerate all vectors of the subspace
  long long singular_nonzero = 0;
  bool all_singular = true;
  std::vector<int> digits(k, 0);
  std::vector<int> v(s.n, 0);
  for (long long idx = 1; idx < total; ++idx) {
    // odometer increment
    for (int i = 0; i < k; ++i) {
      digits[i] = (digits[i] + 1) % q;
      if (digits[i] != 0) break;
    }
    std::fill(v.begin(), v.end(), 0);
    for (int i = 0; i < k; ++i) {
      if (digits[i] == 0) continue;
      for (int j = 0; j < s.n; ++j) v[j] = F.add(v[j], F.mul(digits[i], rows[i][j]));
    }
    if (form.singular(v)) ++singular_nonzero;
    else all_singular = false;
  }

  if (form.is_quadratic()) {
    if (all_singular) return TypeLabel::totally_singular;
    if (radical_dim > 0) {
      // degenerate iff the bilinear radical contains a nonzero singular
      // vector; nullspace of x R = 0 is the nullspace of R^T x^T = 0
      Mat rt = R.transpose();
      RrefResult rf = rref(rt);
      std::vector<int> free_cols;
      for (int c = 0; c < k; ++c)
        if (std::find(rf.pivots.begin(), rf.pivots.end(), c) == rf.pivots.end())
          free_cols.push_back(c);
      // basis of solutions x of R^T x = 0 (column vectors)
      std::vector<std::vector<int>> null_basis;
      for (int fc : free_cols) {
        std::vector<int> x(k, 0);
        x[fc] = F.one();
        for (size_t pi = 0; pi < rf.pivots.size(); ++pi)
          x[rf.pivots[pi]] = F.neg(rf.m.at((int)pi, fc));
        null_basis.push_back(x);
      }
      // enumerate the radical, test Q
      long long rt_total = 1;
      for (size_t i = 0; i < null_basis.size(); ++i) rt_total *= q;
      std::vector<int> dg(null_basis.size(), 0);
      for (long long idx = 1; idx < rt_total; ++idx) {
        for (size_t i = 0; i < dg.size(); ++i) {
          dg[i] = (dg[i] + 1) % q;
          if (dg[i] != 0) break;
        }
        std::vector<int> x(k, 0);
        for (size_t i = 0; i < dg.size(); ++i)
          for (int j = 0; j < k; ++j) x[j] = F.add(x[j], F.mul(dg[i], null_basis[i][j]));
        std::fill(v.begin(), v.end(), 0);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < s.n; ++j) v[j] = F.add(v[j], F.mul(x[i], rows[i][j]));
        if (form.singular(v)) return TypeLabel::degenerate;
      }
      // radical is anisotropic for Q: space still counts as nondegenerate
      // (only possible in characteristic 2, odd k or defective forms)
    }
    if (k == 1) return TypeLabel::nonsingular_point;
    if (singular_nonzero == 0) return TypeLabel::anisotropic;
    if (k % 2 == 1) return TypeLabel::nondeg_odd;
    long long qm = 1, qm1 = 1;
    for (int i = 0; i < k / 2; ++i) qm *= q;
    for (int i = 0; i < k / 2 - 1; ++i) qm1 *= q;
    if (singular_nonzero == (qm - 1) * (qm1 + 1)) return TypeLabel::nondeg_plus;
    if (singular_nonzero == (qm + 1) * (qm1 - 1)) return TypeLabel::nondeg_minus;
    throw std::logic_error("classify_subspace: singular count matches neither type");
  }

  // symplectic / hermitian / symmetric bilinear
  if (R.is_zero()) return TypeLabel::totally_singular;
  if (radical_dim > 0) return TypeLabel::degenerate;
  if (form.kind != FormKind::symplectic && singular_nonzero == 0) return TypeLabel::anisotropic;
  return k % 2 ? TypeLabel::nondeg_odd : TypeLabel::nondeg_plus;
}

bool span_is_anisotropic(const ClassicalForm& form, const Mat& rows) {
  const Fq& F = *form.F;
  int k = rows.rows, q = F.q();
  long long total = 1;
  for (int i = 0; i < k; ++i) total *= q;
  std::vector<int> digits(k, 0);
  std::vector<int> v(rows.cols, 0);
  for (long long idx = 1; idx < total; ++idx) {
    for (int i = 0; i < k; ++i) {
      digits[i] = (digits[i] + 1) % q;
      if (digits[i] != 0) break;
    }
    std::fill(v.begin(), v.end(), 0);
    for (int i = 0; i < k; ++i) {
      if (digits[i] == 0) continue;
      for (int j = 0; j < rows.cols; ++j) v[j] = F.add(v[j], F.mul(digits[i], rows.at(i, j)));
    }
    if (form.singular(v)) return false;
  }
  return true;
}

bool is_isometry(const ClassicalForm& form, const Mat& m) {
  if (m.rows != form.n || m.cols != form.n || m.F != form.F) return false;
  if (form.is_quadratic())
    return upper_triangular_fold(m * form.quad * m.transpose()) == form.quad;
  if (form.kind == FormKind::hermitian)
    return m * form.gram * form.conj_mat(m.transpose()) == form.gram;
  return m * form.gram * m.transpose() == form.gram;
}

std::vector<int> SemilinearMap::apply(const std::vector<int>& v) const {
  std::vector<int> w(v.size());
  for (size_t i = 0; i < v.size(); ++i) w[i] = m.F->frobenius(v[i], frob_e);
  return apply_row(w, m);
}

bool is_isometry(const ClassicalForm& form, const SemilinearMap& s) {
  const Mat& m = s.m;
  if (m.rows != form.n || m.cols != form.n || m.F != form.F) return false;
  if (form.is_quadratic())
    return upper_triangular_fold(m * form.quad * m.transpose()) == form.quad.frob(s.frob_e);
  if (form.kind == FormKind::hermitian)
    return m * form.gram * form.conj_mat(m.transpose()) == form.gram.frob(s.frob_e);
  return m * form.gram * m.transpose() == form.gram.frob(s.frob_e);
}

Mat restrict_scalars(const Mat& m, const SubfieldEmbed& e) {
  const Fq& B = e.big();
  const Fq& S = e.small();
  if (m.F != &B) throw std::invalid_argument("restrict_scalars: field mismatch");
  int d = B.f() / S.f();
  int g = B.gen();
  // coordinates of every big-field element on the power basis 1, g, ..., g^(d-1)
  std::vector<std::vector<int>> coord(B.q());
  {
    std::vector<int> powers(d);
    int acc = B.one();
    for (int i = 0; i < d; ++i) {
      powers[i] = acc;
      acc = B.mul(acc, g);
    }
    std::vector<int> tup(d, 0);
    long long total = 1;
    for (int i = 0; i < d; ++i) total *= S.q();
    for (long long idx = 0; idx < total; ++idx) {
      int x = 0;
      for (int i = 0; i < d; ++i) x = B.add(x, B.mul(e(tup[i]), powers[i]));
      if (!coord[x].empty() && idx > 0) throw std::logic_error("restrict_scalars: basis not free");
      coord[x] = tup;
      for (int i = 0; i < d; ++i) {
        tup[i] = (tup[i] + 1) % S.q();
        if (tup[i] != 0) break;
      }
    }
  }
  Mat out(S, m.rows * d, m.cols * d);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      int x = m.at(i, j);
      if (x == 0) continue;
      int y = x;
      for (int a = 0; a < d; ++a) {
        const std::vector<int>& c = coord[y];  // x * g^a on the power basis
        for (int b = 0; b < d; ++b) out.at(i * d + a, j * d + b) = c[b];
        y = B.mul(y, g);
      }
    }
  return out;
}

std::string mat_to_text(const Mat& m) {
  std::ostringstream os;
  os << "field " << m.F->r() << " " << m.F->f() << "\n";
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) os << (j ? " " : "") << m.at(i, j);
    os << "\n";
  }
  return os.str();
}

Mat mat_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string kw;
  int r, f;
  if (!(is >> kw >> r >> f) || kw != "field")
    throw std::invalid_argument("mat_from_text: missing 'field r f' header");
  const Fq& F = field(r, f);
  std::vector<std::vector<int>> rows;
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::vector<int> row;
    int x;
    while (ls >> x) row.push_back(x);
    if (!row.empty()) rows.push_back(row);
  }
  return Mat::from_rows(F, rows);
}

}  // namespace cgt
