#include "cgt/domain.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

namespace cgt {

namespace {

constexpr int kFlagShift = 121;  // hyperplane marker bit
constexpr Key128 kFlagMask = (Key128)1 << kFlagShift;

int bits_for(const Fq& f) {
  int b = 1;
  while ((1 << b) < f.q()) ++b;
  return b;
}

void check_packable(const Fq& f, int k, int n) {
  if ((long long)k * n * bits_for(f) > 120)
    throw std::length_error("domain objects do not fit a 128-bit key");
}

void normalize_row(const Fq& f, Mat& m) {
  for (int j = 0; j < m.cols; ++j)
    if (m.at(0, j)) {
      int c = f.inv(m.at(0, j));
      for (int l = j; l < m.cols; ++l) m.at(0, l) = f.mul(m.at(0, l), c);
      return;
    }
}

// Streams every k x n matrix in reduced row-echelon form of rank k.
template <class Fn>
void stream_rref(const Fq& f, int n, int k, Fn&& emit) {
  if (k > n || k < 1) return;
  std::vector<int> piv(k);
  for (int i = 0; i < k; ++i) piv[i] = i;
  const int q = f.q();
  while (true) {
    Mat m(f, k, n);
    std::vector<uint8_t> is_piv(n, 0);
    for (int i = 0; i < k; ++i) {
      m.at(i, piv[i]) = f.one();
      is_piv[piv[i]] = 1;
    }
    std::vector<std::pair<int, int>> free_pos;
    for (int i = 0; i < k; ++i)
      for (int j = piv[i] + 1; j < n; ++j)
        if (!is_piv[j]) free_pos.emplace_back(i, j);
    std::vector<int> digits(free_pos.size(), 0);
    while (true) {
      for (size_t t = 0; t < free_pos.size(); ++t) m.at(free_pos[t].first, free_pos[t].second) = digits[t];
      emit(m);
      size_t t = 0;
      for (; t < digits.size(); ++t) {
        if (++digits[t] < q) break;
        digits[t] = 0;
      }
      if (t == digits.size()) break;
    }
    // next pivot combination
    int i = k - 1;
    while (i >= 0 && piv[i] == n - k + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int l = i + 1; l < k; ++l) piv[l] = piv[l - 1] + 1;
  }
}

std::vector<int> row_of(const Mat& m, int i) {
  std::vector<int> v(m.cols);
  for (int j = 0; j < m.cols; ++j) v[j] = m.at(i, j);
  return v;
}

ActionDomain finish(ActionDomain d) {
  std::sort(d.keys.begin(), d.keys.end());
  return d;
}

ActionDomain point_domain(ActionDomain::Kind kind, const Fq& f, int n,
                          const ClassicalForm* form) {
  check_packable(f, 1, n);
  ActionDomain d;
  d.kind = kind;
  d.F = &f;
  d.form = form;
  d.n = n;
  d.k = 1;
  d.bits = bits_for(f);
  stream_rref(f, n, 1, [&](const Mat& m) {
    if (form) {
      bool sing = form->singular(row_of(m, 0));
      if (kind == ActionDomain::Kind::nonsingular_points && sing) return;
      if (kind == ActionDomain::Kind::singular_points && !sing) return;
    }
    d.keys.push_back(d.encode(m));
  });
  return finish(std::move(d));
}

}  // namespace

bool ActionDomain::contains(Key128 key) const {
  auto it = std::lower_bound(keys.begin(), keys.end(), key);
  return it != keys.end() && *it == key;
}

Pt ActionDomain::id_of(Key128 key) const {
  auto it = std::lower_bound(keys.begin(), keys.end(), key);
  if (it == keys.end() || *it != key) throw std::out_of_range("object not in domain");
  return (Pt)(it - keys.begin());
}

Key128 ActionDomain::encode(const Mat& rows) const {
  Key128 key = 0;
  int shift = 0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j, shift += bits) key |= (Key128)rows.at(i, j) << shift;
  return key;
}

Mat ActionDomain::object(Pt id) const {
  Key128 key = keys[id] & ~kFlagMask;
  Mat m(*F, k, n);
  const Key128 mask = ((Key128)1 << bits) - 1;
  int shift = 0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j, shift += bits) m.at(i, j) = (int)((key >> shift) & mask);
  return m;
}

bool ActionDomain::is_hyperplane(Pt id) const { return (keys[id] & kFlagMask) != 0; }

ActionDomain projective_domain(const Fq& f, int n) {
  return point_domain(ActionDomain::Kind::projective_points, f, n, nullptr);
}

ActionDomain nonsingular_point_domain(const ClassicalForm& form) {
  return point_domain(ActionDomain::Kind::nonsingular_points, *form.F, form.n, &form);
}

ActionDomain singular_point_domain(const ClassicalForm& form) {
  return point_domain(ActionDomain::Kind::singular_points, *form.F, form.n, &form);
}

ActionDomain vector_domain(const Fq& f, int n) {
  check_packable(f, 1, n);
  ActionDomain d;
  d.kind = ActionDomain::Kind::nonzero_vectors;
  d.F = &f;
  d.n = n;
  d.k = 1;
  d.bits = bits_for(f);
  Mat m(f, 1, n);
  while (true) {
    int j = 0;
    for (; j < n; ++j) {
      if (++m.at(0, j) < f.q()) break;
      m.at(0, j) = 0;
    }
    if (j == n) break;
    d.keys.push_back(d.encode(m));
  }
  return finish(std::move(d));
}

ActionDomain points_and_hyperplanes_domain(const Fq& f, int n) {
  ActionDomain d = projective_domain(f, n);
  d.kind = ActionDomain::Kind::points_and_hyperplanes;
  size_t pts = d.keys.size();
  d.keys.reserve(2 * pts);
  for (size_t i = 0; i < pts; ++i) d.keys.push_back(d.keys[i] | kFlagMask);
  return d;  // still sorted: flagged keys compare above all unflagged ones
}

ActionDomain subspace_type_domain(const ClassicalForm& form, int k, TypeLabel type, size_t cap) {
  const Fq& f = *form.F;
  const int n = form.n;
  check_packable(f, k, n);
  ActionDomain d;
  d.kind = ActionDomain::Kind::subspaces_of_type;
  d.F = &f;
  d.form = &form;
  d.n = n;
  d.k = k;
  d.type = type;
  d.bits = bits_for(f);

  auto push = [&](const Mat& m) {
    if (d.keys.size() >= cap) throw std::length_error("subspace domain exceeds cap");
    d.keys.push_back(d.encode(m));
  };

  const bool fast = form.is_quadratic() && f.r() == 2 && k == 2 && n * f.f() <= 20 &&
                    type == TypeLabel::anisotropic;
  if (fast) {
    // Packed-code tables: a vector over GF(2^e) packs to n e-bit chunks;
    // vector addition is XOR of codes.  A 2-space is of minus type iff it is
    // anisotropic, i.e. Q != 0 on the q+1 projective combinations u, v+t*u.
    const int e = f.f(), q = f.q();
    const uint32_t ncodes = 1u << (n * e);
    std::vector<uint8_t> qnz(ncodes);
    std::vector<int> vec(n);
    for (uint32_t c = 0; c < ncodes; ++c) {
      for (int j = 0; j < n; ++j) vec[j] = (int)((c >> (e * j)) & (q - 1));
      qnz[c] = form.qval(vec) != 0;
    }
    std::vector<std::vector<int>> smul(q, std::vector<int>(q));
    for (int t = 0; t < q; ++t)
      for (int x = 0; x < q; ++x) smul[t][x] = f.mul(t, x);
    size_t spot = 0;
    stream_rref(f, n, 2, [&](const Mat& m) {
      uint32_t cu = 0, cv = 0;
      for (int j = 0; j < n; ++j) {
        cu |= (uint32_t)m.at(0, j) << (e * j);
        cv |= (uint32_t)m.at(1, j) << (e * j);
      }
      bool aniso = qnz[cu] && qnz[cv];
      for (int t = 1; aniso && t < q; ++t) {
        uint32_t tu = 0;
        for (int j = 0; j < n; ++j) tu |= (uint32_t)smul[t][m.at(0, j)] << (e * j);
        aniso = qnz[cv ^ tu];
      }
      if (spot++ % 4093 == 0) {
        Subspace s{&f, n, 2, m};
        bool oracle = classify_subspace(form, s) == TypeLabel::anisotropic;
        if (oracle != aniso) throw std::logic_error("fast-path classification mismatch");
      }
      if (aniso) push(m);
    });
  } else {
    stream_rref(f, n, k, [&](const Mat& m) {
      Subspace s{&f, n, k, m};
      if (classify_subspace(form, s) == type) push(m);
    });
  }
  return finish(std::move(d));
}

Perm perm_of(const ActionDomain& d, const SemilinearMap& s) {
  const bool ph = d.kind == ActionDomain::Kind::points_and_hyperplanes;
  if (s.duality && !ph)
    throw std::domain_error("duality generator needs a points-and-hyperplanes domain");
  const Mat m = s.m;
  const Mat minvt = ph ? m.inverse().transpose() : Mat();
  Perm p;
  p.img.resize(d.size());
  std::atomic<bool> bad{false};
#pragma omp parallel for schedule(dynamic, 1024)
  for (size_t id = 0; id < d.size(); ++id) {
    if (bad.load(std::memory_order_relaxed)) continue;
    Mat rows = d.object((Pt)id);
    bool hyp = ph && d.is_hyperplane((Pt)id);
    Mat img = rows.frob(s.frob_e) * (hyp ? minvt : m);
    if (d.kind == ActionDomain::Kind::nonzero_vectors) {
      // vectors are their own canonical form
    } else if (d.k == 1)
      normalize_row(*d.F, img);
    else {
      RrefResult r = rref(img);
      img = r.m;
    }
    Key128 key = d.encode(img);
    if (hyp != s.duality) key |= kFlagMask;  // image lands in the hyperplane block
    auto it = std::lower_bound(d.keys.begin(), d.keys.end(), key);
    if (it == d.keys.end() || *it != key)
      bad.store(true, std::memory_order_relaxed);
    else
      p.img[id] = (Pt)(it - d.keys.begin());
  }
  if (bad) throw std::domain_error("generator does not stabilize the domain");
  return p;
}

Perm perm_of(const ActionDomain& d, const Mat& m) {
  return perm_of(d, SemilinearMap{m, 0, false});
}

std::vector<Perm> perms_of(const ActionDomain& d, const std::vector<SemilinearMap>& gens) {
  std::vector<Perm> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(perm_of(d, g));
  return out;
}

}  // namespace cgt
