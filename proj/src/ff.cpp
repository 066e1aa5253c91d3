#include "cgt/ff.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace cgt {
namespace {

bool is_prime_int(int n) {
  if (n < 2) return false;
  for (int d = 2; (long long)d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<int> prime_factors_int(int n) {
  std::vector<int> ps;
  for (int d = 2; (long long)d * d <= n; ++d) {
    if (n % d == 0) {
      ps.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

// Dense polynomial arithmetic over GF(r), little-endian coefficient vectors.
using Poly = std::vector<int>;

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, int r) {
  int f = (int)mod.size() - 1;
  std::vector<int> prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % r;
  }
  // reduce by monic mod
  for (int d = (int)prod.size() - 1; d >= f; --d) {
    int c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (int i = 0; i < f; ++i) {
      int& t = prod[d - f + i];
      t = (t - c * mod[i]) % r;
      if (t < 0) t += r;
    }
  }
  prod.resize(f > 0 ? f : 1);
  return prod;
}

Poly poly_powmod(Poly base, long long e, const Poly& mod, int r) {
  int f = (int)mod.size() - 1;
  Poly acc(std::max(f, 1), 0);
  acc[0] = 1;
  while (e > 0) {
    if (e & 1) acc = poly_mulmod(acc, base, mod, r);
    base = poly_mulmod(base, base, mod, r);
    e >>= 1;
  }
  return acc;
}

bool poly_is_one(const Poly& p) {
  if (p.empty() || p[0] != 1) return false;
  for (size_t i = 1; i < p.size(); ++i)
    if (p[i] != 0) return false;
  return true;
}

int encode_poly(const Poly& p, int r) {
  int v = 0;
  for (int i = (int)p.size() - 1; i >= 0; --i) v = v * r + p[i];
  return v;
}

Poly decode_poly(int v, int r, int f) {
  Poly p(std::max(f, 1), 0);
  for (int i = 0; i < f && v > 0; ++i) {
    p[i] = v % r;
    v /= r;
  }
  return p;
}

}  // namespace

Fq::Fq(int r, int f) : r_(r), f_(f) {
  if (!is_prime_int(r)) throw std::invalid_argument("Fq: characteristic must be prime");
  if (f < 1) throw std::invalid_argument("Fq: degree must be >= 1");
  long long q = 1;
  for (int i = 0; i < f; ++i) {
    q *= r;
    if (q > (1 << 16)) throw std::invalid_argument("Fq: field size exceeds 2^16");
  }
  q_ = (int)q;
  one_ = 1;

  // Find the least monic primitive polynomial of degree f (free coefficients
  // compared as a little-endian base-r integer).  x is a unit mod m iff
  // c0 != 0, and ord(x) = q-1 forces m irreducible and primitive: the unit
  // group of GF(r)[x]/(m) has order < q-1 for every reducible m.
  const int qm1 = q_ - 1;
  auto pf = prime_factors_int(qm1);
  Poly xpoly(std::max(f, 1) + (f == 1 ? 1 : 0), 0);
  // residue of x mod m: for f >= 2 it is the polynomial "x"; for f = 1 it is
  // -c0 and poly_mulmod handles the reduction uniformly.
  for (int free = 0; free < q_; ++free) {
    Poly m = decode_poly(free, r, f);
    m.resize(f + 1, 0);
    m[f] = 1;
    if (m[0] == 0) continue;  // divisible by x
    Poly x(std::max(f, 1), 0);
    if (f >= 2) {
      x[1] = 1;
    } else {
      x[0] = ((-m[0]) % r + r) % r;  // residue of x mod (x + c0)
    }
    if (!poly_is_one(poly_powmod(x, qm1, m, r))) continue;
    bool primitive = true;
    for (int p : pf) {
      if (poly_is_one(poly_powmod(x, qm1 / p, m, r))) {
        primitive = false;
        break;
      }
    }
    if (!primitive) continue;
    modulus_ = m;
    break;
  }
  if (modulus_.empty()) throw std::logic_error("Fq: no primitive polynomial found");

  // exp/log tables from powers of the residue of x.
  expt_.assign(qm1, 0);
  logt_.assign(q_, -1);
  Poly g(std::max(f, 1), 0);
  if (f >= 2) {
    g[1] = 1;
  } else {
    g[0] = ((-modulus_[0]) % r + r) % r;
  }
  Poly acc(std::max(f, 1), 0);
  acc[0] = 1;
  for (int k = 0; k < qm1; ++k) {
    int v = encode_poly(acc, r);
    expt_[k] = v;
    if (logt_[v] != -1) throw std::logic_error("Fq: generator order too small");
    logt_[v] = k;
    acc = poly_mulmod(acc, g, modulus_, r);
  }
  if (!poly_is_one(acc)) throw std::logic_error("Fq: generator order mismatch");

  // Zech table: zech_[k] = log(1 + g^k) with -1 marking 1 + g^k = 0.
  zech_.assign(qm1, -1);
  for (int k = 0; k < qm1; ++k) {
    Poly t = decode_poly(expt_[k], r, f);
    t[0] = (t[0] + 1) % r;
    int v = encode_poly(t, r);
    zech_[k] = (v == 0) ? -1 : logt_[v];
  }
}

int Fq::add(int a, int b) const {
  if (a == 0) return b;
  if (b == 0) return a;
  int la = logt_[a], lb = logt_[b];
  int d = lb - la;
  if (d < 0) d += q_ - 1;
  int z = zech_[d];
  if (z < 0) return 0;
  int s = la + z;
  if (s >= q_ - 1) s -= q_ - 1;
  return expt_[s];
}

int Fq::neg(int a) const {
  if (r_ == 2) return a;
  int v = 0, mul = 1, x = a;
  for (int i = 0; i < f_; ++i) {
    int c = x % r_;
    x /= r_;
    v += ((r_ - c) % r_) * mul;
    mul *= r_;
  }
  return v;
}

int Fq::mul(int a, int b) const {
  if (a == 0 || b == 0) return 0;
  int s = logt_[a] + logt_[b];
  if (s >= q_ - 1) s -= q_ - 1;
  return expt_[s];
}

int Fq::inv(int a) const {
  if (a == 0) throw std::domain_error("Fq: inversion of zero");
  int l = logt_[a];
  return expt_[l == 0 ? 0 : q_ - 1 - l];
}

int Fq::pow(int a, long long k) const {
  if (a == 0) {
    if (k > 0) return 0;
    if (k == 0) return one_;
    throw std::domain_error("Fq: negative power of zero");
  }
  long long m = (long long)logt_[a] * (((k % (q_ - 1)) + (q_ - 1)) % (q_ - 1));
  return expt_[(int)(m % (q_ - 1))];
}

int Fq::frobenius(int a, int k) const {
  if (a == 0) return 0;
  long long rk = 1;  // r^k mod (q-1)
  for (int i = 0; i < k; ++i) rk = (rk * r_) % (q_ - 1);
  long long e = ((long long)logt_[a] * rk) % (q_ - 1);
  return expt_[(int)e];
}

int Fq::mult_order(int a) const {
  if (a == 0) throw std::domain_error("Fq: order of zero");
  int l = logt_[a];
  return (q_ - 1) / std::gcd(q_ - 1, l == 0 ? q_ - 1 : l);
}

int Fq::log(int a) const {
  if (a == 0) throw std::domain_error("Fq: log of zero");
  return logt_[a];
}

std::string Fq::name() const {
  std::ostringstream os;
  os << "GF(" << r_;
  if (f_ > 1) os << "^" << f_;
  os << ")";
  return os.str();
}

const Fq& field(int r, int f) {
  static std::map<std::pair<int, int>, std::unique_ptr<Fq>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_pair(r, f);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<Fq>(r, f)).first;
  return *it->second;
}

const Fq& field_from_spec(const std::string& spec) {
  auto caret = spec.find('^');
  if (caret != std::string::npos) {
    int r = std::stoi(spec.substr(0, caret));
    int f = std::stoi(spec.substr(caret + 1));
    return field(r, f);
  }
  long long q = std::stoll(spec);
  if (q < 2) throw std::invalid_argument("field spec must be a prime power >= 2");
  int r = 2;
  while (q % r != 0) {
    ++r;
    if ((long long)r * r > q) {
      r = (int)q;
      break;
    }
  }
  int f = 0;
  long long t = q;
  while (t > 1) {
    if (t % r != 0) throw std::invalid_argument("field spec is not a prime power");
    t /= r;
    ++f;
  }
  return field(r, f);
}

SubfieldEmbed::SubfieldEmbed(const Fq& small, const Fq& big)
    : small_(&small), big_(&big) {
  if (small.r() != big.r() || big.f() % small.f() != 0)
    throw std::invalid_argument("SubfieldEmbed: not a subfield pair");
  int qd = small.q(), qf = big.q();
  long long s = (long long)(qf - 1) / (qd - 1);
  // Least power t coprime to qd-1 such that g_small -> g_big^(s*t) is a root
  // of the small modulus; this makes log-scaling a ring embedding.
  int chosen = -1;
  for (int t = 1; t <= std::max(1, qd - 2) && chosen < 0; ++t) {
    if (std::gcd(t, qd - 1) != 1) continue;
    int h = big.exp(s * t % (qf - 1));
    // evaluate the small modulus at h inside the big field
    int val = 0, hp = big.one();
    for (int c : small.modulus()) {
      val = big.add(val, big.mul(big.from_int(c), hp));
      hp = big.mul(hp, h);
    }
    if (val == 0) chosen = t;
  }
  if (qd == 2) chosen = 1;  // x + 1 has root 1 in every field
  if (chosen < 0) throw std::logic_error("SubfieldEmbed: no compatible root");
  map_.assign(qd, 0);
  for (int k = 0; k < qd - 1; ++k)
    map_[small.exp(k)] = big.exp(((long long)s * chosen % (qf - 1)) * k % (qf - 1));
}

int SubfieldEmbed::down(int b) const {
  for (int a = 0; a < (int)map_.size(); ++a)
    if (map_[a] == b) return a;
  return -1;
}

}  // namespace cgt
