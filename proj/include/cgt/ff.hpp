#pragma once
// Exact arithmetic in small finite fields GF(r^f), r prime, r^f <= 2^16.
//
// Elements are represented as plain `int` in [0, q): the base-r integer
// encoding of the coefficient vector of the element, little-endian
// (c0 + c1*r + c2*r^2 + ...).  Multiplication/inversion go through
// discrete-log tables; addition of nonzero elements goes through a Zech
// logarithm table.  All tables are immutable after construction, so a
// field object is safe for concurrent reads.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgt {

class Fq {
public:
  // Builds GF(r^f) with the lexicographically least primitive monic modulus
  // (coefficient vectors compared as little-endian base-r integers).
  Fq(int r, int f);

  int r() const { return r_; }
  int f() const { return f_; }
  int q() const { return q_; }
  // Monic modulus coefficients c0..cf (cf = 1).
  const std::vector<int>& modulus() const { return modulus_; }

  bool is_elem(int a) const { return a >= 0 && a < q_; }
  int zero() const { return 0; }
  int one() const { return one_; }
  // The primitive root used by the log tables (the residue of x when f >= 2).
  int gen() const { return q_ == 2 ? 1 : expt_[1]; }

  int add(int a, int b) const;
  int neg(int a) const;
  int sub(int a, int b) const { return add(a, neg(b)); }
  int mul(int a, int b) const;
  int inv(int a) const;
  int div(int a, int b) const { return mul(a, inv(b)); }
  // a^k for any integer k (negative allowed when a != 0).
  int pow(int a, long long k) const;
  // Frobenius: a -> a^(r^k).
  int frobenius(int a, int k) const;

  // Multiplicative order of a nonzero element.
  int mult_order(int a) const;

  int log(int a) const;          // a != 0; in [0, q-2]
  int exp(int k) const { return expt_[((k % (q_ - 1)) + (q_ - 1)) % (q_ - 1)]; }

  // Prime subfield injection: integer c in [0, r) -> element.
  int from_int(int c) const { return ((c % r_) + r_) % r_; }

  std::string name() const;

private:
  int r_, f_, q_, one_;
  std::vector<int> modulus_;
  std::vector<int> logt_;  // size q, logt_[0] = -1
  std::vector<int> expt_;  // size q-1
  std::vector<int> zech_;  // size q-1; zech_[k] = log(1 + g^k), or -1 if zero
};

// Cached field registry; returned reference lives for the program.
const Fq& field(int r, int f);

// Parses "r^f" or a plain prime-power integer like "4" or "9".
const Fq& field_from_spec(const std::string& spec);

// Subfield embedding GF(r^d) -> GF(r^f), d | f: log-scaling by
// (r^f-1)/(r^d-1) composed with the least coprime power making the image a
// root of the subfield modulus (so the map is a ring embedding).
class SubfieldEmbed {
public:
  SubfieldEmbed(const Fq& small, const Fq& big);
  int operator()(int a) const { return map_[a]; }
  const Fq& small() const { return *small_; }
  const Fq& big() const { return *big_; }
  // Partial inverse: returns -1 if b is not in the image.
  int down(int b) const;

private:
  const Fq* small_;
  const Fq* big_;
  std::vector<int> map_;
};

}  // namespace cgt
