#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace msr {

// Field elements are small integer codes 0..q-1. For q = p^e with e > 1 the
// base-p digits of a code are the polynomial coefficients, lowest degree first.
using Elem = std::uint8_t;

constexpr int kMaxFieldSize = 121;

/// Monic modulus for GF(p^e); `coeffs` runs from x^0 to x^e (coeffs[e] == 1).
struct ModulusEntry {
  int q = 0;
  int p = 0;
  int e = 0;
  std::vector<int> coeffs;
};

/// The shipped modulus table (mirrors config/moduli.txt).
const std::vector<ModulusEntry>& builtin_moduli();

/// Parse a modulus table in the config format: one `q: c0 c1 ... ce` line per
/// field, `#` comments. Every entry is checked for irreducibility.
std::vector<ModulusEntry> parse_moduli(const std::string& text);

/// Returns (p, e) with q == p^e, or throws NotAPrimePower.
std::pair<int, int> prime_power(int q);

/// True iff the monic polynomial (coefficients low to high) over GF(p) is irreducible.
bool is_irreducible(const std::vector<int>& coeffs, int p);

class Field {
 public:
  /// Build GF(q) with the shipped modulus.
  static Field make(int q);
  /// Build GF(q) with a caller-supplied monic modulus (low to high, leading 1).
  static Field make(int q, const std::vector<int>& modulus);
  /// Process-wide immutable instance with the shipped modulus.
  static const Field& get(int q);

  int q() const { return q_; }
  int p() const { return p_; }
  int e() const { return e_; }
  const std::vector<int>& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const { return add_[idx(a, b)]; }
  Elem sub(Elem a, Elem b) const { return add_[idx(a, neg_[b])]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem mul(Elem a, Elem b) const { return mul_[idx(a, b)]; }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, long long k) const;

  /// Image of an integer in the prime subfield.
  Elem from_int(long long v) const;
  bool valid(int code) const { return code >= 0 && code < q_; }

  /// Nonzero elements other than 1, in code order.
  std::vector<Elem> alphas() const;

 private:
  Field() = default;
  std::size_t idx(Elem a, Elem b) const { return static_cast<std::size_t>(a) * q_ + b; }
  void build_tables();

  int q_ = 0;
  int p_ = 0;
  int e_ = 0;
  std::vector<int> modulus_;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
  std::vector<Elem> neg_;
  std::vector<Elem> inv_;
};

}  // namespace msr
