#include "msr/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "msr/error.hpp"

namespace msr {

namespace {

using Poly = std::vector<int>;  // low to high

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic b over GF(p).
Poly poly_mod(Poly a, const Poly& b, int p) {
  trim(a);
  const int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= db) {
    const int shift = static_cast<int>(a.size()) - 1 - db;
    const int lead = a.back();
    for (int i = 0; i <= db; ++i) {
      a[shift + i] = ((a[shift + i] - lead * b[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

Poly digits(int code, int p, int e) {
  Poly d(e, 0);
  for (int i = 0; i < e; ++i) {
    d[i] = code % p;
    code /= p;
  }
  return d;
}

int encode(const Poly& d, int p) {
  int code = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) code = code * p + d[i];
  return code;
}

const std::vector<ModulusEntry>& builtin_table() {
  static const std::vector<ModulusEntry> table = {
      {4, 2, 2, {1, 1, 1}},
      {8, 2, 3, {1, 1, 0, 1}},
      {9, 3, 2, {2, 2, 1}},
      {16, 2, 4, {1, 1, 0, 0, 1}},
      {25, 5, 2, {2, 4, 1}},
      {27, 3, 3, {1, 2, 0, 1}},
      {32, 2, 5, {1, 0, 1, 0, 0, 1}},
      {49, 7, 2, {3, 6, 1}},
      {64, 2, 6, {1, 1, 0, 1, 1, 0, 1}},
      {81, 3, 4, {2, 0, 0, 2, 1}},
      {121, 11, 2, {2, 7, 1}},
  };
  return table;
}

}  // namespace

const std::vector<ModulusEntry>& builtin_moduli() { return builtin_table(); }

std::pair<int, int> prime_power(int q) {
  if (q < 2) throw Error(ErrorKind::NotAPrimePower, std::to_string(q));
  int p = 2;
  while (q % p != 0) ++p;
  int e = 0;
  int r = q;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  if (r != 1) throw Error(ErrorKind::NotAPrimePower, std::to_string(q));
  return {p, e};
}

bool is_irreducible(const std::vector<int>& coeffs, int p) {
  Poly f = coeffs;
  trim(f);
  const int deg = static_cast<int>(f.size()) - 1;
  if (deg < 1) return false;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (int d = 1; 2 * d <= deg; ++d) {
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int low = 0; low < count; ++low) {
      Poly g = digits(low, p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<ModulusEntry> parse_moduli(const std::string& text) {
  std::vector<ModulusEntry> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorKind::ParseError, "moduli line " + std::to_string(lineno) + ": missing ':'");
    }
    ModulusEntry entry;
    entry.q = std::stoi(line.substr(0, colon));
    std::tie(entry.p, entry.e) = prime_power(entry.q);
    std::istringstream cs(line.substr(colon + 1));
    int c = 0;
    while (cs >> c) entry.coeffs.push_back(c);
    if (static_cast<int>(entry.coeffs.size()) != entry.e + 1 || entry.coeffs.back() != 1) {
      throw Error(ErrorKind::ParseError,
                  "moduli line " + std::to_string(lineno) + ": expected monic degree " + std::to_string(entry.e));
    }
    if (!is_irreducible(entry.coeffs, entry.p)) {
      throw Error(ErrorKind::ReducibleModulus, "q=" + std::to_string(entry.q));
    }
    out.push_back(std::move(entry));
  }
  return out;
}

Field Field::make(int q) {
  const auto [p, e] = prime_power(q);
  if (q > kMaxFieldSize) throw Error(ErrorKind::TooLarge, "q=" + std::to_string(q) + " exceeds 121");
  if (e == 1) return make(q, {0, 1});
  for (const auto& entry : builtin_table()) {
    if (entry.q == q) return make(q, entry.coeffs);
  }
  throw Error(ErrorKind::TooLarge, "no shipped modulus for q=" + std::to_string(q));
}

Field Field::make(int q, const std::vector<int>& modulus) {
  const auto [p, e] = prime_power(q);
  if (q > kMaxFieldSize) throw Error(ErrorKind::TooLarge, "q=" + std::to_string(q) + " exceeds 121");
  if (static_cast<int>(modulus.size()) != e + 1 || modulus.back() != 1) {
    throw Error(ErrorKind::ReducibleModulus, "modulus must be monic of degree " + std::to_string(e));
  }
  for (int c : modulus) {
    if (c < 0 || c >= p) throw Error(ErrorKind::ReducibleModulus, "coefficient out of range");
  }
  if (!is_irreducible(modulus, p)) throw Error(ErrorKind::ReducibleModulus, "q=" + std::to_string(q));
  Field f;
  f.q_ = q;
  f.p_ = p;
  f.e_ = e;
  f.modulus_ = modulus;
  f.build_tables();
  return f;
}

const Field& Field::get(int q) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<const Field>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it == cache.end()) {
    it = cache.emplace(q, std::make_unique<const Field>(make(q))).first;
  }
  return *it->second;
}

void Field::build_tables() {
  const std::size_t qq = static_cast<std::size_t>(q_) * q_;
  add_.assign(qq, 0);
  mul_.assign(qq, 0);
  neg_.assign(q_, 0);
  inv_.assign(q_, 0);
  for (int a = 0; a < q_; ++a) {
    const Poly da = digits(a, p_, e_);
    Poly dn(e_);
    for (int i = 0; i < e_; ++i) dn[i] = (p_ - da[i]) % p_;
    neg_[a] = static_cast<Elem>(encode(dn, p_));
    for (int b = 0; b < q_; ++b) {
      const Poly db = digits(b, p_, e_);
      Poly s(e_);
      for (int i = 0; i < e_; ++i) s[i] = (da[i] + db[i]) % p_;
      add_[idx(a, b)] = static_cast<Elem>(encode(s, p_));
      Poly prod(2 * e_, 0);
      for (int i = 0; i < e_; ++i)
        for (int j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
      Poly r = poly_mod(prod, modulus_, p_);
      r.resize(e_, 0);
      mul_[idx(a, b)] = static_cast<Elem>(encode(r, p_));
    }
  }
  for (int a = 1; a < q_; ++a) {
    for (int b = 1; b < q_; ++b) {
      if (mul_[idx(a, b)] == 1) {
        inv_[a] = static_cast<Elem>(b);
        break;
      }
    }
  }
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of 0");
  return inv_[a];
}

Elem Field::pow(Elem a, long long k) const {
  if (k < 0) return pow(inv(a), -k);
  Elem result = 1;
  Elem base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

Elem Field::from_int(long long v) const {
  const long long r = ((v % p_) + p_) % p_;
  return static_cast<Elem>(r);
}

std::vector<Elem> Field::alphas() const {
  std::vector<Elem> out;
  for (int a = 2; a < q_; ++a) out.push_back(static_cast<Elem>(a));
  return out;
}

}  // namespace msr
