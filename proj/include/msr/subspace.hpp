#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "msr/matrix.hpp"

namespace msr {

constexpr int kMaxDimension = 16;
constexpr std::uint64_t kEnumerationLimit = 10'000'000;

using Vec = std::vector<Elem>;

/// A subspace of GF(q)^n held as its reduced row echelon basis. Two values
/// compare equal iff they are the same subspace.
class Subspace {
 public:
  Subspace() = default;
  /// Zero subspace of GF(q)^n.
  Subspace(const Field& f, int n);

  /// Row span of `generators` (each row has length n).
  static Subspace from_generators(const Field& f, int n, const Matrix& generators);
  static Subspace from_vectors(const Field& f, int n, const std::vector<Vec>& vectors);
  static Subspace full(const Field& f, int n);
  /// Trusts that `rref_basis` is already reduced with full row rank.
  static Subspace from_rref(const Field& f, Matrix rref_basis, std::vector<int> pivots);

  const Field& field() const { return *field_; }
  int n() const { return n_; }
  int k() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }
  /// The spanning vector of a point (k == 1).
  std::span<const Elem> vec() const { return basis_.row(0); }

  bool contains(std::span<const Elem> v) const;
  bool contains(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.n_ == b.n_ && a.field_q() == b.field_q() && a.basis_ == b.basis_;
  }
  /// Global order: dimension, pivot pattern, then entries (the enumeration order).
  friend bool operator<(const Subspace& a, const Subspace& b);

 private:
  int field_q() const { return field_ ? field_->q() : 0; }

  const Field* field_ = nullptr;
  int n_ = 0;
  Matrix basis_;
  std::vector<int> pivots_;
};

Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);
bool is_complement(const Subspace& a, const Subspace& b);
bool is_trivial_intersection(const Subspace& a, const Subspace& b);

/// Canonical point through a nonzero vector (first nonzero entry scaled to 1).
Subspace point_of(const Field& f, std::span<const Elem> v);
/// Scales v so that its first nonzero entry is 1; returns false for the zero vector.
bool normalize_vector(const Field& f, std::span<Elem> v);

/// All points of `a`, sorted.
std::vector<Subspace> subspace_points(const Subspace& a);

/// Annihilator rows: vectors w with w·s = 0 for all s in `a`.
Matrix annihilator(const Subspace& a);

std::uint64_t gaussian_binomial(int n, int k, int q);

/// Enumerates the k-subspaces of GF(q)^n in the global order, one at a time.
class SubspaceEnumerator {
 public:
  SubspaceEnumerator(const Field& f, int n, int k);
  /// Next subspace or nullopt when exhausted.
  std::optional<Subspace> next();
  std::uint64_t total() const { return total_; }

 private:
  bool advance_pivots();
  bool advance_free();
  void reset_free();
  Subspace build() const;

  const Field* f_;
  int n_;
  int k_;
  std::uint64_t total_;
  std::vector<int> pivots_;
  std::vector<std::pair<int, int>> free_slots_;
  std::vector<int> free_values_;
  bool started_ = false;
  bool done_ = false;
};

std::vector<Subspace> enumerate_subspaces(const Field& f, int n, int k);

struct Frame {
  int n = 0;
  std::vector<Subspace> points;
};

/// Validates n+1 points of GF(q)^n in general position.
Frame frame_check(const std::vector<Subspace>& points);

/// The standard frame <e1>, ..., <en>, <e1+...+en>.
Frame standard_frame(const Field& f, int n);

}  // namespace msr
