#include "msr/subspace.hpp"

#include <algorithm>
#include <string>

#include "msr/error.hpp"

namespace msr {

namespace {

void check_dim(int n) {
  if (n < 0 || n > kMaxDimension) {
    throw Error(ErrorKind::TooLarge, "ambient dimension " + std::to_string(n) + " exceeds 16");
  }
}

void same_ambient(const Subspace& a, const Subspace& b, const char* what) {
  if (a.n() != b.n() || a.field().q() != b.field().q()) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": different ambient spaces");
  }
}

}  // namespace

Subspace::Subspace(const Field& f, int n) : field_(&f), n_(n), basis_(0, n) { check_dim(n); }

Subspace Subspace::from_generators(const Field& f, int n, const Matrix& generators) {
  check_dim(n);
  if (generators.rows() > 0 && generators.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch,
                "generator length " + std::to_string(generators.cols()) + " != " + std::to_string(n));
  }
  Subspace s(f, n);
  if (generators.rows() == 0) return s;
  auto rr = mat_rref(f, generators);
  Matrix basis(rr.rank, n);
  for (int i = 0; i < rr.rank; ++i)
    for (int j = 0; j < n; ++j) basis(i, j) = rr.reduced(i, j);
  s.basis_ = std::move(basis);
  s.pivots_ = std::move(rr.pivots);
  return s;
}

Subspace Subspace::from_vectors(const Field& f, int n, const std::vector<Vec>& vectors) {
  Matrix g(0, n);
  for (const auto& v : vectors) {
    if (static_cast<int>(v.size()) != n) {
      throw Error(ErrorKind::DimensionMismatch, "vector length " + std::to_string(v.size()) + " != " + std::to_string(n));
    }
    g.append_row(v);
  }
  return from_generators(f, n, g);
}

Subspace Subspace::full(const Field& f, int n) { return from_generators(f, n, Matrix::identity(n)); }

Subspace Subspace::from_rref(const Field& f, Matrix rref_basis, std::vector<int> pivots) {
  Subspace s(f, rref_basis.cols());
  s.basis_ = std::move(rref_basis);
  s.pivots_ = std::move(pivots);
  return s;
}

bool Subspace::contains(std::span<const Elem> v) const {
  const Field& f = *field_;
  Vec r(v.begin(), v.end());
  for (int i = 0; i < k(); ++i) {
    const Elem c = r[pivots_[i]];
    if (c == 0) continue;
    const Elem nc = f.neg(c);
    const auto row = basis_.row(i);
    for (int j = pivots_[i]; j < n_; ++j) r[j] = f.add(r[j], f.mul(nc, row[j]));
  }
  return std::all_of(r.begin(), r.end(), [](Elem x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  if (other.k() > k()) return false;
  for (int i = 0; i < other.k(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

bool operator<(const Subspace& a, const Subspace& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  if (a.k() != b.k()) return a.k() < b.k();
  if (a.pivots_ != b.pivots_) return a.pivots_ < b.pivots_;
  return a.basis_.data() < b.basis_.data();
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  same_ambient(a, b, "subspace_sum");
  return Subspace::from_generators(a.field(), a.n(), vstack(a.basis(), b.basis()));
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  same_ambient(a, b, "subspace_intersect");
  const Field& f = a.field();
  if (a.k() == 0 || b.k() == 0) return Subspace(f, a.n());
  // (x, y) with x^T A + y^T B = 0; the intersection is spanned by x^T A.
  const Matrix system = transpose(vstack(a.basis(), b.basis()));
  const Matrix ker = mat_kernel(f, system);
  Matrix gens(0, a.n());
  Vec v(a.n());
  for (int r = 0; r < ker.rows(); ++r) {
    std::fill(v.begin(), v.end(), Elem{0});
    for (int i = 0; i < a.k(); ++i) {
      const Elem c = ker(r, i);
      if (c == 0) continue;
      for (int j = 0; j < a.n(); ++j) v[j] = f.add(v[j], f.mul(c, a.basis()(i, j)));
    }
    gens.append_row(v);
  }
  return Subspace::from_generators(f, a.n(), gens);
}

bool is_trivial_intersection(const Subspace& a, const Subspace& b) {
  same_ambient(a, b, "is_trivial_intersection");
  if (a.k() + b.k() > a.n()) return false;
  return mat_rank(a.field(), vstack(a.basis(), b.basis())) == a.k() + b.k();
}

bool is_complement(const Subspace& a, const Subspace& b) {
  same_ambient(a, b, "is_complement");
  if (a.k() + b.k() != a.n()) {
    throw Error(ErrorKind::DimensionMismatch, "is_complement: dimensions " + std::to_string(a.k()) + " + " +
                                                  std::to_string(b.k()) + " != " + std::to_string(a.n()));
  }
  return is_trivial_intersection(a, b);
}

bool normalize_vector(const Field& f, std::span<Elem> v) {
  auto it = std::find_if(v.begin(), v.end(), [](Elem x) { return x != 0; });
  if (it == v.end()) return false;
  const Elem s = f.inv(*it);
  for (auto& x : v) x = f.mul(x, s);
  return true;
}

Subspace point_of(const Field& f, std::span<const Elem> v) {
  Vec w(v.begin(), v.end());
  const int n = static_cast<int>(w.size());
  if (!normalize_vector(f, w)) throw Error(ErrorKind::DimensionMismatch, "point_of: zero vector");
  const int pivot = static_cast<int>(std::find_if(w.begin(), w.end(), [](Elem x) { return x != 0; }) - w.begin());
  return Subspace::from_rref(f, Matrix(1, n, std::move(w)), {pivot});
}

std::vector<Subspace> subspace_points(const Subspace& a) {
  const Field& f = a.field();
  const int k = a.k();
  std::vector<Subspace> pts;
  if (k == 0) return pts;
  // Coefficient vectors with first nonzero entry 1, i.e. one per point.
  std::vector<int> c(k, 0);
  Vec v(a.n());
  for (int lead = 0; lead < k; ++lead) {
    std::fill(c.begin(), c.end(), 0);
    c[lead] = 1;
    while (true) {
      std::fill(v.begin(), v.end(), Elem{0});
      for (int i = lead; i < k; ++i) {
        if (c[i] == 0) continue;
        for (int j = 0; j < a.n(); ++j) v[j] = f.add(v[j], f.mul(static_cast<Elem>(c[i]), a.basis()(i, j)));
      }
      pts.push_back(point_of(f, v));
      int pos = k - 1;
      while (pos > lead && c[pos] == f.q() - 1) c[pos--] = 0;
      if (pos == lead) break;
      ++c[pos];
    }
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

Matrix annihilator(const Subspace& a) {
  if (a.k() == 0) return Matrix::identity(a.n());
  return mat_kernel(a.field(), a.basis());
}

std::uint64_t gaussian_binomial(int n, int k, int q) {
  if (k < 0 || k > n) return 0;
  using u128 = unsigned __int128;
  const u128 cap = static_cast<u128>(~std::uint64_t{0});
  // [n,k] = [n-1,k-1] + q^k [n-1,k], saturating.
  std::vector<std::vector<u128>> g(n + 1, std::vector<u128>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    g[i][0] = 1;
    u128 qk = 1;
    for (int j = 1; j <= i; ++j) {
      qk = std::min(cap, qk * static_cast<u128>(q));
      const u128 rest = j <= i - 1 ? std::min(cap, qk * g[i - 1][j]) : 0;
      g[i][j] = std::min(cap, g[i - 1][j - 1] + rest);
    }
  }
  return static_cast<std::uint64_t>(g[n][k]);
}

SubspaceEnumerator::SubspaceEnumerator(const Field& f, int n, int k) : f_(&f), n_(n), k_(k) {
  check_dim(n);
  if (k < 0 || k > n) throw Error(ErrorKind::DimensionMismatch, "k out of range");
  total_ = gaussian_binomial(n, k, f.q());
  if (total_ > kEnumerationLimit) {
    throw Error(ErrorKind::TooLarge, "Gaussian binomial [" + std::to_string(n) + "," + std::to_string(k) + "]_" +
                                         std::to_string(f.q()) + " = " + std::to_string(total_) +
                                         " exceeds 10^7");
  }
  pivots_.resize(k);
  for (int i = 0; i < k; ++i) pivots_[i] = i;
}

void SubspaceEnumerator::reset_free() {
  free_slots_.clear();
  for (int i = 0; i < k_; ++i) {
    for (int c = pivots_[i] + 1; c < n_; ++c) {
      if (!std::binary_search(pivots_.begin(), pivots_.end(), c)) free_slots_.emplace_back(i, c);
    }
  }
  free_values_.assign(free_slots_.size(), 0);
}

bool SubspaceEnumerator::advance_free() {
  for (int i = static_cast<int>(free_values_.size()) - 1; i >= 0; --i) {
    if (++free_values_[i] < f_->q()) return true;
    free_values_[i] = 0;
  }
  return false;
}

bool SubspaceEnumerator::advance_pivots() {
  int i = k_ - 1;
  while (i >= 0 && pivots_[i] == n_ - k_ + i) --i;
  if (i < 0) return false;
  ++pivots_[i];
  for (int j = i + 1; j < k_; ++j) pivots_[j] = pivots_[j - 1] + 1;
  return true;
}

Subspace SubspaceEnumerator::build() const {
  Matrix b(k_, n_);
  for (int i = 0; i < k_; ++i) b(i, pivots_[i]) = 1;
  for (std::size_t s = 0; s < free_slots_.size(); ++s) {
    b(free_slots_[s].first, free_slots_[s].second) = static_cast<Elem>(free_values_[s]);
  }
  return Subspace::from_rref(*f_, std::move(b), pivots_);
}

std::optional<Subspace> SubspaceEnumerator::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    reset_free();
    return build();
  }
  if (advance_free()) return build();
  if (!advance_pivots()) {
    done_ = true;
    return std::nullopt;
  }
  reset_free();
  return build();
}

std::vector<Subspace> enumerate_subspaces(const Field& f, int n, int k) {
  SubspaceEnumerator en(f, n, k);
  std::vector<Subspace> out;
  out.reserve(en.total());
  while (auto s = en.next()) out.push_back(std::move(*s));
  return out;
}

Frame frame_check(const std::vector<Subspace>& points) {
  if (points.empty()) throw Error(ErrorKind::NotAFrame, "no points");
  const int n = points.front().n();
  const Field& f = points.front().field();
  if (static_cast<int>(points.size()) != n + 1) {
    throw Error(ErrorKind::NotAFrame, "expected " + std::to_string(n + 1) + " points, got " +
                                          std::to_string(points.size()));
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].n() != n || points[i].k() != 1) {
      throw Error(ErrorKind::NotAFrame, "entry " + std::to_string(i) + " is not a point of GF(q)^" + std::to_string(n));
    }
  }
  for (int skip = 0; skip <= n; ++skip) {
    Matrix m(0, n);
    for (int i = 0; i <= n; ++i)
      if (i != skip) m.append_row(points[i].vec());
    if (mat_rank(f, m) != n) {
      throw Error(ErrorKind::NotAFrame, "points without index " + std::to_string(skip) + " do not span");
    }
  }
  return Frame{n, points};
}

Frame standard_frame(const Field& f, int n) {
  std::vector<Subspace> pts;
  Vec v(n);
  for (int i = 0; i < n; ++i) {
    std::fill(v.begin(), v.end(), Elem{0});
    v[i] = 1;
    pts.push_back(point_of(f, v));
  }
  std::fill(v.begin(), v.end(), Elem{1});
  pts.push_back(point_of(f, v));
  return Frame{n, pts};
}

}  // namespace msr
