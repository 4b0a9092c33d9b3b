#include "msr/pgl.hpp"

#include <algorithm>
#include <array>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "msr/error.hpp"

namespace msr {

Matrix normalize_projective(const Field& f, const Matrix& m) {
  const auto& d = m.data();
  auto it = std::find_if(d.begin(), d.end(), [](Elem x) { return x != 0; });
  if (it == d.end()) throw Error(ErrorKind::Singular, "zero matrix");
  if (*it == 1) return m;
  return mat_scale(f, m, f.inv(*it));
}

PglElement::PglElement(const Field& f, const Matrix& m) : field_(&f) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "PGL element must be square");
  if (!is_invertible(f, m)) throw Error(ErrorKind::Singular, "matrix is not invertible");
  matrix_ = normalize_projective(f, m);
}

PglElement PglElement::identity(const Field& f, int n) { return PglElement(f, Matrix::identity(n)); }

PglElement pgl_mul(const PglElement& a, const PglElement& b) {
  return PglElement(a.field(), mat_mul(a.field(), a.matrix(), b.matrix()));
}

PglElement pgl_inverse(const PglElement& g) { return PglElement(g.field(), mat_inverse(g.field(), g.matrix())); }

Subspace matrix_act(const Field& f, const Matrix& g, const Subspace& a) {
  if (g.cols() != a.n()) throw Error(ErrorKind::DimensionMismatch, "action on wrong ambient dimension");
  if (a.k() == 0) return a;
  // rows of B·g^T are the images g·b_i
  return Subspace::from_generators(f, a.n(), mat_mul(f, a.basis(), transpose(g)));
}

Subspace pgl_act(const PglElement& g, const Subspace& a) {
  if (g.field().q() != a.field().q()) throw Error(ErrorKind::DimensionMismatch, "pgl_act: field mismatch");
  return matrix_act(g.field(), g.matrix(), a);
}

namespace {

// Columns λ_i v_i with v_{n+1} = Σ λ_i v_i, so the result maps the standard frame onto `frame`.
Matrix frame_matrix(const Field& f, const Frame& frame) {
  const int n = frame.n;
  Matrix cols(n, n);
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < n; ++r) cols(r, i) = frame.points[i].vec()[r];
  const auto last = frame.points[n].vec();
  const Matrix lambdas = mat_mul(f, mat_inverse(f, cols), Matrix(n, 1, Vec(last.begin(), last.end())));
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < n; ++r) out(r, i) = f.mul(cols(r, i), lambdas(i, 0));
  return out;
}

}  // namespace

PglElement pgl_from_frames(const Frame& from, const Frame& to) {
  const Frame a = frame_check(from.points);
  const Frame b = frame_check(to.points);
  if (a.n != b.n) throw Error(ErrorKind::DimensionMismatch, "frames of different dimension");
  const Field& f = a.points.front().field();
  const Matrix pa = frame_matrix(f, a);
  const Matrix pb = frame_matrix(f, b);
  return PglElement(f, mat_mul(f, pb, mat_inverse(f, pa)));
}

Matrix MatrixSpace::combine(std::span<const Elem> coeffs) const {
  Matrix m(n, n);
  for (int j = 0; j < dim(); ++j) {
    const Elem c = coeffs[j];
    if (c == 0) continue;
    const auto& b = basis[j].data();
    for (int i = 0; i < n * n; ++i) {
      if (b[i] != 0) m(i / n, i % n) = field->add(m(i / n, i % n), field->mul(c, b[i]));
    }
  }
  return m;
}

bool MatrixSpace::contains(const Matrix& m) const {
  Matrix rows(0, n * n);
  for (const auto& b : basis) rows.append_row(b.data());
  const int r = mat_rank(*field, rows);
  rows.append_row(m.data());
  return mat_rank(*field, rows) == r;
}

MatrixSpace full_matrix_space(const Field& f, int n) {
  MatrixSpace s{&f, n, {}};
  for (int i = 0; i < n * n; ++i) {
    Matrix e(n, n);
    e(i / n, i % n) = 1;
    s.basis.push_back(std::move(e));
  }
  return s;
}

MatrixSpace stab_algebra(const Field& f, int n, const std::vector<Subspace>& family) {
  // Unknown M (n² entries, row-major). For each member S, each basis vector s and
  // each annihilator row w: Σ_{r,c} w_r s_c M_{rc} = 0.
  Matrix system(0, n * n);
  Vec eq(static_cast<std::size_t>(n) * n);
  for (const auto& s : family) {
    if (s.n() != n) throw Error(ErrorKind::DimensionMismatch, "stab_algebra: mixed ambient dimensions");
    const Matrix ann = annihilator(s);
    for (int b = 0; b < s.k(); ++b) {
      for (int w = 0; w < ann.rows(); ++w) {
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) eq[r * n + c] = f.mul(ann(w, r), s.basis()(b, c));
        system.append_row(eq);
      }
    }
  }
  if (system.rows() == 0) return full_matrix_space(f, n);
  const Matrix ker = mat_kernel(f, system);
  MatrixSpace out{&f, n, {}};
  for (int i = 0; i < ker.rows(); ++i) {
    out.basis.emplace_back(n, n, Vec(ker.row(i).begin(), ker.row(i).end()));
  }
  return out;
}

MatrixSpace stab_algebra(const std::vector<Subspace>& family) {
  if (family.empty()) throw Error(ErrorKind::DimensionMismatch, "stab_algebra of an empty family needs a field and n");
  return stab_algebra(family.front().field(), family.front().n(), family);
}

std::uint64_t projective_count(int q, int d) {
  std::uint64_t total = 0;
  std::uint64_t pw = 1;
  for (int i = 0; i < d; ++i) {
    total += pw;
    pw *= static_cast<std::uint64_t>(q);
  }
  return total;
}

void projective_coords(int q, int d, std::uint64_t rank, std::span<Elem> out) {
  // Lexicographic order groups vectors by the position of the leading 1, last position first.
  std::fill(out.begin(), out.end(), Elem{0});
  std::uint64_t block = 1;
  for (int lead = d - 1; lead >= 0; --lead) {
    if (rank < block) {
      out[lead] = 1;
      for (int j = d - 1; j > lead; --j) {
        out[j] = static_cast<Elem>(rank % q);
        rank /= q;
      }
      return;
    }
    rank -= block;
    block *= static_cast<std::uint64_t>(q);
  }
  throw Error(ErrorKind::IndexOutOfRange, "projective rank out of range");
}

namespace {

std::uint64_t checked_power(int q, int d, std::uint64_t cap, const char* what) {
  std::uint64_t v = 1;
  for (int i = 0; i < d; ++i) {
    v *= static_cast<std::uint64_t>(q);
    if (v > cap) {
      throw Error(ErrorKind::TooLarge, std::string(what) + ": q^dim with dim=" + std::to_string(d) +
                                           " exceeds cap " + std::to_string(cap));
    }
  }
  return v;
}

// Accumulates Σ c_j B_j into `out` (n*n entries).
void combine_into(const MatrixSpace& a, std::span<const Elem> c, Elem* out) {
  const Field& f = *a.field;
  const int nn = a.n * a.n;
  std::fill(out, out + nn, Elem{0});
  for (int j = 0; j < a.dim(); ++j) {
    if (c[j] == 0) continue;
    const Elem* b = a.basis[j].data().data();
    for (int i = 0; i < nn; ++i)
      if (b[i] != 0) out[i] = f.add(out[i], f.mul(c[j], b[i]));
  }
}

void scan_units(const MatrixSpace& a, std::uint64_t begin, std::uint64_t end, std::vector<PglElement>& out) {
  const Field& f = *a.field;
  const int n = a.n;
  std::array<Elem, 64> coeffs{};
  std::array<Elem, kMaxDimension * kMaxDimension> m{};
  std::array<Elem, kMaxDimension * kMaxDimension> work{};
  for (std::uint64_t r = begin; r < end; ++r) {
    projective_coords(f.q(), a.dim(), r, std::span<Elem>(coeffs.data(), a.dim()));
    combine_into(a, std::span<const Elem>(coeffs.data(), a.dim()), m.data());
    std::copy(m.begin(), m.begin() + n * n, work.begin());
    if (rank_in_place(f, work.data(), n, n) != n) continue;
    out.emplace_back(f, Matrix(n, n, Vec(m.begin(), m.begin() + n * n)));
  }
}

}  // namespace

std::vector<PglElement> algebra_units_serial(const MatrixSpace& algebra) {
  std::vector<PglElement> out;
  scan_units(algebra, 0, projective_count(algebra.field->q(), algebra.dim()), out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PglElement> algebra_units_parallel(const MatrixSpace& algebra, int jobs) {
  const std::uint64_t total = projective_count(algebra.field->q(), algebra.dim());
  constexpr std::uint64_t kChunk = 4096;
  const std::int64_t chunks = static_cast<std::int64_t>((total + kChunk - 1) / kChunk);
  std::vector<std::vector<PglElement>> parts(chunks);
#ifdef _OPENMP
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::uint64_t b = static_cast<std::uint64_t>(c) * kChunk;
    scan_units(algebra, b, std::min(total, b + kChunk), parts[c]);
  }
  (void)jobs;
  std::vector<PglElement> out;
  for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  std::sort(out.begin(), out.end());
  return out;
}

bool algebra_is_closed(const MatrixSpace& algebra) {
  for (const auto& a : algebra.basis)
    for (const auto& b : algebra.basis)
      if (!algebra.contains(mat_mul(*algebra.field, a, b))) return false;
  return true;
}

PglGroup PglGroup::from_elements(std::vector<PglElement> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  PglGroup g;
  g.elements_ = std::move(elements);
  if (g.elements_.empty()) throw Error(ErrorKind::DimensionMismatch, "empty group");
  const auto& f = g.elements_.front().field();
  if (!g.contains(PglElement::identity(f, g.elements_.front().n()))) {
    throw Error(ErrorKind::DimensionMismatch, "group does not contain the identity");
  }
  for (const auto& a : g.elements_) {
    if (!g.contains(pgl_inverse(a))) throw Error(ErrorKind::DimensionMismatch, "group not closed under inverse");
    for (const auto& b : g.elements_) {
      if (!g.contains(pgl_mul(a, b))) throw Error(ErrorKind::DimensionMismatch, "group not closed under product");
    }
  }
  return g;
}

PglGroup PglGroup::from_algebra_units(std::vector<PglElement> elements, const MatrixSpace& algebra) {
  if (!algebra_is_closed(algebra)) throw Error(ErrorKind::DimensionMismatch, "matrix space is not an algebra");
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  PglGroup g;
  g.elements_ = std::move(elements);
  if (g.elements_.empty() ||
      !g.contains(PglElement::identity(g.elements_.front().field(), g.elements_.front().n()))) {
    throw Error(ErrorKind::DimensionMismatch, "algebra units must contain the identity");
  }
  return g;
}

bool PglGroup::contains(const PglElement& g) const { return std::binary_search(elements_.begin(), elements_.end(), g); }

PglGroup algebra_units(const MatrixSpace& algebra, std::uint64_t cap, int jobs) {
  checked_power(algebra.field->q(), algebra.dim(), cap, "stab_group");
  auto units = jobs == 1 ? algebra_units_serial(algebra) : algebra_units_parallel(algebra, jobs);
  return PglGroup::from_algebra_units(std::move(units), algebra);
}

PglGroup stab_group(const Field& f, int n, const std::vector<Subspace>& family, std::uint64_t cap, int jobs) {
  return algebra_units(stab_algebra(f, n, family), cap, jobs);
}

PglGroup stab_group(const std::vector<Subspace>& family, std::uint64_t cap, int jobs) {
  if (family.empty()) throw Error(ErrorKind::DimensionMismatch, "stab_group of an empty family needs a field and n");
  return stab_group(family.front().field(), family.front().n(), family, cap, jobs);
}

bool acts_as_scalar(const PglElement& g, const Subspace& a) {
  if (g.n() != a.n()) throw Error(ErrorKind::DimensionMismatch, "acts_as_scalar");
  const Field& f = g.field();
  bool have_lambda = false;
  Elem lambda = 0;
  for (int i = 0; i < a.k(); ++i) {
    const auto v = a.basis().row(i);
    const Vec img = mat_vec(f, g.matrix(), v);
    const int p = a.pivots()[i];  // v[p] == 1
    const Elem l = img[p];
    if (have_lambda && l != lambda) return false;
    have_lambda = true;
    lambda = l;
    for (int j = 0; j < a.n(); ++j)
      if (img[j] != f.mul(l, v[j])) return false;
  }
  return true;
}

bool group_fixes_pointwise(const PglGroup& u, const Subspace& a) {
  return std::all_of(u.elements().begin(), u.elements().end(),
                     [&](const PglElement& g) { return acts_as_scalar(g, a); });
}

std::vector<FixedSubspace> pointwise_fixed_subspaces(const PglGroup& u, const Field& f, int n, int kmin) {
  std::vector<FixedSubspace> out;
  for (int k = std::max(kmin, 0); k <= n; ++k) {
    SubspaceEnumerator en(f, n, k);
    while (auto s = en.next()) {
      if (group_fixes_pointwise(u, *s)) out.push_back({std::move(*s), true});
    }
  }
  for (auto& a : out) {
    for (const auto& b : out) {
      if (b.space.k() > a.space.k() && b.space.contains(a.space)) {
        a.maximal = false;
        break;
      }
    }
  }
  return out;
}

std::vector<PglElement> enumerate_pgl(const Field& f, int n, std::uint64_t cap) {
  checked_power(f.q(), n * n, cap, "enumerate_pgl");
  return algebra_units_serial(full_matrix_space(f, n));
}

}  // namespace msr
