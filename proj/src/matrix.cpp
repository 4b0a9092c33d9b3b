#include "msr/matrix.hpp"

#include <cstdint>
#include <string>

#include "msr/error.hpp"

namespace msr {

Matrix::Matrix(int rows, int cols, std::vector<Elem> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != static_cast<std::size_t>(rows) * cols) {
    throw Error(ErrorKind::DimensionMismatch, "matrix data size");
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<int>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
    for (int v : r) data_.push_back(static_cast<Elem>(v));
  }
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_codes(const Field& f, const std::vector<std::vector<int>>& rows, int cols) {
  if (cols < 0) cols = rows.empty() ? 0 : static_cast<int>(rows.front().size());
  Matrix m(static_cast<int>(rows.size()), cols);
  for (int r = 0; r < m.rows(); ++r) {
    if (static_cast<int>(rows[r].size()) != cols) {
      throw Error(ErrorKind::DimensionMismatch, "row " + std::to_string(r) + " has length " +
                                                    std::to_string(rows[r].size()) + ", expected " +
                                                    std::to_string(cols));
    }
    for (int c = 0; c < cols; ++c) {
      const int v = rows[r][c];
      if (!f.valid(v)) {
        throw Error(ErrorKind::ParseError, "entry (" + std::to_string(r) + "," + std::to_string(c) +
                                               ") = " + std::to_string(v) + " is not an element of GF(" +
                                               std::to_string(f.q()) + ")");
      }
      m(r, c) = static_cast<Elem>(v);
    }
  }
  return m;
}

void Matrix::append_row(std::span<const Elem> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = static_cast<int>(values.size());
  if (static_cast<int>(values.size()) != cols_) throw Error(ErrorKind::DimensionMismatch, "append_row");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

std::vector<std::vector<int>> Matrix::to_codes() const {
  std::vector<std::vector<int>> out(rows_);
  for (int r = 0; r < rows_; ++r) out[r].assign(row(r).begin(), row(r).end());
  return out;
}

bool Matrix::is_zero() const {
  for (Elem v : data_)
    if (v != 0) return false;
  return true;
}

Matrix mat_mul(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "mat_mul");
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const Elem aik = a(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) = f.add(c(i, j), f.mul(aik, b(k, j)));
    }
  }
  return c;
}

std::vector<Elem> mat_vec(const Field& f, const Matrix& a, std::span<const Elem> v) {
  if (static_cast<int>(v.size()) != a.cols()) throw Error(ErrorKind::DimensionMismatch, "mat_vec");
  std::vector<Elem> out(a.rows(), 0);
  for (int i = 0; i < a.rows(); ++i) {
    Elem acc = 0;
    for (int j = 0; j < a.cols(); ++j) acc = f.add(acc, f.mul(a(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

Matrix mat_add(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "mat_add");
  Matrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = f.add(a(i, j), b(i, j));
  return c;
}

Matrix mat_scale(const Field& f, const Matrix& a, Elem s) {
  Matrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = f.mul(a(i, j), s);
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.rows() == 0) return bottom;
  if (bottom.rows() == 0) return top;
  if (top.cols() != bottom.cols()) throw Error(ErrorKind::DimensionMismatch, "vstack");
  Matrix out = top;
  for (int r = 0; r < bottom.rows(); ++r) out.append_row(bottom.row(r));
  return out;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

Matrix kron(const Field& f, const Matrix& outer, const Matrix& inner) {
  Matrix out(outer.rows() * inner.rows(), outer.cols() * inner.cols());
  for (int i = 0; i < outer.rows(); ++i)
    for (int j = 0; j < outer.cols(); ++j)
      for (int k = 0; k < inner.rows(); ++k)
        for (int l = 0; l < inner.cols(); ++l)
          out(i * inner.rows() + k, j * inner.cols() + l) = f.mul(outer(i, j), inner(k, l));
  return out;
}

RrefResult rref_generic(const Field& f, const Matrix& m) {
  RrefResult res{m, 0, {}};
  Matrix& a = res.reduced;
  const int rows = a.rows();
  const int cols = a.cols();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i) {
      if (a(i, c) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r) {
      for (int j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
    }
    const Elem s = f.inv(a(r, c));
    for (int j = c; j < cols; ++j) a(r, j) = f.mul(a(r, j), s);
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Elem factor = a(i, c);
      if (factor == 0) continue;
      const Elem nf = f.neg(factor);
      for (int j = c; j < cols; ++j) a(i, j) = f.add(a(i, j), f.mul(nf, a(r, j)));
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

RrefResult rref_gf2_packed(const Matrix& m) {
  const int rows = m.rows();
  const int cols = m.cols();
  const int words = (cols + 63) / 64;
  std::vector<std::uint64_t> bits(static_cast<std::size_t>(rows) * words, 0);
  auto word = [&](int r, int w) -> std::uint64_t& { return bits[static_cast<std::size_t>(r) * words + w]; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (m(r, c) & 1) word(r, c / 64) |= std::uint64_t{1} << (c % 64);

  RrefResult res{Matrix(rows, cols), 0, {}};
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    const int w = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    int piv = -1;
    for (int i = r; i < rows; ++i) {
      if (word(i, w) & bit) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r) {
      for (int k = 0; k < words; ++k) std::swap(word(piv, k), word(r, k));
    }
    for (int i = 0; i < rows; ++i) {
      if (i != r && (word(i, w) & bit)) {
        for (int k = w; k < words; ++k) word(i, k) ^= word(r, k);
      }
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) res.reduced(i, c) = static_cast<Elem>((word(i, c / 64) >> (c % 64)) & 1);
  return res;
}

RrefResult mat_rref(const Field& f, const Matrix& m) {
  if (f.q() == 2) return rref_gf2_packed(m);
  return rref_generic(f, m);
}

int mat_rank(const Field& f, const Matrix& m) { return mat_rref(f, m).rank; }

Matrix mat_kernel(const Field& f, const Matrix& m) {
  const auto rr = mat_rref(f, m);
  const int cols = m.cols();
  std::vector<int> pivot_row(cols, -1);
  for (int i = 0; i < rr.rank; ++i) pivot_row[rr.pivots[i]] = i;
  Matrix basis(0, cols);
  std::vector<Elem> v(cols);
  for (int free = 0; free < cols; ++free) {
    if (pivot_row[free] >= 0) continue;
    std::fill(v.begin(), v.end(), Elem{0});
    v[free] = 1;
    for (int i = 0; i < rr.rank; ++i) v[rr.pivots[i]] = f.neg(rr.reduced(i, free));
    basis.append_row(v);
  }
  return basis;
}

Matrix mat_inverse(const Field& f, const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "mat_inverse needs a square matrix");
  const int n = m.rows();
  Matrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto rr = mat_rref(f, aug);
  if (rr.rank < n || rr.pivots[n - 1] != n - 1) {
    throw Error(ErrorKind::Singular, "rank " + std::to_string(mat_rank(f, m)) + " < " + std::to_string(n));
  }
  Matrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = rr.reduced(i, n + j);
  return inv;
}

bool is_invertible(const Field& f, const Matrix& m) {
  return m.rows() == m.cols() && mat_rank(f, m) == m.rows();
}

}  // namespace msr

namespace msr {

int rank_in_place(const Field& f, Elem* a, int rows, int cols) {
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i) {
      if (a[i * cols + c] != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r) {
      for (int j = c; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    }
    const Elem s = f.inv(a[r * cols + c]);
    for (int i = r + 1; i < rows; ++i) {
      const Elem factor = a[i * cols + c];
      if (factor == 0) continue;
      const Elem nf = f.neg(f.mul(factor, s));
      for (int j = c; j < cols; ++j) a[i * cols + j] = f.add(a[i * cols + j], f.mul(nf, a[r * cols + j]));
    }
    ++r;
  }
  return r;
}

}  // namespace msr
