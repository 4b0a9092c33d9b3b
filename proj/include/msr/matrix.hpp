#pragma once

#include <compare>
#include <initializer_list>
#include <span>
#include <vector>

#include "msr/field.hpp"

namespace msr {

/// Dense row-major matrix of element codes. Carries no field; every operation
/// that needs arithmetic takes the Field explicitly.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0) {}
  Matrix(int rows, int cols, std::vector<Elem> data);
  Matrix(std::initializer_list<std::initializer_list<int>> rows);

  static Matrix identity(int n);
  /// Checked construction from integer codes; throws if an entry is not < q or rows are ragged.
  static Matrix from_codes(const Field& f, const std::vector<std::vector<int>>& rows, int cols = -1);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Elem& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  Elem operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  std::span<Elem> row(int r) { return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)}; }
  std::span<const Elem> row(int r) const {
    return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
  }
  const std::vector<Elem>& data() const { return data_; }

  void append_row(std::span<const Elem> values);
  std::vector<std::vector<int>> to_codes() const;
  bool is_zero() const;

  friend auto operator<=>(const Matrix&, const Matrix&) = default;
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Elem> data_;
};

struct RrefResult {
  Matrix reduced;  // same shape as the input, zero rows last
  int rank = 0;
  std::vector<int> pivots;
};

Matrix mat_mul(const Field& f, const Matrix& a, const Matrix& b);
std::vector<Elem> mat_vec(const Field& f, const Matrix& a, std::span<const Elem> v);
Matrix mat_add(const Field& f, const Matrix& a, const Matrix& b);
Matrix mat_scale(const Field& f, const Matrix& a, Elem s);
Matrix transpose(const Matrix& a);
Matrix vstack(const Matrix& top, const Matrix& bottom);
/// Block diagonal diag(a, b).
Matrix block_diag(const Matrix& a, const Matrix& b);
/// Kronecker product (outer ⊗ inner).
Matrix kron(const Field& f, const Matrix& outer, const Matrix& inner);

/// Reduced row echelon form. Over GF(2) this dispatches to the bit-packed kernel.
RrefResult mat_rref(const Field& f, const Matrix& m);
RrefResult rref_generic(const Field& f, const Matrix& m);
RrefResult rref_gf2_packed(const Matrix& m);

int mat_rank(const Field& f, const Matrix& m);
/// Basis (as rows) of {v : m v = 0}; one row per free column, in column order.
Matrix mat_kernel(const Field& f, const Matrix& m);
Matrix mat_inverse(const Field& f, const Matrix& m);
bool is_invertible(const Field& f, const Matrix& m);

}  // namespace msr

namespace msr {

/// Rank of a row-major rows×cols block, destroying its contents. No allocation;
/// the hot loops of witness search and stabilizer enumeration use this on stack buffers.
int rank_in_place(const Field& f, Elem* data, int rows, int cols);

}  // namespace msr
