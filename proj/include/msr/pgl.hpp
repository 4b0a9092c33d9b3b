#pragma once

#include <cstdint>
#include <vector>

#include "msr/subspace.hpp"

namespace msr {

constexpr std::uint64_t kDefaultCap = std::uint64_t{1} << 24;

/// Scales a nonzero matrix so its first nonzero entry in row-major order is 1.
Matrix normalize_projective(const Field& f, const Matrix& m);

/// An element of PGL(n, q): an invertible matrix up to scalars, stored normalized.
class PglElement {
 public:
  PglElement() = default;
  /// Throws Singular if `m` is not invertible.
  PglElement(const Field& f, const Matrix& m);

  static PglElement identity(const Field& f, int n);

  const Field& field() const { return *field_; }
  int n() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }
  bool is_identity() const { return matrix_ == Matrix::identity(n()); }

  friend bool operator==(const PglElement& a, const PglElement& b) { return a.matrix_ == b.matrix_; }
  friend bool operator<(const PglElement& a, const PglElement& b) { return a.matrix_ < b.matrix_; }

 private:
  const Field* field_ = nullptr;
  Matrix matrix_;
};

/// Matrix product a*b: the element that applies b first, then a.
PglElement pgl_mul(const PglElement& a, const PglElement& b);
PglElement pgl_inverse(const PglElement& g);

/// Image g·A of a subspace (matrices act on column vectors from the left).
Subspace pgl_act(const PglElement& g, const Subspace& a);
/// Same action for an arbitrary (possibly singular) matrix; the image may lose dimension.
Subspace matrix_act(const Field& f, const Matrix& g, const Subspace& a);

/// The unique element mapping the i-th point of `from` to the i-th point of `to`.
PglElement pgl_from_frames(const Frame& from, const Frame& to);

/// A linear space of n×n matrices, given by a basis.
struct MatrixSpace {
  const Field* field = nullptr;
  int n = 0;
  std::vector<Matrix> basis;

  int dim() const { return static_cast<int>(basis.size()); }
  Matrix combine(std::span<const Elem> coeffs) const;
  bool contains(const Matrix& m) const;
};

MatrixSpace full_matrix_space(const Field& f, int n);

/// {M : M·S ⊆ S for every S in the family}. An empty family gives all n×n matrices.
MatrixSpace stab_algebra(const Field& f, int n, const std::vector<Subspace>& family);
MatrixSpace stab_algebra(const std::vector<Subspace>& family);

/// Number of projective coordinate vectors (q^d - 1)/(q - 1) of a d-dimensional space.
std::uint64_t projective_count(int q, int d);
/// The rank-th normalized coordinate vector (first nonzero entry 1) in lexicographic order.
void projective_coords(int q, int d, std::uint64_t rank, std::span<Elem> out);

/// An explicitly listed finite subgroup of PGL(n, q), sorted.
class PglGroup {
 public:
  PglGroup() = default;
  /// Sorts, dedupes and checks identity, inverses and closure.
  static PglGroup from_elements(std::vector<PglElement> elements);
  /// Elements that are the units of a matrix algebra; closure follows from the algebra being
  /// closed under multiplication, which is checked on its basis instead of on all products.
  static PglGroup from_algebra_units(std::vector<PglElement> elements, const MatrixSpace& algebra);

  const std::vector<PglElement>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(const PglElement& g) const;
  bool is_trivial() const { return elements_.size() == 1; }

 private:
  std::vector<PglElement> elements_;
};

bool algebra_is_closed(const MatrixSpace& algebra);

/// Units of stab_algebra(family) modulo scalars. Throws TooLarge when q^dim > cap.
/// jobs == 1 runs the serial reference kernel, anything else the OpenMP kernel
/// (jobs <= 0 means the OpenMP default thread count).
PglGroup stab_group(const std::vector<Subspace>& family, std::uint64_t cap = kDefaultCap, int jobs = 0);
PglGroup stab_group(const Field& f, int n, const std::vector<Subspace>& family, std::uint64_t cap = kDefaultCap,
                    int jobs = 0);
PglGroup algebra_units(const MatrixSpace& algebra, std::uint64_t cap = kDefaultCap, int jobs = 0);

std::vector<PglElement> algebra_units_serial(const MatrixSpace& algebra);
std::vector<PglElement> algebra_units_parallel(const MatrixSpace& algebra, int jobs);

/// True iff g acts on A as a scalar, i.e. fixes every point of A.
bool acts_as_scalar(const PglElement& g, const Subspace& a);
bool group_fixes_pointwise(const PglGroup& u, const Subspace& a);

struct FixedSubspace {
  Subspace space;
  bool maximal = false;
};

/// All subspaces of dimension >= kmin fixed pointwise by every element of U.
std::vector<FixedSubspace> pointwise_fixed_subspaces(const PglGroup& u, const Field& f, int n, int kmin);

/// Every element of PGL(n, q) (test oracle scale only: refuses more than `cap` candidates).
std::vector<PglElement> enumerate_pgl(const Field& f, int n, std::uint64_t cap = kDefaultCap);

}  // namespace msr
