#include <doctest.h>

#include <random>
#include <set>

#include "msr/error.hpp"
#include "msr/subspace.hpp"
#include "oracle.hpp"

using namespace msr;

namespace {

std::uint64_t gauss(int n, int k, int q) {
  std::uint64_t num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    std::uint64_t a = 1, b = 1;
    for (int j = 0; j < n - i; ++j) a *= q;
    for (int j = 0; j < i + 1; ++j) b *= q;
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

Subspace random_subspace(std::mt19937& rng, const Field& f, int n) {
  std::uniform_int_distribution<int> e(0, f.q() - 1), rows(0, n);
  const int r = rows(rng);
  Matrix g(r, n);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = static_cast<Elem>(e(rng));
  return Subspace::from_generators(f, n, g);
}

oracle::Gf oracle_of(const Field& f) {
  return f.e() == 1 ? oracle::prime(f.p()) : oracle::Gf{f.p(), f.e(), f.modulus()};
}

}  // namespace

TEST_CASE("enumeration counts match the Gaussian binomial") {
  for (int q : {2, 3, 4, 5}) {
    const Field& f = Field::get(q);
    for (int n = 1; n <= 4; ++n)
      for (int k = 0; k <= n; ++k) {
        const auto all = enumerate_subspaces(f, n, k);
        CAPTURE(q);
        CAPTURE(n);
        CAPTURE(k);
        CHECK(all.size() == gauss(n, k, q));
        CHECK(gaussian_binomial(n, k, q) == gauss(n, k, q));
        CHECK(std::is_sorted(all.begin(), all.end()));
        CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
      }
  }
  CHECK(enumerate_subspaces(Field::get(2), 4, 2).size() == 35);
  CHECK(enumerate_subspaces(Field::get(3), 4, 2).size() == 130);
}

TEST_CASE("every line of GF(2)^4 and GF(3)^4 appears exactly once") {
  for (int q : {2, 3}) {
    const Field& f = Field::get(q);
    const auto o = oracle::prime(q);
    std::set<std::set<oracle::Vec>> spans;
    for (const auto& s : enumerate_subspaces(f, 4, 2)) spans.insert(oracle::span(o, s.basis().to_codes(), 4));
    std::set<std::set<oracle::Vec>> brute;
    const int total = q * q * q * q;
    for (int a = 1; a < total; ++a)
      for (int b = 1; b < total; ++b) {
        oracle::Vec u(4), v(4);
        for (int i = 0, x = a, y = b; i < 4; ++i, x /= q, y /= q) {
          u[i] = x % q;
          v[i] = y % q;
        }
        if (oracle::rank(o, {u, v}) == 2) brute.insert(oracle::span(o, {u, v}, 4));
      }
    CHECK(spans == brute);
  }
}

TEST_CASE("dimension formula and intersections on random pairs") {
  std::mt19937 rng(2024);
  for (int t = 0; t < 1000; ++t) {
    const int q = std::vector<int>{2, 3, 4, 5}[t % 4];
    const int n = 2 + t % 5;
    const Field& f = Field::get(q);
    const Subspace a = random_subspace(rng, f, n);
    const Subspace b = random_subspace(rng, f, n);
    const Subspace sum = subspace_sum(a, b);
    const Subspace meet = subspace_intersect(a, b);
    REQUIRE(sum.k() + meet.k() == a.k() + b.k());
    REQUIRE(a.contains(meet));
    REQUIRE(b.contains(meet));
    REQUIRE(sum.contains(a));
    REQUIRE(sum.contains(b));
    REQUIRE(is_trivial_intersection(a, b) == (meet.k() == 0));
    if (n <= 4 && q <= 3) {
      const auto o = oracle_of(f);
      const auto sa = oracle::span(o, a.basis().to_codes(), n);
      const auto sb = oracle::span(o, b.basis().to_codes(), n);
      std::set<oracle::Vec> both;
      std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(both, both.begin()));
      REQUIRE(both == oracle::span(o, meet.basis().to_codes(), n));
    }
  }
}

TEST_CASE("canonical form does not depend on the generators") {
  std::mt19937 rng(9);
  const Field& f = Field::get(5);
  for (int t = 0; t < 200; ++t) {
    const Subspace a = random_subspace(rng, f, 5);
    Matrix g(0, 5);
    std::uniform_int_distribution<int> e(0, 4);
    for (int r = 0; r < a.k() + 2; ++r) {
      std::vector<Elem> v(5, 0);
      for (int i = 0; i < a.k(); ++i) {
        const Elem c = static_cast<Elem>(e(rng));
        for (int j = 0; j < 5; ++j) v[j] = f.add(v[j], f.mul(c, a.basis()(i, j)));
      }
      g.append_row(v);
    }
    const Subspace b = Subspace::from_generators(f, 5, g);
    if (b.k() == a.k()) CHECK(a == b);
  }
}

TEST_CASE("annihilator, points and complements") {
  const Field& f = Field::get(3);
  const Subspace s = Subspace::from_vectors(f, 4, {{1, 0, 2, 0}, {0, 1, 1, 1}});
  const Matrix w = annihilator(s);
  CHECK(w.rows() == 2);
  CHECK(mat_mul(f, w, transpose(s.basis())).is_zero());
  CHECK(subspace_points(s).size() == 4);
  const Subspace t = Subspace::from_vectors(f, 4, {{0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK(is_complement(s, t));
  CHECK_THROWS_AS(is_complement(s, Subspace::from_vectors(f, 4, {{0, 0, 1, 0}})), Error);
  std::vector<Elem> v{0, 2, 2, 2};
  CHECK(normalize_vector(f, v));
  CHECK(v == std::vector<Elem>{0, 1, 1, 1});
  CHECK(s.contains(v));
}

TEST_CASE("frames") {
  const Field& f = Field::get(3);
  const Frame std4 = standard_frame(f, 4);
  CHECK(std4.points.size() == 5);
  auto pts = std4.points;
  CHECK_NOTHROW(frame_check(pts));
  pts[4] = Subspace::from_vectors(f, 4, {{1, 1, 1, 0}});
  CHECK_THROWS_AS(frame_check(pts), Error);
}

TEST_CASE("huge enumerations are refused") {
  CHECK_THROWS_AS(enumerate_subspaces(Field::get(121), 8, 4), Error);
}
