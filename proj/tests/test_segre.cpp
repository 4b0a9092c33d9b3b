#include <doctest.h>

#include <random>
#include <set>

#include "msr/error.hpp"
#include "msr/segre.hpp"
#include "oracle.hpp"

using namespace msr;

namespace {

Subspace line(const Field& f, std::vector<Vec> rows) { return Subspace::from_vectors(f, 4, rows); }

Regulus canonical_regulus(const Field& f) {
  const auto t = canonical_triple(f);
  return regulus_of(t[0], t[1], t[2]);
}

int evaluate(const oracle::Gf& o, const std::array<Elem, 10>& c, const oracle::Vec& x) {
  int k = 0, acc = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) acc = o.add(acc, o.mul(c[k++], o.mul(x[i], x[j])));
  return acc;
}

// Points of PG(3,q) as normalized coordinate vectors.
std::vector<oracle::Vec> all_points(int q) {
  std::vector<oracle::Vec> out;
  for (int code = 1; code < q * q * q * q; ++code) {
    oracle::Vec v(4);
    for (int i = 3, x = code; i >= 0; --i, x /= q) v[i] = x % q;
    const auto lead = std::find_if(v.begin(), v.end(), [](int e) { return e != 0; });
    if (*lead == 1) out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("regulus laws for q = 2 and 3") {
  for (int q : {2, 3}) {
    const Field& f = Field::get(q);
    const Regulus r = canonical_regulus(f);
    CAPTURE(q);
    CHECK(r.lines.size() == static_cast<std::size_t>(q + 1));
    CHECK(r.opposite.size() == static_cast<std::size_t>(q + 1));
    CHECK(r.points.size() == static_cast<std::size_t>((q + 1) * (q + 1)));
    for (const auto& a : r.lines)
      for (const auto& b : r.opposite) CHECK(subspace_intersect(a, b).k() == 1);
    for (std::size_t i = 0; i < r.lines.size(); ++i)
      for (std::size_t j = i + 1; j < r.lines.size(); ++j) CHECK(is_trivial_intersection(r.lines[i], r.lines[j]));
    const auto t = canonical_triple(f);
    for (const auto& s : t) CHECK(std::binary_search(r.lines.begin(), r.lines.end(), s));
    // the regulus through any three of its lines is itself
    const Regulus again = regulus_of(r.lines[q], r.lines[0], r.lines[1]);
    CHECK(again.lines == r.lines);
    CHECK(again.opposite == r.opposite);
  }
}

TEST_CASE("the regulus lines are the printed tensor family") {
  for (int q : {2, 3, 4}) {
    const Field& f = Field::get(q);
    std::vector<Subspace> lines{line(f, {{0, 1, 0, 0}, {0, 0, 0, 1}})}, opp{line(f, {{0, 0, 1, 0}, {0, 0, 0, 1}})};
    for (int b = 0; b < q; ++b) {
      const Elem e = static_cast<Elem>(b);
      lines.push_back(line(f, {{1, e, 0, 0}, {0, 0, 1, e}}));
      opp.push_back(line(f, {{1, 0, e, 0}, {0, 1, 0, e}}));
    }
    std::sort(lines.begin(), lines.end());
    std::sort(opp.begin(), opp.end());
    const Regulus r = canonical_regulus(f);
    CHECK(r.lines == lines);
    CHECK(r.opposite == opp);
  }
}

TEST_CASE("quadric through the regulus at q = 2 is x1x4 + x2x3") {
  const Regulus r = canonical_regulus(Field::get(2));
  CHECK(r.quadric.coeffs == std::array<Elem, 10>{0, 0, 0, 1, 0, 1, 0, 0, 0, 0});
  CHECK(r.quadric.to_string(Field::get(2)) == "x1x4 + x2x3");
}

TEST_CASE("quadric at q = 3 is nondegenerate with zero set exactly the regulus points") {
  const Field& f = Field::get(3);
  const auto o = oracle::prime(3);
  const Regulus r = canonical_regulus(f);
  const auto& c = r.quadric.coeffs;
  oracle::Mat gram(4, oracle::Vec(4, 0));
  for (int i = 0, k = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j, ++k) {
      if (i == j) {
        gram[i][i] = o.add(c[k], c[k]);
      } else {
        gram[i][j] = gram[j][i] = c[k];
      }
    }
  CHECK(oracle::rank(o, gram) == 4);
  std::set<oracle::Vec> on_lines;
  for (const auto& l : r.lines)
    for (const auto& v : oracle::span(o, l.basis().to_codes(), 4)) {
      auto w = v;
      const auto lead = std::find_if(w.begin(), w.end(), [](int e) { return e != 0; });
      if (lead == w.end()) continue;
      const int s = o.inv(*lead);
      for (auto& x : w) x = o.mul(x, s);
      on_lines.insert(w);
    }
  std::set<oracle::Vec> zeros;
  for (const auto& p : all_points(3))
    if (evaluate(o, c, p) == 0) zeros.insert(p);
  CHECK(zeros == on_lines);
  CHECK(zeros.size() == 16);
}

TEST_CASE("quadric fitting refuses underdetermined point sets") {
  const Field& f = Field::get(3);
  const auto r = canonical_regulus(f);
  std::vector<Subspace> few(r.points.begin(), r.points.begin() + 4);
  CHECK_THROWS_AS(quadric_fit(f, few), Error);
}

TEST_CASE("stabilizer of the canonical triple is the block pattern set") {
  for (int q : {2, 3}) {
    const Field& f = Field::get(q);
    const auto t = canonical_triple(f);
    const PglGroup g = stab_group(f, 4, {t[0], t[1], t[2]}, kDefaultCap, 1);
    CHECK(g.order() == static_cast<std::size_t>(q * q * q - q));
    std::set<PglElement> expected;
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b)
        for (int c = 0; c < q; ++c)
          for (int d = 0; d < q; ++d) {
            const Elem A = static_cast<Elem>(a), B = static_cast<Elem>(b), C = static_cast<Elem>(c), D = static_cast<Elem>(d);
            const Matrix m{{A, 0, B, 0}, {0, A, 0, B}, {C, 0, D, 0}, {0, C, 0, D}};
            if (is_invertible(f, m)) expected.insert(PglElement(f, m));
          }
    CHECK(std::set<PglElement>(g.elements().begin(), g.elements().end()) == expected);
    const Regulus r = canonical_regulus(f);
    for (const auto& h : g.elements())
      for (const auto& l : r.lines) CHECK(pgl_act(h, l) == l);
  }
}

TEST_CASE("setwise stabilizer of the regulus") {
  for (int q : {2, 3}) {
    const Field& f = Field::get(q);
    const Regulus r = canonical_regulus(f);
    const auto stab = regulus_stabilizer(r);
    const std::size_t half = static_cast<std::size_t>(q * q * q - q);
    CHECK(stab.size() == half * half);
    for (const auto& h : stab) {
      std::vector<Subspace> img;
      for (const auto& l : r.lines) img.push_back(pgl_act(h, l));
      std::sort(img.begin(), img.end());
      REQUIRE(img == r.lines);
    }
  }
}

TEST_CASE("line and plane census") {
  for (int q : {2, 3}) {
    const Field& f = Field::get(q);
    const auto o = oracle::prime(q);
    const Regulus r = canonical_regulus(f);
    const CensusReport c = line_orbit_census(r, 0);
    CAPTURE(q);
    std::size_t total = 0;
    for (const auto& [k, v] : c.line_type_counts) total += v;
    CHECK(total == static_cast<std::size_t>((q * q + 1) * (q * q + q + 1)));
    CHECK(c.line_orbits.size() == 5);
    CHECK(c.plane_orbits.size() == 2);
    CHECK(c.orbits_match_types);
    CHECK(c.passant_planes_all_conic);
    CHECK(c.ruling_planes_all_degenerate);
    CHECK(c.group_order == static_cast<std::size_t>((q * q * q - q) * (q * q * q - q)));
    // line types from counting quadric points on each line
    std::map<std::string, std::size_t> expect;
    for (const auto& l : enumerate_subspaces(f, 4, 2)) {
      int on = 0;
      for (const auto& p : subspace_points(l)) {
        const auto v = p.basis().to_codes()[0];
        if (evaluate(o, r.quadric.coeffs, v) == 0) ++on;
      }
      if (on == q + 1) {
        ++expect[std::binary_search(r.lines.begin(), r.lines.end(), l) ? "InRegulus" : "InOpposite"];
      } else {
        ++expect[on == 2 ? "Secant" : on == 1 ? "Tangent" : "Passant"];
      }
    }
    CHECK(c.line_type_counts == expect);
    // one tangent plane per quadric point
    CHECK(c.plane_type_counts.at("Degenerate") == static_cast<std::size_t>((q + 1) * (q + 1)));
    CHECK(c.plane_type_counts.at("Conic") == static_cast<std::size_t>(q * q * q - q));
  }
}

TEST_CASE("line and plane classification") {
  const Field& f = Field::get(3);
  const Regulus r = canonical_regulus(f);
  CHECK(classify_line(r.lines[0], r) == LineType::InRegulus);
  CHECK(classify_line(r.opposite[0], r) == LineType::InOpposite);
  CHECK_THROWS_AS(classify_plane(r.lines[0], r), Error);
  const Subspace tangent_plane = subspace_sum(r.lines[0], r.opposite[0]);
  const PlaneType pt = classify_plane(tangent_plane, r);
  CHECK(pt.kind == PlaneKind::Degenerate);
  CHECK(pt.lines.size() == 2);
}

TEST_CASE("triples of disjoint lines map onto the canonical triple") {
  std::mt19937 rng(31);
  for (int q : {2, 3, 4}) {
    const Field& f = Field::get(q);
    const auto lines = enumerate_subspaces(f, 4, 2);
    const auto t = canonical_triple(f);
    std::uniform_int_distribution<std::size_t> pick(0, lines.size() - 1);
    int done = 0;
    while (done < 50) {
      const auto& a = lines[pick(rng)];
      const auto& b = lines[pick(rng)];
      const auto& c = lines[pick(rng)];
      if (!is_trivial_intersection(a, b) || !is_trivial_intersection(a, c) || !is_trivial_intersection(b, c)) continue;
      const PglElement h = map_triple_to_canonical(a, b, c);
      REQUIRE(pgl_act(h, a) == t[0]);
      REQUIRE(pgl_act(h, b) == t[1]);
      REQUIRE(pgl_act(h, c) == t[2]);
      ++done;
    }
    CHECK_THROWS_AS(transversals(t[0], t[0], t[1]), Error);
  }
}
