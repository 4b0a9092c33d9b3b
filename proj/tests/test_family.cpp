#include <doctest.h>

#include <numeric>
#include <random>

#include "msr/constructions.hpp"
#include "msr/error.hpp"
#include "msr/family.hpp"
#include "msr/search.hpp"
#include "oracle.hpp"

using namespace msr;

namespace {

Subspace span(const Field& f, int n, std::vector<Vec> rows) { return Subspace::from_vectors(f, n, rows); }

PglElement random_element(std::mt19937& rng, const Field& f, int n) {
  std::uniform_int_distribution<int> e(0, f.q() - 1);
  for (;;) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = static_cast<Elem>(e(rng));
    if (is_invertible(f, m)) return PglElement(f, m);
  }
}

SubspaceFamily random_lines(std::mt19937& rng, const Field& f, int count) {
  const auto all = enumerate_subspaces(f, 4, 2);
  std::vector<int> idx(all.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  std::vector<Subspace> members;
  for (int i = 0; i < count; ++i) members.push_back(all[idx[i]]);
  return SubspaceFamily(f, 2, members);
}

PglElement conjugate(const PglElement& h, const PglElement& g) { return pgl_mul(h, pgl_mul(g, pgl_inverse(h))); }

}  // namespace

TEST_CASE("both printed constructions verify for every admissible alpha") {
  for (int q : {3, 4, 5, 7, 9}) {
    const Field& f = Field::get(q);
    for (Elem a : f.alphas()) {
      CAPTURE(q);
      CAPTURE(int(a));
      const Construction c21 = construct_2_1(f, a);
      REQUIRE(verify_family(c21.family, c21.witnesses).status == Verdict::Yes);
      for (int i = 0; i < 3; ++i) CHECK(pgl_act(*c21.witnesses[i], c21.family[i]) == span(f, 2, {{1, a}}));
      const Construction c42 = construct_4_2(f, a);
      REQUIRE(verify_family(c42.family, c42.witnesses).status == Verdict::Yes);
      const Subspace img13 = span(f, 4, {{1, a, 0, 0}, {0, 0, 1, a}});
      const Subspace img46 = span(f, 4, {{1, 0, a, 0}, {0, 1, 0, a}});
      for (int i = 0; i < 6; ++i) CHECK(pgl_act(*c42.witnesses[i], c42.family[i]) == (i < 3 ? img13 : img46));
    }
  }
}

TEST_CASE("verification reports the first failing member") {
  const Field& f = Field::get(3);
  Construction c = construct_4_2(f, 2);
  c.witnesses[4] = c.witnesses[0];
  std::vector<CheckRecord> transcript;
  const MsrVerdict v = verify_family(c.family, c.witnesses, &transcript);
  CHECK(v.status == Verdict::No);
  CHECK(v.failure_index == 4);
  CHECK_FALSE(transcript.empty());
  c.witnesses[2].reset();
  CHECK_THROWS_AS(verify_family(c.family, c.witnesses), Error);
  CHECK_THROWS_AS(verify_witness(c.family, 6, *c.witnesses[0]), Error);
}

TEST_CASE("decision without witnesses") {
  const Field& f = Field::get(3);
  const SubspaceFamily six = extremal_lineset(f);
  const MsrVerdict v = decide_msr(six);
  REQUIRE(v.status == Verdict::Yes);
  CHECK(verify_family(six, v.witnesses).status == Verdict::Yes);
  CHECK(decide_msr(six, kDefaultCap, 4).witnesses == v.witnesses);
  // three lines through one point
  const SubspaceFamily star(f, 2,
                            {span(f, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}}), span(f, 4, {{1, 0, 0, 0}, {0, 0, 1, 0}}),
                             span(f, 4, {{1, 0, 0, 0}, {0, 0, 0, 1}})});
  CHECK(decide_msr(star).status == Verdict::No);
  CHECK(decide_msr(SubspaceFamily(f, 2, {})).status == Verdict::Yes);
}

TEST_CASE("serial and parallel witness search return the same witness") {
  const Field& f = Field::get(3);
  const SubspaceFamily six = extremal_lineset(f);
  for (int i = 0; i < 6; ++i) {
    const MatrixSpace a = stab_algebra(f, 4, six.without(i));
    const WitnessSearch s = search_algebra_serial(a, six[i], kDefaultCap);
    const WitnessSearch p = search_algebra_parallel(a, six[i], kDefaultCap, 4);
    CHECK(s.outcome == p.outcome);
    CHECK(s.witness == p.witness);
  }
}

TEST_CASE("Yes verdicts are closed under taking subfamilies") {
  std::mt19937 rng(42);
  int yes = 0;
  for (int t = 0; t < 1000; ++t) {
    const int q = t % 2 ? 3 : 2;
    const Field& f = Field::get(q);
    SubspaceFamily fam = q == 3 ? extremal_lineset(f) : random_lines(rng, f, 4);
    if (q == 3) fam = fam.image(random_element(rng, f, 4));
    const MsrVerdict v = decide_msr(fam);
    if (v.status != Verdict::Yes) continue;
    ++yes;
    std::vector<Subspace> sub;
    WitnessSet w;
    for (int i = 0; i < fam.size(); ++i)
      if (rng() % 2) {
        sub.push_back(fam[i]);
        w.push_back(v.witnesses[i]);
      }
    REQUIRE(verify_family(SubspaceFamily(f, 2, sub), w).status == Verdict::Yes);
  }
  CHECK(yes > 500);
}

TEST_CASE("verdicts are invariant under random conjugation") {
  std::mt19937 rng(1234);
  for (int t = 0; t < 1000; ++t) {
    const int q = t % 3 == 0 ? 3 : 2;
    const Field& f = Field::get(q);
    const SubspaceFamily fam = random_lines(rng, f, 2 + t % 4);
    const PglElement h = random_element(rng, f, 4);
    const SubspaceFamily moved = fam.image(h);
    const MsrVerdict a = decide_msr(fam);
    const MsrVerdict b = decide_msr(moved);
    REQUIRE(a.status == b.status);
    if (a.status == Verdict::Yes) {
      WitnessSet w;
      for (const auto& g : a.witnesses) w.push_back(conjugate(h, *g));
      REQUIRE(verify_family(moved, w).status == Verdict::Yes);
    }
  }
}

TEST_CASE("maximality certificates") {
  const Field& f = Field::get(3);
  const SubspaceFamily six = extremal_lineset(f);
  CHECK(is_maximal(six).kind == MaximalityCertificate::Kind::TrivialStab);
  CHECK_FALSE(find_extension(six).has_value());

  const SubspaceFamily five(f, 2, six.without(5));
  const MaximalityCertificate c = is_maximal(five);
  REQUIRE(c.kind == MaximalityCertificate::Kind::NotMaximal);
  CHECK(decide_msr(five.with(*c.space)).status == Verdict::Yes);

  const Field& f3 = Field::get(3);
  const SubspaceFamily points(f3, 1, {span(f3, 2, {{1, 0}}), span(f3, 2, {{0, 1}}), span(f3, 2, {{1, 1}})});
  CHECK(is_maximal(points).kind == MaximalityCertificate::Kind::TrivialStab);
}

TEST_CASE("fired criteria agree with exhaustive extension") {
  std::mt19937 rng(77);
  int fired = 0;
  for (int q : {2, 3}) {
    const Field& f = Field::get(q);
    const auto lines = enumerate_subspaces(f, 4, 2);
    const auto fams = enumerate_msr_families(f, 2, q == 2 ? SearchMode::FullBruteForce : SearchMode::DisjointTripleAnchored, {0});
    std::uniform_int_distribution<std::size_t> pick(0, fams.size() - 1);
    for (int t = 0; t < 40; ++t) {
      const auto& idx = fams[pick(rng)];
      std::vector<Subspace> members;
      for (int i : idx) members.push_back(lines[i]);
      const SubspaceFamily fam(f, 2, members);
      const MaximalityCertificate c = is_maximal(fam);
      const auto ext = find_extension(fam);
      if (c.kind == MaximalityCertificate::Kind::TrivialStab ||
          c.kind == MaximalityCertificate::Kind::PointwiseFixedSpace) {
        ++fired;
        CHECK_FALSE(ext.has_value());
      }
      if (c.kind == MaximalityCertificate::Kind::PointwiseFixedSpace) CHECK(c.space->k() >= 3);
      CHECK((c.kind == MaximalityCertificate::Kind::NotMaximal) == ext.has_value());
    }
  }
  CHECK(fired > 0);
}

TEST_CASE("members must be distinct m-spaces of the right ambient space") {
  const Field& f = Field::get(3);
  const Subspace a = span(f, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
  CHECK_THROWS_AS(SubspaceFamily(f, 2, {a, a}), Error);
  CHECK_THROWS_AS(SubspaceFamily(f, 2, {span(f, 4, {{1, 0, 0, 0}})}), Error);
}
