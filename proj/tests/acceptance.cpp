// Acceptance gate: one PASS/FAIL line per criterion.

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "msr/constructions.hpp"
#include "msr/io.hpp"
#include "msr/search.hpp"
#include "msr/segre.hpp"
#include "oracle.hpp"

using namespace msr;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (pass) detail = what;
    pass = false;
  }
};

Subspace line(const Field& f, std::vector<Vec> rows) { return Subspace::from_vectors(f, 4, rows); }

PglElement random_element(std::mt19937& rng, const Field& f, int n) {
  std::uniform_int_distribution<int> e(0, f.q() - 1);
  for (;;) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = static_cast<Elem>(e(rng));
    if (is_invertible(f, m)) return PglElement(f, m);
  }
}

Outcome constructions() {
  Outcome o;
  for (int q : {3, 4, 5, 7, 9}) {
    const Field& f = Field::get(q);
    for (Elem a : f.alphas()) {
      const std::string tag = " (q=" + std::to_string(q) + ", alpha=" + std::to_string(a) + ")";
      const Construction c21 = construct_2_1(f, a);
      const Construction c42 = construct_4_2(f, a);
      o.require(verify_family(c21.family, c21.witnesses).status == Verdict::Yes, "ex21 not verified" + tag);
      o.require(verify_family(c42.family, c42.witnesses).status == Verdict::Yes, "ex42 not verified" + tag);
      const Subspace p = Subspace::from_vectors(f, 2, {{1, a}});
      for (int i = 0; i < 3; ++i) o.require(pgl_act(*c21.witnesses[i], c21.family[i]) == p, "ex21 image" + tag);
      const Subspace l1 = line(f, {{1, a, 0, 0}, {0, 0, 1, a}});
      const Subspace l2 = line(f, {{1, 0, a, 0}, {0, 1, 0, a}});
      for (int i = 0; i < 6; ++i)
        o.require(pgl_act(*c42.witnesses[i], c42.family[i]) == (i < 3 ? l1 : l2), "ex42 image" + tag);
    }
  }
  return o;
}

Outcome doubling() {
  Outcome o;
  const Field& f = Field::get(3);
  const Construction d = construct_double(construct_2_1(f, 2), 2);
  o.require(iso_test(d.family, construct_4_2(f, 2).family).has_value(), "doubled points not isomorphic to the six lines");
  const Construction nine = construct_double(construct_4_2(f, 2), 2);
  o.require(nine.family.size() == 9 && nine.family.n() == 8, "doubled six lines have the wrong shape");
  o.require(verify_family(nine.family, nine.witnesses).status == Verdict::Yes, "size-9 family not verified");
  return o;
}

Outcome segre_stabilizer() {
  Outcome o;
  for (int q : {2, 3}) {
    const Field& f = Field::get(q);
    const auto t = canonical_triple(f);
    const PglGroup g = stab_group(f, 4, {t[0], t[1], t[2]}, kDefaultCap, 0);
    o.require(g.order() == static_cast<std::size_t>(q * q * q - q), "order " + std::to_string(g.order()));
    std::set<PglElement> pattern;
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b)
        for (int c = 0; c < q; ++c)
          for (int d = 0; d < q; ++d) {
            const Elem A = static_cast<Elem>(a), B = static_cast<Elem>(b), C = static_cast<Elem>(c), D = static_cast<Elem>(d);
            const Matrix m{{A, 0, B, 0}, {0, A, 0, B}, {C, 0, D, 0}, {0, C, 0, D}};
            if (is_invertible(f, m)) pattern.insert(PglElement(f, m));
          }
    o.require(std::set<PglElement>(g.elements().begin(), g.elements().end()) == pattern, "not the block pattern set");
    const Regulus r = regulus_of(t[0], t[1], t[2]);
    for (const auto& h : g.elements())
      for (const auto& l : r.lines) o.require(pgl_act(h, l) == l, "a regulus line is moved");
  }
  return o;
}

Outcome regulus_laws() {
  Outcome o;
  for (int q : {2, 3}) {
    const Field& f = Field::get(q);
    const std::string tag = " (q=" + std::to_string(q) + ")";
    const auto t = canonical_triple(f);
    o.require(transversals(t[0], t[1], t[2]).size() == static_cast<std::size_t>(q + 1), "transversal count" + tag);
    const Regulus r = regulus_of(t[0], t[1], t[2]);
    for (const auto& a : r.lines)
      for (const auto& b : r.opposite) o.require(subspace_intersect(a, b).k() == 1, "R and Ropp lines do not meet in a point" + tag);
    if (q == 2) {
      o.require(r.quadric.coeffs == std::array<Elem, 10>{0, 0, 0, 1, 0, 1, 0, 0, 0, 0}, "quadric is not x1x4 + x2x3");
    } else {
      const auto gf = oracle::prime(3);
      oracle::Mat gram(4, oracle::Vec(4, 0));
      for (int i = 0, k = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j, ++k) {
          const int c = r.quadric.coeffs[k];
          if (i == j) {
            gram[i][i] = gf.add(c, c);
          } else {
            gram[i][j] = gram[j][i] = c;
          }
        }
      o.require(oracle::rank(gf, gram) == 4, "quadric is degenerate");
      std::vector<Subspace> zeros;
      for (const auto& p : enumerate_subspaces(f, 4, 1))
        if (r.quadric.evaluate(f, p.vec()) == 0) zeros.push_back(p);
      o.require(zeros == r.points, "zero set differs from the regulus points");
    }
    const CensusReport c = line_orbit_census(r, 0);
    std::size_t total = 0;
    for (const auto& [k, v] : c.line_type_counts) total += v;
    o.require(total == static_cast<std::size_t>((q * q + 1) * (q * q + q + 1)), "line count " + std::to_string(total) + tag);
    o.require(c.group_order == static_cast<std::size_t>((q * q * q - q) * (q * q * q - q)), "Stab(R) order" + tag);
    o.require(c.line_orbits.size() == 5, std::to_string(c.line_orbits.size()) + " line orbits" + tag);
    o.require(c.plane_orbits.size() == 2, std::to_string(c.plane_orbits.size()) + " plane orbits" + tag);
    o.require(c.passant_planes_all_conic, "a plane through a passant is degenerate" + tag);
    o.require(c.ruling_planes_all_degenerate, "a plane through a ruling line is a conic plane" + tag);
  }
  return o;
}

Outcome projective_line_bound() {
  Outcome o;
  for (int q : {2, 3, 5}) {
    const Field& f = Field::get(q);
    const ClassificationReport r = classify_all(f, 1, SearchMode::FullBruteForce, {0});
    o.require(r.max_size == 3, "q=" + std::to_string(q) + ": max_size = " + std::to_string(r.max_size) + ", expected 3");
    for (const auto& fam : enumerate_msr_families(f, 1, SearchMode::FullBruteForce, {0})) {
      if (fam.size() != 3) continue;
      std::vector<Subspace> members;
      for (int i : fam) members.push_back(enumerate_subspaces(f, 2, 1)[i]);
      o.require(stab_group(f, 2, members, kDefaultCap, 1).is_trivial(), "a size-3 family has nontrivial stabilizer");
    }
  }
  return o;
}

Outcome theorem_q2() {
  Outcome o;
  const ClassificationReport r = classify_all(Field::get(2), 2, SearchMode::FullBruteForce, {0});
  o.require(r.msr_counts.count(7) == 0, "size-7 family found");
  o.require(r.max_size <= 6, "max_size " + std::to_string(r.max_size));
  std::ifstream in(std::string(MSR_SOURCE_DIR) + "/tests/fixtures/classify_q2_m2.json");
  std::stringstream ss;
  ss << in.rdbuf();
  o.require(dump_json(to_json(r)) == ss.str(), "census differs from the frozen fixture");
  if (o.pass) o.detail = "max_size = " + std::to_string(r.max_size);
  return o;
}

Outcome theorem_q3() {
  Outcome o;
  const Field& f = Field::get(3);
  const ClassificationReport r = classify_all(f, 2, SearchMode::DisjointTripleAnchored, {0});
  o.require(r.msr_counts.count(7) == 0, "size-7 family contains the canonical triple");
  const SubspaceFamily six = extremal_lineset(f);
  const auto all = enumerate_msr_families(f, 2, SearchMode::DisjointTripleAnchored, {0});
  const auto lines = enumerate_subspaces(f, 4, 2);
  std::size_t sixes = 0;
  for (const auto& fam : all) {
    if (fam.size() != 6) continue;
    ++sixes;
    std::vector<Subspace> members;
    for (int i : fam) members.push_back(lines[i]);
    o.require(iso_test(SubspaceFamily(f, 2, members), six).has_value(), "a size-6 family is not isomorphic to the extremal lines");
  }
  o.require(sixes > 0, "no size-6 family in the anchored stratum");
  const NoDisjointTripleCensus nd = no_disjoint_triple_census(f, {0});
  o.require(nd.max_size <= 4, "no_disjoint_triple_census(3) max_size = " + std::to_string(nd.max_size) + ", expected <= 4");
  const int overall = std::max(r.max_size, nd.max_size);
  o.require(overall <= 6, "overall maximum " + std::to_string(overall));
  if (o.pass) o.detail = std::to_string(sixes) + " size-6 families, all isomorphic";
  return o;
}

Outcome properties() {
  Outcome o;
  std::mt19937 rng(20261016);
  const auto lines2 = enumerate_subspaces(Field::get(2), 4, 2);
  const auto lines3 = enumerate_subspaces(Field::get(3), 4, 2);
  auto random_family = [&](const Field& f, int k) {
    const auto& pool = f.q() == 2 ? lines2 : lines3;
    std::vector<int> idx(pool.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<Subspace> m;
    for (int i = 0; i < k; ++i) m.push_back(pool[idx[i]]);
    return SubspaceFamily(f, 2, m);
  };

  // isomorphism invariance
  for (int t = 0; t < 1000; ++t) {
    const Field& f = Field::get(t % 3 ? 2 : 3);
    const SubspaceFamily fam = random_family(f, 2 + t % 4);
    const PglElement h = random_element(rng, f, 4);
    const MsrVerdict a = decide_msr(fam);
    const MsrVerdict b = decide_msr(fam.image(h));
    o.require(a.status == b.status, "verdict changed under conjugation");
    if (a.status == Verdict::Yes) {
      WitnessSet w;
      for (const auto& g : a.witnesses) w.push_back(pgl_mul(h, pgl_mul(*g, pgl_inverse(h))));
      o.require(verify_family(fam.image(h), w).status == Verdict::Yes, "conjugated witnesses fail");
    }
  }
  // downward closure
  for (int t = 0; t < 1000; ++t) {
    const Field& f = Field::get(t % 2 ? 3 : 2);
    const SubspaceFamily fam = f.q() == 3 ? extremal_lineset(f).image(random_element(rng, f, 4)) : random_family(f, 4);
    const MsrVerdict v = decide_msr(fam);
    if (v.status != Verdict::Yes) continue;
    std::vector<Subspace> sub;
    WitnessSet w;
    for (int i = 0; i < fam.size(); ++i)
      if (rng() & 1) {
        sub.push_back(fam[i]);
        w.push_back(v.witnesses[i]);
      }
    o.require(verify_family(SubspaceFamily(f, 2, sub), w).status == Verdict::Yes, "subfamily lost its witnesses");
  }
  // stabilizers against brute-force filtering of PGL(4,2)
  const Field& f2 = Field::get(2);
  const auto gf2 = oracle::prime(2);
  const auto pgl = oracle::pgl_gf2(4);
  o.require(pgl.size() == 20160, "brute-force PGL(4,2) has the wrong order");
  for (int t = 0; t < 10; ++t) {
    const SubspaceFamily fam = random_family(f2, t % 6);
    std::set<Matrix> brute;
    for (const auto& g : pgl) {
      bool fixes = true;
      for (const auto& s : fam.members()) {
        const auto b = s.basis().to_codes();
        fixes = fixes && oracle::same_span(gf2, b, oracle::image(gf2, g, b), 4);
      }
      if (fixes) brute.insert(Matrix::from_codes(f2, g));
    }
    std::set<Matrix> ours;
    const PglGroup group = stab_group(f2, 4, fam.members(), kDefaultCap, 0);
    for (const auto& e : group.elements()) ours.insert(e.matrix());
    o.require(ours == brute, "stabilizer differs from brute force (family size " + std::to_string(fam.size()) +
                                 ", " + std::to_string(ours.size()) + " vs " + std::to_string(brute.size()) + ")");
  }
  // frame transport uniqueness over GF(2)^4
  const Frame std4 = standard_frame(f2, 4);
  std::set<std::vector<Subspace>> images;
  for (const auto& g : pgl) {
    std::vector<Subspace> img;
    for (const auto& p : std4.points) {
      const auto v = oracle::apply(gf2, g, p.basis().to_codes()[0]);
      img.push_back(Subspace::from_vectors(f2, 4, {Vec(v.begin(), v.end())}));
    }
    images.insert(img);
    o.require(pgl_from_frames(std4, frame_check(img)).matrix() == Matrix::from_codes(f2, g), "frame transport not unique");
  }
  o.require(images.size() == 20160, "frames are not in bijection with PGL(4,2)");
  // dimension formula
  for (int t = 0; t < 1000; ++t) {
    const Field& f = Field::get(std::vector<int>{2, 3, 4, 5}[t % 4]);
    const int n = 2 + t % 5;
    std::uniform_int_distribution<int> e(0, f.q() - 1), r(0, n);
    auto rand_space = [&] {
      Matrix g(r(rng), n);
      for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < n; ++j) g(i, j) = static_cast<Elem>(e(rng));
      return Subspace::from_generators(f, n, g);
    };
    const Subspace a = rand_space(), b = rand_space();
    o.require(subspace_sum(a, b).k() + subspace_intersect(a, b).k() == a.k() + b.k(), "dimension formula fails");
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Construction verification", constructions},
      {"Doubling", doubling},
      {"Segre stabilizer", segre_stabilizer},
      {"Regulus laws", regulus_laws},
      {"(2,1) bound", projective_line_bound},
      {"Size bound at q=2", theorem_q2},
      {"Size bound at q=3", theorem_q3},
      {"Property suites", properties},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << i + 1 << ": " << criteria[i].first;
    if (!o.detail.empty()) std::cout << " - " << o.detail;
    std::cout << " [" << std::fixed << std::setprecision(2) << s << " s]" << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}
