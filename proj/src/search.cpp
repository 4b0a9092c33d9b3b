#include "msr/search.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "msr/constructions.hpp"
#include "msr/error.hpp"
#include "msr/segre.hpp"

namespace msr {

const char* to_string(SearchMode m) {
  switch (m) {
    case SearchMode::FullBruteForce: return "FullBruteForce";
    case SearchMode::DisjointTripleAnchored: return "DisjointTripleAnchored";
    case SearchMode::NoDisjointTriple: return "NoDisjointTriple";
  }
  return "Unknown";
}

SearchMode parse_search_mode(const std::string& s) {
  if (s == "FullBruteForce" || s == "full") return SearchMode::FullBruteForce;
  if (s == "DisjointTripleAnchored" || s == "anchored") return SearchMode::DisjointTripleAnchored;
  if (s == "NoDisjointTriple" || s == "no-disjoint-triple") return SearchMode::NoDisjointTriple;
  throw Error(ErrorKind::ParseError, "unknown mode '" + s + "' (expected full, anchored, no-disjoint-triple)");
}

bool ClassificationReport::bounds_hold() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.holds; });
}

bool same_member_set(const SubspaceFamily& a, const SubspaceFamily& b) {
  if (a.size() != b.size()) return false;
  auto x = a.members();
  auto y = b.members();
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

namespace {

using Family = std::vector<int>;

constexpr std::size_t kFullBruteForceLimit = 64;

// The search universe: every m-space of GF(q)^{2m} in the global order.
struct Universe {
  const Field* f;
  int m;
  std::vector<Subspace> spaces;
  std::vector<std::vector<char>> disjoint;

  Universe(const Field& field, int half) : f(&field), m(half), spaces(enumerate_subspaces(field, 2 * half, half)) {
    const int n = static_cast<int>(spaces.size());
    disjoint.assign(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) disjoint[i][j] = disjoint[j][i] = is_trivial_intersection(spaces[i], spaces[j]);
  }

  int index_of(const Subspace& s) const {
    auto it = std::lower_bound(spaces.begin(), spaces.end(), s);
    if (it == spaces.end() || !(*it == s)) throw Error(ErrorKind::DimensionMismatch, "subspace not in universe");
    return static_cast<int>(it - spaces.begin());
  }

  std::vector<Subspace> members(const Family& fam) const {
    std::vector<Subspace> out;
    out.reserve(fam.size());
    for (int i : fam) out.push_back(spaces[i]);
    return out;
  }

  SubspaceFamily family(const Family& fam) const { return SubspaceFamily(*f, m, members(fam)); }
};

struct Stratum {
  std::vector<Family> bases;
  bool forbid_disjoint_triple = false;
};

bool creates_disjoint_triple(const Universe& u, const Family& fam, int j) {
  for (std::size_t a = 0; a < fam.size(); ++a) {
    if (!u.disjoint[fam[a]][j]) continue;
    for (std::size_t b = a + 1; b < fam.size(); ++b)
      if (u.disjoint[fam[b]][j] && u.disjoint[fam[a]][fam[b]]) return true;
  }
  return false;
}

struct Collector {
  std::vector<Family> families;
  std::uint64_t nodes = 0;
  std::uint64_t prunes = 0;
};

class Dfs {
 public:
  Dfs(const Universe& u, const Stratum& st, std::uint64_t cap) : u_(u), st_(st), cap_(cap) {}

  // MSR test of fam ∪ {j}, reusing the witnesses of fam where they still fix the new member.
  bool extend(const Family& fam, const std::vector<PglElement>& wit, int j, std::vector<PglElement>& out) const {
    const Subspace& s = u_.spaces[j];
    const Field& f = *u_.f;
    const int n = 2 * u_.m;
    std::vector<Subspace> all = u_.members(fam);
    {
      const MatrixSpace a = stab_algebra(f, n, all);
      const WitnessSearch ws = search_algebra_for_witness(a, s, cap_, 1);
      if (ws.outcome == WitnessSearch::Outcome::Unknown) throw Error(ErrorKind::TooLarge, "witness search exceeded cap");
      if (ws.outcome == WitnessSearch::Outcome::None) return false;
      out.assign(fam.size() + 1, PglElement());
      out[fam.size()] = *ws.witness;
    }
    all.push_back(s);
    for (std::size_t i = 0; i < fam.size(); ++i) {
      if (pgl_act(wit[i], s) == s) {
        out[i] = wit[i];
        continue;
      }
      std::vector<Subspace> rest;
      for (std::size_t t = 0; t < all.size(); ++t)
        if (t != i) rest.push_back(all[t]);
      const WitnessSearch ws = search_algebra_for_witness(stab_algebra(f, n, rest), all[i], cap_, 1);
      if (ws.outcome == WitnessSearch::Outcome::Unknown) throw Error(ErrorKind::TooLarge, "witness search exceeded cap");
      if (ws.outcome == WitnessSearch::Outcome::None) return false;
      out[i] = *ws.witness;
    }
    return true;
  }

  void recurse(Family& fam, const std::vector<PglElement>& wit, const std::vector<int>& cands, std::size_t start,
               Collector& out) const {
    for (std::size_t c = start; c < cands.size(); ++c) {
      const int j = cands[c];
      if (st_.forbid_disjoint_triple && creates_disjoint_triple(u_, fam, j)) continue;
      ++out.nodes;
      std::vector<PglElement> next;
      if (!extend(fam, wit, j, next)) {
        ++out.prunes;
        continue;
      }
      // keep index lists sorted; witnesses stay aligned with insertion order
      Family grown = fam;
      grown.push_back(j);
      Family sorted = grown;
      std::sort(sorted.begin(), sorted.end());
      out.families.push_back(sorted);
      recurse(grown, next, cands, c + 1, out);
    }
  }

 private:
  const Universe& u_;
  const Stratum& st_;
  std::uint64_t cap_;
};

Stratum make_stratum(const Universe& u, SearchMode mode, const SearchOptions& opts) {
  const Field& f = *u.f;
  Stratum st;
  switch (mode) {
    case SearchMode::FullBruteForce:
      if (u.spaces.size() > kFullBruteForceLimit) {
        throw Error(ErrorKind::TooLarge, "FullBruteForce needs at most " + std::to_string(kFullBruteForceLimit) + " subspaces, universe has " +
                                             std::to_string(u.spaces.size()));
      }
      st.bases.push_back({});
      break;
    case SearchMode::DisjointTripleAnchored: {
      if (u.m != 2) throw Error(ErrorKind::DimensionMismatch, "DisjointTripleAnchored needs m = 2");
      const auto t = canonical_triple(f);
      st.bases.push_back({u.index_of(t[0]), u.index_of(t[1]), u.index_of(t[2])});
      break;
    }
    case SearchMode::NoDisjointTriple: {
      if (u.m != 2) throw Error(ErrorKind::DimensionMismatch, "NoDisjointTriple needs m = 2");
      st.forbid_disjoint_triple = true;
      if (opts.anchor_pairs) {
        // PGL(4,q) is transitive on ordered pairs of disjoint lines and on ordered pairs of
        // meeting lines, so every family of size >= 2 is isomorphic to one containing a canonical pair.
        const Subspace e12 = Subspace::from_vectors(f, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
        const Subspace e34 = Subspace::from_vectors(f, 4, {{0, 0, 1, 0}, {0, 0, 0, 1}});
        const Subspace e13 = Subspace::from_vectors(f, 4, {{1, 0, 0, 0}, {0, 0, 1, 0}});
        st.bases.push_back({u.index_of(e12), u.index_of(e34)});
        st.bases.push_back({u.index_of(e12), u.index_of(e13)});
      } else {
        st.bases.push_back({});
      }
      break;
    }
  }
  return st;
}

std::vector<Family> run_stratum(const Universe& u, const Stratum& st, const SearchOptions& opts, SearchStats& stats) {
  const Dfs dfs(u, st, opts.cap);
  std::vector<Family> all;
  for (const Family& base : st.bases) {
    // The base must itself be MSR; its witnesses seed the search.
    std::vector<PglElement> base_wit;
    if (!base.empty()) {
      ++stats.nodes;
      const MsrVerdict v = decide_msr(u.family(base), opts.cap, 1);
      if (v.status == Verdict::Unknown) throw Error(ErrorKind::TooLarge, "base family undecided: " + v.budget_note);
      if (v.status == Verdict::No) {
        ++stats.prunes;
        continue;
      }
      for (const auto& w : v.witnesses) base_wit.push_back(*w);
      Family sorted = base;
      std::sort(sorted.begin(), sorted.end());
      all.push_back(sorted);
    }
    std::vector<int> cands;
    for (int j = 0; j < static_cast<int>(u.spaces.size()); ++j)
      if (std::find(base.begin(), base.end(), j) == base.end()) cands.push_back(j);

    // Each first-level candidate is an independent subtree; results merge in candidate order.
    const std::int64_t top = static_cast<std::int64_t>(cands.size());
    std::vector<Collector> parts(top);
#ifdef _OPENMP
    const int threads = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (opts.jobs != 1)
#endif
    for (std::int64_t c = 0; c < top; ++c) {
      Family fam = base;
      Collector& out = parts[c];
      const int j = cands[c];
      if (st.forbid_disjoint_triple && creates_disjoint_triple(u, fam, j)) continue;
      ++out.nodes;
      std::vector<PglElement> next;
      if (!dfs.extend(fam, base_wit, j, next)) {
        ++out.prunes;
        continue;
      }
      fam.push_back(j);
      Family sorted = fam;
      std::sort(sorted.begin(), sorted.end());
      out.families.push_back(sorted);
      dfs.recurse(fam, next, cands, static_cast<std::size_t>(c) + 1, out);
    }
    for (auto& p : parts) {
      stats.nodes += p.nodes;
      stats.prunes += p.prunes;
      all.insert(all.end(), std::make_move_iterator(p.families.begin()), std::make_move_iterator(p.families.end()));
    }
  }
  if (st.bases.size() == 1 && st.bases.front().empty()) all.push_back({});
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

bool contains_family(const std::vector<Family>& sorted_all, const Family& fam) {
  return std::binary_search(sorted_all.begin(), sorted_all.end(), fam);
}

bool is_maximal_in(const std::vector<Family>& all, const Family& fam, int universe) {
  Family ext;
  for (int j = 0; j < universe; ++j) {
    if (std::binary_search(fam.begin(), fam.end(), j)) continue;
    ext = fam;
    ext.insert(std::upper_bound(ext.begin(), ext.end(), j), j);
    if (contains_family(all, ext)) return false;
  }
  return true;
}

// Permutation of the universe induced by each element of PGL(n,q), when that group is small.
std::optional<std::vector<std::vector<int>>> permutation_table(const Universe& u) {
  const Field& f = *u.f;
  const int n = 2 * u.m;
  std::uint64_t size = 1;
  for (int i = 0; i < n * n; ++i) {
    size *= static_cast<std::uint64_t>(f.q());
    if (size > (std::uint64_t{1} << 17)) return std::nullopt;
  }
  const auto group = enumerate_pgl(f, n);
  std::vector<std::vector<int>> table(group.size());
  for (std::size_t g = 0; g < group.size(); ++g) {
    table[g].reserve(u.spaces.size());
    for (const auto& s : u.spaces) table[g].push_back(u.index_of(pgl_act(group[g], s)));
  }
  return table;
}

bool pairwise_disjoint(const Universe& u, const Family& fam) {
  for (std::size_t a = 0; a < fam.size(); ++a)
    for (std::size_t b = a + 1; b < fam.size(); ++b)
      if (!u.disjoint[fam[a]][fam[b]]) return false;
  return true;
}

bool has_disjoint_triple(const Universe& u, const Family& fam) {
  for (std::size_t a = 0; a < fam.size(); ++a)
    for (std::size_t b = a + 1; b < fam.size(); ++b)
      for (std::size_t c = b + 1; c < fam.size(); ++c)
        if (u.disjoint[fam[a]][fam[b]] && u.disjoint[fam[a]][fam[c]] && u.disjoint[fam[b]][fam[c]]) return true;
  return false;
}

}  // namespace

std::vector<std::vector<int>> enumerate_msr_families(const Field& f, int m, SearchMode mode, const SearchOptions& opts,
                                                     SearchStats* stats) {
  const Universe u(f, m);
  const Stratum st = make_stratum(u, mode, opts);
  SearchStats local;
  auto out = run_stratum(u, st, opts, local);
  if (stats) *stats = local;
  return out;
}

ClassificationReport classify_all(const Field& f, int m, SearchMode mode, const SearchOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const Universe u(f, m);
  const Stratum st = make_stratum(u, mode, opts);
  ClassificationReport rep;
  rep.q = f.q();
  rep.m = m;
  rep.mode = mode;
  const std::vector<Family> all = run_stratum(u, st, opts, rep.stats);
  const int universe = static_cast<int>(u.spaces.size());

  std::vector<Family> maximal;
  for (const auto& fam : all) {
    ++rep.msr_counts[static_cast<int>(fam.size())];
    rep.max_size = std::max(rep.max_size, static_cast<int>(fam.size()));
    if (is_maximal_in(all, fam, universe)) {
      ++rep.maximal_counts[static_cast<int>(fam.size())];
      maximal.push_back(fam);
    }
  }

  // Isomorphism classes of the largest families; the representative is the least family in the order.
  std::vector<Family> extremal;
  for (const auto& fam : all)
    if (static_cast<int>(fam.size()) == rep.max_size && rep.max_size > 0) extremal.push_back(fam);
  std::vector<int> class_of(extremal.size(), -1);
  std::vector<std::size_t> reps;
  const auto perms = permutation_table(u);
  for (std::size_t i = 0; i < extremal.size(); ++i) {
    if (class_of[i] >= 0) continue;
    const int cls = static_cast<int>(reps.size());
    reps.push_back(i);
    class_of[i] = cls;
    if (perms) {
      for (const auto& p : *perms) {
        Family img;
        for (int x : extremal[i]) img.push_back(p[x]);
        std::sort(img.begin(), img.end());
        auto it = std::lower_bound(extremal.begin(), extremal.end(), img);
        if (it != extremal.end() && *it == img) class_of[it - extremal.begin()] = cls;
      }
    } else {
      const SubspaceFamily ri = u.family(extremal[i]);
      for (std::size_t j = i + 1; j < extremal.size(); ++j) {
        if (class_of[j] < 0 && iso_test(ri, u.family(extremal[j]))) class_of[j] = cls;
      }
    }
  }
  for (std::size_t c = 0; c < reps.size(); ++c) {
    FamilyClass fc;
    fc.representative = u.family(extremal[reps[c]]);
    const MsrVerdict v = decide_msr(fc.representative, opts.cap, 1);
    fc.witnesses = v.witnesses;
    fc.certificate = is_maximal(fc.representative, opts.cap);
    fc.found = static_cast<std::size_t>(std::count(class_of.begin(), class_of.end(), static_cast<int>(c)));
    rep.extremal_classes.push_back(std::move(fc));
  }

  auto assert_that = [&](std::string name, bool holds, std::string detail) {
    rep.assertions.push_back({std::move(name), holds, std::move(detail)});
  };
  const auto size_count = [&](int k) {
    auto it = rep.msr_counts.find(k);
    return it == rep.msr_counts.end() ? std::size_t{0} : it->second;
  };

  if (m == 1) {
    assert_that("max_size <= 3", rep.max_size <= 3, "max_size = " + std::to_string(rep.max_size));
    bool trivial = true;
    std::size_t checked = 0;
    for (const auto& fam : maximal) {
      if (fam.size() != 3) continue;
      ++checked;
      if (!stab_group(f, 2, u.members(fam), opts.cap, 1).is_trivial()) trivial = false;
    }
    assert_that("maximal size-3 families have trivial stabilizer", trivial,
                std::to_string(checked) + " maximal size-3 families checked");
  } else if (m == 2) {
    const SubspaceFamily reference = extremal_lineset(f);
    auto six_checks = [&]() {
      bool iso = true;
      bool split = true;
      std::size_t sixes = 0;
      for (const auto& fam : all) {
        if (fam.size() != 6) continue;
        ++sixes;
        const SubspaceFamily sf = u.family(fam);
        if (!iso_test(sf, reference)) iso = false;
        if (!splits_regulus_opposite(sf)) split = false;
      }
      assert_that("every size-6 family is isomorphic to the extremal line set", iso,
                  std::to_string(sixes) + " size-6 families checked");
      assert_that("every size-6 family has three lines in a regulus and three in its opposite", split,
                  std::to_string(sixes) + " size-6 families checked");
    };
    switch (mode) {
      case SearchMode::FullBruteForce: {
        assert_that("max_size <= 6", rep.max_size <= 6, "max_size = " + std::to_string(rep.max_size));
        assert_that("no MSR family of size 7", size_count(7) == 0, "size-7 count = " + std::to_string(size_count(7)));
        six_checks();
        int with_triple = 0, without_triple = 0, all_disjoint = 0;
        for (const auto& fam : all) {
          const int k = static_cast<int>(fam.size());
          if (has_disjoint_triple(u, fam)) {
            with_triple = std::max(with_triple, k);
          } else {
            without_triple = std::max(without_triple, k);
          }
          if (pairwise_disjoint(u, fam)) all_disjoint = std::max(all_disjoint, k);
        }
        rep.facts["max_size_with_disjoint_triple"] = std::to_string(with_triple);
        rep.facts["max_size_without_disjoint_triple"] = std::to_string(without_triple);
        rep.facts["max_size_pairwise_disjoint"] = std::to_string(all_disjoint);
        assert_that("families without a disjoint triple have size <= 4", without_triple <= 4,
                    "max = " + std::to_string(without_triple));
        assert_that("pairwise disjoint families have size <= 5", all_disjoint <= 5, "max = " + std::to_string(all_disjoint));
        break;
      }
      case SearchMode::DisjointTripleAnchored: {
        assert_that("no size-7 family contains the canonical triple", size_count(7) == 0,
                    "size-7 count = " + std::to_string(size_count(7)));
        assert_that("max_size <= 6", rep.max_size <= 6, "max_size = " + std::to_string(rep.max_size));
        six_checks();
        int all_disjoint = 0;
        for (const auto& fam : all)
          if (pairwise_disjoint(u, fam)) all_disjoint = std::max(all_disjoint, static_cast<int>(fam.size()));
        rep.facts["max_size_pairwise_disjoint"] = std::to_string(all_disjoint);
        assert_that("pairwise disjoint families have size <= 5", all_disjoint <= 5, "max = " + std::to_string(all_disjoint));
        break;
      }
      case SearchMode::NoDisjointTriple: {
        assert_that("max_size <= 4", rep.max_size <= 4, "max_size = " + std::to_string(rep.max_size));
        bool quad = false;
        for (const auto& fam : all)
          if (fam.size() == 4 && is_quadrangle(u.members(fam))) quad = true;
        rep.facts["quadrangle_among_size4"] = quad ? "true" : "false";
        rep.facts["pair_anchored"] = opts.anchor_pairs ? "true" : "false";
        break;
      }
    }
  }
  rep.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::optional<std::array<int, 3>> find_disjoint_triple(const SubspaceFamily& family) {
  const int k = family.size();
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      if (!is_trivial_intersection(family[a], family[b])) continue;
      for (int c = b + 1; c < k; ++c)
        if (is_trivial_intersection(family[a], family[c]) && is_trivial_intersection(family[b], family[c]))
          return std::array<int, 3>{a, b, c};
    }
  return std::nullopt;
}

std::pair<PglElement, SubspaceFamily> anchor_to_disjoint_triple(const SubspaceFamily& family) {
  if (family.n() != 4) throw Error(ErrorKind::DimensionMismatch, "anchoring needs lines of GF(q)^4");
  const auto t = find_disjoint_triple(family);
  if (!t) throw Error(ErrorKind::NoDisjointTriple, "family has no three pairwise disjoint members");
  const PglElement h = map_triple_to_canonical(family[(*t)[0]], family[(*t)[1]], family[(*t)[2]]);
  return {h, family.image(h)};
}

namespace {

const std::vector<PglElement>& cached_pgl(const Field& f, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<std::vector<PglElement>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{f.q(), n}];
  if (!slot) slot = std::make_unique<std::vector<PglElement>>(enumerate_pgl(f, n));
  return *slot;
}

bool small_pgl(const Field& f, int n) {
  std::uint64_t size = 1;
  for (int i = 0; i < n * n; ++i) {
    size *= static_cast<std::uint64_t>(f.q());
    if (size > (std::uint64_t{1} << 17)) return false;
  }
  return true;
}

bool maps_onto(const PglElement& h, const SubspaceFamily& a, const std::vector<Subspace>& sorted_b) {
  for (const auto& s : a.members())
    if (!std::binary_search(sorted_b.begin(), sorted_b.end(), pgl_act(h, s))) return false;
  return true;
}

std::optional<PglElement> iso_by_triples(const SubspaceFamily& a, const SubspaceFamily& b,
                                         const std::vector<Subspace>& sorted_b) {
  const Field& f = a.field();
  const auto ta = find_disjoint_triple(a);
  const PglElement ha = map_triple_to_canonical(a[(*ta)[0]], a[(*ta)[1]], a[(*ta)[2]]);
  const auto t = canonical_triple(f);
  const PglGroup stab = stab_group(f, 4, {t[0], t[1], t[2]}, kDefaultCap, 1);
  const int k = b.size();
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y)
      for (int z = 0; z < k; ++z) {
        if (x == y || x == z || y == z) continue;
        if (!is_trivial_intersection(b[x], b[y]) || !is_trivial_intersection(b[x], b[z]) ||
            !is_trivial_intersection(b[y], b[z]))
          continue;
        const PglElement hb_inv = pgl_inverse(map_triple_to_canonical(b[x], b[y], b[z]));
        for (const auto& s : stab.elements()) {
          const PglElement cand = pgl_mul(hb_inv, pgl_mul(s, ha));
          if (maps_onto(cand, a, sorted_b)) return cand;
        }
      }
  return std::nullopt;
}

// Frame drawn from the points on members; its image must be a frame of points on members of b.
std::optional<PglElement> iso_by_frames(const SubspaceFamily& a, const SubspaceFamily& b,
                                        const std::vector<Subspace>& sorted_b) {
  const Field& f = a.field();
  const int n = a.n();
  auto point_degrees = [](const SubspaceFamily& fam) {
    std::map<Subspace, int> deg;
    for (const auto& s : fam.members())
      for (const auto& p : subspace_points(s)) ++deg[p];
    return std::vector<std::pair<Subspace, int>>(deg.begin(), deg.end());
  };
  const auto pa = point_degrees(a);
  const auto pb = point_degrees(b);
  auto general = [&](const std::vector<Subspace>& pts) {
    const int c = static_cast<int>(pts.size());
    if (c <= n) {
      Matrix m(0, n);
      for (const auto& p : pts) m.append_row(p.vec());
      return mat_rank(f, m) == c;
    }
    for (int skip = 0; skip < c; ++skip) {
      Matrix m(0, n);
      for (int i = 0; i < c; ++i)
        if (i != skip) m.append_row(pts[i].vec());
      if (mat_rank(f, m) != n) return false;
    }
    return true;
  };
  // A frame inside the point set of a.
  std::vector<int> frame_idx;
  std::vector<Subspace> frame_pts;
  auto pick = [&](auto&& self, int start) -> bool {
    if (static_cast<int>(frame_pts.size()) == n + 1) return true;
    for (int i = start; i < static_cast<int>(pa.size()); ++i) {
      frame_pts.push_back(pa[i].first);
      frame_idx.push_back(i);
      if (general(frame_pts) && self(self, i + 1)) return true;
      frame_pts.pop_back();
      frame_idx.pop_back();
    }
    return false;
  };
  if (!pick(pick, 0)) throw Error(ErrorKind::NoDisjointTriple, "member points contain no frame; isomorphism test unsupported");
  const Frame from{n, frame_pts};
  std::vector<Subspace> image;
  std::optional<PglElement> found;
  auto match = [&](auto&& self) -> bool {
    const std::size_t level = image.size();
    if (static_cast<int>(level) == n + 1) {
      const PglElement cand = pgl_from_frames(from, Frame{n, image});
      if (maps_onto(cand, a, sorted_b)) {
        found = cand;
        return true;
      }
      return false;
    }
    const int want = pa[frame_idx[level]].second;
    for (const auto& [p, d] : pb) {
      if (d != want || std::find(image.begin(), image.end(), p) != image.end()) continue;
      image.push_back(p);
      if (general(image) && self(self)) return true;
      image.pop_back();
    }
    return false;
  };
  match(match);
  return found;
}

}  // namespace

std::optional<PglElement> iso_test(const SubspaceFamily& a, const SubspaceFamily& b) {
  if (a.size() != b.size() || a.m() != b.m() || a.field().q() != b.field().q()) return std::nullopt;
  const Field& f = a.field();
  auto sorted_b = b.members();
  std::sort(sorted_b.begin(), sorted_b.end());
  if (a.size() == 0) return PglElement::identity(f, a.n());
  if (small_pgl(f, a.n())) {
    for (const auto& g : cached_pgl(f, a.n()))
      if (maps_onto(g, a, sorted_b)) return g;
    return std::nullopt;
  }
  if (a.n() == 4) {
    const bool ta = find_disjoint_triple(a).has_value();
    const bool tb = find_disjoint_triple(b).has_value();
    if (ta != tb) return std::nullopt;
    if (ta) return iso_by_triples(a, b, sorted_b);
  }
  return iso_by_frames(a, b, sorted_b);
}

bool is_quadrangle(const std::vector<Subspace>& four) {
  if (four.size() != 4) return false;
  // The three ways to split into two "diagonal" pairs.
  constexpr int pairings[3][4] = {{0, 2, 1, 3}, {0, 1, 2, 3}, {0, 3, 1, 2}};
  for (const auto& p : pairings) {
    const int a = p[0], c = p[1], b = p[2], d = p[3];
    if (!is_trivial_intersection(four[a], four[c]) || !is_trivial_intersection(four[b], four[d])) continue;
    const int cycle[4] = {a, b, c, d};
    bool ok = true;
    for (int i = 0; i < 4 && ok; ++i) ok = subspace_intersect(four[cycle[i]], four[cycle[(i + 1) % 4]]).k() == 1;
    if (ok) return true;
  }
  return false;
}

bool splits_regulus_opposite(const SubspaceFamily& six) {
  if (six.size() != 6 || six.n() != 4) return false;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      for (int c = b + 1; c < 6; ++c) {
        if (!is_trivial_intersection(six[a], six[b]) || !is_trivial_intersection(six[a], six[c]) ||
            !is_trivial_intersection(six[b], six[c]))
          continue;
        const Regulus r = regulus_of(six[a], six[b], six[c]);
        bool ok = true;
        for (int i = 0; i < 6 && ok; ++i) {
          if (i == a || i == b || i == c) continue;
          ok = std::binary_search(r.opposite.begin(), r.opposite.end(), six[i]);
        }
        if (ok) return true;
      }
  return false;
}

NoDisjointTripleCensus no_disjoint_triple_census(const Field& f, const SearchOptions& opts) {
  const Universe u(f, 2);
  const Stratum st = make_stratum(u, SearchMode::NoDisjointTriple, opts);
  SearchStats stats;
  const auto all = run_stratum(u, st, opts, stats);
  NoDisjointTripleCensus c;
  c.q = f.q();
  for (const auto& fam : all) {
    const int k = static_cast<int>(fam.size());
    ++c.counts[k];
    c.max_size = std::max(c.max_size, k);
    if (k == 4) {
      const auto ms = u.members(fam);
      if (is_quadrangle(ms)) {
        c.quadrangle_found = true;
        if (c.size4_examples.size() < 4) c.size4_examples.push_back(u.family(fam));
      }
    }
  }
  return c;
}

}  // namespace msr
