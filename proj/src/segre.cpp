#include "msr/segre.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "msr/error.hpp"

namespace msr {

namespace {

constexpr int kQuadricPairs[10][2] = {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}};

void require_line(const Subspace& s, const char* what) {
  if (s.n() != 4 || s.k() != 2) throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": expected a line of GF(q)^4");
}

bool sorted_contains(const std::vector<Subspace>& v, const Subspace& s) {
  return std::binary_search(v.begin(), v.end(), s);
}

}  // namespace

Elem QuadricForm::evaluate(const Field& f, std::span<const Elem> x) const {
  Elem acc = 0;
  for (int t = 0; t < 10; ++t) {
    if (coeffs[t] == 0) continue;
    acc = f.add(acc, f.mul(coeffs[t], f.mul(x[kQuadricPairs[t][0]], x[kQuadricPairs[t][1]])));
  }
  return acc;
}

std::string QuadricForm::to_string(const Field& f) const {
  std::ostringstream os;
  bool first = true;
  for (int t = 0; t < 10; ++t) {
    const Elem c = coeffs[t];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (c != 1) os << static_cast<int>(c) << "*";
    const int i = kQuadricPairs[t][0] + 1;
    const int j = kQuadricPairs[t][1] + 1;
    if (i == j) {
      os << "x" << i << "^2";
    } else {
      os << "x" << i << "x" << j;
    }
  }
  (void)f;
  return first ? "0" : os.str();
}

const char* to_string(LineType t) {
  switch (t) {
    case LineType::InRegulus: return "InRegulus";
    case LineType::InOpposite: return "InOpposite";
    case LineType::Secant: return "Secant";
    case LineType::Tangent: return "Tangent";
    case LineType::Passant: return "Passant";
  }
  return "Unknown";
}

const char* to_string(PlaneKind k) { return k == PlaneKind::Conic ? "Conic" : "Degenerate"; }

bool Regulus::on_quadric(const Subspace& point) const { return sorted_contains(points, point); }

int Regulus::quadric_points_in(const Subspace& s) const {
  int count = 0;
  for (const auto& p : points)
    if (s.contains(p.vec())) ++count;
  return count;
}

std::vector<Subspace> transversals(const Subspace& s1, const Subspace& s2, const Subspace& s3) {
  require_line(s1, "transversals");
  require_line(s2, "transversals");
  require_line(s3, "transversals");
  if (!is_trivial_intersection(s1, s2) || !is_trivial_intersection(s1, s3) || !is_trivial_intersection(s2, s3)) {
    throw Error(ErrorKind::NotDisjoint, "the three lines are not pairwise disjoint");
  }
  std::vector<Subspace> out;
  for (const auto& p : subspace_points(s1)) {
    const Subspace line = subspace_intersect(subspace_sum(p, s2), subspace_sum(p, s3));
    if (line.k() != 2) throw Error(ErrorKind::NotDisjoint, "degenerate transversal");
    out.push_back(line);
  }
  std::sort(out.begin(), out.end());
  return out;
}

QuadricForm quadric_fit(const Field& f, const std::vector<Subspace>& points) {
  Matrix system(0, 10);
  Vec row(10);
  for (const auto& p : points) {
    if (p.n() != 4 || p.k() != 1) throw Error(ErrorKind::DimensionMismatch, "quadric_fit expects points of GF(q)^4");
    const auto x = p.vec();
    for (int t = 0; t < 10; ++t) row[t] = f.mul(x[kQuadricPairs[t][0]], x[kQuadricPairs[t][1]]);
    system.append_row(row);
  }
  const Matrix ker = mat_kernel(f, system);
  if (ker.rows() != 1) {
    throw Error(ErrorKind::AmbiguousFit, "solution space has dimension " + std::to_string(ker.rows()));
  }
  QuadricForm qf;
  Vec c(ker.row(0).begin(), ker.row(0).end());
  normalize_vector(f, c);
  std::copy(c.begin(), c.end(), qf.coeffs.begin());
  return qf;
}

Regulus regulus_of(const Subspace& s1, const Subspace& s2, const Subspace& s3) {
  const Field& f = s1.field();
  const int q = f.q();
  Regulus r;
  r.opposite = transversals(s1, s2, s3);
  r.lines = transversals(r.opposite[0], r.opposite[1], r.opposite[2]);
  if (!sorted_contains(r.lines, s1) || !sorted_contains(r.lines, s2) || !sorted_contains(r.lines, s3)) {
    throw Error(ErrorKind::NotDisjoint, "regulus does not contain its defining lines");
  }
  for (const auto& l : r.lines) {
    for (const auto& o : r.opposite) {
      if (subspace_intersect(l, o).k() != 1) throw Error(ErrorKind::NotDisjoint, "ruling lines do not meet in a point");
    }
  }
  for (const auto& l : r.lines) {
    auto pts = subspace_points(l);
    r.points.insert(r.points.end(), pts.begin(), pts.end());
  }
  std::sort(r.points.begin(), r.points.end());
  r.points.erase(std::unique(r.points.begin(), r.points.end()), r.points.end());
  if (static_cast<int>(r.points.size()) != (q + 1) * (q + 1)) {
    throw Error(ErrorKind::NotDisjoint, "regulus covers " + std::to_string(r.points.size()) + " points");
  }
  r.quadric = quadric_fit(f, r.points);
  return r;
}

LineType classify_line(const Subspace& line, const Regulus& r) {
  require_line(line, "classify_line");
  if (sorted_contains(r.lines, line)) return LineType::InRegulus;
  if (sorted_contains(r.opposite, line)) return LineType::InOpposite;
  switch (r.quadric_points_in(line)) {
    case 2: return LineType::Secant;
    case 1: return LineType::Tangent;
    case 0: return LineType::Passant;
    default: throw Error(ErrorKind::InvalidIntersectionSize, "line meets the quadric in more than two points");
  }
}

PlaneType classify_plane(const Subspace& plane, const Regulus& r) {
  if (plane.n() != 4 || plane.k() != 3) throw Error(ErrorKind::DimensionMismatch, "classify_plane expects a plane");
  const int q = plane.field().q();
  const int count = r.quadric_points_in(plane);
  PlaneType t;
  if (count == q + 1) {
    t.kind = PlaneKind::Conic;
    return t;
  }
  if (count == 2 * q + 1) {
    t.kind = PlaneKind::Degenerate;
    for (const auto* family : {&r.lines, &r.opposite})
      for (const auto& l : *family)
        if (plane.contains(l)) t.lines.push_back(l);
    std::sort(t.lines.begin(), t.lines.end());
    if (t.lines.size() != 2) throw Error(ErrorKind::InvalidIntersectionSize, "degenerate plane without two ruling lines");
    return t;
  }
  throw Error(ErrorKind::InvalidIntersectionSize, "plane meets the quadric in " + std::to_string(count) + " points");
}

std::array<Subspace, 3> canonical_triple(const Field& f) {
  return {Subspace::from_vectors(f, 4, {{1, 0, 0, 0}, {0, 0, 1, 0}}),
          Subspace::from_vectors(f, 4, {{0, 1, 0, 0}, {0, 0, 0, 1}}),
          Subspace::from_vectors(f, 4, {{1, 1, 0, 0}, {0, 0, 1, 1}})};
}

PglElement map_triple_to_canonical(const Subspace& a, const Subspace& b, const Subspace& c) {
  require_line(a, "map_triple_to_canonical");
  require_line(b, "map_triple_to_canonical");
  require_line(c, "map_triple_to_canonical");
  if (!is_trivial_intersection(a, b) || !is_trivial_intersection(a, c) || !is_trivial_intersection(b, c)) {
    throw Error(ErrorKind::NotDisjoint, "triple is not pairwise disjoint");
  }
  const Field& f = a.field();
  // c is the graph of an isomorphism a -> b; pair each basis vector of a with its image.
  std::vector<Vec> frame_vecs;
  Vec total(4, 0);
  for (int i = 0; i < 2; ++i) {
    const auto ai = a.basis().row(i);
    const Subspace p = point_of(f, ai);
    const Subspace meet = subspace_intersect(subspace_sum(p, b), c);
    Vec v(meet.vec().begin(), meet.vec().end());  // λ a_i + b_i with λ != 0
    Elem lambda = 0;
    // Solve v = λ a_i + w with w in b: λ is determined by any annihilator of b not killing a_i.
    const Matrix ann_b = annihilator(b);
    for (int r = 0; r < ann_b.rows() && lambda == 0; ++r) {
      Elem wa = 0;
      Elem wv = 0;
      for (int j = 0; j < 4; ++j) {
        wa = f.add(wa, f.mul(ann_b(r, j), ai[j]));
        wv = f.add(wv, f.mul(ann_b(r, j), v[j]));
      }
      if (wa != 0) lambda = f.div(wv, wa);
    }
    const Elem s = f.inv(lambda);
    Vec bi(4);
    for (int j = 0; j < 4; ++j) {
      v[j] = f.mul(v[j], s);
      bi[j] = f.sub(v[j], ai[j]);
    }
    frame_vecs.emplace_back(ai.begin(), ai.end());
    frame_vecs.push_back(bi);
    for (int j = 0; j < 4; ++j) total[j] = f.add(total[j], v[j]);
  }
  std::vector<Subspace> pts;
  for (const auto& v : frame_vecs) pts.push_back(point_of(f, v));
  pts.push_back(point_of(f, total));
  const Frame from = frame_check(pts);
  return pgl_from_frames(from, standard_frame(f, 4));
}

std::vector<PglElement> regulus_stabilizer(const Regulus& r, std::uint64_t cap) {
  const Field& f = r.lines.front().field();
  const std::uint64_t q = static_cast<std::uint64_t>(f.q());
  const std::uint64_t pgl2 = q * q * q - q;
  if (pgl2 * pgl2 > cap) {
    throw Error(ErrorKind::TooLarge, "regulus stabilizer order " + std::to_string(pgl2 * pgl2) + " exceeds cap");
  }
  const auto pgl = enumerate_pgl(f, 2);
  const PglElement h = map_triple_to_canonical(r.lines[0], r.lines[1], r.lines[2]);
  const Matrix h_inv = mat_inverse(f, h.matrix());
  std::vector<PglElement> out;
  out.reserve(pgl.size() * pgl.size());
  for (const auto& outer : pgl) {
    for (const auto& inner : pgl) {
      const Matrix k = kron(f, outer.matrix(), inner.matrix());
      out.emplace_back(f, mat_mul(f, h_inv, mat_mul(f, k, h.matrix())));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

template <typename TypeFn>
std::vector<OrbitInfo> orbits_of(const std::vector<Subspace>& objects, const std::vector<PglElement>& group,
                                 TypeFn type_of, bool& consistent, int jobs) {
  const int count = static_cast<int>(objects.size());
  std::vector<std::vector<int>> image(count);
#ifdef _OPENMP
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
  for (int i = 0; i < count; ++i) {
    image[i].reserve(group.size());
    for (const auto& g : group) {
      const Subspace img = pgl_act(g, objects[i]);
      image[i].push_back(static_cast<int>(std::lower_bound(objects.begin(), objects.end(), img) - objects.begin()));
    }
  }
  (void)jobs;
  UnionFind uf(count);
  for (int i = 0; i < count; ++i)
    for (int j : image[i]) uf.unite(i, j);
  std::map<int, OrbitInfo> by_root;
  std::vector<std::string> types(count);
  for (int i = 0; i < count; ++i) types[i] = type_of(objects[i]);
  for (int i = 0; i < count; ++i) {
    const int root = uf.find(i);
    auto [it, fresh] = by_root.try_emplace(root);
    if (fresh) {
      it->second.type = types[i];
      it->second.representative = objects[i];
    } else if (it->second.type != types[i]) {
      consistent = false;
    }
    ++it->second.size;
  }
  std::vector<OrbitInfo> out;
  std::map<std::string, int> orbits_per_type;
  for (auto& [root, info] : by_root) {
    ++orbits_per_type[info.type];
    out.push_back(std::move(info));
  }
  for (const auto& [t, c] : orbits_per_type)
    if (c != 1) consistent = false;
  return out;
}

}  // namespace

CensusReport line_orbit_census(const Regulus& r, int jobs) {
  const Field& f = r.lines.front().field();
  CensusReport rep;
  rep.q = f.q();
  const auto group = regulus_stabilizer(r);
  rep.group_order = group.size();
  const auto lines = enumerate_subspaces(f, 4, 2);
  const auto planes = enumerate_subspaces(f, 4, 3);

  std::vector<LineType> line_types;
  for (const auto& l : lines) {
    line_types.push_back(classify_line(l, r));
    ++rep.line_type_counts[to_string(line_types.back())];
  }
  std::vector<PlaneKind> plane_kinds;
  for (const auto& p : planes) {
    plane_kinds.push_back(classify_plane(p, r).kind);
    ++rep.plane_type_counts[to_string(plane_kinds.back())];
  }

  bool consistent = true;
  rep.line_orbits = orbits_of(
      lines, group, [&](const Subspace& l) { return std::string(to_string(classify_line(l, r))); }, consistent, jobs);
  rep.plane_orbits = orbits_of(
      planes, group, [&](const Subspace& p) { return std::string(to_string(classify_plane(p, r).kind)); }, consistent,
      jobs);
  rep.orbits_match_types = consistent;

  rep.passant_planes_all_conic = true;
  rep.ruling_planes_all_degenerate = true;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto& tally = rep.planes_through_lines[to_string(line_types[i])];
    for (std::size_t j = 0; j < planes.size(); ++j) {
      if (!planes[j].contains(lines[i])) continue;
      const bool conic = plane_kinds[j] == PlaneKind::Conic;
      (conic ? tally.first : tally.second) += 1;
      if (line_types[i] == LineType::Passant && !conic) rep.passant_planes_all_conic = false;
      if ((line_types[i] == LineType::InRegulus || line_types[i] == LineType::InOpposite) && conic) {
        rep.ruling_planes_all_degenerate = false;
      }
    }
  }
  return rep;
}

}  // namespace msr
