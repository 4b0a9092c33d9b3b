#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "msr/pgl.hpp"

namespace msr {

/// Quadratic form Σ_{i<=j} c_ij x_i x_j on GF(q)^4, coefficients in the order
/// 11 12 13 14 22 23 24 33 34 44, first nonzero coefficient 1.
struct QuadricForm {
  std::array<Elem, 10> coeffs{};

  Elem evaluate(const Field& f, std::span<const Elem> x) const;
  std::string to_string(const Field& f) const;
  friend bool operator==(const QuadricForm&, const QuadricForm&) = default;
};

/// The lines of a regulus, its opposite regulus and the (q+1)^2 points they cover.
struct Regulus {
  std::vector<Subspace> lines;     // sorted
  std::vector<Subspace> opposite;  // sorted
  std::vector<Subspace> points;    // sorted
  QuadricForm quadric;

  bool on_quadric(const Subspace& point) const;
  int quadric_points_in(const Subspace& s) const;
};

enum class LineType { InRegulus, InOpposite, Secant, Tangent, Passant };
enum class PlaneKind { Conic, Degenerate };
const char* to_string(LineType t);
const char* to_string(PlaneKind k);

struct PlaneType {
  PlaneKind kind = PlaneKind::Conic;
  std::vector<Subspace> lines;  // the two ruling lines when Degenerate
};

/// For each point P of s1 the line <P,s2> ∩ <P,s3>; throws NotDisjoint.
std::vector<Subspace> transversals(const Subspace& s1, const Subspace& s2, const Subspace& s3);
Regulus regulus_of(const Subspace& s1, const Subspace& s2, const Subspace& s3);
/// Fits the unique (up to scalar) quadratic form vanishing on all points; throws AmbiguousFit.
QuadricForm quadric_fit(const Field& f, const std::vector<Subspace>& points);

LineType classify_line(const Subspace& line, const Regulus& r);
PlaneType classify_plane(const Subspace& plane, const Regulus& r);

/// The canonical triple <e1,e3>, <e2,e4>, <e1+e2,e3+e4>.
std::array<Subspace, 3> canonical_triple(const Field& f);

/// Some h with h·a = T1, h·b = T2, h·c = T3 for the canonical triple T (frame transport).
PglElement map_triple_to_canonical(const Subspace& a, const Subspace& b, const Subspace& c);

/// Setwise stabilizer of the regulus: conjugates of {B ⊗ A : A, B in GL(2,q)} / scalars.
std::vector<PglElement> regulus_stabilizer(const Regulus& r, std::uint64_t cap = 1'000'000);

struct OrbitInfo {
  std::string type;
  std::size_t size = 0;
  Subspace representative;
};

struct CensusReport {
  int q = 0;
  std::size_t group_order = 0;
  std::map<std::string, std::size_t> line_type_counts;
  std::map<std::string, std::size_t> plane_type_counts;
  std::vector<OrbitInfo> line_orbits;
  std::vector<OrbitInfo> plane_orbits;
  bool orbits_match_types = false;
  /// For each line type, how many (Conic, Degenerate) planes pass through lines of that type.
  std::map<std::string, std::pair<std::size_t, std::size_t>> planes_through_lines;
  bool passant_planes_all_conic = false;
  bool ruling_planes_all_degenerate = false;
};

CensusReport line_orbit_census(const Regulus& r, int jobs = 0);

}  // namespace msr
