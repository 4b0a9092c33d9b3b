#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "msr/family.hpp"

namespace msr {

enum class SearchMode { FullBruteForce, DisjointTripleAnchored, NoDisjointTriple };
const char* to_string(SearchMode m);
SearchMode parse_search_mode(const std::string& s);

struct SearchOptions {
  int jobs = 0;  // 1 = serial reference path, <= 0 = OpenMP default
  std::uint64_t cap = kDefaultCap;
  /// NoDisjointTriple only: restrict to families containing one of the two canonical pairs
  /// (disjoint, meeting). Off means a plain DFS over all lines.
  bool anchor_pairs = true;
};

struct SearchStats {
  std::uint64_t nodes = 0;   // MSR decisions made
  std::uint64_t prunes = 0;  // decisions that came back No
  double wall_ms = 0;        // not part of the deterministic report
};

struct FamilyClass {
  SubspaceFamily representative;
  WitnessSet witnesses;
  MaximalityCertificate certificate;
  std::size_t found = 0;  // families of the stratum in this class
};

struct Assertion {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct ClassificationReport {
  int q = 0;
  int m = 0;
  SearchMode mode = SearchMode::FullBruteForce;
  int max_size = 0;
  std::map<int, std::size_t> msr_counts;      // every MSR family of the stratum, by size
  std::map<int, std::size_t> maximal_counts;  // maximal ones (within the stratum for NoDisjointTriple)
  std::vector<FamilyClass> extremal_classes;
  std::vector<Assertion> assertions;
  std::map<std::string, std::string> facts;  // derived observations (non-asserted)
  SearchStats stats;

  bool bounds_hold() const;
};

ClassificationReport classify_all(const Field& f, int m, SearchMode mode, const SearchOptions& opts = {});

/// All MSR families of the stratum as sorted index lists into enumerate_subspaces(f, 2m, m).
/// Exposed for cross-checking the pruned search against unpruned enumeration.
std::vector<std::vector<int>> enumerate_msr_families(const Field& f, int m, SearchMode mode,
                                                     const SearchOptions& opts, SearchStats* stats = nullptr);

/// Maps a pairwise disjoint triple of the family onto the canonical triple; returns h and F^h.
std::pair<PglElement, SubspaceFamily> anchor_to_disjoint_triple(const SubspaceFamily& family);
/// Indices of the first pairwise disjoint triple (in index order), if any.
std::optional<std::array<int, 3>> find_disjoint_triple(const SubspaceFamily& family);

/// Some h with F^h = G as sets, or nullopt when none exists.
std::optional<PglElement> iso_test(const SubspaceFamily& a, const SubspaceFamily& b);

bool same_member_set(const SubspaceFamily& a, const SubspaceFamily& b);

struct NoDisjointTripleCensus {
  int q = 0;
  int max_size = 0;
  std::map<int, std::size_t> counts;
  bool quadrangle_found = false;
  std::vector<SubspaceFamily> size4_examples;
};

NoDisjointTripleCensus no_disjoint_triple_census(const Field& f, const SearchOptions& opts = {});

/// Four lines with S1∩S3 = S2∩S4 = 0 and consecutive members meeting in a point, in some order.
bool is_quadrangle(const std::vector<Subspace>& four);

/// Three members in a regulus and the other three in its opposite regulus.
bool splits_regulus_opposite(const SubspaceFamily& six);

}  // namespace msr
