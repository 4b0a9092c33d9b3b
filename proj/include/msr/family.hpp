#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "msr/pgl.hpp"

namespace msr {

/// Ordered list of distinct m-spaces of GF(q)^{2m}.
class SubspaceFamily {
 public:
  SubspaceFamily() = default;
  /// Validates ambient dimension 2m, member dimension m and distinctness.
  SubspaceFamily(const Field& f, int m, std::vector<Subspace> members);

  const Field& field() const { return *field_; }
  int m() const { return m_; }
  int n() const { return 2 * m_; }
  int size() const { return static_cast<int>(members_.size()); }
  const std::vector<Subspace>& members() const { return members_; }
  const Subspace& operator[](int i) const { return members_[i]; }

  /// Members other than index i.
  std::vector<Subspace> without(int i) const;
  SubspaceFamily with(const Subspace& extra) const;
  SubspaceFamily image(const PglElement& h) const;

 private:
  const Field* field_ = nullptr;
  int m_ = 0;
  std::vector<Subspace> members_;
};

using WitnessSet = std::vector<std::optional<PglElement>>;

enum class Verdict { Yes, No, Unknown };
const char* to_string(Verdict v);

struct MsrVerdict {
  Verdict status = Verdict::Unknown;
  WitnessSet witnesses;  // complete when status == Yes
  int failure_index = -1;
  std::string reason;
  std::string budget_note;
};

/// One checked equality in a verification transcript.
struct CheckRecord {
  std::string check;
  bool holds = false;
};

bool verify_witness(const SubspaceFamily& family, int i, const PglElement& g);
MsrVerdict verify_family(const SubspaceFamily& family, const WitnessSet& witnesses,
                         std::vector<CheckRecord>* transcript = nullptr);

struct WitnessSearch {
  enum class Outcome { Found, None, Unknown };
  Outcome outcome = Outcome::Unknown;
  std::optional<PglElement> witness;
  int algebra_dim = 0;
  std::uint64_t examined = 0;
};

/// First invertible g in `algebra` (lexicographic coordinate order) with target ∩ g·target = 0.
/// Exhaustive when q^dim <= cap; otherwise scans the first `cap` candidates and reports Unknown
/// if none of them works.
WitnessSearch search_algebra_for_witness(const MatrixSpace& algebra, const Subspace& target, std::uint64_t cap,
                                         int jobs);
WitnessSearch search_algebra_serial(const MatrixSpace& algebra, const Subspace& target, std::uint64_t limit);
WitnessSearch search_algebra_parallel(const MatrixSpace& algebra, const Subspace& target, std::uint64_t limit,
                                      int jobs);

WitnessSearch find_witness(const SubspaceFamily& family, int i, std::uint64_t cap = kDefaultCap, int jobs = 1);
MsrVerdict decide_msr(const SubspaceFamily& family, std::uint64_t cap = kDefaultCap, int jobs = 1);

struct MaximalityCertificate {
  enum class Kind { TrivialStab, PointwiseFixedSpace, ExhaustiveExtension, NotMaximal };
  Kind kind = Kind::ExhaustiveExtension;
  std::optional<Subspace> space;  // H for PointwiseFixedSpace, the extension for NotMaximal
};
const char* to_string(MaximalityCertificate::Kind k);

/// Maximality by trivial stabilizer, then a pointwise-fixed space of dimension >= m+1,
/// then exhaustive extension over all m-spaces.
MaximalityCertificate is_maximal(const SubspaceFamily& family, std::uint64_t cap = kDefaultCap);
/// The exhaustive criterion alone: an m-space whose addition keeps the family MSR, if any.
std::optional<Subspace> find_extension(const SubspaceFamily& family, std::uint64_t cap = kDefaultCap);

/// Frame-side of the fixed-space criterion: ell+1 points in general position spanning an
/// ell-space, each fixed by every element of U.
std::optional<std::vector<Subspace>> pointwise_fixed_frame(const PglGroup& u, const Field& f, int n, int ell);

}  // namespace msr
