#include "msr/family.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "msr/error.hpp"

namespace msr {

SubspaceFamily::SubspaceFamily(const Field& f, int m, std::vector<Subspace> members)
    : field_(&f), m_(m), members_(std::move(members)) {
  if (m < 1 || 2 * m > kMaxDimension) throw Error(ErrorKind::DimensionMismatch, "m out of range");
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const auto& s = members_[i];
    if (s.field().q() != f.q() || s.n() != 2 * m || s.k() != m) {
      throw Error(ErrorKind::DimensionMismatch, "member " + std::to_string(i) + " is not an " + std::to_string(m) +
                                                    "-space of GF(q)^" + std::to_string(2 * m));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (members_[j] == s) {
        throw Error(ErrorKind::DimensionMismatch,
                    "members " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
      }
    }
  }
}

std::vector<Subspace> SubspaceFamily::without(int i) const {
  std::vector<Subspace> rest;
  rest.reserve(members_.size());
  for (int j = 0; j < size(); ++j)
    if (j != i) rest.push_back(members_[j]);
  return rest;
}

SubspaceFamily SubspaceFamily::with(const Subspace& extra) const {
  auto ms = members_;
  ms.push_back(extra);
  return SubspaceFamily(*field_, m_, std::move(ms));
}

SubspaceFamily SubspaceFamily::image(const PglElement& h) const {
  std::vector<Subspace> ms;
  ms.reserve(members_.size());
  for (const auto& s : members_) ms.push_back(pgl_act(h, s));
  return SubspaceFamily(*field_, m_, std::move(ms));
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "Yes";
    case Verdict::No: return "No";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

const char* to_string(MaximalityCertificate::Kind k) {
  switch (k) {
    case MaximalityCertificate::Kind::TrivialStab: return "TrivialStab";
    case MaximalityCertificate::Kind::PointwiseFixedSpace: return "PointwiseFixedSpace";
    case MaximalityCertificate::Kind::ExhaustiveExtension: return "ExhaustiveExtension";
    case MaximalityCertificate::Kind::NotMaximal: return "NotMaximal";
  }
  return "Unknown";
}

bool verify_witness(const SubspaceFamily& family, int i, const PglElement& g) {
  if (i < 0 || i >= family.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "index " + std::to_string(i) + " for a family of size " +
                                                std::to_string(family.size()));
  }
  if (g.n() != family.n()) throw Error(ErrorKind::DimensionMismatch, "witness dimension");
  for (int j = 0; j < family.size(); ++j) {
    if (j != i && !(pgl_act(g, family[j]) == family[j])) return false;
  }
  return is_trivial_intersection(family[i], pgl_act(g, family[i]));
}

MsrVerdict verify_family(const SubspaceFamily& family, const WitnessSet& witnesses,
                         std::vector<CheckRecord>* transcript) {
  if (static_cast<int>(witnesses.size()) != family.size() ||
      std::any_of(witnesses.begin(), witnesses.end(), [](const auto& w) { return !w.has_value(); })) {
    throw Error(ErrorKind::IncompleteWitnessSet, "expected " + std::to_string(family.size()) + " witnesses");
  }
  MsrVerdict v;
  v.status = Verdict::Yes;
  v.witnesses = witnesses;
  for (int i = 0; i < family.size(); ++i) {
    const PglElement& g = *witnesses[i];
    bool ok = true;
    for (int j = 0; j < family.size(); ++j) {
      if (j == i) continue;
      const bool holds = pgl_act(g, family[j]) == family[j];
      if (transcript) {
        transcript->push_back({"g" + std::to_string(i) + " S" + std::to_string(j) + " = S" + std::to_string(j), holds});
      }
      if (!holds && ok) {
        ok = false;
        if (v.failure_index < 0) v.reason = "witness " + std::to_string(i) + " moves member " + std::to_string(j);
      }
    }
    const bool comp = is_trivial_intersection(family[i], pgl_act(g, family[i]));
    if (transcript) {
      transcript->push_back({"S" + std::to_string(i) + " ∩ g" + std::to_string(i) + " S" + std::to_string(i) + " = 0", comp});
    }
    if (!comp && ok) {
      ok = false;
      if (v.failure_index < 0) v.reason = "witness " + std::to_string(i) + " does not move S" + std::to_string(i) + " to a complement";
    }
    if (!ok && v.failure_index < 0) {
      v.status = Verdict::No;
      v.failure_index = i;
    }
  }
  if (v.status == Verdict::No) v.witnesses.clear();
  return v;
}

namespace {

constexpr int kMaxAlgebraDim = 64;

// Candidate test for one target subspace, with the images B_j s_l precomputed.
class WitnessKernel {
 public:
  WitnessKernel(const MatrixSpace& a, const Subspace& target)
      : a_(a), f_(*a.field), n_(a.n), k_(target.k()), d_(a.dim()), target_(target) {
    if (d_ > kMaxAlgebraDim) throw Error(ErrorKind::TooLarge, "algebra dimension " + std::to_string(d_));
    images_.assign(static_cast<std::size_t>(d_) * k_ * n_, 0);
    for (int j = 0; j < d_; ++j) {
      for (int l = 0; l < k_; ++l) {
        const Vec img = mat_vec(f_, a.basis[j], target.basis().row(l));
        std::copy(img.begin(), img.end(), images_.begin() + (static_cast<std::size_t>(j) * k_ + l) * n_);
      }
    }
  }

  int dim() const { return d_; }

  bool test(std::uint64_t rank, Matrix* out) const {
    std::array<Elem, kMaxAlgebraDim> c{};
    projective_coords(f_.q(), d_, rank, std::span<Elem>(c.data(), d_));
    // [S; g S] must have full rank 2k.
    std::array<Elem, 2 * kMaxDimension * kMaxDimension> buf{};
    for (int l = 0; l < k_; ++l) {
      const auto row = target_.basis().row(l);
      std::copy(row.begin(), row.end(), buf.begin() + l * n_);
      Elem* dst = buf.data() + (k_ + l) * n_;
      for (int j = 0; j < d_; ++j) {
        if (c[j] == 0) continue;
        const Elem* src = images_.data() + (static_cast<std::size_t>(j) * k_ + l) * n_;
        for (int x = 0; x < n_; ++x) dst[x] = f_.add(dst[x], f_.mul(c[j], src[x]));
      }
    }
    if (rank_in_place(f_, buf.data(), 2 * k_, n_) != 2 * k_) return false;
    const Matrix g = a_.combine(std::span<const Elem>(c.data(), d_));
    std::array<Elem, kMaxDimension * kMaxDimension> work{};
    std::copy(g.data().begin(), g.data().end(), work.begin());
    if (rank_in_place(f_, work.data(), n_, n_) != n_) return false;
    if (out) *out = g;
    return true;
  }

 private:
  const MatrixSpace& a_;
  const Field& f_;
  int n_;
  int k_;
  int d_;
  const Subspace& target_;
  std::vector<Elem> images_;
};

bool power_within(int q, int d, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (int i = 0; i < d; ++i) {
    v *= static_cast<std::uint64_t>(q);
    if (v > cap) return false;
  }
  return true;
}

WitnessSearch finish(const MatrixSpace& a, std::uint64_t total, std::uint64_t limit, std::uint64_t best,
                     const WitnessKernel& kernel) {
  WitnessSearch res;
  res.algebra_dim = a.dim();
  if (best != UINT64_MAX) {
    Matrix g;
    kernel.test(best, &g);
    res.outcome = WitnessSearch::Outcome::Found;
    res.witness = PglElement(*a.field, g);
    res.examined = best + 1;
  } else {
    res.examined = std::min(total, limit);
    res.outcome = limit >= total ? WitnessSearch::Outcome::None : WitnessSearch::Outcome::Unknown;
  }
  return res;
}

}  // namespace

WitnessSearch search_algebra_serial(const MatrixSpace& algebra, const Subspace& target, std::uint64_t limit) {
  const WitnessKernel kernel(algebra, target);
  const std::uint64_t total = projective_count(algebra.field->q(), algebra.dim());
  const std::uint64_t end = std::min(total, limit);
  std::uint64_t best = UINT64_MAX;
  for (std::uint64_t r = 0; r < end; ++r) {
    if (kernel.test(r, nullptr)) {
      best = r;
      break;
    }
  }
  return finish(algebra, total, limit, best, kernel);
}

WitnessSearch search_algebra_parallel(const MatrixSpace& algebra, const Subspace& target, std::uint64_t limit,
                                      int jobs) {
  const WitnessKernel kernel(algebra, target);
  const std::uint64_t total = projective_count(algebra.field->q(), algebra.dim());
  const std::uint64_t end = std::min(total, limit);
  constexpr std::uint64_t kChunk = 2048;
  const std::int64_t chunks = static_cast<std::int64_t>((end + kChunk - 1) / kChunk);
  std::atomic<std::uint64_t> best{UINT64_MAX};
#ifdef _OPENMP
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::uint64_t b = static_cast<std::uint64_t>(c) * kChunk;
    if (b >= best.load(std::memory_order_relaxed)) continue;
    const std::uint64_t e = std::min(end, b + kChunk);
    for (std::uint64_t r = b; r < e; ++r) {
      if (kernel.test(r, nullptr)) {
        std::uint64_t cur = best.load();
        while (r < cur && !best.compare_exchange_weak(cur, r)) {
        }
        break;
      }
    }
  }
  (void)jobs;
  return finish(algebra, total, limit, best.load(), kernel);
}

WitnessSearch search_algebra_for_witness(const MatrixSpace& algebra, const Subspace& target, std::uint64_t cap,
                                         int jobs) {
  // Within the cap the scan is exhaustive; beyond it only the first `cap` candidates are tried.
  const std::uint64_t limit = power_within(algebra.field->q(), algebra.dim(), cap) ? UINT64_MAX : cap;
  return jobs == 1 ? search_algebra_serial(algebra, target, limit)
                   : search_algebra_parallel(algebra, target, limit, jobs);
}

WitnessSearch find_witness(const SubspaceFamily& family, int i, std::uint64_t cap, int jobs) {
  if (i < 0 || i >= family.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "index " + std::to_string(i) + " for a family of size " +
                                                std::to_string(family.size()));
  }
  const MatrixSpace a = stab_algebra(family.field(), family.n(), family.without(i));
  return search_algebra_for_witness(a, family[i], cap, jobs);
}

MsrVerdict decide_msr(const SubspaceFamily& family, std::uint64_t cap, int jobs) {
  const int k = family.size();
  std::vector<WitnessSearch> results(k);
  // Member indices are independent; with jobs != 1 they fan out, each search then runs serially.
#ifdef _OPENMP
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (jobs != 1 && k > 1)
#endif
  for (int i = 0; i < k; ++i) results[i] = find_witness(family, i, cap, 1);
  (void)jobs;

  MsrVerdict v;
  v.status = Verdict::Yes;
  for (int i = 0; i < k; ++i) {
    if (results[i].outcome == WitnessSearch::Outcome::None) {
      v.status = Verdict::No;
      v.failure_index = i;
      v.reason = "no element of the stabilizer of the other members moves S" + std::to_string(i) +
                 " to a complement (exhaustive over " + std::to_string(results[i].examined) + " candidates)";
      v.witnesses.clear();
      return v;
    }
    if (results[i].outcome == WitnessSearch::Outcome::Unknown && v.status == Verdict::Yes) {
      v.status = Verdict::Unknown;
      v.failure_index = i;
      v.budget_note = "witness search for S" + std::to_string(i) + " stopped at cap " + std::to_string(cap) +
                      " (algebra dimension " + std::to_string(results[i].algebra_dim) + ")";
    }
    v.witnesses.push_back(results[i].witness);
  }
  if (v.status != Verdict::Yes) {
    v.witnesses.clear();
    return v;
  }
  // A Yes verdict always carries an independently re-verified witness set.
  const MsrVerdict check = verify_family(family, v.witnesses);
  if (check.status != Verdict::Yes) throw Error(ErrorKind::UnverifiedInput, "internal: found witness failed verification");
  return v;
}

std::optional<Subspace> find_extension(const SubspaceFamily& family, std::uint64_t cap) {
  const Field& f = family.field();
  std::optional<PglGroup> u;
  try {
    u = stab_group(f, family.n(), family.members(), cap, 1);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::TooLarge) throw;
  }
  SubspaceEnumerator en(f, family.n(), family.m());
  bool unknown = false;
  while (auto s = en.next()) {
    if (std::find(family.members().begin(), family.members().end(), *s) != family.members().end()) continue;
    if (u && u->order() <= 5000) {
      // The new member needs a witness inside Stab(family); check that first.
      const bool movable = std::any_of(u->elements().begin(), u->elements().end(), [&](const PglElement& g) {
        return is_trivial_intersection(*s, pgl_act(g, *s));
      });
      if (!movable) continue;
    }
    const MsrVerdict v = decide_msr(family.with(*s), cap, 1);
    if (v.status == Verdict::Yes) return *s;
    if (v.status == Verdict::Unknown) unknown = true;
  }
  if (unknown) throw Error(ErrorKind::TooLarge, "extension search hit the witness cap");
  return std::nullopt;
}

MaximalityCertificate is_maximal(const SubspaceFamily& family, std::uint64_t cap) {
  const Field& f = family.field();
  try {
    const PglGroup u = stab_group(f, family.n(), family.members(), cap, 1);
    if (u.is_trivial()) return {MaximalityCertificate::Kind::TrivialStab, std::nullopt};
    const auto fixed = pointwise_fixed_subspaces(u, f, family.n(), family.m() + 1);
    if (!fixed.empty()) return {MaximalityCertificate::Kind::PointwiseFixedSpace, fixed.front().space};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::TooLarge) throw;
  }
  if (auto ext = find_extension(family, cap)) return {MaximalityCertificate::Kind::NotMaximal, *ext};
  return {MaximalityCertificate::Kind::ExhaustiveExtension, std::nullopt};
}

std::optional<std::vector<Subspace>> pointwise_fixed_frame(const PglGroup& u, const Field& f, int n, int ell) {
  std::vector<Subspace> fixed;
  for (auto& p : enumerate_subspaces(f, n, 1)) {
    const bool all = std::all_of(u.elements().begin(), u.elements().end(),
                                 [&](const PglElement& g) { return pgl_act(g, p) == p; });
    if (all) fixed.push_back(std::move(p));
  }
  const int count = static_cast<int>(fixed.size());
  if (count < ell + 1) return std::nullopt;
  std::vector<int> pick;
  auto rank_of = [&](const std::vector<int>& idx, int skip) {
    Matrix m(0, n);
    for (int i = 0; i < static_cast<int>(idx.size()); ++i)
      if (i != skip) m.append_row(fixed[idx[i]].vec());
    return mat_rank(f, m);
  };
  // Choose ell independent fixed points, then one more in their span off every coordinate hyperplane.
  std::optional<std::vector<Subspace>> found;
  auto rec = [&](auto&& self, int start) -> bool {
    if (static_cast<int>(pick.size()) == ell) {
      for (int c = 0; c < count; ++c) {
        if (std::find(pick.begin(), pick.end(), c) != pick.end()) continue;
        pick.push_back(c);
        bool general = rank_of(pick, -1) == ell;
        for (int s = 0; general && s <= ell; ++s) general = rank_of(pick, s) == ell;
        if (general) {
          std::vector<Subspace> pts;
          for (int i : pick) pts.push_back(fixed[i]);
          found = std::move(pts);
          return true;
        }
        pick.pop_back();
      }
      return false;
    }
    for (int c = start; c < count; ++c) {
      pick.push_back(c);
      if (rank_of(pick, -1) == static_cast<int>(pick.size()) && self(self, c + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  rec(rec, 0);
  return found;
}

}  // namespace msr
