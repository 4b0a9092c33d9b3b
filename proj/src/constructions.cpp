#include "msr/constructions.hpp"

#include "msr/error.hpp"

namespace msr {

namespace {

Subspace span(const Field& f, int n, const std::vector<Vec>& vs) { return Subspace::from_vectors(f, n, vs); }

PglElement element(const Field& f, const Matrix& m) { return PglElement(f, m); }

// [[a I, b I], [c I, d I]] with I of size `half`.
Matrix scalar_blocks(int half, Elem a, Elem b, Elem c, Elem d) {
  Matrix m(2 * half, 2 * half);
  for (int i = 0; i < half; ++i) {
    m(i, i) = a;
    m(i, half + i) = b;
    m(half + i, i) = c;
    m(half + i, half + i) = d;
  }
  return m;
}

}  // namespace

const char* to_string(ConstructionKind k) {
  switch (k) {
    case ConstructionKind::Ex21: return "ex21";
    case ConstructionKind::Ex42: return "ex42";
    case ConstructionKind::Double: return "double";
    case ConstructionKind::ExtremalLineset: return "extremal";
  }
  return "unknown";
}

ConstructionKind parse_construction_kind(const std::string& s) {
  if (s == "ex21") return ConstructionKind::Ex21;
  if (s == "ex42") return ConstructionKind::Ex42;
  if (s == "double") return ConstructionKind::Double;
  if (s == "extremal") return ConstructionKind::ExtremalLineset;
  throw Error(ErrorKind::ParseError, "unknown construction kind '" + s + "' (expected ex21, ex42, double, extremal)");
}

void check_alpha(const Field& f, int alpha) {
  if (!f.valid(alpha) || alpha == 0 || alpha == 1) {
    throw Error(ErrorKind::InvalidAlpha, "alpha=" + std::to_string(alpha) + " must lie in GF(" + std::to_string(f.q()) +
                                             ") minus {0, 1}");
  }
}

Construction construct_2_1(const Field& f, Elem alpha) {
  check_alpha(f, alpha);
  const Elem one_minus_a = f.sub(1, alpha);
  const Elem ainv = f.inv(alpha);
  const Elem one_minus_ainv = f.sub(1, ainv);
  SubspaceFamily fam(f, 1, {span(f, 2, {{1, 0}}), span(f, 2, {{0, 1}}), span(f, 2, {{1, 1}})});
  WitnessSet w = {element(f, Matrix{{1, 0}, {alpha, one_minus_a}}),
                  element(f, Matrix{{one_minus_ainv, ainv}, {0, 1}}),
                  element(f, Matrix{{1, 0}, {0, alpha}})};
  return {std::move(fam), std::move(w)};
}

SubspaceFamily extremal_lineset(const Field& f) {
  return SubspaceFamily(f, 2,
                        {span(f, 4, {{1, 0, 0, 0}, {0, 0, 1, 0}}), span(f, 4, {{0, 1, 0, 0}, {0, 0, 0, 1}}),
                         span(f, 4, {{1, 1, 0, 0}, {0, 0, 1, 1}}), span(f, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}}),
                         span(f, 4, {{0, 0, 1, 0}, {0, 0, 0, 1}}), span(f, 4, {{1, 0, 1, 0}, {0, 1, 0, 1}})});
}

Construction construct_4_2(const Field& f, Elem alpha) {
  check_alpha(f, alpha);
  const Elem a = alpha;
  const Elem b = f.sub(1, alpha);     // 1 - α
  const Elem ai = f.inv(alpha);       // α^{-1}
  const Elem c = f.sub(1, ai);        // 1 - α^{-1}
  WitnessSet w = {
      element(f, Matrix{{1, 0, 0, 0}, {a, b, 0, 0}, {0, 0, 1, 0}, {0, 0, a, b}}),
      element(f, Matrix{{c, ai, 0, 0}, {0, 1, 0, 0}, {0, 0, c, ai}, {0, 0, 0, 1}}),
      element(f, Matrix{{1, 0, 0, 0}, {0, a, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, a}}),
      element(f, Matrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {a, 0, b, 0}, {0, a, 0, b}}),
      element(f, Matrix{{c, 0, ai, 0}, {0, c, 0, ai}, {0, 0, 1, 0}, {0, 0, 0, 1}}),
      element(f, Matrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, a, 0}, {0, 0, 0, a}}),
  };
  return {extremal_lineset(f), std::move(w)};
}

Matrix block_swap(int half) { return scalar_blocks(half, 0, 1, 1, 0); }

namespace {

// The three block members and their witnesses in GF(q)^{2*half}.
void append_block_members(const Field& f, int half, Elem alpha, std::vector<Subspace>& members, WitnessSet& w) {
  const int n = 2 * half;
  std::vector<Vec> first, second, diag;
  for (int i = 0; i < half; ++i) {
    Vec e(n, 0), g(n, 0), d(n, 0);
    e[i] = 1;
    g[half + i] = 1;
    d[i] = 1;
    d[half + i] = 1;
    first.push_back(e);
    second.push_back(g);
    diag.push_back(d);
  }
  members.push_back(span(f, n, first));
  members.push_back(span(f, n, second));
  members.push_back(span(f, n, diag));
  const Elem ai = f.inv(alpha);
  w.push_back(element(f, scalar_blocks(half, 1, 0, alpha, f.sub(1, alpha))));
  w.push_back(element(f, scalar_blocks(half, f.sub(1, ai), ai, 0, 1)));
  w.push_back(element(f, scalar_blocks(half, 1, 0, 0, alpha)));
}

}  // namespace

Construction construct_double(const Construction& input, Elem alpha) {
  const Field& f = input.family.field();
  check_alpha(f, alpha);
  const MsrVerdict v = verify_family(input.family, input.witnesses);
  if (v.status != Verdict::Yes) {
    throw Error(ErrorKind::UnverifiedInput, "input family does not verify: " + v.reason);
  }
  const int half = input.family.n();  // 2m
  const int n = 2 * half;
  const Matrix h = block_swap(half);
  std::vector<Subspace> members;
  WitnessSet w;
  for (int i = 0; i < input.family.size(); ++i) {
    const Subspace& s = input.family[i];
    Matrix lifted(s.k(), n);
    for (int r = 0; r < s.k(); ++r)
      for (int c = 0; c < half; ++c) lifted(r, c) = s.basis()(r, c);
    const Subspace embedded = Subspace::from_generators(f, n, lifted);
    members.push_back(subspace_sum(embedded, matrix_act(f, h, embedded)));
    const Matrix& g = input.witnesses[i]->matrix();
    w.push_back(element(f, block_diag(g, g)));
  }
  append_block_members(f, half, alpha, members, w);
  Construction out{SubspaceFamily(f, half, std::move(members)), std::move(w)};
  const MsrVerdict check = verify_family(out.family, out.witnesses);
  if (check.status != Verdict::Yes) throw Error(ErrorKind::UnverifiedInput, "doubled family failed verification: " + check.reason);
  return out;
}

Construction construct_double_empty(const Field& f, int m, Elem alpha) {
  check_alpha(f, alpha);
  std::vector<Subspace> members;
  WitnessSet w;
  append_block_members(f, 2 * m, alpha, members, w);
  return {SubspaceFamily(f, 2 * m, std::move(members)), std::move(w)};
}

Construction construct(const ConstructionRequest& req) {
  const Field& f = Field::get(req.q);
  switch (req.kind) {
    case ConstructionKind::Ex21: return construct_2_1(f, req.alpha);
    case ConstructionKind::Ex42: return construct_4_2(f, req.alpha);
    case ConstructionKind::Double:
      if (!req.input) throw Error(ErrorKind::UnverifiedInput, "double needs an input family with witnesses");
      return construct_double(*req.input, req.alpha);
    case ConstructionKind::ExtremalLineset: return {extremal_lineset(f), WitnessSet(6)};
  }
  throw Error(ErrorKind::ParseError, "unknown construction");
}

}  // namespace msr
