#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "msr/constructions.hpp"
#include "msr/error.hpp"
#include "msr/io.hpp"
#include "msr/search.hpp"
#include "msr/segre.hpp"

using namespace msr;

namespace {

enum Exit { kOk = 0, kNo = 1, kInput = 2, kUnknown = 3, kTooLarge = 4 };

struct Common {
  std::string output;
  int jobs = 0;
  std::uint64_t cap = kDefaultCap;
  std::string command;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_output(const Common& c, const std::string& text) {
  if (c.output.empty() || c.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + c.output);
  out << text;
}

Certificate certificate_for(const Common& c, const SubspaceFamily& fam) {
  Certificate cert;
  cert.command = c.command;
  cert.q = fam.field().q();
  cert.m = fam.m();
  cert.n = fam.n();
  return cert;
}

int exit_for(Verdict v) { return v == Verdict::Yes ? kOk : v == Verdict::No ? kNo : kUnknown; }

int cmd_verify(const Common& c, const std::string& file) {
  const FamilyDocument doc = parse_family(read_input(file));
  Certificate cert = certificate_for(c, doc.family);
  MsrVerdict v;
  const bool complete = doc.witnesses && std::all_of(doc.witnesses->begin(), doc.witnesses->end(),
                                                     [](const auto& g) { return g.has_value(); });
  if (complete) {
    v = verify_family(doc.family, *doc.witnesses, &cert.transcript);
  } else {
    v = decide_msr(doc.family, c.cap, c.jobs == 1 ? 1 : 0);
    if (v.status == Verdict::Yes) verify_family(doc.family, v.witnesses, &cert.transcript);
  }
  cert.payload["family"] = to_json(doc.family, v.status == Verdict::Yes ? &v.witnesses : nullptr);
  cert.payload["witnesses_supplied"] = complete;
  cert.payload["result"] = to_json(v);
  write_output(c, emit(cert));
  return exit_for(v.status);
}

int cmd_witness(const Common& c, const std::string& file, int index) {
  const FamilyDocument doc = parse_family(read_input(file));
  if (index < 0 || index >= doc.family.size())
    throw Error(ErrorKind::IndexOutOfRange, "index " + std::to_string(index) + " outside [0, " +
                                                std::to_string(doc.family.size()) + ")");
  Certificate cert = certificate_for(c, doc.family);
  const WitnessSearch ws = find_witness(doc.family, index, c.cap, c.jobs == 1 ? 1 : 0);
  const char* outcome = ws.outcome == WitnessSearch::Outcome::Found ? "Found"
                        : ws.outcome == WitnessSearch::Outcome::None ? "None"
                                                                     : "Unknown";
  cert.payload["family"] = to_json(doc.family, nullptr);
  cert.payload["index"] = index;
  cert.payload["outcome"] = outcome;
  cert.payload["algebra_dim"] = ws.algebra_dim;
  cert.payload["examined"] = ws.examined;
  cert.payload["witness"] = ws.witness ? to_json(*ws.witness) : Json(nullptr);
  if (ws.witness) cert.transcript.push_back({"S_" + std::to_string(index) + " meets its image trivially, others fixed",
                                             verify_witness(doc.family, index, *ws.witness)});
  write_output(c, emit(cert));
  return ws.outcome == WitnessSearch::Outcome::Found ? kOk : ws.outcome == WitnessSearch::Outcome::None ? kNo : kUnknown;
}

int cmd_construct(const Common& c, const std::string& kind, int q, int alpha, const std::string& input) {
  ConstructionRequest req;
  req.kind = parse_construction_kind(kind);
  if (req.kind == ConstructionKind::Double) {
    const FamilyDocument doc = parse_family(read_input(input.empty() ? "-" : input));
    if (!doc.witnesses) throw Error(ErrorKind::UnverifiedInput, "input family carries no witnesses");
    req.input = Construction{doc.family, *doc.witnesses};
    q = doc.field->q();
  }
  req.q = q;
  const Field& f = Field::get(q);
  if (req.kind != ConstructionKind::ExtremalLineset) check_alpha(f, alpha);
  req.alpha = static_cast<Elem>(alpha);
  const Construction out = construct(req);
  Certificate cert = certificate_for(c, out.family);
  const bool has_witnesses = std::all_of(out.witnesses.begin(), out.witnesses.end(),
                                         [](const auto& g) { return g.has_value(); });
  if (has_witnesses) verify_family(out.family, out.witnesses, &cert.transcript);
  cert.payload["kind"] = to_string(req.kind);
  cert.payload["alpha"] = req.kind == ConstructionKind::ExtremalLineset ? Json(nullptr) : Json(alpha);
  cert.payload["family"] = to_json(out.family, has_witnesses ? &out.witnesses : nullptr);
  write_output(c, emit(cert));
  return kOk;
}

std::vector<int> parse_indices(const std::string& s, int size) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int v = 0;
    try {
      v = std::stoi(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad index '" + item + "' in --triple");
    }
    if (v < 0 || v >= size)
      throw Error(ErrorKind::IndexOutOfRange, "index " + std::to_string(v) + " outside [0, " + std::to_string(size) + ")");
    out.push_back(v);
  }
  return out;
}

int cmd_stab(const Common& c, const std::string& file, const std::string& subset) {
  const FamilyDocument doc = parse_family(read_input(file));
  std::vector<Subspace> members = doc.family.members();
  if (!subset.empty()) {
    std::vector<Subspace> chosen;
    for (int i : parse_indices(subset, doc.family.size())) chosen.push_back(members[i]);
    members = chosen;
  }
  const Field& f = *doc.field;
  const MatrixSpace algebra = stab_algebra(f, doc.family.n(), members);
  const PglGroup g = stab_group(f, doc.family.n(), members, c.cap, c.jobs == 1 ? 1 : 0);
  Certificate cert = certificate_for(c, doc.family);
  cert.payload["members"] = subset.empty() ? Json("all") : Json(subset);
  Json basis = Json::array();
  for (const auto& b : algebra.basis) basis.push_back(to_json(b));
  cert.payload["algebra_dim"] = algebra.basis.size();
  cert.payload["algebra_basis"] = basis;
  cert.payload["order"] = g.order();
  Json elems = Json::array();
  for (const auto& e : g.elements()) elems.push_back(to_json(e.matrix()));
  cert.payload["elements"] = elems;
  for (const auto& s : members) {
    bool fixed = true;
    for (const auto& e : g.elements()) fixed = fixed && pgl_act(e, s) == s;
    cert.transcript.push_back({"stabilizer fixes member", fixed});
  }
  write_output(c, emit(cert));
  return kOk;
}

int cmd_regulus(const Common& c, const std::string& file, const std::string& triple, bool census) {
  const FamilyDocument doc = parse_family(read_input(file));
  if (doc.family.n() != 4) throw Error(ErrorKind::DimensionMismatch, "regulus needs lines of GF(q)^4");
  const auto idx = parse_indices(triple, doc.family.size());
  if (idx.size() != 3) throw Error(ErrorKind::ParseError, "--triple needs three indices");
  const Regulus r = regulus_of(doc.family[idx[0]], doc.family[idx[1]], doc.family[idx[2]]);
  Certificate cert = certificate_for(c, doc.family);
  cert.payload["triple"] = idx;
  cert.payload["regulus"] = to_json(r);
  cert.payload["quadric_text"] = r.quadric.to_string(*doc.field);
  cert.transcript.push_back({"regulus has q+1 lines", static_cast<int>(r.lines.size()) == doc.field->q() + 1});
  bool meets = true;
  for (const auto& a : r.lines)
    for (const auto& b : r.opposite) meets = meets && subspace_intersect(a, b).k() == 1;
  cert.transcript.push_back({"every regulus line meets every opposite line in a point", meets});
  bool on = true;
  for (const auto& p : r.points) on = on && r.on_quadric(p);
  cert.transcript.push_back({"quadric vanishes on the regulus points", on});
  if (census) cert.payload["census"] = to_json(line_orbit_census(r, c.jobs));
  write_output(c, emit(cert));
  return kOk;
}

int cmd_classify(const Common& c, int q, int m, const std::string& mode) {
  const Field& f = Field::get(q);
  SearchOptions opts;
  opts.jobs = c.jobs;
  opts.cap = c.cap;
  const auto t0 = std::chrono::steady_clock::now();
  const ClassificationReport rep = classify_all(f, m, parse_search_mode(mode), opts);
  std::cerr << "classify: " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
  Certificate cert;
  cert.command = c.command;
  cert.q = q;
  cert.m = m;
  cert.n = 2 * m;
  cert.payload["report"] = to_json(rep);
  for (const auto& a : rep.assertions) cert.transcript.push_back({a.name, a.holds});
  write_output(c, emit(cert));
  return rep.bounds_hold() ? kOk : kNo;
}

int cmd_selftest(const Common& c, unsigned seed) {
  Certificate cert;
  cert.command = c.command;
  cert.q = 3;
  cert.n = 4;
  cert.m = 2;
  auto check = [&](const std::string& name, bool holds) { cert.transcript.push_back({name, holds}); };
  const Field& f = Field::get(3);
  const Construction ex = construct_4_2(f, 2);
  check("six lines verify at q=3", verify_family(ex.family, ex.witnesses).status == Verdict::Yes);
  check("extremal line set is maximal by trivial stabilizer",
        is_maximal(ex.family).kind == MaximalityCertificate::Kind::TrivialStab);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pick(0, 2);
  Matrix g(4, 4);
  do {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g(i, j) = static_cast<Elem>(pick(rng));
  } while (!is_invertible(f, g));
  const SubspaceFamily moved = ex.family.image(PglElement(f, g));
  check("random conjugate stays MSR", decide_msr(moved).status == Verdict::Yes);
  check("random conjugate is isomorphic", iso_test(ex.family, moved).has_value());
  const Construction d = construct_double(construct_2_1(f, 2), 2);
  check("doubling the three points gives the six lines up to PGL", iso_test(d.family, ex.family).has_value());
  const Regulus r = regulus_of(ex.family[0], ex.family[1], ex.family[2]);
  check("regulus has q+1 lines", r.lines.size() == 4 && r.opposite.size() == 4);
  const bool ok = std::all_of(cert.transcript.begin(), cert.transcript.end(), [](const auto& t) { return t.holds; });
  cert.payload["seed"] = seed;
  cert.payload["passed"] = ok;
  write_output(c, emit(cert));
  return ok ? kOk : kNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact engine for MSR subspace families over finite fields"};
  app.require_subcommand(1);
  Common common;
  for (int i = 1; i < argc; ++i) common.command += (i > 1 ? " " : "") + std::string(argv[i]);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output,-o", common.output, "Write the certificate here instead of stdout");
    sub->add_option("--jobs,-j", common.jobs, "Worker threads (1 = serial reference path, 0 = all)");
    sub->add_option("--cap", common.cap, "Candidate budget for witness and group enumeration");
  };

  std::string file;
  int index = 0, q = 3, m = 2, alpha = 2;
  unsigned seed = 1;
  std::string kind = "ex42", input, triple, mode = "full";
  bool census = false;

  auto* verify = app.add_subcommand("verify", "Verify a family file (search witnesses when absent)");
  verify->add_option("file", file, "Family JSON, '-' for stdin")->required();
  add_common(verify);

  auto* witness = app.add_subcommand("witness", "Search a witness for one member");
  witness->add_option("file", file)->required();
  witness->add_option("--index,-i", index, "Member index")->required();
  add_common(witness);

  auto* construct_cmd = app.add_subcommand("construct", "Emit a construction with its witnesses");
  construct_cmd->add_option("--kind,-k", kind, "ex21 | ex42 | double | extremal");
  construct_cmd->add_option("--q", q, "Field size");
  construct_cmd->add_option("--alpha,-a", alpha, "Field element code other than 0 and 1");
  construct_cmd->add_option("--input", input, "Family certificate to double ('-' for stdin)");
  add_common(construct_cmd);

  auto* stab = app.add_subcommand("stab", "Stabilizer of a family or of selected members");
  stab->add_option("file", file)->required();
  stab->add_option("--triple,--members", triple, "Comma separated member indices");
  add_common(stab);

  auto* regulus = app.add_subcommand("regulus", "Regulus through three disjoint members");
  regulus->add_option("file", file)->required();
  regulus->add_option("--triple", triple, "Three comma separated member indices")->required();
  regulus->add_flag("--census", census, "Also emit line and plane orbit census");
  add_common(regulus);

  auto* classify = app.add_subcommand("classify", "Exhaustive classification");
  classify->add_option("--q", q, "Field size")->required();
  classify->add_option("--m", m, "Half dimension")->required();
  classify->add_option("--mode", mode, "full | anchored | no-disjoint-triple");
  add_common(classify);

  auto* selftest = app.add_subcommand("selftest", "Quick end-to-end sanity checks");
  selftest->add_option("--seed", seed, "Seed for the random conjugation check");
  add_common(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*verify) return cmd_verify(common, file);
    if (*witness) return cmd_witness(common, file, index);
    if (*construct_cmd) return cmd_construct(common, kind, q, alpha, input);
    if (*stab) return cmd_stab(common, file, triple);
    if (*regulus) return cmd_regulus(common, file, triple, census);
    if (*classify) return cmd_classify(common, q, m, mode);
    if (*selftest) return cmd_selftest(common, seed);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::TooLarge ? kTooLarge : kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
