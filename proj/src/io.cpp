#include "msr/io.hpp"

#include <sstream>

#include "msr/error.hpp"

namespace msr {

namespace {

bool inline_array(const Json& j) {
  for (const auto& e : j)
    if (e.is_object()) return false;
  return true;
}

void write(std::ostringstream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out << "{}";
      return;
    }
    out << "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out << ",\n";
      first = false;
      out << pad << Json(it.key()).dump() << ": ";
      write(out, it.value(), indent + 2);
    }
    out << "\n" << std::string(static_cast<std::size_t>(indent), ' ') << "}";
  } else if (j.is_array() && !inline_array(j)) {
    out << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out << ",\n";
      out << pad;
      write(out, j[i], indent + 2);
    }
    out << "\n" << std::string(static_cast<std::size_t>(indent), ' ') << "]";
  } else {
    out << j.dump();
  }
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::ParseError, "at " + (path.empty() ? std::string("/") : path) + ": " + what);
}

const Json& need(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

int need_int(const Json& j, const char* key, const std::string& path) {
  const Json& v = need(j, key, path);
  if (!v.is_number_integer()) fail(path + "/" + key, "expected an integer");
  return v.get<int>();
}

Json counts(const std::map<int, std::size_t>& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[std::to_string(k)] = v;
  return j;
}

}  // namespace

std::string dump_json(const Json& j) {
  std::ostringstream out;
  write(out, j, 0);
  out << "\n";
  return out.str();
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Translate the byte offset into line:column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::ParseError,
                "at line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
}

Json to_json(const Matrix& m) { return Json(m.to_codes()); }

Json to_json(const Subspace& s) {
  Json j = Json::object();
  j["n"] = s.n();
  j["k"] = s.k();
  j["basis"] = to_json(s.basis());
  return j;
}

Json to_json(const PglElement& g) {
  Json j = Json::object();
  j["n"] = g.n();
  j["matrix"] = to_json(g.matrix());
  return j;
}

Json to_json(const WitnessSet& w) {
  Json j = Json::array();
  for (const auto& g : w) j.push_back(g ? to_json(*g) : Json(nullptr));
  return j;
}

Json to_json(const SubspaceFamily& family, const WitnessSet* witnesses) {
  Json j = Json::object();
  j["q"] = family.field().q();
  j["m"] = family.m();
  Json subs = Json::array();
  for (const auto& s : family.members()) subs.push_back(to_json(s));
  j["subspaces"] = subs;
  j["witnesses"] = witnesses ? to_json(*witnesses) : Json(nullptr);
  return j;
}

Json to_json(const MsrVerdict& v) {
  Json j = Json::object();
  j["verdict"] = to_string(v.status);
  j["failure_index"] = v.failure_index < 0 ? Json(nullptr) : Json(v.failure_index);
  j["reason"] = v.reason;
  j["budget_note"] = v.budget_note;
  return j;
}

Json to_json(const MaximalityCertificate& c) {
  Json j = Json::object();
  j["kind"] = to_string(c.kind);
  j["space"] = c.space ? to_json(*c.space) : Json(nullptr);
  return j;
}

Json to_json(const std::vector<CheckRecord>& transcript) {
  Json j = Json::array();
  for (const auto& r : transcript) {
    Json e = Json::object();
    e["check"] = r.check;
    e["holds"] = r.holds;
    j.push_back(e);
  }
  return j;
}

Json to_json(const ClassificationReport& r) {
  Json j = Json::object();
  j["q"] = r.q;
  j["m"] = r.m;
  j["mode"] = to_string(r.mode);
  j["max_size"] = r.max_size;
  j["msr_counts"] = counts(r.msr_counts);
  j["maximal_counts"] = counts(r.maximal_counts);
  Json classes = Json::array();
  for (const auto& c : r.extremal_classes) {
    Json e = Json::object();
    Json subs = Json::array();
    for (const auto& s : c.representative.members()) subs.push_back(to_json(s));
    e["representative"] = subs;
    e["witnesses"] = to_json(c.witnesses);
    e["maximality"] = to_json(c.certificate);
    e["found"] = c.found;
    classes.push_back(e);
  }
  j["extremal_classes"] = classes;
  Json asserts = Json::array();
  for (const auto& a : r.assertions) {
    Json e = Json::object();
    e["name"] = a.name;
    e["holds"] = a.holds;
    e["detail"] = a.detail;
    asserts.push_back(e);
  }
  j["assertions"] = asserts;
  Json facts = Json::object();
  for (const auto& [k, v] : r.facts) facts[k] = v;
  j["facts"] = facts;
  j["bounds_hold"] = r.bounds_hold();
  Json stats = Json::object();
  stats["nodes"] = r.stats.nodes;
  stats["prunes"] = r.stats.prunes;
  j["stats"] = stats;
  return j;
}

Json to_json(const NoDisjointTripleCensus& c) {
  Json j = Json::object();
  j["q"] = c.q;
  j["max_size"] = c.max_size;
  j["counts"] = counts(c.counts);
  j["quadrangle_found"] = c.quadrangle_found;
  Json ex = Json::array();
  for (const auto& f : c.size4_examples) ex.push_back(to_json(f, nullptr));
  j["size4_examples"] = ex;
  return j;
}

Json to_json(const Regulus& r) {
  Json j = Json::object();
  auto list = [](const std::vector<Subspace>& v) {
    Json a = Json::array();
    for (const auto& s : v) a.push_back(to_json(s));
    return a;
  };
  j["lines"] = list(r.lines);
  j["opposite"] = list(r.opposite);
  j["point_count"] = r.points.size();
  j["quadric"] = Json(std::vector<int>(r.quadric.coeffs.begin(), r.quadric.coeffs.end()));
  return j;
}

Json to_json(const CensusReport& c) {
  Json j = Json::object();
  j["q"] = c.q;
  j["group_order"] = c.group_order;
  Json lt = Json::object();
  for (const auto& [k, v] : c.line_type_counts) lt[k] = v;
  j["line_type_counts"] = lt;
  Json pt = Json::object();
  for (const auto& [k, v] : c.plane_type_counts) pt[k] = v;
  j["plane_type_counts"] = pt;
  auto orbits = [](const std::vector<OrbitInfo>& v) {
    Json a = Json::array();
    for (const auto& o : v) {
      Json e = Json::object();
      e["type"] = o.type;
      e["size"] = o.size;
      e["representative"] = to_json(o.representative);
      a.push_back(e);
    }
    return a;
  };
  j["line_orbits"] = orbits(c.line_orbits);
  j["plane_orbits"] = orbits(c.plane_orbits);
  j["orbits_match_types"] = c.orbits_match_types;
  Json through = Json::object();
  for (const auto& [k, v] : c.planes_through_lines) {
    Json e = Json::object();
    e["Conic"] = v.first;
    e["Degenerate"] = v.second;
    through[k] = e;
  }
  j["planes_through_lines"] = through;
  j["passant_planes_all_conic"] = c.passant_planes_all_conic;
  j["ruling_planes_all_degenerate"] = c.ruling_planes_all_degenerate;
  return j;
}

Matrix matrix_from_json(const Field& f, const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of rows");
  std::vector<std::vector<int>> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rp = path + "/" + std::to_string(r);
    if (!j[r].is_array()) fail(rp, "expected a row array");
    std::vector<int> row;
    for (std::size_t c = 0; c < j[r].size(); ++c) {
      const Json& e = j[r][c];
      if (!e.is_number_integer()) fail(rp + "/" + std::to_string(c), "expected an integer field element");
      const int v = e.get<int>();
      if (!f.valid(v)) fail(rp + "/" + std::to_string(c), "element " + std::to_string(v) + " not in GF(" + std::to_string(f.q()) + ")");
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) fail(rp, "ragged row");
    rows.push_back(std::move(row));
  }
  return Matrix::from_codes(f, rows);
}

Subspace subspace_from_json(const Field& f, int n, const Json& j, const std::string& path) {
  const Json& b = j.is_object() ? need(j, "basis", path) : j;
  const std::string bp = j.is_object() ? path + "/basis" : path;
  if (j.is_object() && j.contains("n") && need_int(j, "n", path) != n)
    fail(path + "/n", "ambient dimension must be " + std::to_string(n));
  const Matrix m = matrix_from_json(f, b, bp);
  if (m.rows() > 0 && m.cols() != n) fail(bp, "rows must have length " + std::to_string(n));
  const Subspace s = Subspace::from_generators(f, n, m);
  if (s.k() != m.rows()) fail(bp, "basis rows are linearly dependent");
  if (j.is_object() && j.contains("k") && need_int(j, "k", path) != s.k())
    fail(path + "/k", "declared dimension does not match the basis");
  return s;
}

PglElement pgl_from_json(const Field& f, int n, const Json& j, const std::string& path) {
  const Json& mj = j.is_object() ? need(j, "matrix", path) : j;
  const std::string mp = j.is_object() ? path + "/matrix" : path;
  const Matrix m = matrix_from_json(f, mj, mp);
  if (m.rows() != n || m.cols() != n) fail(mp, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  if (!is_invertible(f, m)) fail(mp, "singular matrix");
  return PglElement(f, m);
}

FamilyDocument parse_family(const std::string& text) {
  Json doc = parse_json(text);
  std::string base;
  if (doc.is_object() && doc.contains("payload") && doc["payload"].is_object()) {
    const Json& p = doc["payload"];
    if (p.contains("family")) {
      doc = p["family"];
      base = "/payload/family";
    } else if (p.contains("subspaces")) {
      doc = p;
      base = "/payload";
    }
  }
  const int q = need_int(doc, "q", base);
  const int m = need_int(doc, "m", base);
  FamilyDocument out;
  try {
    out.field = &Field::get(q);
  } catch (const Error& e) {
    fail(base + "/q", e.what());
  }
  if (m < 1 || 2 * m > kMaxDimension) fail(base + "/m", "m must lie in [1, " + std::to_string(kMaxDimension / 2) + "]");
  const Json& subs = need(doc, "subspaces", base);
  if (!subs.is_array()) fail(base + "/subspaces", "expected an array");
  std::vector<Subspace> members;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const std::string p = base + "/subspaces/" + std::to_string(i);
    Subspace s = subspace_from_json(*out.field, 2 * m, subs[i], p);
    if (s.k() != m) fail(p, "member must have dimension " + std::to_string(m));
    for (std::size_t t = 0; t < members.size(); ++t)
      if (members[t] == s) fail(p, "duplicate of member " + std::to_string(t));
    members.push_back(std::move(s));
  }
  out.family = SubspaceFamily(*out.field, m, std::move(members));
  auto wit = doc.find("witnesses");
  if (wit != doc.end() && !wit->is_null()) {
    if (!wit->is_array()) fail(base + "/witnesses", "expected an array or null");
    if (wit->size() != subs.size()) fail(base + "/witnesses", "one witness per subspace required");
    WitnessSet w;
    for (std::size_t i = 0; i < wit->size(); ++i) {
      const Json& g = (*wit)[i];
      if (g.is_null()) {
        w.emplace_back();
        continue;
      }
      w.push_back(pgl_from_json(*out.field, 2 * m, g, base + "/witnesses/" + std::to_string(i)));
    }
    out.witnesses = std::move(w);
  }
  return out;
}

Json to_json(const Certificate& c) {
  Json j = Json::object();
  j["tool"] = c.tool;
  j["version"] = c.version;
  j["command"] = c.command;
  j["q"] = c.q;
  j["n"] = c.n;
  j["m"] = c.m;
  j["payload"] = c.payload;
  j["transcript"] = to_json(c.transcript);
  return j;
}

std::string emit(const Certificate& c) { return dump_json(to_json(c)); }

Certificate parse_certificate(const std::string& text) {
  const Json j = parse_json(text);
  Certificate c;
  auto str = [&](const char* key) {
    const Json& v = need(j, key, "");
    if (!v.is_string()) fail(std::string("/") + key, "expected a string");
    return v.get<std::string>();
  };
  c.tool = str("tool");
  c.version = str("version");
  c.command = str("command");
  c.q = need_int(j, "q", "");
  c.n = need_int(j, "n", "");
  c.m = need_int(j, "m", "");
  c.payload = need(j, "payload", "");
  const Json& t = need(j, "transcript", "");
  if (!t.is_array()) fail("/transcript", "expected an array");
  for (std::size_t i = 0; i < t.size(); ++i) {
    const std::string p = "/transcript/" + std::to_string(i);
    const Json& check = need(t[i], "check", p);
    const Json& holds = need(t[i], "holds", p);
    if (!check.is_string() || !holds.is_boolean()) fail(p, "expected {\"check\": string, \"holds\": bool}");
    c.transcript.push_back({check.get<std::string>(), holds.get<bool>()});
  }
  return c;
}

}  // namespace msr
