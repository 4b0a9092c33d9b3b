#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "msr/family.hpp"
#include "msr/search.hpp"
#include "msr/segre.hpp"

namespace msr {

using Json = nlohmann::ordered_json;

/// Deterministic layout: objects one key per line, arrays without objects on one line.
std::string dump_json(const Json& j);
/// Parses text; syntax errors throw ParseError carrying line and column.
Json parse_json(const std::string& text);

Json to_json(const Matrix& m);
Json to_json(const Subspace& s);
Json to_json(const PglElement& g);
Json to_json(const WitnessSet& w);
Json to_json(const SubspaceFamily& family, const WitnessSet* witnesses);
Json to_json(const MsrVerdict& v);
Json to_json(const MaximalityCertificate& c);
Json to_json(const std::vector<CheckRecord>& transcript);
Json to_json(const ClassificationReport& r);
Json to_json(const NoDisjointTripleCensus& c);
Json to_json(const Regulus& r);
Json to_json(const CensusReport& c);

/// Semantic readers; errors name the JSON pointer of the offending value.
Matrix matrix_from_json(const Field& f, const Json& j, const std::string& path);
Subspace subspace_from_json(const Field& f, int n, const Json& j, const std::string& path);
PglElement pgl_from_json(const Field& f, int n, const Json& j, const std::string& path);

struct FamilyDocument {
  const Field* field = nullptr;
  SubspaceFamily family;
  std::optional<WitnessSet> witnesses;
};

/// {"q": .., "m": .., "subspaces": [...], "witnesses": [...] | null}. A certificate whose
/// payload holds a family is accepted too.
FamilyDocument parse_family(const std::string& text);

struct Certificate {
  std::string tool = "msrtool";
  std::string version = MSR_VERSION;
  std::string command;
  int q = 0;
  int n = 0;
  int m = 0;
  Json payload = Json::object();
  std::vector<CheckRecord> transcript;
};

Json to_json(const Certificate& c);
std::string emit(const Certificate& c);
Certificate parse_certificate(const std::string& text);

}  // namespace msr
