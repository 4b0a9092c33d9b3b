#pragma once

#include <optional>
#include <string>

#include "msr/family.hpp"

namespace msr {

struct Construction {
  SubspaceFamily family;
  WitnessSet witnesses;
};

enum class ConstructionKind { Ex21, Ex42, Double, ExtremalLineset };
const char* to_string(ConstructionKind k);
ConstructionKind parse_construction_kind(const std::string& s);

struct ConstructionRequest {
  ConstructionKind kind = ConstructionKind::Ex42;
  int q = 3;
  Elem alpha = 2;
  std::optional<Construction> input;  // required for Double
};

/// Throws InvalidAlpha unless alpha is a field element other than 0 and 1.
void check_alpha(const Field& f, int alpha);

/// <e1>, <e2>, <e1+e2> in GF(q)^2 with their three witnesses.
Construction construct_2_1(const Field& f, Elem alpha);
/// The six lines of GF(q)^4 with their six witnesses.
Construction construct_4_2(const Field& f, Elem alpha);
/// From k members in GF(q)^{2m}, k+3 members in GF(q)^{4m}. Validates the input first.
Construction construct_double(const Construction& input, Elem alpha);
/// Doubling of the empty family in GF(q)^{2m}: the three block members only.
Construction construct_double_empty(const Field& f, int m, Elem alpha);
/// The six extremal lines, no witnesses attached.
SubspaceFamily extremal_lineset(const Field& f);

/// The block swap [[0, I], [I, 0]] of size 2*half.
Matrix block_swap(int half);

Construction construct(const ConstructionRequest& req);

}  // namespace msr
