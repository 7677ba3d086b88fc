// Multi-valued state variables from invariant instantiations: greedy cover
// of the modifiable ground atoms, one binary variable per leftover atom, and
// the encoding statistics.
#pragma once

#include <string>
#include <vector>

#include "tempinv/ground.hpp"

namespace tempinv {

enum class EncodingMode { BIS, SIS, TIS };

struct StateVariable {
  int id = 0;
  std::vector<GroundAtom> values;  // plus an implicit null value
  bool binary = false;
  std::string source;  // template key + instance, or "binary"
};

struct EncodingStats {
  int variable_count = 0;
  // exact mean of domain sizes (null value included)
  long long mean_num = 0;
  long long mean_den = 1;
};

struct Encoding {
  std::vector<StateVariable> variables;
  EncodingStats stats;
};

// In BIS mode the invariant list is ignored. Instances whose Init weight is
// at least two violate the standing assumption and are skipped with a
// warning on stderr.
Encoding build_state_variables(const std::vector<Template>& invariants,
                               const GroundContext& ctx, EncodingMode mode);

std::string emit_text(const Encoding& enc);
std::string emit_json(const Encoding& enc);

}  // namespace tempinv
