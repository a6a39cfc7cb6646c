#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netgame/model.hpp"

namespace netgame {

using DegreeSequence = std::vector<int>;

struct SequenceCheck {
  int K = 0;
  std::vector<std::string> diagnostics;
};

// Gate for the realization pipeline. Finds the smallest K such that the
// vertices of degree 2..K can absorb the total degree above K, then checks
// the two supply conditions: degree-2 vertices need slack (d-3 each) on
// vertices of degree >= 6, and degree-1 vertices need one host among three
// vertices of degree >= 4. Throws DomainError naming the failing condition.
SequenceCheck validate_sequence(const DegreeSequence& degrees, const Rational& gamma);

// counts floor(c * n * k^(-alpha)) per degree k, c = 74544/100000, computed
// exactly; the unassigned remainder becomes degree 3, and the degree-1 /
// degree-2 counts are capped so the result passes validate_sequence (excess
// moved to degree 3 as well). Vertices come out sorted by degree descending.
DegreeSequence powerlaw_sequence(const Rational& alpha, int n);

struct StepLogEntry {
  std::string phase;
  AgentId vertex = -1;  // -1 marks an informational entry
  int from_degree = 0;
  int to_degree = 0;
  std::string note;
};

struct RealizationReport {
  EventConfiguration config;
  DegreeSequence achieved;
  long l1_shift = 0;  // sum |achieved - input|
  int K_used = 0;
  std::vector<StepLogEntry> step_log;
};

// Builds a connected stable configuration whose degree sequence matches the
// input except where the step log records a shift; the achieved histogram
// differs from the input only at logged vertices, and the total shift is
// bounded by the sum of logged per-entry shifts. Nobody invites more than
// K+3 agents. Requires 1/2 < gamma < 2/3 and the vanishing fee (b = eps).
// Deterministic: identical (degrees, params, seed) give identical output.
RealizationReport realize_degrees(const DegreeSequence& degrees, const Parameters& params,
                                  std::uint64_t seed);

}  // namespace netgame
