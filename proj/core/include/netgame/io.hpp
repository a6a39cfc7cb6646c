#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "netgame/degree_sequence.hpp"
#include "netgame/dynamics.hpp"
#include "netgame/metrics.hpp"
#include "netgame/model.hpp"
#include "netgame/stability.hpp"

namespace netgame {

// whole-file helpers; read failures are ParseError (bad input), write
// failures DomainError (bad destination)
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// configuration documents:
//   {"params": {"a": "p/q", "b": "p/q" | "eps", "c": "p/q", "n": int},
//    "events": [{"host": int, "invitees": [int...], "rate": "p/q"}, ...]}
// Rationals travel as strings so nothing decays to a decimal. Unknown
// fields, malformed rationals, out-of-range ids and negative rates are
// ParseError naming the offending location; the remaining invariants run
// through validate_configuration afterwards.
EventConfiguration parse_config_text(const std::string& text,
                                     const std::string& origin = "<config>");
EventConfiguration read_config(const std::string& path);

// canonical form: events flattened in host order (file order kept within a
// host), two-space indent, trailing newline. Parsing the output reproduces
// the configuration byte-for-byte on the next serialize.
std::string serialize_config(const EventConfiguration& config);

// degree files: one integer per line, blank lines ignored
std::vector<int> parse_degrees(const std::string& text,
                               const std::string& origin = "<degrees>");
std::vector<int> read_degrees(const std::string& path);

enum class GraphFormat { edgelist, dot };
GraphFormat parse_graph_format(const std::string& name);

// edgelist: one "u v" line per edge, u < v, sorted; dot: an undirected
// graph with isolated vertices listed first. Both are stable orderings,
// and the empty graph comes out as an empty body.
std::string export_graph(const ConnectionGraph& g, GraphFormat format);

// report renderers (two-space indent, trailing newline)
std::string to_json(const StabilityReport& report);
std::string to_json(const GraphStats& stats);
std::string to_json(const BoundCheck& check);
std::string to_json(const ClusteringBoundResult& result);
std::string to_json(const RealizationReport& report);  // everything but the config

// one JSON object per line: each strategy replacement in order, then a
// closing record with the terminal status, round count and arrivals
std::string trace_jsonl(const Trace& trace);

// machine-readable stderr diagnostic, one line, no trailing newline
std::string error_line(const std::string& kind, const std::string& message);

// FNV-1a over the raw bytes; the manifest stores hashes as 16 hex digits
std::uint64_t fnv1a64(const std::string& bytes);
std::string hash_hex(std::uint64_t h);

// reproducibility record for a CLI run: everything except wall_seconds is
// a pure function of the inputs, so two runs of the same command must agree
// on every hash
struct RunManifest {
  std::string command_line;
  std::vector<std::pair<std::string, std::string>> parameters;  // name, value
  std::vector<std::pair<std::string, std::string>> inputs;      // path, hash
  std::vector<std::pair<std::string, std::string>> outputs;     // path, hash
  double wall_seconds = 0.0;
};
std::string to_json(const RunManifest& manifest);

}  // namespace netgame
