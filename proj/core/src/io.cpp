#include "netgame/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "netgame/errors.hpp"

namespace netgame {

namespace {

// insertion-ordered so every document has one canonical byte layout
using ojson = nlohmann::ordered_json;

std::string dump(const ojson& doc) { return doc.dump(2) + "\n"; }

const ojson& member(const ojson& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw ParseError(where + ": missing field \"" + key + "\"");
  return *it;
}

void reject_unknown(const ojson& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed)
      if (it.key() == key) known = true;
    if (!known)
      throw ParseError(where + ": unknown field \"" + it.key() + "\"");
  }
}

long integer_at(const ojson& value, const std::string& where) {
  if (!value.is_number_integer())
    throw ParseError(where + ": expected an integer");
  return value.get<long>();
}

// rationals travel as strings ("3/4", "2"); anything else is a schema error
Rational rational_at(const ojson& value, const std::string& where) {
  if (!value.is_string())
    throw ParseError(where + ": expected a rational as a string like \"3/4\"");
  try {
    return Rational::parse(value.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

AgentId agent_at(const ojson& value, int n, const std::string& where) {
  long id = integer_at(value, where);
  if (id < 0 || id >= n)
    throw ParseError(where + ": agent id " + std::to_string(id) +
                     " outside [0, " + std::to_string(n) + ")");
  return static_cast<AgentId>(id);
}

ojson utility_json(const InfinitesimalUtility& u) {
  ojson doc;
  doc["main"] = u.main.str();
  doc["b_coeff"] = u.b_coeff.str();
  return doc;
}

ojson pairs_json(const std::vector<std::pair<AgentId, AgentId>>& pairs) {
  ojson arr = ojson::array();
  for (const auto& [u, v] : pairs) arr.push_back(ojson::array({u, v}));
  return arr;
}

ojson bound_json(const BoundCheck& check) {
  ojson doc;
  doc["holds"] = check.holds;
  doc["vacuous"] = check.vacuous;
  doc["lhs"] = check.lhs.str();
  doc["rhs"] = check.rhs.str();
  doc["note"] = check.note;
  return doc;
}

ojson string_pairs_json(const std::vector<std::pair<std::string, std::string>>& kv) {
  ojson doc = ojson::object();
  for (const auto& [key, value] : kv) doc[key] = value;
  return doc;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw ParseError("failed while reading " + path);
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw DomainError("failed while writing " + path);
}

EventConfiguration parse_config_text(const std::string& text,
                                     const std::string& origin) {
  ojson doc;
  try {
    doc = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  if (!doc.is_object())
    throw ParseError(origin + ": top level must be an object");
  reject_unknown(doc, {"params", "events"}, origin);

  const ojson& jparams = member(doc, "params", origin);
  const std::string pwhere = origin + ".params";
  if (!jparams.is_object()) throw ParseError(pwhere + ": must be an object");
  reject_unknown(jparams, {"a", "b", "c", "n"}, pwhere);

  EventConfiguration config;
  config.params.a = rational_at(member(jparams, "a", pwhere), pwhere + ".a");
  const ojson& jb = member(jparams, "b", pwhere);
  if (!jb.is_string())
    throw ParseError(pwhere + ".b: expected \"eps\" or a rational string");
  const std::string btext = jb.get<std::string>();
  if (btext == "eps") {
    config.params.b = BCost::eps();
  } else {
    config.params.b = BCost::concrete(rational_at(jb, pwhere + ".b"));
  }
  config.params.c = rational_at(member(jparams, "c", pwhere), pwhere + ".c");
  long n = integer_at(member(jparams, "n", pwhere), pwhere + ".n");
  if (n < 0 || n > 1'000'000'000)
    throw ParseError(pwhere + ".n: community size out of range");
  config.params.n = static_cast<int>(n);
  config.strategies.resize(static_cast<size_t>(n));

  const ojson& jevents = member(doc, "events", origin);
  if (!jevents.is_array())
    throw ParseError(origin + ".events: must be an array");
  for (size_t i = 0; i < jevents.size(); ++i) {
    const std::string where = origin + ".events[" + std::to_string(i) + "]";
    const ojson& jev = jevents[i];
    if (!jev.is_object()) throw ParseError(where + ": must be an object");
    reject_unknown(jev, {"host", "invitees", "rate"}, where);

    Event event;
    event.host = agent_at(member(jev, "host", where), config.params.n,
                          where + ".host");
    const ojson& jinv = member(jev, "invitees", where);
    if (!jinv.is_array())
      throw ParseError(where + ".invitees: must be an array");
    for (size_t k = 0; k < jinv.size(); ++k) {
      event.invitees.push_back(agent_at(
          jinv[k], config.params.n,
          where + ".invitees[" + std::to_string(k) + "]"));
    }
    std::sort(event.invitees.begin(), event.invitees.end());
    event.rate = rational_at(member(jev, "rate", where), where + ".rate");
    if (event.rate.sign() < 0)
      throw ParseError(where + ".rate: negative rate " + event.rate.str());
    config.strategies[event.host].push_back(std::move(event));
  }

  validate_configuration(config);
  return config;
}

EventConfiguration read_config(const std::string& path) {
  return parse_config_text(read_file(path), path);
}

std::string serialize_config(const EventConfiguration& config) {
  ojson params;
  params["a"] = config.params.a.str();
  params["b"] = config.params.b.is_eps ? std::string("eps")
                                       : config.params.b.value.str();
  params["c"] = config.params.c.str();
  params["n"] = config.params.n;

  ojson events = ojson::array();
  for (const Strategy& strategy : config.strategies) {
    for (const Event& event : strategy) {
      ojson jev;
      jev["host"] = event.host;
      jev["invitees"] = event.invitees;
      jev["rate"] = event.rate.str();
      events.push_back(std::move(jev));
    }
  }

  ojson doc;
  doc["params"] = std::move(params);
  doc["events"] = std::move(events);
  return dump(doc);
}

std::vector<int> parse_degrees(const std::string& text,
                               const std::string& origin) {
  std::vector<int> degrees;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    size_t last = line.find_last_not_of(" \t\r");
    const char* begin = line.data() + first;
    const char* end = line.data() + last + 1;
    int value = 0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
      throw ParseError(origin + ":" + std::to_string(lineno) +
                       ": expected one integer per line, got \"" +
                       line.substr(first, last - first + 1) + "\"");
    degrees.push_back(value);
  }
  if (degrees.empty()) throw ParseError(origin + ": no degrees found");
  return degrees;
}

std::vector<int> read_degrees(const std::string& path) {
  return parse_degrees(read_file(path), path);
}

GraphFormat parse_graph_format(const std::string& name) {
  if (name == "edgelist") return GraphFormat::edgelist;
  if (name == "dot") return GraphFormat::dot;
  throw ParseError("unknown graph format \"" + name +
                   "\" (expected edgelist or dot)");
}

std::string export_graph(const ConnectionGraph& g, GraphFormat format) {
  std::ostringstream out;
  if (format == GraphFormat::edgelist) {
    for (const auto& [u, v] : g.edges) out << u << ' ' << v << '\n';
    return out.str();
  }
  out << "graph connections {\n";
  for (AgentId v = 0; v < g.n; ++v)
    if (g.adj[static_cast<size_t>(v)].empty()) out << "  " << v << ";\n";
  for (const auto& [u, v] : g.edges) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
  return out.str();
}

std::string to_json(const StabilityReport& report) {
  ojson violations = ojson::array();
  for (const Violation& v : report.violations) {
    ojson jv;
    jv["agent"] = v.agent;
    jv["condition"] = v.condition;
    jv["witness"] = ojson::array({v.witness.first, v.witness.second});
    jv["detail"] = v.detail;
    violations.push_back(std::move(jv));
  }
  ojson doc;
  doc["stable"] = report.stable;
  doc["violations"] = std::move(violations);
  return dump(doc);
}

std::string to_json(const GraphStats& stats) {
  ojson doc;
  doc["n"] = stats.n;
  doc["edge_count"] = stats.edge_count;
  doc["degree_sequence"] = stats.degree_sequence;
  doc["average_degree"] = stats.average_degree.str();
  doc["average_degree_over_w"] = stats.average_degree_over_w.str();
  doc["clustering"] = stats.clustering.str();
  doc["triangle_counts"] = stats.triangle_counts;
  doc["local_bridges"] = pairs_json(stats.local_bridges);
  if (stats.girth)
    doc["girth"] = *stats.girth;
  else
    doc["girth"] = nullptr;
  doc["connected"] = stats.connected;
  return dump(doc);
}

std::string to_json(const BoundCheck& check) { return dump(bound_json(check)); }

std::string to_json(const ClusteringBoundResult& result) {
  ojson doc;
  doc["base"] = bound_json(result.base);
  doc["min_degree_two"] = bound_json(result.min_degree_two);
  return dump(doc);
}

std::string to_json(const RealizationReport& report) {
  ojson log = ojson::array();
  for (const StepLogEntry& entry : report.step_log) {
    ojson je;
    je["phase"] = entry.phase;
    je["vertex"] = entry.vertex;
    je["from"] = entry.from_degree;
    je["to"] = entry.to_degree;
    je["note"] = entry.note;
    log.push_back(std::move(je));
  }
  ojson doc;
  doc["achieved"] = report.achieved;
  doc["l1_shift"] = report.l1_shift;
  doc["K"] = report.K_used;
  doc["step_log"] = std::move(log);
  return dump(doc);
}

std::string trace_jsonl(const Trace& trace) {
  std::ostringstream out;
  for (const StepRecord& step : trace.steps) {
    ojson rec;
    rec["round"] = step.round;
    rec["agent"] = step.agent;
    rec["old_utility"] = utility_json(step.old_utility);
    rec["new_utility"] = utility_json(step.new_utility);
    rec["edges_added"] = pairs_json(step.edges_added);
    rec["edges_removed"] = pairs_json(step.edges_removed);
    out << rec.dump() << '\n';
  }
  ojson fin;
  fin["status"] = trace.status == DynamicsStatus::converged ? "converged"
                                                            : "round-limit";
  fin["rounds"] = trace.rounds;
  fin["steps"] = trace.steps.size();
  ojson arrivals = ojson::array();
  for (const auto& [round, agent] : trace.arrivals_joined)
    arrivals.push_back(ojson::array({round, agent}));
  fin["arrivals"] = std::move(arrivals);
  out << fin.dump() << '\n';
  return out.str();
}

std::string error_line(const std::string& kind, const std::string& message) {
  ojson doc;
  doc["error"] = kind;
  doc["message"] = message;
  return doc.dump();
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string to_json(const RunManifest& manifest) {
  ojson doc;
  doc["command"] = manifest.command_line;
  doc["parameters"] = string_pairs_json(manifest.parameters);
  doc["inputs"] = string_pairs_json(manifest.inputs);
  doc["outputs"] = string_pairs_json(manifest.outputs);
  doc["wall_seconds"] = manifest.wall_seconds;
  return dump(doc);
}

}  // namespace netgame
