#include <cstdio>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "netgame/constructions.hpp"
#include "netgame/dynamics.hpp"
#include "netgame/errors.hpp"
#include "netgame/io.hpp"
#include "netgame/metrics.hpp"
#include "netgame/stability.hpp"
#include "support.hpp"

using namespace netgame;
using nlohmann::json;

namespace {

const char* kMinimal = R"({
  "params": {"a": "3", "b": "eps", "c": "5", "n": 3},
  "events": [
    {"host": 0, "invitees": [1, 2], "rate": "1/2"},
    {"host": 2, "invitees": [0], "rate": "2/3"}
  ]
})";

bool throws_parse_mentioning(const std::string& text, const std::string& needle) {
  try {
    parse_config_text(text, "probe.json");
    return false;
  } catch (const ParseError& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("configurations survive a parse/serialize round trip byte for byte") {
  const EventConfiguration cfg = parse_config_text(kMinimal);
  CHECK(cfg.params.n == 3);
  CHECK(cfg.params.a == Rational(3));
  CHECK(cfg.params.b.is_eps);
  CHECK(cfg.strategies[0].size() == 1);
  CHECK(cfg.strategies[0][0].invitees == std::vector<AgentId>{1, 2});
  CHECK(cfg.strategies[1].empty());

  const std::string once = serialize_config(cfg);
  const EventConfiguration again = parse_config_text(once);
  CHECK(serialize_config(again) == once);
}

TEST_CASE("builder output round-trips as well, concrete fees included") {
  EventConfiguration cfg = build_h32(oracle::params_gamma(3, 5, BCost::eps()));
  cfg.params.b = BCost::concrete(Rational(1, 7));
  const std::string text = serialize_config(cfg);
  const EventConfiguration back = parse_config_text(text);
  CHECK_FALSE(back.params.b.is_eps);
  CHECK(back.params.b.value == Rational(1, 7));
  CHECK(serialize_config(back) == text);
}

TEST_CASE("serialization emits one canonical byte layout") {
  // events flattened in host order, two-space indent, trailing newline
  const EventConfiguration cfg = parse_config_text(kMinimal);
  const std::string expected = R"({
  "params": {
    "a": "3",
    "b": "eps",
    "c": "5",
    "n": 3
  },
  "events": [
    {
      "host": 0,
      "invitees": [
        1,
        2
      ],
      "rate": "1/2"
    },
    {
      "host": 2,
      "invitees": [
        0
      ],
      "rate": "2/3"
    }
  ]
}
)";
  CHECK(serialize_config(cfg) == expected);
}

TEST_CASE("events listed out of host order are flattened ascending") {
  const std::string shuffled = R"({
    "params": {"a": "1", "b": "eps", "c": "2", "n": 3},
    "events": [
      {"host": 2, "invitees": [0], "rate": "1/2"},
      {"host": 0, "invitees": [1], "rate": "1/3"},
      {"host": 0, "invitees": [1, 2], "rate": "1/4"}
    ]
  })";
  const EventConfiguration cfg = parse_config_text(shuffled);
  // within a host the file order is preserved
  CHECK(cfg.strategies[0][0].rate == Rational(1, 3));
  CHECK(cfg.strategies[0][1].rate == Rational(1, 4));
  const std::string text = serialize_config(cfg);
  const std::size_t host0 = text.find("\"host\": 0");
  const std::size_t host2 = text.find("\"host\": 2");
  CHECK(host0 != std::string::npos);
  CHECK(host2 != std::string::npos);
  CHECK(host0 < host2);
}

TEST_CASE("parse errors carry the origin and the offending location") {
  CHECK(throws_parse_mentioning("not json at all", "probe.json"));
  CHECK(throws_parse_mentioning("[1,2]", "probe.json"));
  // missing field
  CHECK(throws_parse_mentioning(R"({"params": {"a": "1", "b": "eps", "c": "2"}, "events": []})",
                                "n"));
  // unknown field
  CHECK(throws_parse_mentioning(
      R"({"params": {"a": "1", "b": "eps", "c": "2", "n": 2, "x": 1}, "events": []})", "x"));
  CHECK(throws_parse_mentioning(
      R"({"params": {"a": "1", "b": "eps", "c": "2", "n": 2}, "events": [], "zz": 0})", "zz"));
  // rationals must be strings
  CHECK(throws_parse_mentioning(
      R"({"params": {"a": 1, "b": "eps", "c": "2", "n": 2}, "events": []})", "a"));
  CHECK(throws_parse_mentioning(
      R"({"params": {"a": "1", "b": "eps", "c": "2", "n": 2},
          "events": [{"host": 0, "invitees": [1], "rate": 0.5}]})",
      "rate"));
  // malformed rational text
  CHECK(throws_parse_mentioning(
      R"({"params": {"a": "1/0", "b": "eps", "c": "2", "n": 2}, "events": []})", "a"));
  // agents out of range
  CHECK(throws_parse_mentioning(
      R"({"params": {"a": "1", "b": "eps", "c": "2", "n": 2},
          "events": [{"host": 2, "invitees": [0], "rate": "1/2"}]})",
      "host"));
  CHECK(throws_parse_mentioning(
      R"({"params": {"a": "1", "b": "eps", "c": "2", "n": 2},
          "events": [{"host": 0, "invitees": [5], "rate": "1/2"}]})",
      "invitee"));
}

TEST_CASE("negative rates are parse errors, deeper contradictions are domain errors") {
  CHECK(throws_parse_mentioning(
      R"({"params": {"a": "1", "b": "eps", "c": "2", "n": 2},
          "events": [{"host": 0, "invitees": [1], "rate": "-1/2"}]})",
      "rate"));
  // a host among its own invitees passes the schema but fails validation
  CHECK_THROWS_AS(parse_config_text(
                      R"({"params": {"a": "1", "b": "eps", "c": "2", "n": 2},
                          "events": [{"host": 0, "invitees": [0], "rate": "1/2"}]})"),
                  DomainError);
}

TEST_CASE("degree files are one integer per line with blanks ignored") {
  CHECK(parse_degrees("3\n4\n\n  5\n") == std::vector<int>{3, 4, 5});
  CHECK(parse_degrees("7") == std::vector<int>{7});
  CHECK_THROWS_AS(parse_degrees(""), ParseError);
  CHECK_THROWS_AS(parse_degrees("3\nx\n"), ParseError);
  CHECK_THROWS_AS(parse_degrees("3 4\n"), ParseError);
  try {
    parse_degrees("3\nbad\n", "degrees.txt");
  } catch (const ParseError& e) {
    const std::string what = e.what();
    CHECK(what.find("degrees.txt") != std::string::npos);
    CHECK(what.find("2") != std::string::npos);  // the line number
  }
}

TEST_CASE("edge lists come out sorted, dot output names every vertex") {
  const ConnectionGraph g = oracle::graph_of(4, {{2, 3}, {0, 1}, {0, 2}});
  CHECK(export_graph(g, GraphFormat::edgelist) == "0 1\n0 2\n2 3\n");

  const std::string dot = export_graph(g, GraphFormat::dot);
  CHECK(dot.find("graph connections {") == 0);
  CHECK(dot.find("0 -- 1;") != std::string::npos);
  CHECK(dot.find("2 -- 3;") != std::string::npos);
  // vertex 1 has edges, so only isolated vertices get a bare statement
  const ConnectionGraph lonely = oracle::graph_of(3, {{0, 1}});
  const std::string lonely_dot = export_graph(lonely, GraphFormat::dot);
  CHECK(lonely_dot.find("2;") != std::string::npos);

  const ConnectionGraph empty = oracle::graph_of(2, {});
  CHECK(export_graph(empty, GraphFormat::edgelist).empty());

  CHECK(parse_graph_format("edgelist") == GraphFormat::edgelist);
  CHECK(parse_graph_format("dot") == GraphFormat::dot);
  CHECK_THROWS_AS(parse_graph_format("png"), ParseError);
}

TEST_CASE("stability reports serialize with their full violation detail") {
  EventConfiguration cfg{oracle::params_gamma(1, 2, BCost::eps(), 2),
                         std::vector<Strategy>(2)};
  cfg.strategies[0].push_back(Event{0, {1}, Rational(3, 4)});
  cfg.strategies[1].push_back(Event{1, {0}, Rational(3, 4)});
  const StabilityReport report = check_stability_criterion(cfg);
  const json doc = json::parse(to_json(report));
  CHECK(doc["stable"] == false);
  REQUIRE(doc["violations"].is_array());
  REQUIRE_FALSE(doc["violations"].empty());
  const json& v = doc["violations"][0];
  CHECK(v.contains("agent"));
  CHECK(v.contains("condition"));
  CHECK(v.contains("witness"));
  CHECK(v.contains("detail"));
  CHECK(v["witness"].is_array());

  const StabilityReport fine = check_stability_deviation(
      build_clique(oracle::params_gamma(2, 5, BCost::eps()), 3));
  const json ok = json::parse(to_json(fine));
  CHECK(ok["stable"] == true);
  CHECK(ok["violations"].empty());
}

TEST_CASE("graph stats serialize every headline number") {
  const ConnectionGraph g =
      oracle::graph_of(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
  const json doc = json::parse(to_json(graph_stats(g)));
  CHECK(doc["n"] == 4);
  CHECK(doc["edge_count"] == 4);
  CHECK(doc["degree_sequence"] == json::array({2, 2, 3, 1}));
  CHECK(doc["average_degree"] == "2");
  CHECK(doc["clustering"].is_string());
  CHECK(doc["girth"] == 3);
  CHECK(doc["connected"] == true);

  // acyclic graphs report a null girth
  const json tree = json::parse(to_json(graph_stats(oracle::graph_of(3, {{0, 1}, {1, 2}}))));
  CHECK(tree["girth"].is_null());
}

TEST_CASE("traces serialize as one json object per step plus a closing status") {
  const EventConfiguration empty{oracle::params_gamma(3, 2, BCost::eps(), 2),
                                 std::vector<Strategy>(2)};
  DynamicsPolicy policy;
  policy.max_rounds = 5;
  const DynamicsResult res = run_dynamics(empty, policy);
  const std::string jsonl = trace_jsonl(res.trace);
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < jsonl.size()) {
    const std::size_t end = jsonl.find('\n', start);
    lines.push_back(jsonl.substr(start, end - start));
    start = end + 1;
  }
  REQUIRE(lines.size() == res.trace.steps.size() + 1);
  for (const std::string& line : lines)
    CHECK_FALSE(json::parse(line, nullptr, false).is_discarded());
  const json closing = json::parse(lines.back());
  CHECK(closing["status"] == "converged");
  CHECK(closing["rounds"] == res.trace.rounds);
  const json first = json::parse(lines.front());
  CHECK(first["agent"] == 0);
  CHECK(first["round"] == 1);
  CHECK(first["edges_added"] == json::array({json::array({0, 1})}));
}

TEST_CASE("error lines are single-line json with kind and message") {
  const std::string line = error_line("parse", "bad input\nwith newline");
  CHECK(line.find('\n') == std::string::npos);
  const json doc = json::parse(line);
  CHECK(doc["error"] == "parse");
  CHECK(doc["message"].is_string());
}

TEST_CASE("the fnv1a64 fingerprint matches the published test vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("hello") == 0xa430d84680aabd0bULL);
  CHECK(hash_hex(0xcbf29ce484222325ULL) == "cbf29ce484222325");
  CHECK(hash_hex(0x1ULL) == "0000000000000001");
}

TEST_CASE("run manifests serialize their bookkeeping") {
  RunManifest m;
  m.command_line = "netgame build --construction clique";
  m.parameters.emplace_back("gamma", "1/2");
  m.inputs.emplace_back("in.json", "cbf29ce484222325");
  m.outputs.emplace_back("out.json", "0000000000000001");
  m.wall_seconds = 0.25;
  const json doc = json::parse(to_json(m));
  CHECK(doc["command"] == "netgame build --construction clique");
  CHECK(doc["parameters"]["gamma"] == "1/2");
  CHECK(doc["inputs"]["in.json"] == "cbf29ce484222325");
  CHECK(doc["outputs"]["out.json"] == "0000000000000001");
  CHECK(doc.contains("wall_seconds"));
}

TEST_CASE("files write and read back, missing files raise parse errors") {
  const std::string path = "netgame_io_roundtrip.tmp";
  write_file(path, "payload\n");
  CHECK(read_file(path) == "payload\n");
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_file("definitely/not/here.json"), ParseError);
}

}  // TEST_SUITE
