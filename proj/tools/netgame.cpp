// netgame: build / check / metrics / degree-seq / dynamics / export.
//
// Exit codes: 0 the command ran (verdicts like "unstable" are data, not
// failures), 1 domain rejection (parameters outside a regime, infeasible
// inputs), 2 malformed input or usage. Diagnostics go to stderr as one
// JSON object per line.

#include <charconv>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "netgame/constructions.hpp"
#include "netgame/degree_sequence.hpp"
#include "netgame/dynamics.hpp"
#include "netgame/errors.hpp"
#include "netgame/io.hpp"
#include "netgame/metrics.hpp"
#include "netgame/model.hpp"
#include "netgame/stability.hpp"

namespace {

using namespace netgame;
using ojson = nlohmann::ordered_json;

std::string join_argv(int argc, char** argv) {
  std::string line;
  for (int i = 0; i < argc; ++i) {
    if (i) line += ' ';
    std::string arg = argv[i];
    if (arg.find(' ') != std::string::npos) arg = "\"" + arg + "\"";
    line += arg;
  }
  return line;
}

// per-command bookkeeping: hashes every byte read or written so a rerun of
// the identical command can be diffed hash-for-hash
struct Run {
  RunManifest manifest;
  std::string manifest_path;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  void param(const std::string& name, const std::string& value) {
    manifest.parameters.emplace_back(name, value);
  }
  std::string read_input(const std::string& path) {
    std::string bytes = read_file(path);
    manifest.inputs.emplace_back(path, hash_hex(fnv1a64(bytes)));
    return bytes;
  }
  void emit(const std::string& path, const std::string& bytes) {
    if (path.empty() || path == "-") {
      std::cout << bytes;
      manifest.outputs.emplace_back("<stdout>", hash_hex(fnv1a64(bytes)));
    } else {
      write_file(path, bytes);
      manifest.outputs.emplace_back(path, hash_hex(fnv1a64(bytes)));
    }
  }
  void finish() {
    if (manifest_path.empty()) return;
    manifest.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    write_file(manifest_path, to_json(manifest));
  }
};

void note(const ojson& doc) { std::cerr << doc.dump() << "\n"; }

// --gamma p/q becomes a = p, c = q; b defaults to the vanishing fee
Parameters make_params(const std::string& gamma_text, const std::string& b_text) {
  const Rational gamma = Rational::parse(gamma_text);
  if (gamma.sign() <= 0)
    throw DomainError("gamma must be positive, got " + gamma.str());
  Parameters params;
  params.a = Rational(gamma.num_long());
  params.c = Rational(gamma.den_long());
  params.b = b_text == "eps" ? BCost::eps()
                             : BCost::concrete(Rational::parse(b_text));
  params.n = 1;  // builders size their own community
  return params;
}

CommunitySkeleton parse_skeleton(const std::string& text,
                                 const std::string& origin) {
  ojson doc;
  try {
    doc = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("cliques"))
    throw ParseError(origin + ": expected {\"cliques\": [...], \"joins\": [...]}");
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (it.key() != "cliques" && it.key() != "joins")
      throw ParseError(origin + ": unknown field \"" + it.key() + "\"");

  CommunitySkeleton skeleton;
  const ojson& cliques = doc["cliques"];
  if (!cliques.is_array())
    throw ParseError(origin + ".cliques: must be an array of sizes");
  for (const ojson& size : cliques) {
    if (!size.is_number_integer())
      throw ParseError(origin + ".cliques: sizes must be integers");
    skeleton.clique_sizes.push_back(size.get<int>());
  }
  if (doc.contains("joins")) {
    const ojson& joins = doc["joins"];
    if (!joins.is_array()) throw ParseError(origin + ".joins: must be an array");
    for (size_t i = 0; i < joins.size(); ++i) {
      const std::string where = origin + ".joins[" + std::to_string(i) + "]";
      const ojson& jj = joins[i];
      if (!jj.is_object() || !jj.contains("a") || !jj.contains("b") ||
          !jj.contains("kind"))
        throw ParseError(where + ": expected {\"a\", \"b\", \"kind\"[, \"overlap\"]}");
      Join join;
      join.a = jj["a"].get<int>();
      join.b = jj["b"].get<int>();
      const std::string kind = jj["kind"].get<std::string>();
      if (kind == "bridge")
        join.kind = JoinKind::bridge;
      else if (kind == "shared")
        join.kind = JoinKind::shared_vertex;
      else if (kind == "overlap")
        join.kind = JoinKind::overlap;
      else
        throw ParseError(where + ".kind: expected bridge|shared|overlap, got \"" +
                         kind + "\"");
      if (jj.contains("overlap")) join.overlap = jj["overlap"].get<int>();
      skeleton.joins.push_back(join);
    }
  }
  return skeleton;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"social-event network formation: constructions, stability, metrics, dynamics"};
  app.require_subcommand(1);
  const std::string command_line = join_argv(argc, argv);

  // ---- build ---------------------------------------------------------------
  auto* build = app.add_subcommand("build", "emit a configuration for a named construction");
  std::string b_construction, b_gamma, b_b = "eps", b_skeleton, b_out, b_manifest;
  std::string b_scheme = "auto";
  int b_n = -1, b_size = -1, b_k = -1, b_p = -1, b_d = -1, b_K = -1;
  std::uint64_t b_seed = 0;
  build->add_option("--construction", b_construction,
                    "complete|clique|hkp|h32|community|hypergraph|dense")->required();
  build->add_option("--gamma", b_gamma, "benefit/cost ratio as p/q")->required();
  build->add_option("--b", b_b, "per-rate fee: eps or a rational (default eps)");
  build->add_option("--n", b_n, "community size (complete, hypergraph, dense)");
  build->add_option("--size", b_size, "clique size");
  build->add_option("--k", b_k, "clique size (hkp) / agents per hyperedge");
  build->add_option("--p", b_p, "shared vertices (hkp)");
  build->add_option("--d", b_d, "hyperedges per agent");
  build->add_option("--K", b_K, "invite cap (dense)");
  auto* b_seed_opt = build->add_option("--seed", b_seed, "rng seed (hypergraph, dense)");
  build->add_option("--skeleton", b_skeleton, "community skeleton JSON file");
  build->add_option("--scheme", b_scheme, "community hosting: auto|combined|silent-shared");
  build->add_option("--out", b_out, "output path (default stdout)");
  build->add_option("--manifest", b_manifest, "write a run manifest here");

  build->callback([&] {
    Run run;
    run.manifest.command_line = command_line;
    run.manifest_path = b_manifest;
    run.param("construction", b_construction);
    run.param("gamma", b_gamma);
    run.param("b", b_b);
    Parameters params = make_params(b_gamma, b_b);

    auto need = [&](int value, const char* flag) {
      if (value < 0)
        throw ParseError(std::string(flag) + " is required for --construction " +
                         b_construction);
      return value;
    };
    auto need_seed = [&] {
      if (b_seed_opt->count() == 0)
        throw ParseError("--seed is required for --construction " + b_construction);
      run.param("seed", std::to_string(b_seed));
      return b_seed;
    };

    EventConfiguration config;
    if (b_construction == "complete") {
      config = build_complete_single_host(params, need(b_n, "--n"));
    } else if (b_construction == "clique") {
      config = build_clique(params, need(b_size, "--size"));
    } else if (b_construction == "hkp") {
      config = build_hkp(params, need(b_k, "--k"), need(b_p, "--p"));
    } else if (b_construction == "h32") {
      config = build_h32(params);
    } else if (b_construction == "community") {
      if (b_skeleton.empty())
        throw ParseError("--skeleton is required for --construction community");
      CommunitySkeleton skeleton =
          parse_skeleton(run.read_input(b_skeleton), b_skeleton);
      CommunityScheme scheme;
      if (b_scheme == "auto")
        scheme = CommunityScheme::automatic;
      else if (b_scheme == "combined")
        scheme = CommunityScheme::combined;
      else if (b_scheme == "silent-shared")
        scheme = CommunityScheme::silent_shared;
      else
        throw ParseError("--scheme: expected auto|combined|silent-shared, got \"" +
                         b_scheme + "\"");
      CommunityResult result = build_community_graph(params, skeleton, scheme);
      note({{"note", "community scheme"},
            {"used", result.scheme_used == CommunityScheme::combined
                         ? "combined"
                         : "silent-shared"}});
      config = std::move(result.config);
    } else if (b_construction == "hypergraph") {
      HypergraphSpec spec;
      spec.n = need(b_n, "--n");
      spec.k = need(b_k, "--k");
      spec.d = need(b_d, "--d");
      spec.seed = need_seed();
      HypergraphResult result = build_hypergraph_network(params, spec);
      note({{"note", "hypergraph cleanup"},
            {"total_hyperedges", result.total_hyperedges},
            {"removed_hyperedges", result.removed_hyperedges}});
      config = std::move(result.config);
    } else if (b_construction == "dense") {
      DenseResult result = build_dense_k_supportable(params, need(b_n, "--n"),
                                                     need(b_K, "--K"), need_seed());
      note({{"note", "dense packing"},
            {"group_size", result.group_size},
            {"dropped_invites", result.dropped_invites}});
      config = std::move(result.config);
    } else {
      throw ParseError("unknown construction \"" + b_construction + "\"");
    }
    run.emit(b_out, serialize_config(config));
    run.finish();
  });

  // ---- check ---------------------------------------------------------------
  auto* check = app.add_subcommand("check", "test a configuration for pairwise stability");
  std::string c_config, c_mode = "best-response", c_out, c_manifest;
  check->add_option("config", c_config, "configuration JSON file")->required();
  check->add_option("--mode", c_mode, "criterion|best-response (default best-response)");
  check->add_option("--out", c_out, "report path (default stdout)");
  check->add_option("--manifest", c_manifest, "write a run manifest here");
  check->callback([&] {
    Run run;
    run.manifest.command_line = command_line;
    run.manifest_path = c_manifest;
    run.param("mode", c_mode);
    EventConfiguration config = parse_config_text(run.read_input(c_config), c_config);
    StabilityReport report;
    if (c_mode == "criterion")
      report = check_stability_criterion(config);
    else if (c_mode == "best-response")
      report = check_stability_deviation(config);
    else
      throw ParseError("--mode: expected criterion|best-response, got \"" + c_mode + "\"");
    run.emit(c_out, to_json(report));
    run.finish();
  });

  // ---- metrics ---------------------------------------------------------------
  auto* metrics = app.add_subcommand("metrics", "connection-graph statistics and bound checks");
  std::string m_config, m_check, m_out, m_manifest;
  int m_K = -1;
  bool m_json = false;
  metrics->add_option("config", m_config, "configuration JSON file")->required();
  metrics->add_flag("--json", m_json, "accepted for symmetry; output is always JSON");
  metrics->add_option("--check", m_check, "clustering|ksupport instead of plain stats");
  metrics->add_option("--K", m_K, "invite cap for --check ksupport");
  metrics->add_option("--out", m_out, "output path (default stdout)");
  metrics->add_option("--manifest", m_manifest, "write a run manifest here");
  metrics->callback([&] {
    Run run;
    run.manifest.command_line = command_line;
    run.manifest_path = m_manifest;
    EventConfiguration config = parse_config_text(run.read_input(m_config), m_config);
    ConnectionGraph graph = connection_graph(config);
    std::string body;
    if (m_check.empty()) {
      body = to_json(graph_stats(graph));
    } else if (m_check == "clustering") {
      run.param("check", m_check);
      body = to_json(verify_clustering_bound(graph));
    } else if (m_check == "ksupport") {
      run.param("check", m_check);
      if (m_K < 1) throw ParseError("--check ksupport needs --K >= 1");
      run.param("K", std::to_string(m_K));
      body = to_json(verify_k_supportable_degree_bound(config, m_K));
    } else {
      throw ParseError("--check: expected clustering|ksupport, got \"" + m_check + "\"");
    }
    run.emit(m_out, body);
    run.finish();
  });

  // ---- degree-seq -------------------------------------------------------------
  auto* degseq = app.add_subcommand("degree-seq", "realize a degree sequence as a stable configuration");
  std::string d_input, d_powerlaw, d_gamma, d_b = "eps", d_out, d_report, d_manifest;
  std::uint64_t d_seed = 0;
  degseq->add_option("--input", d_input, "degree file, one integer per line");
  degseq->add_option("--powerlaw", d_powerlaw, "alpha,n e.g. 5/2,2000");
  degseq->add_option("--gamma", d_gamma, "benefit/cost ratio as p/q")->required();
  degseq->add_option("--b", d_b, "per-rate fee (the realization needs eps)");
  auto* d_seed_opt = degseq->add_option("--seed", d_seed, "rng seed");
  degseq->add_option("--out", d_out, "configuration path (default stdout)");
  degseq->add_option("--report", d_report, "realization report path");
  degseq->add_option("--manifest", d_manifest, "write a run manifest here");
  degseq->callback([&] {
    Run run;
    run.manifest.command_line = command_line;
    run.manifest_path = d_manifest;
    run.param("gamma", d_gamma);
    if (d_seed_opt->count()) run.param("seed", std::to_string(d_seed));
    if (d_input.empty() == d_powerlaw.empty())
      throw ParseError("pass exactly one of --input and --powerlaw");
    Parameters params = make_params(d_gamma, d_b);

    DegreeSequence degrees;
    if (!d_input.empty()) {
      degrees = parse_degrees(run.read_input(d_input), d_input);
    } else {
      const size_t comma = d_powerlaw.rfind(',');
      if (comma == std::string::npos)
        throw ParseError("--powerlaw: expected alpha,n e.g. 5/2,2000");
      const Rational alpha = Rational::parse(d_powerlaw.substr(0, comma));
      int n = 0;
      const std::string n_text = d_powerlaw.substr(comma + 1);
      auto [ptr, ec] = std::from_chars(n_text.data(), n_text.data() + n_text.size(), n);
      if (ec != std::errc() || ptr != n_text.data() + n_text.size())
        throw ParseError("--powerlaw: bad n \"" + n_text + "\"");
      run.param("alpha", alpha.str());
      run.param("n", std::to_string(n));
      degrees = powerlaw_sequence(alpha, n);
    }
    RealizationReport report = realize_degrees(degrees, params, d_seed);
    run.emit(d_out, serialize_config(report.config));
    if (!d_report.empty()) run.emit(d_report, to_json(report));
    run.finish();
  });

  // ---- dynamics ----------------------------------------------------------------
  auto* dynamics = app.add_subcommand("dynamics", "run one-agent-at-a-time best-response updates");
  std::string y_init, y_order = "rr", y_trace, y_out, y_manifest;
  std::uint64_t y_seed = 0;
  int y_rounds = 1;
  dynamics->add_option("--init", y_init, "starting configuration JSON file")->required();
  dynamics->add_option("--order", y_order, "rr|random (default rr)");
  dynamics->add_option("--seed", y_seed, "rng seed for --order random");
  dynamics->add_option("--max-rounds", y_rounds, "round cap (default 1)");
  dynamics->add_option("--trace", y_trace, "step trace path, one JSON record per line");
  dynamics->add_option("--out", y_out, "terminal configuration path (default stdout)");
  dynamics->add_option("--manifest", y_manifest, "write a run manifest here");
  dynamics->callback([&] {
    Run run;
    run.manifest.command_line = command_line;
    run.manifest_path = y_manifest;
    run.param("order", y_order);
    run.param("seed", std::to_string(y_seed));
    run.param("max_rounds", std::to_string(y_rounds));
    EventConfiguration config = parse_config_text(run.read_input(y_init), y_init);
    DynamicsPolicy policy;
    if (y_order == "rr")
      policy.order = UpdateOrder::round_robin;
    else if (y_order == "random")
      policy.order = UpdateOrder::uniform_random;
    else
      throw ParseError("--order: expected rr|random, got \"" + y_order + "\"");
    policy.seed = y_seed;
    policy.max_rounds = y_rounds;
    DynamicsResult result = run_dynamics(config, policy);
    note({{"note", "dynamics finished"},
          {"status", result.trace.status == DynamicsStatus::converged
                         ? "converged"
                         : "round-limit"},
          {"rounds", result.trace.rounds},
          {"steps", result.trace.steps.size()}});
    run.emit(y_out, serialize_config(result.config));
    if (!y_trace.empty()) run.emit(y_trace, trace_jsonl(result.trace));
    run.finish();
  });

  // ---- export ---------------------------------------------------------------
  auto* exp = app.add_subcommand("export", "write the connection graph of a configuration");
  std::string e_config, e_format = "edgelist", e_out, e_manifest;
  exp->add_option("config", e_config, "configuration JSON file")->required();
  exp->add_option("--format", e_format, "edgelist|dot (default edgelist)");
  exp->add_option("--out", e_out, "output path (default stdout)");
  exp->add_option("--manifest", e_manifest, "write a run manifest here");
  exp->callback([&] {
    Run run;
    run.manifest.command_line = command_line;
    run.manifest_path = e_manifest;
    run.param("format", e_format);
    EventConfiguration config = parse_config_text(run.read_input(e_config), e_config);
    run.emit(e_out, export_graph(connection_graph(config), parse_graph_format(e_format)));
    run.finish();
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help and friends
  } catch (const CLI::ParseError& e) {
    std::cerr << error_line("usage", e.what()) << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << error_line("parse", e.what()) << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << error_line("domain", e.what()) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << error_line("internal", e.what()) << "\n";
    return 1;
  }
  return 0;
}
