#pragma once

// Command-line frontend. `run` takes the argument vector and explicit streams
// so tests can drive it in-process.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "certificate.hpp"
#include "snarkdefect/constructions.hpp"
#include "snarkdefect/io.hpp"

namespace snarkdefect::cli {

using cert::json;

enum ExitCode : int { kExact = 0, kError = 1, kBounded = 2 };

/// Builds a graph from a descriptor: petersen, k4, k33, theta, blanusa:1|2,
/// flower:N, double:GRAPH, inflate:GRAPH:V, inflate-pair:GRAPH:U:V. Trailing
/// integer fields are split off from the right, so GRAPH may itself nest.
inline CubicGraph construct(const std::string& desc) {
  auto number = [&](const std::string& tok) {
    return detail::parse_int(tok, "integer in descriptor '" + desc + "'");
  };
  auto split_last = [&](const std::string& s) -> std::pair<std::string, std::string> {
    auto pos = s.rfind(':');
    if (pos == std::string::npos) throw GraphError("descriptor '" + desc + "' is missing a field");
    return {s.substr(0, pos), s.substr(pos + 1)};
  };
  auto starts = [&](const char* p) { return desc.rfind(p, 0) == 0; };
  if (desc == "petersen") return petersen();
  if (desc == "k4") return complete_k4();
  if (desc == "k33") return complete_k33();
  if (desc == "theta") return theta_graph();
  if (starts("blanusa:")) return blanusa_snark(number(desc.substr(8)));
  if (starts("flower:")) return flower_snark(number(desc.substr(7)));
  if (starts("double:")) return bipartite_double(construct(desc.substr(7)));
  if (starts("inflate-pair:")) {
    auto [rest, v] = split_last(desc.substr(13));
    auto [graph, u] = split_last(rest);
    auto g = construct(graph);
    return inflate_pair_theorem_check(g, number(u), number(v)).inflated;
  }
  if (starts("inflate:")) {
    auto [graph, v] = split_last(desc.substr(8));
    return inflate_to_triangle(construct(graph), number(v));
  }
  throw GraphError("unknown construction '" + desc + "'");
}

struct NamedGraph {
  std::string name;
  CubicGraph graph;
};

struct InputOptions {
  std::vector<std::string> graph6;
  std::vector<std::string> edge_list;
  std::vector<std::string> constructs;
};

struct OutputOptions {
  bool json_output = false;
  bool quiet = false;
  bool timing = false;
  std::string out_file;
  unsigned threads = 0;
};

struct Budget {
  std::size_t max_matchings = std::size_t{1} << 20;
  std::uint64_t max_triples = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
};

/// SNARKDEFECT_BUDGET holds comma-separated key=value pairs with keys
/// matchings, triples, nodes.
inline Budget budget_from_env(const char* text) {
  Budget b;
  if (!text || !*text) return b;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("SNARKDEFECT_BUDGET: expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    unsigned long long v = 0;
    try {
      std::size_t used = 0;
      v = std::stoull(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw std::invalid_argument("SNARKDEFECT_BUDGET: bad number in '" + item + "'");
    }
    if (key == "matchings") b.max_matchings = v;
    else if (key == "triples") b.max_triples = v;
    else if (key == "nodes") b.max_nodes = v;
    else throw std::invalid_argument("SNARKDEFECT_BUDGET: unknown key '" + key + "'");
  }
  return b;
}

class Runner {
 public:
  Runner(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err) {}

  std::vector<NamedGraph> load(const InputOptions& opt) {
    std::vector<NamedGraph> graphs;
    for (const auto& file : opt.graph6) {
      std::string text;
      if (!slurp(file, text)) continue;
      std::istringstream lines(text);
      std::string line;
      int lineno = 0;
      const std::string label = file == "-" ? "stdin" : file;
      while (std::getline(lines, line)) {
        ++lineno;
        std::string_view t = detail::trim(line);
        if (t.empty() || t == ">>graph6<<") continue;
        try {
          graphs.push_back({label + ":" + std::to_string(lineno), parse_graph6(t)});
        } catch (const std::exception& e) {
          error(label + ":" + std::to_string(lineno) + ": " + e.what());
        }
      }
    }
    for (const auto& file : opt.edge_list) {
      std::string text;
      if (!slurp(file, text)) continue;
      try {
        auto pole = parse_edge_list(text);
        if (!pole.is_closed()) throw ParseError("edge list has free ends; a closed cubic graph is required");
        graphs.push_back({file, pole.to_graph()});
      } catch (const std::exception& e) {
        error(file + ": " + e.what());
      }
    }
    for (const auto& desc : opt.constructs) {
      try {
        graphs.push_back({desc, construct(desc)});
      } catch (const std::exception& e) {
        error("construct " + desc + ": " + e.what());
      }
    }
    return graphs;
  }

  int analyze(const InputOptions& in, const OutputOptions& o, const Budget& b) {
    auto graphs = load(in);
    cert::AnalyzeOptions opt;
    opt.budget.max_matchings = b.max_matchings;
    opt.budget.max_triples = b.max_triples;
    opt.budget.threads = o.threads;
    json certs = json::array();
    for (const auto& ng : graphs) {
      try {
        auto t0 = std::chrono::steady_clock::now();
        auto a = cert::analyze(ng.name, ng.graph, opt);
        if (o.timing) a.certificate["timing_ms"] = elapsed_ms(t0);
        if (!a.exact) bounded_ = true;
        for (const auto& e : a.errors) error(e);
        if (!o.quiet && !o.json_output) summarize_analysis(a.certificate);
        certs.push_back(std::move(a.certificate));
      } catch (const std::exception& e) {
        error(ng.name + ": " + e.what());
      }
    }
    return finish("analyze", certs, o);
  }

  int fulkerson(const InputOptions& in, const OutputOptions& o, const Budget& b, bool roundtrip,
                const std::string& verify_file) {
    auto graphs = load(in);
    if (!verify_file.empty()) return verify_cover_file(graphs, verify_file, o);
    cert::FulkersonOptions opt;
    opt.budget.max_matchings = b.max_matchings;
    opt.budget.max_nodes_per_branch = b.max_nodes;
    opt.budget.threads = o.threads;
    opt.roundtrip = roundtrip;
    json certs = json::array();
    for (const auto& ng : graphs) {
      try {
        auto t0 = std::chrono::steady_clock::now();
        auto r = cert::fulkerson(ng.name, ng.graph, opt);
        if (o.timing) r.certificate["timing_ms"] = elapsed_ms(t0);
        if (!r.exact) bounded_ = true;
        for (const auto& e : r.errors) error(e);
        if (!o.quiet && !o.json_output) summarize_fulkerson(r.certificate);
        certs.push_back(std::move(r.certificate));
      } catch (const std::exception& e) {
        error(ng.name + ": " + e.what());
      }
    }
    return finish("fulkerson", certs, o);
  }

  int verify(const std::vector<std::string>& files, bool quiet) {
    bool all_pass = true;
    for (const auto& file : files) {
      std::string text;
      if (!slurp(file, text)) {
        all_pass = false;
        continue;
      }
      try {
        json bundle;
        try {
          bundle = json::parse(text);
        } catch (const json::parse_error& e) {
          throw cert::SchemaError(std::string("not JSON: ") + e.what());
        }
        for (const auto& rep : cert::verify_bundle(bundle)) {
          if (rep.ok()) {
            if (!quiet) out_ << "PASS " << rep.name << " (" << rep.checks << " checks)\n";
          } else {
            all_pass = false;
            for (const auto& f : rep.failures) out_ << "FAIL " << rep.name << ": " << f << "\n";
          }
        }
      } catch (const std::exception& e) {
        error(file + ": schema mismatch: " + e.what());
        all_pass = false;
      }
    }
    return all_pass && !errors_ ? kExact : kError;
  }

  int construct_cmd(const std::string& desc, bool as_graph6, const std::string& out_file) {
    try {
      auto g = construct(desc);
      std::string text = as_graph6 ? to_graph6(g) + "\n" : to_edge_list(g);
      if (out_file.empty()) out_ << text;
      else if (!write_file(out_file, text)) return kError;
      return kExact;
    } catch (const std::exception& e) {
      error("construct " + desc + ": " + e.what());
      return kError;
    }
  }

 private:
  static double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }

  void error(const std::string& msg) {
    err_ << "error: " << msg << "\n";
    errors_ = true;
  }

  bool slurp(const std::string& file, std::string& text) {
    if (file == "-") {
      std::ostringstream ss;
      ss << in_.rdbuf();
      text = ss.str();
      return true;
    }
    std::ifstream f(file, std::ios::binary);
    if (!f) {
      error(file + ": cannot open");
      return false;
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
    return true;
  }

  bool write_file(const std::string& file, const std::string& text) {
    std::ofstream f(file, std::ios::binary);
    if (!(f << text)) {
      error(file + ": cannot write");
      return false;
    }
    return true;
  }

  int finish(const char* command, json certs, const OutputOptions& o) {
    json bundle{{"schema", cert::kSchema}, {"command", command}, {"certificates", std::move(certs)}};
    std::string text = bundle.dump(2) + "\n";
    if (o.json_output) out_ << text;
    if (!o.out_file.empty()) write_file(o.out_file, text);
    if (errors_) return kError;
    return bounded_ ? kBounded : kExact;
  }

  static std::string list(const json& a) {
    std::string s = "[";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + a[i].dump();
    return s + "]";
  }

  void summarize_defect(const char* label, const json& d) {
    out_ << "  " << label << "=";
    if (d.is_null()) {
      out_ << "undefined\n";
      return;
    }
    if (d["value"].is_null()) {
      out_ << (d["none_found"].get<bool>() ? "none (exhaustive: no array of this kind exists)" : "unknown (budget)") << "\n";
      return;
    }
    out_ << d["value"].dump() << (d["exhaustive"].get<bool>() ? " exact" : " upper-bound") << " witness=#"
         << d["witness_indices"][0] << ",#" << d["witness_indices"][1] << ",#" << d["witness_indices"][2]
         << " uncovered=" << list(d["core"]["uncovered"]) << " core=";
    const json& comps = d["core"]["components"];
    if (comps.empty()) out_ << "empty";
    for (std::size_t i = 0; i < comps.size(); ++i)
      out_ << (i ? "+" : "") << comps[i]["kind"].get<std::string>() << "(" << comps[i]["edges"].size()
           << (comps[i]["induced"].get<bool>() ? ",induced" : "") << ")";
    out_ << "\n";
  }

  void summarize_analysis(const json& c) {
    auto yn = [](const json& b) { return b.get<bool>() ? "yes" : "no"; };
    out_ << c["name"].get<std::string>() << ": n=" << c["graph"]["vertices"] << " m=" << c["graph"]["edges"].size()
         << " girth=" << c["girth"] << " snark=" << yn(c["snark"]) << " colourable=" << yn(c["colourable"])
         << " oddness=" << (c["oddness"].is_null() ? std::string("?") : c["oddness"]["value"].dump())
         << " matchings=" << c["matchings"]["count"] << (c["matchings"]["complete"].get<bool>() ? "" : "+") << "\n";
    summarize_defect("df", c["df"]);
    summarize_defect("rdf", c["rdf"]);
    auto check = [](const json& b) { return b.is_null() ? "n/a" : b.get<bool>() ? "ok" : "FAILED"; };
    out_ << "  girth-bound=" << check(c["girth_bound"]) << " df3<=>rdf3=" << check(c["corollary_rdf3"]) << "\n";
  }

  void summarize_fulkerson(const json& c) {
    out_ << c["name"].get<std::string>() << ": ";
    if (c["cover"].is_null()) {
      if (!c.contains("none_found")) out_ << "not searched\n";
      else out_ << (c["none_found"].get<bool>() ? "no Fulkerson cover (exhaustive)\n" : "no cover found (budget)\n");
      return;
    }
    out_ << "cover";
    for (const auto& m : c["cover"]) out_ << " " << list(m);
    out_ << "\n";
    if (c.contains("roundtrip")) out_ << "  roundtrip " << (c["roundtrip"]["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
  }

  int verify_cover_file(const std::vector<NamedGraph>& graphs, const std::string& file, const OutputOptions& o) {
    std::string text;
    if (!slurp(file, text)) return kError;
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      error(file + ": not JSON: " + e.what());
      return kError;
    }
    const json& members = j.is_object() && j.contains("cover") ? j["cover"] : j;
    bool pass = !graphs.empty();
    if (graphs.empty()) error("--verify needs an input graph");
    for (const auto& ng : graphs) {
      try {
        FulkersonCover c{cert::detail::members_from<6>(members, ng.graph.edge_count(), "cover")};
        auto chk = verify_cover(ng.graph, c);
        if (chk.ok) {
          if (!o.quiet) out_ << "PASS " << ng.name << "\n";
        } else {
          pass = false;
          out_ << "FAIL " << ng.name << ": " << chk.violation << "\n";
        }
      } catch (const std::exception& e) {
        error(file + ": " + e.what());
        pass = false;
      }
    }
    return pass && !errors_ ? kExact : kError;
  }

  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  bool errors_ = false;
  bool bounded_ = false;
};

/// Parses `args` (without the program name) and runs the selected subcommand.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
               const char* budget_env = std::getenv("SNARKDEFECT_BUDGET")) {
  CLI::App app{"Colouring defect, regular defect, and Fulkerson covers of bridgeless cubic graphs.", "snarkdefect"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "snarkdefect 1.0.0");
  app.footer(
      "Graph descriptors for --construct: petersen, k4, k33, theta, blanusa:1|2, flower:N,\n"
      "double:GRAPH, inflate:GRAPH:V, inflate-pair:GRAPH:U:V.\n"
      "SNARKDEFECT_BUDGET=matchings=N,triples=N,nodes=N sets default budgets.\n"
      "Exit status: 0 exact results, 2 budget-limited results present, 1 errors.");

  InputOptions input;
  OutputOptions output;
  Budget budget;
  Budget env_budget;
  try {
    env_budget = budget_from_env(budget_env);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  budget = env_budget;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--graph6", input.graph6, "graph6 file, one graph per line ('-' reads stdin)")->type_name("FILE");
    sub->add_option("--edge-list", input.edge_list, "edge-list file holding one closed cubic graph")->type_name("FILE");
    sub->add_option("--construct", input.constructs, "built-in construction descriptor (repeatable)")->type_name("DESC");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_flag("--json", output.json_output, "print the JSON certificate bundle instead of the summary");
    sub->add_flag("--quiet", output.quiet, "suppress the text summary");
    sub->add_option("--out", output.out_file, "also write the JSON certificate bundle to FILE")->type_name("FILE");
    sub->add_option("--threads", output.threads, "worker threads (0 = all cores)")->type_name("N");
    sub->add_flag("--timing", output.timing, "record wall-clock time per graph in certificates");
    sub->add_option("--max-matchings", budget.max_matchings, "stop matching enumeration after N matchings")->type_name("N");
  };

  auto* analyze = app.add_subcommand("analyze", "girth, oddness, df and rdf with witnesses, cores, flows");
  add_input(analyze);
  add_output(analyze);
  analyze->add_option("--max-triples", budget.max_triples, "examine at most N matching triples")->type_name("N");

  bool find = false, roundtrip = false;
  std::string verify_file;
  auto* fulk = app.add_subcommand("fulkerson", "find, round-trip, or check Fulkerson covers");
  add_input(fulk);
  add_output(fulk);
  fulk->add_option("--max-nodes", budget.max_nodes, "search nodes per first-member branch")->type_name("N");
  fulk->add_flag("--find", find, "search for a cover (default)");
  fulk->add_flag("--roundtrip", roundtrip, "run cover -> complementary arrays -> flows -> cover");
  fulk->add_option("--verify", verify_file, "check the six matchings in FILE (JSON) against each input graph")
      ->type_name("FILE");

  std::vector<std::string> cert_files;
  bool verify_quiet = false;
  auto* verify = app.add_subcommand("verify", "re-check certificate bundles without searching");
  verify->add_option("certificates", cert_files, "certificate bundle files")->required()->type_name("FILE");
  verify->add_flag("--quiet", verify_quiet, "print failures only");

  std::string desc, construct_out;
  bool as_graph6 = false;
  auto* cons = app.add_subcommand("construct", "print a built-in construction as an edge list");
  cons->add_option("descriptor", desc, "construction descriptor")->required()->type_name("DESC");
  cons->add_flag("--graph6", as_graph6, "print graph6 instead (simple graphs only)");
  cons->add_option("--out", construct_out, "write to FILE instead of stdout")->type_name("FILE");

  std::vector<std::string> argv_store{"snarkdefect"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExact : kError;
  }

  Runner runner(in, out, err);
  if (*analyze || *fulk) {
    if (input.graph6.empty() && input.edge_list.empty() && input.constructs.empty()) {
      err << "error: no input graphs (use --graph6, --edge-list, or --construct)\n";
      return kError;
    }
  }
  if (*analyze) return runner.analyze(input, output, budget);
  if (*fulk) {
    (void)find;
    return runner.fulkerson(input, output, budget, roundtrip, verify_file);
  }
  if (*verify) return runner.verify(cert_files, verify_quiet);
  return runner.construct_cmd(desc, as_graph6, construct_out);
}

}  // namespace snarkdefect::cli
