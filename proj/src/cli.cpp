#include "wamen/cli.hpp"

#include <cstdlib>
#include <fstream>

#include <CLI11.hpp>

#include "wamen/error.hpp"
#include "wamen/report.hpp"

namespace wamen {

namespace {

void emit_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << Json{{"error", message}, {"kind", kind}}.dump() << '\n';
}

void add_graph_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--family", cfg.family, "built-in family: z (lattice) or free");
  app->add_option("--dim", cfg.dim, "lattice dimension");
  app->add_option("--rank", cfg.rank, "free group rank");
  app->add_option("--radius", cfg.radius, "window radius");
  app->add_option("--steps", cfg.steps, "lattice steps, e.g. \"1;2\" or \"1,0;0,1\"");
  app->add_option("--graph", cfg.graph_path, "graph file instead of a built-in family");
}

void add_run_options(CLI::App* app, RunConfig& cfg) {
  add_graph_options(app, cfg);
  app->add_option("--weights", cfg.weights, "unit | exp2 | exp:<base> | ball:<r> | random:<seed> | file:<path>");
  app->add_option("--set", cfg.set, "vertex set: all | interior | box:a..b[,c..d] | box:<n> | ball:<r> | names:<id>;...");
  app->add_option("--subset", cfg.subset, "subset A for stage means");
  app->add_option("--words", cfg.words, "';'-separated words, labels joined by ','");
  app->add_option("--stages", cfg.stages, "boxes:<n>,... or balls:<r>,...");
  app->add_option("--k", cfg.k, "word length bound for T");
  app->add_flag("--exact-k", cfg.exact_k, "use words of length exactly k");
  app->add_flag("--strict", cfg.strict, "look for buyer loads strictly below the fraction");
  app->add_option("--fraction", cfg.fraction, "buyer capacity fraction");
  app->add_option("--eps", cfg.eps, "separator weight fraction");
  app->add_option("--delta", cfg.delta, "decomposition delta");
  app->add_option("--K", cfg.K, "component size bound");
  app->add_option("--backend", cfg.backend, "brute | asdim");
  app->add_option("--cover", cfg.cover_path, "cover file");
  app->add_option("--tile", cfg.tile, "Følner set F_n for the random separator");
  app->add_option("--n", cfg.n, "stage index n");
  app->add_option("--max-trials", cfg.max_trials, "random separator trials");
  app->add_option("--seed", cfg.seed, "random seed (default: $WAMEN_SEED or 0)");
  app->add_option("--ball-r", cfg.ball_r, "ball radius for weight ball/partition");
  app->add_option("--parts", cfg.parts, "number of parts for weight partition");
  app->add_option("--target-steps", cfg.target_steps, "lattice steps of the transfer target");
  app->add_option("--target-radius", cfg.target_radius, "radius of the transfer target window");
  app->add_option("--c", cfg.c, "quasi-isometry constant");
  app->add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted amenability and hyperfiniteness on finite graph windows"};
  app.require_subcommand(1);
  RunConfig cfg;
  if (const char* env = std::getenv("WAMEN_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      emit_error(err, "input", "WAMEN_SEED is not an unsigned integer");
      return 1;
    }
  }
  std::string out_path;
  std::string verify_path;

  const std::vector<std::pair<std::string, std::vector<std::string>>> groups = {
      {"graph", {"build", "check"}},
      {"weight", {"ball", "balance", "partition"}},
      {"folner", {"defect", "search"}},
      {"mean", {"stage"}},
      {"compress", {"solve", "verify"}},
      {"sep", {"brute", "asdim", "random", "transfer", "decompose"}},
  };
  std::vector<std::pair<CLI::App*, std::string>> leaves;
  for (const auto& [group, names] : groups) {
    CLI::App* g = app.add_subcommand(group);
    g->require_subcommand(1);
    for (const auto& name : names) {
      CLI::App* leaf = g->add_subcommand(name);
      if (group == "compress" && name == "verify") {
        leaf->add_option("--certificate", verify_path, "certificate file")->required();
      } else {
        add_run_options(leaf, cfg);
        leaf->add_option("--out", out_path, "write the report here instead of stdout");
      }
      leaves.emplace_back(leaf, group + " " + name);
    }
  }
  CLI::App* verify = app.add_subcommand("verify", "re-check a report or certificate");
  verify->add_option("report", verify_path, "report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "usage", e.what());
    return 1;
  }

  try {
    if (!verify_path.empty()) {
      VerifyOutcome v = verify_report(read_json_file(verify_path));
      if (!v.ok) {
        emit_error(err, "verify", v.failure);
        return 1;
      }
      out << Json{{"verified", true}}.dump() << '\n';
      return 0;
    }
    for (const auto& [leaf, name] : leaves)
      if (leaf->parsed()) cfg.command = name;
    CommandOutput result = run_command(cfg);
    std::string text = cfg.format == "csv" && !result.csv.empty() ? result.csv : result.report.dump(2) + "\n";
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(out_path);
      if (!file) throw Error("cannot write '" + out_path + "'");
      file << text;
    }
    return result.exit_code;
  } catch (const InfeasibleError& e) {
    emit_error(err, "not_found", e.what());
    return 2;
  } catch (const Error& e) {
    emit_error(err, "input", e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error(err, "internal", e.what());
    return 1;
  }
}

}  // namespace wamen
