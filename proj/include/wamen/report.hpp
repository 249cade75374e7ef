#pragma once

#include <cstdint>
#include <string>

#include "wamen/io.hpp"

namespace wamen {

/// Everything a command needs; embedded verbatim in every report so the
/// report can be re-checked on its own.
struct RunConfig {
  std::string command;  // e.g. "compress solve"

  // graph source: a built-in family or a graph file
  std::string family = "z";  // z | free
  int dim = 1;
  int rank = 2;
  int radius = 3;
  std::string steps;  // lattice steps "1;2" or "1,0;0,1"; empty = unit steps
  std::string graph_path;

  std::string weights = "unit";
  std::string set;     // F, the stage, or the host H
  std::string subset;  // A for stage means
  std::string words;   // ';'-separated words; empty = the generators
  std::string stages;  // boxes:4,8,16 | balls:1,2,3

  int k = 1;
  bool exact_k = false;
  bool strict = false;
  std::string fraction = "1/2";

  std::string eps = "1/4";
  std::string delta = "1/10";
  std::size_t K = 4;
  std::string backend = "brute";  // brute | asdim
  std::string cover_path;
  std::string tile;  // F_n for the random separator
  unsigned n = 10;
  int max_trials = 20;
  std::uint64_t seed = 0;

  int ball_r = 1;  // weight ball / partition radius
  int parts = 2;

  // quasi-isometry target: same-dimension lattice with these steps
  std::string target_steps = "1;2";
  int target_radius = -1;  // -1: radius of the source window
  int c = 2;

  std::string format = "json";  // json | csv
};

Json config_to_json(const RunConfig& config);
RunConfig config_from_json(const Json& doc);

struct CommandOutput {
  Json report;
  std::string csv;  // filled when format == csv and the command has a series
  int exit_code = 0;  // 0 found and verified, 2 valid run without a result
};

/// Runs one command. Library errors propagate as exceptions.
CommandOutput run_command(const RunConfig& config);

struct VerifyOutcome {
  bool ok = false;
  std::string failure;  // first failing check
};

/// Re-checks a report: certificate conditions, separator recomputation and
/// claims with exact arithmetic, then a replay of the embedded config that
/// must reproduce the report exactly. Graph documents are checked by loading.
VerifyOutcome verify_report(const Json& doc);

// Helpers shared with the CLI and tests.
LabeledGraph graph_for(const RunConfig& config);
WeightFunction weights_for(const LabeledGraph& g, const std::string& spec);
/// Set specs: all | interior | box:a..b[,c..d] | ball:<r> | ball:<vertex>:<r> |
/// even | names:<id>;<id> | file:<path>.
VertexSet set_for(const LabeledGraph& g, const std::string& spec);
std::vector<VertexSet> stages_for(const LabeledGraph& g, const std::string& spec);
std::vector<Word> words_for(const LabeledGraph& g, const std::string& spec);

}  // namespace wamen
