#include "wamen/report.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "wamen/error.hpp"
#include "wamen/folner.hpp"

namespace wamen {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(RunConfig, command, family, dim, rank, radius, steps, graph_path,
                                                weights, set, subset, words, stages, k, exact_k, strict, fraction, eps,
                                                delta, K, backend, cover_path, tile, n, max_trials, seed, ball_r,
                                                parts, target_steps, target_radius, c, format)

Json config_to_json(const RunConfig& config) { return config; }

RunConfig config_from_json(const Json& doc) {
  try {
    return doc.get<RunConfig>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed config: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Spec parsing

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

int parse_int(std::string_view text, const std::string& what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError(what + ": '" + std::string(text) + "' is not an integer");
  return value;
}

std::uint64_t parse_u64(std::string_view text, const std::string& what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError(what + ": '" + std::string(text) + "' is not an unsigned integer");
  return value;
}

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

std::vector<std::vector<int>> parse_steps(const std::string& text, int dim) {
  std::vector<std::vector<int>> steps;
  for (const auto& part : split(text, ';')) {
    std::vector<int> step;
    for (const auto& x : split(part, ',')) step.push_back(parse_int(x, "step"));
    if (static_cast<int>(step.size()) != dim) throw ParseError("step '" + part + "' has the wrong dimension");
    steps.push_back(std::move(step));
  }
  return steps;
}

LabeledGraph lattice_with_steps(int dim, int radius, const std::string& steps) {
  Family f;
  f.kind = Family::Kind::lattice;
  f.dim = dim;
  if (!steps.empty()) f.steps = parse_steps(steps, dim);
  return build_cayley_window(f, radius);
}

VertexSet box_set(const LabeledGraph& g, const std::string& body) {
  if (g.family().kind != Family::Kind::lattice) throw PreconditionError("boxes need a lattice window");
  const int d = g.family().dim;
  std::vector<std::pair<int, int>> sides;
  auto parts = split(body, ',');
  if (parts.size() == 1 && parts[0].find("..") == std::string::npos) {
    int n = parse_int(parts[0], "box side");
    if (n < 1) throw ParseError("box side must be positive");
    sides.assign(d, {0, n - 1});
  } else {
    for (const auto& p : parts) {
      auto dots = p.find("..");
      if (dots == std::string::npos) throw ParseError("box range '" + p + "' must look like a..b");
      sides.emplace_back(parse_int(p.substr(0, dots), "box"), parse_int(p.substr(dots + 2), "box"));
      if (sides.back().first > sides.back().second) throw ParseError("empty box range '" + p + "'");
    }
    if (static_cast<int>(sides.size()) != d) throw ParseError("box has the wrong dimension");
  }
  std::vector<int> c(d);
  for (int i = 0; i < d; ++i) c[i] = sides[i].first;
  std::vector<VertexId> members;
  while (true) {
    auto v = g.lattice_vertex(c);
    if (!v) throw PreconditionError("box leaves the window");
    members.push_back(*v);
    int i = 0;
    for (; i < d; ++i) {
      if (c[i] < sides[i].second) {
        ++c[i];
        break;
      }
      c[i] = sides[i].first;
    }
    if (i == d) break;
  }
  return VertexSet(std::move(members));
}

}  // namespace

LabeledGraph graph_for(const RunConfig& config) {
  if (!config.graph_path.empty()) return load_graph(config.graph_path);
  if (config.radius < 1) throw PreconditionError("radius must be at least 1");
  if (config.family == "z") return lattice_with_steps(config.dim, config.radius, config.steps);
  if (config.family == "free") return build_free_window(config.rank, config.radius);
  throw ParseError("unknown family '" + config.family + "' (expected z or free)");
}

WeightFunction weights_for(const LabeledGraph& g, const std::string& spec) {
  if (spec == "unit") return WeightFunction::unit(g);
  if (spec == "exp2") return exponential_weights(g, 0, 2);
  if (starts_with(spec, "exp:")) return exponential_weights(g, 0, parse_positive_rational(spec.substr(4)));
  if (starts_with(spec, "ball:")) return ball_weight(g, identity_vertex(g), parse_int(spec.substr(5), "ball radius"));
  if (starts_with(spec, "random:")) return random_weights(g.num_vertices(), parse_u64(spec.substr(7), "weight seed"));
  if (starts_with(spec, "file:")) return weights_from_json(g, read_json_file(spec.substr(5)));
  throw ParseError("unknown weight spec '" + spec + "'");
}

VertexSet set_for(const LabeledGraph& g, const std::string& spec) {
  if (spec.empty()) throw ParseError("a vertex set is required (--set)");
  if (spec == "all") return g.all_vertices();
  if (spec == "interior") return g.interior();
  if (starts_with(spec, "box:")) return box_set(g, spec.substr(4));
  if (starts_with(spec, "ball:")) {
    auto parts = split(spec.substr(5), ':');
    if (parts.size() == 1) return ball(g, identity_vertex(g), parse_int(parts[0], "ball radius"));
    if (parts.size() == 2) return ball(g, g.at(parts[0]), parse_int(parts[1], "ball radius"));
    throw ParseError("ball spec must be ball:<r> or ball:<vertex>:<r>");
  }
  if (spec == "even") {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < g.num_vertices(); ++v)
      if (g.coords(v)[0] % 2 == 0) out.push_back(v);
    return VertexSet::from_sorted(std::move(out));
  }
  if (starts_with(spec, "names:")) {
    std::vector<VertexId> out;
    for (const auto& name : split(spec.substr(6), ';')) out.push_back(g.at(name));
    return VertexSet(std::move(out));
  }
  if (starts_with(spec, "file:")) return vertex_set_from_json(g, read_json_file(spec.substr(5)));
  throw ParseError("unknown set spec '" + spec + "'");
}

std::vector<VertexSet> stages_for(const LabeledGraph& g, const std::string& spec) {
  std::vector<VertexSet> out;
  if (starts_with(spec, "boxes:")) {
    for (const auto& n : split(spec.substr(6), ',')) out.push_back(box_set(g, n));
  } else if (starts_with(spec, "balls:")) {
    for (const auto& r : split(spec.substr(6), ',')) out.push_back(ball(g, identity_vertex(g), parse_int(r, "radius")));
  } else {
    throw ParseError("stage spec must be boxes:<n>,... or balls:<r>,...");
  }
  return out;
}

std::vector<Word> words_for(const LabeledGraph& g, const std::string& spec) {
  if (spec.empty()) return generator_words(g.generators());
  std::vector<Word> out;
  for (const auto& w : split(spec, ';')) out.push_back(parse_word(w, g.generators()));
  return out;
}

// ---------------------------------------------------------------------------
// Commands

namespace {

Json claims_json(const std::vector<Inequality>& claims) {
  Json out = Json::array();
  for (const auto& q : claims) out.push_back(inequality_to_json(q));
  return out;
}

Json separator_json(const LabeledGraph& g, const SeparatorResult& r) {
  Json out{{"method", r.method},
           {"host", vertex_list(g, r.host)},
           {"removed", vertex_list(g, r.removed)},
           {"weight_fraction", to_string(r.weight_fraction)},
           {"max_component", r.max_component},
           {"accepted", r.accepted}};
  if (r.seed) out["seed"] = *r.seed;
  return out;
}

SeparatorResult separator_from_json(const LabeledGraph& g, const Json& result, const Json& claims) {
  SeparatorResult r;
  r.method = require_string(result, "method");
  r.host = vertex_set_from_json(g, require(result, "host"));
  r.removed = vertex_set_from_json(g, require(result, "removed"));
  r.weight_fraction = require_rational(result, "weight_fraction");
  const Json& mc = require(result, "max_component");
  if (!mc.is_number_unsigned()) throw ParseError("'max_component' must be a non-negative integer");
  r.max_component = mc.get<std::size_t>();
  if (!claims.is_array()) throw ParseError("'claims' must be a list");
  for (const auto& q : claims) r.claims.push_back(inequality_from_json(q));
  return r;
}

Rational frac(std::size_t a) { return Rational(static_cast<unsigned long>(a)); }

std::string csv_join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out + '\n';
}

void run_folner(const RunConfig& cfg, const LabeledGraph& g, const WeightFunction& w, CommandOutput& out) {
  Json& rep = out.report;
  auto words = words_for(g, cfg.words);
  if (cfg.command == "folner search") {
    auto found = folner_search(g, w, words);
    rep["result"] = {{"shape", found.shape},
                     {"set", vertex_list(g, found.best.set)},
                     {"defect", to_string(found.best.defect)},
                     {"evaluated", found.evaluated}};
    rep["claims"] = claims_json({{"defect is non-negative", 0, found.best.defect, Relation::less_equal}});
    return;
  }
  std::vector<VertexSet> sets;
  std::vector<std::string> labels;
  if (!cfg.stages.empty()) {
    sets = stages_for(g, cfg.stages);
    auto tags = split(cfg.stages.substr(cfg.stages.find(':') + 1), ',');
    labels = tags;
  } else {
    sets.push_back(set_for(g, cfg.set));
    labels.push_back("1");
  }
  Json stages = Json::array();
  std::vector<Inequality> claims;
  std::string csv = "n,size,weight,defect";
  for (const Word& word : words) csv += ",ratio[" + format_word(word, g.generators()) + "]";
  csv += '\n';
  for (std::size_t i = 0; i < sets.size(); ++i) {
    auto report = folner_defect(g, w, sets[i], words);
    Json ratios = Json::object();
    std::vector<std::string> row{labels[i], std::to_string(sets[i].size()), to_string(total_weight(w, sets[i])),
                                 to_string(report.defect)};
    for (std::size_t j = 0; j < words.size(); ++j) {
      ratios[format_word(words[j], g.generators())] = to_string(report.ratios[j]);
      row.push_back(to_string(report.ratios[j]));
      claims.push_back({"stage " + labels[i] + ": w(gF u F)/w(F) - 1 <= defect for g = " +
                            format_word(words[j], g.generators()),
                        report.ratios[j] - 1, report.defect, Relation::less_equal});
    }
    csv += csv_join(row);
    stages.push_back({{"n", labels[i]},
                      {"size", sets[i].size()},
                      {"weight", to_string(total_weight(w, sets[i]))},
                      {"defect", to_string(report.defect)},
                      {"ratios", std::move(ratios)}});
  }
  rep["result"] = {{"stages", std::move(stages)}};
  rep["claims"] = claims_json(claims);
  if (cfg.format == "csv") out.csv = csv;
}

void run_mean(const RunConfig& cfg, const LabeledGraph& g, const WeightFunction& w, CommandOutput& out) {
  StageMean mean(set_for(g, cfg.set), w);
  VertexSet a = set_for(g, cfg.subset.empty() ? std::string("all") : cfg.subset);
  auto words = words_for(g, cfg.words);
  Json per_word = Json::array();
  std::vector<Inequality> claims;
  for (const Word& word : words) {
    Rational defect = invariance_defect(g, mean, a, word);
    Rational uniform = uniform_invariance_defect(g, mean, word);
    std::string text = format_word(word, g.generators());
    per_word.push_back({{"word", text}, {"invariance_defect", to_string(defect)}, {"uniform_defect", to_string(uniform)}});
    claims.push_back({"invariance defect <= uniform defect for g = " + text, defect, uniform, Relation::less_equal});
  }
  out.report["result"] = {{"mean", to_string(mean(a))},
                          {"stage_weight", to_string(mean.stage_weight())},
                          {"words", std::move(per_word)}};
  out.report["claims"] = claims_json(claims);
}

void run_weight(const RunConfig& cfg, const LabeledGraph& g, CommandOutput& out) {
  Json& rep = out.report;
  const VertexId center = identity_vertex(g);
  if (cfg.command == "weight ball") {
    WeightFunction w = ball_weight(g, center, cfg.ball_r);
    auto layers = spheres(g, center, cfg.ball_r);
    std::vector<Inequality> claims;
    Json totals = Json::array();
    const Rational outer = frac(layers.back().size());
    for (std::size_t i = 0; i < layers.size(); ++i) {
      Rational t = total_weight(w, layers[i]);
      totals.push_back(to_string(t));
      claims.push_back({"w(S_" + std::to_string(i) + ") = |S_r|", t, outer, Relation::equal});
    }
    auto bal = balancedness(g, w);
    rep["result"] = {{"weights", weights_to_json(g, w)},
                     {"sphere_totals", std::move(totals)},
                     {"balance_constant", to_string(bal.constant)}};
    rep["claims"] = claims_json(claims);
    return;
  }
  WeightFunction w = weights_for(g, cfg.weights);
  if (cfg.command == "weight balance") {
    auto bal = balancedness(g, w);
    const auto& e = bal.witness;
    Rational witness_ratio = w(e.to) / w(e.from);
    if (witness_ratio < 1) witness_ratio = 1 / witness_ratio;
    rep["result"] = {{"balance_constant", to_string(bal.constant)},
                     {"witness", {{"from", g.name(e.from)}, {"to", g.name(e.to)}, {"label", g.generators().name(e.label)}}}};
    rep["claims"] = claims_json({{"witness edge ratio = C", witness_ratio, bal.constant, Relation::equal}});
    return;
  }
  // weight partition
  auto parts = even_partition(g, center, cfg.ball_r, w, cfg.parts);
  const Rational limit = Rational(2, cfg.parts) * total_weight(w, ball(g, center, cfg.ball_r));
  Json list = Json::array();
  std::vector<Inequality> claims;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    list.push_back(vertex_list(g, parts[i]));
    claims.push_back({"w(part " + std::to_string(i) + ") < (2/k) w(ball)", total_weight(w, parts[i]), limit,
                      Relation::less});
  }
  rep["result"] = {{"parts", std::move(list)}};
  rep["claims"] = claims_json(claims);
}

void run_compress(const RunConfig& cfg, const LabeledGraph& g, const WeightFunction& w, CommandOutput& out) {
  SolveOptions options;
  options.transport.k = cfg.k;
  options.transport.exact_length = cfg.exact_k;
  options.transport.capacity_fraction = parse_positive_rational(cfg.fraction);
  options.strict = cfg.strict;
  auto outcome = solve_compression(g, w, options);
  Json& rep = out.report;
  if (auto* comp = std::get_if<CompressionOutcome>(&outcome)) {
    Json cert = compression_to_json(g, comp->system);
    if (comp->strict_ratio) cert["strict_ratio"] = to_string(*comp->strict_ratio);
    const Rational& fraction = comp->system.capacity_fraction;
    rep["result"] = std::move(cert);
    rep["claims"] = claims_json({{"max buyer load vs capacity fraction", fraction - comp->check.min_slack, fraction,
                                  cfg.strict && comp->check.strict ? Relation::less : Relation::less_equal}});
    return;
  }
  auto& cut = std::get<CutOutcome>(outcome);
  Json cert = cut_to_json(g, cut.instance.words, cut.instance.capacity_fraction, cut.witness);
  cert["flow_value"] = to_string(cut.flow_value);
  cert["demand"] = to_string(total_weight(w, cut.instance.suppliers));
  if (neighborhood_is_faithful(g, cut.witness.suppliers, cfg.k))
    cert["doubling_ratio"] = to_string(doubling_check(g, w, cut.witness.suppliers, cfg.k).ratio);
  rep["result"] = std::move(cert);
  rep["claims"] = claims_json({{"w(L) > fraction w(K)", cut.witness.lhs, cut.witness.rhs, Relation::greater}});
  out.exit_code = 2;
}

SeparatorBackend backend_for(const RunConfig& cfg) {
  if (cfg.backend == "brute") return brute_backend(cfg.K);
  if (cfg.backend == "asdim") return asdim_backend(CoverFamily{});
  throw ParseError("unknown backend '" + cfg.backend + "' (expected brute or asdim)");
}

void run_separator(const RunConfig& cfg, const LabeledGraph& g, const WeightFunction& w, CommandOutput& out) {
  Json& rep = out.report;
  const Rational eps = parse_positive_rational(cfg.eps);
  if (cfg.command == "sep decompose") {
    auto stages = stages_for(g, cfg.stages);
    auto dec = folner_decomposition(g, w, stages, parse_positive_rational(cfg.delta), backend_for(cfg));
    Json list = Json::array();
    std::vector<Inequality> claims;
    std::string csv = "stage,size,pieces,separator_fraction,boundary_ratio,folner_term,bound\n";
    for (std::size_t i = 0; i < dec.stages.size(); ++i) {
      const auto& st = dec.stages[i];
      list.push_back({{"size", st.stage.size()},
                      {"pieces", st.pieces.size()},
                      {"separator", separator_json(g, st.separator)},
                      {"boundary_ratio", to_string(st.boundary_ratio)},
                      {"folner_term", to_string(st.folner_term)}});
      Inequality q = st.bound;
      q.name = "stage " + std::to_string(i) + ": " + q.name;
      claims.push_back(std::move(q));
      csv += csv_join({std::to_string(i), std::to_string(st.stage.size()), std::to_string(st.pieces.size()),
                       to_string(st.separator.weight_fraction), to_string(st.boundary_ratio), to_string(st.folner_term),
                       to_string(st.bound.rhs)});
    }
    rep["result"] = {{"balance_constant", to_string(dec.balance_constant)},
                     {"generators", dec.generators},
                     {"stages", std::move(list)}};
    rep["claims"] = claims_json(claims);
    if (cfg.format == "csv") out.csv = csv;
    return;
  }
  if (cfg.command == "sep transfer") {
    LabeledGraph g2 = lattice_with_steps(g.family().dim, cfg.target_radius < 0 ? cfg.radius : cfg.target_radius,
                                         cfg.target_steps);
    if (g.family().kind != Family::Kind::lattice) throw PreconditionError("sep transfer maps a lattice window");
    std::vector<VertexId> iota;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      auto z = g2.find(g.name(v));
      if (!z) throw PreconditionError("target window does not contain '" + g.name(v) + "'");
      iota.push_back(*z);
    }
    VertexSet host = set_for(g, cfg.set);
    QIMap qi = make_qi_map(g, g2, iota, cfg.c, g.all_vertices(),
                           neighborhood(g2, VertexSet(std::vector<VertexId>(iota)), 0));
    TransferDetails details;
    SeparatorResult r = qi_transfer(qi, g, g2, host, w, backend_for(cfg), eps, &details);
    Json result = separator_json(g, r);
    result["big_c"] = qi.big_c.get_str();
    result["image_plus_size"] = details.image_plus.size();
    result["backend_removed"] = vertex_list(g2, details.backend_removed);
    result["backend_max_component"] = details.backend_max_component;
    rep["result"] = std::move(result);
    rep["claims"] = claims_json(r.claims);
    return;
  }
  const VertexSet host = set_for(g, cfg.set);
  if (cfg.command == "sep brute") {
    SeparatorResult r = brute_separator(g, host, w, cfg.K);
    rep["result"] = separator_json(g, r);
    rep["claims"] = claims_json(r.claims);
    return;
  }
  if (cfg.command == "sep asdim") {
    CoverFamily cover;
    if (!cfg.cover_path.empty()) {
      cover = cover_from_json(g, read_json_file(cfg.cover_path));
    } else {
      Integer inv_floor = eps.get_den() / eps.get_num();
      cover = asdim_cover(g, 2 * (1 + static_cast<int>(inv_floor.get_si())));
      validate_cover(g, cover);
    }
    AsdimDetails details;
    SeparatorResult r = asdim_separator(g, host, w, eps, cover, &details);
    Json result = separator_json(g, r);
    Json shells = Json::array();
    for (const auto& fam : details.shell_weights) {
      Json row = Json::array();
      for (const auto& x : fam) row.push_back(to_string(x));
      shells.push_back(std::move(row));
    }
    result["cover"] = {{"r", cover.scale}, {"R", cover.diameter_bound}, {"families", cover.families.size()}};
    result["depth"] = details.depth;
    result["shell_weights"] = std::move(shells);
    result["chosen"] = details.chosen;
    result["diameter_bound"] = details.diameter_bound;
    result["size_bound"] = details.size_bound.get_str();
    rep["result"] = std::move(result);
    rep["claims"] = claims_json(r.claims);
    return;
  }
  if (cfg.command == "sep random") {
    FolnerTiling tiling = make_tiling(g, set_for(g, cfg.tile), cfg.n);
    auto run = random_folner_separator(g, host, w, tiling, cfg.seed, cfg.max_trials);
    Json result = separator_json(g, run.result);
    Json trials = Json::array();
    for (const auto& t : run.trials)
      trials.push_back({{"seed", t.seed},
                        {"weight", to_string(t.weight)},
                        {"max_component", t.max_component},
                        {"accepted", t.accepted}});
    result["trials"] = std::move(trials);
    result["threshold"] = to_string(run.threshold);
    result["exp_bound"] = to_string(run.exp_bound);
    result["probability_numerator"] = tiling.probability_numerator.get_str();
    rep["result"] = std::move(result);
    rep["claims"] = claims_json(run.result.claims);
    if (!run.result.accepted) out.exit_code = 2;
    return;
  }
  throw ParseError("unknown command '" + cfg.command + "'");
}

}  // namespace

CommandOutput run_command(const RunConfig& cfg) {
  CommandOutput out;
  if (cfg.format != "json" && cfg.format != "csv") throw ParseError("format must be json or csv");
  if (cfg.command == "graph build") {
    out.report = graph_to_json(graph_for(cfg));
    return out;
  }
  Json& rep = out.report;
  rep["command"] = cfg.command;
  rep["config"] = config_to_json(cfg);
  const LabeledGraph g = graph_for(cfg);
  const std::string& c = cfg.command;
  if (c == "graph check") {
    std::size_t max_degree = 0;
    for (VertexId v = 0; v < g.num_vertices(); ++v) max_degree = std::max(max_degree, g.neighbors(v).size());
    rep["result"] = {{"vertices", g.num_vertices()},
                     {"edges", g.num_edges()},
                     {"interior", g.interior().size()},
                     {"degree_bound", g.degree_bound()}};
    rep["claims"] = claims_json({{"max degree <= degree bound", frac(max_degree), frac(g.degree_bound()),
                                  Relation::less_equal}});
  } else if (starts_with(c, "weight ")) {
    if (c != "weight ball" && c != "weight balance" && c != "weight partition")
      throw ParseError("unknown command '" + c + "'");
    run_weight(cfg, g, out);
  } else {
    const WeightFunction w = weights_for(g, cfg.weights);
    if (c == "folner defect" || c == "folner search") run_folner(cfg, g, w, out);
    else if (c == "mean stage") run_mean(cfg, g, w, out);
    else if (c == "compress solve") run_compress(cfg, g, w, out);
    else if (starts_with(c, "sep ")) run_separator(cfg, g, w, out);
    else throw ParseError("unknown command '" + c + "'");
  }
  rep["status"] = out.exit_code == 0 ? "ok" : "not_found";
  return out;
}

// ---------------------------------------------------------------------------
// Verification

namespace {

std::string first_difference(const Json& stored, const Json& fresh) {
  Json patch = Json::diff(fresh, stored);
  if (patch.empty()) return {};
  return patch[0].value("path", std::string("/"));
}

}  // namespace

VerifyOutcome verify_report(const Json& doc) {
  VerifyOutcome out;
  auto fail = [&](std::string why) {
    out.ok = false;
    out.failure = std::move(why);
    return out;
  };
  try {
    if (!doc.is_object()) return fail("report is not a JSON object");
    if (!doc.contains("command") && doc.contains("generators")) {
      graph_from_json(doc);
      out.ok = true;
      return out;
    }
    const RunConfig cfg = config_from_json(require(doc, "config"));
    if (require_string(doc, "command") != cfg.command) return fail("command does not match the embedded config");

    // Every claim must hold as written.
    const Json& claims = require(doc, "claims");
    if (!claims.is_array()) return fail("'claims' must be a list");
    for (const auto& q : claims) {
      Inequality ineq = inequality_from_json(q);
      if (!ineq.holds()) return fail("claim '" + ineq.name + "' does not hold");
      const Json& holds = require(q, "holds");
      if (!holds.is_boolean() || !holds.get<bool>()) return fail("claim '" + ineq.name + "' is marked as failing");
    }

    // Independent recomputation from the stored objects.
    const LabeledGraph g = graph_for(cfg);
    const Json& result = require(doc, "result");
    if (cfg.command == "compress solve") {
      const WeightFunction w = weights_for(g, cfg.weights);
      if (require_string(result, "kind") == "compression") {
        CompressionSystem cs = compression_from_json(g, result);
        auto check = verify_compression(cs, g, w);
        if (!check.valid) return fail("compression condition: " + check.failure);
      } else {
        CutWitness cut = cut_from_json(g, result);
        std::string why;
        if (!verify_cut(cut, g, w, words_from_json(g, require(result, "T")),
                        require_rational(result, "capacity_fraction"), &why))
          return fail("cut witness: " + why);
      }
    } else if (starts_with(cfg.command, "sep ") && cfg.command != "sep decompose") {
      const WeightFunction w = weights_for(g, cfg.weights);
      SeparatorResult r = separator_from_json(g, result, claims);
      std::string why;
      if (!check_separator(g, w, r, &why)) return fail("separator: " + why);
      if (cfg.command == "sep asdim" && !cfg.cover_path.empty())
        cover_from_json(g, read_json_file(cfg.cover_path));
    }

    // Replay: the same config must give the same report.
    CommandOutput fresh = run_command(cfg);
    if (auto path = first_difference(doc, fresh.report); !path.empty())
      return fail("field " + path + " differs from a fresh run");
  } catch (const Error& e) {
    return fail(e.what());
  } catch (const Json::exception& e) {
    return fail(std::string("malformed report: ") + e.what());
  }
  out.ok = true;
  return out;
}

}  // namespace wamen
