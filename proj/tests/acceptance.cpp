// Acceptance driver: one PASS/FAIL line per criterion, then a summary line.
// The process exits 0 once every criterion has been evaluated; the verdicts
// themselves are in the output.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wamen/compression.hpp"
#include "wamen/error.hpp"
#include "wamen/folner.hpp"
#include "wamen/report.hpp"
#include "wamen/separators.hpp"

using namespace wamen;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

VertexSet box2(const LabeledGraph& g, int x0, int x1, int y0, int y1) {
  std::vector<VertexId> out;
  for (int x = x0; x <= x1; ++x)
    for (int y = y0; y <= y1; ++y) out.push_back(*g.lattice_vertex(std::vector<int>{x, y}));
  return VertexSet(out);
}

VertexSet interval(const LabeledGraph& z, int lo, int hi) {
  std::vector<VertexId> out;
  for (int i = lo; i <= hi; ++i) out.push_back(z.at(std::to_string(i)));
  return VertexSet(out);
}

std::set<VertexId> as_set(const VertexSet& s) { return {s.begin(), s.end()}; }

Rational weight_of(const WeightFunction& w, const std::set<VertexId>& s) {
  Rational t = 0;
  for (VertexId v : s) t += w(v);
  return t;
}

/// Separator facts recomputed without the library's component code.
void check_separator_oracle(Verdict& v, const LabeledGraph& g, const WeightFunction& w, const SeparatorResult& r,
                            const std::string& tag) {
  auto host = as_set(r.host), removed = as_set(r.removed);
  v.expect(oracle::largest(oracle::components(g, host, removed)) == r.max_component, tag + ": max component");
  v.expect(weight_of(w, removed) / weight_of(w, host) == r.weight_fraction, tag + ": weight fraction");
  for (VertexId x : removed) v.expect(host.count(x) > 0, tag + ": removed vertex outside host");
}

// 1. Transport feasibility against Hall enumeration.
Verdict dichotomy_soundness() {
  Verdict v;
  std::mt19937_64 rng(20240601);
  int instances = 0, feasible = 0, infeasible = 0, agree = 0;
  while (instances < 200) {
    const int k = 1 + static_cast<int>(rng() % 2);
    LabeledGraph g = [&]() {
      switch (rng() % 4) {
        case 0: return build_lattice_window(1, k + 1 + static_cast<int>(rng() % 5));
        case 1: return build_lattice_window(2, k + 1);
        case 2: return build_free_window(2, k + static_cast<int>(rng() % 2));
        default: return oracle::random_schreier(rng, 8 + rng() % 10, 1 + static_cast<int>(rng() % 2), 0.85);
      }
    }();
    auto deep = oracle::deep_vertices(g, k);
    if (deep.empty() || deep.size() > 12) continue;
    ++instances;
    const std::string tag = "instance " + std::to_string(instances);
    WeightFunction w = random_weights(g.num_vertices(), rng(), 16, 32);
    TransportOptions opts;
    opts.k = k;
    auto inst = build_transport(g, w, opts);
    v.expect(inst.suppliers == VertexSet(deep), tag + ": supplier set");
    auto flow = max_flow(inst);
    const bool hall = oracle::hall_holds(g, w, deep, k, Rational(1, 2));
    if (flow.feasible == hall) ++agree;
    v.expect(flow.feasible == hall, tag + ": flow and Hall disagree");
    if (flow.feasible) {
      ++feasible;
      v.expect(verify_compression(extract_compression(flow, inst, w), g, w).valid, tag + ": compression rejected");
    } else {
      ++infeasible;
      auto cut = min_cut_witness(inst, flow, g, w);
      v.expect(cut.lhs > cut.rhs, tag + ": cut does not violate Hall");
      v.expect(verify_cut(cut, g, w, inst.words, Rational(1, 2)), tag + ": cut rejected");
      // the witness recomputed from scratch: w(L) > w(N_k(L)) / 2
      std::set<VertexId> nb;
      for (VertexId x : cut.suppliers) {
        auto b = oracle::walk_ball(g, x, k);
        nb.insert(b.begin(), b.end());
      }
      v.expect(weight_of(w, as_set(cut.suppliers)) > weight_of(w, nb) / 2, tag + ": oracle Hall violation");
    }
  }
  v.detail = std::to_string(agree) + "/200 agree with Hall enumeration (" + std::to_string(feasible) + " feasible, " +
             std::to_string(infeasible) + " infeasible)";
  v.expect(feasible > 0 && infeasible > 0, "both outcomes should occur");
  return v;
}

// 2. Compression certificates and cut witnesses through the command layer.
Verdict concrete_groups() {
  Verdict v;
  int reports = 0;
  auto run = [&](RunConfig cfg, int expected_exit, const std::string& tag) {
    cfg.command = "compress solve";
    auto out = run_command(cfg);
    ++reports;
    v.expect(out.exit_code == expected_exit, tag + ": exit code " + std::to_string(out.exit_code));
    auto ver = verify_report(out.report);
    v.expect(ver.ok, tag + ": verify_report: " + ver.failure);
    return out.report;
  };
  for (int r = 4; r <= 6; ++r) {
    RunConfig cfg;
    cfg.family = "free";
    cfg.radius = r;
    auto rep = run(cfg, 0, "F2 radius " + std::to_string(r));
    v.expect(rep["result"]["kind"] == "compression", "F2 radius " + std::to_string(r) + ": not a compression");
  }
  for (int radius : {30, 45}) {
    for (int k = 1; k <= 3; ++k) {
      RunConfig cfg;
      cfg.radius = radius;
      cfg.k = k;
      const std::string tag = "Z radius " + std::to_string(radius) + " k=" + std::to_string(k);
      auto rep = run(cfg, 2, tag);
      v.expect(rep["result"]["kind"] == "cut", tag + ": not a cut");
      // w(B_k L) / w(L) from the witness, with unit weights and walk balls
      LabeledGraph z = build_lattice_window(1, radius);
      std::set<VertexId> l, grown;
      for (const auto& name : rep["result"]["witness"]["L"]) l.insert(z.at(name.get<std::string>()));
      for (VertexId x : l) {
        auto b = oracle::walk_ball(z, x, k);
        grown.insert(b.begin(), b.end());
      }
      Rational ratio = make_rational(static_cast<long>(grown.size()), static_cast<long>(l.size()));
      v.expect(ratio <= 2, tag + ": doubling ratio " + to_string(ratio));
      v.expect(parse_rational(rep["result"]["doubling_ratio"].get<std::string>()) == ratio,
               tag + ": reported doubling ratio");
    }
  }
  RunConfig exp;
  exp.radius = 30;
  exp.weights = "exp2";
  auto rep = run(exp, 0, "Z exp2");
  v.expect(rep["result"]["kind"] == "compression", "Z exp2: not a compression");
  v.detail = std::to_string(reports) + " reports verified";
  return v;
}

// 3. Exact box defects and the F2 ball weight.
Verdict folner_exactness() {
  Verdict v;
  auto z = build_lattice_window(1, 60);
  auto unit = WeightFunction::unit(z);
  auto gens = generator_words(z.generators());
  for (int n = 1; n <= 50; ++n) {
    auto rep = folner_defect(z, unit, interval(z, 0, n - 1), gens);
    v.expect(rep.defect == Rational(1, n), "Z box " + std::to_string(n));
  }
  auto z2 = build_lattice_window(2, 100);
  auto unit2 = WeightFunction::unit(z2);
  auto gens2 = generator_words(z2.generators());
  for (int n = 1; n <= 50; ++n) {
    auto rep = folner_defect(z2, unit2, box2(z2, 0, n - 1, 0, n - 1), gens2);
    for (const auto& r : rep.ratios) v.expect(r - 1 == Rational(1, n), "Z2 box " + std::to_string(n));
  }
  auto f2 = build_free_window(2, 9);
  const VertexId e = f2.at("e");
  auto f2gens = generator_words(f2.generators());
  Rational worst = 0;
  for (int r = 1; r <= 8; ++r) {
    auto w = ball_weight(f2, e, r);
    auto rep = folner_defect(f2, w, ball(f2, e, r), f2gens);
    v.expect(rep.defect <= Rational(3, r + 1), "F2 ball weight r=" + std::to_string(r));
    worst = std::max<Rational>(worst, rep.defect * (r + 1));
    auto bal = balancedness(f2, w);
    v.expect(bal.constant == 4, "F2 balancedness r=" + std::to_string(r) + " is " + to_string(bal.constant));
  }
  v.detail = "boxes n<=50 in d=1,2; F2 ball weights r<=8, max (r+1)*defect = " + to_string(worst);
  return v;
}

// 4. Stage-mean invariance.
Verdict mean_invariance() {
  Verdict v;
  auto z = build_lattice_window(1, 1010);
  auto unit = WeightFunction::unit(z);
  std::vector<VertexId> evens;
  for (VertexId x = 0; x < z.num_vertices(); ++x)
    if (z.coords(x)[0] % 2 == 0) evens.push_back(x);
  const VertexSet a(evens);
  const Word plus = parse_word("+1", z.generators());
  // intervals grow one point at a time
  std::vector<VertexId> stage;
  for (int n = 1; n <= 1000; ++n) {
    stage.push_back(z.at(std::to_string(n - 1)));
    StageMean mean(VertexSet(stage), unit);
    v.expect(invariance_defect(z, mean, a, plus) <= Rational(1, n), "Z n=" + std::to_string(n));
  }
  auto f2 = build_free_window(2, 9);
  const VertexId e = f2.at("e");
  auto words = generator_words(f2.generators());
  Rational previous = -1;
  std::string series;
  for (int r = 1; r <= 8; ++r) {
    auto w = ball_weight(f2, e, r);
    StageMean mean(ball(f2, e, r), w);
    Rational d = 0;
    for (const auto& g : words) d = std::max(d, uniform_invariance_defect(f2, mean, g));
    if (previous >= 0) v.expect(d <= previous, "F2 defect increases at r=" + std::to_string(r));
    previous = d;
    series += (r > 1 ? " " : "") + to_string(d);
  }
  v.detail = "Z n<=1000; F2 ball-weight defects " + series;
  return v;
}

// 5. Shell separator on lattice boxes.
Verdict asdim_bounds() {
  Verdict v;
  auto z2 = build_lattice_window(2, 52);
  const std::vector<Rational> epsilons{Rational(1, 2), Rational(1, 4), Rational(1, 8)};
  std::map<std::string, CoverFamily> covers;
  int runs = 0;
  Rational worst = 0;
  for (int i = 0; i < 50; ++i) {
    const int side = 10 * (1 + i % 4);
    auto host = box2(z2, -side / 2, side / 2 - 1, -side / 2, side / 2 - 1);
    auto w = random_weights(z2.num_vertices(), 1000 + i);
    const Rational hw = total_weight(w, host);
    for (const auto& eps : epsilons) {
      Integer inv = eps.get_den() / eps.get_num();
      const int depth = 1 + static_cast<int>(inv.get_si());
      auto& cover = covers[to_string(eps)];
      if (cover.families.empty()) {
        cover = asdim_cover(z2, 2 * depth);
        validate_cover(z2, cover);
      }
      AsdimDetails details;
      auto r = asdim_separator(z2, host, w, eps, cover, &details);
      ++runs;
      const std::string tag = "side " + std::to_string(side) + " eps " + to_string(eps);
      check_separator_oracle(v, z2, w, r, tag);
      const Rational mw = weight_of(w, as_set(r.removed));
      v.expect(mw <= 4 * eps * hw, tag + ": w(S) > 4 eps w(H)");
      worst = std::max<Rational>(worst, mw / (eps * hw));
      // shells from a plain BFS over each family, at every depth
      auto adj = oracle::adjacency(z2);
      std::set<VertexId> expected_removed;
      for (std::size_t f = 0; f < cover.families.size(); ++f) {
        std::vector<int> dist(z2.num_vertices(), -1);
        std::vector<VertexId> frontier;
        for (const auto& piece : cover.families[f])
          for (VertexId x : piece) {
            dist[x] = 0;
            frontier.push_back(x);
          }
        std::vector<std::set<VertexId>> shells(depth);
        for (int t = 1; t <= depth; ++t) {
          std::vector<VertexId> next;
          for (VertexId x : frontier)
            for (VertexId y : adj[x])
              if (dist[y] < 0) {
                dist[y] = t;
                next.push_back(y);
                shells[t - 1].insert(y);
              }
          frontier = std::move(next);
        }
        std::set<VertexId> seen;
        for (int t = 0; t < depth; ++t) {
          for (VertexId x : shells[t]) v.expect(seen.insert(x).second, tag + ": shells overlap");
          std::set<VertexId> in_host;
          for (VertexId x : shells[t])
            if (host.contains(x)) in_host.insert(x);
          v.expect(weight_of(w, in_host) == details.shell_weights[f][t], tag + ": shell weight");
        }
        for (VertexId x : shells[details.chosen[f] - 1])
          if (host.contains(x)) expected_removed.insert(x);
      }
      v.expect(expected_removed == as_set(r.removed), tag + ": separator is not the union of chosen shells");
      v.expect(Integer(r.max_component) <= details.size_bound, tag + ": component above size bound");
    }
  }
  v.detail = std::to_string(runs) + " runs, max w(S)/(eps w(H)) = " + to_string(worst) + " (limit 4)";
  return v;
}

// 6. Random Følner tiling separator.
Verdict random_tiling() {
  Verdict v;
  auto z2 = build_lattice_window(2, 70);
  auto host = box2(z2, -20, 19, -20, 19);
  auto tile = box2(z2, 0, 9, 0, 9);
  std::string why_not_enforced;
  try {
    make_tiling(z2, tile, 10);
  } catch (const PreconditionError& e) {
    why_not_enforced = e.what();
  }
  auto tiling = make_tiling(z2, tile, 10, false);
  int accepted_runs = 0;
  std::size_t trials = 0, worst_component = 0;
  Rational lightest = -1;
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    auto w = rep % 2 ? random_weights(z2.num_vertices(), 5000 + rep) : WeightFunction::unit(z2);
    auto run = random_folner_separator(z2, host, w, tiling, rep, 20);
    trials += run.trials.size();
    if (run.result.accepted) ++accepted_runs;
    for (const auto& t : run.trials) {
      worst_component = std::max(worst_component, t.max_component);
      v.expect(t.max_component <= 100, "repetition " + std::to_string(rep) + ": component above 100");
    }
    check_separator_oracle(v, z2, w, run.result, "repetition " + std::to_string(rep));
    const Rational share = run.result.weight_fraction * total_weight(w, host) / run.threshold;
    if (lightest < 0 || share < lightest) lightest = share;
  }
  v.expect(accepted_runs >= 95, "accepted within 20 trials in only " + std::to_string(accepted_runs) + "/100");
  std::ostringstream d;
  d << accepted_runs << "/100 repetitions accepted (" << trials << " trials), max component " << worst_component
    << ", lightest trial at " << lightest.get_d() << "x threshold";
  if (!why_not_enforced.empty()) d << "; tile precondition: " << why_not_enforced;
  v.detail = d.str();
  return v;
}

// 7. Quasi-isometry transfer Z(±1) -> Z(±1,±2).
Verdict qi_transfer_check() {
  Verdict v;
  auto g1 = build_lattice_window(1, 12);
  Family steps;
  steps.kind = Family::Kind::lattice;
  steps.dim = 1;
  steps.steps = {{1}, {2}};
  auto g2 = build_cayley_window(steps, 10);
  std::vector<VertexId> iota;
  for (VertexId x = 0; x < g1.num_vertices(); ++x) iota.push_back(g2.at(g1.name(x)));
  auto qi = make_qi_map(g1, g2, iota, 2, g1.all_vertices(), VertexSet(iota));
  const Rational big_c(qi.big_c);
  const Rational eps(1, 2);
  const std::size_t K = 3;
  auto h1 = interval(g1, -1, 2);
  Rational worst = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const std::string tag = "instance " + std::to_string(i);
    auto w = random_weights(g1.num_vertices(), 7000 + i);
    TransferDetails details;
    auto r = qi_transfer(qi, g1, g2, h1, w, brute_backend(K), eps, &details);
    v.expect(details.image_plus.size() <= 20, tag + ": target host above 20");
    check_separator_oracle(v, g1, w, r, tag);
    for (const auto& q : r.claims) v.expect(q.holds(), tag + ": " + q.name);
    const Rational mw = weight_of(w, as_set(r.removed)), hw = weight_of(w, as_set(h1));
    v.expect(mw <= big_c * big_c * big_c * eps * hw, tag + ": w(M) bound");
    v.expect(Rational(static_cast<unsigned long>(r.max_component)) <= big_c * Rational(static_cast<unsigned long>(K)),
             tag + ": component bound");
    worst = std::max<Rational>(worst, mw / hw);
    // cross-tabulate components of H1 \ M against components of H2+ \ S
    auto down = oracle::components(g1, as_set(h1), as_set(r.removed));
    auto up = oracle::components(g2, as_set(details.image_plus), as_set(details.backend_removed));
    std::map<VertexId, std::size_t> up_label;
    for (std::size_t j = 0; j < up.size(); ++j)
      for (VertexId z : up[j]) up_label[z] = j;
    std::map<std::size_t, std::size_t> owner;  // target component -> source component
    for (std::size_t j = 0; j < down.size(); ++j) {
      std::set<std::size_t> hit;
      for (VertexId x : down[j]) {
        auto it = up_label.find(qi.iota[x]);
        v.expect(it != up_label.end(), tag + ": image of a kept vertex was removed");
        if (it != up_label.end()) hit.insert(it->second);
      }
      v.expect(hit.size() <= 1, tag + ": a component spreads over several target components");
      for (std::size_t t : hit) v.expect(owner.emplace(t, j).second || owner[t] == j, tag + ": cross-tab clash");
    }
    v.expect(details.claim_holds, tag + ": reported claim");
  }
  v.detail = "50 instances, C = " + qi.big_c.get_str() + ", max w(M)/w(H1) = " + to_string(worst);
  return v;
}

// 8. Decomposition of lattice box stages.
Verdict decomposition() {
  Verdict v;
  auto z2 = build_lattice_window(2, 125);
  // Every vertex of the stage boundary is on the T-boundary, so the ratio is
  // at least the box term 4(n-1)/n^2; at n = 8 that is 7/16 > 4/10 and no
  // decomposition can meet the delta = 1/10 bound. Start the tail at 16.
  std::vector<VertexSet> stages;
  for (int n : {16, 24, 32, 40}) stages.push_back(box2(z2, -n / 2, n / 2 - 1, -n / 2, n / 2 - 1));
  auto small = box2(z2, -4, 3, -4, 3);
  const Rational small_term = total_weight(WeightFunction::unit(z2), boundary(z2, small)) / 64;
  auto adj = oracle::adjacency(z2);
  std::vector<std::pair<std::string, WeightFunction>> weights{{"unit", WeightFunction::unit(z2)},
                                                              {"exp2", exponential_weights(z2, 0, 2)}};
  std::string ratios;
  int checked = 0;
  for (const auto& delta : {Rational(1, 4), Rational(1, 10)}) {
    for (const auto& [name, w] : weights) {
      auto dec = folner_decomposition(z2, w, stages, delta, asdim_backend(CoverFamily{}));
      const Rational bound = dec.balance_constant * Rational(static_cast<unsigned long>(dec.generators)) * delta;
      for (std::size_t i = 0; i < dec.stages.size(); ++i) {
        const auto& st = dec.stages[i];
        const std::string tag = name + " delta " + to_string(delta) + " stage " + std::to_string(i);
        // T-boundary recomputed from oracle components
        auto removed = as_set(st.separator.removed);
        auto pieces = oracle::components(z2, as_set(st.stage), removed);
        std::map<VertexId, std::size_t> label;
        for (std::size_t p = 0; p < pieces.size(); ++p)
          for (VertexId x : pieces[p]) label[x] = p;
        auto piece_of = [&](VertexId x) -> long {
          auto it = label.find(x);
          return it == label.end() ? -1 - static_cast<long>(x) : static_cast<long>(it->second);
        };
        Rational on_boundary = 0;
        for (VertexId x : st.stage)
          for (VertexId y : adj[x])
            if (piece_of(x) != piece_of(y)) {
              on_boundary += w(x);
              break;
            }
        const Rational ratio = on_boundary / total_weight(w, st.stage);
        v.expect(ratio == st.boundary_ratio, tag + ": boundary ratio differs from recomputation");
        v.expect(ratio <= bound, tag + ": " + to_string(ratio) + " > " + to_string(bound));
        ++checked;
        if (name == "unit") ratios += (ratios.empty() ? "" : " ") + to_string(ratio);
      }
    }
  }
  v.detail = std::to_string(checked) + " stages, boxes 16..40; unit-weight ratios " + ratios +
             "; 8x8 box term " + to_string(small_term) + " exceeds the delta 1/10 bound";
  return v;
}

// 9. Determinism and self-verification.
Verdict determinism() {
  Verdict v;
  auto cfg = [](std::string command, std::function<void(RunConfig&)> tweak) {
    RunConfig c;
    c.command = std::move(command);
    tweak(c);
    return c;
  };
  const std::vector<RunConfig> configs{
      cfg("compress solve", [](RunConfig& c) { c.family = "free"; c.radius = 3; }),
      cfg("compress solve", [](RunConfig& c) { c.radius = 30; }),
      cfg("sep brute", [](RunConfig& c) { c.radius = 5; c.set = "box:-3..3"; c.K = 2; c.weights = "random:3"; }),
      cfg("sep asdim", [](RunConfig& c) { c.dim = 2; c.radius = 30; c.set = "box:0..9,0..9"; c.eps = "1/2"; c.weights = "random:4"; }),
      cfg("sep random", [](RunConfig& c) { c.radius = 100; c.set = "box:-60..59"; c.tile = "box:0..29"; c.n = 3; c.seed = 9; c.weights = "random:5"; }),
      cfg("sep transfer", [](RunConfig& c) { c.radius = 12; c.target_radius = 10; c.set = "box:-1..2"; c.K = 3; c.eps = "1/2"; c.weights = "random:6"; }),
      cfg("sep decompose", [](RunConfig& c) { c.dim = 2; c.radius = 60; c.stages = "boxes:8,16"; c.backend = "asdim"; c.delta = "1/4"; }),
      cfg("folner defect", [](RunConfig& c) { c.radius = 20; c.set = "box:5"; c.weights = "exp2"; }),
      cfg("mean stage", [](RunConfig& c) { c.radius = 20; c.set = "box:5"; c.subset = "even"; }),
      cfg("weight ball", [](RunConfig& c) { c.family = "free"; c.radius = 3; c.ball_r = 2; }),
  };
  std::vector<Json> reports;
  for (const auto& c : configs) {
    auto first = run_command(c).report.dump(2);
    auto second = run_command(c).report.dump(2);
    v.expect(first == second, c.command + ": reports differ between runs");
    Json doc = Json::parse(first);
    auto ver = verify_report(doc);
    v.expect(ver.ok, c.command + ": verify_report rejected: " + ver.failure);
    reports.push_back(std::move(doc));
  }

  using Mutation = std::pair<std::size_t, std::function<void(Json&)>>;
  const std::vector<Mutation> mutations{
      {0, [](Json& d) { d["result"]["psi"].begin().value() = "1/3"; }},
      {0, [](Json& d) { d["result"]["T"].erase(d["result"]["T"].size() - 1); }},
      {0, [](Json& d) { d["result"]["capacity_fraction"] = "1/3"; }},
      {0, [](Json& d) { d["claims"][0]["lhs"] = "1/4"; }},
      {1, [](Json& d) { d["result"]["witness"]["lhs"] = "60"; }},
      {1, [](Json& d) { d["result"]["witness"]["L"].erase(0); }},
      {1, [](Json& d) { d["result"]["doubling_ratio"] = "1"; }},
      {1, [](Json& d) { d["status"] = "ok"; }},
      {2, [](Json& d) { d["result"]["removed"].erase(0); }},
      {2, [](Json& d) { d["result"]["max_component"] = 1; }},
      {2, [](Json& d) { d["result"]["weight_fraction"] = "0"; }},
      {2, [](Json& d) { d["config"]["K"] = 3; }},
      {3, [](Json& d) { d["result"]["chosen"][0] = d["result"]["chosen"][0].get<int>() % 3 + 1; }},
      {3, [](Json& d) { d["result"]["shell_weights"][0][0] = "1"; }},
      {3, [](Json& d) { d["config"]["eps"] = "1/4"; }},
      {4, [](Json& d) { d["result"]["trials"][0]["weight"] = "1"; }},
      {4, [](Json& d) { d["config"]["seed"] = 10; }},
      {5, [](Json& d) { d["result"]["big_c"] = "1000"; }},
      {6, [](Json& d) { d["result"]["stages"][0]["boundary_ratio"] = "1/16"; }},
      {7, [](Json& d) { d["result"]["stages"][0]["defect"] = "1/6"; }},
  };
  int rejected = 0;
  for (std::size_t i = 0; i < mutations.size(); ++i) {
    Json doc = reports[mutations[i].first];
    mutations[i].second(doc);
    bool ok = true;
    try {
      ok = verify_report(doc).ok;
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) ++rejected;
    v.expect(!ok, "mutation " + std::to_string(i) + " was accepted");
  }
  v.detail = std::to_string(configs.size()) + " reports byte-identical and verified; " + std::to_string(rejected) +
             "/" + std::to_string(mutations.size()) + " mutations rejected";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"dichotomy soundness", dichotomy_soundness},
      {"compression on concrete groups", concrete_groups},
      {"Følner exactness", folner_exactness},
      {"mean invariance defect", mean_invariance},
      {"asdim separator", asdim_bounds},
      {"randomized separator", random_tiling},
      {"quasi-isometry transfer", qi_transfer_check},
      {"decomposition", decomposition},
      {"determinism and self-verification", determinism},
  };
  int passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (v.pass) ++passed;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1fs", secs);
    std::cout << (v.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << v.detail << " ("
              << timing << ")\n";
    for (const auto& f : v.failures) std::cout << "     - " << f << "\n";
    std::cout.flush();
  }
  std::cout << "acceptance: " << criteria.size() << " criteria evaluated, " << passed << " passed\n";
  return 0;
}
