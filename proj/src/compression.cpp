#include "wamen/compression.hpp"

#include <algorithm>

#include "wamen/error.hpp"
#include "wamen/max_flow.hpp"

namespace wamen {

VertexSet transport_suppliers(const LabeledGraph& g, int k) {
  if (k < 0) throw PreconditionError("k must be non-negative");
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (neighborhood_is_faithful(g, VertexSet::from_sorted({v}), k)) out.push_back(v);
  return VertexSet::from_sorted(std::move(out));
}

TransportInstance build_transport(const LabeledGraph& g, const WeightFunction& w, const TransportOptions& options) {
  if (sgn(options.capacity_fraction) <= 0) throw PreconditionError("capacity fraction must be positive");
  TransportInstance inst;
  inst.k = options.k;
  inst.exact_length = options.exact_length;
  inst.capacity_fraction = options.capacity_fraction;
  inst.words = words_up_to(g, options.k, options.exact_length);
  inst.suppliers = transport_suppliers(g, options.k);
  if (inst.suppliers.empty()) throw PreconditionError("no supplier: the window has no vertex at depth k");

  std::vector<VertexId> buyers;
  for (VertexId x : inst.suppliers) {
    std::vector<std::pair<std::size_t, VertexId>> row;
    for (std::size_t i = 0; i < inst.words.size(); ++i) {
      auto y = apply_word(g, inst.words[i], x);
      if (!y) throw InvariantError("word undefined on a depth-k supplier");
      row.emplace_back(i, *y);
    }
    for (auto [i, y] : row) {
      inst.edges.push_back({x, y, i});
      buyers.push_back(y);
    }
    inst.supply.push_back(w(x));
  }
  inst.buyers = VertexSet(std::move(buyers));
  for (VertexId y : inst.buyers) inst.capacity.push_back(options.capacity_fraction * w(y));
  return inst;
}

namespace {

Integer lcm_of_denominators(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Integer l = 1;
  for (const auto* list : {&a, &b})
    for (const Rational& q : *list) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

Integer scaled(const Rational& q, const Integer& scale) {
  Integer out = scale;
  out *= q.get_num();
  out /= q.get_den();
  return out;
}

std::size_t buyer_index(const VertexSet& buyers, VertexId y) {
  return static_cast<std::size_t>(std::lower_bound(buyers.begin(), buyers.end(), y) - buyers.begin());
}

struct SolvedNetwork {
  FlowNetwork net;
  std::vector<std::size_t> edge_arcs;
  std::size_t source;
};

}  // namespace

FlowAssignment max_flow(const TransportInstance& inst) {
  const Integer scale = lcm_of_denominators(inst.supply, inst.capacity);
  const std::size_t ns = inst.suppliers.size();
  const std::size_t nb = inst.buyers.size();
  const std::size_t source = ns + nb;
  const std::size_t sink = source + 1;
  FlowNetwork net(sink + 1);

  Integer demand = 0;
  for (std::size_t i = 0; i < ns; ++i) {
    Integer s = scaled(inst.supply[i], scale);
    demand += s;
    net.add_arc(source, i, s);
  }
  std::vector<std::size_t> edge_arcs;
  edge_arcs.reserve(inst.edges.size());
  for (const auto& e : inst.edges) {
    std::size_t si = static_cast<std::size_t>(
        std::lower_bound(inst.suppliers.begin(), inst.suppliers.end(), e.supplier) - inst.suppliers.begin());
    edge_arcs.push_back(net.add_arc(si, ns + buyer_index(inst.buyers, e.buyer), demand));
  }
  for (std::size_t j = 0; j < nb; ++j) net.add_arc(ns + j, sink, scaled(inst.capacity[j], scale));

  Integer value = net.solve(source, sink);

  FlowAssignment out;
  out.flow.reserve(edge_arcs.size());
  for (std::size_t a : edge_arcs) {
    Rational q(net.flow(a), scale);
    q.canonicalize();
    out.flow.push_back(std::move(q));
  }
  out.value = Rational(value, scale);
  out.value.canonicalize();
  out.demand = Rational(demand, scale);
  out.demand.canonicalize();
  out.feasible = value == demand;
  return out;
}

CompressionSystem extract_compression(const FlowAssignment& flow, const TransportInstance& inst,
                                      const WeightFunction& w) {
  if (!flow.feasible) throw InfeasibleError("flow does not saturate the supplies; no compression system");
  CompressionSystem cs;
  cs.words = inst.words;
  cs.suppliers = inst.suppliers;
  cs.capacity_fraction = inst.capacity_fraction;
  for (std::size_t i = 0; i < inst.edges.size(); ++i) {
    if (sgn(flow.flow[i]) == 0) continue;
    const auto& e = inst.edges[i];
    Rational& slot = cs.psi[{e.word, e.supplier}];
    slot += flow.flow[i] / w(e.supplier);
  }
  return cs;
}

CompressionCheck verify_compression(const CompressionSystem& cs, const LabeledGraph& g, const WeightFunction& w) {
  CompressionCheck check;
  const std::size_t n = g.num_vertices();
  std::vector<Rational> row_sum(n);
  std::vector<Rational> load(n);  // Σ Ψ_g(x) w(x) shipped into each vertex
  std::vector<char> receives(n, 0);
  std::vector<char> is_supplier = cs.suppliers.mask(n);

  auto fail = [&](std::string why) {
    check.valid = false;
    check.strict = false;
    check.failure = std::move(why);
    return check;
  };

  for (const auto& [key, value] : cs.psi) {
    const auto [word_index, x] = key;
    if (word_index >= cs.words.size()) return fail("psi refers to an unknown word");
    if (x >= n || !is_supplier[x]) return fail("psi defined at non-supplier vertex");
    if (sgn(value) < 0 || value > 1)
      return fail("psi_" + format_word(cs.words[word_index], g.generators()) + "(" + g.name(x) + ") outside [0,1]");
    auto y = apply_word(g, cs.words[word_index], x);
    if (!y) return fail("word " + format_word(cs.words[word_index], g.generators()) + " undefined at " + g.name(x));
    row_sum[x] += value;
    load[*y] += value * w(x);
    receives[*y] = 1;
  }
  for (VertexId x : cs.suppliers)
    if (row_sum[x] != 1) return fail("sum of psi at " + g.name(x) + " is " + to_string(row_sum[x]) + ", not 1");

  bool first = true;
  check.strict = true;
  for (VertexId y = 0; y < n; ++y) {
    if (!receives[y]) continue;
    Rational relative = load[y] / w(y);
    Rational slack = cs.capacity_fraction - relative;
    if (first || slack < check.min_slack) {
      check.min_slack = slack;
      check.tightest = y;
      first = false;
    }
    if (sgn(slack) < 0) {
      check.failure = "load at " + g.name(y) + " is " + to_string(relative) + " > " + to_string(cs.capacity_fraction);
      check.valid = false;
      check.strict = false;
      return check;
    }
    if (sgn(slack) == 0) check.strict = false;
  }
  if (first) check.min_slack = cs.capacity_fraction;
  check.valid = true;
  return check;
}

VertexSet transport_neighbors(const LabeledGraph& g, const std::vector<Word>& words, const VertexSet& suppliers) {
  std::vector<VertexId> out;
  for (VertexId x : suppliers)
    for (const Word& word : words) {
      auto y = apply_word(g, word, x);
      if (!y) throw PreconditionError("word undefined at supplier '" + g.name(x) + "'");
      out.push_back(*y);
    }
  return VertexSet(std::move(out));
}

CutWitness min_cut_witness(const TransportInstance& inst, const FlowAssignment& flow, const LabeledGraph& g,
                           const WeightFunction& w) {
  if (flow.feasible) throw PreconditionError("min cut witness requested on a feasible instance");
  // Residual reachability from the source, recomputed from the edge flows.
  const std::size_t ns = inst.suppliers.size();
  std::vector<Rational> shipped(ns);
  std::vector<Rational> received(inst.buyers.size());
  std::vector<std::vector<std::size_t>> by_supplier(ns), by_buyer(inst.buyers.size());
  for (std::size_t i = 0; i < inst.edges.size(); ++i) {
    const auto& e = inst.edges[i];
    std::size_t si = static_cast<std::size_t>(
        std::lower_bound(inst.suppliers.begin(), inst.suppliers.end(), e.supplier) - inst.suppliers.begin());
    std::size_t bj = buyer_index(inst.buyers, e.buyer);
    shipped[si] += flow.flow[i];
    received[bj] += flow.flow[i];
    by_supplier[si].push_back(i);
    by_buyer[bj].push_back(i);
  }
  std::vector<char> sup_seen(ns, 0), buy_seen(inst.buyers.size(), 0);
  std::vector<std::size_t> sup_queue, buy_queue;
  for (std::size_t i = 0; i < ns; ++i)
    if (shipped[i] < inst.supply[i]) {
      sup_seen[i] = 1;
      sup_queue.push_back(i);
    }
  while (!sup_queue.empty() || !buy_queue.empty()) {
    while (!sup_queue.empty()) {
      std::size_t si = sup_queue.back();
      sup_queue.pop_back();
      for (std::size_t e : by_supplier[si]) {
        std::size_t bj = buyer_index(inst.buyers, inst.edges[e].buyer);
        if (!buy_seen[bj]) {
          buy_seen[bj] = 1;
          buy_queue.push_back(bj);
        }
      }
    }
    while (!buy_queue.empty()) {
      std::size_t bj = buy_queue.back();
      buy_queue.pop_back();
      for (std::size_t e : by_buyer[bj]) {
        if (sgn(flow.flow[e]) <= 0) continue;
        std::size_t si = static_cast<std::size_t>(
            std::lower_bound(inst.suppliers.begin(), inst.suppliers.end(), inst.edges[e].supplier) -
            inst.suppliers.begin());
        if (!sup_seen[si]) {
          sup_seen[si] = 1;
          sup_queue.push_back(si);
        }
      }
    }
  }

  CutWitness cut;
  std::vector<VertexId> l;
  for (std::size_t i = 0; i < ns; ++i)
    if (sup_seen[i]) l.push_back(inst.suppliers[i]);
  cut.suppliers = VertexSet::from_sorted(std::move(l));
  cut.buyers = transport_neighbors(g, inst.words, cut.suppliers);
  cut.lhs = total_weight(w, cut.suppliers);
  cut.rhs = inst.capacity_fraction * total_weight(w, cut.buyers);
  for (VertexId y : cut.buyers)
    if (!g.is_interior(y)) cut.touches_rim = true;
  if (!(cut.lhs > cut.rhs)) throw InvariantError("residual cut does not violate the Hall condition");
  return cut;
}

bool verify_cut(const CutWitness& cut, const LabeledGraph& g, const WeightFunction& w, const std::vector<Word>& words,
                const Rational& fraction, std::string* failure) {
  auto fail = [&](std::string why) {
    if (failure) *failure = std::move(why);
    return false;
  };
  if (cut.suppliers.empty()) return fail("empty witness set");
  const int k = words.empty() ? 0 : static_cast<int>(std::max_element(words.begin(), words.end())->length());
  for (VertexId x : cut.suppliers)
    if (!neighborhood_is_faithful(g, VertexSet::from_sorted({x}), k))
      return fail("witness vertex " + g.name(x) + " is not a depth-k supplier");
  VertexSet k_set = transport_neighbors(g, words, cut.suppliers);
  if (k_set != cut.buyers) return fail("K is not the neighborhood of L");
  Rational lhs = total_weight(w, cut.suppliers);
  Rational rhs = fraction * total_weight(w, k_set);
  if (lhs != cut.lhs) return fail("lhs does not equal w(L)");
  if (rhs != cut.rhs) return fail("rhs does not equal fraction * w(K)");
  if (!(lhs > rhs)) return fail("w(L) does not exceed fraction * w(K)");
  return true;
}

DoublingResult doubling_check(const LabeledGraph& g, const WeightFunction& w, const VertexSet& set, int k) {
  if (set.empty()) throw PreconditionError("doubling check of an empty set");
  if (!neighborhood_is_faithful(g, set, k)) throw PreconditionError("k-neighborhood leaves the window");
  DoublingResult out;
  out.ratio = total_weight(w, neighborhood(g, set, k)) / total_weight(w, set);
  out.holds = out.ratio > 2;
  return out;
}

std::variant<CompressionOutcome, CutOutcome> solve_compression(const LabeledGraph& g, const WeightFunction& w,
                                                                const SolveOptions& options) {
  TransportInstance inst = build_transport(g, w, options.transport);
  FlowAssignment flow = max_flow(inst);
  if (!flow.feasible) {
    CutOutcome cut{inst, min_cut_witness(inst, flow, g, w), flow.value};
    return cut;
  }
  CompressionOutcome out;
  out.system = extract_compression(flow, inst, w);
  out.check = verify_compression(out.system, g, w);
  out.instance = std::move(inst);
  if (!out.check.valid) throw InvariantError("solver produced an invalid compression system: " + out.check.failure);

  if (options.strict && !out.check.strict) {
    for (int j = 0; j < options.strict_steps; ++j) {
      Rational rho = 2 + Rational(2) / Rational(Integer(1) << j);
      rho.canonicalize();
      Rational factor = (rho / 2 + 1) / 2;
      TransportOptions scaled_opts = options.transport;
      scaled_opts.capacity_fraction = options.transport.capacity_fraction / factor;
      TransportInstance tight = build_transport(g, w, scaled_opts);
      FlowAssignment tight_flow = max_flow(tight);
      if (!tight_flow.feasible) continue;
      CompressionSystem cs = extract_compression(tight_flow, tight, w);
      cs.capacity_fraction = options.transport.capacity_fraction;
      CompressionCheck check = verify_compression(cs, g, w);
      if (check.valid && check.strict) {
        tight.capacity_fraction = options.transport.capacity_fraction;
        tight.capacity.clear();
        for (VertexId y : tight.buyers) tight.capacity.push_back(tight.capacity_fraction * w(y));
        out.instance = std::move(tight);
        out.system = std::move(cs);
        out.check = std::move(check);
        out.strict_ratio = rho;
        break;
      }
    }
  }
  return out;
}

MeanPairing pair_with_stage(const CompressionSystem& cs, const LabeledGraph& g, const WeightFunction& w,
                            const VertexSet& stage) {
  if (stage.empty()) throw PreconditionError("empty stage");
  if (!is_subset(stage, cs.suppliers)) throw PreconditionError("stage must lie inside the supplier set");
  const Rational stage_weight = total_weight(w, stage);
  std::vector<char> in_stage = stage.mask(g.num_vertices());
  Rational total = 0, pulled = 0;
  for (const auto& [key, value] : cs.psi) {
    const auto [word_index, x] = key;
    VertexId y = *apply_word(g, cs.words[word_index], x);
    Rational mass = value * w(x);
    if (in_stage[x]) total += mass;
    if (in_stage[y]) pulled += mass;
  }
  Rational edge_weight = 0;
  for (VertexId x : stage) {
    for (const Word& word : cs.words) {
      auto y = apply_word(g, word, x);
      if (!y || !in_stage[*y]) {
        edge_weight += w(x);
        break;
      }
    }
  }
  return {total / stage_weight, pulled / stage_weight, edge_weight / stage_weight};
}

}  // namespace wamen
