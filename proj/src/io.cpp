#include "wamen/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "wamen/error.hpp"

namespace wamen {

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

const Json& require(const Json& doc, const std::string& key) {
  if (!doc.is_object()) throw ParseError("expected an object holding '" + key + "'");
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError("missing field '" + key + "'");
  return *it;
}

std::string require_string(const Json& doc, const std::string& key) {
  const Json& v = require(doc, key);
  if (!v.is_string()) throw ParseError("field '" + key + "' must be a string");
  return v.get<std::string>();
}

namespace {

Rational rational_value(const Json& v, const std::string& what) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw ParseError(what + " must be a fraction string");
}

int int_value(const Json& doc, const std::string& key) {
  const Json& v = require(doc, key);
  if (!v.is_number_integer()) throw ParseError("field '" + key + "' must be an integer");
  return v.get<int>();
}

VertexId vertex_value(const LabeledGraph& g, const Json& v) {
  if (!v.is_string()) throw ParseError("vertex ids must be strings");
  auto id = g.find(v.get<std::string>());
  if (!id) throw InvariantError("unknown vertex id '" + v.get<std::string>() + "'");
  return *id;
}

}  // namespace

Rational require_rational(const Json& doc, const std::string& key) {
  return rational_value(require(doc, key), "field '" + key + "'");
}

Json vertex_list(const LabeledGraph& g, const VertexSet& set) {
  Json out = Json::array();
  for (VertexId v : set) out.push_back(g.name(v));
  return out;
}

VertexSet vertex_set_from_json(const LabeledGraph& g, const Json& list) {
  if (!list.is_array()) throw ParseError("expected a list of vertex ids");
  std::vector<VertexId> ids;
  for (const auto& v : list) ids.push_back(vertex_value(g, v));
  std::size_t before = ids.size();
  VertexSet out(std::move(ids));
  if (out.size() != before) throw InvariantError("vertex list contains duplicates");
  return out;
}

// ---------------------------------------------------------------------------
// Graphs

Json graph_to_json(const LabeledGraph& g) {
  Json doc;
  Json gens = Json::array();
  const auto& s = g.generators();
  for (Label l = 0; l < s.size(); ++l) gens.push_back({{"label", s.name(l)}, {"inverse", s.name(s.inverse(l))}});
  doc["generators"] = std::move(gens);
  Json vertices = Json::array();
  for (VertexId v = 0; v < g.num_vertices(); ++v) vertices.push_back(g.name(v));
  doc["vertices"] = std::move(vertices);
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back({{"from", g.name(e.from)}, {"to", g.name(e.to)}, {"label", s.name(e.label)}});
  doc["edges"] = std::move(edges);
  doc["interior"] = vertex_list(g, g.interior());
  const Family& f = g.family();
  if (f.kind != Family::Kind::custom) {
    Json fam{{"kind", to_string(f.kind)}, {"radius", f.radius}};
    if (f.kind == Family::Kind::lattice) {
      fam["dim"] = f.dim;
      fam["steps"] = f.steps;
    } else {
      fam["rank"] = f.rank;
    }
    doc["family"] = std::move(fam);
  }
  return doc;
}

LabeledGraph graph_from_json(const Json& doc) {
  try {
    const Json& gens_doc = require(doc, "generators");
    if (!gens_doc.is_array()) throw ParseError("'generators' must be a list");
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& p : gens_doc) pairs.emplace_back(require_string(p, "label"), require_string(p, "inverse"));
    GeneratorSet gens = GeneratorSet::from_pairs(pairs);

    const Json& vertex_doc = require(doc, "vertices");
    if (!vertex_doc.is_array()) throw ParseError("'vertices' must be a list");
    std::vector<std::string> names;
    std::map<std::string, VertexId> index;
    for (const auto& v : vertex_doc) {
      if (!v.is_string()) throw ParseError("vertex ids must be strings");
      if (!index.emplace(v.get<std::string>(), static_cast<VertexId>(names.size())).second)
        throw InvariantError("duplicate vertex id '" + v.get<std::string>() + "'");
      names.push_back(v.get<std::string>());
    }
    auto lookup = [&](const std::string& name) {
      auto it = index.find(name);
      if (it == index.end()) throw InvariantError("edge refers to unknown vertex id '" + name + "'");
      return it->second;
    };

    const std::size_t k = gens.size();
    std::vector<VertexId> action(names.size() * k, kNoVertex);
    const Json& edge_doc = require(doc, "edges");
    if (!edge_doc.is_array()) throw ParseError("'edges' must be a list");
    for (const auto& e : edge_doc) {
      VertexId from = lookup(require_string(e, "from"));
      VertexId to = lookup(require_string(e, "to"));
      std::string label = require_string(e, "label");
      auto s = gens.find(label);
      if (!s) throw InvariantError("edge uses unknown label '" + label + "'");
      VertexId& slot = action[static_cast<std::size_t>(from) * k + *s];
      if (slot != kNoVertex)
        throw InvariantError("vertex '" + names[from] + "' has two outgoing '" + label + "' edges");
      slot = to;
    }

    std::vector<VertexId> interior;
    const Json& interior_doc = require(doc, "interior");
    if (!interior_doc.is_array()) throw ParseError("'interior' must be a list");
    for (const auto& v : interior_doc) {
      if (!v.is_string()) throw ParseError("vertex ids must be strings");
      auto it = index.find(v.get<std::string>());
      if (it == index.end()) throw InvariantError("interior lists unknown vertex id '" + v.get<std::string>() + "'");
      interior.push_back(it->second);
    }

    Family family;
    if (auto it = doc.find("family"); it != doc.end()) {
      std::string kind = require_string(*it, "kind");
      family.radius = int_value(*it, "radius");
      if (kind == "lattice") {
        family.kind = Family::Kind::lattice;
        family.dim = int_value(*it, "dim");
        family.steps = require(*it, "steps").get<std::vector<std::vector<int>>>();
      } else if (kind == "free") {
        family.kind = Family::Kind::free_group;
        family.rank = int_value(*it, "rank");
      } else if (kind != "custom") {
        throw ParseError("unknown family kind '" + kind + "'");
      }
    }
    return LabeledGraph(std::move(gens), std::move(names), std::move(action), VertexSet(std::move(interior)),
                        std::move(family));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed graph document: ") + e.what());
  }
}

LabeledGraph load_graph(const std::filesystem::path& path) { return graph_from_json(read_json_file(path)); }

// ---------------------------------------------------------------------------
// Weights and covers

Json weights_to_json(const LabeledGraph& g, const WeightFunction& w) {
  Json values = Json::object();
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (w(v) != w.default_value()) values[g.name(v)] = to_string(w(v));
  return {{"default", to_string(w.default_value())}, {"values", std::move(values)}};
}

WeightFunction weights_from_json(const LabeledGraph& g, const Json& doc) {
  Rational fallback = doc.contains("default") ? require_rational(doc, "default") : Rational(1);
  std::vector<Rational> values(g.num_vertices(), fallback);
  if (auto it = doc.find("values"); it != doc.end()) {
    if (!it->is_object()) throw ParseError("'values' must map vertex ids to fractions");
    for (const auto& [name, value] : it->items()) {
      auto v = g.find(name);
      if (!v) throw InvariantError("weight given for unknown vertex id '" + name + "'");
      values[*v] = rational_value(value, "weight of '" + name + "'");
    }
  }
  return WeightFunction(std::move(values), fallback);
}

Json cover_to_json(const LabeledGraph& g, const CoverFamily& cover) {
  Json families = Json::array();
  for (const auto& fam : cover.families) {
    Json pieces = Json::array();
    for (const auto& piece : fam) pieces.push_back(vertex_list(g, piece));
    families.push_back(std::move(pieces));
  }
  return {{"r", cover.scale}, {"R", cover.diameter_bound}, {"families", std::move(families)}};
}

CoverFamily cover_from_json(const LabeledGraph& g, const Json& doc) {
  CoverFamily cover;
  cover.scale = int_value(doc, "r");
  cover.diameter_bound = int_value(doc, "R");
  const Json& families = require(doc, "families");
  if (!families.is_array()) throw ParseError("'families' must be a list");
  for (const auto& fam : families) {
    if (!fam.is_array()) throw ParseError("each cover family must be a list of pieces");
    std::vector<VertexSet> pieces;
    for (const auto& piece : fam) pieces.push_back(vertex_set_from_json(g, piece));
    cover.families.push_back(std::move(pieces));
  }
  validate_cover(g, cover);
  return cover;
}

// ---------------------------------------------------------------------------
// Certificates

Json words_to_json(const LabeledGraph& g, const std::vector<Word>& words) {
  Json out = Json::array();
  for (const Word& w : words) out.push_back(format_word(w, g.generators()));
  return out;
}

std::vector<Word> words_from_json(const LabeledGraph& g, const Json& list) {
  if (!list.is_array()) throw ParseError("expected a list of words");
  std::vector<Word> out;
  for (const auto& w : list) {
    if (!w.is_string()) throw ParseError("words must be strings");
    out.push_back(parse_word(w.get<std::string>(), g.generators()));
  }
  return out;
}

Json compression_to_json(const LabeledGraph& g, const CompressionSystem& cs) {
  Json psi = Json::object();
  for (const auto& [key, value] : cs.psi)
    psi[format_word(cs.words[key.first], g.generators()) + "|" + g.name(key.second)] = to_string(value);
  return {{"kind", "compression"},
          {"T", words_to_json(g, cs.words)},
          {"capacity_fraction", to_string(cs.capacity_fraction)},
          {"suppliers", vertex_list(g, cs.suppliers)},
          {"psi", std::move(psi)}};
}

CompressionSystem compression_from_json(const LabeledGraph& g, const Json& doc) {
  if (require_string(doc, "kind") != "compression") throw ParseError("certificate is not a compression system");
  CompressionSystem cs;
  cs.words = words_from_json(g, require(doc, "T"));
  cs.capacity_fraction = require_rational(doc, "capacity_fraction");
  cs.suppliers = vertex_set_from_json(g, require(doc, "suppliers"));
  std::map<Word, std::size_t> word_index;
  for (std::size_t i = 0; i < cs.words.size(); ++i)
    if (!word_index.emplace(cs.words[i], i).second) throw InvariantError("T lists a word twice");
  const Json& psi = require(doc, "psi");
  if (!psi.is_object()) throw ParseError("'psi' must map \"g|x\" keys to fractions");
  for (const auto& [key, value] : psi.items()) {
    auto bar = key.find('|');
    if (bar == std::string::npos) throw ParseError("psi key '" + key + "' is not of the form g|x");
    Word word = parse_word(std::string_view(key).substr(0, bar), g.generators());
    auto it = word_index.find(word);
    if (it == word_index.end()) throw InvariantError("psi key '" + key + "' uses a word outside T");
    auto x = g.find(key.substr(bar + 1));
    if (!x) throw InvariantError("psi key '" + key + "' names an unknown vertex");
    cs.psi[{it->second, *x}] = rational_value(value, "psi['" + key + "']");
  }
  return cs;
}

Json cut_to_json(const LabeledGraph& g, const std::vector<Word>& words, const Rational& fraction,
                 const CutWitness& cut) {
  return {{"kind", "cut"},
          {"T", words_to_json(g, words)},
          {"capacity_fraction", to_string(fraction)},
          {"witness",
           {{"L", vertex_list(g, cut.suppliers)},
            {"K", vertex_list(g, cut.buyers)},
            {"lhs", to_string(cut.lhs)},
            {"rhs", to_string(cut.rhs)},
            {"touches_rim", cut.touches_rim}}}};
}

CutWitness cut_from_json(const LabeledGraph& g, const Json& doc) {
  if (require_string(doc, "kind") != "cut") throw ParseError("certificate is not a cut witness");
  const Json& w = require(doc, "witness");
  CutWitness cut;
  cut.suppliers = vertex_set_from_json(g, require(w, "L"));
  cut.buyers = vertex_set_from_json(g, require(w, "K"));
  cut.lhs = require_rational(w, "lhs");
  cut.rhs = require_rational(w, "rhs");
  const Json& rim = require(w, "touches_rim");
  if (!rim.is_boolean()) throw ParseError("'touches_rim' must be a boolean");
  cut.touches_rim = rim.get<bool>();
  return cut;
}

Json inequality_to_json(const Inequality& q) {
  return {{"name", q.name},
          {"lhs", to_string(q.lhs)},
          {"rhs", to_string(q.rhs)},
          {"relation", to_string(q.relation)},
          {"holds", q.holds()}};
}

Inequality inequality_from_json(const Json& doc) {
  Inequality q;
  q.name = require_string(doc, "name");
  q.lhs = require_rational(doc, "lhs");
  q.rhs = require_rational(doc, "rhs");
  q.relation = parse_relation(require_string(doc, "relation"));
  return q;
}

}  // namespace wamen
