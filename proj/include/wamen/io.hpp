#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "wamen/compression.hpp"
#include "wamen/graph.hpp"
#include "wamen/separators.hpp"
#include "wamen/weights.hpp"

namespace wamen {

using Json = nlohmann::json;

/// Reads a whole file as JSON. Throws ParseError when unreadable or malformed.
Json read_json_file(const std::filesystem::path& path);
/// Writes `doc.dump(2)` plus a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& doc);

// Graph interchange: {generators: [{label, inverse}], vertices: [id],
// edges: [{from, to, label}], interior: [id], family?}. Vertex ids keep the
// order of the `vertices` list.
Json graph_to_json(const LabeledGraph& g);
LabeledGraph graph_from_json(const Json& doc);
LabeledGraph load_graph(const std::filesystem::path& path);

// Weights: {default: "p/q", values: {vertex id: "p/q"}}.
Json weights_to_json(const LabeledGraph& g, const WeightFunction& w);
WeightFunction weights_from_json(const LabeledGraph& g, const Json& doc);

// Cover: {r, R, families: [[[vertex id]]]}, re-validated on load.
Json cover_to_json(const LabeledGraph& g, const CoverFamily& cover);
CoverFamily cover_from_json(const LabeledGraph& g, const Json& doc);

Json vertex_list(const LabeledGraph& g, const VertexSet& set);
VertexSet vertex_set_from_json(const LabeledGraph& g, const Json& list);

/// Typed accessors that turn nlohmann type errors into ParseError naming the key.
const Json& require(const Json& doc, const std::string& key);
std::string require_string(const Json& doc, const std::string& key);
Rational require_rational(const Json& doc, const std::string& key);

// Certificates: {kind: compression, T: [word], capacity_fraction, psi: {"g|x": "p/q"}}
// or {kind: cut, T: [word], capacity_fraction, witness: {L, K, lhs, rhs, touches_rim}}.
Json compression_to_json(const LabeledGraph& g, const CompressionSystem& cs);
CompressionSystem compression_from_json(const LabeledGraph& g, const Json& doc);
Json cut_to_json(const LabeledGraph& g, const std::vector<Word>& words, const Rational& fraction,
                 const CutWitness& cut);
CutWitness cut_from_json(const LabeledGraph& g, const Json& doc);
std::vector<Word> words_from_json(const LabeledGraph& g, const Json& list);
Json words_to_json(const LabeledGraph& g, const std::vector<Word>& words);

Json inequality_to_json(const Inequality& q);
Inequality inequality_from_json(const Json& doc);

}  // namespace wamen
