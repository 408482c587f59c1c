#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "paths.hpp"

namespace jstlabel {

// Token position inside one cluster sentence. Positions are offsets in the
// sentence padded with start (0) and end (n + 1) markers.
struct Occurrence {
  std::uint32_t sentence = 0;
  std::uint32_t position = 0;
};

struct GraphNode {
  std::string word;  // lowercase form
  std::string pos;
  bool punctuation = false;
  bool special = false;  // start / end
  std::vector<Occurrence> occurrences;

  std::size_t freq() const noexcept { return occurrences.size(); }
  bool is_verb() const { return !special && pos.rfind("VB", 0) == 0; }
};

class WordGraph {
 public:
  static constexpr NodeId kStart = 0;
  static constexpr NodeId kEnd = 1;

  std::size_t node_count() const noexcept { return nodes_.size(); }
  const GraphNode& node(NodeId id) const { return nodes_.at(id); }
  std::span<const GraphNode> nodes() const noexcept { return nodes_; }

  // Edge costs: lower means a stronger connection.
  const WeightedDigraph& edges() const noexcept { return edges_; }
  std::optional<double> edge_weight(NodeId from, NodeId to) const { return edges_.edge(from, to); }
  std::size_t edge_count() const;

  std::size_t sentence_count() const noexcept { return sentence_paths_.size(); }
  // start -> mapped tokens -> end for each input sentence.
  const std::vector<NodeId>& sentence_path(std::size_t s) const { return sentence_paths_.at(s); }

  // Nodes sharing a (word, POS) key, in creation order.
  std::vector<NodeId> nodes_with_key(const std::string& word, const std::string& pos) const;

  friend WordGraph build_word_graph(std::span<const Sentence> cluster, const StopwordList& stopwords);

 private:
  std::vector<GraphNode> nodes_;
  std::map<std::pair<std::string, std::string>, std::vector<NodeId>> key_index_;
  WeightedDigraph edges_;
  std::vector<std::vector<NodeId>> sentence_paths_;
};

bool is_punctuation(std::string_view surface);

// Filippova-style word graph with Boudin's punctuation handling.
WordGraph build_word_graph(std::span<const Sentence> cluster, const StopwordList& stopwords);

// coherence(i,j) / (freq(i) * freq(j)) with coherence = (freq(i)+freq(j)) / sum_s 1/dist(s,i,j),
// summing only sentences where j follows i. +inf when no sentence has j after i.
double edge_weight(const WordGraph& graph, NodeId from, NodeId to);

// Text dump: "node<TAB>id<TAB>word<TAB>pos<TAB>freq" then "edge<TAB>src<TAB>dst<TAB>weight".
void write_graph(std::ostream& out, const WordGraph& graph);

}  // namespace jstlabel
