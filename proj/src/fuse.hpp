#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "keyphrase.hpp"
#include "word_graph.hpp"

namespace jstlabel {

enum class FusionMethod { PathGraph, Keyphrase };

struct FuseConfig {
  std::size_t k_max = 100;         // lowest-cost paths examined before filtering
  std::size_t cluster_size = 150;  // most relevant sentences fed to the graph
  std::size_t min_words = 8;
  std::size_t topic_words = 15;

  void validate() const;
};

struct CompressionCandidate {
  std::vector<NodeId> path;          // start ... end
  std::vector<std::string> tokens;   // lowercase words, punctuation included
  std::vector<bool> punctuation;     // parallel to tokens
  double raw_weight = 0.0;           // sum of edge costs
  std::size_t length = 0;            // words, punctuation excluded
  double rerank_score = 0.0;
};

CompressionCandidate make_candidate(const WordGraph& graph, const std::vector<NodeId>& path, double cost);

// Topic-word, verb and minimum-length constraints on a path.
bool satisfies_constraints(const WordGraph& graph, const CompressionCandidate& candidate,
                           std::span<const std::string> topic_words, std::size_t min_words);

// The k_max cheapest start->end paths, kept only if they satisfy the constraints.
std::vector<CompressionCandidate> enumerate_paths(const WordGraph& graph, std::span<const std::string> topic_words,
                                                  const FuseConfig& cfg);

// Lowest total weight per word; ties by shorter length, then token order.
std::optional<CompressionCandidate> rank_pathgraph(std::vector<CompressionCandidate> candidates);

// Does the candidate contain the phrase as a contiguous word run?
bool contains_phrase(const CompressionCandidate& candidate, const std::vector<std::string>& words);

// Lowest weight / (length * summed keyphrase score). Candidates without any
// keyphrase use a tenth of the smallest positive keyphrase score instead.
std::optional<CompressionCandidate> rank_keyphrase(std::vector<CompressionCandidate> candidates,
                                                   std::span<const Keyphrase> keyphrases);

// Space-joined words with punctuation attached to the preceding word.
std::string render(const CompressionCandidate& candidate);

struct FusionResult {
  std::optional<CompressionCandidate> best;
  std::size_t surviving = 0;  // candidates passing the constraints
};

FusionResult fuse_cluster(std::span<const Sentence> cluster, const StopwordList& stopwords,
                          std::span<const std::string> topic_words, FusionMethod method, const FuseConfig& cfg);

}  // namespace jstlabel
