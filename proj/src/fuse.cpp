#include "fuse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "error.hpp"

namespace jstlabel {

void FuseConfig::validate() const {
  if (k_max < 1) throw validation_error("k_max must be >= 1");
  if (cluster_size < 1) throw validation_error("cluster size must be >= 1");
  if (topic_words < 1) throw validation_error("topic word count must be >= 1");
}

CompressionCandidate make_candidate(const WordGraph& graph, const std::vector<NodeId>& path, double cost) {
  CompressionCandidate c;
  c.path = path;
  c.raw_weight = cost;
  for (NodeId id : path) {
    const GraphNode& n = graph.node(id);
    if (n.special) continue;
    c.tokens.push_back(n.word);
    c.punctuation.push_back(n.punctuation);
    if (!n.punctuation) ++c.length;
  }
  return c;
}

bool satisfies_constraints(const WordGraph& graph, const CompressionCandidate& candidate,
                           std::span<const std::string> topic_words, std::size_t min_words) {
  if (candidate.length < min_words) return false;
  bool verb = false, topical = false;
  for (NodeId id : candidate.path) {
    const GraphNode& n = graph.node(id);
    if (n.special || n.punctuation) continue;
    verb = verb || n.is_verb();
    topical = topical || std::find(topic_words.begin(), topic_words.end(), n.word) != topic_words.end();
  }
  return verb && topical;
}

std::vector<CompressionCandidate> enumerate_paths(const WordGraph& graph, std::span<const std::string> topic_words,
                                                  const FuseConfig& cfg) {
  std::vector<CompressionCandidate> out;
  KShortestPaths search(graph.edges(), WordGraph::kStart, WordGraph::kEnd);
  for (std::size_t examined = 0; examined < cfg.k_max; ++examined) {
    auto p = search.next();
    if (!p) break;
    auto c = make_candidate(graph, p->nodes, p->cost);
    if (satisfies_constraints(graph, c, topic_words, cfg.min_words)) out.push_back(std::move(c));
  }
  return out;
}

namespace {

// Strict weak order on (score, length, tokens).
bool better(const CompressionCandidate& a, const CompressionCandidate& b) {
  if (a.rerank_score != b.rerank_score) return a.rerank_score < b.rerank_score;
  if (a.length != b.length) return a.length < b.length;
  return a.tokens < b.tokens;
}

std::optional<CompressionCandidate> pick_best(std::vector<CompressionCandidate>& candidates) {
  if (candidates.empty()) return std::nullopt;
  auto it = std::min_element(candidates.begin(), candidates.end(), better);
  return std::move(*it);
}

}  // namespace

std::optional<CompressionCandidate> rank_pathgraph(std::vector<CompressionCandidate> candidates) {
  for (auto& c : candidates) {
    c.rerank_score = c.length > 0 ? c.raw_weight / static_cast<double>(c.length)
                                  : std::numeric_limits<double>::infinity();
  }
  return pick_best(candidates);
}

bool contains_phrase(const CompressionCandidate& candidate, const std::vector<std::string>& words) {
  if (words.empty()) return false;
  return std::search(candidate.tokens.begin(), candidate.tokens.end(), words.begin(), words.end()) !=
         candidate.tokens.end();
}

std::optional<CompressionCandidate> rank_keyphrase(std::vector<CompressionCandidate> candidates,
                                                   std::span<const Keyphrase> keyphrases) {
  double min_positive = std::numeric_limits<double>::infinity();
  for (const auto& k : keyphrases) {
    if (k.score > 0.0) min_positive = std::min(min_positive, k.score);
  }
  const double fallback = std::isinf(min_positive) ? 1.0 : 0.1 * min_positive;

  for (auto& c : candidates) {
    double sum = 0.0;
    for (const auto& k : keyphrases) {
      if (contains_phrase(c, k.words)) sum += k.score;
    }
    if (!(sum > 0.0)) sum = fallback;
    c.rerank_score = c.length > 0 ? c.raw_weight / (static_cast<double>(c.length) * sum)
                                  : std::numeric_limits<double>::infinity();
  }
  return pick_best(candidates);
}

std::string render(const CompressionCandidate& candidate) {
  std::string out;
  for (std::size_t i = 0; i < candidate.tokens.size(); ++i) {
    if (i > 0 && !candidate.punctuation[i]) out += ' ';
    out += candidate.tokens[i];
  }
  return out;
}

FusionResult fuse_cluster(std::span<const Sentence> cluster, const StopwordList& stopwords,
                          std::span<const std::string> topic_words, FusionMethod method, const FuseConfig& cfg) {
  cfg.validate();
  FusionResult result;
  if (cluster.empty()) return result;
  const WordGraph graph = build_word_graph(cluster, stopwords);
  auto candidates = enumerate_paths(graph, topic_words, cfg);
  result.surviving = candidates.size();
  if (candidates.empty()) return result;
  if (method == FusionMethod::PathGraph) {
    result.best = rank_pathgraph(std::move(candidates));
  } else {
    const auto keyphrases = extract_keyphrases(cluster, stopwords);
    result.best = rank_keyphrase(std::move(candidates), keyphrases);
  }
  return result;
}

}  // namespace jstlabel
