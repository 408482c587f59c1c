#include "word_graph.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <ostream>

#include <fmt/format.h>

#include "error.hpp"

namespace jstlabel {

namespace {

using Key = std::pair<std::string, std::string>;

const Key kStartKey{"-start-", ""};
const Key kEndKey{"-end-", ""};

enum class TokenKind { Word, Stopword, Punctuation };

}  // namespace

bool is_punctuation(std::string_view surface) {
  return std::none_of(surface.begin(), surface.end(), [](unsigned char c) { return c >= 0x80 || std::isalnum(c); });
}

std::size_t WordGraph::edge_count() const {
  std::size_t n = 0;
  for (NodeId u = 0; u < edges_.size(); ++u) n += edges_.out_edges(u).size();
  return n;
}

std::vector<NodeId> WordGraph::nodes_with_key(const std::string& word, const std::string& pos) const {
  auto it = key_index_.find({word, pos});
  if (it == key_index_.end()) return {};
  return it->second;
}

WordGraph build_word_graph(std::span<const Sentence> cluster, const StopwordList& stopwords) {
  if (cluster.empty()) throw validation_error("cannot build a word graph from an empty cluster");

  WordGraph g;
  g.nodes_.push_back(GraphNode{"-start-", "", false, true, {}});
  g.nodes_.push_back(GraphNode{"-end-", "", false, true, {}});
  g.edges_ = WeightedDigraph(2);

  // Context keys of already-added sentences, padded with the start/end markers.
  std::vector<std::vector<Key>> padded;
  padded.reserve(cluster.size());

  for (std::uint32_t s = 0; s < cluster.size(); ++s) {
    const auto& tokens = cluster[s].tokens;
    const std::size_t n = tokens.size();
    if (n == 0) throw validation_error("cluster sentence " + std::to_string(cluster[s].id) + " is empty");

    std::vector<Key> keys(n);
    std::vector<TokenKind> kinds(n);
    std::map<Key, int> in_sentence;
    for (std::size_t j = 0; j < n; ++j) {
      if (tokens[j].pos.empty()) {
        throw validation_error("sentence " + std::to_string(cluster[s].id) + " has a token without POS");
      }
      keys[j] = {tokens[j].lower, tokens[j].pos};
      kinds[j] = is_punctuation(tokens[j].surface) ? TokenKind::Punctuation
                 : stopwords.contains(tokens[j].lower) ? TokenKind::Stopword
                                                       : TokenKind::Word;
      ++in_sentence[keys[j]];
    }
    std::vector<Key> row;
    row.reserve(n + 2);
    row.push_back(kStartKey);
    row.insert(row.end(), keys.begin(), keys.end());
    row.push_back(kEndKey);
    padded.push_back(std::move(row));

    std::vector<std::optional<NodeId>> mapping(n);

    auto usable = [&](NodeId id) {
      const auto& occ = g.nodes_[id].occurrences;
      return std::none_of(occ.begin(), occ.end(), [&](const Occurrence& o) { return o.sentence == s; });
    };
    auto attach = [&](NodeId id, std::size_t j) {
      g.nodes_[id].occurrences.push_back({s, static_cast<std::uint32_t>(j + 1)});
      mapping[j] = id;
    };
    auto create = [&](std::size_t j) {
      const auto id = static_cast<NodeId>(g.nodes_.size());
      g.nodes_.push_back(GraphNode{tokens[j].lower, tokens[j].pos, kinds[j] == TokenKind::Punctuation, false, {}});
      g.key_index_[keys[j]].push_back(id);
      g.edges_.add_node();
      attach(id, j);
    };
    auto candidates = [&](std::size_t j) -> const std::vector<NodeId>* {
      auto it = g.key_index_.find(keys[j]);
      return it == g.key_index_.end() ? nullptr : &it->second;
    };
    // Number of occurrences whose left/right neighbour matches this token's neighbours.
    auto overlap = [&](NodeId id, std::size_t j) {
      const Key& left = padded[s][j];
      const Key& right = padded[s][j + 2];
      int hits = 0;
      for (const Occurrence& o : g.nodes_[id].occurrences) {
        const auto& other = padded[o.sentence];
        hits += other[o.position - 1] == left;
        hits += other[o.position + 1] == right;
      }
      return hits;
    };
    // Best usable candidate by (context overlap, freq, id).
    auto pick = [&](std::size_t j, bool require_context) -> std::optional<NodeId> {
      const auto* cands = candidates(j);
      if (!cands) return std::nullopt;
      std::optional<NodeId> best;
      int best_overlap = -1;
      for (NodeId id : *cands) {
        if (!usable(id)) continue;
        const int ov = overlap(id, j);
        if (require_context && ov == 0) continue;
        if (!best || ov > best_overlap || (ov == best_overlap && g.nodes_[id].freq() > g.nodes_[*best].freq())) {
          best = id;
          best_overlap = ov;
        }
      }
      return best;
    };

    // (i) non-stopwords with no candidate or one unambiguous candidate.
    for (std::size_t j = 0; j < n; ++j) {
      if (kinds[j] != TokenKind::Word || in_sentence[keys[j]] > 1) continue;
      const auto* cands = candidates(j);
      if (!cands) {
        create(j);
      } else if (cands->size() == 1 && usable(cands->front())) {
        attach(cands->front(), j);
      }
    }
    // (ii) ambiguous non-stopwords.
    for (std::size_t j = 0; j < n; ++j) {
      if (kinds[j] != TokenKind::Word || mapping[j]) continue;
      if (auto id = pick(j, false)) {
        attach(*id, j);
      } else {
        create(j);
      }
    }
    // (iii) stopwords, then punctuation: merge only on shared immediate context.
    for (TokenKind kind : {TokenKind::Stopword, TokenKind::Punctuation}) {
      for (std::size_t j = 0; j < n; ++j) {
        if (kinds[j] != kind || mapping[j]) continue;
        if (auto id = pick(j, true)) {
          attach(*id, j);
        } else {
          create(j);
        }
      }
    }

    std::vector<NodeId> path;
    path.reserve(n + 2);
    path.push_back(WordGraph::kStart);
    for (const auto& m : mapping) path.push_back(*m);
    path.push_back(WordGraph::kEnd);
    g.nodes_[WordGraph::kStart].occurrences.push_back({s, 0});
    g.nodes_[WordGraph::kEnd].occurrences.push_back({s, static_cast<std::uint32_t>(n + 1)});
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      if (!g.edges_.edge(path[k], path[k + 1])) g.edges_.set_edge(path[k], path[k + 1], 0.0);
    }
    g.sentence_paths_.push_back(std::move(path));
  }

  for (NodeId u = 0; u < g.edges_.size(); ++u) {
    std::vector<NodeId> targets;
    for (const auto& [v, w] : g.edges_.out_edges(u)) targets.push_back(v);
    for (NodeId v : targets) g.edges_.set_edge(u, v, edge_weight(g, u, v));
  }
  return g;
}

double edge_weight(const WordGraph& graph, NodeId from, NodeId to) {
  const GraphNode& a = graph.node(from);
  const GraphNode& b = graph.node(to);
  // Closest forward pair per sentence.
  std::map<std::uint32_t, std::uint32_t> closest;
  for (const Occurrence& o : b.occurrences) {
    for (const Occurrence& p : a.occurrences) {
      if (p.sentence != o.sentence || o.position <= p.position) continue;
      const std::uint32_t d = o.position - p.position;
      auto [it, inserted] = closest.emplace(o.sentence, d);
      if (!inserted) it->second = std::min(it->second, d);
    }
  }
  double inverse_dist = 0.0;
  for (const auto& [sentence, d] : closest) inverse_dist += 1.0 / d;
  if (!(inverse_dist > 0.0)) return std::numeric_limits<double>::infinity();
  const double fa = static_cast<double>(a.freq());
  const double fb = static_cast<double>(b.freq());
  const double coherence = (fa + fb) / inverse_dist;
  return coherence / (fa * fb);
}

void write_graph(std::ostream& out, const WordGraph& graph) {
  for (NodeId id = 0; id < graph.node_count(); ++id) {
    const auto& n = graph.node(id);
    out << fmt::format("node\t{}\t{}\t{}\t{}\n", id, n.word, n.pos.empty() ? "-" : n.pos, n.freq());
  }
  for (NodeId u = 0; u < graph.node_count(); ++u) {
    for (const auto& [v, w] : graph.edges().out_edges(u)) out << fmt::format("edge\t{}\t{}\t{}\n", u, v, w);
  }
}

}  // namespace jstlabel
