#include "keyphrase.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "word_graph.hpp"

namespace jstlabel {

namespace {

bool has_prefix(const std::string& s, const char* prefix) { return s.rfind(prefix, 0) == 0; }
bool is_adjective(const Token& t) { return has_prefix(t.pos, "JJ"); }
bool is_noun(const Token& t) { return has_prefix(t.pos, "NN"); }
bool is_verb(const Token& t) { return has_prefix(t.pos, "VB"); }

bool is_content(const Token& t, const StopwordList& stopwords) {
  return !is_punctuation(t.surface) && !stopwords.contains(t.lower);
}

}  // namespace

std::vector<double> textrank(const std::vector<std::vector<std::pair<std::size_t, double>>>& adjacency,
                             const TextRankConfig& cfg) {
  const std::size_t n = adjacency.size();
  std::vector<double> score(n, 1.0);
  if (n == 0) return score;
  std::vector<double> out_weight(n, 0.0);
  for (std::size_t u = 0; u < n; ++u)
    for (const auto& [v, w] : adjacency[u]) out_weight[u] += w;

  const double d = cfg.damping;
  std::vector<double> next(n);
  for (int it = 0; it < cfg.max_iterations; ++it) {
    double dangling = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      if (!(out_weight[u] > 0.0)) dangling += score[u];
    }
    std::fill(next.begin(), next.end(), (1.0 - d) + d * dangling / static_cast<double>(n));
    for (std::size_t u = 0; u < n; ++u) {
      if (!(out_weight[u] > 0.0)) continue;
      const double share = d * score[u] / out_weight[u];
      for (const auto& [v, w] : adjacency[u]) next[v] += share * w;
    }
    double delta = 0.0;
    for (std::size_t u = 0; u < n; ++u) delta = std::max(delta, std::abs(next[u] - score[u]));
    score.swap(next);
    if (delta < cfg.tolerance) break;
  }
  return score;
}

std::map<LexicalUnit, double> unit_salience(std::span<const Sentence> cluster, const StopwordList& stopwords,
                                            const TextRankConfig& cfg) {
  std::map<LexicalUnit, std::size_t> index;
  std::vector<std::vector<std::size_t>> sentence_units;
  for (const Sentence& s : cluster) {
    std::set<std::size_t> units;
    for (const Token& t : s.tokens) {
      if (!is_content(t, stopwords) || !(is_adjective(t) || is_noun(t) || is_verb(t))) continue;
      auto [it, inserted] = index.emplace(LexicalUnit{t.lower, t.pos}, index.size());
      units.insert(it->second);
    }
    sentence_units.emplace_back(units.begin(), units.end());
  }

  std::vector<std::map<std::size_t, double>> weights(index.size());
  for (const auto& units : sentence_units) {
    for (std::size_t a = 0; a < units.size(); ++a) {
      for (std::size_t b = a + 1; b < units.size(); ++b) {
        weights[units[a]][units[b]] += 1.0;
        weights[units[b]][units[a]] += 1.0;
      }
    }
  }
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency(index.size());
  for (std::size_t u = 0; u < index.size(); ++u) adjacency[u].assign(weights[u].begin(), weights[u].end());

  const auto scores = textrank(adjacency, cfg);
  std::map<LexicalUnit, double> out;
  for (const auto& [unit, id] : index) out.emplace(unit, scores[id]);
  return out;
}

std::vector<Keyphrase> extract_keyphrases(std::span<const Sentence> cluster, const StopwordList& stopwords,
                                          const TextRankConfig& cfg) {
  const auto salience = unit_salience(cluster, stopwords, cfg);
  if (salience.empty()) return {};

  std::map<std::vector<LexicalUnit>, double> phrases;
  auto emit = [&](const std::vector<LexicalUnit>& units) {
    if (units.empty() || phrases.count(units)) return;
    double sum = 0.0;
    for (const auto& u : units) sum += salience.at(u);
    phrases.emplace(units, sum / (static_cast<double>(units.size()) + 1.0));
  };

  for (const Sentence& s : cluster) {
    std::vector<LexicalUnit> chunk;
    bool in_nouns = false;
    auto flush = [&] {
      if (in_nouns) emit(chunk);
      chunk.clear();
      in_nouns = false;
    };
    for (const Token& t : s.tokens) {
      const bool eligible = is_content(t, stopwords) && (is_adjective(t) || is_noun(t));
      if (!eligible) {
        flush();
        continue;
      }
      if (is_adjective(t)) {
        if (in_nouns) flush();  // an adjective after nouns opens a new chunk
        chunk.emplace_back(t.lower, t.pos);
      } else {
        chunk.emplace_back(t.lower, t.pos);
        in_nouns = true;
      }
    }
    flush();
  }

  std::vector<Keyphrase> out;
  out.reserve(phrases.size());
  for (const auto& [units, score] : phrases) {
    Keyphrase k;
    for (const auto& u : units) k.words.push_back(u.first);
    k.score = score;
    out.push_back(std::move(k));
  }
  std::stable_sort(out.begin(), out.end(), [](const Keyphrase& a, const Keyphrase& b) { return a.score > b.score; });
  // Different POS readings of the same words collapse to the best-scoring one.
  std::vector<Keyphrase> unique;
  std::set<std::vector<std::string>> seen;
  for (auto& k : out) {
    if (seen.insert(k.words).second) unique.push_back(std::move(k));
  }
  return unique;
}

}  // namespace jstlabel
