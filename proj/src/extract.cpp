#include "extract.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "error.hpp"

namespace jstlabel {

void ExtractConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw validation_error("extract alpha must lie in [0, 1]");
  if (top_n < 1) throw validation_error("top_n must be >= 1");
}

double co_coverage(double aspect, double sentiment) {
  if (!(aspect > 0.0) || !(sentiment > 0.0)) return 0.0;
  return 2.0 / (1.0 / aspect + 1.0 / sentiment);
}

Coverage coverage_scores(const Sentence& sentence, const SentimentTopic& topic, const TopicWordView& phi,
                         const SentimentLexicon& lexicon, std::size_t top_n) {
  const std::size_t n = std::min(top_n, topic.top_words.size());
  std::unordered_set<WordId> top(topic.top_words.begin(), topic.top_words.begin() + static_cast<std::ptrdiff_t>(n));
  Coverage c;
  for (const Token& tok : sentence.tokens) {
    if (!tok.vocab_id || !top.count(*tok.vocab_id)) continue;
    const double weight = phi.at(topic.label, topic.topic, *tok.vocab_id);
    if (is_aspect_word(tok)) c.aspect += weight;
    if (is_sentiment_word(tok, lexicon)) c.sentiment += weight;
  }
  c.cov = co_coverage(c.aspect, c.sentiment);
  return c;
}

double rescale(double x, double lo, double hi) {
  if (hi > lo) return (x - lo) / (hi - lo);
  return x > 0.0 ? 1.0 : 0.0;
}

LabelScore label_score(const Sentence& sentence, const SentimentTopic& topic, const RelevanceTable& relevance,
                       const TopicWordView& phi, const SentimentLexicon& lexicon, const ExtractConfig& cfg,
                       const PoolScale* scale) {
  LabelScore s;
  s.sentence = sentence.id;
  s.raw_rel = relevance.score(topic.label, topic.topic, sentence.id);
  const Coverage c = coverage_scores(sentence, topic, phi, lexicon, cfg.top_n);
  s.aspect = c.aspect;
  s.sentiment = c.sentiment;
  s.raw_cov = c.cov;
  if (cfg.rel_normalization && scale) {
    s.rel = rescale(s.raw_rel, scale->rel_min, scale->rel_max);
    s.cov = rescale(s.raw_cov, scale->cov_min, scale->cov_max);
  } else {
    s.rel = s.raw_rel;
    s.cov = s.raw_cov;
  }
  s.total = mix_label_score(cfg.alpha, s.rel, s.cov);
  return s;
}

std::vector<SentenceId> candidate_pool(const SentimentTopic& topic, const TaggedCorpus& corpus,
                                       const RelevanceTable& relevance, const ExtractConfig& cfg) {
  std::vector<SentenceId> ids;
  for (const auto& e : relevance.ranking(topic.label, topic.topic)) {
    if (e.score > 0.0) ids.push_back(e.id);
  }
  if (cfg.candidate_limit > 0 && ids.size() > cfg.candidate_limit) ids.resize(cfg.candidate_limit);
  if (!cfg.dedup) return ids;

  // Keep the lowest id of each group of identical surface sequences.
  std::map<std::vector<std::string_view>, SentenceId> lowest;
  for (SentenceId id : ids) {
    std::vector<std::string_view> key;
    for (const Token& t : corpus.sentence(id).tokens) key.push_back(t.surface);
    auto [it, inserted] = lowest.emplace(std::move(key), id);
    if (!inserted) it->second = std::min(it->second, id);
  }
  std::unordered_set<SentenceId> keep;
  for (const auto& [key, id] : lowest) keep.insert(id);
  std::vector<SentenceId> out;
  for (SentenceId id : ids) {
    if (keep.count(id)) out.push_back(id);
  }
  return out;
}

std::vector<LabelScore> score_candidates(const SentimentTopic& topic, const TaggedCorpus& corpus,
                                         const RelevanceTable& relevance, const TopicWordView& phi,
                                         const SentimentLexicon& lexicon, const ExtractConfig& cfg) {
  cfg.validate();
  const auto pool = candidate_pool(topic, corpus, relevance, cfg);
  std::vector<LabelScore> scores;
  scores.reserve(pool.size());
  for (SentenceId id : pool) scores.push_back(label_score(corpus.sentence(id), topic, relevance, phi, lexicon, cfg));
  if (!cfg.rel_normalization || scores.empty()) return scores;

  PoolScale scale{scores[0].raw_rel, scores[0].raw_rel, scores[0].raw_cov, scores[0].raw_cov};
  for (const auto& s : scores) {
    scale.rel_min = std::min(scale.rel_min, s.raw_rel);
    scale.rel_max = std::max(scale.rel_max, s.raw_rel);
    scale.cov_min = std::min(scale.cov_min, s.raw_cov);
    scale.cov_max = std::max(scale.cov_max, s.raw_cov);
  }
  for (auto& s : scores) {
    s.rel = rescale(s.raw_rel, scale.rel_min, scale.rel_max);
    s.cov = rescale(s.raw_cov, scale.cov_min, scale.cov_max);
    s.total = mix_label_score(cfg.alpha, s.rel, s.cov);
  }
  return scores;
}

LabelChoice select_label(const SentimentTopic& topic, const TaggedCorpus& corpus, const RelevanceTable& relevance,
                         const TopicWordView& phi, const SentimentLexicon& lexicon, const ExtractConfig& cfg) {
  const auto scores = score_candidates(topic, corpus, relevance, phi, lexicon, cfg);
  LabelChoice choice;
  const LabelScore* best = nullptr;
  for (const auto& s : scores) {
    if (!best || s.total > best->total ||
        (s.total == best->total && (s.raw_rel > best->raw_rel ||
                                    (s.raw_rel == best->raw_rel && s.sentence < best->sentence)))) {
      best = &s;
    }
  }
  if (best) {
    choice.sentence = best->sentence;
    choice.score = *best;
  }
  return choice;
}

std::optional<SentenceId> baseline_top_prob(const SentimentTopic& topic, const RelevanceTable& relevance) {
  auto ranking = relevance.ranking(topic.label, topic.topic);
  if (ranking.empty()) return std::nullopt;
  return ranking.front().id;
}

namespace {

using SparseVector = std::vector<std::pair<WordId, double>>;  // sorted by word id

SparseVector term_frequencies(const Sentence& s) {
  std::map<WordId, double> tf;
  for (const Token& t : s.tokens) {
    if (t.vocab_id) tf[*t.vocab_id] += 1.0;
  }
  return {tf.begin(), tf.end()};
}

double norm(const SparseVector& v) {
  double s = 0.0;
  for (const auto& [w, x] : v) s += x * x;
  return std::sqrt(s);
}

double dot(const SparseVector& a, const SparseVector& b) {
  double s = 0.0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      s += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return s;
}

}  // namespace

std::optional<SentenceId> baseline_centroid(const SentimentTopic& topic, const RelevanceTable& relevance,
                                            const TaggedCorpus& corpus, std::size_t k) {
  auto ranking = relevance.ranking(topic.label, topic.topic);
  if (ranking.empty()) return std::nullopt;
  const std::size_t n = std::min(k, ranking.size());
  if (n == 1) return ranking.front().id;

  std::vector<SentenceId> ids(n);
  std::vector<SparseVector> vecs(n);
  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) {
    ids[i] = ranking[i].id;
    vecs[i] = term_frequencies(corpus.sentence(ids[i]));
    norms[i] = norm(vecs[i]);
  }
  std::vector<double> sum(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double denom = norms[i] * norms[j];
      const double cos = denom > 0.0 ? dot(vecs[i], vecs[j]) / denom : 0.0;
      sum[i] += cos;
      sum[j] += cos;
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (sum[i] > sum[best] || (sum[i] == sum[best] && ids[i] < ids[best])) best = i;
  }
  return ids[best];
}

}  // namespace jstlabel
