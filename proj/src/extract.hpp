#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "corpus.hpp"
#include "jst.hpp"
#include "relevance.hpp"

namespace jstlabel {

struct ExtractConfig {
  double alpha = 0.4;            // weight of relevance against co-coverage
  std::size_t top_n = 15;        // topic words eligible for co-coverage
  bool rel_normalization = true; // min-max rescale Rel and Cov within the candidate pool
  std::size_t candidate_limit = 0;  // 0 keeps every sentence with nonzero relevance
  bool dedup = true;             // collapse identical sentences to the lowest id

  void validate() const;
};

struct Coverage {
  double aspect = 0.0;     // A(s|t)
  double sentiment = 0.0;  // S(s|t)
  double cov = 0.0;        // harmonic mean of the two
};

// 2AS/(A+S), exactly zero when either side is zero.
double co_coverage(double aspect, double sentiment);

Coverage coverage_scores(const Sentence& sentence, const SentimentTopic& topic, const TopicWordView& phi,
                         const SentimentLexicon& lexicon, std::size_t top_n);

struct LabelScore {
  SentenceId sentence = 0;
  double raw_rel = 0.0;  // normalised p(sent|l,z)
  double aspect = 0.0;
  double sentiment = 0.0;
  double raw_cov = 0.0;
  double rel = 0.0;  // values actually mixed (rescaled when normalisation is on)
  double cov = 0.0;
  double total = 0.0;
};

inline double mix_label_score(double alpha, double rel, double cov) { return alpha * rel + (1.0 - alpha) * cov; }

// Min-max bounds of the candidate pool used for rescaling.
struct PoolScale {
  double rel_min = 0.0, rel_max = 0.0;
  double cov_min = 0.0, cov_max = 0.0;
};

// Maps x into [0, 1] using the pool bounds; a flat pool maps positives to 1.
double rescale(double x, double lo, double hi);

LabelScore label_score(const Sentence& sentence, const SentimentTopic& topic, const RelevanceTable& relevance,
                       const TopicWordView& phi, const SentimentLexicon& lexicon, const ExtractConfig& cfg,
                       const PoolScale* scale = nullptr);

// Candidate pool of a topic after dedup and truncation, in relevance order.
std::vector<SentenceId> candidate_pool(const SentimentTopic& topic, const TaggedCorpus& corpus,
                                       const RelevanceTable& relevance, const ExtractConfig& cfg);

std::vector<LabelScore> score_candidates(const SentimentTopic& topic, const TaggedCorpus& corpus,
                                         const RelevanceTable& relevance, const TopicWordView& phi,
                                         const SentimentLexicon& lexicon, const ExtractConfig& cfg);

struct LabelChoice {
  std::optional<SentenceId> sentence;  // empty: unlabellable topic
  LabelScore score;
};

// argmax of the label score; ties by higher Rel, then lower sentence id.
LabelChoice select_label(const SentimentTopic& topic, const TaggedCorpus& corpus, const RelevanceTable& relevance,
                         const TopicWordView& phi, const SentimentLexicon& lexicon, const ExtractConfig& cfg);

std::optional<SentenceId> baseline_top_prob(const SentimentTopic& topic, const RelevanceTable& relevance);

// Sentence with the highest mean cosine similarity to the rest of the top-k cluster.
std::optional<SentenceId> baseline_centroid(const SentimentTopic& topic, const RelevanceTable& relevance,
                                            const TaggedCorpus& corpus, std::size_t k = 150);

}  // namespace jstlabel
