#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "corpus.hpp"

namespace jstlabel {

struct JstConfig {
  int sentiment_labels = 2;  // S
  int topics = 10;           // T, per sentiment label
  double beta = 0.01;
  double gamma = 0.01;
  // Unset means the usual JST default of 0.05 * L / (S * T), L = mean document length.
  std::optional<double> alpha_init;
  int alpha_update_interval = 50;  // 0 disables hyperparameter updates
  int iterations = 1000;
  int burn_in = 500;
  std::uint64_t seed = 1;
  double lambda_scale = 0.05;
  double epsilon = 1e-7;  // prior multiplier for the label conflicting with a lexicon word
  int positive_label = 0;
  int negative_label = 1;

  void validate() const;
};

// Thin wrapper so the sampler's random stream is fully specified by the seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Uniform in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint32_t below(std::uint32_t n) { return static_cast<std::uint32_t>(uniform() * n); }

 private:
  std::mt19937_64 engine_;
};

// Per-(label, word) Dirichlet prior over topic-word distributions.
struct LexiconPrior {
  int labels = 0;
  std::size_t vocab_size = 0;
  double lambda = 0.0;
  std::vector<double> values;    // labels * vocab_size
  std::vector<double> row_sums;  // per label

  double at(int l, WordId w) const { return values[static_cast<std::size_t>(l) * vocab_size + w]; }
};

LexiconPrior build_lexicon_prior(const SentimentLexicon& lexicon, const Vocabulary& vocab, const JstConfig& cfg,
                                 double average_document_length);

struct Assignment {
  std::uint16_t label = 0;
  std::uint16_t topic = 0;
  bool operator==(const Assignment&) const = default;
};

struct CountTensors {
  std::vector<std::uint32_t> label_topic_word;  // N_{l,z,w}
  std::vector<std::uint32_t> label_topic;       // N_{l,z}
  std::vector<std::uint32_t> doc_label_topic;   // N_{d,l,z}
  std::vector<std::uint32_t> doc_label;         // N_{d,l}
  std::vector<std::uint32_t> doc;               // N_d
  bool operator==(const CountTensors&) const = default;
};

class JstModel {
 public:
  JstModel() = default;

  int labels() const noexcept { return labels_; }
  int topics() const noexcept { return topics_; }
  std::size_t vocab_size() const noexcept { return words_.size(); }
  std::size_t documents() const noexcept { return doc_count_; }
  std::size_t total_tokens() const noexcept { return token_words_.size(); }
  const JstConfig& config() const noexcept { return config_; }
  std::uint64_t corpus_fingerprint() const noexcept { return fingerprint_; }
  std::span<const std::string> words() const noexcept { return words_; }
  const std::string& word(WordId w) const { return words_.at(w); }

  std::size_t lz(int l, int z) const noexcept { return static_cast<std::size_t>(l) * topics_ + z; }
  std::size_t lzw(int l, int z, WordId w) const noexcept { return lz(l, z) * words_.size() + w; }
  std::size_t dl(std::size_t d, int l) const noexcept { return d * labels_ + l; }
  std::size_t dlz(std::size_t d, int l, int z) const noexcept { return dl(d, l) * topics_ + z; }

  std::span<const WordId> token_words() const noexcept { return token_words_; }
  std::span<const DocId> token_docs() const noexcept { return token_docs_; }
  std::span<const Assignment> assignments() const noexcept { return assignments_; }
  const CountTensors& counts() const noexcept { return counts_; }
  const LexiconPrior& prior() const noexcept { return prior_; }
  std::span<const double> alpha() const noexcept { return alpha_; }
  double alpha(int l, int z) const { return alpha_[lz(l, z)]; }

  // Estimates from the current sample; valid after estimate_parameters().
  double phi(int l, int z, WordId w) const { return phi_[lzw(l, z, w)]; }
  std::span<const double> phi() const noexcept { return phi_; }
  std::span<const double> pi() const noexcept { return pi_; }
  std::span<const double> theta() const noexcept { return theta_; }

  // One entry per completed sweep.
  std::span<const double> log_likelihood_trace() const noexcept { return log_likelihood_; }

 private:
  friend struct ModelAccess;  // mutation is confined to jst.cpp

  JstConfig config_;
  int labels_ = 0;
  int topics_ = 0;
  std::size_t doc_count_ = 0;
  std::uint64_t fingerprint_ = 0;
  std::vector<std::string> words_;
  std::vector<WordId> token_words_;
  std::vector<DocId> token_docs_;
  std::vector<Assignment> assignments_;
  CountTensors counts_;
  LexiconPrior prior_;
  std::vector<double> alpha_;
  std::vector<double> alpha_sum_;
  std::vector<double> phi_;
  std::vector<double> pi_;
  std::vector<double> theta_;
  std::vector<double> log_likelihood_;
};

// Lexicon-constrained random initialisation: lexicon words start on their polarity label.
JstModel initialize_model(const TaggedCorpus& corpus, const SentimentLexicon& lexicon, const JstConfig& cfg,
                          Rng& rng);

// Builds counts and estimates from a fixed assignment vector (one entry per
// in-vocabulary token, corpus order). Used for frozen-sample evaluation.
JstModel model_from_assignments(const TaggedCorpus& corpus, const SentimentLexicon& lexicon, const JstConfig& cfg,
                                std::span<const Assignment> assignments);

// Resamples (l, z) for every in-vocabulary token once.
void gibbs_sweep(JstModel& model, Rng& rng);

// Minka fixed-point update of the asymmetric alpha. Returns false when the
// previous alpha was kept (degenerate input or no convergence).
bool update_alpha(JstModel& model);

// Fills phi, pi and theta from the current counts.
void estimate_parameters(JstModel& model);

// phi_{l,z,w} = (N_{l,z,w} + prior_{l,w}) / (N_{l,z} + sum_w prior_{l,w}), laid out [l][z][w].
std::vector<double> estimate_phi(const JstModel& model);

// log p(w | l, z) of the current sample with phi integrated out.
double log_likelihood(const JstModel& model);

JstModel train(const TaggedCorpus& corpus, const SentimentLexicon& lexicon, const JstConfig& cfg,
               const std::function<void(int sweep, double log_likelihood)>& on_sweep = {});

CountTensors rebuild_counts(const JstModel& model);

// Throws invariant_error on the first violated count or normalisation property.
void check_invariants(const JstModel& model);

struct SentimentTopic {
  int label = 0;
  int topic = 0;
  std::vector<WordId> top_words;
};

// Ranked by descending phi, ties by vocabulary id; n is clamped to V.
std::vector<WordId> top_words(const JstModel& model, int l, int z, std::size_t n);
std::vector<SentimentTopic> sentiment_topics(const JstModel& model, std::size_t n);

void write_model(std::ostream& out, const JstModel& model);
JstModel read_model(std::istream& in);
void save_model(const std::string& path, const JstModel& model);
JstModel load_model(const std::string& path);

}  // namespace jstlabel
