#include "jst.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <boost/math/special_functions/digamma.hpp>
#include <nlohmann/json.hpp>

#include "error.hpp"

namespace jstlabel {

namespace {

constexpr double kAlphaFloor = 1e-6;
constexpr int kAlphaMaxInner = 200;
constexpr double kAlphaTolerance = 1e-6;
constexpr int kModelFormatVersion = 1;

// psi(a + n) - psi(a) for integer n >= 0.
double digamma_diff(double a, std::uint32_t n) {
  if (n == 0) return 0.0;
  if (n < 32) {
    double s = 0.0;
    for (std::uint32_t k = 0; k < n; ++k) s += 1.0 / (a + k);
    return s;
  }
  return boost::math::digamma(a + n) - boost::math::digamma(a);
}

int polarity_label(Polarity p, const JstConfig& cfg) {
  return p == Polarity::Positive ? cfg.positive_label : cfg.negative_label;
}

}  // namespace

void JstConfig::validate() const {
  if (sentiment_labels < 1) throw validation_error("sentiment_labels must be >= 1");
  if (topics < 1) throw validation_error("topics must be >= 1");
  if (sentiment_labels * topics > 65535) throw validation_error("too many sentiment-topics");
  if (!(beta > 0.0)) throw validation_error("beta must be positive");
  if (!(gamma > 0.0)) throw validation_error("gamma must be positive");
  if (alpha_init && !(*alpha_init > 0.0)) throw validation_error("alpha_init must be positive when set");
  if (alpha_update_interval < 0) throw validation_error("alpha_update_interval must be >= 0");
  if (iterations < 1) throw validation_error("iterations must be >= 1");
  if (burn_in < 0 || burn_in >= iterations) throw validation_error("burn_in must lie in [0, iterations)");
  if (!(lambda_scale > 0.0)) throw validation_error("lambda_scale must be positive");
  if (!(epsilon >= 0.0)) throw validation_error("epsilon must be >= 0");
  if (sentiment_labels >= 2) {
    auto in_range = [&](int l) { return l >= 0 && l < sentiment_labels; };
    if (!in_range(positive_label) || !in_range(negative_label))
      throw validation_error("positive_label and negative_label must be valid label indices");
    if (positive_label == negative_label) throw validation_error("positive_label and negative_label must differ");
  }
}

LexiconPrior build_lexicon_prior(const SentimentLexicon& lexicon, const Vocabulary& vocab, const JstConfig& cfg,
                                 double average_document_length) {
  LexiconPrior p;
  p.labels = cfg.sentiment_labels;
  p.vocab_size = vocab.size();
  p.lambda = cfg.lambda_scale * average_document_length / cfg.sentiment_labels;
  p.values.assign(static_cast<std::size_t>(p.labels) * p.vocab_size, cfg.beta);
  for (WordId w = 0; w < p.vocab_size; ++w) {
    auto polarity = lexicon.find(vocab.word(w));
    if (!polarity) continue;
    const int target = polarity_label(*polarity, cfg);
    // A polarity without a matching label (single-label models) leaves the word unmodulated.
    if (target < 0 || target >= p.labels) continue;
    for (int l = 0; l < p.labels; ++l)
      p.values[static_cast<std::size_t>(l) * p.vocab_size + w] = (l == target ? p.lambda : cfg.epsilon) * cfg.beta;
  }
  p.row_sums.assign(p.labels, 0.0);
  for (int l = 0; l < p.labels; ++l)
    for (WordId w = 0; w < p.vocab_size; ++w) p.row_sums[l] += p.at(l, w);
  return p;
}

struct ModelAccess {
  static void setup(JstModel& m, const TaggedCorpus& corpus, const SentimentLexicon& lexicon,
                    const JstConfig& cfg) {
    cfg.validate();
    m.config_ = cfg;
    m.labels_ = cfg.sentiment_labels;
    m.topics_ = cfg.topics;
    m.doc_count_ = corpus.documents().size();
    m.fingerprint_ = corpus.fingerprint();
    m.words_.assign(corpus.vocabulary().words().begin(), corpus.vocabulary().words().end());
    m.token_words_.assign(corpus.token_words().begin(), corpus.token_words().end());
    m.token_docs_.assign(corpus.token_docs().begin(), corpus.token_docs().end());

    double avg_len = corpus.average_document_length();
    m.prior_ = build_lexicon_prior(lexicon, corpus.vocabulary(), cfg, avg_len);
    double a0 = cfg.alpha_init.value_or(0.05 * avg_len / (cfg.sentiment_labels * cfg.topics));
    if (!(a0 > 0.0)) a0 = kAlphaFloor;
    m.alpha_.assign(static_cast<std::size_t>(m.labels_) * m.topics_, a0);
    refresh_alpha_sums(m);
    allocate(m);
  }

  static void allocate(JstModel& m) {
    const std::size_t S = m.labels_, T = m.topics_, V = m.words_.size(), D = m.doc_count_;
    m.counts_.label_topic_word.assign(S * T * V, 0);
    m.counts_.label_topic.assign(S * T, 0);
    m.counts_.doc_label_topic.assign(D * S * T, 0);
    m.counts_.doc_label.assign(D * S, 0);
    m.counts_.doc.assign(D, 0);
    m.assignments_.assign(m.token_words_.size(), Assignment{});
  }

  static void refresh_alpha_sums(JstModel& m) {
    m.alpha_sum_.assign(m.labels_, 0.0);
    for (int l = 0; l < m.labels_; ++l)
      for (int z = 0; z < m.topics_; ++z) m.alpha_sum_[l] += m.alpha_[m.lz(l, z)];
  }

  static void increment(JstModel& m, std::size_t i, Assignment a) {
    const WordId w = m.token_words_[i];
    const DocId d = m.token_docs_[i];
    m.assignments_[i] = a;
    ++m.counts_.label_topic_word[m.lzw(a.label, a.topic, w)];
    ++m.counts_.label_topic[m.lz(a.label, a.topic)];
    ++m.counts_.doc_label_topic[m.dlz(d, a.label, a.topic)];
    ++m.counts_.doc_label[m.dl(d, a.label)];
    ++m.counts_.doc[d];
  }

  static void decrement(JstModel& m, std::size_t i) {
    const WordId w = m.token_words_[i];
    const DocId d = m.token_docs_[i];
    const Assignment a = m.assignments_[i];
    auto dec = [](std::uint32_t& c) {
      if (c == 0) throw invariant_error("count underflow during Gibbs update");
      --c;
    };
    dec(m.counts_.label_topic_word[m.lzw(a.label, a.topic, w)]);
    dec(m.counts_.label_topic[m.lz(a.label, a.topic)]);
    dec(m.counts_.doc_label_topic[m.dlz(d, a.label, a.topic)]);
    dec(m.counts_.doc_label[m.dl(d, a.label)]);
    dec(m.counts_.doc[d]);
  }

  static void sweep(JstModel& m, Rng& rng) {
    const int S = m.labels_, T = m.topics_;
    const double gamma = m.config_.gamma;
    std::vector<double> cumulative(static_cast<std::size_t>(S) * T);
    auto& c = m.counts_;

    for (std::size_t i = 0; i < m.token_words_.size(); ++i) {
      decrement(m, i);
      const WordId w = m.token_words_[i];
      const DocId d = m.token_docs_[i];

      double total = 0.0;
      for (int l = 0; l < S; ++l) {
        const double prior_w = m.prior_.at(l, w);
        const double prior_sum = m.prior_.row_sums[l];
        const double ndl = c.doc_label[m.dl(d, l)];
        const double doc_term = (ndl + gamma) / (ndl + m.alpha_sum_[l]);
        for (int z = 0; z < T; ++z) {
          const std::size_t k = m.lz(l, z);
          const double word_term = (c.label_topic_word[k * m.words_.size() + w] + prior_w) /
                                   (c.label_topic[k] + prior_sum);
          const double topic_term = c.doc_label_topic[m.dlz(d, l, z)] + m.alpha_[k];
          total += word_term * topic_term * doc_term;
          cumulative[k] = total;
        }
      }
      if (!(total > 0.0) || !std::isfinite(total)) {
        throw invariant_error("unnormalisable sampling distribution at token " + std::to_string(i));
      }

      const double u = rng.uniform() * total;
      std::size_t pick = std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin();
      if (pick >= cumulative.size()) pick = cumulative.size() - 1;
      increment(m, i,
                Assignment{static_cast<std::uint16_t>(pick / T), static_cast<std::uint16_t>(pick % T)});
    }
  }

  static bool update_alpha(JstModel& m) {
    const int S = m.labels_, T = m.topics_;
    const std::size_t D = m.doc_count_;
    const auto& c = m.counts_;
    bool all_updated = true;

    for (int l = 0; l < S; ++l) {
      std::size_t contributing = 0;
      for (std::size_t d = 0; d < D; ++d) contributing += c.doc_label[m.dl(d, l)] > 0;

      std::vector<double> current(T);
      for (int z = 0; z < T; ++z) current[z] = m.alpha_[m.lz(l, z)];

      if (contributing < 2) {
        // One document (or none) cannot pin down a Dirichlet; floor the empty topics only.
        for (int z = 0; z < T; ++z) {
          std::uint64_t n = 0;
          for (std::size_t d = 0; d < D; ++d) n += c.doc_label_topic[m.dlz(d, l, z)];
          if (n == 0) m.alpha_[m.lz(l, z)] = kAlphaFloor;
        }
        warn("alpha update for label " + std::to_string(l) + " is degenerate (" + std::to_string(contributing) +
             " contributing documents); empty topics floored");
        all_updated = false;
        continue;
      }

      std::vector<double> next(T);
      bool converged = false;
      for (int iter = 0; iter < kAlphaMaxInner && !converged; ++iter) {
        const double a0 = std::accumulate(current.begin(), current.end(), 0.0);
        double denom = 0.0;
        for (std::size_t d = 0; d < D; ++d) denom += digamma_diff(a0, c.doc_label[m.dl(d, l)]);
        if (!(denom > 0.0)) break;
        double max_rel = 0.0;
        for (int z = 0; z < T; ++z) {
          double num = 0.0;
          for (std::size_t d = 0; d < D; ++d) num += digamma_diff(current[z], c.doc_label_topic[m.dlz(d, l, z)]);
          next[z] = std::max(kAlphaFloor, current[z] * num / denom);
          max_rel = std::max(max_rel, std::abs(next[z] - current[z]) / current[z]);
        }
        current.swap(next);
        converged = max_rel < kAlphaTolerance;
      }

      bool finite = std::all_of(current.begin(), current.end(), [](double a) { return std::isfinite(a) && a > 0; });
      if (!converged || !finite) {
        warn("alpha fixed-point for label " + std::to_string(l) + " did not converge; keeping previous alpha");
        all_updated = false;
        continue;
      }
      for (int z = 0; z < T; ++z) m.alpha_[m.lz(l, z)] = current[z];
    }
    refresh_alpha_sums(m);
    return all_updated;
  }

  static void estimate(JstModel& m) {
    const int S = m.labels_, T = m.topics_;
    const std::size_t D = m.doc_count_;
    m.phi_ = estimate_phi(m);
    m.pi_.assign(D * S, 0.0);
    m.theta_.assign(D * S * T, 0.0);
    const auto& c = m.counts_;
    const double gamma = m.config_.gamma;
    for (std::size_t d = 0; d < D; ++d) {
      for (int l = 0; l < S; ++l) {
        m.pi_[m.dl(d, l)] = (c.doc_label[m.dl(d, l)] + gamma) / (c.doc[d] + S * gamma);
        for (int z = 0; z < T; ++z) {
          m.theta_[m.dlz(d, l, z)] =
              (c.doc_label_topic[m.dlz(d, l, z)] + m.alpha_[m.lz(l, z)]) / (c.doc_label[m.dl(d, l)] + m.alpha_sum_[l]);
        }
      }
    }
  }

  static void push_log_likelihood(JstModel& m, double ll) { m.log_likelihood_.push_back(ll); }

  static void restore(JstModel& m, const nlohmann::json& j);
};

JstModel initialize_model(const TaggedCorpus& corpus, const SentimentLexicon& lexicon, const JstConfig& cfg,
                          Rng& rng) {
  JstModel m;
  ModelAccess::setup(m, corpus, lexicon, cfg);
  const auto S = static_cast<std::uint32_t>(cfg.sentiment_labels);
  const auto T = static_cast<std::uint32_t>(cfg.topics);
  for (std::size_t i = 0; i < m.total_tokens(); ++i) {
    const WordId w = m.token_words()[i];
    Assignment a;
    auto pol = lexicon.find(m.word(w));
    int target = pol ? polarity_label(*pol, cfg) : -1;
    a.label = static_cast<std::uint16_t>((target >= 0 && target < static_cast<int>(S)) ? target : rng.below(S));
    a.topic = static_cast<std::uint16_t>(rng.below(T));
    ModelAccess::increment(m, i, a);
  }
  estimate_parameters(m);
  return m;
}

JstModel model_from_assignments(const TaggedCorpus& corpus, const SentimentLexicon& lexicon, const JstConfig& cfg,
                                std::span<const Assignment> assignments) {
  JstModel m;
  ModelAccess::setup(m, corpus, lexicon, cfg);
  if (assignments.size() != m.total_tokens()) {
    throw validation_error("assignment count " + std::to_string(assignments.size()) + " does not match " +
                           std::to_string(m.total_tokens()) + " in-vocabulary tokens");
  }
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i].label >= cfg.sentiment_labels || assignments[i].topic >= cfg.topics) {
      throw validation_error("assignment out of range at token " + std::to_string(i));
    }
    ModelAccess::increment(m, i, assignments[i]);
  }
  estimate_parameters(m);
  return m;
}

void gibbs_sweep(JstModel& model, Rng& rng) { ModelAccess::sweep(model, rng); }

bool update_alpha(JstModel& model) { return ModelAccess::update_alpha(model); }

void estimate_parameters(JstModel& model) { ModelAccess::estimate(model); }

std::vector<double> estimate_phi(const JstModel& m) {
  const int S = m.labels(), T = m.topics();
  const std::size_t V = m.vocab_size();
  const auto& c = m.counts();
  const auto& prior = m.prior();
  std::vector<double> phi(static_cast<std::size_t>(S) * T * V);
  for (int l = 0; l < S; ++l) {
    for (int z = 0; z < T; ++z) {
      const double denom = c.label_topic[m.lz(l, z)] + prior.row_sums[l];
      for (WordId w = 0; w < V; ++w) {
        phi[m.lzw(l, z, w)] = (c.label_topic_word[m.lzw(l, z, w)] + prior.at(l, w)) / denom;
      }
    }
  }
  return phi;
}

double log_likelihood(const JstModel& m) {
  const int S = m.labels(), T = m.topics();
  const std::size_t V = m.vocab_size();
  const auto& c = m.counts();
  const auto& prior = m.prior();
  double ll = 0.0;
  for (int l = 0; l < S; ++l) {
    const double psum = prior.row_sums[l];
    for (int z = 0; z < T; ++z) {
      ll += std::lgamma(psum) - std::lgamma(c.label_topic[m.lz(l, z)] + psum);
      for (WordId w = 0; w < V; ++w) {
        const std::uint32_t n = c.label_topic_word[m.lzw(l, z, w)];
        const double p = prior.at(l, w);
        if (n == 0 || p == 0.0) continue;
        ll += std::lgamma(n + p) - std::lgamma(p);
      }
    }
  }
  return ll;
}

JstModel train(const TaggedCorpus& corpus, const SentimentLexicon& lexicon, const JstConfig& cfg,
               const std::function<void(int, double)>& on_sweep) {
  Rng rng(cfg.seed);
  JstModel m = initialize_model(corpus, lexicon, cfg, rng);
  for (int it = 1; it <= cfg.iterations; ++it) {
    gibbs_sweep(m, rng);
    if (cfg.alpha_update_interval > 0 && it % cfg.alpha_update_interval == 0) update_alpha(m);
    const double ll = log_likelihood(m);
    ModelAccess::push_log_likelihood(m, ll);
    if (on_sweep) on_sweep(it, ll);
  }
  estimate_parameters(m);
  return m;
}

CountTensors rebuild_counts(const JstModel& m) {
  CountTensors c;
  const std::size_t S = m.labels(), T = m.topics(), V = m.vocab_size(), D = m.documents();
  c.label_topic_word.assign(S * T * V, 0);
  c.label_topic.assign(S * T, 0);
  c.doc_label_topic.assign(D * S * T, 0);
  c.doc_label.assign(D * S, 0);
  c.doc.assign(D, 0);
  for (std::size_t i = 0; i < m.total_tokens(); ++i) {
    const WordId w = m.token_words()[i];
    const DocId d = m.token_docs()[i];
    const Assignment a = m.assignments()[i];
    ++c.label_topic_word[m.lzw(a.label, a.topic, w)];
    ++c.label_topic[m.lz(a.label, a.topic)];
    ++c.doc_label_topic[m.dlz(d, a.label, a.topic)];
    ++c.doc_label[m.dl(d, a.label)];
    ++c.doc[d];
  }
  return c;
}

void check_invariants(const JstModel& m) {
  const int S = m.labels(), T = m.topics();
  const std::size_t V = m.vocab_size(), D = m.documents();
  const auto& c = m.counts();

  if (rebuild_counts(m) != c) throw invariant_error("count tensors disagree with assignments");

  for (int l = 0; l < S; ++l) {
    for (int z = 0; z < T; ++z) {
      std::uint64_t sum = 0;
      for (WordId w = 0; w < V; ++w) sum += c.label_topic_word[m.lzw(l, z, w)];
      if (sum != c.label_topic[m.lz(l, z)]) throw invariant_error("sum_w N_{l,z,w} != N_{l,z}");
    }
  }
  std::uint64_t total = 0;
  for (std::size_t d = 0; d < D; ++d) {
    std::uint64_t sum = 0;
    for (int l = 0; l < S; ++l) sum += c.doc_label[m.dl(d, l)];
    if (sum != c.doc[d]) throw invariant_error("sum_l N_{d,l} != N_d");
    total += c.doc[d];
  }
  if (total != m.total_tokens()) throw invariant_error("sum_d N_d != total in-vocabulary tokens");

  auto phi = m.phi();
  if (phi.size() == static_cast<std::size_t>(S) * T * V) {
    for (int l = 0; l < S; ++l) {
      for (int z = 0; z < T; ++z) {
        auto row = phi.subspan(m.lzw(l, z, 0), V);
        const double s = std::accumulate(row.begin(), row.end(), 0.0);
        if (std::abs(s - 1.0) > 1e-9) throw invariant_error("phi row does not sum to 1");
      }
    }
  }
  for (double a : m.alpha()) {
    if (!(a > 0.0)) throw invariant_error("non-positive alpha");
  }
}

std::vector<WordId> top_words(const JstModel& m, int l, int z, std::size_t n) {
  const std::size_t V = m.vocab_size();
  std::vector<WordId> ids(V);
  std::iota(ids.begin(), ids.end(), WordId{0});
  n = std::min(n, V);
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n), ids.end(), [&](WordId a, WordId b) {
    const double pa = m.phi(l, z, a), pb = m.phi(l, z, b);
    if (pa != pb) return pa > pb;
    return a < b;
  });
  ids.resize(n);
  return ids;
}

std::vector<SentimentTopic> sentiment_topics(const JstModel& m, std::size_t n) {
  std::vector<SentimentTopic> out;
  out.reserve(static_cast<std::size_t>(m.labels()) * m.topics());
  for (int l = 0; l < m.labels(); ++l)
    for (int z = 0; z < m.topics(); ++z) out.push_back({l, z, top_words(m, l, z, n)});
  return out;
}

// --- serialisation ---------------------------------------------------------

namespace {

nlohmann::json config_to_json(const JstConfig& c) {
  nlohmann::json j;
  j["sentiment_labels"] = c.sentiment_labels;
  j["topics"] = c.topics;
  j["beta"] = c.beta;
  j["gamma"] = c.gamma;
  j["alpha_init"] = c.alpha_init ? nlohmann::json(*c.alpha_init) : nlohmann::json(nullptr);
  j["alpha_update_interval"] = c.alpha_update_interval;
  j["iterations"] = c.iterations;
  j["burn_in"] = c.burn_in;
  j["seed"] = c.seed;
  j["lambda_scale"] = c.lambda_scale;
  j["epsilon"] = c.epsilon;
  j["positive_label"] = c.positive_label;
  j["negative_label"] = c.negative_label;
  return j;
}

JstConfig config_from_json(const nlohmann::json& j) {
  JstConfig c;
  c.sentiment_labels = j.at("sentiment_labels").get<int>();
  c.topics = j.at("topics").get<int>();
  c.beta = j.at("beta").get<double>();
  c.gamma = j.at("gamma").get<double>();
  if (!j.at("alpha_init").is_null()) c.alpha_init = j.at("alpha_init").get<double>();
  c.alpha_update_interval = j.at("alpha_update_interval").get<int>();
  c.iterations = j.at("iterations").get<int>();
  c.burn_in = j.at("burn_in").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.lambda_scale = j.at("lambda_scale").get<double>();
  c.epsilon = j.at("epsilon").get<double>();
  c.positive_label = j.at("positive_label").get<int>();
  c.negative_label = j.at("negative_label").get<int>();
  return c;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[i] = digits[v & 0xf];
  return s;
}

std::uint64_t parse_hex64(const std::string& s) {
  if (s.size() != 16) throw validation_error("malformed corpus fingerprint");
  return std::stoull(s, nullptr, 16);
}

}  // namespace

void ModelAccess::restore(JstModel& m, const nlohmann::json& j) {
  m.config_ = config_from_json(j.at("config"));
  m.config_.validate();
  m.labels_ = m.config_.sentiment_labels;
  m.topics_ = m.config_.topics;
  m.fingerprint_ = parse_hex64(j.at("corpus_fingerprint").get<std::string>());
  m.doc_count_ = j.at("documents").get<std::size_t>();
  m.words_ = j.at("vocabulary").get<std::vector<std::string>>();
  m.token_words_ = j.at("token_words").get<std::vector<WordId>>();
  m.token_docs_ = j.at("token_docs").get<std::vector<DocId>>();

  const std::size_t S = m.labels_, T = m.topics_, V = m.words_.size(), D = m.doc_count_, N = m.token_words_.size();
  if (V == 0) throw validation_error("model vocabulary is empty");
  if (m.token_docs_.size() != N) throw validation_error("token arrays differ in length");
  for (std::size_t i = 0; i < N; ++i) {
    if (m.token_words_[i] >= V || m.token_docs_[i] >= D) throw validation_error("token reference out of range");
  }

  auto labels = j.at("assignment_labels").get<std::vector<std::uint16_t>>();
  auto topics = j.at("assignment_topics").get<std::vector<std::uint16_t>>();
  if (labels.size() != N || topics.size() != N) throw validation_error("assignment array has wrong length");
  m.assignments_.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    if (labels[i] >= S || topics[i] >= T) throw validation_error("assignment out of range");
    m.assignments_[i] = {labels[i], topics[i]};
  }

  const auto& jc = j.at("counts");
  m.counts_.label_topic_word = jc.at("label_topic_word").get<std::vector<std::uint32_t>>();
  m.counts_.label_topic = jc.at("label_topic").get<std::vector<std::uint32_t>>();
  m.counts_.doc_label_topic = jc.at("doc_label_topic").get<std::vector<std::uint32_t>>();
  m.counts_.doc_label = jc.at("doc_label").get<std::vector<std::uint32_t>>();
  m.counts_.doc = jc.at("doc").get<std::vector<std::uint32_t>>();
  if (m.counts_.label_topic_word.size() != S * T * V || m.counts_.label_topic.size() != S * T ||
      m.counts_.doc_label_topic.size() != D * S * T || m.counts_.doc_label.size() != D * S ||
      m.counts_.doc.size() != D) {
    throw validation_error("count tensor has wrong shape");
  }

  const auto& jp = j.at("prior");
  m.prior_.labels = m.labels_;
  m.prior_.vocab_size = V;
  m.prior_.lambda = jp.at("lambda").get<double>();
  m.prior_.values = jp.at("values").get<std::vector<double>>();
  if (m.prior_.values.size() != S * V) throw validation_error("prior has wrong shape");
  m.prior_.row_sums.assign(S, 0.0);
  for (std::size_t l = 0; l < S; ++l)
    for (std::size_t w = 0; w < V; ++w) m.prior_.row_sums[l] += m.prior_.values[l * V + w];

  m.alpha_ = j.at("alpha").get<std::vector<double>>();
  if (m.alpha_.size() != S * T) throw validation_error("alpha has wrong shape");
  refresh_alpha_sums(m);
  m.log_likelihood_ = j.at("log_likelihood").get<std::vector<double>>();

  auto stored_phi = j.at("phi").get<std::vector<double>>();
  estimate(m);
  if (stored_phi.size() != m.phi_.size()) throw validation_error("phi has wrong shape");
  for (std::size_t k = 0; k < stored_phi.size(); ++k) {
    if (std::abs(stored_phi[k] - m.phi_[k]) > 1e-12 * std::max(1.0, std::abs(m.phi_[k]))) {
      throw validation_error("stored phi disagrees with counts");
    }
  }
  m.phi_ = std::move(stored_phi);
}

void write_model(std::ostream& out, const JstModel& m) {
  nlohmann::json j;
  j["format"] = "jst-model";
  j["version"] = kModelFormatVersion;
  j["config"] = config_to_json(m.config());
  j["corpus_fingerprint"] = hex64(m.corpus_fingerprint());
  j["documents"] = m.documents();
  j["vocabulary"] = m.words();
  j["token_words"] = m.token_words();
  j["token_docs"] = m.token_docs();
  std::vector<std::uint16_t> labels, topics;
  labels.reserve(m.total_tokens());
  topics.reserve(m.total_tokens());
  for (const auto& a : m.assignments()) {
    labels.push_back(a.label);
    topics.push_back(a.topic);
  }
  j["assignment_labels"] = labels;
  j["assignment_topics"] = topics;
  j["counts"] = {{"label_topic_word", m.counts().label_topic_word},
                 {"label_topic", m.counts().label_topic},
                 {"doc_label_topic", m.counts().doc_label_topic},
                 {"doc_label", m.counts().doc_label},
                 {"doc", m.counts().doc}};
  j["prior"] = {{"lambda", m.prior().lambda}, {"values", m.prior().values}};
  j["alpha"] = m.alpha();
  j["phi"] = m.phi();
  j["log_likelihood"] = m.log_likelihood_trace();
  out << j.dump() << '\n';
}

JstModel read_model(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("model archive is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "jst-model") throw validation_error("not a JST model archive");
    const int version = j.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw validation_error("unsupported model archive version " + std::to_string(version));
    }
    JstModel m;
    ModelAccess::restore(m, j);
    check_invariants(m);
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("malformed model archive: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Invariant) throw validation_error(std::string("model archive rejected: ") + e.what());
    throw;
  }
}

void save_model(const std::string& path, const JstModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot write " + path);
  write_model(out, model);
  if (!out) throw validation_error("failed writing " + path);
}

JstModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open " + path);
  return read_model(in);
}

}  // namespace jstlabel
