#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "error.hpp"
#include "helpers.hpp"
#include "jst.hpp"

using namespace jstlabel;
using testing_util::corpus_from;
using testing_util::lexicon_from;

namespace {

// n distinct two-letter words per document, one sentence each.
std::string numbered_words(int n, int docs = 1) {
  static const char* letters = "abcdefghijklmnopqrstuvwxyz";
  std::ostringstream out;
  int k = 0;
  for (int d = 0; d < docs; ++d) {
    out << d << "\t0\t";
    for (int i = 0; i < n; ++i, ++k) {
      out << (i ? " " : "") << "w" << letters[k / 26 % 26] << letters[k % 26] << "/NN";
    }
    out << '\n';
  }
  return out.str();
}

double exact_digamma_diff(double x, std::uint32_t n) {
  double s = 0.0;
  for (std::uint32_t k = 0; k < n; ++k) s += 1.0 / (x + k);
  return s;
}

}  // namespace

TEST(JstConfig, RejectsInvalidSettings) {
  JstConfig c;
  c.topics = 0;
  EXPECT_THROW(c.validate(), Error);
  c = JstConfig{};
  c.beta = 0.0;
  EXPECT_THROW(c.validate(), Error);
  c = JstConfig{};
  c.burn_in = c.iterations;
  EXPECT_THROW(c.validate(), Error);
  EXPECT_NO_THROW(JstConfig{}.validate());
}

TEST(LexiconPrior, ModulatesLexiconWords) {
  auto c = corpus_from("0\t0\tgood/JJ box/NN bad/JJ\n");
  auto lex = lexicon_from("good\tpositive\nbad\tnegative\n");
  JstConfig cfg;
  auto p = build_lexicon_prior(lex, c.vocabulary(), cfg, 25.0);
  EXPECT_DOUBLE_EQ(p.lambda, 0.625);
  const WordId good = *c.vocabulary().find("good");
  const WordId box = *c.vocabulary().find("box");
  const WordId bad = *c.vocabulary().find("bad");
  EXPECT_DOUBLE_EQ(p.at(0, good), 0.625 * 0.01);
  EXPECT_DOUBLE_EQ(p.at(1, good), 1e-7 * 0.01);
  EXPECT_DOUBLE_EQ(p.at(0, box), 0.01);
  EXPECT_DOUBLE_EQ(p.at(1, box), 0.01);
  EXPECT_DOUBLE_EQ(p.at(1, bad), 0.625 * 0.01);
  EXPECT_DOUBLE_EQ(p.at(0, bad), 1e-7 * 0.01);
  EXPECT_DOUBLE_EQ(p.row_sums[0], 0.625 * 0.01 + 0.01 + 1e-9);
}

TEST(LexiconPrior, EmptyLexiconIsUniform) {
  auto c = corpus_from("0\t0\tgood/JJ box/NN bad/JJ\n");
  auto p = build_lexicon_prior(SentimentLexicon{}, c.vocabulary(), JstConfig{}, 3.0);
  for (double v : p.values) EXPECT_DOUBLE_EQ(v, 0.01);
}

TEST(Phi, AllZeroCountsGiveUniform) {
  auto c = corpus_from(numbered_words(4));
  JstConfig cfg;
  cfg.sentiment_labels = 1;
  cfg.topics = 2;
  std::vector<Assignment> a(4, Assignment{0, 0});
  auto m = model_from_assignments(c, SentimentLexicon{}, cfg, a);
  for (WordId w = 0; w < 4; ++w) EXPECT_DOUBLE_EQ(m.phi(0, 1, w), 0.25);
}

TEST(Phi, MatchesCountFormula) {
  // 100 distinct words, N_{0,0,w0} = 5, N_{0,0} = 10.
  std::ostringstream text;
  text << "0\t0\t";
  for (int i = 0; i < 5; ++i) text << "waa/NN ";
  text << numbered_words(100).substr(4);
  auto c = corpus_from(text.str());
  ASSERT_EQ(c.vocabulary().size(), 100u);
  JstConfig cfg;
  cfg.sentiment_labels = 1;
  cfg.topics = 2;
  const WordId w0 = *c.vocabulary().find("waa");
  // Tokens 0-4 and 5 are waa; topic 0 takes five of them plus five other words.
  std::vector<Assignment> b(c.total_tokens(), Assignment{0, 1});
  for (int i = 0; i < 5; ++i) b[i] = Assignment{0, 0};
  for (int i = 6; i < 11; ++i) b[i] = Assignment{0, 0};
  auto m2 = model_from_assignments(c, SentimentLexicon{}, cfg, b);
  EXPECT_EQ(m2.counts().label_topic_word[m2.lzw(0, 0, w0)], 5u);
  EXPECT_EQ(m2.counts().label_topic[m2.lz(0, 0)], 10u);
  EXPECT_NEAR(m2.phi(0, 0, w0), 5.01 / 11.0, 1e-15);
  EXPECT_NEAR(m2.phi(0, 0, w0), 0.45545, 1e-5);
  double sum = 0.0;
  for (WordId w = 0; w < 100; ++w) sum += m2.phi(0, 0, w);
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Gibbs, SingleTokenSingleCell) {
  auto c = corpus_from("0\t0\tbox/NN\n");
  JstConfig cfg;
  cfg.sentiment_labels = 1;
  cfg.topics = 1;
  cfg.iterations = 3;
  cfg.burn_in = 1;
  auto m = train(c, SentimentLexicon{}, cfg);
  EXPECT_EQ(m.assignments()[0], (Assignment{0, 0}));
  EXPECT_EQ(m.counts().label_topic_word[0], 1u);
}

TEST(Gibbs, ZeroEpsilonPinsLexiconWords) {
  auto c = corpus_from("0\t0\tgood/JJ box/NN\n");
  auto lex = lexicon_from("good\tpositive\n");
  JstConfig cfg;
  cfg.topics = 1;
  cfg.epsilon = 0.0;
  cfg.iterations = 1000;
  cfg.burn_in = 0;
  Rng rng(3);
  auto m = initialize_model(c, lex, cfg, rng);
  const WordId good = *c.vocabulary().find("good");
  for (int it = 0; it < 1000; ++it) {
    gibbs_sweep(m, rng);
    for (std::size_t i = 0; i < m.total_tokens(); ++i) {
      if (m.token_words()[i] == good) ASSERT_EQ(m.assignments()[i].label, 0);
    }
  }
}

TEST(Gibbs, ConservesCountsEverySweep) {
  std::mt19937 gen(11);
  auto c = corpus_from(testing_util::random_corpus_text(gen, 30, 4, 8));
  auto lex = lexicon_from(testing_util::kToyLexicon);
  JstConfig cfg;
  cfg.topics = 3;
  cfg.alpha_update_interval = 5;
  Rng rng(5);
  auto m = initialize_model(c, lex, cfg, rng);
  for (int it = 1; it <= 40; ++it) {
    gibbs_sweep(m, rng);
    if (it % 5 == 0) update_alpha(m);
    EXPECT_NO_THROW(check_invariants(m));
    const auto& n = m.counts();
    EXPECT_EQ(std::accumulate(n.label_topic.begin(), n.label_topic.end(), std::uint64_t{0}), c.total_tokens());
  }
  for (double a : m.alpha()) EXPECT_GT(a, 0.0);
}

TEST(Gibbs, SameSeedSameModel) {
  std::mt19937 gen(2);
  auto c = corpus_from(testing_util::random_corpus_text(gen, 20, 3, 6));
  auto lex = lexicon_from(testing_util::kToyLexicon);
  JstConfig cfg;
  cfg.topics = 2;
  cfg.iterations = 60;
  cfg.burn_in = 10;
  cfg.alpha_update_interval = 20;
  auto a = train(c, lex, cfg);
  auto b = train(c, lex, cfg);
  EXPECT_TRUE(std::equal(a.assignments().begin(), a.assignments().end(), b.assignments().begin()));
  EXPECT_TRUE(std::equal(a.phi().begin(), a.phi().end(), b.phi().begin()));
  EXPECT_EQ(a.log_likelihood_trace().size(), 60u);
  cfg.seed = 99;
  auto d = train(c, lex, cfg);
  EXPECT_FALSE(std::equal(a.assignments().begin(), a.assignments().end(), d.assignments().begin()));
}

TEST(Gibbs, ExposesTwentyTopics) {
  std::mt19937 gen(4);
  auto c = corpus_from(testing_util::random_corpus_text(gen, 10, 3, 6));
  JstConfig cfg;
  cfg.iterations = 5;
  cfg.burn_in = 1;
  auto m = train(c, lexicon_from(testing_util::kToyLexicon), cfg);
  EXPECT_EQ(sentiment_topics(m, 10).size(), 20u);
}

TEST(Alpha, FixedPointOnOverdispersedCounts) {
  // Documents drawn from Dirichlet(2, 1, 0.5) topic mixtures.
  std::mt19937_64 gen(17);
  const std::vector<double> truth = {2.0, 1.0, 0.5};
  const int D = 400, N = 60;
  std::ostringstream text;
  std::vector<Assignment> assign;
  for (int d = 0; d < D; ++d) {
    std::vector<double> theta(3);
    for (int z = 0; z < 3; ++z) theta[z] = std::gamma_distribution<double>(truth[z], 1.0)(gen);
    std::discrete_distribution<int> pick(theta.begin(), theta.end());
    text << d << "\t0\t";
    for (int i = 0; i < N; ++i) {
      text << (i ? " " : "") << "box/NN";
      assign.push_back(Assignment{0, static_cast<std::uint16_t>(pick(gen))});
    }
    text << '\n';
  }
  auto c = corpus_from(text.str());
  JstConfig cfg;
  cfg.sentiment_labels = 1;
  cfg.topics = 3;
  cfg.alpha_init = 0.3;
  auto m = model_from_assignments(c, SentimentLexicon{}, cfg, assign);
  ASSERT_TRUE(update_alpha(m));

  // Independent check of the stationarity condition with exact digamma differences.
  const double a0 = m.alpha(0, 0) + m.alpha(0, 1) + m.alpha(0, 2);
  double denom = 0.0;
  for (int d = 0; d < D; ++d) denom += exact_digamma_diff(a0, m.counts().doc_label[m.dl(d, 0)]);
  for (int z = 0; z < 3; ++z) {
    double num = 0.0;
    for (int d = 0; d < D; ++d) num += exact_digamma_diff(m.alpha(0, z), m.counts().doc_label_topic[m.dlz(d, 0, z)]);
    EXPECT_NEAR(m.alpha(0, z) * num / denom, m.alpha(0, z), 1e-4 * m.alpha(0, z));
  }
  // Ordering and rough magnitude of the generating parameters come back.
  EXPECT_GT(m.alpha(0, 0), m.alpha(0, 1));
  EXPECT_GT(m.alpha(0, 1), m.alpha(0, 2));
  EXPECT_NEAR(m.alpha(0, 0) / m.alpha(0, 2), 4.0, 1.2);
}

TEST(Alpha, SingleDocumentFloorsEmptyTopics) {
  auto c = corpus_from("0\t0\tgood/JJ box/NN lid/NN\n");
  JstConfig cfg;
  cfg.sentiment_labels = 1;
  cfg.topics = 3;
  cfg.alpha_init = 0.2;
  std::vector<Assignment> a = {{0, 0}, {0, 0}, {0, 1}};
  auto m = model_from_assignments(c, SentimentLexicon{}, cfg, a);
  EXPECT_FALSE(update_alpha(m));
  EXPECT_DOUBLE_EQ(m.alpha(0, 0), 0.2);
  EXPECT_DOUBLE_EQ(m.alpha(0, 1), 0.2);
  EXPECT_DOUBLE_EQ(m.alpha(0, 2), 1e-6);
}

TEST(Alpha, IdenticalDocumentsKeepPreviousAlpha) {
  // Identical mixtures push the maximum-likelihood concentration to infinity.
  std::ostringstream text;
  std::vector<Assignment> a;
  for (int d = 0; d < 10; ++d) {
    text << d << "\t0\tbox/NN box/NN box/NN box/NN\n";
    a.insert(a.end(), {{0, 0}, {0, 0}, {0, 1}, {0, 2}});
  }
  auto c = corpus_from(text.str());
  JstConfig cfg;
  cfg.sentiment_labels = 1;
  cfg.topics = 3;
  cfg.alpha_init = 0.5;
  auto m = model_from_assignments(c, SentimentLexicon{}, cfg, a);
  update_alpha(m);
  for (double v : m.alpha()) {
    EXPECT_GT(v, 0.0);
    EXPECT_TRUE(std::isfinite(v));
  }
}

TEST(TopWords, TiesByIdAndClamp) {
  auto c = corpus_from(numbered_words(6));
  JstConfig cfg;
  cfg.sentiment_labels = 1;
  cfg.topics = 2;
  std::vector<Assignment> a(6, Assignment{0, 1});
  auto m = model_from_assignments(c, SentimentLexicon{}, cfg, a);
  EXPECT_EQ(top_words(m, 0, 0, 3), (std::vector<WordId>{0, 1, 2}));
  EXPECT_EQ(top_words(m, 0, 0, 11).size(), 6u);
  std::vector<Assignment> b(6, Assignment{0, 1});
  b[4] = Assignment{0, 0};
  auto m2 = model_from_assignments(c, SentimentLexicon{}, cfg, b);
  EXPECT_EQ(top_words(m2, 0, 0, 2), (std::vector<WordId>{4, 0}));
}

TEST(ModelArchive, RoundTripAndTamperDetection) {
  std::mt19937 gen(8);
  auto c = corpus_from(testing_util::random_corpus_text(gen, 15, 3, 6));
  JstConfig cfg;
  cfg.topics = 2;
  cfg.iterations = 30;
  cfg.burn_in = 5;
  auto m = train(c, lexicon_from(testing_util::kToyLexicon), cfg);
  std::stringstream buf;
  write_model(buf, m);
  const std::string text = buf.str();
  auto back = read_model(buf);
  EXPECT_TRUE(std::equal(m.assignments().begin(), m.assignments().end(), back.assignments().begin()));
  EXPECT_EQ(m.counts(), back.counts());
  EXPECT_TRUE(std::equal(m.phi().begin(), m.phi().end(), back.phi().begin()));
  EXPECT_EQ(m.corpus_fingerprint(), back.corpus_fingerprint());
  std::stringstream again;
  write_model(again, back);
  EXPECT_EQ(text, again.str());

  // A corrupted count table must not load.
  auto pos = text.find("\"label_topic\":[");
  ASSERT_NE(pos, std::string::npos);
  std::string bad = text;
  auto digit = bad.find_first_of("0123456789", pos);
  bad[digit] = bad[digit] == '9' ? '8' : static_cast<char>(bad[digit] + 1);
  std::stringstream tampered(bad);
  EXPECT_THROW(read_model(tampered), Error);

  std::stringstream garbage("{not json");
  EXPECT_THROW(read_model(garbage), Error);
}
