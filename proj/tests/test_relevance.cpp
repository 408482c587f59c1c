#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "error.hpp"
#include "helpers.hpp"
#include "relevance.hpp"

using namespace jstlabel;
using testing_util::corpus_from;
using testing_util::lexicon_from;

namespace {

TopicWordView view_of(int S, int T, std::size_t V, const std::vector<double>& phi) { return {S, T, V, phi}; }

JstModel small_model(const TaggedCorpus& c, int topics, std::uint64_t seed, int iterations = 20) {
  JstConfig cfg;
  cfg.topics = topics;
  cfg.iterations = iterations;
  cfg.burn_in = 0;
  cfg.seed = seed;
  return train(c, lexicon_from(testing_util::kToyLexicon), cfg);
}

}  // namespace

TEST(PLzGivenSent, SingleTokenOnItsTopic) {
  std::vector<double> phi = {0.5, 0.5, 0.2, 0.8};
  auto v = view_of(1, 2, 2, phi);
  std::vector<WordId> w = {1};
  std::vector<Assignment> a = {{0, 1}};
  EXPECT_DOUBLE_EQ(p_lz_given_tokens(v, w, a, 0, 1), 1.0);
  EXPECT_DOUBLE_EQ(p_lz_given_tokens(v, w, a, 0, 0), 0.0);
}

TEST(PLzGivenSent, MassFraction) {
  // phi(0,0,w0) = 0.3, phi(1,0,w1) = 0.1
  std::vector<double> phi = {0.3, 0.7, 0.9, 0.1};
  auto v = view_of(2, 1, 2, phi);
  std::vector<WordId> w = {0, 1};
  std::vector<Assignment> a = {{0, 0}, {1, 0}};
  EXPECT_DOUBLE_EQ(p_lz_given_tokens(v, w, a, 0, 0), 0.75);
  EXPECT_DOUBLE_EQ(p_lz_given_tokens(v, w, a, 1, 0), 0.25);
  EXPECT_DOUBLE_EQ(p_lz_given_tokens(v, {}, {}, 0, 0), 0.0);
}

TEST(PSent, SingleCellIsProduct) {
  std::vector<double> phi = {0.2, 0.3, 0.5};
  auto v = view_of(1, 1, 3, phi);
  std::vector<WordId> w = {0, 2, 2};
  EXPECT_NEAR(std::exp(log_p_tokens(v, w)), 0.2 * 0.5 * 0.5, 1e-15);
}

TEST(PSent, UniformClosedForm) {
  const int S = 2, T = 5;
  const std::size_t V = 40;
  std::vector<double> phi(S * T * V, 1.0 / V);
  auto v = view_of(S, T, V, phi);
  std::vector<WordId> w = {3, 7, 7, 39};
  EXPECT_NEAR(std::exp(log_p_tokens(v, w)), S * T * std::pow(V, -4.0), 1e-12 * S * T * std::pow(V, -4.0));
  EXPECT_TRUE(std::isinf(log_p_tokens(v, {})));
}

TEST(PSent, MatchesDirectSummation) {
  std::mt19937_64 gen(21);
  const int S = 2, T = 10;
  const std::size_t V = 30;
  std::vector<double> phi(S * T * V);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int k = 0; k < S * T; ++k) {
    double sum = 0.0;
    for (std::size_t w = 0; w < V; ++w) sum += phi[k * V + w] = u(gen);
    for (std::size_t w = 0; w < V; ++w) phi[k * V + w] /= sum;
  }
  auto v = view_of(S, T, V, phi);
  std::vector<WordId> words = {4, 17, 29};
  double direct = 0.0;
  for (int l = 0; l < S; ++l) {
    for (int z = 0; z < T; ++z) {
      double prod = 1.0;
      for (WordId w : words) prod *= phi[(l * T + z) * V + w];
      direct += prod;
    }
  }
  EXPECT_NEAR(std::exp(log_p_tokens(v, words)), direct, 1e-12 * direct);
}

TEST(Normalise, ScoresAndOrder) {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> logs(1);
  logs[0] = {{4, std::log(0.1)}, {2, std::log(0.3)}, {9, -std::numeric_limits<double>::infinity()}};
  auto t = normalise_log_scores(1, 1, logs);
  auto r = t.ranking(0, 0);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].id, 2u);
  EXPECT_NEAR(r[0].score, 0.75, 1e-15);
  EXPECT_NEAR(r[1].score, 0.25, 1e-15);

  // Scaling all scores leaves the table unchanged.
  auto scaled = logs;
  for (auto& e : scaled[0]) e.second += 123.0;
  auto t2 = normalise_log_scores(1, 1, scaled);
  EXPECT_EQ(t2.ranking(0, 0)[0].id, 2u);
  EXPECT_NEAR(t2.ranking(0, 0)[0].score, 0.75, 1e-12);
}

TEST(Normalise, TiesBrokenById) {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> logs(1);
  logs[0] = {{8, -1.0}, {3, -1.0}, {5, -1.0}};
  auto t = normalise_log_scores(1, 1, logs);
  EXPECT_EQ(t.ranking(0, 0)[0].id, 3u);
  EXPECT_EQ(t.ranking(0, 0)[1].id, 5u);
  EXPECT_EQ(t.ranking(0, 0)[2].id, 8u);
}

TEST(ScoreSentences, SingleSentenceGetsEverything) {
  auto c = corpus_from("0\t0\tgood/JJ lid/NN broke/VBD\n");
  auto m = small_model(c, 2, 1);
  auto t = score_sentences(c, m);
  for (int l = 0; l < 2; ++l) {
    for (int z = 0; z < 2; ++z) {
      auto r = t.ranking(l, z);
      if (r.empty()) continue;
      ASSERT_EQ(r.size(), 1u);
      EXPECT_DOUBLE_EQ(r[0].score, 1.0);
    }
  }
}

TEST(ScoreSentences, SumsToOneAndSkipsEmptySentences) {
  std::mt19937 gen(3);
  std::string text = testing_util::random_corpus_text(gen, 15, 4, 7);
  text += "15\t0\t,/, ./.\n";
  auto c = corpus_from(text);
  auto m = small_model(c, 3, 2);
  auto t = score_sentences(c, m);
  const SentenceId empty = static_cast<SentenceId>(c.sentences().size() - 1);
  for (int l = 0; l < 2; ++l) {
    for (int z = 0; z < 3; ++z) {
      double sum = 0.0;
      double prev = 2.0;
      for (const auto& e : t.ranking(l, z)) {
        sum += e.score;
        EXPECT_LE(e.score, prev);
        prev = e.score;
        EXPECT_NE(e.id, empty);
      }
      if (!t.ranking(l, z).empty()) {
        EXPECT_NEAR(sum, 1.0, 1e-9);
      }
    }
  }
  // p(l,z|sent) sums to one across topics.
  for (SentenceId s = 0; s < empty; ++s) {
    if (c.sentence_tokens(s).size() == 0) continue;
    double total = 0.0;
    for (int l = 0; l < 2; ++l)
      for (int z = 0; z < 3; ++z) total += p_lz_given_sent(m, c, s, l, z);
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
  EXPECT_DOUBLE_EQ(p_sent(m, c, empty), 0.0);
}

TEST(ScoreDocuments, OneDocumentAndSentenceEquivalence) {
  auto c = corpus_from("0\t0\tgood/JJ lid/NN\n0\t1\tbad/JJ motor/NN\n");
  auto m = small_model(c, 2, 4);
  auto docs = score_documents(c, m);
  for (int l = 0; l < 2; ++l)
    for (int z = 0; z < 2; ++z)
      for (const auto& e : docs.ranking(l, z)) EXPECT_DOUBLE_EQ(e.score, 1.0);

  // With one sentence per document both tables coincide.
  auto c2 = corpus_from("0\t0\tgood/JJ lid/NN\n1\t0\tbad/JJ motor/NN\n2\t0\tgood/JJ jar/NN lid/NN\n");
  auto m2 = small_model(c2, 2, 5);
  EXPECT_EQ(score_documents(c2, m2), score_sentences(c2, m2));
}

TEST(RelevanceTable, RoundTripAndValidation) {
  std::mt19937 gen(9);
  auto c = corpus_from(testing_util::random_corpus_text(gen, 10, 3, 6));
  auto m = small_model(c, 2, 7);
  auto t = score_sentences(c, m);
  std::stringstream buf;
  write_relevance(buf, t);
  auto back = read_relevance(buf, "<buf>", 2, 2);
  EXPECT_EQ(t, back);

  std::stringstream bad_order("0\t0\t1\t0.25\n0\t0\t2\t0.75\n");
  EXPECT_THROW(read_relevance(bad_order, "<x>", 1, 1), Error);
  std::stringstream out_of_range("3\t0\t1\t1\n");
  EXPECT_THROW(read_relevance(out_of_range, "<x>", 2, 2), Error);
  std::stringstream bad_score("0\t0\t1\t1.5\n");
  EXPECT_THROW(read_relevance(bad_score, "<x>", 1, 1), Error);
}

TEST(RelevanceTable, RejectsForeignCorpus) {
  auto c = corpus_from("0\t0\tgood/JJ lid/NN\n");
  auto other = corpus_from("0\t0\tbad/JJ lid/NN\n");
  auto m = small_model(c, 1, 1, 3);
  EXPECT_THROW(score_sentences(other, m), Error);
  EXPECT_NO_THROW(require_same_corpus(m, c));
}
