#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "error.hpp"
#include "extract.hpp"
#include "helpers.hpp"

using namespace jstlabel;
using testing_util::corpus_from;
using testing_util::lexicon_from;

namespace {

Sentence make_sentence(SentenceId id, std::vector<std::tuple<std::string, std::string, std::optional<WordId>>> toks) {
  Sentence s;
  s.id = id;
  for (auto& [w, pos, vid] : toks) s.tokens.push_back(Token{w, w, pos, vid});
  return s;
}

}  // namespace

TEST(CoCoverage, HarmonicMeanAndZeros) {
  EXPECT_EQ(co_coverage(0.0, 0.3), 0.0);
  EXPECT_EQ(co_coverage(0.3, 0.0), 0.0);
  EXPECT_EQ(co_coverage(0.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(co_coverage(0.2, 0.2), 0.2);
  EXPECT_NEAR(co_coverage(0.04, 0.06), 0.048, 1e-15);
}

TEST(Coverage, PriceAndGoodExample) {
  // vocab: 0 price, 1 good, 2 the, 3 kitchen
  std::vector<double> phi = {0.04, 0.06, 0.5, 0.4};
  TopicWordView v{1, 1, 4, phi};
  SentimentTopic topic{0, 0, {2, 3, 1, 0}};
  auto lex = lexicon_from("good\tpositive\n");
  auto s = make_sentence(0, {{"the", "DT", 2}, {"price", "NN", 0}, {"is", "VBZ", std::nullopt}, {"good", "JJ", 1}});
  auto c = coverage_scores(s, topic, v, lex, 15);
  EXPECT_DOUBLE_EQ(c.aspect, 0.04);
  EXPECT_DOUBLE_EQ(c.sentiment, 0.06);
  EXPECT_NEAR(c.cov, 0.048, 1e-15);

  // With top_n = 2 neither word is a top word.
  auto narrow = coverage_scores(s, topic, v, lex, 2);
  EXPECT_EQ(narrow.aspect, 0.0);
  EXPECT_EQ(narrow.cov, 0.0);

  // Aspect words only give zero coverage.
  auto nouns = make_sentence(1, {{"price", "NN", 0}, {"kitchen", "NN", 3}});
  auto only = coverage_scores(nouns, topic, v, lex, 15);
  EXPECT_DOUBLE_EQ(only.aspect, 0.44);
  EXPECT_EQ(only.cov, 0.0);
}

TEST(Rescale, FlatPoolAndRange) {
  EXPECT_DOUBLE_EQ(rescale(0.5, 0.0, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(rescale(3.0, 1.0, 5.0), 0.5);
  EXPECT_DOUBLE_EQ(rescale(0.2, 0.2, 0.2), 1.0);
  EXPECT_DOUBLE_EQ(rescale(0.0, 0.0, 0.0), 0.0);
}

TEST(ExtractConfig, Validation) {
  ExtractConfig c;
  c.alpha = 1.5;
  EXPECT_THROW(c.validate(), Error);
  c.alpha = 0.4;
  c.top_n = 0;
  EXPECT_THROW(c.validate(), Error);
}

class ExtractFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    corpus = corpus_from(
        "0\t0\tThe/DT motor/NN is/VBZ great/JJ ./.\n"
        "0\t1\tThe/DT lid/NN broke/VBD ./.\n"
        "1\t0\tThe/DT motor/NN is/VBZ great/JJ ./.\n"
        "1\t1\tGreat/JJ price/NN and/CC good/JJ motor/NN ./.\n"
        "2\t0\tIt/PRP works/VBZ ./.\n");
    lex = lexicon_from(testing_util::kToyLexicon);
    const std::size_t V = corpus.vocabulary().size();
    phi.assign(V, 0.0);
    for (std::size_t w = 0; w < V; ++w) phi[w] = 1.0 + static_cast<double>(w % 3);
    double sum = 0.0;
    for (double x : phi) sum += x;
    for (double& x : phi) x /= sum;
    view = TopicWordView{1, 1, V, phi};
    topic.label = 0;
    topic.topic = 0;
    for (WordId w = 0; w < V; ++w) topic.top_words.push_back(w);
    rel = RelevanceTable(1, 1);
    rel.mutable_ranking(0, 0) = {{2, 0.3}, {0, 0.25}, {3, 0.2}, {1, 0.15}, {4, 0.1}};
  }

  TaggedCorpus corpus;
  SentimentLexicon lex;
  std::vector<double> phi;
  TopicWordView view;
  SentimentTopic topic;
  RelevanceTable rel;
};

TEST_F(ExtractFixture, DedupKeepsLowestId) {
  ExtractConfig cfg;
  auto pool = candidate_pool(topic, corpus, rel, cfg);
  EXPECT_EQ(pool, (std::vector<SentenceId>{0, 3, 1, 4}));
  cfg.dedup = false;
  EXPECT_EQ(candidate_pool(topic, corpus, rel, cfg).size(), 5u);
  cfg.candidate_limit = 2;
  EXPECT_EQ(candidate_pool(topic, corpus, rel, cfg), (std::vector<SentenceId>{2, 0}));
}

TEST_F(ExtractFixture, SelectMatchesExhaustiveScoring) {
  for (bool norm : {true, false}) {
    for (double alpha : {0.0, 0.4, 1.0}) {
      ExtractConfig cfg;
      cfg.alpha = alpha;
      cfg.rel_normalization = norm;
      auto choice = select_label(topic, corpus, rel, view, lex, cfg);
      ASSERT_TRUE(choice.sentence);

      // Oracle: explicit min-max over the deduplicated pool.
      std::vector<SentenceId> pool = {0, 3, 1, 4};
      std::vector<double> r, cv;
      for (auto id : pool) {
        r.push_back(rel.score(0, 0, id));
        cv.push_back(coverage_scores(corpus.sentence(id), topic, view, lex, cfg.top_n).cov);
      }
      auto scale = [&](std::vector<double> x) {
        if (!norm) return x;
        const double lo = *std::min_element(x.begin(), x.end()), hi = *std::max_element(x.begin(), x.end());
        for (double& v : x) v = hi > lo ? (v - lo) / (hi - lo) : (v > 0 ? 1.0 : 0.0);
        return x;
      };
      auto rs = scale(r), cs = scale(cv);
      std::size_t best = 0;
      for (std::size_t i = 1; i < pool.size(); ++i) {
        const double a = alpha * rs[i] + (1 - alpha) * cs[i];
        const double b = alpha * rs[best] + (1 - alpha) * cs[best];
        if (a > b || (a == b && (r[i] > r[best] || (r[i] == r[best] && pool[i] < pool[best])))) best = i;
      }
      EXPECT_EQ(*choice.sentence, pool[best]) << "alpha=" << alpha << " norm=" << norm;
      EXPECT_NEAR(choice.score.total, alpha * choice.score.rel + (1 - alpha) * choice.score.cov, 1e-15);
    }
  }
}

TEST_F(ExtractFixture, RelevanceOnlyPicksHead) {
  ExtractConfig cfg;
  cfg.alpha = 1.0;
  auto choice = select_label(topic, corpus, rel, view, lex, cfg);
  EXPECT_EQ(*choice.sentence, 0u);  // sentence 2 duplicates 0, which keeps the slot
}

TEST_F(ExtractFixture, CoverageOnlyPrefersAspectAndSentiment) {
  ExtractConfig cfg;
  cfg.alpha = 0.0;
  auto choice = select_label(topic, corpus, rel, view, lex, cfg);
  ASSERT_TRUE(choice.sentence);
  EXPECT_GT(choice.score.raw_cov, 0.0);
  const auto& s = corpus.sentence(*choice.sentence);
  bool noun = false, senti = false;
  for (const auto& t : s.tokens) {
    noun |= is_aspect_word(t);
    senti |= is_sentiment_word(t, lex);
  }
  EXPECT_TRUE(noun && senti);
}

TEST_F(ExtractFixture, EmptyTopicIsUnlabellable) {
  RelevanceTable empty(1, 1);
  auto choice = select_label(topic, corpus, empty, view, lex, ExtractConfig{});
  EXPECT_FALSE(choice.sentence);
  EXPECT_FALSE(baseline_top_prob(topic, empty));
  EXPECT_FALSE(baseline_centroid(topic, empty, corpus));
}

TEST_F(ExtractFixture, TopProbIsHeadOfRanking) { EXPECT_EQ(baseline_top_prob(topic, rel), 2u); }

TEST_F(ExtractFixture, CentroidMatchesMeanCosine) {
  for (std::size_t k : {2u, 3u, 5u, 150u}) {
    auto got = baseline_centroid(topic, rel, corpus, k);
    ASSERT_TRUE(got);
    auto ranking = rel.ranking(0, 0);
    const std::size_t n = std::min(k, ranking.size());
    auto tf = [&](SentenceId id) {
      std::map<WordId, double> m;
      for (const auto& t : corpus.sentence(id).tokens)
        if (t.vocab_id) m[*t.vocab_id] += 1;
      return m;
    };
    auto cosine = [&](SentenceId a, SentenceId b) {
      auto x = tf(a), y = tf(b);
      double d = 0, nx = 0, ny = 0;
      for (auto& [w, v] : x) {
        nx += v * v;
        if (y.count(w)) d += v * y[w];
      }
      for (auto& [w, v] : y) ny += v * v;
      return d / std::sqrt(nx * ny);
    };
    std::map<SentenceId, double> mean;
    double best = -1;
    for (std::size_t i = 0; i < n; ++i) {
      double m = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) m += cosine(ranking[i].id, ranking[j].id);
      mean[ranking[i].id] = m / static_cast<double>(n - 1);
      best = std::max(best, mean[ranking[i].id]);
    }
    // Identical sentences tie up to rounding; any of them is a valid answer.
    ASSERT_TRUE(mean.count(*got)) << "k=" << k;
    EXPECT_NEAR(mean[*got], best, 1e-12) << "k=" << k;
  }
}
