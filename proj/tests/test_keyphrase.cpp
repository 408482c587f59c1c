#include <gtest/gtest.h>

#include <numeric>

#include "helpers.hpp"
#include "keyphrase.hpp"

using namespace jstlabel;

using Adjacency = std::vector<std::vector<std::pair<std::size_t, double>>>;

TEST(TextRank, SymmetricPairIsUniform) {
  Adjacency a = {{{1, 1.0}}, {{0, 1.0}}};
  auto s = textrank(a);
  EXPECT_NEAR(s[0], 1.0, 1e-9);
  EXPECT_NEAR(s[1], 1.0, 1e-9);
}

TEST(TextRank, StarCentreWinsAndMassIsConserved) {
  Adjacency a(5);
  for (std::size_t leaf = 1; leaf < 5; ++leaf) {
    a[0].push_back({leaf, 1.0});
    a[leaf].push_back({0, 1.0});
  }
  auto s = textrank(a);
  for (std::size_t leaf = 1; leaf < 5; ++leaf) EXPECT_GT(s[0], s[leaf]);
  EXPECT_NEAR(std::accumulate(s.begin(), s.end(), 0.0), 5.0, 1e-9);
  // Closed form for the star: centre = (1 - d + d * 4 * leaf), leaf = (1 - d) + d * centre / 4.
  const double d = 0.85;
  const double centre = (1 - d + 4 * d * (1 - d)) / (1 - d * d);
  EXPECT_NEAR(s[0], centre, 1e-5);
}

TEST(TextRank, IsolatedNodesKeepMass) {
  Adjacency a(3);
  a[0].push_back({1, 2.0});
  a[1].push_back({0, 2.0});
  auto s = textrank(a);
  EXPECT_NEAR(std::accumulate(s.begin(), s.end(), 0.0), 3.0, 1e-9);
  EXPECT_GT(s[0], s[2]);
}

TEST(Keyphrases, AdjectiveNounChunks) {
  auto c = testing_util::corpus_from(
      "0\t0\tIt/PRP was/VBD a/DT super/JJ easy/JJ setup/NN ./.\n"
      "0\t1\tEasy/JJ manual/NN and/CC set/VB up/RP ./.\n"
      "0\t2\tThe/DT lid/NN broke/VBD ./.\n"
      "0\t3\tThe/DT steel/NN lid/NN cheap/JJ handle/NN ./.\n");
  auto sw = testing_util::stopwords_from("it\nwas\na\nand\nup\nthe\n");
  auto k = extract_keyphrases(c.sentences(), sw);
  std::set<std::vector<std::string>> phrases;
  for (const auto& p : k) phrases.insert(p.words);
  EXPECT_TRUE(phrases.count({"super", "easy", "setup"}));
  EXPECT_TRUE(phrases.count({"easy", "manual"}));
  EXPECT_TRUE(phrases.count({"lid"}));
  EXPECT_TRUE(phrases.count({"steel", "lid"}));
  EXPECT_TRUE(phrases.count({"cheap", "handle"}));
  EXPECT_FALSE(phrases.count({"super", "easy"}));
  for (std::size_t i = 1; i < k.size(); ++i) EXPECT_GE(k[i - 1].score, k[i].score);

  // Score = summed salience / (length + 1).
  auto sal = unit_salience(c.sentences(), sw);
  for (const auto& p : k) {
    if (p.words == std::vector<std::string>{"easy", "manual"}) {
      const double expected = (sal.at({"easy", "JJ"}) + sal.at({"manual", "NN"})) / 3.0;
      EXPECT_NEAR(p.score, expected, 1e-12);
    }
  }
}

TEST(Keyphrases, NoNounsNoPhrases) {
  auto c = testing_util::corpus_from("0\t0\tIt/PRP works/VBZ great/JJ ./.\n");
  EXPECT_TRUE(extract_keyphrases(c.sentences(), StopwordList{}).empty());
}
