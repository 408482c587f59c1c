#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "corpus.hpp"

namespace jstlabel {

struct TextRankConfig {
  double damping = 0.85;
  double tolerance = 1e-6;
  int max_iterations = 100;
};

// Weighted PageRank on an undirected graph given as symmetric adjacency lists.
// Dangling mass is spread uniformly, so the scores sum to the node count.
std::vector<double> textrank(const std::vector<std::vector<std::pair<std::size_t, double>>>& adjacency,
                             const TextRankConfig& cfg = {});

using LexicalUnit = std::pair<std::string, std::string>;  // (lowercase word, POS)

// Salience of each adjective/noun/verb unit of the cluster; units co-occurring
// in a sentence are linked, weighted by the number of such sentences.
std::map<LexicalUnit, double> unit_salience(std::span<const Sentence> cluster, const StopwordList& stopwords,
                                            const TextRankConfig& cfg = {});

struct Keyphrase {
  std::vector<std::string> words;  // lowercase
  double score = 0.0;
};

// Maximal adjective* noun+ chunks, scored by summed salience over (length + 1),
// deduplicated and ordered by descending score.
std::vector<Keyphrase> extract_keyphrases(std::span<const Sentence> cluster, const StopwordList& stopwords,
                                          const TextRankConfig& cfg = {});

}  // namespace jstlabel
