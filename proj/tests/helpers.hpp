#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "jst.hpp"

namespace testing_util {

inline std::string source_path(const std::string& rel) { return std::string(JSTLABEL_SOURCE_DIR) + "/" + rel; }

inline jstlabel::TaggedCorpus corpus_from(const std::string& text, jstlabel::PreprocessOptions opts = {}) {
  std::istringstream in(text);
  return jstlabel::parse_corpus(in, "<test>", opts);
}

inline jstlabel::SentimentLexicon lexicon_from(const std::string& text) {
  std::istringstream in(text);
  return jstlabel::parse_lexicon(in, "<test>");
}

inline jstlabel::StopwordList stopwords_from(const std::string& text) {
  std::istringstream in(text);
  return jstlabel::parse_stopwords(in);
}

// Random tagged corpus over a small fixed vocabulary, one line per sentence.
inline std::string random_corpus_text(std::mt19937& rng, int docs, int max_sentences, int max_tokens) {
  static const std::vector<std::pair<std::string, std::string>> words = {
      {"blender", "NN"}, {"motor", "NN"}, {"price", "NN"},   {"lid", "NN"},     {"good", "JJ"},
      {"bad", "JJ"},     {"great", "JJ"}, {"noisy", "JJ"},   {"works", "VBZ"},  {"broke", "VBD"},
      {"the", "DT"},     {"is", "VBZ"},   {"very", "RB"},    {"and", "CC"},     {"jar", "NN"},
      {"cheap", "JJ"},   {"love", "VBP"}, {"kettle", "NN"},  {"sturdy", "JJ"},  {"handle", "NN"},
  };
  std::ostringstream out;
  std::uniform_int_distribution<int> pick(0, static_cast<int>(words.size()) - 1);
  for (int d = 0; d < docs; ++d) {
    const int ns = std::uniform_int_distribution<int>(1, max_sentences)(rng);
    for (int s = 0; s < ns; ++s) {
      out << d << '\t' << s << '\t';
      const int nt = std::uniform_int_distribution<int>(1, max_tokens)(rng);
      for (int t = 0; t < nt; ++t) {
        const auto& w = words[pick(rng)];
        out << (t ? " " : "") << w.first << '/' << w.second;
      }
      out << " ./.\n";
    }
  }
  return out.str();
}

inline const char* kToyLexicon = "good\tpositive\ngreat\tpositive\nsturdy\tpositive\nlove\tpositive\n"
                                 "bad\tnegative\nnoisy\tnegative\ncheap\tnegative\nbroke\tnegative\n";

}  // namespace testing_util
