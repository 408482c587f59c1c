#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "jst.hpp"

namespace jstlabel {

// Read-only view of phi laid out [l][z][w].
struct TopicWordView {
  int labels = 0;
  int topics = 0;
  std::size_t vocab_size = 0;
  std::span<const double> phi;

  static TopicWordView of(const JstModel& m) { return {m.labels(), m.topics(), m.vocab_size(), m.phi()}; }
  double at(int l, int z, WordId w) const {
    return phi[(static_cast<std::size_t>(l) * topics + z) * vocab_size + w];
  }
  double at(Assignment a, WordId w) const { return at(a.label, a.topic, w); }
};

// Assignment-mass fraction: phi mass of tokens assigned (l, z) over the phi
// mass of every token under its own assignment. Zero for empty input.
double p_lz_given_tokens(const TopicWordView& phi, std::span<const WordId> words,
                         std::span<const Assignment> assignments, int l, int z);

// log sum_{l,z} prod_w phi_{l,z,w}; -inf for empty input.
double log_p_tokens(const TopicWordView& phi, std::span<const WordId> words);

double p_lz_given_sent(const JstModel& model, const TaggedCorpus& corpus, SentenceId sentence, int l, int z);
double p_sent(const JstModel& model, const TaggedCorpus& corpus, SentenceId sentence);

struct RelevanceEntry {
  std::uint32_t id = 0;  // sentence or document id
  double score = 0.0;    // normalised within the topic
  bool operator==(const RelevanceEntry&) const = default;
};

class RelevanceTable {
 public:
  RelevanceTable() = default;
  RelevanceTable(int labels, int topics)
      : labels_(labels), topics_(topics), rankings_(static_cast<std::size_t>(labels) * topics) {}

  int labels() const noexcept { return labels_; }
  int topics() const noexcept { return topics_; }
  std::span<const RelevanceEntry> ranking(int l, int z) const { return rankings_.at(index(l, z)); }
  std::vector<RelevanceEntry>& mutable_ranking(int l, int z) { return rankings_.at(index(l, z)); }
  // Normalised score or 0 when absent.
  double score(int l, int z, std::uint32_t id) const;

  bool operator==(const RelevanceTable&) const = default;

 private:
  std::size_t index(int l, int z) const {
    if (l < 0 || l >= labels_ || z < 0 || z >= topics_) throw std::out_of_range("topic index out of range");
    return static_cast<std::size_t>(l) * topics_ + z;
  }
  int labels_ = 0;
  int topics_ = 0;
  std::vector<std::vector<RelevanceEntry>> rankings_;
};

// Throws validation_error when the model was not trained on this corpus.
void require_same_corpus(const JstModel& model, const TaggedCorpus& corpus);

// Normalises unnormalised log scores within each topic and sorts descending,
// ties by ascending id. Entries with -inf log score are dropped.
RelevanceTable normalise_log_scores(int labels, int topics,
                                    const std::vector<std::vector<std::pair<std::uint32_t, double>>>& log_scores);

RelevanceTable score_sentences(const TaggedCorpus& corpus, const JstModel& model);
RelevanceTable score_documents(const TaggedCorpus& corpus, const JstModel& model);

// Line format: l<TAB>z<TAB>id<TAB>score, topics in (l, z) order, each sorted.
void write_relevance(std::ostream& out, const RelevanceTable& table);
RelevanceTable read_relevance(std::istream& in, const std::string& source, int labels, int topics);
void save_relevance(const std::string& path, const RelevanceTable& table);
RelevanceTable load_relevance(const std::string& path, int labels, int topics);

}  // namespace jstlabel
