#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "extract.hpp"
#include "fuse.hpp"
#include "jst.hpp"
#include "relevance.hpp"

namespace jstlabel {

enum class LabelMethod { SentLabel, PathGraph, Keyphrase, TopProb, Centroid };

std::string method_name(LabelMethod m);
// Throws usage_error for unknown names.
LabelMethod parse_method(const std::string& name);

struct LabelConfig {
  LabelMethod method = LabelMethod::SentLabel;
  ExtractConfig extract;
  FuseConfig fuse;
  std::size_t centroid_k = 150;
  std::size_t report_top_words = 10;
  unsigned jobs = 1;
};

enum class LabelStatus { Ok, Fallback, Unlabellable };

struct TopicLabel {
  int label = 0;
  int topic = 0;
  std::vector<std::string> top_words;
  LabelMethod method = LabelMethod::SentLabel;
  LabelStatus status = LabelStatus::Ok;
  std::optional<SentenceId> sentence;  // extractive labels and fallbacks
  std::string text;
  std::size_t length = 0;  // words, punctuation excluded
  std::optional<LabelScore> score;  // when the extractive scorer ran
  std::string notice;
};

// Sentence surface text with punctuation attached to the previous word.
std::string render_sentence(const Sentence& sentence);
std::size_t word_length(const Sentence& sentence);

struct LabelInputs {
  const TaggedCorpus& corpus;
  const JstModel& model;
  const SentimentLexicon& lexicon;
  const StopwordList& stopwords;
  const RelevanceTable& relevance;
};

TopicLabel label_topic(const LabelInputs& in, const SentimentTopic& topic, const LabelConfig& cfg);

// One label per (l, z) in (l, z) order regardless of cfg.jobs.
std::vector<TopicLabel> label_topics(const LabelInputs& in, const LabelConfig& cfg);

// One JSON object per line.
void write_labels(std::ostream& out, const std::vector<TopicLabel>& labels);
std::vector<TopicLabel> read_labels(std::istream& in, const std::string& source);
void write_labels_pretty(std::ostream& out, const std::vector<TopicLabel>& labels);

struct MethodSummary {
  std::string method;
  std::size_t labels = 0;       // labelled topics
  std::size_t fallbacks = 0;
  std::size_t unlabellable = 0;
  double average_length = 0.0;  // over labelled topics
};

struct Report {
  std::vector<MethodSummary> methods;  // in first-seen order
  // (l, z) -> method -> text
  std::map<std::pair<int, int>, std::map<std::string, std::string>> topics;
};

Report build_report(const std::vector<std::vector<TopicLabel>>& label_sets);
void write_report(std::ostream& out, const Report& report);
void write_report_pretty(std::ostream& out, const Report& report);

}  // namespace jstlabel
