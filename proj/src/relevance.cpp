#include "relevance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "error.hpp"

namespace jstlabel {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(std::span<const double> xs) {
  double mx = kNegInf;
  for (double x : xs) mx = std::max(mx, x);
  if (mx == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - mx);
  return mx + std::log(s);
}

std::span<const WordId> words_in(const TaggedCorpus& corpus, TaggedCorpus::Range r) {
  return corpus.token_words().subspan(r.begin, r.size());
}

std::span<const Assignment> assignments_in(const JstModel& model, TaggedCorpus::Range r) {
  return model.assignments().subspan(r.begin, r.size());
}

// Unnormalised log p(sent|l,z) for all (l,z) of one token span.
void log_scores_for(const TopicWordView& phi, std::span<const WordId> words, std::span<const Assignment> assigns,
                    std::vector<double>& out) {
  const int S = phi.labels, T = phi.topics;
  out.assign(static_cast<std::size_t>(S) * T, kNegInf);
  if (words.empty()) return;

  std::vector<double> numer(out.size(), 0.0);
  double denom = 0.0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const double p = phi.at(assigns[i], words[i]);
    numer[static_cast<std::size_t>(assigns[i].label) * T + assigns[i].topic] += p;
    denom += p;
  }
  if (!(denom > 0.0)) return;
  const double lp = log_p_tokens(phi, words);
  if (lp == kNegInf) return;
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (numer[k] > 0.0) out[k] = std::log(numer[k] / denom) + lp;
  }
}

}  // namespace

double p_lz_given_tokens(const TopicWordView& phi, std::span<const WordId> words,
                         std::span<const Assignment> assignments, int l, int z) {
  double numer = 0.0, denom = 0.0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const double p = phi.at(assignments[i], words[i]);
    denom += p;
    if (assignments[i].label == l && assignments[i].topic == z) numer += p;
  }
  return denom > 0.0 ? numer / denom : 0.0;
}

double log_p_tokens(const TopicWordView& phi, std::span<const WordId> words) {
  if (words.empty()) return kNegInf;
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(phi.labels) * phi.topics);
  for (int l = 0; l < phi.labels; ++l) {
    for (int z = 0; z < phi.topics; ++z) {
      double s = 0.0;
      for (WordId w : words) s += std::log(phi.at(l, z, w));
      terms.push_back(s);
    }
  }
  return log_sum_exp(terms);
}

void require_same_corpus(const JstModel& model, const TaggedCorpus& corpus) {
  if (model.corpus_fingerprint() != corpus.fingerprint() || model.total_tokens() != corpus.total_tokens() ||
      model.vocab_size() != corpus.vocabulary().size()) {
    throw validation_error("model was not trained on this corpus (fingerprint mismatch)");
  }
}

double p_lz_given_sent(const JstModel& model, const TaggedCorpus& corpus, SentenceId sentence, int l, int z) {
  auto r = corpus.sentence_tokens(sentence);
  return p_lz_given_tokens(TopicWordView::of(model), words_in(corpus, r), assignments_in(model, r), l, z);
}

double p_sent(const JstModel& model, const TaggedCorpus& corpus, SentenceId sentence) {
  auto r = corpus.sentence_tokens(sentence);
  if (r.size() == 0) return 0.0;
  return std::exp(log_p_tokens(TopicWordView::of(model), words_in(corpus, r)));
}

double RelevanceTable::score(int l, int z, std::uint32_t id) const {
  for (const auto& e : ranking(l, z)) {
    if (e.id == id) return e.score;
  }
  return 0.0;
}

RelevanceTable normalise_log_scores(int labels, int topics,
                                    const std::vector<std::vector<std::pair<std::uint32_t, double>>>& log_scores) {
  RelevanceTable table(labels, topics);
  std::vector<double> xs;
  for (int l = 0; l < labels; ++l) {
    for (int z = 0; z < topics; ++z) {
      const auto& col = log_scores.at(static_cast<std::size_t>(l) * topics + z);
      xs.clear();
      for (const auto& [id, x] : col) xs.push_back(x);
      const double lse = log_sum_exp(xs);
      auto& ranking = table.mutable_ranking(l, z);
      if (lse == kNegInf) {
        warn("no sentence touches topic (" + std::to_string(l) + ", " + std::to_string(z) + "); ranking is empty");
        continue;
      }
      for (const auto& [id, x] : col) {
        if (x == kNegInf) continue;
        ranking.push_back({id, std::exp(x - lse)});
      }
      std::sort(ranking.begin(), ranking.end(), [](const RelevanceEntry& a, const RelevanceEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.id < b.id;
      });
    }
  }
  return table;
}

namespace {

template <typename RangeFn>
RelevanceTable score_units(const TaggedCorpus& corpus, const JstModel& model, std::size_t units, RangeFn range_of) {
  require_same_corpus(model, corpus);
  const int S = model.labels(), T = model.topics();
  const auto phi = TopicWordView::of(model);
  std::vector<std::vector<std::pair<std::uint32_t, double>>> cols(static_cast<std::size_t>(S) * T);
  std::vector<double> scores;
  for (std::size_t u = 0; u < units; ++u) {
    auto r = range_of(u);
    if (r.size() == 0) continue;  // no in-vocabulary token: excluded from rankings
    log_scores_for(phi, words_in(corpus, r), assignments_in(model, r), scores);
    for (std::size_t k = 0; k < scores.size(); ++k) {
      if (scores[k] != kNegInf) cols[k].emplace_back(static_cast<std::uint32_t>(u), scores[k]);
    }
  }
  return normalise_log_scores(S, T, cols);
}

}  // namespace

RelevanceTable score_sentences(const TaggedCorpus& corpus, const JstModel& model) {
  return score_units(corpus, model, corpus.sentences().size(),
                     [&](std::size_t s) { return corpus.sentence_tokens(static_cast<SentenceId>(s)); });
}

RelevanceTable score_documents(const TaggedCorpus& corpus, const JstModel& model) {
  return score_units(corpus, model, corpus.documents().size(),
                     [&](std::size_t d) { return corpus.document_tokens(static_cast<DocId>(d)); });
}

void write_relevance(std::ostream& out, const RelevanceTable& table) {
  for (int l = 0; l < table.labels(); ++l) {
    for (int z = 0; z < table.topics(); ++z) {
      for (const auto& e : table.ranking(l, z)) out << fmt::format("{}\t{}\t{}\t{}\n", l, z, e.id, e.score);
    }
  }
}

RelevanceTable read_relevance(std::istream& in, const std::string& source, int labels, int topics) {
  RelevanceTable table(labels, topics);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    long long l = -1, z = -1, id = -1;
    double score = 0.0;
    if (!(fields >> l >> z >> id >> score) || !(fields >> std::ws).eof()) {
      throw ParseError(source, line_no, "expected l<TAB>z<TAB>id<TAB>score");
    }
    if (l < 0 || l >= labels || z < 0 || z >= topics) throw ParseError(source, line_no, "topic index out of range");
    if (id < 0 || id > std::numeric_limits<std::uint32_t>::max()) throw ParseError(source, line_no, "bad id");
    if (!(score >= 0.0 && score <= 1.0)) throw ParseError(source, line_no, "score outside [0, 1]");
    auto& ranking = table.mutable_ranking(static_cast<int>(l), static_cast<int>(z));
    if (!ranking.empty() && ranking.back().score < score) {
      throw ParseError(source, line_no, "ranking is not sorted in descending order");
    }
    ranking.push_back({static_cast<std::uint32_t>(id), score});
  }
  return table;
}

void save_relevance(const std::string& path, const RelevanceTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot write " + path);
  write_relevance(out, table);
  if (!out) throw validation_error("failed writing " + path);
}

RelevanceTable load_relevance(const std::string& path, int labels, int topics) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open " + path);
  return read_relevance(in, path, labels, topics);
}

}  // namespace jstlabel
