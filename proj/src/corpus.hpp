#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace jstlabel {

using WordId = std::uint32_t;
using SentenceId = std::uint32_t;
using DocId = std::uint32_t;

struct Token {
  std::string surface;
  std::string lower;
  std::string pos;
  std::optional<WordId> vocab_id;  // absent when filtered from the model vocabulary

  bool in_vocab() const noexcept { return vocab_id.has_value(); }
};

struct Sentence {
  SentenceId id = 0;
  DocId doc_id = 0;
  std::vector<Token> tokens;
};

struct Document {
  DocId id = 0;
  SentenceId first_sentence = 0;
  std::uint32_t sentence_count = 0;
  std::uint32_t word_count = 0;  // N_d: in-vocabulary tokens
};

class Vocabulary {
 public:
  // Returns the existing id or assigns the next dense one.
  WordId intern(std::string_view word);
  std::optional<WordId> find(std::string_view word) const;
  const std::string& word(WordId id) const { return words_.at(id); }
  std::size_t size() const noexcept { return words_.size(); }
  std::span<const std::string> words() const noexcept { return words_; }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId> index_;
};

enum class Polarity : std::uint8_t { Positive = 0, Negative = 1 };

class SentimentLexicon {
 public:
  // Last write wins; returns true when an existing entry was replaced.
  bool insert(std::string_view word, Polarity polarity);
  std::optional<Polarity> find(std::string_view lower) const;
  bool contains(std::string_view lower) const { return find(lower).has_value(); }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::unordered_map<std::string, Polarity> entries_;
};

class StopwordList {
 public:
  StopwordList() = default;
  explicit StopwordList(std::initializer_list<std::string_view> words);
  void insert(std::string_view word);
  bool contains(std::string_view lower) const { return words_.count(std::string(lower)) != 0; }
  std::size_t size() const noexcept { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

struct PreprocessOptions {
  bool remove_stopwords_for_model = false;
  const StopwordList* stopwords = nullptr;  // consulted only when removing stopwords
};

class TaggedCorpus {
 public:
  std::span<const Document> documents() const noexcept { return documents_; }
  std::span<const Sentence> sentences() const noexcept { return sentences_; }
  const Sentence& sentence(SentenceId id) const { return sentences_.at(id); }
  const Document& document(DocId id) const { return documents_.at(id); }
  std::span<const Sentence> sentences_of(const Document& doc) const {
    return std::span<const Sentence>(sentences_).subspan(doc.first_sentence, doc.sentence_count);
  }
  const Vocabulary& vocabulary() const noexcept { return vocab_; }

  // In-vocabulary tokens in corpus order (document, sentence, position).
  std::span<const WordId> token_words() const noexcept { return token_words_; }
  std::span<const DocId> token_docs() const noexcept { return token_docs_; }
  std::size_t total_tokens() const noexcept { return token_words_.size(); }

  // Slice of the flat in-vocabulary token arrays covered by a sentence or document.
  struct Range {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t size() const noexcept { return end - begin; }
  };
  Range sentence_tokens(SentenceId id) const { return {sentence_offsets_.at(id), sentence_offsets_.at(id + 1)}; }
  Range document_tokens(DocId id) const {
    const Document& d = documents_.at(id);
    return sentence_tokens_span(d.first_sentence, d.first_sentence + d.sentence_count);
  }

  double average_document_length() const;

  // FNV-1a over vocabulary and the in-vocabulary token stream; ties a model to its corpus.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  friend class CorpusBuilder;

 private:
  Range sentence_tokens_span(SentenceId first, SentenceId last) const {
    return {sentence_offsets_.at(first), sentence_offsets_.at(last)};
  }

  std::vector<Document> documents_;
  std::vector<Sentence> sentences_;
  Vocabulary vocab_;
  std::vector<WordId> token_words_;
  std::vector<DocId> token_docs_;
  std::vector<std::size_t> sentence_offsets_;
  std::uint64_t fingerprint_ = 0;
};

// Incremental construction; documents must be added contiguously.
class CorpusBuilder {
 public:
  explicit CorpusBuilder(PreprocessOptions options = {}) : options_(options) {}

  void begin_document();
  // Tokens given as (surface, POS) pairs.
  void add_sentence(std::span<const std::pair<std::string, std::string>> tagged);
  TaggedCorpus finish();

 private:
  PreprocessOptions options_;
  TaggedCorpus corpus_;
  bool open_document_ = false;
};

std::string to_lower(std::string_view s);
bool is_alphabetic(std::string_view s);

TaggedCorpus load_corpus(const std::string& path, PreprocessOptions options = {});
TaggedCorpus parse_corpus(std::istream& in, const std::string& source, PreprocessOptions options = {});
// Writes the corpus in the same line format with dense ids.
void write_corpus(std::ostream& out, const TaggedCorpus& corpus);

SentimentLexicon load_lexicon(const std::string& path);
SentimentLexicon parse_lexicon(std::istream& in, const std::string& source);
StopwordList load_stopwords(const std::string& path);
StopwordList parse_stopwords(std::istream& in);

bool is_aspect_word(const Token& token);
bool is_sentiment_word(const Token& token, const SentimentLexicon& lexicon);

}  // namespace jstlabel
