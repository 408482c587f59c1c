#include "corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "error.hpp"

namespace jstlabel {

namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void fnv_mix(std::uint64_t& h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  h ^= 0xff;  // field separator
  h *= kFnvPrime;
}

void fnv_mix(std::uint64_t& h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= kFnvPrime;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::optional<std::uint64_t> parse_uint(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open " + path);
  return in;
}

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool is_alphabetic(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return c < 0x80 && std::isalpha(c); });
}

WordId Vocabulary::intern(std::string_view word) {
  auto it = index_.find(std::string(word));
  if (it != index_.end()) return it->second;
  auto id = static_cast<WordId>(words_.size());
  words_.emplace_back(word);
  index_.emplace(words_.back(), id);
  return id;
}

std::optional<WordId> Vocabulary::find(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool SentimentLexicon::insert(std::string_view word, Polarity polarity) {
  auto [it, inserted] = entries_.insert_or_assign(to_lower(word), polarity);
  return !inserted;
}

std::optional<Polarity> SentimentLexicon::find(std::string_view lower) const {
  auto it = entries_.find(std::string(lower));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

StopwordList::StopwordList(std::initializer_list<std::string_view> words) {
  for (auto w : words) insert(w);
}

void StopwordList::insert(std::string_view word) { words_.insert(to_lower(word)); }

double TaggedCorpus::average_document_length() const {
  if (documents_.empty()) return 0.0;
  return static_cast<double>(total_tokens()) / static_cast<double>(documents_.size());
}

void CorpusBuilder::begin_document() {
  Document doc;
  doc.id = static_cast<DocId>(corpus_.documents_.size());
  doc.first_sentence = static_cast<SentenceId>(corpus_.sentences_.size());
  corpus_.documents_.push_back(doc);
  open_document_ = true;
}

void CorpusBuilder::add_sentence(std::span<const std::pair<std::string, std::string>> tagged) {
  if (!open_document_) begin_document();
  if (tagged.empty()) throw validation_error("sentence has no tokens");
  if (corpus_.sentence_offsets_.empty()) corpus_.sentence_offsets_.push_back(0);

  Document& doc = corpus_.documents_.back();
  Sentence sent;
  sent.id = static_cast<SentenceId>(corpus_.sentences_.size());
  sent.doc_id = doc.id;
  sent.tokens.reserve(tagged.size());
  for (const auto& [surface, pos] : tagged) {
    if (surface.empty()) throw validation_error("empty token surface");
    if (pos.empty()) throw validation_error("token '" + surface + "' has no POS tag");
    Token tok{surface, to_lower(surface), pos, std::nullopt};
    bool keep = is_alphabetic(tok.lower);
    if (keep && options_.remove_stopwords_for_model && options_.stopwords != nullptr &&
        options_.stopwords->contains(tok.lower)) {
      keep = false;
    }
    if (keep) {
      tok.vocab_id = corpus_.vocab_.intern(tok.lower);
      corpus_.token_words_.push_back(*tok.vocab_id);
      corpus_.token_docs_.push_back(doc.id);
      ++doc.word_count;
    }
    sent.tokens.push_back(std::move(tok));
  }
  ++doc.sentence_count;
  corpus_.sentences_.push_back(std::move(sent));
  corpus_.sentence_offsets_.push_back(corpus_.token_words_.size());
}

TaggedCorpus CorpusBuilder::finish() {
  // Drop a trailing document that never received a sentence.
  if (!corpus_.documents_.empty() && corpus_.documents_.back().sentence_count == 0) {
    corpus_.documents_.pop_back();
  }
  if (corpus_.sentences_.empty()) throw validation_error("corpus is empty");
  if (corpus_.vocab_.size() == 0) throw validation_error("corpus has no in-vocabulary tokens");

  std::uint64_t h = kFnvOffset;
  fnv_mix(h, corpus_.vocab_.size());
  for (const auto& w : corpus_.vocab_.words()) fnv_mix(h, w);
  fnv_mix(h, corpus_.documents_.size());
  for (const auto& d : corpus_.documents_) fnv_mix(h, d.sentence_count);
  for (const auto& s : corpus_.sentences_) fnv_mix(h, corpus_.sentence_tokens(s.id).size());
  for (WordId w : corpus_.token_words_) fnv_mix(h, w);
  corpus_.fingerprint_ = h;

  open_document_ = false;
  return std::move(corpus_);
}

TaggedCorpus parse_corpus(std::istream& in, const std::string& source, PreprocessOptions options) {
  CorpusBuilder builder(options);
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::uint64_t> current_doc;
  std::unordered_set<std::uint64_t> finished_docs;
  std::unordered_set<std::uint64_t> doc_sentence_ids;
  std::vector<std::pair<std::string, std::string>> tagged;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (trim(view).empty()) continue;

    auto fields = split(view, '\t');
    if (fields.size() != 3) throw ParseError(source, line_no, "expected doc_id<TAB>sent_id<TAB>tokens");
    auto doc = parse_uint(trim(fields[0]));
    auto sid = parse_uint(trim(fields[1]));
    if (!doc) throw ParseError(source, line_no, "doc_id is not a non-negative integer");
    if (!sid) throw ParseError(source, line_no, "sent_id is not a non-negative integer");

    if (current_doc != doc) {
      if (finished_docs.count(*doc)) {
        throw ParseError(source, line_no, "document " + std::to_string(*doc) + " is not contiguous");
      }
      if (current_doc) finished_docs.insert(*current_doc);
      current_doc = doc;
      doc_sentence_ids.clear();
      builder.begin_document();
    }
    if (!doc_sentence_ids.insert(*sid).second) {
      throw ParseError(source, line_no, "duplicate sent_id " + std::to_string(*sid));
    }

    tagged.clear();
    std::istringstream toks{std::string(fields[2])};
    std::string item;
    while (toks >> item) {
      auto slash = item.rfind('/');
      if (slash == std::string::npos || slash == 0 || slash + 1 == item.size()) {
        throw ParseError(source, line_no, "token '" + item + "' is not of the form word/POS");
      }
      tagged.emplace_back(item.substr(0, slash), item.substr(slash + 1));
    }
    if (tagged.empty()) throw ParseError(source, line_no, "sentence has no tokens");
    builder.add_sentence(tagged);
  }
  try {
    return builder.finish();
  } catch (const Error& e) {
    throw validation_error(source + ": " + e.what());
  }
}

TaggedCorpus load_corpus(const std::string& path, PreprocessOptions options) {
  auto in = open_input(path);
  return parse_corpus(in, path, options);
}

void write_corpus(std::ostream& out, const TaggedCorpus& corpus) {
  for (const auto& doc : corpus.documents()) {
    for (const auto& sent : corpus.sentences_of(doc)) {
      out << doc.id << '\t' << sent.id << '\t';
      for (std::size_t i = 0; i < sent.tokens.size(); ++i) {
        if (i) out << ' ';
        out << sent.tokens[i].surface << '/' << sent.tokens[i].pos;
      }
      out << '\n';
    }
  }
}

SentimentLexicon parse_lexicon(std::istream& in, const std::string& source) {
  SentimentLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty()) continue;
    auto fields = split(view, '\t');
    if (fields.size() != 2) throw ParseError(source, line_no, "expected word<TAB>polarity");
    auto word = trim(fields[0]);
    auto pol = to_lower(trim(fields[1]));
    if (word.empty()) throw ParseError(source, line_no, "empty word");
    Polarity p;
    if (pol == "positive") {
      p = Polarity::Positive;
    } else if (pol == "negative") {
      p = Polarity::Negative;
    } else {
      throw ParseError(source, line_no, "unknown polarity '" + pol + "'");
    }
    if (lex.insert(word, p)) {
      warn(source + ":" + std::to_string(line_no) + ": duplicate lexicon entry '" + std::string(word) +
           "', last entry wins");
    }
  }
  return lex;
}

SentimentLexicon load_lexicon(const std::string& path) {
  auto in = open_input(path);
  return parse_lexicon(in, path);
}

StopwordList parse_stopwords(std::istream& in) {
  StopwordList list;
  std::string line;
  while (std::getline(in, line)) {
    auto w = trim(line);
    if (!w.empty()) list.insert(w);
  }
  return list;
}

StopwordList load_stopwords(const std::string& path) {
  auto in = open_input(path);
  return parse_stopwords(in);
}

bool is_aspect_word(const Token& token) { return token.pos.rfind("NN", 0) == 0; }

bool is_sentiment_word(const Token& token, const SentimentLexicon& lexicon) {
  return lexicon.contains(token.lower);
}

}  // namespace jstlabel
