#include "jstlabel/jstlabel.h"

#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <new>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "error.hpp"
#include "jst.hpp"
#include "pipeline.hpp"
#include "relevance.hpp"
#include "word_graph.hpp"

struct jl_stopwords {
  jstlabel::StopwordList value;
};
struct jl_lexicon {
  jstlabel::SentimentLexicon value;
};
struct jl_corpus {
  jstlabel::TaggedCorpus value;
};
struct jl_model {
  jstlabel::JstModel value;
};
struct jl_relevance {
  jstlabel::RelevanceTable value;
};
struct jl_labels {
  std::vector<jstlabel::TopicLabel> value;
};

namespace {

thread_local std::string last_error;

jl_status fail(jl_status code, const std::string& message) {
  last_error = message;
  return code;
}

template <class F>
jl_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return JL_OK;
  } catch (const jstlabel::Error& e) {
    return fail(static_cast<jl_status>(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(JL_ERR_INVARIANT, "out of memory");
  } catch (const std::out_of_range& e) {
    return fail(JL_ERR_USAGE, e.what());
  } catch (const std::exception& e) {
    return fail(JL_ERR_INVARIANT, e.what());
  }
}

#define JL_REQUIRE(cond, what) \
  if (!(cond)) return fail(JL_ERR_USAGE, what)

std::ofstream open_out(const char* path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw jstlabel::validation_error(std::string("cannot write ") + path);
  return out;
}

void check_written(std::ostream& out, const char* path) {
  out.flush();
  if (!out) throw jstlabel::validation_error(std::string("write failed: ") + path);
}

std::mutex warning_mutex;
jl_warning_fn warning_fn = nullptr;
void* warning_user = nullptr;

}  // namespace

extern "C" {

const char* jl_version(void) { return "1.0.0"; }

const char* jl_last_error(void) { return last_error.c_str(); }

void jl_set_warning_handler(jl_warning_fn fn, void* user) {
  {
    std::lock_guard lock(warning_mutex);
    warning_fn = fn;
    warning_user = user;
  }
  if (!fn) {
    jstlabel::set_warning_sink(nullptr);
    return;
  }
  jstlabel::set_warning_sink([](const std::string& message) {
    std::lock_guard lock(warning_mutex);
    if (warning_fn) warning_fn(message.c_str(), warning_user);
  });
}

jl_status jl_stopwords_load(const char* path, jl_stopwords** out) {
  JL_REQUIRE(path && out, "null argument");
  return guarded([&] { *out = new jl_stopwords{jstlabel::load_stopwords(path)}; });
}

jl_stopwords* jl_stopwords_empty(void) { return new (std::nothrow) jl_stopwords{}; }
size_t jl_stopwords_size(const jl_stopwords* sw) { return sw ? sw->value.size() : 0; }
void jl_stopwords_free(jl_stopwords* sw) { delete sw; }

jl_status jl_lexicon_load(const char* path, jl_lexicon** out) {
  JL_REQUIRE(path && out, "null argument");
  return guarded([&] { *out = new jl_lexicon{jstlabel::load_lexicon(path)}; });
}

size_t jl_lexicon_size(const jl_lexicon* lex) { return lex ? lex->value.size() : 0; }
void jl_lexicon_free(jl_lexicon* lex) { delete lex; }

jl_status jl_corpus_load(const char* path, const jl_corpus_options* opts, jl_corpus** out) {
  JL_REQUIRE(path && out, "null argument");
  jstlabel::PreprocessOptions options;
  if (opts) {
    options.remove_stopwords_for_model = opts->remove_stopwords_for_model != 0;
    options.stopwords = opts->stopwords ? &opts->stopwords->value : nullptr;
    JL_REQUIRE(!options.remove_stopwords_for_model || options.stopwords,
               "stopword removal requested without a stopword list");
  }
  return guarded([&] { *out = new jl_corpus{jstlabel::load_corpus(path, options)}; });
}

size_t jl_corpus_documents(const jl_corpus* c) { return c ? c->value.documents().size() : 0; }
size_t jl_corpus_sentences(const jl_corpus* c) { return c ? c->value.sentences().size() : 0; }
size_t jl_corpus_vocab_size(const jl_corpus* c) { return c ? c->value.vocabulary().size() : 0; }
size_t jl_corpus_tokens(const jl_corpus* c) { return c ? c->value.total_tokens() : 0; }
void jl_corpus_free(jl_corpus* c) { delete c; }

void jl_jst_config_default(jl_jst_config* cfg) {
  if (!cfg) return;
  const jstlabel::JstConfig d;
  cfg->sentiment_labels = d.sentiment_labels;
  cfg->topics = d.topics;
  cfg->beta = d.beta;
  cfg->gamma = d.gamma;
  cfg->alpha_init = 0.0;
  cfg->alpha_update_interval = d.alpha_update_interval;
  cfg->iterations = d.iterations;
  cfg->burn_in = d.burn_in;
  cfg->seed = d.seed;
  cfg->lambda_scale = d.lambda_scale;
  cfg->epsilon = d.epsilon;
  cfg->positive_label = d.positive_label;
  cfg->negative_label = d.negative_label;
}

jl_status jl_model_train(const jl_corpus* corpus, const jl_lexicon* lexicon, const jl_jst_config* cfg,
                         jl_sweep_fn on_sweep, void* user, jl_model** out) {
  JL_REQUIRE(corpus && lexicon && out, "null argument");
  jl_jst_config c;
  if (cfg) {
    c = *cfg;
  } else {
    jl_jst_config_default(&c);
  }
  jstlabel::JstConfig jc;
  jc.sentiment_labels = c.sentiment_labels;
  jc.topics = c.topics;
  jc.beta = c.beta;
  jc.gamma = c.gamma;
  if (c.alpha_init > 0.0) jc.alpha_init = c.alpha_init;
  jc.alpha_update_interval = c.alpha_update_interval;
  jc.iterations = c.iterations;
  jc.burn_in = c.burn_in;
  jc.seed = c.seed;
  jc.lambda_scale = c.lambda_scale;
  jc.epsilon = c.epsilon;
  jc.positive_label = c.positive_label;
  jc.negative_label = c.negative_label;
  return guarded([&] {
    std::function<void(int, double)> cb;
    if (on_sweep) cb = [&](int sweep, double ll) { on_sweep(sweep, ll, user); };
    *out = new jl_model{jstlabel::train(corpus->value, lexicon->value, jc, cb)};
  });
}

jl_status jl_model_save(const jl_model* m, const char* path) {
  JL_REQUIRE(m && path, "null argument");
  return guarded([&] { jstlabel::save_model(path, m->value); });
}

jl_status jl_model_load(const char* path, jl_model** out) {
  JL_REQUIRE(path && out, "null argument");
  return guarded([&] { *out = new jl_model{jstlabel::load_model(path)}; });
}

jl_status jl_model_check(const jl_model* m) {
  JL_REQUIRE(m, "null argument");
  return guarded([&] { jstlabel::check_invariants(m->value); });
}

int jl_model_labels(const jl_model* m) { return m ? m->value.labels() : 0; }
int jl_model_topics(const jl_model* m) { return m ? m->value.topics() : 0; }
size_t jl_model_vocab_size(const jl_model* m) { return m ? m->value.vocab_size() : 0; }

double jl_model_phi(const jl_model* m, int l, int z, size_t word) {
  if (!m || l < 0 || l >= m->value.labels() || z < 0 || z >= m->value.topics() || word >= m->value.vocab_size())
    return 0.0;
  return m->value.phi(l, z, static_cast<jstlabel::WordId>(word));
}

jl_status jl_model_top_words(const jl_model* m, int l, int z, size_t n, const char** words, size_t* count) {
  JL_REQUIRE(m && count && (words || n == 0), "null argument");
  JL_REQUIRE(l >= 0 && l < m->value.labels() && z >= 0 && z < m->value.topics(), "topic index out of range");
  return guarded([&] {
    const auto ids = jstlabel::top_words(m->value, l, z, n);
    for (std::size_t i = 0; i < ids.size(); ++i) words[i] = m->value.word(ids[i]).c_str();
    *count = ids.size();
  });
}

void jl_model_free(jl_model* m) { delete m; }

jl_status jl_relevance_compute(const jl_model* m, const jl_corpus* c, int documents, jl_relevance** out) {
  JL_REQUIRE(m && c && out, "null argument");
  return guarded([&] {
    *out = new jl_relevance{documents ? jstlabel::score_documents(c->value, m->value)
                                      : jstlabel::score_sentences(c->value, m->value)};
  });
}

jl_status jl_relevance_save(const jl_relevance* r, const char* path) {
  JL_REQUIRE(r && path, "null argument");
  return guarded([&] { jstlabel::save_relevance(path, r->value); });
}

jl_status jl_relevance_load(const char* path, const jl_model* m, jl_relevance** out) {
  JL_REQUIRE(path && m && out, "null argument");
  return guarded(
      [&] { *out = new jl_relevance{jstlabel::load_relevance(path, m->value.labels(), m->value.topics())}; });
}

size_t jl_relevance_count(const jl_relevance* r, int l, int z) {
  if (!r || l < 0 || l >= r->value.labels() || z < 0 || z >= r->value.topics()) return 0;
  return r->value.ranking(l, z).size();
}

jl_status jl_relevance_entry(const jl_relevance* r, int l, int z, size_t rank, uint32_t* id, double* score) {
  JL_REQUIRE(r && id && score, "null argument");
  JL_REQUIRE(rank < jl_relevance_count(r, l, z), "rank out of range");
  const auto& e = r->value.ranking(l, z)[rank];
  *id = e.id;
  *score = e.score;
  return JL_OK;
}

void jl_relevance_free(jl_relevance* r) { delete r; }

void jl_label_config_default(jl_label_config* cfg) {
  if (!cfg) return;
  const jstlabel::LabelConfig d;
  cfg->method = "sent-label";
  cfg->alpha = d.extract.alpha;
  cfg->top_n = d.extract.top_n;
  cfg->rel_normalization = d.extract.rel_normalization ? 1 : 0;
  cfg->candidate_limit = d.extract.candidate_limit;
  cfg->dedup = d.extract.dedup ? 1 : 0;
  cfg->k_max = d.fuse.k_max;
  cfg->cluster_size = d.fuse.cluster_size;
  cfg->min_words = d.fuse.min_words;
  cfg->fusion_topic_words = d.fuse.topic_words;
  cfg->centroid_k = d.centroid_k;
  cfg->jobs = d.jobs;
}

jl_status jl_labels_compute(const jl_model* m, const jl_corpus* c, const jl_lexicon* lex, const jl_stopwords* sw,
                            const jl_relevance* r, const jl_label_config* cfg, jl_labels** out) {
  JL_REQUIRE(m && c && lex && sw && r && out, "null argument");
  jl_label_config lc;
  if (cfg) {
    lc = *cfg;
  } else {
    jl_label_config_default(&lc);
  }
  return guarded([&] {
    jstlabel::LabelConfig config;
    config.method = jstlabel::parse_method(lc.method ? lc.method : "sent-label");
    config.extract.alpha = lc.alpha;
    config.extract.top_n = lc.top_n;
    config.extract.rel_normalization = lc.rel_normalization != 0;
    config.extract.candidate_limit = lc.candidate_limit;
    config.extract.dedup = lc.dedup != 0;
    config.fuse.k_max = lc.k_max;
    config.fuse.cluster_size = lc.cluster_size;
    config.fuse.min_words = lc.min_words;
    config.fuse.topic_words = lc.fusion_topic_words;
    config.centroid_k = lc.centroid_k;
    config.jobs = lc.jobs;
    jstlabel::require_same_corpus(m->value, c->value);
    if (r->value.labels() != m->value.labels() || r->value.topics() != m->value.topics())
      throw jstlabel::validation_error("relevance table shape does not match the model");
    const jstlabel::LabelInputs in{c->value, m->value, lex->value, sw->value, r->value};
    *out = new jl_labels{jstlabel::label_topics(in, config)};
  });
}

jl_status jl_labels_load(const char* path, jl_labels** out) {
  JL_REQUIRE(path && out, "null argument");
  return guarded([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw jstlabel::validation_error(std::string("cannot open ") + path);
    *out = new jl_labels{jstlabel::read_labels(in, path)};
  });
}

jl_status jl_labels_save(const jl_labels* labels, const char* path) {
  JL_REQUIRE(labels && path, "null argument");
  return guarded([&] {
    auto out = open_out(path);
    jstlabel::write_labels(out, labels->value);
    check_written(out, path);
  });
}

jl_status jl_labels_write_pretty(const jl_labels* labels, const char* path) {
  JL_REQUIRE(labels, "null argument");
  return guarded([&] {
    if (!path) {
      jstlabel::write_labels_pretty(std::cout, labels->value);
      std::cout.flush();
      return;
    }
    auto out = open_out(path);
    jstlabel::write_labels_pretty(out, labels->value);
    check_written(out, path);
  });
}

size_t jl_labels_count(const jl_labels* labels) { return labels ? labels->value.size() : 0; }

const char* jl_labels_text(const jl_labels* labels, size_t i) {
  if (!labels || i >= labels->value.size()) return nullptr;
  return labels->value[i].text.c_str();
}

size_t jl_labels_length(const jl_labels* labels, size_t i) {
  if (!labels || i >= labels->value.size()) return 0;
  return labels->value[i].length;
}

int jl_labels_status(const jl_labels* labels, size_t i) {
  if (!labels || i >= labels->value.size()) return -1;
  return static_cast<int>(labels->value[i].status);
}

void jl_labels_free(jl_labels* labels) { delete labels; }

jl_status jl_dump_word_graph(const jl_corpus* c, const jl_stopwords* sw, const jl_relevance* r, int l, int z,
                             size_t cluster_size, const char* path) {
  JL_REQUIRE(c && sw && r && path, "null argument");
  JL_REQUIRE(l >= 0 && l < r->value.labels() && z >= 0 && z < r->value.topics(), "topic index out of range");
  return guarded([&] {
    std::vector<jstlabel::Sentence> cluster;
    for (const auto& e : r->value.ranking(l, z)) {
      if (cluster.size() >= cluster_size) break;
      cluster.push_back(c->value.sentence(e.id));
    }
    const auto graph = jstlabel::build_word_graph(cluster, sw->value);
    auto out = open_out(path);
    jstlabel::write_graph(out, graph);
    check_written(out, path);
  });
}

jl_status jl_report(const char* const* label_paths, size_t n, const char* out_path, int pretty) {
  JL_REQUIRE(label_paths && n > 0, "no label files given");
  return guarded([&] {
    std::vector<std::vector<jstlabel::TopicLabel>> sets;
    for (std::size_t i = 0; i < n; ++i) {
      std::ifstream in(label_paths[i], std::ios::binary);
      if (!in) throw jstlabel::validation_error(std::string("cannot open ") + label_paths[i]);
      sets.push_back(jstlabel::read_labels(in, label_paths[i]));
    }
    const auto report = jstlabel::build_report(sets);
    auto emit = [&](std::ostream& out) {
      if (pretty) {
        jstlabel::write_report_pretty(out, report);
      } else {
        jstlabel::write_report(out, report);
      }
    };
    if (!out_path) {
      emit(std::cout);
      std::cout.flush();
      return;
    }
    auto out = open_out(out_path);
    emit(out);
    check_written(out, out_path);
  });
}

}  // extern "C"
