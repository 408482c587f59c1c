/*
 * jstlabel: sentiment-topic modelling and sentence labelling of topics.
 *
 * C interface. Every object is an opaque handle released by its *_free
 * function. Functions returning jl_status report failures through the status
 * code; the message of the last failure on the calling thread is available
 * from jl_last_error(). Status values double as the CLI exit codes.
 */
#ifndef JSTLABEL_H
#define JSTLABEL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define JL_API __declspec(dllexport)
#else
#define JL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum jl_status {
  JL_OK = 0,
  JL_ERR_USAGE = 1,      /* bad arguments */
  JL_ERR_VALIDATION = 2, /* unreadable or inconsistent input */
  JL_ERR_INVARIANT = 3   /* internal invariant violated */
} jl_status;

typedef struct jl_stopwords jl_stopwords;
typedef struct jl_lexicon jl_lexicon;
typedef struct jl_corpus jl_corpus;
typedef struct jl_model jl_model;
typedef struct jl_relevance jl_relevance;
typedef struct jl_labels jl_labels;

JL_API const char* jl_version(void);
JL_API const char* jl_last_error(void);

/* Warnings (duplicate lexicon entries, degenerate updates, ...). A NULL
 * handler restores the default, which prints to stderr. */
typedef void (*jl_warning_fn)(const char* message, void* user);
JL_API void jl_set_warning_handler(jl_warning_fn fn, void* user);

/* ---- inputs ------------------------------------------------------------ */

JL_API jl_status jl_stopwords_load(const char* path, jl_stopwords** out);
JL_API jl_stopwords* jl_stopwords_empty(void);
JL_API size_t jl_stopwords_size(const jl_stopwords* sw);
JL_API void jl_stopwords_free(jl_stopwords* sw);

JL_API jl_status jl_lexicon_load(const char* path, jl_lexicon** out);
JL_API size_t jl_lexicon_size(const jl_lexicon* lex);
JL_API void jl_lexicon_free(jl_lexicon* lex);

typedef struct jl_corpus_options {
  int remove_stopwords_for_model; /* default 0 */
  const jl_stopwords* stopwords;  /* may be NULL */
} jl_corpus_options;

/* opts may be NULL for defaults. */
JL_API jl_status jl_corpus_load(const char* path, const jl_corpus_options* opts, jl_corpus** out);
JL_API size_t jl_corpus_documents(const jl_corpus* c);
JL_API size_t jl_corpus_sentences(const jl_corpus* c);
JL_API size_t jl_corpus_vocab_size(const jl_corpus* c);
JL_API size_t jl_corpus_tokens(const jl_corpus* c);
JL_API void jl_corpus_free(jl_corpus* c);

/* ---- sentiment-topic model --------------------------------------------- */

typedef struct jl_jst_config {
  int sentiment_labels;
  int topics;
  double beta;
  double gamma;
  double alpha_init; /* <= 0 selects 0.05 * mean doc length / (S * T) */
  int alpha_update_interval;
  int iterations;
  int burn_in;
  uint64_t seed;
  double lambda_scale;
  double epsilon;
  int positive_label;
  int negative_label;
} jl_jst_config;

JL_API void jl_jst_config_default(jl_jst_config* cfg);

typedef void (*jl_sweep_fn)(int sweep, double log_likelihood, void* user);

/* on_sweep may be NULL. */
JL_API jl_status jl_model_train(const jl_corpus* corpus, const jl_lexicon* lexicon, const jl_jst_config* cfg,
                                jl_sweep_fn on_sweep, void* user, jl_model** out);
JL_API jl_status jl_model_save(const jl_model* m, const char* path);
JL_API jl_status jl_model_load(const char* path, jl_model** out);
JL_API jl_status jl_model_check(const jl_model* m);
JL_API int jl_model_labels(const jl_model* m);
JL_API int jl_model_topics(const jl_model* m);
JL_API size_t jl_model_vocab_size(const jl_model* m);
JL_API double jl_model_phi(const jl_model* m, int l, int z, size_t word);
/* Fills up to n word pointers (owned by the model) and stores the count. */
JL_API jl_status jl_model_top_words(const jl_model* m, int l, int z, size_t n, const char** words, size_t* count);
JL_API void jl_model_free(jl_model* m);

/* ---- relevance --------------------------------------------------------- */

/* documents != 0 ranks documents instead of sentences. */
JL_API jl_status jl_relevance_compute(const jl_model* m, const jl_corpus* c, int documents, jl_relevance** out);
JL_API jl_status jl_relevance_save(const jl_relevance* r, const char* path);
JL_API jl_status jl_relevance_load(const char* path, const jl_model* m, jl_relevance** out);
JL_API size_t jl_relevance_count(const jl_relevance* r, int l, int z);
JL_API jl_status jl_relevance_entry(const jl_relevance* r, int l, int z, size_t rank, uint32_t* id, double* score);
JL_API void jl_relevance_free(jl_relevance* r);

/* ---- labels ------------------------------------------------------------ */

typedef struct jl_label_config {
  const char* method; /* sent-label | pathgraph | keyphrase | top-prob | centroid */
  double alpha;
  size_t top_n;
  int rel_normalization;
  size_t candidate_limit;
  int dedup;
  size_t k_max;
  size_t cluster_size;
  size_t min_words;
  size_t fusion_topic_words;
  size_t centroid_k;
  unsigned jobs;
} jl_label_config;

JL_API void jl_label_config_default(jl_label_config* cfg);
JL_API jl_status jl_labels_compute(const jl_model* m, const jl_corpus* c, const jl_lexicon* lex,
                                   const jl_stopwords* sw, const jl_relevance* r, const jl_label_config* cfg,
                                   jl_labels** out);
JL_API jl_status jl_labels_load(const char* path, jl_labels** out);
JL_API jl_status jl_labels_save(const jl_labels* labels, const char* path);
/* path NULL writes to stdout. */
JL_API jl_status jl_labels_write_pretty(const jl_labels* labels, const char* path);
JL_API size_t jl_labels_count(const jl_labels* labels);
JL_API const char* jl_labels_text(const jl_labels* labels, size_t i);
JL_API size_t jl_labels_length(const jl_labels* labels, size_t i);
/* 0 ok, 1 extractive fallback, 2 unlabellable */
JL_API int jl_labels_status(const jl_labels* labels, size_t i);
JL_API void jl_labels_free(jl_labels* labels);

/* Word graph of one topic's fusion cluster, as a node/edge text dump. */
JL_API jl_status jl_dump_word_graph(const jl_corpus* c, const jl_stopwords* sw, const jl_relevance* r, int l, int z,
                                   size_t cluster_size, const char* path);

/* ---- reports ----------------------------------------------------------- */

/* Summarises label files; out_path NULL writes to stdout. */
JL_API jl_status jl_report(const char* const* label_paths, size_t n, const char* out_path, int pretty);

#ifdef __cplusplus
}
#endif

#endif /* JSTLABEL_H */
