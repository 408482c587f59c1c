// Command-line front end over the jstlabel C API.
#include <jstlabel/jstlabel.h>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Failure {
  jl_status status;
};

void check(jl_status s) {
  if (s != JL_OK) {
    std::cerr << "error: " << jl_last_error() << '\n';
    throw Failure{s};
  }
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Stopwords = std::unique_ptr<jl_stopwords, Deleter<jl_stopwords, jl_stopwords_free>>;
using Lexicon = std::unique_ptr<jl_lexicon, Deleter<jl_lexicon, jl_lexicon_free>>;
using Corpus = std::unique_ptr<jl_corpus, Deleter<jl_corpus, jl_corpus_free>>;
using Model = std::unique_ptr<jl_model, Deleter<jl_model, jl_model_free>>;
using Relevance = std::unique_ptr<jl_relevance, Deleter<jl_relevance, jl_relevance_free>>;
using Labels = std::unique_ptr<jl_labels, Deleter<jl_labels, jl_labels_free>>;

struct CorpusArgs {
  std::string corpus;
  std::string stopwords;
  bool remove_stopwords = false;
};

void add_corpus_options(CLI::App* cmd, CorpusArgs& a) {
  cmd->add_option("--corpus", a.corpus, "tagged corpus (doc_id<TAB>sent_id<TAB>word/POS ...)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--stopwords", a.stopwords, "stopword list, one word per line")->check(CLI::ExistingFile);
  cmd->add_flag("--remove-stopwords", a.remove_stopwords, "drop stopwords from the model vocabulary");
}

Stopwords load_stopwords(const std::string& path) {
  if (path.empty()) return Stopwords(jl_stopwords_empty());
  jl_stopwords* sw = nullptr;
  check(jl_stopwords_load(path.c_str(), &sw));
  return Stopwords(sw);
}

Corpus load_corpus(const CorpusArgs& a, const jl_stopwords* sw) {
  if (a.remove_stopwords && a.stopwords.empty()) {
    std::cerr << "error: --remove-stopwords needs --stopwords\n";
    throw Failure{JL_ERR_USAGE};
  }
  jl_corpus_options opts{a.remove_stopwords ? 1 : 0, sw};
  jl_corpus* c = nullptr;
  check(jl_corpus_load(a.corpus.c_str(), &opts, &c));
  return Corpus(c);
}

Lexicon load_lexicon(const std::string& path) {
  jl_lexicon* lex = nullptr;
  check(jl_lexicon_load(path.c_str(), &lex));
  return Lexicon(lex);
}

Model load_model(const std::string& path) {
  jl_model* m = nullptr;
  check(jl_model_load(path.c_str(), &m));
  return Model(m);
}

void prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    std::cerr << "error: cannot create output directory " << dir << '\n';
    throw Failure{JL_ERR_VALIDATION};
  }
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path.string() << '\n';
    throw Failure{JL_ERR_VALIDATION};
  }
  return out;
}

// Resolved options of the active subcommand, reusable with --config.
void write_resolved_config(const CLI::App& app, const fs::path& path) {
  auto out = open_out(path);
  std::string prefix;
  for (const auto* sub : app.get_subcommands()) prefix = sub->get_name() + ".";
  std::istringstream all(app.config_to_str(true, false));
  for (std::string line; std::getline(all, line);) {
    if (line.rfind(prefix, 0) == 0) out << line << '\n';
  }
}

std::string fmt_double(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

void write_topics(const jl_model* m, std::size_t n, std::ostream& out, bool pretty) {
  std::vector<const char*> words(n);
  for (int l = 0; l < jl_model_labels(m); ++l) {
    for (int z = 0; z < jl_model_topics(m); ++z) {
      std::size_t count = 0;
      check(jl_model_top_words(m, l, z, n, words.data(), &count));
      if (pretty) {
        out << "l=" << l << " z=" << std::setw(2) << z << " |";
        for (std::size_t i = 0; i < count; ++i) out << ' ' << words[i];
      } else {
        out << l << '\t' << z;
        for (std::size_t i = 0; i < count; ++i) out << (i == 0 ? '\t' : ' ') << words[i];
      }
      out << '\n';
    }
  }
}

struct TrainArgs {
  CorpusArgs corpus;
  std::string lexicon;
  std::string out;
  jl_jst_config jst{};
  std::size_t topic_words = 20;
  bool pretty = false;
};

struct RelevanceArgs {
  CorpusArgs corpus;
  std::string model;
  std::string out;
  bool documents = false;
  bool pretty = false;
};

struct LabelArgs {
  CorpusArgs corpus;
  std::string model;
  std::string relevance;
  std::string lexicon;
  std::string out;
  std::string method = "sent-label";
  jl_label_config label{};
  bool no_rel_normalization = false;
  bool no_dedup = false;
  bool dump_graphs = false;
  bool pretty = false;
};

struct ReportArgs {
  std::vector<std::string> labels;
  std::string out;
  bool pretty = false;
};

void run_train(const CLI::App& app, const TrainArgs& a) {
  prepare_dir(a.out);
  const fs::path dir(a.out);
  write_resolved_config(app, dir / "config.toml");
  auto sw = load_stopwords(a.corpus.stopwords);
  auto corpus = load_corpus(a.corpus, sw.get());
  auto lex = load_lexicon(a.lexicon);

  auto log = open_out(dir / "train_log.tsv");
  log << "sweep\tlog_likelihood\n";
  jl_model* raw = nullptr;
  auto on_sweep = [](int sweep, double ll, void* user) {
    *static_cast<std::ofstream*>(user) << sweep << '\t' << fmt_double(ll) << '\n';
  };
  check(jl_model_train(corpus.get(), lex.get(), &a.jst, on_sweep, &log, &raw));
  Model model(raw);
  check(jl_model_check(model.get()));
  check(jl_model_save(model.get(), (dir / "model.json").string().c_str()));

  auto topics = open_out(dir / "topics.tsv");
  write_topics(model.get(), a.topic_words, topics, false);
  if (a.pretty) write_topics(model.get(), a.topic_words, std::cout, true);
}

void run_relevance(const CLI::App& app, const RelevanceArgs& a) {
  prepare_dir(a.out);
  const fs::path dir(a.out);
  write_resolved_config(app, dir / "config.toml");
  auto sw = load_stopwords(a.corpus.stopwords);
  auto corpus = load_corpus(a.corpus, sw.get());
  auto model = load_model(a.model);
  jl_relevance* raw = nullptr;
  check(jl_relevance_compute(model.get(), corpus.get(), a.documents ? 1 : 0, &raw));
  Relevance rel(raw);
  check(jl_relevance_save(rel.get(), (dir / "relevance.tsv").string().c_str()));
  if (!a.pretty) return;
  for (int l = 0; l < jl_model_labels(model.get()); ++l) {
    for (int z = 0; z < jl_model_topics(model.get()); ++z) {
      std::cout << "l=" << l << " z=" << z << " |";
      const std::size_t n = std::min<std::size_t>(5, jl_relevance_count(rel.get(), l, z));
      for (std::size_t r = 0; r < n; ++r) {
        std::uint32_t id = 0;
        double score = 0.0;
        check(jl_relevance_entry(rel.get(), l, z, r, &id, &score));
        std::cout << ' ' << id << ':' << std::fixed << std::setprecision(4) << score << std::defaultfloat;
      }
      std::cout << '\n';
    }
  }
}

void run_label(const CLI::App& app, LabelArgs a) {
  prepare_dir(a.out);
  const fs::path dir(a.out);
  write_resolved_config(app, dir / "config.toml");
  auto sw = load_stopwords(a.corpus.stopwords);
  auto corpus = load_corpus(a.corpus, sw.get());
  auto model = load_model(a.model);
  auto lex = load_lexicon(a.lexicon);
  jl_relevance* raw_rel = nullptr;
  check(jl_relevance_load(a.relevance.c_str(), model.get(), &raw_rel));
  Relevance rel(raw_rel);

  a.label.method = a.method.c_str();
  a.label.rel_normalization = a.no_rel_normalization ? 0 : 1;
  a.label.dedup = a.no_dedup ? 0 : 1;
  jl_labels* raw = nullptr;
  check(jl_labels_compute(model.get(), corpus.get(), lex.get(), sw.get(), rel.get(), &a.label, &raw));
  Labels labels(raw);
  check(jl_labels_save(labels.get(), (dir / ("labels_" + a.method + ".jsonl")).string().c_str()));
  if (a.pretty) check(jl_labels_write_pretty(labels.get(), nullptr));

  if (a.dump_graphs) {
    const fs::path gdir = dir / "graphs";
    prepare_dir(gdir.string());
    for (int l = 0; l < jl_model_labels(model.get()); ++l) {
      for (int z = 0; z < jl_model_topics(model.get()); ++z) {
        const auto path = gdir / ("graph_l" + std::to_string(l) + "_z" + std::to_string(z) + ".tsv");
        check(jl_dump_word_graph(corpus.get(), sw.get(), rel.get(), l, z, a.label.cluster_size,
                                 path.string().c_str()));
      }
    }
  }
}

void run_report(const ReportArgs& a) {
  std::vector<const char*> paths;
  for (const auto& p : a.labels) paths.push_back(p.c_str());
  check(jl_report(paths.data(), paths.size(), a.out.empty() ? nullptr : a.out.c_str(), a.pretty ? 1 : 0));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sentiment-topic modelling and topic labelling"};
  app.set_config("--config", "", "TOML or INI configuration; command-line flags take precedence");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(jl_version()));

  TrainArgs train;
  jl_jst_config_default(&train.jst);
  auto* cmd_train = app.add_subcommand("train", "fit a sentiment-topic model");
  add_corpus_options(cmd_train, train.corpus);
  cmd_train->add_option("--lexicon", train.lexicon, "word<TAB>polarity lexicon")->required()->check(
      CLI::ExistingFile);
  cmd_train->add_option("--out", train.out, "output directory")->required();
  cmd_train->add_option("--sentiment-labels", train.jst.sentiment_labels)->capture_default_str();
  cmd_train->add_option("--topics", train.jst.topics, "topics per sentiment label")->capture_default_str();
  cmd_train->add_option("--beta", train.jst.beta)->capture_default_str();
  cmd_train->add_option("--gamma", train.jst.gamma)->capture_default_str();
  cmd_train->add_option("--alpha", train.jst.alpha_init, "initial alpha; 0 derives it from document length")
      ->capture_default_str();
  cmd_train->add_option("--alpha-interval", train.jst.alpha_update_interval, "sweeps between alpha updates")
      ->capture_default_str();
  cmd_train->add_option("--iterations", train.jst.iterations)->capture_default_str();
  cmd_train->add_option("--burn-in", train.jst.burn_in)->capture_default_str();
  cmd_train->add_option("--seed", train.jst.seed)->capture_default_str();
  cmd_train->add_option("--lambda-scale", train.jst.lambda_scale)->capture_default_str();
  cmd_train->add_option("--epsilon", train.jst.epsilon)->capture_default_str();
  cmd_train->add_option("--positive-label", train.jst.positive_label)->capture_default_str();
  cmd_train->add_option("--negative-label", train.jst.negative_label)->capture_default_str();
  cmd_train->add_option("--topic-words", train.topic_words, "words listed per topic")->capture_default_str();
  cmd_train->add_flag("--pretty", train.pretty, "print topics as a table");

  RelevanceArgs relevance;
  auto* cmd_rel = app.add_subcommand("relevance", "rank sentences by relevance to each topic");
  add_corpus_options(cmd_rel, relevance.corpus);
  cmd_rel->add_option("--model", relevance.model, "model archive")->required()->check(CLI::ExistingFile);
  cmd_rel->add_option("--out", relevance.out, "output directory")->required();
  cmd_rel->add_flag("--documents", relevance.documents, "rank documents instead of sentences");
  cmd_rel->add_flag("--pretty", relevance.pretty, "print the head of each ranking");

  LabelArgs label;
  jl_label_config_default(&label.label);
  auto* cmd_label = app.add_subcommand("label", "label every sentiment-topic");
  add_corpus_options(cmd_label, label.corpus);
  cmd_label->add_option("--model", label.model, "model archive")->required()->check(CLI::ExistingFile);
  cmd_label->add_option("--relevance", label.relevance, "relevance table")->required()->check(CLI::ExistingFile);
  cmd_label->add_option("--lexicon", label.lexicon, "word<TAB>polarity lexicon")->required()->check(
      CLI::ExistingFile);
  cmd_label->add_option("--out", label.out, "output directory")->required();
  cmd_label->add_option("--method", label.method, "sent-label, pathgraph, keyphrase, top-prob or centroid")
      ->capture_default_str();
  cmd_label->add_option("--alpha", label.label.alpha, "relevance weight in the extractive score")
      ->capture_default_str();
  cmd_label->add_option("--top-n", label.label.top_n, "topic words used for co-coverage")->capture_default_str();
  cmd_label->add_flag("--no-rel-normalization", label.no_rel_normalization, "mix raw relevance and coverage");
  cmd_label->add_option("--candidate-limit", label.label.candidate_limit, "0 scores every relevant sentence")
      ->capture_default_str();
  cmd_label->add_flag("--no-dedup", label.no_dedup, "keep duplicate candidate sentences");
  cmd_label->add_option("--k-max", label.label.k_max, "paths examined per topic")->capture_default_str();
  cmd_label->add_option("--cluster-size", label.label.cluster_size, "sentences fused per topic")
      ->capture_default_str();
  cmd_label->add_option("--min-words", label.label.min_words)->capture_default_str();
  cmd_label->add_option("--fusion-topic-words", label.label.fusion_topic_words)->capture_default_str();
  cmd_label->add_option("--centroid-k", label.label.centroid_k)->capture_default_str();
  cmd_label->add_option("--jobs", label.label.jobs, "parallel topic workers")->capture_default_str();
  cmd_label->add_flag("--dump-graphs", label.dump_graphs, "write each topic's word graph");
  cmd_label->add_flag("--pretty", label.pretty, "print labels as a table");

  ReportArgs report;
  auto* cmd_report = app.add_subcommand("report", "compare label files");
  cmd_report->add_option("labels", report.labels, "label files")->required()->check(CLI::ExistingFile);
  cmd_report->add_option("--out", report.out, "write the report here instead of stdout");
  cmd_report->add_flag("--pretty", report.pretty, "human-readable tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return JL_ERR_USAGE;
  }

  try {
    if (cmd_train->parsed()) run_train(app, train);
    if (cmd_rel->parsed()) run_relevance(app, relevance);
    if (cmd_label->parsed()) run_label(app, label);
    if (cmd_report->parsed()) run_report(report);
  } catch (const Failure& f) {
    return static_cast<int>(f.status);
  }
  return 0;
}
