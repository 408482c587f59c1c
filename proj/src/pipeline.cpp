#include "pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <istream>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "error.hpp"

namespace jstlabel {

using ordered_json = nlohmann::ordered_json;

std::string method_name(LabelMethod m) {
  switch (m) {
    case LabelMethod::SentLabel: return "sent-label";
    case LabelMethod::PathGraph: return "pathgraph";
    case LabelMethod::Keyphrase: return "keyphrase";
    case LabelMethod::TopProb: return "top-prob";
    case LabelMethod::Centroid: return "centroid";
  }
  return "unknown";
}

LabelMethod parse_method(const std::string& name) {
  for (auto m : {LabelMethod::SentLabel, LabelMethod::PathGraph, LabelMethod::Keyphrase, LabelMethod::TopProb,
                 LabelMethod::Centroid}) {
    if (method_name(m) == name) return m;
  }
  throw usage_error("unknown label method '" + name +
                    "' (expected sent-label, pathgraph, keyphrase, top-prob or centroid)");
}

namespace {

std::string status_name(LabelStatus s) {
  switch (s) {
    case LabelStatus::Ok: return "ok";
    case LabelStatus::Fallback: return "fallback";
    case LabelStatus::Unlabellable: return "unlabellable";
  }
  return "unknown";
}

LabelStatus parse_status(const std::string& s) {
  if (s == "ok") return LabelStatus::Ok;
  if (s == "fallback") return LabelStatus::Fallback;
  if (s == "unlabellable") return LabelStatus::Unlabellable;
  throw validation_error("unknown label status '" + s + "'");
}

// Diagnostics of a chosen sentence, scaled against the topic's pool when it is in it.
LabelScore diagnostics(const LabelInputs& in, const SentimentTopic& topic, const ExtractConfig& cfg, SentenceId id) {
  const auto phi = TopicWordView::of(in.model);
  for (const auto& s : score_candidates(topic, in.corpus, in.relevance, phi, in.lexicon, cfg)) {
    if (s.sentence == id) return s;
  }
  return label_score(in.corpus.sentence(id), topic, in.relevance, phi, in.lexicon, cfg);
}

void set_extractive(TopicLabel& out, const LabelInputs& in, SentenceId id) {
  const Sentence& s = in.corpus.sentence(id);
  out.sentence = id;
  out.text = render_sentence(s);
  out.length = word_length(s);
}

}  // namespace

std::string render_sentence(const Sentence& sentence) {
  std::string out;
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    const auto& t = sentence.tokens[i];
    if (i > 0 && !is_punctuation(t.surface)) out += ' ';
    out += t.surface;
  }
  return out;
}

std::size_t word_length(const Sentence& sentence) {
  return static_cast<std::size_t>(std::count_if(sentence.tokens.begin(), sentence.tokens.end(),
                                                [](const Token& t) { return !is_punctuation(t.surface); }));
}

TopicLabel label_topic(const LabelInputs& in, const SentimentTopic& topic, const LabelConfig& cfg) {
  TopicLabel out;
  out.label = topic.label;
  out.topic = topic.topic;
  out.method = cfg.method;
  const std::size_t shown = std::min(cfg.report_top_words, topic.top_words.size());
  for (std::size_t i = 0; i < shown; ++i) out.top_words.push_back(in.model.word(topic.top_words[i]));

  const auto phi = TopicWordView::of(in.model);
  auto unlabellable = [&](const std::string& why) {
    out.status = LabelStatus::Unlabellable;
    out.notice = why;
    return out;
  };
  if (in.relevance.ranking(topic.label, topic.topic).empty()) return unlabellable("no sentence touches this topic");

  switch (cfg.method) {
    case LabelMethod::SentLabel: {
      auto choice = select_label(topic, in.corpus, in.relevance, phi, in.lexicon, cfg.extract);
      if (!choice.sentence) return unlabellable("no candidate sentence");
      set_extractive(out, in, *choice.sentence);
      out.score = choice.score;
      return out;
    }
    case LabelMethod::TopProb:
    case LabelMethod::Centroid: {
      auto id = cfg.method == LabelMethod::TopProb ? baseline_top_prob(topic, in.relevance)
                                                   : baseline_centroid(topic, in.relevance, in.corpus, cfg.centroid_k);
      if (!id) return unlabellable("no candidate sentence");
      set_extractive(out, in, *id);
      out.score = diagnostics(in, topic, cfg.extract, *id);
      return out;
    }
    case LabelMethod::PathGraph:
    case LabelMethod::Keyphrase: {
      std::vector<Sentence> cluster;
      for (const auto& e : in.relevance.ranking(topic.label, topic.topic)) {
        if (cluster.size() >= cfg.fuse.cluster_size) break;
        cluster.push_back(in.corpus.sentence(e.id));
      }
      const std::size_t n_topic = std::min(cfg.fuse.topic_words, topic.top_words.size());
      std::vector<std::string> topic_words;
      for (std::size_t i = 0; i < n_topic; ++i) topic_words.push_back(in.model.word(topic.top_words[i]));

      const auto method = cfg.method == LabelMethod::PathGraph ? FusionMethod::PathGraph : FusionMethod::Keyphrase;
      auto fused = fuse_cluster(cluster, in.stopwords, topic_words, method, cfg.fuse);
      if (fused.best) {
        out.text = render(*fused.best);
        out.length = fused.best->length;
        return out;
      }
      auto choice = select_label(topic, in.corpus, in.relevance, phi, in.lexicon, cfg.extract);
      if (!choice.sentence) return unlabellable("no compression and no extractive candidate");
      set_extractive(out, in, *choice.sentence);
      out.score = choice.score;
      out.status = LabelStatus::Fallback;
      out.notice = "no compression satisfied the path constraints; extractive label used";
      return out;
    }
  }
  throw invariant_error("unhandled label method");
}

std::vector<TopicLabel> label_topics(const LabelInputs& in, const LabelConfig& cfg) {
  cfg.extract.validate();
  cfg.fuse.validate();
  const std::size_t n_words = std::max({cfg.extract.top_n, cfg.fuse.topic_words, cfg.report_top_words});
  const auto topics = sentiment_topics(in.model, n_words);
  std::vector<TopicLabel> labels(topics.size());

  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(topics.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < topics.size(); ++i) labels[i] = label_topic(in, topics[i], cfg);
    return labels;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < topics.size(); i = next++) labels[i] = label_topic(in, topics[i], cfg);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return labels;
}

void write_labels(std::ostream& out, const std::vector<TopicLabel>& labels) {
  for (const auto& lab : labels) {
    ordered_json j;
    j["l"] = lab.label;
    j["z"] = lab.topic;
    j["top_words"] = lab.top_words;
    j["method"] = method_name(lab.method);
    j["status"] = status_name(lab.status);
    j["sentence_id"] = lab.sentence ? ordered_json(*lab.sentence) : ordered_json(nullptr);
    j["text"] = lab.text;
    j["length"] = lab.length;
    if (lab.score) {
      j["rel"] = lab.score->raw_rel;
      j["a"] = lab.score->aspect;
      j["s"] = lab.score->sentiment;
      j["cov"] = lab.score->raw_cov;
      j["rel_scaled"] = lab.score->rel;
      j["cov_scaled"] = lab.score->cov;
      j["total"] = lab.score->total;
    }
    if (!lab.notice.empty()) j["notice"] = lab.notice;
    out << j.dump() << '\n';
  }
}

std::vector<TopicLabel> read_labels(std::istream& in, const std::string& source) {
  std::vector<TopicLabel> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      TopicLabel lab;
      lab.label = j.at("l").get<int>();
      lab.topic = j.at("z").get<int>();
      lab.top_words = j.at("top_words").get<std::vector<std::string>>();
      lab.method = parse_method(j.at("method").get<std::string>());
      lab.status = parse_status(j.at("status").get<std::string>());
      if (!j.at("sentence_id").is_null()) lab.sentence = j.at("sentence_id").get<SentenceId>();
      lab.text = j.at("text").get<std::string>();
      lab.length = j.at("length").get<std::size_t>();
      if (j.contains("total")) {
        LabelScore s;
        s.sentence = lab.sentence.value_or(0);
        s.raw_rel = j.at("rel").get<double>();
        s.aspect = j.at("a").get<double>();
        s.sentiment = j.at("s").get<double>();
        s.raw_cov = j.at("cov").get<double>();
        s.rel = j.at("rel_scaled").get<double>();
        s.cov = j.at("cov_scaled").get<double>();
        s.total = j.at("total").get<double>();
        lab.score = s;
      }
      if (j.contains("notice")) lab.notice = j.at("notice").get<std::string>();
      labels.push_back(std::move(lab));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(source, line_no, e.what());
    } catch (const Error& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return labels;
}

void write_labels_pretty(std::ostream& out, const std::vector<TopicLabel>& labels) {
  out << fmt::format("{:>2} {:>3}  {:<12} {:<12} {:>4}  {}\n", "l", "z", "method", "status", "len", "label");
  for (const auto& lab : labels) {
    std::string words;
    for (const auto& w : lab.top_words) words += (words.empty() ? "" : " ") + w;
    out << fmt::format("{:>2} {:>3}  {:<12} {:<12} {:>4}  {}\n", lab.label, lab.topic, method_name(lab.method),
                       status_name(lab.status), lab.length, lab.text);
    out << fmt::format("{:>22}topic words: {}\n", "", words);
    if (lab.score) {
      out << fmt::format("{:>22}rel={:.6g} A={:.6g} S={:.6g} cov={:.6g} total={:.6g}\n", "", lab.score->raw_rel,
                         lab.score->aspect, lab.score->sentiment, lab.score->raw_cov, lab.score->total);
    }
    if (!lab.notice.empty()) out << fmt::format("{:>22}note: {}\n", "", lab.notice);
  }
}

Report build_report(const std::vector<std::vector<TopicLabel>>& label_sets) {
  Report r;
  std::map<std::string, std::size_t> index;
  std::map<std::string, std::size_t> total_length;
  for (const auto& set : label_sets) {
    for (const auto& lab : set) {
      const std::string m = method_name(lab.method);
      auto [it, inserted] = index.emplace(m, r.methods.size());
      if (inserted) r.methods.push_back(MethodSummary{m});
      auto& s = r.methods[it->second];
      if (lab.status == LabelStatus::Unlabellable) {
        ++s.unlabellable;
      } else {
        ++s.labels;
        total_length[m] += lab.length;
        if (lab.status == LabelStatus::Fallback) ++s.fallbacks;
      }
      r.topics[{lab.label, lab.topic}][m] = lab.status == LabelStatus::Unlabellable ? "" : lab.text;
    }
  }
  for (auto& s : r.methods) {
    s.average_length = s.labels ? static_cast<double>(total_length[s.method]) / static_cast<double>(s.labels) : 0.0;
  }
  return r;
}

void write_report(std::ostream& out, const Report& report) {
  for (const auto& s : report.methods) {
    ordered_json j;
    j["kind"] = "summary";
    j["method"] = s.method;
    j["labels"] = s.labels;
    j["fallbacks"] = s.fallbacks;
    j["unlabellable"] = s.unlabellable;
    j["average_length"] = s.average_length;
    out << j.dump() << '\n';
  }
  for (const auto& [key, texts] : report.topics) {
    ordered_json j;
    j["kind"] = "topic";
    j["l"] = key.first;
    j["z"] = key.second;
    ordered_json labels = ordered_json::object();
    for (const auto& s : report.methods) {
      auto it = texts.find(s.method);
      if (it != texts.end()) labels[s.method] = it->second;
    }
    j["labels"] = labels;
    out << j.dump() << '\n';
  }
}

void write_report_pretty(std::ostream& out, const Report& report) {
  out << fmt::format("{:<12} {:>7} {:>9} {:>12} {:>10}\n", "method", "labels", "fallbacks", "unlabellable",
                     "avg words");
  for (const auto& s : report.methods) {
    out << fmt::format("{:<12} {:>7} {:>9} {:>12} {:>10.2f}\n", s.method, s.labels, s.fallbacks, s.unlabellable,
                       s.average_length);
  }
  out << '\n';
  for (const auto& [key, texts] : report.topics) {
    out << fmt::format("topic l={} z={}\n", key.first, key.second);
    for (const auto& s : report.methods) {
      auto it = texts.find(s.method);
      if (it != texts.end()) out << fmt::format("  {:<12} {}\n", s.method, it->second.empty() ? "-" : it->second);
    }
  }
}

}  // namespace jstlabel
