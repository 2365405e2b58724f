#pragma once

// Report files: experiment JSON/CSV, comparison CSV and SVG bar chart, and
// the annotated-corpus JSON lines.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qsumm/annotate.hpp"
#include "qsumm/error.hpp"
#include "qsumm/pipeline.hpp"

namespace qsumm {

inline constexpr int kReportFormatVersion = 1;

inline nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j = {{"approach", to_string(c.approach)},
                      {"n_summary_sentences", c.n_summary_sentences},
                      {"k_folds", c.k_folds},
                      {"seed", c.seed},
                      {"min_df", c.min_df},
                      {"label", c.label()}};
  if (c.approach == Approach::Classification) {
    j["strategy"] = {{"kind", strategy_kind_name(c.strategy.kind)},
                     {"k", c.strategy.k},
                     {"threshold", c.strategy.threshold},
                     {"hi", c.strategy.hi},
                     {"lo", c.strategy.lo},
                     {"id", c.strategy.id()}};
  }
  if (c.approach != Approach::Random) {
    nlohmann::json hp = {{"lambda", c.hyper.lambda}, {"epsilon", c.hyper.epsilon},
                         {"epochs", c.hyper.epochs}, {"eta0", c.hyper.eta0},
                         {"average", c.hyper.average}, {"seed", c.hyper.seed}};
    if (c.hyper.positive_weight) hp["positive_weight"] = *c.hyper.positive_weight;
    if (c.hyper.negative_weight) hp["negative_weight"] = *c.hyper.negative_weight;
    j["hyperparameters"] = hp;
  }
  return j;
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  c.approach = parse_approach(j.at("approach").get<std::string>());
  c.n_summary_sentences = j.at("n_summary_sentences").get<std::size_t>();
  c.k_folds = j.at("k_folds").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.min_df = j.value("min_df", std::size_t{1});
  if (j.contains("strategy")) {
    const auto& s = j["strategy"];
    c.strategy.kind = parse_strategy_kind(s.at("kind").get<std::string>());
    c.strategy.k = s.at("k").get<int>();
    c.strategy.threshold = s.at("threshold").get<double>();
    c.strategy.hi = s.at("hi").get<double>();
    c.strategy.lo = s.at("lo").get<double>();
  }
  if (j.contains("hyperparameters")) {
    const auto& hp = j["hyperparameters"];
    c.hyper.lambda = hp.at("lambda").get<double>();
    c.hyper.epsilon = hp.at("epsilon").get<double>();
    c.hyper.epochs = hp.at("epochs").get<int>();
    c.hyper.eta0 = hp.at("eta0").get<double>();
    c.hyper.average = hp.at("average").get<bool>();
    c.hyper.seed = hp.at("seed").get<std::uint64_t>();
    if (hp.contains("positive_weight")) c.hyper.positive_weight = hp["positive_weight"].get<double>();
    if (hp.contains("negative_weight")) c.hyper.negative_weight = hp["negative_weight"].get<double>();
  }
  return c;
}

inline nlohmann::json report_to_json(const ExperimentReport& r) {
  nlohmann::json folds = nlohmann::json::array();
  for (const auto& f : r.folds) {
    nlohmann::json qs = nlohmann::json::array();
    for (const auto& q : f.questions)
      qs.push_back({{"id", q.id},
                    {"selected", q.selected},
                    {"precision", q.score.precision},
                    {"recall", q.score.recall},
                    {"f1", q.score.f1}});
    folds.push_back({{"fold", f.fold},
                     {"n_questions", f.questions.size()},
                     {"n_train_examples", f.n_train_examples},
                     {"vocab_hash", format_hash(f.vocab_hash)},
                     {"mean", f.mean},
                     {"std", f.std},
                     {"questions", std::move(qs)}});
  }
  nlohmann::json skipped = nlohmann::json::array();
  for (const auto& s : r.skipped) skipped.push_back({{"id", s.id}, {"reason", s.reason}});
  return {{"format_version", kReportFormatVersion},
          {"config", config_to_json(r.config)},
          {"partition", r.partition},
          {"folds", std::move(folds)},
          {"aggregate",
           {{"n_questions", r.n_questions},
            {"n_folds", r.folds.size()},
            {"micro_mean", r.micro.mean},
            {"micro_std", r.micro.std},
            {"macro_mean", r.macro.mean},
            {"macro_std", r.macro.std}}},
          {"skipped", std::move(skipped)},
          {"fallbacks", r.fallbacks}};
}

inline ExperimentReport report_from_json(const nlohmann::json& j) {
  if (j.value("format_version", 0) != kReportFormatVersion)
    throw FormatError("unsupported report format_version");
  ExperimentReport r;
  r.config = config_from_json(j.at("config"));
  r.partition = j.at("partition").get<FoldPartition>();
  for (const auto& f : j.at("folds")) {
    FoldReport fr;
    fr.fold = f.at("fold").get<std::size_t>();
    fr.n_train_examples = f.value("n_train_examples", std::size_t{0});
    fr.vocab_hash = parse_hash(f.value("vocab_hash", std::string("0")));
    fr.mean = f.at("mean").get<double>();
    fr.std = f.at("std").get<double>();
    for (const auto& q : f.at("questions"))
      fr.questions.push_back({q.at("id").get<std::string>(),
                              q.at("selected").get<std::vector<std::size_t>>(),
                              {q.at("precision").get<double>(), q.at("recall").get<double>(),
                               q.at("f1").get<double>()}});
    r.folds.push_back(std::move(fr));
  }
  const auto& a = j.at("aggregate");
  r.n_questions = a.at("n_questions").get<std::size_t>();
  r.micro = {a.at("micro_mean").get<double>(), a.at("micro_std").get<double>()};
  r.macro = {a.at("macro_mean").get<double>(), a.at("macro_std").get<double>()};
  for (const auto& s : j.value("skipped", nlohmann::json::array()))
    r.skipped.push_back({s.at("id").get<std::string>(), s.at("reason").get<std::string>()});
  r.fallbacks = j.value("fallbacks", std::vector<std::string>{});
  return r;
}

/// Fixed-format number for CSV/SVG output.
inline std::string fmt_num(double v, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

inline void write_report_csv(std::ostream& out, const ExperimentReport& r) {
  out << "fold,n_questions,mean_f1_su4,std_f1_su4\n";
  for (const auto& f : r.folds)
    out << f.fold << ',' << f.questions.size() << ',' << fmt_num(f.mean) << ','
        << fmt_num(f.std) << '\n';
  out << "macro," << r.n_questions << ',' << fmt_num(r.macro.mean) << ','
      << fmt_num(r.macro.std) << '\n';
  out << "micro," << r.n_questions << ',' << fmt_num(r.micro.mean) << ','
      << fmt_num(r.micro.std) << '\n';
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline void write_comparison_csv(std::ostream& out, const ComparisonTable& t) {
  out << "fold";
  for (const auto& l : t.labels) out << ',' << csv_field(l);
  out << ",winner\n";
  for (std::size_t f = 0; f < t.fold_means.size(); ++f) {
    out << f;
    for (double v : t.fold_means[f]) out << ',' << fmt_num(v);
    out << ',' << csv_field(t.labels[t.fold_winner[f]]) << '\n';
  }
  out << "mean";
  for (const auto& m : t.aggregate) out << ',' << fmt_num(m.mean);
  out << ",\nstd";
  for (const auto& m : t.aggregate) out << ',' << fmt_num(m.std);
  out << ",\nwins";
  for (auto w : t.wins) out << ',' << w;
  out << ",\n";
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

/// Self-contained SVG: one group per run with a bar at the mean of fold means
/// and an error bar of +/- one standard deviation.
inline void write_comparison_svg(std::ostream& out, const ComparisonTable& t) {
  const double width = 140.0 * static_cast<double>(t.labels.size()) + 120.0;
  const double height = 420.0;
  const double left = 70.0, top = 30.0, plot_h = 300.0, bar_w = 60.0, slot = 140.0;
  double ymax = 0.0;
  for (const auto& m : t.aggregate) ymax = std::max(ymax, m.mean + m.std);
  ymax = ymax <= 0.0 ? 1.0 : std::min(1.0, std::ceil(ymax * 10.0) / 10.0);
  if (ymax <= 0.0) ymax = 1.0;
  auto y_of = [&](double v) { return top + plot_h * (1.0 - v / ymax); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_num(width, 0)
      << "\" height=\"" << fmt_num(height, 0) << "\" viewBox=\"0 0 " << fmt_num(width, 0)
      << ' ' << fmt_num(height, 0) << "\">\n";
  out << "<style>text{font-family:sans-serif;font-size:12px}</style>\n";
  out << "<line class=\"axis\" x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
      << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
  out << "<line class=\"axis\" x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\""
      << width - 20.0 << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double v = ymax * i / 5.0;
    out << "<text x=\"" << left - 8 << "\" y=\"" << fmt_num(y_of(v) + 4, 2)
        << "\" text-anchor=\"end\">" << fmt_num(v, 2) << "</text>\n";
  }
  out << "<text x=\"15\" y=\"" << top + plot_h / 2
      << "\" transform=\"rotate(-90 15 " << top + plot_h / 2
      << ")\" text-anchor=\"middle\">F1 ROUGE-SU4</text>\n";
  static constexpr const char* kColors[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52",
                                            "#8172b3", "#937860"};
  for (std::size_t r = 0; r < t.labels.size(); ++r) {
    const auto& m = t.aggregate[r];
    const double cx = left + slot * (static_cast<double>(r) + 0.5) + 20.0;
    const double y = y_of(m.mean);
    out << "<g class=\"group\" data-label=\"" << xml_escape(t.labels[r]) << "\">\n";
    out << "  <rect class=\"bar\" x=\"" << fmt_num(cx - bar_w / 2, 2) << "\" y=\""
        << fmt_num(y, 2) << "\" width=\"" << bar_w << "\" height=\""
        << fmt_num(top + plot_h - y, 2) << "\" fill=\"" << kColors[r % 6]
        << "\" data-mean=\"" << fmt_num(m.mean) << "\" data-std=\"" << fmt_num(m.std)
        << "\"/>\n";
    const double lo = y_of(std::max(0.0, m.mean - m.std));
    const double hi = y_of(m.mean + m.std);
    out << "  <line class=\"errorbar\" x1=\"" << fmt_num(cx, 2) << "\" y1=\"" << fmt_num(lo, 2)
        << "\" x2=\"" << fmt_num(cx, 2) << "\" y2=\"" << fmt_num(hi, 2)
        << "\" stroke=\"black\"/>\n";
    for (double yy : {lo, hi})
      out << "  <line class=\"errorcap\" x1=\"" << fmt_num(cx - 8, 2) << "\" y1=\""
          << fmt_num(yy, 2) << "\" x2=\"" << fmt_num(cx + 8, 2) << "\" y2=\"" << fmt_num(yy, 2)
          << "\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << fmt_num(cx, 2) << "\" y=\"" << top + plot_h + 18
        << "\" text-anchor=\"middle\">" << xml_escape(t.labels[r]) << "</text>\n";
    out << "</g>\n";
  }
  out << "</svg>\n";
}

/// One line per sentence: question id, sentence index, su4_f1, label (null when
/// excluded) and strategy id, after a format header.
inline void write_annotations(std::ostream& out, const std::vector<std::string>& question_ids,
                              const std::vector<QuestionAnnotation>& annotations,
                              const AnnotationStrategy& strategy) {
  out << nlohmann::json({{"format_version", 1}, {"strategy", strategy.id()}}).dump() << '\n';
  for (std::size_t q = 0; q < annotations.size(); ++q) {
    const auto& a = annotations[q];
    for (std::size_t i = 0; i < a.su4_f1.size(); ++i) {
      nlohmann::json line = {{"question_id", question_ids[q]},
                             {"sentence_index", i},
                             {"su4_f1", a.su4_f1[i]},
                             {"label", nullptr},
                             {"strategy", strategy.id()}};
      if (a.labels[i]) line["label"] = *a.labels[i];
      if (a.fell_back) line["fallback"] = "threshold-0.1";
      out << line.dump() << '\n';
    }
  }
}

}  // namespace qsumm
