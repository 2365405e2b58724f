// qsumm command-line front end. Exit codes: 0 success, 1 user error,
// 2 internal error.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qsumm/qsumm.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct UserError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qsumm::FileUnreadable("cannot open " + path);
  std::uint64_t h = 1469598103934665603ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
  }
  return h;
}

std::ofstream open_out(const std::string& path) {
  const auto parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qsumm::FileUnreadable("cannot write " + path);
  return out;
}

void write_json_file(const std::string& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qsumm::FileUnreadable("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw qsumm::FormatError(path + ": " + e.what());
  }
}

/// Records what produced an artifact: effective config, input hashes, seed
/// and wall-clock times.
class Manifest {
 public:
  explicit Manifest(std::string command) : command_(std::move(command)), started_(utc_now()) {}

  void input(const std::string& path) { inputs_[path] = qsumm::format_hash(fnv1a_file(path)); }
  void config(json c) { config_ = std::move(c); }
  void seed(std::uint64_t s) { seed_ = s; }

  void write(const std::string& path) const {
    json j = {{"toolkit", "qsumm"},
              {"version", qsumm::kToolkitVersion},
              {"command", command_},
              {"config", config_},
              {"inputs", inputs_},
              {"started_at", started_},
              {"finished_at", utc_now()}};
    j["seed"] = seed_ ? json(*seed_) : json(nullptr);
    write_json_file(path, j);
  }

 private:
  std::string command_;
  std::string started_;
  json config_ = json::object();
  json inputs_ = json::object();
  std::optional<std::uint64_t> seed_;
};

std::string manifest_path_for_file(const std::string& out) { return out + ".manifest.json"; }

// Options shared by every subcommand that preprocesses text.
struct TextOptions {
  std::string stopwords;
  std::string abbreviations;

  void add(CLI::App* app) {
    app->add_option("--stopwords", stopwords, "Stopword list file (one word per line)")
        ->check(CLI::ExistingFile);
    app->add_option("--abbreviations", abbreviations, "Abbreviation list file")
        ->check(CLI::ExistingFile);
  }

  qsumm::Preprocessor make() const {
    return qsumm::Preprocessor(
        stopwords.empty() ? qsumm::StopwordList{} : qsumm::StopwordList::from_file(stopwords),
        abbreviations.empty() ? qsumm::AbbreviationList{}
                              : qsumm::AbbreviationList::from_file(abbreviations));
  }

  void record(Manifest& m, json& cfg) const {
    cfg["stopwords"] = stopwords.empty() ? "builtin" : stopwords;
    cfg["abbreviations"] = abbreviations.empty() ? "builtin" : abbreviations;
    if (!stopwords.empty()) m.input(stopwords);
    if (!abbreviations.empty()) m.input(abbreviations);
  }
};

struct StrategyOptions {
  std::string kind = "threshold";
  int k = 3;
  double t = 0.1;
  double hi = 0.7;
  double lo = 0.3;

  void add(CLI::App* app) {
    app->add_option("--strategy", kind, "Labelling strategy")
        ->check(CLI::IsMember({"topk", "threshold", "marcu", "dual"}))
        ->capture_default_str();
    app->add_option("--k", k, "Top-k size")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--t", t, "Threshold")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    app->add_option("--hi", hi, "Dual threshold: positive above")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    app->add_option("--lo", lo, "Dual threshold: negative below")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
  }

  qsumm::AnnotationStrategy make() const {
    qsumm::AnnotationStrategy s;
    s.kind = qsumm::parse_strategy_kind(kind);
    s.k = k;
    s.threshold = t;
    s.hi = hi;
    s.lo = lo;
    if (s.kind == qsumm::AnnotationStrategy::Kind::DualThreshold && !(lo < hi))
      throw UserError("--lo must be smaller than --hi");
    s.validate();
    return s;
  }
};

struct HyperOptions {
  qsumm::Hyperparameters hp;
  double positive_weight = 0.0;
  double negative_weight = 0.0;
  bool no_average = false;

  void add(CLI::App* app) {
    app->add_option("--lambda", hp.lambda, "L2 regularization strength")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--epsilon", hp.epsilon, "SVR tube half-width")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app->add_option("--epochs", hp.epochs, "SGD epochs")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--eta0", hp.eta0, "Initial step size")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_flag("--no-average", no_average, "Return the last iterate instead of the average");
    app->add_option("--train-seed", hp.seed, "SGD shuffle seed")->capture_default_str();
    app->add_option("--positive-weight", positive_weight, "SVM positive class weight")
        ->check(CLI::PositiveNumber);
    app->add_option("--negative-weight", negative_weight, "SVM negative class weight")
        ->check(CLI::PositiveNumber);
  }

  qsumm::Hyperparameters make() const {
    auto h = hp;
    h.average = !no_average;
    if (positive_weight > 0) h.positive_weight = positive_weight;
    if (negative_weight > 0) h.negative_weight = negative_weight;
    h.validate();
    return h;
  }
};

// ---------------------------------------------------------------- ingest

struct IngestCmd {
  std::string bioasq, abstracts, out;
  bool include_titles = true;
  TextOptions text;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("ingest", "Parse BioASQ JSON and build candidate pools");
    c->add_option("--bioasq", bioasq, "BioASQ training JSON")->required();
    c->add_option("--abstracts", abstracts, "Abstract store (JSON lines {id,title,abstract})")
        ->required();
    c->add_option("--out", out, "Corpus file to write")->required();
    c->add_option("--include-titles", include_titles, "Put titles in the candidate pool")
        ->capture_default_str();
    text.add(c);
    c->callback([this] { run(); });
  }

  void run() {
    Manifest m("ingest");
    m.input(bioasq);
    m.input(abstracts);
    const auto pre = text.make();
    auto parsed = qsumm::parse_bioasq(bioasq);
    const auto store = qsumm::AbstractStore::load(abstracts);
    auto warnings = qsumm::build_pools(parsed.questions, store, pre, {include_titles});
    warnings.insert(warnings.begin(), parsed.warnings.begin(), parsed.warnings.end());
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';

    qsumm::Corpus corpus;
    corpus.questions = std::move(parsed.questions);
    {
      auto f = open_out(out);
      qsumm::write_corpus(f, corpus);
    }
    std::size_t usable = 0;
    for (const auto& q : corpus.questions) usable += q.usable;
    json cfg = {{"bioasq", bioasq}, {"abstracts", abstracts}, {"include_titles", include_titles}};
    text.record(m, cfg);
    m.config(cfg);
    m.write(manifest_path_for_file(out));
    std::cout << corpus.questions.size() << " questions (" << usable << " usable), "
              << warnings.size() << " warnings -> " << out << '\n';
  }
};

// ---------------------------------------------------------------- synth

struct SynthCmd {
  qsumm::SyntheticOptions opt;
  std::string out;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("synth", "Generate a seeded synthetic corpus");
    c->add_option("--questions", opt.n_questions)->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--pool", opt.pool_size)->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--planted", opt.n_planted)->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--seed", opt.seed)->capture_default_str();
    c->add_option("--out", out, "Corpus file to write")->required();
    c->callback([this] { run(); });
  }

  void run() {
    Manifest m("synth");
    const auto corpus = qsumm::generate_synthetic(opt);
    {
      auto f = open_out(out);
      qsumm::write_corpus(f, corpus);
    }
    m.seed(opt.seed);
    m.config({{"questions", opt.n_questions},
              {"pool", opt.pool_size},
              {"planted", opt.n_planted},
              {"seed", opt.seed}});
    m.write(manifest_path_for_file(out));
    std::cout << corpus.questions.size() << " questions -> " << out << '\n';
  }
};

// ---------------------------------------------------------------- annotate

struct AnnotateCmd {
  std::string corpus, out;
  StrategyOptions strategy;
  TextOptions text;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("annotate", "Score and label every candidate sentence");
    c->add_option("--corpus", corpus, "Corpus file")->required()->check(CLI::ExistingFile);
    c->add_option("--out", out, "Annotation file (JSON lines)")->required();
    strategy.add(c);
    text.add(c);
    c->callback([this] { run(); });
  }

  void run() {
    Manifest m("annotate");
    m.input(corpus);
    const auto s = strategy.make();
    const auto pre = text.make();
    const auto prepared = qsumm::prepare_corpus(qsumm::read_corpus(corpus), pre);
    std::vector<std::string> ids;
    std::vector<qsumm::QuestionAnnotation> ann;
    std::size_t fallbacks = 0;
    for (const auto& q : prepared.questions) {
      ids.push_back(q.id);
      ann.push_back(qsumm::annotate_question(q, s));
      fallbacks += ann.back().fell_back;
    }
    for (const auto& sk : prepared.skipped)
      std::cerr << "warning: skipped " << sk.id << ": " << sk.reason << '\n';
    {
      auto f = open_out(out);
      qsumm::write_annotations(f, ids, ann, s);
    }
    json cfg = {{"corpus", corpus}, {"strategy", s.id()}};
    text.record(m, cfg);
    m.config(cfg);
    m.write(manifest_path_for_file(out));
    std::cout << ids.size() << " questions annotated with " << s.id();
    if (fallbacks) std::cout << " (" << fallbacks << " fell back to threshold-0.1)";
    std::cout << " -> " << out << '\n';
  }
};

// ---------------------------------------------------------------- experiment

struct ExperimentOptions {
  std::string approach = "classification";
  std::size_t n = 3;
  std::size_t folds = 10;
  std::uint64_t seed = 42;
  std::size_t min_df = 1;
  StrategyOptions strategy;
  HyperOptions hyper;

  void add(CLI::App* c) {
    c->add_option("--approach", approach)
        ->check(CLI::IsMember({"regression", "classification", "random"}))
        ->capture_default_str();
    c->add_option("--n", n, "Summary length in sentences")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--folds", folds, "Cross-validation folds")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}))
        ->capture_default_str();
    c->add_option("--seed", seed, "Fold partition / baseline seed")->capture_default_str();
    c->add_option("--min-df", min_df, "Drop terms in fewer documents")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    strategy.add(c);
    hyper.add(c);
  }

  qsumm::ExperimentConfig make() const {
    qsumm::ExperimentConfig cfg;
    cfg.approach = qsumm::parse_approach(approach);
    cfg.strategy = strategy.make();
    cfg.n_summary_sentences = n;
    cfg.k_folds = folds;
    cfg.seed = seed;
    cfg.min_df = min_df;
    cfg.hyper = hyper.make();
    cfg.validate();
    return cfg;
  }
};

struct ExperimentCmd {
  std::string corpus, out_dir;
  ExperimentOptions options;
  TextOptions text;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("experiment", "Cross-validated training and ROUGE-SU4 evaluation");
    c->add_option("--corpus", corpus, "Corpus file")->required()->check(CLI::ExistingFile);
    c->add_option("--out-dir", out_dir, "Directory for report.json, report.csv, manifest.json")
        ->required();
    options.add(c);
    text.add(c);
    c->callback([this] { run(); });
  }

  void run() {
    Manifest m("experiment");
    m.input(corpus);
    const auto cfg = options.make();
    const auto report = qsumm::run_experiment(qsumm::read_corpus(corpus), cfg, text.make());
    fs::create_directories(out_dir);
    write_json_file((fs::path(out_dir) / "report.json").string(), qsumm::report_to_json(report));
    {
      auto f = open_out((fs::path(out_dir) / "report.csv").string());
      qsumm::write_report_csv(f, report);
    }
    json c = qsumm::config_to_json(cfg);
    c["corpus"] = corpus;
    text.record(m, c);
    m.config(c);
    m.seed(cfg.seed);
    m.write((fs::path(out_dir) / "manifest.json").string());
    for (const auto& s : report.skipped)
      std::cerr << "warning: skipped " << s.id << ": " << s.reason << '\n';
    std::printf("%s: %zu questions, %zu folds, F1 SU4 macro %.4f +/- %.4f, micro %.4f +/- %.4f\n",
                cfg.label().c_str(), report.n_questions, report.folds.size(), report.macro.mean,
                report.macro.std, report.micro.mean, report.micro.std);
  }
};

// ---------------------------------------------------------------- compare

struct CompareCmd {
  std::vector<std::string> runs;
  std::string out;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("compare", "Per-fold comparison table and bar chart");
    c->add_option("--runs", runs, "Experiment output directories")->required()->check(CLI::ExistingDirectory);
    c->add_option("--out", out, "Output prefix; writes <out>.csv and <out>.svg")->required();
    c->callback([this] { run(); });
  }

  void run() {
    Manifest m("compare");
    std::vector<qsumm::ExperimentReport> reports;
    for (const auto& dir : runs) {
      const auto path = (fs::path(dir) / "report.json").string();
      m.input(path);
      reports.push_back(qsumm::report_from_json(read_json_file(path)));
    }
    const auto table = qsumm::compare_runs(reports);
    {
      auto f = open_out(out + ".csv");
      qsumm::write_comparison_csv(f, table);
    }
    {
      auto f = open_out(out + ".svg");
      qsumm::write_comparison_svg(f, table);
    }
    m.config({{"runs", runs}});
    m.write(out + ".manifest.json");
    for (std::size_t r = 0; r < table.labels.size(); ++r)
      std::printf("%-40s %.4f +/- %.4f  wins %zu\n", table.labels[r].c_str(),
                  table.aggregate[r].mean, table.aggregate[r].std, table.wins[r]);
  }
};

// ---------------------------------------------------------------- rouge

// A summary file is either JSON (array; each element a string or an array of
// strings) or plain text with one summary per line.
std::vector<std::vector<std::string>> read_summaries(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qsumm::FileUnreadable("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  std::vector<std::vector<std::string>> out;
  if (first != std::string::npos && text[first] == '[') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw qsumm::FormatError(path + ": " + e.what());
    }
    for (const auto& item : j) {
      if (item.is_string())
        out.push_back({item.get<std::string>()});
      else if (item.is_array())
        out.push_back(item.get<std::vector<std::string>>());
      else
        throw qsumm::FormatError(path + ": entries must be strings or arrays of strings");
    }
    return out;
  }
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back({line});
  }
  return out;
}

struct RougeCmd {
  std::string candidates, references, out, mode = "SU";
  int dskip = qsumm::kDefaultSkipDistance;
  TextOptions text;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("rouge", "Score candidate summaries against references");
    c->add_option("--candidates", candidates, "One summary per line, or JSON")->required();
    c->add_option("--references", references, "One reference per line, or JSON (multi-reference)")
        ->required();
    c->add_option("--mode", mode)->check(CLI::IsMember({"S", "SU"}))->capture_default_str();
    c->add_option("--dskip", dskip, "Maximum intervening tokens")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    c->add_option("--out", out, "CSV output (default stdout)");
    text.add(c);
    c->callback([this] { run(); });
  }

  void run() {
    Manifest m("rouge");
    m.input(candidates);
    m.input(references);
    const auto pre = text.make();
    const auto cands = read_summaries(candidates);
    const auto refs = read_summaries(references);
    if (cands.size() != refs.size())
      throw UserError("candidate and reference files hold " + std::to_string(cands.size()) +
                      " and " + std::to_string(refs.size()) + " entries");
    const auto rm = qsumm::parse_rouge_mode(mode);
    std::ostringstream csv;
    csv << "index,precision,recall,f1\n";
    for (std::size_t i = 0; i < cands.size(); ++i) {
      std::vector<qsumm::Tokens> cand;
      for (const auto& c : cands[i]) {
        auto s = pre.rouge_sentences(c);
        cand.insert(cand.end(), s.begin(), s.end());
      }
      std::vector<std::vector<qsumm::Tokens>> rs;
      for (const auto& r : refs[i]) rs.push_back(pre.rouge_sentences(r));
      const auto score = qsumm::rouge_su_multi(cand, rs, dskip, rm);
      csv << i << ',' << qsumm::fmt_num(score.precision) << ',' << qsumm::fmt_num(score.recall)
          << ',' << qsumm::fmt_num(score.f1) << '\n';
    }
    if (out.empty()) {
      std::cout << csv.str();
      return;
    }
    {
      auto f = open_out(out);
      f << csv.str();
    }
    json cfg = {{"mode", mode}, {"dskip", dskip}};
    text.record(m, cfg);
    m.config(cfg);
    m.write(manifest_path_for_file(out));
  }
};

// ---------------------------------------------------------------- train / summarize

struct TrainCmd {
  std::string corpus, out;
  ExperimentOptions options;
  TextOptions text;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("train", "Fit one model on a whole corpus");
    c->add_option("--corpus", corpus, "Corpus file")->required()->check(CLI::ExistingFile);
    c->add_option("--out", out, "Model file; the vocabulary goes to <out>.vocab.json")->required();
    options.add(c);
    text.add(c);
    c->callback([this] { run(); });
  }

  void run() {
    Manifest m("train");
    m.input(corpus);
    const auto cfg = options.make();
    if (cfg.approach == qsumm::Approach::Random) throw UserError("nothing to train for --approach random");
    const auto prepared = qsumm::prepare_corpus(qsumm::read_corpus(corpus), text.make());
    if (prepared.questions.empty()) throw qsumm::EmptyCorpus("no usable questions in " + corpus);
    std::vector<const qsumm::PreparedQuestion*> train;
    for (const auto& q : prepared.questions) train.push_back(&q);
    const auto vocab = qsumm::fit_fold_vocabulary(train, cfg.min_df);

    std::vector<qsumm::FeatureVector> xs;
    std::vector<double> targets;
    std::vector<int> labels;
    const auto strategy = cfg.approach == qsumm::Approach::Classification
                              ? cfg.strategy
                              : qsumm::AnnotationStrategy::thresholded(0.1);
    for (const auto& q : prepared.questions) {
      const auto a = qsumm::annotate_question(q, strategy);
      auto feats = qsumm::assemble_features(q, vocab);
      for (std::size_t i = 0; i < feats.size(); ++i) {
        if (cfg.approach == qsumm::Approach::Regression) {
          xs.push_back(std::move(feats[i]));
          targets.push_back(a.su4_f1[i]);
        } else if (a.labels[i]) {
          xs.push_back(std::move(feats[i]));
          labels.push_back(*a.labels[i]);
        }
      }
    }
    auto model = cfg.approach == qsumm::Approach::Regression
                     ? qsumm::train_svr(xs, targets, cfg.hyper)
                     : qsumm::train_svm(xs, labels, cfg.hyper);
    model.vocab_hash = vocab.hash();
    write_json_file(out, model.to_json());
    write_json_file(out + ".vocab.json", vocab.to_json());
    json c = qsumm::config_to_json(cfg);
    c["corpus"] = corpus;
    text.record(m, c);
    m.config(c);
    m.seed(cfg.hyper.seed);
    m.write(manifest_path_for_file(out));
    std::printf("%s model on %zu examples, objective %.6g -> %.6g -> %s\n",
                qsumm::to_string(model.kind).c_str(), xs.size(), model.meta.initial_objective,
                model.meta.final_objective, out.c_str());
  }
};

struct SummarizeCmd {
  std::string corpus, model_path, vocab_path, out;
  std::size_t n = 3;
  TextOptions text;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("summarize", "Rank and select sentences with a trained model");
    c->add_option("--corpus", corpus, "Corpus file")->required()->check(CLI::ExistingFile);
    c->add_option("--model", model_path, "Model file from train")->required()->check(CLI::ExistingFile);
    c->add_option("--vocab", vocab_path, "Vocabulary file (default <model>.vocab.json)");
    c->add_option("--n", n, "Summary length in sentences")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--out", out, "Summaries (JSON lines)")->required();
    text.add(c);
    c->callback([this] { run(); });
  }

  void run() {
    Manifest m("summarize");
    if (vocab_path.empty()) vocab_path = model_path + ".vocab.json";
    m.input(corpus);
    m.input(model_path);
    m.input(vocab_path);
    const auto model = qsumm::LinearModel::from_json(read_json_file(model_path));
    const auto vocab = qsumm::Vocabulary::from_json(read_json_file(vocab_path));
    if (model.vocab_hash != vocab.hash())
      throw UserError("model and vocabulary do not belong together (hash mismatch)");
    const auto prepared = qsumm::prepare_corpus(qsumm::read_corpus(corpus), text.make());
    {
      auto f = open_out(out);
      for (const auto& q : prepared.questions) {
        const auto s = qsumm::summarize(q, vocab, model, n);
        f << json({{"question_id", s.question_id}, {"indices", s.indices}, {"summary", s.text}}).dump()
          << '\n';
      }
    }
    json cfg = {{"n", n}};
    text.record(m, cfg);
    m.config(cfg);
    m.write(manifest_path_for_file(out));
    std::cout << prepared.questions.size() << " summaries -> " << out << '\n';
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qsumm: query-based extractive summarization experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qsumm::kToolkitVersion));
  app.set_config("--config", "", "Config file (key=value; [subcommand] sections)")
      ->envname("QSUMM_CONFIG");

  IngestCmd ingest;
  SynthCmd synth;
  AnnotateCmd annotate;
  ExperimentCmd experiment;
  CompareCmd compare;
  RougeCmd rouge;
  TrainCmd train;
  SummarizeCmd summarize;
  ingest.add(app);
  synth.add(app);
  annotate.add(app);
  experiment.add(app);
  compare.add(app);
  rouge.add(app);
  train.add(app);
  summarize.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const qsumm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const UserError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
