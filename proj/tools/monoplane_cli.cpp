// monoplane: train, grow, verify and report.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "monoplane/monoplane.hpp"

namespace fs = std::filesystem;
using namespace monoplane;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct UsageError : Error {
  using Error::Error;
};

struct DataOptions {
  std::string dataset;
  std::string split_file;
  std::string scale = "std";
  std::string stats_from = "part";
  bool flip_labels = false;
  std::size_t features = kSonarFeatures;
  bool allow_out_of_range = false;
};

struct RunOptions {
  DataOptions data;
  std::vector<std::string> parts;
  std::string trainer = "minimerror";
  std::string config_file;
  std::optional<std::uint64_t> seed;
  std::size_t max_hidden = 0;
  std::string format;
  std::size_t jobs = 1;
  std::string out = "monoplane-out";
  std::string manifest;
  bool raw_product = false;
  std::vector<std::string> inputs;
};

// Everything that determines the output bytes of one job.
struct Job {
  std::string command;
  DataOptions data;
  std::string part;
  std::string trainer;
  std::size_t max_hidden = 0;
  TrainingConfig config;
  OutputFormat format = OutputFormat::json;
};

std::string resolve_dataset(const std::string& given) {
  if (!given.empty()) return given;
  if (const char* env = std::getenv("MONOPLANE_DATA"); env != nullptr && *env != '\0') return env;
  throw UsageError("no dataset: pass --dataset or set MONOPLANE_DATA");
}

std::vector<RawPattern> load_dataset(const DataOptions& d) {
  std::ifstream in(d.dataset);
  if (!in) throw UsageError("cannot open dataset '" + d.dataset + "'");
  try {
    return parse_sonar(in, ParseOptions{d.features, d.allow_out_of_range});
  } catch (const ParseError& e) {
    throw UsageError(d.dataset + ": " + e.what());
  }
}

SplitSpec load_split(const DataOptions& d, std::size_t n) {
  if (d.split_file.empty()) return SplitSpec::halves(n);
  try {
    return load_split_file(d.split_file);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

ScaleMode scale_mode(const std::string& s) {
  if (s == "std") return ScaleMode::standard_deviation;
  if (s == "variance") return ScaleMode::variance;
  throw UsageError("unknown scale '" + s + "'");
}

struct Prepared {
  std::vector<LabeledPattern> learn;
  std::vector<LabeledPattern> complement;
  std::string complement_name;
};

Prepared prepare(const DataOptions& d, const std::string& part) {
  const auto raw = load_dataset(d);
  const auto parts = split(raw, load_split(d, raw.size()));
  std::vector<RawPattern> all = parts.train;
  all.insert(all.end(), parts.test.begin(), parts.test.end());

  const std::vector<RawPattern>* learn = &all;
  const std::vector<RawPattern>* other = nullptr;
  Prepared p;
  if (part == "train") {
    learn = &parts.train;
    other = &parts.test;
    p.complement_name = "test";
  } else if (part == "test") {
    learn = &parts.test;
    other = &parts.train;
    p.complement_name = "train";
  } else if (part != "all") {
    throw UsageError("unknown part '" + part + "'");
  }
  if (learn->empty()) throw UsageError("part '" + part + "' is empty");
  const auto mode = scale_mode(d.scale);
  if (d.stats_from != "part" && d.stats_from != "all") throw UsageError("unknown --stats-from '" + d.stats_from + "'");
  const auto stats = compute_stats(d.stats_from == "all" ? all : *learn, mode);
  const LabelConvention convention{d.flip_labels};
  p.learn = standardize(*learn, stats, convention);
  if (other != nullptr && !other->empty()) p.complement = standardize(*other, stats, convention);
  return p;
}

Json config_json(const TrainingConfig& c) {
  return Json{{"t_initial", c.t_initial},   {"t_min", c.t_min},   {"t_decay", c.t_decay},
              {"learning_rate", c.learning_rate}, {"max_epochs", c.max_epochs}, {"seed", c.seed},
              {"temp_ratio", c.temp_ratio}};
}

TrainingConfig config_from_json(const Json& j) {
  TrainingConfig c;
  c.t_initial = j.at("t_initial").get<double>();
  c.t_min = j.at("t_min").get<double>();
  c.t_decay = j.at("t_decay").get<double>();
  c.learning_rate = j.at("learning_rate").get<double>();
  c.max_epochs = j.at("max_epochs").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.temp_ratio = j.at("temp_ratio").get<double>();
  return c;
}

Json manifest_json(const Job& job, const Json& artifacts) {
  return Json{{"command", job.command},
              {"dataset", job.data.dataset},
              {"split", job.data.split_file.empty() ? Json("halves") : Json(job.data.split_file)},
              {"features", job.data.features},
              {"allow_out_of_range", job.data.allow_out_of_range},
              {"scale", job.data.scale},
              {"stats_from", job.data.stats_from},
              {"flip_labels", job.data.flip_labels},
              {"part", job.part},
              {"trainer", job.trainer},
              {"max_hidden", job.max_hidden},
              {"config", config_json(job.config)},
              {"seed", job.config.seed},
              {"format", std::string(job.format == OutputFormat::json   ? "json"
                                     : job.format == OutputFormat::csv ? "csv"
                                                                       : "text")},
              {"artifacts", artifacts}};
}

Job job_from_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open manifest '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
    Job job;
    job.command = j.at("command").get<std::string>();
    job.data.dataset = j.at("dataset").get<std::string>();
    const auto split_source = j.at("split").get<std::string>();
    if (split_source != "halves") job.data.split_file = split_source;
    job.data.features = j.at("features").get<std::size_t>();
    job.data.allow_out_of_range = j.at("allow_out_of_range").get<bool>();
    job.data.scale = j.at("scale").get<std::string>();
    job.data.stats_from = j.at("stats_from").get<std::string>();
    job.data.flip_labels = j.at("flip_labels").get<bool>();
    job.part = j.at("part").get<std::string>();
    job.trainer = j.at("trainer").get<std::string>();
    job.max_hidden = j.at("max_hidden").get<std::size_t>();
    job.config = config_from_json(j.at("config"));
    job.format = parse_output_format(j.at("format").get<std::string>());
    return job;
  } catch (const Json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
}

struct JobOutput {
  std::string stdout_text;
  int code = kExitOk;
};

// train: one perceptron on the part, evaluated on the complement.
JobOutput run_train(const Job& job, const fs::path& out_dir) {
  const auto data = prepare(job.data, job.part);
  const auto result =
      job.trainer == "rosenblatt" ? rosenblatt_train(data.learn, job.config) : minimerror_train(data.learn, job.config);
  const auto counts = count_errors(result.weights, data.learn);
  const auto g = stabilities(result.weights, data.learn);
  const double min_g = *std::min_element(g.begin(), g.end());
  std::optional<EvaluationReport> generalization;
  if (!data.complement.empty()) generalization = evaluate(result.weights, data.complement);

  std::ostringstream report;
  switch (job.format) {
    case OutputFormat::json: {
      Json j{{"command", "train"},
             {"part", job.part},
             {"trainer", job.trainer},
             {"set_size", data.learn.size()},
             {"training_errors", to_json(counts)},
             {"min_stability", min_g},
             {"best_epoch", result.trace.best_epoch},
             {"epochs", result.trace.epochs.size()},
             {"hebbian_fallback", result.trace.hebbian_fallback}};
      j["generalization"] = generalization ? to_json(*generalization) : Json(nullptr);
      report << j.dump(2) << '\n';
      break;
    }
    case OutputFormat::csv:
      report << "part,set_size,errors,false_pos,false_neg,min_stability,generalization_errors,generalization_percent\n"
             << job.part << ',' << data.learn.size() << ',' << counts.total << ',' << counts.false_pos << ','
             << counts.false_neg << ',' << format_real(min_g) << ','
             << (generalization ? std::to_string(generalization->counts.total) : std::string()) << ','
             << (generalization ? format_percent(generalization->error_fraction) : std::string()) << '\n';
      if (generalization) write_report_csv(report, *generalization);
      break;
    case OutputFormat::text:
      report << "part " << job.part << " (" << job.trainer << "): " << counts.total << "/" << data.learn.size()
             << " training errors (" << counts.false_pos << " F+ " << counts.false_neg << " F-), min stability "
             << format_sci(min_g) << ", best epoch " << result.trace.best_epoch << " of "
             << result.trace.epochs.size() << '\n';
      if (generalization) {
        write_report_text(report, *generalization, "Generalization on " + data.complement_name);
      } else {
        report << "no generalization set\n";
      }
      break;
  }

  const std::string report_name = "report." + std::string(extension(job.format));
  std::ostringstream weights;
  write_weights(weights, result.weights);
  std::ostringstream trace;
  write_trace_csv(trace, result.trace);
  const fs::path dir = out_dir / job.part;
  write_file(dir / "weights.txt", weights.str());
  write_file(dir / "trace.csv", trace.str());
  write_file(dir / report_name, report.str());
  const Json artifacts{{"weights", "weights.txt"}, {"trace", "trace.csv"}, {"report", report_name}};
  write_file(dir / "manifest.json", manifest_json(job, artifacts).dump(2) + "\n");
  return {report.str(), kExitOk};
}

std::string_view source_name(TargetSource s) {
  switch (s) {
    case TargetSource::labels: return "labels";
    case TargetSource::previous_unit: return "previous_unit";
    case TargetSource::network_output: return "network_output";
  }
  return "labels";
}

std::string growth_csv(const GrowthTrace& trace) {
  std::ostringstream out;
  out << "unit,targets,internal_errors,network_errors\n";
  for (const auto& u : trace.units) {
    out << u.unit << ',' << source_name(u.source) << ',' << u.internal_errors << ',' << u.network_errors << '\n';
  }
  return out.str();
}

// grow: a Monoplane network on the part, evaluated on the complement.
JobOutput run_grow(const Job& job, const fs::path& out_dir) {
  const auto data = prepare(job.data, job.part);
  const fs::path dir = out_dir / job.part;
  GrowthOptions options;
  options.max_hidden = job.max_hidden;
  std::optional<GrowthResult> result;
  std::string stall;
  GrowthTrace trace;
  try {
    result = grow_network(data.learn, job.config, options);
    trace = result->trace;
  } catch (const GrowthStall& e) {
    stall = e.what();
    trace = e.trace();
  }

  Json artifacts{{"growth", "growth.csv"}};
  write_file(dir / "growth.csv", growth_csv(trace));
  std::ostringstream report;
  const std::string report_name = "report." + std::string(extension(job.format));
  artifacts["report"] = report_name;

  std::size_t train_errors = 0;
  std::optional<std::size_t> general_errors;
  if (result) {
    train_errors = network_errors(result->model, data.learn);
    if (!data.complement.empty()) general_errors = network_errors(result->model, data.complement);
    std::ostringstream net;
    write_network(net, result->model);
    write_file(dir / "network.txt", net.str());
    artifacts["network"] = "network.txt";
  } else {
    train_errors = trace.units.empty() ? data.learn.size() : trace.units.back().network_errors;
  }
  const std::size_t h = result ? result->model.hidden_units() : 0;
  auto percent = [](std::size_t e, std::size_t n) { return format_percent(100.0 * double(e) / double(n)); };

  switch (job.format) {
    case OutputFormat::json: {
      Json units = Json::array();
      for (const auto& u : trace.units) {
        units.push_back(Json{{"unit", u.unit},
                             {"targets", source_name(u.source)},
                             {"internal_errors", u.internal_errors},
                             {"network_errors", u.network_errors}});
      }
      Json j{{"command", "grow"}, {"part", job.part}, {"set_size", data.learn.size()}};
      j["converged"] = result.has_value();
      j["hidden_units"] = result ? Json(h) : Json(nullptr);
      j["training_errors"] = train_errors;
      j["stall"] = stall.empty() ? Json(nullptr) : Json(stall);
      j["units"] = std::move(units);
      if (general_errors) {
        j["generalization"] = Json{{"set_size", data.complement.size()},
                                   {"errors", *general_errors},
                                   {"error_percent", percent(*general_errors, data.complement.size())}};
      } else {
        j["generalization"] = nullptr;
      }
      report << j.dump(2) << '\n';
      break;
    }
    case OutputFormat::csv:
      report << "part,set_size,converged,hidden_units,training_errors,generalization_errors\n"
             << job.part << ',' << data.learn.size() << ',' << (result ? 1 : 0) << ',' << h << ',' << train_errors
             << ',' << (general_errors ? std::to_string(*general_errors) : std::string()) << '\n';
      break;
    case OutputFormat::text:
      if (result) {
        report << "part " << job.part << ": H=" << h << ", " << train_errors << "/" << data.learn.size()
               << " training errors\n";
      } else {
        report << "part " << job.part << ": growth stalled: " << stall << '\n';
      }
      for (const auto& u : trace.units) {
        report << "  unit " << u.unit << " (" << source_name(u.source) << "): " << u.internal_errors
               << " internal errors, network errors " << u.network_errors << '\n';
      }
      if (general_errors) {
        report << "Generalization on " << data.complement_name << ": " << *general_errors << "/"
               << data.complement.size() << " errors, eps = " << percent(*general_errors, data.complement.size())
               << '\n';
      }
      break;
  }
  write_file(dir / report_name, report.str());
  write_file(dir / "manifest.json", manifest_json(job, artifacts).dump(2) + "\n");
  if (!result) return {report.str(), kExitMismatch};
  return {report.str(), kExitOk};
}

JobOutput run_job(const Job& job, const fs::path& out_dir) {
  if (job.trainer != "minimerror" && job.trainer != "rosenblatt") {
    throw UsageError("unknown trainer '" + job.trainer + "'");
  }
  if (job.command == "train") return run_train(job, out_dir);
  if (job.command == "grow") return run_grow(job, out_dir);
  throw UsageError("manifest command '" + job.command + "' cannot be replayed");
}

TrainingConfig resolve_config(const RunOptions& o) {
  TrainingConfig config;
  if (!o.config_file.empty()) {
    try {
      config = load_config_file(o.config_file);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  if (o.seed) config.seed = *o.seed;
  try {
    config.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  return config;
}

int run_jobs(const std::vector<Job>& jobs, const RunOptions& o) {
  std::vector<JobOutput> outputs;
  if (o.jobs > 1 && jobs.size() > 1) {
    std::vector<std::future<JobOutput>> futures;
    for (const auto& job : jobs) {
      futures.push_back(std::async(std::launch::async, [&job, &o] { return run_job(job, o.out); }));
    }
    for (auto& f : futures) outputs.push_back(f.get());
  } else {
    for (const auto& job : jobs) outputs.push_back(run_job(job, o.out));
  }
  int code = kExitOk;
  for (const auto& out : outputs) {
    std::cout << out.stdout_text;
    code = std::max(code, out.code);
  }
  return code;
}

int cmd_train_or_grow(const std::string& command, const RunOptions& o) {
  std::vector<Job> jobs;
  if (!o.manifest.empty()) {
    jobs.push_back(job_from_manifest(o.manifest));
  } else {
    const auto config = resolve_config(o);
    std::vector<std::string> parts = o.parts.empty() ? std::vector<std::string>{"train"} : o.parts;
    for (const auto& part : parts) {
      Job job;
      job.command = command;
      job.data = o.data;
      job.data.dataset = resolve_dataset(o.data.dataset);
      job.part = part;
      job.trainer = o.trainer;
      job.max_hidden = o.max_hidden;
      job.config = config;
      job.format = parse_output_format(o.format.empty() ? "json" : o.format);
      jobs.push_back(std::move(job));
    }
  }
  return run_jobs(jobs, o);
}

int cmd_verify(const RunOptions& o) {
  DataOptions d = o.data;
  d.dataset = resolve_dataset(d.dataset);
  const auto raw = load_dataset(d);
  const auto spec = load_split(d, raw.size());
  const auto result = verify_published(raw, spec, LabelConvention{d.flip_labels}, o.jobs);
  const auto format = parse_output_format(o.format.empty() ? "text" : o.format);
  std::ostringstream report;
  switch (format) {
    case OutputFormat::json: report << to_json(result).dump(2) << '\n'; break;
    case OutputFormat::csv: write_verification_csv(report, result); break;
    case OutputFormat::text:
      write_verification_text(report, result, o.raw_product ? CosineMode::raw_product : CosineMode::true_cosine);
      break;
  }
  std::cout << report.str();
  if (!o.out.empty()) {
    const std::string name = "verification." + std::string(extension(format));
    write_file(fs::path(o.out) / name, report.str());
  }
  return result.canonical ? kExitOk : kExitMismatch;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json components_json(const WeightVector& w) {
  Json a = Json::array();
  for (const double x : w.components()) a.push_back(x);
  return a;
}

void render_weights(std::ostream& out, const WeightVector& w, OutputFormat format) {
  switch (format) {
    case OutputFormat::json:
      out << Json{{"components", components_json(w)}, {"squared_norm", dot(w.components(), w.components())}}.dump(2)
          << '\n';
      break;
    case OutputFormat::csv:
      out << "index,weight\n";
      for (std::size_t i = 0; i < w.size(); ++i) out << i << ',' << format_real(w[i]) << '\n';
      break;
    case OutputFormat::text: write_weights_table(out, w); break;
  }
}

void render_trace(std::ostream& out, const TrainingTrace& trace, OutputFormat format) {
  if (format == OutputFormat::json) {
    Json a = Json::array();
    for (const auto& r : trace.epochs) {
      a.push_back(Json{{"temperature", r.temperature}, {"cost", r.cost}, {"errors", r.errors}});
    }
    out << a.dump(2) << '\n';
    return;
  }
  out << "epoch,temperature,cost,errors\n";
  for (std::size_t k = 0; k < trace.epochs.size(); ++k) {
    const auto& r = trace.epochs[k];
    out << k << ',' << format_real(r.temperature) << ',' << format_real(r.cost) << ',' << r.errors << '\n';
  }
}

void render_network(std::ostream& out, const NetworkModel& model, OutputFormat format) {
  if (format == OutputFormat::json) {
    Json hidden = Json::array();
    for (const auto& w : model.hidden) hidden.push_back(components_json(w));
    out << Json{{"hidden_units", model.hidden_units()},
                {"inputs", model.hidden.front().size()},
                {"hidden", std::move(hidden)},
                {"output", components_json(model.output)}}
               .dump(2)
        << '\n';
    return;
  }
  if (format == OutputFormat::csv) {
    out << "unit,index,weight\n";
    for (std::size_t h = 0; h < model.hidden.size(); ++h) {
      for (std::size_t i = 0; i < model.hidden[h].size(); ++i) {
        out << h + 1 << ',' << i << ',' << format_real(model.hidden[h][i]) << '\n';
      }
    }
    for (std::size_t i = 0; i < model.output.size(); ++i) out << "output," << i << ',' << format_real(model.output[i]) << '\n';
    return;
  }
  out << "H=" << model.hidden_units() << '\n';
  for (std::size_t h = 0; h < model.hidden.size(); ++h) {
    out << "hidden unit " << h + 1 << '\n';
    write_weights_table(out, model.hidden[h]);
  }
  out << "output unit\n";
  write_weights_table(out, model.output);
}

int cmd_report(const RunOptions& o) {
  if (o.inputs.empty()) throw UsageError("report: no input files");
  const auto format = parse_output_format(o.format.empty() ? "json" : o.format);
  std::ostringstream out;

  std::vector<std::pair<std::string, WeightVector>> weights;
  for (const auto& path : o.inputs) {
    const std::string text = read_text(path);
    const std::string_view trimmed = detail::trim(text);
    try {
      if (trimmed.rfind("{", 0) == 0 && trimmed.find('"') != std::string_view::npos) {
        const Json j = Json::parse(text);
        if (j.contains("records") && j.contains("set_size")) {
          write_report(out, report_from_json(j), format);
        } else {
          out << j.dump(2) << '\n';
        }
      } else if (trimmed.rfind("H=", 0) == 0) {
        std::istringstream in(text);
        render_network(out, parse_network(in), format);
      } else if (trimmed.rfind("epoch,", 0) == 0) {
        std::istringstream in(text);
        render_trace(out, parse_trace_csv(in), format);
      } else {
        weights.emplace_back(path, parse_weights(std::string_view(text)));
      }
    } catch (const Json::exception& e) {
      throw UsageError(path + ": " + e.what());
    } catch (const Error& e) {
      throw UsageError(path + ": " + e.what());
    }
  }

  if (weights.size() == 1) {
    render_weights(out, weights[0].second, format);
  } else if (weights.size() > 1) {
    const auto mode = o.raw_product ? CosineMode::raw_product : CosineMode::true_cosine;
    Json pairs = Json::array();
    if (format == OutputFormat::csv) out << "a,b,mode,cosine\n";
    for (std::size_t a = 0; a < weights.size(); ++a) {
      for (std::size_t b = a + 1; b < weights.size(); ++b) {
        double c = 0.0;
        try {
          c = cosine(weights[a].second, weights[b].second, mode);
        } catch (const Error& e) {
          throw UsageError(weights[b].first + ": " + e.what());
        }
        switch (format) {
          case OutputFormat::json:
            pairs.push_back(Json{{"a", weights[a].first}, {"b", weights[b].first}, {"mode", to_string(mode)}, {"cosine", c}});
            break;
          case OutputFormat::csv:
            out << weights[a].first << ',' << weights[b].first << ',' << to_string(mode) << ',' << format_real(c) << '\n';
            break;
          case OutputFormat::text:
            out << "cos(" << weights[a].first << ", " << weights[b].first << ") = " << format_fixed(c, 5) << " ["
                << to_string(mode) << "]\n";
            break;
        }
      }
    }
    if (format == OutputFormat::json) out << pairs.dump(2) << '\n';
  }
  std::cout << out.str();
  return kExitOk;
}

void add_data_options(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--dataset", o.data.dataset, "Benchmark file (default: $MONOPLANE_DATA)");
  cmd->add_option("--split-file", o.data.split_file, "Train/test split file ([train]/[test] sections)");
  cmd->add_flag("--flip-labels", o.data.flip_labels, "Map mine to +1 and rock to -1");
  cmd->add_option("--features", o.data.features, "Features per line")->check(CLI::PositiveNumber);
  cmd->add_flag("--allow-out-of-range", o.data.allow_out_of_range, "Accept feature values outside [0, 1]");
}

void add_training_options(CLI::App* cmd, RunOptions& o) {
  add_data_options(cmd, o);
  cmd->add_option("--part", o.parts, "train, test or all (repeatable)")
      ->check(CLI::IsMember({"train", "test", "all"}));
  cmd->add_option("--scale", o.data.scale, "std or variance")->check(CLI::IsMember({"std", "variance"}));
  cmd->add_option("--stats-from", o.data.stats_from, "Standardize with stats of the part or of all patterns")
      ->check(CLI::IsMember({"part", "all"}));
  cmd->add_option("--config", o.config_file, "key=value training config");
  cmd->add_option("--seed", o.seed, "Seed for the zero-vector fallback and shuffling");
  cmd->add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--jobs", o.jobs, "Parts run concurrently")->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--manifest", o.manifest, "Replay a run from its manifest.json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimerror perceptrons and Monoplane networks for the sonar benchmark"};
  app.require_subcommand(1);
  RunOptions o;

  auto* train = app.add_subcommand("train", "Train one perceptron and evaluate it on the complement");
  add_training_options(train, o);
  train->add_option("--trainer", o.trainer, "minimerror or rosenblatt")
      ->check(CLI::IsMember({"minimerror", "rosenblatt"}));

  auto* grow = app.add_subcommand("grow", "Grow a Monoplane network");
  add_training_options(grow, o);
  grow->add_option("--max-hidden", o.max_hidden, "Hidden-unit limit (default P-1)");

  auto* verify = app.add_subcommand("verify", "Check the published weights against the benchmark");
  add_data_options(verify, o);
  verify->add_option("--format", o.format, "text, csv or json")->check(CLI::IsMember({"json", "csv", "text"}));
  verify->add_option("--jobs", o.jobs, "Modes run concurrently")->check(CLI::PositiveNumber);
  verify->add_flag("--raw-product,--raw-eq8", o.raw_product, "List the raw-product cosine first");
  verify->add_option("--out", o.out, "Also write the report into this directory");

  auto* report = app.add_subcommand("report", "Render weight, network, trace or report files");
  report->add_option("inputs", o.inputs, "Artifact files")->required();
  report->add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  report->add_flag("--raw-product,--raw-eq8", o.raw_product, "Cosine as a.b/(N+1)^2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train) return cmd_train_or_grow("train", o);
    if (*grow) return cmd_train_or_grow("grow", o);
    if (*verify) {
      if (verify->count("--out") == 0) o.out.clear();
      return cmd_verify(o);
    }
    return cmd_report(o);
  } catch (const std::exception& e) {
    std::cerr << "monoplane: " << e.what() << '\n';
    return kExitUsage;
  }
}
