#include "hiersum/cli.hpp"

#include <yaml-cpp/yaml.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <nlohmann/json.hpp>
#include <sstream>

#include "hiersum/coverage.hpp"
#include "hiersum/error.hpp"
#include "hiersum/judge.hpp"
#include "hiersum/metrics.hpp"
#include "hiersum/output_tree.hpp"
#include "hiersum/summary_cache.hpp"
#include "hiersum/text_util.hpp"

namespace hiersum::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", fraction * 100.0);
  return buf;
}

PromptStyle style_or_throw(const std::string& name) {
  auto style = parse_prompt_style(name);
  if (!style) throw ConfigError("unknown prompt style '" + name + "' (generic, structured, structured-1s)");
  return *style;
}

SummaryLevel level_or_throw(const std::string& name) {
  auto level = parse_summary_level(name);
  if (!level) throw ConfigError("unknown level '" + name + "' (segment, file, package, repo)");
  return *level;
}

template <typename T>
void yaml_read(const YAML::Node& parent, const char* key, T& target, const std::string& where) {
  const YAML::Node node = parent[key];
  if (!node || node.IsNull()) return;
  try {
    target = node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("config key " + where + "." + key + " has the wrong type");
  }
}

DiscoveryOptions discovery_for(const std::vector<std::string>& excluded) {
  DiscoveryOptions d;
  d.excluded_dirs = excluded;
  return d;
}

std::unique_ptr<Backend> make_backend(const RunConfig& config) {
  if (config.mock_mode) return std::make_unique<MockBackend>();
  return std::make_unique<HttpBackend>(config.backend);
}

PromptEngine make_engine(const std::optional<fs::path>& prompts_dir) {
  return PromptEngine(prompts_dir ? TemplateSet::from_directory(*prompts_dir) : TemplateSet::embedded());
}

std::optional<std::string> env_api_key() {
  const char* v = std::getenv("HIERSUM_API_KEY");
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

// ---------------------------------------------------------------- segment

struct SegmentFlags {
  std::string repo;
  std::string output = "segments.json";
  bool include_text = false;
  std::vector<std::string> exclude{"target", "build", ".git"};
};

json segment_dump(const RepoModel& model, bool include_text) {
  json files = json::array();
  for (const auto& entry : model.files) {
    json segs = json::array();
    for (const auto& s : entry.parsed.segments) {
      json item = {{"kind", to_string(s.kind)},       {"name", s.name},
                   {"start_line", s.span.start_line}, {"end_line", s.span.end_line},
                   {"static", s.is_static},           {"enclosing_type", s.enclosing_type}};
      if (include_text) item["text"] = s.text;
      segs.push_back(std::move(item));
    }
    files.push_back({{"path", entry.file.repo_relative_path},
                     {"package", entry.file.package_name},
                     {"hash", entry.file.content_hash},
                     {"segments", std::move(segs)}});
  }
  json diags = json::array();
  for (const auto& d : model.diagnostics) diags.push_back({{"path", d.path}, {"line", d.line}, {"message", d.message}});
  return {{"root", model.root}, {"files", std::move(files)}, {"diagnostics", std::move(diags)}};
}

int cmd_segment(const SegmentFlags& flags, std::ostream& out, std::ostream& err) {
  const RepoModel model = build_repo_model(flags.repo, discovery_for(flags.exclude));
  write_file_atomic(flags.output, segment_dump(model, flags.include_text).dump(2) + "\n");
  out << "files=" << model.files.size() << " packages=" << model.packages.size()
      << " functions=" << model.segment_count(SegmentKind::Function)
      << " variables=" << model.segment_count(SegmentKind::Variable)
      << " constructors=" << model.segment_count(SegmentKind::Constructor)
      << " enums=" << model.segment_count(SegmentKind::Enum)
      << " interfaces=" << model.segment_count(SegmentKind::Interface) << "\n";
  for (const auto& d : model.diagnostics) err << "warning: " << d.path << ":" << d.line << ": " << d.message << "\n";
  return model.diagnostics.empty() ? kExitOk : kExitPartial;
}

// --------------------------------------------------------------- evaluate

struct EvaluateFlags {
  std::string pairs;
  std::string metrics = "rouge,bleu";
  int samples = 1;
  std::optional<std::string> output;
  std::optional<std::string> config;
  std::optional<std::string> backend_url;
  std::optional<std::string> model;
  std::optional<std::string> embedding_model;
  std::optional<std::string> prompts_dir;
  bool mock = false;
};

struct Pair {
  std::string id;
  std::string candidate;
  std::string reference;
  std::optional<std::string> source;
};

std::vector<Pair> read_pairs(const fs::path& path) {
  std::string raw;
  try {
    raw = read_file_bytes(path);
  } catch (const std::exception& e) {
    throw ConfigError("cannot read pairs file " + path.string());
  }
  json doc = json::parse(raw, nullptr, false);
  if (doc.is_discarded() || !doc.is_array()) throw ConfigError("pairs file must be a JSON array: " + path.string());
  std::vector<Pair> pairs;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("id") || !item.contains("candidate") || !item.contains("reference") ||
        !item["candidate"].is_string() || !item["reference"].is_string() ||
        !(item["id"].is_string() || item["id"].is_number_integer())) {
      throw ConfigError("each pair needs string \"id\", \"candidate\" and \"reference\" fields");
    }
    Pair p;
    p.id = item["id"].is_string() ? item["id"].get<std::string>() : std::to_string(item["id"].get<long long>());
    p.candidate = item["candidate"].get<std::string>();
    p.reference = item["reference"].get<std::string>();
    if (item.contains("source") && item["source"].is_string()) p.source = item["source"].get<std::string>();
    pairs.push_back(std::move(p));
  }
  return pairs;
}

int cmd_evaluate(const EvaluateFlags& flags, std::ostream& out, std::ostream& err, Backend* injected) {
  bool want_rouge = false, want_bleu = false, want_semsim = false, want_judge = false;
  std::stringstream ss(flags.metrics);
  for (std::string m; std::getline(ss, m, ',');) {
    m = trim(m);
    if (m == "rouge") want_rouge = true;
    else if (m == "bleu") want_bleu = true;
    else if (m == "semsim") want_semsim = true;
    else if (m == "judge") want_judge = true;
    else if (!m.empty()) throw ConfigError("unknown metric '" + m + "' (rouge, bleu, semsim, judge)");
  }
  if (flags.samples < 1) throw ConfigError("--samples must be at least 1");

  RunConfig config;
  if (flags.config) config = load_config_file(*flags.config, config);
  if (flags.backend_url) config.backend.base_url = *flags.backend_url;
  if (flags.model) config.backend.model_id = *flags.model;
  if (flags.embedding_model) config.backend.embedding_model_id = *flags.embedding_model;
  config.mock_mode = flags.mock;
  config.backend.api_key = env_api_key();

  std::unique_ptr<Backend> owned;
  Backend* backend = injected;
  if ((want_semsim || want_judge) && !backend) {
    if (!config.mock_mode && config.backend.model_id.empty())
      throw ConfigError("semsim and judge need --model (or backend.model in the config) or --mock");
    owned = make_backend(config);
    backend = owned.get();
  }
  if (want_judge && backend->is_mock()) throw ConfigError("the mock backend is not a judge; --metrics judge needs a model");

  const std::vector<Pair> pairs = read_pairs(flags.pairs);
  const PromptEngine engine = make_engine(flags.prompts_dir ? std::optional<fs::path>(*flags.prompts_dir) : std::nullopt);

  json result = json::object();
  bool missing = false;
  for (const auto& p : pairs) {
    json scores = json::object();
    if (want_rouge) {
      const RougeL r = rouge_l(p.candidate, p.reference);
      scores["rouge_l_precision"] = r.precision;
      scores["rouge_l_recall"] = r.recall;
      scores["rouge_l_f1"] = r.f1;
    }
    if (want_bleu) scores["bleu"] = bleu(p.candidate, p.reference);
    if (want_semsim) scores["semantic_similarity"] = semantic_similarity(p.candidate, p.reference, *backend);
    if (want_judge) {
      const JudgeScores js = judge(p.candidate, p.source.value_or(p.reference), *backend, engine, flags.samples);
      json j = json::object();
      for (const auto& [criterion, value] : js.scores) {
        if (value) {
          j[std::string(to_string(criterion))] = *value;
        } else {
          j[std::string(to_string(criterion))] = nullptr;
          missing = true;
        }
      }
      j["samples_used"] = js.samples_used;
      scores["judge"] = std::move(j);
      if (js.warnings) err << "warning: " << p.id << ": " << js.warnings << " unparseable judge replies\n";
    }
    result[p.id] = std::move(scores);
  }

  const std::string text = result.dump(2) + "\n";
  if (flags.output) {
    write_file_atomic(*flags.output, text);
  } else {
    out << text;
  }
  return missing ? kExitPartial : kExitOk;
}

// --------------------------------------------------------------- coverage

struct CoverageFlags {
  std::string out_dir;
  std::string repo;
  std::optional<std::string> output;
  bool no_split_phrases = false;
  std::vector<std::string> exclude{"target", "build", ".git"};
};

int cmd_coverage(const CoverageFlags& flags, std::ostream& out, std::ostream& err) {
  const fs::path out_dir = flags.out_dir;
  if (!fs::is_regular_file(out_dir / "report.json"))
    throw ConfigError("no pipeline output tree at " + out_dir.string() + " (report.json missing)");
  const RepoModel model = build_repo_model(flags.repo, discovery_for(flags.exclude));
  CoverageOptions options;
  options.split_phrases = !flags.no_split_phrases;
  const CoverageReport report = coverage_report(
      model, [&](const std::string& path) { return read_file_summary_text(out_dir, path); }, options);

  json files = json::array();
  for (const auto& f : report.files) {
    json entries = json::array();
    for (const auto& e : f.entries) {
      entries.push_back({{"name", e.name},
                         {"kind", to_string(e.kind)},
                         {"start_line", e.span.start_line},
                         {"end_line", e.span.end_line},
                         {"covered", e.covered}});
    }
    if (f.summary_missing) err << "warning: no file summary for " << f.path << "\n";
    files.push_back({{"path", f.path}, {"summary_missing", f.summary_missing}, {"segments", std::move(entries)}});
  }
  json doc = {{"schema_version", kSchemaVersion},
              {"function_coverage", report.function_coverage()},
              {"variable_coverage", report.variable_coverage()},
              {"functions_total", report.functions_total},
              {"functions_covered", report.functions_covered},
              {"variables_total", report.variables_total},
              {"variables_covered", report.variables_covered},
              {"files", std::move(files)}};
  write_file_atomic(flags.output ? fs::path(*flags.output) : out_dir / "coverage.json", doc.dump(2) + "\n");

  out << "functions: " << percent(report.function_coverage()) << "% variables: " << percent(report.variable_coverage())
      << "%\n";
  const bool full = report.functions_covered == report.functions_total &&
                    report.variables_covered == report.variables_total;
  return full ? kExitOk : kExitPartial;
}

}  // namespace

// ----------------------------------------------------------------- config

void RunConfig::validate() const {
  if (grounding_domain.has_value() != grounding_problem.has_value())
    throw ConfigError("grounding needs both --grounding-domain and --grounding-problem, or neither");
  if (builtin_grounding && grounding_domain)
    throw ConfigError("--builtin-grounding cannot be combined with grounding files");
  if (concurrency < 1) throw ConfigError("concurrency must be a positive integer");
  if (max_prompt_chars == 0) throw ConfigError("max_prompt_chars must be a positive integer");
  if (backend.timeout_s <= 0) throw ConfigError("timeout_s must be positive");
  if (!mock_mode && backend.model_id.empty()) throw ConfigError("a model id is required (--model) unless --mock is set");
}

RunConfig load_config_file(const fs::path& path, RunConfig base) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path.string());
  } catch (const YAML::BadFile&) {
    throw ConfigError("cannot read config file " + path.string());
  } catch (const YAML::Exception& e) {
    throw ConfigError("invalid YAML in " + path.string() + ": " + e.what());
  }
  if (root.IsNull()) return base;
  if (!root.IsMap()) throw ConfigError("config file must be a YAML mapping: " + path.string());

  // Relative paths in a config file are relative to the file itself.
  const fs::path dir = path.parent_path();
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : dir / p; };

  if (const YAML::Node b = root["backend"]) {
    yaml_read(b, "url", base.backend.base_url, "backend");
    yaml_read(b, "model", base.backend.model_id, "backend");
    yaml_read(b, "embedding_model", base.backend.embedding_model_id, "backend");
    yaml_read(b, "timeout_s", base.backend.timeout_s, "backend");
  }
  if (const YAML::Node p = root["prompts"]) {
    std::string style;
    yaml_read(p, "style", style, "prompts");
    if (!style.empty()) base.prompt_style = style_or_throw(style);
  }
  if (const YAML::Node g = root["grounding"]) {
    std::string domain, problem;
    yaml_read(g, "domain_file", domain, "grounding");
    yaml_read(g, "problem_file", problem, "grounding");
    if (!domain.empty()) base.grounding_domain = resolve(domain);
    if (!problem.empty()) base.grounding_problem = resolve(problem);
  }
  if (const YAML::Node p = root["pipeline"]) {
    yaml_read(p, "concurrency", base.concurrency, "pipeline");
    long long chars = static_cast<long long>(base.max_prompt_chars);
    yaml_read(p, "max_prompt_chars", chars, "pipeline");
    if (chars <= 0) throw ConfigError("pipeline.max_prompt_chars must be positive");
    base.max_prompt_chars = static_cast<std::size_t>(chars);
    std::string cache_dir, out_dir;
    yaml_read(p, "cache_dir", cache_dir, "pipeline");
    yaml_read(p, "out_dir", out_dir, "pipeline");
    if (!cache_dir.empty()) base.cache_dir = resolve(cache_dir);
    if (!out_dir.empty()) base.out_dir = resolve(out_dir);
  }
  return base;
}

RunConfig resolve_run_config(const SummarizeFlags& flags, const std::optional<std::string>& api_key) {
  RunConfig config;
  if (flags.config) config = load_config_file(*flags.config, config);
  config.repo = flags.repo;
  if (flags.backend_url) config.backend.base_url = *flags.backend_url;
  if (flags.model) config.backend.model_id = *flags.model;
  if (flags.embedding_model) config.backend.embedding_model_id = *flags.embedding_model;
  if (flags.timeout_s) config.backend.timeout_s = *flags.timeout_s;
  if (flags.prompt_style) config.prompt_style = style_or_throw(*flags.prompt_style);
  if (flags.grounding_domain) config.grounding_domain = *flags.grounding_domain;
  if (flags.grounding_problem) config.grounding_problem = *flags.grounding_problem;
  if (flags.builtin_grounding) config.builtin_grounding = true;
  if (flags.concurrency) config.concurrency = *flags.concurrency;
  if (flags.max_prompt_chars) config.max_prompt_chars = *flags.max_prompt_chars;
  if (flags.cache_dir) config.cache_dir = *flags.cache_dir;
  if (flags.no_cache) config.use_cache = false;
  if (flags.out) config.out_dir = *flags.out;
  if (flags.mock) config.mock_mode = true;
  if (flags.level) config.level = level_or_throw(*flags.level);
  if (flags.format) {
    if (*flags.format == "markdown") config.markdown = true;
    else if (*flags.format == "json") config.markdown = false;
    else throw ConfigError("unknown format '" + *flags.format + "' (json, markdown)");
  }
  if (flags.include_text) config.include_text = true;
  if (flags.prompts_dir) config.prompts_dir = *flags.prompts_dir;
  if (!flags.exclude.empty()) config.excluded_dirs = flags.exclude;
  config.backend.api_key = api_key;
  config.validate();
  return config;
}

// -------------------------------------------------------------- summarize

int cmd_summarize(const RunConfig& config, std::ostream& out, std::ostream& err, Backend* backend) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();

  // Everything that can fail on configuration happens before the backend exists.
  const PromptEngine engine = make_engine(config.prompts_dir);
  PipelineOptions options;
  options.style = config.prompt_style;
  options.concurrency = config.concurrency;
  options.max_prompt_chars = config.max_prompt_chars;
  options.level = config.level;
  if (config.grounding_domain) {
    options.grounding = load_grounding(*config.grounding_domain, *config.grounding_problem);
  } else if (config.builtin_grounding) {
    options.grounding = builtin_grounding(engine.templates());
  }
  if (!fs::is_directory(config.repo)) throw ConfigError("repository path is not a directory: " + config.repo.string());

  std::unique_ptr<Backend> owned;
  if (!backend) {
    owned = make_backend(config);
    backend = owned.get();
  }
  std::optional<SummaryCache> cache;
  if (config.use_cache) cache.emplace(config.cache_dir);

  const std::uint64_t calls_before = backend->completion_calls();
  RunResult result = run_full(config.repo, engine, *backend, cache ? &*cache : nullptr, options,
                              discovery_for(config.excluded_dirs));
  result.report.completion_requests = backend->completion_calls() - calls_before;
  result.report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();

  OutputOptions out_options;
  out_options.markdown = config.markdown;
  out_options.include_text = config.include_text;
  write_output_tree(config.out_dir, result, out_options);

  const RunReport& r = result.report;
  std::size_t segments = 0;
  for (const auto& [kind, n] : r.segments_by_kind) segments += n;
  out << "files: " << r.files << " packages: " << r.packages << " segments: " << segments << "\n";
  out << "summaries: segment=" << r.segment_summaries << " file=" << r.file_summaries
      << " package=" << r.package_summaries << " repo=" << r.repo_summaries << "\n";
  out << "completion_requests: " << r.completion_requests << " cache_hits: " << r.cache_hits << "\n";
  char wall[64];
  std::snprintf(wall, sizeof wall, "%.1f", r.wall_time_ms);
  out << "wall_time_ms: " << wall << "\n";
  out << "output: " << config.out_dir.string() << "\n";
  for (const auto& w : r.warnings) err << "warning: " << w << "\n";
  for (const auto& d : r.diagnostics) err << "warning: " << d.path << ":" << d.line << ": " << d.message << "\n";
  for (const auto& f : r.failures) {
    err << "error: " << f.level << " " << f.path << (f.name.empty() ? "" : "#" + f.name) << ": " << f.message << "\n";
  }
  out << "status: " << (r.partial() ? "partial" : "ok") << "\n";
  return r.partial() ? kExitPartial : kExitOk;
}

// ------------------------------------------------------------------ entry

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, Backend* backend) {
  CLI::App app{"Hierarchical summaries of Java repositories, plus an evaluation harness.", "hiersum"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hiersum 0.1.0");

  SegmentFlags seg;
  auto* segment = app.add_subcommand("segment", "Split every .java file into segments and write a JSON dump");
  segment->add_option("repo", seg.repo, "Repository root")->required();
  segment->add_option("-o,--output", seg.output, "Dump file path")->capture_default_str();
  segment->add_flag("--include-text", seg.include_text, "Include each segment's source text in the dump");
  segment->add_option("--exclude", seg.exclude, "Directory names to skip (repeatable)")->capture_default_str();

  SummarizeFlags sum;
  auto* summarize = app.add_subcommand("summarize", "Summarize a repository bottom-up into an output tree");
  summarize->add_option("repo", sum.repo, "Repository root")->required();
  summarize->add_option("--config", sum.config, "YAML run configuration; flags override its values");
  summarize->add_option("--backend-url", sum.backend_url, "OpenAI-compatible endpoint base URL");
  summarize->add_option("--model", sum.model, "Chat model id");
  summarize->add_option("--embedding-model", sum.embedding_model, "Embedding model id");
  summarize->add_option("--timeout", sum.timeout_s, "Per-request timeout in seconds");
  summarize->add_option("--prompt-style", sum.prompt_style, "generic | structured | structured-1s");
  summarize->add_option("--grounding-domain", sum.grounding_domain, "Domain description file");
  summarize->add_option("--grounding-problem", sum.grounding_problem, "Problem-context description file");
  summarize->add_flag("--builtin-grounding", sum.builtin_grounding, "Use the shipped telecom grounding texts");
  summarize->add_option("--concurrency", sum.concurrency, "Parallel backend requests");
  summarize->add_option("--max-prompt-chars", sum.max_prompt_chars, "Prompt size budget before folding");
  summarize->add_option("--cache-dir", sum.cache_dir, "Summary cache directory");
  summarize->add_flag("--no-cache", sum.no_cache, "Disable the summary cache");
  summarize->add_option("--out", sum.out, "Output tree directory");
  summarize->add_flag("--mock", sum.mock, "Use the deterministic echo backend");
  summarize->add_option("--level", sum.level, "Highest level to build: segment | file | package | repo");
  summarize->add_option("--format", sum.format, "json | markdown (markdown adds .md mirrors)");
  summarize->add_flag("--include-text", sum.include_text, "Store segment source text in the output tree");
  summarize->add_option("--prompts-dir", sum.prompts_dir, "Override shipped prompt templates with *.txt files");
  summarize->add_option("--exclude", sum.exclude, "Directory names to skip (repeatable)");

  EvaluateFlags ev;
  auto* evaluate = app.add_subcommand("evaluate", "Score candidate summaries against references");
  evaluate->add_option("pairs", ev.pairs, "JSON file: [{\"id\", \"candidate\", \"reference\", \"source\"?}]")
      ->required();
  evaluate->add_option("--metrics", ev.metrics, "Comma list of rouge,bleu,semsim,judge")->capture_default_str();
  evaluate->add_option("--samples", ev.samples, "Judge samples per criterion")->capture_default_str();
  evaluate->add_option("-o,--output", ev.output, "Write scores here instead of standard output");
  evaluate->add_option("--config", ev.config, "YAML run configuration (backend section)");
  evaluate->add_option("--backend-url", ev.backend_url, "OpenAI-compatible endpoint base URL");
  evaluate->add_option("--model", ev.model, "Chat model id (judge)");
  evaluate->add_option("--embedding-model", ev.embedding_model, "Embedding model id (semsim)");
  evaluate->add_option("--prompts-dir", ev.prompts_dir, "Override shipped prompt templates with *.txt files");
  evaluate->add_flag("--mock", ev.mock, "Use the deterministic mock backend (semsim only)");

  CoverageFlags cov;
  auto* coverage = app.add_subcommand("coverage", "Check which functions and variables the file summaries mention");
  coverage->add_option("out_dir", cov.out_dir, "Output tree written by summarize")->required();
  coverage->add_option("repo", cov.repo, "Repository root")->required();
  coverage->add_option("-o,--output", cov.output, "Report path (default <out_dir>/coverage.json)");
  coverage->add_flag("--no-split-phrases", cov.no_split_phrases, "Only accept whole-name mentions");
  coverage->add_option("--exclude", cov.exclude, "Directory names to skip (repeatable)")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    if (app.get_subcommands().empty()) {
      out << app.help("", CLI::AppFormatMode::All);
    } else {
      out << app.get_subcommands().back()->help();
    }
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "hiersum 0.1.0\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run 'hiersum --help' for usage\n";
    return kExitFatal;
  }

  try {
    if (segment->parsed()) return cmd_segment(seg, out, err);
    if (summarize->parsed()) return cmd_summarize(resolve_run_config(sum, env_api_key()), out, err, backend);
    if (evaluate->parsed()) return cmd_evaluate(ev, out, err, backend);
    if (coverage->parsed()) return cmd_coverage(cov, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFatal;
  }
  return kExitFatal;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace hiersum::cli
