#pragma once

#include <chrono>
#include <ctime>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "tighthilb/dsl.hpp"
#include "tighthilb/report.hpp"

namespace tighthilb {

/// Command-line settings; each set field overrides the script's options.
struct RunOptions {
  std::optional<int> depth;
  std::optional<int> e_max;
  std::optional<int> window;
  std::optional<std::string> out;
  std::optional<std::string> csv;
  bool timestamp = true;
  std::string script_name;
};

struct RunResult {
  int exit_code = 0;
  Json report;
  std::string text;
  std::vector<AnalysisReport> analyses;
};

inline constexpr int kDefaultEmax = 4;
inline constexpr int kDefaultWindow = 2;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path);
}

inline std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline Json report_document(const std::vector<AnalysisReport>& analyses, const RunOptions& opts,
                            const dsl::Environment& env, int code) {
  Json doc = {{"schema", kReportSchema}};
  if (opts.timestamp) doc["generated_at"] = utc_timestamp();
  doc["script"] = opts.script_name;
  Json rings = Json::array();
  for (const auto& [name, ring] : env.rings) rings.push_back(ring_to_json(name, *ring));
  doc["rings"] = rings;
  Json list = Json::array();
  for (const auto& a : analyses) list.push_back(analysis_to_json(a));
  doc["analyses"] = list;
  doc["exit_code"] = code;
  return doc;
}

inline int combine_exit_codes(const std::vector<AnalysisReport>& analyses) {
  int code = 0;
  for (const auto& a : analyses) {
    const int c = exit_code(a);
    if (c == 2) return 2;
    if (c == 3) code = 3;
  }
  return code;
}

/// Builds the analysis configuration for one `analyze` command.
inline AnalysisConfig job_config(const dsl::AnalyzeCmd& cmd, const dsl::Environment& env, const dsl::Script& script,
                                 const RunOptions& opts) {
  const auto& [q, ring_name] = env.ideals.at(cmd.ideal);
  const auto& ring = q.ring();
  AnalysisConfig cfg;
  const int d = static_cast<int>(ring->dimension());
  cfg.depth = opts.depth ? *opts.depth : (cmd.depth ? static_cast<int>(*cmd.depth) : d + 6);
  cfg.e_max = opts.e_max ? *opts.e_max : (cmd.e_max ? static_cast<int>(*cmd.e_max) : kDefaultEmax);
  cfg.window = opts.window ? *opts.window : (cmd.window ? static_cast<int>(*cmd.window) : kDefaultWindow);
  if (cfg.depth < d + 2) {
    throw dsl::SourceError(ErrorCode::DomainError, "depth must be at least d + 2 = " + std::to_string(d + 2), cmd.span);
  }
  if (cfg.e_max < 2) throw dsl::SourceError(ErrorCode::DomainError, "e_max must be at least 2", cmd.span);
  if (cfg.window < 1) throw dsl::SourceError(ErrorCode::DomainError, "window must be positive", cmd.span);
  if (cmd.test_element) {
    cfg.test_element = dsl::detail::located(cmd.test_element_span, [&] {
      return make_test_element(*ring, dsl::evaluate(*cmd.test_element, ring->ambient()));
    });
  } else if (cmd.jacobian) {
    cfg.test_element = dsl::detail::located(cmd.test_element_span, [&] { return jacobian_test_element(*ring); });
  } else {
    cfg.test_element = dsl::detail::located(cmd.span, [&] { return detail::default_test_element(*ring); });
  }
  for (const auto& s : script.statements) {
    const auto* a = std::get_if<dsl::Assertion>(&s);
    if (!a) continue;
    using K = dsl::Assertion::Kind;
    if (a->kind == K::StandardSop && a->subject == cmd.ideal) cfg.assumptions.standard_sop = true;
    if (a->kind == K::TestElementGenerators && a->subject == cmd.ideal) cfg.assumptions.test_element_generators = true;
    if (a->kind == K::AssPrimes && a->subject == ring_name) {
      cfg.assumptions.ass_primes.clear();
      cfg.assumptions.ass_prime_names = a->primes;
      for (const auto& p : a->primes) cfg.assumptions.ass_primes.push_back(env.ideals.at(p).first);
    }
  }
  if (cmd.extension) {
    cfg.extension = env.maps.at(*cmd.extension);
    cfg.extension_name = *cmd.extension;
  }
  return cfg;
}

/// Runs every `analyze` command in order and writes the requested files.
inline RunResult run(const dsl::Script& script, const RunOptions& opts) {
  RunResult result;
  dsl::Environment env = dsl::resolve(script);
  std::vector<std::pair<const dsl::AnalyzeCmd*, std::size_t>> commands;
  for (const auto& s : script.statements) {
    if (const auto* cmd = std::get_if<dsl::AnalyzeCmd>(&s)) {
      AnalysisConfig cfg = job_config(*cmd, env, script, opts);
      const auto& [q, ring_name] = env.ideals.at(cmd->ideal);
      AnalysisReport rep = dsl::detail::located(cmd->span, [&] { return analyze(q, cfg); });
      rep.ideal_name = cmd->ideal;
      rep.ring_name = ring_name;
      result.text += analysis_to_text(rep);
      commands.emplace_back(cmd, result.analyses.size());
      result.analyses.push_back(std::move(rep));
    }
  }
  result.exit_code = combine_exit_codes(result.analyses);
  result.report = report_document(result.analyses, opts, env, result.exit_code);
  for (const auto& [cmd, index] : commands) {
    const auto& rep = result.analyses[index];
    if (cmd->out && !opts.out) {
      write_file(*cmd->out, report_document({rep}, opts, env, exit_code(rep)).dump(2) + "\n");
    }
    const std::optional<std::string> csv = opts.csv ? opts.csv : cmd->csv;
    if (csv) {
      write_file(*csv + "_" + rep.ideal_name + "_ordinary.csv", table_to_csv(rep.ordinary));
      write_file(*csv + "_" + rep.ideal_name + "_tight.csv", table_to_csv(rep.tight));
    }
  }
  if (opts.out) write_file(*opts.out, result.report.dump(2) + "\n");
  return result;
}

/// JSON line describing an error, for stderr.
inline std::string error_line(const Error& e) {
  Json j = {{"error", to_string(e.code())}};
  if (const auto* se = dynamic_cast<const dsl::SourceError*>(&e)) {
    j["message"] = se->detail();
    j["line"] = se->span().line;
    j["column"] = se->span().column;
  } else {
    j["message"] = e.what();
  }
  return j.dump();
}

}  // namespace tighthilb
