#include <iostream>

#include "CLI11.hpp"
#include "tighthilb/tighthilb.hpp"

namespace {

int run_command(const std::string& path, const tighthilb::RunOptions& opts) {
  auto script = tighthilb::dsl::parse(tighthilb::read_file(path));
  auto result = tighthilb::run(script, opts);
  std::cout << result.text;
  if (!opts.out) std::cout << result.report.dump(2) << "\n";
  return result.exit_code;
}

int check_command(const std::string& path) {
  auto script = tighthilb::dsl::parse(tighthilb::read_file(path));
  tighthilb::dsl::resolve(script);
  std::cout << "ok: " << script.statements.size() << " statements\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tight Hilbert functions and F-rationality diagnostics"};
  app.require_subcommand(1);

  std::string run_path;
  tighthilb::RunOptions opts;
  int depth = 0, e_max = 0, window = 0;
  std::string out, csv;
  bool no_timestamp = false;
  auto* run = app.add_subcommand("run", "Execute a script");
  run->add_option("script", run_path, "Script file")->required();
  auto* depth_opt = run->add_option("--depth", depth, "Table depth N");
  auto* emax_opt = run->add_option("--emax", e_max, "Largest Frobenius exponent e");
  auto* window_opt = run->add_option("--window", window, "Stability window");
  auto* out_opt = run->add_option("--out", out, "Write the JSON report here");
  auto* csv_opt = run->add_option("--csv", csv, "CSV path prefix");
  run->add_flag("--no-timestamp", no_timestamp, "Omit the generation time from the report");

  std::string check_path;
  auto* check = app.add_subcommand("check", "Parse and resolve a script");
  check->add_option("script", check_path, "Script file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*check) return check_command(check_path);
    if (*depth_opt) opts.depth = depth;
    if (*emax_opt) opts.e_max = e_max;
    if (*window_opt) opts.window = window;
    if (*out_opt) opts.out = out;
    if (*csv_opt) opts.csv = csv;
    opts.timestamp = !no_timestamp;
    opts.script_name = run_path;
    return run_command(run_path, opts);
  } catch (const tighthilb::Error& e) {
    std::cerr << tighthilb::error_line(e) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", "INTERNAL"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
}
