#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include <besovlab/error.hpp>
#include <besovlab/parallel.hpp>

#include "cli.hpp"

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

besovlab::Json read_json_file(const std::string& path, const std::string& field) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    buf << in.rdbuf();
  }
  besovlab::Json j = besovlab::Json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) throw besovlab::ConfigError(field, "not valid JSON: " + path);
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"besovlab: Besov regularity of functions with sparse random wavelet coefficients"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::vector<std::string> sets;
  std::optional<long long> seed;
  std::optional<long long> reps;
  unsigned threads = 0;
  std::string out_path = "-";
  std::string csv_path;
  bool strict = false;

  for (const std::string& name : besovlab::cli::commands()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("config", config_path, "JSON config file ('-' for stdin)");
    sub->add_option("--set", sets, "override a config field, e.g. besov.s=1.5")->take_all();
    sub->add_option("--seed", seed, "master seed");
    sub->add_option("--reps", reps, "replicate count");
    sub->add_option("--threads", threads, "worker threads (default: BESOVLAB_THREADS or all cores)");
    sub->add_option("--out", out_path, "JSON report path ('-' for stdout)");
    sub->add_option("--csv", csv_path, "CSV table path ('-' for stdout)");
    sub->add_flag("--strict", strict, "exit 3 when a verdict is not covered");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : besovlab::cli::usage;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    besovlab::Json config = config_path.empty() ? besovlab::Json::object()
                                                : read_json_file(config_path, "config");
    for (const std::string& s : sets) besovlab::cli::apply_override(config, s);
    if (seed) config["seed"] = *seed;
    if (reps) config["reps"] = *reps;
    if (command == "norm" && config.is_object() && config.contains("tree_file")) {
      if (!config["tree_file"].is_string()) throw besovlab::ConfigError("/tree_file", "expected a path");
      config["tree"] = read_json_file(config["tree_file"].get<std::string>(), "/tree_file");
    }
    if (threads == 0) threads = besovlab::default_thread_count();

    const besovlab::cli::RunResult res = besovlab::cli::run(command, config, threads, strict);
    write_text(out_path, res.report.dump(2) + "\n");
    if (!csv_path.empty()) write_text(csv_path, res.csv);
    return res.exit_code;
  } catch (const besovlab::ConfigError& e) {
    std::cerr << "besovlab " << command << ": invalid config at " << e.what() << '\n';
    return besovlab::cli::usage;
  } catch (const IoError& e) {
    std::cerr << "besovlab " << command << ": " << e.what() << '\n';
    return besovlab::cli::io_failure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "besovlab " << command << ": " << e.what() << '\n';
    return besovlab::cli::usage;
  } catch (const std::domain_error& e) {
    std::cerr << "besovlab " << command << ": " << e.what() << '\n';
    return besovlab::cli::usage;
  }
}
