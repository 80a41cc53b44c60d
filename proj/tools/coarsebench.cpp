#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "coarse/acceptance.hpp"
#include "coarse/experiment.hpp"

namespace {

struct Options {
  std::string config;
  std::string out;
  std::string csv;
  std::optional<std::size_t> workers;
  std::optional<coarse::Int> budget;
  std::optional<std::uint64_t> seed;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  file << text;
}

int run_command(const std::string& command, const Options& o) {
  coarse::ExperimentResult result;
  std::ifstream in(o.config);
  if (!in) {
    result.status = coarse::Status::error;
    result.report = {{"error", "cannot read config " + o.config}, {"error_kind", "config"}};
  } else {
    nlohmann::json config;
    try {
      config = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      result.status = coarse::Status::error;
      result.report = {{"error", std::string("config is not valid JSON: ") + e.what()}, {"error_kind", "config"}};
    }
    if (!config.is_null()) {
      result = coarse::run_experiment(config, {o.workers, o.budget, o.seed}, coarse::kind_for_command(command));
    }
  }
  write_text(o.out, result.document().dump(2) + "\n");
  if (!o.csv.empty()) {
    if (result.csv.empty()) {
      std::cerr << "no per-color table for this experiment; --csv ignored\n";
    } else {
      write_text(o.csv, result.csv);
    }
  }
  if (result.status == coarse::Status::error) std::cerr << "error: " << result.report.value("error", "") << "\n";
  return coarse::exit_code(result.status);
}

int run_suite(const Options& o) {
  coarse::acceptance::Settings settings;
  if (o.workers) settings.workers = *o.workers;
  if (o.seed) settings.seed = *o.seed;
  nlohmann::json criteria = nlohmann::json::array();
  bool all = true;
  for (const auto& criterion : coarse::acceptance::battery()) {
    const auto r = criterion(settings);
    std::cerr << coarse::acceptance::line(r) << std::endl;
    all = all && r.passed;
    criteria.push_back(
        {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"seconds", r.seconds}, {"detail", r.detail}});
  }
  const auto status = all ? coarse::Status::pass : coarse::Status::fail;
  const nlohmann::json doc = {{"status", coarse::status_name(status)},
                              {"config", {{"kind", "suite"}, {"workers", settings.workers}, {"seed", settings.seed}}},
                              {"report", {{"criteria", criteria}}},
                              {"version", coarse::kVersion}};
  write_text(o.out, doc.dump(2) + "\n");
  return coarse::exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact cover verification, witnesses and oracles for coarse dimension experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", coarse::kVersion);
  Options o;

  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--out", o.out, "write the JSON report here (default stdout)");
    sub->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "seed for sampled checks");
  };
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"verify", "verify a cover scheme on a window"},
      {"witness", "find fiber witnesses and check the induced map"},
      {"control", "check coarse control of a map on a window"},
      {"oracle1d", "exhaustive search for a one-dimensional cover"},
      {"ord", "ordinal rank of a finite family"},
      {"satunion", "saturated union of two finite families"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", o.config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--budget", o.budget, "node budget for searches");
    sub->add_option("--csv", o.csv, "write the per-color table as CSV");
    add_common(sub);
  }
  CLI::App* suite = app.add_subcommand("suite", "run every acceptance criterion");
  add_common(suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }
  try {
    for (CLI::App* sub : app.get_subcommands()) {
      if (sub->get_name() == "suite") return run_suite(o);
      return run_command(sub->get_name(), o);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
