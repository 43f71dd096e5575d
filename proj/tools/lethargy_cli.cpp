// Batch front end: lethargy_cli <check|construct|sequence|demo> [options] scenario.json...
#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lethargy/scenario.hpp"

namespace {

struct Common {
  std::vector<std::string> paths;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::string format = "text";
  std::string output;
  bool batch = false;
  bool timing = false;
};

// One scenario in, one report out; input errors become reports too.
lethargy::Report run_path(const std::string& path, const Common& c, std::optional<lethargy::Mode> mode) {
  lethargy::RunOptions opts{c.tol, c.seed, mode, c.timing};
  try {
    return lethargy::run(lethargy::load_scenario(path), opts);
  } catch (const lethargy::InputError& e) {
    lethargy::Report r;
    r.scenario = path;
    r.verdict = lethargy::Verdict::input_error;
    r.messages.push_back(e.what());
    return r;
  }
}

std::string render(const std::vector<lethargy::Report>& reports, const std::string& format) {
  if (format == "json") {
    if (reports.size() == 1) return lethargy::emit_json(reports.front());
    nlohmann::json all = nlohmann::json::array();
    for (const auto& r : reports) all.push_back(lethargy::report_to_json(r));
    return all.dump(2) + "\n";
  }
  std::string out;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i) out += "\n----\n\n";
    out += lethargy::emit_text(reports[i]);
  }
  return out;
}

int execute(const Common& c, std::optional<lethargy::Mode> mode) {
  std::vector<lethargy::Report> reports(c.paths.size());
  if (c.batch && c.paths.size() > 1) {
    std::vector<std::future<lethargy::Report>> jobs;
    for (const auto& p : c.paths) jobs.push_back(std::async(std::launch::async, run_path, p, std::cref(c), mode));
    for (std::size_t i = 0; i < jobs.size(); ++i) reports[i] = jobs[i].get();
  } else {
    for (std::size_t i = 0; i < c.paths.size(); ++i) reports[i] = run_path(c.paths[i], c, mode);
  }

  // Text always goes to stdout; --output receives the chosen format.
  if (c.output.empty()) {
    std::cout << render(reports, c.format);
  } else {
    std::cout << render(reports, "text");
    std::ofstream out(c.output);
    if (!out) {
      std::cerr << "cannot write " << c.output << "\n";
      return 2;
    }
    out << render(reports, c.format);
  }
  int code = 0;
  for (const auto& r : reports) code = std::max(code, lethargy::exit_code(r.verdict));
  return code;
}

// Built-in Hilbert scenario, d = (0.5, 0.2) on a 3-level coordinate chain.
int demo(const Common& c) {
  lethargy::Scenario s;
  s.name = "demo-hilbert-coordinate";
  s.ambient_dim = 4;
  s.norm = lethargy::NormSpec::l2();
  s.generator = "coordinate";
  s.chain = lethargy::Chain::coordinate(4, 3, s.norm);
  s.targets = lethargy::TargetSequence::finite({0.5, 0.2});
  s.mode = lethargy::Mode::finite;
  const lethargy::Report r = lethargy::run(s, {c.tol, c.seed, std::nullopt, c.timing});
  std::cout << (c.format == "json" ? lethargy::emit_json(r) : lethargy::emit_text(r));
  return lethargy::exit_code(r.verdict);
}

void add_common(CLI::App* sub, Common& c, bool needs_paths) {
  auto* paths = sub->add_option("scenario", c.paths, "scenario file(s)");
  if (needs_paths) paths->required()->check(CLI::ExistingFile);
  sub->add_option("--tol", c.tol, "tolerance override")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "seed override for sampled checks");
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--output,-o", c.output, "write the report in --format to this path");
  sub->add_flag("--batch", c.batch, "run several scenarios in parallel");
  sub->add_flag("--timing", c.timing, "record wall time (reports stop being bit-identical)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distance and lethargy construction checks over nested subspace chains"};
  app.require_subcommand(1);
  Common c;
  auto* check = app.add_subcommand("check", "run the condition checks only");
  auto* construct = app.add_subcommand("construct", "run each scenario in its own mode");
  auto* sequence = app.add_subcommand("sequence", "force sequence mode (stabilization table)");
  auto* dem = app.add_subcommand("demo", "run a built-in Hilbert example");
  for (auto* sub : {check, construct, sequence}) add_common(sub, c, true);
  add_common(dem, c, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (*dem) return demo(c);
  if (*check) return execute(c, lethargy::Mode::check_only);
  if (*sequence) return execute(c, lethargy::Mode::sequence);
  return execute(c, std::nullopt);
}
