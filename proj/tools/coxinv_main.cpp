#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "coxinv/enumeration_cache.hpp"
#include "coxinv/error.hpp"
#include "coxinv/report.hpp"

using namespace coxinv;

namespace {

struct Flags {
  std::string input;
  int depth = 20;
  int radius = -1;
  std::string p_grid;
  std::string lambda;
  double apartment_confdim = -1;
  std::string format = "text";
  std::string cache_dir;
  std::size_t max_elements = 0;
  bool parallel = false;
  bool timings = false;
  int trials = 1000;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--input,-i", f.input, "input document (JSON)")->required();
  cmd->add_option("--depth", f.depth, "enumeration depth for fits and partial sums")->check(CLI::Range(1, 200));
  cmd->add_option("--radius", f.radius, "explicit building radius")->check(CLI::Range(0, 40));
  cmd->add_option("--p-grid", f.p_grid, "comma separated exponents p > 1, e.g. 3/2,2,2.5");
  cmd->add_option("--lambda", f.lambda, "visual parameter > 1, or \"bourdon\"");
  cmd->add_option("--apartment-confdim", f.apartment_confdim, "conformal dimension of the apartment boundary");
  cmd->add_option("--format", f.format, "output format")->check(CLI::IsMember({"text", "machine"}));
  cmd->add_option("--cache-dir", f.cache_dir, "enumeration cache directory (default $COXINV_CACHE_DIR)");
  cmd->add_option("--max-elements", f.max_elements, "element cap for enumeration");
  cmd->add_flag("--parallel", f.parallel, "expand enumeration layers on worker threads");
  cmd->add_flag("--timings", f.timings, "append wall-clock timings per stage");
  cmd->add_option("--trials", f.trials, "random chains per oracle check")->check(CLI::Range(1, 100000));
}

ReportOptions options(const Flags& f) {
  ReportOptions o;
  o.depth = f.depth;
  if (f.radius >= 0) o.radius = f.radius;
  if (!f.p_grid.empty()) o.p_grid = parse_p_grid(f.p_grid);
  if (!f.lambda.empty()) o.lambda = parse_lambda(f.lambda);
  if (f.apartment_confdim >= 0) o.apartment_confdim = f.apartment_confdim;
  if (!f.cache_dir.empty())
    o.cache_dir = f.cache_dir;
  else
    o.cache_dir = EnumerationCache::directory_from_environment();
  if (f.max_elements) o.limits.max_elements = f.max_elements;
  o.limits.parallel = f.parallel;
  o.oracle_trials = f.trials;
  o.timings = f.timings;
  return o;
}

void print(const InvariantReport& r, const Flags& f) {
  std::cout << (f.format == "machine" ? r.to_machine() : r.to_text());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coxeter group and building invariants"};
  app.set_version_flag("--version", "coxinv " + std::string(version()));
  app.require_subcommand(1);

  Flags f;
  using Section = ReportValue (*)(const InputDocument&, const ReportOptions&);
  const std::vector<std::tuple<std::string, std::string, Section>> sections{
      {"classify", "finite/affine/hyperbolic classification", cmd_classify},
      {"nerve", "nerve, PM verdict, vcd and Bestvina support", cmd_nerve},
      {"growth", "growth series and growth rates", cmd_growth},
      {"exponents", "critical exponents and the p-grid convergence table", cmd_exponents},
      {"confdim", "conformal dimension bounds", cmd_confdim},
      {"verify-oracle", "explicit right-angled building checks", cmd_verify_oracle},
  };
  for (const auto& [name, help, fn] : sections) {
    auto* cmd = app.add_subcommand(name, help);
    add_common(cmd, f);
  }
  auto* report = app.add_subcommand("report", "every invariant in one report");
  add_common(report, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const auto opts = options(f);
    const auto in = load_input(f.input);
    if (report->parsed()) {
      print(cmd_report(in, opts), f);
      return 0;
    }
    for (const auto& [name, help, fn] : sections)
      if (app.get_subcommand(name)->parsed()) print(single_section(in, name, fn(in, opts)), f);
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << '\n';
    return 4;
  }
}
