#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#ifndef MEDIALCORR_DATA_DIR
#define MEDIALCORR_DATA_DIR "data"
#endif

#include "medialcorr/checks.hpp"
#include "medialcorr/coefficients.hpp"
#include "medialcorr/data_io.hpp"
#include "medialcorr/estimator.hpp"
#include "medialcorr/model_parse.hpp"
#include "medialcorr/orthant.hpp"
#include "medialcorr/parallel.hpp"
#include "medialcorr/sampler.hpp"

namespace {

using namespace medialcorr;

// exit codes: 0 success, 1 computation/validation failure, 2 usage error,
// 3 I/O or parse error

std::vector<ColumnSelector> parse_columns(const std::string& list) {
  std::vector<ColumnSelector> columns;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = list.find(',', start);
    std::string item = list.substr(start, comma - start);
    while (!item.empty() && item.front() == ' ') item.erase(item.begin());
    while (!item.empty() && item.back() == ' ') item.pop_back();
    if (item.empty()) throw std::invalid_argument("empty column selector");
    if (item.find_first_not_of("0123456789") == std::string::npos) {
      columns.emplace_back(std::stoi(item));
    } else {
      columns.emplace_back(item);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return columns;
}

CoordSet parse_subset(const std::string& list, int dim) {
  CoordSet set = 0;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = list.find(',', start);
    const std::string item = list.substr(start, comma - start);
    const int coord = std::stoi(item);
    if (coord < 0 || coord >= dim) {
      throw std::invalid_argument("coordinate " + item + " out of range for dimension " +
                                  std::to_string(dim));
    }
    set |= CoordSet{1} << coord;
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return set;
}

void emit_report(const CoefficientsReport& report, const std::string& output,
                 const std::string& format, const BootstrapResult* ci) {
  const ReportFormat fmt = format == "table" ? ReportFormat::table : ReportFormat::json;
  if (output.empty()) {
    write_report(report, std::cout, fmt, ci);
  } else {
    write_report(report, output, fmt, ci);
  }
}

int print_suite(const std::vector<CheckResult>& results) {
  int failures = 0;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS  " : "FAIL  ") << r.name;
    if (!r.pass) std::cout << "  [" << r.detail << "]";
    std::cout << '\n';
    failures += r.pass ? 0 : 1;
  }
  return failures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multivariate medial correlation: exact copula engine and rank estimator"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: MEDIALCORR_THREADS or all cores)");

  auto* estimate = app.add_subcommand("estimate", "empirical coefficients from a CSV dataset");
  std::string input, columns_arg, delimiter = ",", format = "json", output;
  int bootstrap = 0;
  double level = 0.95;
  std::uint64_t seed = 0;
  estimate->add_option("--input", input, "CSV file")->required();
  estimate->add_option("--columns", columns_arg, "comma-separated names or 0-based indices")
      ->required();
  estimate->add_option("--delimiter", delimiter, "',' or ';'");
  estimate->add_option("--bootstrap", bootstrap, "bootstrap replicates (0 = off)");
  estimate->add_option("--level", level, "confidence level for the bootstrap");
  estimate->add_option("--seed", seed, "bootstrap seed");
  estimate->add_option("--format", format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
  estimate->add_option("--output", output, "write to a file instead of stdout");

  auto* exact = app.add_subcommand("exact", "exact coefficients of a copula model");
  std::string model_arg, subset_i, subset_j;
  exact->add_option("--model", model_arg, "model string, e.g. gumbel:d=3,delta=0.5")->required();
  exact->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
  exact->add_option("--output", output, "write to a file instead of stdout");
  exact->add_option("--I", subset_i, "0-based coordinates of the first block, e.g. 0,1");
  exact->add_option("--J", subset_j, "0-based coordinates of the second block");

  auto* simulate = app.add_subcommand("simulate", "draw a seeded sample with uniform margins");
  std::int64_t n = 0;
  simulate->add_option("--model", model_arg, "model string")->required();
  simulate->add_option("--n", n, "number of rows")->required();
  simulate->add_option("--seed", seed, "sample seed")->required();
  simulate->add_option("--output", output, "CSV path")->required();

  auto* validate = app.add_subcommand("validate", "run the golden and property suites");
  std::string suite = "all";
  std::string wine_path = std::string(MEDIALCORR_DATA_DIR) + "/winequality-white.csv";
  validate->add_option("--suite", suite, "examples, properties, or all")
      ->check(CLI::IsMember({"examples", "properties", "all"}));
  validate->add_option("--seed", seed, "seed for the randomized property checks");
  validate->add_option("--wine", wine_path, "white-wine CSV for the dataset check (suite=all)");

  auto* concordance = app.add_subcommand("concordance-check", "strong concordance diagnostic");
  std::string model_x, model_y;
  int grid = 6;
  concordance->add_option("--model-x", model_x, "model string of the smaller vector")->required();
  concordance->add_option("--model-y", model_y, "model string of the larger vector")->required();
  concordance->add_option("--grid", grid, "interior grid points per axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*estimate) {
      if (delimiter.size() != 1) throw std::invalid_argument("delimiter must be one character");
      CsvSpec spec;
      spec.delimiter = delimiter[0];
      spec.columns = parse_columns(columns_arg);
      const DataMatrix data = load_csv(input, spec);
      const CoefficientsReport report = empirical_coefficients(data);
      if (bootstrap > 0) {
        const BootstrapResult ci = bootstrap_ci(data, bootstrap, level, seed, threads);
        emit_report(report, output, format, &ci);
      } else {
        emit_report(report, output, format, nullptr);
      }
    } else if (*exact) {
      const CopulaModel model = parse_model(model_arg);
      const OrthantTable table = build_orthant_table(model);
      const CoefficientsReport report = coefficients_from_table(table);
      emit_report(report, output, format, nullptr);
      if (!subset_i.empty() || !subset_j.empty()) {
        if (subset_i.empty() || subset_j.empty()) {
          throw std::invalid_argument("--I and --J must be given together");
        }
        const CoordSet I = parse_subset(subset_i, model.dim());
        const CoordSet J = parse_subset(subset_j, model.dim());
        std::cout << "beta_between(I={" << subset_i << "}, J={" << subset_j
                  << "}) = " << beta_between(table, I, J) << '\n';
      }
    } else if (*simulate) {
      const CopulaModel model = parse_model(model_arg);
      write_batch_csv(sample(model, n, seed, threads), output);
    } else if (*validate) {
      int failures = 0;
      if (suite == "examples" || suite == "all") failures += print_suite(run_example_checks());
      if (suite == "properties" || suite == "all") {
        failures += print_suite(run_property_checks(seed == 0 ? 20240801ULL : seed));
        failures += print_suite(run_montecarlo_checks(seed == 0 ? 20240801ULL : seed, threads));
      }
      if (suite == "all") {
        std::ifstream probe(wine_path);
        if (probe) {
          failures += print_suite(run_wine_checks(wine_path));
        } else {
          std::cout << "SKIP  wine reference values  [no dataset at " << wine_path << "]\n";
        }
      }
      if (failures > 0) {
        std::cerr << failures << " check(s) failed\n";
        return 1;
      }
    } else if (*concordance) {
      const CopulaModel x = parse_model(model_x);
      const CopulaModel y = parse_model(model_y);
      const ConcordanceReport report = strong_concordance_check(x, y, grid);
      std::cout << "grid points checked: " << report.grid_points << '\n'
                << "grid dominance (cdf and survival): " << (report.grid_dominance ? "holds" : "fails")
                << ", max violation " << report.max_violation << '\n'
                << "median reflection condition: "
                << (report.median_reflections ? "holds" : "fails");
      if (!report.failing_coords.empty()) {
        std::cout << " (coordinates:";
        for (int i : report.failing_coords) std::cout << ' ' << i;
        std::cout << ')';
      }
      std::cout << '\n';
      const char* verdict = "inconclusive";
      switch (report.verdict) {
        case ConcordanceReport::Verdict::strong_on_grid: verdict = "strong-holds-on-grid"; break;
        case ConcordanceReport::Verdict::weak_only: verdict = "weak-only"; break;
        case ConcordanceReport::Verdict::fails: verdict = "fails"; break;
        case ConcordanceReport::Verdict::inconclusive: verdict = "inconclusive"; break;
      }
      std::cout << "verdict: " << verdict << '\n';
    }
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
