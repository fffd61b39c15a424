// Command-line driver: parse a job file, run its tasks, emit a report.
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "torsionlab/cli.hpp"
#include "torsionlab/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"torsionlab: twisted Alexander polynomials and torsions of "
               "finitely presented groups"};
  app.require_subcommand(1);

  CLI::App* compute = app.add_subcommand(
      "compute", "run the tasks declared in a job file");
  std::string job_path;
  std::vector<std::string> selected;
  std::string format = "text";
  std::string output;
  unsigned long seed = 0;
  bool check_invariants = false;
  compute->add_option("file", job_path, "job file to run")->required();
  compute->add_option("--task", selected,
                      "run only the named task (repeatable)");
  compute->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"text", "json"}));
  compute->add_option("--output", output, "write the report to this path");
  compute->add_option("--seed", seed, "seed for randomized tasks");
  compute->add_flag("--check-invariants", check_invariants,
                    "cross-check each torsion against independent recipes");

  CLI11_PARSE(app, argc, argv);

  using namespace torsionlab;
  try {
    Job job = parse_job_file(job_path);
    RunOptions opts;
    opts.selected = selected;
    opts.seed = seed;
    opts.check_invariants = check_invariants;
    JobReport report = run_job(job, opts);
    std::string rendered =
        format == "json" ? render_json(job, report) : render_text(job, report);
    if (output.empty()) {
      std::cout << rendered;
    } else {
      std::ofstream out(output);
      if (!out) {
        std::cerr << "error: cannot write " << output << "\n";
        return 2;
      }
      out << rendered;
    }
    return report.all_ok() ? 0 : 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << job_path << ": " << e.what() << "\n";
    return 2;
  } catch (const TorsionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
