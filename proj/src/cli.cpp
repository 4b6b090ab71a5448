#include "rohull/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "rohull/reports.hpp"

namespace rohull {

namespace {

namespace fs = std::filesystem;

void write_atomically(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot write " + tmp.string());
    f << content;
    if (!f.flush()) throw UsageError("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string file_stem(const std::string& command) {
  std::string s = command;
  for (char& c : s)
    if (c == '-') c = '_';
  return s;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank-one hulls, T4 configurations and lamination counterexamples for 2x2 matrices", "rohull"};
  app.require_subcommand(1);
  app.fallthrough();

  RunOptions opt;
  std::string mode_text;
  std::string out_dir;
  bool want_csv = false, want_svg = false;
  std::string input;

  app.add_option("--mode", mode_text, "Arithmetic: exact (rationals) or float")
      ->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--tol", opt.tol, "Relative tolerance for float rank-one tests")->capture_default_str();
  app.add_option("--out", out_dir, "Directory for the JSON report and optional CSV/SVG files");
  app.add_flag("--csv", want_csv, "Also write a CSV point table (needs --out)");
  app.add_flag("--svg", want_svg, "Also write an SVG figure (needs --out)");

  auto* staircase =
      app.add_subcommand("staircase", "Staircase set K0, the perturbed chain and its distances");
  staircase->add_option("--N", opt.N, "Perturbation index")->capture_default_str();
  staircase->add_option("--n-max", opt.n_max, "Truncation of the staircase")->capture_default_str();

  auto* tri = app.add_subcommand("tri-spiral", "Upper-triangular spiral and its separator certificate");
  tri->add_option("--steps", opt.steps, "Number of combination steps")->capture_default_str();
  tri->add_option("--input", input, "JSON with x1, x2, y1, y2, alpha[4], z0");

  auto* sym = app.add_subcommand("sym-spiral", "Symmetric spiral (float mode only)");
  sym->add_option("--xi3", opt.xi3, "Starting height xi3")->capture_default_str();
  sym->add_option("--iters", opt.iters, "Number of spiral cycles")->capture_default_str();
  sym->add_option("--input", input, "JSON with x1, x2, y1, y2, alpha[4]");

  auto* five =
      app.add_subcommand("five-point", "Five-point set with a T4 corner outside its lamination hull");
  five->add_option("--epsilon", opt.epsilon, "Parameter in (0, 1), e.g. 1/2")->capture_default_str();
  five->add_option("--rounds", opt.rounds, "Laminate splitting rounds")->capture_default_str();

  auto* t4 = app.add_subcommand("t4-detect", "Search all orderings of four matrices for a T4 scaffold");
  t4->add_option("--input", input, "JSON array of four 2x2 matrices")->check(CLI::ExistingFile);

  auto* pc = app.add_subcommand("pc-hull", "Polyconvex hull of a det-nonnegative finite set");
  pc->add_option("--input", input, "JSON array of 2x2 matrices")->check(CLI::ExistingFile);
  pc->add_option("--samples", opt.samples, "Grid points per axis for the cross-check")->capture_default_str();

  auto* haus = app.add_subcommand("hausdorff", "Hausdorff distance between two laminate sets");
  haus->add_option("--input", input, "JSON object {a, b} of point/segment sets")->check(CLI::ExistingFile);
  haus->add_option("--n-max", opt.n_max, "Staircase truncation for the default sets")->capture_default_str();

  auto* usc = app.add_subcommand("usc-probe", "Sweep N and compare rho(K, K0) with the hull distance");
  usc->add_option("--N", opt.N, "Largest perturbation index of the sweep")->capture_default_str();
  usc->add_option("--n-max", opt.n_max, "Truncation of the staircase")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (!mode_text.empty()) opt.mode = parse_mode(mode_text);
    if (!input.empty()) opt.input = input;
    if ((want_csv || want_svg) && out_dir.empty()) throw UsageError("--csv and --svg need --out DIR");

    Report report = make_report(command, opt);
    const std::string json = report.body.dump(2) + "\n";
    if (out_dir.empty()) {
      out << json;
    } else {
      fs::create_directories(out_dir);
      const fs::path base = fs::path(out_dir) / file_stem(command);
      write_atomically(fs::path(base).replace_extension(".json"), json);
      if (want_csv && !report.csv.empty())
        write_atomically(fs::path(base).replace_extension(".csv"), report.csv);
      if (want_svg && !report.svg.empty())
        write_atomically(fs::path(base).replace_extension(".svg"), report.svg);
      out << command << ": " << (report.pass ? "pass" : "FAIL") << "\n";
    }
    return report.pass ? 0 : 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "certificate failure: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace rohull
