#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rohull/serialize.hpp"

namespace rohull {

inline constexpr const char* kSchema = "ro-hull/1";

/// Parameters of one batch run. Unset fields take per-command defaults.
struct RunOptions {
  std::optional<Mode> mode;
  double tol = kRankTolerance;
  std::string epsilon = "1/2";
  std::string xi3 = "1/1000";
  int N = 10;
  int n_max = 30;
  int rounds = 10;
  int samples = 16;
  int steps = 40;
  int iters = 12;
  std::optional<std::string> input;  ///< path to a JSON input file
  std::optional<Json> input_data;    ///< already parsed input, takes precedence over `input`

  bool has_input() const { return input || input_data; }
};

struct Report {
  std::string command;
  Json body;
  bool pass = true;  ///< every certificate holds
  std::string csv;   ///< empty when the command has no point table
  std::string svg;   ///< empty when the command has no figure
};

Report staircase_report(const RunOptions& opt);
Report tri_spiral_report(const RunOptions& opt);
Report sym_spiral_report(const RunOptions& opt);
Report five_point_report(const RunOptions& opt);
Report t4_detect_report(const RunOptions& opt);
Report pc_hull_report(const RunOptions& opt);
Report hausdorff_report(const RunOptions& opt);
Report usc_probe_report(const RunOptions& opt);

const std::vector<std::string>& command_names();
/// Dispatches on the command name; throws UsageError for unknown names.
Report make_report(const std::string& command, const RunOptions& opt);

}  // namespace rohull
