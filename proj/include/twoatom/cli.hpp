#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "twoatom/core.hpp"

namespace twoatom::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailure = 1, kUsageError = 2 };

struct StateOptions {
  std::string family;  // pure | werner | mems | x | file
  double c = 1.0;
  double p = 1.0;
  std::string sign = "+";
  XStateParams x;
  std::string in;
};

struct EvolveOptions {
  std::string in = "-";
  double gamma = 1.0;
  double t = 0.0;
  std::string method = "auto";  // auto | rk4 | expm | closed
};

struct SweepOptions {
  int figure = 1;
  int points = 101;
  double gamma = 1.0;
  double tol = 1e-8;
};

struct ValidateOptions {
  double tol = 1e-6;
  std::uint64_t seed = 1;
  int cases = 200;
  std::string in;  // optional extra state to check
};

/// One line of a figure sweep. Empty optionals are written as empty CSV fields.
struct SweepRow {
  double parameter = 0.0;
  std::optional<double> t_d_closed;
  std::optional<double> t_d_numeric;
  std::optional<double> t_loc_closed;
  std::optional<double> t_loc_numeric;
  std::string flags;
};

inline constexpr const char* kSweepHeader = "param,t_d_closed,t_d_numeric,t_loc_closed,t_loc_numeric,flags";

/// Rows in parameter order; the parameter grid is i/(points-1), i = 0..points-1.
std::vector<SweepRow> sweep_rows(const SweepOptions& opts);
std::string format_sweep_row(const SweepRow& row);

int cmd_state(const StateOptions& opts, std::istream& in, std::ostream& out, std::ostream& err);
int cmd_evolve(const EvolveOptions& opts, std::istream& in, std::ostream& out, std::ostream& err);
int cmd_metrics(const std::string& path, std::istream& in, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);
int cmd_validate(const ValidateOptions& opts, std::istream& in, std::ostream& out, std::ostream& err);

/// Full command line front end; returns the process exit code.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace twoatom::cli
