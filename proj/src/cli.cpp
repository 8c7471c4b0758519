#include "twoatom/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "twoatom/dynamics.hpp"
#include "twoatom/entanglement.hpp"
#include "twoatom/nonlocality.hpp"
#include "twoatom/state_json.hpp"
#include "twoatom/timescales.hpp"

namespace twoatom::cli {

namespace {

std::string read_source(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") return {std::istreambuf_iterator<char>(in), {}};
  std::ifstream file(path);
  if (!file) throw Error(ErrorCode::Format, "cannot open state file '" + path + "'");
  return {std::istreambuf_iterator<char>(file), {}};
}

DensityMatrix4 load_state(const std::string& path, std::istream& in) {
  return state_from_string(read_source(path, in));
}

std::string fixed(double v) { return fmt::format("{:.9f}", v); }

// Runs `body` once per index with a small worker pool.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void append_flag(std::string& flags, const std::string& flag) {
  if (!flags.empty()) flags += ';';
  flags += flag;
}

SweepRow sweep_point(int figure, double param, double gamma, const SolverOptions& solver) {
  SweepRow row;
  row.parameter = param;
  DensityMatrix4 rho = pure_phi(0.0);
  TimescaleResult td_closed, tloc_closed;
  switch (figure) {
    case 1: {
      rho = pure_phi(param);
      td_closed = t_d_pure(param, gamma);
      const PureLocalityTimes loc = t_loc_pure(param, gamma);
      tloc_closed = loc.assumed_pair;
      if (!loc.assumed_pair_valid && n_value(rho) > solver.zero_threshold) {
        append_flag(row.flags, "tloc_assumed_pair_invalid");
        append_flag(row.flags, "tloc_largest_pair=" + fixed(loc.largest_pair.time));
      }
      break;
    }
    case 2:
      rho = werner(param);
      td_closed = t_d_werner(param, gamma);
      tloc_closed = t_loc_werner(param, gamma);
      break;
    case 3:
      rho = mems(param);
      td_closed = t_d_mems(param, gamma);
      tloc_closed = t_loc_mems(param, gamma);
      append_flag(row.flags, param <= 2.0 / 3.0 ? "td_lower_branch" : "td_upper_branch");
      break;
    default:
      throw Error(ErrorCode::Domain, "figure must be 1, 2 or 3");
  }

  if (concurrence(rho) > solver.zero_threshold) {
    row.t_d_closed = td_closed.time;
    const TimescaleResult td = disentanglement_time_numeric(rho, gamma, solver);
    row.t_d_numeric = td.time;
    if (td.revival_detected) append_flag(row.flags, "revival");
  } else {
    append_flag(row.flags, "separable");
  }
  if (n_value(rho) > solver.zero_threshold) {
    row.t_loc_closed = tloc_closed.time;
    row.t_loc_numeric = locality_time_numeric(rho, gamma, solver).time;
  } else {
    append_flag(row.flags, "local");
  }
  return row;
}

struct Check {
  std::string name;
  bool passed;
  double value;
  std::string detail;
};

struct Finding {
  std::string name;
  std::string detail;
};

}  // namespace

std::vector<SweepRow> sweep_rows(const SweepOptions& opts) {
  if (opts.points < 2) throw Error(ErrorCode::Domain, "--points must be at least 2");
  if (opts.figure < 1 || opts.figure > 3) throw Error(ErrorCode::Domain, "--figure must be 1, 2 or 3");
  if (!(opts.gamma > 0.0)) throw Error(ErrorCode::Domain, "--gamma must be positive");
  SolverOptions solver;
  solver.tol = opts.tol;
  std::vector<SweepRow> rows(static_cast<std::size_t>(opts.points));
  parallel_for(rows.size(), [&](std::size_t i) {
    const double param = static_cast<double>(i) / static_cast<double>(opts.points - 1);
    rows[i] = sweep_point(opts.figure, param, opts.gamma, solver);
  });
  return rows;
}

std::string format_sweep_row(const SweepRow& row) {
  const auto cell = [](const std::optional<double>& v) { return v ? fixed(*v) : std::string(); };
  return fmt::format("{},{},{},{},{},{}", fixed(row.parameter), cell(row.t_d_closed), cell(row.t_d_numeric),
                     cell(row.t_loc_closed), cell(row.t_loc_numeric), row.flags);
}

int cmd_state(const StateOptions& opts, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    std::optional<DensityMatrix4> rho;
    if (opts.family == "pure") {
      rho = pure_phi(opts.c);
    } else if (opts.family == "werner") {
      if (opts.sign != "+" && opts.sign != "-") throw Error(ErrorCode::Domain, "--sign must be + or -");
      rho = werner(opts.p, opts.sign == "+" ? WernerSign::plus : WernerSign::minus);
    } else if (opts.family == "mems") {
      rho = mems(opts.c);
    } else if (opts.family == "x") {
      rho = x_state(opts.x);
    } else if (opts.family == "file") {
      rho = load_state(opts.in, in);
    } else {
      throw Error(ErrorCode::Domain, "unknown state family '" + opts.family + "'");
    }
    out << state_to_json(*rho).dump() << '\n';
    return kSuccess;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

int cmd_evolve(const EvolveOptions& opts, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    if (!(opts.t >= 0.0)) throw Error(ErrorCode::Domain, "--t must be non-negative");
    if (!(opts.gamma > 0.0)) throw Error(ErrorCode::Domain, "--gamma must be positive");
    const DensityMatrix4 rho0 = load_state(opts.in, in);
    std::optional<DensityMatrix4> rho;
    if (opts.method == "closed" || (opts.method == "auto" && is_x_class(rho0))) {
      rho = evolve_x_closed(rho0, opts.t, opts.gamma);
    } else if (opts.method == "auto" || opts.method == "rk4") {
      rho = evolve_numeric(rho0, opts.t, opts.gamma, {Method::rk4, 1000});
    } else if (opts.method == "expm") {
      rho = evolve_numeric(rho0, opts.t, opts.gamma, {Method::expm, 1000});
    } else {
      throw Error(ErrorCode::Domain, "unknown --method '" + opts.method + "'");
    }
    out << state_to_json(*rho).dump() << '\n';
    return kSuccess;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

int cmd_metrics(const std::string& path, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    const DensityMatrix4 rho = load_state(path, in);
    const bool x = is_x_class(rho);
    nlohmann::json report;
    report["concurrence"] = concurrence(rho);
    if (x) {
      const ConcurrenceBreakdown b = concurrence_x(rho);
      report["c1"] = b.c1;
      report["c2"] = b.c2;
    } else {
      report["c1"] = nullptr;
      report["c2"] = nullptr;
    }
    report["eof"] = entanglement_of_formation(rho);
    report["m"] = m_value(rho);
    report["n"] = n_value(rho);
    report["linear_entropy"] = linear_entropy(rho);
    report["x_class"] = x;
    out << report.dump() << '\n';
    return kSuccess;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
  std::vector<SweepRow> rows;
  try {
    rows = sweep_rows(opts);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::Domain ? kUsageError : kCheckFailure;
  }
  out << kSweepHeader << '\n';
  for (const SweepRow& row : rows) out << format_sweep_row(row) << '\n';
  return kSuccess;
}

int cmd_validate(const ValidateOptions& opts, std::istream& in, std::ostream& out, std::ostream& err) {
  if (opts.cases < 0 || !(opts.tol > 0.0)) {
    err << "error: --cases must be >= 0 and --tol positive\n";
    return kUsageError;
  }
  std::optional<DensityMatrix4> extra;
  if (!opts.in.empty()) {
    try {
      extra = load_state(opts.in, in);
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return kUsageError;
    }
  }

  std::vector<Check> checks;
  std::vector<Finding> findings;
  const auto check_max = [&](std::string name, double value, double bound) {
    checks.push_back({std::move(name), value <= bound, value, fmt::format("max |delta| = {:.3e} (bound {:.1e})", value, bound)});
  };
  const auto check_count = [&](std::string name, int disagreements) {
    checks.push_back({std::move(name), disagreements == 0, static_cast<double>(disagreements),
                      fmt::format("{} disagreements", disagreements)});
  };
  const double gamma = 1.0;
  SolverOptions solver;

  if (opts.cases > 0) {
    double conc_dev = 0.0, coll_dev = 0.0, prop_dev = 0.0, rhs_dev = 0.0;
    int ppt_disagree = 0;
    const EvolutionConfig expm_cfg{Method::expm, 1000};
    for (int i = 0; i < opts.cases; ++i) {
      const std::uint64_t seed = opts.seed + static_cast<std::uint64_t>(i);
      const DensityMatrix4 x = random_x_state(seed);
      conc_dev = std::max(conc_dev, std::abs(concurrence_x(x).value - concurrence(x)));
      const ConcurrenceBreakdown a = concurrence_x(x), b = concurrence_x_collective(x);
      coll_dev = std::max({coll_dev, std::abs(a.c1 - b.c1), std::abs(a.c2 - b.c2)});
      for (double t : {0.1, 0.5, 1.0, 2.0}) {
        const Matrix4 diff = evolve_x_closed(x, t, gamma).matrix() - evolve_numeric(x, t, gamma, expm_cfg).matrix();
        prop_dev = std::max(prop_dev, diff.cwiseAbs().maxCoeff());
      }
      const DensityMatrix4 g = random_density(seed);
      if (is_separable_ppt(g) != (concurrence(g) <= 1e-9)) ++ppt_disagree;
      const Matrix4 via_l = canonical_to_collective(build_liouvillian(gamma).apply(g.matrix())).elements;
      rhs_dev = std::max(rhs_dev, (via_l - collective_rhs(canonical_to_collective(g), gamma).elements)
                                      .cwiseAbs()
                                      .maxCoeff());
    }
    check_max("x-state concurrence vs Wootters", conc_dev, 1e-10);
    check_max("collective vs canonical C1/C2", coll_dev, 1e-10);
    check_max("closed-form vs expm propagator", prop_dev, 1e-10);
    check_count("PPT separability vs zero concurrence", ppt_disagree);
    check_max("collective rhs vs Liouvillian", rhs_dev, 1e-10);
  }

  {
    double td_pure = 0.0, td_werner = 0.0, td_mems = 0.0, tl_pure = 0.0, tl_werner = 0.0, tl_mems = 0.0;
    int ordering = 0;
    constexpr int kGrid = 11;
    for (int i = 1; i < kGrid; ++i) {
      const double v = static_cast<double>(i) / (kGrid - 1);
      const auto td = [&](const DensityMatrix4& r) { return disentanglement_time_numeric(r, gamma, solver).time; };
      const auto tl = [&](const DensityMatrix4& r) { return locality_time_numeric(r, gamma, solver).time; };
      const double pd = td(pure_phi(v)), wd = td(werner(v)), md = td(mems(v));
      const double pl = tl(pure_phi(v)), wl = tl(werner(v)), ml = tl(mems(v));
      td_pure = std::max(td_pure, std::abs(pd - t_d_pure(v, gamma).time));
      td_werner = std::max(td_werner, std::abs(wd - t_d_werner(v, gamma).time));
      td_mems = std::max(td_mems, std::abs(md - t_d_mems(v, gamma).time));
      tl_pure = std::max(tl_pure, std::abs(pl - t_loc_pure(v, gamma).largest_pair.time));
      tl_werner = std::max(tl_werner, std::abs(wl - t_loc_werner(v, gamma).time));
      tl_mems = std::max(tl_mems, std::abs(ml - t_loc_mems(v, gamma).time));
      for (auto [l, d] : {std::pair{pl, pd}, {wl, wd}, {ml, md}})
        if (l > 0.0 && d > 0.0 && !(l < d)) ++ordering;
    }
    check_max("t_d pure: closed vs numeric", td_pure, opts.tol);
    check_max("t_d werner: closed vs numeric", td_werner, opts.tol);
    check_max("t_d mems: closed vs numeric", td_mems, opts.tol);
    check_max("t_loc pure (largest pair): closed vs numeric", tl_pure, opts.tol);
    check_max("t_loc werner: closed vs numeric", tl_werner, opts.tol);
    check_max("t_loc mems: closed vs numeric", tl_mems, opts.tol);
    check_count("t_loc < t_d on all grids", ordering);
  }

  {
    const double c = 0.05;
    const double numeric = disentanglement_time_numeric(mems(c), gamma, solver).time;
    findings.push_back({"mems lower branch at c=0.05",
                        fmt::format("numeric {:.9f}; coefficient 1/18 gives {:.9f}; coefficient 1/16 gives {:.9f}",
                                    numeric, mems_lower_branch(c, 1.0 / 18.0), mems_lower_branch(c, 1.0 / 16.0))});
    const PureLocalityTimes loc = t_loc_pure(1.0, gamma);
    findings.push_back({"pure-state locality time at c=1",
                        fmt::format("numeric {:.9f}; largest-pair form {:.9f}; assumed-pair form {:.9f}",
                                    locality_time_numeric(pure_phi(1.0), gamma, solver).time,
                                    loc.largest_pair.time, loc.assumed_pair.time)});
  }

  if (extra) {
    const bool ppt = is_separable_ppt(*extra);
    const double c = concurrence(*extra);
    check_count("input state: PPT vs concurrence", ppt == (c <= 1e-9) ? 0 : 1);
    const TimescaleResult a = disentanglement_time_numeric(*extra, gamma, solver);
    SolverOptions rk4_solver = solver;
    rk4_solver.evolution = {Method::rk4, 1000};
    const TimescaleResult b = disentanglement_time_numeric(*extra, gamma, rk4_solver);
    check_max("input state: t_d expm vs rk4", std::abs(a.time - b.time), opts.tol);
  }

  int failed = 0;
  nlohmann::json summary;
  summary["checks"] = nlohmann::json::array();
  for (const Check& c : checks) {
    out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << '\n';
    if (!c.passed) ++failed;
    summary["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}});
  }
  summary["findings"] = nlohmann::json::array();
  for (const Finding& f : findings) {
    out << "[INFO] " << f.name << ": " << f.detail << '\n';
    summary["findings"].push_back({{"name", f.name}, {"detail", f.detail}});
  }
  summary["passed"] = static_cast<int>(checks.size()) - failed;
  summary["failed"] = failed;
  out << summary.dump() << '\n';
  return failed == 0 ? kSuccess : kCheckFailure;
}

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two atoms in infinite-temperature baths: states, dynamics, entanglement and Bell-nonlocality times"};
  app.require_subcommand(1);

  StateOptions state;
  auto* state_cmd = app.add_subcommand("state", "Emit a state as JSON");
  state_cmd->add_option("family", state.family, "pure | werner | mems | x | file")->required()
      ->check(CLI::IsMember({"pure", "werner", "mems", "x", "file"}));
  state_cmd->add_option("--c", state.c, "Concurrence parameter (pure, mems)");
  state_cmd->add_option("--p", state.p, "Werner weight");
  state_cmd->add_option("--sign", state.sign, "Werner sign, + or -");
  state_cmd->add_option("--rho11", state.x.rho11);
  state_cmd->add_option("--rho22", state.x.rho22);
  state_cmd->add_option("--rho33", state.x.rho33);
  state_cmd->add_option("--rho44", state.x.rho44);
  double r14re = 0, r14im = 0, r23re = 0, r23im = 0;
  state_cmd->add_option("--rho14-re", r14re);
  state_cmd->add_option("--rho14-im", r14im);
  state_cmd->add_option("--rho23-re", r23re);
  state_cmd->add_option("--rho23-im", r23im);
  state_cmd->add_option("--in", state.in, "State file for family 'file' (- for stdin)");

  EvolveOptions evolve;
  auto* evolve_cmd = app.add_subcommand("evolve", "Evolve a state file");
  evolve_cmd->add_option("--in", evolve.in, "State file (- for stdin)");
  evolve_cmd->add_option("--gamma", evolve.gamma, "Dissipation rate");
  evolve_cmd->add_option("--t", evolve.t, "Evolution time")->required();
  evolve_cmd->add_option("--method", evolve.method, "auto | rk4 | expm | closed")
      ->check(CLI::IsMember({"auto", "rk4", "expm", "closed"}));

  std::string metrics_in = "-";
  auto* metrics_cmd = app.add_subcommand("metrics", "Entanglement and nonlocality report");
  metrics_cmd->add_option("--in", metrics_in, "State file (- for stdin)");

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "t_d and t_loc curves as CSV");
  sweep_cmd->add_option("--figure", sweep.figure, "1 pure, 2 Werner, 3 MEMS")->required()
      ->check(CLI::IsMember({1, 2, 3}));
  sweep_cmd->add_option("--points", sweep.points, "Grid points, >= 2")->check(CLI::Range(2, 1000000));
  sweep_cmd->add_option("--gamma", sweep.gamma, "Dissipation rate");
  sweep_cmd->add_option("--tol", sweep.tol, "Root tolerance in gamma*t");

  ValidateOptions validate;
  auto* validate_cmd = app.add_subcommand("validate", "Cross-check closed forms against numeric oracles");
  validate_cmd->add_option("--tol", validate.tol, "Closed-form vs numeric bound in gamma*t");
  validate_cmd->add_option("--seed", validate.seed, "First random seed");
  validate_cmd->add_option("--cases", validate.cases, "Random states per section");
  validate_cmd->add_option("--in", validate.in, "Extra state file to check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kSuccess;
    }
    app.exit(e, out, err);
    return kUsageError;
  }

  if (*state_cmd) {
    state.x.rho14 = Complex{r14re, r14im};
    state.x.rho23 = Complex{r23re, r23im};
    return cmd_state(state, in, out, err);
  }
  if (*evolve_cmd) return cmd_evolve(evolve, in, out, err);
  if (*metrics_cmd) return cmd_metrics(metrics_in, in, out, err);
  if (*sweep_cmd) return cmd_sweep(sweep, out, err);
  return cmd_validate(validate, in, out, err);
}

}  // namespace twoatom::cli
