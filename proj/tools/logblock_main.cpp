// Command-line front end for the logblock shared library.  All numerics go
// through the C API in logblock.h; this translation unit only parses flags,
// fans work out over a thread pool and formats CSV/JSON.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "logblock.h"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;  // a mathematical check or integration failed
constexpr int exit_usage = 2;         // bad flags, bad config, malformed input

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_number(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  return fmt17(v);
}

[[noreturn]] void throw_status(lcf_status status, const std::string& where) {
  const std::string msg = where + ": " + lcf_status_message(status);
  if (status == LCF_ERR_INVALID_ARGUMENT) throw UsageError(msg);
  throw MathError(msg);
}

// ---- configuration file ----------------------------------------------------

const std::set<std::string>& known_config_keys() {
  static const std::set<std::string> keys = {
      "h",     "c",       "delta",   "phi0", "psi0", "span", "rel_tol",
      "abs_tol", "grid", "out",     "format", "jobs"};
  return keys;
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) +
                       ": expected key = value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known_config_keys().count(key))
      throw UsageError(path + ":" + std::to_string(lineno) +
                       ": unknown config key '" + key + "'");
    kv[key] = value;
  }
  return kv;
}

// Pre-scan for --config before CLI11 runs, falling back to LOGBLOCK_CONFIG.
std::map<std::string, std::string> gather_config(int argc, char** argv) {
  std::string path;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) path = argv[i + 1];
    else if (arg.rfind("--config=", 0) == 0) path = arg.substr(9);
  }
  if (path.empty()) {
    if (const char* env = std::getenv("LOGBLOCK_CONFIG")) path = env;
  }
  if (path.empty()) return {};
  return load_config_file(path);
}

// Fills a value from the config file when the flag was not given explicitly.
template <typename T>
void config_fallback(CLI::App* cmd, const std::string& flag,
                     const std::map<std::string, std::string>& config,
                     const std::string& key, T& var) {
  if (cmd->count(flag) > 0) return;
  const auto it = config.find(key);
  if (it == config.end()) return;
  std::istringstream ss(it->second);
  T parsed;
  if (!(ss >> parsed) || !ss.eof())
    throw UsageError("config key '" + key + "': cannot parse '" + it->second + "'");
  var = parsed;
}

void config_fallback_str(CLI::App* cmd, const std::string& flag,
                         const std::map<std::string, std::string>& config,
                         const std::string& key, std::string& var) {
  if (cmd->count(flag) > 0) return;
  const auto it = config.find(key);
  if (it != config.end()) var = it->second;
}

// ---- shared helpers ---------------------------------------------------------

struct CommonOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  double span = 200.0;  // integration span or horizon, per command
  std::string out;
  std::string format;
  int jobs = 0;
  std::string config_path;  // consumed by gather_config; declared for parsing
};

// --h is an energy-level flag throughout, so help lives on --help only.
CLI::App* add_command(CLI::App& app, const std::string& name,
                      const std::string& description) {
  CLI::App* cmd = app.add_subcommand(name, description);
  cmd->set_help_flag("--help", "print this help and exit");
  return cmd;
}

void add_tolerance_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--rel-tol", opt.rel_tol, "relative integration tolerance");
  cmd->add_option("--abs-tol", opt.abs_tol, "absolute integration tolerance");
  cmd->add_option("--config", opt.config_path,
                  "flat key = value config file (default: $LOGBLOCK_CONFIG)");
}

lcf_options make_options(const CommonOptions& opt) {
  lcf_options o;
  lcf_options_init(&o);
  o.rel_tol = opt.rel_tol;
  o.abs_tol = opt.abs_tol;
  o.max_span = opt.span;
  return o;
}

void write_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file: " + out_path);
  f << text;
}

std::vector<double> parse_state(const std::string& text, size_t min_n, size_t max_n) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      values.push_back(std::stod(item, &pos));
      while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("cannot parse state component '" + item + "'");
    }
  }
  if (values.size() < min_n || values.size() > max_n)
    throw UsageError("state needs " + std::to_string(min_n) +
                     (max_n > min_n ? ".." + std::to_string(max_n) : "") +
                     " comma-separated components");
  return values;
}

lcf_chart parse_chart(const std::string& name) {
  if (name == "cartesian") return LCF_CHART_CARTESIAN;
  if (name == "polar") return LCF_CHART_POLAR;
  if (name == "regularized") return LCF_CHART_REGULARIZED;
  throw UsageError("unknown chart '" + name +
                   "' (expected cartesian, polar or regularized)");
}

const char* exit_status_name(int status) {
  switch (status) {
    case LCF_EXIT_EXITED: return "exited";
    case LCF_EXIT_ASYMPTOTIC: return "asymptotic";
    case LCF_EXIT_HORIZON: return "horizon_exceeded";
  }
  return "unknown";
}

// ---- subcommand payloads ----------------------------------------------------

int run_simulate(const std::string& chart_name, const std::string& state_text,
                 double h, const CommonOptions& common) {
  const lcf_chart chart = parse_chart(chart_name);
  std::vector<double> state = parse_state(state_text, chart == LCF_CHART_REGULARIZED ? 3 : 4, 4);
  if (state.size() == 3) state.push_back(std::nan(""));  // w from the energy relation

  const lcf_options opt = make_options(common);
  lcf_trajectory* traj = nullptr;
  const lcf_status status =
      lcf_simulate(chart, state.data(), h, common.span, &opt, &traj);
  if (status != LCF_OK) throw_status(status, "simulate");

  const size_t rows = lcf_trajectory_rows(traj);
  const size_t cols = lcf_trajectory_cols(traj);
  std::string text;
  if (common.format == "json") {
    text += "{\n  \"columns\": [";
    for (size_t j = 0; j < cols; ++j)
      text += std::string(j ? ", " : "") + "\"" + lcf_trajectory_column(traj, j) + "\"";
    text += "],\n  \"rows\": [\n";
    for (size_t i = 0; i < rows; ++i) {
      text += "    [";
      for (size_t j = 0; j < cols; ++j)
        text += std::string(j ? ", " : "") + json_number(lcf_trajectory_value(traj, i, j));
      text += i + 1 < rows ? "],\n" : "]\n";
    }
    text += "  ]\n}\n";
  } else {
    for (size_t j = 0; j < cols; ++j)
      text += std::string(j ? "," : "") + lcf_trajectory_column(traj, j);
    text += "\n";
    for (size_t i = 0; i < rows; ++i) {
      for (size_t j = 0; j < cols; ++j)
        text += std::string(j ? "," : "") + fmt17(lcf_trajectory_value(traj, i, j));
      text += "\n";
    }
  }
  lcf_trajectory_free(traj);
  write_text(common.out, text);
  return exit_ok;
}

std::string exit_record_json(const lcf_exit_record& rec) {
  std::string text = "{\n";
  text += "  \"phi0\": " + json_number(rec.phi0) + ",\n";
  text += "  \"psi0\": " + json_number(rec.psi0) + ",\n";
  text += "  \"tau_exit\": " + json_number(rec.tau_exit) + ",\n";
  text += "  \"phi_exit\": " + json_number(rec.phi_exit) + ",\n";
  text += "  \"psi_exit\": " + json_number(rec.psi_exit) + ",\n";
  text += "  \"G\": " + json_number(rec.drift) + ",\n";
  text += "  \"momentum\": " + json_number(rec.momentum) + ",\n";
  text += std::string("  \"status\": \"") + exit_status_name(rec.status) + "\"\n";
  text += "}\n";
  return text;
}

int run_map_block(double h, double delta, double phi0, double psi0,
                  const CommonOptions& common) {
  const lcf_options opt = make_options(common);
  lcf_exit_record rec;
  const lcf_status status = lcf_block_map(h, delta, phi0, psi0, &opt, &rec);
  if (status != LCF_OK) throw_status(status, "map-block");
  write_text(common.out, exit_record_json(rec));
  return exit_ok;
}

std::vector<double> parse_grid(const std::string& spec, bool symmetric) {
  std::vector<double> grid;
  if (spec.rfind("list:", 0) == 0) {
    std::stringstream ss(spec.substr(5));
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      try {
        grid.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw UsageError("bad grid value '" + item + "'");
      }
    }
  } else {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 4 || (parts[0] != "log" && parts[0] != "lin"))
      throw UsageError("grid spec must be log:A:B:N, lin:A:B:N or list:v1,v2,...");
    double a = 0, b = 0;
    long n = 0;
    try {
      a = std::stod(parts[1]);
      b = std::stod(parts[2]);
      n = std::stol(parts[3]);
    } catch (const std::exception&) {
      throw UsageError("bad grid spec '" + spec + "'");
    }
    if (n == 1) {
      grid.push_back(a);
    } else if (n > 1) {
      for (long i = 0; i < n; ++i) {
        const double u = static_cast<double>(i) / (n - 1);
        grid.push_back(parts[0] == "log" ? a * std::pow(b / a, u)
                                         : a + (b - a) * u);
      }
    }
    if (parts[0] == "log" && (a <= 0.0 || b <= 0.0))
      throw UsageError("log grid endpoints must be positive");
  }
  if (symmetric) {
    const size_t n = grid.size();
    for (size_t i = 0; i < n; ++i)
      grid.push_back(2.0 * M_PI - grid[i]);
  }
  if (grid.empty()) throw UsageError("empty scan grid");
  return grid;
}

int run_scan_exit(double h, double delta, const std::string& grid_spec,
                  bool symmetric, double psi0, const CommonOptions& common) {
  const std::vector<double> grid = parse_grid(grid_spec, symmetric);

  double w_delta = 0.0;
  const lcf_status block_status = lcf_block_check(h, delta, &w_delta);
  if (block_status != LCF_OK) throw_status(block_status, "scan-exit");

  const lcf_options opt = make_options(common);
  std::vector<lcf_exit_record> rows(grid.size());
  std::vector<lcf_status> codes(grid.size(), LCF_OK);

  const unsigned pool_size = common.jobs > 0
                                 ? static_cast<unsigned>(common.jobs)
                                 : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<size_t> cursor{0};
  auto worker = [&]() {
    for (size_t i; (i = cursor.fetch_add(1)) < grid.size();)
      codes[i] = lcf_block_map(h, delta, grid[i], psi0, &opt, &rows[i]);
  };
  if (pool_size <= 1 || grid.size() == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < std::min<size_t>(pool_size, grid.size()); ++i)
      pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (size_t i = 0; i < codes.size(); ++i)
    if (codes[i] != LCF_OK) throw_status(codes[i], "scan-exit");

  std::sort(rows.begin(), rows.end(),
            [](const lcf_exit_record& a, const lcf_exit_record& b) {
              return a.phi0 < b.phi0;
            });

  std::string text = "phi0,phi_exit,psi_exit,G,tau_exit,status\n";
  bool bound_violated = false;
  const double bound = 2.0 * delta * delta;
  for (const auto& rec : rows) {
    if (rec.status == LCF_EXIT_EXITED && std::fabs(rec.drift) > bound)
      bound_violated = true;
    text += fmt17(rec.phi0) + "," + fmt17(rec.phi_exit) + "," +
            fmt17(rec.psi_exit) + "," + fmt17(rec.drift) + "," +
            fmt17(rec.tau_exit) + "," + exit_status_name(rec.status) + "\n";
  }
  write_text(common.out, text);
  if (bound_violated) {
    std::cerr << "scan-exit: drift bound |G| <= 2 delta^2 violated\n";
    return exit_check_failed;
  }
  return exit_ok;
}

int run_verify(const std::string& suite, const CommonOptions& common) {
  const lcf_options opt = make_options(common);
  char* report = nullptr;
  int all_passed = 0;
  const int jobs = common.jobs > 0
                       ? common.jobs
                       : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const lcf_status status = lcf_verify(suite.c_str(), &opt, jobs, &report, &all_passed);
  if (status != LCF_OK) throw_status(status, "verify");
  write_text(common.out, report);
  lcf_string_free(report);
  return all_passed ? exit_ok : exit_check_failed;
}

int run_hill(double h, double c, const CommonOptions& common) {
  double r_min = 0.0, r_max = 0.0;
  const lcf_status status = lcf_hill_bounds(h, c, &r_min, &r_max);
  if (status == LCF_ERR_INFEASIBLE) {
    std::cerr << "hill: infeasible energy: h < h_min(c)\n";
    return exit_check_failed;
  }
  if (status != LCF_OK) throw_status(status, "hill");

  std::string hmin_text = "null";
  if (c != 0.0) {
    double hm = 0.0;
    if (lcf_h_min(c, &hm) == LCF_OK) hmin_text = json_number(hm);
  }
  std::string text = "{\n";
  text += "  \"r_min\": " + json_number(r_min) + ",\n";
  text += "  \"r_max\": " + json_number(r_max) + ",\n";
  text += "  \"h_min\": " + hmin_text + "\n}\n";
  write_text(common.out, text);
  return exit_ok;
}

int run_transform(const std::string& from, const std::string& to,
                  const std::string& state_text, const CommonOptions& common) {
  const std::vector<double> in = parse_state(state_text, 4, 4);
  double out[4] = {0, 0, 0, 0};
  const lcf_status status =
      lcf_transform(parse_chart(from), parse_chart(to), in.data(), out);
  if (status != LCF_OK) throw_status(status, "transform");

  std::string text = "{\n  \"from\": \"" + from + "\",\n  \"to\": \"" + to +
                     "\",\n  \"in\": [";
  for (int j = 0; j < 4; ++j) text += std::string(j ? ", " : "") + json_number(in[j]);
  text += "],\n  \"out\": [";
  for (int j = 0; j < 4; ++j) text += std::string(j ? ", " : "") + json_number(out[j]);
  text += "]\n}\n";
  write_text(common.out, text);
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"logarithmic central force problem: simulation, blow-up and "
               "isolating-block verification"};
  app.require_subcommand(1);
  // --h is an energy-level flag throughout; keep help on --help only
  app.set_help_flag("--help", "print this help and exit");

  std::map<std::string, std::string> config;
  try {
    config = gather_config(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }

  // simulate
  auto* sim = add_command(app, "simulate", "integrate one chart's flow and "
                                             "write the trajectory table");
  CommonOptions sim_common;
  std::string sim_chart = "cartesian", sim_state, sim_format = "csv";
  double sim_h = std::nan(""), sim_span = 10.0;
  sim->add_option("--chart", sim_chart, "cartesian, polar or regularized");
  sim->add_option("--state", sim_state,
                  "comma-separated initial state; regularized runs may omit w")
      ->required();
  sim->add_option("--h", sim_h, "energy level (regularized runs)");
  sim->add_option("--span", sim_span, "integration span (t or tau)");
  sim->add_option("--out", sim_common.out, "output path (default stdout)");
  sim->add_option("--format", sim_format, "csv or json");
  add_tolerance_flags(sim, sim_common);

  // map-block
  auto* mb = add_command(app, "map-block", "map one boundary point across "
                                             "the isolating block");
  CommonOptions mb_common;
  double mb_h = 0.0, mb_delta = 0.1, mb_phi0 = std::nan(""), mb_psi0 = 0.0;
  mb->add_option("--h", mb_h, "energy level");
  mb->add_option("--delta", mb_delta, "block radius");
  mb->add_option("--phi0", mb_phi0, "entry angle");
  mb->add_option("--psi0", mb_psi0, "entry momentum direction");
  mb->add_option("--span", mb_common.span, "exit-time horizon in tau");
  mb->add_option("--out", mb_common.out, "output path (default stdout)");
  add_tolerance_flags(mb, mb_common);

  // scan-exit
  auto* scan = add_command(app, "scan-exit", "map a grid of entry angles "
                                               "and write the exit table");
  CommonOptions scan_common;
  double scan_h = 0.0, scan_delta = 0.1, scan_psi0 = 0.0;
  std::string scan_grid;
  bool scan_symmetric = false;
  scan->add_option("--h", scan_h, "energy level");
  scan->add_option("--delta", scan_delta, "block radius");
  scan->add_option("--grid", scan_grid,
                   "entry angles: log:A:B:N, lin:A:B:N or list:v1,v2,...");
  scan->add_flag("--symmetric", scan_symmetric,
                 "also scan the mirrored angles 2 pi - phi0");
  scan->add_option("--psi0", scan_psi0, "entry momentum direction");
  scan->add_option("--span", scan_common.span, "exit-time horizon in tau");
  scan->add_option("--jobs", scan_common.jobs,
                   "worker threads (default: available parallelism)");
  scan->add_option("--out", scan_common.out, "output path (default stdout)");
  add_tolerance_flags(scan, scan_common);

  // verify
  auto* ver = add_command(app, "verify", "run a named check suite and "
                                           "write the JSON report");
  CommonOptions ver_common;
  std::string ver_suite = "all";
  ver->add_option("suite", ver_suite,
                  "conservation, transforms, wilson_yorke, block_map, lemmas "
                  "or all");
  ver->add_option("--jobs", ver_common.jobs, "worker threads for scans");
  ver->add_option("--out", ver_common.out, "output path (default stdout)");
  add_tolerance_flags(ver, ver_common);

  // hill
  auto* hill = add_command(app, "hill", "radial bounds of the energy level");
  CommonOptions hill_common;
  double hill_h = std::nan(""), hill_c = 0.0;
  hill->add_option("--h", hill_h, "energy level");
  hill->add_option("--c", hill_c, "angular momentum");
  hill->add_option("--out", hill_common.out, "output path (default stdout)");
  add_tolerance_flags(hill, hill_common);

  // transform
  auto* tr = add_command(app, "transform", "convert a state between charts");
  CommonOptions tr_common;
  std::string tr_from = "cartesian", tr_to = "regularized", tr_state;
  tr->add_option("--from", tr_from, "source chart");
  tr->add_option("--to", tr_to, "target chart");
  tr->add_option("--state", tr_state, "comma-separated state, 4 components")
      ->required();
  tr->add_option("--out", tr_common.out, "output path (default stdout)");
  add_tolerance_flags(tr, tr_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (sim->parsed()) {
      config_fallback(sim, "--h", config, "h", sim_h);
      config_fallback(sim, "--span", config, "span", sim_span);
      config_fallback(sim, "--rel-tol", config, "rel_tol", sim_common.rel_tol);
      config_fallback(sim, "--abs-tol", config, "abs_tol", sim_common.abs_tol);
      config_fallback_str(sim, "--out", config, "out", sim_common.out);
      config_fallback_str(sim, "--format", config, "format", sim_format);
      sim_common.span = sim_span;
      sim_common.format = sim_format;
      return run_simulate(sim_chart, sim_state, sim_h, sim_common);
    }
    if (mb->parsed()) {
      config_fallback(mb, "--h", config, "h", mb_h);
      config_fallback(mb, "--delta", config, "delta", mb_delta);
      config_fallback(mb, "--phi0", config, "phi0", mb_phi0);
      config_fallback(mb, "--psi0", config, "psi0", mb_psi0);
      config_fallback(mb, "--span", config, "span", mb_common.span);
      config_fallback(mb, "--rel-tol", config, "rel_tol", mb_common.rel_tol);
      config_fallback(mb, "--abs-tol", config, "abs_tol", mb_common.abs_tol);
      config_fallback_str(mb, "--out", config, "out", mb_common.out);
      if (std::isnan(mb_phi0)) throw UsageError("map-block: --phi0 is required");
      return run_map_block(mb_h, mb_delta, mb_phi0, mb_psi0, mb_common);
    }
    if (scan->parsed()) {
      config_fallback(scan, "--h", config, "h", scan_h);
      config_fallback(scan, "--delta", config, "delta", scan_delta);
      config_fallback(scan, "--psi0", config, "psi0", scan_psi0);
      config_fallback(scan, "--span", config, "span", scan_common.span);
      config_fallback(scan, "--jobs", config, "jobs", scan_common.jobs);
      config_fallback(scan, "--rel-tol", config, "rel_tol", scan_common.rel_tol);
      config_fallback(scan, "--abs-tol", config, "abs_tol", scan_common.abs_tol);
      config_fallback_str(scan, "--grid", config, "grid", scan_grid);
      config_fallback_str(scan, "--out", config, "out", scan_common.out);
      if (scan_grid.empty()) throw UsageError("scan-exit: --grid is required");
      return run_scan_exit(scan_h, scan_delta, scan_grid, scan_symmetric,
                           scan_psi0, scan_common);
    }
    if (ver->parsed()) {
      config_fallback(ver, "--jobs", config, "jobs", ver_common.jobs);
      config_fallback(ver, "--rel-tol", config, "rel_tol", ver_common.rel_tol);
      config_fallback(ver, "--abs-tol", config, "abs_tol", ver_common.abs_tol);
      config_fallback_str(ver, "--out", config, "out", ver_common.out);
      return run_verify(ver_suite, ver_common);
    }
    if (hill->parsed()) {
      config_fallback(hill, "--h", config, "h", hill_h);
      config_fallback(hill, "--c", config, "c", hill_c);
      config_fallback_str(hill, "--out", config, "out", hill_common.out);
      if (std::isnan(hill_h)) throw UsageError("hill: --h is required");
      return run_hill(hill_h, hill_c, hill_common);
    }
    if (tr->parsed()) {
      config_fallback_str(tr, "--out", config, "out", tr_common.out);
      return run_transform(tr_from, tr_to, tr_state, tr_common);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const MathError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_check_failed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_check_failed;
  }
  return exit_usage;
}
