#include "logblock.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "angles.hpp"
#include "block.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "integrate.hpp"
#include "jsonout.hpp"
#include "regularization.hpp"
#include "simulate.hpp"
#include "verify.hpp"

using namespace logblock;

extern "C" {

struct lcf_trajectory {
  SimTable table;
};

}  // extern "C"

namespace {

lcf_status translate_current_exception() {
  try {
    throw;
  } catch (const infeasible_error&) {
    return LCF_ERR_INFEASIBLE;
  } catch (const std::domain_error&) {
    return LCF_ERR_DOMAIN;
  } catch (const std::invalid_argument&) {
    return LCF_ERR_INVALID_ARGUMENT;
  } catch (const StepSizeUnderflow&) {
    return LCF_ERR_STEP_UNDERFLOW;
  } catch (const MaxStepsExceeded&) {
    return LCF_ERR_MAX_STEPS;
  } catch (const NonFiniteState&) {
    return LCF_ERR_NONFINITE;
  } catch (...) {
    return LCF_ERR_INTERNAL;
  }
}

template <typename Fn>
lcf_status guarded(Fn&& fn) {
  try {
    fn();
    return LCF_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

IntegrationConfig to_config(const lcf_options* opt) {
  IntegrationConfig config;
  if (opt) {
    config.rel_tol = opt->rel_tol;
    config.abs_tol = opt->abs_tol;
    config.initial_step = opt->initial_step;
    config.max_step = opt->max_step;
    config.max_span = opt->max_span;
    config.max_steps = opt->max_steps;
  }
  return config;
}

bool valid_chart(int chart) {
  return chart == LCF_CHART_CARTESIAN || chart == LCF_CHART_POLAR ||
         chart == LCF_CHART_REGULARIZED;
}

}  // namespace

extern "C" {

const char* lcf_status_message(lcf_status code) {
  switch (code) {
    case LCF_OK: return "ok";
    case LCF_ERR_DOMAIN: return "domain error: state at a singular configuration";
    case LCF_ERR_INFEASIBLE: return "infeasible: energy below the floor or radius outside the allowed region";
    case LCF_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LCF_ERR_STEP_UNDERFLOW: return "integration step size underflow";
    case LCF_ERR_MAX_STEPS: return "integration step budget exhausted";
    case LCF_ERR_NONFINITE: return "non-finite state encountered";
    case LCF_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void lcf_options_init(lcf_options* opt) {
  if (!opt) return;
  const IntegrationConfig defaults;
  opt->rel_tol = defaults.rel_tol;
  opt->abs_tol = defaults.abs_tol;
  opt->initial_step = defaults.initial_step;
  opt->max_step = defaults.max_step;
  opt->max_span = defaults.max_span;
  opt->max_steps = defaults.max_steps;
}

lcf_status lcf_energy(const double q[2], const double p[2], double* energy) {
  if (!q || !p || !energy) return LCF_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *energy = hamiltonian_cartesian({{q[0], q[1]}, {p[0], p[1]}});
  });
}

lcf_status lcf_angular_momentum(const double q[2], const double p[2], double* c) {
  if (!q || !p || !c) return LCF_ERR_INVALID_ARGUMENT;
  *c = q[0] * p[1] - q[1] * p[0];
  return LCF_OK;
}

lcf_status lcf_h_min(double c, double* out) {
  if (!out) return LCF_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = h_min(c); });
}

lcf_status lcf_hill_bounds(double h, double c, double* r_min, double* r_max) {
  if (!r_min || !r_max) return LCF_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const HillBounds hb = hill_bounds(h, c);
    *r_min = hb.r_min;
    *r_max = hb.r_max;
  });
}

lcf_status lcf_w_from_energy(double r, double h, double* w) {
  if (!w) return LCF_ERR_INVALID_ARGUMENT;
  return guarded([&] { *w = w_from_energy(r, h); });
}

lcf_status lcf_extended_momentum(const double reg_state[4], double* c) {
  if (!reg_state || !c) return LCF_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *c = extended_momentum(
        {reg_state[0], reg_state[1], reg_state[2], reg_state[3]});
  });
}

lcf_status lcf_transform(lcf_chart from, lcf_chart to, const double in[4],
                         double out[4]) {
  if (!in || !out || !valid_chart(from) || !valid_chart(to))
    return LCF_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    PhysState phys;
    switch (from) {
      case LCF_CHART_CARTESIAN:
        phys = {{in[0], in[1]}, {in[2], in[3]}};
        break;
      case LCF_CHART_POLAR:
        phys = polar_to_cartesian({in[0], in[1], in[2], in[3]});
        break;
      default:
        phys = reg_to_phys({in[0], in[1], in[2], in[3]});
        break;
    }
    switch (to) {
      case LCF_CHART_CARTESIAN: {
        out[0] = phys.q.x;
        out[1] = phys.q.y;
        out[2] = phys.p.x;
        out[3] = phys.p.y;
        break;
      }
      case LCF_CHART_POLAR: {
        const PolarState pol = cartesian_to_polar(phys);
        out[0] = pol.r;
        out[1] = pol.theta;
        out[2] = pol.p_r;
        out[3] = pol.p_theta;
        break;
      }
      default: {
        const RegState reg = phys_to_reg(phys);
        out[0] = reg.r;
        out[1] = reg.phi;
        out[2] = reg.psi;
        out[3] = reg.w;
        break;
      }
    }
  });
}

lcf_status lcf_simulate(lcf_chart chart, const double state[4], double h,
                        double span, const lcf_options* opt,
                        lcf_trajectory** out) {
  if (!state || !out || !valid_chart(chart)) return LCF_ERR_INVALID_ARGUMENT;
  *out = nullptr;
  return guarded([&] {
    const Chart c = chart == LCF_CHART_CARTESIAN ? Chart::cartesian
                    : chart == LCF_CHART_POLAR   ? Chart::polar
                                                 : Chart::regularized;
    auto traj = std::make_unique<lcf_trajectory>();
    traj->table = run_simulation(c, state, h, span, to_config(opt));
    *out = traj.release();
  });
}

size_t lcf_trajectory_rows(const lcf_trajectory* traj) {
  return traj ? traj->table.rows : 0;
}

size_t lcf_trajectory_cols(const lcf_trajectory* traj) {
  return traj ? traj->table.cols() : 0;
}

const char* lcf_trajectory_column(const lcf_trajectory* traj, size_t col) {
  if (!traj || col >= traj->table.cols()) return nullptr;
  return traj->table.columns[col].c_str();
}

double lcf_trajectory_value(const lcf_trajectory* traj, size_t row, size_t col) {
  if (!traj || row >= traj->table.rows || col >= traj->table.cols())
    return std::numeric_limits<double>::quiet_NaN();
  return traj->table.value(row, col);
}

void lcf_trajectory_free(lcf_trajectory* traj) { delete traj; }

lcf_status lcf_block_default_delta(double h, double* delta) {
  if (!delta) return LCF_ERR_INVALID_ARGUMENT;
  return guarded([&] { *delta = default_delta(h); });
}

lcf_status lcf_block_check(double h, double delta, double* w_delta) {
  return guarded([&] {
    const BlockSpec block = make_block(h, delta);
    if (w_delta) *w_delta = block.w_delta;
  });
}

lcf_status lcf_block_map(double h, double delta, double phi0, double psi0,
                         const lcf_options* opt, lcf_exit_record* out) {
  if (!out) return LCF_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const BlockSpec block = make_block(h, delta);
    const ExitRecord rec = block_map(block, phi0, psi0, to_config(opt));
    out->phi0 = rec.phi0;
    out->psi0 = rec.psi0;
    out->tau_exit = rec.tau_exit;
    out->phi_exit = rec.phi_exit;
    out->psi_exit = rec.psi_exit;
    out->drift = rec.drift;
    out->momentum = rec.momentum;
    out->status = rec.status == ExitStatus::exited ? LCF_EXIT_EXITED
                  : rec.status == ExitStatus::asymptotic
                      ? LCF_EXIT_ASYMPTOTIC
                      : LCF_EXIT_HORIZON;
  });
}

lcf_status lcf_verify(const char* suite, const lcf_options* opt, int jobs,
                      char** report_json, int* all_passed) {
  if (!suite || !report_json) return LCF_ERR_INVALID_ARGUMENT;
  *report_json = nullptr;
  return guarded([&] {
    VerifyOptions options;
    options.config = to_config(opt);
    options.jobs = jobs > 0 ? jobs : 1;
    const auto checks = run_suite(suite, options);

    int passed = 0;
    jsonout::Value list = jsonout::Value::array();
    for (const auto& c : checks) {
      passed += c.pass ? 1 : 0;
      jsonout::Value item = jsonout::Value::object();
      item.set("suite", jsonout::Value::string(c.suite));
      item.set("name", jsonout::Value::string(c.name));
      item.set("pass", jsonout::Value::boolean(c.pass));
      item.set("measured", jsonout::Value::number(c.measured));
      item.set("tolerance", jsonout::Value::number(c.tolerance));
      item.set("detail", jsonout::Value::string(c.detail));
      list.push(std::move(item));
    }
    jsonout::Value report = jsonout::Value::object();
    report.set("suite", jsonout::Value::string(suite));
    report.set("checks", std::move(list));
    report.set("passed", jsonout::Value::integer(passed));
    report.set("failed",
               jsonout::Value::integer(static_cast<long long>(checks.size()) - passed));
    report.set("all_pass",
               jsonout::Value::boolean(passed == static_cast<int>(checks.size())));

    const std::string text = report.dump();
    char* buf = static_cast<char*>(::operator new(text.size() + 1));
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *report_json = buf;
    if (all_passed) *all_passed = passed == static_cast<int>(checks.size());
  });
}

void lcf_string_free(char* s) { ::operator delete(s); }

}  // extern "C"
