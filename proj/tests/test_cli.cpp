// Drives the command-line binary end to end.  The binary path arrives as the
// first program argument (set by the build).
#define DOCTEST_CONFIG_IMPLEMENT
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

std::string g_binary;

struct RunResult {
  std::string out;
  int code = -1;
};

RunResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + g_binary + " " +
                          args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    result.out.append(buf.data(), n);
  const int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = "/tmp/logblock_test_" + name;
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("hill bounds as JSON") {
  const RunResult res = run("hill --h 0 --c 0");
  CHECK(res.code == 0);
  CHECK(res.out.find("\"r_min\": 0") != std::string::npos);
  CHECK(res.out.find("\"r_max\": 1") != std::string::npos);
  CHECK(res.out.find("\"h_min\": null") != std::string::npos);

  const RunResult degen = run("hill --h 0.5 --c 1");
  CHECK(degen.code == 0);
  CHECK(degen.out.find("\"h_min\": 0.5") != std::string::npos);

  // infeasible energy is a mathematical failure, exit code 1
  CHECK(run("hill --h 0 --c 1").code == 1);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("").code == 2);
  CHECK(run("hill").code == 2);                       // missing --h
  CHECK(run("simulate --state 1,0,0,1 --chart bogus").code == 2);
  CHECK(run("scan-exit --grid list:").code == 2);     // empty grid
  CHECK(run("transform --state 1,2,3").code == 2);    // short state
}

TEST_CASE("map-block record") {
  const RunResult res = run("map-block --h 0 --delta 0.1 --phi0 0");
  CHECK(res.code == 0);
  CHECK(res.out.find("\"status\": \"asymptotic\"") != std::string::npos);
  CHECK(res.out.find("\"tau_exit\": \"inf\"") != std::string::npos);

  const RunResult entry =
      run("map-block --h 0 --delta 0.1 --phi0 0.78539816339744828");
  CHECK(entry.code == 0);
  CHECK(entry.out.find("\"status\": \"exited\"") != std::string::npos);
  CHECK(entry.out.find("\"phi_exit\": 2.356194") != std::string::npos);
}

TEST_CASE("scan-exit CSV table is deterministic") {
  const std::string args = "scan-exit --h 0 --delta 0.1 --grid log:1e-1:1e-3:3";
  const RunResult a = run(args);
  const RunResult b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  std::istringstream lines(a.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "phi0,phi_exit,psi_exit,G,tau_exit,status");
  int rows = 0;
  for (std::string line; std::getline(lines, line);)
    if (!line.empty()) ++rows;
  CHECK(rows == 3);
  CHECK(a.out.find("exited") != std::string::npos);
}

TEST_CASE("scan-exit symmetric grids include mirrored angles") {
  const RunResult res =
      run("scan-exit --h 0 --delta 0.1 --grid list:0.3 --symmetric --jobs 2");
  CHECK(res.code == 0);
  std::istringstream lines(res.out);
  std::string line;
  std::getline(lines, line);  // header
  int rows = 0;
  double g[2] = {0, 0};
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string field;
    for (int j = 0; j <= 3; ++j) std::getline(fields, field, ',');
    g[rows] = std::stod(field);
    ++rows;
  }
  REQUIRE(rows == 2);
  CHECK(std::fabs(g[0] + g[1]) < 1e-9);  // drift is antisymmetric
}

TEST_CASE("simulate writes the trajectory table") {
  // circular orbit, ten periods: the radius column stays put
  const RunResult res = run(
      "simulate --chart cartesian --state 1,0,0,1 --span 62.83185307179586");
  CHECK(res.code == 0);
  std::istringstream lines(res.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "t,qx,qy,px,py,energy_residual,momentum_residual");
  for (std::string line; std::getline(lines, line);) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string t, qx, qy;
    std::getline(fields, t, ',');
    std::getline(fields, qx, ',');
    std::getline(fields, qy, ',');
    CHECK(std::fabs(std::hypot(std::stod(qx), std::stod(qy)) - 1.0) < 1e-6);
  }
}

TEST_CASE("simulate follows an asymptotic entry to the collision torus") {
  const RunResult res = run(
      "simulate --chart regularized --state 0.1,0,1 --h 0 --span 1e12");
  CHECK(res.code == 0);
  std::istringstream lines(res.out);
  std::string line, last;
  std::getline(lines, line);  // header
  while (std::getline(lines, line))
    if (!line.empty()) last = line;
  std::istringstream fields(last);
  std::string tau, r, phi, psi, w;
  std::getline(fields, tau, ',');
  std::getline(fields, r, ',');
  std::getline(fields, phi, ',');
  std::getline(fields, psi, ',');
  std::getline(fields, w, ',');
  CHECK(std::stod(r) < 1e-6);
  CHECK(psi == "1");  // frozen along the axis orbit
  CHECK(std::fabs(std::exp(2.0 * std::stod(w)) - 2.0) < 1e-6);
}

TEST_CASE("simulate on the collision manifold freezes psi") {
  const RunResult res = run(
      "simulate --chart regularized --state 0,1.5707963267948966,1 --h 0 "
      "--span 0.5");
  CHECK(res.code == 0);
  std::istringstream lines(res.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "tau,r,phi,psi,w,energy_residual,momentum_residual,t_phys");
  for (std::string line; std::getline(lines, line);) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string field;
    std::getline(fields, field, ',');  // tau
    std::getline(fields, field, ',');  // r
    CHECK(field == "0");
    std::getline(fields, field, ',');  // phi
    std::getline(fields, field, ',');  // psi
    CHECK(field == "1");
    for (int j = 0; j < 4; ++j) std::getline(fields, field, ',');  // ... t_phys
    CHECK(field == "nan");
  }
}

TEST_CASE("transform converts between charts") {
  const RunResult res = run(
      "transform --from polar --to cartesian --state "
      "2,1.5707963267948966,1,0");
  CHECK(res.code == 0);
  CHECK(res.out.find("\"out\": [") != std::string::npos);
  // q = (0, 2), p = (0, 1) up to rounding
  CHECK(res.out.find("2,") != std::string::npos);
}

TEST_CASE("verify emits a report and the exit code tracks the checks") {
  const RunResult res = run("verify transforms");
  CHECK(res.code == 0);
  CHECK(res.out.find("\"all_pass\": true") != std::string::npos);

  CHECK(run("verify bogus_suite").code == 2);
}

TEST_CASE("config file supplies defaults, flags win") {
  const std::string path = write_temp("config_a", "h = 0.5\nc = 1\n");
  const RunResult via_config = run("hill --config " + path);
  CHECK(via_config.code == 0);
  CHECK(via_config.out.find("\"h_min\": 0.5") != std::string::npos);

  // explicit flag overrides the file
  const RunResult flag_wins = run("hill --config " + path + " --c 0.25");
  CHECK(flag_wins.code == 0);
  CHECK(flag_wins.out.find("\"h_min\": -0.88") != std::string::npos);

  // the environment variable names a default config
  const RunResult via_env = run("hill", "LOGBLOCK_CONFIG=" + path);
  CHECK(via_env.code == 0);
  CHECK(via_env.out.find("\"h_min\": 0.5") != std::string::npos);

  const std::string bad = write_temp("config_b", "volume = 11\n");
  CHECK(run("hill --h 0 --c 0 --config " + bad).code == 2);
}

int main(int argc, char** argv) {
  if (argc > 1) g_binary = argv[1];
  if (g_binary.empty()) {
    std::fprintf(stderr, "usage: test_cli <path-to-binary>\n");
    return 1;
  }
  doctest::Context ctx;
  return ctx.run();
}
