#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "tcm/tcm.h"

namespace fs = std::filesystem;

namespace {

const char* kSmall =
    "[grid]\nn = 32\n[time]\ndt = 0.01\nhorizon = 0.1\n[model]\neps = 0.1\n"
    "[init]\nkmax = 3\n[output]\nsnapshot_stride = 5\n";

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("tcm_test_capi_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

tcm_config* small() {
  tcm_config* c = nullptr;
  REQUIRE(tcm_config_parse(kSmall, &c) == TCM_OK);
  return c;
}

}  // namespace

TEST_CASE("version and null arguments") {
  CHECK(std::string(tcm_version()).size() > 0);
  CHECK(tcm_config_default(nullptr) == TCM_ERR_CONFIG);
  CHECK(std::string(tcm_last_error_kind()) == "BadParams");
  CHECK(tcm_run(nullptr, nullptr) == TCM_ERR_CONFIG);
  CHECK(tcm_simulation_time(nullptr) == 0.0);
  tcm_config_free(nullptr);
  tcm_simulation_free(nullptr);
}

TEST_CASE("config handles") {
  tcm_config* c = nullptr;
  CHECK(tcm_config_parse("[model]\neps = 0.7\n", &c) == TCM_ERR_CONFIG);
  CHECK(c == nullptr);
  CHECK(std::string(tcm_last_error_kind()) == "ConfigParse");
  CHECK(tcm_config_load("/nonexistent/tcm.cfg", &c) == TCM_ERR_IO);

  c = small();
  CHECK(tcm_config_set(c, "model", "eps", "0.9") == TCM_OK);  // range checked at use
  size_t needed = 0;
  CHECK(tcm_config_to_text(c, nullptr, 0, &needed) == TCM_OK);
  std::vector<char> buf(needed);
  CHECK(tcm_config_to_text(c, buf.data(), buf.size(), &needed) == TCM_OK);
  CHECK(std::string(buf.data()).find("eps = 0.90000000000000002") != std::string::npos);
  CHECK(tcm_config_set(c, "init", "colour", "red") == TCM_ERR_CONFIG);
  CHECK(tcm_config_set(c, "time", "dt", "soon") == TCM_ERR_CONFIG);
  tcm_simulation* s = nullptr;
  CHECK(tcm_simulation_create(c, &s) == TCM_ERR_CONFIG);
  tcm_config_free(c);

  CHECK(tcm_config_default(&c) == TCM_OK);
  tcm_config_free(c);
}

TEST_CASE("simulation handle") {
  tcm_config* c = small();
  tcm_simulation* s = nullptr;
  REQUIRE(tcm_simulation_create(c, &s) == TCM_OK);
  CHECK(tcm_simulation_grid_size(s) == 32);
  double e0 = 0.0, e1 = 0.0;
  CHECK(tcm_simulation_energy(s, &e0) == TCM_OK);
  CHECK(tcm_simulation_step(s, 5) == TCM_OK);
  CHECK(tcm_simulation_time(s) == doctest::Approx(0.05));
  CHECK(tcm_simulation_energy(s, &e1) == TCM_OK);
  CHECK(e1 < e0);
  std::vector<double> theta(32 * 32);
  CHECK(tcm_simulation_field(s, "theta", theta.data(), theta.size()) == TCM_OK);
  double mean = 0.0;
  for (double v : theta) mean += v;
  CHECK(std::abs(mean) < 1e-10);
  CHECK(tcm_simulation_field(s, "pressure", theta.data(), theta.size()) == TCM_ERR_CONFIG);
  CHECK(tcm_simulation_field(s, "u1", theta.data(), 10) == TCM_ERR_CONFIG);

  tcm_config_set(c, "time", "dt", "100");
  tcm_simulation* big = nullptr;
  REQUIRE(tcm_simulation_create(c, &big) == TCM_OK);
  CHECK(tcm_simulation_step(big, 1) == TCM_ERR_NUMERIC);
  CHECK(std::string(tcm_last_error_kind()) == "CflViolation");
  tcm_simulation_free(big);
  tcm_simulation_free(s);
  tcm_config_free(c);
}

TEST_CASE("run, check and tamper detection") {
  tcm_config* c = small();
  const fs::path dir = scratch("run");
  CHECK(tcm_run(c, dir.c_str()) == TCM_OK);
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(tcm_check(dir.c_str(), nullptr) == TCM_OK);
  CHECK(std::string(tcm_last_summary()).find("PASS") != std::string::npos);
  {
    std::ofstream f(dir / "diagnostics.csv", std::ios::app);
    f << "0\n";
  }
  CHECK(tcm_check(dir.c_str(), nullptr) == TCM_ERR_IO);
  CHECK(std::string(tcm_last_error_kind()) == "ChecksumMismatch");
  tcm_config_free(c);
}

TEST_CASE("twin, sweep and gronwall commands") {
  tcm_config* c = small();
  CHECK(tcm_twin(c, 1e-8, "random_band", 7, scratch("twin").c_str()) == TCM_OK);
  CHECK(tcm_twin(c, -1.0, "random_band", 7, nullptr) == TCM_ERR_CONFIG);
  CHECK(tcm_twin(c, 1e-8, "bump", 7, nullptr) == TCM_ERR_CONFIG);

  const double eps[] = {0.2, 0.1, 0.0};
  CHECK(tcm_sweep_eps_levels(c, eps, 3, scratch("sweep").c_str()) == TCM_OK);
  tcm_config* other = small();
  tcm_config_set(other, "grid", "n", "64");
  const tcm_config* levels[] = {c, other};
  CHECK(tcm_sweep_eps(levels, 2, nullptr) == TCM_ERR_CONFIG);
  CHECK(std::string(tcm_last_error_kind()) == "ConfigMismatch");

  const fs::path dir = scratch("gronwall");
  {
    std::ofstream f(dir / "g.csv");
    f << "time,A,B,alpha,beta\n0,1,1,0,1\n0.5,1,1,0,1\n1,1,1,0,1\n";
  }
  CHECK(tcm_gronwall((dir / "g.csv").c_str(), 0, 1.0, 0.0, 0.0, dir.c_str()) == TCM_OK);
  CHECK(std::string(tcm_last_summary()).find("holds") != std::string::npos);
  CHECK(tcm_gronwall((dir / "g.csv").c_str(), 1, 0.0, 1e-6, 0.0, nullptr) == TCM_OK);
  {
    std::ofstream f(dir / "bad.csv");
    f << "time,A,B,alpha,beta\n0,1,1,0,1\n0.5,0.5,1,0,1\n";
  }
  CHECK(tcm_gronwall((dir / "bad.csv").c_str(), 0, 1.0, 0.0, 0.0, nullptr) == TCM_ERR_CONFIG);
  CHECK(std::string(tcm_last_error_kind()) == "BadSeries");
  tcm_config_free(other);
  tcm_config_free(c);
}
