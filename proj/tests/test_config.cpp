#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "hypsig/config.hpp"
#include "hypsig/errors.hpp"
#include "hypsig/runner.hpp"

using namespace hypsig;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const fs::path p = fs::temp_directory_path() / "hypsig_test";
  fs::create_directories(p);
  return p;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path p = temp_dir() / name;
  std::ofstream out(p);
  out << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("mode is required") {
  const fs::path p = write_file("empty.cfg", "");
  try {
    parse_config_file(p.string());
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("mode") != std::string::npos);
  }
}

TEST_CASE("contract violations name the key") {
  const fs::path p = write_file("bad_beta.cfg", "mode = simulate\nbeta = -1\n");
  try {
    parse_config_file(p.string());
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("beta") != std::string::npos);
  }

  const fs::path q = write_file("unknown.cfg", "mode = simulate\nfrobnicate = 1\n");
  try {
    parse_config_file(q.string());
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("frobnicate") != std::string::npos);
  }
}

TEST_CASE("sections and comments parse; flags win over file") {
  const fs::path p = write_file("full.cfg",
                                "[model]\n"
                                "mode = simulate   # batch mode\n"
                                "beta = 1.5\n"
                                "dims = 8, 8\n"
                                "[run]\n"
                                "sweeps = 100\n");
  ExperimentConfig c = parse_config_file(p.string());
  CHECK(c.beta == 1.5);
  CHECK(c.dims == std::vector<int>{8, 8});
  CHECK(c.sweeps == 100);

  c = apply_overrides(c, {{"beta", "2.25"}});
  CHECK(c.beta == 2.25);
}

TEST_CASE("effective config round-trips through JSON") {
  ExperimentConfig c;
  c.mode = Mode::ChainExact;
  c.beta = 0.75;
  c.alpha_grid = {0.0, 0.881373587019543};
  c.chain_lengths = {4, 12, 64};
  c.out_dir = "artifacts";
  c.validate();
  const std::string first = c.to_json();
  const ExperimentConfig back = ExperimentConfig::from_json(first);
  CHECK(back.to_json() == first);
}

TEST_CASE("json config files are accepted") {
  ExperimentConfig c;
  c.mode = Mode::Spectrum;
  c.target_dim = 3;
  const fs::path p = write_file("conf.json", c.to_json());
  const ExperimentConfig parsed = parse_config_file(p.string());
  CHECK(parsed.mode == Mode::Spectrum);
  CHECK(parsed.target_dim == 3);
}

TEST_CASE("simulate with zero sweeps writes valid empty artifacts") {
  ExperimentConfig c;
  c.mode = Mode::Simulate;
  c.dims = {8};
  c.sweeps = 0;
  c.thermalization = 0;
  c.out_dir = (temp_dir() / "empty_run").string();
  run_experiment(c);
  CHECK(fs::exists(fs::path(c.out_dir) / "summary.json"));
  CHECK(fs::exists(fs::path(c.out_dir) / "manifest.json"));
}

TEST_CASE("chain_exact emits the alpha = 0 symmetry row and reruns identically") {
  ExperimentConfig c;
  c.mode = Mode::ChainExact;
  c.beta = 1.0;
  c.alpha_grid = {0.0, 1.0};
  c.chain_lengths = {2, 8};
  c.n_modes = 2;
  c.out_dir = (temp_dir() / "chain_run").string();
  run_experiment(c);

  const std::string body = slurp(fs::path(c.out_dir) / "chain_te.csv");
  // alpha = 0 rows carry Te = 0 within 1e-10
  std::istringstream is(body);
  std::string line;
  std::getline(is, line);  // header
  bool saw_alpha0 = false;
  while (std::getline(is, line)) {
    int L;
    double alpha, beta, te, limit, err;
    REQUIRE(std::sscanf(line.c_str(), "%d,%lf,%lf,%lf,%lf,%lf", &L, &alpha,
                        &beta, &te, &limit, &err) == 6);
    if (alpha == 0.0) {
      saw_alpha0 = true;
      CHECK(std::abs(te) <= 1e-10);
      CHECK(std::abs(limit) <= 1e-15);
    }
  }
  CHECK(saw_alpha0);

  // byte-identical CSV on rerun
  run_experiment(c);
  CHECK(slurp(fs::path(c.out_dir) / "chain_te.csv") == body);
}
