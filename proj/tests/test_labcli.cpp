#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "irrlab/config.hpp"
#include "irrlab/emit.hpp"
#include "irrlab/experiment.hpp"

using namespace irrlab;
namespace fs = std::filesystem;

namespace {

std::string sandbox(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("irrlab_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

}  // namespace

TEST_CASE("toml parsing: values, sections, comments") {
  const TomlTable t = parse_toml(
      "schema = 1\n"
      "kind = \"simulate\"  # trailing comment\n"
      "[model]\n"
      "type = \"fbm\"\n"
      "hurst = 0.3\n"
      "flag = true\n"
      "eps = [1e-6, 1e-8]\n");
  CHECK(t.at("schema").as_int() == 1);
  CHECK(t.at("kind").as_string() == "simulate");
  CHECK(t.at("model.hurst").as_double() == doctest::Approx(0.3));
  CHECK(t.at("model.flag").as_bool());
  CHECK(t.at("model.eps").as_array().size() == 2);
  CHECK_THROWS_AS(parse_toml("a = 1\na = 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_toml("nonsense line\n"), std::invalid_argument);
}

TEST_CASE("config: schema is required and unknown keys are rejected by name") {
  CHECK_THROWS_AS(load_config(parse_toml("kind = \"simulate\"\n")), std::invalid_argument);
  try {
    load_config(parse_toml("schema = 1\n[model]\nhurts = 0.5\n"));
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("model.hurts") != std::string::npos);
  }
  CHECK_THROWS_AS(load_config(parse_toml("schema = 2\n")), std::invalid_argument);
}

TEST_CASE("config defaults are documented values") {
  const ExperimentConfig cfg = load_config(parse_toml("schema = 1\n"));
  CHECK(cfg.n == 16384);
  CHECK(cfg.horizon == 1.0);
  CHECK(cfg.levels == 8);
  CHECK(cfg.j_max == 18);
  CHECK(cfg.q_min == 1.0);
  CHECK(cfg.q_fit_min == 8.0);
  CHECK(cfg.q_fit_max == 512.0);
  CHECK(cfg.gamma_grid().size() == 10);
  CHECK(cfg.format == "both");
}

TEST_CASE("simulate experiment is deterministic: identical checksums on re-run") {
  const std::string dir = sandbox("determinism");
  TomlTable t = parse_toml(
      "schema = 1\nkind = \"simulate\"\n[model]\ntype = \"fbm\"\nhurst = 0.5\n[grid]\nn = 1024\n[mc]\nseed = "
      "7\nsamples = 2\n");
  t["output.dir"] = TomlValue{dir};
  const RunManifest a = run_experiment(t);
  REQUIRE(a.ok);
  REQUIRE(a.files.size() >= 2);
  const RunManifest b = run_experiment(t);
  REQUIRE(b.files.size() == a.files.size());
  for (std::size_t i = 0; i < a.files.size(); ++i) {
    CHECK(a.files[i].path == b.files[i].path);
    CHECK(a.files[i].fnv64 == b.files[i].fnv64);
  }
  CHECK(a.config_hash == b.config_hash);
  fs::remove_all(dir);
}

TEST_CASE("manifest lists every artifact with checksum") {
  const std::string dir = sandbox("manifest");
  TomlTable t = parse_toml(
      "schema = 1\nkind = \"simulate\"\n[model]\ntype = \"brownian\"\n[grid]\nn = 512\n[mc]\nseed = 3\n");
  t["output.dir"] = TomlValue{dir};
  const RunManifest man = run_experiment(t);
  REQUIRE(man.ok);
  std::size_t artifacts = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().filename() == "manifest.json") continue;
    ++artifacts;
    bool listed = false;
    for (const auto& f : man.files)
      if (fs::path(f.path).filename() == entry.path().filename()) listed = true;
    CHECK(listed);
  }
  CHECK(artifacts == man.files.size());
  fs::remove_all(dir);
}

TEST_CASE("irregularity pipeline emits report JSON and shell CSV") {
  const std::string dir = sandbox("irregularity");
  TomlTable t = parse_toml(
      "schema = 1\nkind = \"irregularity\"\n[model]\ntype = \"fbm\"\nhurst = 0.5\n[grid]\nn = 4096\n[mc]\nseed "
      "= 11\n");
  t["output.dir"] = TomlValue{dir};
  const RunManifest man = run_experiment(t);
  REQUIRE(man.ok);
  CHECK(fs::exists(fs::path(dir) / "irregularity.json"));
  CHECK(fs::exists(fs::path(dir) / "envelopes.csv"));
  std::ifstream in(fs::path(dir) / "envelopes.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "gamma,q,envelope");
  fs::remove_all(dir);
}

TEST_CASE("malformed config: diagnostic names the key, no artifacts") {
  const std::string dir = sandbox("badkey");
  TomlTable t = parse_toml("schema = 1\nkind = \"simulate\"\n[grid]\nnn = 64\n");
  t["output.dir"] = TomlValue{dir};
  bool threw = false;
  try {
    run_experiment(t);
  } catch (const std::invalid_argument& e) {
    threw = true;
    CHECK(std::string(e.what()).find("grid.nn") != std::string::npos);
  }
  CHECK(threw);
  CHECK_FALSE(fs::exists(fs::path(dir) / "manifest.json"));
  fs::remove_all(dir);
}

TEST_CASE("prevalence harness: empty run exits cleanly") {
  GaussianModel noise;
  noise.kind = GaussianKind::fbm;
  noise.hurst = 0.5;
  const SampledPath zero = make_shift("zero", 512, 1.0, 1);
  const PrevalenceReport rep = prevalence_harness(zero, noise, 512, 1.0, 0, 0.25, 5);
  CHECK(rep.samples == 0);
  CHECK(rep.passed == 0);
}

TEST_CASE("prevalence harness: small smoke run has high pass rate") {
  GaussianModel noise;
  noise.kind = GaussianKind::fbm;
  noise.hurst = 0.5;
  const SampledPath shift = make_shift("weierstrass", 1 << 13, 1.0, 1);
  const PrevalenceReport rep = prevalence_harness(shift, noise, 1 << 13, 1.0, 6, 0.25, 7, 4, 32.0, 182.0);
  CHECK(rep.samples == 6);
  CHECK(rep.target_rho == doctest::Approx(1.0));
  CHECK(rep.pass_rate >= 0.5);  // full-strength bound enforced in acceptance
}

TEST_CASE("shift library shapes") {
  for (const char* name : {"zero", "polynomial", "trigonometric", "weierstrass"}) {
    const SampledPath s = make_shift(name, 256, 1.0, 1);
    CHECK(s.steps() == 256);
  }
  CHECK_THROWS_AS(make_shift("unknown", 256, 1.0, 1), std::invalid_argument);
}

TEST_CASE("moments pipeline writes per-shell CSV") {
  const std::string dir = sandbox("moments");
  TomlTable t = parse_toml(
      "schema = 1\nkind = \"moments\"\n[model]\ntype = \"brownian\"\n[grid]\nn = 2048\nj_max = 12\n[mc]\nsamples"
      " = 240\nseed = 13\n[estimator]\nq_fit_min = 4.0\nq_fit_max = 64.0\n");
  t["output.dir"] = TomlValue{dir};
  const RunManifest man = run_experiment(t);
  REQUIRE(man.ok);
  CHECK(fs::exists(fs::path(dir) / "moments.csv"));
  CHECK(fs::exists(fs::path(dir) / "moments.json"));
  fs::remove_all(dir);
}

TEST_CASE("geometry pipeline emits tidy curves") {
  const std::string dir = sandbox("geometry");
  TomlTable t = parse_toml(
      "schema = 1\nkind = \"geometry\"\n[model]\ntype = \"fbm\"\nhurst = 0.5\n[grid]\nn = 4096\n[mc]\nseed = "
      "17\n");
  t["output.dir"] = TomlValue{dir};
  const RunManifest man = run_experiment(t);
  REQUIRE(man.ok);
  for (const char* f : {"density_curve.csv", "roughness.csv", "p_variation.csv", "occupation_window.csv",
                        "dimensions.json"})
    CHECK(fs::exists(fs::path(dir) / f));
  fs::remove_all(dir);
}

TEST_CASE("pipeline composition: irregularity on an emitted path file") {
  const std::string dir = sandbox("compose");
  TomlTable sim = parse_toml(
      "schema = 1\nkind = \"simulate\"\n[model]\ntype = \"fbm\"\nhurst = 0.5\n[grid]\nn = 4096\n[mc]\nseed"
      " = 21\n");
  sim["output.dir"] = TomlValue{dir};
  const RunManifest m1 = run_experiment(sim);
  REQUIRE(m1.ok);

  TomlTable irr = parse_toml("schema = 1\nkind = \"irregularity\"\n[model]\ntype = \"path_file\"\n");
  irr["model.path_file"] = TomlValue{(fs::path(dir) / "path_0000.bin").string()};
  irr["output.dir"] = TomlValue{dir + "_irr"};
  const RunManifest m2 = run_experiment(irr);
  REQUIRE(m2.ok);
  CHECK(fs::exists(fs::path(dir + "_irr") / "irregularity.json"));
  fs::remove_all(dir);
  fs::remove_all(dir + "_irr");
}

TEST_CASE("format_double writes 17 significant digits") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.1) == "0.10000000000000001");
}
