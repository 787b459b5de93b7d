#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "irrlab/config.hpp"
#include "irrlab/experiment.hpp"
#include "irrlab/parallel.hpp"

namespace {

int run_kind(const std::string& kind, const std::string& config_file, std::uint64_t seed, bool seed_set,
             const std::string& out_dir, const std::string& format, int threads) {
  irrlab::set_thread_count(threads);
  irrlab::TomlTable table;
  if (!config_file.empty()) {
    table = irrlab::parse_toml_file(config_file);
  } else {
    table["schema"] = irrlab::TomlValue{std::int64_t(1)};
  }
  if (!kind.empty()) table["kind"] = irrlab::TomlValue{kind};
  if (seed_set) table["mc.seed"] = irrlab::TomlValue{static_cast<std::int64_t>(seed)};
  if (!out_dir.empty()) table["output.dir"] = irrlab::TomlValue{out_dir};
  if (!format.empty()) table["output.format"] = irrlab::TomlValue{format};

  const irrlab::RunManifest man = irrlab::run_experiment(table);
  for (const auto& s : man.stages) std::printf("%s\n", s.c_str());
  for (const auto& w : man.warnings) std::printf("warning: %s\n", w.c_str());
  std::printf("%zu artifact(s), config %s\n", man.files.size(), man.config_hash.c_str());
  return man.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for oscillatory path statistics"};
  app.require_subcommand(1);

  std::string config_file;
  std::string out_dir;
  std::string format;
  std::uint64_t seed = 0;
  int threads = 0;
  bool seed_set = false;

  app.add_option("--config", config_file, "TOML-style config file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "root seed (overrides config)")->each([&](const std::string&) { seed_set = true; });
  app.add_option("--out", out_dir, "output directory (overrides config)");
  app.add_option("--format", format, "csv | json | both");
  app.add_option("--threads", threads, "worker threads; affects speed only, never output");

  for (const std::string kind :
       {"simulate", "phi", "irregularity", "average", "ode", "geometry", "prevalence", "moments"}) {
    CLI::App* sub = app.add_subcommand(kind, "run the " + kind + " pipeline");
    sub->fallthrough();  // global flags may follow the subcommand
  }

  CLI11_PARSE(app, argc, argv);

  const std::string kind = app.get_subcommands().front()->get_name();
  try {
    return run_kind(kind, config_file, seed, seed_set, out_dir, format, threads);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
