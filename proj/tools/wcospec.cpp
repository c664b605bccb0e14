// wcospec: batch front-end for the weighted-composition-operator spectral
// toolkit.  One job per process; all results land in the output directory.
//
//   wcospec <task> --config path.json [--out dir] [--threads n]
//
// Tasks: factor | radius | spectrum | residual | pseudospec | birkhoff |
// verify-all.  Exit codes: 0 success, 2 refused (finite order or non-elliptic
// map), 3 invalid config, 4 verify-all gate failure.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>

#include "wcospec/cli_run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"spectra of weighted composition operators on weighted Bergman spaces"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  unsigned threads = 0;

  const char* task_names[] = {"factor",     "radius",   "spectrum", "residual",
                              "pseudospec", "birkhoff", "verify-all"};
  for (const char* name : task_names) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "job config (JSON, schema 1)")->required();
    sub->add_option("--out", out_dir, "output directory (overrides config)");
    sub->add_option("--threads", threads, "worker thread cap");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    wcospec::JobConfig cfg = wcospec::parse_config_file(config_path);
    const std::string requested = app.get_subcommands().front()->get_name();
    if (requested != wcospec::to_string(cfg.task)) {
      std::fprintf(stderr, "config task \"%s\" does not match subcommand \"%s\"\n",
                   wcospec::to_string(cfg.task).c_str(), requested.c_str());
      return 3;
    }
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (threads > 0) cfg.knobs.threads = threads;
    return wcospec::run_job(cfg);
  } catch (const wcospec::config_error& e) {
    std::fprintf(stderr, "invalid config: %s\n", e.what());
    return 3;
  } catch (const wcospec::invalid_input& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
