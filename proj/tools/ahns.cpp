// Command-line driver: run / verify / resume.
//
//   ahns run    --config cfg.ini [--out DIR] [--seed N] [--checkpoint-every K]
//   ahns verify [--suite all|lemmas|identities] [--seed N] [--out DIR]
//   ahns resume --checkpoint FILE [--t-end T] [--out DIR] [--checkpoint-every K]
//
// Exit codes: 0 success / all checks pass, 1 usage or I/O error,
// 2 a verification check failed, 3 the solver tripped its blow-up indicator.

#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ahns/commands.hpp"
#include "ahns/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"anisotropic hyperdissipative spectral solver"};
  app.set_version_flag("--version", ahns::kVersion);
  app.require_subcommand(1);

  // run
  std::string run_config;
  std::string run_out = "out";
  std::optional<std::uint64_t> run_seed;
  long long run_ckpt_every = 0;
  CLI::App* run = app.add_subcommand("run", "integrate a configured problem");
  run->add_option("--config", run_config, "config file")->required();
  run->add_option("--out", run_out, "output directory (default: out)");
  run->add_option("--seed", run_seed, "override [initial] seed");
  run->add_option("--checkpoint-every", run_ckpt_every,
                  "write a checkpoint every K steps (multiple of diagnostics every)");

  // verify
  std::string verify_suite = "all";
  std::uint64_t verify_seed = 1;
  std::string verify_out = "out";
  CLI::App* verify = app.add_subcommand("verify", "run the analysis check suites");
  verify->add_option("--suite", verify_suite, "lemmas, identities, or all (default: all)");
  verify->add_option("--seed", verify_seed, "corpus seed (default: 1)");
  verify->add_option("--out", verify_out, "output directory (default: out)");

  // resume
  std::string resume_ckpt;
  std::optional<double> resume_t_end;
  std::optional<std::string> resume_out;
  long long resume_ckpt_every = 0;
  CLI::App* resume = app.add_subcommand("resume", "continue from a checkpoint");
  resume->add_option("--checkpoint", resume_ckpt, "checkpoint file")->required();
  resume->add_option("--t-end", resume_t_end, "extend the run to this time");
  resume->add_option("--out", resume_out,
                     "output directory (default: the checkpoint's directory)");
  resume->add_option("--checkpoint-every", resume_ckpt_every,
                     "write a checkpoint every K steps (multiple of diagnostics every)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      ahns::RunOverrides ov;
      ov.seed = run_seed;
      ov.checkpoint_every = run_ckpt_every;
      return ahns::cmd_run(run_config, run_out, ov);
    }
    if (verify->parsed()) return ahns::cmd_verify(verify_suite, verify_seed, verify_out);
    if (resume->parsed())
      return ahns::cmd_resume(resume_ckpt, resume_t_end, resume_out, resume_ckpt_every);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
