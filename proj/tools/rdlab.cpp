#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rdlab/config.hpp"
#include "rdlab/report.hpp"
#include "rdlab/runner.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::string format = "both";
  long long seed = -1;
  int jobs = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", args.seed, "override the config seed");
  cmd->add_option("--jobs", args.jobs, "worker threads (0 = all, 1 = serial)");
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--format", args.format, "report format")
      ->check(CLI::IsMember({"json", "csv", "both"}));
}

rdlab::ExperimentConfig load_config(const CommonArgs& args) {
  rdlab::ExperimentConfig cfg;
  if (!args.config_path.empty()) cfg = rdlab::ExperimentConfig::from_file(args.config_path);
  if (args.seed >= 0) cfg.seed = static_cast<std::uint64_t>(args.seed);
  if (args.jobs >= 0) cfg.jobs = args.jobs;
  cfg.validate();
  return cfg;
}

int finish(const rdlab::ReportBundle& bundle, const CommonArgs& args) {
  const auto paths = rdlab::emit(bundle, args.out_dir, args.format, bundle.verb);
  const auto s = bundle.summarize();
  std::cout << bundle.verb << " [" << bundle.algebra << "]: " << s.pass << " pass, " << s.fail
            << " fail, " << s.skip << " skip; worst margin " << s.worst_margin << "; "
            << bundle.wall_ms / 1000.0 << " s\n";
  for (const auto& r : bundle.reports) {
    if (r.status == rdlab::VerificationReport::Status::Fail) {
      std::cout << "  FAIL " << r.check << " (" << r.params << ") lhs=" << r.lhs
                << " rhs=" << r.rhs << " tol=" << r.tolerance << "\n";
    }
  }
  for (const auto& p : paths) std::cout << "  wrote " << p << "\n";
  return bundle.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-stage filtration laboratory"};
  app.require_subcommand(1);

  CommonArgs verify_args, pbe_args, equiv_args, dec_args;
  std::string element_path;

  auto* verify = app.add_subcommand("verify", "run the full check suite");
  add_common(verify, verify_args);
  auto* pbe = app.add_subcommand("pbe", "exponential growth experiment");
  add_common(pbe, pbe_args);
  auto* equiv = app.add_subcommand("equiv", "norm equivalence checks");
  add_common(equiv, equiv_args);
  auto* dec = app.add_subcommand("decompose", "block norms and weighted-norm table of an element");
  add_common(dec, dec_args);
  dec->add_option("--element", element_path, "serialized element (JSON)")
      ->required()
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return finish(rdlab::run_verify(load_config(verify_args)), verify_args);
    if (pbe->parsed()) return finish(rdlab::run_pbe(load_config(pbe_args)), pbe_args);
    if (equiv->parsed()) return finish(rdlab::run_equiv(load_config(equiv_args)), equiv_args);
    if (dec->parsed()) {
      std::ifstream in(element_path);
      std::ostringstream ss;
      ss << in.rdbuf();
      return finish(rdlab::run_decompose(load_config(dec_args), ss.str()), dec_args);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
