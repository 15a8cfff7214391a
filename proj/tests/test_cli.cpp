#include <doctest.h>

#include <sstream>

#include "rdlab/config.hpp"
#include "rdlab/report.hpp"
#include "rdlab/runner.hpp"

using namespace rdlab;

namespace {

std::string csv_of(const ReportBundle& b) {
  std::ostringstream os;
  write_csv(os, b);
  return os.str();
}

ExperimentConfig small_config(const std::string& algebra) {
  ExperimentConfig cfg;
  cfg.algebra = algebra;
  cfg.scale = {1, 2, 4, 8};
  cfg.stage = 3;
  cfg.samples = 4;
  cfg.t_count = 4;
  cfg.t_max = 100.0;
  cfg.seed = 42;
  cfg.jobs = 1;
  cfg.bd_theta_grid = 16;
  cfg.bd_exp_theta_grid = 8;
  cfg.bd_window = 256;
  cfg.bd_window_iters = 80;
  return cfg;
}

}  // namespace

TEST_CASE("config parsing") {
  const std::string text = R"(
# a comment
algebra = "uhf"
scale = [1, 2, 6]          # mixed ratios
lambda = [2.0, 4.5, 9.0]
omega = 1
stage = 2
samples = 7
seed = 99
profile = "flat"
)";
  const auto cfg = ExperimentConfig::parse(text);
  CHECK(cfg.algebra == "uhf");
  CHECK(cfg.scale == std::vector<std::int64_t>{1, 2, 6});
  CHECK(cfg.lambda_rule == "explicit");
  CHECK(cfg.lambda_list.size() == 3);
  CHECK(cfg.samples == 7);
  CHECK(cfg.seed == 99);

  // canonical echo re-parses to the same echo
  const auto again = ExperimentConfig::parse(cfg.echo());
  CHECK(again.echo() == cfg.echo());

  CHECK_THROWS(ExperimentConfig::parse("nonsense = 3\n"));
  CHECK_THROWS(ExperimentConfig::parse("algebra = \"spheres\"\n"));
  CHECK_THROWS(ExperimentConfig::parse("scale = [2, 4]\n"));
  CHECK_THROWS(ExperimentConfig::parse("stage = 9\n"));
}

TEST_CASE("length construction from config") {
  auto cfg = small_config("odometer");
  const auto L = cfg.make_lengths();
  CHECK(L.rd_admissible);
  CHECK(L.fast_growth);
  CHECK(L.at(0) == 2.0);
  CHECK(L.at(3) == 16.0);

  cfg.profile = "damped";
  const auto damp = cfg.make_level_scale(L);
  CHECK(damp[0] == doctest::Approx(0.25));
  CHECK(damp[3] == doctest::Approx(1.0 / 256.0));

  const auto grid = cfg.pbe_t_grid();
  REQUIRE(grid.size() == 4);
  CHECK(grid.front() == doctest::Approx(1.0));
  CHECK(grid.back() == doctest::Approx(100.0));
}

TEST_CASE("emission formats") {
  ReportBundle empty;
  empty.verb = "verify";
  const auto csv = csv_of(empty);
  CHECK(csv == "check,algebra,params,lhs,rhs,margin,tolerance,status,approx,note\n");

  ReportBundle b;
  b.verb = "verify";
  b.reports.push_back(VerificationReport::bound("demo", "odometer", "n=1, x=\"q\"", 1.0,
                                                2.0, 1e-9, false, "note,with comma"));
  b.reports.push_back(VerificationReport::skip("gated", "odometer", "because"));
  const auto text = csv_of(b);
  CHECK(text.find("\"n=1, x=\"\"q\"\"\"") != std::string::npos);
  CHECK(text.find("skip") != std::string::npos);

  std::ostringstream js;
  write_json(js, b);
  CHECK(js.str().find("\"worst_margin\"") != std::string::npos);

  const auto summary = b.summarize();
  CHECK(summary.pass == 1);
  CHECK(summary.skip == 1);
  CHECK(summary.fail == 0);
  CHECK(b.all_passed());
}

TEST_CASE("determinism of report payloads") {
  for (const std::string algebra : {"sequences", "uhf"}) {
    auto cfg = small_config(algebra);
    const auto one = run_verify(cfg);
    const auto two = run_verify(cfg);
    CHECK(csv_of(one) == csv_of(two));

    // parallel execution produces the identical payload
    auto par = cfg;
    par.jobs = 4;
    CHECK(csv_of(run_verify(par)) == csv_of(one));

    // a different seed changes the payload
    auto reseeded = cfg;
    reseeded.seed = 43;
    CHECK(csv_of(run_verify(reseeded)) != csv_of(one));
  }
}

TEST_CASE("verify suite passes on every algebra at toy scale") {
  for (const std::string algebra :
       {"sequences", "odometer", "dihedral", "bunce_deddens", "uhf"}) {
    auto cfg = small_config(algebra);
    cfg.samples = 3;
    const auto bundle = run_verify(cfg);
    const auto s = bundle.summarize();
    INFO(algebra << ": " << csv_of(bundle));
    CHECK(s.fail == 0);
    CHECK(s.pass > 0);
  }
}

TEST_CASE("gating of growth-dependent checks") {
  auto cfg = small_config("odometer");
  cfg.lambda_rule = "explicit";
  cfg.lambda_list = {1.0, 2.0, 3.0, 4.0};  // violates lambda_n >= 2(n+1)
  const auto bundle = run_verify(cfg);
  const auto s = bundle.summarize();
  CHECK(s.fail == 0);
  CHECK(s.skip > 0);
  bool saw_reason = false;
  for (const auto& r : bundle.reports) {
    if (r.status == VerificationReport::Status::Skip &&
        r.note.find("rd_admissible=false") != std::string::npos) {
      saw_reason = true;
    }
  }
  CHECK(saw_reason);
}

TEST_CASE("element serialization round trips") {
  const Scale scale({1, 2, 4, 8});
  Rng rng(5);
  const std::vector<double> flat(4, 1.0);

  {
    SequenceAlgebra alg(3);
    const auto a = alg.random_element(rng, 2, flat);
    const auto b = deserialize_sequence(alg, serialize_element(alg, a));
    CHECK(alg.cstar_norm(alg.sub(a, b)) < 1e-15);
  }
  {
    OdometerAlgebra alg(scale);
    const auto a = alg.random_element(rng, 2, flat);
    const auto b = deserialize_odometer(alg, serialize_element(alg, a));
    CHECK(alg.cstar_norm(alg.sub(a, b)) < 1e-12);
  }
  {
    DihedralAlgebra alg(scale);
    const auto a = alg.random_element(rng, 2, flat);
    const auto b = deserialize_dihedral(alg, serialize_element(alg, a));
    CHECK(alg.cstar_norm(alg.sub(a, b)) < 1e-12);
  }
  {
    BunceDeddensAlgebra alg(scale);
    const auto a = alg.random_element(rng, 2, flat);
    const auto b = deserialize_bd(alg, serialize_element(alg, a));
    double worst = 0.0;
    const auto d = alg.sub(a, b);
    for (const auto& p : d.terms) {
      for (const auto& [k, c] : p) worst = std::max(worst, std::abs(c));
    }
    CHECK(worst < 1e-15);
  }
  {
    UhfAlgebra alg(scale);
    const auto a = alg.random_element(rng, 2, flat);
    const auto b = deserialize_uhf(alg, serialize_element(alg, a));
    CHECK(alg.cstar_norm(alg.sub(a, b)) < 1e-15);
  }
}

TEST_CASE("decompose verb") {
  auto cfg = small_config("odometer");
  OdometerAlgebra alg(Scale(cfg.scale));

  // chi_z + 2*unit at stage 2 for a shell character z
  const auto z = shell(2, alg.scale()).front();
  const auto a = alg.add(alg.character_fn(z, 2), alg.scaled(alg.embed(alg.unit(), 2), 2.0));
  const std::string payload = std::string("{\"algebra\":\"odometer\",\"element\":") +
                              serialize_element(alg, a) + "}";
  const auto bundle = run_decompose(cfg, payload);
  REQUIRE(bundle.all_passed());

  double n0 = -1.0, n1 = -1.0, n2 = -1.0;
  for (const auto& r : bundle.reports) {
    if (r.check == "block_norm" && r.params == "n=0") n0 = r.lhs;
    if (r.check == "block_norm" && r.params == "n=1") n1 = r.lhs;
    if (r.check == "block_norm" && r.params == "n=2") n2 = r.lhs;
  }
  CHECK(n0 == doctest::Approx(2.0));          // the constant part
  CHECK(n1 == doctest::Approx(0.0));
  CHECK(n2 == doctest::Approx(1.0));          // the shell character

  // mismatched algebra is rejected
  CHECK_THROWS(run_decompose(cfg, "{\"algebra\":\"uhf\",\"element\":{}}"));
}
