#include "doctest.h"
#include "stcomp/baselines.hpp"
#include "stcomp/errors.hpp"

using namespace stcomp;

TEST_SUITE("baselines") {
  TEST_CASE("fixed transmit power") {
    const ScenarioConfig cfg;
    for (std::uint64_t s = 0; s < 2; ++s) {
      const NetworkInstance inst = sample_instance(cfg, s);
      const AlgorithmResult ftp = run_ftp(inst, cfg);
      for (int k = 0; k < inst.K; ++k) CHECK(ftp.plan.p(k) == cfg.p_max / 2.0);
      CHECK(ftp.cost.xi >= run_algorithm1(inst, cfg).cost.xi - 1e-6);
    }
  }

  TEST_CASE("fixed transmit power without ground users") {
    ScenarioConfig cfg;
    cfg.K = 0;
    const NetworkInstance inst = sample_instance(cfg, 3);
    const AlgorithmResult r = run_ftp(inst, cfg);
    CHECK(r.cost.E_gg.size() == 0);
    CHECK(r.cost.xi == doctest::Approx(cfg.rho_s * r.cost.E_ss.sum()).epsilon(1e-12));
  }

  TEST_CASE("zero-forcing receivers") {
    const ScenarioConfig cfg;
    const NetworkInstance inst = sample_instance(cfg, 1);
    const AlgorithmResult z = run_zfbf(inst, cfg);
    CHECK(check_feasibility(inst, z.plan, cfg).empty());
    CHECK(z.cost.xi >= run_algorithm1(inst, cfg).cost.xi - 1e-6);
  }

  TEST_CASE("equal compute shares") {
    const ScenarioConfig cfg;
    const NetworkInstance inst = sample_instance(cfg, 0);
    const AlgorithmResult r = run_acr(inst, cfg);
    for (int k = 0; k < inst.K; ++k) {
      const int j = r.plan.gue_choice(k);
      const double expect = j < inst.M ? cfg.f_gro / inst.K : cfg.f_sat / (inst.K + inst.L);
      CHECK(r.plan.gue_f(k, j) == expect);
    }
    for (int l = 0; l < inst.L; ++l) CHECK(r.plan.f_sat_s(l, r.plan.sue_choice(l)) == cfg.f_sat / (inst.K + inst.L));
  }

  TEST_CASE("random offloading is seeded") {
    const ScenarioConfig cfg;
    const NetworkInstance inst = sample_instance(cfg, 2);
    CHECK(random_decision(inst, cfg, 5) == random_decision(inst, cfg, 5));
    const AlgorithmResult a = run_ro(inst, cfg, 5), b = run_ro(inst, cfg, 5);
    CHECK(a.cost.xi == b.cost.xi);
    CHECK(decision_of(a.plan) == random_decision(inst, cfg, 5));

    ScenarioConfig wild = cfg;
    wild.ro_random_plan = true;
    try {
      const AlgorithmResult w = run_ro(inst, wild, 5);
      CHECK(check_feasibility(inst, w.plan, wild).empty());
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ScenarioInfeasible);
    }
  }

  TEST_CASE("particle swarm") {
    ScenarioConfig cfg;
    cfg.hco_swarm = 10;
    cfg.hco_iters = 15;
    const NetworkInstance inst = sample_instance(cfg, 0);
    const HcoResult a = run_hco(inst, cfg, 9), b = run_hco(inst, cfg, 9);
    CHECK(a.result.cost.xi == b.result.cost.xi);
    CHECK(a.best_trace == b.best_trace);
    for (size_t i = 1; i < a.best_trace.size(); ++i) CHECK(a.best_trace[i] <= a.best_trace[i - 1]);
    CHECK(check_feasibility(inst, a.result.plan, cfg).empty());
  }
}
