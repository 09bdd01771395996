#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "multicover/oracle.hpp"

using namespace multicover;

TEST_CASE("exact_mcmc on named instances") {
  SECTION("worked fixture optimum") {
    OracleReport rep = exact_mcmc(testutil::make_e1(2));
    CHECK_FALSE(rep.budget_exceeded);
    CHECK(rep.cost == 4.0);
    CHECK(rep.radii == RadiusAssignment{1.0, 3.0});
    CHECK(rep.nodes >= 1);
    CHECK(rep.instance_fingerprint.size() == 16);
  }
  SECTION("all demands zero") {
    OracleReport rep = exact_mcmc(testutil::make_e1(0));
    CHECK(rep.cost == 0.0);
    CHECK(rep.radii == RadiusAssignment{0.0, 0.0});
  }
  SECTION("co-located pair costs nothing") {
    Instance inst;
    inst.dim = 1;
    inst.servers = {{3}};
    inst.clients = {{3}};
    inst.kappa = {1};
    CHECK(exact_mcmc(inst).cost == 0.0);
  }
}

TEST_CASE("exact_mcmc matches full enumeration on tiny instances") {
  SplitMix64 rng(606);
  for (int round = 0; round < 40; ++round) {
    Instance inst = testutil::random_instance(rng, 4, 5);
    auto [brute_cost, brute_r] =
        testutil::enumerate_best(inst, candidate_radii(inst).per_server);
    OracleReport rep = exact_mcmc(inst);
    REQUIRE_FALSE(rep.budget_exceeded);
    REQUIRE(rep.cost ==
            Catch::Approx(brute_cost).epsilon(1e-12).margin(1e-12));
    REQUIRE(is_feasible(inst, rep.radii));
    const auto cand = candidate_radii(inst).per_server;
    for (std::size_t i = 0; i < rep.radii.size(); ++i)
      REQUIRE(std::find(cand[i].begin(), cand[i].end(), rep.radii[i]) !=
              cand[i].end());
  }
}

TEST_CASE("exact_outer_cover on the fixture") {
  Instance inst = testutil::make_e1(2);
  SECTION("demand 2 costs 3 either way") {
    OracleReport rep = exact_outer_cover(inst, {0}, {2});
    CHECK(rep.cost == 3.0);
  }
  SECTION("demand 1 uses the near server at radius 1") {
    OracleReport rep = exact_outer_cover(inst, {0}, {1});
    CHECK(rep.cost == 1.0);
  }
  SECTION("empty X' costs nothing") {
    OracleReport rep = exact_outer_cover(inst, {}, {2});
    CHECK(rep.cost == 0.0);
    CHECK(rep.radii == RadiusAssignment{0.0, 0.0});
  }
}

TEST_CASE("exact_outer_cover matches enumeration over eligible radii") {
  SplitMix64 rng(1001);
  for (int round = 0; round < 30; ++round) {
    Instance inst = testutil::random_instance(rng, 4, 5);
    NeighborTable nt = NeighborTable::build(inst, Norm::linf);
    std::vector<int> x_prime;
    for (std::size_t j = 0; j < inst.kappa.size(); ++j)
      if (inst.kappa[j] >= 1) x_prime.push_back(static_cast<int>(j));
    std::vector<std::vector<double>> values(inst.servers.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      values[i].push_back(0.0);
      for (int j : x_prime)
        values[i].push_back(
            r_min(inst, nt, static_cast<int>(i), j, inst.kappa[j]));
      std::sort(values[i].begin(), values[i].end());
      values[i].erase(std::unique(values[i].begin(), values[i].end()),
                      values[i].end());
    }
    const double brute =
        x_prime.empty()
            ? 0.0
            : testutil::enumerate_best_outer(inst, nt, x_prime, inst.kappa,
                                             values);
    OracleReport rep = exact_outer_cover(inst, x_prime, inst.kappa);
    REQUIRE_FALSE(rep.budget_exceeded);
    REQUIRE(rep.cost == Catch::Approx(brute).epsilon(1e-12).margin(1e-12));
  }
}

TEST_CASE("outer cover sandwich against the exact oracle") {
  // dual bound <= optimal outer cover <= greedy outer cover
  //   <= 3^alpha * optimal outer cover
  SplitMix64 rng(2025);
  for (int rep = 0; rep < 60; ++rep) {
    Instance inst = testutil::random_instance(rng, 6, 8);
    NeighborTable nt = NeighborTable::build(inst, Norm::linf);
    std::vector<int> x_prime;
    for (std::size_t j = 0; j < inst.kappa.size(); ++j)
      if (inst.kappa[j] >= 1) x_prime.push_back(static_cast<int>(j));
    OuterCoverResult oc = solve_outer_cover(inst, nt, x_prime, inst.kappa);
    OracleReport opt = exact_outer_cover(inst, x_prime, inst.kappa);
    REQUIRE_FALSE(opt.budget_exceeded);
    const double oc_cost = cost(oc.rho, inst.alpha);
    const double slack = 1e-9 * std::max(1.0, oc_cost) + 1e-12;
    REQUIRE(oc.dual_lower_bound <= opt.cost + slack);
    REQUIRE(opt.cost <= oc_cost + slack);
    REQUIRE(oc_cost <=
            power_cost(3.0, inst.alpha) * opt.cost + slack);
  }
}

TEST_CASE("ratio_report") {
  SECTION("fixture solves at the optimum") {
    RatioReport rr = ratio_report(testutil::make_e1(2));
    CHECK_FALSE(rr.budget_exceeded);
    CHECK(rr.alg_cost == 4.0);
    CHECK(rr.oracle_cost == 4.0);
    CHECK(rr.ratio == 1.0);
    CHECK(rr.paper_bound == 108.0);
    CHECK(rr.bound_satisfied);
  }
  SECTION("zero over zero reports ratio 1") {
    RatioReport rr = ratio_report(testutil::make_e1(0));
    CHECK(rr.ratio == 1.0);
    CHECK(rr.bound_satisfied);
  }
  SECTION("l2 bound uses the sqrt(d) factor") {
    Instance inst = testutil::make_e1(2);
    inst.norm = Norm::l2;
    RatioReport rr = ratio_report(inst);
    CHECK(rr.paper_bound ==
          Catch::Approx(4.0 * 27.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(rr.bound_satisfied);
    CHECK(rr.ratio >= 1.0 - 1e-9);
  }
}

TEST_CASE("node budget returns a distinguished status") {
  GenSpec spec;
  spec.n_servers = 8;
  spec.n_clients = 10;
  spec.kappa_mode = KappaMode::random_max_k;
  spec.k = 8;
  spec.seed = 5;
  Instance inst = generate(spec);
  OracleReport rep = exact_mcmc(inst, SearchLimits{3});
  CHECK(rep.budget_exceeded);
  CHECK(rep.nodes >= 3);
}
