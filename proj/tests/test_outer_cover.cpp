#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "multicover/outer_cover.hpp"

using namespace multicover;

TEST_CASE("r_min is the larger of own distance and kth-neighbor distance") {
  Instance inst = testutil::make_e1(2);
  NeighborTable nt = NeighborTable::build(inst, Norm::linf);
  CHECK(r_min(inst, nt, 0, 0, 2) == 3.0);
  CHECK(r_min(inst, nt, 1, 0, 2) == 3.0);
  CHECK(r_min(inst, nt, 0, 0, 1) == 1.0);
  CHECK(r_min(inst, nt, 0, 0) == 3.0);  // demand from the instance
  CHECK_THROWS_AS(r_min(inst, nt, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("covering_phase raises duals to the first tight constraints") {
  Instance inst = testutil::make_e1(2);
  NeighborTable nt = NeighborTable::build(inst, Norm::linf);

  SECTION("demand 2: both radius-3 disks go tight together") {
    DualState ds = covering_phase(inst, nt, {0}, {2});
    REQUIRE(ds.beta == std::vector<double>{3.0});
    REQUIRE(ds.tight_disks ==
            std::vector<TightDisk>{{0, 3.0}, {1, 3.0}});
  }
  SECTION("demand 1: the nearer disk wins at radius 1") {
    DualState ds = covering_phase(inst, nt, {0}, {1});
    REQUIRE(ds.beta == std::vector<double>{1.0});
    REQUIRE(ds.tight_disks == std::vector<TightDisk>{{0, 1.0}});
  }
  SECTION("zero-radius constraint is tight immediately") {
    Instance co;
    co.dim = 1;
    co.servers = {{0}, {0}};
    co.clients = {{0}};
    co.kappa = {2};
    NeighborTable cont = NeighborTable::build(co, Norm::linf);
    DualState ds = covering_phase(co, cont, {0}, {2});
    REQUIRE(ds.beta == std::vector<double>{0.0});
    REQUIRE(ds.tight_disks ==
            std::vector<TightDisk>{{0, 0.0}, {1, 0.0}});
  }
  SECTION("empty X' yields no duals") {
    DualState ds = covering_phase(inst, nt, {}, {2});
    CHECK(ds.beta.empty());
    CHECK(ds.tight_disks.empty());
  }
}

TEST_CASE("coarsening_phase keeps a maximal disjoint family, largest first") {
  Instance inst = testutil::make_e1(2);
  SECTION("touch-overlapping equal disks: lower server index survives") {
    auto F = coarsening_phase({{0, 3.0}, {1, 3.0}}, inst);
    REQUIRE(F == std::vector<TightDisk>{{0, 3.0}});
  }
  SECTION("single disk stays") {
    auto F = coarsening_phase({{1, 2.0}}, inst);
    REQUIRE(F == std::vector<TightDisk>{{1, 2.0}});
  }
  SECTION("disjoint disks both stay") {
    auto F = coarsening_phase({{0, 1.0}, {1, 1.0}}, inst);
    REQUIRE(F == std::vector<TightDisk>{{0, 1.0}, {1, 1.0}});
  }
  SECTION("every dropped disk meets a kept disk at least as large") {
    SplitMix64 rng(5150);
    for (int rep = 0; rep < 100; ++rep) {
      Instance rnd = testutil::random_instance(rng, 10, 10);
      std::vector<TightDisk> tight;
      for (std::size_t i = 0; i < rnd.servers.size(); ++i)
        tight.push_back({static_cast<int>(i), rng.next_in(0, 20)});
      auto F = coarsening_phase(tight, rnd);
      for (const auto& t : tight) {
        bool kept = std::find(F.begin(), F.end(), t) != F.end();
        if (kept) continue;
        bool blocked = false;
        for (const auto& f : F)
          if (f.radius >= t.radius &&
              boxes_intersect(disk_box(rnd.servers[f.server], f.radius),
                              disk_box(rnd.servers[t.server], t.radius)))
            blocked = true;
        REQUIRE(blocked);
      }
    }
  }
}

TEST_CASE("solve_outer_cover composes the three phases") {
  Instance inst = testutil::make_e1(2);
  NeighborTable nt = NeighborTable::build(inst, Norm::linf);

  SECTION("demand 2") {
    OuterCoverResult oc = solve_outer_cover(inst, nt, {0}, {2});
    CHECK(oc.rho == std::vector<double>{9.0, 0.0});
    CHECK(oc.F == std::vector<TightDisk>{{0, 3.0}});
    CHECK(oc.dual_lower_bound == 3.0);
    CHECK_FALSE(verify_outer_cover(inst, nt, {0}, {2}, oc.rho).has_value());
  }
  SECTION("demand 1") {
    OuterCoverResult oc = solve_outer_cover(inst, nt, {0}, {1});
    CHECK(oc.rho == std::vector<double>{3.0, 0.0});
    CHECK(oc.dual_lower_bound == 1.0);
  }
  SECTION("empty X'") {
    OuterCoverResult oc = solve_outer_cover(inst, nt, {}, {2});
    CHECK(oc.rho == std::vector<double>{0.0, 0.0});
    CHECK(oc.F.empty());
    CHECK(oc.dual_lower_bound == 0.0);
  }
}

TEST_CASE("verify_outer_cover flags radius and containment failures") {
  Instance inst = testutil::make_e1(2);
  NeighborTable nt = NeighborTable::build(inst, Norm::linf);
  CHECK_FALSE(verify_outer_cover(inst, nt, {0}, {2}, {9, 0}).has_value());
  // Disk contains the client but is smaller than the 2nd-neighbor distance.
  auto bad = verify_outer_cover(inst, nt, {0}, {2}, {2, 0});
  REQUIRE(bad.has_value());
  CHECK(*bad == 0);
  CHECK_FALSE(verify_outer_cover(inst, nt, {0}, {2}, {0, 3}).has_value());
}

TEST_CASE("random instances: dual feasibility, certificate, outer cover") {
  SplitMix64 rng(31337);
  for (int rep = 0; rep < 150; ++rep) {
    Instance inst = testutil::random_instance(rng, 12, 25);
    NeighborTable nt = NeighborTable::build(inst, Norm::linf);
    std::vector<int> x_prime;
    for (std::size_t j = 0; j < inst.kappa.size(); ++j)
      if (inst.kappa[j] >= 1) x_prime.push_back(static_cast<int>(j));
    OuterCoverResult oc = solve_outer_cover(inst, nt, x_prime, inst.kappa);
    REQUIRE(check_dual_feasibility(inst, nt, x_prime, inst.kappa, oc.beta));
    auto cert = verify_certificate(inst, nt, x_prime, inst.kappa, oc);
    if (cert.has_value()) FAIL("certificate: " << *cert);
    auto uncovered = verify_outer_cover(inst, nt, x_prime, inst.kappa, oc.rho);
    REQUIRE_FALSE(uncovered.has_value());
  }
}
