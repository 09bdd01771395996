// Test-only helpers: the worked two-server fixture and an exhaustive
// enumeration oracle independent of the branch-and-bound search path.
#pragma once

#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "multicover/model.hpp"
#include "multicover/outer_cover.hpp"

namespace testutil {

// Servers (0,0) and (4,0), one client (1,0); alpha 1, linf.
inline multicover::Instance make_e1(int kappa = 2) {
  multicover::Instance inst;
  inst.dim = 2;
  inst.alpha = 1.0;
  inst.norm = multicover::Norm::linf;
  inst.servers = {{0, 0}, {4, 0}};
  inst.clients = {{1, 0}};
  inst.kappa = {kappa};
  return inst;
}

inline void enumerate_assignments(
    const std::vector<std::vector<double>>& values, std::size_t i,
    std::vector<double>& cur,
    const std::function<void(const std::vector<double>&)>& visit) {
  if (i == values.size()) {
    visit(cur);
    return;
  }
  for (double v : values[i]) {
    cur[i] = v;
    enumerate_assignments(values, i + 1, cur, visit);
  }
}

// Cheapest feasible assignment over the cartesian product of the given
// per-server value sets, by full enumeration.
inline std::pair<double, std::vector<double>> enumerate_best(
    const multicover::Instance& inst,
    const std::vector<std::vector<double>>& values) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_r;
  std::vector<double> cur(values.size(), 0.0);
  enumerate_assignments(values, 0, cur, [&](const std::vector<double>& r) {
    if (!multicover::is_feasible(inst, r)) return;
    const double c = multicover::cost(r, inst.alpha);
    if (c < best) {
      best = c;
      best_r = r;
    }
  });
  return {best, best_r};
}

// Cheapest outer cover over the value sets: every listed client must have a
// server whose radius reaches its minimum eligible radius.
inline double enumerate_best_outer(
    const multicover::Instance& inst, const multicover::NeighborTable& nt,
    const std::vector<int>& x_prime, const std::vector<int>& demands,
    const std::vector<std::vector<double>>& values) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> cur(values.size(), 0.0);
  enumerate_assignments(values, 0, cur, [&](const std::vector<double>& rho) {
    for (int j : x_prime) {
      bool served = false;
      for (std::size_t i = 0; i < rho.size() && !served; ++i)
        served = rho[i] >= multicover::r_min(inst, nt, static_cast<int>(i), j,
                                             demands[j]);
      if (!served) return;
    }
    best = std::min(best, multicover::cost(rho, inst.alpha));
  });
  return best;
}

inline multicover::Instance random_instance(multicover::SplitMix64& rng,
                                            int max_servers, int max_clients,
                                            int dim = 0) {
  multicover::GenSpec spec;
  spec.n_servers = rng.next_int(1, max_servers);
  spec.n_clients = rng.next_int(1, max_clients);
  spec.dim = dim > 0 ? dim : rng.next_int(1, 3);
  spec.alpha = static_cast<double>(rng.next_int(1, 3));
  spec.norm = rng.next_int(0, 1) == 0 ? multicover::Norm::linf
                                      : multicover::Norm::l2;
  spec.kappa_mode = multicover::KappaMode::random_max_k;
  spec.k = rng.next_int(0, spec.n_servers);
  spec.coord_min = 0.0;
  spec.coord_max = 100.0;
  spec.seed = rng.next();
  return multicover::generate(spec);
}

}  // namespace testutil
