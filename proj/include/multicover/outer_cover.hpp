// Primal-dual outer cover. Given a subset X' of clients with demands >= 1,
// raise one dual variable per client uniformly until every client is served
// by a tight disk, greedily pick a maximal disjoint family of tight disks
// largest-first, and triple the survivors. The dual values certify a lower
// bound on the cost of any outer cover.
//
// All geometry here is L-infinity, regardless of the instance's reporting
// norm.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "multicover/geometry.hpp"
#include "multicover/model.hpp"

namespace multicover {

// Per-client list of (distance, server) pairs sorted ascending, ties by
// server index. Built once per solve and shared by all levels.
struct NeighborTable {
  std::vector<std::vector<std::pair<double, int>>> by_client;

  static NeighborTable build(const Instance& inst, Norm norm) {
    NeighborTable nt;
    nt.by_client.resize(inst.clients.size());
    for (std::size_t j = 0; j < inst.clients.size(); ++j) {
      auto& row = nt.by_client[j];
      row.resize(inst.servers.size());
      for (std::size_t i = 0; i < inst.servers.size(); ++i)
        row[i] = {dist(inst.clients[j], inst.servers[i], norm),
                  static_cast<int>(i)};
      std::sort(row.begin(), row.end());
    }
    return nt;
  }

  // Distance from client j to its k-th nearest server, k >= 1.
  double kth_dist(int j, int k) const {
    return by_client[j][static_cast<std::size_t>(k) - 1].first;
  }
};

// Smallest radius of a disk at server i that can serve client j in an outer
// cover with demand kappa_j: the disk must contain j and be at least as
// large as j's distance to its kappa_j-th nearest server.
inline double r_min(const Instance& inst, const NeighborTable& nt, int server,
                    int client, int demand) {
  if (demand < 1)
    throw std::invalid_argument("r_min: client demand must be >= 1");
  return std::max(dist(inst.servers[server], inst.clients[client], Norm::linf),
                  nt.kth_dist(client, demand));
}

inline double r_min(const Instance& inst, const NeighborTable& nt, int server,
                    int client) {
  return r_min(inst, nt, server, client, inst.kappa[client]);
}

struct TightDisk {
  int server = 0;
  double radius = 0.0;

  friend bool operator==(const TightDisk&, const TightDisk&) = default;
};

struct DualState {
  std::vector<double> beta;           // parallel to x_prime
  std::vector<TightDisk> tight_disks; // in the order they became tight
};

struct OuterCoverResult {
  std::vector<double> rho;        // one radius per server
  std::vector<TightDisk> F;       // disjoint tight disks, pre-enlargement
  std::vector<double> beta;       // final duals, parallel to x_prime
  double dual_lower_bound = 0.0;  // sum of beta
};

// Uniform simultaneous raise of all non-tight duals, advanced event by
// event. Only per-server breakpoint radii {r_min(i, j) : j in X'} can
// become tight first, since the served set is constant between breakpoints
// and r^alpha is increasing. Tightness is recorded combinatorially at event
// time, never re-derived from floating-point equality.
inline DualState covering_phase(const Instance& inst, const NeighborTable& nt,
                                const std::vector<int>& x_prime,
                                const std::vector<int>& demands) {
  DualState ds;
  const std::size_t m = x_prime.size();
  ds.beta.assign(m, 0.0);
  if (m == 0) return ds;
  const std::size_t n_servers = inst.servers.size();
  if (n_servers == 0)
    throw std::invalid_argument("covering_phase: no servers");

  // Per server: positions of X' sorted by r_min, with r^alpha precomputed.
  // The clients a disk of radius ev[i][k].first can serve are exactly the
  // prefix ev[i][0..k].
  std::vector<std::vector<std::pair<double, int>>> ev(n_servers);
  std::vector<std::vector<double>> ev_pow(n_servers);
  for (std::size_t i = 0; i < n_servers; ++i) {
    ev[i].resize(m);
    for (std::size_t p = 0; p < m; ++p)
      ev[i][p] = {r_min(inst, nt, static_cast<int>(i), x_prime[p],
                        demands[x_prime[p]]),
                  static_cast<int>(p)};
    std::sort(ev[i].begin(), ev[i].end());
    ev_pow[i].resize(m);
    for (std::size_t p = 0; p < m; ++p)
      ev_pow[i][p] = power_cost(ev[i][p].first, inst.alpha);
  }

  std::vector<char> tight(m, 0);
  std::size_t n_tight = 0;
  double tau = 0.0;  // current value of every non-tight dual

  // For one server, visit each breakpoint constraint (the last entry of a
  // run of equal radii) and report the raise needed to make it tight.
  auto scan_server = [&](std::size_t i, auto&& on_constraint) {
    double frozen_sum = 0.0;
    int n_nontight = 0;
    for (std::size_t k = 0; k < m; ++k) {
      const int p = ev[i][k].second;
      if (tight[p])
        frozen_sum += ds.beta[p];
      else
        ++n_nontight;
      if (k + 1 < m && ev[i][k + 1].first == ev[i][k].first) continue;
      if (n_nontight == 0) continue;  // fully frozen, cannot advance
      const double slack = ev_pow[i][k] - frozen_sum - n_nontight * tau;
      const double delta = std::max(0.0, slack / n_nontight);
      on_constraint(k, delta);
    }
  };

  while (n_tight < m) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_servers; ++i)
      scan_server(i, [&](std::size_t, double delta) {
        if (delta < best) best = delta;
      });
    if (!(best < std::numeric_limits<double>::infinity()))
      throw internal_invariant_error("covering_phase: no advancing event");

    // Collect every constraint reaching slack zero at this event against
    // the pre-event state, in (server, radius) lexicographic order, then
    // freeze their clients.
    std::vector<std::pair<std::size_t, std::size_t>> events;  // (server, k)
    for (std::size_t i = 0; i < n_servers; ++i)
      scan_server(i, [&](std::size_t k, double delta) {
        if (delta == best) events.emplace_back(i, k);
      });
    tau += best;
    for (auto [i, k] : events) {
      ds.tight_disks.push_back(
          {static_cast<int>(i), ev[i][k].first});
      for (std::size_t q = 0; q <= k; ++q) {
        const int p = ev[i][q].second;
        if (!tight[p]) {
          tight[p] = 1;
          ds.beta[p] = tau;
          ++n_tight;
        }
      }
    }
  }
  return ds;
}

// Greedy maximal disjoint family: consider tight disks by nonincreasing
// radius (ties by ascending server index) and keep those not intersecting
// a kept disk. Closed-box intersection, so touching disks conflict.
inline std::vector<TightDisk> coarsening_phase(
    const std::vector<TightDisk>& tight, const Instance& inst) {
  std::vector<TightDisk> sorted = tight;
  std::sort(sorted.begin(), sorted.end(),
            [](const TightDisk& a, const TightDisk& b) {
              if (a.radius != b.radius) return a.radius > b.radius;
              return a.server < b.server;
            });
  std::vector<TightDisk> F;
  std::vector<Box> kept;
  for (const auto& d : sorted) {
    Box b = disk_box(inst.servers[d.server], d.radius);
    bool clash = false;
    for (const auto& kb : kept)
      if (boxes_intersect(b, kb)) {
        clash = true;
        break;
      }
    if (!clash) {
      F.push_back(d);
      kept.push_back(std::move(b));
    }
  }
  return F;
}

inline OuterCoverResult solve_outer_cover(const Instance& inst,
                                          const NeighborTable& nt,
                                          const std::vector<int>& x_prime,
                                          const std::vector<int>& demands) {
  OuterCoverResult res;
  res.rho.assign(inst.servers.size(), 0.0);
  DualState ds = covering_phase(inst, nt, x_prime, demands);
  res.F = coarsening_phase(ds.tight_disks, inst);
  for (const auto& f : res.F) res.rho[f.server] = 3.0 * f.radius;
  res.beta = std::move(ds.beta);
  res.dual_lower_bound = 0.0;
  for (double b : res.beta) res.dual_lower_bound += b;
  return res;
}

// Checks the outer-cover conditions for every client in X': some server disk
// contains it with radius at least its demand-th neighbor distance. Returns
// the first violating client, or nullopt.
inline std::optional<int> verify_outer_cover(const Instance& inst,
                                             const NeighborTable& nt,
                                             const std::vector<int>& x_prime,
                                             const std::vector<int>& demands,
                                             const std::vector<double>& rho) {
  for (int j : x_prime) {
    const double need = nt.kth_dist(j, demands[j]);
    bool served = false;
    for (std::size_t i = 0; i < inst.servers.size(); ++i) {
      if (rho[i] >= need &&
          dist(inst.clients[j], inst.servers[i], Norm::linf) <= rho[i]) {
        served = true;
        break;
      }
    }
    if (!served) return j;
  }
  return std::nullopt;
}

// Dual feasibility over the full breakpoint family, with a tolerance scaled
// to the accumulated rounding of the event-driven update.
inline bool check_dual_feasibility(const Instance& inst,
                                   const NeighborTable& nt,
                                   const std::vector<int>& x_prime,
                                   const std::vector<int>& demands,
                                   const std::vector<double>& beta) {
  for (std::size_t i = 0; i < inst.servers.size(); ++i) {
    std::vector<std::pair<double, int>> keyed(x_prime.size());
    for (std::size_t p = 0; p < x_prime.size(); ++p)
      keyed[p] = {r_min(inst, nt, static_cast<int>(i), x_prime[p],
                        demands[x_prime[p]]),
                  static_cast<int>(p)};
    std::sort(keyed.begin(), keyed.end());
    double sum = 0.0;
    for (std::size_t k = 0; k < keyed.size(); ++k) {
      sum += beta[keyed[k].second];
      if (k + 1 < keyed.size() && keyed[k + 1].first == keyed[k].first)
        continue;
      const double rhs = power_cost(keyed[k].first, inst.alpha);
      if (sum > rhs + 1e-9 * std::max(1.0, rhs)) return false;
    }
  }
  return true;
}

// The certificate chain behind the 3^alpha guarantee: every F-disk tight,
// F pairwise disjoint, cost(rho) = 3^alpha * cost(F) <= 3^alpha * sum(beta).
// Numeric equalities are compared at machine-epsilon scale; the structure
// (tight sets, disjointness) is checked combinatorially.
inline std::optional<std::string> verify_certificate(
    const Instance& inst, const NeighborTable& nt,
    const std::vector<int>& x_prime, const std::vector<int>& demands,
    const OuterCoverResult& oc) {
  const double alpha = inst.alpha;
  auto near = [](double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
  };

  double cost_F = 0.0;
  for (const auto& f : oc.F) cost_F += power_cost(f.radius, alpha);
  const double cost_rho = cost(oc.rho, alpha);
  const double three_alpha = power_cost(3.0, alpha);
  if (!near(cost_rho, three_alpha * cost_F))
    return "cost(rho) != 3^alpha * cost(F)";

  for (std::size_t a = 0; a < oc.F.size(); ++a)
    for (std::size_t b = a + 1; b < oc.F.size(); ++b)
      if (boxes_intersect(disk_box(inst.servers[oc.F[a].server], oc.F[a].radius),
                          disk_box(inst.servers[oc.F[b].server], oc.F[b].radius)))
        return "F disks intersect";

  double served_beta = 0.0;
  for (const auto& f : oc.F) {
    double sum = 0.0;
    for (std::size_t p = 0; p < x_prime.size(); ++p)
      if (r_min(inst, nt, f.server, x_prime[p], demands[x_prime[p]]) <=
          f.radius)
        sum += oc.beta[p];
    if (!near(sum, power_cost(f.radius, alpha))) return "F disk not tight";
    served_beta += sum;
  }

  double total_beta = 0.0;
  for (double b : oc.beta) total_beta += b;
  if (served_beta > total_beta + 1e-9 * std::max(1.0, total_beta))
    return "served duals exceed total duals";
  if (cost_rho > three_alpha * total_beta +
                     1e-9 * std::max(1.0, three_alpha * total_beta))
    return "cost(rho) exceeds 3^alpha * dual bound";
  if (!near(oc.dual_lower_bound, total_beta))
    return "dual_lower_bound != sum(beta)";
  return std::nullopt;
}

}  // namespace multicover
