// Level-by-level multi-cover construction. Demands are raised one unit per
// level; each level computes an outer cover for the not-yet-covered clients
// and extends the current assignment cluster by cluster, enlarging at most
// 2d binding disks per cluster. The measured cost increase of every level is
// checked against 2d * 3^alpha * sum(rho^alpha) at runtime.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "multicover/geometry.hpp"
#include "multicover/model.hpp"
#include "multicover/outer_cover.hpp"

namespace multicover {

struct LevelRecord {
  int level = 0;
  int x_prime_size = 0;
  double outer_cost = 0.0;  // sum rho^alpha
  double increase = 0.0;    // measured change of sum r^alpha
  double bound = 0.0;       // 2d * 3^alpha * outer_cost
  std::vector<int> primaries;

  friend bool operator==(const LevelRecord&, const LevelRecord&) = default;
};

struct SolveTrace {
  std::vector<LevelRecord> levels;
  double final_cost = 0.0;  // cost of the internal linf assignment
  std::vector<double> dual_lower_bounds;  // one per level

  friend bool operator==(const SolveTrace&, const SolveTrace&) = default;
};

// Handed to the per-level observer right after the outer cover is computed;
// lets tests check the dual certificate of every level of every run.
struct LevelContext {
  int level;
  const std::vector<int>& x_prime;
  const std::vector<int>& kappa_t;
  const NeighborTable& nt;
  const OuterCoverResult& oc;
};

using LevelObserver = std::function<void(const LevelContext&)>;

// Per-iteration geometric self-checks (cluster radius claims). Cheap but
// hot-path, so off unless MULTICOVER_DEBUG_ASSERTS=1.
inline bool debug_asserts_enabled() {
  static const bool on = [] {
    const char* e = std::getenv("MULTICOVER_DEBUG_ASSERTS");
    return e != nullptr && std::string(e) == "1";
  }();
  return on;
}

// Recomputes coverage of the cluster's clients from scratch and throws if
// any is still under-covered. Runs after every enlargement; a failure is an
// implementation bug, never bad input.
inline void check_cluster_covered(const Instance& inst,
                                  const RadiusAssignment& radii,
                                  const std::vector<int>& kappa_t,
                                  const std::vector<int>& cluster) {
  for (int j : cluster) {
    if (coverage_count(inst, radii, j, Norm::linf) < kappa_t[j])
      throw internal_invariant_error(
          "cluster client " + std::to_string(j) +
          " not covered after enlargement");
  }
}

// One demand level: makes every client kappa_t-covered, only ever growing
// radii. Returns the level record; radii are updated in place.
inline LevelRecord extend_level(const Instance& inst, const NeighborTable& nt,
                                RadiusAssignment& radii,
                                const std::vector<int>& kappa_t, int level = 0,
                                const LevelObserver& observer = nullptr) {
  const int n_servers = static_cast<int>(inst.servers.size());
  const int n_clients = static_cast<int>(inst.clients.size());
  const double alpha = inst.alpha;

  // Coverage counts under linf, maintained incrementally as radii grow.
  std::vector<int> cov(n_clients, 0);
  for (int j = 0; j < n_clients; ++j)
    cov[j] = coverage_count(inst, radii, j, Norm::linf);

  std::vector<int> x_prime;
  for (int j = 0; j < n_clients; ++j)
    if (cov[j] < kappa_t[j]) x_prime.push_back(j);

  const double cost_before = cost(radii, alpha);
  OuterCoverResult oc = solve_outer_cover(inst, nt, x_prime, kappa_t);

  LevelRecord rec;
  rec.level = level;
  rec.x_prime_size = static_cast<int>(x_prime.size());
  rec.outer_cost = cost(oc.rho, alpha);
  rec.bound = 2.0 * inst.dim * power_cost(3.0, alpha) * rec.outer_cost;

  if (observer) observer(LevelContext{level, x_prime, kappa_t, nt, oc});

  // Demand-th neighbor distance per active client, fixed for the level.
  std::vector<double> kth(n_clients, 0.0);
  for (int j : x_prime) kth[j] = nt.kth_dist(j, kappa_t[j]);

  std::vector<char> available(n_servers, 1);
  while (!x_prime.empty()) {
    // Largest outer disk still in the pool; zero-radius disks serve nobody.
    int ybar = -1;
    for (int i = 0; i < n_servers; ++i)
      if (available[i] && oc.rho[i] > 0.0 &&
          (ybar < 0 || oc.rho[i] > oc.rho[ybar]))
        ybar = i;
    if (ybar < 0)
      throw internal_invariant_error(
          "uncovered clients remain but no outer disk is left");
    available[ybar] = 0;
    rec.primaries.push_back(ybar);
    const double rho_bar = oc.rho[ybar];
    const Point& ybar_pt = inst.servers[ybar];

    // Clients this outer disk serves.
    std::vector<int> cluster;
    for (int j : x_prime)
      if (rho_bar >= kth[j] &&
          dist(inst.clients[j], ybar_pt, Norm::linf) <= rho_bar)
        cluster.push_back(j);
    if (cluster.empty()) continue;

    // Union of each cluster client's kappa_t nearest servers.
    std::vector<int> y_cluster;
    for (int j : cluster)
      for (int k = 0; k < kappa_t[j]; ++k)
        y_cluster.push_back(nt.by_client[j][k].second);
    std::sort(y_cluster.begin(), y_cluster.end());
    y_cluster.erase(std::unique(y_cluster.begin(), y_cluster.end()),
                    y_cluster.end());

    if (debug_asserts_enabled()) {
      const double slack = 1.0 + 1e-12;
      for (int j : cluster)
        if (dist(inst.clients[j], ybar_pt, Norm::linf) > rho_bar * slack)
          throw internal_invariant_error("cluster client outside outer disk");
      for (int y : y_cluster)
        if (dist(inst.servers[y], ybar_pt, Norm::linf) > 2.0 * rho_bar * slack)
          throw internal_invariant_error(
              "cluster server farther than twice the outer radius");
    }

    // Binding subset: at most 2d disks with the same common intersection.
    std::vector<Disk> disks(y_cluster.size());
    for (std::size_t k = 0; k < y_cluster.size(); ++k)
      disks[k] = {inst.servers[y_cluster[k]], radii[y_cluster[k]]};
    std::vector<int> binding = binding_disks(disks);

    // Raise each binding disk just enough to contain the whole cluster.
    for (int sel : binding) {
      const int y = y_cluster[sel];
      double need = radii[y];
      for (int j : cluster)
        need = std::max(need, dist(inst.clients[j], inst.servers[y],
                                    Norm::linf));
      if (need > radii[y]) {
        if (debug_asserts_enabled() && need > 3.0 * rho_bar * (1.0 + 1e-12))
          throw internal_invariant_error(
              "enlarged radius exceeds three times the outer radius");
        const double old = radii[y];
        radii[y] = need;
        for (int j = 0; j < n_clients; ++j) {
          const double d = dist(inst.clients[j], inst.servers[y], Norm::linf);
          if (d > old && d <= need) ++cov[j];
        }
      }
    }

    check_cluster_covered(inst, radii, kappa_t, cluster);

    std::vector<int> remaining;
    for (int j : x_prime)
      if (cov[j] < kappa_t[j]) remaining.push_back(j);
    x_prime.swap(remaining);
  }

  rec.increase = cost(radii, alpha) - cost_before;
  return rec;
}

// Multiplies linf radii by sqrt(d); the result is l2-feasible since the l2
// distance never exceeds sqrt(d) times the linf distance.
inline RadiusAssignment l2_transfer(RadiusAssignment radii, int dim) {
  const double s = std::sqrt(static_cast<double>(dim));
  for (double& r : radii) r *= s;
  return radii;
}

// Full solve: levels t = 1..max(kappa) with demands clipped from below, all
// in linf; l2 instances get the sqrt(d) transfer at the end.
inline std::pair<RadiusAssignment, SolveTrace> solve(
    const Instance& inst, const LevelObserver& observer = nullptr) {
  require_valid(inst);
  RadiusAssignment radii(inst.servers.size(), 0.0);
  SolveTrace trace;

  int max_kappa = 0;
  for (int k : inst.kappa) max_kappa = std::max(max_kappa, k);

  if (max_kappa > 0) {
    const NeighborTable nt = NeighborTable::build(inst, Norm::linf);
    std::vector<int> kappa_t(inst.clients.size(), 0);
    for (int t = 1; t <= max_kappa; ++t) {
      for (std::size_t j = 0; j < inst.kappa.size(); ++j)
        kappa_t[j] = std::max(0, inst.kappa[j] - (max_kappa - t));
      double dual = 0.0;
      LevelObserver obs = [&](const LevelContext& ctx) {
        dual = ctx.oc.dual_lower_bound;
        if (observer) observer(ctx);
      };
      LevelRecord rec = extend_level(inst, nt, radii, kappa_t, t, obs);
      if (rec.increase > rec.bound * (1.0 + 1e-9) + 1e-9)
        throw internal_invariant_error(
            "level " + std::to_string(t) + " cost increase " +
            std::to_string(rec.increase) + " exceeds bound " +
            std::to_string(rec.bound));
      trace.levels.push_back(std::move(rec));
      trace.dual_lower_bounds.push_back(dual);
    }
  }

  trace.final_cost = cost(radii, inst.alpha);
  if (inst.norm == Norm::l2) radii = l2_transfer(std::move(radii), inst.dim);
  return {std::move(radii), std::move(trace)};
}

// Optional post-pass under the instance's reporting norm: in descending
// radius order, drop each radius to the smallest value that keeps every
// client covered. The minimum is the largest distance to a client that
// would otherwise fall below demand, so the result stays within the
// candidate set and the cost never increases.
inline RadiusAssignment shrink_postpass(const Instance& inst,
                                        RadiusAssignment radii) {
  require_valid(inst);
  if (radii.size() != inst.servers.size())
    throw std::invalid_argument("shrink_postpass: radii length mismatch");
  if (!is_feasible(inst, radii))
    throw std::invalid_argument("shrink_postpass: assignment not feasible");
  const int n_servers = static_cast<int>(inst.servers.size());
  const int n_clients = static_cast<int>(inst.clients.size());

  std::vector<int> order(n_servers);
  for (int i = 0; i < n_servers; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (radii[a] != radii[b]) return radii[a] > radii[b];
    return a < b;
  });

  for (int y : order) {
    double need = 0.0;
    for (int j = 0; j < n_clients; ++j) {
      int without = 0;
      for (int i = 0; i < n_servers; ++i)
        if (i != y &&
            dist(inst.clients[j], inst.servers[i], inst.norm) <= radii[i])
          ++without;
      if (without < inst.kappa[j])
        need = std::max(need, dist(inst.clients[j], inst.servers[y],
                                    inst.norm));
    }
    radii[y] = need;
  }
  return radii;
}

}  // namespace multicover
