// Problem instance and solution model: validation, coverage and cost
// evaluation, candidate radius sets, and random instance generation.
//
// An instance asks for one radius per server such that every client x lies
// in at least kappa(x) server disks, minimizing sum r^alpha.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "multicover/geometry.hpp"

namespace multicover {

// Raised when a runtime self-check fails; signals an implementation bug,
// never bad input.
struct internal_invariant_error : std::logic_error {
  using std::logic_error::logic_error;
};

struct Instance {
  int dim = 2;
  double alpha = 1.0;
  Norm norm = Norm::linf;
  std::vector<Point> servers;
  std::vector<Point> clients;
  std::vector<int> kappa;  // demand per client, 0 means unconstrained

  friend bool operator==(const Instance&, const Instance&) = default;
};

// One nonnegative radius per server.
using RadiusAssignment = std::vector<double>;

inline std::vector<std::string> validate(const Instance& inst) {
  std::vector<std::string> out;
  if (inst.dim < 1) out.push_back("dim below 1");
  if (!(inst.alpha >= 1.0) || !std::isfinite(inst.alpha))
    out.push_back("alpha below 1");
  auto check_points = [&](const std::vector<Point>& pts, const char* what) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (static_cast<int>(pts[i].size()) != inst.dim) {
        out.push_back(std::string(what) + " " + std::to_string(i) +
                      " has wrong dimension");
        continue;
      }
      for (double c : pts[i])
        if (!std::isfinite(c)) {
          out.push_back(std::string(what) + " " + std::to_string(i) +
                        " has non-finite coordinate");
          break;
        }
    }
  };
  check_points(inst.servers, "server");
  check_points(inst.clients, "client");
  if (inst.kappa.size() != inst.clients.size())
    out.push_back("kappa length does not match client count");
  const int n_servers = static_cast<int>(inst.servers.size());
  for (std::size_t j = 0; j < inst.kappa.size(); ++j) {
    if (inst.kappa[j] < 0)
      out.push_back("kappa " + std::to_string(j) + " negative");
    else if (inst.kappa[j] > n_servers)
      out.push_back("kappa " + std::to_string(j) + " exceeds server count");
  }
  return out;
}

inline void require_valid(const Instance& inst) {
  auto v = validate(inst);
  if (v.empty()) return;
  std::string msg = "invalid instance:";
  for (const auto& s : v) msg += " [" + s + "]";
  throw std::invalid_argument(msg);
}

// Number of server disks containing client j under an explicit norm.
inline int coverage_count(const Instance& inst, const RadiusAssignment& r,
                          int j, Norm norm) {
  if (j < 0 || j >= static_cast<int>(inst.clients.size()))
    throw std::out_of_range("coverage_count: client index out of range");
  if (r.size() != inst.servers.size())
    throw std::invalid_argument("coverage_count: radii length mismatch");
  int cnt = 0;
  for (std::size_t i = 0; i < inst.servers.size(); ++i)
    if (dist(inst.clients[j], inst.servers[i], norm) <= r[i]) ++cnt;
  return cnt;
}

inline int coverage_count(const Instance& inst, const RadiusAssignment& r,
                          int j) {
  return coverage_count(inst, r, j, inst.norm);
}

inline bool is_feasible(const Instance& inst, const RadiusAssignment& r,
                        Norm norm) {
  for (std::size_t j = 0; j < inst.clients.size(); ++j)
    if (coverage_count(inst, r, static_cast<int>(j), norm) < inst.kappa[j])
      return false;
  return true;
}

inline bool is_feasible(const Instance& inst, const RadiusAssignment& r) {
  return is_feasible(inst, r, inst.norm);
}

// sum_y r_y^alpha. Every cost in the library goes through power_cost so the
// floating-point realization of r^alpha is identical everywhere.
inline double power_cost(double r, double alpha) { return std::pow(r, alpha); }

inline double cost(const RadiusAssignment& r, double alpha) {
  double s = 0.0;
  for (double v : r) s += power_cost(v, alpha);
  return s;
}

// Per-server finite radius sets sufficient for exact optimization: {0} and
// every client distance. Shrinking any radius to the largest distance it
// actually uses never increases cost or breaks coverage.
struct CandidateRadiusSet {
  std::vector<std::vector<double>> per_server;  // sorted ascending, distinct
};

inline CandidateRadiusSet candidate_radii(const Instance& inst) {
  require_valid(inst);
  CandidateRadiusSet out;
  out.per_server.resize(inst.servers.size());
  for (std::size_t i = 0; i < inst.servers.size(); ++i) {
    auto& vals = out.per_server[i];
    vals.push_back(0.0);
    for (const auto& x : inst.clients)
      vals.push_back(dist(inst.servers[i], x, inst.norm));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random instance generation.

enum class KappaMode { uniform_k, random_max_k };

struct GenSpec {
  int n_clients = 10;
  int n_servers = 5;
  int dim = 2;
  KappaMode kappa_mode = KappaMode::uniform_k;
  int k = 1;  // uniform value, or inclusive upper bound in random mode
  double coord_min = 0.0;
  double coord_max = 100.0;
  double alpha = 1.0;
  Norm norm = Norm::linf;
  std::uint64_t seed = 1;
};

// Deterministic 64-bit generator (splitmix64). Self-contained so identical
// seeds yield identical instances regardless of standard-library internals.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double next_unit() {  // uniform in [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double next_in(double lo, double hi) { return lo + next_unit() * (hi - lo); }

  int next_int(int lo, int hi) {  // uniform in [lo, hi]
    const int span = hi - lo + 1;
    return lo + std::min(span - 1,
                         static_cast<int>(next_unit() * span));
  }

 private:
  std::uint64_t state_;
};

inline Instance generate(const GenSpec& spec) {
  if (spec.n_clients < 0 || spec.n_servers < 0 || spec.dim < 1)
    throw std::invalid_argument("generate: bad sizes");
  if (!(spec.coord_min <= spec.coord_max))
    throw std::invalid_argument("generate: empty coordinate range");
  if (spec.k < 0 || spec.k > spec.n_servers)
    throw std::invalid_argument(
        "generate: kappa demand exceeds server count");
  if (!(spec.alpha >= 1.0))
    throw std::invalid_argument("generate: alpha below 1");

  SplitMix64 rng(spec.seed);
  Instance inst;
  inst.dim = spec.dim;
  inst.alpha = spec.alpha;
  inst.norm = spec.norm;
  inst.servers.resize(spec.n_servers);
  for (auto& y : inst.servers) {
    y.resize(spec.dim);
    for (auto& c : y) c = rng.next_in(spec.coord_min, spec.coord_max);
  }
  inst.clients.resize(spec.n_clients);
  for (auto& x : inst.clients) {
    x.resize(spec.dim);
    for (auto& c : x) c = rng.next_in(spec.coord_min, spec.coord_max);
  }
  inst.kappa.resize(spec.n_clients);
  for (auto& k : inst.kappa)
    k = spec.kappa_mode == KappaMode::uniform_k ? spec.k
                                                : rng.next_int(0, spec.k);
  return inst;
}

// FNV-1a over the instance payload; used to identify instances in reports.
inline std::string fingerprint(const Instance& inst) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  auto mix_double = [&](double d) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(d));
    std::memcpy(&bits, &d, sizeof(bits));
    mix(bits);
  };
  mix(static_cast<std::uint64_t>(inst.dim));
  mix_double(inst.alpha);
  mix(inst.norm == Norm::linf ? 0 : 1);
  mix(inst.servers.size());
  for (const auto& y : inst.servers)
    for (double c : y) mix_double(c);
  mix(inst.clients.size());
  for (const auto& x : inst.clients)
    for (double c : x) mix_double(c);
  for (int k : inst.kappa) mix(static_cast<std::uint64_t>(k));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace multicover
