// Geometric primitives for disk multi-covering: norms, neighbor orderings,
// axis-aligned box algebra, and binding-disk selection for L-infinity disks
// in R^d.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace multicover {

enum class Norm { linf, l2 };

inline std::string to_string(Norm n) { return n == Norm::linf ? "linf" : "l2"; }

inline Norm norm_from_string(const std::string& s) {
  if (s == "linf") return Norm::linf;
  if (s == "l2") return Norm::l2;
  throw std::invalid_argument("unknown norm '" + s + "' (expected linf or l2)");
}

// A point is a d-dimensional coordinate vector.
using Point = std::vector<double>;

inline double dist(const Point& p, const Point& q, Norm norm) {
  if (p.size() != q.size())
    throw std::invalid_argument("dist: dimension mismatch");
  if (norm == Norm::linf) {
    double m = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
      m = std::max(m, std::abs(p[i] - q[i]));
    return m;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = p[i] - q[i];
    s += d * d;
  }
  return std::sqrt(s);
}

// Server indices sorted by nondecreasing distance to x; ties broken by
// ascending index so runs are deterministic.
inline std::vector<int> neighbor_order(const Point& x,
                                       const std::vector<Point>& servers,
                                       Norm norm) {
  if (servers.empty())
    throw std::invalid_argument("neighbor_order: empty server set");
  std::vector<std::pair<double, int>> keyed(servers.size());
  for (std::size_t i = 0; i < servers.size(); ++i)
    keyed[i] = {dist(x, servers[i], norm), static_cast<int>(i)};
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> order(servers.size());
  for (std::size_t i = 0; i < servers.size(); ++i) order[i] = keyed[i].second;
  return order;
}

// Closed axis-aligned box, one interval [lo[i], hi[i]] per dimension.
// Empty iff lo[i] > hi[i] in some dimension.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  bool empty() const {
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (lo[i] > hi[i]) return true;
    return false;
  }

  friend bool operator==(const Box& a, const Box& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

// The L-infinity disk of radius r centered at c, as a box.
inline Box disk_box(const Point& center, double r) {
  if (r < 0.0) throw std::invalid_argument("disk_box: negative radius");
  Box b;
  b.lo.resize(center.size());
  b.hi.resize(center.size());
  for (std::size_t i = 0; i < center.size(); ++i) {
    b.lo[i] = center[i] - r;
    b.hi[i] = center[i] + r;
  }
  return b;
}

// Closed-box test: touching counts as intersecting.
inline bool boxes_intersect(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < a.lo.size(); ++i)
    if (a.lo[i] > b.hi[i] || b.lo[i] > a.hi[i]) return false;
  return true;
}

inline Box intersect_boxes(const std::vector<Box>& boxes) {
  if (boxes.empty())
    throw std::invalid_argument("intersect_boxes: empty family");
  Box out = boxes.front();
  for (std::size_t k = 1; k < boxes.size(); ++k) {
    for (std::size_t i = 0; i < out.lo.size(); ++i) {
      out.lo[i] = std::max(out.lo[i], boxes[k].lo[i]);
      out.hi[i] = std::min(out.hi[i], boxes[k].hi[i]);
    }
  }
  return out;
}

struct Disk {
  Point center;
  double r = 0.0;
};

// Picks at most 2d disks whose common intersection equals that of the whole
// family (as boxes, including emptiness): per dimension, the disk attaining
// the maximum lower edge and the one attaining the minimum upper edge.
// Ties go to the smallest list index; duplicates are merged.
inline std::vector<int> binding_disks(const std::vector<Disk>& disks) {
  if (disks.empty())
    throw std::invalid_argument("binding_disks: empty family");
  const std::size_t d = disks.front().center.size();
  std::vector<int> sel;
  sel.reserve(2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    int arg_lo = 0, arg_hi = 0;
    double best_lo = disks[0].center[i] - disks[0].r;
    double best_hi = disks[0].center[i] + disks[0].r;
    for (std::size_t k = 1; k < disks.size(); ++k) {
      const double lo = disks[k].center[i] - disks[k].r;
      const double hi = disks[k].center[i] + disks[k].r;
      if (lo > best_lo) {
        best_lo = lo;
        arg_lo = static_cast<int>(k);
      }
      if (hi < best_hi) {
        best_hi = hi;
        arg_hi = static_cast<int>(k);
      }
    }
    sel.push_back(arg_lo);
    sel.push_back(arg_hi);
  }
  std::sort(sel.begin(), sel.end());
  sel.erase(std::unique(sel.begin(), sel.end()), sel.end());
  return sel;
}

}  // namespace multicover
