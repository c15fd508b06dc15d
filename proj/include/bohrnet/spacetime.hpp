#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bohrnet/errors.hpp"

namespace bohrnet {

struct Point {
  int t = 0;
  int x = 0;
  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

// q is in the causal future of p (timelike or lightlike, future-directed),
// including p itself.
bool causal_leq(const Point& p, const Point& q);
bool spacelike(const Point& p, const Point& q);

// Finite truncation of 1+1 Minkowski space: the lattice points of the double
// cone over the slice row { (0, x) : lo <= x <= hi }, i.e. all (t, x) with
// lo + |t| <= x <= hi - |t|. The t = 0 row is a Cauchy slice for the window.
class Window {
 public:
  Window(int slice_lo, int slice_hi);

  int slice_lo() const { return lo_; }
  int slice_hi() const { return hi_; }
  int slice_size() const { return hi_ - lo_ + 1; }
  int height() const { return (hi_ - lo_) / 2; }  // max |t|

  bool contains(const Point& p) const;
  const std::vector<Point>& points() const { return points_; }
  std::vector<Point> slice_points() const;

  friend bool operator==(const Window&, const Window&) = default;

 private:
  int lo_, hi_;
  std::vector<Point> points_;
};

// A finite set of window points, kept sorted and unique.
struct Region {
  std::vector<Point> points;

  Region() = default;
  explicit Region(std::vector<Point> pts);

  bool empty() const { return points.empty(); }
  size_t size() const { return points.size(); }
  bool contains(const Point& p) const;
  bool subset_of(const Region& o) const;

  friend bool operator==(const Region&, const Region&) = default;
  static int cmp(const Region& a, const Region& b);

  std::string str() const;
};

bool spacelike(const Region& a, const Region& b);
// Minimal spacelike gap min |dx| - |dt| over point pairs; regions with gap 1
// are "touching" at lattice scale (their continuum closures would intersect).
std::optional<int> spacelike_gap(const Region& a, const Region& b);

Region region_union(const Region& a, const Region& b);
Region region_intersection(const Region& a, const Region& b);

// All window points spacelike separated from every point of O.
Region causal_complement(const Region& o, const Window& w);
// O'' within the window; a closure operator (extensive, monotone, idempotent).
Region causal_completion(const Region& o, const Window& w);

// Union of integer intervals on the t = 0 slice, normalized: sorted,
// disjoint, maximal. Values are x coordinates.
class SliceOpen {
 public:
  SliceOpen() = default;
  explicit SliceOpen(std::vector<std::pair<int, int>> intervals);  // normalizes
  static SliceOpen interval(int a, int b);
  static SliceOpen parse(const std::string& text);  // "0..2,4" or "empty"

  const std::vector<std::pair<int, int>>& intervals() const { return iv_; }
  bool empty() const { return iv_.empty(); }
  int component_count() const { return static_cast<int>(iv_.size()); }
  std::vector<int> sites() const;
  bool contains(int x) const;
  bool subset_of(const SliceOpen& o) const;

  SliceOpen unite(const SliceOpen& o) const;
  SliceOpen intersect(const SliceOpen& o) const;
  SliceOpen minus(const SliceOpen& o) const;

  friend bool operator==(const SliceOpen&, const SliceOpen&) = default;
  friend auto operator<=>(const SliceOpen&, const SliceOpen&) = default;

  std::string str() const;

 private:
  std::vector<std::pair<int, int>> iv_;
};

// The smallest causally complete region containing the nonempty slice
// interval [a, b]; computed as the causal completion of its point set.
Region diamond_of_interval(int a, int b, const Window& w);
Region diamond_of_open(const SliceOpen& u, const Window& w);

// The poset of causally complete regions of the window, ordered by
// inclusion. Elements are exactly the fixed points of causal_completion.
class RegionPoset {
 public:
  RegionPoset(const Window& w, size_t cap);

  const Window& window() const { return window_; }
  size_t size() const { return regions_.size(); }
  const Region& region(int i) const { return regions_[i]; }
  const std::vector<Region>& regions() const { return regions_; }
  int index_of(const Region& r) const;  // -1 if absent
  bool leq(int i, int j) const { return leq_[i][static_cast<size_t>(j)]; }
  int empty_index() const { return empty_idx_; }
  int full_index() const { return full_idx_; }

  // (O1 u O2)'' as a poset index.
  int join(int i, int j) const;

  std::vector<std::pair<int, int>> spacelike_pairs(bool nonempty_only) const;

 private:
  Window window_;
  std::vector<Region> regions_;
  std::vector<std::vector<bool>> leq_;
  int empty_idx_ = -1;
  int full_idx_ = -1;
};

}  // namespace bohrnet
