#include "bohrnet/spacetime.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <set>
#include <sstream>

namespace bohrnet {

bool causal_leq(const Point& p, const Point& q) {
  return std::abs(q.x - p.x) <= q.t - p.t;
}

bool spacelike(const Point& p, const Point& q) {
  return !causal_leq(p, q) && !causal_leq(q, p);
}

Window::Window(int slice_lo, int slice_hi) : lo_(slice_lo), hi_(slice_hi) {
  if (hi_ < lo_) throw SpecError("window slice interval is empty");
  for (int t = -(hi_ - lo_) / 2; t <= (hi_ - lo_) / 2; ++t)
    for (int x = lo_ + std::abs(t); x <= hi_ - std::abs(t); ++x)
      points_.push_back(Point{t, x});
  std::sort(points_.begin(), points_.end());
}

bool Window::contains(const Point& p) const {
  return lo_ + std::abs(p.t) <= p.x && p.x <= hi_ - std::abs(p.t);
}

std::vector<Point> Window::slice_points() const {
  std::vector<Point> out;
  for (int x = lo_; x <= hi_; ++x) out.push_back(Point{0, x});
  return out;
}

Region::Region(std::vector<Point> pts) : points(std::move(pts)) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
}

bool Region::contains(const Point& p) const {
  return std::binary_search(points.begin(), points.end(), p);
}

bool Region::subset_of(const Region& o) const {
  return std::includes(o.points.begin(), o.points.end(), points.begin(), points.end());
}

int Region::cmp(const Region& a, const Region& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  if (a.points < b.points) return -1;
  if (b.points < a.points) return 1;
  return 0;
}

std::string Region::str() const {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < points.size(); ++i) {
    if (i) os << " ";
    os << "(" << points[i].t << "," << points[i].x << ")";
  }
  os << "}";
  return os.str();
}

bool spacelike(const Region& a, const Region& b) {
  for (const Point& p : a.points)
    for (const Point& q : b.points)
      if (!spacelike(p, q)) return false;
  return true;
}

std::optional<int> spacelike_gap(const Region& a, const Region& b) {
  if (a.empty() || b.empty() || !spacelike(a, b)) return std::nullopt;
  int gap = INT_MAX;
  for (const Point& p : a.points)
    for (const Point& q : b.points)
      gap = std::min(gap, std::abs(q.x - p.x) - std::abs(q.t - p.t));
  return gap;
}

Region region_union(const Region& a, const Region& b) {
  std::vector<Point> pts = a.points;
  pts.insert(pts.end(), b.points.begin(), b.points.end());
  return Region(std::move(pts));
}

Region region_intersection(const Region& a, const Region& b) {
  std::vector<Point> pts;
  std::set_intersection(a.points.begin(), a.points.end(), b.points.begin(), b.points.end(),
                        std::back_inserter(pts));
  return Region(std::move(pts));
}

Region causal_complement(const Region& o, const Window& w) {
  std::vector<Point> pts;
  for (const Point& q : w.points()) {
    bool ok = true;
    for (const Point& p : o.points) {
      if (!spacelike(p, q)) {
        ok = false;
        break;
      }
    }
    if (ok) pts.push_back(q);
  }
  return Region(std::move(pts));
}

Region causal_completion(const Region& o, const Window& w) {
  if (o.empty()) return Region{};  // the window convention: empty completes to empty
  return causal_complement(causal_complement(o, w), w);
}

SliceOpen::SliceOpen(std::vector<std::pair<int, int>> intervals) {
  std::vector<int> xs;
  for (auto [a, b] : intervals)
    for (int x = a; x <= b; ++x) xs.push_back(x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (int x : xs) {
    if (!iv_.empty() && iv_.back().second == x - 1)
      iv_.back().second = x;
    else
      iv_.emplace_back(x, x);
  }
}

SliceOpen SliceOpen::interval(int a, int b) { return SliceOpen({{a, b}}); }

SliceOpen SliceOpen::parse(const std::string& text) {
  if (text.empty() || text == "empty") return SliceOpen{};
  std::vector<std::pair<int, int>> ivs;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) throw SpecError("empty component in slice open '" + text + "'");
    auto dots = part.find("..");
    try {
      if (dots == std::string::npos) {
        int a = std::stoi(part);
        ivs.emplace_back(a, a);
      } else {
        int a = std::stoi(part.substr(0, dots));
        int b = std::stoi(part.substr(dots + 2));
        if (b < a) throw SpecError("descending interval in slice open '" + text + "'");
        ivs.emplace_back(a, b);
      }
    } catch (const std::invalid_argument&) {
      throw SpecError("unparsable slice open '" + text + "'");
    } catch (const std::out_of_range&) {
      throw SpecError("out-of-range slice open '" + text + "'");
    }
  }
  return SliceOpen(std::move(ivs));
}

std::vector<int> SliceOpen::sites() const {
  std::vector<int> out;
  for (auto [a, b] : iv_)
    for (int x = a; x <= b; ++x) out.push_back(x);
  return out;
}

bool SliceOpen::contains(int x) const {
  for (auto [a, b] : iv_)
    if (a <= x && x <= b) return true;
  return false;
}

bool SliceOpen::subset_of(const SliceOpen& o) const {
  for (int x : sites())
    if (!o.contains(x)) return false;
  return true;
}

SliceOpen SliceOpen::unite(const SliceOpen& o) const {
  auto ivs = iv_;
  ivs.insert(ivs.end(), o.iv_.begin(), o.iv_.end());
  return SliceOpen(std::move(ivs));
}

SliceOpen SliceOpen::intersect(const SliceOpen& o) const {
  std::vector<std::pair<int, int>> ivs;
  for (int x : sites())
    if (o.contains(x)) ivs.emplace_back(x, x);
  return SliceOpen(std::move(ivs));
}

SliceOpen SliceOpen::minus(const SliceOpen& o) const {
  std::vector<std::pair<int, int>> ivs;
  for (int x : sites())
    if (!o.contains(x)) ivs.emplace_back(x, x);
  return SliceOpen(std::move(ivs));
}

std::string SliceOpen::str() const {
  if (iv_.empty()) return "empty";
  std::ostringstream os;
  for (size_t i = 0; i < iv_.size(); ++i) {
    if (i) os << ",";
    if (iv_[i].first == iv_[i].second)
      os << iv_[i].first;
    else
      os << iv_[i].first << ".." << iv_[i].second;
  }
  return os.str();
}

Region diamond_of_interval(int a, int b, const Window& w) {
  if (b < a) throw std::invalid_argument("diamond of an empty interval");
  std::vector<Point> pts;
  for (int x = a; x <= b; ++x) pts.push_back(Point{0, x});
  return causal_completion(Region(std::move(pts)), w);
}

Region diamond_of_open(const SliceOpen& u, const Window& w) {
  Region out;
  for (auto [a, b] : u.intervals()) out = region_union(out, diamond_of_interval(a, b, w));
  return out;
}

RegionPoset::RegionPoset(const Window& w, size_t cap) : window_(w) {
  // Causally complete regions are the Galois-closed sets of the spacelike
  // relation: every one is an intersection of point complements p', plus the
  // window itself. Close { window } under intersecting with each p'.
  std::vector<Region> complements;
  for (const Point& p : w.points())
    complements.push_back(causal_complement(Region({p}), w));

  std::set<std::vector<Point>> seen;
  std::vector<Region> work{Region(w.points())};
  seen.insert(work[0].points);
  while (!work.empty()) {
    Region r = std::move(work.back());
    work.pop_back();
    regions_.push_back(r);
    if (regions_.size() + work.size() > cap)
      throw CapExceeded("region poset cap exceeded",
                        static_cast<long long>(regions_.size() + work.size()));
    for (const Region& c : complements) {
      Region next = region_intersection(r, c);
      if (seen.insert(next.points).second) work.push_back(std::move(next));
    }
  }
  // The empty region is closed as well ('' fixes it) but arises above only
  // as an intersection; make sure it is present even for one-point windows.
  Region empty_region;
  if (!seen.count(empty_region.points)) regions_.push_back(empty_region);

  std::sort(regions_.begin(), regions_.end(),
            [](const Region& a, const Region& b) { return Region::cmp(a, b) < 0; });
  leq_.assign(regions_.size(), std::vector<bool>(regions_.size(), false));
  for (size_t i = 0; i < regions_.size(); ++i)
    for (size_t j = 0; j < regions_.size(); ++j)
      leq_[i][j] = regions_[i].subset_of(regions_[j]);
  for (size_t i = 0; i < regions_.size(); ++i) {
    if (regions_[i].empty()) empty_idx_ = static_cast<int>(i);
    if (regions_[i].size() == w.points().size()) full_idx_ = static_cast<int>(i);
  }
}

int RegionPoset::index_of(const Region& r) const {
  for (size_t i = 0; i < regions_.size(); ++i)
    if (regions_[i] == r) return static_cast<int>(i);
  return -1;
}

int RegionPoset::join(int i, int j) const {
  Region u = causal_completion(region_union(regions_[i], regions_[j]), window_);
  int k = index_of(u);
  if (k < 0) throw ClosureError("join of regions missing from the poset");
  return k;
}

std::vector<std::pair<int, int>> RegionPoset::spacelike_pairs(bool nonempty_only) const {
  std::vector<std::pair<int, int>> out;
  for (size_t i = 0; i < regions_.size(); ++i)
    for (size_t j = i + 1; j < regions_.size(); ++j) {
      if (nonempty_only && (regions_[i].empty() || regions_[j].empty())) continue;
      if (spacelike(regions_[i], regions_[j]))
        out.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  return out;
}

}  // namespace bohrnet
