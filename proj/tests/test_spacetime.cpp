#include <doctest.h>

#include <random>
#include <set>

#include "bohrnet/spacetime.hpp"

using namespace bohrnet;

namespace {

Region mk(std::vector<Point> pts) { return Region(std::move(pts)); }

Region random_subset(const Window& w, std::mt19937_64& eng) {
  std::vector<Point> pts;
  for (const Point& p : w.points())
    if (eng() % 3 == 0) pts.push_back(p);
  return Region(std::move(pts));
}

}  // namespace

TEST_CASE("causal order basics") {
  CHECK(causal_leq({0, 0}, {2, 1}));
  CHECK_FALSE(causal_leq({0, 0}, {0, 3}));
  CHECK_FALSE(causal_leq({1, 1}, {0, 0}));
  CHECK(causal_leq({0, 0}, {0, 0}));  // reflexive
}

TEST_CASE("spacelike separation of point sets") {
  Region a = mk({Point{0, 0}});
  Region b = mk({Point{0, 3}});
  CHECK(spacelike(a, b));
  Region c = mk({Point{1, 0}});
  CHECK_FALSE(spacelike(a, c));
  CHECK(spacelike(Region{}, b));  // vacuous
}

TEST_CASE("causal complement: empty, full, single point") {
  Window w(-2, 2);
  CHECK(causal_complement(Region{}, w).points == w.points());
  CHECK(causal_complement(Region(w.points()), w).empty());

  Region o = mk({Point{0, 0}});
  Region expected = mk({Point{0, -2}, Point{0, -1}, Point{0, 1}, Point{0, 2}});
  CHECK(causal_complement(o, w) == expected);  // the wedge point-sets of this window
}

TEST_CASE("causal completion: double cone fixed, empty convention") {
  Window w(0, 2);
  Region diamond = diamond_of_interval(0, 2, w);
  // Diamond over [0,2]: slice plus apexes (+-1, 1).
  Region expected = mk({Point{-1, 1}, Point{0, 0}, Point{0, 1}, Point{0, 2}, Point{1, 1}});
  CHECK(diamond == expected);
  CHECK(causal_completion(diamond, w) == diamond);
  CHECK(causal_completion(Region{}, w).empty());
}

TEST_CASE("completion of a gap pair stays put at lattice scale") {
  // The slice point between the two is spacelike from both, so the two-point
  // set is already causally complete; the diamond arises from the full
  // interval instead (see diamond_of_interval).
  Window w(0, 2);
  Region o = mk({Point{0, 0}, Point{0, 2}});
  CHECK(causal_completion(o, w) == o);
  CHECK(diamond_of_interval(0, 2, w).size() == 5);
}

TEST_CASE("diamond_of_interval: single point, full slice") {
  Window w(0, 3);
  CHECK(diamond_of_interval(1, 1, w) == mk({Point{0, 1}}));
  CHECK(diamond_of_interval(0, 3, w) == Region(w.points()));
  CHECK_THROWS_AS(diamond_of_interval(2, 1, w), std::invalid_argument);
}

TEST_CASE("region poset: single point window") {
  Window w(0, 0);
  RegionPoset rp(w, 1000);
  CHECK(rp.size() == 2);  // empty and the point
  CHECK(rp.empty_index() >= 0);
  CHECK(rp.full_index() >= 0);
}

TEST_CASE("region poset: every element is causally complete, joins present") {
  for (int hi : {1, 2, 3}) {
    Window w(0, hi);
    RegionPoset rp(w, 10000);
    for (const Region& r : rp.regions()) CHECK(causal_completion(r, w) == r);
    // Exactly the fixed points: any completion lands in the poset.
    std::mt19937_64 eng(7);
    for (int k = 0; k < 50; ++k) {
      Region o = random_subset(w, eng);
      CHECK(rp.index_of(causal_completion(o, w)) >= 0);
    }
    for (size_t i = 0; i < rp.size(); ++i)
      for (size_t j = 0; j < rp.size(); ++j) {
        int k = rp.join(static_cast<int>(i), static_cast<int>(j));
        CHECK(rp.leq(static_cast<int>(i), k));
        CHECK(rp.leq(static_cast<int>(j), k));
      }
  }
}

TEST_CASE("region poset caps") {
  Window w(-3, 3);
  CHECK_THROWS_AS(RegionPoset(w, 3), CapExceeded);
}

TEST_CASE("Galois property and closure laws, exhaustive at slice radius <= 3") {
  for (int radius = 0; radius <= 3; ++radius) {
    Window w(-radius, radius);
    RegionPoset rp(w, 20000);
    // O <= P' iff P <= O', over all region pairs.
    for (const Region& o : rp.regions())
      for (const Region& p : rp.regions()) {
        const bool lhs = o.subset_of(causal_complement(p, w));
        const bool rhs = p.subset_of(causal_complement(o, w));
        CHECK(lhs == rhs);
      }
    // ''' = ' on poset elements and random subsets.
    std::mt19937_64 eng(11 + radius);
    std::vector<Region> probes = rp.regions();
    for (int k = 0; k < 30; ++k) probes.push_back(random_subset(w, eng));
    for (const Region& o : probes) {
      Region c1 = causal_complement(o, w);
      Region c3 = causal_complement(causal_completion(o, w), w);
      CHECK(c1 == c3);
      // closure operator: extensive, idempotent
      Region cc = causal_completion(o, w);
      CHECK(o.subset_of(cc));
      CHECK(causal_completion(cc, w) == cc);
    }
    // monotone
    for (size_t i = 0; i < probes.size(); ++i)
      for (size_t j = 0; j < probes.size(); ++j)
        if (probes[i].subset_of(probes[j]))
          CHECK(causal_completion(probes[i], w)
                    .subset_of(causal_completion(probes[j], w)));
  }
}

TEST_CASE("the t=0 row is a Cauchy slice for its window") {
  for (int hi : {0, 1, 2, 3, 4}) {
    Window w(0, hi);
    // Distinct slice points are pairwise incomparable.
    auto slice = w.slice_points();
    for (const Point& a : slice)
      for (const Point& b : slice)
        if (!(a == b)) CHECK(spacelike(a, b));
    // Every off-slice point connects causally to the slice, so maximal
    // causal chains cannot avoid it.
    for (const Point& p : w.points()) {
      if (p.t == 0) continue;
      bool connected = false;
      for (const Point& s : slice)
        if (causal_leq(p, s) || causal_leq(s, p)) connected = true;
      CHECK(connected);
    }
    // No maximal chain skips the slice: any covering pair crossing t=0 has a
    // slice point between.
    for (const Point& p : w.points())
      for (const Point& q : w.points()) {
        if (!(p.t < 0 && q.t > 0 && causal_leq(p, q))) continue;
        bool between = false;
        for (const Point& s : slice)
          if (causal_leq(p, s) && causal_leq(s, q)) between = true;
        CHECK(between);
      }
  }
}

TEST_CASE("slice opens: normalization, set operations, parsing") {
  SliceOpen u({{0, 1}, {1, 2}});  // overlapping intervals merge
  CHECK(u.intervals().size() == 1);
  CHECK(u.str() == "0..2");

  SliceOpen v = SliceOpen::parse("0,2..3");
  CHECK(v.component_count() == 2);
  CHECK(v.sites() == std::vector<int>{0, 2, 3});
  CHECK(SliceOpen::parse(v.str()) == v);
  CHECK(SliceOpen::parse("empty").empty());
  CHECK_THROWS_AS(SliceOpen::parse("a..b"), SpecError);
  CHECK_THROWS_AS(SliceOpen::parse("3..1"), SpecError);

  SliceOpen a = SliceOpen::interval(0, 2), b = SliceOpen::interval(2, 4);
  CHECK(a.unite(b) == SliceOpen::interval(0, 4));
  CHECK(a.intersect(b) == SliceOpen::interval(2, 2));
  CHECK(a.minus(b) == SliceOpen::interval(0, 1));
  CHECK(a.intersect(SliceOpen{}).empty());
}

TEST_CASE("spacelike gap measures touching") {
  Region a = mk({Point{0, 0}});
  Region b = mk({Point{0, 1}});
  Region c = mk({Point{0, 2}});
  CHECK(spacelike_gap(a, b) == 1);
  CHECK(spacelike_gap(a, c) == 2);
  CHECK_FALSE(spacelike_gap(a, a).has_value());
  CHECK_FALSE(spacelike_gap(a, Region{}).has_value());
}
