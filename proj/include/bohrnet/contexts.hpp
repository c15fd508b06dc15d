#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "bohrnet/algebra.hpp"

namespace bohrnet {

// A commutative unital subalgebra of a region algebra. Contexts produced by
// intersection closure carry no generator labels and are marked derived.
struct Context {
  AlgebraSpan span;
  std::vector<std::string> gen_labels;
  bool derived = false;
};

struct ContextOptions {
  bool include_trivial = true;   // keep span{I} as the bottom element
  bool maximal_only = false;     // generate only from maximal commuting subsets
  size_t poset_cap = 200000;
};

// Finite poset of contexts, ordered by inclusion of spans. Always closed
// under pairwise intersection (the trivial context is re-added by closure if
// an intersection requires it, even when include_trivial is false).
class ContextPoset {
 public:
  const AlgebraSpan& region_algebra() const { return region_; }
  size_t size() const { return contexts_.size(); }
  const Context& context(int i) const { return contexts_[i]; }
  const std::vector<Context>& contexts() const { return contexts_; }
  bool leq(int i, int j) const { return leq_[i][static_cast<size_t>(j)]; }
  int bottom() const { return bottom_; }  // -1 when absent
  int index_of(const AlgebraSpan& s) const;
  std::vector<int> maximal_indices() const;

 private:
  friend class ContextPosetBuilder;
  AlgebraSpan region_;
  std::vector<Context> contexts_;
  std::vector<std::vector<bool>> leq_;
  std::unordered_map<size_t, std::vector<int>> by_hash_;
  int bottom_ = -1;
};

// Mutable accumulation phase: the net layer adds intersection contexts from
// larger regions until the whole family stabilizes, then finalizes.
class ContextPosetBuilder {
 public:
  ContextPosetBuilder() = default;
  ContextPosetBuilder(AlgebraSpan region, ContextOptions opt);

  // Seeds contexts generated by commuting subsets of gens (all subsets, or
  // only maximal ones per the options), then closes under pairwise
  // intersection. Throws SpecError if a generator is outside the region.
  void seed_from_generators(const std::vector<GeneratorDecl>& gens);

  // Returns true when the span was new.
  bool ensure(const AlgebraSpan& span, std::vector<std::string> labels = {},
              bool derived = true);
  void close_under_intersections();

  bool contains(const AlgebraSpan& span) const;
  size_t size() const { return spans_.size(); }
  const std::vector<Context>& staged() const { return spans_; }
  const AlgebraSpan& region_algebra() const { return region_; }

  ContextPoset finalize() const;

 private:
  AlgebraSpan region_;
  ContextOptions opt_;
  std::vector<Context> spans_;
  std::unordered_map<size_t, std::vector<int>> by_hash_;
};

ContextPoset build_context_poset(const AlgebraSpan& region_algebra,
                                 const std::vector<GeneratorDecl>& gens,
                                 const ContextOptions& opt = {});

// The copresheaf sending each context to itself, with restriction along
// inclusion given by subspace inclusion.
struct TautologicalCopresheaf {
  const ContextPoset* poset;
  const AlgebraSpan& at(int ctx) const { return poset->context(ctx).span; }
  bool functorial() const;
};

struct AlexandrovResult {
  bool capped = false;
  size_t count = 0;  // exact when not capped, otherwise a lower bound
  std::vector<std::vector<int>> opens;  // each an ascending list of indices
};

// Enumerates the upward closed subsets of the poset (the opens of its
// Alexandrov topology). Stops at `cap` opens and reports the bound instead.
AlexandrovResult alexandrov_opens(const ContextPoset& p, size_t cap);

// The monotone map P2 -> P1 sending C to C n A1. Throws ClosureError when an
// image is missing from P1. Verifies monotonicity and bottom preservation.
std::vector<int> intersection_functor(const ContextPoset& p2, const AlgebraSpan& a1,
                                      const ContextPoset& p1);

}  // namespace bohrnet
