#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "bohrnet/net.hpp"
#include "bohrnet/spectra.hpp"

namespace bohrnet {

// A context poset with its tautological copresheaf of algebras; the concrete
// stand-in for a ringed space carried by the Alexandrov topology.
struct RingedPosetSpace {
  ContextPoset poset;
  TautologicalCopresheaf ring() const { return TautologicalCopresheaf{&poset}; }
};

RingedPosetSpace bohrify(const AlgebraSpan& region_algebra,
                         const std::vector<GeneratorDecl>& gens,
                         const ContextOptions& opt = {});

// The contravariant assignment of ringed poset-spaces to regions: per-region
// context posets, closed so that every structure map (intersection with the
// smaller region's algebra) lands inside the smaller poset. Functoriality of
// the structure maps is verified during construction.
class BohrifiedNet {
 public:
  BohrifiedNet(const Net& net, const ContextOptions& opt);

  const Net& net() const { return *net_; }
  const ContextPoset& at(int region) const { return posets_[region]; }
  const std::vector<ContextPoset>& posets() const { return posets_; }
  // For smaller <= larger: maps context indices of the larger region's poset
  // to those of the smaller one.
  const std::vector<int>& structure_map(int smaller, int larger) const;
  bool functorial() const { return functorial_; }
  bool ring_morphisms_ok() const { return ring_ok_; }

 private:
  const Net* net_;
  std::vector<ContextPoset> posets_;
  std::map<std::pair<int, int>, std::vector<int>> maps_;
  bool functorial_ = false;
  bool ring_ok_ = false;
};

// Span-level caches shared by the descent machinery; thread-safe.
class SpanOps {
 public:
  AlgebraSpan cached_intersect(const AlgebraSpan& a, const AlgebraSpan& b);
  AlgebraSpan cached_join(const AlgebraSpan& a, const AlgebraSpan& b);

 private:
  using Key = std::pair<size_t, size_t>;
  std::mutex mu_;
  std::map<Key, std::vector<std::tuple<AlgebraSpan, AlgebraSpan, AlgebraSpan>>> meet_, join_;
};

// Context posets for the slice opens needed by a cover family, globally
// closed: for every enumerated edge U' subset of U, each context of P(U)
// intersects A(U') into a context of P(U').
//
// The trivial context is always kept: without it the comparison map is not
// even total (C n A(U) is often trivial), so the descent checks run on
// bottom-complete posets regardless of the include_trivial option, which
// only governs standalone poset construction.
class SliceSystem {
 public:
  SliceSystem(const SliceNet& snet, const ContextOptions& opt);

  // Makes posets available for the given covers (union, parts, overlap and
  // the three disjoint pieces of each) and runs the closure to a fixpoint.
  void prepare(const std::vector<std::pair<SliceOpen, SliceOpen>>& covers);

  const ContextPoset& poset(const SliceOpen& u) const;
  AlgebraSpan algebra(const SliceOpen& u) const { return snet_->at(u); }
  const SliceNet& slice_net() const { return *snet_; }
  SpanOps& ops() { return ops_; }

 private:
  void ensure_builder(const SliceOpen& u);

  const SliceNet* snet_;
  ContextOptions opt_;
  std::map<SliceOpen, ContextPosetBuilder> builders_;
  std::map<SliceOpen, ContextPoset> posets_;
  SpanOps ops_;
};

// All ordered pairs (U, V) of nonempty slice opens (each at most two
// intervals) whose union again has at most two components.
std::vector<std::pair<SliceOpen, SliceOpen>> enumerate_covers(const Window& w, size_t cap);

// Tuples of contexts, one per piece, agreeing pairwise on the overlaps'
// algebras; ordered componentwise.
struct PullbackPoset {
  std::vector<std::vector<int>> elems;  // sorted lexicographically
  int bottom = -1;
  int index_of(const std::vector<int>& tuple) const;
};

struct AdjointSearch {
  bool exists = true;
  std::vector<int> L;                  // pullback element -> context of P(W)
  std::optional<int> witness;          // element with no least candidate
  bool monotone = true;                // verified, not assumed
  bool law_holds = true;               // L(x) <= c  <=>  x <= f(c), all pairs
  size_t law_pairs_checked = 0;
};

// One comparison-map run: f : P(union of pieces) -> pullback over the pieces,
// C |-> (C n A(piece_k))_k, followed by the left-adjoint search and the
// full-faithfulness check (f o L = id).
struct PieceCheck {
  std::vector<SliceOpen> pieces;
  bool f_well_defined = true;
  PullbackPoset pullback;
  std::vector<std::vector<int>> f_tuples;  // per context of P(W)
  std::vector<int> f_elem;                 // per context of P(W): pullback index
  AdjointSearch adj;
  bool fully_faithful = true;
  std::optional<int> ff_witness;
  bool local() const { return f_well_defined && adj.exists && fully_faithful; }
};

PieceCheck run_piece_check(SliceSystem& sys, const SliceOpen& whole,
                           const std::vector<SliceOpen>& pieces);

struct DescentReport {
  SliceOpen U, V;
  bool overlapping = false;
  PieceCheck direct;
  std::optional<PieceCheck> three_piece;  // overlapping covers only
  bool three_piece_agrees = true;
  // The strong-locality intersection identities, quantified over the
  // pullback's context pairs; equivalent to f o L = id when L exists.
  bool strong_identities_hold = true;
  // On causally local covers L coincides with the span join; verified.
  bool adjoint_is_join = true;
  bool local() const { return direct.local(); }
  bool geometric_surjection() const { return local(); }  // local implies surjection
};

DescentReport check_cover(SliceSystem& sys, const SliceOpen& u, const SliceOpen& v);

std::vector<DescentReport> check_descent_local(
    SliceSystem& sys, const std::vector<std::pair<SliceOpen, SliceOpen>>& covers,
    int threads);

struct TheoremReport {
  IsotonyVerdict isotony;
  CausalLocalityVerdict locality;
  AdditivityVerdict additivity;
  StrongLocalityVerdict strong;
  EinsteinVerdict einstein;
  std::vector<std::pair<SliceOpen, SliceOpen>> covers;
  std::vector<DescentReport> descent;
  bool descent_all_local = true;
  bool applicable = false;              // the additivity hypothesis holds
  std::optional<bool> consistent;       // empty when not applicable
};

// Runs every axiom checker and the descent checker over all enumerated
// covers, then compares the strong-locality verdict with descent locality.
TheoremReport theorem_check(const Net& net, const BohrifiedNet& bnet, SliceSystem& sys);

}  // namespace bohrnet
