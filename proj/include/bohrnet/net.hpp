#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "bohrnet/contexts.hpp"
#include "bohrnet/spacetime.hpp"

namespace bohrnet {

enum class NetFamily { spin_chain, constant_commutative, global_qubit, custom };

std::string family_name(NetFamily f);
NetFamily family_from_name(const std::string& name);

struct SiteDecl {
  std::string label;
  int dim = 0;
  std::vector<GeneratorDecl> gens;  // matrices of size `dim`
};

// An extra observable attached to a set of slice sites; its matrix lives on
// the tensor product of those sites (ascending site order) and is embedded
// into the ambient algebra with identities elsewhere.
struct DerivedGenDecl {
  std::vector<int> sites;  // x coordinates, ascending
  GeneratorDecl gen;
};

struct NetFlags {
  bool include_trivial_context = true;
  size_t cover_cap = 512;
  std::uint64_t section_cap = 1000000;
  size_t region_cap = 4096;
  size_t poset_cap = 200000;
  int threads = 1;
};

struct NetSpec {
  NetFamily family = NetFamily::spin_chain;
  int slice_lo = 0, slice_hi = 0;
  std::vector<SiteDecl> sites;  // tensor families: one per slice site;
                                // constant/global families: exactly one entry
  std::vector<DerivedGenDecl> derived;
  NetFlags flags;

  Window window() const { return Window(slice_lo, slice_hi); }
  bool tensor_family() const {
    return family == NetFamily::spin_chain || family == NetFamily::custom;
  }
  int ambient_dim() const;
  void validate() const;  // throws SpecError
};

// Embeds a matrix living on the tensor product of the listed sites into the
// ambient algebra of all sites (identity on the others).
Mat embed_on_sites(const Mat& m, const std::vector<int>& gen_sites,
                   const std::vector<int>& all_sites, const std::vector<int>& site_dims);

// Assignment of algebras to causally complete regions, evaluated inside one
// global ambient matrix algebra and memoized. Construction embeds all
// declared generators and validates the spec.
class Net {
 public:
  explicit Net(NetSpec spec);

  const NetSpec& spec() const { return spec_; }
  const RegionPoset& regions() const { return regions_; }
  int ambient_dim() const { return ambient_dim_; }

  const AlgebraSpan& at(int region_idx) const;
  AlgebraSpan evaluate(const Region& r) const;  // region must be in the poset

  // Declared (embedded) generators lying in A(region): site generators of
  // slice sites in the region, derived generators whose site set the region's
  // slice trace contains, and for the constant families all global ones.
  std::vector<GeneratorDecl> region_gens(int region_idx) const;
  const std::vector<GeneratorDecl>& all_gens() const { return ambient_gens_; }

  // Site algebra (embedded) by slice x coordinate.
  const AlgebraSpan& site_algebra(int x) const;

 private:
  std::vector<GeneratorDecl> gens_for_sites(const std::vector<int>& xs) const;

  NetSpec spec_;
  int ambient_dim_ = 0;
  RegionPoset regions_;
  std::vector<GeneratorDecl> ambient_gens_;        // embedded site gens then derived
  std::vector<std::vector<std::string>> site_gen_labels_;  // per site index
  std::vector<AlgebraSpan> site_algebras_;
  AlgebraSpan global_algebra_;  // constant families
  mutable std::mutex memo_mu_;
  mutable std::map<int, AlgebraSpan> memo_;
};

// Restriction of a net to the Cauchy slice: a connected open goes to the
// algebra of its diamond, a disconnected one to the join over components.
class SliceNet {
 public:
  explicit SliceNet(const Net& net) : net_(&net) {}

  const Net& net() const { return *net_; }
  AlgebraSpan at(const SliceOpen& u) const;
  // Declared generators lying in at(u); for disconnected opens membership is
  // verified against the component-wise join.
  std::vector<GeneratorDecl> open_gens(const SliceOpen& u) const;
  std::vector<SliceOpen> all_opens() const;  // every nonempty subset of the slice

 private:
  const Net* net_;
  mutable std::mutex memo_mu_;
  mutable std::map<SliceOpen, AlgebraSpan> memo_;
};

struct RegionPairWitness {
  Region o1, o2;
  Mat a, b;  // the non-commuting element pair
};

struct IsotonyVerdict {
  bool pass = true;
  std::optional<std::pair<Region, Region>> witness;
  size_t pairs_checked = 0;
};

struct CausalLocalityVerdict {
  bool pass = true;
  std::optional<RegionPairWitness> witness;
  size_t pairs_checked = 0;
};

struct AdditivityWitness {
  Region o1, o2;
  int dim_join = 0, dim_region_join = 0;
};

struct AdditivityVerdict {
  bool pass = true;
  std::optional<AdditivityWitness> witness;
  size_t pairs_checked = 0;
};

struct StrongLocalityWitness {
  Region o1, o2;
  AlgebraSpan c1, c2;
  AlgebraSpan lhs;   // (C1 v C2) n A(O1) or symmetric, whichever failed
  bool first_side = true;
};

// Strong locality is causal locality plus the intersection identities; the
// structure makes the implication part of the verdict itself.
struct StrongLocalityVerdict {
  CausalLocalityVerdict locality;
  bool intersections_ok = true;
  std::optional<StrongLocalityWitness> witness;
  size_t triples_checked = 0;
  bool pass() const { return locality.pass && intersections_ok; }
};

struct EinsteinWitness {
  Region o1, o2;
  int dim1 = 0, dim2 = 0, dim_join = 0;
};

struct EinsteinVerdict {
  bool precondition_ok = true;  // causal locality
  bool pass = false;
  std::optional<EinsteinWitness> witness;
  size_t pairs_checked = 0;
};

IsotonyVerdict check_isotony(const Net& net);
CausalLocalityVerdict check_causal_locality(const Net& net);
// Checked on spacelike pairs whose closures touch at lattice scale
// (minimal spacelike gap 1).
AdditivityVerdict check_additivity(const Net& net);
StrongLocalityVerdict check_strong_locality(const Net& net,
                                            const std::vector<ContextPoset>& region_posets);
EinsteinVerdict check_einstein_causality(const Net& net);

}  // namespace bohrnet
