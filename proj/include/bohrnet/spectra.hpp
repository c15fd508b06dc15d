#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bohrnet/contexts.hpp"

namespace bohrnet {

// A point of the finite Gelfand spectrum of a context: a minimal nonzero
// joint spectral projection together with the eigenvalue it selects for each
// declared generator of the context.
struct Character {
  int context = -1;
  Mat joint_projection;
  std::vector<std::pair<std::string, Scalar>> values;  // sorted by label
};

// Characters of the context generated by the given commuting declared
// generators: one per nonzero product of spectral projections, one
// eigenvalue chosen per generator. The projections are pairwise orthogonal
// and sum to the identity.
std::vector<Character> spectrum_of_context(const Context& c,
                                           const std::vector<GeneratorDecl>& gens);

// The diagram of spectra over a context poset, with a restriction map along
// every inclusion sending a character to the unique character whose joint
// projection dominates it.
class SpectralPresheaf {
 public:
  // Every maximal context must be generated (carry generator labels); the
  // declarations are looked up by label. Characters of derived contexts are
  // obtained by coarsening a maximal parent's characters.
  static SpectralPresheaf build(const ContextPoset& poset,
                                const std::vector<GeneratorDecl>& decls);

  const ContextPoset& poset() const { return *poset_; }
  const std::vector<Character>& characters(int ctx) const { return chars_[ctx]; }
  // For lower <= upper: maps character indices of `upper` to those of `lower`.
  const std::vector<int>& restriction(int lower, int upper) const;
  bool functorial() const;  // restriction composes along chains

 private:
  const ContextPoset* poset_ = nullptr;
  std::vector<std::vector<Character>> chars_;
  std::map<std::pair<int, int>, std::vector<int>> restr_;
};

// A compatible choice of one character per context.
struct GlobalSection {
  std::vector<int> choice;  // per context index: character index
};

struct SectionSearchResult {
  bool exact = true;        // false when the cap stopped the search
  std::uint64_t count = 0;  // exact count, or a lower bound when capped
  std::vector<GlobalSection> witnesses;  // up to a small fixed number
};

// Exhaustive backtracking over maximal contexts first, propagating
// restrictions downward; exact when the count stays below `cap`.
SectionSearchResult enumerate_global_sections(const SpectralPresheaf& sp,
                                              std::uint64_t cap);

struct KsReport {
  int dimension = 0;
  size_t projection_count = 0;
  size_t context_count = 0;
  size_t maximal_context_count = 0;
  SectionSearchResult sections;
  bool contextual = false;       // no global section exists
  bool dimension_flagged = false;  // ambient dimension <= 2
};

// Builds contexts from the maximal commuting subsets of the given projections
// (declared with spectrum {0,1}), closes under intersection, and counts
// global sections of the spectral presheaf.
KsReport ks_check(int ambient_dim, const std::vector<GeneratorDecl>& projections,
                  std::uint64_t section_cap);

}  // namespace bohrnet
