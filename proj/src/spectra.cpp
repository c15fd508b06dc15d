#include "bohrnet/spectra.hpp"

#include <algorithm>

#include "bohrnet/errors.hpp"

namespace bohrnet {

namespace {

// b restricted to a minimal projection e of a commutative algebra containing
// both acts as a scalar: b*e = v*e. Reads v off the first nonzero entry of e.
Scalar scalar_on_projection(const Mat& b, const Mat& e) {
  Mat be = b * e;
  const int d = e.dim();
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      if (!e.at(r, c).is_zero()) return be.at(r, c) * e.at(r, c).inverse();
  throw std::logic_error("zero projection in scalar_on_projection");
}

}  // namespace

std::vector<Character> spectrum_of_context(const Context& c,
                                           const std::vector<GeneratorDecl>& gens) {
  for (const auto& g : gens) {
    if (!c.span.contains(g.matrix))
      throw SpecError("generator '" + g.label + "' is not in the context");
    for (const auto& h : gens)
      if (!g.matrix.commutes_with(h.matrix))
        throw SpecError("generators '" + g.label + "' and '" + h.label +
                        "' of one context do not commute");
  }
  std::vector<GeneratorDecl> ordered = gens;
  std::sort(ordered.begin(), ordered.end(),
            [](const GeneratorDecl& a, const GeneratorDecl& b) { return a.label < b.label; });
  const int d = c.span.ambient_dim();
  std::vector<std::vector<std::pair<Scalar, Mat>>> eigs;
  for (const auto& g : ordered) {
    auto e = spectral_projections(g);
    std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) {
      return Scalar::cmp(a.first, b.first) < 0;
    });
    eigs.push_back(std::move(e));
  }
  std::vector<Character> out;
  // Depth-first over one eigenvalue per generator, pruning zero products.
  std::vector<Scalar> chosen;
  auto rec = [&](auto&& self, size_t gi, const Mat& proj) -> void {
    if (proj.is_zero()) return;
    if (gi == ordered.size()) {
      Character ch;
      ch.joint_projection = proj;
      for (size_t k = 0; k < ordered.size(); ++k)
        ch.values.emplace_back(ordered[k].label, chosen[k]);
      out.push_back(std::move(ch));
      return;
    }
    for (const auto& [lambda, e] : eigs[gi]) {
      chosen.push_back(lambda);
      self(self, gi + 1, proj * e);
      chosen.pop_back();
    }
  };
  rec(rec, 0, Mat::identity(d));
  return out;
}

SpectralPresheaf SpectralPresheaf::build(const ContextPoset& poset,
                                         const std::vector<GeneratorDecl>& decls) {
  SpectralPresheaf sp;
  sp.poset_ = &poset;
  sp.chars_.resize(poset.size());

  auto decl_by_label = [&](const std::string& label) -> const GeneratorDecl& {
    for (const auto& g : decls)
      if (g.label == label) return g;
    throw SpecError("no declaration for generator label '" + label + "'");
  };

  const auto maximal = poset.maximal_indices();
  std::vector<bool> is_max(poset.size(), false);
  for (int m : maximal) is_max[m] = true;

  for (int m : maximal) {
    const Context& c = poset.context(m);
    if (c.derived)
      throw SpecError("maximal context without a generating set; cannot build its spectrum");
    std::vector<GeneratorDecl> gens;
    for (const auto& l : c.gen_labels) gens.push_back(decl_by_label(l));
    sp.chars_[m] = spectrum_of_context(c, gens);
    for (auto& ch : sp.chars_[m]) ch.context = m;
  }

  // Characters of every other context, by coarsening those of the first
  // maximal context above it: group the parent's minimal projections by the
  // scalars that the context's basis elements take on them.
  for (size_t ci = 0; ci < poset.size(); ++ci) {
    const int c = static_cast<int>(ci);
    if (is_max[c]) continue;
    int parent = -1;
    for (int m : maximal)
      if (poset.leq(c, m)) {
        parent = m;
        break;
      }
    if (parent < 0) throw std::logic_error("context without a maximal context above it");
    const auto& pchars = sp.chars_[parent];
    const auto basis = poset.context(c).span.basis();
    std::vector<std::vector<Scalar>> coords(pchars.size());
    for (size_t k = 0; k < pchars.size(); ++k)
      for (const Mat& b : basis)
        coords[k].push_back(scalar_on_projection(b, pchars[k].joint_projection));
    std::vector<int> block(pchars.size(), -1);
    for (size_t k = 0; k < pchars.size(); ++k) {
      if (block[k] >= 0) continue;
      const int id = static_cast<int>(sp.chars_[ci].size());
      Mat sum = pchars[k].joint_projection;
      block[k] = id;
      for (size_t l = k + 1; l < pchars.size(); ++l)
        if (block[l] < 0 && coords[l] == coords[k]) {
          block[l] = id;
          sum = sum + pchars[l].joint_projection;
        }
      Character ch;
      ch.context = c;
      ch.joint_projection = std::move(sum);
      for (const auto& label : poset.context(c).gen_labels) {
        const auto& g = decl_by_label(label);
        ch.values.emplace_back(label,
                               scalar_on_projection(g.matrix, ch.joint_projection));
      }
      std::sort(ch.values.begin(), ch.values.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      sp.chars_[ci].push_back(std::move(ch));
    }
  }

  // Restriction map for every comparable pair: a character of the finer
  // context restricts to the unique character whose projection dominates it.
  for (size_t lo = 0; lo < poset.size(); ++lo)
    for (size_t hi = 0; hi < poset.size(); ++hi) {
      if (!poset.leq(static_cast<int>(lo), static_cast<int>(hi))) continue;
      std::vector<int> map(sp.chars_[hi].size(), -1);
      for (size_t k = 0; k < sp.chars_[hi].size(); ++k) {
        const Mat& fine = sp.chars_[hi][k].joint_projection;
        for (size_t l = 0; l < sp.chars_[lo].size(); ++l) {
          if (sp.chars_[lo][l].joint_projection * fine == fine) {
            if (map[k] >= 0)
              throw std::logic_error("restriction map is not unique");
            map[k] = static_cast<int>(l);
          }
        }
        if (map[k] < 0) throw std::logic_error("restriction map is not total");
      }
      sp.restr_[{static_cast<int>(lo), static_cast<int>(hi)}] = std::move(map);
    }
  return sp;
}

const std::vector<int>& SpectralPresheaf::restriction(int lower, int upper) const {
  auto it = restr_.find({lower, upper});
  if (it == restr_.end())
    throw std::invalid_argument("restriction requested for an incomparable pair");
  return it->second;
}

bool SpectralPresheaf::functorial() const {
  const auto& p = *poset_;
  const int n = static_cast<int>(p.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!p.leq(a, b)) continue;
      for (int c = 0; c < n; ++c) {
        if (!p.leq(b, c)) continue;
        const auto& ab = restriction(a, b);
        const auto& bc = restriction(b, c);
        const auto& ac = restriction(a, c);
        for (size_t k = 0; k < chars_[c].size(); ++k)
          if (ac[k] != ab[bc[k]]) return false;
      }
    }
  return true;
}

SectionSearchResult enumerate_global_sections(const SpectralPresheaf& sp,
                                              std::uint64_t cap) {
  const ContextPoset& p = sp.poset();
  const int n = static_cast<int>(p.size());
  const auto maximal = p.maximal_indices();
  // Contexts below each maximal one, with their restriction maps.
  std::vector<std::vector<std::pair<int, const std::vector<int>*>>> below(maximal.size());
  for (size_t mi = 0; mi < maximal.size(); ++mi)
    for (int c = 0; c < n; ++c)
      if (c != maximal[mi] && p.leq(c, maximal[mi]))
        below[mi].emplace_back(c, &sp.restriction(c, maximal[mi]));

  SectionSearchResult res;
  std::vector<int> assign(n, -1);
  std::vector<int> undo;
  auto rec = [&](auto&& self, size_t mi) -> bool {
    if (mi == maximal.size()) {
      ++res.count;
      if (res.witnesses.size() < 8) {
        GlobalSection s;
        s.choice = assign;
        res.witnesses.push_back(std::move(s));
      }
      if (res.count >= cap) {
        res.exact = false;
        return false;
      }
      return true;
    }
    const int m = maximal[mi];
    const size_t n_choices = sp.characters(m).size();
    for (size_t k = 0; k < n_choices; ++k) {
      const size_t undo_mark = undo.size();
      bool ok = assign[m] < 0 || assign[m] == static_cast<int>(k);
      if (ok && assign[m] < 0) {
        assign[m] = static_cast<int>(k);
        undo.push_back(m);
      }
      if (ok)
        for (const auto& [c, restr] : below[mi]) {
          const int forced = (*restr)[k];
          if (assign[c] < 0) {
            assign[c] = forced;
            undo.push_back(c);
          } else if (assign[c] != forced) {
            ok = false;
            break;
          }
        }
      if (ok && !self(self, mi + 1)) return false;
      while (undo.size() > undo_mark) {
        assign[undo.back()] = -1;
        undo.pop_back();
      }
    }
    return true;
  };
  rec(rec, 0);
  return res;
}

KsReport ks_check(int ambient_dim, const std::vector<GeneratorDecl>& projections,
                  std::uint64_t section_cap) {
  KsReport rep;
  rep.dimension = ambient_dim;
  rep.projection_count = projections.size();
  rep.dimension_flagged = ambient_dim <= 2;
  for (const auto& g : projections) {
    Mat sq = g.matrix * g.matrix;
    if (sq != g.matrix)
      throw SpecError("projection '" + g.label + "' is not idempotent; residual " +
                      (sq - g.matrix).str());
    g.validate();
  }
  ContextOptions opt;
  opt.maximal_only = true;
  AlgebraSpan ambient = AlgebraSpan::generate(
      ambient_dim, [&] {
        std::vector<Mat> ms;
        for (const auto& g : projections) ms.push_back(g.matrix);
        return ms;
      }());
  ContextPoset poset = build_context_poset(ambient, projections, opt);
  rep.context_count = poset.size();
  rep.maximal_context_count = poset.maximal_indices().size();
  SpectralPresheaf sp = SpectralPresheaf::build(poset, projections);
  rep.sections = enumerate_global_sections(sp, section_cap);
  rep.contextual = rep.sections.exact && rep.sections.count == 0;
  return rep;
}

}  // namespace bohrnet
