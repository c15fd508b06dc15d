#include "bohrnet/contexts.hpp"

#include <algorithm>

#include "bohrnet/errors.hpp"

namespace bohrnet {

namespace {

int find_span(const std::unordered_map<size_t, std::vector<int>>& by_hash,
              const std::vector<Context>& spans, const AlgebraSpan& s) {
  auto it = by_hash.find(s.hash());
  if (it == by_hash.end()) return -1;
  for (int i : it->second)
    if (spans[i].span == s) return i;
  return -1;
}

}  // namespace

int ContextPoset::index_of(const AlgebraSpan& s) const {
  return find_span(by_hash_, contexts_, s);
}

std::vector<int> ContextPoset::maximal_indices() const {
  std::vector<int> out;
  for (size_t i = 0; i < contexts_.size(); ++i) {
    bool maximal = true;
    for (size_t j = 0; j < contexts_.size(); ++j)
      if (i != j && leq_[i][j]) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(static_cast<int>(i));
  }
  return out;
}

ContextPosetBuilder::ContextPosetBuilder(AlgebraSpan region, ContextOptions opt)
    : region_(std::move(region)), opt_(opt) {}

bool ContextPosetBuilder::ensure(const AlgebraSpan& span, std::vector<std::string> labels,
                                 bool derived) {
  int at = find_span(by_hash_, spans_, span);
  if (at >= 0) {
    // Prefer a generated description over a derived one.
    if (spans_[at].derived && !derived) {
      spans_[at].gen_labels = std::move(labels);
      spans_[at].derived = false;
    }
    return false;
  }
  if (spans_.size() >= opt_.poset_cap)
    throw CapExceeded("context poset cap exceeded", static_cast<long long>(spans_.size()));
  by_hash_[span.hash()].push_back(static_cast<int>(spans_.size()));
  spans_.push_back(Context{span, std::move(labels), derived});
  return true;
}

bool ContextPosetBuilder::contains(const AlgebraSpan& span) const {
  return find_span(by_hash_, spans_, span) >= 0;
}

void ContextPosetBuilder::seed_from_generators(const std::vector<GeneratorDecl>& gens) {
  const int d = region_.ambient_dim();
  for (const auto& g : gens) {
    if (g.matrix.dim() != d)
      throw SpecError("generator '" + g.label + "' has dimension " +
                      std::to_string(g.matrix.dim()) + ", region algebra has " +
                      std::to_string(d));
    if (!region_.contains(g.matrix))
      throw SpecError("generator '" + g.label + "' lies outside the region algebra");
  }
  const size_t n = gens.size();
  std::vector<std::vector<bool>> comm(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j)
      comm[i][j] = comm[j][i] = gens[i].matrix.commutes_with(gens[j].matrix);

  auto make_context = [&](const std::vector<int>& subset) {
    std::vector<Mat> mats;
    std::vector<std::string> labels;
    for (int i : subset) {
      mats.push_back(gens[i].matrix);
      labels.push_back(gens[i].label);
    }
    AlgebraSpan span = AlgebraSpan::generate(d, mats);
    if (!span.is_commutative()) return;  // a non-normal oddity; subsets are prefiltered anyway
    ensure(span, std::move(labels), /*derived=*/false);
  };

  if (opt_.include_trivial) ensure(AlgebraSpan::trivial(d), {}, /*derived=*/false);

  if (!opt_.maximal_only) {
    // All pairwise-commuting subsets, by depth-first extension.
    std::vector<int> chosen;
    auto rec = [&](auto&& self, size_t next) -> void {
      if (!chosen.empty()) make_context(chosen);
      for (size_t i = next; i < n; ++i) {
        bool ok = true;
        for (int c : chosen)
          if (!comm[c][i]) {
            ok = false;
            break;
          }
        if (!ok) continue;
        chosen.push_back(static_cast<int>(i));
        self(self, i + 1);
        chosen.pop_back();
      }
    };
    rec(rec, 0);
  } else {
    // Bron-Kerbosch over the commutation graph; maximal cliques only.
    std::vector<int> all(n);
    for (size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);
    std::vector<int> r;
    auto bk = [&](auto&& self, std::vector<int> p, std::vector<int> x) -> void {
      if (p.empty() && x.empty()) {
        if (!r.empty()) make_context(r);
        return;
      }
      std::vector<int> p_copy = p;
      for (int v : p_copy) {
        r.push_back(v);
        std::vector<int> p2, x2;
        for (int u : p)
          if (comm[v][u] && u != v) p2.push_back(u);
        for (int u : x)
          if (comm[v][u] && u != v) x2.push_back(u);
        self(self, p2, x2);
        r.pop_back();
        p.erase(std::remove(p.begin(), p.end(), v), p.end());
        x.push_back(v);
      }
    };
    bk(bk, all, {});
    if (n == 0 && !opt_.include_trivial) ensure(AlgebraSpan::trivial(d), {}, false);
  }
  close_under_intersections();
}

void ContextPosetBuilder::close_under_intersections() {
  // Meets of commutative subalgebras are commutative subalgebras; the family
  // generated under pairwise intersection is finite, so this terminates.
  size_t first_unprocessed = 0;
  while (first_unprocessed < spans_.size()) {
    const size_t upto = spans_.size();
    for (size_t i = first_unprocessed; i < upto; ++i)
      for (size_t j = 0; j < i; ++j) {
        AlgebraSpan meet = intersect(spans_[i].span, spans_[j].span);
        if (meet.is_trivial() && !opt_.include_trivial) continue;
        ensure(meet);
      }
    first_unprocessed = upto;
  }
}

ContextPoset ContextPosetBuilder::finalize() const {
  ContextPoset p;
  p.region_ = region_;
  p.contexts_ = spans_;
  std::sort(p.contexts_.begin(), p.contexts_.end(), [](const Context& a, const Context& b) {
    return AlgebraSpan::cmp(a.span, b.span) < 0;
  });
  for (size_t i = 0; i < p.contexts_.size(); ++i)
    p.by_hash_[p.contexts_[i].span.hash()].push_back(static_cast<int>(i));
  const size_t n = p.contexts_.size();
  p.leq_.assign(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      p.leq_[i][j] =
          i == j || p.contexts_[j].span.contains_span(p.contexts_[i].span);
  AlgebraSpan triv = AlgebraSpan::trivial(region_.ambient_dim());
  p.bottom_ = p.index_of(triv);
  return p;
}

ContextPoset build_context_poset(const AlgebraSpan& region_algebra,
                                 const std::vector<GeneratorDecl>& gens,
                                 const ContextOptions& opt) {
  ContextPosetBuilder b(region_algebra, opt);
  b.seed_from_generators(gens);
  return b.finalize();
}

bool TautologicalCopresheaf::functorial() const {
  const size_t n = poset->size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (poset->leq(static_cast<int>(i), static_cast<int>(j)) &&
          !at(static_cast<int>(j)).contains_span(at(static_cast<int>(i))))
        return false;
  return true;
}

AlexandrovResult alexandrov_opens(const ContextPoset& p, size_t cap) {
  const int n = static_cast<int>(p.size());
  // Order elements so that everything above an element comes earlier; then a
  // subset is up-closed iff including i forces all previously decided j > i.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int ua = 0, ub = 0;
    for (int k = 0; k < n; ++k) {
      ua += p.leq(a, k);
      ub += p.leq(b, k);
    }
    if (ua != ub) return ua < ub;  // fewer elements above = higher in the poset
    return a < b;
  });
  AlexandrovResult res;
  std::vector<bool> in(n, false);
  auto rec = [&](auto&& self, int pos) -> bool {
    if (res.count >= cap) return false;
    if (pos == n) {
      ++res.count;
      std::vector<int> open;
      for (int i = 0; i < n; ++i)
        if (in[i]) open.push_back(i);
      res.opens.push_back(std::move(open));
      return true;
    }
    const int e = order[pos];
    in[e] = false;
    if (!self(self, pos + 1)) return false;
    bool can_include = true;
    for (int q = 0; q < pos; ++q) {
      if (p.leq(e, order[q]) && !in[order[q]]) {
        can_include = false;
        break;
      }
    }
    if (can_include) {
      in[e] = true;
      if (!self(self, pos + 1)) return false;
      in[e] = false;
    }
    return true;
  };
  res.capped = !rec(rec, 0);
  return res;
}

std::vector<int> intersection_functor(const ContextPoset& p2, const AlgebraSpan& a1,
                                      const ContextPoset& p1) {
  if (!p2.region_algebra().contains_span(a1))
    throw std::invalid_argument("intersection_functor: A1 is not contained in A2");
  std::vector<int> map(p2.size(), -1);
  for (size_t i = 0; i < p2.size(); ++i) {
    AlgebraSpan image = intersect(p2.context(static_cast<int>(i)).span, a1);
    int at = p1.index_of(image);
    if (at < 0)
      throw ClosureError("intersection functor image missing from target poset (dim " +
                         std::to_string(image.dim()) + ")");
    map[i] = at;
  }
  for (size_t i = 0; i < p2.size(); ++i)
    for (size_t j = 0; j < p2.size(); ++j)
      if (p2.leq(static_cast<int>(i), static_cast<int>(j)) && !p1.leq(map[i], map[j]))
        throw ClosureError("intersection functor is not monotone");
  if (p2.bottom() >= 0 && p1.bottom() >= 0 && map[p2.bottom()] != p1.bottom())
    throw ClosureError("intersection functor does not preserve the bottom element");
  return map;
}

}  // namespace bohrnet
