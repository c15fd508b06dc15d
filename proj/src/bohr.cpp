#include "bohrnet/bohr.hpp"

#include <algorithm>

#include "bohrnet/errors.hpp"
#include "bohrnet/parallel.hpp"

namespace bohrnet {

RingedPosetSpace bohrify(const AlgebraSpan& region_algebra,
                         const std::vector<GeneratorDecl>& gens, const ContextOptions& opt) {
  return RingedPosetSpace{build_context_poset(region_algebra, gens, opt)};
}

BohrifiedNet::BohrifiedNet(const Net& net, const ContextOptions& opt) : net_(&net) {
  const auto& rp = net.regions();
  const int n = static_cast<int>(rp.size());
  // Structure maps need the trivial context as a landing spot; the
  // include_trivial flag only affects which context pairs get quantified.
  ContextOptions structural = opt;
  structural.include_trivial = true;
  std::vector<ContextPosetBuilder> builders;
  builders.reserve(n);
  for (int i = 0; i < n; ++i) {
    builders.emplace_back(net.at(i), structural);
    builders.back().seed_from_generators(net.region_gens(i));
  }
  // Close: for every inclusion O1 <= O2, every context of P(O2) must
  // intersect A(O1) into a context of P(O1).
  bool changed = true;
  while (changed) {
    changed = false;
    for (int small = 0; small < n; ++small)
      for (int large = 0; large < n; ++large) {
        if (small == large || !rp.leq(small, large)) continue;
        const auto staged = builders[large].staged();  // copy: builders mutate
        for (const auto& c : staged) {
          AlgebraSpan img = intersect(c.span, net.at(small));
          if (!builders[small].contains(img)) {
            builders[small].ensure(img);
            changed = true;
          }
        }
      }
    if (changed)
      for (auto& b : builders) b.close_under_intersections();
  }
  for (auto& b : builders) posets_.push_back(b.finalize());

  for (int small = 0; small < n; ++small)
    for (int large = 0; large < n; ++large) {
      if (small == large || !rp.leq(small, large)) continue;
      maps_[{small, large}] =
          intersection_functor(posets_[large], net.at(small), posets_[small]);
    }

  // Contravariant functoriality along every chain, and the ring morphism
  // condition: each structure map only shrinks the context it comes from.
  functorial_ = true;
  ring_ok_ = true;
  for (const auto& [key, m] : maps_) {
    auto [small, large] = key;
    for (size_t c = 0; c < posets_[large].size(); ++c)
      if (!posets_[large].context(static_cast<int>(c)).span.contains_span(
              posets_[small].context(m[c]).span))
        ring_ok_ = false;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || !rp.leq(a, b)) continue;
      for (int c = 0; c < n; ++c) {
        if (b == c || !rp.leq(b, c)) continue;
        const auto& ab = maps_.at({a, b});
        const auto& bc = maps_.at({b, c});
        const auto& ac = maps_.at({a, c});
        for (size_t k = 0; k < posets_[c].size(); ++k)
          if (ac[k] != ab[bc[k]]) functorial_ = false;
      }
    }
}

const std::vector<int>& BohrifiedNet::structure_map(int smaller, int larger) const {
  auto it = maps_.find({smaller, larger});
  if (it == maps_.end())
    throw std::invalid_argument("structure map requested for a non-inclusion");
  return it->second;
}

AlgebraSpan SpanOps::cached_intersect(const AlgebraSpan& a, const AlgebraSpan& b) {
  const Key key{std::min(a.hash(), b.hash()), std::max(a.hash(), b.hash())};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = meet_.find(key);
    if (it != meet_.end())
      for (const auto& [x, y, r] : it->second)
        if ((x == a && y == b) || (x == b && y == a)) return r;
  }
  AlgebraSpan r = intersect(a, b);
  std::lock_guard<std::mutex> lock(mu_);
  meet_[key].emplace_back(a, b, r);
  return r;
}

AlgebraSpan SpanOps::cached_join(const AlgebraSpan& a, const AlgebraSpan& b) {
  const Key key{std::min(a.hash(), b.hash()), std::max(a.hash(), b.hash())};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = join_.find(key);
    if (it != join_.end())
      for (const auto& [x, y, r] : it->second)
        if ((x == a && y == b) || (x == b && y == a)) return r;
  }
  AlgebraSpan r = join(a, b);
  std::lock_guard<std::mutex> lock(mu_);
  join_[key].emplace_back(a, b, r);
  return r;
}

SliceSystem::SliceSystem(const SliceNet& snet, const ContextOptions& opt)
    : snet_(&snet), opt_(opt) {
  opt_.include_trivial = true;  // bottom-complete posets; see class comment
}

void SliceSystem::ensure_builder(const SliceOpen& u) {
  if (builders_.count(u)) return;
  ContextPosetBuilder b(snet_->at(u), opt_);
  b.seed_from_generators(snet_->open_gens(u));
  builders_.emplace(u, std::move(b));
}

void SliceSystem::prepare(const std::vector<std::pair<SliceOpen, SliceOpen>>& covers) {
  // Opens and closure edges (child strictly inside parent) used by the
  // comparison maps and the pullback compatibility conditions.
  std::vector<std::pair<SliceOpen, SliceOpen>> edges;  // (child, parent)
  auto add_edge = [&](const SliceOpen& child, const SliceOpen& parent) {
    ensure_builder(child);
    ensure_builder(parent);
    if (child == parent) return;
    if (std::find(edges.begin(), edges.end(), std::make_pair(child, parent)) == edges.end())
      edges.emplace_back(child, parent);
  };
  for (const auto& [u, v] : covers) {
    const SliceOpen w = u.unite(v);
    const SliceOpen d = u.intersect(v);
    add_edge(u, w);
    add_edge(v, w);
    add_edge(d, u);
    add_edge(d, v);
    for (const SliceOpen& piece : {d, u.minus(v), v.minus(u)}) {
      add_edge(piece, w);
      add_edge(SliceOpen{}, piece);
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [child, parent] : edges) {
      auto& pb = builders_.at(parent);
      auto& cb = builders_.at(child);
      const AlgebraSpan child_alg = snet_->at(child);
      const auto staged = pb.staged();
      for (const auto& c : staged) {
        AlgebraSpan img = ops_.cached_intersect(c.span, child_alg);
        if (!cb.contains(img)) {
          cb.ensure(img);
          changed = true;
        }
      }
    }
    if (changed)
      for (auto& [open, b] : builders_) b.close_under_intersections();
  }
  posets_.clear();
  for (const auto& [open, b] : builders_) posets_.emplace(open, b.finalize());
}

const ContextPoset& SliceSystem::poset(const SliceOpen& u) const {
  auto it = posets_.find(u);
  if (it == posets_.end())
    throw std::invalid_argument("no poset prepared for slice open " + u.str());
  return it->second;
}

std::vector<std::pair<SliceOpen, SliceOpen>> enumerate_covers(const Window& w, size_t cap) {
  // Nonempty slice opens with at most two components.
  std::vector<SliceOpen> opens;
  const int n = w.slice_size();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::pair<int, int>> ivs;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) ivs.emplace_back(w.slice_lo() + i, w.slice_lo() + i);
    SliceOpen open(std::move(ivs));
    if (open.component_count() <= 2) opens.push_back(std::move(open));
  }
  std::sort(opens.begin(), opens.end());
  std::vector<std::pair<SliceOpen, SliceOpen>> covers;
  for (const auto& u : opens)
    for (const auto& v : opens) {
      if (u.unite(v).component_count() > 2) continue;
      covers.emplace_back(u, v);
      if (covers.size() > cap)
        throw CapExceeded("cover cap exceeded; raise --cover-cap",
                          static_cast<long long>(covers.size()));
    }
  return covers;
}

int PullbackPoset::index_of(const std::vector<int>& tuple) const {
  auto it = std::lower_bound(elems.begin(), elems.end(), tuple);
  if (it != elems.end() && *it == tuple) return static_cast<int>(it - elems.begin());
  return -1;
}

PieceCheck run_piece_check(SliceSystem& sys, const SliceOpen& whole,
                           const std::vector<SliceOpen>& pieces) {
  PieceCheck pc;
  pc.pieces = pieces;
  const ContextPoset& pw = sys.poset(whole);
  const size_t k = pieces.size();
  std::vector<const ContextPoset*> pp(k);
  std::vector<AlgebraSpan> palg(k);
  for (size_t i = 0; i < k; ++i) {
    pp[i] = &sys.poset(pieces[i]);
    palg[i] = sys.algebra(pieces[i]);
  }

  // Traces of every piece context on every pairwise overlap, as poset-free
  // span values; tuples must agree on them.
  std::vector<std::vector<std::vector<AlgebraSpan>>> trace(k);
  std::vector<std::vector<AlgebraSpan>> overlap(k, std::vector<AlgebraSpan>(k));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j)
      if (i != j) overlap[i][j] = sys.algebra(pieces[i].intersect(pieces[j]));
  for (size_t i = 0; i < k; ++i) {
    trace[i].resize(pp[i]->size());
    for (size_t c = 0; c < pp[i]->size(); ++c) {
      trace[i][c].resize(k);
      for (size_t j = 0; j < k; ++j)
        if (i != j)
          trace[i][c][j] =
              sys.ops().cached_intersect(pp[i]->context(static_cast<int>(c)).span, overlap[i][j]);
    }
  }

  // Pullback elements: tuples agreeing pairwise on overlaps.
  std::vector<int> tuple(k, -1);
  auto rec = [&](auto&& self, size_t pos) -> void {
    if (pos == k) {
      pc.pullback.elems.push_back(tuple);
      return;
    }
    for (size_t c = 0; c < pp[pos]->size(); ++c) {
      tuple[pos] = static_cast<int>(c);
      bool ok = true;
      for (size_t j = 0; j < pos && ok; ++j)
        if (trace[pos][c][j] != trace[j][static_cast<size_t>(tuple[j])][pos]) ok = false;
      if (ok) self(self, pos + 1);
    }
    tuple[pos] = -1;
  };
  rec(rec, 0);
  std::sort(pc.pullback.elems.begin(), pc.pullback.elems.end());

  std::vector<int> bottoms(k);
  bool have_bottoms = true;
  for (size_t i = 0; i < k; ++i) {
    bottoms[i] = pp[i]->bottom();
    if (bottoms[i] < 0) have_bottoms = false;
  }
  if (have_bottoms) pc.pullback.bottom = pc.pullback.index_of(bottoms);

  // The comparison map.
  pc.f_tuples.resize(pw.size());
  pc.f_elem.assign(pw.size(), -1);
  for (size_t c = 0; c < pw.size(); ++c) {
    std::vector<int> img(k, -1);
    for (size_t i = 0; i < k; ++i) {
      AlgebraSpan piece_part =
          sys.ops().cached_intersect(pw.context(static_cast<int>(c)).span, palg[i]);
      img[i] = pp[i]->index_of(piece_part);
      if (img[i] < 0)
        throw ClosureError("comparison map image missing from piece poset " +
                           pieces[i].str());
    }
    pc.f_tuples[c] = img;
    pc.f_elem[c] = pc.pullback.index_of(img);
    if (pc.f_elem[c] < 0) pc.f_well_defined = false;
  }
  if (!pc.f_well_defined) return pc;

  auto leq_tuple = [&](const std::vector<int>& a, const std::vector<int>& b) {
    for (size_t i = 0; i < k; ++i)
      if (!pp[i]->leq(a[i], b[i])) return false;
    return true;
  };

  // Least element of { c : x <= f(c) } for each pullback element x.
  const size_t nx = pc.pullback.elems.size();
  const size_t nc = pw.size();
  pc.adj.L.assign(nx, -1);
  for (size_t xi = 0; xi < nx; ++xi) {
    const auto& x = pc.pullback.elems[xi];
    std::vector<int> candidates;
    for (size_t c = 0; c < nc; ++c)
      if (leq_tuple(x, pc.f_tuples[c])) candidates.push_back(static_cast<int>(c));
    if (candidates.empty()) {
      pc.adj.exists = false;
      pc.adj.witness = static_cast<int>(xi);
      break;
    }
    int least = candidates[0];
    for (int c : candidates)
      if (pw.leq(c, least)) least = c;
    bool is_least = true;
    for (int c : candidates)
      if (!pw.leq(least, c)) {
        is_least = false;
        break;
      }
    if (!is_least) {
      pc.adj.exists = false;
      pc.adj.witness = static_cast<int>(xi);
      break;
    }
    pc.adj.L[xi] = least;
  }
  if (!pc.adj.exists) return pc;

  // The adjunction law, exhaustively, and monotonicity of L (verified).
  for (size_t xi = 0; xi < nx; ++xi)
    for (size_t c = 0; c < nc; ++c) {
      ++pc.adj.law_pairs_checked;
      const bool lhs = pw.leq(pc.adj.L[xi], static_cast<int>(c));
      const bool rhs = leq_tuple(pc.pullback.elems[xi], pc.f_tuples[c]);
      if (lhs != rhs) pc.adj.law_holds = false;
    }
  for (size_t xi = 0; xi < nx; ++xi)
    for (size_t yi = 0; yi < nx; ++yi)
      if (leq_tuple(pc.pullback.elems[xi], pc.pullback.elems[yi]) &&
          !pw.leq(pc.adj.L[xi], pc.adj.L[yi]))
        pc.adj.monotone = false;

  // Full-faithfulness of the left adjoint: f(L(x)) = x.
  for (size_t xi = 0; xi < nx; ++xi) {
    if (pc.f_elem[static_cast<size_t>(pc.adj.L[xi])] != static_cast<int>(xi)) {
      pc.fully_faithful = false;
      pc.ff_witness = static_cast<int>(xi);
      break;
    }
  }
  return pc;
}

DescentReport check_cover(SliceSystem& sys, const SliceOpen& u, const SliceOpen& v) {
  DescentReport rep;
  rep.U = u;
  rep.V = v;
  const SliceOpen w = u.unite(v);
  const SliceOpen d = u.intersect(v);
  rep.overlapping = !d.empty();
  rep.direct = run_piece_check(sys, w, {u, v});

  // Strong-locality intersection identities over the pullback's pairs.
  {
    const ContextPoset& pu = sys.poset(u);
    const ContextPoset& pv = sys.poset(v);
    const AlgebraSpan au = sys.algebra(u);
    const AlgebraSpan av = sys.algebra(v);
    for (const auto& x : rep.direct.pullback.elems) {
      const AlgebraSpan& c1 = pu.context(x[0]).span;
      const AlgebraSpan& c2 = pv.context(x[1]).span;
      AlgebraSpan j = sys.ops().cached_join(c1, c2);
      if (sys.ops().cached_intersect(j, au) != c1 ||
          sys.ops().cached_intersect(j, av) != c2) {
        rep.strong_identities_hold = false;
        break;
      }
    }
  }

  // When the two slice algebras commute (the cover is causally local), the
  // found adjoint must coincide with the span join.
  if (rep.direct.adj.exists) {
    const AlgebraSpan au = sys.algebra(u);
    const AlgebraSpan av = sys.algebra(v);
    bool commuting = true;
    {
      const int dm = au.ambient_dim();
      for (const auto& ra : au.rows()) {
        for (const auto& rb : av.rows())
          if (sv_matmul(ra, rb, dm) != sv_matmul(rb, ra, dm)) {
            commuting = false;
            break;
          }
        if (!commuting) break;
      }
    }
    if (commuting) {
      const ContextPoset& pw = sys.poset(w);
      const ContextPoset& pu = sys.poset(u);
      const ContextPoset& pv = sys.poset(v);
      for (size_t xi = 0; xi < rep.direct.pullback.elems.size(); ++xi) {
        const auto& x = rep.direct.pullback.elems[xi];
        AlgebraSpan jo =
            sys.ops().cached_join(pu.context(x[0]).span, pv.context(x[1]).span);
        if (pw.context(rep.direct.adj.L[xi]).span != jo) rep.adjoint_is_join = false;
      }
    }
  }

  if (rep.overlapping) {
    rep.three_piece = run_piece_check(sys, w, {d, u.minus(v), v.minus(u)});
    rep.three_piece_agrees = rep.three_piece->local() == rep.direct.local();
  }
  return rep;
}

std::vector<DescentReport> check_descent_local(
    SliceSystem& sys, const std::vector<std::pair<SliceOpen, SliceOpen>>& covers,
    int threads) {
  std::vector<DescentReport> out(covers.size());
  parallel_for(covers.size(), threads,
               [&](size_t i) { out[i] = check_cover(sys, covers[i].first, covers[i].second); });
  return out;
}

TheoremReport theorem_check(const Net& net, const BohrifiedNet& bnet, SliceSystem& sys) {
  TheoremReport rep;
  rep.isotony = check_isotony(net);
  rep.locality = check_causal_locality(net);
  rep.additivity = check_additivity(net);
  rep.strong = check_strong_locality(net, bnet.posets());
  rep.einstein = check_einstein_causality(net);
  rep.covers = enumerate_covers(net.spec().window(), net.spec().flags.cover_cap);
  sys.prepare(rep.covers);
  rep.descent = check_descent_local(sys, rep.covers, net.spec().flags.threads);
  rep.descent_all_local = true;
  for (const auto& d : rep.descent)
    if (!d.local()) rep.descent_all_local = false;
  rep.applicable = rep.additivity.pass;
  if (rep.applicable) rep.consistent = (rep.strong.pass() == rep.descent_all_local);
  return rep;
}

}  // namespace bohrnet
