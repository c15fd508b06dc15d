#include "bohrnet/net.hpp"

#include <algorithm>
#include <set>

#include "bohrnet/errors.hpp"

namespace bohrnet {

std::string family_name(NetFamily f) {
  switch (f) {
    case NetFamily::spin_chain: return "spin_chain";
    case NetFamily::constant_commutative: return "constant_commutative";
    case NetFamily::global_qubit: return "global_qubit";
    case NetFamily::custom: return "custom";
  }
  return "?";
}

NetFamily family_from_name(const std::string& name) {
  if (name == "spin_chain") return NetFamily::spin_chain;
  if (name == "constant_commutative") return NetFamily::constant_commutative;
  if (name == "global_qubit") return NetFamily::global_qubit;
  if (name == "custom") return NetFamily::custom;
  throw SpecError("unknown net family '" + name + "'");
}

int NetSpec::ambient_dim() const {
  if (tensor_family()) {
    int d = 1;
    for (const auto& s : sites) d *= s.dim;
    return d;
  }
  return sites.empty() ? 0 : sites[0].dim;
}

void NetSpec::validate() const {
  if (slice_hi < slice_lo) throw SpecError("window slice interval is empty");
  const int n_sites = slice_hi - slice_lo + 1;
  if (tensor_family()) {
    if (static_cast<int>(sites.size()) != n_sites)
      throw SpecError("family " + family_name(family) + " needs one site per slice point (" +
                      std::to_string(n_sites) + "), got " + std::to_string(sites.size()));
  } else {
    if (sites.size() != 1)
      throw SpecError("family " + family_name(family) +
                      " needs exactly one global algebra declaration");
    if (!derived.empty())
      throw SpecError("derived generators are only supported for tensor families");
  }
  std::set<std::string> labels;
  for (const auto& s : sites) {
    if (s.dim < 1) throw SpecError("site '" + s.label + "' has dimension < 1");
    for (const auto& g : s.gens) {
      if (g.matrix.dim() != s.dim)
        throw SpecError("generator '" + g.label + "' does not match site dimension");
      g.validate();
      if (!labels.insert(s.label + "." + g.label).second)
        throw SpecError("duplicate generator label '" + s.label + "." + g.label + "'");
    }
  }
  for (const auto& dg : derived) {
    if (dg.sites.empty()) throw SpecError("derived generator with empty site list");
    if (!std::is_sorted(dg.sites.begin(), dg.sites.end()) ||
        std::adjacent_find(dg.sites.begin(), dg.sites.end()) != dg.sites.end())
      throw SpecError("derived generator sites must be ascending and distinct");
    int d = 1;
    for (int x : dg.sites) {
      if (x < slice_lo || x > slice_hi)
        throw SpecError("derived generator site " + std::to_string(x) + " outside the slice");
      d *= sites[x - slice_lo].dim;
    }
    if (dg.gen.matrix.dim() != d)
      throw SpecError("derived generator '" + dg.gen.label + "' has dimension " +
                      std::to_string(dg.gen.matrix.dim()) + ", expected " + std::to_string(d));
    dg.gen.validate();
    if (!labels.insert(dg.gen.label).second)
      throw SpecError("duplicate generator label '" + dg.gen.label + "'");
  }
}

Mat embed_on_sites(const Mat& m, const std::vector<int>& gen_sites,
                   const std::vector<int>& all_sites, const std::vector<int>& site_dims) {
  const size_t n = all_sites.size();
  std::vector<int> pos_of(n, -1);  // position within gen_sites, else -1
  int expected = 1;
  for (size_t i = 0; i < n; ++i) {
    auto it = std::find(gen_sites.begin(), gen_sites.end(), all_sites[i]);
    if (it != gen_sites.end()) {
      pos_of[i] = static_cast<int>(it - gen_sites.begin());
      expected *= site_dims[i];
    }
  }
  if (m.dim() != expected)
    throw std::invalid_argument("embed_on_sites: matrix dimension mismatch");
  // Digit maps between ambient indices and the generator's tensor slots.
  int ambient = 1;
  for (size_t i = 0; i < n; ++i) ambient *= site_dims[i];
  std::vector<int> gen_dims(gen_sites.size(), 1);
  for (size_t i = 0; i < n; ++i)
    if (pos_of[i] >= 0) gen_dims[pos_of[i]] = site_dims[i];

  auto digits = [&](int idx) {
    std::vector<int> out(n);
    for (size_t i = n; i-- > 0;) {
      out[i] = idx % site_dims[i];
      idx /= site_dims[i];
    }
    return out;
  };
  auto gen_index = [&](const std::vector<int>& digs) {
    int idx = 0;
    for (size_t p = 0; p < gen_sites.size(); ++p) {
      for (size_t i = 0; i < n; ++i)
        if (pos_of[i] == static_cast<int>(p)) {
          idx = idx * gen_dims[p] + digs[i];
          break;
        }
    }
    return idx;
  };

  Mat out(ambient);
  for (int r = 0; r < ambient; ++r) {
    const auto rd = digits(r);
    for (int c = 0; c < ambient; ++c) {
      const auto cd = digits(c);
      bool diag = true;
      for (size_t i = 0; i < n; ++i)
        if (pos_of[i] < 0 && rd[i] != cd[i]) {
          diag = false;
          break;
        }
      if (!diag) continue;
      const Scalar& v = m.at(gen_index(rd), gen_index(cd));
      if (!v.is_zero()) out.at(r, c) = v;
    }
  }
  return out;
}

Net::Net(NetSpec spec)
    : spec_(std::move(spec)),
      ambient_dim_(spec_.ambient_dim()),
      regions_(spec_.window(), spec_.flags.region_cap) {
  spec_.validate();
  const Window w = spec_.window();
  std::vector<int> all_sites, site_dims;
  for (int x = w.slice_lo(); x <= w.slice_hi(); ++x) all_sites.push_back(x);

  if (spec_.tensor_family()) {
    for (const auto& s : spec_.sites) site_dims.push_back(s.dim);
    site_gen_labels_.resize(spec_.sites.size());
    for (size_t i = 0; i < spec_.sites.size(); ++i) {
      std::vector<Mat> site_mats;
      for (const auto& g : spec_.sites[i].gens) {
        GeneratorDecl embedded;
        embedded.label = spec_.sites[i].label + "." + g.label;
        embedded.matrix = embed_on_sites(g.matrix, {all_sites[i]}, all_sites, site_dims);
        embedded.spectrum = g.spectrum;
        site_gen_labels_[i].push_back(embedded.label);
        ambient_gens_.push_back(std::move(embedded));
        site_mats.push_back(ambient_gens_.back().matrix);
      }
      site_algebras_.push_back(AlgebraSpan::generate(ambient_dim_, site_mats));
    }
    for (const auto& dg : spec_.derived) {
      GeneratorDecl embedded;
      embedded.label = dg.gen.label;
      embedded.matrix = embed_on_sites(dg.gen.matrix, dg.sites, all_sites, site_dims);
      embedded.spectrum = dg.gen.spectrum;
      ambient_gens_.push_back(std::move(embedded));
    }
    if (spec_.family == NetFamily::spin_chain) {
      // Derived generators may enrich the context posets but must not change
      // the evaluation.
      for (const auto& dg : spec_.derived) {
        AlgebraSpan target = AlgebraSpan::trivial(ambient_dim_);
        for (int x : dg.sites) target = join(target, site_algebra(x));
        const auto& g = ambient_gens_[ambient_gens_.size() - spec_.derived.size() +
                                      (&dg - spec_.derived.data())];
        if (!target.contains(g.matrix))
          throw SpecError("derived generator '" + dg.gen.label +
                          "' is not contained in the spin chain site algebras");
      }
    }
  } else {
    ambient_gens_ = spec_.sites[0].gens;
    std::vector<Mat> mats;
    for (const auto& g : ambient_gens_) mats.push_back(g.matrix);
    global_algebra_ = AlgebraSpan::generate(ambient_dim_, mats);
    if (spec_.family == NetFamily::constant_commutative && !global_algebra_.is_commutative())
      throw SpecError("constant_commutative family requires a commutative global algebra");
  }
}

const AlgebraSpan& Net::site_algebra(int x) const {
  return site_algebras_[static_cast<size_t>(x - spec_.slice_lo)];
}

const AlgebraSpan& Net::at(int region_idx) const {
  std::lock_guard<std::mutex> lock(memo_mu_);
  auto it = memo_.find(region_idx);
  if (it != memo_.end()) return it->second;

  const Region& r = regions_.region(region_idx);
  AlgebraSpan value;
  if (r.empty()) {
    value = AlgebraSpan::trivial(ambient_dim_);
  } else if (!spec_.tensor_family()) {
    value = global_algebra_;
  } else {
    value = AlgebraSpan::trivial(ambient_dim_);
    std::vector<int> xs;
    for (const Point& p : r.points)
      if (p.t == 0) xs.push_back(p.x);
    for (int x : xs) value = join(value, site_algebra(x));
    if (spec_.family == NetFamily::custom) {
      std::vector<Mat> extra;
      for (const auto& dg : spec_.derived)
        if (std::includes(xs.begin(), xs.end(), dg.sites.begin(), dg.sites.end())) {
          for (const auto& g : ambient_gens_)
            if (g.label == dg.gen.label) extra.push_back(g.matrix);
        }
      if (!extra.empty()) {
        std::vector<Mat> gens = value.basis();
        gens.insert(gens.end(), extra.begin(), extra.end());
        value = AlgebraSpan::generate(ambient_dim_, gens);
      }
    }
  }
  return memo_.emplace(region_idx, std::move(value)).first->second;
}

AlgebraSpan Net::evaluate(const Region& r) const {
  int idx = regions_.index_of(r);
  if (idx < 0) throw std::invalid_argument("region is not in the region poset: " + r.str());
  return at(idx);
}

std::vector<GeneratorDecl> Net::gens_for_sites(const std::vector<int>& xs) const {
  std::vector<GeneratorDecl> out;
  if (!spec_.tensor_family()) {
    if (!xs.empty()) out = ambient_gens_;
    return out;
  }
  for (int x : xs)
    for (const auto& label : site_gen_labels_[static_cast<size_t>(x - spec_.slice_lo)])
      for (const auto& g : ambient_gens_)
        if (g.label == label) out.push_back(g);
  for (const auto& dg : spec_.derived)
    if (std::includes(xs.begin(), xs.end(), dg.sites.begin(), dg.sites.end()))
      for (const auto& g : ambient_gens_)
        if (g.label == dg.gen.label) out.push_back(g);
  return out;
}

std::vector<GeneratorDecl> Net::region_gens(int region_idx) const {
  const Region& r = regions_.region(region_idx);
  std::vector<int> xs;
  for (const Point& p : r.points)
    if (p.t == 0) xs.push_back(p.x);
  auto out = gens_for_sites(xs);
  // Generators must actually lie in the region algebra (relevant for custom
  // nets whose evaluation is richer than the generated contexts).
  const AlgebraSpan& a = at(region_idx);
  std::erase_if(out, [&](const GeneratorDecl& g) { return !a.contains(g.matrix); });
  return out;
}

AlgebraSpan SliceNet::at(const SliceOpen& u) const {
  {
    std::lock_guard<std::mutex> lock(memo_mu_);
    auto it = memo_.find(u);
    if (it != memo_.end()) return it->second;
  }
  AlgebraSpan value = AlgebraSpan::trivial(net_->ambient_dim());
  const Window w = net_->spec().window();
  for (auto [a, b] : u.intervals()) {
    Region diamond = diamond_of_interval(a, b, w);
    value = join(value, net_->evaluate(diamond));
  }
  std::lock_guard<std::mutex> lock(memo_mu_);
  return memo_.emplace(u, std::move(value)).first->second;
}

std::vector<GeneratorDecl> SliceNet::open_gens(const SliceOpen& u) const {
  const AlgebraSpan a = at(u);
  std::vector<GeneratorDecl> out;
  if (!net_->spec().tensor_family()) {
    if (!u.empty()) out = net_->all_gens();
  } else {
    // Site generators of sites in u plus derived generators whose site set u
    // contains; keep only those lying in the slice algebra (for disconnected
    // opens a derived generator can fall outside the component-wise join).
    const auto xs = u.sites();
    for (const auto& g : net_->all_gens()) {
      bool wanted = false;
      for (int x : xs) {
        const auto& sd = net_->spec().sites[static_cast<size_t>(x - net_->spec().slice_lo)];
        for (const auto& sg : sd.gens)
          if (g.label == sd.label + "." + sg.label) wanted = true;
      }
      for (const auto& dg : net_->spec().derived)
        if (g.label == dg.gen.label &&
            std::includes(xs.begin(), xs.end(), dg.sites.begin(), dg.sites.end()))
          wanted = true;
      if (wanted) out.push_back(g);
    }
  }
  std::erase_if(out, [&](const GeneratorDecl& g) { return !a.contains(g.matrix); });
  return out;
}

std::vector<SliceOpen> SliceNet::all_opens() const {
  const Window w = net_->spec().window();
  const int n = w.slice_size();
  std::vector<SliceOpen> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::pair<int, int>> ivs;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) ivs.emplace_back(w.slice_lo() + i, w.slice_lo() + i);
    out.emplace_back(std::move(ivs));
  }
  std::sort(out.begin(), out.end());
  return out;
}

IsotonyVerdict check_isotony(const Net& net) {
  IsotonyVerdict v;
  const auto& rp = net.regions();
  for (size_t i = 0; i < rp.size(); ++i)
    for (size_t j = 0; j < rp.size(); ++j) {
      if (i == j || !rp.leq(static_cast<int>(i), static_cast<int>(j))) continue;
      ++v.pairs_checked;
      if (!net.at(static_cast<int>(j)).contains_span(net.at(static_cast<int>(i)))) {
        v.pass = false;
        v.witness = {rp.region(static_cast<int>(i)), rp.region(static_cast<int>(j))};
        return v;
      }
    }
  return v;
}

CausalLocalityVerdict check_causal_locality(const Net& net) {
  CausalLocalityVerdict v;
  const auto& rp = net.regions();
  const int d = net.ambient_dim();
  for (auto [i, j] : rp.spacelike_pairs(/*nonempty_only=*/true)) {
    ++v.pairs_checked;
    const AlgebraSpan& a = net.at(i);
    const AlgebraSpan& b = net.at(j);
    for (const auto& ra : a.rows())
      for (const auto& rb : b.rows()) {
        if (sv_matmul(ra, rb, d) != sv_matmul(rb, ra, d)) {
          v.pass = false;
          v.witness = RegionPairWitness{rp.region(i), rp.region(j), sv_to_mat(ra, d),
                                        sv_to_mat(rb, d)};
          return v;
        }
      }
  }
  return v;
}

AdditivityVerdict check_additivity(const Net& net) {
  AdditivityVerdict v;
  const auto& rp = net.regions();
  const Window w = net.spec().window();
  // Touching closures at lattice scale: diamonds over consecutive slice
  // intervals [a,b] and [b+1,c] (always spacelike separated).
  for (int a = w.slice_lo(); a <= w.slice_hi(); ++a)
    for (int b = a; b < w.slice_hi(); ++b)
      for (int c = b + 1; c <= w.slice_hi(); ++c) {
        const int i = rp.index_of(diamond_of_interval(a, b, w));
        const int j = rp.index_of(diamond_of_interval(b + 1, c, w));
        if (i < 0 || j < 0) throw ClosureError("slice diamond missing from the region poset");
        ++v.pairs_checked;
        AlgebraSpan algebra_join = join(net.at(i), net.at(j));
        const AlgebraSpan& on_union = net.at(rp.join(i, j));
        if (algebra_join != on_union) {
          v.pass = false;
          v.witness = AdditivityWitness{rp.region(i), rp.region(j), algebra_join.dim(),
                                        on_union.dim()};
          return v;
        }
      }
  return v;
}

StrongLocalityVerdict check_strong_locality(const Net& net,
                                            const std::vector<ContextPoset>& region_posets) {
  StrongLocalityVerdict v;
  v.locality = check_causal_locality(net);
  const auto& rp = net.regions();
  for (auto [i, j] : rp.spacelike_pairs(/*nonempty_only=*/true)) {
    const auto& p1 = region_posets[i];
    const auto& p2 = region_posets[j];
    for (const auto& c1 : p1.contexts())
      for (const auto& c2 : p2.contexts()) {
        ++v.triples_checked;
        AlgebraSpan joined = join(c1.span, c2.span);
        AlgebraSpan back1 = intersect(joined, net.at(i));
        if (back1 != c1.span) {
          v.intersections_ok = false;
          v.witness =
              StrongLocalityWitness{rp.region(i), rp.region(j), c1.span, c2.span, back1, true};
          return v;
        }
        AlgebraSpan back2 = intersect(joined, net.at(j));
        if (back2 != c2.span) {
          v.intersections_ok = false;
          v.witness = StrongLocalityWitness{rp.region(i), rp.region(j), c1.span, c2.span,
                                            back2, false};
          return v;
        }
      }
  }
  return v;
}

EinsteinVerdict check_einstein_causality(const Net& net) {
  EinsteinVerdict v;
  auto locality = check_causal_locality(net);
  if (!locality.pass) {
    v.precondition_ok = false;
    v.pass = false;
    return v;
  }
  v.pass = true;
  const auto& rp = net.regions();
  for (auto [i, j] : rp.spacelike_pairs(/*nonempty_only=*/true)) {
    ++v.pairs_checked;
    const AlgebraSpan& a = net.at(i);
    const AlgebraSpan& b = net.at(j);
    AlgebraSpan joined = join(a, b);
    if (joined.dim() != a.dim() * b.dim()) {
      v.pass = false;
      v.witness = EinsteinWitness{rp.region(i), rp.region(j), a.dim(), b.dim(), joined.dim()};
      return v;
    }
  }
  return v;
}

}  // namespace bohrnet
