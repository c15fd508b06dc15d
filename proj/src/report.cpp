#include "bohrnet/report.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "bohrnet/errors.hpp"

namespace bohrnet {

using nlohmann::json;

namespace {

// The single largest modeling decision, surfaced in every report.
constexpr const char* kPosetNote =
    "context posets are generated by the declared generators (closed under the "
    "intersections the checks need); all verdicts refer to this finite sub-poset "
    "of the full poset of commutative subalgebras";

std::string digest_string(const std::string& bytes) {
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(bytes);
  return os.str();
}

long long require_int(const json& j, const char* what) {
  if (!j.is_number_integer())
    throw SpecError(std::string(what) + " must be an integer (floats are not accepted)");
  return j.get<long long>();
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SpecError("cannot write '" + path + "'");
  out << content;
}

Scalar scalar_from_json(const json& j) {
  if (j.is_string()) return Scalar(rat_from_string(j.get<std::string>()));
  if (j.is_number_integer()) return Scalar(Rat(static_cast<long>(j.get<long long>())));
  if (j.is_array() && j.size() == 2) {
    auto part = [](const json& p) -> Rat {
      if (p.is_string()) return rat_from_string(p.get<std::string>());
      if (p.is_number_integer()) return Rat(static_cast<long>(p.get<long long>()));
      throw SpecError("scalar parts must be rational strings or integers");
    };
    return Scalar(part(j[0]), part(j[1]));
  }
  throw SpecError("scalar must be a rational string, an integer, or an [re, im] pair");
}

json scalar_to_json(const Scalar& s) {
  return json::array({rat_to_string(s.re), rat_to_string(s.im)});
}

Mat mat_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw SpecError("matrix must be a nonempty array of rows");
  const int d = static_cast<int>(j.size());
  Mat m(d);
  for (int r = 0; r < d; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != d)
      throw SpecError("matrix rows must all have length " + std::to_string(d));
    for (int c = 0; c < d; ++c) m.at(r, c) = scalar_from_json(j[r][c]);
  }
  return m;
}

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (int r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.dim(); ++c) row.push_back(scalar_to_json(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json region_to_json(const Region& r) {
  json pts = json::array();
  for (const Point& p : r.points) pts.push_back(json::array({p.t, p.x}));
  return json{{"points", pts}};
}

namespace {

GeneratorDecl generator_from_json(const json& j) {
  GeneratorDecl g;
  if (!j.contains("label")) throw SpecError("generator without label");
  g.label = j.at("label").get<std::string>();
  if (!j.contains("entries")) throw SpecError("generator '" + g.label + "' without entries");
  g.matrix = mat_from_json(j.at("entries"));
  if (!j.contains("spectrum"))
    throw SpecError("generator '" + g.label + "' without a declared spectrum");
  for (const auto& s : j.at("spectrum")) g.spectrum.push_back(scalar_from_json(s));
  return g;
}

json context_ref_json(const Context& c) {
  json out;
  out["dim"] = c.span.dim();
  if (c.derived)
    out["derived"] = true;
  else
    out["gens"] = c.gen_labels;
  json basis = json::array();
  for (const Mat& b : c.span.basis()) basis.push_back(mat_to_json(b));
  out["basis"] = basis;
  return out;
}

}  // namespace

NetSpec parse_net_spec(const json& j) {
  NetSpec spec;
  if (!j.contains("family")) throw SpecError("spec file needs a 'family'");
  spec.family = family_from_name(j.at("family").get<std::string>());
  if (!j.contains("window")) throw SpecError("spec file needs a 'window'");
  const json& w = j.at("window");
  const bool has_radius = w.contains("slice_radius");
  const bool has_length = w.contains("slice_length");
  if (has_radius == has_length)
    throw SpecError("window needs exactly one of slice_radius / slice_length");
  if (has_radius) {
    const long long r = require_int(w.at("slice_radius"), "slice_radius");
    if (r < 0) throw SpecError("slice_radius must be >= 0");
    spec.slice_lo = static_cast<int>(-r);
    spec.slice_hi = static_cast<int>(r);
  } else {
    const long long n = require_int(w.at("slice_length"), "slice_length");
    if (n < 1) throw SpecError("slice_length must be >= 1");
    spec.slice_lo = 0;
    spec.slice_hi = static_cast<int>(n - 1);
  }
  if (!j.contains("sites") || !j.at("sites").is_array())
    throw SpecError("spec file needs a 'sites' array");
  for (const auto& sj : j.at("sites")) {
    SiteDecl s;
    s.label = sj.value("label", "site" + std::to_string(spec.sites.size()));
    s.dim = static_cast<int>(require_int(sj.at("dim"), "site dim"));
    if (sj.contains("generators"))
      for (const auto& gj : sj.at("generators")) s.gens.push_back(generator_from_json(gj));
    spec.sites.push_back(std::move(s));
  }
  if (j.contains("derived_generators")) {
    for (const auto& dj : j.at("derived_generators")) {
      DerivedGenDecl dg;
      if (!dj.contains("sites")) throw SpecError("derived generator without 'sites'");
      for (const auto& x : dj.at("sites"))
        dg.sites.push_back(static_cast<int>(require_int(x, "derived generator site")));
      dg.gen = generator_from_json(dj);
      spec.derived.push_back(std::move(dg));
    }
  }
  if (j.contains("flags")) {
    const json& f = j.at("flags");
    if (f.contains("include_trivial_context"))
      spec.flags.include_trivial_context = f.at("include_trivial_context").get<bool>();
    if (f.contains("cover_cap"))
      spec.flags.cover_cap = static_cast<size_t>(require_int(f.at("cover_cap"), "cover_cap"));
    if (f.contains("section_cap"))
      spec.flags.section_cap =
          static_cast<std::uint64_t>(require_int(f.at("section_cap"), "section_cap"));
    if (f.contains("region_cap"))
      spec.flags.region_cap = static_cast<size_t>(require_int(f.at("region_cap"), "region_cap"));
    if (f.contains("poset_cap"))
      spec.flags.poset_cap = static_cast<size_t>(require_int(f.at("poset_cap"), "poset_cap"));
    if (f.contains("threads"))
      spec.flags.threads = static_cast<int>(require_int(f.at("threads"), "threads"));
  }
  spec.validate();
  return spec;
}

NetSpec load_net_spec(const std::string& path, const FlagOverrides& o) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw SpecError("malformed JSON in '" + path + "': " + e.what());
  }
  NetSpec spec = parse_net_spec(j);
  if (o.no_trivial_context) spec.flags.include_trivial_context = !*o.no_trivial_context;
  if (o.cover_cap) spec.flags.cover_cap = static_cast<size_t>(*o.cover_cap);
  if (o.section_cap) spec.flags.section_cap = static_cast<std::uint64_t>(*o.section_cap);
  if (o.threads) spec.flags.threads = *o.threads;
  return spec;
}

KsDataset parse_ks_dataset(const json& j) {
  KsDataset ds;
  if (!j.contains("dimension")) throw SpecError("dataset needs a 'dimension'");
  ds.dimension = static_cast<int>(require_int(j.at("dimension"), "dimension"));
  if (ds.dimension < 1) throw SpecError("dimension must be >= 1");
  if (!j.contains("projections") || !j.at("projections").is_array())
    throw SpecError("dataset needs a 'projections' array");
  for (const auto& pj : j.at("projections")) {
    GeneratorDecl g;
    g.label = pj.value("label", "p" + std::to_string(ds.projections.size()));
    if (pj.contains("vector")) {
      // Rank-one projection v v* / (v* v) from an exact vector.
      const auto& vj = pj.at("vector");
      if (!vj.is_array() || static_cast<int>(vj.size()) != ds.dimension)
        throw SpecError("projection '" + g.label + "' vector has wrong length");
      std::vector<Scalar> v;
      for (const auto& e : vj) v.push_back(scalar_from_json(e));
      Scalar norm;
      for (const auto& s : v) norm += s.conj() * s;
      if (norm.is_zero()) throw SpecError("projection '" + g.label + "' has zero vector");
      Mat m(ds.dimension);
      const Scalar inv = norm.inverse();
      for (int r = 0; r < ds.dimension; ++r)
        for (int c = 0; c < ds.dimension; ++c) m.at(r, c) = v[r] * v[c].conj() * inv;
      g.matrix = std::move(m);
    } else if (pj.contains("matrix")) {
      g.matrix = mat_from_json(pj.at("matrix"));
      if (g.matrix.dim() != ds.dimension)
        throw SpecError("projection '" + g.label + "' matrix has wrong dimension");
    } else {
      throw SpecError("projection '" + g.label + "' needs a 'vector' or a 'matrix'");
    }
    g.spectrum = {Scalar(0), Scalar(1)};
    ds.projections.push_back(std::move(g));
  }
  if (j.contains("flags") && j.at("flags").contains("section_cap"))
    ds.section_cap = static_cast<std::uint64_t>(
        require_int(j.at("flags").at("section_cap"), "section_cap"));
  return ds;
}

namespace {

json isotony_json(const IsotonyVerdict& v) {
  json out{{"pass", v.pass}, {"pairs_checked", v.pairs_checked}, {"witness", nullptr}};
  if (v.witness)
    out["witness"] = json{{"smaller", region_to_json(v.witness->first)},
                          {"larger", region_to_json(v.witness->second)}};
  return out;
}

json locality_json(const CausalLocalityVerdict& v) {
  json out{{"pass", v.pass}, {"pairs_checked", v.pairs_checked}, {"witness", nullptr}};
  if (v.witness)
    out["witness"] = json{{"region1", region_to_json(v.witness->o1)},
                          {"region2", region_to_json(v.witness->o2)},
                          {"a", mat_to_json(v.witness->a)},
                          {"b", mat_to_json(v.witness->b)}};
  return out;
}

json additivity_json(const AdditivityVerdict& v) {
  json out{{"pass", v.pass}, {"pairs_checked", v.pairs_checked}, {"witness", nullptr}};
  if (v.witness)
    out["witness"] = json{{"region1", region_to_json(v.witness->o1)},
                          {"region2", region_to_json(v.witness->o2)},
                          {"dim_algebra_join", v.witness->dim_join},
                          {"dim_on_region_join", v.witness->dim_region_join}};
  return out;
}

json strong_json(const StrongLocalityVerdict& v) {
  json out{{"pass", v.pass()},
           {"causal_locality_pass", v.locality.pass},
           {"intersections_ok", v.intersections_ok},
           {"triples_checked", v.triples_checked},
           {"witness", nullptr}};
  if (v.witness) {
    json basis1 = json::array(), basis2 = json::array(), lhs = json::array();
    for (const Mat& b : v.witness->c1.basis()) basis1.push_back(mat_to_json(b));
    for (const Mat& b : v.witness->c2.basis()) basis2.push_back(mat_to_json(b));
    for (const Mat& b : v.witness->lhs.basis()) lhs.push_back(mat_to_json(b));
    out["witness"] = json{{"region1", region_to_json(v.witness->o1)},
                          {"region2", region_to_json(v.witness->o2)},
                          {"c1_basis", basis1},
                          {"c2_basis", basis2},
                          {"join_intersected_back", lhs},
                          {"failed_side", v.witness->first_side ? 1 : 2}};
  }
  return out;
}

json einstein_json(const EinsteinVerdict& v) {
  json out{{"pass", v.pass},
           {"precondition_ok", v.precondition_ok},
           {"pairs_checked", v.pairs_checked},
           {"witness", nullptr}};
  if (v.witness)
    out["witness"] = json{{"region1", region_to_json(v.witness->o1)},
                          {"region2", region_to_json(v.witness->o2)},
                          {"dim1", v.witness->dim1},
                          {"dim2", v.witness->dim2},
                          {"dim_join", v.witness->dim_join}};
  return out;
}

json piece_check_json(const PieceCheck& pc, const SliceSystem& sys, const SliceOpen& whole) {
  json pieces = json::array();
  for (const auto& p : pc.pieces) pieces.push_back(p.str());
  json out{{"pieces", pieces},
           {"f_well_defined", pc.f_well_defined},
           {"pullback_size", pc.pullback.elems.size()},
           {"left_adjoint_exists", pc.adj.exists},
           {"adjunction_law_holds", pc.adj.exists ? json(pc.adj.law_holds) : json(nullptr)},
           {"adjoint_monotone", pc.adj.exists ? json(pc.adj.monotone) : json(nullptr)},
           {"fully_faithful", pc.adj.exists ? json(pc.fully_faithful) : json(nullptr)},
           {"local", pc.local()},
           {"no_adjoint_witness", nullptr},
           {"not_faithful_witness", nullptr}};
  auto tuple_json = [&](int xi) {
    const auto& x = pc.pullback.elems[static_cast<size_t>(xi)];
    json parts = json::array();
    for (size_t k = 0; k < pc.pieces.size(); ++k) {
      const auto& ctx = sys.poset(pc.pieces[k]).context(x[k]);
      json cj = context_ref_json(ctx);
      cj["piece"] = pc.pieces[k].str();
      parts.push_back(std::move(cj));
    }
    return parts;
  };
  if (pc.adj.witness) out["no_adjoint_witness"] = tuple_json(*pc.adj.witness);
  if (pc.ff_witness) {
    json wit = json{{"pair", tuple_json(*pc.ff_witness)}};
    const int lx = pc.adj.L[static_cast<size_t>(*pc.ff_witness)];
    wit["adjoint_image"] = context_ref_json(sys.poset(whole).context(lx));
    out["not_faithful_witness"] = std::move(wit);
  }
  return out;
}

json descent_report_json(const DescentReport& d, const SliceSystem& sys) {
  const SliceOpen w = d.U.unite(d.V);
  json out{{"U", d.U.str()},
           {"V", d.V.str()},
           {"union", w.str()},
           {"overlap", d.U.intersect(d.V).str()},
           {"overlapping", d.overlapping},
           {"direct", piece_check_json(d.direct, sys, w)},
           {"strong_identities_hold", d.strong_identities_hold},
           {"adjoint_is_join_on_local_covers", d.adjoint_is_join},
           {"local", d.local()},
           {"geometric_surjection", d.geometric_surjection()},
           {"three_piece", nullptr}};
  if (d.three_piece) {
    out["three_piece"] = piece_check_json(*d.three_piece, sys, w);
    out["three_piece_agrees"] = d.three_piece_agrees;
  }
  return out;
}

}  // namespace

RunOutcome run_check(const std::string& spec_path, const FlagOverrides& overrides) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string raw = read_file(spec_path);
  NetSpec spec = load_net_spec(spec_path, overrides);

  Net net(spec);
  ContextOptions copt;
  copt.include_trivial = spec.flags.include_trivial_context;
  copt.poset_cap = spec.flags.poset_cap;
  BohrifiedNet bnet(net, copt);
  SliceNet snet(net);
  SliceSystem sys(snet, copt);
  TheoremReport rep = theorem_check(net, bnet, sys);

  json r = json::object();
  r["tool"] = json{{"name", kToolName}, {"version", kToolVersion}};
  r["input"] = json{{"digest", digest_string(raw)}};
  r["family"] = family_name(spec.family);
  r["window"] = json{{"slice_lo", spec.slice_lo},
                     {"slice_hi", spec.slice_hi},
                     {"point_count", spec.window().points().size()}};
  r["ambient_dim"] = net.ambient_dim();
  r["region_count"] = net.regions().size();
  r["flags"] = json{{"include_trivial_context", spec.flags.include_trivial_context},
                    {"cover_cap", spec.flags.cover_cap},
                    {"section_cap", spec.flags.section_cap},
                    {"region_cap", spec.flags.region_cap},
                    {"poset_cap", spec.flags.poset_cap}};
  r["poset_note"] = kPosetNote;
  r["checks"] = json{{"isotony", isotony_json(rep.isotony)},
                     {"causal_locality", locality_json(rep.locality)},
                     {"additivity", additivity_json(rep.additivity)},
                     {"strong_locality", strong_json(rep.strong)},
                     {"einstein_causality", einstein_json(rep.einstein)}};
  json covers = json::array();
  for (const auto& d : rep.descent) covers.push_back(descent_report_json(d, sys));
  json poset_sizes = json::object();
  {
    std::set<SliceOpen> opens;
    for (const auto& [u, v] : rep.covers) {
      opens.insert(u);
      opens.insert(v);
      opens.insert(u.unite(v));
    }
    for (const auto& u : opens) poset_sizes[u.str()] = sys.poset(u).size();
  }
  r["descent"] = json{{"all_local", rep.descent_all_local},
                      {"cover_count", rep.covers.size()},
                      {"covers", covers},
                      {"poset_sizes", poset_sizes}};
  r["bohrified_net"] = json{{"contravariant_functorial", bnet.functorial()},
                            {"ring_morphisms_ok", bnet.ring_morphisms_ok()}};
  r["theorem"] = json{{"applicable", rep.applicable},
                      {"strongly_local", rep.strong.pass()},
                      {"descent_all_local", rep.descent_all_local},
                      {"consistent", rep.applicable ? json(*rep.consistent) : json(nullptr)}};

  RunOutcome out;
  const std::string canonical = r.dump();
  out.file = json{{"report", r}, {"report_digest", digest_string(canonical)}};
  const auto t1 = std::chrono::steady_clock::now();
  out.file["timing"] = json{
      {"total_ms",
       std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()}};

  const bool inconsistent = rep.applicable && !*rep.consistent;
  out.exit_code = inconsistent ? 1 : 0;
  std::ostringstream os;
  os << "family:            " << family_name(spec.family) << "\n"
     << "isotony:           " << (rep.isotony.pass ? "pass" : "FAIL") << "\n"
     << "causal locality:   " << (rep.locality.pass ? "pass" : "FAIL") << "\n"
     << "additivity:        " << (rep.additivity.pass ? "pass" : "FAIL") << "\n"
     << "strong locality:   " << (rep.strong.pass() ? "pass" : "FAIL") << "\n"
     << "einstein causality:" << (rep.einstein.pass ? " pass" : " FAIL") << "\n"
     << "descent:           " << (rep.descent_all_local ? "local" : "not local") << " over "
     << rep.covers.size() << " covers\n"
     << "theorem:           "
     << (!rep.applicable ? "not applicable (net is not additive)"
                         : (*rep.consistent ? "consistent" : "INCONSISTENT"))
     << "\n";
  out.summary = os.str();
  return out;
}

RunOutcome run_ks(const std::string& dataset_path, const FlagOverrides& overrides) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string raw = read_file(dataset_path);
  json j;
  try {
    j = json::parse(raw);
  } catch (const json::parse_error& e) {
    throw SpecError("malformed JSON in '" + dataset_path + "': " + e.what());
  }
  KsDataset ds = parse_ks_dataset(j);
  if (overrides.section_cap) ds.section_cap = static_cast<std::uint64_t>(*overrides.section_cap);

  KsReport rep = ks_check(ds.dimension, ds.projections, ds.section_cap);

  json r;
  r["tool"] = json{{"name", kToolName}, {"version", kToolVersion}};
  r["input"] = json{{"digest", digest_string(raw)}};
  r["dimension"] = rep.dimension;
  r["dimension_flagged"] = rep.dimension_flagged;
  r["projection_count"] = rep.projection_count;
  r["context_count"] = rep.context_count;
  r["maximal_context_count"] = rep.maximal_context_count;
  r["global_sections"] =
      json{{"count", rep.sections.count}, {"exact", rep.sections.exact}};
  r["verdict"] = rep.contextual ? "contextual" : "non-contextual";
  json wits = json::array();
  for (const auto& s : rep.sections.witnesses) {
    json w = json::array();
    for (int c : s.choice) w.push_back(c);
    wits.push_back(std::move(w));
  }
  r["section_witnesses"] = wits;

  RunOutcome out;
  const std::string canonical = r.dump();
  out.file = json{{"report", r}, {"report_digest", digest_string(canonical)}};
  const auto t1 = std::chrono::steady_clock::now();
  out.file["timing"] = json{
      {"total_ms",
       std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()}};
  out.exit_code = 0;
  std::ostringstream os;
  os << "projections:     " << rep.projection_count << " in dimension " << rep.dimension
     << (rep.dimension_flagged ? " (flagged: dimension <= 2)" : "") << "\n"
     << "contexts:        " << rep.context_count << " (" << rep.maximal_context_count
     << " maximal)\n"
     << "global sections: " << rep.sections.count
     << (rep.sections.exact ? "" : " (lower bound, cap hit)") << "\n"
     << "verdict:         " << (rep.contextual ? "contextual" : "non-contextual") << "\n";
  out.summary = os.str();
  return out;
}

std::string run_explain(const std::string& spec_path, const std::string& cover_text,
                        const FlagOverrides& overrides) {
  NetSpec spec = load_net_spec(spec_path, overrides);
  const auto semi = cover_text.find(';');
  if (semi == std::string::npos)
    throw SpecError("cover must be 'U;V', e.g. '0;1' or '0..1;2' (got '" + cover_text + "')");
  SliceOpen u = SliceOpen::parse(cover_text.substr(0, semi));
  SliceOpen v = SliceOpen::parse(cover_text.substr(semi + 1));
  if (u.unite(v).empty()) throw SpecError("cover union is empty");
  for (int x : u.unite(v).sites())
    if (x < spec.slice_lo || x > spec.slice_hi)
      throw SpecError("unknown cover: site " + std::to_string(x) + " outside the slice");

  Net net(spec);
  SliceNet snet(net);
  ContextOptions copt;
  copt.include_trivial = spec.flags.include_trivial_context;
  copt.poset_cap = spec.flags.poset_cap;
  SliceSystem sys(snet, copt);
  sys.prepare({{u, v}});
  DescentReport rep = check_cover(sys, u, v);

  std::ostringstream os;
  const SliceOpen w = u.unite(v);
  auto describe_poset = [&](const SliceOpen& open) {
    const ContextPoset& p = sys.poset(open);
    os << "poset P(" << open.str() << "), algebra dim " << sys.algebra(open).dim() << ", "
       << p.size() << " contexts:\n";
    for (size_t i = 0; i < p.size(); ++i) {
      const Context& c = p.context(static_cast<int>(i));
      os << "  C" << i << ": dim " << c.span.dim();
      if (c.derived)
        os << " (derived)";
      else if (!c.gen_labels.empty()) {
        os << " <";
        for (size_t k = 0; k < c.gen_labels.size(); ++k)
          os << (k ? "," : "") << c.gen_labels[k];
        os << ">";
      } else {
        os << " <I>";
      }
      os << "\n";
    }
  };
  os << "cover U = " << u.str() << ", V = " << v.str() << ", union " << w.str()
     << ", overlap " << u.intersect(v).str() << "\n\n";
  describe_poset(u);
  describe_poset(v);
  describe_poset(u.intersect(v));
  describe_poset(w);

  os << "\npullback poset (" << rep.direct.pullback.elems.size() << " pairs):\n";
  for (size_t xi = 0; xi < rep.direct.pullback.elems.size(); ++xi) {
    const auto& x = rep.direct.pullback.elems[xi];
    os << "  x" << xi << " = (C" << x[0] << ", C" << x[1] << ")\n";
  }
  os << "\ncomparison map f : P(" << w.str() << ") -> pullback:\n";
  for (size_t c = 0; c < sys.poset(w).size(); ++c)
    os << "  f(C" << c << ") = (C" << rep.direct.f_tuples[c][0] << ", C"
       << rep.direct.f_tuples[c][1] << ")  = x" << rep.direct.f_elem[c] << "\n";
  if (rep.direct.adj.exists) {
    os << "\nleft adjoint L : pullback -> P(" << w.str() << "):\n";
    for (size_t xi = 0; xi < rep.direct.adj.L.size(); ++xi) {
      os << "  L(x" << xi << ") = C" << rep.direct.adj.L[xi];
      const int back = rep.direct.f_elem[static_cast<size_t>(rep.direct.adj.L[xi])];
      os << "   f(L(x" << xi << ")) = x" << back
         << (back == static_cast<int>(xi) ? "" : "   <-- differs") << "\n";
    }
    os << "\nadjunction matrix (rows x, cols c; '1' where L(x) <= c, which must "
          "match x <= f(c)):\n";
    const auto& pw = sys.poset(w);
    for (size_t xi = 0; xi < rep.direct.adj.L.size(); ++xi) {
      os << "  x" << xi << ": ";
      for (size_t c = 0; c < pw.size(); ++c)
        os << (pw.leq(rep.direct.adj.L[xi], static_cast<int>(c)) ? '1' : '0');
      os << "\n";
    }
    os << "adjunction law holds: " << (rep.direct.adj.law_holds ? "yes" : "NO") << "\n";
    os << "fully faithful (f o L = id): " << (rep.direct.fully_faithful ? "yes" : "NO");
    if (rep.direct.ff_witness) os << "  witness x" << *rep.direct.ff_witness;
    os << "\n";
  } else {
    os << "\nno left adjoint: x" << *rep.direct.adj.witness
       << " has no least element among { c : x <= f(c) }\n";
  }
  if (rep.three_piece) {
    os << "\nthree-piece reduction over {";
    for (size_t i = 0; i < rep.three_piece->pieces.size(); ++i)
      os << (i ? ", " : "") << rep.three_piece->pieces[i].str();
    os << "}: " << (rep.three_piece->local() ? "local" : "not local")
       << (rep.three_piece_agrees ? " (agrees with direct)" : " (DISAGREES with direct)")
       << "\n";
  }
  os << "\nverdict: " << (rep.local() ? "local geometric morphism (poset-level certificate)"
                                      : "not a local geometric morphism")
     << "\n";
  return os.str();
}

}  // namespace bohrnet
