#include "multitile/io.hpp"

#include <fstream>
#include <sstream>

namespace multitile {

namespace {

Json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(static_cast<std::int64_t>(z.get_si()));
  return Json(to_string(z));
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(Integer(static_cast<long>(j.get<std::int64_t>())));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InvalidInput("expected a rational as \"p/q\"");
}

std::vector<std::int64_t> int_list(const Json& j) {
  if (!j.is_array()) throw InvalidInput("expected an array of integers");
  std::vector<std::int64_t> out;
  for (const Json& x : j) out.push_back(x.get<std::int64_t>());
  return out;
}

std::vector<std::size_t> index_list(const Json& j, const char* what) {
  std::vector<std::size_t> out;
  for (std::int64_t i : int_list(j)) {
    if (i < 1) throw InvalidInput(std::string(what) + ": coset indices are 1-based");
    out.push_back(static_cast<std::size_t>(i - 1));
  }
  return out;
}

Json index_list_to_json(const std::vector<std::size_t>& v) {
  Json out = Json::array();
  for (std::size_t i : v) out.push_back(i + 1);
  return out;
}

Lattice lattice_from_json(const Json& j, const GeneratorTable& t) {
  const Json& basis = j.at("basis");
  if (!basis.is_array() || basis.empty()) throw InvalidInput("basis must be a nonempty array");
  std::vector<Vec> columns;
  for (const Json& c : basis) columns.push_back(vec_from_json(c, t));
  for (const Vec& c : columns) {
    if (c.size() != columns.size()) throw InvalidInput("basis must be square");
  }
  return Lattice::from_columns(columns);
}

Coset coset_from_json(const Json& j, const GeneratorTable& t) {
  Coset c{lattice_from_json(j, t), {}, 1};
  c.translation = j.contains("translation") ? vec_from_json(j.at("translation"), t)
                                            : Vec(c.lattice.dimension(), Scalar(0));
  if (j.contains("weight")) c.weight = j.at("weight").get<std::int64_t>();
  return c;
}

Translations translations_from_json(const Json& j, const GeneratorTable& t) {
  const Json* cosets = nullptr;
  if (j.is_array()) cosets = &j;
  if (j.is_object() && j.contains("cosets")) cosets = &j.at("cosets");
  if (cosets) {
    QuasiPeriodicSet q;
    for (const Json& c : *cosets) q.cosets.push_back(coset_from_json(c, t));
    q.validate();
    return q;
  }
  if (j.is_object() && j.contains("window")) {
    WindowMultiset w;
    for (const Json& p : j.at("window")) {
      WindowPoint wp{vec_from_json(p.at("point"), t), 1};
      if (p.contains("multiplicity")) wp.multiplicity = p.at("multiplicity").get<std::int64_t>();
      w.points.push_back(std::move(wp));
    }
    w.validate();
    return w;
  }
  throw InvalidInput("translations need \"cosets\" or \"window\"");
}

Json translations_to_json(const Translations& tr) {
  Json out = Json::object();
  if (const auto* q = std::get_if<QuasiPeriodicSet>(&tr)) {
    out["cosets"] = Json::array();
    for (const Coset& c : q->cosets) out["cosets"].push_back(coset_to_json(c));
  } else {
    out["window"] = Json::array();
    for (const WindowPoint& p : std::get<WindowMultiset>(tr).points) {
      out["window"].push_back({{"point", vec_to_json(p.point)}, {"multiplicity", p.multiplicity}});
    }
  }
  return out;
}

Polytope polytope_from_json(const Json& j, const GeneratorTable& t) {
  if (j.contains("facets")) {
    std::vector<Facet> facets;
    for (const Json& f : j.at("facets")) {
      facets.push_back({vec_from_json(f.at("normal"), t), scalar_from_json(f.at("offset"), t)});
    }
    return Polytope::from_facets(std::move(facets));
  }
  if (j.contains("vertices")) {
    std::vector<Vec> vertices;
    for (const Json& v : j.at("vertices")) vertices.push_back(vec_from_json(v, t));
    return Polytope::from_vertices(vertices);
  }
  throw InvalidInput("polytope needs \"facets\" or \"vertices\"");
}

BoxSpec box_from_json(const Json& j, const GeneratorTable& t) {
  BoxSpec b{vec_from_json(j.at("lo"), t), vec_from_json(j.at("hi"), t)};
  if (b.lo.size() != b.hi.size()) throw InvalidInput("box corners differ in dimension");
  for (std::size_t k = 0; k < b.lo.size(); ++k) {
    if (!(b.lo[k] < b.hi[k])) throw InvalidInput("box must satisfy lo < hi");
  }
  return b;
}

Json box_to_json(const BoxSpec& b) { return {{"lo", vec_to_json(b.lo)}, {"hi", vec_to_json(b.hi)}}; }

GeneratorDeclaration declaration_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "sqrt") return SurdDeclaration{rational_from_json(j.at("radicand"))};
  if (kind == "symbolic") {
    SymbolicDeclaration d{j.at("name").get<std::string>(), {}};
    for (const Json& iv : j.at("intervals")) {
      if (!iv.is_array() || iv.size() != 2) throw InvalidInput("intervals are [lo, hi] pairs");
      d.schedule.push_back({rational_from_json(iv[0]), rational_from_json(iv[1])});
    }
    return d;
  }
  throw InvalidInput("unknown generator kind \"" + kind + "\"");
}

Json declaration_to_json(const GeneratorDeclaration& d) {
  if (const auto* s = std::get_if<SurdDeclaration>(&d)) {
    return {{"kind", "sqrt"}, {"radicand", to_string(s->radicand)}};
  }
  const auto& sym = std::get<SymbolicDeclaration>(d);
  Json intervals = Json::array();
  for (const Interval& iv : sym.schedule) {
    intervals.push_back({to_string(iv.lo), to_string(iv.hi)});
  }
  return {{"kind", "symbolic"}, {"name", sym.name}, {"intervals", intervals}};
}

Json decomposition_to_json(const OffsetDecomposition& d) {
  Json gens = Json::array();
  for (const Generator& g : d.generators) gens.push_back(g.key());
  return {{"coordinates", vec_to_json(d.coordinates)},
          {"irrational_rank", d.irrational_rank()},
          {"generators", gens}};
}

Problem parse_problem_impl(const Json& j) {
  if (!j.is_object()) throw InvalidInput("problem must be a JSON object");
  if (!j.contains("schema_version")) throw InvalidInput("missing schema_version");
  if (j.at("schema_version").get<int>() != kSchemaVersion) {
    throw InvalidInput("unsupported schema_version");
  }
  Problem p;
  if (j.contains("generators")) {
    for (const Json& g : j.at("generators")) p.generators.declare(declaration_from_json(g));
  }
  const GeneratorTable& t = p.generators;
  if (j.contains("polytope")) p.polytope = polytope_from_json(j.at("polytope"), t);
  if (j.contains("probe")) {
    p.probe = ProbeDirection{int_list(j.at("probe"))};
    if (!p.polytope || !is_valid_probe(*p.polytope, *p.probe)) {
      throw InvalidInput("probe is orthogonal to a facet normal or has the wrong length");
    }
  }
  if (j.contains("translations")) {
    p.translations = translations_from_json(j.at("translations"), t);
  }
  if (j.contains("family")) {
    const Json& f = j.at("family");
    CosetFamily fam{lattice_from_json(f, t), {}};
    for (const Json& a : f.at("offsets")) fam.offsets.push_back(vec_from_json(a, t));
    fam.validate();
    p.family = std::move(fam);
  }
  if (j.contains("split")) {
    const Json& s = j.at("split");
    p.split = SplitSpec{index_list(s.at("S1"), "split"),
                        s.contains("S2") ? index_list(s.at("S2"), "split")
                                         : std::vector<std::size_t>{}};
  }
  if (j.contains("refinement")) {
    const Json& r = j.at("refinement");
    RefinementSpec spec{lattice_from_json(r, t), vec_from_json(r.at("t1"), t),
                        vec_from_json(r.at("t2"), t), 1, 1};
    if (r.contains("weights")) {
      auto w = int_list(r.at("weights"));
      if (w.size() != 2) throw InvalidInput("refinement weights must be a pair");
      spec.w1 = w[0];
      spec.w2 = w[1];
    }
    p.refinement = std::move(spec);
  }
  if (j.contains("weyl")) {
    const Json& w = j.at("weyl");
    WeylSpec spec;
    spec.a = vec_from_json(w.at("a"), t);
    if (w.contains("eps")) spec.eps = rational_from_json(w.at("eps"));
    if (w.contains("jmax")) spec.jmax = w.at("jmax").get<std::int64_t>();
    if (w.contains("frequency")) spec.frequency = int_list(w.at("frequency"));
    if (w.contains("terms")) spec.terms = w.at("terms").get<std::int64_t>();
    p.weyl = std::move(spec);
  }
  if (j.contains("render")) p.render = box_from_json(j.at("render").at("window"), t);
  if (j.contains("sampling")) {
    const Json& s = j.at("sampling");
    SamplingSpec spec;
    if (s.contains("region")) spec.region = box_from_json(s.at("region"), t);
    if (s.contains("samples")) spec.samples = s.at("samples").get<std::uint64_t>();
    if (s.contains("seed")) spec.seed = s.at("seed").get<std::uint64_t>();
    p.sampling = std::move(spec);
  }
  return p;
}

}  // namespace

HalfOpenPolytope Problem::half_open() const {
  if (!polytope) throw InvalidInput("problem has no polytope");
  if (probe) return HalfOpenPolytope(*polytope, *probe);
  return HalfOpenPolytope(*polytope);
}

const QuasiPeriodicSet& Problem::quasi_periodic() const {
  if (!translations) throw InvalidInput("problem has no translations");
  const auto* q = std::get_if<QuasiPeriodicSet>(&*translations);
  if (!q) throw InvalidInput("this task needs translations given as cosets");
  return *q;
}

bool operator==(const Problem& a, const Problem& b) {
  return a.generators.declarations() == b.generators.declarations() && a.polytope == b.polytope &&
         a.probe == b.probe && a.translations == b.translations && a.family == b.family &&
         a.split == b.split && a.refinement == b.refinement && a.weyl == b.weyl &&
         a.render == b.render && a.sampling == b.sampling;
}

Json scalar_to_json(const Scalar& x) {
  if (x.is_rational()) return to_string(x.rational_part());
  Json irr = Json::object();
  for (const auto& t : x.terms()) irr[t.generator.key()] = to_string(t.coefficient);
  return {{"rat", to_string(x.rational_part())}, {"irr", irr}};
}

Scalar scalar_from_json(const Json& j, const GeneratorTable& table) {
  if (j.is_number_integer()) return Scalar(Integer(static_cast<long>(j.get<std::int64_t>())));
  if (j.is_string()) return table.parse_expression(j.get<std::string>());
  if (j.is_object()) {
    Scalar x = j.contains("rat") ? Scalar(rational_from_json(j.at("rat"))) : Scalar(0);
    if (j.contains("irr")) {
      for (const auto& [key, coef] : j.at("irr").items()) {
        x += table.resolve(key) * Scalar(rational_from_json(coef));
      }
    }
    return x;
  }
  throw InvalidInput("expected a scalar: \"p/q\", an expression string, or {rat, irr}");
}

Json vec_to_json(const Vec& v) {
  Json out = Json::array();
  for (const Scalar& x : v) out.push_back(scalar_to_json(x));
  return out;
}

Vec vec_from_json(const Json& j, const GeneratorTable& table) {
  if (!j.is_array() || j.empty()) throw InvalidInput("expected a nonempty array of scalars");
  Vec out;
  for (const Json& x : j) out.push_back(scalar_from_json(x, table));
  return out;
}

Json lattice_to_json(const Lattice& l) {
  Json basis = Json::array();
  for (std::size_t c = 0; c < l.dimension(); ++c) basis.push_back(vec_to_json(l.column(c)));
  return {{"basis", basis}};
}

Json polytope_to_json(const Polytope& p) {
  if (p.vertices()) {
    Json vs = Json::array();
    for (const Vec& v : *p.vertices()) vs.push_back(vec_to_json(v));
    return {{"vertices", vs}};
  }
  Json fs = Json::array();
  for (const Facet& f : p.facets()) {
    fs.push_back({{"normal", vec_to_json(f.normal)}, {"offset", scalar_to_json(f.offset)}});
  }
  return {{"facets", fs}};
}

Json coset_to_json(const Coset& c) {
  Json out = lattice_to_json(c.lattice);
  out["translation"] = vec_to_json(c.translation);
  out["weight"] = c.weight;
  return out;
}

Json segment_to_json(const Segment2& s) {
  return {{"from", vec_to_json(s.a.as_vec())}, {"to", vec_to_json(s.b.as_vec())}};
}

Problem parse_problem(const Json& j) {
  try {
    return parse_problem_impl(j);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed problem: ") + e.what());
  }
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open problem file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("invalid JSON: ") + e.what());
  }
  return parse_problem(j);
}

Json to_json(const Problem& p) {
  Json out = {{"schema_version", kSchemaVersion}};
  if (!p.generators.declarations().empty()) {
    Json gens = Json::array();
    for (const auto& d : p.generators.declarations()) gens.push_back(declaration_to_json(d));
    out["generators"] = gens;
  }
  if (p.polytope) out["polytope"] = polytope_to_json(*p.polytope);
  if (p.probe) out["probe"] = p.probe->h;
  if (p.translations) out["translations"] = translations_to_json(*p.translations);
  if (p.family) {
    Json f = lattice_to_json(p.family->lattice);
    f["offsets"] = Json::array();
    for (const Vec& a : p.family->offsets) f["offsets"].push_back(vec_to_json(a));
    out["family"] = f;
  }
  if (p.split) {
    out["split"] = {{"S1", index_list_to_json(p.split->first)},
                    {"S2", index_list_to_json(p.split->second)}};
  }
  if (p.refinement) {
    Json r = lattice_to_json(p.refinement->lattice);
    r["t1"] = vec_to_json(p.refinement->t1);
    r["t2"] = vec_to_json(p.refinement->t2);
    r["weights"] = {p.refinement->w1, p.refinement->w2};
    out["refinement"] = r;
  }
  if (p.weyl) {
    Json w = {{"a", vec_to_json(p.weyl->a)},
              {"eps", to_string(p.weyl->eps)},
              {"jmax", p.weyl->jmax}};
    if (p.weyl->frequency) w["frequency"] = *p.weyl->frequency;
    w["terms"] = p.weyl->terms;
    out["weyl"] = w;
  }
  if (p.render) out["render"] = {{"window", box_to_json(*p.render)}};
  if (p.sampling) {
    Json s = Json::object();
    if (p.sampling->region) s["region"] = box_to_json(*p.sampling->region);
    if (p.sampling->samples) s["samples"] = *p.sampling->samples;
    if (p.sampling->seed) s["seed"] = *p.sampling->seed;
    out["sampling"] = s;
  }
  return out;
}

Json report_header(const std::string& kind) {
  return {{"schema_version", kSchemaVersion}, {"kind", kind}};
}

Json mode_to_json(const VerificationMode& m) {
  if (std::holds_alternative<ExactTorus2D>(m)) return {{"name", "exact-torus-2d"}};
  const Sampled& s = std::get<Sampled>(m);
  Json out = {{"name", "sampled"}, {"samples", s.count}, {"seed", s.seed}};
  if (s.region) {
    out["region"] = box_to_json(BoxSpec{s.region->first, s.region->second});
  }
  return out;
}

Json verification_to_json(const VerificationResult& r) {
  if (const auto* c = std::get_if<TilingCertificate>(&r)) {
    Json out = {{"result", "constant"},
                {"m", c->multiplicity},
                {"certified", c->certified},
                {"mode", mode_to_json(c->mode)},
                {"evidence",
                 {{"cells", c->cells_checked},
                  {"edges", c->edges_checked},
                  {"vertices", c->vertices_checked},
                  {"samples", c->samples_checked}}}};
    if (c->period) out["period"] = lattice_to_json(*c->period);
    return out;
  }
  const Discrepancy& d = std::get<Discrepancy>(r);
  Json realizers = Json::array();
  for (std::size_t i = 0; i < d.observed.size(); ++i) {
    realizers.push_back({{"value", d.observed[i]}, {"point", vec_to_json(d.realizers[i])}});
  }
  return {{"result", "discrepancy"},
          {"witness", vec_to_json(d.witness)},
          {"observed", d.observed},
          {"realizers", realizers},
          {"mode", mode_to_json(d.mode)}};
}

Json verdict_to_json(const ConnectivityVerdict& v) {
  if (std::holds_alternative<Connected>(v)) return {{"verdict", "connected"}};
  if (const auto* d = std::get_if<Disconnected>(&v)) {
    Json w = Json::array();
    for (const Segment2& s : d->witness) w.push_back(segment_to_json(s));
    return {{"verdict", "disconnected"}, {"witness", w}, {"description", d->description}};
  }
  return {{"verdict", "inconclusive"}, {"reason", std::get<Inconclusive>(v).reason}};
}

Json pipeline_to_json(const PipelineOutcome& o) {
  Json out = {{"connectivity", verdict_to_json(o.connectivity)}};
  if (o.verification) out["verification"] = verification_to_json(*o.verification);
  if (o.multiplicity) {
    out["m"] = *o.multiplicity;
  } else {
    out["failure"] = o.reason;
  }
  return out;
}

Json synthesis_to_json(const SynthesisResult& r) {
  auto collection_json = [](const DifferenceCollection& c) {
    return Json{{"exact", c.exact},
                {"points", c.points.size()},
                {"value_vectors", c.value_vectors},
                {"differences", c.differences.size()}};
  };
  if (const auto* w = std::get_if<WeightSolution>(&r)) {
    Json g = Json::array();
    for (const Integer& x : w->weights) g.push_back(integer_to_json(x));
    Json complement = Json::array();
    for (const auto& row : w->complement) {
      Json jr = Json::array();
      for (const Rational& x : row) jr.push_back(to_string(x));
      complement.push_back(jr);
    }
    return {{"result", "solved"},
            {"g", g},
            {"m", w->multiplicity},
            {"certified", w->exact},
            {"evidence",
             {{"points_verified", w->points_verified},
              {"collection", collection_json(w->collection)},
              {"complement_basis", complement}}}};
  }
  const SynthesisFailure& f = std::get<SynthesisFailure>(r);
  return {{"result", "failure"},
          {"stage", f.stage},
          {"reason", f.reason},
          {"evidence", {{"collection", collection_json(f.collection)}}}};
}

Json refinement_to_json(const RefinementResult& r) {
  return {{"N", integer_to_json(r.n)},
          {"decomposition", decomposition_to_json(r.decomposition)},
          {"candidate", coset_to_json(r.candidate)},
          {"verification", verification_to_json(r.verification)}};
}

}  // namespace multitile
