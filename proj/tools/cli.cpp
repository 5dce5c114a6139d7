#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "multitile/io.hpp"
#include "multitile/render.hpp"

namespace multitile::cli {

namespace {

const char* const kExample51 = R"json({
  "schema_version": 1,
  "generators": [{"kind": "sqrt", "radicand": "2"}],
  "polytope": {"vertices": [["0", "0"], ["1", "0"], ["1", "1/2"], ["0", "1/2"]]},
  "translations": {"cosets": [
    {"basis": [["1", "0"], ["0", "1"]], "translation": ["0", "0"], "weight": 1},
    {"basis": [["1", "0"], ["0", "1"]], "translation": ["sqrt:2/2", "1/2"], "weight": 1}
  ]},
  "family": {"basis": [["1", "0"], ["0", "1"]], "offsets": [["0", "0"], ["0", "1/2"]]},
  "split": {"S1": [1], "S2": [2]},
  "refinement": {"basis": [["1", "0"], ["0", "1"]], "t1": ["0", "0"], "t2": ["sqrt:2/2", "1/2"]},
  "weyl": {"a": ["sqrt:2/2"], "eps": "1/20", "jmax": 1000, "frequency": [1], "terms": 10000},
  "render": {"window": {"lo": ["-2", "-2"], "hi": ["3", "3"]}}
})json";

struct Options {
  std::string problem;
  std::string mode = "auto";
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> coset;
  std::string eps;
  std::optional<std::int64_t> jmax;
  std::string out;
  std::string a;
  std::string point;
  std::string frequency;
  std::optional<std::int64_t> terms;
  std::uint64_t check_samples = 256;
  bool generic = false;
  bool pipeline = false;
};

// Copies every member of `part` into `report`.
void merge_into(Json& report, const Json& part) {
  for (const auto& [k, v] : part.items()) report[k] = v;
}

struct Outcome {
  Json report;
  int code = kOk;
};

Problem require_problem(const Options& o) {
  if (o.problem.empty()) throw InvalidInput("--problem is required");
  return load_problem(o.problem);
}

Sampled sampled_config(const Options& o, const Problem* p) {
  Sampled s;
  if (p && p->sampling) {
    if (p->sampling->samples) s.count = *p->sampling->samples;
    if (p->sampling->seed) s.seed = *p->sampling->seed;
    if (p->sampling->region) s.region = std::make_pair(p->sampling->region->lo, p->sampling->region->hi);
  }
  if (o.samples) s.count = *o.samples;
  if (o.seed) s.seed = *o.seed;
  if (s.count == 0) throw InvalidInput("--samples must be positive");
  return s;
}

VerificationMode resolve_mode(const Options& o, const Problem* p, bool exact_available) {
  Sampled s = sampled_config(o, p);
  if (o.mode == "exact") return ExactTorus2D{};
  if (o.mode == "sampled") return s;
  return exact_available ? VerificationMode(ExactTorus2D{}) : VerificationMode(s);
}

GeneratorTable permissive_table(const Problem* p) {
  GeneratorTable t(true);
  if (p) {
    for (const auto& d : p->generators.declarations()) t.declare(d);
  }
  return t;
}

Vec parse_vector(const std::string& text, const GeneratorTable& table) {
  Vec out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(table.parse_expression(item));
  if (out.empty()) throw InvalidInput("empty vector argument");
  return out;
}

std::vector<std::int64_t> parse_int_vector(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw InvalidInput("bad integer \"" + item + "\"");
    } catch (const std::logic_error&) {
      throw InvalidInput("bad integer \"" + item + "\"");
    }
  }
  return out;
}

int verification_code(const VerificationResult& r) {
  return std::holds_alternative<TilingCertificate>(r) ? kOk : kDiscrepancy;
}

int verdict_code(const ConnectivityVerdict& v) {
  if (std::holds_alternative<Connected>(v)) return kOk;
  if (std::holds_alternative<Disconnected>(v)) return kDiscrepancy;
  return kInconclusive;
}

int pipeline_code(const PipelineOutcome& o) {
  if (o.multiplicity) return kOk;
  if (std::holds_alternative<Inconclusive>(o.connectivity)) return kInconclusive;
  return kDiscrepancy;
}

Outcome cmd_verify(const Options& o) {
  Problem p = require_problem(o);
  HalfOpenPolytope h = p.half_open();
  const QuasiPeriodicSet& q = p.quasi_periodic();
  VerificationMode mode = resolve_mode(o, &p, exact_mode_available(h, q));
  VerificationResult r = o.generic ? verify_generic_multiplicity(h, q, mode)
                                   : verify_constant_multiplicity(h, q, mode);
  Json report = report_header(o.generic ? "verify-generic" : "verify");
  report["probe"] = h.probe().h;
  merge_into(report, verification_to_json(r));
  return {report, verification_code(r)};
}

Outcome cmd_genpos(const Options& o) {
  Problem p = require_problem(o);
  HalfOpenPolytope h = p.half_open();
  const QuasiPeriodicSet& q = p.quasi_periodic();
  std::vector<std::size_t> first, second;
  if (o.coset) {
    if (*o.coset < 1 || *o.coset > q.cosets.size()) throw InvalidInput("--coset out of range");
    first = {*o.coset - 1};
    for (std::size_t j = 0; j < q.cosets.size(); ++j) {
      if (j != first.front()) second.push_back(j);
    }
  } else if (p.split) {
    first = p.split->first;
    second = p.split->second;
  } else {
    throw InvalidInput("genpos needs --coset or a split section");
  }
  Json report = report_header(o.pipeline ? "genpos-pipeline" : "genpos");
  report["S1"] = Json::array();
  for (std::size_t i : first) report["S1"].push_back(i + 1);
  report["S2"] = Json::array();
  for (std::size_t i : second) report["S2"].push_back(i + 1);
  if (!o.pipeline) {
    ConnectivityVerdict v = group_connectivity(h.base(), q, first, second);
    merge_into(report, verdict_to_json(v));
    return {report, verdict_code(v)};
  }
  QuasiPeriodicSet sub = q.subset(first);
  VerificationMode mode = resolve_mode(o, &p, exact_mode_available(h, sub));
  PipelineOutcome out = split_check(h, q, first, second, mode);
  merge_into(report, pipeline_to_json(out));
  return {report, pipeline_code(out)};
}

Outcome cmd_synthesize(const Options& o) {
  Problem p = require_problem(o);
  if (!p.family) throw InvalidInput("synthesize needs a family section");
  HalfOpenPolytope h = p.half_open();
  QuasiPeriodicSet all = p.family->as_quasi_periodic(std::vector<std::int64_t>(p.family->size(), 1));
  VerificationMode mode = resolve_mode(o, &p, exact_mode_available(h, all));
  SynthesisResult r = synthesize(h, *p.family, mode, SynthesisOptions{o.check_samples});
  Json report = report_header("synthesize");
  report["mode"] = mode_to_json(mode);
  merge_into(report, synthesis_to_json(r));
  return {report, std::holds_alternative<WeightSolution>(r) ? kOk : kDiscrepancy};
}

Outcome cmd_refine(const Options& o) {
  Problem p = require_problem(o);
  HalfOpenPolytope h = p.half_open();
  std::optional<RefinementSpec> spec = p.refinement;
  if (!spec) {
    const QuasiPeriodicSet& q = p.quasi_periodic();
    if (q.cosets.size() != 2 || !q.cosets[0].lattice.same_as(q.cosets[1].lattice)) {
      throw InvalidInput("refine needs a refinement section or two cosets of one lattice");
    }
    spec = RefinementSpec{q.cosets[0].lattice, q.cosets[0].translation, q.cosets[1].translation,
                          q.cosets[0].weight, q.cosets[1].weight};
  }
  if (o.mode == "exact" && h.base().dimension() != 2) {
    throw ModeUnavailable("exact verification needs d = 2");
  }
  RefinementResult r = theorem_1_4_pipeline(h, spec->lattice, spec->t1, spec->t2, spec->w1,
                                            spec->w2, sampled_config(o, &p), o.mode != "sampled");
  Json report = report_header("refine");
  merge_into(report, refinement_to_json(r));
  return {report, verification_code(r.verification)};
}

Outcome cmd_weyl(const Options& o) {
  std::optional<Problem> p;
  if (!o.problem.empty()) p = load_problem(o.problem);
  GeneratorTable table = permissive_table(p ? &*p : nullptr);
  WeylSpec spec;
  if (p && p->weyl) spec = *p->weyl;
  if (!o.a.empty()) spec.a = parse_vector(o.a, table);
  if (spec.a.empty()) throw InvalidInput("weyl needs --a or a weyl section");
  if (!o.eps.empty()) spec.eps = parse_rational(o.eps);
  if (o.jmax) spec.jmax = *o.jmax;
  if (!o.frequency.empty()) spec.frequency = parse_int_vector(o.frequency);
  if (o.terms) spec.terms = *o.terms;

  std::optional<std::int64_t> j = weyl_search(spec.a, spec.eps, spec.jmax);
  Json report = report_header("weyl");
  report["a"] = vec_to_json(spec.a);
  report["eps"] = to_string(spec.eps);
  report["jmax"] = spec.jmax;
  if (j) {
    report["j"] = *j;
    report["multiple"] = 2 * *j + 1;
  } else {
    report["j"] = nullptr;
  }
  std::vector<std::int64_t> freq = spec.frequency.value_or(std::vector<std::int64_t>{});
  if (freq.empty()) {
    freq.assign(spec.a.size(), 0);
    freq[0] = 1;
  }
  report["equidistribution"] = {
      {"frequency", freq},
      {"terms", spec.terms},
      {"statistic", equidistribution_statistic(spec.a, freq, spec.terms)},
      {"diagnostic", true}};
  return {report, j ? kOk : kInconclusive};
}

Outcome cmd_enumerate(const Options& o) {
  Problem p = require_problem(o);
  HalfOpenPolytope h = p.half_open();
  if (!p.translations) throw InvalidInput("problem has no translations");
  Json report = report_header("enumerate");
  report["probe"] = h.probe().h;
  if (!o.point.empty()) {
    GeneratorTable table = permissive_table(&p);
    Vec v = parse_vector(o.point, table);
    EnumeratorContext ctx(h, *p.translations);
    report["point"] = vec_to_json(v);
    report["L_half_open"] = L_half_open(ctx, v);
    report["L_closed"] = L_closed(ctx, v);
    if (const auto* q = std::get_if<QuasiPeriodicSet>(&*p.translations)) {
      report["per_coset"] = L_half_open_per_coset(h, *q, v);
    } else {
      const auto& w = std::get<WindowMultiset>(*p.translations);
      report["coverage_half_open"] = coverage_count(h, Membership::HalfOpen, w, v);
      report["coverage_closed"] = coverage_count(h, Membership::Closed, w, v);
    }
    return {report, kOk};
  }
  const QuasiPeriodicSet& q = p.quasi_periodic();
  report["cosets"] = Json::array();
  for (const Coset& c : q.cosets) {
    Json pts = Json::array();
    for (const WindowPoint& w : enumerate_in_polytope(c, h).points) {
      pts.push_back(vec_to_json(w.point));
    }
    report["cosets"].push_back({{"weight", c.weight}, {"half_open_points", pts}});
  }
  return {report, kOk};
}

std::string render_problem(const Problem& p) {
  if (!p.polytope) throw InvalidInput("problem has no polytope");
  const QuasiPeriodicSet& q = p.quasi_periodic();
  Vec lo, hi;
  if (p.render) {
    lo = p.render->lo;
    hi = p.render->hi;
  } else {
    lo = p.polytope->box_lo() - Vec(2, Scalar(2));
    hi = p.polytope->box_hi() + Vec(2, Scalar(2));
  }
  return render_tiling(*p.polytope, q, lo, hi);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write " + path);
  f << text;
}

Outcome cmd_demo(const Options& o) {
  Problem p = parse_problem(Json::parse(kExample51));
  HalfOpenPolytope h = p.half_open();
  const QuasiPeriodicSet& q = p.quasi_periodic();
  Json report = report_header("demo-example-5-1");
  bool as_expected = true;

  VerificationResult both = verify_constant_multiplicity(h, q, ExactTorus2D{});
  report["verify_Q"] = verification_to_json(both);
  const auto* cert = std::get_if<TilingCertificate>(&both);
  as_expected &= cert && cert->multiplicity == 1;

  for (std::size_t i = 0; i < 2; ++i) {
    VerificationResult alone = verify_constant_multiplicity(h, q.subset({i}), ExactTorus2D{});
    report["verify_L" + std::to_string(i + 1)] = verification_to_json(alone);
    as_expected &= std::holds_alternative<Discrepancy>(alone);
  }
  for (std::size_t i = 0; i < 2; ++i) {
    ConnectivityVerdict v = general_position_check(h.base(), q, i);
    report["genpos_" + std::to_string(i + 1)] = verdict_to_json(v);
    as_expected &= std::holds_alternative<Disconnected>(v);
  }
  RefinementResult r = theorem_1_4_pipeline(h, p.refinement->lattice, p.refinement->t1,
                                            p.refinement->t2, 1, 1, Sampled{});
  report["refine"] = refinement_to_json(r);
  const auto* rc = std::get_if<TilingCertificate>(&r.verification);
  as_expected &= r.n == 2 && rc && rc->multiplicity == 2;

  SynthesisResult s = synthesize(h, *p.family, ExactTorus2D{});
  report["synthesize"] = synthesis_to_json(s);
  as_expected &= std::holds_alternative<WeightSolution>(s);

  auto j = weyl_search(p.weyl->a, p.weyl->eps, p.weyl->jmax);
  report["weyl"] = {{"j", j ? Json(*j) : Json(nullptr)}};
  as_expected &= j.has_value();

  if (!o.out.empty()) {
    write_file(o.out, render_problem(p));
    report["svg"] = o.out;
  }
  report["as_expected"] = as_expected;
  return {report, as_expected ? kOk : kDiscrepancy};
}

int apply_precision_env(std::ostream& err) {
  const char* env = std::getenv("MULTITILE_MAX_PRECISION_BITS");
  if (!env) return kOk;
  try {
    std::size_t used = 0;
    unsigned long bits = std::stoul(env, &used);
    if (used != std::string(env).size() || bits < 32 || bits > (1UL << 20)) {
      throw std::invalid_argument("range");
    }
    set_precision_cap_bits(static_cast<unsigned>(bits));
  } catch (const std::exception&) {
    err << "error: MULTITILE_MAX_PRECISION_BITS must be an integer in [32, 1048576]\n";
    return kInputError;
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of multiple tilings by translates of a convex polytope",
               "multitile"};
  app.require_subcommand(1);
  Options o;

  auto add_problem = [&](CLI::App* sub) {
    sub->add_option("--problem", o.problem, "Problem JSON file")->check(CLI::ExistingFile);
  };
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", o.mode, "exact | sampled (default: exact when available)")
        ->check(CLI::IsMember({"auto", "exact", "sampled"}));
    sub->add_option("--samples", o.samples, "Number of samples in sampled mode");
    sub->add_option("--seed", o.seed, "Seed of the sampler");
  };
  auto add_out = [&](CLI::App* sub, const char* what) { sub->add_option("--out", o.out, what); };

  CLI::App* verify = app.add_subcommand("verify", "Certify that the half-open enumerator is constant");
  add_problem(verify);
  add_mode(verify);
  verify->add_flag("--generic", o.generic, "Closed enumerator at generic points only");
  add_out(verify, "Also write the report here");

  CLI::App* genpos = app.add_subcommand("genpos", "General-position (connectivity) check");
  add_problem(genpos);
  add_mode(genpos);
  genpos->add_option("--coset", o.coset, "1-based coset index i");
  genpos->add_flag("--pipeline", o.pipeline, "Then verify the first group alone");
  add_out(genpos, "Also write the report here");

  CLI::App* synth = app.add_subcommand("synthesize", "Nonnegative integer coset weights");
  add_problem(synth);
  add_mode(synth);
  synth->add_option("--check-samples", o.check_samples, "Fresh samples for the final check");
  add_out(synth, "Also write the report here");

  CLI::App* refine = app.add_subcommand("refine", "Refine two cosets of one lattice");
  add_problem(refine);
  add_mode(refine);
  add_out(refine, "Also write the report here");

  CLI::App* weyl = app.add_subcommand("weyl", "Odd multiples of a vector near Z^k");
  weyl->add_option("--problem", o.problem, "Problem JSON file with a weyl section")
      ->check(CLI::ExistingFile);
  weyl->add_option("--a", o.a, "Comma-separated scalars, e.g. sqrt:2/2");
  weyl->add_option("--eps", o.eps, "Closeness bound p/q");
  weyl->add_option("--jmax", o.jmax, "Largest j scanned");
  weyl->add_option("--frequency", o.frequency, "Comma-separated integer frequency");
  weyl->add_option("--terms", o.terms, "Terms of the exponential sum");
  add_out(weyl, "Also write the report here");

  CLI::App* enumerate = app.add_subcommand("enumerate", "Evaluate enumerators or list points");
  add_problem(enumerate);
  enumerate->add_option("--point", o.point, "Comma-separated point v");
  add_out(enumerate, "Also write the report here");

  CLI::App* render = app.add_subcommand("render", "SVG drawing of a 2D tiling");
  add_problem(render);
  add_out(render, "SVG output path (default: stdout)");

  CLI::App* demo = app.add_subcommand("demo-example-5-1", "Run every check on the rectangle example");
  add_out(demo, "Also write the SVG drawing here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }
  if (int code = apply_precision_env(err); code != kOk) return code;

  try {
    if (render->parsed()) {
      std::string svg = render_problem(require_problem(o));
      if (o.out.empty()) {
        out << svg;
      } else {
        write_file(o.out, svg);
      }
      return kOk;
    }
    Outcome result;
    if (verify->parsed()) result = cmd_verify(o);
    else if (genpos->parsed()) result = cmd_genpos(o);
    else if (synth->parsed()) result = cmd_synthesize(o);
    else if (refine->parsed()) result = cmd_refine(o);
    else if (weyl->parsed()) result = cmd_weyl(o);
    else if (enumerate->parsed()) result = cmd_enumerate(o);
    else result = cmd_demo(o);
    std::string text = result.report.dump(2) + "\n";
    out << text;
    if (!o.out.empty() && !demo->parsed()) write_file(o.out, text);
    return result.code;
  } catch (const InvalidInput& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const DimensionUnsupported& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const DivisionByZero& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace multitile::cli
