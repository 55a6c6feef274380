#pragma once

// Command surface over the workbench with machine-readable reports:
// relation verification on disk models, derivation emission and replay,
// bundle-family construction, and invariant computation.  Reports go to a
// JSON document; a one-line human summary accumulates separately.  Exit
// codes: 0 when every requested verdict is positive, 1 when a verification
// fails, 2 for usage errors.

#include <mcgkit/bundles.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace mcgkit {

using nlohmann::json;

struct CliResult {
  int exit_code = 0;
  json report;
  std::string human;
};

namespace cli {

inline json group_json(const AbelianGroup& g) {
  json t = json::array();
  for (const Int& d : g.torsion) t.push_back(d.str());
  return json{{"free_rank", g.free_rank}, {"torsion", t}, {"text", g.to_string()}};
}

inline json pairs_json(const std::vector<WordPair>& pairs) {
  json a = json::array();
  for (const WordPair& p : pairs)
    a.push_back(json{{"alpha", p.first.to_string()}, {"beta", p.second.to_string()}});
  return a;
}

inline json sections_json(const std::vector<SectionRecord>& ss) {
  json a = json::array();
  for (const SectionRecord& s : ss) {
    json d = json::array();
    for (const std::string& n : s.disjoint_from) d.push_back(n);
    a.push_back(json{{"name", s.name},
                     {"self_intersection", s.self_intersection},
                     {"disjoint_from", d},
                     {"source", s.source}});
  }
  return a;
}

inline json flatness_json(const FlatnessCertificate& c) {
  json bs = json::array();
  for (const BracketJustification& b : c.brackets) {
    json ok = json::array(), miss = json::array();
    for (const auto& p : b.commuting_pairs) ok.push_back(json::array({p.first, p.second}));
    for (const auto& p : b.missing) miss.push_back(json::array({p.first, p.second}));
    bs.push_back(json{{"index", b.index},
                      {"second_entry_identity", b.second_entry_identity},
                      {"commuting_pairs", ok},
                      {"missing", miss}});
  }
  return json{{"verdict", flatness_verdict_name(c.verdict)}, {"brackets", bs}};
}

/// Axiom-level oracle ids cited by a derivation.
inline std::vector<std::string> axiom_ids(const Derivation& d, const OracleSet& os) {
  std::vector<std::string> out;
  for (const std::string& id : d.oracle_ids_used()) {
    const OracleRelation* r = os.find(id);
    if (r && r->prov == Provenance::Axiom) out.push_back(id);
  }
  return out;
}

inline SurfaceModel load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open catalog file: " + path);
  return load_catalog(in);
}

inline SurfaceModel builtin_model(const std::string& name) {
  const std::string hs = "holed-sphere-", xf = "xm-fiber-";
  if (name.rfind(hs, 0) == 0) return holed_sphere(std::stoi(name.substr(hs.size())));
  if (name.rfind(xf, 0) == 0) return families::xm_fiber(std::stoi(name.substr(xf.size())));
  if (name == "ym-fiber") return families::ym_fiber();
  throw std::invalid_argument("unknown builtin model `" + name +
                              "` (want holed-sphere-N, xm-fiber-G, or ym-fiber)");
}

inline std::string model_label(const SurfaceModel& m) {
  if (m.kind == SurfaceModel::Kind::HoledSphere)
    return "holed-sphere(" + std::to_string(m.holes + 1) + ")";
  return "closed(" + std::to_string(m.genus) + ")";
}

inline std::pair<long long, long long> parse_range(const std::string& s) {
  const std::size_t dd = s.find("..");
  if (dd == std::string::npos || dd == 0 || dd + 2 >= s.size())
    throw std::invalid_argument("range must look like A..B");
  const long long lo = std::stoll(s.substr(0, dd));
  const long long hi = std::stoll(s.substr(dd + 2));
  if (lo > hi) throw std::invalid_argument("empty range " + s);
  return {lo, hi};
}

}  // namespace cli

inline CliResult run_cli(const std::vector<std::string>& args) {
  CliResult res;
  json& rep = res.report;
  rep["command"] = args;
  rep["inputs"] = json::object();
  rep["verdicts"] = json::object();
  rep["values"] = json::object();
  const auto t0 = std::chrono::steady_clock::now();

  std::ostringstream human;
  std::set<std::string> assumed;
  std::optional<CertLevel> level_seen;

  auto verdict = [&](const std::string& name, bool v) { rep["verdicts"][name] = v; };
  auto value = [&](const std::string& name, json v) { rep["values"][name] = std::move(v); };
  auto input = [&](const std::string& name, json v) { rep["inputs"][name] = std::move(v); };
  auto mark_level = [&](CertLevel lv) {
    level_seen = level_seen ? weakest(*level_seen, lv) : lv;
  };
  auto assume_from = [&](const Derivation& d, const OracleSet& os) {
    for (const std::string& id : cli::axiom_ids(d, os)) assumed.insert(id);
  };

  CLI::App app{"exact workbench for disk-twist relations and flat surface bundles",
               "mcgkit"};
  app.require_subcommand(1);

  std::string catalog_path, out_path, script_path, model_name, m_range, tail_sym;
  int petals = 3, kk = 1, g = 3, h = 2, base = 3, marked = 1;
  long long n = 1, m = 0, e = 0, tail_power = 0;
  bool want_h1 = false, want_flat = false, want_obstruction = false;

  auto disk_model = [&](int default_bc) {
    SurfaceModel mm = catalog_path.empty() ? holed_sphere(default_bc)
                                           : cli::load_catalog_file(catalog_path);
    input("model", catalog_path.empty() ? cli::model_label(mm) : catalog_path);
    return mm;
  };

  auto report_relation = [&](const SurfaceModel& mm, const RelationWord& rel) {
    Verdict v = verify_relation(mm, rel);
    verdict("holds", v.holds);
    value("relation", rel.name);
    value("lhs", rel.lhs.to_string());
    value("rhs", rel.rhs.to_string());
    if (!v.holds) value("witness", v.witness);
    mark_level(CertLevel::PlanarExact);
    human << rel.name << " on " << cli::model_label(mm) << ": "
          << (v.holds ? "Holds" : "FAILS") << "\n";
  };

  // ---- verify ------------------------------------------------------------
  CLI::App* verify = app.add_subcommand("verify", "check a relation against the twist tables");
  verify->require_subcommand(1);

  CLI::App* v_lantern = verify->add_subcommand("lantern", "four-boundary relation");
  v_lantern->add_option("--catalog", catalog_path, "catalog file instead of the builtin model");
  v_lantern->callback([&] { report_relation(disk_model(4), lantern_relation()); });

  CLI::App* v_daisy = verify->add_subcommand("daisy", "d-petal chain relation");
  v_daisy->add_option("--petals", petals, "number of petals d >= 3")->required();
  v_daisy->add_option("--catalog", catalog_path, "catalog file instead of the builtin model");
  v_daisy->callback([&] {
    input("petals", petals);
    report_relation(disk_model(petals + 1), daisy_relation(petals));
  });

  CLI::App* v_power = verify->add_subcommand("power", "even boundary-twist power factorization");
  v_power->add_option("--k", kk, "power parameter k >= 1")->required();
  v_power->add_option("--catalog", catalog_path, "catalog file instead of the builtin model");
  v_power->callback([&] {
    input("k", kk);
    report_relation(disk_model(5), power_relation(kk));
  });

  CLI::App* v_push = verify->add_subcommand("push-naturality",
                                            "single-hole pushes compose to the full push");
  v_push->add_option("--catalog", catalog_path, "catalog file instead of the builtin model");
  v_push->callback([&] {
    SurfaceModel mm = disk_model(5);
    AbstractWord prod;
    for (int i = 1; i <= mm.holes; ++i)
      prod = prod.concat(push(mm, ArcSpec{i, i, false, true}));
    const AbstractWord whole = push(mm, ArcSpec{1, mm.holes, true, true});
    const bool holds = auto_equal(evaluate(mm, prod), evaluate(mm, whole));
    verdict("holds", holds);
    value("single_pushes", prod.to_string());
    value("around_everything", whole.to_string());
    mark_level(CertLevel::PlanarExact);
    human << "push naturality on " << cli::model_label(mm) << ": "
          << (holds ? "Holds" : "FAILS") << "\n";
  });

  // ---- derive ------------------------------------------------------------
  CLI::App* derive = app.add_subcommand("derive", "emit or replay step-checked derivations");
  derive->require_subcommand(1);

  CLI::App* d_power = derive->add_subcommand("power", "derive the even-power factorization");
  d_power->add_option("--k", kk, "power parameter k >= 1")->required();
  d_power->add_option("--out", out_path, "write the derivation script here");
  d_power->callback([&] {
    input("k", kk);
    OracleSet os = planar_oracles(holed_sphere(5));
    os.merge(subsurface_axioms());
    const Derivation d = derive_power_relation(kk, os);
    verdict("checked", check_derivation(d, os));
    verdict("end_matches", d.end == power_relation_rhs(kk));
    value("start", d.start.to_string());
    value("end", d.end.to_string());
    value("steps", d.steps.size());
    mark_level(derivation_level(d, os));
    assume_from(d, os);
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      write_derivation(out, d);
      value("script", out_path);
    }
    human << "derived power factorization k=" << kk << " in " << d.steps.size()
          << " steps\n";
  });

  CLI::App* d_comm = derive->add_subcommand("commutatorize",
                                            "factor the even power into brackets");
  d_comm->add_option("--k", kk, "power parameter k >= 1")->required();
  d_comm->add_option("--tail-sym", tail_sym,
                     "twist symbol folded into the tail bracket (declared disjoint "
                     "from every disk curve)");
  d_comm->add_option("--tail-power", tail_power, "power of the tail twist");
  d_comm->add_option("--out", out_path, "write the certificate script here");
  d_comm->callback([&] {
    input("k", kk);
    OracleSet os = planar_oracles(holed_sphere(5));
    os.merge(subsurface_axioms(tail_sym.empty() ? std::vector<std::string>{"b"}
                                                : std::vector<std::string>{tail_sym}));
    const CommutatorFactorization f =
        tail_sym.empty() ? commutatorize_even_power(kk, os)
                         : commutatorize_even_power(kk, os, tail_sym, tail_power);
    std::string err;
    verdict("validates", f.validate(os, &err));
    verdict("bracket_count_matches", static_cast<long long>(f.brackets.size()) ==
                                         cl_floor(2LL * kk));
    if (!err.empty()) value("error", err);
    value("target", f.target.to_string());
    value("brackets", cli::pairs_json(f.brackets));
    value("steps", f.cert.steps.size());
    mark_level(derivation_level(f.cert, os));
    assume_from(f.cert, os);
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      write_derivation(out, f.cert);
      value("script", out_path);
    }
    human << "commutatorized delta^" << 2 * kk << " into " << f.brackets.size()
          << " brackets\n";
  });

  CLI::App* d_check = derive->add_subcommand("check", "replay a derivation script");
  d_check->add_option("--script", script_path, "derivation script file")->required();
  d_check->add_option("--catalog", catalog_path, "catalog file instead of the builtin model");
  d_check->callback([&] {
    input("script", script_path);
    std::ifstream in(script_path);
    if (!in) throw CatalogError("cannot open script file: " + script_path);
    const Derivation d = read_derivation(in);
    OracleSet os = planar_oracles(catalog_path.empty()
                                      ? holed_sphere(5)
                                      : cli::load_catalog_file(catalog_path));
    os.merge(subsurface_axioms());
    std::string err;
    const bool ok = check_derivation(d, os, &err);
    verdict("checked", ok);
    if (!ok) value("error", err);
    value("start", d.start.to_string());
    value("end", d.end.to_string());
    value("steps", d.steps.size());
    mark_level(ok ? derivation_level(d, os) : CertLevel::Unknown);
    assume_from(d, os);
    human << "script " << script_path << ": " << (ok ? "checked" : "REJECTED") << "\n";
  });

  // ---- scalar invariants ---------------------------------------------------
  CLI::App* cl_cmd = app.add_subcommand("cl", "commutator length of a boundary-twist power");
  cl_cmd->add_option("--n", n, "twist power n >= 1")->required();
  cl_cmd->callback([&] {
    input("n", n);
    value("cl", cl_floor(n));
    value("scl", scl_tdelta().to_string());
    verdict("computed", true);
    human << "cl of the " << n << "-th boundary-twist power = " << cl_floor(n)
          << " (stable: " << scl_tdelta().to_string() << ")\n";
  });

  CLI::App* bounds = app.add_subcommand("bounds", "section admissibility bounds");
  bounds->add_option("--h", h, "base genus h >= 1")->required();
  bounds->add_option("--e", e, "section self-intersection")->required();
  bounds->callback([&] {
    input("h", h);
    input("e", e);
    const MilnorWood mw = milnor_wood(h, e);
    verdict("section_admissible", mw.section_admissible);
    verdict("flat_parallel_admissible", mw.flat_parallel_admissible);
    value("bound_any", mw.bound_any);
    value("bound_parallel", mw.bound_parallel);
    human << "|e| = " << (e < 0 ? -e : e) << " vs 2h-2 = " << mw.bound_any
          << " (sections) and h-1 = " << mw.bound_parallel << " (parallel)\n";
  });

  // ---- families ------------------------------------------------------------
  auto family_report = [&](const FamilyBundle& fb) {
    std::string err;
    verdict("monodromy_certified", fb.monodromy.validate(&err));
    verdict("lift_certified", fb.lift.certified);
    if (!err.empty()) value("error", err);
    value("family", fb.family);
    value("fiber_genus", fb.monodromy.fiber_genus());
    value("base_genus", fb.monodromy.base_genus());
    value("m", fb.m);
    value("boundary_twist_power", fb.lift.boundary_power);
    value("pairs", cli::pairs_json(fb.monodromy.pairs));
    value("sections", cli::sections_json(fb.sections));
    mark_level(fb.weakest_level());
    assume_from(fb.monodromy.identity_cert, closed_oracles(fb.monodromy.fiber));
    assume_from(fb.lift.fact.cert, fb.lift.oracles);
    human << fb.family << "_" << fb.m << ": fiber genus "
          << fb.monodromy.fiber_genus() << ", base genus "
          << fb.monodromy.base_genus() << ", sections " << -fb.lift.boundary_power
          << " and 0";
    if (want_h1) {
      value("h1", cli::group_json(fb.h1));
      human << ", H1 = " << fb.h1.to_string();
    }
    if (want_flat) {
      verdict("flat", fb.flatness.verdict == FlatnessVerdict::Certified);
      value("flatness", cli::flatness_json(fb.flatness));
      human << ", flatness " << flatness_verdict_name(fb.flatness.verdict);
    }
    if (want_obstruction) {
      const ComplexObstructionReport r = complex_obstruction(fb);
      verdict("complex_obstructed", r.obstructed);
      value("betti", json{{"b1", r.b1}, {"b2_lower_bound", r.b2_lower_bound}});
      human << ", complex structure " << (r.obstructed ? "obstructed" : "not obstructed");
    }
    human << "\n";
  };

  CLI::App* family = app.add_subcommand("family", "build a bundle from one of the two families");
  family->require_subcommand(1);

  CLI::App* f_xm = family->add_subcommand("xm", "fiber genus g >= 3, base genus h >= 2");
  f_xm->add_option("--g", g, "fiber genus")->required();
  f_xm->add_option("--h", h, "base genus")->required();
  f_xm->add_option("--m", m, "twisting parameter")->required();
  f_xm->add_flag("--h1", want_h1, "report total-space homology");
  f_xm->add_flag("--flat", want_flat, "report the flatness certificate");
  f_xm->add_flag("--obstruction", want_obstruction, "report the complex-structure obstruction");
  f_xm->callback([&] {
    input("g", g);
    input("h", h);
    input("m", m);
    family_report(build_xm(g, h, m));
  });

  CLI::App* f_ym = family->add_subcommand("ym", "fiber genus 2, base genus H >= 3");
  f_ym->add_option("--base", base, "base genus")->required();
  f_ym->add_option("--m", m, "twisting parameter")->required();
  f_ym->add_flag("--h1", want_h1, "report total-space homology");
  f_ym->add_flag("--flat", want_flat, "report the flatness certificate");
  f_ym->add_flag("--obstruction", want_obstruction, "report the complex-structure obstruction");
  f_ym->callback([&] {
    input("base", base);
    input("m", m);
    family_report(build_ym(base, m));
  });

  // ---- distinguish ----------------------------------------------------------
  CLI::App* dist = app.add_subcommand("distinguish",
                                      "compare total-space homology across a parameter range");
  dist->require_subcommand(1);

  auto distinguish_report = [&](auto&& builder, long long lo, long long hi) {
    std::vector<MonodromyFactorization> fs;
    json table = json::array();
    for (long long mm = lo; mm <= hi; ++mm) {
      FamilyBundle fb = builder(mm);
      table.push_back(json{{"m", mm}, {"h1", fb.h1.to_string()}});
      fs.push_back(std::move(fb.monodromy));
    }
    const DistinguishReport dr = family_distinguisher(fs);
    verdict("all_distinct", dr.all_distinct());
    value("h1_table", table);
    if (!dr.collisions.empty()) {
      json c = json::array();
      for (const auto& p : dr.collisions)
        c.push_back(json{{"m_first", lo + static_cast<long long>(p.first)},
                         {"m_second", lo + static_cast<long long>(p.second)}});
      value("collisions", c);
    }
    human << "H1 across m = " << lo << ".." << hi << ": "
          << (dr.all_distinct() ? "pairwise distinct" : "COLLISIONS FOUND") << "\n";
  };

  CLI::App* dx = dist->add_subcommand("xm", "first family");
  dx->add_option("--g", g, "fiber genus")->required();
  dx->add_option("--h", h, "base genus")->required();
  dx->add_option("--m-range", m_range, "twisting range A..B")->required();
  dx->callback([&] {
    input("g", g);
    input("h", h);
    input("m_range", m_range);
    const auto [lo, hi] = cli::parse_range(m_range);
    distinguish_report([&](long long mm) { return build_xm(g, h, mm); }, lo, hi);
  });

  CLI::App* dy = dist->add_subcommand("ym", "second family");
  dy->add_option("--base", base, "base genus")->required();
  dy->add_option("--m-range", m_range, "twisting range A..B")->required();
  dy->callback([&] {
    input("base", base);
    input("m_range", m_range);
    const auto [lo, hi] = cli::parse_range(m_range);
    distinguish_report([&](long long mm) { return build_ym(base, mm); }, lo, hi);
  });

  // ---- nonlift ---------------------------------------------------------------
  CLI::App* nonlift = app.add_subcommand(
      "nonlift", "marked-point lifting obstruction from disjoint sections");
  nonlift->add_option("--g", g, "fiber genus (2 selects the second family)")->required();
  nonlift->add_option("--h", h, "base genus")->required();
  nonlift->add_option("--m", m, "twisting parameter")->required();
  nonlift->add_option("--marked", marked, "number of marked points r >= 1")->required();
  nonlift->callback([&] {
    input("g", g);
    input("h", h);
    input("m", m);
    input("marked", marked);
    const NonliftingReport nr = nonlifting_report(g, h, m, marked);
    verdict("violation", nr.violation);
    value("family", nr.bundle.family);
    value("sections", cli::sections_json(nr.sections));
    value("bound_parallel", nr.bounds.bound_parallel);
    value("bound_any", nr.bounds.bound_any);
    value("conclusion", nr.conclusion);
    mark_level(nr.bundle.weakest_level());
    assume_from(nr.bundle.monodromy.identity_cert,
                closed_oracles(nr.bundle.monodromy.fiber));
    assume_from(nr.bundle.lift.fact.cert, nr.bundle.lift.oracles);
    human << nr.conclusion << "\n";
  });

  // ---- catalog ----------------------------------------------------------------
  CLI::App* catalog = app.add_subcommand("catalog", "dump or gate-check curve catalogs");
  catalog->require_subcommand(1);

  CLI::App* c_dump = catalog->add_subcommand("dump", "write a builtin model as a catalog file");
  c_dump->add_option("--model", model_name,
                     "holed-sphere-N, xm-fiber-G, or ym-fiber")->required();
  c_dump->add_option("--out", out_path, "write the catalog here (otherwise into the report)");
  c_dump->callback([&] {
    input("model", model_name);
    const SurfaceModel mm = cli::builtin_model(model_name);
    std::ostringstream text;
    write_catalog(text, mm, model_name);
    verdict("dumped", true);
    if (out_path.empty()) {
      value("catalog", text.str());
    } else {
      std::ofstream out(out_path);
      out << text.str();
      value("file", out_path);
    }
    human << "catalog " << model_name << ": " << cli::model_label(mm) << ", "
          << mm.entries().size() << " curves\n";
  });

  CLI::App* c_check = catalog->add_subcommand("check", "load a catalog through its gates");
  c_check->add_option("--catalog", catalog_path, "catalog file")->required();
  c_check->callback([&] {
    input("catalog", catalog_path);
    try {
      const SurfaceModel mm = cli::load_catalog_file(catalog_path);
      verdict("loaded", true);
      value("model", cli::model_label(mm));
      value("curves", mm.entries().size());
      mark_level(CertLevel::PlanarExact);
      human << "catalog " << catalog_path << ": gates passed ("
            << cli::model_label(mm) << ")\n";
    } catch (const CatalogError& ex) {
      verdict("loaded", false);
      value("error", ex.what());
      human << "catalog " << catalog_path << ": REJECTED (" << ex.what() << ")\n";
    }
  });

  // ---- parse and wrap up --------------------------------------------------------
  auto finish = [&](int code) {
    rep["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    json as = json::array();
    for (const std::string& id : assumed) as.push_back(id);
    rep["assumptions"] = as;
    if (level_seen) rep["provenance"] = cert_level_name(*level_seen);
    res.human = human.str();
    res.exit_code = code;
    return res;
  };

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    human << app.help();
    return finish(0);
  } catch (const CLI::ParseError& ex) {
    rep["error"] = ex.what();
    human << "usage error: " << ex.what() << "\n";
    return finish(2);
  } catch (const std::invalid_argument& ex) {
    rep["error"] = ex.what();
    human << "usage error: " << ex.what() << "\n";
    return finish(2);
  } catch (const std::exception& ex) {
    rep["error"] = ex.what();
    human << "error: " << ex.what() << "\n";
    return finish(1);
  }

  bool all_ok = true;
  for (const auto& [name, v] : rep["verdicts"].items()) {
    (void)name;
    all_ok = all_ok && v.get<bool>();
  }
  return finish(all_ok ? 0 : 1);
}

}  // namespace mcgkit
