#include "cli.hpp"

#include "CLI11.hpp"
#include "json.hpp"
#include "spinsum/catalog.hpp"
#include "spinsum/fuzz.hpp"
#include "spinsum/io.hpp"
#include "spinsum/tft.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace spinsum::cli {

namespace {

using nlohmann::json;

// A property failed; the report is still printed.
struct Outcome {
  json report;
  int code = kOk;
};

struct Common {
  bool as_json = false;
  std::string output;
  int max_legs = 0;
  long long max_entries = 0;

  Budget budget() const {
    Budget b = Budget::from_env();
    if (max_legs > 0) b.max_legs = max_legs;
    if (max_entries > 0) b.max_entries = static_cast<std::size_t>(max_entries);
    return b;
  }
};

// Plain-text view of a report: one "key: value" line per scalar field.
void render(const json& j, std::ostream& os, int indent) {
  const std::string pad(indent, ' ');
  auto inline_value = [](const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_primitive(); })) {
      std::string s = "[";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += " ";
        s += v[i].is_string() ? v[i].get<std::string>() : v[i].dump();
      }
      return s + "]";
    }
    return v.dump();
  };
  auto nested = [](const json& v) {
    return v.is_object() || (v.is_array() && !std::all_of(v.begin(), v.end(), [](const json& x) {
                               return x.is_primitive();
                             }));
  };
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (nested(it.value())) {
        os << pad << it.key() << ":\n";
        render(it.value(), os, indent + 2);
      } else {
        os << pad << it.key() << ": " << inline_value(it.value()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& x : j) {
      if (nested(x)) {
        os << pad << "-\n";
        render(x, os, indent + 2);
      } else {
        os << pad << "- " << inline_value(x) << "\n";
      }
    }
  } else {
    os << pad << inline_value(j) << "\n";
  }
}

GradedFrobeniusAlgebra load_algebra(const std::string& name, const std::string& file) {
  if (!file.empty()) return algebra_from_json(read_file(file));
  try {
    return builtin_algebra(name);
  } catch (const std::exception&) {
    std::string known;
    for (const auto& n : builtin_algebra_names()) known += " " + n;
    throw InputError("unknown algebra '" + name + "'; built-ins:" + known);
  }
}

MarkedTriangulation load_surface(const std::string& name, const std::string& file) {
  if (!file.empty()) return surface_from_json(read_file(file));
  if (name.empty()) throw InputError("give --surface or --surface-file");
  try {
    return builtin_surface(name);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

BoundaryTypes parse_types(const std::string& text) {
  BoundaryTypes t;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "NS")
      t.push_back(BoundaryType::NS);
    else if (item == "R")
      t.push_back(BoundaryType::R);
    else
      throw InputError("boundary types are NS or R, got '" + item + "'");
  }
  return t;
}

json signs_array(const Signs& s) { return json(s); }

// ---- validate-algebra

struct ValidateArgs {
  std::string builtin, file;
};

Outcome validate_algebra(const ValidateArgs& a) {
  if (a.builtin.empty() == a.file.empty()) throw InputError("give exactly one of --builtin or --file");
  auto A = load_algebra(a.builtin, a.file);
  json r;
  r["algebra"] = A.name;
  r["field"] = A.field.name();
  r["dim"] = A.dim;
  PredicateReport p;
  try {
    p = validate_predicates(A);
    r["pairing_nondegenerate"] = true;
  } catch (const std::domain_error&) {
    r["pairing_nondegenerate"] = false;
  }
  r["predicates"] = json::parse(predicates_to_json(p));
  r["state_sum_ready"] = p.state_sum_ready();
  return {r, p.state_sum_ready() ? kOk : kViolation};
}

// ---- amplitude

struct AmplitudeArgs {
  std::string surface, surface_file, spin, signs_file, types, algebra = "clifford", algebra_file;
  bool raw = false, oracle = false, project = false;
};

Outcome amplitude(const AmplitudeArgs& a, const Common& c) {
  auto A = load_algebra(a.algebra, a.algebra_file);
  MarkedTriangulation tri;
  Signs s;
  BoundaryTypes types;
  bool have_types = false;
  if (!a.spin.empty()) {
    if (!a.signs_file.empty() || !a.surface_file.empty())
      throw InputError("--spin selects a built-in spin surface; drop --signs/--surface-file");
    try {
      auto ss = builtin_spin_surface(a.surface, a.spin);
      tri = ss.tri;
      s = ss.signs;
      types = ss.types;
      have_types = true;
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  } else {
    tri = load_surface(a.surface, a.surface_file);
    if (a.signs_file.empty()) throw InputError("give --spin or --signs");
    s = signs_from_json(read_file(a.signs_file), tri.num_edges());
    if (!a.types.empty()) {
      types = parse_types(a.types);
      have_types = true;
    } else if (tri.is_closed()) {
      have_types = true;
    }
    if (have_types && static_cast<int>(types.size()) != tri.num_boundaries())
      throw InputError("--types needs one entry per boundary");
  }

  Evaluator ev(A, c.budget());
  json r;
  r["algebra"] = A.name;
  r["surface"] = a.surface_file.empty() ? a.surface : a.surface_file;
  if (!a.spin.empty()) r["spin"] = a.spin;
  if (a.project && !a.raw) throw InputError("--project only applies to --raw");
  if (have_types) r["admissible"] = is_admissible(tri, s, types);

  Amplitude amp;
  if (a.raw) {
    amp = ev.raw(tri, s);
    r["mode"] = "raw";
    if (a.project) {
      if (!have_types) throw InputError("--project needs boundary types");
      amp = project_boundaries(amp, types, ev);
      r["mode"] = "raw-projected";
    }
  } else {
    if (!have_types) throw InputError("--types is required for a surface with boundary (or pass --raw)");
    if (!is_admissible(tri, s, types)) throw InputError("signs are not admissible; pass --raw for the unconstrained value");
    if (!ev.predicates().state_sum_ready()) throw InputError("algebra " + A.name + " fails the state-sum predicates");
    amp = ev.evaluate(tri, s, types);
    r["mode"] = "evaluate";
  }
  r["amplitude"] = json::parse(amplitude_to_json(amp));
  r["zero"] = amp.tensor.is_zero();

  int code = kOk;
  if (a.oracle) {
    std::optional<GradedTensor> closed;
    if (!a.raw && !a.spin.empty()) {
      auto sel = builtin_spin_surface(a.surface, a.spin);
      if (a.surface == "cylinder") {
        closed = cylinder_closed_form(A, sel.types[0], sel.signs[0]).tensor;
      } else if (a.surface == "pants") {
        // eps1 eps2 are the last two characters of the selector
        int e1 = a.spin[a.spin.size() - 2] == '+' ? 1 : -1, e2 = a.spin.back() == '+' ? 1 : -1;
        closed = pants_closed_form(A, sel.types[0], sel.types[1], sel.types[2], e1, e2).tensor;
      } else if (a.surface == "torus" && a.spin.size() >= 2 && !std::isdigit(static_cast<unsigned char>(a.spin[0]))) {
        auto d = a.spin.substr(0, a.spin.size() - 1) == "NS" ? BoundaryType::NS : BoundaryType::R;
        Scalar v = torus_closed_form(A, d, a.spin.back() == '+' ? 1 : -1);
        GradedTensor t(A.dim, A.parity, {}, A.field);
        t.add(0, v);
        t.normalize();
        closed = t;
      }
    }
    if (!closed) {
      r["oracle"] = "unavailable";
    } else if (*closed == amp.tensor) {
      r["oracle"] = "equal";
    } else {
      r["oracle"] = "differs";
      code = kViolation;
    }
  }
  return {r, code};
}

// ---- classify

struct ClassifyArgs {
  std::string surface, surface_file;
};

Outcome classify(const ClassifyArgs& a) {
  auto tri = load_surface(a.surface, a.surface_file);
  if (!tri.is_closed()) throw InputError("classify needs a closed surface");
  auto classes = classify_spin_structures(tri);
  auto cycles = dual_cycles(tri);
  json r;
  r["surface"] = a.surface_file.empty() ? a.surface : a.surface_file;
  r["genus"] = tri.genus();
  r["count"] = classes.representatives.size();
  r["solution_dim"] = classes.solution_dim;
  r["leaf_dim"] = classes.leaf_dim;
  std::map<std::string, int> multiset = {{"+1", 0}, {"-1", 0}};
  json list = json::array();
  for (std::size_t k = 0; k < classes.representatives.size(); ++k) {
    const auto& s = classes.representatives[k];
    int arf = arf_by_count(tri, s);
    multiset[arf > 0 ? "+1" : "-1"]++;
    std::vector<int> fp;
    for (const auto& c : cycles) fp.push_back(curve_lift_sign(tri, s, c));
    list.push_back({{"index", k}, {"arf", arf}, {"curve_lifts", fp}, {"signs", signs_array(s)}});
  }
  r["arf_multiset"] = multiset;
  r["classes"] = list;
  return {r, kOk};
}

// ---- pachner-fuzz

struct FuzzArgs {
  std::string surface = "cylinder", spin, algebra = "clifford", algebra_file, log, replay;
  std::uint64_t seed = 1;
  int moves = 200;
  int max_growth = 8;
  bool negative_control = false;
};

std::string default_spin(const std::string& surface) {
  if (surface == "cylinder" || surface == "torus") return "NS+";
  if (surface == "pants") return "NS,NS,NS:++";
  return "0";
}

Outcome pachner_fuzz(const FuzzArgs& a, const Common& c) {
  if (a.moves <= 0) throw InputError("--moves must be positive");
  if (a.max_growth < 0) throw InputError("--max-growth must be non-negative");
  auto A = load_algebra(a.algebra, a.algebra_file);
  SpinSurface start;
  try {
    start = builtin_spin_surface(a.surface, a.spin.empty() ? default_spin(a.surface) : a.spin);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  Evaluator ev(A, c.budget());
  if (!ev.predicates().state_sum_ready()) throw InputError("algebra " + A.name + " fails the state-sum predicates");
  Mover mover = a.negative_control ? negative_control_mover() : default_mover();

  if (!a.replay.empty()) {
    std::vector<PachnerMove> moves;
    try {
      moves = parse_move_log(read_file(a.replay));
    } catch (const std::exception& e) {
      throw InputError(std::string("move log: ") + e.what());
    }
    auto rr = replay(start, ev, moves, mover);
    json r = {{"surface", start.name}, {"algebra", A.name}, {"replayed", rr.applied}, {"moves", moves.size()}};
    r["inapplicable"] = rr.inapplicable;
    r["passed"] = !rr.failure && !rr.inapplicable;
    if (rr.failure) r["failure"] = {{"step", rr.failure->step}, {"reason", rr.failure->reason}};
    if (rr.inapplicable) return {r, kInputError};
    return {r, rr.failure ? kViolation : kOk};
  }

  FuzzOptions opt;
  opt.moves = a.moves;
  opt.seed = a.seed;
  opt.max_growth = a.max_growth;
  auto rep = run_fuzz(start, ev, opt, mover);
  if (!a.log.empty()) {
    std::ofstream f(a.log, std::ios::binary);
    if (!f) throw InputError("cannot write '" + a.log + "'");
    f << move_log_json_lines(rep.log);
  }
  json r = json::parse(fuzz_report_json(rep));
  r["choice_13"] = {opt.choice[0], opt.choice[1]};
  return {r, rep.passed() ? kOk : kViolation};
}

// ---- sign-scan

struct ScanArgs {
  std::string surface = "torus", surface_file, algebra = "clifford", algebra_file;
};

Outcome sign_scan(const ScanArgs& a) {
  auto A = load_algebra(a.algebra, a.algebra_file);
  auto tri = load_surface(a.surface, a.surface_file);
  if (!tri.is_closed()) throw InputError("sign-scan needs a closed surface");
  auto pred = validate_predicates(A);
  SignSum ss;
  try {
    ss = statistical_sign_sum(tri, A);
  } catch (const std::domain_error& e) {
    throw InputError(e.what());
  }
  Scalar ap = a_plus_state_sum(tri, A);
  const std::size_t total = std::size_t(1) << tri.num_edges();
  json r;
  r["surface"] = a.surface_file.empty() ? a.surface : a.surface_file;
  r["algebra"] = A.name;
  r["edges"] = tri.num_edges();
  r["configurations"] = total;
  r["admissible"] = ss.admissible;
  r["nonadmissible"] = total - ss.admissible;
  r["nonadmissible_nonzero"] = ss.nonadmissible_nonzero;
  r["raw_sum"] = ss.raw_sum.str();
  r["weighted_sum"] = ss.weighted.str();
  r["a_plus_value"] = ap.str();
  json per = json::array();
  auto classes = classify_spin_structures(tri);
  for (std::size_t k = 0; k < ss.per_class.size(); ++k) {
    json row = {{"class", k}, {"contribution", ss.per_class[k].str()}};
    if (k < classes.representatives.size()) row["arf"] = arf_by_count(tri, classes.representatives[k]);
    per.push_back(row);
  }
  r["per_class"] = per;
  const bool matches = ss.weighted == ap;
  r["matches_a_plus"] = matches;
  if (!pred.nakayama_times_id_zero) {
    r["mode"] = "report-only";
    return {r, kOk};
  }
  r["mode"] = "checked";
  return {r, matches && ss.nonadmissible_nonzero == 0 ? kOk : kViolation};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spin state-sum amplitudes on marked triangulations"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", common.as_json, "Print JSON instead of the text view");
    sub->add_option("-o,--output", common.output, "Write the report to a file");
    sub->add_option("--max-legs", common.max_legs, "Leg budget (default SPINSUM_MAX_LEGS or 12)")->check(CLI::PositiveNumber);
    sub->add_option("--max-entries", common.max_entries, "Entry budget (default SPINSUM_MAX_ENTRIES or 1e8)")
        ->check(CLI::PositiveNumber);
  };

  ValidateArgs va;
  auto* v = app.add_subcommand("validate-algebra", "Predicate table for an algebra; exit 0 iff usable for the state sum");
  v->add_option("--builtin", va.builtin, "Built-in algebra name");
  v->add_option("--file", va.file, "Algebra JSON file");
  add_common(v);

  AmplitudeArgs aa;
  auto* am = app.add_subcommand("amplitude", "Evaluate the amplitude of a spin surface");
  am->add_option("--surface", aa.surface, "Built-in surface: disk cylinder pants torus sphere genus-<g>");
  am->add_option("--surface-file", aa.surface_file, "Surface JSON file");
  am->add_option("--spin", aa.spin, "Spin selector, e.g. NS+ or NS,R,R:+- or a class index");
  am->add_option("--signs", aa.signs_file, "Edge-sign JSON file");
  am->add_option("--types", aa.types, "Boundary types for --signs, e.g. NS,R");
  am->add_option("--algebra", aa.algebra, "Built-in algebra name");
  am->add_option("--algebra-file", aa.algebra_file, "Algebra JSON file");
  am->add_flag("--raw", aa.raw, "Unconstrained amplitude; no admissibility check");
  am->add_flag("--project", aa.project, "With --raw: compose each boundary with its state-space projector");
  am->add_flag("--oracle", aa.oracle, "Compare with the closed form where one exists");
  add_common(am);

  ClassifyArgs ca;
  auto* cl = app.add_subcommand("classify", "Spin structures of a closed surface with Arf invariants");
  cl->add_option("--surface", ca.surface, "Built-in closed surface");
  cl->add_option("--surface-file", ca.surface_file, "Surface JSON file");
  add_common(cl);

  FuzzArgs fa;
  auto* fz = app.add_subcommand("pachner-fuzz", "Random Pachner moves; checks amplitude and class invariance");
  fz->add_option("--surface", fa.surface, "Built-in surface")->capture_default_str();
  fz->add_option("--spin", fa.spin, "Spin selector (default NS+, NS,NS,NS:++ or 0)");
  fz->add_option("--algebra", fa.algebra, "Built-in algebra name")->capture_default_str();
  fz->add_option("--algebra-file", fa.algebra_file, "Algebra JSON file");
  fz->add_option("--seed", fa.seed, "RNG seed")->capture_default_str();
  fz->add_option("--moves", fa.moves, "Number of moves")->capture_default_str();
  fz->add_option("--max-growth", fa.max_growth, "Extra triangles before 1-3 is suppressed")->capture_default_str();
  fz->add_option("--log", fa.log, "Write the move log (JSON lines)");
  fz->add_option("--replay", fa.replay, "Replay a move log instead of drawing moves");
  fz->add_flag("--negative-control", fa.negative_control, "Use a deliberately wrong 2-2 sign rule");
  add_common(fz);

  ScanArgs sa;
  auto* sc = app.add_subcommand("sign-scan", "Sum of the unconstrained amplitude over all edge signs");
  sc->add_option("--surface", sa.surface, "Built-in closed surface")->capture_default_str();
  sc->add_option("--surface-file", sa.surface_file, "Surface JSON file");
  sc->add_option("--algebra", sa.algebra, "Built-in algebra name")->capture_default_str();
  sc->add_option("--algebra-file", sa.algebra_file, "Algebra JSON file");
  add_common(sc);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    // help requests exit 0; everything else is an input error
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  }

  Outcome o;
  try {
    if (v->parsed())
      o = validate_algebra(va);
    else if (am->parsed())
      o = amplitude(aa, common);
    else if (cl->parsed())
      o = classify(ca);
    else if (fz->parsed())
      o = pachner_fuzz(fa, common);
    else
      o = sign_scan(sa);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const BudgetExceeded& e) {
    err << "error: budget exceeded: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  std::ostringstream text;
  if (common.as_json)
    text << o.report.dump(2) << "\n";
  else
    render(o.report, text, 0);
  if (common.output.empty()) {
    out << text.str();
  } else {
    std::ofstream f(common.output, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << common.output << "'\n";
      return kInputError;
    }
    f << text.str();
  }
  return o.code;
}

}  // namespace spinsum::cli
