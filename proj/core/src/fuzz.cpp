#include "spinsum/fuzz.hpp"

#include "json.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace spinsum {

namespace {

using nlohmann::json;

Transformed dispatch(const MarkedTriangulation& tri, const Signs& s, const PachnerMove& m) {
  switch (m.kind) {
    case PachnerKind::TwoTwo:
      return pachner_22(tri, s, m.target);
    case PachnerKind::ThreeOne:
      return pachner_31(tri, s, m.target);
    case PachnerKind::OneThree:
      return pachner_13(tri, s, m.target, m.choice);
  }
  throw std::logic_error("unreachable");
}

std::uint64_t target_label(const MarkedTriangulation& tri, const PachnerMove& m) {
  const auto& L = tri.labels();
  switch (m.kind) {
    case PachnerKind::TwoTwo:
      return L.edge.at(m.target);
    case PachnerKind::ThreeOne:
      return L.vertex.at(m.target);
    case PachnerKind::OneThree:
      return L.triangle.at(m.target);
  }
  return 0;
}

std::vector<std::uint64_t> minus(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  std::set<std::uint64_t> sb(b.begin(), b.end());
  std::vector<std::uint64_t> r;
  for (auto x : a)
    if (!sb.count(x)) r.push_back(x);
  std::sort(r.begin(), r.end());
  return r;
}

// State carried along a run.
struct Walker {
  const SpinSurface& start;
  const Evaluator& ev;
  const Mover& mover;
  GradedTensor reference;
  int arf = 0;
  Transformed cur;

  Walker(const SpinSurface& s, const Evaluator& e, const Mover& m)
      : start(s), ev(e), mover(m), cur{s.tri, s.signs} {
    reference = ev.evaluate(s.tri, s.signs, s.types).tensor;
    if (s.tri.is_closed()) arf = arf_by_count(s.tri, s.signs);
  }

  // Empty on success.
  std::string step(const PachnerMove& mv, MoveRecord* rec) {
    std::vector<MarkingMove> marks;
    auto norm = normalize_marking(cur.tri, cur.signs, mv, &marks);
    Transformed next;
    try {
      next = mover(norm.tri, norm.signs, mv);
    } catch (const std::invalid_argument& e) {
      return std::string("move refused: ") + e.what();
    }
    if (rec) {
      rec->move = mv;
      rec->target_label = target_label(cur.tri, mv);
      rec->marking = std::move(marks);
      const auto& a = cur.tri.labels();
      const auto& b = next.tri.labels();
      rec->created = {minus(b.vertex, a.vertex), minus(b.edge, a.edge), minus(b.triangle, a.triangle)};
      rec->removed = {minus(a.vertex, b.vertex), minus(a.edge, b.edge), minus(a.triangle, b.triangle)};
    }
    cur = std::move(next);
    auto problems = validate(cur.tri);
    if (!problems.empty()) return "invalid complex: " + problems.front();
    if (!is_admissible(cur.tri, cur.signs, start.types)) return "signs no longer admissible";
    if (ev.evaluate(cur.tri, cur.signs, start.types).tensor != reference) return "amplitude changed";
    if (cur.tri.is_closed() && arf_by_count(cur.tri, cur.signs) != arf) return "Arf invariant changed";
    return {};
  }
};

const char* marking_name(MarkingMoveKind k) {
  switch (k) {
    case MarkingMoveKind::FlipTriangle:
      return "flip";
    case MarkingMoveKind::ReverseEdge:
      return "reverse";
    case MarkingMoveKind::RotateTriangle:
      return "rotate";
  }
  return "?";
}

PachnerKind kind_of(const std::string& s) {
  for (auto k : {PachnerKind::TwoTwo, PachnerKind::ThreeOne, PachnerKind::OneThree})
    if (s == kind_name(k)) return k;
  throw std::invalid_argument("unknown move kind '" + s + "'");
}

json move_json(const PachnerMove& m) {
  return {{"kind", kind_name(m.kind)}, {"target", m.target}, {"choice", {m.choice[0], m.choice[1]}}};
}

json record_json(const MoveRecord& r) {
  json j = move_json(r.move);
  j["step"] = r.step;
  j["target_label"] = r.target_label;
  json marks = json::array();
  for (const auto& m : r.marking) marks.push_back({marking_name(m.kind), m.target});
  j["marking"] = marks;
  auto delta = [](const LabelDelta& d) {
    return json{{"vertex", d.vertex}, {"edge", d.edge}, {"triangle", d.triangle}};
  };
  j["relabel"] = {{"created", delta(r.created)}, {"removed", delta(r.removed)}};
  return j;
}

}  // namespace

Mover default_mover() { return dispatch; }

Mover negative_control_mover() {
  return [](const MarkedTriangulation& tri, const Signs& s, const PachnerMove& m) {
    auto r = dispatch(tri, s, m);
    if (m.kind == PachnerKind::TwoTwo) r.signs[m.target] = -r.signs[m.target];
    return r;
  };
}

FuzzReport run_fuzz(const SpinSurface& start, const Evaluator& ev, const FuzzOptions& opt, const Mover& mover) {
  FuzzReport rep;
  rep.surface = start.name;
  rep.algebra = ev.algebra().name;
  rep.seed = opt.seed;
  rep.requested = opt.moves;
  rep.max_triangles = start.tri.num_triangles();

  std::mt19937_64 rng(opt.seed);
  Walker w(start, ev, mover);
  const int cap = start.tri.num_triangles() + opt.max_growth;
  for (int step = 0; step < opt.moves; ++step) {
    std::vector<PachnerKind> kinds = {PachnerKind::TwoTwo, PachnerKind::ThreeOne};
    if (w.cur.tri.num_triangles() < cap) kinds.push_back(PachnerKind::OneThree);
    std::vector<int> targets;
    PachnerKind kind{};
    // 2-2 and 1-3 always have targets on these complexes, so this ends.
    do {
      kind = kinds[rng() % kinds.size()];
      targets = pachner_targets(w.cur.tri, kind);
    } while (targets.empty());
    PachnerMove mv{kind, targets[rng() % targets.size()], opt.choice};
    MoveRecord rec;
    rec.step = step;
    auto err = w.step(mv, &rec);
    rep.log.push_back(std::move(rec));
    rep.max_triangles = std::max(rep.max_triangles, w.cur.tri.num_triangles());
    if (!err.empty()) {
      rep.failure = FuzzFailure{step, err};
      break;
    }
  }
  if (rep.failure && opt.shrink) {
    std::vector<PachnerMove> moves;
    for (const auto& r : rep.log) moves.push_back(r.move);
    rep.shrunk = shrink_failure(start, ev, moves, mover);
  }
  return rep;
}

ReplayResult replay(const SpinSurface& start, const Evaluator& ev, const std::vector<PachnerMove>& moves,
                    const Mover& mover) {
  ReplayResult r;
  Walker w(start, ev, mover);
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const auto& mv = moves[i];
    if (!pachner_obstruction(w.cur.tri, mv).empty()) {
      r.inapplicable = true;
      return r;
    }
    auto err = w.step(mv, nullptr);
    ++r.applied;
    if (!err.empty()) {
      r.failure = FuzzFailure{static_cast<int>(i), err};
      return r;
    }
  }
  return r;
}

std::vector<PachnerMove> shrink_failure(const SpinSurface& start, const Evaluator& ev, std::vector<PachnerMove> moves,
                                        const Mover& mover) {
  auto first = replay(start, ev, moves, mover);
  if (!first.failure) return moves;
  moves.resize(first.failure->step + 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = moves.size(); i-- > 0;) {
      auto trial = moves;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
      auto r = replay(start, ev, trial, mover);
      if (r.failure) {
        trial.resize(r.failure->step + 1);
        moves = std::move(trial);
        changed = true;
      }
    }
  }
  return moves;
}

std::string move_log_json_lines(const std::vector<MoveRecord>& log) {
  std::string out;
  for (const auto& r : log) out += record_json(r).dump() + "\n";
  return out;
}

std::vector<PachnerMove> parse_move_log(const std::string& json_lines) {
  std::vector<PachnerMove> moves;
  std::istringstream in(json_lines);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto j = json::parse(line);
    PachnerMove m;
    m.kind = kind_of(j.at("kind").get<std::string>());
    m.target = j.at("target").get<int>();
    if (j.contains("choice")) m.choice = {j["choice"].at(0).get<int>(), j["choice"].at(1).get<int>()};
    moves.push_back(m);
  }
  return moves;
}

std::string fuzz_report_json(const FuzzReport& r) {
  json j;
  j["surface"] = r.surface;
  j["algebra"] = r.algebra;
  j["seed"] = r.seed;
  j["requested"] = r.requested;
  j["applied"] = r.log.size();
  j["max_triangles"] = r.max_triangles;
  j["passed"] = r.passed();
  if (r.failure) {
    j["failure"] = {{"step", r.failure->step}, {"reason", r.failure->reason}};
    json s = json::array();
    for (const auto& m : r.shrunk) s.push_back(move_json(m));
    j["shrunk"] = s;
  }
  return j.dump(2);
}

}  // namespace spinsum
