#include "spinsum/eval.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace spinsum {

int DiagramGraph::num_wires() const {
  int w = 0;
  for (const auto& e : ends)
    for (const auto& l : e)
      if (l.tri >= 0) ++w;
  return w;
}

void check_graph(const DiagramGraph& g) {
  if (g.ends.size() != g.sign.size()) throw std::invalid_argument("graph: sign and leg tables differ in size");
  std::vector<int> slot_hits(3 * g.num_trivalent, 0), open_hits(g.num_open, 0);
  for (std::size_t v = 0; v < g.ends.size(); ++v) {
    if (g.sign[v] != 1 && g.sign[v] != -1) throw std::invalid_argument("graph: bivalent sign must be +1 or -1");
    for (const auto& l : g.ends[v]) {
      if (l.tri >= 0) {
        if (l.tri >= g.num_trivalent || l.slot < 0 || l.slot > 2)
          throw std::invalid_argument("graph: leg points to a missing trivalent input");
        ++slot_hits[3 * l.tri + l.slot];
      } else if (l.open >= 0 && l.open < g.num_open) {
        ++open_hits[l.open];
      } else {
        throw std::invalid_argument("graph: dangling bivalent leg");
      }
    }
  }
  for (int h : slot_hits)
    if (h != 1) throw std::invalid_argument("graph: trivalent input not hit exactly once");
  for (int h : open_hits)
    if (h != 1) throw std::invalid_argument("graph: codomain leg not hit exactly once");
}

DiagramGraph build_graph(const MarkedTriangulation& tri, const Signs& signs) {
  if (static_cast<int>(signs.size()) != tri.num_edges()) throw std::invalid_argument("one sign per edge required");
  DiagramGraph g;
  g.num_trivalent = tri.num_triangles();
  g.sign = signs;
  g.ends.assign(tri.num_edges(), {});
  for (int t = 0; t < tri.num_triangles(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const Slot& s = tri.triangle(t).slots[k];
      LegEnd& l = g.ends[s.edge][s.side == Side::Left ? 0 : 1];
      if (l.tri >= 0) throw std::invalid_argument("graph: two triangles on one side of an edge");
      l.tri = t;
      l.slot = k;
    }
  }
  for (int b = 0; b < tri.num_boundaries(); ++b) {
    for (int p = 0; p < 3; ++p) {
      auto& e = g.ends[tri.boundary(b).edges[p]];
      const int leg = e[0].tri < 0 ? 0 : 1;
      if (e[leg].tri >= 0 || e[leg].open >= 0) throw std::invalid_argument("graph: boundary edge without a free side");
      e[leg].open = g.num_open++;
      g.open_meta.emplace_back(b, p);
    }
  }
  check_graph(g);
  return g;
}

NetworkShape network_shape(const DiagramGraph& g) {
  NetworkShape s;
  const int E = g.num_bivalent();
  s.legs.assign(E, 2);
  s.legs.insert(s.legs.end(), g.num_trivalent, 3);
  for (int e = 0; e < E; ++e)
    for (int l = 0; l < 2; ++l)
      if (g.ends[e][l].tri >= 0) s.wires.push_back({e, l, E + g.ends[e][l].tri, 2 - g.ends[e][l].slot});
  return s;
}

namespace {

// Cluster bookkeeping shared by the planners.
struct PlanState {
  std::map<int, int> legs;                   // live id -> leg count
  std::map<int, std::map<int, int>> adj;     // wire counts between live clusters
  int next = 0;

  explicit PlanState(const NetworkShape& s) {
    for (std::size_t i = 0; i < s.legs.size(); ++i) {
      legs[static_cast<int>(i)] = s.legs[i];
      adj[static_cast<int>(i)];
    }
    for (const auto& w : s.wires) {
      if (w.a == w.b) throw std::invalid_argument("network: self-wire");
      ++adj[w.a][w.b];
      ++adj[w.b][w.a];
    }
    next = static_cast<int>(s.legs.size());
  }

  int merged_legs(int a, int b) const {
    auto it = adj.at(a).find(b);
    const int w = it == adj.at(a).end() ? 0 : it->second;
    return legs.at(a) + legs.at(b) - 2 * w;
  }

  std::vector<std::pair<int, int>> connected_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& [a, nb] : adj)
      for (const auto& [b, w] : nb)
        if (a < b && w > 0) out.emplace_back(a, b);
    return out;
  }

  int merge(int a, int b) {
    const int id = next++;
    legs[id] = merged_legs(a, b);
    auto& na = adj[id];
    for (int src : {a, b})
      for (const auto& [c, w] : adj[src])
        if (c != a && c != b) na[c] += w;
    for (auto& [c, w] : na) adj[c][id] = w;
    for (int src : {a, b}) {
      for (const auto& [c, w] : adj[src]) adj[c].erase(src);
      adj.erase(src);
      legs.erase(src);
    }
    return id;
  }
};

int initial_max(const NetworkShape& s) {
  int m = 0;
  for (int l : s.legs) m = std::max(m, l);
  return m;
}

void finish_disconnected(PlanState& st, Schedule& out) {
  while (st.legs.size() > 1) {
    const int a = st.legs.begin()->first;
    const int b = std::next(st.legs.begin())->first;
    out.max_legs = std::max(out.max_legs, st.merged_legs(a, b));
    out.merges.emplace_back(a, b);
    st.merge(a, b);
  }
}

}  // namespace

Schedule plan_contraction(const NetworkShape& shape) {
  PlanState st(shape);
  Schedule out;
  out.max_legs = initial_max(shape);
  for (;;) {
    const auto cand = st.connected_pairs();
    if (cand.empty()) break;
    std::pair<int, int> best = cand.front();
    int best_cost = st.merged_legs(best.first, best.second);
    for (const auto& p : cand) {
      const int c = st.merged_legs(p.first, p.second);
      if (c < best_cost || (c == best_cost && p < best)) {
        best = p;
        best_cost = c;
      }
    }
    out.max_legs = std::max(out.max_legs, best_cost);
    out.merges.push_back(best);
    st.merge(best.first, best.second);
  }
  finish_disconnected(st, out);
  return out;
}

Schedule plan_contraction(const DiagramGraph& g) { return plan_contraction(network_shape(g)); }

Schedule random_schedule(const NetworkShape& shape, std::mt19937_64& rng) {
  PlanState st(shape);
  Schedule out;
  out.max_legs = initial_max(shape);
  for (;;) {
    const auto cand = st.connected_pairs();
    if (cand.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, cand.size() - 1);
    auto p = cand[pick(rng)];
    if (rng() & 1) std::swap(p.first, p.second);
    out.max_legs = std::max(out.max_legs, st.merged_legs(p.first, p.second));
    out.merges.push_back(p);
    st.merge(p.first, p.second);
  }
  finish_disconnected(st, out);
  return out;
}

Evaluator::Evaluator(GradedFrobeniusAlgebra A, Budget budget)
    : A_(std::move(A)), D_(derive(A_)), P_(validate_predicates(A_, D_)), budget_(budget) {
  c_minus_ = vector_of(A_, D_.c_minus);
  // c_{+1} is the braided c_{-1}
  c_plus_ = c_minus_.permuted({1, 0});
  t_hat_ = tensor_of(A_, D_.t);
}

GradedTensor Evaluator::contract_outputs(const DiagramGraph& g) const {
  return contract_outputs(g, plan_contraction(g));
}

GradedTensor Evaluator::contract_outputs(const DiagramGraph& g, const Schedule& sched) const {
  check_graph(g);
  const int E = g.num_bivalent();
  const int n = E + g.num_trivalent;
  // partner[node][leg] = (node, leg) or (-1, open position)
  std::vector<std::vector<std::pair<int, int>>> partner(n);
  for (int e = 0; e < E; ++e) partner[e].assign(2, {-1, -1});
  for (int t = 0; t < g.num_trivalent; ++t) partner[E + t].assign(3, {-1, -1});
  for (int e = 0; e < E; ++e) {
    for (int l = 0; l < 2; ++l) {
      const LegEnd& end = g.ends[e][l];
      if (end.tri >= 0) {
        partner[e][l] = {E + end.tri, 2 - end.slot};
        partner[E + end.tri][2 - end.slot] = {e, l};
      } else {
        partner[e][l] = {-1, end.open};
      }
    }
  }

  struct Cluster {
    GradedTensor T;
    std::vector<std::pair<int, int>> origin;  // (node, leg) per tensor leg
  };
  std::map<int, Cluster> live;
  std::vector<int> owner(n);
  for (int i = 0; i < n; ++i) {
    Cluster c;
    if (i < E) {
      c.T = g.sign[i] > 0 ? c_plus_ : c_minus_;
      c.origin = {{i, 0}, {i, 1}};
    } else {
      c.T = t_hat_;
      c.origin = {{i, 0}, {i, 1}, {i, 2}};
    }
    live.emplace(i, std::move(c));
    owner[i] = i;
  }
  int next = n;
  auto merge = [&](int a, int b) {
    auto ia = live.find(a), ib = live.find(b);
    if (a == b || ia == live.end() || ib == live.end()) throw std::invalid_argument("schedule merges a dead cluster");
    Cluster& A = ia->second;
    Cluster& B = ib->second;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < static_cast<int>(A.origin.size()); ++i) {
      const auto [node, leg] = A.origin[i];
      const auto p = partner[node][leg];
      if (p.first < 0 || owner[p.first] != b) continue;
      const auto it = std::find(B.origin.begin(), B.origin.end(), p);
      pairs.emplace_back(i, static_cast<int>(it - B.origin.begin()));
    }
    Cluster C;
    C.T = contract(A.T, B.T, pairs, budget_);
    std::vector<char> used_a(A.origin.size(), 0), used_b(B.origin.size(), 0);
    for (auto [x, y] : pairs) {
      used_a[x] = 1;
      used_b[y] = 1;
    }
    for (std::size_t i = 0; i < A.origin.size(); ++i)
      if (!used_a[i]) C.origin.push_back(A.origin[i]);
    for (std::size_t i = 0; i < B.origin.size(); ++i)
      if (!used_b[i]) C.origin.push_back(B.origin[i]);
    const int id = next++;
    for (auto [node, leg] : A.origin) owner[node] = id;
    for (auto [node, leg] : B.origin) owner[node] = id;
    // nodes whose legs were all contracted still belong to the new cluster
    for (int i = 0; i < n; ++i)
      if (owner[i] == a || owner[i] == b) owner[i] = id;
    live.erase(a);
    live.erase(b);
    live.emplace(id, std::move(C));
  };
  for (auto [a, b] : sched.merges) merge(a, b);
  while (live.size() > 1) merge(live.begin()->first, std::next(live.begin())->first);

  Cluster& fin = live.begin()->second;
  std::vector<int> perm(fin.origin.size());
  for (std::size_t i = 0; i < fin.origin.size(); ++i) {
    const auto p = partner[fin.origin[i].first][fin.origin[i].second];
    if (p.first >= 0) throw std::logic_error("uncontracted internal wire");
    perm[i] = p.second;
  }
  return fin.T.permuted(perm);
}

GradedTensor Evaluator::exhaustive_outputs(const DiagramGraph& g) const {
  check_graph(g);
  const int d = A_.dim;
  const int E = g.num_bivalent();
  const int F = g.num_trivalent;

  // nonzero c entries per sign: (a, b, value)
  struct CEntry {
    int a, b;
    Scalar v;
  };
  std::array<std::vector<CEntry>, 2> centries;
  for (int sgn = 0; sgn < 2; ++sgn) {
    const Morphism& cm = sgn ? D_.c_plus : D_.c_minus;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        if (!cm.m(a * d + b, 0).is_zero()) centries[sgn].push_back({a, b, cm.m(a * d + b, 0)});
  }
  long double terms = 1;
  for (int e = 0; e < E; ++e) terms *= centries[g.sign[e] > 0].size();
  if (terms > static_cast<long double>(budget_.max_entries))
    throw BudgetExceeded("exhaustive contraction exceeds the term budget");

  // target position of each c leg in (t inputs, then codomain) order
  auto target = [&](int e, int l) {
    const LegEnd& end = g.ends[e][l];
    return end.tri >= 0 ? 3 * end.tri + end.slot : 3 * F + end.open;
  };
  // crossing parity between legs of e and f in the planar layering
  std::vector<boost::dynamic_bitset<>> cross(E, boost::dynamic_bitset<>(E));
  for (int e = 0; e < E; ++e) {
    if (target(e, 0) > target(e, 1)) cross[e][e] = true;
    for (int f = e + 1; f < E; ++f) {
      int c = 0;
      for (int l = 0; l < 2; ++l)
        for (int m = 0; m < 2; ++m) c += target(e, l) > target(f, m);
      if (c & 1) {
        cross[e][f] = true;
        cross[f][e] = true;
      }
    }
  }
  // triangles whose last input is fixed by edge e
  std::vector<std::vector<int>> completes(E);
  {
    std::vector<int> last(F, -1);
    for (int e = 0; e < E; ++e)
      for (int l = 0; l < 2; ++l)
        if (g.ends[e][l].tri >= 0) last[g.ends[e][l].tri] = std::max(last[g.ends[e][l].tri], e);
    for (int t = 0; t < F; ++t)
      if (last[t] >= 0) completes[last[t]].push_back(t);
  }

  std::vector<int> tin(3 * F, 0), open(g.num_open, 0);
  boost::dynamic_bitset<> odd(E);
  GradedTensor out(d, A_.parity, std::vector<LegDir>(g.num_open, LegDir::Out), A_.field);
  std::vector<GradedTensor::Entry> acc;
  const Morphism& tm = D_.t;

  std::function<void(int, Scalar, int)> rec = [&](int e, Scalar value, int sign) {
    if (e == E) {
      std::uint64_t key = 0;
      for (int x : open) key = key * d + x;
      acc.emplace_back(key, sign ? -value : value);
      return;
    }
    for (const CEntry& c : centries[g.sign[e] > 0]) {
      const int idx[2] = {c.a, c.b};
      for (int l = 0; l < 2; ++l) {
        const LegEnd& end = g.ends[e][l];
        if (end.tri >= 0) {
          tin[3 * end.tri + end.slot] = idx[l];
        } else {
          open[end.open] = idx[l];
        }
      }
      Scalar v = value * c.v;
      for (int t : completes[e]) {
        v *= tm.m(0, (tin[3 * t] * d + tin[3 * t + 1]) * d + tin[3 * t + 2]);
        if (v.is_zero()) break;
      }
      if (v.is_zero()) continue;
      int s = sign;
      const bool p = A_.parity[c.a] != 0;
      if (p) {
        odd[e] = true;
        s ^= static_cast<int>((cross[e] & odd).count() & 1);
      }
      rec(e + 1, v, s);
      odd[e] = false;
    }
  };
  rec(0, Scalar::in(A_.field, 1), 0);
  out.set_entries(std::move(acc));
  return out;
}

GradedTensor Evaluator::flip(const GradedTensor& outputs) const {
  const int d = A_.dim;
  Matrix bm(d, d, A_.field);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) bm(a, b) = D_.b.m(0, a * d + b);
  GradedTensor T = outputs;
  for (int i = 0; i < T.num_legs(); ++i) T = T.apply_leg_matrix(i, bm);
  GradedTensor out(d, A_.parity, std::vector<LegDir>(T.num_legs(), LegDir::In), A_.field);
  std::vector<GradedTensor::Entry> e;
  e.reserve(T.nnz());
  for (const auto& [k, v] : T.entries()) {
    std::uint64_t key = k;
    int odd = 0;
    for (int i = 0; i < T.num_legs(); ++i) {
      odd += A_.parity[key % d];
      key /= d;
    }
    const bool neg = ((odd * (odd - 1)) / 2) & 1;
    e.emplace_back(k, neg ? -v : v);
  }
  out.set_entries(std::move(e));
  return out;
}

Amplitude Evaluator::raw(const DiagramGraph& g) const { return raw(g, plan_contraction(g)); }

Amplitude Evaluator::raw(const DiagramGraph& g, const Schedule& s) const {
  Amplitude a;
  a.tensor = flip(contract_outputs(g, s));
  a.leg_meta = g.open_meta;
  return a;
}

Amplitude Evaluator::exhaustive(const DiagramGraph& g) const {
  Amplitude a;
  a.tensor = flip(exhaustive_outputs(g));
  a.leg_meta = g.open_meta;
  return a;
}

Amplitude Evaluator::raw(const MarkedTriangulation& tri, const Signs& s) const { return raw(build_graph(tri, s)); }

Amplitude Evaluator::evaluate(const MarkedTriangulation& tri, const Signs& s, const BoundaryTypes& types) const {
  if (!P_.state_sum_ready()) throw std::domain_error("algebra " + A_.name + " fails the state-sum predicates");
  if (!is_admissible(tri, s, types)) throw std::invalid_argument("edge signs are not admissible");
  Amplitude a = raw(tri, s);
  a.types = types;
  return a;
}

Amplitude evaluate_raw(const MarkedTriangulation& tri, const Signs& s, const GradedFrobeniusAlgebra& A) {
  return Evaluator(A).raw(tri, s);
}

Amplitude evaluate(const MarkedTriangulation& tri, const Signs& s, const BoundaryTypes& types,
                   const GradedFrobeniusAlgebra& A) {
  return Evaluator(A).evaluate(tri, s, types);
}

Amplitude contract_exhaustive(const DiagramGraph& g, const GradedFrobeniusAlgebra& A) {
  return Evaluator(A).exhaustive(g);
}

namespace {

// Open diagram: bivalent vertices with signs; legs to (tri, slot) or open.
LegEnd to_t(int t, int slot) { return {t, slot, -1}; }
LegEnd to_out(int i) { return {-1, -1, i}; }

DiagramGraph diagram(int F, int open, std::vector<int> signs, std::vector<std::array<LegEnd, 2>> ends) {
  DiagramGraph g;
  g.num_trivalent = F;
  g.num_open = open;
  g.sign = std::move(signs);
  g.ends = std::move(ends);
  check_graph(g);
  return g;
}

std::string pm(int s) { return s > 0 ? "+" : "-"; }

}  // namespace

std::vector<RelationCheck> check_relations(const Evaluator& ev) {
  std::vector<RelationCheck> out;
  auto record = [&](int rel, bool ok, const std::string& failing, int cases) {
    RelationCheck c;
    c.relation = rel;
    c.holds = ok;
    c.label = ok ? std::to_string(cases) + " cases" : "fails at " + failing;
    out.push_back(c);
  };
  auto same = [&](const DiagramGraph& a, const DiagramGraph& b) {
    return ev.contract_outputs(a) == ev.contract_outputs(b);
  };

  // 1: c_{+1} is the braided c_{-1}
  {
    const auto lhs = diagram(0, 2, {1}, {{to_out(0), to_out(1)}});
    const auto rhs = diagram(0, 2, {-1}, {{to_out(1), to_out(0)}});
    const bool ok = same(lhs, rhs);
    record(1, ok, "c", 1);
  }
  // 2: flipping all three signs around a triangle
  {
    bool ok = true;
    std::string bad;
    int n = 0;
    for (int s0 : {1, -1})
      for (int s1 : {1, -1})
        for (int s2 : {1, -1}) {
          auto mk = [&](int f) {
            return diagram(1, 3, {f * s0, f * s1, f * s2},
                           {{{to_t(0, 0), to_out(0)}, {to_t(0, 1), to_out(1)}, {to_t(0, 2), to_out(2)}}});
          };
          ++n;
          if (!same(mk(1), mk(-1)) && ok) {
            ok = false;
            bad = pm(s0) + pm(s1) + pm(s2);
          }
        }
    record(2, ok, bad, n);
  }
  // 3: cyclic rotation of the inputs
  {
    bool ok = true;
    std::string bad;
    int n = 0;
    for (int s0 : {1, -1})
      for (int s1 : {1, -1})
        for (int s2 : {1, -1}) {
          const auto lhs = diagram(1, 3, {s0, s1, s2},
                                   {{{to_t(0, 0), to_out(0)}, {to_t(0, 1), to_out(1)}, {to_t(0, 2), to_out(2)}}});
          const auto rhs = diagram(1, 3, {-s0, s1, s2},
                                   {{{to_t(0, 2), to_out(0)}, {to_t(0, 0), to_out(1)}, {to_t(0, 1), to_out(2)}}});
          ++n;
          if (!same(lhs, rhs) && ok) {
            ok = false;
            bad = pm(s0) + pm(s1) + pm(s2);
          }
        }
    record(3, ok, bad, n);
  }
  // 4: flip of the diagonal in a quadrilateral
  {
    bool ok = true;
    std::string bad;
    int n = 0;
    for (int s : {1, -1})
      for (int sa : {1, -1})
        for (int sb : {1, -1})
          for (int sc : {1, -1})
            for (int sd : {1, -1}) {
              // vertices: A, B, diagonal, C, D
              const auto lhs = diagram(2, 4, {sa, sb, s, sc, sd},
                                       {{{to_t(0, 1), to_out(0)},
                                         {to_t(0, 2), to_out(1)},
                                         {to_t(0, 0), to_t(1, 0)},
                                         {to_t(1, 1), to_out(2)},
                                         {to_t(1, 2), to_out(3)}}});
              const auto rhs = diagram(2, 4, {sa, -s * sb, s, -sc, -s * sd},
                                       {{{to_t(1, 2), to_out(0)},
                                         {to_t(0, 1), to_out(1)},
                                         {to_t(0, 0), to_t(1, 0)},
                                         {to_t(0, 2), to_out(2)},
                                         {to_t(1, 1), to_out(3)}}});
              ++n;
              if (!same(lhs, rhs) && ok) {
                ok = false;
                bad = pm(s) + pm(sa) + pm(sb) + pm(sc) + pm(sd);
              }
            }
    record(4, ok, bad, n);
  }
  // 5: three triangles around a vertex against one
  {
    bool ok = true;
    std::string bad;
    int n = 0;
    for (int s12 : {1, -1})
      for (int s23 : {1, -1})
        for (int sa : {1, -1})
          for (int sb : {1, -1})
            for (int sc : {1, -1}) {
              const int s31 = -s12 * s23;
              // vertices: A, 12, B, 31, C, 23
              const auto lhs = diagram(3, 3, {sa, s12, sb, s31, sc, s23},
                                       {{{to_t(0, 0), to_out(0)},
                                         {to_t(0, 1), to_t(1, 2)},
                                         {to_t(1, 0), to_out(1)},
                                         {to_t(2, 1), to_t(0, 2)},
                                         {to_t(2, 0), to_out(2)},
                                         {to_t(1, 1), to_t(2, 2)}}});
              const auto rhs = diagram(1, 3, {sa, s12 * sb, -s31 * sc},
                                       {{{to_t(0, 0), to_out(0)}, {to_t(0, 1), to_out(1)}, {to_t(0, 2), to_out(2)}}});
              ++n;
              if (!same(lhs, rhs) && ok) {
                ok = false;
                bad = pm(s12) + pm(s23) + pm(sa) + pm(sb) + pm(sc);
              }
            }
    record(5, ok, bad, n);
  }
  return out;
}

}  // namespace spinsum
