#include "spinsum/spin.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace spinsum {

const char* type_name(BoundaryType d) { return d == BoundaryType::NS ? "NS" : "R"; }

BitVec to_bits(const Signs& s) {
  BitVec b(s.size());
  for (std::size_t e = 0; e < s.size(); ++e) {
    if (s[e] != 1 && s[e] != -1) throw std::invalid_argument("edge signs must be +1 or -1");
    b[e] = s[e] < 0;
  }
  return b;
}

Signs from_bits(const BitVec& b) {
  Signs s(b.size());
  for (std::size_t e = 0; e < b.size(); ++e) s[e] = b[e] ? -1 : 1;
  return s;
}

namespace {

void check_types(const MarkedTriangulation& tri, const BoundaryTypes& types) {
  if (static_cast<int>(types.size()) != tri.num_boundaries())
    throw std::invalid_argument("need one boundary type per boundary component");
}

void check_signs(const MarkedTriangulation& tri, const Signs& s) {
  if (static_cast<int>(s.size()) != tri.num_edges())
    throw std::invalid_argument("sign assignment must cover every edge");
}

bool holds(const VertexEquation& eq, const BitVec& x) {
  return ((eq.lhs & x).count() % 2 == 1) == eq.rhs;
}

}  // namespace

VertexEquation vertex_equation(const MarkedTriangulation& tri, int v, const BoundaryTypes& types) {
  auto st = tri.star(v);
  if (st.corners.empty()) throw std::invalid_argument("vertex " + std::to_string(v) + " has no corners");
  VertexEquation eq;
  eq.vertex = v;
  eq.lhs = BitVec(tri.num_edges());
  for (int e : st.edges) eq.lhs.flip(e);
  int D = 0, K = 0;
  for (const auto& c : st.corners) D += c.k == 0;
  for (bool a : st.points_away) K += a;
  int b = tri.vertex_boundary(v);
  if (b >= 0) {
    check_types(tri, types);
    if (types[b] == BoundaryType::NS && tri.distinguished_vertex(b) == v) ++D;
  }
  eq.rhs = (D + K + 1) % 2 == 1;
  return eq;
}

std::vector<VertexEquation> vertex_equations(const MarkedTriangulation& tri, const BoundaryTypes& types) {
  check_types(tri, types);
  std::vector<VertexEquation> out;
  for (int v = 0; v < tri.num_vertices(); ++v) out.push_back(vertex_equation(tri, v, types));
  return out;
}

bool inner_vertex_rule(const MarkedTriangulation& tri, const Signs& s, int v) {
  check_signs(tri, s);
  if (!tri.is_inner_vertex(v)) throw std::invalid_argument("vertex " + std::to_string(v) + " is not inner");
  return holds(vertex_equation(tri, v, {}), to_bits(s));
}

bool boundary_vertex_rule(const MarkedTriangulation& tri, const Signs& s, int v, BoundaryType d) {
  check_signs(tri, s);
  int b = tri.vertex_boundary(v);
  if (b < 0) throw std::invalid_argument("vertex " + std::to_string(v) + " is not on a boundary");
  BoundaryTypes types(tri.num_boundaries(), BoundaryType::NS);
  types[b] = d;
  return holds(vertex_equation(tri, v, types), to_bits(s));
}

bool is_admissible(const MarkedTriangulation& tri, const Signs& s, const BoundaryTypes& types) {
  check_signs(tri, s);
  auto x = to_bits(s);
  for (const auto& eq : vertex_equations(tri, types))
    if (!holds(eq, x)) return false;
  return true;
}

AffineSpace admissible_space(const MarkedTriangulation& tri, const BoundaryTypes& types,
                             const std::vector<int>& gauge) {
  std::vector<BitVec> rows;
  std::vector<bool> rhs;
  for (auto& eq : vertex_equations(tri, types)) {
    rows.push_back(eq.lhs);
    rhs.push_back(eq.rhs);
  }
  for (int e : gauge) {
    BitVec r(tri.num_edges());
    r.set(e);
    rows.push_back(r);
    rhs.push_back(false);
  }
  BitVec b(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) b[i] = rhs[i];
  return solve_f2(rows, b, tri.num_edges());
}

std::vector<Signs> enumerate_admissible(const MarkedTriangulation& tri, const BoundaryTypes& types,
                                        const std::vector<int>& gauge, std::size_t limit) {
  auto sp = admissible_space(tri, types, gauge);
  std::vector<Signs> out;
  if (!sp.consistent) return out;
  if (sp.dimension() >= 63 || (std::size_t(1) << sp.dimension()) > limit)
    throw std::length_error("admissible set has 2^" + std::to_string(sp.dimension()) + " elements");
  for (std::size_t m = 0; m < (std::size_t(1) << sp.dimension()); ++m) {
    BitVec x = sp.particular;
    for (std::size_t i = 0; i < sp.dimension(); ++i)
      if (m >> i & 1) x ^= sp.kernel[i];
    out.push_back(from_bits(x));
  }
  return out;
}

Signs glue_signs(const GlueResult& g, const Signs& s, int eps) {
  if (s.size() != g.edge_map.size()) throw std::invalid_argument("sign assignment must cover every edge");
  Signs out(g.tri.num_edges(), 0);
  for (std::size_t e = 0; e < s.size(); ++e) out[g.edge_map[e]] = s[e];
  for (auto [a, b] : g.pairs) out[g.edge_map[b]] = eps * s[a] * s[b];
  return out;
}

BitVec triangle_vector(const MarkedTriangulation& tri, int t) {
  BitVec v(tri.num_edges());
  for (const auto& s : tri.triangle(t).slots) v.flip(s.edge);
  return v;
}

F2Span leaf_span(const MarkedTriangulation& tri) {
  F2Span span(tri.num_edges());
  for (int t = 0; t < tri.num_triangles(); ++t) span.insert(triangle_vector(tri, t));
  return span;
}

SpinClasses classify_spin_structures(const MarkedTriangulation& tri) {
  if (!tri.is_closed()) throw std::invalid_argument("classification needs a closed surface");
  auto sp = admissible_space(tri, {});
  SpinClasses out;
  out.solution_dim = sp.dimension();
  if (!sp.consistent) return out;
  F2Span span = leaf_span(tri);
  out.leaf_dim = span.dimension();
  std::vector<BitVec> complement;
  for (const auto& k : sp.kernel)
    if (span.insert(k)) complement.push_back(k);
  if (complement.size() > 30) throw std::length_error("too many spin classes");
  for (std::size_t m = 0; m < (std::size_t(1) << complement.size()); ++m) {
    BitVec x = sp.particular;
    for (std::size_t i = 0; i < complement.size(); ++i)
      if (m >> i & 1) x ^= complement[i];
    out.representatives.push_back(from_bits(x));
  }
  return out;
}

bool same_spin_class(const MarkedTriangulation& tri, const Signs& a, const Signs& b) {
  check_signs(tri, a);
  check_signs(tri, b);
  return leaf_span(tri).contains(to_bits(a) ^ to_bits(b));
}

int class_index(const MarkedTriangulation& tri, const SpinClasses& classes, const Signs& s) {
  F2Span span = leaf_span(tri);
  auto x = to_bits(s);
  for (std::size_t i = 0; i < classes.representatives.size(); ++i)
    if (span.contains(x ^ to_bits(classes.representatives[i]))) return static_cast<int>(i);
  return -1;
}

std::pair<MarkedTriangulation, Signs> apply_marking_move(const MarkedTriangulation& tri, const Signs& s,
                                                         const MarkingMove& move) {
  check_signs(tri, s);
  std::vector<Edge> edges = tri.edges();
  std::vector<Triangle> tris = tri.triangles();
  Signs out = s;
  switch (move.kind) {
    case MarkingMoveKind::FlipTriangle: {
      if (move.target < 0 || move.target >= tri.num_triangles()) throw std::out_of_range("no such triangle");
      for (const auto& sl : tris[move.target].slots) out[sl.edge] = -out[sl.edge];
      break;
    }
    case MarkingMoveKind::ReverseEdge: {
      int e = move.target;
      if (e < 0 || e >= tri.num_edges()) throw std::out_of_range("no such edge");
      if (tri.incidences(e).size() != 2 || tri.is_boundary_edge(e))
        throw std::invalid_argument("edge reversal needs an inner edge");
      std::swap(edges[e].src, edges[e].dst);
      out[e] = -out[e];
      for (const auto& inc : tri.incidences(e)) {
        auto& sl = tris[inc.tri].slots[inc.slot];
        sl.side = opposite(sl.side);
      }
      break;
    }
    case MarkingMoveKind::RotateTriangle: {
      if (move.target < 0 || move.target >= tri.num_triangles()) throw std::out_of_range("no such triangle");
      auto old = tris[move.target].slots;
      tris[move.target].slots = {old[1], old[2], old[0]};
      out[old[0].edge] = -out[old[0].edge];
      break;
    }
  }
  return {MarkedTriangulation(tri.num_vertices(), edges, tris, tri.boundaries(), tri.labels()), out};
}

int exit_slot(const CurveStep& st) { return ((st.k + st.eta) % 3 + 3) % 3; }

void validate_curve(const MarkedTriangulation& tri, const CurveSpec& c) {
  if (c.empty()) throw std::invalid_argument("empty curve");
  for (const auto& st : c)
    if (st.tri < 0 || st.tri >= tri.num_triangles() || st.k < 0 || st.k > 2 || (st.eta != 1 && st.eta != -1))
      throw std::invalid_argument("malformed curve step");
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& a = c[i];
    const auto& b = c[(i + 1) % c.size()];
    int x = exit_slot(a);
    int e = tri.triangle(a.tri).slots[x].edge;
    if (tri.incidences(e).size() != 2) throw std::invalid_argument("curve crosses a boundary edge");
    if (tri.triangle(b.tri).slots[b.k].edge != e || (b.tri == a.tri && b.k == x))
      throw std::invalid_argument("curve steps " + std::to_string(i) + " and next do not share the crossed edge");
  }
}

int curve_lift_sign(const MarkedTriangulation& tri, const Signs& s, const CurveSpec& c) {
  check_signs(tri, s);
  validate_curve(tri, c);
  int sign = 1;
  for (const auto& st : c) {
    const Slot& out = tri.triangle(st.tri).slots[exit_slot(st)];
    sign *= s[out.edge];
    if (out.side != Side::Right) sign = -sign;
    int raw = st.k + st.eta;
    if (raw < 0 || raw > 2) sign = -sign;
    if (st.eta < 0) sign = -sign;
  }
  return sign;
}

BitVec crossing_vector(const MarkedTriangulation& tri, const CurveSpec& c) {
  BitVec v(tri.num_edges());
  for (const auto& st : c) v.flip(tri.triangle(st.tri).slots[exit_slot(st)].edge);
  return v;
}

namespace {

// Primal cycle running along the left side of the curve.
BitVec left_pushoff(const MarkedTriangulation& tri, const CurveSpec& c) {
  BitVec v(tri.num_edges());
  for (const auto& st : c)
    if (st.eta > 0) v.flip(tri.triangle(st.tri).slots[(st.k + 2) % 3].edge);
  return v;
}

int pair_bits(const BitVec& x, const BitVec& y, const std::vector<std::vector<int>>& form) {
  int acc = 0;
  for (std::size_t i = x.find_first(); i != BitVec::npos; i = x.find_next(i))
    for (std::size_t j = y.find_first(); j != BitVec::npos; j = y.find_next(j)) acc ^= form[i][j];
  return acc;
}

void check_closed_admissible(const MarkedTriangulation& tri, const Signs& s) {
  if (!tri.is_closed()) throw std::invalid_argument("Arf invariant needs a closed surface");
  if (!is_admissible(tri, s, {})) throw std::invalid_argument("Arf invariant needs admissible signs");
}

}  // namespace

int intersection_number(const MarkedTriangulation& tri, const CurveSpec& a, const CurveSpec& b) {
  validate_curve(tri, a);
  validate_curve(tri, b);
  return static_cast<int>((crossing_vector(tri, a) & left_pushoff(tri, b)).count() % 2);
}

std::vector<CurveSpec> dual_cycles(const MarkedTriangulation& tri) {
  const int F = tri.num_triangles();
  std::vector<int> parent(F, -1), depth(F, -1);
  std::vector<Incidence> up(F), down(F);  // crossing to parent: exit slot here, entry slot there
  std::vector<bool> tree_edge(tri.num_edges(), false);
  std::vector<CurveSpec> out;
  if (F == 0) return out;
  std::vector<int> queue{0};
  depth[0] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int t = queue[qi];
    for (int k = 0; k < 3; ++k) {
      int e = tri.triangle(t).slots[k].edge;
      const auto& inc = tri.incidences(e);
      if (inc.size() != 2 || tree_edge[e]) continue;
      Incidence other = (inc[0].tri == t && inc[0].slot == k) ? inc[1] : inc[0];
      if (depth[other.tri] >= 0) continue;
      depth[other.tri] = depth[t] + 1;
      parent[other.tri] = t;
      up[other.tri] = {other.tri, other.slot};
      down[other.tri] = {t, k};
      tree_edge[e] = true;
      queue.push_back(other.tri);
    }
  }
  for (int e = 0; e < tri.num_edges(); ++e) {
    const auto& inc = tri.incidences(e);
    if (inc.size() != 2 || tree_edge[e]) continue;
    // walk inc[0].tri -> ... -> inc[1].tri through the tree, then close via e
    int a = inc[0].tri, b = inc[1].tri;
    std::vector<std::pair<int, int>> crossings_a, crossings_b;  // (exit slot in from, entry slot in to)
    std::vector<int> tris_a{a}, tris_b{b};
    while (depth[a] > depth[b]) {
      crossings_a.push_back({up[a].slot, down[a].slot});
      a = parent[a];
      tris_a.push_back(a);
    }
    while (depth[b] > depth[a]) {
      crossings_b.push_back({down[b].slot, up[b].slot});
      b = parent[b];
      tris_b.push_back(b);
    }
    while (a != b) {
      crossings_a.push_back({up[a].slot, down[a].slot});
      a = parent[a];
      tris_a.push_back(a);
      crossings_b.push_back({down[b].slot, up[b].slot});
      b = parent[b];
      tris_b.push_back(b);
    }
    // sequence of triangles from inc[0].tri to inc[1].tri
    std::vector<int> seq = tris_a;
    std::vector<std::pair<int, int>> cross = crossings_a;
    for (int i = static_cast<int>(tris_b.size()) - 2; i >= 0; --i) seq.push_back(tris_b[i]);
    for (int i = static_cast<int>(crossings_b.size()) - 1; i >= 0; --i) cross.push_back(crossings_b[i]);
    cross.push_back({inc[1].slot, inc[0].slot});
    CurveSpec c;
    const std::size_t n = seq.size();
    for (std::size_t i = 0; i < n; ++i) {
      int entry = cross[(i + n - 1) % n].second;
      int exit = cross[i].first;
      int d = ((exit - entry) % 3 + 3) % 3;
      c.push_back({seq[i], entry, d == 1 ? 1 : -1});
    }
    out.push_back(std::move(c));
  }
  return out;
}

SymplecticBasis glued_torus_basis() {
  CurveSpec h = {{2, 2, -1}, {3, 0, 1}};
  CurveSpec v = {{0, 0, 1}, {1, 0, -1}, {2, 0, 1}, {3, 0, -1}, {4, 0, 1}, {5, 0, -1}};
  return {{h, v}};
}

int arf_invariant(const MarkedTriangulation& tri, const Signs& s, const SymplecticBasis& basis) {
  check_closed_admissible(tri, s);
  int acc = 0;
  for (const auto& [a, b] : basis)
    acc ^= quadratic_value(curve_lift_sign(tri, s, a)) & quadratic_value(curve_lift_sign(tri, s, b));
  return acc ? -1 : 1;
}

namespace {

struct CycleForm {
  std::vector<int> q;
  std::vector<std::vector<int>> form;
};

CycleForm cycle_form(const MarkedTriangulation& tri, const Signs& s) {
  auto cycles = dual_cycles(tri);
  const std::size_t n = cycles.size();
  std::vector<BitVec> cross, push;
  CycleForm cf;
  cf.q.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    cross.push_back(crossing_vector(tri, cycles[i]));
    push.push_back(left_pushoff(tri, cycles[i]));
    cf.q[i] = quadratic_value(curve_lift_sign(tri, s, cycles[i]));
  }
  cf.form.assign(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cf.form[i][j] = static_cast<int>((cross[i] & push[j]).count() % 2);
  return cf;
}

}  // namespace

int arf_by_count(const MarkedTriangulation& tri, const Signs& s) {
  check_closed_admissible(tri, s);
  auto cf = cycle_form(tri, s);
  const std::size_t n = cf.q.size();
  if (n > 26) throw std::length_error("too many cycles to count");
  long long zeros = 0, ones = 0;
  for (std::size_t m = 0; m < (std::size_t(1) << n); ++m) {
    int v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(m >> i & 1)) continue;
      v ^= cf.q[i];
      for (std::size_t j = i + 1; j < n; ++j)
        if (m >> j & 1) v ^= cf.form[i][j];
    }
    (v ? ones : zeros) += 1;
  }
  if (zeros == ones) throw std::logic_error("degenerate quadratic form");
  return zeros > ones ? 1 : -1;
}

int arf_invariant(const MarkedTriangulation& tri, const Signs& s) {
  check_closed_admissible(tri, s);
  auto cf = cycle_form(tri, s);
  const std::size_t n = cf.q.size();
  const auto& form = cf.form;
  const auto& q = cf.q;

  struct Elem {
    BitVec coef;
    int q;
  };
  std::vector<Elem> work;
  for (std::size_t i = 0; i < n; ++i) {
    BitVec c(n);
    c.set(i);
    work.push_back({c, q[i]});
  }
  auto dot = [&](const Elem& x, const Elem& y) { return pair_bits(x.coef, y.coef, form); };
  auto add = [&](Elem& z, const Elem& x) {
    z.q ^= x.q ^ dot(z, x);
    z.coef ^= x.coef;
  };

  int arf = 0, pairs = 0;
  for (;;) {
    std::size_t xi = work.size(), yi = work.size();
    for (std::size_t i = 0; i < work.size() && xi == work.size(); ++i)
      for (std::size_t j = i + 1; j < work.size(); ++j)
        if (dot(work[i], work[j])) {
          xi = i;
          yi = j;
          break;
        }
    if (xi == work.size()) break;
    Elem x = work[xi], y = work[yi];
    work.erase(work.begin() + yi);
    work.erase(work.begin() + xi);
    for (auto& z : work) {
      int a = dot(z, y), b = dot(z, x);
      if (a) add(z, x);
      if (b) add(z, y);
    }
    arf ^= x.q & y.q;
    ++pairs;
  }
  for (const auto& z : work)
    if (z.q != 0) throw std::logic_error("quadratic form is not well defined on a null-homologous cycle");
  if (pairs != tri.genus()) throw std::logic_error("symplectic reduction found the wrong number of handles");
  return arf ? -1 : 1;
}

}  // namespace spinsum
