#include "spinsum/pachner.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace spinsum {

namespace {

constexpr Side L = Side::Left;
constexpr Side R = Side::Right;

bool inner_edge(const MarkedTriangulation& tri, int e) {
  return tri.incidences(e).size() == 2 && !tri.is_boundary_edge(e);
}

bool distinct(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

// Corner index of v in t, or -1. Sets *count to the number of corners at v.
int corner_of(const MarkedTriangulation& tri, int t, int v, int* count = nullptr) {
  int k = -1, n = 0;
  for (int c = 0; c < 3; ++c)
    if (tri.corner_vertex(t, c) == v) {
      k = c;
      ++n;
    }
  if (count) *count = n;
  return k;
}

void check_signs(const MarkedTriangulation& tri, const Signs& s) {
  if (static_cast<int>(s.size()) != tri.num_edges()) throw std::invalid_argument("one sign per edge expected");
  for (int x : s)
    if (x != 1 && x != -1) throw std::invalid_argument("signs must be +1 or -1");
}

// The 3-1 star in patch order: sigma_1 is the lowest triangle index,
// sigma_2 follows counterclockwise. Assumes the patch is normalized.
std::array<int, 3> star_order(const MarkedTriangulation& tri, int v) {
  auto corners = tri.corners_at(v);
  std::array<int, 3> t = {corners[0].tri, corners[1].tri, corners[2].tri};
  std::sort(t.begin(), t.end());
  const int spoke12 = tri.triangle(t[0]).slots[1].edge;
  if (tri.triangle(t[2]).slots[2].edge == spoke12) std::swap(t[1], t[2]);
  return t;
}

struct Builder {
  int V;
  std::vector<Edge> edges;
  std::vector<Triangle> tris;
  std::vector<Boundary> bds;
  Labels labels;
  Signs signs;

  explicit Builder(const MarkedTriangulation& m, const Signs& s)
      : V(m.num_vertices()), edges(m.edges()), tris(m.triangles()), bds(m.boundaries()), labels(m.labels()),
        signs(s) {}

  std::uint64_t fresh() { return labels.next++; }

  Transformed finish() { return {MarkedTriangulation(V, edges, tris, bds, labels), signs}; }

  // Drops the listed entities and renumbers what is left.
  void remove(int vertex, std::vector<int> dead_edges, std::vector<int> dead_tris) {
    std::vector<int> emap(edges.size(), -1);
    std::set<int> de(dead_edges.begin(), dead_edges.end()), dt(dead_tris.begin(), dead_tris.end());
    std::vector<Edge> ne;
    std::vector<std::uint64_t> nel;
    Signs ns;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      if (de.count(e)) continue;
      emap[e] = static_cast<int>(ne.size());
      Edge x = edges[e];
      if (x.src > vertex) --x.src;
      if (x.dst > vertex) --x.dst;
      ne.push_back(x);
      nel.push_back(labels.edge[e]);
      ns.push_back(signs[e]);
    }
    std::vector<Triangle> nt;
    std::vector<std::uint64_t> ntl;
    for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
      if (dt.count(t)) continue;
      Triangle x = tris[t];
      for (auto& sl : x.slots) sl.edge = emap[sl.edge];
      nt.push_back(x);
      ntl.push_back(labels.triangle[t]);
    }
    for (auto& b : bds)
      for (auto& e : b.edges) e = emap[e];
    labels.vertex.erase(labels.vertex.begin() + vertex);
    labels.edge = std::move(nel);
    labels.triangle = std::move(ntl);
    edges = std::move(ne);
    tris = std::move(nt);
    signs = std::move(ns);
    --V;
  }
};

}  // namespace

const char* kind_name(PachnerKind k) {
  switch (k) {
    case PachnerKind::TwoTwo:
      return "2-2";
    case PachnerKind::ThreeOne:
      return "3-1";
    case PachnerKind::OneThree:
      return "1-3";
  }
  return "?";
}

std::string pachner_obstruction(const MarkedTriangulation& tri, const PachnerMove& move) {
  const int x = move.target;
  switch (move.kind) {
    case PachnerKind::TwoTwo: {
      if (x < 0 || x >= tri.num_edges()) return "no such edge";
      if (!inner_edge(tri, x)) return "2-2 needs an inner edge";
      auto l = tri.side_incidence(x, L), r = tri.side_incidence(x, R);
      if (!l || !r) return "inner edge without a left and a right triangle";
      if (l->tri == r->tri) return "both sides of the edge are the same triangle";
      std::vector<int> es = {x};
      for (auto inc : {*l, *r})
        for (int j = 1; j <= 2; ++j) es.push_back(tri.triangle(inc.tri).slots[(inc.slot + j) % 3].edge);
      if (!distinct(es)) return "quadrilateral edges are not distinct";
      const int v3 = tri.corner_vertex(l->tri, (l->slot + 2) % 3);
      const int v1 = tri.corner_vertex(r->tri, (r->slot + 2) % 3);
      if (v1 == v3) return "flipped diagonal would be a loop";
      return {};
    }
    case PachnerKind::ThreeOne: {
      if (x < 0 || x >= tri.num_vertices()) return "no such vertex";
      if (!tri.is_inner_vertex(x)) return "3-1 needs an inner vertex";
      auto corners = tri.corners_at(x);
      if (corners.size() != 3) return "vertex valence is not 3";
      std::vector<int> ts, spokes, outer;
      for (auto c : corners) {
        int n = 0;
        corner_of(tri, c.tri, x, &n);
        if (n != 1) return "triangle meets the vertex twice";
        ts.push_back(c.tri);
        outer.push_back(tri.triangle(c.tri).slots[(c.k + 1) % 3].edge);
        spokes.push_back(tri.triangle(c.tri).slots[c.k].edge);
      }
      if (!distinct(ts)) return "star triangles are not distinct";
      if (!distinct(spokes)) return "spokes are not distinct";
      std::vector<int> all = spokes;
      all.insert(all.end(), outer.begin(), outer.end());
      if (!distinct(all)) return "outer edges are not distinct";
      for (int e : spokes) {
        const auto& ed = tri.edge(e);
        if (ed.src == ed.dst) return "spoke is a loop";
      }
      return {};
    }
    case PachnerKind::OneThree: {
      if (x < 0 || x >= tri.num_triangles()) return "no such triangle";
      const auto& sl = tri.triangle(x).slots;
      if (!distinct({sl[0].edge, sl[1].edge, sl[2].edge})) return "triangle edges are not distinct";
      if (move.choice[0] * move.choice[0] != 1 || move.choice[1] * move.choice[1] != 1)
        return "1-3 choice must be signs";
      return {};
    }
  }
  return "unknown move";
}

bool is_normalized(const MarkedTriangulation& tri, const PachnerMove& move) {
  if (!pachner_obstruction(tri, move).empty()) return false;
  switch (move.kind) {
    case PachnerKind::TwoTwo: {
      for (Side sd : {L, R}) {
        auto inc = *tri.side_incidence(move.target, sd);
        if (inc.slot != 0) return false;
      }
      return true;
    }
    case PachnerKind::ThreeOne: {
      for (auto c : tri.corners_at(move.target)) {
        if (c.k != 2) return false;
        if (tri.triangle(c.tri).slots[1].side != L) return false;  // spoke points at v
      }
      return true;
    }
    case PachnerKind::OneThree:
      return true;
  }
  return false;
}

Transformed normalize_marking(const MarkedTriangulation& tri, const Signs& s, const PachnerMove& move,
                              std::vector<MarkingMove>* log) {
  check_signs(tri, s);
  Transformed cur{tri, s};
  auto apply = [&](MarkingMove m) {
    auto r = apply_marking_move(cur.tri, cur.signs, m);
    cur = {std::move(r.first), std::move(r.second)};
    if (log) log->push_back(m);
  };
  auto rotate_until = [&](int t, auto pred) {
    for (int i = 0; i < 3 && !pred(); ++i) apply({MarkingMoveKind::RotateTriangle, t});
  };
  auto orient = [&](int t, int k, Side want) {
    const auto& sl = cur.tri.triangle(t).slots[k];
    if (sl.side != want && inner_edge(cur.tri, sl.edge)) apply({MarkingMoveKind::ReverseEdge, sl.edge});
  };
  switch (move.kind) {
    case PachnerKind::TwoTwo: {
      const int e = move.target;
      if (e < 0 || e >= tri.num_edges() || tri.incidences(e).size() != 2) break;
      std::vector<int> ts;
      for (auto inc : tri.incidences(e)) ts.push_back(inc.tri);
      if (ts[0] == ts[1]) break;
      for (int t : ts) {
        rotate_until(t, [&] { return cur.tri.triangle(t).slots[0].edge == e; });
      }
      break;
    }
    case PachnerKind::ThreeOne: {
      const int v = move.target;
      if (v < 0 || v >= tri.num_vertices()) break;
      std::vector<int> ts;
      for (auto c : tri.corners_at(v)) ts.push_back(c.tri);
      for (int t : ts) rotate_until(t, [&] { return cur.tri.corner_vertex(t, 2) == v; });
      for (int t : ts) orient(t, 1, L);
      break;
    }
    case PachnerKind::OneThree:
      break;
  }
  return cur;
}

Transformed pachner_22(const MarkedTriangulation& tri, const Signs& s, int e) {
  check_signs(tri, s);
  PachnerMove mv{PachnerKind::TwoTwo, e};
  if (auto why = pachner_obstruction(tri, mv); !why.empty()) throw std::invalid_argument("2-2: " + why);
  if (!is_normalized(tri, mv)) throw std::invalid_argument("2-2: patch marking is not in reference form");

  const int t1 = tri.side_incidence(e, L)->tri;  // sigma_1, left of v0 -> v2
  const int t2 = tri.side_incidence(e, R)->tri;  // sigma_2
  const Slot A = tri.triangle(t1).slots[1], B = tri.triangle(t1).slots[2];
  const Slot C = tri.triangle(t2).slots[1], D = tri.triangle(t2).slots[2];
  const int v3 = tri.corner_vertex(t1, 2);
  const int v1 = tri.corner_vertex(t2, 2);

  Builder b(tri, s);
  const int sd = s[e];
  b.edges[e] = {v1, v3};
  b.tris[t1] = Triangle{{Slot{e, L}, B, C}};  // sigma_3 = (v0, v1, v3)
  b.tris[t2] = Triangle{{Slot{e, R}, D, A}};  // sigma_4 = (v1, v2, v3)
  b.signs[e] = sd;
  b.signs[B.edge] = -sd * s[B.edge];
  b.signs[C.edge] = -s[C.edge];
  b.signs[D.edge] = -sd * s[D.edge];
  b.labels.edge[e] = b.fresh();
  b.labels.triangle[t1] = b.fresh();
  b.labels.triangle[t2] = b.fresh();
  return b.finish();
}

Transformed pachner_31(const MarkedTriangulation& tri, const Signs& s, int v) {
  check_signs(tri, s);
  PachnerMove mv{PachnerKind::ThreeOne, v};
  if (auto why = pachner_obstruction(tri, mv); !why.empty()) throw std::invalid_argument("3-1: " + why);
  if (!is_normalized(tri, mv)) throw std::invalid_argument("3-1: patch marking is not in reference form");

  const auto t = star_order(tri, v);
  const Slot A = tri.triangle(t[0]).slots[0], B = tri.triangle(t[1]).slots[0], C = tri.triangle(t[2]).slots[0];
  const int e12 = tri.triangle(t[0]).slots[1].edge;
  const int e23 = tri.triangle(t[1]).slots[1].edge;
  const int e31 = tri.triangle(t[2]).slots[1].edge;
  const int s12 = s[e12], s23 = s[e23], s31 = s[e31];
  if (s12 * s23 * s31 != -1) throw std::invalid_argument("3-1: interior signs do not multiply to -1");

  Builder b(tri, s);
  b.tris[t[0]] = Triangle{{A, B, C}};
  b.signs[B.edge] = s12 * s[B.edge];
  b.signs[C.edge] = -s31 * s[C.edge];
  b.labels.triangle[t[0]] = b.fresh();
  b.remove(v, {e12, e23, e31}, {t[1], t[2]});
  return b.finish();
}

Transformed pachner_13(const MarkedTriangulation& tri, const Signs& s, int t, std::array<int, 2> choice) {
  check_signs(tri, s);
  PachnerMove mv{PachnerKind::OneThree, t, choice};
  if (auto why = pachner_obstruction(tri, mv); !why.empty()) throw std::invalid_argument("1-3: " + why);

  const auto sl = tri.triangle(t).slots;
  const Slot A = sl[0], B = sl[1], C = sl[2];
  const int v0 = tri.corner_vertex(t, 0), v1 = tri.corner_vertex(t, 1), v2 = tri.corner_vertex(t, 2);
  const int s12 = choice[0], s23 = choice[1], s31 = -s12 * s23;

  Builder b(tri, s);
  const int v = b.V++;
  b.labels.vertex.push_back(b.fresh());
  const int E = tri.num_edges();
  const int e12 = E, e23 = E + 1, e31 = E + 2;
  b.edges.push_back({v1, v});
  b.edges.push_back({v2, v});
  b.edges.push_back({v0, v});
  for (int i = 0; i < 3; ++i) b.labels.edge.push_back(b.fresh());
  b.signs.push_back(s12);
  b.signs.push_back(s23);
  b.signs.push_back(s31);
  b.tris[t] = Triangle{{A, Slot{e12, L}, Slot{e31, R}}};
  b.tris.push_back(Triangle{{B, Slot{e23, L}, Slot{e12, R}}});
  b.tris.push_back(Triangle{{C, Slot{e31, L}, Slot{e23, R}}});
  b.labels.triangle[t] = b.fresh();
  b.labels.triangle.push_back(b.fresh());
  b.labels.triangle.push_back(b.fresh());
  // inverse of the 3-1 transport
  b.signs[B.edge] = s12 * s[B.edge];
  b.signs[C.edge] = -s31 * s[C.edge];
  return b.finish();
}

Transformed apply_pachner(const MarkedTriangulation& tri, const Signs& s, const PachnerMove& move) {
  if (auto why = pachner_obstruction(tri, move); !why.empty())
    throw std::invalid_argument(std::string(kind_name(move.kind)) + ": " + why);
  auto n = normalize_marking(tri, s, move);
  switch (move.kind) {
    case PachnerKind::TwoTwo:
      return pachner_22(n.tri, n.signs, move.target);
    case PachnerKind::ThreeOne:
      return pachner_31(n.tri, n.signs, move.target);
    case PachnerKind::OneThree:
      return pachner_13(n.tri, n.signs, move.target, move.choice);
  }
  throw std::invalid_argument("unknown move");
}

std::vector<int> pachner_targets(const MarkedTriangulation& tri, PachnerKind kind) {
  std::vector<int> out;
  const int n = kind == PachnerKind::TwoTwo    ? tri.num_edges()
                : kind == PachnerKind::ThreeOne ? tri.num_vertices()
                                                : tri.num_triangles();
  for (int x = 0; x < n; ++x)
    if (pachner_obstruction(tri, {kind, x}).empty()) out.push_back(x);
  return out;
}

}  // namespace spinsum
