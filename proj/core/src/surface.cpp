#include "spinsum/surface.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace spinsum {

namespace {

Labels identity_labels(int v, int e, int f) {
  Labels l;
  l.vertex.resize(v);
  l.edge.resize(e);
  l.triangle.resize(f);
  std::iota(l.vertex.begin(), l.vertex.end(), 0);
  std::iota(l.edge.begin(), l.edge.end(), 0);
  std::iota(l.triangle.begin(), l.triangle.end(), 0);
  l.next = static_cast<std::uint64_t>(std::max({v, e, f}));
  return l;
}

// Start and end of a slot in the orientation induced by its triangle.
int slot_start(const MarkedTriangulation& m, const Slot& s) {
  const Edge& e = m.edge(s.edge);
  return s.side == Side::Left ? e.src : e.dst;
}
int slot_end(const MarkedTriangulation& m, const Slot& s) {
  const Edge& e = m.edge(s.edge);
  return s.side == Side::Left ? e.dst : e.src;
}

std::string name(const char* p, int i) { return std::string(p) + std::to_string(i); }

}  // namespace

MarkedTriangulation::MarkedTriangulation(int num_vertices, std::vector<Edge> edges,
                                         std::vector<Triangle> triangles,
                                         std::vector<Boundary> boundaries, Labels labels)
    : num_vertices_(num_vertices),
      edges_(std::move(edges)),
      triangles_(std::move(triangles)),
      boundaries_(std::move(boundaries)),
      labels_(std::move(labels)) {
  const int E = num_edges();
  if (num_vertices_ < 0) throw std::invalid_argument("negative vertex count");
  for (const auto& e : edges_)
    if (e.src < 0 || e.src >= num_vertices_ || e.dst < 0 || e.dst >= num_vertices_)
      throw std::invalid_argument("edge endpoint out of range");
  incidences_.assign(E, {});
  for (int t = 0; t < num_triangles(); ++t)
    for (int k = 0; k < 3; ++k) {
      int e = triangles_[t].slots[k].edge;
      if (e < 0 || e >= E) throw std::invalid_argument("triangle slot references unknown edge");
      incidences_[e].push_back({t, k});
    }
  edge_boundary_.assign(E, -1);
  edge_position_.assign(E, -1);
  vertex_boundary_.assign(num_vertices_, -1);
  for (int b = 0; b < num_boundaries(); ++b)
    for (int p = 0; p < 3; ++p) {
      int e = boundaries_[b].edges[p];
      if (e < 0 || e >= E) throw std::invalid_argument("boundary references unknown edge");
      if (edge_boundary_[e] < 0) {
        edge_boundary_[e] = b;
        edge_position_[e] = p;
      }
      for (int v : {edges_[e].src, edges_[e].dst})
        if (vertex_boundary_[v] < 0) vertex_boundary_[v] = b;
    }
  if (labels_.vertex.empty() && labels_.edge.empty() && labels_.triangle.empty())
    labels_ = identity_labels(num_vertices_, E, num_triangles());
  if (static_cast<int>(labels_.vertex.size()) != num_vertices_ ||
      static_cast<int>(labels_.edge.size()) != E ||
      static_cast<int>(labels_.triangle.size()) != num_triangles())
    throw std::invalid_argument("label table size mismatch");
}

std::optional<Incidence> MarkedTriangulation::side_incidence(int e, Side s) const {
  for (const auto& inc : incidences(e))
    if (triangles_[inc.tri].slots[inc.slot].side == s) return inc;
  return std::nullopt;
}

std::optional<std::pair<int, int>> MarkedTriangulation::boundary_position(int e) const {
  if (edge_boundary_.at(e) < 0) return std::nullopt;
  return std::make_pair(edge_boundary_[e], edge_position_[e]);
}

int MarkedTriangulation::corner_vertex(int t, int k) const {
  return slot_start(*this, triangles_.at(t).slots.at(k));
}

std::vector<Corner> MarkedTriangulation::corners_at(int v) const {
  std::vector<Corner> out;
  for (int t = 0; t < num_triangles(); ++t)
    for (int k = 0; k < 3; ++k)
      if (corner_vertex(t, k) == v) out.push_back({t, k});
  return out;
}

VertexStar MarkedTriangulation::star(int v) const {
  VertexStar s;
  s.vertex = v;
  auto all = corners_at(v);
  if (all.empty()) return s;
  Corner start = all.front();
  s.closed = is_inner_vertex(v);
  if (!s.closed) {
    bool found = false;
    for (const auto& c : all)
      if (is_boundary_edge(triangles_[c.tri].slots[c.k].edge)) {
        start = c;
        found = true;
        break;
      }
    if (!found) return s;
    const Slot& in = triangles_[start.tri].slots[start.k];
    s.edges.push_back(in.edge);
    s.points_away.push_back(in.side == Side::Left);
  }
  Corner cur = start;
  for (std::size_t guard = 0; guard <= all.size(); ++guard) {
    s.corners.push_back(cur);
    int x = (cur.k + 2) % 3;
    const Slot& out = triangles_[cur.tri].slots[x];
    s.edges.push_back(out.edge);
    s.points_away.push_back(out.side == Side::Right);
    std::optional<Incidence> nxt;
    for (const auto& inc : incidences_[out.edge])
      if (inc.tri != cur.tri || inc.slot != x) nxt = inc;
    if (!nxt) break;
    Corner c{nxt->tri, nxt->slot};
    if (c.tri == start.tri && c.k == start.k) break;
    cur = c;
  }
  return s;
}

int MarkedTriangulation::genus() const {
  return (2 - num_boundaries() - euler_characteristic()) / 2;
}

std::vector<std::string> validate(const MarkedTriangulation& m) {
  std::vector<std::string> out;
  const int E = m.num_edges(), F = m.num_triangles(), V = m.num_vertices();

  std::vector<int> seen_in_boundary(E, 0);
  for (int b = 0; b < m.num_boundaries(); ++b) {
    const auto& bd = m.boundary(b);
    for (int p = 0; p < 3; ++p) {
      ++seen_in_boundary[bd.edges[p]];
      const Edge& a = m.edge(bd.edges[p]);
      const Edge& c = m.edge(bd.edges[(p + 1) % 3]);
      if (a.dst != c.src)
        out.push_back("boundary parametrisation: " + name("B", b) + " edges at positions " +
                      std::to_string(p) + "," + std::to_string((p + 1) % 3) + " do not chain");
    }
    const int v0 = m.edge(bd.edges[0]).src, v1 = m.edge(bd.edges[1]).src, v2 = m.edge(bd.edges[2]).src;
    if (v0 == v1 || v1 == v2 || v0 == v2)
      out.push_back("boundary parametrisation: " + name("B", b) + " does not have 3 distinct vertices");
  }
  for (int e = 0; e < E; ++e)
    if (seen_in_boundary[e] > 1)
      out.push_back("boundary parametrisation: " + name("e", e) + " listed more than once");

  for (int e = 0; e < E; ++e) {
    const auto& inc = m.incidences(e);
    if (inc.empty()) {
      out.push_back("isolated edge: " + name("e", e));
    } else if (inc.size() > 2) {
      out.push_back("non-manifold edge: " + name("e", e) + " bounds " + std::to_string(inc.size()) + " slots");
    } else if (inc.size() == 2) {
      Side a = m.triangle(inc[0].tri).slots[inc[0].slot].side;
      Side b = m.triangle(inc[1].tri).slots[inc[1].slot].side;
      if (a == b) out.push_back("inconsistent side flags: " + name("e", e));
      if (seen_in_boundary[e])
        out.push_back("boundary parametrisation: " + name("e", e) + " is listed as boundary but bounds two slots");
    } else {
      if (!seen_in_boundary[e]) out.push_back("unparametrised boundary edge: " + name("e", e));
      const auto& tr = m.triangle(inc[0].tri);
      int k = inc[0].slot;
      // geometric side from the neighbouring slots
      int from = slot_end(m, tr.slots[(k + 2) % 3]);
      int to = slot_start(m, tr.slots[(k + 1) % 3]);
      const Edge& ed = m.edge(e);
      bool geometric_left = ed.src == from && ed.dst == to && from != to;
      if (tr.slots[k].side == Side::Left || geometric_left)
        out.push_back("boundary edge orientation convention: " + name("e", e));
    }
  }

  for (int t = 0; t < F; ++t)
    for (int k = 0; k < 3; ++k) {
      const auto& tr = m.triangle(t);
      if (slot_end(m, tr.slots[k]) != slot_start(m, tr.slots[(k + 1) % 3]))
        out.push_back("triangle corner mismatch: " + name("t", t) + " between slots " + std::to_string(k) +
                      " and " + std::to_string((k + 1) % 3));
    }

  for (int v = 0; v < V; ++v) {
    auto all = m.corners_at(v);
    if (all.empty()) {
      out.push_back("isolated vertex: " + name("v", v));
      continue;
    }
    auto st = m.star(v);
    if (st.corners.size() != all.size())
      out.push_back("non-manifold vertex: " + name("v", v));
  }

  if (F > 0) {
    std::vector<int> comp(F, -1);
    std::vector<int> stack{0};
    comp[0] = 0;
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      for (const auto& s : m.triangle(t).slots)
        for (const auto& inc : m.incidences(s.edge))
          if (comp[inc.tri] < 0) {
            comp[inc.tri] = 0;
            stack.push_back(inc.tri);
          }
    }
    if (std::count(comp.begin(), comp.end(), -1) > 0) out.push_back("disconnected complex");
  }

  int twice_g = 2 - m.num_boundaries() - m.euler_characteristic();
  if (twice_g < 0 || twice_g % 2 != 0)
    out.push_back("euler characteristic: V-E+F = " + std::to_string(m.euler_characteristic()) +
                  " is not 2-2g-B for any g >= 0");
  return out;
}

MarkedTriangulation build_cylinder() {
  auto L = Side::Left;
  auto R = Side::Right;
  std::vector<Edge> e = {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3},
                         {0, 3}, {1, 3}, {1, 5}, {2, 5}, {2, 4}, {0, 4}};
  std::vector<Triangle> t = {
      {{{{6, L}, {7, R}, {0, R}}}},   {{{{7, L}, {5, R}, {8, R}}}},
      {{{{8, L}, {9, R}, {1, R}}}},   {{{{9, L}, {4, R}, {10, R}}}},
      {{{{10, L}, {11, R}, {2, R}}}}, {{{{11, L}, {3, R}, {6, R}}}},
  };
  return MarkedTriangulation(6, e, t, {{{0, 1, 2}}, {{3, 4, 5}}});
}

MarkedTriangulation build_pair_of_pants() {
  auto L = Side::Left;
  auto R = Side::Right;
  // 1-based drawing labels, shifted below
  std::vector<Edge> e = {{1, 2}, {2, 3}, {3, 1}, {4, 5}, {5, 6}, {6, 4}, {7, 8},
                         {8, 9}, {9, 7}, {2, 7}, {2, 5}, {2, 4}, {2, 6}, {1, 7},
                         {1, 8}, {1, 9}, {5, 9}, {6, 9}, {3, 6}, {3, 9}, {5, 7}};
  for (auto& x : e) {
    --x.src;
    --x.dst;
  }
  std::vector<std::array<std::pair<int, Side>, 3>> raw = {
      {{{1, R}, {14, L}, {10, R}}}, {{{21, R}, {11, R}, {10, L}}}, {{{4, R}, {12, R}, {11, L}}},
      {{{6, R}, {13, R}, {12, L}}}, {{{2, R}, {13, L}, {19, R}}},  {{{7, R}, {14, R}, {15, L}}},
      {{{8, R}, {15, R}, {16, L}}}, {{{3, R}, {20, L}, {16, R}}},  {{{9, R}, {17, R}, {21, L}}},
      {{{5, R}, {17, L}, {18, R}}}, {{{18, L}, {20, R}, {19, L}}},
  };
  std::vector<Triangle> t;
  for (const auto& r : raw) {
    Triangle tr;
    for (int k = 0; k < 3; ++k) tr.slots[k] = {r[k].first - 1, r[k].second};
    t.push_back(tr);
  }
  return MarkedTriangulation(9, e, t, {{{0, 1, 2}}, {{3, 4, 5}}, {{6, 7, 8}}});
}

MarkedTriangulation build_disk() {
  std::vector<Edge> e = {{0, 1}, {1, 2}, {2, 0}};
  std::vector<Triangle> t = {{{{{0, Side::Right}, {2, Side::Right}, {1, Side::Right}}}}};
  return MarkedTriangulation(3, e, t, {{{0, 1, 2}}});
}

MarkedTriangulation disjoint_union(const MarkedTriangulation& a, const MarkedTriangulation& b) {
  const int V = a.num_vertices(), E = a.num_edges();
  std::vector<Edge> edges = a.edges();
  for (auto x : b.edges()) edges.push_back({x.src + V, x.dst + V});
  std::vector<Triangle> tris = a.triangles();
  for (auto t : b.triangles()) {
    for (auto& s : t.slots) s.edge += E;
    tris.push_back(t);
  }
  std::vector<Boundary> bds = a.boundaries();
  for (auto bd : b.boundaries()) {
    for (auto& x : bd.edges) x += E;
    bds.push_back(bd);
  }
  Labels l = a.labels();
  const auto shift = l.next;
  for (auto x : b.labels().vertex) l.vertex.push_back(x + shift);
  for (auto x : b.labels().edge) l.edge.push_back(x + shift);
  for (auto x : b.labels().triangle) l.triangle.push_back(x + shift);
  l.next = shift + b.labels().next;
  return MarkedTriangulation(V + b.num_vertices(), edges, tris, bds, l);
}

GlueResult glue_boundaries_mapped(const MarkedTriangulation& m, int i, int j) {
  if (i == j) throw std::invalid_argument("cannot glue a boundary to itself");
  if (i < 0 || j < 0 || i >= m.num_boundaries() || j >= m.num_boundaries())
    throw std::out_of_range("boundary index out of range");
  const int V = m.num_vertices(), E = m.num_edges();
  GlueResult res;

  std::vector<int> parent(V);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int x, int y) {
    x = find(x);
    y = find(y);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  };

  std::vector<int> target(E, -1);  // removed edge -> partner
  for (int p = 0; p < 3; ++p) {
    int a = m.boundary(i).edges[p];
    int b = m.boundary(j).edges[2 - p];
    res.pairs[p] = {a, b};
    target[a] = b;
    unite(m.edge(a).src, m.edge(b).dst);
    unite(m.edge(a).dst, m.edge(b).src);
  }

  res.vertex_map.assign(V, -1);
  int nv = 0;
  std::vector<int> root_id(V, -1);
  Labels l;
  for (int v = 0; v < V; ++v) {
    int r = find(v);
    if (root_id[r] < 0) {
      root_id[r] = nv++;
      l.vertex.push_back(m.labels().vertex[v]);
    }
    res.vertex_map[v] = root_id[r];
  }

  res.edge_map.assign(E, -1);
  int ne = 0;
  std::vector<Edge> edges;
  for (int e = 0; e < E; ++e) {
    if (target[e] >= 0) continue;
    res.edge_map[e] = ne++;
    edges.push_back({res.vertex_map[m.edge(e).src], res.vertex_map[m.edge(e).dst]});
    l.edge.push_back(m.labels().edge[e]);
  }
  for (int e = 0; e < E; ++e)
    if (target[e] >= 0) res.edge_map[e] = res.edge_map[target[e]];

  std::vector<Triangle> tris = m.triangles();
  for (auto& t : tris)
    for (auto& s : t.slots) {
      if (target[s.edge] >= 0) s.side = opposite(s.side);
      s.edge = res.edge_map[s.edge];
    }
  l.triangle = m.labels().triangle;
  l.next = m.labels().next;

  std::vector<Boundary> bds;
  for (int b = 0; b < m.num_boundaries(); ++b) {
    if (b == i || b == j) continue;
    Boundary bd = m.boundary(b);
    for (auto& x : bd.edges) x = res.edge_map[x];
    bds.push_back(bd);
  }
  res.tri = MarkedTriangulation(nv, edges, tris, bds, l);
  return res;
}

MarkedTriangulation glue_boundaries(const MarkedTriangulation& tri, int i, int j) {
  return glue_boundaries_mapped(tri, i, j).tri;
}

MarkedTriangulation genus_g_closed(int g) {
  if (g < 0) throw std::invalid_argument("genus must be non-negative");
  if (g == 0) return glue_boundaries(disjoint_union(build_disk(), build_disk()), 0, 1);
  if (g == 1) return glue_boundaries(build_cylinder(), 0, 1);
  const int n = 2 * g - 2;
  MarkedTriangulation m = build_pair_of_pants();
  for (int k = 1; k < n; ++k) m = disjoint_union(m, build_pair_of_pants());
  std::vector<std::pair<int, int>> schedule;
  for (int k = 0; k < n; ++k) schedule.push_back({3 * k + 1, 3 * ((k + 1) % n)});
  for (int k = 0; k < n / 2; ++k) schedule.push_back({3 * k + 2, 3 * (k + n / 2) + 2});
  std::vector<int> alive(3 * n);
  std::iota(alive.begin(), alive.end(), 0);
  for (auto [a, b] : schedule) {
    int i = static_cast<int>(std::find(alive.begin(), alive.end(), a) - alive.begin());
    int j = static_cast<int>(std::find(alive.begin(), alive.end(), b) - alive.begin());
    m = glue_boundaries(m, i, j);
    alive.erase(std::remove_if(alive.begin(), alive.end(), [&](int x) { return x == a || x == b; }), alive.end());
  }
  return m;
}

}  // namespace spinsum
