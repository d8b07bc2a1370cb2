#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spinsum {

enum class Side : std::uint8_t { Left, Right };

inline Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }

struct Slot {
  int edge;
  Side side;  // where the triangle sits relative to the edge orientation
};

// slots[0] is the marked edge; slots run counterclockwise.
struct Triangle {
  std::array<Slot, 3> slots;
};

struct Edge {
  int src;
  int dst;
};

struct Incidence {
  int tri;
  int slot;
};

// edges[p] is the boundary edge at position p.
struct Boundary {
  std::array<int, 3> edges;
};

struct Corner {
  int tri;
  int k;
};

// Counterclockwise walk around a vertex. Corner (t, k) is entered through
// slot k and left through slot k-1. edges lists every crossed edge once
// per occurrence (entry edge included for boundary vertices).
struct VertexStar {
  int vertex = -1;
  bool closed = true;
  std::vector<Corner> corners;
  std::vector<int> edges;
  std::vector<bool> points_away;  // per occurrence in edges
};

// Stable names that survive re-indexing. Moves hand out fresh labels.
struct Labels {
  std::vector<std::uint64_t> vertex, edge, triangle;
  std::uint64_t next = 0;
};

class MarkedTriangulation {
 public:
  MarkedTriangulation() = default;
  MarkedTriangulation(int num_vertices, std::vector<Edge> edges, std::vector<Triangle> triangles,
                      std::vector<Boundary> boundaries, Labels labels = {});

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_boundaries() const { return static_cast<int>(boundaries_.size()); }

  const Edge& edge(int e) const { return edges_.at(e); }
  const Triangle& triangle(int t) const { return triangles_.at(t); }
  const Boundary& boundary(int b) const { return boundaries_.at(b); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<Boundary>& boundaries() const { return boundaries_; }
  const Labels& labels() const { return labels_; }

  const std::vector<Incidence>& incidences(int e) const { return incidences_.at(e); }
  std::optional<Incidence> side_incidence(int e, Side s) const;

  // Boundary membership of an edge: (boundary index, position) or nullopt.
  std::optional<std::pair<int, int>> boundary_position(int e) const;
  bool is_boundary_edge(int e) const { return boundary_position(e).has_value(); }
  // Boundary component containing v, or -1.
  int vertex_boundary(int v) const { return vertex_boundary_.at(v); }
  bool is_inner_vertex(int v) const { return vertex_boundary(v) < 0; }
  // The vertex at position 0 of boundary b (start of its position-0 edge).
  int distinguished_vertex(int b) const { return edges_.at(boundaries_.at(b).edges[0]).src; }

  int corner_vertex(int t, int k) const;
  std::vector<Corner> corners_at(int v) const;
  VertexStar star(int v) const;

  int euler_characteristic() const { return num_vertices_ - num_edges() + num_triangles(); }
  bool is_closed() const { return boundaries_.empty(); }
  // (2 - B - chi) / 2; meaningful for valid connected complexes.
  int genus() const;

 private:
  int num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<Triangle> triangles_;
  std::vector<Boundary> boundaries_;
  Labels labels_;
  std::vector<std::vector<Incidence>> incidences_;
  std::vector<int> edge_boundary_, edge_position_, vertex_boundary_;
};

// Empty iff valid. Each entry starts with the violated invariant's name.
std::vector<std::string> validate(const MarkedTriangulation& tri);

MarkedTriangulation build_cylinder();
MarkedTriangulation build_pair_of_pants();
MarkedTriangulation build_disk();

MarkedTriangulation disjoint_union(const MarkedTriangulation& a, const MarkedTriangulation& b);

struct GlueResult {
  MarkedTriangulation tri;
  std::vector<int> edge_map;    // old edge -> new edge
  std::vector<int> vertex_map;  // old vertex -> new vertex
  std::array<std::pair<int, int>, 3> pairs;  // (old edge from i, old edge from j)
};

// Boundary indices are 0-based. Position k of boundary i meets position
// 2-k of boundary j; glued edges keep the orientation of the j side.
GlueResult glue_boundaries_mapped(const MarkedTriangulation& tri, int i, int j);
MarkedTriangulation glue_boundaries(const MarkedTriangulation& tri, int i, int j);

// Gluing schedule: g=0 two disks, g=1 the cylinder closed up, g>=2 a ring
// of 2g-2 pants (b1 of each to b0 of the next) with b2 of pants k glued to
// b2 of pants k+g-1.
MarkedTriangulation genus_g_closed(int g);

}  // namespace spinsum
