#pragma once

#include "spinsum/f2.hpp"
#include "spinsum/surface.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace spinsum {

// One entry per edge, each +1 or -1.
using Signs = std::vector<int>;

enum class BoundaryType { NS, R };
using BoundaryTypes = std::vector<BoundaryType>;

inline int nu(BoundaryType d) { return d == BoundaryType::NS ? 1 : -1; }
inline BoundaryType type_of_nu(int n) { return n > 0 ? BoundaryType::NS : BoundaryType::R; }
const char* type_name(BoundaryType d);

BitVec to_bits(const Signs& s);
Signs from_bits(const BitVec& b);

// Parity form of one vertex rule: sum of lhs exponents == rhs (mod 2).
struct VertexEquation {
  int vertex = -1;
  BitVec lhs;
  bool rhs = false;
};

VertexEquation vertex_equation(const MarkedTriangulation& tri, int v, const BoundaryTypes& types);
std::vector<VertexEquation> vertex_equations(const MarkedTriangulation& tri, const BoundaryTypes& types);

bool inner_vertex_rule(const MarkedTriangulation& tri, const Signs& s, int v);
bool boundary_vertex_rule(const MarkedTriangulation& tri, const Signs& s, int v, BoundaryType d);
bool is_admissible(const MarkedTriangulation& tri, const Signs& s, const BoundaryTypes& types);

// gauge lists edges pinned to +1.
AffineSpace admissible_space(const MarkedTriangulation& tri, const BoundaryTypes& types,
                             const std::vector<int>& gauge = {});
std::vector<Signs> enumerate_admissible(const MarkedTriangulation& tri, const BoundaryTypes& types,
                                        const std::vector<int>& gauge = {},
                                        std::size_t limit = std::size_t(1) << 20);

// Signs on a glued complex: glued edges get eps * s(e_i) * s(e_j).
Signs glue_signs(const GlueResult& g, const Signs& s, int eps);

BitVec triangle_vector(const MarkedTriangulation& tri, int t);
F2Span leaf_span(const MarkedTriangulation& tri);

struct SpinClasses {
  std::vector<Signs> representatives;
  std::size_t solution_dim = 0;  // dimension of the homogeneous solution space
  std::size_t leaf_dim = 0;      // dimension of the span of triangle vectors
};

SpinClasses classify_spin_structures(const MarkedTriangulation& tri);
bool same_spin_class(const MarkedTriangulation& tri, const Signs& a, const Signs& b);
// Index into classes.representatives, or -1.
int class_index(const MarkedTriangulation& tri, const SpinClasses& classes, const Signs& s);

enum class MarkingMoveKind { FlipTriangle = 1, ReverseEdge = 2, RotateTriangle = 3 };

struct MarkingMove {
  MarkingMoveKind kind;
  int target;  // triangle for kinds 1 and 3, inner edge for kind 2
};

std::pair<MarkedTriangulation, Signs> apply_marking_move(const MarkedTriangulation& tri, const Signs& s,
                                                         const MarkingMove& move);

// Step through triangle `tri`, entering via slot k and leaving via slot
// (k + eta) mod 3.
struct CurveStep {
  int tri;
  int k;
  int eta;
};
using CurveSpec = std::vector<CurveStep>;

void validate_curve(const MarkedTriangulation& tri, const CurveSpec& c);
int exit_slot(const CurveStep& st);
// +1 iff the tangent framing of the curve lifts to a closed loop.
int curve_lift_sign(const MarkedTriangulation& tri, const Signs& s, const CurveSpec& c);
// q = 0 for bounding, 1 for periodic.
inline int quadratic_value(int lift) { return lift > 0 ? 1 : 0; }

// Per-edge crossing counts mod 2.
BitVec crossing_vector(const MarkedTriangulation& tri, const CurveSpec& c);
// Mod-2 intersection number of two closed curves.
int intersection_number(const MarkedTriangulation& tri, const CurveSpec& a, const CurveSpec& b);
// Fundamental cycles of the dual graph; they generate first homology.
std::vector<CurveSpec> dual_cycles(const MarkedTriangulation& tri);

using SymplecticBasis = std::vector<std::pair<CurveSpec, CurveSpec>>;

// Basis of the closed-up cylinder glue_boundaries(build_cylinder(), 0, 1):
// a horizontal loop and the loop through all six triangles.
SymplecticBasis glued_torus_basis();

int arf_invariant(const MarkedTriangulation& tri, const Signs& s, const SymplecticBasis& basis);
// Builds a symplectic basis from dual_cycles and reduces the quadratic form.
int arf_invariant(const MarkedTriangulation& tri, const Signs& s);
// Arf by counting: +1 iff the quadratic form vanishes on most classes.
int arf_by_count(const MarkedTriangulation& tri, const Signs& s);

}  // namespace spinsum
