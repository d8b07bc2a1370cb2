#pragma once

#include "spinsum/spin.hpp"
#include "spinsum/surface.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace spinsum {

enum class PachnerKind { TwoTwo, ThreeOne, OneThree };

const char* kind_name(PachnerKind k);

// target: inner edge (2-2), inner vertex of valence 3 (3-1), triangle (1-3).
// choice is (s12, s23) for 1-3 and ignored otherwise.
struct PachnerMove {
  PachnerKind kind = PachnerKind::TwoTwo;
  int target = -1;
  std::array<int, 2> choice = {1, 1};
};

struct Transformed {
  MarkedTriangulation tri;
  Signs signs;
};

// Empty when the move's patch is a proper 2-, 3- or 1-triangle patch here.
// Markings are not looked at.
std::string pachner_obstruction(const MarkedTriangulation& tri, const PachnerMove& move);

// Reference configurations:
//   2-2 on e = (v0 -> v2): both triangles marked at e. sigma_1 (left of e)
//       has outer edges A = v2v3, B = v3v0; sigma_2 has C = v0v1, D = v1v2.
//   3-1 at v: each triangle of the star marked at the edge opposite v,
//       spokes oriented towards v.
// Outer edges are drawn counterclockwise in the reference pictures but
// their stored orientation is never changed here: every transport rule
// multiplies the outer sign by a factor, so reversing an outer edge before
// the move and back afterwards cancels. This also covers boundary edges,
// which cannot be reversed.
bool is_normalized(const MarkedTriangulation& tri, const PachnerMove& move);

// Composes marking moves (rotations, then edge reversals) inside the patch
// until is_normalized holds. Marking moves applied are appended to log.
Transformed normalize_marking(const MarkedTriangulation& tri, const Signs& s, const PachnerMove& move,
                              std::vector<MarkingMove>* log = nullptr);

// The three moves refuse patches that are not normalized or not proper
// (std::invalid_argument). New vertices, edges and triangles get fresh
// labels; 3-1 removes one vertex, three edges and two triangles and
// compacts indices.
Transformed pachner_22(const MarkedTriangulation& tri, const Signs& s, int e);
// Throws std::invalid_argument when s12 s23 s31 != -1.
Transformed pachner_31(const MarkedTriangulation& tri, const Signs& s, int v);
Transformed pachner_13(const MarkedTriangulation& tri, const Signs& s, int t, std::array<int, 2> choice = {1, 1});

// normalize_marking followed by the move.
Transformed apply_pachner(const MarkedTriangulation& tri, const Signs& s, const PachnerMove& move);

// All targets where the move is structurally possible.
std::vector<int> pachner_targets(const MarkedTriangulation& tri, PachnerKind kind);

}  // namespace spinsum
