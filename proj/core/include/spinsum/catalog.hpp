#pragma once

#include "spinsum/spin.hpp"
#include "spinsum/surface.hpp"

#include <string>
#include <vector>

namespace spinsum {

// A marked triangulation with admissible signs and boundary types.
struct SpinSurface {
  std::string name;
  MarkedTriangulation tri;
  Signs signs;
  BoundaryTypes types;
};

// Fixed gauge on build_cylinder(): the three edges of boundary 0 carry eps,
// the vertical edge 6 carries -nu(d).
Signs cylinder_signs(BoundaryType d, int eps);
// Gauge on build_pair_of_pants() with 4 solutions per admissible (d1,d2,d3).
// Throws std::invalid_argument when nu1 nu2 nu3 = -1.
Signs pants_signs(BoundaryType d1, BoundaryType d2, BoundaryType d3, int eps1, int eps2);

SpinSurface spin_cylinder(BoundaryType d, int eps);
SpinSurface spin_pants(BoundaryType d1, BoundaryType d2, BoundaryType d3, int eps1, int eps2);
// The cylinder closed up with boundary 0 glued to boundary 1 at -1.
SpinSurface spin_torus(BoundaryType d, int eps);
// k-th class representative of classify_spin_structures(genus_g_closed(g)).
SpinSurface spin_genus(int g, int k);

// disk, cylinder, pants, torus, sphere, genus-<g>.
std::vector<std::string> builtin_surface_names();
MarkedTriangulation builtin_surface(const std::string& name);

// spin selectors: "NS+", "R-" for cylinder and torus; "NS,R,R:+-" for
// pants; a class index for sphere and genus-<g>. Throws
// std::invalid_argument on unknown names.
SpinSurface builtin_spin_surface(const std::string& surface, const std::string& spin);

}  // namespace spinsum
