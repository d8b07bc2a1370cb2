#include "spinsum/catalog.hpp"

#include <cctype>
#include <stdexcept>

namespace spinsum {

namespace {

std::string spin_tag(BoundaryType d, int eps) { return std::string(type_name(d)) + (eps > 0 ? "+" : "-"); }

int genus_of(const std::string& name) {
  if (name == "sphere") return 0;
  if (name == "torus") return 1;
  if (name.rfind("genus-", 0) != 0) return -1;
  try {
    std::size_t used = 0;
    int g = std::stoi(name.substr(6), &used);
    return used == name.size() - 6 && g >= 0 ? g : -1;
  } catch (const std::exception&) {
    return -1;
  }
}

BoundaryType parse_type(const std::string& t) {
  if (t == "NS") return BoundaryType::NS;
  if (t == "R") return BoundaryType::R;
  throw std::invalid_argument("unknown boundary type '" + t + "'");
}

int parse_eps(char c) {
  if (c == '+') return 1;
  if (c == '-') return -1;
  throw std::invalid_argument(std::string("sign must be + or -, got '") + c + "'");
}

// "NS+" -> (NS, +1)
std::pair<BoundaryType, int> parse_annulus(const std::string& s) {
  if (s.size() < 2) throw std::invalid_argument("bad spin selector '" + s + "'");
  return {parse_type(s.substr(0, s.size() - 1)), parse_eps(s.back())};
}

}  // namespace

Signs cylinder_signs(BoundaryType d, int eps) {
  Signs s(12, 1);
  s[0] = s[1] = s[2] = eps;
  s[6] = -nu(d);
  return s;
}

Signs pants_signs(BoundaryType d1, BoundaryType d2, BoundaryType d3, int eps1, int eps2) {
  const int n1 = nu(d1), n2 = nu(d2), n3 = nu(d3);
  if (n1 * n2 * n3 != 1) throw std::invalid_argument("pants with nu1 nu2 nu3 = -1 carry no spin structure");
  const int a1 = eps1 * eps2, a2 = -n1 * eps2;
  Signs s(21, 1);
  s[0] = a1;
  s[1] = -n2 * a1;
  s[2] = n1 * a1 * a2;
  s[11] = n2;
  s[13] = a2;
  s[14] = -1;
  s[16] = n3 * a2;
  s[18] = -1;
  s[19] = -n3 * a2;
  s[20] = -n3 * a2;
  return s;
}

SpinSurface spin_cylinder(BoundaryType d, int eps) {
  return {"cylinder " + spin_tag(d, eps), build_cylinder(), cylinder_signs(d, eps), {d, d}};
}

SpinSurface spin_pants(BoundaryType d1, BoundaryType d2, BoundaryType d3, int eps1, int eps2) {
  std::string name = std::string("pants ") + type_name(d1) + "," + type_name(d2) + "," + type_name(d3) + ":" +
                     (eps1 > 0 ? "+" : "-") + (eps2 > 0 ? "+" : "-");
  return {name, build_pair_of_pants(), pants_signs(d1, d2, d3, eps1, eps2), {d1, d2, d3}};
}

SpinSurface spin_torus(BoundaryType d, int eps) {
  auto g = glue_boundaries_mapped(build_cylinder(), 0, 1);
  auto s = glue_signs(g, cylinder_signs(d, eps), -1);
  return {"torus " + spin_tag(d, eps), g.tri, s, {}};
}

SpinSurface spin_genus(int g, int k) {
  auto tri = genus_g_closed(g);
  auto classes = classify_spin_structures(tri);
  if (k < 0 || k >= static_cast<int>(classes.representatives.size()))
    throw std::invalid_argument("class index " + std::to_string(k) + " out of range (" +
                                std::to_string(classes.representatives.size()) + " classes)");
  return {"genus-" + std::to_string(g) + " " + std::to_string(k), tri, classes.representatives[k], {}};
}

std::vector<std::string> builtin_surface_names() {
  return {"disk", "cylinder", "pants", "torus", "sphere", "genus-<g>"};
}

MarkedTriangulation builtin_surface(const std::string& name) {
  if (name == "disk") return build_disk();
  if (name == "cylinder") return build_cylinder();
  if (name == "pants") return build_pair_of_pants();
  if (name == "torus") return glue_boundaries(build_cylinder(), 0, 1);
  int g = genus_of(name);
  if (g >= 0) return genus_g_closed(g);
  throw std::invalid_argument("unknown surface '" + name + "'");
}

SpinSurface builtin_spin_surface(const std::string& surface, const std::string& spin) {
  if (surface == "cylinder") {
    auto [d, e] = parse_annulus(spin);
    return spin_cylinder(d, e);
  }
  if (surface == "torus" && !spin.empty() && !std::isdigit(static_cast<unsigned char>(spin[0]))) {
    auto [d, e] = parse_annulus(spin);
    return spin_torus(d, e);
  }
  if (surface == "pants") {
    auto colon = spin.find(':');
    if (colon == std::string::npos || spin.size() != colon + 3)
      throw std::invalid_argument("pants selector looks like NS,R,R:+-");
    std::vector<BoundaryType> d;
    std::size_t start = 0;
    const std::string types = spin.substr(0, colon);
    while (start <= types.size()) {
      auto comma = types.find(',', start);
      if (comma == std::string::npos) comma = types.size();
      d.push_back(parse_type(types.substr(start, comma - start)));
      start = comma + 1;
    }
    if (d.size() != 3) throw std::invalid_argument("pants need three boundary types");
    return spin_pants(d[0], d[1], d[2], parse_eps(spin[colon + 1]), parse_eps(spin[colon + 2]));
  }
  int g = genus_of(surface);
  if (g >= 0) {
    try {
      std::size_t used = 0;
      int k = std::stoi(spin, &used);
      if (used == spin.size()) return spin_genus(g, k);
    } catch (const std::logic_error&) {
    }
    throw std::invalid_argument("closed surfaces take a class index, got '" + spin + "'");
  }
  throw std::invalid_argument("no spin selectors for surface '" + surface + "'");
}

}  // namespace spinsum
