#include "spinsum/io.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace spinsum {

namespace {

using nlohmann::json;

json parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

// Wraps json accessor failures (missing keys, wrong types) as InputError.
template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string(what) + ": " + e.what());
  } catch (const std::out_of_range& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

Scalar scalar_of(const json& v, Field f) {
  if (v.is_number_integer()) return Scalar::in(f, v.get<long long>());
  if (v.is_string()) return Scalar::parse(v.get<std::string>(), f);
  throw InputError("coefficient must be an integer or a \"p/q\" string, got " + v.dump());
}

Side side_of(const json& v) {
  auto s = v.get<std::string>();
  if (s == "L" || s == "left") return Side::Left;
  if (s == "R" || s == "right") return Side::Right;
  throw InputError("side must be \"L\" or \"R\", got \"" + s + "\"");
}

}  // namespace

MarkedTriangulation surface_from_json(const std::string& text) {
  auto j = parse(text, "surface");
  auto tri = guarded("surface", [&] {
    std::vector<Edge> edges;
    int max_v = -1;
    for (const auto& e : j.at("edges")) {
      Edge x{e.at("src").get<int>(), e.at("dst").get<int>()};
      if (x.src < 0 || x.dst < 0) throw InputError("surface: negative vertex id");
      max_v = std::max({max_v, x.src, x.dst});
      edges.push_back(x);
    }
    int V = j.contains("vertices") ? j["vertices"].get<int>() : max_v + 1;
    if (V <= max_v) throw InputError("surface: \"vertices\" smaller than the largest vertex id");
    const int E = static_cast<int>(edges.size());
    std::vector<Triangle> tris;
    for (const auto& t : j.at("triangles")) {
      if (t.size() != 3) throw InputError("surface: every triangle needs 3 slots");
      Triangle x{};
      for (int k = 0; k < 3; ++k) {
        x.slots[k] = {t[k].at("edge").get<int>(), side_of(t[k].at("side"))};
        if (x.slots[k].edge < 0 || x.slots[k].edge >= E) throw InputError("surface: slot edge out of range");
      }
      tris.push_back(x);
    }
    std::vector<Boundary> bds;
    if (j.contains("boundaries"))
      for (const auto& b : j.at("boundaries")) {
        if (b.size() != 3) throw InputError("surface: every boundary needs 3 edges");
        Boundary x{{-1, -1, -1}};
        for (const auto& r : b) {
          int p = r.at("position").get<int>(), e = r.at("edge").get<int>();
          if (p < 0 || p > 2 || x.edges[p] >= 0) throw InputError("surface: boundary positions must be 0, 1, 2 once each");
          if (e < 0 || e >= E) throw InputError("surface: boundary edge out of range");
          x.edges[p] = e;
        }
        bds.push_back(x);
      }
    return MarkedTriangulation(V, edges, tris, bds);
  });
  auto problems = validate(tri);
  if (!problems.empty()) {
    std::string msg = "surface: invalid complex";
    for (const auto& p : problems) msg += "\n  " + p;
    throw InputError(msg);
  }
  return tri;
}

std::string surface_to_json(const MarkedTriangulation& tri) {
  json j;
  j["vertices"] = tri.num_vertices();
  j["edges"] = json::array();
  for (const auto& e : tri.edges()) j["edges"].push_back({{"src", e.src}, {"dst", e.dst}});
  j["triangles"] = json::array();
  for (const auto& t : tri.triangles()) {
    json slots = json::array();
    for (const auto& s : t.slots) slots.push_back({{"edge", s.edge}, {"side", s.side == Side::Left ? "L" : "R"}});
    j["triangles"].push_back(slots);
  }
  j["boundaries"] = json::array();
  for (const auto& b : tri.boundaries()) {
    json rec = json::array();
    for (int p = 0; p < 3; ++p) rec.push_back({{"edge", b.edges[p]}, {"position", p}});
    j["boundaries"].push_back(rec);
  }
  return j.dump(2);
}

Signs signs_from_json(const std::string& text, int num_edges) {
  auto j = parse(text, "signs");
  return guarded("signs", [&] {
    Signs s(num_edges, 0);
    auto put = [&](int e, int v) {
      if (e < 0 || e >= num_edges) throw InputError("signs: edge " + std::to_string(e) + " out of range");
      if (v != 1 && v != -1) throw InputError("signs: value for edge " + std::to_string(e) + " must be 1 or -1");
      if (s[e] != 0) throw InputError("signs: edge " + std::to_string(e) + " given twice");
      s[e] = v;
    };
    if (j.is_array()) {
      for (std::size_t i = 0; i < j.size(); ++i) put(static_cast<int>(i), j[i].get<int>());
    } else {
      for (auto it = j.begin(); it != j.end(); ++it) {
        std::size_t used = 0;
        int e = std::stoi(it.key(), &used);
        if (used != it.key().size()) throw InputError("signs: key '" + it.key() + "' is not an edge id");
        put(e, it.value().get<int>());
      }
    }
    for (int e = 0; e < num_edges; ++e)
      if (s[e] == 0) throw InputError("signs: no value for edge " + std::to_string(e));
    return s;
  });
}

std::string signs_to_json(const Signs& s) {
  // Keys in numeric order; nlohmann's default object sorts lexically.
  std::string out = "{";
  for (std::size_t e = 0; e < s.size(); ++e) {
    if (e) out += ", ";
    out += "\"" + std::to_string(e) + "\": " + std::to_string(s[e]);
  }
  return out + "}";
}

GradedFrobeniusAlgebra algebra_from_json(const std::string& text) {
  auto j = parse(text, "algebra");
  auto A = guarded("algebra", [&] {
    GradedFrobeniusAlgebra A;
    A.name = j.value("name", std::string("file"));
    const auto& f = j.at("field");
    if (f.is_string()) {
      if (f.get<std::string>() != "Q") throw InputError("algebra: field must be \"Q\" or {\"Fp\": p}");
      A.field = Field::rationals();
    } else {
      long long p = f.at("Fp").get<long long>();
      if (p < 2 || p > 0xFFFFFFFFLL || !is_prime(static_cast<std::uint32_t>(p)))
        throw InputError("algebra: Fp needs a prime, got " + std::to_string(p));
      A.field = Field::prime(static_cast<std::uint32_t>(p));
    }
    A.dim = j.at("dim").get<int>();
    if (A.dim <= 0) throw InputError("algebra: dim must be positive");
    for (const auto& x : j.at("parity")) {
      int v = x.get<int>();
      if (v != 0 && v != 1) throw InputError("algebra: parity entries are 0 or 1");
      A.parity.push_back(static_cast<std::uint8_t>(v));
    }
    const std::size_t n = static_cast<std::size_t>(A.dim);
    if (A.parity.size() != n) throw InputError("algebra: parity needs dim entries");
    A.mu.assign(n * n * n, Scalar::in(A.field, 0));
    for (const auto& r : j.at("mu")) {
      if (r.size() != 4) throw InputError("algebra: mu entries are [k, i, j, value]");
      int k = r[0].get<int>(), i = r[1].get<int>(), l = r[2].get<int>();
      for (int x : {k, i, l})
        if (x < 0 || x >= A.dim) throw InputError("algebra: mu index out of range");
      A.mu[(k * n + i) * n + l] += scalar_of(r[3], A.field);
    }
    for (const char* key : {"eta", "eps"}) {
      auto& v = key[1] == 't' ? A.eta : A.eps;
      for (const auto& x : j.at(key)) v.push_back(scalar_of(x, A.field));
      if (v.size() != n) throw InputError(std::string("algebra: ") + key + " needs dim entries");
    }
    return A;
  });
  try {
    check_shape(A);
  } catch (const std::exception& e) {
    throw InputError(std::string("algebra: ") + e.what());
  }
  return A;
}

std::string scalar_json_text(const Scalar& s) { return s.str(); }

std::string algebra_to_json(const GradedFrobeniusAlgebra& A) {
  json j;
  j["name"] = A.name;
  if (A.field.is_rational())
    j["field"] = "Q";
  else
    j["field"] = {{"Fp", A.field.p}};
  j["dim"] = A.dim;
  j["parity"] = A.parity;
  j["mu"] = json::array();
  for (int k = 0; k < A.dim; ++k)
    for (int i = 0; i < A.dim; ++i)
      for (int l = 0; l < A.dim; ++l)
        if (!A.mu_at(k, i, l).is_zero()) j["mu"].push_back({k, i, l, A.mu_at(k, i, l).str()});
  j["eta"] = json::array();
  for (const auto& x : A.eta) j["eta"].push_back(x.str());
  j["eps"] = json::array();
  for (const auto& x : A.eps) j["eps"].push_back(x.str());
  return j.dump(2);
}

std::string amplitude_to_json(const Amplitude& a) {
  const auto& T = a.tensor;
  json j;
  j["field"] = T.field().name();
  j["dim"] = T.dim();
  j["basis_parity"] = T.parity();
  j["legs"] = json::array();
  for (std::size_t l = 0; l < a.leg_meta.size(); ++l) {
    auto [b, p] = a.leg_meta[l];
    json leg = {{"boundary", b}, {"position", p}};
    if (static_cast<std::size_t>(b) < a.types.size()) leg["type"] = type_name(a.types[b]);
    j["legs"].push_back(leg);
  }
  j["entries"] = json::array();
  for (const auto& [key, v] : T.entries())
    j["entries"].push_back({{"index", T.decode(key)}, {"parity", T.key_parity(key)}, {"value", v.str()}});
  if (a.is_scalar()) j["scalar"] = a.scalar().str();
  return j.dump(2);
}

std::string predicates_to_json(const PredicateReport& p) {
  json j = {{"associative", p.associative},
            {"unital", p.unital},
            {"parity_even", p.parity_even},
            {"frobenius", p.frobenius},
            {"delta_separable", p.delta_separable},
            {"nakayama_involution", p.nakayama_involution},
            {"nakayama_times_id_zero", p.nakayama_times_id_zero},
            {"symmetric", p.symmetric}};
  return j.dump(2);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace spinsum
