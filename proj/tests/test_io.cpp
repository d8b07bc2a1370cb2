#include "spinsum/catalog.hpp"
#include "spinsum/io.hpp"

#include <gtest/gtest.h>

#include "json.hpp"

using namespace spinsum;
using nlohmann::json;

namespace {

const BoundaryType NS = BoundaryType::NS;
const BoundaryType R = BoundaryType::R;

bool same_complex(const MarkedTriangulation& a, const MarkedTriangulation& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges() ||
      a.num_triangles() != b.num_triangles() || a.num_boundaries() != b.num_boundaries())
    return false;
  for (int e = 0; e < a.num_edges(); ++e)
    if (a.edge(e).src != b.edge(e).src || a.edge(e).dst != b.edge(e).dst) return false;
  for (int t = 0; t < a.num_triangles(); ++t)
    for (int k = 0; k < 3; ++k)
      if (a.triangle(t).slots[k].edge != b.triangle(t).slots[k].edge ||
          a.triangle(t).slots[k].side != b.triangle(t).slots[k].side)
        return false;
  for (int i = 0; i < a.num_boundaries(); ++i)
    if (a.boundary(i).edges != b.boundary(i).edges) return false;
  return true;
}

const char* kDisk = R"({
  "edges": [{"src": 0, "dst": 1}, {"src": 1, "dst": 2}, {"src": 2, "dst": 0}],
  "triangles": [[{"edge": 0, "side": "R"}, {"edge": 2, "side": "R"}, {"edge": 1, "side": "R"}]],
  "boundaries": [[{"edge": 1, "position": 1}, {"edge": 0, "position": 0}, {"edge": 2, "position": 2}]]
})";

}  // namespace

TEST(SurfaceJson, HandWrittenDiskMatchesBuiltin) {
  auto d = surface_from_json(kDisk);
  EXPECT_TRUE(same_complex(d, build_disk()));
}

TEST(SurfaceJson, RoundTripsBuiltins) {
  for (const auto& tri : {build_disk(), build_cylinder(), build_pair_of_pants(), genus_g_closed(2)}) {
    auto back = surface_from_json(surface_to_json(tri));
    EXPECT_TRUE(same_complex(back, tri));
  }
}

TEST(SurfaceJson, RejectsBrokenInput) {
  EXPECT_THROW(surface_from_json("{"), InputError);
  EXPECT_THROW(surface_from_json(R"({"edges": []})"), InputError);
  // slot edge out of range
  auto j = json::parse(kDisk);
  j["triangles"][0][1]["edge"] = 7;
  EXPECT_THROW(surface_from_json(j.dump()), InputError);
  // bad side tag
  j = json::parse(kDisk);
  j["triangles"][0][0]["side"] = "up";
  EXPECT_THROW(surface_from_json(j.dump()), InputError);
  // duplicated position
  j = json::parse(kDisk);
  j["boundaries"][0][1]["position"] = 1;
  EXPECT_THROW(surface_from_json(j.dump()), InputError);
  // wrong side flag: structurally parsable, fails validate
  j = json::parse(kDisk);
  j["triangles"][0][0]["side"] = "L";
  EXPECT_THROW(surface_from_json(j.dump()), InputError);
}

TEST(SignsJson, MapAndListForms) {
  Signs s = {1, -1, 1};
  EXPECT_EQ(signs_from_json(signs_to_json(s), 3), s);
  EXPECT_EQ(signs_from_json("[1, -1, 1]", 3), s);
  EXPECT_EQ(signs_from_json(R"({"2": 1, "0": 1, "1": -1})", 3), s);
  EXPECT_EQ(signs_to_json(s), R"({"0": 1, "1": -1, "2": 1})");
}

TEST(SignsJson, RejectsBadValues) {
  EXPECT_THROW(signs_from_json(R"({"0": 1, "1": 1})", 3), InputError);
  EXPECT_THROW(signs_from_json(R"({"0": 1, "1": 1, "2": 0})", 3), InputError);
  EXPECT_THROW(signs_from_json(R"({"0": 1, "1": 1, "5": 1})", 3), InputError);
  EXPECT_THROW(signs_from_json(R"({"x": 1})", 1), InputError);
  EXPECT_THROW(signs_from_json("[1, 1, 1, 1]", 3), InputError);
}

TEST(AlgebraJson, CliffordByHand) {
  const char* text = R"({"field": "Q", "dim": 2, "parity": [0, 1],
    "mu": [[0, 0, 0, 1], [1, 0, 1, 1], [1, 1, 0, 1], [0, 1, 1, 1]],
    "eta": [1, 0], "eps": [2, 0]})";
  auto A = algebra_from_json(text);
  auto B = builtin_clifford();
  EXPECT_EQ(A.mu, B.mu);
  EXPECT_EQ(A.eta, B.eta);
  EXPECT_EQ(A.eps, B.eps);
  EXPECT_EQ(A.parity, B.parity);
  EXPECT_TRUE(validate_predicates(A).nakayama_times_id_zero);
}

TEST(AlgebraJson, RoundTripsBuiltins) {
  for (const auto& name : builtin_algebra_names()) {
    auto A = builtin_algebra(name);
    auto B = algebra_from_json(algebra_to_json(A));
    EXPECT_EQ(B.field, A.field) << name;
    EXPECT_EQ(B.mu, A.mu) << name;
    EXPECT_EQ(B.eta, A.eta) << name;
    EXPECT_EQ(B.eps, A.eps) << name;
  }
}

TEST(AlgebraJson, FractionsAndPrimeFields) {
  auto A = algebra_from_json(R"({"field": {"Fp": 5}, "dim": 1, "parity": [0],
    "mu": [[0, 0, 0, 1]], "eta": [1], "eps": ["1/2"]})");
  EXPECT_EQ(A.field, Field::prime(5));
  EXPECT_EQ(A.eps[0] * Scalar::in(A.field, 2), Scalar::in(A.field, 1));
  auto Q = algebra_from_json(R"({"field": "Q", "dim": 1, "parity": [0],
    "mu": [[0, 0, 0, 1]], "eta": [1], "eps": ["-3/4"]})");
  EXPECT_EQ(Q.eps[0], Scalar(Rational(-3, 4)));
}

TEST(AlgebraJson, RejectsBadInput) {
  EXPECT_THROW(algebra_from_json("not json"), InputError);
  EXPECT_THROW(algebra_from_json(R"({"field": {"Fp": 4}, "dim": 1, "parity": [0], "mu": [], "eta": [1], "eps": [1]})"),
               InputError);
  EXPECT_THROW(algebra_from_json(R"({"field": "R", "dim": 1, "parity": [0], "mu": [], "eta": [1], "eps": [1]})"),
               InputError);
  EXPECT_THROW(algebra_from_json(R"({"field": "Q", "dim": 2, "parity": [0], "mu": [], "eta": [1, 0], "eps": [1, 0]})"),
               InputError);
  EXPECT_THROW(algebra_from_json(R"({"field": "Q", "dim": 1, "parity": [0], "mu": [[0, 0, 3, 1]], "eta": [1], "eps": [1]})"),
               InputError);
  EXPECT_THROW(algebra_from_json(R"({"field": "Q", "dim": 1, "parity": [0], "mu": [[0, 0, 0, 1.5]], "eta": [1], "eps": [1]})"),
               InputError);
}

TEST(AlgebraJson, OddUnitLoadsButFailsParityPredicate) {
  auto A = algebra_from_json(R"({"field": "Q", "dim": 2, "parity": [0, 1],
    "mu": [[0, 0, 0, 1], [1, 0, 1, 1], [1, 1, 0, 1], [0, 1, 1, 1]], "eta": [0, 1], "eps": [2, 0]})");
  EXPECT_FALSE(validate_predicates(A).parity_even);
}

TEST(AmplitudeJson, TorusScalarAndCylinderLegs) {
  Evaluator ev(builtin_clifford());
  auto t = spin_torus(R, 1);
  auto j = json::parse(amplitude_to_json(ev.evaluate(t.tri, t.signs, t.types)));
  EXPECT_EQ(j["scalar"], "-1");
  EXPECT_TRUE(j["legs"].empty());

  auto c = spin_cylinder(NS, 1);
  auto amp = ev.evaluate(c.tri, c.signs, c.types);
  j = json::parse(amplitude_to_json(amp));
  ASSERT_EQ(j["legs"].size(), 6u);
  for (int l = 0; l < 6; ++l) {
    EXPECT_EQ(j["legs"][l]["boundary"], l / 3);
    EXPECT_EQ(j["legs"][l]["position"], l % 3);
    EXPECT_EQ(j["legs"][l]["type"], "NS");
  }
  EXPECT_EQ(j["entries"].size(), amp.tensor.nnz());
  for (const auto& e : j["entries"]) {
    auto idx = e["index"].get<std::vector<int>>();
    EXPECT_EQ(amp.tensor.at(idx).str(), e["value"].get<std::string>());
    int parity = 0;
    for (int x : idx) parity ^= amp.tensor.parity()[x];
    EXPECT_EQ(e["parity"], parity);
  }
}

TEST(Catalog, SelectorsAreAdmissible) {
  for (auto d : {NS, R})
    for (int e : {1, -1}) {
      auto c = spin_cylinder(d, e);
      EXPECT_TRUE(is_admissible(c.tri, c.signs, c.types));
      auto t = spin_torus(d, e);
      EXPECT_TRUE(is_admissible(t.tri, t.signs, {}));
    }
  for (auto d1 : {NS, R})
    for (auto d2 : {NS, R})
      for (auto d3 : {NS, R}) {
        if (nu(d1) * nu(d2) * nu(d3) < 0) {
          EXPECT_THROW(spin_pants(d1, d2, d3, 1, 1), std::invalid_argument);
          continue;
        }
        for (int e1 : {1, -1})
          for (int e2 : {1, -1}) {
            auto p = spin_pants(d1, d2, d3, e1, e2);
            EXPECT_TRUE(is_admissible(p.tri, p.signs, p.types));
          }
      }
}

TEST(Catalog, ParsesSelectors) {
  EXPECT_EQ(builtin_spin_surface("cylinder", "R-").signs, cylinder_signs(R, -1));
  EXPECT_EQ(builtin_spin_surface("pants", "NS,R,R:+-").signs, pants_signs(NS, R, R, 1, -1));
  EXPECT_EQ(builtin_spin_surface("genus-2", "15").tri.genus(), 2);
  EXPECT_EQ(builtin_spin_surface("torus", "3").signs, spin_genus(1, 3).signs);
  EXPECT_EQ(builtin_spin_surface("sphere", "0").tri.genus(), 0);
  EXPECT_THROW(builtin_spin_surface("cylinder", "X+"), std::invalid_argument);
  EXPECT_THROW(builtin_spin_surface("cylinder", "NS"), std::invalid_argument);
  EXPECT_THROW(builtin_spin_surface("pants", "NS,NS:++"), std::invalid_argument);
  EXPECT_THROW(builtin_spin_surface("genus-2", "16"), std::invalid_argument);
  EXPECT_THROW(builtin_spin_surface("klein", "0"), std::invalid_argument);
  EXPECT_THROW(builtin_surface("genus-x"), std::invalid_argument);
}
