#include "spinsum/tft.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>

using namespace spinsum;

namespace {

const BoundaryType NS = BoundaryType::NS;
const BoundaryType R = BoundaryType::R;

Signs cylinder_signs(BoundaryType d, int eps) {
  Signs s(12, 1);
  s[0] = s[1] = s[2] = eps;
  s[6] = d == NS ? -1 : 1;
  return s;
}

// Pants solution with the gauge s4..s18 = 1 except the forced edges.
Signs pants_signs(int n1, int n2, int n3, int eps1, int eps2) {
  const int a1 = eps1 * eps2, a2 = -n1 * eps2;
  Signs s(21, 1);
  auto S = [&](int i, int v) { s[i - 1] = v; };
  S(1, a1);
  S(2, -n2 * a1);
  S(3, n1 * a1 * a2);
  S(12, n2);
  S(14, a2);
  S(15, -1);
  S(17, n3 * a2);
  S(19, -1);
  S(20, -n3 * a2);
  S(21, -n3 * a2);
  return s;
}

// Plain Kronecker product; only used on even maps.
Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() * b.rows(), a.cols() * b.cols(), a.field());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return r;
}

Matrix diag(std::initializer_list<int> v) {
  Matrix m(static_cast<int>(v.size()), static_cast<int>(v.size()));
  int i = 0;
  for (int x : v) {
    m(i, i) = Scalar(x);
    ++i;
  }
  return m;
}

class Builtin : public ::testing::TestWithParam<std::string> {
 protected:
  void SetUp() override {
    A = builtin_algebra(GetParam());
    D = derive(A);
  }
  GradedFrobeniusAlgebra A;
  DerivedStructure D;
};

std::string param_name(const ::testing::TestParamInfo<std::string>& info) {
  std::string s = info.param;
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

}  // namespace

TEST(Projectors, Clifford) {
  auto P = projectors(builtin_clifford());
  EXPECT_EQ(P.P_NS, diag({1, 0}));
  EXPECT_EQ(P.P_R, diag({0, 1}));
  EXPECT_TRUE((P.P_NS * P.P_R).is_zero());
  EXPECT_TRUE((P.P_R * P.P_NS).is_zero());
}

TEST(Projectors, TwistedMatrixTraceFormula) {
  // P_NS(M) = tr(MX)/lambda * 1 with X = diag(1, 1, -1), lambda = 1
  auto A = builtin_algebra("twisted-matrix-3-f3");
  auto P = projectors(A);
  const int n = 3;
  const int X[3] = {1, 1, -1};
  Matrix expect(9, 9, A.field);
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < n; ++r) expect(r * n + r, i * n + i) = Scalar::in(A.field, X[i]);
  EXPECT_EQ(P.P_NS, expect);
  EXPECT_TRUE((P.P_NS * P.P_R).is_zero());
  EXPECT_TRUE((P.P_R * P.P_NS).is_zero());
}

TEST_P(Builtin, ProjectorsIdempotentAndAbsorbN) {
  auto P = projectors(A, D);
  EXPECT_EQ(P.P_NS * P.P_NS, P.P_NS);
  EXPECT_EQ(P.P_R * P.P_R, P.P_R);
  EXPECT_EQ(P.P_NS * D.N.m, P.P_NS);
  EXPECT_EQ(P.P_NS * D.N.m, D.N.m * P.P_NS);
  EXPECT_EQ(P.P_R * D.N.m, D.N.m * P.P_R);
  EXPECT_EQ(P.P_NS, D.q_plus.m);
  EXPECT_EQ(P.P_R, D.q_minus.m);
}

TEST_P(Builtin, ProjectorPiIotaSplitIdentity) {
  // pi31 o iota13 = mu o Delta = id
  auto P = projectors(A, D);
  EXPECT_EQ(P.pi31.m * P.iota13.m, Matrix::identity(A.dim, A.field));
}

TEST_P(Builtin, UnitAndCounitFixedByNS) {
  auto P = projectors(A, D);
  EXPECT_EQ(P.P_NS * D.eta.m, D.eta.m);
  EXPECT_EQ(D.eps.m * P.P_NS, D.eps.m);
}

TEST_P(Builtin, TwoOfThreeProjectorAbsorption) {
  for (int n2 : {1, -1})
    for (int n3 : {1, -1}) {
      const int n1 = n2 * n3;
      const Matrix& q1 = n1 > 0 ? D.q_plus.m : D.q_minus.m;
      const Matrix& q2 = n2 > 0 ? D.q_plus.m : D.q_minus.m;
      const Matrix& q3 = n3 > 0 ? D.q_plus.m : D.q_minus.m;
      Matrix rhs = D.mu.m * kron(q2, q3);
      EXPECT_EQ(q1 * rhs, rhs) << n1 << n2 << n3;
    }
}

TEST_P(Builtin, BraidingExchange) {
  MorphismCalculus calc(A);
  auto sigma = calc.braid().m;
  for (int v : {1, -1}) {
    const Matrix& q = v > 0 ? D.q_plus.m : D.q_minus.m;
    Matrix Nv = nakayama_power(D, v);
    auto id = Matrix::identity(A.dim, A.field);
    EXPECT_EQ(D.mu.m * sigma * kron(q, id), D.mu.m * kron(q, Nv)) << v;
  }
}

TEST_P(Builtin, CentreProperty) {
  auto Z = state_space(A, D, NS);
  MorphismCalculus calc(A);
  auto id = Matrix::identity(A.dim, A.field);
  EXPECT_EQ(D.mu.m * calc.braid().m * kron(Z.iota, id), D.mu.m * kron(Z.iota, id));
}

TEST_P(Builtin, StateSpaceSplitting) {
  for (auto t : {NS, R}) {
    auto s = state_space(A, D, t);
    const Matrix& P = t == NS ? D.q_plus.m : D.q_minus.m;
    EXPECT_EQ(s.dim, P.rank());
    EXPECT_EQ(s.pi * s.iota, Matrix::identity(s.dim, A.field));
    EXPECT_EQ(s.iota * s.pi, P);
  }
}

TEST_P(Builtin, EulerCharactersAgree) { EXPECT_EQ(chi_ns(A, D), chi_r(A, D)); }

TEST(StateSpace, DimsForExamples) {
  for (auto name : {"clifford", "twisted-matrix-3-f3"}) {
    auto A = builtin_algebra(name);
    auto D = derive(A);
    EXPECT_EQ(state_space(A, D, NS).dim, 1) << name;
    EXPECT_EQ(state_space(A, D, R).dim, 1) << name;
  }
  auto C = builtin_clifford();
  auto DC = derive(C);
  EXPECT_EQ(state_space(C, DC, NS).parity, std::vector<std::uint8_t>{0});
  EXPECT_EQ(state_space(C, DC, R).parity, std::vector<std::uint8_t>{1});
}

TEST(StateSpace, M2CentreIsScalars) {
  auto A = builtin_algebra("twisted-matrix-2-q");
  auto D = derive(A);
  auto s = state_space(A, D, NS);
  ASSERT_EQ(s.dim, 1);
  // column proportional to the identity matrix E_00 + E_11
  Scalar a = s.iota(0, 0);
  EXPECT_FALSE(a.is_zero());
  EXPECT_EQ(s.iota(3, 0), a);
  EXPECT_TRUE(s.iota(1, 0).is_zero());
  EXPECT_TRUE(s.iota(2, 0).is_zero());
}

TEST(ZAlgebra, CliffordZIsA) {
  auto A = builtin_clifford();
  auto D = derive(A);
  auto Z = z_algebra(A, D);
  ASSERT_EQ(Z.dim(), 2);
  EXPECT_EQ(Z.mu, D.mu.m);
  EXPECT_EQ(Z.eta, D.eta.m);
  EXPECT_EQ(Z.eps, D.eps.m);
  EXPECT_EQ(Z.Delta, D.Delta.m);
  EXPECT_EQ(Z.N, D.N.m);
}

TEST_P(Builtin, ZStructure) {
  auto Z = z_algebra(A, D);
  auto za = Z.as_algebra("z", A.field);
  auto rep = validate_predicates(za);
  EXPECT_TRUE(rep.associative);
  EXPECT_TRUE(rep.unital);
  EXPECT_TRUE(rep.frobenius);
  EXPECT_TRUE(rep.parity_even);
  // N^Z is an involution and fixes Z_+
  EXPECT_EQ(Z.N * Z.N, Matrix::identity(Z.dim(), A.field));
  for (int i = 0; i < Z.k_plus; ++i)
    for (int j = 0; j < Z.dim(); ++j) EXPECT_EQ(Z.N(j, i), Scalar::in(A.field, i == j ? 1 : 0));
  // mu_Z maps Z_a (x) Z_b into Z_ab
  const int n = Z.dim();
  auto block = [&](int i) { return i < Z.k_plus ? 0 : 1; };
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!Z.mu(k, i * n + j).is_zero()) EXPECT_EQ(block(k), block(i) ^ block(j));
}

TEST_P(Builtin, ZGradedCommutative) {
  auto Z = z_algebra(A, D);
  auto za = Z.as_algebra("z", A.field);
  MorphismCalculus calc(za);
  const int n = Z.dim();
  Matrix lhs = Z.mu * calc.braid().m;
  auto id = Matrix::identity(n, A.field);
  Matrix twisted = Z.mu * kron(Z.N, id);
  auto block = [&](int i) { return i < Z.k_plus ? 0 : 1; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Matrix& rhs = block(i) && block(j) ? twisted : Z.mu;
      for (int k = 0; k < n; ++k) EXPECT_EQ(lhs(k, i * n + j), rhs(k, i * n + j));
    }
}

INSTANTIATE_TEST_SUITE_P(All, Builtin, ::testing::ValuesIn(builtin_algebra_names()), param_name);

class ClosedForms : public Builtin {};

TEST_P(ClosedForms, CylinderMatchesEvaluate) {
  Evaluator ev(A);
  for (auto d : {NS, R})
    for (int e : {1, -1}) {
      auto cf = cylinder_closed_form(A, D, d, e);
      auto a = ev.evaluate(build_cylinder(), cylinder_signs(d, e), {d, d});
      EXPECT_EQ(a.tensor, cf.tensor) << type_name(d) << e;
    }
  EXPECT_EQ(cylinder_closed_form(A, D, NS, 1).tensor, cylinder_closed_form(A, D, NS, -1).tensor);
}

TEST_P(ClosedForms, PantsMatchesEvaluate) {
  Evaluator ev(A);
  auto p = build_pair_of_pants();
  for (auto d1 : {NS, R})
    for (auto d2 : {NS, R}) {
      auto d3 = type_of_nu(nu(d1) * nu(d2));
      for (int e1 : {1, -1})
        for (int e2 : {1, -1}) {
          auto s = pants_signs(nu(d1), nu(d2), nu(d3), e1, e2);
          ASSERT_TRUE(is_admissible(p, s, {d1, d2, d3}));
          auto a = ev.evaluate(p, s, {d1, d2, d3});
          EXPECT_EQ(a.tensor, pants_closed_form(A, D, d1, d2, d3, e1, e2).tensor)
              << type_name(d1) << type_name(d2) << type_name(d3) << e1 << e2;
        }
    }
  EXPECT_THROW(pants_closed_form(A, D, R, R, R, 1, 1), std::invalid_argument);
  EXPECT_THROW(pants_closed_form(A, D, NS, NS, R, 1, 1), std::invalid_argument);
}

TEST_P(ClosedForms, NSPantsIndependentOfEps) {
  // N is the identity on Z^NS, so the NS pants ignore both gluing signs.
  auto ref = pants_closed_form(A, D, NS, NS, NS, 1, 1).tensor;
  for (int e1 : {1, -1})
    for (int e2 : {1, -1}) EXPECT_EQ(pants_closed_form(A, D, NS, NS, NS, e1, e2).tensor, ref);
}

TEST_P(ClosedForms, TorusAgreesThreeWays) {
  Evaluator ev(A);
  auto gl = glue_boundaries_mapped(build_cylinder(), 0, 1);
  for (auto d : {NS, R})
    for (int e : {1, -1}) {
      auto cf = torus_closed_form(A, D, d, e);
      auto direct = ev.evaluate(gl.tri, glue_signs(gl, cylinder_signs(d, e), -1), {}).scalar();
      auto cyl = ev.evaluate(build_cylinder(), cylinder_signs(d, e), {d, d});
      auto glued = glue_amplitude(cyl, 0, 1, -1, ev);
      ASSERT_TRUE(glued.is_scalar());
      EXPECT_EQ(direct, cf) << type_name(d) << e;
      EXPECT_EQ(glued.scalar(), cf) << type_name(d) << e;
    }
  EXPECT_EQ(torus_closed_form(A, D, NS, 1), torus_closed_form(A, D, NS, -1));
  EXPECT_EQ(torus_closed_form(A, D, NS, -1), torus_closed_form(A, D, R, -1));
}

INSTANTIATE_TEST_SUITE_P(All, ClosedForms, ::testing::ValuesIn(builtin_algebra_names()), param_name);

TEST(ClosedForms, CliffordValues) {
  auto A = builtin_clifford();
  EXPECT_EQ(torus_closed_form(A, NS, 1), Scalar(1));
  EXPECT_EQ(torus_closed_form(A, NS, -1), Scalar(1));
  EXPECT_EQ(torus_closed_form(A, R, -1), Scalar(1));
  EXPECT_EQ(torus_closed_form(A, R, 1), Scalar(-1));
  EXPECT_FALSE(cylinder_closed_form(A, R, 1).tensor == cylinder_closed_form(A, R, -1).tensor);
}

TEST(Glue, Errors) {
  Evaluator ev(builtin_clifford());
  auto a = ev.evaluate(build_cylinder(), cylinder_signs(NS, 1), {NS, NS});
  EXPECT_THROW(glue_amplitude(a, 0, 0, -1, ev), std::invalid_argument);
  EXPECT_THROW(glue_amplitude(a, 0, 2, -1, ev), std::out_of_range);
  auto p = build_pair_of_pants();
  auto pa = ev.evaluate(p, pants_signs(1, -1, -1, 1, 1), {NS, R, R});
  EXPECT_THROW(glue_amplitude(pa, 0, 1, -1, ev), std::invalid_argument);
}

// Gluing complexes and gluing amplitudes agree, and a cylinder glued on
// with eps = -1 is absorbed.
TEST(Glue, CylinderOntoPants) {
  // five boundaries before gluing: 15 open legs
  Budget wide;
  wide.max_legs = 15;
  for (auto name : {"clifford", "split-2"}) {
    auto A = builtin_algebra(name);
    Evaluator ev(A, wide);
    auto pants = build_pair_of_pants();
    auto both = disjoint_union(pants, build_cylinder());
    for (auto d3 : {NS, R}) {
      auto d1 = NS, d2 = d3;
      auto ps = pants_signs(nu(d1), nu(d2), nu(d3), 1, -1);
      for (int ce : {1, -1}) {
        Signs s = ps;
        auto cs = cylinder_signs(d3, ce);
        s.insert(s.end(), cs.begin(), cs.end());
        BoundaryTypes types = {d1, d2, d3, d3, d3};
        auto T = ev.evaluate(both, s, types);
        auto glued = glue_amplitude(T, 2, 3, -1, ev);

        auto g = glue_boundaries_mapped(both, 2, 3);
        auto gs = glue_signs(g, s, -1);
        ASSERT_TRUE(is_admissible(g.tri, gs, {d1, d2, d3}));
        EXPECT_EQ(ev.evaluate(g.tri, gs, {d1, d2, d3}).tensor, glued.tensor) << name << type_name(d3) << ce;

        if (ce == -1) {
          // absorption needs the cylinder glued with the same eps it carries
          auto P = ev.evaluate(pants, ps, {d1, d2, d3});
          EXPECT_EQ(glued.tensor, P.tensor) << name << type_name(d3);
        }
      }
    }
  }
}

TEST(Glue, ProjectorAbsorptionOnCylinder) {
  for (auto name : builtin_algebra_names()) {
    Evaluator ev(builtin_algebra(name));
    for (auto d : {NS, R}) {
      auto C = ev.evaluate(build_cylinder(), cylinder_signs(d, 1), {d, d});
      auto cm = ev.evaluate(build_cylinder(), cylinder_signs(d, -1), {d, d});
      auto both = disjoint_union(build_cylinder(), build_cylinder());
      Signs s = cylinder_signs(d, 1);
      auto c2 = cylinder_signs(d, -1);
      s.insert(s.end(), c2.begin(), c2.end());
      auto T = ev.evaluate(both, s, {d, d, d, d});
      EXPECT_EQ(glue_amplitude(T, 1, 2, -1, ev).tensor, C.tensor) << name << type_name(d);
      EXPECT_EQ(glue_amplitude(T, 1, 2, -1, ev).tensor, glue_amplitude(T, 2, 1, 1, ev).tensor);
      (void)cm;
    }
  }
}

TEST(Vanishing, ProjectedNonAdmissibleCylinderIsZero) {
  for (auto name : {"clifford", "twisted-matrix-3-f3"}) {
    Evaluator ev(builtin_algebra(name));
    auto P = projectors(ev.algebra(), ev.derived());
    auto c = build_cylinder();
    std::size_t checked = 0, zero = 0, adm_nonzero = 0, adm = 0;
    // every 5th assignment keeps this quick; the acceptance run is exhaustive
    for (unsigned m = 0; m < 4096; m += 5) {
      Signs s(12);
      for (int i = 0; i < 12; ++i) s[i] = (m >> i & 1) ? -1 : 1;
      auto T = ev.raw(c, s);
      for (auto a : {NS, R})
        for (auto b : {NS, R}) {
          auto pr = project_boundaries(T, {a, b}, ev, P);
          if (is_admissible(c, s, {a, b})) {
            ++adm;
            adm_nonzero += !pr.tensor.is_zero();
          } else {
            ++checked;
            zero += pr.tensor.is_zero();
          }
        }
    }
    EXPECT_GT(checked, 3000u);
    EXPECT_EQ(zero, checked) << name;
    EXPECT_EQ(adm_nonzero, adm) << name;
  }
}

TEST(Vanishing, NeedsNStarIdZero) {
  // M2 twisted by 2*1 fails N*id = 0 and non-admissible terms survive.
  Evaluator ev(builtin_algebra("twisted-matrix-2-q"));
  EXPECT_FALSE(ev.predicates().nakayama_times_id_zero);
  auto c = build_cylinder();
  auto s = cylinder_signs(NS, 1);
  s[6] = 1;
  ASSERT_FALSE(is_admissible(c, s, {NS, NS}));
  EXPECT_FALSE(project_boundaries(ev.raw(c, s), {NS, NS}, ev).tensor.is_zero());
}

TEST(SignScan, CliffordTorus) {
  auto A = builtin_clifford();
  auto torus = glue_boundaries(build_cylinder(), 0, 1);
  auto r = statistical_sign_sum(torus, A);
  EXPECT_EQ(r.weighted, Scalar(1));
  EXPECT_EQ(r.weighted, a_plus_state_sum(torus, A));
  EXPECT_EQ(r.nonadmissible_nonzero, 0u);
  EXPECT_EQ(r.admissible, 128u);
  std::map<std::string, int> by;
  for (const auto& x : r.per_class) ++by[x.str()];
  EXPECT_EQ(by["32"], 3);
  EXPECT_EQ(by["-32"], 1);
}

TEST(SignScan, APlusOfCliffordIsTrivial) {
  auto Ap = a_plus(builtin_clifford());
  EXPECT_EQ(Ap.dim, 1);
  auto D = derive(Ap);
  // mu_+ o Delta_+ = id/2 in the restricted structure
  EXPECT_EQ(D.mu.m * D.Delta.m, Matrix::identity(1).scaled(Scalar(Rational(1, 2))));
}

TEST(SignScan, RefusesCharacteristicTwo) {
  auto A = builtin_split(Field::prime(2));
  auto torus = glue_boundaries(build_cylinder(), 0, 1);
  EXPECT_THROW(statistical_sign_sum(torus, A), std::domain_error);
}
