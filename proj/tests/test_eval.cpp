#include "spinsum/eval.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

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

Signs torus_signs(const GlueResult& g, BoundaryType d, int eps) { return glue_signs(g, cylinder_signs(d, eps), -1); }

Signs random_signs(int E, std::mt19937_64& rng) {
  Signs s(E);
  for (auto& x : s) x = (rng() & 1) ? -1 : 1;
  return s;
}

// The disk: one triangle, slots (e0, e2, e1), boundary edges (e0, e1, e2),
// all signs +1 and the triangle right of each edge. Each open leg bends
// through M(y, x) = sum_a b(x, a) c_+(a, y); reading the slots in position
// order swaps the last two legs.
GradedTensor disk_by_hand(const Evaluator& ev) {
  const auto& A = ev.algebra();
  const auto& D = ev.derived();
  int d = A.dim;
  Matrix M(d, d, A.field);
  for (int y = 0; y < d; ++y)
    for (int x = 0; x < d; ++x)
      for (int a = 0; a < d; ++a) M(y, x) += D.b.m(0, x * d + a) * D.c_plus.m(a * d + y, 0);
  GradedTensor T(d, A.parity, {LegDir::In, LegDir::In, LegDir::In}, A.field);
  for (int x0 = 0; x0 < d; ++x0)
    for (int x1 = 0; x1 < d; ++x1)
      for (int x2 = 0; x2 < d; ++x2) {
        Scalar v = Scalar::in(A.field, 0);
        for (int y0 = 0; y0 < d; ++y0)
          for (int y1 = 0; y1 < d; ++y1)
            for (int y2 = 0; y2 < d; ++y2)
              v += D.t.m(0, (y0 * d + y2) * d + y1) * M(y0, x0) * M(y1, x1) * M(y2, x2);
        if (A.parity[x1] && A.parity[x2]) v = -v;
        T.add(T.encode({x0, x1, x2}), v);
      }
  T.normalize();
  return T;
}

}  // namespace

TEST(Graph, CountsOnReferenceComplexes) {
  auto c = build_cylinder();
  auto g = build_graph(c, Signs(12, 1));
  EXPECT_EQ(g.num_trivalent, 6);
  EXPECT_EQ(g.num_bivalent(), 12);
  EXPECT_EQ(g.num_open, 6);
  EXPECT_NO_THROW(check_graph(g));

  auto p = build_pair_of_pants();
  auto gp = build_graph(p, Signs(21, 1));
  EXPECT_EQ(gp.num_trivalent, 11);
  EXPECT_EQ(gp.num_bivalent(), 21);
  EXPECT_EQ(gp.num_open, 9);
}

TEST(Graph, TrivalentLegsFollowSlots) {
  auto c = build_cylinder();
  auto g = build_graph(c, Signs(12, 1));
  for (int t = 0; t < c.num_triangles(); ++t)
    for (int k = 0; k < 3; ++k) {
      int e = c.triangle(t).slots[k].edge;
      int leg = c.triangle(t).slots[k].side == Side::Left ? 0 : 1;
      EXPECT_EQ(g.ends[e][leg].tri, t);
      EXPECT_EQ(g.ends[e][leg].slot, k);
    }
}

TEST(Graph, CodomainOrderedByBoundaryThenPosition) {
  auto p = build_pair_of_pants();
  auto g = build_graph(p, Signs(21, 1));
  for (int i = 0; i < g.num_open; ++i) EXPECT_EQ(g.open_meta[i], std::make_pair(i / 3, i % 3));
}

TEST(Graph, BrokenGraphRejected) {
  auto g = build_graph(build_cylinder(), Signs(12, 1));
  g.ends[3][0] = g.ends[4][0];
  EXPECT_THROW(check_graph(g), std::invalid_argument);
}

TEST(Schedule, LegBounds) {
  EXPECT_LE(plan_contraction(build_graph(build_cylinder(), Signs(12, 1))).max_legs, 8);
  EXPECT_LE(plan_contraction(build_graph(build_pair_of_pants(), Signs(21, 1))).max_legs, 12);
}

TEST(Schedule, OneVertexIsEmpty) {
  NetworkShape s;
  s.legs = {3};
  auto sch = plan_contraction(s);
  EXPECT_TRUE(sch.merges.empty());
}

TEST(Schedule, Deterministic) {
  auto g = build_graph(build_pair_of_pants(), Signs(21, 1));
  auto a = plan_contraction(g);
  auto b = plan_contraction(g);
  EXPECT_EQ(a.merges, b.merges);
  EXPECT_EQ(static_cast<int>(a.merges.size()), 21 + 11 - 1);
}

TEST(Tensor, SwapTwiceIsIdentity) {
  auto A = builtin_clifford();
  std::mt19937_64 rng(3);
  GradedTensor T(2, A.parity, {LegDir::In, LegDir::In, LegDir::In}, A.field);
  for (int k = 0; k < 8; ++k) T.add(k, Scalar(static_cast<long long>(rng() % 7) - 3));
  T.normalize();
  auto S = T.permuted({1, 0, 2});
  EXPECT_EQ(S.permuted({1, 0, 2}), T);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        Scalar expect = T.at({a, b, c});
        if (a && b) expect = -expect;
        EXPECT_EQ(S.at({b, a, c}), expect);
      }
}

TEST(Tensor, CyclicPermutationComposes) {
  auto A = builtin_clifford();
  GradedTensor T(2, A.parity, {LegDir::In, LegDir::In, LegDir::In}, A.field);
  for (int k = 0; k < 8; ++k) T.add(k, Scalar(k + 1));
  T.normalize();
  auto once = T.permuted({1, 2, 0});
  EXPECT_EQ(once.permuted({1, 2, 0}).permuted({1, 2, 0}), T);
}

TEST(Tensor, LegBudgetEnforced) {
  auto A = builtin_clifford();
  Budget b;
  b.max_legs = 4;
  Evaluator ev(A, b);
  EXPECT_THROW(ev.raw(build_cylinder(), cylinder_signs(NS, 1)), BudgetExceeded);
}

TEST(Eval, DiskIsBentTriangle) {
  for (auto name : {"clifford", "split-2"}) {
    Evaluator ev(builtin_algebra(name));
    auto disk = build_disk();
    Signs s(3, 1);
    auto g = build_graph(disk, s);
    auto raw = ev.raw(g);
    EXPECT_EQ(raw.tensor, ev.exhaustive(g).tensor) << name;
    EXPECT_EQ(raw.tensor, disk_by_hand(ev)) << name;
  }
}

TEST(Eval, TrivialGradingHasNoSigns) {
  // With every basis vector even the Koszul rule is inert: swapping legs
  // only moves entries.
  auto A = builtin_split();
  GradedTensor T(2, A.parity, {LegDir::In, LegDir::In}, A.field);
  T.add(T.encode({0, 1}), Scalar(5));
  T.add(T.encode({1, 1}), Scalar(-2));
  T.normalize();
  auto S = T.permuted({1, 0});
  EXPECT_EQ(S.at({1, 0}), Scalar(5));
  EXPECT_EQ(S.at({1, 1}), Scalar(-2));

  Evaluator ev(A);
  auto c = build_cylinder();
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 6; ++trial) {
    auto s = random_signs(12, rng);
    auto g = build_graph(c, s);
    EXPECT_EQ(ev.raw(g).tensor, ev.exhaustive(g).tensor);
  }
}

class OracleEquivalence : public ::testing::TestWithParam<const char*> {};

TEST_P(OracleEquivalence, CylinderAllSpinAndRandomSigns) {
  Evaluator ev(builtin_algebra(GetParam()));
  auto c = build_cylinder();
  for (auto d : {NS, R})
    for (int e : {1, -1}) {
      auto g = build_graph(c, cylinder_signs(d, e));
      EXPECT_EQ(ev.raw(g).tensor, ev.exhaustive(g).tensor);
    }
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 8; ++trial) {
    auto g = build_graph(c, random_signs(12, rng));
    EXPECT_EQ(ev.raw(g).tensor, ev.exhaustive(g).tensor);
  }
}

TEST_P(OracleEquivalence, Pants) {
  Evaluator ev(builtin_algebra(GetParam()));
  auto p = build_pair_of_pants();
  auto sols = enumerate_admissible(p, {NS, NS, NS});
  ASSERT_FALSE(sols.empty());
  auto g = build_graph(p, sols.front());
  EXPECT_EQ(ev.raw(g).tensor, ev.exhaustive(g).tensor);
  std::mt19937_64 rng(5);
  auto g2 = build_graph(p, random_signs(21, rng));
  EXPECT_EQ(ev.raw(g2).tensor, ev.exhaustive(g2).tensor);
}

TEST_P(OracleEquivalence, GluedTorus) {
  Evaluator ev(builtin_algebra(GetParam()));
  auto gl = glue_boundaries_mapped(build_cylinder(), 0, 1);
  for (auto d : {NS, R})
    for (int e : {1, -1}) {
      auto g = build_graph(gl.tri, torus_signs(gl, d, e));
      EXPECT_EQ(ev.raw(g).tensor, ev.exhaustive(g).tensor);
    }
}

TEST_P(OracleEquivalence, RandomSchedules) {
  // random orders can be wide; dim 2 keys have room for 24 legs
  Budget wide;
  wide.max_legs = 24;
  Evaluator ev(builtin_algebra(GetParam()), wide);
  std::mt19937_64 rng(1234);
  auto p = build_pair_of_pants();
  auto g = build_graph(p, random_signs(21, rng));
  auto ref = ev.raw(g).tensor;
  auto shape = network_shape(g);
  for (int trial = 0; trial < 6; ++trial) {
    auto sch = random_schedule(shape, rng);
    EXPECT_EQ(ev.raw(g, sch).tensor, ref);
  }
  auto gl = glue_boundaries_mapped(build_cylinder(), 0, 1);
  auto gt = build_graph(gl.tri, torus_signs(gl, R, 1));
  auto st = network_shape(gt);
  auto tref = ev.raw(gt).tensor;
  for (int trial = 0; trial < 6; ++trial) {
    EXPECT_EQ(ev.raw(gt, random_schedule(st, rng)).tensor, tref);
  }
}

INSTANTIATE_TEST_SUITE_P(DimTwo, OracleEquivalence, ::testing::Values("clifford", "split-2"));

TEST(Eval, CliffordTorusTable) {
  Evaluator ev(builtin_clifford());
  auto gl = glue_boundaries_mapped(build_cylinder(), 0, 1);
  std::map<std::pair<BoundaryType, int>, int> expect = {{{NS, 1}, 1}, {{NS, -1}, 1}, {{R, 1}, -1}, {{R, -1}, 1}};
  for (auto [key, v] : expect) {
    auto s = torus_signs(gl, key.first, key.second);
    auto a = ev.evaluate(gl.tri, s, {});
    ASSERT_TRUE(a.is_scalar());
    EXPECT_EQ(a.scalar(), Scalar(v)) << type_name(key.first) << key.second;
  }
}

TEST(Eval, TwistedMatrixTorusAllOne) {
  Evaluator ev(builtin_algebra("twisted-matrix-3-f3"));
  auto gl = glue_boundaries_mapped(build_cylinder(), 0, 1);
  for (auto d : {NS, R})
    for (int e : {1, -1}) EXPECT_TRUE(ev.evaluate(gl.tri, torus_signs(gl, d, e), {}).scalar().is_one());
}

TEST(Eval, CliffordArfScaling) {
  Evaluator ev(builtin_clifford());
  auto sphere = genus_g_closed(0);
  auto cs = classify_spin_structures(sphere);
  ASSERT_EQ(cs.representatives.size(), 1u);
  EXPECT_EQ(ev.evaluate(sphere, cs.representatives[0], {}).scalar(), Scalar(2));

  for (int g = 1; g <= 2; ++g) {
    auto tri = genus_g_closed(g);
    auto classes = classify_spin_structures(tri);
    Rational scale = g == 1 ? Rational(1) : Rational(1, 2);
    std::map<int, int> by_arf;
    for (const auto& s : classes.representatives) {
      int arf = arf_by_count(tri, s);
      ++by_arf[arf];
      EXPECT_EQ(ev.evaluate(tri, s, {}).scalar(), Scalar(scale * arf));
    }
    if (g == 1) {
      EXPECT_EQ(by_arf[1], 3);
      EXPECT_EQ(by_arf[-1], 1);
    } else {
      EXPECT_EQ(by_arf[1], 10);
      EXPECT_EQ(by_arf[-1], 6);
    }
  }
}

TEST(Eval, RefusesBadInput) {
  Evaluator ev(builtin_clifford());
  auto c = build_cylinder();
  auto s = cylinder_signs(NS, 1);
  s[6] = 1;
  EXPECT_THROW(ev.evaluate(c, s, {NS, NS}), std::invalid_argument);
  EXPECT_NO_THROW(ev.raw(c, s));
}

TEST(Eval, SymmetricAlgebraIgnoresSpin) {
  // N = id: every spin structure gives the same number.
  Evaluator ev(builtin_algebra("twisted-matrix-2-q"));
  auto tri = genus_g_closed(1);
  auto cs = classify_spin_structures(tri);
  Scalar first = ev.evaluate(tri, cs.representatives[0], {}).scalar();
  for (const auto& s : cs.representatives) EXPECT_EQ(ev.evaluate(tri, s, {}).scalar(), first);
  // and any admissible representative inside a class
  auto sols = enumerate_admissible(tri, {});
  for (std::size_t i = 0; i < sols.size(); i += std::max<std::size_t>(1, sols.size() / 16))
    EXPECT_EQ(ev.evaluate(tri, sols[i], {}).scalar(), first);
}

TEST(Eval, MarkingMovesKeepAmplitude) {
  Evaluator ev(builtin_clifford());
  auto c = build_cylinder();
  auto s = cylinder_signs(R, -1);
  auto ref = ev.evaluate(c, s, {R, R}).tensor;
  std::mt19937_64 rng(9);
  auto cur = std::make_pair(c, s);
  for (int step = 0; step < 20; ++step) {
    int kind = 1 + static_cast<int>(rng() % 3);
    MarkingMove m{static_cast<MarkingMoveKind>(kind), 0};
    if (kind == 2) {
      std::vector<int> inner;
      for (int e = 0; e < c.num_edges(); ++e)
        if (!cur.first.is_boundary_edge(e)) inner.push_back(e);
      m.target = inner[rng() % inner.size()];
    } else {
      m.target = static_cast<int>(rng() % c.num_triangles());
    }
    cur = apply_marking_move(cur.first, cur.second, m);
    ASSERT_TRUE(is_admissible(cur.first, cur.second, {R, R}));
    EXPECT_EQ(ev.evaluate(cur.first, cur.second, {R, R}).tensor, ref) << "step " << step;
  }
}

class Relations : public ::testing::TestWithParam<std::string> {};

TEST_P(Relations, AllHold) {
  Evaluator ev(builtin_algebra(GetParam()));
  auto checks = check_relations(ev);
  ASSERT_EQ(checks.size(), 5u);
  for (const auto& c : checks) EXPECT_TRUE(c.holds) << c.relation << " " << c.label;
}

INSTANTIATE_TEST_SUITE_P(Builtins, Relations, ::testing::ValuesIn(builtin_algebra_names()),
                         [](const auto& info) {
                           std::string s = info.param;
                           std::replace(s.begin(), s.end(), '-', '_');
                           return s;
                         });
