#include "spinsum/tft.hpp"

#include <bit>
#include <stdexcept>

namespace spinsum {

namespace {


const Matrix& projector(const DerivedStructure& d, BoundaryType t) {
  return t == BoundaryType::NS ? d.q_plus.m : d.q_minus.m;
}

// Apply M (d x d) to one leg of a covector given as a 1 x d^k row:
// out(.., x, ..) = sum_y row(.., y, ..) M(y, x).
Matrix row_apply_leg(const Matrix& row, int d, int k, int leg, const Matrix& M) {
  Matrix out(1, row.cols(), row.field());
  std::size_t w = 1;
  for (int i = leg + 1; i < k; ++i) w *= d;
  for (int c = 0; c < row.cols(); ++c) {
    if (row(0, c).is_zero()) continue;
    const int y = static_cast<int>((c / w) % d);
    const std::size_t base = c - y * w;
    for (int x = 0; x < d; ++x)
      if (!M(y, x).is_zero()) out(0, static_cast<int>(base + x * w)) += row(0, c) * M(y, x);
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols(), a.field());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

// Delta o eta as a d^2 column.
Matrix copairing(const DerivedStructure& d) { return d.Delta.m * d.eta.m; }

}  // namespace

Projectors projectors(const GradedFrobeniusAlgebra& A, const DerivedStructure& d) {
  MorphismCalculus calc(A);
  Projectors p;
  p.P_NS = d.q_plus.m;
  p.P_R = d.q_minus.m;
  p.pi31 = calc.compose(d.mu, calc.compose(calc.tensor(calc.identity(), d.mu), calc.reverse3()));
  p.iota13 = calc.compose(calc.reverse3(), calc.compose(calc.tensor(calc.identity(), d.Delta), d.Delta));
  return p;
}

Projectors projectors(const GradedFrobeniusAlgebra& A) { return projectors(A, derive(A)); }

StateSpace split_idempotent(const Matrix& P, const std::vector<std::uint8_t>& parity) {
  StateSpace s;
  const int d = P.rows();
  const auto cols = P.pivot_columns();
  s.dim = static_cast<int>(cols.size());
  s.iota = Matrix(d, s.dim, P.field());
  for (int j = 0; j < s.dim; ++j) {
    for (int i = 0; i < d; ++i) s.iota(i, j) = P(i, cols[j]);
    s.parity.push_back(parity[cols[j]]);
  }
  if (s.dim == 0) {
    s.pi = Matrix(0, d, P.field());
    return s;
  }
  const auto rows = s.iota.transpose().pivot_columns();
  Matrix sq(s.dim, s.dim, P.field()), pr(s.dim, d, P.field());
  for (int a = 0; a < s.dim; ++a) {
    for (int j = 0; j < s.dim; ++j) sq(a, j) = s.iota(rows[a], j);
    for (int j = 0; j < d; ++j) pr(a, j) = P(rows[a], j);
  }
  s.pi = sq.inverse() * pr;
  return s;
}

StateSpace state_space(const GradedFrobeniusAlgebra& A, const DerivedStructure& d, BoundaryType type) {
  StateSpace s = split_idempotent(projector(d, type), A.parity);
  s.type = type;
  return s;
}

ZAlgebra z_algebra(const GradedFrobeniusAlgebra& A, const DerivedStructure& d) {
  const StateSpace sp[2] = {state_space(A, d, BoundaryType::NS), state_space(A, d, BoundaryType::R)};
  ZAlgebra z;
  z.k_plus = sp[0].dim;
  z.k_minus = sp[1].dim;
  const int n = z.dim();
  const int da = A.dim;
  z.parity = sp[0].parity;
  z.parity.insert(z.parity.end(), sp[1].parity.begin(), sp[1].parity.end());
  for (int v = 0; v < 2; ++v) {
    const int off = v == 0 ? 0 : z.k_plus;
    z.e[v] = Matrix(da, n, A.field);
    z.f[v] = Matrix(n, da, A.field);
    for (int j = 0; j < sp[v].dim; ++j) {
      for (int i = 0; i < da; ++i) {
        z.e[v](i, off + j) = sp[v].iota(i, j);
        z.f[v](off + j, i) = sp[v].pi(j, i);
      }
    }
  }
  auto prod = [](int a, int b) { return a == b ? 0 : 1; };  // index of alpha*beta
  z.mu = Matrix(n, n * n, A.field);
  z.Delta = Matrix(n * n, n, A.field);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      z.mu = z.mu + z.f[prod(a, b)] * d.mu.m * kron(z.e[a], z.e[b]);
      z.Delta = z.Delta + kron(z.f[a], z.f[b]) * d.Delta.m * z.e[prod(a, b)];
    }
  z.eta = z.f[0] * d.eta.m;
  z.eps = d.eps.m * z.e[0];
  z.N = z.f[0] * d.N.m * z.e[0] + z.f[1] * d.N.m * z.e[1];
  return z;
}

GradedFrobeniusAlgebra ZAlgebra::as_algebra(const std::string& name, Field field) const {
  GradedFrobeniusAlgebra Z;
  Z.name = name;
  Z.field = field;
  Z.dim = dim();
  Z.parity = parity;
  const int n = dim();
  Z.mu.assign(static_cast<std::size_t>(n) * n * n, Scalar::in(field, 0));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) Z.mu[(static_cast<std::size_t>(k) * n + i) * n + j] = mu(k, i * n + j);
  for (int i = 0; i < n; ++i) {
    Z.eta.push_back(eta(i, 0));
    Z.eps.push_back(eps(0, i));
  }
  return Z;
}

namespace {

Matrix chi(const DerivedStructure& d, const Matrix& P) { return d.mu.m * kron(P, P) * copairing(d); }

}  // namespace

Matrix chi_ns(const GradedFrobeniusAlgebra&, const DerivedStructure& d) { return chi(d, d.q_plus.m); }
Matrix chi_r(const GradedFrobeniusAlgebra&, const DerivedStructure& d) { return chi(d, d.q_minus.m); }

GradedTensor compose_blocks(const GradedFrobeniusAlgebra& A, const Matrix& C, int k, const Matrix& B, int m) {
  const int d = A.dim;
  std::vector<std::vector<std::pair<std::uint64_t, Scalar>>> rows(d);
  for (int x = 0; x < d; ++x)
    for (int c = 0; c < B.cols(); ++c)
      if (!B(x, c).is_zero()) rows[x].emplace_back(static_cast<std::uint64_t>(c), B(x, c));
  std::uint64_t block = 1;
  for (int i = 0; i < m; ++i) block *= d;
  GradedTensor T(d, A.parity, std::vector<LegDir>(k * m, LegDir::In), A.field);
  std::vector<GradedTensor::Entry> acc;
  std::vector<int> x(k);
  for (int c = 0; c < C.cols(); ++c) {
    if (C(0, c).is_zero()) continue;
    int cc = c;
    for (int i = k - 1; i >= 0; --i) {
      x[i] = cc % d;
      cc /= d;
    }
    // cartesian product over the block rows
    std::vector<std::size_t> it(k, 0);
    bool empty = false;
    for (int i = 0; i < k; ++i) empty |= rows[x[i]].empty();
    if (empty) continue;
    for (;;) {
      std::uint64_t key = 0;
      Scalar v = C(0, c);
      for (int i = 0; i < k; ++i) {
        const auto& [col, val] = rows[x[i]][it[i]];
        key = key * block + col;
        v *= val;
      }
      acc.emplace_back(key, std::move(v));
      int i = k - 1;
      while (i >= 0 && ++it[i] == rows[x[i]].size()) it[i--] = 0;
      if (i < 0) break;
    }
  }
  T.set_entries(std::move(acc));
  return T;
}

Amplitude cylinder_closed_form(const GradedFrobeniusAlgebra& A, BoundaryType delta, int eps) {
  return cylinder_closed_form(A, derive(A), delta, eps);
}

Amplitude cylinder_closed_form(const GradedFrobeniusAlgebra& A, const DerivedStructure& d, BoundaryType delta,
                               int eps) {
  const Projectors p = projectors(A, d);
  const Matrix M = projector(d, delta) * nakayama_power(d, -eps);
  const Matrix C = row_apply_leg(d.b.m, A.dim, 2, 0, M);
  Amplitude a;
  a.tensor = compose_blocks(A, C, 2, p.pi31.m, 3);
  a.types = {delta, delta};
  for (int b = 0; b < 2; ++b)
    for (int q = 0; q < 3; ++q) a.leg_meta.emplace_back(b, q);
  return a;
}

Amplitude pants_closed_form(const GradedFrobeniusAlgebra& A, BoundaryType d1, BoundaryType d2, BoundaryType d3,
                            int eps1, int eps2) {
  return pants_closed_form(A, derive(A), d1, d2, d3, eps1, eps2);
}

Amplitude pants_closed_form(const GradedFrobeniusAlgebra& A, const DerivedStructure& d, BoundaryType d1,
                            BoundaryType d2, BoundaryType d3, int eps1, int eps2) {
  if (nu(d1) * nu(d2) * nu(d3) != 1) throw std::invalid_argument("no spin structure: nu1 nu2 nu3 = -1");
  const Projectors p = projectors(A, d);
  MorphismCalculus calc(A);
  const Matrix bmu = calc.compose(d.b, calc.tensor(calc.identity(), d.mu)).m;
  Matrix C = row_apply_leg(bmu, A.dim, 3, 0, projector(d, d1) * nakayama_power(d, eps1));
  C = row_apply_leg(C, A.dim, 3, 1, projector(d, d2) * nakayama_power(d, eps2));
  C = row_apply_leg(C, A.dim, 3, 2, projector(d, d3));
  Amplitude a;
  a.tensor = compose_blocks(A, C, 3, p.pi31.m, 3);
  a.types = {d1, d2, d3};
  for (int b = 0; b < 3; ++b)
    for (int q = 0; q < 3; ++q) a.leg_meta.emplace_back(b, q);
  return a;
}

Scalar torus_closed_form(const GradedFrobeniusAlgebra& A, BoundaryType delta, int eps) {
  return torus_closed_form(A, derive(A), delta, eps);
}

Scalar torus_closed_form(const GradedFrobeniusAlgebra& A, const DerivedStructure& d, BoundaryType delta, int eps) {
  const Matrix M = projector(d, delta) * nakayama_power(d, -eps);
  const Matrix r = d.eps.m * d.mu.m * kron(M, Matrix::identity(A.dim, A.field)) * copairing(d);
  return r(0, 0);
}

Amplitude glue_amplitude(const Amplitude& T, int i, int j, int eps, const Evaluator& ev) {
  const int n = T.tensor.num_legs();
  if (n % 3 != 0) throw std::invalid_argument("amplitude legs do not come in boundary triples");
  const int B = n / 3;
  if (i == j) throw std::invalid_argument("cannot glue a boundary to itself");
  if (i < 0 || j < 0 || i >= B || j >= B) throw std::out_of_range("boundary index out of range");
  if (eps != 1 && eps != -1) throw std::invalid_argument("gluing sign must be +1 or -1");
  if (!T.types.empty() && T.types[i] != T.types[j]) throw std::invalid_argument("boundary types differ");

  const auto& A = ev.algebra();
  const int d = A.dim;
  const Morphism& c = eps > 0 ? ev.derived().c_plus : ev.derived().c_minus;
  // source order: six copairing outputs, then the remaining legs
  std::vector<int> target = {3 * i, 3 * j + 2, 3 * i + 1, 3 * j + 1, 3 * i + 2, 3 * j};
  std::vector<char> taken(n, 0);
  for (int t : target) taken[t] = 1;
  std::vector<int> rest;
  for (int p = 0; p < n; ++p)
    if (!taken[p]) rest.push_back(p);
  target.insert(target.end(), rest.begin(), rest.end());
  std::vector<std::uint64_t> inv(n, 0);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (target[u] > target[v]) inv[u] |= std::uint64_t{1} << v;

  GradedTensor out(d, A.parity, std::vector<LegDir>(n - 6, LegDir::In), A.field);
  std::vector<GradedTensor::Entry> acc;
  std::vector<int> a(n);
  for (const auto& [key, val] : T.tensor.entries()) {
    std::uint64_t k = key;
    for (int p = n - 1; p >= 0; --p) {
      a[p] = static_cast<int>(k % d);
      k /= d;
    }
    Scalar v = val;
    for (int q = 0; q < 3 && !v.is_zero(); ++q) v *= c.m(a[target[2 * q]] * d + a[target[2 * q + 1]], 0);
    if (v.is_zero()) continue;
    std::uint64_t mask = 0;
    for (int u = 0; u < n; ++u)
      if (A.parity[a[target[u]]]) mask |= std::uint64_t{1} << u;
    int s = 0;
    for (std::uint64_t m = mask; m; m &= m - 1) s ^= std::popcount(inv[std::countr_zero(m)] & mask) & 1;
    std::uint64_t rk = 0;
    for (int p : rest) rk = rk * d + a[p];
    acc.emplace_back(rk, s ? -v : v);
  }
  out.set_entries(std::move(acc));

  Amplitude g;
  g.tensor = std::move(out);
  for (int b = 0, nb = 0; b < B; ++b) {
    if (b == i || b == j) continue;
    if (!T.types.empty()) g.types.push_back(T.types[b]);
    for (int q = 0; q < 3; ++q) g.leg_meta.emplace_back(nb, q);
    ++nb;
  }
  return g;
}

Amplitude project_boundaries(const Amplitude& T, const BoundaryTypes& types, const Evaluator& ev) {
  return project_boundaries(T, types, ev, projectors(ev.algebra(), ev.derived()));
}

Amplitude project_boundaries(const Amplitude& T, const BoundaryTypes& types, const Evaluator& ev, const Projectors& p) {
  const int n = T.tensor.num_legs();
  const int B = static_cast<int>(types.size());
  if (n != 3 * B) throw std::invalid_argument("one boundary type per leg triple required");
  const auto& A = ev.algebra();
  const int d = A.dim;
  // per type: rows of F = iota13 o P indexed by the block value
  std::array<std::vector<std::vector<std::pair<int, Scalar>>>, 2> F;
  for (int t = 0; t < 2; ++t) {
    const Matrix m = p.iota13.m * (t == 0 ? p.P_NS : p.P_R);
    F[t].resize(m.rows());
    for (int r = 0; r < m.rows(); ++r)
      for (int x = 0; x < d; ++x)
        if (!m(r, x).is_zero()) F[t][r].emplace_back(x, m(r, x));
  }
  const std::uint64_t block = static_cast<std::uint64_t>(d) * d * d;
  GradedTensor out(d, A.parity, std::vector<LegDir>(B, LegDir::In), A.field);
  std::vector<GradedTensor::Entry> acc;
  std::vector<int> blk(B);
  for (const auto& [key, val] : T.tensor.entries()) {
    std::uint64_t k = key;
    bool dead = false;
    for (int b = B - 1; b >= 0; --b) {
      blk[b] = static_cast<int>(k % block);
      k /= block;
      dead |= F[types[b] == BoundaryType::NS ? 0 : 1][blk[b]].empty();
    }
    if (dead) continue;
    std::vector<std::size_t> it(B, 0);
    for (;;) {
      std::uint64_t rk = 0;
      Scalar v = val;
      for (int b = 0; b < B; ++b) {
        const auto& [x, f] = F[types[b] == BoundaryType::NS ? 0 : 1][blk[b]][it[b]];
        rk = rk * d + x;
        v *= f;
      }
      acc.emplace_back(rk, std::move(v));
      int b = B - 1;
      while (b >= 0 && ++it[b] == F[types[b] == BoundaryType::NS ? 0 : 1][blk[b]].size()) it[b--] = 0;
      if (b < 0) break;
    }
  }
  out.set_entries(std::move(acc));
  Amplitude r;
  r.tensor = std::move(out);
  r.types = types;
  for (int b = 0; b < B; ++b) r.leg_meta.emplace_back(b, 0);
  return r;
}

GradedFrobeniusAlgebra a_plus(const GradedFrobeniusAlgebra& A) {
  if (!A.field.is_rational() && A.field.p == 2) throw std::domain_error("pi_+ needs characteristic other than 2");
  const DerivedStructure d = derive(A);
  const Matrix pp = (Matrix::identity(A.dim, A.field) + d.N.m).scaled(Scalar::in(A.field, 1) / Scalar::in(A.field, 2));
  const StateSpace s = split_idempotent(pp, A.parity);
  const int n = s.dim;
  GradedFrobeniusAlgebra P;
  P.name = A.name + "+";
  P.field = A.field;
  P.dim = n;
  P.parity = s.parity;
  const Matrix m = s.pi * d.mu.m * kron(s.iota, s.iota);
  P.mu.assign(static_cast<std::size_t>(n) * n * n, Scalar::in(A.field, 0));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) P.mu[(static_cast<std::size_t>(k) * n + i) * n + j] = m(k, i * n + j);
  const Matrix et = s.pi * d.eta.m;
  const Matrix ep = d.eps.m * s.iota;
  for (int i = 0; i < n; ++i) {
    P.eta.push_back(et(i, 0));
    P.eps.push_back(ep(0, i));
  }
  return P;
}

SignSum statistical_sign_sum(const MarkedTriangulation& tri, const GradedFrobeniusAlgebra& A) {
  if (!tri.is_closed()) throw std::invalid_argument("sign scan needs a closed surface");
  if (!A.field.is_rational() && A.field.p == 2) throw std::domain_error("sign scan needs characteristic other than 2");
  const int E = tri.num_edges();
  if (E > 24) throw BudgetExceeded("sign scan over 2^" + std::to_string(E) + " assignments");
  Evaluator ev(A);
  const SpinClasses classes = classify_spin_structures(tri);
  SignSum r;
  r.raw_sum = Scalar::in(A.field, 0);
  r.per_class.assign(classes.representatives.size(), Scalar::in(A.field, 0));
  const DiagramGraph base = build_graph(tri, Signs(E, 1));
  for (std::uint64_t mbits = 0; mbits < (std::uint64_t{1} << E); ++mbits) {
    DiagramGraph g = base;
    for (int e = 0; e < E; ++e) g.sign[e] = (mbits >> e & 1) ? -1 : 1;
    const Scalar v = ev.raw(g).scalar();
    r.raw_sum += v;
    if (is_admissible(tri, g.sign, {})) {
      ++r.admissible;
      r.per_class[class_index(tri, classes, g.sign)] += v;
    } else if (!v.is_zero()) {
      ++r.nonadmissible_nonzero;
    }
  }
  Scalar w = r.raw_sum;
  for (int i = 0; i < tri.num_vertices(); ++i) w *= Scalar::in(A.field, 2);
  for (int e = 0; e < E; ++e) w /= Scalar::in(A.field, 2);
  r.weighted = w;
  return r;
}

Scalar a_plus_state_sum(const MarkedTriangulation& tri, const GradedFrobeniusAlgebra& A) {
  if (!tri.is_closed()) throw std::invalid_argument("oriented state sum needs a closed surface");
  Evaluator ev(a_plus(A));
  Scalar v = ev.raw(tri, Signs(tri.num_edges(), 1)).scalar();
  for (int i = 0; i < tri.num_vertices(); ++i) v *= Scalar::in(A.field, 2);
  return v;
}

}  // namespace spinsum
