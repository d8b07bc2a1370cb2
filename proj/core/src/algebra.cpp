#include "spinsum/algebra.hpp"

#include <stdexcept>

namespace spinsum {

Matrix::Matrix(int rows, int cols, Field f)
    : rows_(rows), cols_(cols), field_(f), data_(static_cast<std::size_t>(rows) * cols, Scalar::in(f, 0)) {}

Matrix Matrix::identity(int n, Field f) {
  Matrix m(n, n, f);
  for (int i = 0; i < n; ++i) m(i, i) = Scalar::in(f, 1);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch in product");
  Matrix r(rows_, o.cols_, field_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Scalar& b = o(k, j);
        if (!b.is_zero()) r(i, j) += a * b;
      }
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch in sum");
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + o.scaled(Scalar(-1)); }

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix r = *this;
  for (auto& x : r.data_) x *= s;
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(cols_, rows_, field_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t i = 0; i < a.data_.size(); ++i)
    if (!(a.data_[i] == b.data_[i])) return false;
  return true;
}

namespace {

// Row reduces m in place; returns pivot columns.
std::vector<int> row_reduce(Matrix& m, Matrix* aug = nullptr) {
  std::vector<int> piv;
  int row = 0;
  for (int c = 0; c < m.cols() && row < m.rows(); ++c) {
    int sel = row;
    while (sel < m.rows() && m(sel, c).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    auto swap_rows = [&](Matrix& x) {
      for (int j = 0; j < x.cols(); ++j) std::swap(x(sel, j), x(row, j));
    };
    swap_rows(m);
    if (aug) swap_rows(*aug);
    Scalar inv = m(row, c).inverse();
    for (int j = 0; j < m.cols(); ++j) m(row, j) *= inv;
    if (aug)
      for (int j = 0; j < aug->cols(); ++j) (*aug)(row, j) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, c).is_zero()) continue;
      Scalar f = m(r, c);
      for (int j = 0; j < m.cols(); ++j) m(r, j) -= f * m(row, j);
      if (aug)
        for (int j = 0; j < aug->cols(); ++j) (*aug)(r, j) -= f * (*aug)(row, j);
    }
    piv.push_back(c);
    ++row;
  }
  return piv;
}

}  // namespace

int Matrix::rank() const {
  Matrix m = *this;
  return static_cast<int>(row_reduce(m).size());
}

std::vector<int> Matrix::pivot_columns() const {
  Matrix m = *this;
  return row_reduce(m);
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse of a non-square matrix");
  Matrix m = *this;
  Matrix inv = identity(rows_, field_);
  if (static_cast<int>(row_reduce(m, &inv).size()) != rows_) throw std::domain_error("singular matrix");
  return inv;
}

MorphismCalculus::MorphismCalculus(const GradedFrobeniusAlgebra& A) : d_(A.dim), f_(A.field), parity_(A.parity) {}

int MorphismCalculus::parity_of(std::size_t index, int legs) const {
  int p = 0;
  for (int l = 0; l < legs; ++l) {
    p ^= parity_[index % d_];
    index /= d_;
  }
  return p;
}

namespace {
int ipow(int d, int k) {
  int r = 1;
  while (k-- > 0) r *= d;
  return r;
}
}  // namespace

Morphism MorphismCalculus::identity(int legs) const { return {legs, legs, Matrix::identity(ipow(d_, legs), f_)}; }

Morphism MorphismCalculus::compose(const Morphism& g, const Morphism& f) const {
  if (g.in != f.out) throw std::invalid_argument("leg mismatch in composition");
  return {f.in, g.out, g.m * f.m};
}

Morphism MorphismCalculus::tensor(const Morphism& f, const Morphism& g) const {
  const int gi = ipow(d_, g.in), go = ipow(d_, g.out);
  Morphism r{f.in + g.in, f.out + g.out, Matrix(f.m.rows() * go, f.m.cols() * gi, f_)};
  for (int a = 0; a < f.m.rows(); ++a)
    for (int x = 0; x < f.m.cols(); ++x) {
      const Scalar& fa = f.m(a, x);
      if (fa.is_zero()) continue;
      const int px = parity_of(x, f.in);
      for (int b = 0; b < go; ++b)
        for (int y = 0; y < gi; ++y) {
          const Scalar& gb = g.m(b, y);
          if (gb.is_zero()) continue;
          Scalar v = fa * gb;
          if (px && (parity_of(b, g.out) ^ parity_of(y, g.in))) v = -v;
          r.m(a * go + b, x * gi + y) = v;
        }
    }
  return r;
}

Morphism MorphismCalculus::permutation(const std::vector<int>& perm) const {
  const int k = static_cast<int>(perm.size());
  const int n = ipow(d_, k);
  Morphism r{k, k, Matrix(n, n, f_)};
  std::vector<int> x(k), y(k);
  for (int idx = 0; idx < n; ++idx) {
    int rem = idx;
    for (int l = k - 1; l >= 0; --l) {
      x[l] = rem % d_;
      rem /= d_;
    }
    int sign = 0;
    for (int i = 0; i < k; ++i) {
      y[perm[i]] = x[i];
      for (int j = i + 1; j < k; ++j)
        if (perm[i] > perm[j]) sign ^= parity_[x[i]] & parity_[x[j]];
    }
    int out = 0;
    for (int l = 0; l < k; ++l) out = out * d_ + y[l];
    r.m(out, idx) = Scalar::in(f_, sign ? -1 : 1);
  }
  return r;
}

Morphism MorphismCalculus::scalar(const Scalar& s, int in, int out) const {
  if (in != 0 || out != 0) throw std::invalid_argument("scalar morphism must have no legs");
  Morphism r{0, 0, Matrix(1, 1, f_)};
  r.m(0, 0) = s.to(f_);
  return r;
}

void check_shape(const GradedFrobeniusAlgebra& A) {
  const int d = A.dim;
  if (d <= 0) throw std::invalid_argument("algebra dimension must be positive");
  if (static_cast<int>(A.parity.size()) != d) throw std::invalid_argument("parity vector has wrong length");
  for (auto p : A.parity)
    if (p > 1) throw std::invalid_argument("parity entries must be 0 or 1");
  if (A.mu.size() != static_cast<std::size_t>(d) * d * d) throw std::invalid_argument("mu has wrong size");
  if (static_cast<int>(A.eta.size()) != d || static_cast<int>(A.eps.size()) != d)
    throw std::invalid_argument("eta/eps have wrong size");
  auto in_field = [&](const Scalar& s) { return s.field() == A.field || s.field().is_rational(); };
  for (const auto& x : A.mu)
    if (!in_field(x)) throw std::invalid_argument("mu entry outside the algebra's field");
  for (int i = 0; i < d; ++i)
    if (!in_field(A.eta[i]) || !in_field(A.eps[i])) throw std::invalid_argument("eta/eps entry outside the field");
}

namespace {

bool parity_even(const GradedFrobeniusAlgebra& A) {
  const int d = A.dim;
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (!A.mu_at(k, i, j).is_zero() && ((A.parity[i] ^ A.parity[j]) != A.parity[k])) return false;
  for (int i = 0; i < d; ++i)
    if (A.parity[i] && (!A.eta[i].is_zero() || !A.eps[i].is_zero())) return false;
  return true;
}

}  // namespace

Matrix nakayama_power(const DerivedStructure& d, int eps) {
  return eps > 0 ? Matrix::identity(d.N.m.rows(), d.N.m.field()) : d.N.m;
}

DerivedStructure derive(const GradedFrobeniusAlgebra& A) {
  check_shape(A);
  const int d = A.dim;
  const Field f = A.field;
  MorphismCalculus C(A);
  DerivedStructure D;
  D.mu = {2, 1, Matrix(d, d * d, f)};
  D.eta = {0, 1, Matrix(d, 1, f)};
  D.eps = {1, 0, Matrix(1, d, f)};
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) D.mu.m(k, i * d + j) = A.mu_at(k, i, j).to(f);
  for (int i = 0; i < d; ++i) {
    D.eta.m(i, 0) = A.eta[i].to(f);
    D.eps.m(0, i) = A.eps[i].to(f);
  }
  D.b = C.compose(D.eps, D.mu);
  Matrix B(d, d, f);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) B(i, j) = D.b.m(0, i * d + j);
  if (B.rank() != d) throw std::domain_error("pairing b = eps o mu is degenerate");
  D.b_inv = B.inverse();
  D.c_minus = {0, 2, Matrix(d * d, 1, f)};
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) D.c_minus.m(j * d + k, 0) = D.b_inv(j, k);
  D.c_plus = C.compose(C.braid(), D.c_minus);
  auto id = C.identity();
  D.Delta = C.compose(C.tensor(D.mu, id), C.tensor(id, D.c_minus));
  D.N = C.compose(C.tensor(D.b, id), C.compose(C.tensor(id, C.braid()), C.tensor(id, D.c_minus)));
  D.N_inv = C.compose(C.tensor(id, D.b), C.compose(C.tensor(C.braid(), id), C.tensor(D.c_minus, id)));
  D.t = C.compose(D.b, C.tensor(D.mu, id));
  auto q = [&](int nu) {
    Morphism n{1, 1, nakayama_power(D, -nu)};
    return C.compose(D.mu, C.compose(C.braid(), C.compose(C.tensor(n, id), D.Delta)));
  };
  D.q_plus = q(1);
  D.q_minus = q(-1);
  return D;
}

Matrix convolution(const GradedFrobeniusAlgebra& A, const DerivedStructure& d, const Matrix& f, const Matrix& g) {
  MorphismCalculus C(A);
  return C.compose(d.mu, C.compose(C.tensor({1, 1, f}, {1, 1, g}), d.Delta)).m;
}

Matrix convolution(const GradedFrobeniusAlgebra& A, const Matrix& f, const Matrix& g) {
  return convolution(A, derive(A), f, g);
}

PredicateReport validate_predicates(const GradedFrobeniusAlgebra& A) { return validate_predicates(A, derive(A)); }

PredicateReport validate_predicates(const GradedFrobeniusAlgebra& A, const DerivedStructure& D) {
  MorphismCalculus C(A);
  auto id = C.identity();
  PredicateReport r;
  r.associative = C.compose(D.mu, C.tensor(D.mu, id)).m == C.compose(D.mu, C.tensor(id, D.mu)).m;
  r.unital = C.compose(D.mu, C.tensor(D.eta, id)).m == id.m && C.compose(D.mu, C.tensor(id, D.eta)).m == id.m;
  r.parity_even = parity_even(A);
  auto dm = C.compose(D.Delta, D.mu).m;
  r.frobenius = C.compose(C.tensor(id, D.mu), C.tensor(D.Delta, id)).m == dm &&
                C.compose(C.tensor(D.mu, id), C.tensor(id, D.Delta)).m == dm &&
                C.compose(C.tensor(D.Delta, id), D.Delta).m == C.compose(C.tensor(id, D.Delta), D.Delta).m &&
                C.compose(C.tensor(D.eps, id), D.Delta).m == id.m && C.compose(C.tensor(id, D.eps), D.Delta).m == id.m;
  r.delta_separable = C.compose(D.mu, D.Delta).m == id.m;
  r.nakayama_involution = (D.N.m * D.N.m) == id.m;
  r.nakayama_times_id_zero = convolution(A, D, D.N.m, id.m).is_zero();
  r.symmetric = C.compose(D.b, C.braid()).m == D.b.m;
  return r;
}

GradedFrobeniusAlgebra builtin_clifford(Field f) {
  if (f.p == 2) throw std::invalid_argument("the Clifford algebra needs characteristic other than 2");
  GradedFrobeniusAlgebra A;
  A.name = f.is_rational() ? "clifford" : "clifford-f" + std::to_string(f.p);
  A.field = f;
  A.dim = 2;
  A.parity = {0, 1};
  A.mu.assign(8, Scalar::in(f, 0));
  auto set = [&](int k, int i, int j) { A.mu[(k * 2 + i) * 2 + j] = Scalar::in(f, 1); };
  set(0, 0, 0);
  set(1, 0, 1);
  set(1, 1, 0);
  set(0, 1, 1);
  A.eta = {Scalar::in(f, 1), Scalar::in(f, 0)};
  A.eps = {Scalar::in(f, 2), Scalar::in(f, 0)};
  return A;
}

GradedFrobeniusAlgebra builtin_twisted_matrix(int n, Field f, const std::vector<Scalar>& Xv, const Scalar& lambda_in) {
  if (n <= 0) throw std::invalid_argument("matrix size must be positive");
  if (static_cast<int>(Xv.size()) != n * n) throw std::invalid_argument("X must have n*n entries");
  Matrix X(n, n, f);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) X(i, j) = Xv[i * n + j].to(f);
  Scalar lambda = lambda_in.to(f);
  if (lambda.is_zero()) throw std::invalid_argument("lambda must be non-zero");
  if (X.rank() != n) throw std::invalid_argument("X must be invertible");
  if (!(X * X == Matrix::identity(n, f).scaled(lambda))) throw std::invalid_argument("X^2 must equal lambda * 1");
  Scalar tr = Scalar::in(f, 0);
  for (int i = 0; i < n; ++i) tr += X(i, i);
  if (!(tr == lambda)) throw std::invalid_argument("tr X must equal lambda");

  GradedFrobeniusAlgebra A;
  A.name = "twisted-matrix-" + std::to_string(n) + "-" + f.name();
  A.field = f;
  const int d = n * n;
  A.dim = d;
  A.parity.assign(d, 0);
  A.mu.assign(static_cast<std::size_t>(d) * d * d, Scalar::in(f, 0));
  // basis E_ij at index i*n + j
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) A.mu[((i * n + l) * d + (i * n + j)) * d + (j * n + l)] = Scalar::in(f, 1);
  A.eta.assign(d, Scalar::in(f, 0));
  A.eps.assign(d, Scalar::in(f, 0));
  for (int i = 0; i < n; ++i) A.eta[i * n + i] = Scalar::in(f, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A.eps[i * n + j] = X(j, i);
  return A;
}

GradedFrobeniusAlgebra builtin_split(Field f) {
  GradedFrobeniusAlgebra A;
  A.name = "split-2";
  A.field = f;
  A.dim = 2;
  A.parity = {0, 0};
  A.mu.assign(8, Scalar::in(f, 0));
  A.mu[(0 * 2 + 0) * 2 + 0] = Scalar::in(f, 1);
  A.mu[(1 * 2 + 1) * 2 + 1] = Scalar::in(f, 1);
  A.eta = {Scalar::in(f, 1), Scalar::in(f, 1)};
  A.eps = {Scalar::in(f, 1), Scalar::in(f, 1)};
  return A;
}

std::vector<std::string> builtin_algebra_names() {
  return {"clifford", "twisted-matrix-3-f3", "twisted-matrix-2-q", "split-2"};
}

GradedFrobeniusAlgebra builtin_algebra(const std::string& name) {
  if (name == "clifford") return builtin_clifford();
  if (name == "split-2") return builtin_split();
  if (name == "twisted-matrix-3-f3") {
    Field f3 = Field::prime(3);
    std::vector<Scalar> X = {1, 0, 0, 0, 1, 0, 0, 0, -1};
    auto A = builtin_twisted_matrix(3, f3, X, 1);
    A.name = name;
    return A;
  }
  if (name == "twisted-matrix-2-q") {
    auto A = builtin_twisted_matrix(2, {}, {2, 0, 0, 2}, 4);
    A.name = name;
    return A;
  }
  if (name.rfind("clifford-f", 0) == 0) {
    std::uint32_t p = static_cast<std::uint32_t>(std::stoul(name.substr(10)));
    return builtin_clifford(Field::prime(p));
  }
  throw std::invalid_argument("unknown built-in algebra '" + name + "'");
}

}  // namespace spinsum
