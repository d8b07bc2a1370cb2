#pragma once

#include "spinsum/scalar.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace spinsum {

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, Field f = {});

  static Matrix identity(int n, Field f = {});

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Field field() const { return field_; }

  Scalar& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Scalar& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& s) const;
  Matrix transpose() const;
  bool is_zero() const;
  friend bool operator==(const Matrix& a, const Matrix& b);

  int rank() const;
  // Throws std::domain_error when singular.
  Matrix inverse() const;
  // Indices of a maximal independent set of columns, leftmost first.
  std::vector<int> pivot_columns() const;

 private:
  int rows_ = 0, cols_ = 0;
  Field field_;
  std::vector<Scalar> data_;
};

// Linear map A^{(x)in} -> A^{(x)out}; basis of A^{(x)k} is mixed radix with
// the first factor most significant.
struct Morphism {
  int in = 0;
  int out = 0;
  Matrix m;
};

struct GradedFrobeniusAlgebra {
  std::string name;
  Field field;
  int dim = 0;
  std::vector<std::uint8_t> parity;  // 0 even, 1 odd
  std::vector<Scalar> mu;            // mu[(k*dim + i)*dim + j] = coefficient of e_k in e_i e_j
  std::vector<Scalar> eta;
  std::vector<Scalar> eps;

  const Scalar& mu_at(int k, int i, int j) const { return mu[(static_cast<std::size_t>(k) * dim + i) * dim + j]; }
};

// Structural checks that do not need the pairing: sizes, parity of mu/eta/eps.
void check_shape(const GradedFrobeniusAlgebra& A);

struct DerivedStructure {
  Morphism mu, eta, eps;
  Morphism b;            // A(x)A -> 1
  Matrix b_inv;
  Morphism c_minus;      // 1 -> A(x)A
  Morphism c_plus;       // braid o c_minus
  Morphism Delta;
  Morphism N, N_inv;
  Morphism t;            // A(x)A(x)A -> 1, t = b o (mu (x) id)
  Morphism q_plus, q_minus;
};

// Throws std::domain_error when the pairing is degenerate.
DerivedStructure derive(const GradedFrobeniusAlgebra& A);

struct PredicateReport {
  bool associative = false;
  bool unital = false;
  bool parity_even = false;
  bool frobenius = false;
  bool delta_separable = false;
  bool nakayama_involution = false;
  bool nakayama_times_id_zero = false;
  bool symmetric = false;

  // The hypotheses under which the amplitude is a spin invariant.
  bool state_sum_ready() const {
    return associative && unital && parity_even && frobenius && delta_separable && nakayama_involution;
  }
};

PredicateReport validate_predicates(const GradedFrobeniusAlgebra& A);
PredicateReport validate_predicates(const GradedFrobeniusAlgebra& A, const DerivedStructure& d);

// Generic tensor calculus on morphisms of A.
class MorphismCalculus {
 public:
  explicit MorphismCalculus(const GradedFrobeniusAlgebra& A);

  int dim() const { return d_; }
  Field field() const { return f_; }
  int parity_of(std::size_t index, int legs) const;

  Morphism identity(int legs = 1) const;
  Morphism compose(const Morphism& g, const Morphism& f) const;  // g o f
  Morphism tensor(const Morphism& f, const Morphism& g) const;
  // Leg k of the input goes to output position perm[k]; Koszul signed.
  Morphism permutation(const std::vector<int>& perm) const;
  Morphism braid() const { return permutation({1, 0}); }
  Morphism reverse3() const { return permutation({2, 1, 0}); }
  Morphism scalar(const Scalar& s, int in, int out) const;

 private:
  int d_;
  Field f_;
  std::vector<std::uint8_t> parity_;
};

// f * g = mu o (f (x) g) o Delta
Matrix convolution(const GradedFrobeniusAlgebra& A, const DerivedStructure& d, const Matrix& f, const Matrix& g);
Matrix convolution(const GradedFrobeniusAlgebra& A, const Matrix& f, const Matrix& g);

// N_eps: identity for +1, N for -1.
Matrix nakayama_power(const DerivedStructure& d, int eps);

GradedFrobeniusAlgebra builtin_clifford(Field f = {});
// X is row-major n x n.
GradedFrobeniusAlgebra builtin_twisted_matrix(int n, Field f, const std::vector<Scalar>& X, const Scalar& lambda);
// k + k with idempotent basis and eps = (1, 1): trivially graded and symmetric.
GradedFrobeniusAlgebra builtin_split(Field f = {});

std::vector<std::string> builtin_algebra_names();
GradedFrobeniusAlgebra builtin_algebra(const std::string& name);

}  // namespace spinsum
