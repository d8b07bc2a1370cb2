#pragma once

#include "spinsum/algebra.hpp"
#include "spinsum/eval.hpp"
#include "spinsum/spin.hpp"
#include "spinsum/surface.hpp"

#include <array>
#include <vector>

namespace spinsum {

struct Projectors {
  Matrix P_NS, P_R;
  Morphism pi31;    // A(x)A(x)A -> A
  Morphism iota13;  // A -> A(x)A(x)A
};

Projectors projectors(const GradedFrobeniusAlgebra& A, const DerivedStructure& d);
Projectors projectors(const GradedFrobeniusAlgebra& A);

// Image of P^delta with iota * pi = P and pi * iota = id.
struct StateSpace {
  BoundaryType type = BoundaryType::NS;
  int dim = 0;
  Matrix iota;  // d x dim, columns are pivot columns of P
  Matrix pi;    // dim x d
  std::vector<std::uint8_t> parity;
};

StateSpace state_space(const GradedFrobeniusAlgebra& A, const DerivedStructure& d, BoundaryType type);
// Same splitting for any idempotent.
StateSpace split_idempotent(const Matrix& P, const std::vector<std::uint8_t>& parity);

// Z = Z_+ (+) Z_-, basis: Z_+ first.
struct ZAlgebra {
  int k_plus = 0, k_minus = 0;
  int dim() const { return k_plus + k_minus; }
  std::vector<std::uint8_t> parity;
  std::array<Matrix, 2> e, f;  // index 0 is nu = +1; e: dim(A) x dim(Z), f: dim(Z) x dim(A)
  Matrix mu, eta, Delta, eps, N;

  GradedFrobeniusAlgebra as_algebra(const std::string& name, Field field) const;
};

ZAlgebra z_algebra(const GradedFrobeniusAlgebra& A, const DerivedStructure& d);

// Euler characters mu o (P (x) P) o Delta o eta as vectors in A.
Matrix chi_ns(const GradedFrobeniusAlgebra& A, const DerivedStructure& d);
Matrix chi_r(const GradedFrobeniusAlgebra& A, const DerivedStructure& d);

Amplitude cylinder_closed_form(const GradedFrobeniusAlgebra& A, BoundaryType delta, int eps);
Amplitude cylinder_closed_form(const GradedFrobeniusAlgebra& A, const DerivedStructure& d, BoundaryType delta, int eps);
// Throws std::invalid_argument when nu1 nu2 nu3 = -1.
Amplitude pants_closed_form(const GradedFrobeniusAlgebra& A, BoundaryType d1, BoundaryType d2, BoundaryType d3,
                            int eps1, int eps2);
Amplitude pants_closed_form(const GradedFrobeniusAlgebra& A, const DerivedStructure& d, BoundaryType d1,
                            BoundaryType d2, BoundaryType d3, int eps1, int eps2);
Scalar torus_closed_form(const GradedFrobeniusAlgebra& A, BoundaryType delta, int eps);
Scalar torus_closed_form(const GradedFrobeniusAlgebra& A, const DerivedStructure& d, BoundaryType delta, int eps);

// T o Gamma_{i,j,eps}: boundaries i and j (0-based) are joined by three
// copies of c_eps; the remaining legs keep their order.
Amplitude glue_amplitude(const Amplitude& T, int i, int j, int eps, const Evaluator& ev);

// T o (x)_i (iota13 o P^{delta_i}): one leg per boundary.
Amplitude project_boundaries(const Amplitude& T, const BoundaryTypes& types, const Evaluator& ev);
Amplitude project_boundaries(const Amplitude& T, const BoundaryTypes& types, const Evaluator& ev, const Projectors& p);

// Covector on k blocks of m legs: T[a] = sum_x C(x) prod_i B(x_i, a_i).
// B must be even; C is 1 x d^k.
GradedTensor compose_blocks(const GradedFrobeniusAlgebra& A, const Matrix& C, int k, const Matrix& B, int m);

// Image of pi_+ = (id + N)/2 with the restricted structure maps.
GradedFrobeniusAlgebra a_plus(const GradedFrobeniusAlgebra& A);

struct SignSum {
  Scalar weighted;                 // (1/2)^E 2^V sum_s T'(s)
  Scalar raw_sum;                  // sum_s T'(s)
  std::vector<Scalar> per_class;   // raw contributions by spin class
  std::size_t admissible = 0;
  std::size_t nonadmissible_nonzero = 0;
};

// Closed surfaces only. Throws std::domain_error in characteristic 2.
SignSum statistical_sign_sum(const MarkedTriangulation& tri, const GradedFrobeniusAlgebra& A);
// 2^V times the state sum of A_+ (all edge signs +1).
Scalar a_plus_state_sum(const MarkedTriangulation& tri, const GradedFrobeniusAlgebra& A);

}  // namespace spinsum
