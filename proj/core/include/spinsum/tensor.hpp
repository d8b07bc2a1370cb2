#pragma once

#include "spinsum/algebra.hpp"
#include "spinsum/scalar.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spinsum {

enum class LegDir : std::uint8_t { Out, In };

struct Budget {
  int max_legs = 12;
  std::size_t max_entries = 100'000'000;

  // SPINSUM_MAX_LEGS / SPINSUM_MAX_ENTRIES override the defaults.
  static Budget from_env();
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sparse exact tensor over a graded algebra basis. Keys are mixed radix in
// the algebra dimension with leg 0 most significant; entries stay sorted
// by key with no zeros.
class GradedTensor {
 public:
  using Entry = std::pair<std::uint64_t, Scalar>;

  GradedTensor() = default;
  GradedTensor(int dim, std::vector<std::uint8_t> parity, std::vector<LegDir> legs, Field f);
  static GradedTensor like(const GradedTensor& shape, std::vector<LegDir> legs);

  int dim() const { return dim_; }
  int num_legs() const { return static_cast<int>(legs_.size()); }
  const std::vector<LegDir>& legs() const { return legs_; }
  const std::vector<std::uint8_t>& parity() const { return parity_; }
  Field field() const { return field_; }

  std::uint64_t encode(const std::vector<int>& idx) const;
  std::vector<int> decode(std::uint64_t key) const;
  int key_parity(std::uint64_t key) const;

  // Accumulates; call normalize() before reading.
  void add(std::uint64_t key, const Scalar& v) { entries_.emplace_back(key, v); }
  void normalize();
  void set_entries(std::vector<Entry> e);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }
  Scalar at(const std::vector<int>& idx) const;
  Scalar at_key(std::uint64_t key) const;
  // Value of a tensor with no legs.
  Scalar scalar() const;

  // Leg i moves to position perm[i]; graded components pick up Koszul signs.
  GradedTensor permuted(const std::vector<int>& perm) const;
  GradedTensor scaled(const Scalar& s) const;
  GradedTensor operator+(const GradedTensor& o) const;
  GradedTensor operator-(const GradedTensor& o) const { return *this + o.scaled(Scalar(-1)); }
  // new[.., a, ..] = sum_b M(a, b) old[.., b, ..] on one leg, unsigned.
  GradedTensor apply_leg_matrix(int leg, const Matrix& M) const;

  friend bool operator==(const GradedTensor& a, const GradedTensor& b);

  std::string describe() const;

 private:
  int dim_ = 0;
  std::vector<std::uint8_t> parity_;
  std::vector<LegDir> legs_;
  Field field_;
  std::vector<Entry> entries_;
};

int max_legs_for_dim(int dim);

// Outer product of X and Y followed by evaluation of each (X leg, Y leg)
// pair. The surviving legs are X's then Y's in their original order. Each
// pair is first moved to the front as (In leg, Out leg).
GradedTensor contract(const GradedTensor& X, const GradedTensor& Y, const std::vector<std::pair<int, int>>& pairs,
                      const Budget& budget = {});

// Tensor of a morphism A^{(x)in} -> A^{(x)out}: Out legs first, then In legs
// in reverse order.
GradedTensor tensor_of(const GradedFrobeniusAlgebra& A, const Morphism& m);
// Tensor with only In legs from a morphism to the unit: T[a] = m(a).
GradedTensor covector_of(const GradedFrobeniusAlgebra& A, const Morphism& m);
// Tensor with only Out legs from a morphism from the unit.
GradedTensor vector_of(const GradedFrobeniusAlgebra& A, const Morphism& m);

}  // namespace spinsum
