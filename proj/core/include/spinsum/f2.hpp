#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <vector>

namespace spinsum {

using BitVec = boost::dynamic_bitset<>;

// Solution set of a linear system over F_2.
struct AffineSpace {
  bool consistent = false;
  BitVec particular;
  std::vector<BitVec> kernel;
  std::size_t rank = 0;

  std::size_t dimension() const { return kernel.size(); }
};

AffineSpace solve_f2(const std::vector<BitVec>& rows, const BitVec& rhs, std::size_t n);

// Incrementally built subspace kept in reduced echelon form.
class F2Span {
 public:
  explicit F2Span(std::size_t n) : n_(n) {}

  bool insert(BitVec v);
  BitVec reduce(BitVec v) const;
  bool contains(const BitVec& v) const { return reduce(v).none(); }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<BitVec>& basis() const { return basis_; }

 private:
  std::size_t n_;
  std::vector<BitVec> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace spinsum
