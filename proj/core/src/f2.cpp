#include "spinsum/f2.hpp"

#include <stdexcept>

namespace spinsum {

AffineSpace solve_f2(const std::vector<BitVec>& rows, const BitVec& rhs, std::size_t n) {
  if (rhs.size() != rows.size()) throw std::invalid_argument("rhs length mismatch");
  std::vector<BitVec> m = rows;
  BitVec b = rhs;
  for (auto& r : m)
    if (r.size() != n) throw std::invalid_argument("row length mismatch");

  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && !m[sel][col]) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    bool t = b[sel];
    b[sel] = b[row];
    b[row] = t;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r != row && m[r][col]) {
        m[r] ^= m[row];
        b[r] = b[r] ^ b[row];
      }
    }
    pivot_col.push_back(col);
    ++row;
  }

  AffineSpace out;
  out.rank = row;
  out.consistent = true;
  for (std::size_t r = row; r < m.size(); ++r)
    if (b[r]) out.consistent = false;
  if (!out.consistent) return out;

  out.particular = BitVec(n);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t r = 0; r < row; ++r) {
    is_pivot[pivot_col[r]] = true;
    out.particular[pivot_col[r]] = b[r];
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    BitVec k(n);
    k[f] = true;
    for (std::size_t r = 0; r < row; ++r)
      if (m[r][f]) k[pivot_col[r]] = true;
    out.kernel.push_back(std::move(k));
  }
  return out;
}

BitVec F2Span::reduce(BitVec v) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (v[pivots_[i]]) v ^= basis_[i];
  return v;
}

bool F2Span::insert(BitVec v) {
  if (v.size() != n_) throw std::invalid_argument("vector length mismatch");
  v = reduce(std::move(v));
  std::size_t p = v.find_first();
  if (p == BitVec::npos) return false;
  for (auto& b : basis_)
    if (b[p]) b ^= v;
  basis_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

}  // namespace spinsum
