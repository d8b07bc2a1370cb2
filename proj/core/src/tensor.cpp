#include "spinsum/tensor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace spinsum {

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

int popparity(std::uint64_t x) { return std::popcount(x) & 1; }

// Sort by key, sum duplicates, drop zeros.
void merge_entries(std::vector<GradedTensor::Entry>& e) {
  std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t w = 0;
  for (std::size_t i = 0; i < e.size();) {
    std::size_t j = i + 1;
    Scalar acc = std::move(e[i].second);
    while (j < e.size() && e[j].first == e[i].first) acc += e[j++].second;
    if (!acc.is_zero()) {
      e[w].first = e[i].first;
      e[w].second = std::move(acc);
      ++w;
    }
    i = j;
  }
  e.resize(w);
}

}  // namespace

Budget Budget::from_env() {
  Budget b;
  if (const char* s = std::getenv("SPINSUM_MAX_LEGS")) b.max_legs = std::atoi(s);
  if (const char* s = std::getenv("SPINSUM_MAX_ENTRIES")) b.max_entries = std::strtoull(s, nullptr, 10);
  return b;
}

int max_legs_for_dim(int dim) {
  if (dim <= 1) return 64;
  // largest n with dim^n - 1 fitting in 64 bits
  int n = 0;
  long double acc = 1;
  while (acc * dim <= 18446744073709551615.0L && n < 64) {
    acc *= dim;
    ++n;
  }
  return n;
}

GradedTensor::GradedTensor(int dim, std::vector<std::uint8_t> parity, std::vector<LegDir> legs, Field f)
    : dim_(dim), parity_(std::move(parity)), legs_(std::move(legs)), field_(f) {
  if (static_cast<int>(parity_.size()) != dim_) throw std::invalid_argument("parity vector does not match dimension");
  if (num_legs() > max_legs_for_dim(dim_)) throw BudgetExceeded("too many legs for a 64-bit key");
}

GradedTensor GradedTensor::like(const GradedTensor& shape, std::vector<LegDir> legs) {
  return GradedTensor(shape.dim_, shape.parity_, std::move(legs), shape.field_);
}

std::uint64_t GradedTensor::encode(const std::vector<int>& idx) const {
  if (static_cast<int>(idx.size()) != num_legs()) throw std::invalid_argument("index length does not match legs");
  std::uint64_t k = 0;
  for (int i : idx) {
    if (i < 0 || i >= dim_) throw std::out_of_range("basis index out of range");
    k = k * dim_ + i;
  }
  return k;
}

std::vector<int> GradedTensor::decode(std::uint64_t key) const {
  std::vector<int> idx(legs_.size());
  for (int i = num_legs() - 1; i >= 0; --i) {
    idx[i] = static_cast<int>(key % dim_);
    key /= dim_;
  }
  return idx;
}

int GradedTensor::key_parity(std::uint64_t key) const {
  int p = 0;
  for (int i = 0; i < num_legs(); ++i) {
    p ^= parity_[key % dim_];
    key /= dim_;
  }
  return p;
}

void GradedTensor::normalize() {
  for (auto& [k, v] : entries_) v = v.to(field_);
  merge_entries(entries_);
}

void GradedTensor::set_entries(std::vector<Entry> e) {
  entries_ = std::move(e);
  normalize();
}

Scalar GradedTensor::at_key(std::uint64_t key) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                             [](const Entry& e, std::uint64_t k) { return e.first < k; });
  if (it != entries_.end() && it->first == key) return it->second;
  return Scalar::in(field_, 0);
}

Scalar GradedTensor::at(const std::vector<int>& idx) const { return at_key(encode(idx)); }

Scalar GradedTensor::scalar() const {
  if (num_legs() != 0) throw std::logic_error("tensor has open legs");
  return at_key(0);
}

GradedTensor GradedTensor::permuted(const std::vector<int>& perm) const {
  const int n = num_legs();
  if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("permutation size mismatch");
  std::vector<int> seen(n, 0);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p]++) throw std::invalid_argument("not a permutation");
  }
  std::vector<LegDir> nl(n);
  for (int i = 0; i < n; ++i) nl[perm[i]] = legs_[i];
  std::vector<std::uint64_t> inv(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (perm[i] > perm[j]) inv[i] |= std::uint64_t{1} << j;
  std::vector<std::uint64_t> pw(n);
  for (int i = 0; i < n; ++i) pw[i] = ipow(dim_, n - 1 - i);

  GradedTensor out(dim_, parity_, nl, field_);
  out.entries_.reserve(entries_.size());
  std::vector<int> digits(n);
  for (const auto& [k, v] : entries_) {
    std::uint64_t key = k, mask = 0;
    for (int i = n - 1; i >= 0; --i) {
      digits[i] = static_cast<int>(key % dim_);
      key /= dim_;
      if (parity_[digits[i]]) mask |= std::uint64_t{1} << i;
    }
    int s = 0;
    for (std::uint64_t m = mask; m; m &= m - 1) s ^= popparity(inv[std::countr_zero(m)] & mask);
    std::uint64_t nk = 0;
    for (int i = 0; i < n; ++i) nk += static_cast<std::uint64_t>(digits[i]) * pw[perm[i]];
    out.entries_.emplace_back(nk, s ? -v : v);
  }
  std::sort(out.entries_.begin(), out.entries_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

GradedTensor GradedTensor::scaled(const Scalar& s) const {
  GradedTensor out = *this;
  for (auto& [k, v] : out.entries_) v *= s;
  out.normalize();
  return out;
}

GradedTensor GradedTensor::operator+(const GradedTensor& o) const {
  if (o.dim_ != dim_ || o.legs_ != legs_) throw std::invalid_argument("tensor shapes differ");
  GradedTensor out = *this;
  out.entries_.insert(out.entries_.end(), o.entries_.begin(), o.entries_.end());
  out.normalize();
  return out;
}

GradedTensor GradedTensor::apply_leg_matrix(int leg, const Matrix& M) const {
  if (leg < 0 || leg >= num_legs()) throw std::out_of_range("leg out of range");
  if (M.rows() != dim_ || M.cols() != dim_) throw std::invalid_argument("matrix size mismatch");
  const std::uint64_t w = ipow(dim_, num_legs() - 1 - leg);
  GradedTensor out = *this;
  out.entries_.clear();
  for (const auto& [k, v] : entries_) {
    const int b = static_cast<int>((k / w) % dim_);
    const std::uint64_t base = k - static_cast<std::uint64_t>(b) * w;
    for (int a = 0; a < dim_; ++a) {
      if (M(a, b).is_zero()) continue;
      out.entries_.emplace_back(base + static_cast<std::uint64_t>(a) * w, M(a, b) * v);
    }
  }
  out.normalize();
  return out;
}

bool operator==(const GradedTensor& a, const GradedTensor& b) {
  if (a.dim_ != b.dim_ || a.legs_ != b.legs_ || a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    if (a.entries_[i].first != b.entries_[i].first) return false;
    if (!(a.entries_[i].second == b.entries_[i].second)) return false;
  }
  return true;
}

std::string GradedTensor::describe() const {
  std::ostringstream os;
  os << "tensor(dim=" << dim_ << ", legs=" << num_legs() << ", nnz=" << nnz() << ")";
  return os.str();
}

GradedTensor contract(const GradedTensor& X, const GradedTensor& Y, const std::vector<std::pair<int, int>>& pairs,
                      const Budget& budget) {
  if (X.dim() != Y.dim()) throw std::invalid_argument("contracting tensors over different algebras");
  const int d = X.dim();
  const int nx = X.num_legs(), ny = Y.num_legs(), np = static_cast<int>(pairs.size());
  std::vector<int> xpair(nx, -1), ypair(ny, -1);
  for (int i = 0; i < np; ++i) {
    auto [lx, ly] = pairs[i];
    if (lx < 0 || lx >= nx || ly < 0 || ly >= ny) throw std::out_of_range("contraction leg out of range");
    if (xpair[lx] >= 0 || ypair[ly] >= 0) throw std::invalid_argument("leg contracted twice");
    if (X.legs()[lx] == Y.legs()[ly]) throw std::invalid_argument("contracting two legs of the same direction");
    xpair[lx] = i;
    ypair[ly] = i;
  }
  const int rx = nx - np, ry = ny - np;
  const int limit = std::min(budget.max_legs, max_legs_for_dim(d));
  if (rx + ry > limit) throw BudgetExceeded("intermediate tensor would have " + std::to_string(rx + ry) + " legs");

  // target positions in the reordered leg list
  std::vector<int> tx(nx), ty(ny);
  std::vector<LegDir> out_legs;
  {
    int pos = 2 * np;
    for (int u = 0; u < nx; ++u) {
      if (xpair[u] >= 0) {
        tx[u] = 2 * xpair[u] + (X.legs()[u] == LegDir::In ? 0 : 1);
      } else {
        tx[u] = pos++;
        out_legs.push_back(X.legs()[u]);
      }
    }
    for (int v = 0; v < ny; ++v) {
      if (ypair[v] >= 0) {
        ty[v] = 2 * ypair[v] + (Y.legs()[v] == LegDir::In ? 0 : 1);
      } else {
        ty[v] = pos++;
        out_legs.push_back(Y.legs()[v]);
      }
    }
  }
  std::vector<std::uint64_t> invx(nx, 0), invy(ny, 0), cross(nx, 0);
  for (int u = 0; u < nx; ++u) {
    for (int w = u + 1; w < nx; ++w)
      if (tx[u] > tx[w]) invx[u] |= std::uint64_t{1} << w;
    for (int v = 0; v < ny; ++v)
      if (tx[u] > ty[v]) cross[u] |= std::uint64_t{1} << v;
  }
  for (int v = 0; v < ny; ++v)
    for (int w = v + 1; w < ny; ++w)
      if (ty[v] > ty[w]) invy[v] |= std::uint64_t{1} << w;

  const auto& par = X.parity();
  struct Pre {
    std::uint64_t ckey, rem, pmask, cmask;
    int sign;
  };
  auto prep = [&](const GradedTensor& T, const std::vector<int>& pair_of, const std::vector<std::uint64_t>& inv,
                  const std::vector<std::uint64_t>* cr) {
    const int n = T.num_legs();
    std::vector<Pre> out;
    out.reserve(T.nnz());
    std::vector<int> cdig(np);
    for (const auto& [k, v] : T.entries()) {
      Pre p{0, 0, 0, 0, 0};
      std::uint64_t key = k;
      std::vector<int> digits(n);
      for (int i = n - 1; i >= 0; --i) {
        digits[i] = static_cast<int>(key % d);
        key /= d;
      }
      for (int i = 0; i < n; ++i) {
        if (par[digits[i]]) p.pmask |= std::uint64_t{1} << i;
        if (pair_of[i] >= 0) {
          cdig[pair_of[i]] = digits[i];
        } else {
          p.rem = p.rem * d + digits[i];
        }
      }
      for (int i = 0; i < np; ++i) p.ckey = p.ckey * d + cdig[i];
      for (std::uint64_t m = p.pmask; m; m &= m - 1) {
        const int u = std::countr_zero(m);
        p.sign ^= popparity(inv[u] & p.pmask);
        if (cr) p.cmask ^= (*cr)[u];
      }
      out.push_back(p);
    }
    return out;
  };
  const auto px = prep(X, xpair, invx, &cross);
  const auto py = prep(Y, ypair, invy, nullptr);

  std::vector<std::uint32_t> yorder(py.size());
  for (std::size_t i = 0; i < yorder.size(); ++i) yorder[i] = static_cast<std::uint32_t>(i);
  std::sort(yorder.begin(), yorder.end(), [&](auto a, auto b) { return py[a].ckey < py[b].ckey; });

  const std::uint64_t shift = ipow(d, ry);
  GradedTensor out(d, X.parity(), out_legs, X.field());
  std::vector<GradedTensor::Entry> acc;
  const std::size_t compact_at = std::max<std::size_t>(1u << 20, std::min<std::size_t>(budget.max_entries, 1u << 24));
  const auto& xe = X.entries();
  const auto& ye = Y.entries();
  for (std::size_t i = 0; i < px.size(); ++i) {
    const Pre& a = px[i];
    auto lo = std::lower_bound(yorder.begin(), yorder.end(), a.ckey,
                               [&](std::uint32_t j, std::uint64_t k) { return py[j].ckey < k; });
    for (auto it = lo; it != yorder.end() && py[*it].ckey == a.ckey; ++it) {
      const Pre& b = py[*it];
      const int s = a.sign ^ b.sign ^ popparity(a.cmask & b.pmask);
      Scalar v = xe[i].second * ye[*it].second;
      if (s) v = -v;
      acc.emplace_back(a.rem * shift + b.rem, std::move(v));
      if (acc.size() >= compact_at) {
        merge_entries(acc);
        if (acc.size() > budget.max_entries) throw BudgetExceeded("intermediate tensor exceeds the entry budget");
      }
    }
  }
  merge_entries(acc);
  if (acc.size() > budget.max_entries) throw BudgetExceeded("intermediate tensor exceeds the entry budget");
  out.set_entries(std::move(acc));
  return out;
}

namespace {

GradedTensor from_morphism(const GradedFrobeniusAlgebra& A, const Morphism& m) {
  std::vector<LegDir> legs(m.out, LegDir::Out);
  legs.insert(legs.end(), m.in, LegDir::In);
  GradedTensor T(A.dim, A.parity, legs, A.field);
  const int d = A.dim;
  std::vector<GradedTensor::Entry> e;
  for (int r = 0; r < m.m.rows(); ++r) {
    for (int c = 0; c < m.m.cols(); ++c) {
      if (m.m(r, c).is_zero()) continue;
      std::uint64_t key = static_cast<std::uint64_t>(r);
      // input digits appended least significant first
      std::uint64_t cc = static_cast<std::uint64_t>(c);
      for (int i = 0; i < m.in; ++i) {
        key = key * d + cc % d;
        cc /= d;
      }
      e.emplace_back(key, m.m(r, c));
    }
  }
  T.set_entries(std::move(e));
  return T;
}

}  // namespace

GradedTensor tensor_of(const GradedFrobeniusAlgebra& A, const Morphism& m) { return from_morphism(A, m); }

GradedTensor covector_of(const GradedFrobeniusAlgebra& A, const Morphism& m) {
  if (m.out != 0) throw std::invalid_argument("covector_of needs a morphism to the unit");
  // undo the reversal so that T[a_1..a_n] = m(a_1 (x) .. (x) a_n)
  GradedTensor T(A.dim, A.parity, std::vector<LegDir>(m.in, LegDir::In), A.field);
  std::vector<GradedTensor::Entry> e;
  for (int c = 0; c < m.m.cols(); ++c)
    if (!m.m(0, c).is_zero()) e.emplace_back(static_cast<std::uint64_t>(c), m.m(0, c));
  T.set_entries(std::move(e));
  return T;
}

GradedTensor vector_of(const GradedFrobeniusAlgebra& A, const Morphism& m) {
  if (m.in != 0) throw std::invalid_argument("vector_of needs a morphism from the unit");
  return from_morphism(A, m);
}

}  // namespace spinsum
