#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace adelic {

// Incremental reduced echelon basis over F_p.
class FpSpan {
 public:
  FpSpan(std::uint32_t p, std::size_t d) : p_(p), d_(d) {}
  std::size_t dim() const { return rows_.size(); }
  const std::vector<std::vector<std::uint32_t>>& rows() const { return rows_; }

  // Reduces v in place against the basis; returns the first nonzero index or d.
  std::size_t reduce(std::vector<std::uint32_t>& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::uint32_t c = v[piv_[r]];
      if (!c) continue;
      for (std::size_t j = piv_[r]; j < d_; ++j)
        v[j] = static_cast<std::uint32_t>((v[j] + static_cast<std::uint64_t>(p_ - c) * rows_[r][j]) % p_);
    }
    for (std::size_t j = 0; j < d_; ++j)
      if (v[j]) return j;
    return d_;
  }
  bool contains(std::vector<std::uint32_t> v) const { return reduce(v) == d_; }
  // Adds v; returns true if it enlarged the span.
  bool add(std::vector<std::uint32_t> v) {
    std::size_t lead = reduce(v);
    if (lead == d_) return false;
    std::uint32_t inv = inv_mod(v[lead]);
    for (auto& x : v) x = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * inv % p_);
    for (auto& row : rows_) {
      std::uint32_t c = row[lead];
      if (!c) continue;
      for (std::size_t j = lead; j < d_; ++j)
        row[j] = static_cast<std::uint32_t>((row[j] + static_cast<std::uint64_t>(p_ - c) * v[j]) % p_);
    }
    auto pos = std::lower_bound(piv_.begin(), piv_.end(), lead) - piv_.begin();
    piv_.insert(piv_.begin() + pos, lead);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
  }

 private:
  std::uint32_t inv_mod(std::uint32_t a) const {
    std::uint64_t r = 1, b = a, e = p_ - 2;
    while (e) {
      if (e & 1) r = r * b % p_;
      b = b * b % p_;
      e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
  }
  std::uint32_t p_;
  std::size_t d_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<std::size_t> piv_;
};

}  // namespace adelic
