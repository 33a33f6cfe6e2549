#pragma once

/// @file multi_index.hpp
/// @brief Graded-lexicographic multi-index enumeration shared by truncated
///        Taylor jets and moment arrays.
///
/// Multi-indices α = (α_0, …, α_{d−1}) with |α| = Σ α_i ≤ order are stored in
/// graded order: total degree ascending, and within one degree the first
/// exponent descending, recursively.  For d = 2, order 2 the sequence is
/// (0,0), (1,0), (0,1), (2,0), (1,1), (0,2).
///
/// Ranks are computed in O(d) from a binomial table, so index arithmetic
/// (α + β lookups during truncated multiplication) never hashes.  Tables are
/// cached per (dim, order) and shared; repeated-use shift rows for fixed
/// offsets β are cached inside the table.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "vmom/errors.hpp"

namespace vmom {

constexpr int kMaxJetDim = 6;
constexpr int kMaxJetOrder = 24;

/// Exact binomial coefficients C(n, k) for 0 ≤ n ≤ 48, returned as double
/// (all values are exactly representable well below 2^53).
inline double binomial(int n, int k) {
  static const auto table = [] {
    constexpr int N = 49;
    std::array<std::array<double, N>, N> c{};
    for (int i = 0; i < N; ++i) {
      c[i][0] = 1.0;
      for (int j = 1; j <= i; ++j)
        c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0.0);
    }
    return c;
  }();
  if (k < 0 || k > n || n < 0) return 0.0;
  return table[n][k];
}

/// Number of d-variable multi-indices with |α| ≤ g.
inline int count_upto_degree(int dim, int g) {
  if (g < 0) return 0;
  return static_cast<int>(binomial(g + dim, dim));
}

class MultiIndexTable {
 public:
  MultiIndexTable(int dim, int order) : dim_(dim), order_(order) {
    if (dim < 1 || dim > kMaxJetDim || order < 0 || order > kMaxJetOrder)
      throw config_error("multi-index table: unsupported dim/order");
    const int n = count_upto_degree(dim, order);
    exponents_.resize(static_cast<std::size_t>(n) * dim);
    degrees_.resize(n);
    prefix_counts_.resize(order + 2);
    for (int g = 0; g <= order + 1; ++g)
      prefix_counts_[g] = count_upto_degree(dim, g - 1);
    std::vector<int> e(dim, 0);
    int pos = 0;
    for (int g = 0; g <= order; ++g) enumerate_degree(g, 0, g, e, pos);
  }

  int dim() const { return dim_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(degrees_.size()); }

  /// First rank of total degree g (== number of indices with degree < g).
  int degree_offset(int g) const { return prefix_counts_[g]; }
  /// Number of indices with |α| ≤ g (a contiguous prefix of the table).
  int count_upto(int g) const {
    return g >= order_ ? size() : prefix_counts_[g + 1];
  }

  int degree(int rank) const { return degrees_[rank]; }
  const int* exponents(int rank) const {
    return exponents_.data() + static_cast<std::size_t>(rank) * dim_;
  }

  /// Rank of a multi-index (must satisfy |α| ≤ order).
  int rank(const int* alpha) const {
    int g = 0;
    for (int v = 0; v < dim_; ++v) g += alpha[v];
    int r = prefix_counts_[g];
    int rem = g;
    for (int v = 0; v < dim_ - 1; ++v) {
      // indices listed before alpha at this level have exponent > alpha[v]
      const int d_rest = dim_ - 1 - v;
      r += static_cast<int>(binomial(rem - alpha[v] - 1 + d_rest, d_rest));
      rem -= alpha[v];
    }
    return r;
  }

  /// Cached row of ranks rank(α_i + β) for all i with |α_i| ≤ order − |β|.
  /// Rows are built lazily and shared; safe for concurrent readers.
  const std::vector<std::int32_t>& shifted_ranks(int beta_rank) const {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = shift_rows_.find(beta_rank);
      if (it != shift_rows_.end()) return *it->second;
    }
    auto row = std::make_unique<std::vector<std::int32_t>>();
    const int gb = degree(beta_rank);
    const int n = count_upto(order_ - gb);
    row->resize(n);
    const int* beta = exponents(beta_rank);
    std::array<int, kMaxJetDim> sum{};
    for (int i = 0; i < n; ++i) {
      const int* a = exponents(i);
      for (int v = 0; v < dim_; ++v) sum[v] = a[v] + beta[v];
      (*row)[i] = rank(sum.data());
    }
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = shift_rows_.emplace(beta_rank, std::move(row));
    return *it->second;
  }

 private:
  void enumerate_degree(int g, int v, int rem, std::vector<int>& e, int& pos) {
    if (v == dim_ - 1) {
      e[v] = rem;
      for (int u = 0; u < dim_; ++u)
        exponents_[static_cast<std::size_t>(pos) * dim_ + u] = e[u];
      degrees_[pos] = g;
      ++pos;
      return;
    }
    for (int q = rem; q >= 0; --q) {
      e[v] = q;
      enumerate_degree(g, v + 1, rem - q, e, pos);
    }
  }

  int dim_;
  int order_;
  std::vector<int> exponents_;
  std::vector<int> degrees_;
  std::vector<int> prefix_counts_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::unique_ptr<std::vector<std::int32_t>>> shift_rows_;
};

/// Shared table registry; tables are immutable once built.
inline const MultiIndexTable& multi_index_table(int dim, int order) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<MultiIndexTable>> registry;
  const int key = dim * (kMaxJetOrder + 1) + order;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = registry.find(key);
  if (it == registry.end())
    it = registry.emplace(key, std::make_unique<MultiIndexTable>(dim, order))
             .first;
  return *it->second;
}

}  // namespace vmom
