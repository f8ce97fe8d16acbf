#pragma once

// Seeded instance generators.
//
// Randomness is pinned: std::mt19937_64 (its output sequence is fixed by the
// C++ standard) seeded with the 64-bit seed, bounded integers by rejection
// sampling, and Fisher-Yates shuffles running from the last position down.
// The standard distributions and std::shuffle are avoided because their
// output differs between standard libraries.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "lattice2d.hpp"

namespace lattice_rearrange {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % bound;
    }
  }

  template <typename T>
  void shuffle(T* first, std::size_t count) {
    for (std::size_t i = count; i > 1; --i) std::swap(first[i - 1], first[below(i)]);
  }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    shuffle(v.data(), v.size());
  }

private:
  std::mt19937_64 engine_;
};

// Independent seed for trial `index` of a batch seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace detail {

inline std::vector<int> identity_labels(int n) {
  std::vector<int> pi(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pi[i] = i + 1;
  return pi;
}

inline void require_positive(int v, const char* what) {
  if (v < 1) throw invalid_instance(std::string(what) + " must be positive");
}

}  // namespace detail

inline Instance gen_uniform_permutation(int m, std::uint64_t seed) {
  detail::require_positive(m, "m");
  auto pi = detail::identity_labels(m);
  Rng(seed).shuffle(pi);
  return make_labeled(LatticeDims{m, 1}, std::move(pi));
}

// Each consecutive block of x cells is shuffled within itself; a short last
// block is shuffled the same way.
inline Instance gen_x_random(int m, int x, std::uint64_t seed) {
  detail::require_positive(m, "m");
  detail::require_positive(x, "x");
  auto pi = detail::identity_labels(m);
  Rng rng(seed);
  for (int lo = 0; lo < m; lo += x) rng.shuffle(pi.data() + lo, static_cast<std::size_t>(std::min(x, m - lo)));
  return make_labeled(LatticeDims{m, 1}, std::move(pi));
}

inline Instance gen_uniform_2d(int m1, int m2, std::uint64_t seed) {
  detail::require_positive(m1, "m1");
  detail::require_positive(m2, "m2");
  auto pi = detail::identity_labels(m1 * m2);
  Rng(seed).shuffle(pi);
  return make_labeled(LatticeDims{m1, m2}, std::move(pi));
}

// Labels shuffled within their home column. Column-major cells make every
// column a contiguous run.
inline Instance gen_column_random(int m1, int m2, std::uint64_t seed) {
  detail::require_positive(m1, "m1");
  detail::require_positive(m2, "m2");
  auto pi = detail::identity_labels(m1 * m2);
  Rng rng(seed);
  for (int c = 0; c < m2; ++c) rng.shuffle(pi.data() + static_cast<std::size_t>(c) * m1, static_cast<std::size_t>(m1));
  return make_labeled(LatticeDims{m1, m2}, std::move(pi));
}

// m x m lattice, labels shuffled within sqrt(m) x sqrt(m) blocks. Blocks are
// visited column-major.
inline Instance gen_block_random(int m, std::uint64_t seed) {
  detail::require_positive(m, "m");
  const int s = exact_sqrt(m);
  if (s == 0) throw rearrange_error("NotPerfectSquare", "block-random needs m to be a perfect square");
  const LatticeDims dims{m, m};
  auto pi = detail::identity_labels(m * m);
  Rng rng(seed);
  std::vector<int> cells;
  for (int bc = 0; bc < m / s; ++bc)
    for (int br = 0; br < m / s; ++br) {
      cells.clear();
      for (int c = 0; c < s; ++c)
        for (int r = 0; r < s; ++r) cells.push_back(dims.index(br * s + r + 1, bc * s + c + 1));
      std::vector<int> labels;
      for (int cell : cells) labels.push_back(pi[cell - 1]);
      rng.shuffle(labels);
      for (std::size_t j = 0; j < cells.size(); ++j) pi[cells[j] - 1] = labels[j];
    }
  return make_labeled(dims, std::move(pi));
}

struct GeneratedTyped {
  Instance instance;
  bool fallback = false;  // pattern A laid out as row-major runs
};

// Goal laid out by the pattern; start is a uniform shuffle of the goal.
// counts may be empty for patterns that fix their own counts.
inline GeneratedTyped gen_typed(LatticeDims dims, int k, const std::vector<int>& counts, const GoalPattern& pattern,
                                std::uint64_t seed) {
  check_dims(dims);
  if (k < 1) throw rearrange_error("BadCounts", "k must be positive");
  auto layout = layout_goal(dims, k, counts, pattern);
  auto start = layout.goal;
  Rng(seed).shuffle(start);
  return {make_typed(dims, std::move(start), layout.goal, k), layout.fallback};
}

// Equal counts (differing by at most one, larger counts first) summing to n.
inline std::vector<int> balanced_counts(int n, int k) {
  std::vector<int> counts(static_cast<std::size_t>(k), n / k);
  for (int t = 0; t < n % k; ++t) ++counts[t];
  return counts;
}

struct LatticePoint {
  int row = 0;
  int col = 0;
};

// Identity except that each point (row, col) exchanges the labels of cells
// (row, col) and (row, col + 1).
inline Instance gen_tsp_clusters(const std::vector<LatticePoint>& points, LatticeDims dims) {
  check_dims(dims);
  auto pi = detail::identity_labels(dims.size());
  std::vector<char> used(static_cast<std::size_t>(dims.size()) + 1, 0);
  for (const auto& p : points) {
    if (p.row <= 1 || p.row >= dims.m1 || p.col <= 1 || p.col >= dims.m2)
      throw rearrange_error("PointOnBoundary", "point (" + std::to_string(p.row) + ", " + std::to_string(p.col) +
                                                   ") is not strictly inside the lattice");
    const int a = dims.index(p.row, p.col);
    const int b = dims.index(p.row, p.col + 1);
    if (used[a] || used[b])
      throw rearrange_error("ClusterOverlap", "point (" + std::to_string(p.row) + ", " + std::to_string(p.col) +
                                                  ") overlaps another cluster");
    used[a] = used[b] = 1;
    std::swap(pi[a - 1], pi[b - 1]);
  }
  return make_labeled(dims, std::move(pi));
}

}  // namespace lattice_rearrange
