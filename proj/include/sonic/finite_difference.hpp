#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace sonic::detail {

/// Finite-difference weights for the derivative of order `order` at `z`
/// using arbitrary (distinct) nodes. Fornberg's recursion, so non-uniform
/// grids are handled without special cases.
inline std::vector<double> fd_weights(double z, std::span<const double> nodes, int order) {
  const std::size_t n = nodes.size();
  const std::size_t m = static_cast<std::size_t>(order);
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - z;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) {
          c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) {
        c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

/// First index of a `width`-point stencil centred on `i` and shifted to stay
/// inside [0, size).
inline std::size_t stencil_start(std::size_t i, std::size_t size, std::size_t width) {
  const std::size_t half = width / 2;
  std::size_t start = i > half ? i - half : 0;
  if (start + width > size) start = size - width;
  return start;
}

/// Derivative of sampled values at every node. width = 3 gives second-order
/// central differences with one-sided ends; width = 5 gives the fourth-order
/// central (4 non-zero weights on a uniform grid) stencil.
inline std::vector<double> gradient(std::span<const double> grid,
                                    std::span<const double> values,
                                    std::size_t width = 3) {
  const std::size_t n = grid.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t s = stencil_start(i, n, width);
    const auto w = fd_weights(grid[i], grid.subspan(s, width), 1);
    double acc = 0.0;
    for (std::size_t k = 0; k < width; ++k) acc += w[k] * values[s + k];
    out[i] = acc;
  }
  return out;
}

/// Index i with grid[i] <= x < grid[i+1], clamped to a valid interval.
inline std::size_t bracket_index(std::span<const double> grid, double x) {
  auto it = std::upper_bound(grid.begin(), grid.end(), x);
  std::size_t i = it == grid.begin() ? 0 : static_cast<std::size_t>(it - grid.begin()) - 1;
  return std::min(i, grid.size() - 2);
}

/// Local cubic Lagrange interpolation through the four nodes around x.
/// Reproduces node values exactly.
inline double cubic_interpolate(std::span<const double> grid,
                                std::span<const double> values, double x) {
  const std::size_t n = grid.size();
  const std::size_t i = bracket_index(grid, x);
  if (x == grid[i]) return values[i];
  if (x == grid[i + 1]) return values[i + 1];
  const std::size_t width = std::min<std::size_t>(4, n);
  const std::size_t s = i > 0 ? std::min(i - 1, n - width) : 0;
  const auto w = fd_weights(x, grid.subspan(s, width), 0);
  double acc = 0.0;
  for (std::size_t k = 0; k < width; ++k) acc += w[k] * values[s + k];
  return acc;
}

}  // namespace sonic::detail
