#pragma once

// Closed-form conditional likelihood ratio for a one-step change.
//
// Given G_M, the final graph under "change at n-1" versus "no change" has
// likelihood ratio L = C1 * S with
//
//   S  = (1/N) sum_{v late} |C(v)| lambda_v X_v,
//   C1 = prod_{i=1..m} ((n-1) delta + 2m(n-2) + i - 1) / ((n-1) delta' + 2m(n-2) + i - 1),
//
// lambda_v the share of admissible orders of C(v) ending at v, and X_v the
// product of (j + delta') / (j + delta) over the degree increments that v
// caused on its neighbours. Every function is templated on the scalar so the
// same code runs in double at simulation scale and in exact rationals
// against the enumeration oracle.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pacd/components.hpp"
#include "pacd/rational.hpp"
#include "pacd/schedule.hpp"

namespace pacd {

namespace detail {

template <class Scalar>
Scalar degree_ratio_product(std::uint32_t from, std::uint32_t to_exclusive, const Scalar& delta,
                            const Scalar& delta_prime) {
  Scalar out(1);
  for (std::uint32_t j = from; j < to_exclusive; ++j) out *= (Scalar(j) + delta_prime) / (Scalar(j) + delta);
  return out;
}

/// X_v from a list of neighbour endpoints (with multiplicity).
template <class Scalar, class History>
Scalar x_from_neighbours(const History& g, std::vector<Vertex>& neighbours, const Scalar& delta,
                         const Scalar& delta_prime) {
  std::sort(neighbours.begin(), neighbours.end());
  Scalar out(1);
  for (std::size_t a = 0; a < neighbours.size();) {
    std::size_t b = a;
    while (b < neighbours.size() && neighbours[b] == neighbours[a]) ++b;
    const std::uint32_t deg = g.degree(neighbours[a]);
    const auto mult = static_cast<std::uint32_t>(b - a);
    out *= degree_ratio_product<Scalar>(deg - mult, deg, delta, delta_prime);
    a = b;
  }
  return out;
}

/// X_v for a vertex of degree m, whose neighbours are exactly its targets.
template <class Scalar, class History>
Scalar x_factor_minimal(const History& g, Vertex v, const Scalar& delta, const Scalar& delta_prime) {
  const std::uint32_t m = g.edges_per_vertex();
  if (m == 1) {
    const std::uint32_t deg = g.degree(g.target(v, 1));
    return (Scalar(deg - 1) + delta_prime) / (Scalar(deg - 1) + delta);
  }
  std::vector<Vertex> neighbours;
  neighbours.reserve(m);
  for (std::uint32_t i = 1; i <= m; ++i) neighbours.push_back(g.target(v, i));
  return x_from_neighbours<Scalar>(g, neighbours, delta, delta_prime);
}

}  // namespace detail

/// X_v = prod over distinct neighbours w of
/// prod_{j = deg_{G\v}(w)}^{deg_G(w) - 1} (j + delta') / (j + delta).
/// Parallel edges widen the j-range. Vertices of degree above m are
/// handled too (their attachers are found by a scan of later arrivals).
template <class Scalar, class History>
Scalar x_factor(const History& g, Vertex v, const Scalar& delta, const Scalar& delta_prime) {
  const std::uint32_t n = g.vertex_count();
  const std::uint32_t m = g.edges_per_vertex();
  if (v < 1 || v > n) throw invalid_config("vertex out of range");
  std::vector<Vertex> neighbours;
  if (v <= 2) {
    neighbours.insert(neighbours.end(), m, v == 1 ? 2U : 1U);
  } else {
    for (std::uint32_t i = 1; i <= m; ++i) neighbours.push_back(g.target(v, i));
  }
  if (g.degree(v) > m) {
    for (std::uint32_t t = std::max<std::uint32_t>(v + 1, 3); t <= n; ++t) {
      for (std::uint32_t i = 1; i <= m; ++i) {
        if (g.target(t, i) == v) neighbours.push_back(t);
      }
    }
  }
  return detail::x_from_neighbours<Scalar>(g, neighbours, delta, delta_prime);
}

template <class Scalar>
Scalar c1(std::uint32_t n, std::uint32_t m, const Scalar& delta, const Scalar& delta_prime) {
  Scalar out(1);
  const Scalar base(2ULL * m * (n - 2));
  for (std::uint32_t i = 1; i <= m; ++i) {
    const Scalar offset = base + Scalar(i - 1);
    out *= (Scalar(n - 1) * delta + offset) / (Scalar(n - 1) * delta_prime + offset);
  }
  return out;
}

template <class Scalar>
struct VertexContribution {
  Vertex vertex = 0;
  std::uint32_t component_size = 0;
  Scalar lambda{0};
  std::optional<Scalar> x;  // set whenever lambda > 0
};

template <class Scalar>
struct LikelihoodReport {
  std::uint32_t n = 0;
  std::uint32_t prefix_vertices = 0;  // M
  std::uint32_t late_count = 0;       // N
  Scalar s{0};
  Scalar c1{1};
  Scalar l{0};
  std::vector<VertexContribution<Scalar>> contributions;
  ComponentForest forest;
};

namespace detail {

/// S, optionally recording per-vertex contributions. Each component adds
/// |C| * (sum_v maximal_v X_v) / total; vertices with X_v == 1 are summed as
/// integers first so that delta' == delta gives exactly S = 1.
template <class Scalar, class History>
Scalar s_statistic_impl(const History& g, const ComponentForest& forest, const Scalar& delta,
                        const Scalar& delta_prime, std::vector<VertexContribution<Scalar>>* contributions) {
  const std::uint32_t late = forest.late_count();
  if (late == 0) throw invalid_config("S requires M < n");
  const std::uint32_t m = g.edges_per_vertex();
  Scalar sum(0);
  for (std::size_t k = 0; k < forest.size(); ++k) {
    const auto members = forest.members(k);
    const auto size = static_cast<std::uint32_t>(members.size());
    if (size == 1) {
      const Vertex v = members.front();
      const Scalar x = x_factor_minimal<Scalar>(g, v, delta, delta_prime);
      sum += x;
      if (contributions) contributions->push_back({v, 1, Scalar(1), x});
      continue;
    }
    const Component comp = extract_component(g, forest, k);
    const OrderCount counts = admissible_order_counts(comp);
    OrderCountInt unit_weight = 0;
    Scalar other_weight(0);
    for (std::size_t a = 0; a < size; ++a) {
      const Vertex v = comp.vertices[a];
      std::optional<Scalar> x;
      if (counts.maximal[a] != 0) {
        if (g.degree(v) != m) throw computation_error("vertex with successors counted as maximal");
        x = x_factor_minimal<Scalar>(g, v, delta, delta_prime);
        if (*x == Scalar(1)) {
          unit_weight += counts.maximal[a];
        } else {
          other_weight += scalar_from_count<Scalar>(counts.maximal[a]) * *x;
        }
      }
      if (contributions) {
        contributions->push_back(
            {v, size, scalar_from_count<Scalar>(counts.maximal[a]) / scalar_from_count<Scalar>(counts.total), x});
      }
    }
    sum += Scalar(size) * (scalar_from_count<Scalar>(unit_weight) + other_weight) /
           scalar_from_count<Scalar>(counts.total);
  }
  return sum / Scalar(late);
}

}  // namespace detail

template <class Scalar, class History>
Scalar s_statistic(const History& g, std::uint32_t prefix_vertices, const Scalar& delta, const Scalar& delta_prime) {
  const ComponentForest forest = late_components(g, prefix_vertices);
  return detail::s_statistic_impl<Scalar>(g, forest, delta, delta_prime, nullptr);
}

template <class Scalar, class History>
LikelihoodReport<Scalar> likelihood_ratio(const History& g, std::uint32_t prefix_vertices, const Scalar& delta,
                                          const Scalar& delta_prime) {
  LikelihoodReport<Scalar> report;
  report.n = g.vertex_count();
  report.prefix_vertices = prefix_vertices;
  report.forest = late_components(g, prefix_vertices);
  report.late_count = report.forest.late_count();
  report.s = detail::s_statistic_impl<Scalar>(g, report.forest, delta, delta_prime, &report.contributions);
  std::sort(report.contributions.begin(), report.contributions.end(),
            [](const auto& a, const auto& b) { return a.vertex < b.vertex; });
  report.c1 = c1<Scalar>(report.n, g.edges_per_vertex(), delta, delta_prime);
  report.l = report.c1 * report.s;
  return report;
}

/// Upper end of the X_v range for vertices of degree m:
/// max(1, ((m + delta') / (m + delta))^m).
inline double x_max(std::uint32_t m, double delta, double delta_prime) {
  double rho = 1.0;
  for (std::uint32_t i = 0; i < m; ++i) rho *= (m + delta_prime) / (m + delta);
  return std::max(1.0, rho);
}

}  // namespace pacd
