#include "costshare/metric.hpp"

#include <cmath>
#include <string>

namespace costshare {

DistanceMatrix DistanceMatrix::from_rows(const std::vector<std::vector<Money>>& rows) {
  DistanceMatrix d(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw InvalidInput("distance matrix row " + std::to_string(i) + " has " +
                         std::to_string(rows[i].size()) + " entries, expected " +
                         std::to_string(rows.size()));
    }
    for (std::size_t j = 0; j < rows.size(); ++j) d.at(i, j) = rows[i][j];
  }
  return d;
}

std::vector<std::vector<Money>> DistanceMatrix::rows() const {
  std::vector<std::vector<Money>> out(n_, std::vector<Money>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

DistanceMatrix shortest_path_closure(const Graph& graph) {
  const std::size_t n = graph.num_vertices;
  DistanceMatrix d(n, kInfinity);
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const Edge& edge = graph.edges[e];
    if (edge.u >= n || edge.v >= n) {
      throw InvalidInput("edge " + std::to_string(e) + " has an endpoint outside the graph");
    }
    if (!(edge.cost >= 0.0) || std::isinf(edge.cost)) {
      throw InvalidInput("edge " + std::to_string(e) + " has a negative or non-finite cost");
    }
    if (edge.cost < d(edge.u, edge.v)) {
      d.at(edge.u, edge.v) = edge.cost;
      d.at(edge.v, edge.u) = edge.cost;
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (d(i, k) == kInfinity) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const Money via = d(i, k) + d(k, j);
        if (via < d(i, j)) d.at(i, j) = via;
      }
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (d(i, j) == kInfinity) {
        throw InvalidInput("graph is disconnected: no path between vertices " +
                           std::to_string(i) + " and " + std::to_string(j));
      }
  return d;
}

void validate_metric(const DistanceMatrix& d, Money tolerance) {
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) throw InvalidInput("metric diagonal entry " + std::to_string(i) + " is nonzero");
    for (std::size_t j = 0; j < n; ++j) {
      if (!(d(i, j) >= 0.0) || std::isinf(d(i, j))) {
        throw InvalidInput("metric entry (" + std::to_string(i) + "," + std::to_string(j) +
                           ") is negative or not finite");
      }
      if (std::abs(d(i, j) - d(j, i)) > tolerance) {
        throw InvalidInput("metric is not symmetric at (" + std::to_string(i) + "," +
                           std::to_string(j) + ")");
      }
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d(i, j) > d(i, k) + d(k, j) + tolerance) {
          throw InvalidInput("triangle inequality fails for (" + std::to_string(i) + "," +
                             std::to_string(k) + "," + std::to_string(j) + ")");
        }
}

}  // namespace costshare
