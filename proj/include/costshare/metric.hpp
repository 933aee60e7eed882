#pragma once

#include <cstddef>
#include <vector>

#include "costshare/core.hpp"

namespace costshare {

using VertexId = std::size_t;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Money cost = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected graph with nonnegative edge costs.
struct Graph {
  std::size_t num_vertices = 0;
  std::vector<Edge> edges;

  friend bool operator==(const Graph&, const Graph&) = default;
};

// Dense symmetric distance matrix.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n, Money fill = 0.0) : n_(n), d_(n * n, fill) {
    for (std::size_t i = 0; i < n; ++i) d_[i * n + i] = 0.0;
  }
  // Row-major rows; every row must have n entries.
  static DistanceMatrix from_rows(const std::vector<std::vector<Money>>& rows);

  std::size_t size() const { return n_; }
  Money operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  Money& at(std::size_t i, std::size_t j) { return d_[i * n_ + j]; }
  std::vector<std::vector<Money>> rows() const;

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Money> d_;
};

// All-pairs shortest paths (Floyd-Warshall). Throws InvalidInput on negative
// costs, unknown endpoints, or a disconnected graph.
DistanceMatrix shortest_path_closure(const Graph& graph);

// Throws InvalidInput naming the first broken condition: negative entry,
// nonzero diagonal, asymmetry, or a triangle inequality violated by more
// than tolerance.
void validate_metric(const DistanceMatrix& d, Money tolerance = kEps);

}  // namespace costshare
