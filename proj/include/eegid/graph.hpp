// Copyright 2026 The eegid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eegid/connectivity.hpp"
#include "eegid/matrix.hpp"

namespace eegid::graph {

enum class NodeMetric { kDegree, kEigenvector, kBetweenness, kClustering };

const char* node_metric_name(NodeMetric m);  // "ND", "EC", "BC", "CC"
std::optional<NodeMetric> parse_node_metric(std::string_view name);

// Undirected weighted graph: symmetric, non-negative, zero diagonal.
class WeightedGraph {
 public:
  // Throws kInvalidArgument when the matrix violates the invariants.
  explicit WeightedGraph(Matrix weights, std::vector<std::string> labels = {});

  // COR matrices are mapped through |rho|; PLV and PLI are used as is.
  static WeightedGraph from_connectivity(const fc::ConnectivityMatrix& c,
                                         std::vector<std::string> labels = {});

  std::size_t size() const { return weights_.rows(); }
  double weight(std::size_t a, std::size_t b) const { return weights_(a, b); }
  const Matrix& weights() const { return weights_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  Matrix weights_;
  std::vector<std::string> labels_;
};

struct NodeScoreVector {
  NodeMetric metric = NodeMetric::kDegree;
  std::vector<double> scores;
};

// d_m = sum over n != m of w(m, n).
NodeScoreVector node_degree(const WeightedGraph& g);

struct PowerIterationOptions {
  double tolerance = 1e-10;  // max-norm change between successive iterates
  int max_iterations = 10000;
};

// Dominant eigenvector by power iteration on W + s*I (s = largest weight),
// started from the normalized all-ones vector. Returned non-negative with
// unit Euclidean norm. Errors: kZeroGraph, kNoConvergence.
NodeScoreVector eigenvector_centrality(const WeightedGraph& g,
                                       const PowerIterationOptions& options = {});

// Fraction of shortest paths through each node, summed over unordered pairs
// of other nodes. Edge length is 1/w; zero-weight edges are absent; path
// lengths within a relative 1e-12 count as equal.
NodeScoreVector betweenness_centrality(const WeightedGraph& g);

// Weighted clustering with w_hat = w / w_max and d_u the node degree:
//   c(u) = sum_{m != n != u} (w_hat_um w_hat_un w_hat_mn)^(1/3) / (d_u (d_u - 1))
// Nodes with d_u (d_u - 1) below 1e-12 score 0. Errors: kZeroGraph.
NodeScoreVector clustering_coefficient(const WeightedGraph& g);

NodeScoreVector node_scores(const WeightedGraph& g, NodeMetric metric);

}  // namespace eegid::graph
