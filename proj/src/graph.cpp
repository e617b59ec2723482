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

#include "eegid/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eegid/error.hpp"

namespace eegid::graph {

const char* node_metric_name(NodeMetric m) {
  switch (m) {
    case NodeMetric::kDegree: return "ND";
    case NodeMetric::kEigenvector: return "EC";
    case NodeMetric::kBetweenness: return "BC";
    case NodeMetric::kClustering: return "CC";
  }
  return "?";
}

std::optional<NodeMetric> parse_node_metric(std::string_view name) {
  if (name == "ND" || name == "nd") return NodeMetric::kDegree;
  if (name == "EC" || name == "ec") return NodeMetric::kEigenvector;
  if (name == "BC" || name == "bc") return NodeMetric::kBetweenness;
  if (name == "CC" || name == "cc") return NodeMetric::kClustering;
  return std::nullopt;
}

WeightedGraph::WeightedGraph(Matrix weights, std::vector<std::string> labels)
    : weights_(std::move(weights)), labels_(std::move(labels)) {
  const std::size_t n = weights_.rows();
  if (weights_.cols() != n) throw Error(Errc::kInvalidArgument, "weight matrix is not square");
  if (!labels_.empty() && labels_.size() != n) {
    throw Error(Errc::kInvalidArgument, "label count does not match node count");
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (weights_(a, a) != 0.0) throw Error(Errc::kInvalidArgument, "non-zero diagonal");
    for (std::size_t b = 0; b < n; ++b) {
      const double w = weights_(a, b);
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw Error(Errc::kInvalidArgument, "negative or non-finite weight");
      }
      if (w != weights_(b, a)) throw Error(Errc::kInvalidArgument, "weights not symmetric");
    }
  }
}

WeightedGraph WeightedGraph::from_connectivity(const fc::ConnectivityMatrix& c,
                                               std::vector<std::string> labels) {
  Matrix w = c.values;
  for (std::size_t a = 0; a < w.rows(); ++a) {
    w(a, a) = 0.0;
    if (c.metric == fc::Metric::kCor) {
      for (std::size_t b = 0; b < w.cols(); ++b) w(a, b) = std::abs(w(a, b));
    }
  }
  return WeightedGraph(std::move(w), std::move(labels));
}

NodeScoreVector node_degree(const WeightedGraph& g) {
  NodeScoreVector out{NodeMetric::kDegree, std::vector<double>(g.size(), 0.0)};
  for (std::size_t a = 0; a < g.size(); ++a) {
    double sum = 0.0;
    for (std::size_t b = 0; b < g.size(); ++b) {
      if (b != a) sum += g.weight(a, b);
    }
    out.scores[a] = sum;
  }
  return out;
}

NodeScoreVector eigenvector_centrality(const WeightedGraph& g, const PowerIterationOptions& options) {
  const std::size_t n = g.size();
  double shift = 0.0;
  for (double w : g.weights().values()) shift = std::max(shift, w);
  if (!(shift > 0.0)) throw Error(Errc::kZeroGraph, "all edge weights are zero");

  // The shift makes the Perron root strictly dominant in magnitude, so the
  // iteration cannot oscillate on bipartite structure.
  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> next(n);
  for (int it = 0; it < options.max_iterations; ++it) {
    double norm = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      double acc = shift * v[a];
      auto row = g.weights().row(a);
      for (std::size_t b = 0; b < n; ++b) acc += row[b] * v[b];
      next[a] = acc;
      norm += acc * acc;
    }
    norm = std::sqrt(norm);
    double change = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      next[a] /= norm;
      change = std::max(change, std::abs(next[a] - v[a]));
    }
    v.swap(next);
    if (change < options.tolerance) {
      return {NodeMetric::kEigenvector, std::move(v)};
    }
  }
  throw Error(Errc::kNoConvergence, "power iteration did not converge in " +
                                        std::to_string(options.max_iterations) + " iterations");
}

NodeScoreVector betweenness_centrality(const WeightedGraph& g) {
  const std::size_t n = g.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr double kRelTol = 1e-12;
  std::vector<double> score(n, 0.0);

  std::vector<double> dist(n), sigma(n), delta(n);
  std::vector<char> settled(n);
  std::vector<std::vector<std::size_t>> preds(n);
  std::vector<std::size_t> order;
  order.reserve(n);

  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(settled.begin(), settled.end(), 0);
    for (auto& p : preds) p.clear();
    order.clear();
    dist[s] = 0.0;
    sigma[s] = 1.0;

    // Dense Dijkstra: the graphs are small and nearly complete.
    for (;;) {
      std::size_t v = n;
      for (std::size_t u = 0; u < n; ++u) {
        if (!settled[u] && dist[u] < kInf && (v == n || dist[u] < dist[v])) v = u;
      }
      if (v == n) break;
      settled[v] = 1;
      order.push_back(v);
      for (std::size_t w = 0; w < n; ++w) {
        const double weight = g.weight(v, w);
        if (w == v || settled[w] || weight <= 0.0) continue;
        const double alt = dist[v] + 1.0 / weight;
        if (dist[w] == kInf) {
          dist[w] = alt;
          sigma[w] = sigma[v];
          preds[w] = {v};
        } else if (std::abs(alt - dist[w]) <= kRelTol * std::max(alt, dist[w])) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        } else if (alt < dist[w]) {
          dist[w] = alt;
          sigma[w] = sigma[v];
          preds[w] = {v};
        }
      }
    }

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::size_t w = *it;
      for (std::size_t v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) score[w] += delta[w];
    }
  }
  // Each unordered pair was visited from both endpoints.
  for (double& v : score) v *= 0.5;
  return {NodeMetric::kBetweenness, std::move(score)};
}

NodeScoreVector clustering_coefficient(const WeightedGraph& g) {
  const std::size_t n = g.size();
  double w_max = 0.0;
  for (double w : g.weights().values()) w_max = std::max(w_max, w);
  if (!(w_max > 0.0)) throw Error(Errc::kZeroGraph, "all edge weights are zero");

  Matrix root(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) root(a, b) = std::cbrt(g.weight(a, b) / w_max);
  }
  const auto degree = node_degree(g).scores;
  NodeScoreVector out{NodeMetric::kClustering, std::vector<double>(n, 0.0)};
  for (std::size_t u = 0; u < n; ++u) {
    const double denom = degree[u] * (degree[u] - 1.0);
    if (denom < 1e-12) continue;
    double sum = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      if (m == u) continue;
      for (std::size_t k = m + 1; k < n; ++k) {
        if (k == u) continue;
        sum += root(u, m) * root(u, k) * root(m, k);
      }
    }
    out.scores[u] = 2.0 * sum / denom;  // ordered pairs (m, k) and (k, m)
  }
  return out;
}

NodeScoreVector node_scores(const WeightedGraph& g, NodeMetric metric) {
  switch (metric) {
    case NodeMetric::kDegree: return node_degree(g);
    case NodeMetric::kEigenvector: return eigenvector_centrality(g);
    case NodeMetric::kBetweenness: return betweenness_centrality(g);
    case NodeMetric::kClustering: return clustering_coefficient(g);
  }
  throw Error(Errc::kInvalidArgument, "unknown node metric");
}

}  // namespace eegid::graph
