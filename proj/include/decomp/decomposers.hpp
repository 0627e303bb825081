#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "decomp/errors.hpp"
#include "decomp/metrics.hpp"
#include "decomp/model.hpp"
#include "decomp/rng.hpp"

namespace decomp {

// ---------------------------------------------------------------------------
// Trivial baselines
// ---------------------------------------------------------------------------

inline Decomposition decompose_monolith(const MonolithGraph& graph) {
  if (graph.size() == 0)
    throw DomainError(ErrorKind::empty_graph,
                      "graph '" + graph.name() + "' has no classes");
  return decomposition_from_assignment(
      graph, std::vector<std::size_t>(graph.size(), 0), "monolith");
}

inline Decomposition decompose_singletons(const MonolithGraph& graph) {
  if (graph.size() == 0)
    throw DomainError(ErrorKind::empty_graph,
                      "graph '" + graph.name() + "' has no classes");
  std::vector<std::size_t> assignment(graph.size());
  for (std::size_t i = 0; i < assignment.size(); ++i) assignment[i] = i;
  return decomposition_from_assignment(graph, assignment, "singletons");
}

namespace detail {

// Uniform assignment of n classes to k slots, then repair: every empty slot
// steals the highest-indexed class from the largest bucket, so all k slots
// end up non-empty (requires k <= n).
inline std::vector<std::size_t> random_assignment(std::size_t n, std::size_t k,
                                                  Rng& rng) {
  std::vector<std::size_t> assign(n);
  for (std::size_t i = 0; i < n; ++i)
    assign[i] = static_cast<std::size_t>(rng.below(k));
  std::vector<std::vector<std::size_t>> buckets(k);
  for (std::size_t i = 0; i < n; ++i) buckets[assign[i]].push_back(i);
  for (std::size_t b = 0; b < k; ++b) {
    if (!buckets[b].empty()) continue;
    std::size_t donor = k;
    for (std::size_t s = 0; s < k; ++s)
      if (donor == k || buckets[s].size() > buckets[donor].size()) donor = s;
    buckets[b].push_back(buckets[donor].back());
    buckets[donor].pop_back();
  }
  for (std::size_t b = 0; b < k; ++b)
    for (std::size_t i : buckets[b]) assign[i] = b;
  return assign;
}

}  // namespace detail

inline Decomposition decompose_random(const MonolithGraph& graph,
                                      std::size_t k, std::uint64_t seed) {
  if (k < 1 || k > graph.size())
    throw DomainError(ErrorKind::bad_k,
                      "k=" + std::to_string(k) + " is outside 1.." +
                          std::to_string(graph.size()));
  Rng rng(seed);
  return decomposition_from_assignment(
      graph, detail::random_assignment(graph.size(), k, rng), "random");
}

// ---------------------------------------------------------------------------
// Steepest-ascent hill climbing on structural modularity.
//
// State: one service id per class. Neighborhood: relocate a single class to
// another existing service or to a fresh one. Each iteration applies the best
// strictly improving relocation; the climb restarts from several random
// initial partitions and keeps the best local optimum.
// ---------------------------------------------------------------------------

struct HillClimbParams {
  std::size_t restarts = 20;
  std::size_t max_iterations = 0;  // 0 means 10 * |classes|
  std::optional<std::size_t> min_services;
  std::optional<std::size_t> max_services;
  std::uint64_t seed = 0;
};

namespace detail {

// Incremental SM evaluation for single-class relocations. Edge weights follow
// the default EdgePolicy (distinct static edges, self calls kept in
// cohesion). Internal aggregates (sizes, mu, gamma) are exact integers;
// per-candidate deltas are O(deg(class) + 1) after an O(M^2) refresh per
// applied move.
class HillClimbSearch {
 public:
  HillClimbSearch(const MonolithGraph& graph, std::size_t min_services,
                  std::size_t max_services)
      : n_(graph.size()),
        lo_(min_services),
        hi_(max_services),
        adj_(graph.size()),
        self_(graph.size(), 0),
        mu_(graph.size(), 0),
        size_(graph.size(), 0),
        gamma_(graph.size() * graph.size(), 0),
        row_term_(graph.size(), 0.0),
        wto_(graph.size(), 0) {
    for (const IndexedEdge& e : graph.indexed_edges()) {
      const std::int64_t w = sm_weight(e, SmSource::static_distinct);
      if (w == 0) continue;
      if (e.src == e.dst) {
        self_[e.src] += w;
      } else {
        adj_[e.src].push_back({e.dst, w});
        adj_[e.dst].push_back({e.src, w});
      }
    }
  }

  void reset(const std::vector<std::size_t>& assignment) {
    assign_ = assignment;
    std::fill(mu_.begin(), mu_.end(), 0);
    std::fill(size_.begin(), size_.end(), 0);
    std::fill(gamma_.begin(), gamma_.end(), 0);
    for (std::size_t c = 0; c < n_; ++c) {
      ++size_[assign_[c]];
      mu_[assign_[c]] += self_[c];
    }
    for (std::size_t c = 0; c < n_; ++c) {
      const std::size_t a = assign_[c];
      for (const auto& [nb, w] : adj_[c]) {
        if (nb < c) continue;  // count each undirected pair once
        const std::size_t b = assign_[nb];
        if (a == b)
          mu_[a] += w;
        else
          gamma(a, b) += w;
      }
    }
    active_.clear();
    for (std::size_t s = 0; s < n_; ++s)
      if (size_[s] > 0) active_.push_back(s);
    refresh_terms();
  }

  // Applies the best strictly improving relocation. Returns false when the
  // current assignment is a local optimum (or no legal move exists).
  bool step() {
    const double cur = scoh_sum_ / static_cast<double>(active_.size()) -
                       coupling_of(coupling_sum_, active_.size());
    const std::size_t kNone = static_cast<std::size_t>(-1);
    double best = cur + kMinGain;
    std::size_t best_class = kNone, best_target = kNone;
    bool best_fresh = false;

    for (std::size_t c = 0; c < n_; ++c) {
      const std::size_t a = assign_[c];
      touched_.clear();
      for (const auto& [nb, w] : adj_[c]) {
        const std::size_t s = assign_[nb];
        if (wto_[s] == 0) touched_.push_back(s);
        wto_[s] += w;
      }
      double w_total = 0.0;  // sum over touched s != a of wto[s] / m_s
      for (std::size_t s : touched_)
        if (s != a)
          w_total += static_cast<double>(wto_[s]) /
                     static_cast<double>(size_[s]);

      const std::size_t m_a = size_[a];
      const std::size_t m_a_new = m_a - 1;
      const double mu_a_out =
          static_cast<double>(mu_[a] - wto_[a] - self_[c]);
      const double scoh_base =
          scoh_sum_ - scoh_of(mu_[a], m_a) +
          (m_a_new > 0 ? mu_a_out / square(m_a_new) : 0.0);

      for (std::size_t t : active_) {
        if (t == a) continue;
        const std::size_t m_new = active_.size() - (m_a_new == 0 ? 1 : 0);
        if (m_new < lo_) continue;
        const std::size_t m_t = size_[t];
        const double mu_t_new =
            static_cast<double>(mu_[t] + wto_[t] + self_[c]);
        const double scoh_new =
            scoh_base - scoh_of(mu_[t], m_t) + mu_t_new / square(m_t + 1);

        const double old_at = static_cast<double>(gamma(a, t)) /
                              (2.0 * static_cast<double>(m_a) *
                               static_cast<double>(m_t));
        const double wp =
            w_total - (wto_[t] != 0 ? static_cast<double>(wto_[t]) /
                                          static_cast<double>(m_t)
                                    : 0.0);
        double coupling_new = coupling_sum_ - row_term_[a] - row_term_[t] + old_at;
        if (m_a_new > 0) {
          coupling_new += static_cast<double>(m_a) /
                              static_cast<double>(m_a_new) *
                              (row_term_[a] - old_at) -
                          wp / (2.0 * static_cast<double>(m_a_new));
        }
        coupling_new += static_cast<double>(m_t) /
                            static_cast<double>(m_t + 1) *
                            (row_term_[t] - old_at) +
                        wp / (2.0 * static_cast<double>(m_t + 1));
        if (m_a_new > 0) {
          coupling_new +=
              static_cast<double>(gamma(a, t) - wto_[t] + wto_[a]) /
              (2.0 * static_cast<double>(m_a_new) *
               static_cast<double>(m_t + 1));
        }
        const double sm_new = scoh_new / static_cast<double>(m_new) -
                              coupling_of(coupling_new, m_new);
        if (sm_new > best) {
          best = sm_new;
          best_class = c;
          best_target = t;
          best_fresh = false;
        }
      }

      // Relocation to a fresh service (only meaningful when it does not just
      // relabel a singleton).
      if (m_a_new > 0 && active_.size() + 1 <= hi_) {
        const double scoh_new =
            scoh_base + static_cast<double>(self_[c]) / 1.0;
        double coupling_new = coupling_sum_ - row_term_[a];
        coupling_new += static_cast<double>(m_a) /
                            static_cast<double>(m_a_new) * row_term_[a] -
                        w_total / (2.0 * static_cast<double>(m_a_new));
        coupling_new += w_total / 2.0;
        coupling_new += static_cast<double>(wto_[a]) /
                        (2.0 * static_cast<double>(m_a_new));
        const std::size_t m_new = active_.size() + 1;
        const double sm_new = scoh_new / static_cast<double>(m_new) -
                              coupling_of(coupling_new, m_new);
        if (sm_new > best) {
          best = sm_new;
          best_class = c;
          best_target = kNone;
          best_fresh = true;
        }
      }

      for (std::size_t s : touched_) wto_[s] = 0;
    }

    if (best_class == kNone) return false;
    if (best_fresh) best_target = first_free_slot();
    apply_move(best_class, best_target);
    return true;
  }

  // Exact SM of the current assignment, recomputed from the aggregates.
  double current_sm() const {
    return scoh_sum_ / static_cast<double>(active_.size()) -
           coupling_of(coupling_sum_, active_.size());
  }

  const std::vector<std::size_t>& assignment() const { return assign_; }
  std::size_t service_count() const { return active_.size(); }

 private:
  static constexpr double kMinGain = 1e-12;

  static double square(std::size_t m) {
    return static_cast<double>(m) * static_cast<double>(m);
  }

  static double scoh_of(std::int64_t mu, std::size_t m) {
    return static_cast<double>(mu) / (static_cast<double>(m) *
                                      static_cast<double>(m));
  }

  static double coupling_of(double coupling_sum, std::size_t services) {
    if (services < 2) return 0.0;
    const double pairs = static_cast<double>(services) *
                         static_cast<double>(services - 1) / 2.0;
    return coupling_sum / pairs;
  }

  std::int64_t& gamma(std::size_t a, std::size_t b) {
    return gamma_[std::min(a, b) * n_ + std::max(a, b)];
  }

  std::int64_t gamma(std::size_t a, std::size_t b) const {
    return gamma_[std::min(a, b) * n_ + std::max(a, b)];
  }

  std::size_t first_free_slot() const {
    for (std::size_t s = 0; s < n_; ++s)
      if (size_[s] == 0) return s;
    return static_cast<std::size_t>(-1);  // unreachable: M <= n
  }

  // Rebuilds scoh_sum_, coupling_sum_ and the per-service coupling row terms
  // from the integer aggregates. O(M^2).
  void refresh_terms() {
    scoh_sum_ = 0.0;
    for (std::size_t s : active_) scoh_sum_ += scoh_of(mu_[s], size_[s]);
    coupling_sum_ = 0.0;
    for (std::size_t s : active_) row_term_[s] = 0.0;
    for (std::size_t i = 0; i < active_.size(); ++i) {
      for (std::size_t j = i + 1; j < active_.size(); ++j) {
        const std::size_t a = active_[i];
        const std::size_t b = active_[j];
        const std::int64_t g = gamma(a, b);
        if (g == 0) continue;
        const double term = static_cast<double>(g) /
                            (2.0 * static_cast<double>(size_[a]) *
                             static_cast<double>(size_[b]));
        row_term_[a] += term;
        row_term_[b] += term;
        coupling_sum_ += term;
      }
    }
  }

  void apply_move(std::size_t c, std::size_t t) {
    const std::size_t a = assign_[c];
    touched_.clear();
    for (const auto& [nb, w] : adj_[c]) {
      const std::size_t s = assign_[nb];
      if (wto_[s] == 0) touched_.push_back(s);
      wto_[s] += w;
    }
    for (std::size_t s : touched_) {
      if (s == a || s == t) continue;
      gamma(a, s) -= wto_[s];
      gamma(t, s) += wto_[s];
    }
    gamma(a, t) += wto_[a] - wto_[t];
    mu_[a] -= wto_[a] + self_[c];
    mu_[t] += wto_[t] + self_[c];
    for (std::size_t s : touched_) wto_[s] = 0;

    assign_[c] = t;
    --size_[a];
    ++size_[t];
    if (size_[t] == 1)
      active_.insert(
          std::lower_bound(active_.begin(), active_.end(), t), t);
    if (size_[a] == 0)
      active_.erase(std::lower_bound(active_.begin(), active_.end(), a));
    refresh_terms();
  }

  std::size_t n_;
  std::size_t lo_;
  std::size_t hi_;
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> adj_;
  std::vector<std::int64_t> self_;

  std::vector<std::size_t> assign_;
  std::vector<std::int64_t> mu_;
  std::vector<std::size_t> size_;
  std::vector<std::int64_t> gamma_;  // upper-triangular, flat n*n
  std::vector<std::size_t> active_;  // non-empty slots, ascending
  double scoh_sum_ = 0.0;
  double coupling_sum_ = 0.0;
  std::vector<double> row_term_;  // per-slot share of coupling_sum_

  std::vector<std::int64_t> wto_;  // scratch: weight from a class to slots
  std::vector<std::size_t> touched_;
};

}  // namespace detail

inline Decomposition decompose_hillclimb(const MonolithGraph& graph,
                                         const HillClimbParams& params = {}) {
  const std::size_t n = graph.size();
  if (n == 0)
    throw DomainError(ErrorKind::empty_graph,
                      "graph '" + graph.name() + "' has no classes");
  if (params.restarts < 1)
    throw DomainError(ErrorKind::bad_spec, "restarts must be at least 1");
  const std::size_t lo = std::max<std::size_t>(params.min_services.value_or(1), 1);
  const std::size_t hi = std::min(params.max_services.value_or(n), n);
  if (lo > hi)
    throw DomainError(ErrorKind::infeasible_bounds,
                      "service-count bounds " + std::to_string(lo) + ".." +
                          std::to_string(hi) + " admit no partition of " +
                          std::to_string(n) + " classes");
  const std::size_t max_iterations =
      params.max_iterations > 0 ? params.max_iterations : 10 * n;

  detail::HillClimbSearch search(graph, lo, hi);
  std::vector<std::size_t> best_assign;
  double best_sm = -std::numeric_limits<double>::infinity();
  // Restarts sweep the initial service count over the low end of [lo, hi]
  // instead of sampling it uniformly: the local optimum a relocation climb
  // reaches is largely decided by the granularity it starts at, and plausible
  // service counts are small relative to n. With the default 20 restarts the
  // sweep covers the first 10 counts twice; more restarts widen the sweep.
  const std::size_t span =
      std::min(hi - lo + 1,
               std::max<std::size_t>(10, (params.restarts + 1) / 2));
  for (std::size_t r = 0; r < params.restarts; ++r) {
    Rng rng(Rng::derive(params.seed, r));
    const std::size_t k = lo + r % span;
    search.reset(detail::random_assignment(n, k, rng));
    for (std::size_t it = 0; it < max_iterations; ++it)
      if (!search.step()) break;
    const double sm = search.current_sm();
    if (sm > best_sm) {
      best_sm = sm;
      best_assign = search.assignment();
    }
  }
  return decomposition_from_assignment(graph, best_assign, "hillclimb");
}

// ---------------------------------------------------------------------------
// Agglomerative clustering on call-profile similarity.
//
// Classes start as their own cluster; the distance between classes is one
// minus the cosine of their symmetrized adjacency rows (all edge kinds,
// counts summed over both directions, diagonal fixed at 1). Clusters merge
// bottom-up under the chosen linkage until either the next merge would exceed
// the distance threshold or the target cluster count is reached.
// ---------------------------------------------------------------------------

enum class Linkage { average, single, complete };

inline const char* to_string(Linkage l) {
  switch (l) {
    case Linkage::average: return "average";
    case Linkage::single: return "single";
    case Linkage::complete: return "complete";
  }
  return "?";
}

struct HierarchicalParams {
  Linkage linkage = Linkage::average;
  std::optional<double> distance_threshold;  // stop above this, in (0, 1]
  std::optional<std::size_t> target_clusters;
  std::size_t min_cluster_size = 1;  // undersized clusters merge into nearest
};

inline Decomposition decompose_hierarchical(const MonolithGraph& graph,
                                            const HierarchicalParams& params) {
  const std::size_t n = graph.size();
  if (n == 0)
    throw DomainError(ErrorKind::empty_graph,
                      "graph '" + graph.name() + "' has no classes");
  if (params.distance_threshold.has_value() ==
      params.target_clusters.has_value())
    throw DomainError(ErrorKind::bad_threshold,
                      "set exactly one of distance threshold and target "
                      "cluster count");
  if (params.distance_threshold &&
      (*params.distance_threshold <= 0.0 || *params.distance_threshold > 1.0))
    throw DomainError(ErrorKind::bad_threshold,
                      "distance threshold must be in (0, 1]");
  if (params.target_clusters &&
      (*params.target_clusters < 1 || *params.target_clusters > n))
    throw DomainError(ErrorKind::bad_k,
                      "target cluster count " +
                          std::to_string(*params.target_clusters) +
                          " is outside 1.." + std::to_string(n));
  if (params.min_cluster_size < 1)
    throw DomainError(ErrorKind::bad_spec,
                      "minimum cluster size must be at least 1");

  // Symmetrized weighted adjacency with unit diagonal.
  std::vector<double> w(n * n, 0.0);
  for (const IndexedEdge& e : graph.indexed_edges()) {
    if (e.src == e.dst) continue;
    w[e.src * n + e.dst] += static_cast<double>(e.count);
    w[e.dst * n + e.src] += static_cast<double>(e.count);
  }
  for (std::size_t i = 0; i < n; ++i) w[i * n + i] = 1.0;

  // Pairwise cosine distances between adjacency rows.
  std::vector<double> dist(n * n, 0.0);
  std::vector<double> norm(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double nn = 0.0;
    for (std::size_t s = 0; s < n; ++s) nn += w[i * n + s] * w[i * n + s];
    norm[i] = std::sqrt(nn);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t s = 0; s < n; ++s) dot += w[i * n + s] * w[j * n + s];
      const double d = 1.0 - dot / (norm[i] * norm[j]);
      dist[i * n + j] = dist[j * n + i] = d;
    }
  }

  // Lance-Williams agglomeration over cluster slots. Slot i's representative
  // is its smallest class index; ties break toward smaller representatives.
  std::vector<bool> alive(n, true);
  std::vector<std::size_t> csize(n, 1);
  std::size_t clusters = n;
  std::vector<std::size_t> owner(n);  // class -> slot
  for (std::size_t i = 0; i < n; ++i) owner[i] = i;

  const auto merge_into = [&](std::size_t i, std::size_t j) {
    // Keep the smaller representative as the surviving slot id.
    if (j < i) std::swap(i, j);
    for (std::size_t s = 0; s < n; ++s) {
      if (!alive[s] || s == i || s == j) continue;
      const double dis = dist[i * n + s];
      const double djs = dist[j * n + s];
      double d = 0.0;
      switch (params.linkage) {
        case Linkage::single: d = std::min(dis, djs); break;
        case Linkage::complete: d = std::max(dis, djs); break;
        case Linkage::average:
          d = (static_cast<double>(csize[i]) * dis +
               static_cast<double>(csize[j]) * djs) /
              static_cast<double>(csize[i] + csize[j]);
          break;
      }
      dist[i * n + s] = dist[s * n + i] = d;
    }
    csize[i] += csize[j];
    alive[j] = false;
    for (std::size_t c = 0; c < n; ++c)
      if (owner[c] == j) owner[c] = i;
    --clusters;
  };

  const auto closest_pair = [&](std::size_t& bi, std::size_t& bj) {
    double best = std::numeric_limits<double>::infinity();
    bi = bj = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!alive[j]) continue;
        if (dist[i * n + j] < best) {
          best = dist[i * n + j];
          bi = i;
          bj = j;
        }
      }
    }
    return best;
  };

  while (clusters > 1) {
    std::size_t i, j;
    const double d = closest_pair(i, j);
    if (params.distance_threshold) {
      if (d > *params.distance_threshold) break;
    } else {
      if (clusters <= *params.target_clusters) break;
    }
    merge_into(i, j);
  }

  // Fold clusters below the minimum size into their nearest neighbor.
  while (clusters > 1) {
    std::size_t small = n;
    for (std::size_t s = 0; s < n; ++s)
      if (alive[s] && csize[s] < params.min_cluster_size &&
          (small == n || csize[s] < csize[small]))
        small = s;
    if (small == n) break;
    std::size_t nearest = n;
    for (std::size_t s = 0; s < n; ++s) {
      if (!alive[s] || s == small) continue;
      if (nearest == n || dist[small * n + s] < dist[small * n + nearest])
        nearest = s;
    }
    merge_into(small, nearest);
  }

  return decomposition_from_assignment(graph, owner, "hierarchical");
}

}  // namespace decomp
