#pragma once

// Label equivalence under the (odd, odd) orientation convention.
//
// Sign of a relabeling = sgn(vertex permutation) * (-1)^(reversed edges).
// Reordering edges contributes +1 and small loops carry no orientation.
//
// Canonical form: vertices are split into cells by color refinement (an
// isomorphism invariant, so every isomorphism maps cells to cells); the
// representative is the lexicographically smallest encoding over all
// labelings that place cells in rank order.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "bcr/error.hpp"
#include "bcr/graph.hpp"

namespace bcr {

/// Parity of `perm` (perm[i] = image of i) as +1 / -1.
inline int permutation_sign(std::span<const int> perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
  }
  return inversions % 2 == 0 ? 1 : -1;
}

namespace detail {

inline void check_relabeling(const LabeledBcrGraph& g, std::span<const int> perm,
                             std::span<const int> reversed_edges) {
  const int n = g.vertex_count();
  if (static_cast<int>(perm.size()) != n) {
    throw Error(ErrorCode::DanglingVertexLabel, "permutation size does not match vertex count");
  }
  std::vector<bool> seen(n, false);
  for (int v = 0; v < n; ++v) {
    if (perm[v] < 0 || perm[v] >= n || seen[perm[v]]) {
      throw Error(ErrorCode::DanglingVertexLabel, "not a permutation");
    }
    seen[perm[v]] = true;
    if (g.color(perm[v]) != g.color(v)) {
      throw Error(ErrorCode::PermutationMixesColors, "vertex " + std::to_string(v + 1));
    }
  }
  std::vector<bool> flipped(g.edge_count(), false);
  for (int e : reversed_edges) {
    if (e < 0 || e >= g.edge_count() || flipped[e]) {
      throw Error(ErrorCode::DanglingVertexLabel, "bad edge reversal set");
    }
    flipped[e] = true;
  }
}

}  // namespace detail

inline int relabel_sign(const LabeledBcrGraph& g, std::span<const int> perm,
                        std::span<const int> reversed_edges) {
  detail::check_relabeling(g, perm, reversed_edges);
  return permutation_sign(perm) * (reversed_edges.size() % 2 == 0 ? 1 : -1);
}

/// The same underlying graph with vertex v renamed perm[v] and the listed
/// edges reversed. Edge order is kept.
inline LabeledBcrGraph relabel(const LabeledBcrGraph& g, std::span<const int> perm,
                               std::span<const int> reversed_edges) {
  detail::check_relabeling(g, perm, reversed_edges);
  GraphData out{g.colors(), {}, std::vector<int>(g.vertex_count(), 0)};
  std::vector<bool> flip(g.edge_count(), false);
  for (int e : reversed_edges) flip[e] = true;
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& old = g.edge(e);
    Edge moved{old.kind, perm[old.tail], perm[old.head]};
    if (flip[e]) std::swap(moved.tail, moved.head);
    out.edges.push_back(moved);
  }
  for (int v = 0; v < g.vertex_count(); ++v) out.loops[perm[v]] = g.loops_at(v);
  return build_graph(std::move(out));
}

namespace detail {

struct Encoding {
  std::vector<Edge> edges;  // tail < head, sorted
  std::vector<int> loops;

  friend auto operator<=>(const Encoding&, const Encoding&) = default;
};

struct SearchResult {
  std::vector<int> best_perm;
  Encoding best;
  int sign = 1;
  bool orientation_reversing = false;
  std::int64_t automorphisms = 0;
};

template <typename Signature>
std::vector<int> rank_signatures(const std::vector<Signature>& sig) {
  std::vector<Signature> distinct(sig);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<int> rank(sig.size());
  for (std::size_t v = 0; v < sig.size(); ++v) {
    rank[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
  }
  return rank;
}

/// Stable color-refinement ranks. Initial colors separate black from white,
/// so black cells always rank below white cells.
inline std::vector<int> refine(const GraphData& g) {
  const int n = static_cast<int>(g.colors.size());
  std::vector<std::vector<int>> sig(n);
  for (int v = 0; v < n; ++v) sig[v] = {static_cast<int>(g.colors[v]), g.loops[v], 0, 0};
  for (const Edge& e : g.edges) {
    const int slot = e.kind == EdgeKind::Solid ? 2 : 3;
    ++sig[e.tail][slot];
    ++sig[e.head][slot];
  }
  std::vector<int> rank = rank_signatures(sig);
  int classes = rank.empty() ? 0 : *std::max_element(rank.begin(), rank.end()) + 1;
  while (true) {
    std::vector<std::vector<int>> nbrs(n);
    for (const Edge& e : g.edges) {
      const int k = static_cast<int>(e.kind);
      nbrs[e.tail].push_back(k * n + rank[e.head]);
      nbrs[e.head].push_back(k * n + rank[e.tail]);
    }
    for (int v = 0; v < n; ++v) {
      std::sort(nbrs[v].begin(), nbrs[v].end());
      sig[v].assign(1, rank[v]);
      sig[v].insert(sig[v].end(), nbrs[v].begin(), nbrs[v].end());
    }
    std::vector<int> next = rank_signatures(sig);
    const int next_classes = next.empty() ? 0 : *std::max_element(next.begin(), next.end()) + 1;
    if (next_classes == classes) return rank;
    rank = std::move(next);
    classes = next_classes;
  }
}

inline SearchResult canonical_search(const GraphData& g) {
  const int n = static_cast<int>(g.colors.size());
  const std::vector<int> rank = refine(g);
  const int cell_count = rank.empty() ? 0 : *std::max_element(rank.begin(), rank.end()) + 1;
  std::vector<std::vector<int>> cells(cell_count);
  for (int v = 0; v < n; ++v) cells[rank[v]].push_back(v);
  std::vector<int> offset(cell_count, 0);
  for (int c = 1; c < cell_count; ++c) offset[c] = offset[c - 1] + static_cast<int>(cells[c - 1].size());

  SearchResult result;
  std::vector<int> perm(n);
  Encoding current{{}, std::vector<int>(n, 0)};
  current.edges.reserve(g.edges.size());
  bool first = true;
  while (true) {
    for (int c = 0; c < cell_count; ++c) {
      for (std::size_t i = 0; i < cells[c].size(); ++i) perm[cells[c][i]] = offset[c] + static_cast<int>(i);
    }
    current.edges.clear();
    int reversed = 0;
    for (const Edge& e : g.edges) {
      int a = perm[e.tail];
      int b = perm[e.head];
      if (a > b) {
        std::swap(a, b);
        ++reversed;
      }
      current.edges.push_back(Edge{e.kind, a, b});
    }
    std::sort(current.edges.begin(), current.edges.end());
    for (int v = 0; v < n; ++v) current.loops[perm[v]] = g.loops[v];
    const int sign = permutation_sign(perm) * (reversed % 2 == 0 ? 1 : -1);

    const auto cmp = first ? std::strong_ordering::less : current <=> result.best;
    if (cmp < 0) {
      result.best = current;
      result.best_perm = perm;
      result.sign = sign;
      result.orientation_reversing = false;
      result.automorphisms = 1;
      first = false;
    } else if (cmp == 0) {
      ++result.automorphisms;
      if (sign != result.sign) result.orientation_reversing = true;
    }

    int c = cell_count - 1;
    while (c >= 0 && !std::next_permutation(cells[c].begin(), cells[c].end())) --c;
    if (c < 0) break;
  }
  return result;
}

}  // namespace detail

/// Two edges of the same kind joining the same pair of vertices.
inline bool has_double_edge(const LabeledBcrGraph& g) {
  std::vector<Edge> keys;
  for (const Edge& e : g.edges()) keys.push_back(Edge{e.kind, std::min(e.tail, e.head), std::max(e.tail, e.head)});
  std::sort(keys.begin(), keys.end());
  return std::adjacent_find(keys.begin(), keys.end()) != keys.end();
}

/// Admissible: every black vertex has eta-valency at most two and no pair
/// of vertices is joined by both a solid and a dashed edge.
inline bool is_admissible(const LabeledBcrGraph& g) {
  for (int v = 0; v < g.black_count(); ++v) {
    if (solid_valency(g, v) >= 3) return false;
  }
  std::map<std::pair<int, int>, unsigned> kinds;
  for (const Edge& e : g.edges()) {
    kinds[{std::min(e.tail, e.head), std::max(e.tail, e.head)}] |= 1u << static_cast<int>(e.kind);
  }
  return std::none_of(kinds.begin(), kinds.end(), [](const auto& kv) { return kv.second == 3u; });
}

enum class ZeroReason { None, DoubleEdge, NonAdmissible, OddSymmetry };

/// Canonical representative of a label-equivalence class. `is_zero` marks a
/// class killed by the relations; its representative is still canonical.
struct CanonicalClass {
  LabeledBcrGraph representative;
  bool is_zero = false;
  ZeroReason reason = ZeroReason::None;
};

/// g = sign * class.representative as oriented graphs.
struct SignedClass {
  CanonicalClass cls;
  int sign = 1;
};

inline SignedClass canonicalize(const LabeledBcrGraph& g, bool defect_zero_mode) {
  const detail::SearchResult found = detail::canonical_search(g.data());
  GraphData rep{g.colors(), found.best.edges, found.best.loops};
  ZeroReason reason = ZeroReason::None;
  if (has_double_edge(g)) {
    reason = ZeroReason::DoubleEdge;
  } else if (defect_zero_mode && !is_admissible(g)) {
    reason = ZeroReason::NonAdmissible;
  } else if (found.orientation_reversing) {
    reason = ZeroReason::OddSymmetry;
  }
  return SignedClass{CanonicalClass{build_graph(std::move(rep)), reason != ZeroReason::None, reason}, found.sign};
}

/// Canonicalize with the admissibility cut applied exactly when defect(g) == 0.
inline SignedClass canonicalize(const LabeledBcrGraph& g) { return canonicalize(g, defect(g) == 0); }

/// Automorphisms of the underlying graph: color- and kind-preserving vertex
/// bijections fixing the edge multiset, edge orientations ignored.
inline std::int64_t automorphism_count(const LabeledBcrGraph& g) {
  return detail::canonical_search(g.data()).automorphisms;
}

struct Isomorphism {
  std::vector<int> vertex_map;  // vertex of the first graph -> vertex of the second
  int sign = 1;                 // first = sign * second as oriented graphs
};

inline std::optional<Isomorphism> graphs_isomorphic(const LabeledBcrGraph& a, const LabeledBcrGraph& b) {
  if (a.colors() != b.colors() || a.edge_count() != b.edge_count()) return std::nullopt;
  const auto ra = detail::canonical_search(a.data());
  const auto rb = detail::canonical_search(b.data());
  if (ra.best != rb.best) return std::nullopt;
  std::vector<int> inverse_b(b.vertex_count());
  for (int v = 0; v < b.vertex_count(); ++v) inverse_b[rb.best_perm[v]] = v;
  Isomorphism iso;
  iso.vertex_map.resize(a.vertex_count());
  for (int v = 0; v < a.vertex_count(); ++v) iso.vertex_map[v] = inverse_b[ra.best_perm[v]];
  iso.sign = ra.sign * rb.sign;
  return iso;
}

}  // namespace bcr
