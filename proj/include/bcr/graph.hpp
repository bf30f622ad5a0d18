#pragma once

// BCR graphs: black/white vertices, solid/dashed edges, small loops at black
// vertices. Vertex indices are 0-based in memory and 1-based in every text
// format and in the edge-sign formula.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bcr/error.hpp"

namespace bcr {

enum class VertexColor : std::uint8_t { Black, White };

/// Solid edges live in the source R^j, dashed edges in the ambient R^n.
enum class EdgeKind : std::uint8_t { Solid, Dashed };

/// Oriented edge tail -> head. Field order gives the (kind, tail, head)
/// lexicographic order used by canonical encodings.
struct Edge {
  EdgeKind kind;
  int tail;
  int head;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Raw, unvalidated graph data. `loops[v]` is the number of small (dashed)
/// loops at v.
struct GraphData {
  std::vector<VertexColor> colors;
  std::vector<Edge> edges;
  std::vector<int> loops;

  friend auto operator<=>(const GraphData&, const GraphData&) = default;
};

class LabeledBcrGraph;
LabeledBcrGraph build_graph(std::vector<VertexColor> colors, std::vector<Edge> edges,
                            std::vector<int> loops);

/// Immutable validated BCR graph. Position in `colors` is the vertex label,
/// position in `edges` the edge label; blacks precede whites and solid edges
/// precede dashed ones.
class LabeledBcrGraph {
 public:
  const GraphData& data() const noexcept { return data_; }
  int vertex_count() const noexcept { return static_cast<int>(data_.colors.size()); }
  int edge_count() const noexcept { return static_cast<int>(data_.edges.size()); }
  VertexColor color(int v) const { return data_.colors.at(v); }
  const std::vector<VertexColor>& colors() const noexcept { return data_.colors; }
  const std::vector<Edge>& edges() const noexcept { return data_.edges; }
  const Edge& edge(int e) const { return data_.edges.at(e); }
  const std::vector<int>& loops() const noexcept { return data_.loops; }
  int loops_at(int v) const { return data_.loops.at(v); }

  int black_count() const noexcept {
    return static_cast<int>(std::count(data_.colors.begin(), data_.colors.end(), VertexColor::Black));
  }
  int white_count() const noexcept { return vertex_count() - black_count(); }
  int small_loop_count() const noexcept {
    return std::accumulate(data_.loops.begin(), data_.loops.end(), 0);
  }
  int solid_count() const noexcept {
    return static_cast<int>(std::count_if(data_.edges.begin(), data_.edges.end(),
                                          [](const Edge& e) { return e.kind == EdgeKind::Solid; }));
  }
  /// Dashed edges including small loops (each loop counted once).
  int dashed_count() const noexcept { return edge_count() - solid_count() + small_loop_count(); }

  friend auto operator<=>(const LabeledBcrGraph& a, const LabeledBcrGraph& b) {
    return a.data_ <=> b.data_;
  }
  friend bool operator==(const LabeledBcrGraph& a, const LabeledBcrGraph& b) {
    return a.data_ == b.data_;
  }

 private:
  explicit LabeledBcrGraph(GraphData data) : data_(std::move(data)) {}
  friend LabeledBcrGraph build_graph(std::vector<VertexColor>, std::vector<Edge>, std::vector<int>);

  GraphData data_;
};

namespace detail {

inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace detail

/// Validates the raw lists and returns the graph, or throws `Error` naming
/// the first violated rule. Checks run in a fixed order: labels in range,
/// label ordering, self-loops, then the valency rules.
inline LabeledBcrGraph build_graph(std::vector<VertexColor> colors, std::vector<Edge> edges,
                                   std::vector<int> loops) {
  const int n = static_cast<int>(colors.size());
  if (loops.empty() && n > 0) loops.assign(n, 0);
  if (static_cast<int>(loops.size()) != n) {
    detail::fail(ErrorCode::DanglingVertexLabel, "loop list does not match vertex count");
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.tail < 0 || e.tail >= n || e.head < 0 || e.head >= n) {
      detail::fail(ErrorCode::DanglingVertexLabel, "edge " + std::to_string(i + 1) + " leaves the vertex range");
    }
  }

  if (!std::is_partitioned(colors.begin(), colors.end(),
                           [](VertexColor c) { return c == VertexColor::Black; })) {
    detail::fail(ErrorCode::BadLabelOrdering, "white vertex labeled before a black vertex");
  }
  if (!std::is_partitioned(edges.begin(), edges.end(),
                           [](const Edge& e) { return e.kind == EdgeKind::Solid; })) {
    detail::fail(ErrorCode::BadLabelOrdering, "dashed edge labeled before a solid edge");
  }

  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].tail == edges[i].head) {
      detail::fail(ErrorCode::ForbiddenSelfLoop, "edge " + std::to_string(i + 1) + " is a self-loop");
    }
  }
  for (int v = 0; v < n; ++v) {
    if (loops[v] < 0) detail::fail(ErrorCode::ForbiddenSelfLoop, "negative loop count");
    if (loops[v] > 0 && colors[v] == VertexColor::White) {
      detail::fail(ErrorCode::ForbiddenSelfLoop, "white vertex " + std::to_string(v + 1) + " carries a loop");
    }
  }

  std::vector<int> dashed(n, 0);
  for (const Edge& e : edges) {
    if (e.kind == EdgeKind::Solid) {
      if (colors[e.tail] == VertexColor::White || colors[e.head] == VertexColor::White) {
        detail::fail(ErrorCode::WhiteWithSolidEdge, "solid edge at a white vertex");
      }
    } else {
      ++dashed[e.tail];
      ++dashed[e.head];
    }
  }
  for (int v = 0; v < n; ++v) {
    if (colors[v] == VertexColor::White && dashed[v] < 3) {
      detail::fail(ErrorCode::WhiteValencyBelowThree, "white vertex " + std::to_string(v + 1));
    }
    if (colors[v] == VertexColor::Black && dashed[v] + loops[v] == 0) {
      detail::fail(ErrorCode::BlackWithoutDashed, "black vertex " + std::to_string(v + 1));
    }
  }
  return LabeledBcrGraph(GraphData{std::move(colors), std::move(edges), std::move(loops)});
}

inline LabeledBcrGraph build_graph(GraphData data) {
  return build_graph(std::move(data.colors), std::move(data.edges), std::move(data.loops));
}

/// Half-edge count of dashed edges at v; a small loop contributes two.
inline int dashed_valency(const LabeledBcrGraph& g, int v) {
  int d = 2 * g.loops_at(v);
  for (const Edge& e : g.edges()) {
    if (e.kind == EdgeKind::Dashed) d += (e.tail == v) + (e.head == v);
  }
  return d;
}

inline int solid_valency(const LabeledBcrGraph& g, int v) {
  int d = 0;
  for (const Edge& e : g.edges()) {
    if (e.kind == EdgeKind::Solid) d += (e.tail == v) + (e.head == v);
  }
  return d;
}

/// l(v): dashed valency minus 3 at white vertices, minus 1 at black ones.
inline int vertex_defect(const LabeledBcrGraph& g, int v) {
  return dashed_valency(g, v) - (g.color(v) == VertexColor::White ? 3 : 1);
}

inline int defect(const LabeledBcrGraph& g) {
  return 2 * g.dashed_count() - 3 * g.white_count() - g.black_count();
}

inline int order(const LabeledBcrGraph& g) { return g.dashed_count() - g.white_count(); }

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

inline std::vector<std::vector<int>> blocks_of(DisjointSets& sets, const std::vector<int>& members) {
  std::vector<std::vector<int>> blocks;
  std::vector<int> slot(members.empty() ? 0 : *std::max_element(members.begin(), members.end()) + 1, -1);
  for (int v : members) {
    const int root = sets.find(v);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[slot[root]].push_back(v);
  }
  return blocks;
}

}  // namespace detail

/// Partition of all vertices under every edge (small loops ignored). Blocks
/// are ordered by smallest member; members ascend.
inline std::vector<std::vector<int>> connected_components(const LabeledBcrGraph& g) {
  detail::DisjointSets sets(g.vertex_count());
  for (const Edge& e : g.edges()) sets.unite(e.tail, e.head);
  std::vector<int> all(g.vertex_count());
  std::iota(all.begin(), all.end(), 0);
  return detail::blocks_of(sets, all);
}

/// Partition of the black vertices under solid edges only.
inline std::vector<std::vector<int>> solid_components(const LabeledBcrGraph& g) {
  detail::DisjointSets sets(g.vertex_count());
  for (const Edge& e : g.edges()) {
    if (e.kind == EdgeKind::Solid) sets.unite(e.tail, e.head);
  }
  std::vector<int> blacks(g.black_count());
  std::iota(blacks.begin(), blacks.end(), 0);
  return detail::blocks_of(sets, blacks);
}

inline bool is_connected(const LabeledBcrGraph& g) { return connected_components(g).size() <= 1; }

/// First Betti number shared by every component, ignoring small loops.
/// Returns nullopt when components disagree (an inhomogeneous graph).
inline std::optional<int> loop_number(const LabeledBcrGraph& g) {
  const auto components = connected_components(g);
  if (components.empty()) return 0;
  std::vector<int> component_of(g.vertex_count());
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (int v : components[c]) component_of[v] = static_cast<int>(c);
  }
  std::vector<int> edge_counts(components.size(), 0);
  for (const Edge& e : g.edges()) ++edge_counts[component_of[e.tail]];
  std::optional<int> betti;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const int b = edge_counts[c] - static_cast<int>(components[c].size()) + 1;
    if (betti && *betti != b) return std::nullopt;
    betti = b;
  }
  return betti;
}

struct GraphInvariants {
  int defect;
  int order;
  std::optional<int> loop_number;
  int black_count;
  int white_count;
  int solid_count;
  int dashed_count;
};

inline GraphInvariants invariants(const LabeledBcrGraph& g) {
  return GraphInvariants{defect(g),        order(g),         loop_number(g), g.black_count(),
                         g.white_count(), g.solid_count(), g.dashed_count()};
}

}  // namespace bcr
