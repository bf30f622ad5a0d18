#pragma once

// Edge contraction, the coboundary delta and graph bases D^{k,l}_g.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "bcr/canonical.hpp"
#include "bcr/graph.hpp"
#include "bcr/graph_vector.hpp"
#include "bcr/parallel.hpp"
#include "bcr/sparse_matrix.hpp"

namespace bcr {

/// sigma(e) for e = (p, q) with 1-based labels: (-1)^q if p < q, else (-1)^(p+1).
inline int edge_sign(const LabeledBcrGraph& g, int e) {
  const Edge& edge = g.edge(e);
  const int p = edge.tail + 1;
  const int q = edge.head + 1;
  const int exponent = p < q ? q : p + 1;
  return exponent % 2 == 0 ? 1 : -1;
}

enum class ContractionType {
  Solid,             // (a)
  DashedWithWhite,   // (b)
  DashedBlackBlack,  // (c), creates a small loop
  SolidOfMultiple,   // (d), creates a double loop
  DashedOfMultiple,  // never contracted
};

inline bool is_multiple_edge(const LabeledBcrGraph& g, int e) {
  const Edge& x = g.edge(e);
  for (const Edge& y : g.edges()) {
    if (y.kind != x.kind && std::min(y.tail, y.head) == std::min(x.tail, x.head) &&
        std::max(y.tail, y.head) == std::max(x.tail, x.head)) {
      return true;
    }
  }
  return false;
}

inline ContractionType contraction_type(const LabeledBcrGraph& g, int e) {
  if (e < 0 || e >= g.edge_count()) {
    throw Error(ErrorCode::SelfLoopContraction, "edge " + std::to_string(e + 1) + " is not a contractible edge");
  }
  const Edge& edge = g.edge(e);
  const bool multiple = is_multiple_edge(g, e);
  if (edge.kind == EdgeKind::Solid) return multiple ? ContractionType::SolidOfMultiple : ContractionType::Solid;
  if (multiple) return ContractionType::DashedOfMultiple;
  if (g.color(edge.tail) == VertexColor::Black && g.color(edge.head) == VertexColor::Black) {
    return ContractionType::DashedBlackBlack;
  }
  return ContractionType::DashedWithWhite;
}

/// Labeled graph Γ/e before canonicalization, or nullopt when the result
/// vanishes or the edge is not contracted. The collapsed vertex takes label
/// min{p, q}; labels above max{p, q} move down by one; surviving edges keep
/// their relative order and orientation.
inline std::optional<LabeledBcrGraph> contract_labeled(const LabeledBcrGraph& g, int e) {
  const ContractionType type = contraction_type(g, e);
  if (type == ContractionType::SolidOfMultiple || type == ContractionType::DashedOfMultiple) return std::nullopt;
  const Edge& edge = g.edge(e);
  const int keep = std::min(edge.tail, edge.head);
  const int drop = std::max(edge.tail, edge.head);
  auto moved = [&](int v) { return v == drop ? keep : (v > drop ? v - 1 : v); };

  GraphData out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (v != drop) {
      out.colors.push_back(g.color(v));
      out.loops.push_back(g.loops_at(v));
    }
  }
  out.loops[keep] += g.loops_at(drop) + (type == ContractionType::DashedBlackBlack ? 1 : 0);
  for (int f = 0; f < g.edge_count(); ++f) {
    if (f == e) continue;
    const Edge& old = g.edge(f);
    const Edge next{old.kind, moved(old.tail), moved(old.head)};
    if (next.tail == next.head) {
      // A parallel edge of the same kind; only a dashed one at a black vertex
      // survives, as a small loop.
      if (next.kind == EdgeKind::Solid || out.colors[keep] == VertexColor::White) return std::nullopt;
      ++out.loops[keep];
      continue;
    }
    out.edges.push_back(next);
  }
  return build_graph(std::move(out));
}

inline GraphVector contract(const LabeledBcrGraph& g, int e) {
  GraphVector v;
  if (auto result = contract_labeled(g, e)) v.add(*result, 1);
  return v;
}

/// delta(Γ) = Σ σ(e) Γ/e over non-loop edges; zero when Γ itself vanishes.
inline GraphVector delta(const LabeledBcrGraph& g) {
  GraphVector out;
  if (canonicalize(g).cls.is_zero) return out;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (contraction_type(g, e) == ContractionType::DashedOfMultiple) continue;
    if (auto result = contract_labeled(g, e)) out.add(*result, edge_sign(g, e));
  }
  return out;
}

inline GraphVector delta(const GraphVector& v) {
  GraphVector out;
  for (const auto& [rep, coef] : v) out += coef * delta(rep);
  return out;
}

/// Ordered basis of D^{k,l}_g: connected nonzero canonical classes sorted
/// by (#W, encoding).
struct Basis {
  int order = 0;
  int defect = 0;
  int loop_number = 0;
  std::vector<LabeledBcrGraph> elements;

  std::size_t size() const noexcept { return elements.size(); }

  std::optional<std::size_t> index_of(const LabeledBcrGraph& rep) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), rep);
    if (it == elements.end() || !(*it == rep)) return std::nullopt;
    return static_cast<std::size_t>(it - elements.begin());
  }
};

struct SupportedRange {
  static constexpr int max_order = 4;
  static constexpr int max_defect = 2;
  static constexpr int max_loops = 3;
};

namespace detail {

struct DashedPlan {
  int blacks;
  int whites;
  std::vector<int> residual;  // dashed half-edges still to place per vertex
  std::vector<int> loops;
};

// All nonincreasing sequences of `count` values from [0, options) whose
// weights sum to `total`.
inline void weighted_multisets(int count, int options, int total, const std::vector<int>& weight,
                               std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(prefix.size()) == count) {
    if (total == 0) out.push_back(prefix);
    return;
  }
  const int start = prefix.empty() ? options - 1 : prefix.back();
  for (int o = start; o >= 0; --o) {
    if (weight[o] > total) continue;
    prefix.push_back(o);
    weighted_multisets(count, options, total - weight[o], weight, prefix, out);
    prefix.pop_back();
  }
}

inline std::vector<DashedPlan> dashed_plans(int k, int l) {
  const int V = 2 * k - l;
  std::vector<DashedPlan> plans;
  // black options: (defect d, loops L) with 2L <= 1 + d
  std::vector<std::pair<int, int>> black_options;
  std::vector<int> black_weight;
  for (int d = 0; d <= l; ++d) {
    for (int L = 0; 2 * L <= 1 + d; ++L) {
      black_options.emplace_back(d, L);
      black_weight.push_back(d);
    }
  }
  std::vector<int> white_weight;
  for (int d = 0; d <= l; ++d) white_weight.push_back(d);

  for (int W = 0; W <= V; ++W) {
    const int B = V - W;
    for (int lb = 0; lb <= l; ++lb) {
      std::vector<std::vector<int>> black_seqs, white_seqs;
      std::vector<int> prefix;
      weighted_multisets(B, static_cast<int>(black_options.size()), lb, black_weight, prefix, black_seqs);
      weighted_multisets(W, static_cast<int>(white_weight.size()), l - lb, white_weight, prefix, white_seqs);
      for (const auto& bs : black_seqs) {
        for (const auto& ws : white_seqs) {
          DashedPlan plan{B, W, {}, {}};
          for (int o : bs) {
            const auto [d, L] = black_options[o];
            plan.residual.push_back(1 + d - 2 * L);
            plan.loops.push_back(L);
          }
          for (int d : ws) {
            plan.residual.push_back(3 + d);
            plan.loops.push_back(0);
          }
          plans.push_back(std::move(plan));
        }
      }
    }
  }
  return plans;
}

// Simple graphs realizing the residual degree sequence.
inline void realize_degrees(std::vector<int>& residual, int v, std::vector<Edge>& edges,
                            std::vector<std::vector<Edge>>& out) {
  const int n = static_cast<int>(residual.size());
  while (v < n && residual[v] == 0) ++v;
  if (v == n) {
    out.push_back(edges);
    return;
  }
  // choose residual[v] distinct partners among u > v
  std::vector<int> partners;
  auto choose = [&](auto&& self, int from) -> void {
    if (residual[v] == 0) {
      realize_degrees(residual, v + 1, edges, out);
      return;
    }
    for (int u = from; u < n; ++u) {
      if (residual[u] == 0) continue;
      --residual[u];
      --residual[v];
      edges.push_back(Edge{EdgeKind::Dashed, v, u});
      self(self, u + 1);
      edges.pop_back();
      ++residual[v];
      ++residual[u];
    }
  };
  choose(choose, v + 1);
}

// Dashed skeletons up to isomorphism. A connected g-loop graph on V vertices
// has g - 1 + V non-loop edges, which caps the dashed ones.
inline std::vector<GraphData> dashed_structures(int k, int l, int g) {
  std::set<GraphData> seen;
  for (DashedPlan& plan : dashed_plans(k, l)) {
    const int half_edges = std::accumulate(plan.residual.begin(), plan.residual.end(), 0);
    if (half_edges / 2 > g - 1 + plan.blacks + plan.whites) continue;
    std::vector<std::vector<Edge>> realizations;
    std::vector<Edge> edges;
    realize_degrees(plan.residual, 0, edges, realizations);
    std::vector<VertexColor> colors(plan.blacks, VertexColor::Black);
    colors.resize(plan.blacks + plan.whites, VertexColor::White);
    for (auto& r : realizations) {
      const GraphData raw{colors, std::move(r), plan.loops};
      const SearchResult found = canonical_search(raw);
      seen.insert(GraphData{colors, found.best.edges, found.best.loops});
    }
  }
  return {seen.begin(), seen.end()};
}

// Adds `remaining` solid edges among black pairs (index >= from) and keeps
// every connected nonzero result.
inline void place_solids(const GraphData& dashed, const std::vector<std::pair<int, int>>& pairs, std::size_t from,
                         int remaining, bool defect_zero, std::vector<int>& solid_deg, std::vector<Edge>& solids,
                         std::set<GraphData>& out) {
  if (remaining == 0) {
    std::vector<Edge> edges = solids;
    edges.insert(edges.end(), dashed.edges.begin(), dashed.edges.end());
    const LabeledBcrGraph g = build_graph(dashed.colors, std::move(edges), dashed.loops);
    if (!is_connected(g)) return;
    const SignedClass c = canonicalize(g, defect_zero);
    if (!c.cls.is_zero) out.insert(c.cls.representative.data());
    return;
  }
  if (pairs.size() - from < static_cast<std::size_t>(remaining)) return;
  for (std::size_t i = from; i < pairs.size(); ++i) {
    const auto [a, b] = pairs[i];
    if (defect_zero && (solid_deg[a] >= 2 || solid_deg[b] >= 2)) continue;
    ++solid_deg[a];
    ++solid_deg[b];
    solids.push_back(Edge{EdgeKind::Solid, a, b});
    place_solids(dashed, pairs, i + 1, remaining - 1, defect_zero, solid_deg, solids, out);
    solids.pop_back();
    --solid_deg[b];
    --solid_deg[a];
  }
}

inline std::vector<GraphData> graphs_over(const GraphData& dashed, int g, bool defect_zero) {
  const int V = static_cast<int>(dashed.colors.size());
  const int solid_edges = g - 1 + V - static_cast<int>(dashed.edges.size());
  std::set<GraphData> out;
  if (solid_edges < 0) return {};
  const int B = static_cast<int>(std::count(dashed.colors.begin(), dashed.colors.end(), VertexColor::Black));
  std::set<std::pair<int, int>> dashed_pairs;
  for (const Edge& e : dashed.edges) dashed_pairs.emplace(std::min(e.tail, e.head), std::max(e.tail, e.head));
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < B; ++a) {
    for (int b = a + 1; b < B; ++b) {
      // at defect 0 a solid edge beside a dashed one is a multiple edge
      if (defect_zero && dashed_pairs.count({a, b})) continue;
      pairs.emplace_back(a, b);
    }
  }
  std::vector<int> solid_deg(V, 0);
  std::vector<Edge> solids;
  place_solids(dashed, pairs, 0, solid_edges, defect_zero, solid_deg, solids, out);
  return {out.begin(), out.end()};
}

}  // namespace detail

inline void check_supported(int k, int l, int g) {
  if (k < 1 || k > SupportedRange::max_order || l < 0 || l > SupportedRange::max_defect || g < 0 ||
      g > SupportedRange::max_loops) {
    throw Error(ErrorCode::UnsupportedRange, "k=" + std::to_string(k) + " l=" + std::to_string(l) +
                                                 " g=" + std::to_string(g));
  }
}

/// All connected nonzero classes of order k, defect l and loop number g.
inline Basis enumerate_basis(int k, int l, int g) {
  check_supported(k, l, g);
  const std::vector<GraphData> structures = detail::dashed_structures(k, l, g);
  const auto found = parallel_map(structures, [&](const GraphData& d) { return detail::graphs_over(d, g, l == 0); });
  std::set<GraphData> all;
  for (const auto& part : found) all.insert(part.begin(), part.end());
  // Every element has 2k - l vertices with blacks first, so the GraphData
  // order of the set is already (#W, encoding).
  Basis basis{k, l, g, {}};
  for (const GraphData& d : all) basis.elements.push_back(build_graph(d));
  return basis;
}

/// Column j holds the coordinates of delta(domain[j]) in `codomain`.
inline SparseRationalMatrix delta_matrix(const Basis& domain, const Basis& codomain) {
  std::vector<std::size_t> columns(domain.size());
  for (std::size_t j = 0; j < columns.size(); ++j) columns[j] = j;
  const auto images = parallel_map(columns, [&](std::size_t j) { return delta(domain.elements[j]); });
  SparseRationalMatrix m(codomain.size(), domain.size());
  for (std::size_t j = 0; j < images.size(); ++j) {
    for (const auto& [rep, coef] : images[j]) {
      const auto i = codomain.index_of(rep);
      if (!i) {
        throw Error(ErrorCode::InternalCoverage,
                    "delta of basis element " + std::to_string(j + 1) + " leaves the codomain basis");
      }
      m.set(*i, j, coef);
    }
  }
  return m;
}

}  // namespace bcr
