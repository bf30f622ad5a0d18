#pragma once

// Independent reference implementations used only by the tests. None of
// these share code paths with the library beyond the value types.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "bcr/bcr.hpp"

namespace oracle {

using bcr::Edge;
using bcr::EdgeKind;
using bcr::GraphData;
using bcr::LabeledBcrGraph;
using bcr::Rational;
using bcr::VertexColor;

inline int parity(const std::vector<int>& perm) {
  int sign = 1;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

/// Undirected edge multiset plus loops under a vertex map.
using Shape = std::tuple<std::vector<std::tuple<int, int, int>>, std::vector<int>>;

inline Shape shape_under(const GraphData& g, const std::vector<int>& perm, int* reversed = nullptr) {
  std::vector<std::tuple<int, int, int>> edges;
  int flips = 0;
  for (const Edge& e : g.edges) {
    int a = perm[e.tail], b = perm[e.head];
    if (a > b) {
      std::swap(a, b);
      ++flips;
    }
    edges.emplace_back(static_cast<int>(e.kind), a, b);
  }
  std::sort(edges.begin(), edges.end());
  std::vector<int> loops(g.loops.size());
  for (std::size_t v = 0; v < g.loops.size(); ++v) loops[perm[v]] = g.loops[v];
  if (reversed) *reversed = flips;
  return {edges, loops};
}

/// Calls f(perm) for every color-preserving vertex permutation.
template <typename F>
void for_each_color_perm(const GraphData& g, F f) {
  const int n = static_cast<int>(g.colors.size());
  const int b = static_cast<int>(std::count(g.colors.begin(), g.colors.end(), VertexColor::Black));
  std::vector<int> blacks(b), whites(n - b);
  std::iota(blacks.begin(), blacks.end(), 0);
  std::iota(whites.begin(), whites.end(), b);
  do {
    do {
      std::vector<int> perm(n);
      for (int i = 0; i < b; ++i) perm[i] = blacks[i];
      for (int i = b; i < n; ++i) perm[i] = whites[i - b];
      f(perm);
    } while (std::next_permutation(whites.begin(), whites.end()));
  } while (std::next_permutation(blacks.begin(), blacks.end()));
}

struct Symmetry {
  std::int64_t automorphisms = 0;
  bool odd = false;  // some automorphism reverses the orientation
};

inline Symmetry symmetry(const GraphData& g) {
  Symmetry s;
  std::vector<int> id(g.colors.size());
  std::iota(id.begin(), id.end(), 0);
  const Shape base = shape_under(g, id);
  for_each_color_perm(g, [&](const std::vector<int>& perm) {
    int flips = 0;
    if (shape_under(g, perm, &flips) != base) return;
    ++s.automorphisms;
    // sign of relabeling: vertex parity times one sign per edge whose
    // stored direction disagrees with its image
    int reversed = 0;
    std::multiset<std::tuple<int, int, int>> pool;
    for (const Edge& e : g.edges) pool.emplace(static_cast<int>(e.kind), e.tail, e.head);
    for (const Edge& e : g.edges) {
      const std::tuple<int, int, int> forward{static_cast<int>(e.kind), perm[e.tail], perm[e.head]};
      auto it = pool.find(forward);
      if (it != pool.end()) {
        pool.erase(it);
      } else {
        pool.erase(pool.find({static_cast<int>(e.kind), perm[e.head], perm[e.tail]}));
        ++reversed;
      }
    }
    if (parity(perm) * (reversed % 2 == 0 ? 1 : -1) < 0) s.odd = true;
  });
  return s;
}

/// Smallest shape over all color-preserving relabelings.
inline Shape min_shape(const GraphData& g) {
  std::optional<Shape> best;
  for_each_color_perm(g, [&](const std::vector<int>& perm) {
    Shape s = shape_under(g, perm);
    if (!best || s < *best) best = std::move(s);
  });
  return *best;
}

/// Rule checker written from the validity conditions directly.
inline std::optional<bcr::ErrorCode> violated_rule(const GraphData& g) {
  const int n = static_cast<int>(g.colors.size());
  if (static_cast<int>(g.loops.size()) != n) return bcr::ErrorCode::DanglingVertexLabel;
  for (const Edge& e : g.edges) {
    if (e.tail < 0 || e.tail >= n || e.head < 0 || e.head >= n) return bcr::ErrorCode::DanglingVertexLabel;
  }
  for (int v = 1; v < n; ++v) {
    if (g.colors[v - 1] == VertexColor::White && g.colors[v] == VertexColor::Black) return bcr::ErrorCode::BadLabelOrdering;
  }
  for (std::size_t i = 1; i < g.edges.size(); ++i) {
    if (g.edges[i - 1].kind == EdgeKind::Dashed && g.edges[i].kind == EdgeKind::Solid) return bcr::ErrorCode::BadLabelOrdering;
  }
  for (const Edge& e : g.edges) {
    if (e.tail == e.head) return bcr::ErrorCode::ForbiddenSelfLoop;
  }
  for (int v = 0; v < n; ++v) {
    if (g.loops[v] < 0 || (g.loops[v] > 0 && g.colors[v] == VertexColor::White)) return bcr::ErrorCode::ForbiddenSelfLoop;
  }
  for (const Edge& e : g.edges) {
    if (e.kind == EdgeKind::Solid && (g.colors[e.tail] == VertexColor::White || g.colors[e.head] == VertexColor::White)) {
      return bcr::ErrorCode::WhiteWithSolidEdge;
    }
  }
  for (int v = 0; v < n; ++v) {
    int dashed = 0;
    for (const Edge& e : g.edges) dashed += e.kind == EdgeKind::Dashed && (e.tail == v || e.head == v);
    if (g.colors[v] == VertexColor::White && dashed < 3) return bcr::ErrorCode::WhiteValencyBelowThree;
    if (g.colors[v] == VertexColor::Black && dashed + g.loops[v] == 0) return bcr::ErrorCode::BlackWithoutDashed;
  }
  return std::nullopt;
}

/// Relation check from first principles: double edges, the defect-0
/// admissibility cut, and odd symmetries.
inline bool vanishes(const GraphData& g, bool defect_zero) {
  std::map<std::pair<int, int>, std::pair<int, int>> kinds;  // pair -> (solid, dashed) counts
  for (const Edge& e : g.edges) {
    auto& c = kinds[{std::min(e.tail, e.head), std::max(e.tail, e.head)}];
    (e.kind == EdgeKind::Solid ? c.first : c.second)++;
  }
  for (const auto& [pair, c] : kinds) {
    if (c.first > 1 || c.second > 1) return true;
    if (defect_zero && c.first == 1 && c.second == 1) return true;
  }
  if (defect_zero) {
    std::vector<int> solid(g.colors.size(), 0);
    for (const Edge& e : g.edges) {
      if (e.kind == EdgeKind::Solid) {
        ++solid[e.tail];
        ++solid[e.head];
      }
    }
    if (*std::max_element(solid.begin(), solid.end()) >= 3) return true;
  }
  return symmetry(g).odd;
}

inline bool connected(const GraphData& g) {
  const int n = static_cast<int>(g.colors.size());
  if (n == 0) return true;
  std::vector<int> seen(n, 0), stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const Edge& e : g.edges) {
      for (auto [a, b] : {std::pair(e.tail, e.head), std::pair(e.head, e.tail)}) {
        if (a == v && !seen[b]) {
          seen[b] = 1;
          stack.push_back(b);
        }
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](int x) { return x; });
}

/// Exhaustive generation of the basis of D^{k,l}_g as a set of min-shapes:
/// every coloring, every subset of dashed pairs, every loop placement and
/// every subset of solid black pairs, filtered by the defining conditions.
inline std::set<Shape> brute_force_basis(int k, int l, int g) {
  std::set<Shape> out;
  const int V = 2 * k - l;
  if (V <= 0) return out;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < V; ++a) {
    for (int b = a + 1; b < V; ++b) pairs.emplace_back(a, b);
  }
  for (int W = 0; W <= V; ++W) {
    const int B = V - W;
    std::vector<VertexColor> colors(B, VertexColor::Black);
    colors.resize(V, VertexColor::White);
    std::vector<std::pair<int, int>> black_pairs;
    for (auto [a, b] : pairs) {
      if (b < B) black_pairs.emplace_back(a, b);
    }
    const int dashed_total = k + W;  // including loops
    for (std::uint32_t dmask = 0; dmask < (1u << pairs.size()); ++dmask) {
      const int dashed_edges = __builtin_popcount(dmask);
      const int loops_total = dashed_total - dashed_edges;
      if (loops_total < 0 || loops_total > B) continue;
      const int solid_total = g - 1 + V - dashed_edges;
      if (solid_total < 0 || solid_total > static_cast<int>(black_pairs.size())) continue;
      std::vector<Edge> dashed;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (dmask >> i & 1u) dashed.push_back(Edge{EdgeKind::Dashed, pairs[i].first, pairs[i].second});
      }
      // loops: at most one per black vertex suffices for l <= 2
      for (std::uint32_t lmask = 0; lmask < (1u << B); ++lmask) {
        if (__builtin_popcount(lmask) != loops_total) continue;
        std::vector<int> loops(V, 0);
        for (int v = 0; v < B; ++v) loops[v] = lmask >> v & 1u;
        GraphData base{colors, dashed, loops};
        // defect check: every white dashed valency >= 3, black >= 1, sum matches
        int defect_sum = 0;
        bool ok = true;
        for (int v = 0; v < V; ++v) {
          int val = 2 * loops[v];
          for (const Edge& e : dashed) val += (e.tail == v) + (e.head == v);
          const int d = val - (v < B ? 1 : 3);
          if (d < 0) ok = false;
          defect_sum += d;
        }
        if (!ok || defect_sum != l) continue;
        for (std::uint32_t smask = 0; smask < (1u << black_pairs.size()); ++smask) {
          if (__builtin_popcount(smask) != solid_total) continue;
          GraphData full{colors, {}, loops};
          for (std::size_t i = 0; i < black_pairs.size(); ++i) {
            if (smask >> i & 1u) full.edges.push_back(Edge{EdgeKind::Solid, black_pairs[i].first, black_pairs[i].second});
          }
          full.edges.insert(full.edges.end(), dashed.begin(), dashed.end());
          if (violated_rule(full) || !connected(full) || vanishes(full, l == 0)) continue;
          out.insert(min_shape(full));
        }
      }
    }
  }
  return out;
}

/// Rank over Q by textbook Gaussian elimination on a dense copy.
inline std::size_t dense_rank(const bcr::SparseRationalMatrix& m) {
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols(), Rational(0)));
  for (const auto& [key, value] : m.entries()) a[key.first][key.second] = value;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && a[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < m.cols(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

/// Signed count over all (2k)! bijections B(Γ) -> V(C), checking the four
/// conditions directly.
inline std::int64_t brute_force_pairing(const LabeledBcrGraph& g, const bcr::ChordDiagram& c) {
  const int n = 2 * c.order();
  if (g.black_count() != n || g.white_count() != 0 || g.small_loop_count() != 0) return 0;
  std::vector<bcr::ChordPoint> points;  // induced order
  for (const auto& ch : c.chords) {
    points.push_back(ch.from);
    points.push_back(ch.to);
  }
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::int64_t total = 0;
  do {
    // (II): dashed edges onto chords, bijectively
    std::set<int> chords_hit;
    bool ok = true;
    int reversed = 0;
    int dashed = 0;
    for (const Edge& e : g.edges()) {
      if (e.kind != EdgeKind::Dashed) continue;
      ++dashed;
      const int a = sigma[e.tail], b = sigma[e.head];
      if (a / 2 != b / 2) {
        ok = false;
        break;
      }
      chords_hit.insert(a / 2);
      if (a > b) ++reversed;
    }
    if (!ok || dashed != c.order() || static_cast<int>(chords_hit.size()) != c.order()) continue;
    // (III) and orientation of solid edges
    for (const Edge& e : g.edges()) {
      if (e.kind != EdgeKind::Solid) continue;
      const auto& p = points[sigma[e.tail]];
      const auto& q = points[sigma[e.head]];
      if (p.line != q.line) ok = false;
      if (p.height > q.height) ++reversed;
    }
    if (!ok) continue;
    // (IV)
    for (int v = 0; v < n && ok; ++v) {
      const auto& p = points[sigma[v]];
      if (p.height == 0) continue;
      bool fed = false;
      for (const Edge& e : g.edges()) {
        if (e.kind != EdgeKind::Solid) continue;
        if (e.tail == v && points[sigma[e.head]].height < p.height && points[sigma[e.head]].line == p.line) fed = true;
        if (e.head == v && points[sigma[e.tail]].height < p.height && points[sigma[e.tail]].line == p.line) fed = true;
      }
      ok = fed;
    }
    if (!ok) continue;
    total += parity(sigma) * (reversed % 2 == 0 ? 1 : -1);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

/// Number of solid structures on V(C) obeying (III), (IV), eta-valency <= 2
/// and edge count Σ t_i, by subset enumeration over same-line pairs.
inline std::int64_t brute_force_G_count(const bcr::ChordDiagram& c) {
  std::vector<bcr::ChordPoint> pts;
  for (int i = 0; i < c.line_count(); ++i) {
    for (int h = 0; h <= c.heights[i]; ++h) pts.push_back({i + 1, h});
  }
  std::vector<std::pair<int, int>> pairs;  // lower, upper
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = 0; b < pts.size(); ++b) {
      if (pts[a].line == pts[b].line && pts[a].height < pts[b].height) pairs.emplace_back(a, b);
    }
  }
  const int needed = std::accumulate(c.heights.begin(), c.heights.end(), 0);
  std::int64_t count = 0;
  std::vector<int> valency(pts.size(), 0), fed(pts.size(), 0);
  auto rec = [&](auto&& self, std::size_t from, int left) -> void {
    if (left == 0) {
      for (std::size_t v = 0; v < pts.size(); ++v) {
        if (pts[v].height > 0 && fed[v] == 0) return;
      }
      ++count;
      return;
    }
    for (std::size_t i = from; i < pairs.size(); ++i) {
      auto [a, b] = pairs[i];
      if (valency[a] >= 2 || valency[b] >= 2) continue;
      ++valency[a], ++valency[b], ++fed[b];
      self(self, i + 1, left - 1);
      --valency[a], --valency[b], --fed[b];
    }
  };
  rec(rec, 0, needed);
  return count;
}

}  // namespace oracle
