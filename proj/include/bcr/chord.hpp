#pragma once

// Chord diagrams on directed lines, the graph set G(C), the graph-chord
// pairing and the counting formula.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "bcr/canonical.hpp"
#include "bcr/graph.hpp"
#include "bcr/graph_vector.hpp"

namespace bcr {

/// Point (i, l) of V(C): line i (1-based), height l (0 = on the x-axis).
struct ChordPoint {
  int line;
  int height;

  friend auto operator<=>(const ChordPoint&, const ChordPoint&) = default;
};

/// Ordered pair from -> to carrying a sign +1 / -1.
struct Chord {
  ChordPoint from;
  ChordPoint to;
  int sign = 1;

  friend bool operator==(const Chord&, const Chord&) = default;
};

struct ChordDiagram {
  std::vector<int> heights;  // t_i per line
  std::vector<Chord> chords;

  int order() const noexcept { return static_cast<int>(chords.size()); }
  int line_count() const noexcept { return static_cast<int>(heights.size()); }
  friend bool operator==(const ChordDiagram&, const ChordDiagram&) = default;
};

/// Checks run in order: points exist, no point reused, every point covered,
/// no chord between two axis points, axis points come first.
inline ChordDiagram validate_diagram(std::vector<int> heights, std::vector<Chord> chords) {
  for (int t : heights) {
    if (t < 0) throw Error(ErrorCode::BadVertexCount, "negative line height");
  }
  std::map<ChordPoint, int> used;
  for (std::size_t c = 0; c < chords.size(); ++c) {
    for (const ChordPoint& p : {chords[c].from, chords[c].to}) {
      if (p.line < 1 || p.line > static_cast<int>(heights.size()) || p.height < 0 ||
          p.height > heights[p.line - 1]) {
        throw Error(ErrorCode::BadVertexCount, "chord " + std::to_string(c + 1) + " leaves the diagram");
      }
      if (used[p]++ > 0) {
        throw Error(ErrorCode::VertexReused, "point (" + std::to_string(p.line) + "," + std::to_string(p.height) + ")");
      }
    }
    if (chords[c].sign != 1 && chords[c].sign != -1) throw Error(ErrorCode::ParseFailure, "chord sign");
  }
  const int points = std::accumulate(heights.begin(), heights.end(), 0) + static_cast<int>(heights.size());
  if (points != 2 * static_cast<int>(chords.size())) {
    throw Error(ErrorCode::BadVertexCount, std::to_string(points) + " points for " + std::to_string(chords.size()) +
                                               " chords");
  }
  for (std::size_t c = 0; c < chords.size(); ++c) {
    if (chords[c].from.height == 0 && chords[c].to.height == 0) {
      throw Error(ErrorCode::AxisAxisChord, "chord " + std::to_string(c + 1));
    }
    if (chords[c].to.height == 0) throw Error(ErrorCode::AxisNotFirst, "chord " + std::to_string(c + 1));
  }
  return ChordDiagram{std::move(heights), std::move(chords)};
}

/// g = (chords whose first point is off the x-axis) + 1.
inline int loop_parameter(const ChordDiagram& c) {
  return 1 + static_cast<int>(std::count_if(c.chords.begin(), c.chords.end(),
                                            [](const Chord& ch) { return ch.from.height != 0; }));
}

inline int cycle_degree(const ChordDiagram& c, int n, int j) {
  if (!(n > j && j >= 3)) throw Error(ErrorCode::UnsupportedRange, "cycle degree needs n > j >= 3");
  return c.order() * (n - j - 2) + (loop_parameter(c) - 1) * (j - 1);
}

/// r(C): number of chords with negative sign.
inline int negative_chords(const ChordDiagram& c) {
  return static_cast<int>(std::count_if(c.chords.begin(), c.chords.end(), [](const Chord& ch) { return ch.sign < 0; }));
}

/// Induced ordering of V(C): chord c contributes labels 2c (first point) and
/// 2c + 1 (second point), 0-based.
inline std::vector<ChordPoint> induced_points(const ChordDiagram& c) {
  std::vector<ChordPoint> points;
  for (const Chord& ch : c.chords) {
    points.push_back(ch.from);
    points.push_back(ch.to);
  }
  return points;
}

inline std::map<ChordPoint, int> induced_labels(const ChordDiagram& c) {
  std::map<ChordPoint, int> label;
  const auto points = induced_points(c);
  for (std::size_t v = 0; v < points.size(); ++v) label[points[v]] = static_cast<int>(v);
  return label;
}

/// Graph drawn on V(C) with the induced label: chords become dashed edges
/// first -> second, solid edges point up their line. `parent[label]` is the
/// solid parent of each off-axis point.
inline LabeledBcrGraph drawn_graph(const ChordDiagram& c, const std::vector<int>& parent) {
  const int n = 2 * c.order();
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) {
    if (parent[v] >= 0) edges.push_back(Edge{EdgeKind::Solid, parent[v], v});
  }
  for (int ch = 0; ch < c.order(); ++ch) edges.push_back(Edge{EdgeKind::Dashed, 2 * ch, 2 * ch + 1});
  return build_graph(std::vector<VertexColor>(n, VertexColor::Black), std::move(edges), {});
}

/// One element of G(C): the drawn graph, its class and its symmetry count.
struct GEntry {
  LabeledBcrGraph drawn;
  SignedClass cls;  // drawn = cls.sign * representative
  std::int64_t automorphisms;
};

/// Solid structures allowed on V(C): on each line the points 1..t hang from
/// the axis point in at most two increasing chains. Chain choices are made
/// independently per line, so |G(C)| is the product of 2^(t_i - 1) over
/// lines with t_i >= 1.
inline std::vector<GEntry> enumerate_G(const ChordDiagram& c) {
  const auto label = induced_labels(c);
  const int s = c.line_count();
  std::vector<std::uint64_t> choices(s, 1);
  for (int i = 0; i < s; ++i) {
    if (c.heights[i] >= 1) choices[i] = std::uint64_t{1} << (c.heights[i] - 1);
  }
  std::vector<GEntry> out;
  std::vector<std::uint64_t> mask(s, 0);
  while (true) {
    std::vector<int> parent(2 * c.order(), -1);
    for (int i = 0; i < s; ++i) {
      // chain tops; the point at height 1 always opens chain 0
      int top[2] = {0, 0};
      for (int h = 1; h <= c.heights[i]; ++h) {
        const int chain = h == 1 ? 0 : static_cast<int>((mask[i] >> (h - 2)) & 1u);
        parent[label.at({i + 1, h})] = label.at({i + 1, top[chain]});
        top[chain] = h;
      }
    }
    LabeledBcrGraph drawn = drawn_graph(c, parent);
    SignedClass cls = canonicalize(drawn, true);
    const std::int64_t aut = automorphism_count(drawn);
    out.push_back(GEntry{std::move(drawn), std::move(cls), aut});

    int i = s - 1;
    while (i >= 0 && ++mask[i] == choices[i]) mask[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

/// <Γ, C>: signed count of bijections B(Γ) -> V(C) sending dashed edges onto
/// chords, solid components into single lines, and giving every off-axis
/// point an ingoing solid edge from below. Each assignment contributes the
/// sign of the relabeling from Γ to the induced label.
inline std::int64_t graph_chord_pairing(const LabeledBcrGraph& g, const ChordDiagram& c) {
  const int k = c.order();
  if (g.black_count() != 2 * k || g.white_count() != 0 || g.small_loop_count() != 0) return 0;
  std::vector<int> dashed;
  std::vector<int> dashed_deg(g.vertex_count(), 0);
  for (int e = 0; e < g.edge_count(); ++e) {
    if (g.edge(e).kind != EdgeKind::Dashed) continue;
    dashed.push_back(e);
    ++dashed_deg[g.edge(e).tail];
    ++dashed_deg[g.edge(e).head];
  }
  if (static_cast<int>(dashed.size()) != k) return 0;
  if (std::any_of(dashed_deg.begin(), dashed_deg.end(), [](int d) { return d != 1; })) return 0;

  const auto points = induced_points(c);
  std::vector<int> image(g.vertex_count(), -1);  // vertex -> induced label
  std::vector<bool> chord_used(k, false);
  std::int64_t total = 0;

  auto finish = [&]() -> int {
    int reversed = 0;
    for (const Edge& e : g.edges()) {
      if (e.kind != EdgeKind::Solid) continue;
      const ChordPoint& a = points[image[e.tail]];
      const ChordPoint& b = points[image[e.head]];
      if (a.line != b.line) return 0;
      if (a.height > b.height) ++reversed;
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
      const ChordPoint& p = points[image[v]];
      if (p.height == 0) continue;
      bool fed = false;
      for (const Edge& e : g.edges()) {
        if (e.kind != EdgeKind::Solid || (e.tail != v && e.head != v)) continue;
        const ChordPoint& q = points[image[e.tail == v ? e.head : e.tail]];
        if (q.height < p.height) fed = true;
      }
      if (!fed) return 0;
    }
    for (int e : dashed) {
      if (image[g.edge(e).tail] % 2 == 1) ++reversed;
    }
    return permutation_sign(image) * (reversed % 2 == 0 ? 1 : -1);
  };

  auto assign = [&](auto&& self, std::size_t j) -> void {
    if (j == dashed.size()) {
      total += finish();
      return;
    }
    const Edge& e = g.edge(dashed[j]);
    for (int ch = 0; ch < k; ++ch) {
      if (chord_used[ch]) continue;
      chord_used[ch] = true;
      for (int flip = 0; flip < 2; ++flip) {
        image[e.tail] = 2 * ch + flip;
        image[e.head] = 2 * ch + 1 - flip;
        self(self, j + 1);
      }
      chord_used[ch] = false;
    }
  };
  assign(assign, 0);
  return total;
}

/// Contribution of one class of G(C) to the counting formula.
struct ClassContribution {
  LabeledBcrGraph representative;
  Rational weight;             // coefficient of H on the class
  std::int64_t automorphisms;  // #Aut of the underlying graph
  std::vector<int> signs;      // s(Γ, Γ̄) for each drawn copy
  Rational contribution;       // weight * automorphisms * Σ signs
};

struct CountingResult {
  Rational value;
  int negative_chords = 0;
  std::vector<ClassContribution> breakdown;
};

inline void check_order(const GraphVector& h, const ChordDiagram& c) {
  for (const auto& [rep, coef] : h) {
    if (order(rep) != c.order()) {
      throw Error(ErrorCode::OrderMismatch, "cocycle of order " + std::to_string(order(rep)) + " against diagram of order " +
                                                std::to_string(c.order()));
    }
  }
}

/// (-1)^r(C) Σ_{Γ̄ ∈ G(C)} w(Γ) #Aut(Γ̄) s(Γ, Γ̄). Classes that vanish in the
/// complex contribute nothing and are left out of the breakdown.
inline CountingResult counting_formula(const GraphVector& h, const ChordDiagram& c) {
  check_order(h, c);
  CountingResult result;
  result.negative_chords = negative_chords(c);
  for (const GEntry& entry : enumerate_G(c)) {
    if (entry.cls.cls.is_zero) continue;
    const LabeledBcrGraph& rep = entry.cls.cls.representative;
    auto it = std::find_if(result.breakdown.begin(), result.breakdown.end(),
                           [&](const ClassContribution& x) { return x.representative == rep; });
    if (it == result.breakdown.end()) {
      result.breakdown.push_back(ClassContribution{rep, h.coefficient(rep), entry.automorphisms, {}, 0});
      it = std::prev(result.breakdown.end());
    }
    it->signs.push_back(entry.cls.sign);
  }
  Rational total = 0;
  for (ClassContribution& x : result.breakdown) {
    const int sign_sum = std::accumulate(x.signs.begin(), x.signs.end(), 0);
    x.contribution = x.weight * Rational(x.automorphisms) * Rational(sign_sum);
    total += x.contribution;
  }
  result.value = result.negative_chords % 2 == 0 ? total : Rational(-total);
  return result;
}

/// Two lines of height 2; the middle chord joins the two orbits.
inline ChordDiagram diagram_c2() {
  return validate_diagram({2, 2}, {Chord{{2, 0}, {1, 2}, 1}, Chord{{1, 0}, {2, 2}, 1}, Chord{{1, 1}, {2, 1}, -1}});
}

/// One line of height 3 with two interleaved chords.
inline ChordDiagram diagram_c1() {
  return validate_diagram({3}, {Chord{{1, 0}, {1, 2}, -1}, Chord{{1, 1}, {1, 3}, 1}});
}

/// k lines of height 1, chord i from (i, 0) to (i + 1 mod k, 1).
inline ChordDiagram wheel_diagram(int k) {
  std::vector<Chord> chords;
  for (int i = 1; i <= k; ++i) chords.push_back(Chord{{i, 0}, {i % k + 1, 1}, 1});
  return validate_diagram(std::vector<int>(k, 1), std::move(chords));
}

}  // namespace bcr
