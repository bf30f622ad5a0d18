#pragma once

// Reference orientations for the two classes of G(C2) and the cocycle
// normalization built on them.
//
// G(C2) holds four drawn graphs: one of class Γ_d (#Aut = 4) and three of
// class Γ_e (#Aut = 2). The reference orientation of Γ_d makes its drawn
// sign -1; that of Γ_e makes the three drawn signs {+1, +1, -1}. A weight w
// on the canonical representative equals epsilon * w on the reference one.

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "bcr/chord.hpp"
#include "bcr/complex.hpp"
#include "bcr/sparse_matrix.hpp"

namespace bcr {

struct FrameClass {
  LabeledBcrGraph representative;   // canonical representative
  std::int64_t automorphisms;
  std::vector<int> canonical_signs;  // drawn signs relative to the canonical representative
  int epsilon;                       // reference = epsilon * canonical

  Rational weight(const GraphVector& h) const { return epsilon * h.coefficient(representative); }
};

struct ThetaFrame {
  FrameClass gamma_d;
  FrameClass gamma_e;
};

inline ThetaFrame theta_frame() {
  std::vector<FrameClass> classes;
  for (const GEntry& entry : enumerate_G(diagram_c2())) {
    if (entry.cls.cls.is_zero) throw Error(ErrorCode::InternalCoverage, "G(C2) holds a vanishing class");
    const LabeledBcrGraph& rep = entry.cls.cls.representative;
    auto it = std::find_if(classes.begin(), classes.end(), [&](const FrameClass& f) { return f.representative == rep; });
    if (it == classes.end()) {
      classes.push_back(FrameClass{rep, entry.automorphisms, {}, 1});
      it = std::prev(classes.end());
    }
    it->canonical_signs.push_back(entry.cls.sign);
  }
  const FrameClass* d = nullptr;
  const FrameClass* e = nullptr;
  for (const FrameClass& f : classes) {
    if (f.automorphisms == 4 && f.canonical_signs.size() == 1) d = &f;
    if (f.automorphisms == 2 && f.canonical_signs.size() == 3) e = &f;
  }
  if (classes.size() != 2 || !d || !e) throw Error(ErrorCode::InternalCoverage, "unexpected structure of G(C2)");
  ThetaFrame frame{*d, *e};
  frame.gamma_d.epsilon = -frame.gamma_d.canonical_signs.front();
  const int sum = std::accumulate(frame.gamma_e.canonical_signs.begin(), frame.gamma_e.canonical_signs.end(), 0);
  frame.gamma_e.epsilon = sum > 0 ? 1 : -1;
  return frame;
}

/// Kernel vector of `m` over `basis` whose reference weight on Γ_e is -1.
inline std::optional<RationalVector> normalize_gamma_e(const SparseRationalMatrix& m, const Basis& basis,
                                                       const ThetaFrame& frame) {
  const auto index = basis.index_of(frame.gamma_e.representative);
  if (!index) return std::nullopt;
  return solve_affine(m, {{*index, Rational(-frame.gamma_e.epsilon)}});
}

inline GraphVector to_graph_vector(const Basis& basis, const RationalVector& coefficients) {
  GraphVector h;
  for (std::size_t i = 0; i < basis.size(); ++i) h.add(basis.elements[i], coefficients.at(i));
  return h;
}

}  // namespace bcr
