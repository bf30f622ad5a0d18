#pragma once

#include <map>
#include <utility>

#include "bcr/canonical.hpp"
#include "bcr/rational.hpp"

namespace bcr {

/// Finite formal sum of nonzero canonical classes with rational
/// coefficients. Keys are canonical representatives; zero coefficients are
/// never stored.
class GraphVector {
 public:
  using Map = std::map<LabeledBcrGraph, Rational>;

  GraphVector() = default;

  /// Adds coef * g after canonicalizing; zero classes are dropped.
  void add(const LabeledBcrGraph& g, const Rational& coef) { add(canonicalize(g), coef); }

  void add(const SignedClass& c, const Rational& coef) {
    if (c.cls.is_zero || coef == 0) return;
    add_representative(c.cls.representative, c.sign * coef);
  }

  /// `rep` must already be canonical and nonzero.
  void add_representative(const LabeledBcrGraph& rep, const Rational& coef) {
    if (coef == 0) return;
    auto [it, inserted] = terms_.try_emplace(rep, coef);
    if (!inserted) {
      it->second += coef;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coefficient(const LabeledBcrGraph& rep) const {
    auto it = terms_.find(rep);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  GraphVector& operator+=(const GraphVector& other) {
    for (const auto& [rep, coef] : other.terms_) add_representative(rep, coef);
    return *this;
  }

  GraphVector& operator*=(const Rational& scalar) {
    if (scalar == 0) {
      terms_.clear();
    } else {
      for (auto& kv : terms_) kv.second *= scalar;
    }
    return *this;
  }

  friend GraphVector operator+(GraphVector a, const GraphVector& b) { return a += b; }
  friend GraphVector operator*(const Rational& s, GraphVector v) { return v *= s; }
  friend bool operator==(const GraphVector& a, const GraphVector& b) { return a.terms_ == b.terms_; }

  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const Map& terms() const noexcept { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

 private:
  Map terms_;
};

}  // namespace bcr
