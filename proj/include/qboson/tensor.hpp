#pragma once

#include <functional>
#include <map>

#include "qboson/algebra.hpp"

namespace qb {

/// Finite scalar combination of pairs of normal words; both legs individually
/// normalized. Carrier for coproduct images, C and C^-1.
class TensorElement {
 public:
  using Key = std::pair<NormalWord, NormalWord>;

  TensorElement() : ctx_(nullptr), leg1_(Flavor::U), leg2_(Flavor::U) {}
  TensorElement(const Context* ctx, Flavor leg1, Flavor leg2)
      : ctx_(ctx), leg1_(leg1), leg2_(leg2) {}

  static TensorElement one(const Context& ctx, Flavor leg1, Flavor leg2);
  /// a (x) b, distributing over the terms of both sides.
  static TensorElement simple(const AlgebraElement& a, const AlgebraElement& b);

  const Context* ctx() const { return ctx_; }
  Flavor leg1() const { return leg1_; }
  Flavor leg2() const { return leg2_; }
  const std::map<Key, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const NormalWord& a, const NormalWord& b, const Scalar& c);

  TensorElement operator+(const TensorElement& o) const;
  TensorElement operator-(const TensorElement& o) const;
  TensorElement operator*(const Scalar& s) const;
  bool operator==(const TensorElement& o) const {
    return leg1_ == o.leg1_ && leg2_ == o.leg2_ && terms_ == o.terms_;
  }
  bool operator!=(const TensorElement& o) const { return !(*this == o); }

  /// Componentwise product (a(x)b)(c(x)d) = ac (x) bd. When cap >= 0, term
  /// pairs whose combined first-leg e-height exceeds the cap are dropped.
  TensorElement mul(const TensorElement& o, int leg1_e_height_cap = -1) const;

  /// Applies a linear map to one leg; fn must accept single-term elements of
  /// the current leg flavor and return elements of new_flavor.
  TensorElement apply_leg1(Flavor new_flavor,
                           const std::function<AlgebraElement(const AlgebraElement&)>& fn) const;
  TensorElement apply_leg2(Flavor new_flavor,
                           const std::function<AlgebraElement(const AlgebraElement&)>& fn) const;

  /// Terms whose first leg has the given weight.
  TensorElement component_leg1_weight(const RootWeight& w) const;
  /// Terms whose first leg has e-height <= m.
  TensorElement project_leg1_e_height(int m) const;
  int max_leg1_e_height() const;

 private:
  const Context* ctx_;
  Flavor leg1_, leg2_;
  std::map<Key, Scalar> terms_;
};

/// Single-term element for a normal word (no reduction: the word must already
/// be a normal-form label).
AlgebraElement elem_of_word(const Context& ctx, Flavor f, const NormalWord& w);

}  // namespace qb
