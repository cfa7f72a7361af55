#include "qboson/tensor.hpp"

#include "qboson/error.hpp"

namespace qb {

AlgebraElement elem_of_word(const Context& ctx, Flavor f, const NormalWord& w) {
  AlgebraElement e(&ctx, f);
  e.add_term(w, Scalar(1));
  return e;
}

TensorElement TensorElement::one(const Context& ctx, Flavor leg1, Flavor leg2) {
  TensorElement t(&ctx, leg1, leg2);
  NormalWord id;
  id.torus.assign(static_cast<size_t>(ctx.datum.rank), 0);
  t.add_term(id, id, Scalar(1));
  return t;
}

TensorElement TensorElement::simple(const AlgebraElement& a, const AlgebraElement& b) {
  TensorElement t(a.ctx(), a.flavor(), b.flavor());
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) t.add_term(wa, wb, ca * cb);
  return t;
}

void TensorElement::add_term(const NormalWord& a, const NormalWord& b, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace({a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TensorElement TensorElement::operator+(const TensorElement& o) const {
  if (leg1_ != o.leg1_ || leg2_ != o.leg2_)
    fail(Err::FLAVOR_MISMATCH, "adding tensors with different leg flavors");
  TensorElement r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(k.first, k.second, c);
  return r;
}

TensorElement TensorElement::operator-(const TensorElement& o) const {
  if (leg1_ != o.leg1_ || leg2_ != o.leg2_)
    fail(Err::FLAVOR_MISMATCH, "subtracting tensors with different leg flavors");
  TensorElement r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(k.first, k.second, -c);
  return r;
}

TensorElement TensorElement::operator*(const Scalar& s) const {
  TensorElement r(ctx_, leg1_, leg2_);
  if (s.is_zero()) return r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, c * s);
  return r;
}

TensorElement TensorElement::mul(const TensorElement& o, int leg1_e_height_cap) const {
  if (leg1_ != o.leg1_ || leg2_ != o.leg2_)
    fail(Err::FLAVOR_MISMATCH, "multiplying tensors with different leg flavors");
  TensorElement r(ctx_, leg1_, leg2_);
  for (const auto& [k1, c1] : terms_) {
    for (const auto& [k2, c2] : o.terms_) {
      if (leg1_e_height_cap >= 0 &&
          static_cast<int>(k1.first.e_word.size() + k2.first.e_word.size()) > leg1_e_height_cap)
        continue;
      AlgebraElement left =
          multiply(elem_of_word(*ctx_, leg1_, k1.first), elem_of_word(*ctx_, leg1_, k2.first));
      AlgebraElement right =
          multiply(elem_of_word(*ctx_, leg2_, k1.second), elem_of_word(*ctx_, leg2_, k2.second));
      const Scalar c = c1 * c2;
      for (const auto& [wl, cl] : left.terms())
        for (const auto& [wr, cr] : right.terms()) r.add_term(wl, wr, c * cl * cr);
    }
  }
  return r;
}

TensorElement TensorElement::apply_leg1(
    Flavor new_flavor, const std::function<AlgebraElement(const AlgebraElement&)>& fn) const {
  TensorElement r(ctx_, new_flavor, leg2_);
  for (const auto& [k, c] : terms_) {
    AlgebraElement img = fn(elem_of_word(*ctx_, leg1_, k.first));
    for (const auto& [w, cw] : img.terms()) r.add_term(w, k.second, c * cw);
  }
  return r;
}

TensorElement TensorElement::apply_leg2(
    Flavor new_flavor, const std::function<AlgebraElement(const AlgebraElement&)>& fn) const {
  TensorElement r(ctx_, leg1_, new_flavor);
  for (const auto& [k, c] : terms_) {
    AlgebraElement img = fn(elem_of_word(*ctx_, leg2_, k.second));
    for (const auto& [w, cw] : img.terms()) r.add_term(k.first, w, c * cw);
  }
  return r;
}

TensorElement TensorElement::component_leg1_weight(const RootWeight& w) const {
  TensorElement r(ctx_, leg1_, leg2_);
  for (const auto& [k, c] : terms_) {
    RootWeight wt =
        word_weight(ctx_->datum, k.first.e_word) - word_weight(ctx_->datum, k.first.f_word);
    if (wt == w) r.terms_.emplace(k, c);
  }
  return r;
}

TensorElement TensorElement::project_leg1_e_height(int m) const {
  TensorElement r(ctx_, leg1_, leg2_);
  for (const auto& [k, c] : terms_)
    if (static_cast<int>(k.first.e_word.size()) <= m) r.terms_.emplace(k, c);
  return r;
}

int TensorElement::max_leg1_e_height() const {
  int m = 0;
  for (const auto& [k, c] : terms_) m = std::max(m, static_cast<int>(k.first.e_word.size()));
  return m;
}

}  // namespace qb
