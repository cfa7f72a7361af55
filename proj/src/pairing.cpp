#include "qboson/pairing.hpp"

#include "qboson/error.hpp"

namespace qb {

namespace {

Scalar q_power_rational(const Context& ctx, const mpq_class& e) {
  // q^e = v^(e*D); the datum guarantees integrality of e*D
  mpq_class scaled = e * ctx.datum.exp_denom;
  if (scaled.get_den() != 1)
    fail(Err::BAD_CARTAN, "q-exponent not a multiple of 1/D");
  if (!scaled.get_num().fits_slong_p()) fail(Err::OUT_OF_RANGE, "q-exponent too large");
  return Scalar::v_power(scaled.get_num().get_si());
}

Scalar qpow(const Context& ctx, long e) { return Scalar::v_power(e * ctx.datum.exp_denom); }

}  // namespace

Scalar pair_words(const Context& ctx, const Word& e_word, const Word& f_word) {
  if (e_word.empty() && f_word.empty()) return Scalar(1);
  if (!(word_weight(ctx.datum, e_word) == word_weight(ctx.datum, f_word))) return Scalar(0);
  {
    std::lock_guard<std::mutex> lk(ctx.pair_mu);
    auto it = ctx.pair_cache.find({e_word, f_word});
    if (it != ctx.pair_cache.end()) return it->second;
  }

  // peel the first f-letter: <x, f_j y'> = <Delta(x), f_j (x) y'>; only
  // first legs of weight alpha_j pair nontrivially against f_j
  const int j = f_word[0];
  Word f_rest(f_word.begin() + 1, f_word.end());
  const Scalar base = (qpow(ctx, -ctx.datum.d[static_cast<size_t>(j)]) -
                       qpow(ctx, ctx.datum.d[static_cast<size_t>(j)]))
                          .inverse();  // <e_j, f_j> = 1/(q_j^-1 - q_j)
  Scalar acc(0);
  auto dx = delta_e_word(ctx, e_word);
  for (const auto& [key, c] : dx->terms()) {
    const NormalWord& a = key.first;
    const NormalWord& b = key.second;
    if (a.e_word.size() != 1 || a.e_word[0] != static_cast<uint8_t>(j)) continue;
    // <T_a e_j, f_j> = q^{<T_a, alpha_j>} <e_j, f_j>
    Scalar lhs = base;
    if (!a.torus_trivial())
      lhs *= qpow(ctx, coroot_pairing_vec(ctx.datum, a.torus,
                                          RootWeight::simple(ctx.datum.rank, j)));
    // <T_b E_b, y'> = q^{<T_b, wt E_b>} <E_b, y'>
    Scalar rhs = pair_words(ctx, b.e_word, f_rest);
    if (rhs.is_zero()) continue;
    if (!b.torus_trivial())
      rhs *= qpow(ctx, coroot_pairing_vec(ctx.datum, b.torus, word_weight(ctx.datum, b.e_word)));
    acc += c * lhs * rhs;
  }

  std::lock_guard<std::mutex> lk(ctx.pair_mu);
  auto [it, _] = ctx.pair_cache.try_emplace({e_word, f_word}, acc);
  return it->second;
}

Scalar pair(const AlgebraElement& x, const AlgebraElement& y) {
  if (x.flavor() != Flavor::U || y.flavor() != Flavor::U)
    fail(Err::FLAVOR_MISMATCH, "pairing expects U-flavored arguments");
  const Context& ctx = *x.ctx();
  Scalar acc(0);
  for (const auto& [wx, cx] : x.terms()) {
    if (!wx.f_word.empty()) fail(Err::FLAVOR_MISMATCH, "left pairing argument must lie in U>=");
    for (const auto& [wy, cy] : y.terms()) {
      if (!wy.e_word.empty()) fail(Err::FLAVOR_MISMATCH, "right pairing argument must lie in U<=");
      // normal words are T1 E and F T2; shuffle tori to the outside:
      // T1 E = q^{<T1, wt E>} E T1, then <E q^{T1}, F q^{T2}> = q^{-(T1|T2)} <E, F>
      Scalar w = pair_words(ctx, wx.e_word, wy.f_word);
      if (w.is_zero()) continue;
      if (!wx.torus_trivial())
        w *= qpow(ctx, coroot_pairing_vec(ctx.datum, wx.torus, word_weight(ctx.datum, wx.e_word)));
      mpq_class form = coroot_form_pair(ctx.datum, wx.torus, wy.torus);
      if (form != 0) w *= q_power_rational(ctx, -form);
      acc += cx * cy * w;
    }
  }
  return acc;
}

std::shared_ptr<const GramData> gram(const Context& ctx, const RootWeight& beta) {
  {
    std::lock_guard<std::mutex> lk(ctx.gram_mu);
    auto it = ctx.gram_cache.find(beta);
    if (it != ctx.gram_cache.end()) return std::static_pointer_cast<const GramData>(it->second);
  }
  auto bd = weight_basis(ctx, beta);
  auto gd = std::make_shared<GramData>();
  gd->weight = beta;
  gd->basis = bd->basis;
  const size_t n = bd->basis.size();
  gd->gram = mat_zero(n, n);
  for (size_t r = 0; r < n; ++r)
    for (size_t s = 0; s < n; ++s) gd->gram[r][s] = pair_words(ctx, bd->basis[r], bd->basis[s]);
  auto inv = mat_inverse(gd->gram);
  if (!inv)
    fail(Err::DEGENERATE_GRAM, "gram matrix singular at weight " + beta.str() +
                                   " (engine bug: the form is nondegenerate per weight)");
  gd->inverse = std::move(*inv);

  std::lock_guard<std::mutex> lk(ctx.gram_mu);
  auto [it, _] = ctx.gram_cache.try_emplace(beta, gd);
  return std::static_pointer_cast<const GramData>(it->second);
}

std::vector<AlgebraElement> dual_basis(const Context& ctx, const RootWeight& beta) {
  auto gd = gram(ctx, beta);
  const size_t n = gd->basis.size();
  const TorusVec zero_t(static_cast<size_t>(ctx.datum.rank), 0);
  std::vector<AlgebraElement> out;
  out.reserve(n);
  for (size_t s = 0; s < n; ++s) {
    AlgebraElement y(&ctx, Flavor::U);
    for (size_t t = 0; t < n; ++t) {
      if (gd->inverse[t][s].is_zero()) continue;
      NormalWord w;
      w.f_word = gd->basis[t];
      w.torus = zero_t;
      y.add_term(w, gd->inverse[t][s]);
    }
    out.push_back(std::move(y));
  }
  // certify duality exactly
  for (size_t r = 0; r < n; ++r) {
    AlgebraElement xr(&ctx, Flavor::U);
    NormalWord w;
    w.e_word = gd->basis[r];
    w.torus = zero_t;
    xr.add_term(w, Scalar(1));
    for (size_t s = 0; s < n; ++s) {
      Scalar v = pair(xr, out[s]);
      if (v != Scalar(r == s ? 1 : 0))
        fail(Err::IDENTITY_VIOLATION, "dual basis certification failed at " + beta.str());
    }
  }
  return out;
}

TensorElement canonical_element(const Context& ctx, const RootWeight& beta) {
  auto gd = gram(ctx, beta);
  auto duals = dual_basis(ctx, beta);
  const TorusVec zero_t(static_cast<size_t>(ctx.datum.rank), 0);
  TensorElement c(&ctx, Flavor::U, Flavor::U);
  for (size_t r = 0; r < gd->basis.size(); ++r) {
    NormalWord xr;
    xr.e_word = gd->basis[r];
    xr.torus = zero_t;
    for (const auto& [wy, cy] : duals[r].terms()) c.add_term(xr, wy, cy);
  }
  return c;
}

}  // namespace qb
