#include "qboson/algebra.hpp"

#include <algorithm>
#include <cassert>

#include "qboson/error.hpp"
#include "qboson/linalg.hpp"

namespace qb {

const char* flavor_name(Flavor f) {
  switch (f) {
    case Flavor::U: return "U";
    case Flavor::B: return "B";
    case Flavor::Bbar: return "Bbar";
  }
  return "?";
}

RootWeight word_weight(const CartanDatum& dat, const Word& w) {
  RootWeight r = RootWeight::zero(dat.rank);
  for (uint8_t i : w) r.coords[i] += 1;
  return r;
}

void check_index(const Context& ctx, int index) {
  if (index < 0 || index >= ctx.datum.rank)
    fail(Err::UNKNOWN_INDEX, "generator index " + std::to_string(index + 1) + " outside rank " +
                                 std::to_string(ctx.datum.rank));
}

namespace {

Scalar qpow(const Context& ctx, long e) { return Scalar::v_power(e * ctx.datum.exp_denom); }

Scalar qipow(const Context& ctx, int i, long e) {
  return Scalar::v_power(e * ctx.datum.qi_vexp(i));
}

TorusVec torus_add(const TorusVec& a, const TorusVec& b) {
  TorusVec r = a;
  for (size_t k = 0; k < r.size(); ++k) r[k] += b[k];
  return r;
}

bool torus_is_zero(const TorusVec& t) {
  return std::all_of(t.begin(), t.end(), [](int c) { return c == 0; });
}

/// All words with letter content beta, ascending lex order.
void words_rec(int rank, RootWeight& left, Word& cur, std::vector<Word>& out) {
  if (left.is_zero()) {
    out.push_back(cur);
    return;
  }
  for (int i = 0; i < rank; ++i) {
    if (left.coords[static_cast<size_t>(i)] == 0) continue;
    left.coords[static_cast<size_t>(i)]--;
    cur.push_back(static_cast<uint8_t>(i));
    words_rec(rank, left, cur, out);
    cur.pop_back();
    left.coords[static_cast<size_t>(i)]++;
  }
}

std::vector<Word> words_of_weight(const CartanDatum& dat, const RootWeight& beta) {
  std::vector<Word> out;
  RootWeight left = beta;
  Word cur;
  words_rec(dat.rank, left, cur, out);
  return out;
}

}  // namespace

// --- straightening -----------------------------------------------------------

namespace {
/// Combines straightening terms with equal (f, torus, e) words.
std::shared_ptr<std::vector<STerm>> combine_sterms(std::vector<STerm>&& terms) {
  std::map<std::tuple<Word, TorusVec, Word>, Scalar> acc;
  for (auto& t : terms) {
    auto [it, inserted] = acc.try_emplace({std::move(t.f), std::move(t.torus), std::move(t.e)},
                                          t.coeff);
    if (!inserted) it->second += t.coeff;
  }
  auto out = std::make_shared<std::vector<STerm>>();
  out->reserve(acc.size());
  for (auto& [key, c] : acc) {
    if (c.is_zero()) continue;
    out->push_back(STerm{std::move(c), std::get<0>(key), std::get<1>(key), std::get<2>(key)});
  }
  return out;
}
}  // namespace

std::shared_ptr<const std::vector<STerm>> straighten(const Context& ctx, Flavor flavor,
                                                     const Word& e_word, const Word& f_word) {
  {
    std::lock_guard<std::mutex> lk(ctx.straighten_mu);
    auto it = ctx.straighten_cache.find({flavor, e_word, f_word});
    if (it != ctx.straighten_cache.end()) return it->second;
  }

  const auto& dat = ctx.datum;
  auto out = std::make_shared<std::vector<STerm>>();
  const TorusVec zero_t(static_cast<size_t>(dat.rank), 0);

  if (e_word.empty() || f_word.empty()) {
    out->push_back(STerm{Scalar(1), f_word, zero_t, e_word});
  } else if (e_word.size() == 1) {
    // one e-side letter x crossing the whole f-side word
    const int x = e_word[0];
    const int y = f_word[0];
    Word f_rest(f_word.begin() + 1, f_word.end());

    Scalar pass;
    // delta terms: pairs (coefficient, torus exponent inserted at the front)
    std::vector<std::pair<Scalar, TorusVec>> deltas;
    switch (flavor) {
      case Flavor::B:
        // e''_i f_j = q_i^{<h_i,a_j>} f_j e''_i + delta_ij
        pass = qipow(ctx, x, dat.a[static_cast<size_t>(x)][static_cast<size_t>(y)]);
        if (x == y) deltas.push_back({Scalar(1), zero_t});
        break;
      case Flavor::U: {
        // e_i f_j = f_j e_i + delta_ij (t_i - t_i^-1)/(q_i - q_i^-1)
        pass = Scalar(1);
        if (x == y) {
          Scalar denom = qipow(ctx, x, 1) - qipow(ctx, x, -1);
          TorusVec tp = zero_t, tm = zero_t;
          tp[static_cast<size_t>(x)] = dat.d[static_cast<size_t>(x)];
          tm[static_cast<size_t>(x)] = -dat.d[static_cast<size_t>(x)];
          deltas.push_back({Scalar(1) / denom, tp});
          deltas.push_back({Scalar(-1) / denom, tm});
        }
        break;
      }
      case Flavor::Bbar:
        // from f'_i e_j = q_i^{<h_i,a_j>} e_j f'_i + delta_ij, with i the
        // f'-letter and j the e-letter:
        // e_j f'_i = q_i^{-<h_i,a_j>} (f'_i e_j - delta_ij)
        pass = qipow(ctx, y, -dat.a[static_cast<size_t>(y)][static_cast<size_t>(x)]);
        if (x == y) deltas.push_back({-qipow(ctx, x, -2), zero_t});
        break;
    }

    auto sub = straighten(ctx, flavor, e_word, f_rest);
    for (const auto& t : *sub) {
      Word fw;
      fw.reserve(t.f.size() + 1);
      fw.push_back(static_cast<uint8_t>(y));
      fw.insert(fw.end(), t.f.begin(), t.f.end());
      out->push_back(STerm{pass * t.coeff, std::move(fw), t.torus, t.e});
    }
    if (!deltas.empty()) {
      RootWeight rest_wt = word_weight(dat, f_rest);
      for (auto& [dc, dt] : deltas) {
        Scalar c = dc;
        if (!torus_is_zero(dt)) c *= qpow(ctx, -coroot_pairing_vec(dat, dt, rest_wt));
        out->push_back(STerm{std::move(c), f_rest, dt, Word{}});
      }
    }
  } else {
    // peel the last e-side letter, cross it first, then recurse on the prefix
    Word e_prefix(e_word.begin(), e_word.end() - 1);
    Word x{e_word.back()};
    auto crossed = straighten(ctx, flavor, x, f_word);
    for (const auto& t1 : *crossed) {
      auto sub = straighten(ctx, flavor, e_prefix, t1.f);
      for (const auto& t2 : *sub) {
        Scalar c = t1.coeff * t2.coeff;
        if (!torus_is_zero(t1.torus) && !t2.e.empty())
          c *= qpow(ctx, -coroot_pairing_vec(dat, t1.torus, word_weight(dat, t2.e)));
        Word ew = t2.e;
        ew.insert(ew.end(), t1.e.begin(), t1.e.end());
        out->push_back(STerm{std::move(c), t2.f, torus_add(t1.torus, t2.torus), std::move(ew)});
      }
    }
  }

  auto combined = combine_sterms(std::move(*out));
  std::lock_guard<std::mutex> lk(ctx.straighten_mu);
  auto [it, _] = ctx.straighten_cache.try_emplace({flavor, e_word, f_word}, std::move(combined));
  return it->second;
}

// --- Serre elements and weight-space bases ------------------------------------

RawCombo serre_element(const Context& ctx, int i, int j, GenKind) {
  check_index(ctx, i);
  check_index(ctx, j);
  if (i == j) fail(Err::SAME_INDEX, "Serre element needs i != j");
  const auto& dat = ctx.datum;
  const int n = 1 - dat.a[static_cast<size_t>(i)][static_cast<size_t>(j)];
  const long qi = dat.qi_vexp(i);
  RawCombo combo;
  for (int k = 0; k <= n; ++k) {
    Word w;
    w.insert(w.end(), static_cast<size_t>(k), static_cast<uint8_t>(i));
    w.push_back(static_cast<uint8_t>(j));
    w.insert(w.end(), static_cast<size_t>(n - k), static_cast<uint8_t>(i));
    Scalar c = Scalar(k % 2 ? -1 : 1) / (q_factorial(k, qi) * q_factorial(n - k, qi));
    combo.push_back({std::move(w), std::move(c)});
  }
  return combo;
}

std::shared_ptr<const BasisData> weight_basis(const Context& ctx, const RootWeight& beta) {
  if (!beta.in_qplus()) fail(Err::WEIGHT_MIXED, "weight space only defined on Q_+");
  if (beta.height() > ctx.height_limit)
    fail(Err::HEIGHT_LIMIT, "weight height " + std::to_string(beta.height()) +
                                " exceeds limit " + std::to_string(ctx.height_limit));
  {
    std::lock_guard<std::mutex> lk(ctx.basis_mu);
    auto it = ctx.basis_cache.find(beta);
    if (it != ctx.basis_cache.end()) return it->second;
  }

  const auto& dat = ctx.datum;
  auto bd = std::make_shared<BasisData>();
  bd->weight = beta;
  bd->words = words_of_weight(dat, beta);
  const size_t nwords = bd->words.size();
  std::map<Word, size_t> word_pos;
  for (size_t k = 0; k < nwords; ++k) word_pos[bd->words[k]] = k;

  // rows of the Serre-ideal component: u * s_ij * w over raw words, with
  // columns in descending lex order so pivots land on the lex-largest words
  auto col_of = [&](size_t word_idx) { return nwords - 1 - word_idx; };
  Matrix rows;
  for (int i = 0; i < dat.rank; ++i) {
    for (int j = 0; j < dat.rank; ++j) {
      if (i == j) continue;
      const int n = 1 - dat.a[static_cast<size_t>(i)][static_cast<size_t>(j)];
      RootWeight sigma = RootWeight::zero(dat.rank);
      sigma.coords[static_cast<size_t>(i)] = n;
      sigma.coords[static_cast<size_t>(j)] += 1;
      RootWeight rem = beta - sigma;
      if (!rem.in_qplus()) continue;
      RawCombo s = serre_element(ctx, i, j);
      // all splits rem = wL + wR and all word choices
      RootWeight wl = RootWeight::zero(dat.rank);
      std::vector<RootWeight> lefts;
      for (const auto& cand : enumerate_qplus(dat, rem.height())) {
        RootWeight diff = rem - cand;
        if (diff.in_qplus()) lefts.push_back(cand);
      }
      for (const auto& lw : lefts) {
        RootWeight rw = rem - lw;
        for (const auto& u : words_of_weight(dat, lw)) {
          for (const auto& w : words_of_weight(dat, rw)) {
            std::vector<Scalar> row(nwords);
            for (const auto& [sw, sc] : s) {
              Word full = u;
              full.insert(full.end(), sw.begin(), sw.end());
              full.insert(full.end(), w.begin(), w.end());
              row[col_of(word_pos.at(full))] += sc;
            }
            rows.push_back(std::move(row));
          }
        }
      }
    }
  }

  std::vector<bool> dependent(nwords, false);
  if (!rows.empty()) {
    auto pivots = rref(rows);
    for (size_t r = 0; r < pivots.size(); ++r) {
      size_t widx = nwords - 1 - pivots[r];
      dependent[widx] = true;
    }
    for (size_t k = 0; k < nwords; ++k)
      if (!dependent[k]) bd->basis.push_back(bd->words[k]);
    std::map<size_t, size_t> basis_pos;  // word idx -> basis position
    {
      size_t p = 0;
      for (size_t k = 0; k < nwords; ++k)
        if (!dependent[k]) basis_pos[k] = p++;
    }
    for (size_t k = 0; k < nwords; ++k) {
      std::vector<Scalar> co(bd->basis.size());
      if (!dependent[k]) co[basis_pos[k]] = Scalar(1);
      bd->coords[bd->words[k]] = std::move(co);
    }
    // pivot rows express each dependent word over later non-pivot columns
    auto pivots_again = pivots;  // rows is in RREF already
    for (size_t r = 0; r < pivots_again.size(); ++r) {
      size_t pc = pivots_again[r];
      size_t widx = nwords - 1 - pc;
      std::vector<Scalar> co(bd->basis.size());
      for (size_t c = pc + 1; c < nwords; ++c) {
        if (rows[r][c].is_zero()) continue;
        size_t other = nwords - 1 - c;
        if (dependent[other]) continue;  // RREF cleared other pivots
        co[basis_pos[other]] = -rows[r][c];
      }
      bd->coords[bd->words[widx]] = std::move(co);
    }
  } else {
    bd->basis = bd->words;
    for (size_t k = 0; k < nwords; ++k) {
      std::vector<Scalar> co(nwords);
      co[k] = Scalar(1);
      bd->coords[bd->words[k]] = std::move(co);
    }
  }

  std::lock_guard<std::mutex> lk(ctx.basis_mu);
  auto [it, _] = ctx.basis_cache.try_emplace(beta, bd);
  return it->second;
}

std::vector<Scalar> reduce_to_basis(const Context& ctx, const RawCombo& combo,
                                    const RootWeight& beta) {
  auto bd = weight_basis(ctx, beta);
  std::vector<Scalar> out(bd->basis.size());
  for (const auto& [w, c] : combo) {
    if (!(word_weight(ctx.datum, w) == beta))
      fail(Err::WEIGHT_MIXED, "raw term of weight " + word_weight(ctx.datum, w).str() +
                                  " reduced at " + beta.str());
    const auto& co = bd->coords.at(w);
    for (size_t k = 0; k < co.size(); ++k)
      if (!co[k].is_zero()) out[k] += c * co[k];
  }
  return out;
}

// --- AlgebraElement ------------------------------------------------------------

void AlgebraElement::add_term(const NormalWord& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  if (flavor_ != o.flavor_) fail(Err::FLAVOR_MISMATCH, "adding elements of different flavors");
  AlgebraElement r = *this;
  for (const auto& [w, c] : o.terms_) r.add_term(w, c);
  return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  if (flavor_ != o.flavor_) fail(Err::FLAVOR_MISMATCH, "subtracting elements of different flavors");
  AlgebraElement r = *this;
  for (const auto& [w, c] : o.terms_) r.add_term(w, -c);
  return r;
}

AlgebraElement AlgebraElement::operator*(const Scalar& s) const {
  AlgebraElement r(ctx_, flavor_);
  if (s.is_zero()) return r;
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, c * s);
  return r;
}

RootWeight AlgebraElement::weight() const {
  if (terms_.empty()) return RootWeight::zero(ctx_ ? ctx_->datum.rank : 0);
  RootWeight w0;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    RootWeight wt = word_weight(ctx_->datum, w.e_word) - word_weight(ctx_->datum, w.f_word);
    if (first) {
      w0 = wt;
      first = false;
    } else if (!(wt == w0)) {
      fail(Err::NOT_HOMOGENEOUS, "element mixes weights " + w0.str() + " and " + wt.str());
    }
  }
  return w0;
}

bool AlgebraElement::is_weight_homogeneous() const {
  try {
    weight();
    return true;
  } catch (const EngineError&) {
    return false;
  }
}

int AlgebraElement::max_e_height() const {
  int m = 0;
  for (const auto& [w, c] : terms_) m = std::max(m, static_cast<int>(w.e_word.size()));
  return m;
}

int AlgebraElement::max_f_height() const {
  int m = 0;
  for (const auto& [w, c] : terms_) m = std::max(m, static_cast<int>(w.f_word.size()));
  return m;
}

AlgebraElement AlgebraElement::project_e_height(int m) const {
  AlgebraElement r(ctx_, flavor_);
  for (const auto& [w, c] : terms_)
    if (static_cast<int>(w.e_word.size()) <= m) r.terms_.emplace(w, c);
  return r;
}

AlgebraElement AlgebraElement::component_of_weight(const RootWeight& wt) const {
  AlgebraElement r(ctx_, flavor_);
  for (const auto& [w, c] : terms_) {
    RootWeight t = word_weight(ctx_->datum, w.e_word) - word_weight(ctx_->datum, w.f_word);
    if (t == wt) r.terms_.emplace(w, c);
  }
  return r;
}

AlgebraElement AlgebraElement::with_flavor(Flavor target) const {
  if (target == flavor_) return *this;
  bool e_switch = (flavor_ == Flavor::U && target == Flavor::B) ||
                  (flavor_ == Flavor::B && target == Flavor::U);
  bool f_switch = (flavor_ == Flavor::U && target == Flavor::Bbar) ||
                  (flavor_ == Flavor::Bbar && target == Flavor::U);
  for (const auto& [w, c] : terms_) {
    if (e_switch && !w.e_word.empty())
      fail(Err::FLAVOR_MISMATCH, "e-part letters differ between U and B");
    if (f_switch && !w.f_word.empty())
      fail(Err::FLAVOR_MISMATCH, "f-part letters differ between U and Bbar");
    if (!e_switch && !f_switch && !w.is_identity() && !(w.e_word.empty() && w.f_word.empty()))
      fail(Err::FLAVOR_MISMATCH, "cannot relabel between B and Bbar");
  }
  AlgebraElement r(ctx_, target);
  r.terms_ = terms_;
  return r;
}

// --- constructors -------------------------------------------------------------

AlgebraElement make_zero(const Context& ctx, Flavor f) { return AlgebraElement(&ctx, f); }

AlgebraElement make_one(const Context& ctx, Flavor f) { return make_scalar(ctx, f, Scalar(1)); }

AlgebraElement make_scalar(const Context& ctx, Flavor f, const Scalar& s) {
  AlgebraElement r(&ctx, f);
  NormalWord w;
  w.torus.assign(static_cast<size_t>(ctx.datum.rank), 0);
  r.add_term(w, s);
  return r;
}

AlgebraElement make_letter(const Context& ctx, Flavor f, GenKind kind, int index) {
  check_index(ctx, index);
  bool ok = false;
  bool is_e_side = false;
  switch (kind) {
    case GenKind::E: ok = (f == Flavor::U || f == Flavor::Bbar); is_e_side = true; break;
    case GenKind::Edd: ok = (f == Flavor::B); is_e_side = true; break;
    case GenKind::F: ok = (f == Flavor::U || f == Flavor::B); break;
    case GenKind::Fd: ok = (f == Flavor::Bbar); break;
    case GenKind::Torus: fail(Err::USAGE, "use make_torus for torus letters");
  }
  if (!ok) fail(Err::FLAVOR_MISMATCH, "letter kind not part of flavor " + std::string(flavor_name(f)));
  AlgebraElement r(&ctx, f);
  NormalWord w;
  w.torus.assign(static_cast<size_t>(ctx.datum.rank), 0);
  if (is_e_side)
    w.e_word.push_back(static_cast<uint8_t>(index));
  else
    w.f_word.push_back(static_cast<uint8_t>(index));
  r.add_term(w, Scalar(1));
  return r;
}

AlgebraElement make_torus(const Context& ctx, Flavor f, const TorusVec& c) {
  if (static_cast<int>(c.size()) != ctx.datum.rank)
    fail(Err::USAGE, "torus exponent vector has wrong length");
  AlgebraElement r(&ctx, f);
  NormalWord w;
  w.torus = c;
  r.add_term(w, Scalar(1));
  return r;
}

AlgebraElement make_ti(const Context& ctx, Flavor f, int i, int power) {
  check_index(ctx, i);
  TorusVec c(static_cast<size_t>(ctx.datum.rank), 0);
  c[static_cast<size_t>(i)] = power * ctx.datum.d[static_cast<size_t>(i)];
  return make_torus(ctx, f, c);
}

namespace {
AlgebraElement from_raw_side(const Context& ctx, Flavor f, const RawCombo& combo, bool e_side) {
  AlgebraElement r(&ctx, f);
  std::map<RootWeight, RawCombo> by_weight;
  for (const auto& t : combo) by_weight[word_weight(ctx.datum, t.first)].push_back(t);
  const TorusVec zero_t(static_cast<size_t>(ctx.datum.rank), 0);
  for (const auto& [wt, group] : by_weight) {
    auto bd = weight_basis(ctx, wt);
    auto coords = reduce_to_basis(ctx, group, wt);
    for (size_t k = 0; k < coords.size(); ++k) {
      if (coords[k].is_zero()) continue;
      NormalWord w;
      w.torus = zero_t;
      if (e_side)
        w.e_word = bd->basis[k];
      else
        w.f_word = bd->basis[k];
      r.add_term(w, coords[k]);
    }
  }
  return r;
}
}  // namespace

AlgebraElement from_raw_f(const Context& ctx, Flavor f, const RawCombo& combo) {
  return from_raw_side(ctx, f, combo, false);
}

AlgebraElement from_raw_e(const Context& ctx, Flavor f, const RawCombo& combo) {
  return from_raw_side(ctx, f, combo, true);
}

// --- multiplication -------------------------------------------------------------

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b, int e_height_cap) {
  if (a.ctx() != b.ctx()) fail(Err::USAGE, "elements from different contexts");
  if (a.flavor() != b.flavor())
    fail(Err::FLAVOR_MISMATCH, std::string("multiplying ") + flavor_name(a.flavor()) + " by " +
                                   flavor_name(b.flavor()));
  const Context& ctx = *a.ctx();
  const auto& dat = ctx.datum;
  AlgebraElement out(&ctx, a.flavor());

  for (const auto& [w1, c1] : a.terms()) {
    for (const auto& [w2, c2] : b.terms()) {
      auto st = straighten(ctx, a.flavor(), w1.e_word, w2.f_word);
      const Scalar c12 = c1 * c2;
      for (const auto& t : *st) {
        int e_height = static_cast<int>(t.e.size() + w2.e_word.size());
        if (e_height_cap >= 0 && e_height > e_height_cap) continue;

        Scalar c = c12 * t.coeff;
        if (!torus_is_zero(w1.torus) && !t.f.empty())
          c *= qpow(ctx, -coroot_pairing_vec(dat, w1.torus, word_weight(dat, t.f)));
        if (!torus_is_zero(w2.torus) && !t.e.empty())
          c *= qpow(ctx, -coroot_pairing_vec(dat, w2.torus, word_weight(dat, t.e)));

        TorusVec torus = torus_add(torus_add(w1.torus, t.torus), w2.torus);

        Word f_raw = w1.f_word;
        f_raw.insert(f_raw.end(), t.f.begin(), t.f.end());
        Word e_raw = t.e;
        e_raw.insert(e_raw.end(), w2.e_word.begin(), w2.e_word.end());

        // reduce both halves to basis labels and distribute
        RootWeight f_wt = word_weight(dat, f_raw);
        RootWeight e_wt = word_weight(dat, e_raw);
        auto f_bd = weight_basis(ctx, f_wt);
        auto e_bd = weight_basis(ctx, e_wt);
        const auto& f_co = f_bd->coords.at(f_raw);
        const auto& e_co = e_bd->coords.at(e_raw);
        for (size_t fi = 0; fi < f_co.size(); ++fi) {
          if (f_co[fi].is_zero()) continue;
          for (size_t ei = 0; ei < e_co.size(); ++ei) {
            if (e_co[ei].is_zero()) continue;
            NormalWord w;
            w.f_word = f_bd->basis[fi];
            w.torus = torus;
            w.e_word = e_bd->basis[ei];
            out.add_term(w, c * f_co[fi] * e_co[ei]);
          }
        }
      }
    }
  }
  return out;
}

AlgebraElement commute_edd_power(const Context& ctx, int i, long n, int j, long m) {
  check_index(ctx, i);
  check_index(ctx, j);
  if (n < 0 || m < 0) fail(Err::OUT_OF_RANGE, "powers must be nonnegative");
  RawCombo e_combo{{Word(static_cast<size_t>(n), static_cast<uint8_t>(i)), Scalar(1)}};
  RawCombo f_combo{
      {Word(static_cast<size_t>(m), static_cast<uint8_t>(j)),
       Scalar(1) / q_factorial(m, ctx.datum.qi_vexp(j))}};
  return multiply(from_raw_e(ctx, Flavor::B, e_combo), from_raw_f(ctx, Flavor::B, f_combo));
}

}  // namespace qb
