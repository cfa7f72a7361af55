#include "qboson/module.hpp"

#include <algorithm>

#include <json.hpp>

#include "qboson/error.hpp"
#include "qboson/parse.hpp"
#include "qboson/render.hpp"

namespace qb {

namespace {

Scalar qipow(const Context& ctx, int i, long e) {
  return Scalar::v_power(e * ctx.datum.qi_vexp(i));
}

/// Per-weight stacked matrix of all e''_i (target rows concatenated).
Matrix stacked_edd(const GradedModule& m, size_t w) {
  Matrix stack;
  const int dim = m.weights[w].dim;
  for (int i = 0; i < m.ctx->datum.rank; ++i) {
    auto it = m.edd_act[static_cast<size_t>(i)].find(w);
    if (it == m.edd_act[static_cast<size_t>(i)].end()) continue;
    for (const auto& row : it->second) stack.push_back(row);
  }
  if (stack.empty()) stack = mat_zero(1, static_cast<size_t>(dim));
  return stack;
}

std::vector<Scalar> apply_matrix(const Matrix& m, const std::vector<Scalar>& v) {
  std::vector<Scalar> out(m.size());
  for (size_t r = 0; r < m.size(); ++r)
    for (size_t c = 0; c < v.size(); ++c)
      if (!m[r][c].is_zero() && !v[c].is_zero()) out[r] += m[r][c] * v[c];
  return out;
}

}  // namespace

size_t GradedModule::find(const std::vector<int>& pairings) const {
  auto it = index.find(pairings);
  return it == index.end() ? npos : it->second;
}

std::vector<int> GradedModule::shifted(const std::vector<int>& pairings, int i, int sign) const {
  std::vector<int> p = pairings;
  for (int k = 0; k < ctx->datum.rank; ++k)
    p[static_cast<size_t>(k)] +=
        sign * ctx->datum.a[static_cast<size_t>(k)][static_cast<size_t>(i)];
  return p;
}

void GradedModule::rebuild_index() {
  index.clear();
  for (size_t w = 0; w < weights.size(); ++w) index[weights[w].pairings] = w;
}

GradedModule build_H(const Context& ctx, const std::vector<int>& lambda_pairings, int N) {
  if (static_cast<int>(lambda_pairings.size()) != ctx.datum.rank)
    fail(Err::USAGE, "weight pairing vector has wrong length");
  if (N > ctx.height_limit) fail(Err::HEIGHT_LIMIT, "truncation exceeds the height limit");
  const auto& dat = ctx.datum;

  // labels per weight: (beta, basis word); weights can merge when the Cartan
  // matrix is singular
  struct Labels {
    std::vector<std::pair<RootWeight, Word>> at;
  };
  std::map<std::vector<int>, Labels> spaces;
  auto pairings_of = [&](const RootWeight& beta) {
    std::vector<int> p = lambda_pairings;
    for (int k = 0; k < dat.rank; ++k) p[static_cast<size_t>(k)] -= static_cast<int>(coroot_pairing(dat, k, beta));
    return p;
  };
  for (const auto& beta : enumerate_qplus(dat, N)) {
    auto bd = weight_basis(ctx, beta);
    auto& sl = spaces[pairings_of(beta)];
    for (const auto& w : bd->basis) sl.at.push_back({beta, w});
  }

  GradedModule m;
  m.ctx = &ctx;
  m.truncation = N;
  for (const auto& [p, sl] : spaces) {
    ModuleWeight mw;
    mw.pairings = p;
    mw.dim = static_cast<int>(sl.at.size());
    mw.boundary = false;
    for (const auto& [beta, word] : sl.at)
      if (beta.height() == N) mw.boundary = true;
    m.weights.push_back(std::move(mw));
  }
  std::sort(m.weights.begin(), m.weights.end(),
            [](const ModuleWeight& x, const ModuleWeight& y) { return x.pairings < y.pairings; });
  m.rebuild_index();
  m.f_act.assign(static_cast<size_t>(dat.rank), {});
  m.edd_act.assign(static_cast<size_t>(dat.rank), {});

  // label position lookup
  std::map<std::vector<int>, std::map<std::pair<RootWeight, Word>, size_t>> pos;
  for (const auto& [p, sl] : spaces) {
    auto& pm = pos[p];
    for (size_t k = 0; k < sl.at.size(); ++k) pm[sl.at[k]] = k;
  }

  for (const auto& [p, sl] : spaces) {
    size_t src = m.find(p);
    for (int i = 0; i < dat.rank; ++i) {
      // f_i: prepend the letter, reduce one weight deeper (truncated at N)
      {
        std::vector<int> tp = m.shifted(p, i, -1);
        size_t tgt = m.find(tp);
        if (tgt != GradedModule::npos) {
          Matrix mat = mat_zero(static_cast<size_t>(m.weights[tgt].dim), sl.at.size());
          bool nonzero = false;
          for (size_t col = 0; col < sl.at.size(); ++col) {
            const auto& [beta, word] = sl.at[col];
            RootWeight nb = beta + RootWeight::simple(dat.rank, i);
            if (nb.height() > N) continue;  // truncated
            Word raw;
            raw.push_back(static_cast<uint8_t>(i));
            raw.insert(raw.end(), word.begin(), word.end());
            auto bd = weight_basis(ctx, nb);
            const auto& co = bd->coords.at(raw);
            for (size_t k = 0; k < co.size(); ++k) {
              if (co[k].is_zero()) continue;
              size_t row = pos.at(tp).at({nb, bd->basis[k]});
              mat[row][col] = co[k];
              nonzero = true;
            }
          }
          if (nonzero) m.f_act[static_cast<size_t>(i)][src] = std::move(mat);
        }
      }
      // e''_i: straighten through the word; surviving letters kill the
      // highest-weight generator
      {
        std::vector<int> tp = m.shifted(p, i, +1);
        size_t tgt = m.find(tp);
        if (tgt != GradedModule::npos) {
          Matrix mat = mat_zero(static_cast<size_t>(m.weights[tgt].dim), sl.at.size());
          bool nonzero = false;
          for (size_t col = 0; col < sl.at.size(); ++col) {
            const auto& [beta, word] = sl.at[col];
            RootWeight nb = beta - RootWeight::simple(dat.rank, i);
            if (!nb.in_qplus()) continue;
            Word xi{static_cast<uint8_t>(i)};
            auto st = straighten(ctx, Flavor::B, xi, word);
            auto bd = weight_basis(ctx, nb);
            for (const auto& t : *st) {
              if (!t.e.empty()) continue;  // e'' survived; kills u_lambda
              const auto& co = bd->coords.at(t.f);
              for (size_t k = 0; k < co.size(); ++k) {
                if (co[k].is_zero() || t.coeff.is_zero()) continue;
                size_t row = pos.at(tp).at({nb, bd->basis[k]});
                mat[row][col] += t.coeff * co[k];
                nonzero = true;
              }
            }
          }
          if (nonzero) m.edd_act[static_cast<size_t>(i)][src] = std::move(mat);
        }
      }
    }
  }
  return m;
}

GradedModule direct_sum(const GradedModule& a, const GradedModule& b) {
  if (a.ctx != b.ctx) fail(Err::USAGE, "direct sum across contexts");
  GradedModule m;
  m.ctx = a.ctx;
  m.truncation = std::max(a.truncation, b.truncation);
  std::map<std::vector<int>, std::pair<size_t, size_t>> slots;  // pairings -> (a idx+1, b idx+1)
  for (size_t w = 0; w < a.weights.size(); ++w) slots[a.weights[w].pairings].first = w + 1;
  for (size_t w = 0; w < b.weights.size(); ++w) slots[b.weights[w].pairings].second = w + 1;
  std::map<std::vector<int>, int> offset_b;
  for (const auto& [p, sl] : slots) {
    ModuleWeight mw;
    mw.pairings = p;
    int da = sl.first ? a.weights[sl.first - 1].dim : 0;
    int db = sl.second ? b.weights[sl.second - 1].dim : 0;
    mw.dim = da + db;
    mw.boundary = (sl.first && a.weights[sl.first - 1].boundary) ||
                  (sl.second && b.weights[sl.second - 1].boundary);
    offset_b[p] = da;
    m.weights.push_back(std::move(mw));
  }
  m.rebuild_index();
  const int rank = m.ctx->datum.rank;
  m.f_act.assign(static_cast<size_t>(rank), {});
  m.edd_act.assign(static_cast<size_t>(rank), {});

  auto splice = [&](const GradedModule& part, bool is_b, int i, bool is_f) {
    const auto& acts = is_f ? part.f_act[static_cast<size_t>(i)] : part.edd_act[static_cast<size_t>(i)];
    for (const auto& [src_w, mat] : acts) {
      const auto& sp = part.weights[src_w].pairings;
      std::vector<int> tp = part.shifted(sp, i, is_f ? -1 : +1);
      size_t src = m.find(sp), tgt = m.find(tp);
      if (tgt == GradedModule::npos) continue;
      auto& target_map = is_f ? m.f_act[static_cast<size_t>(i)] : m.edd_act[static_cast<size_t>(i)];
      auto it = target_map.find(src);
      if (it == target_map.end())
        it = target_map
                 .emplace(src, mat_zero(static_cast<size_t>(m.weights[tgt].dim),
                                        static_cast<size_t>(m.weights[src].dim)))
                 .first;
      int row_off = is_b ? offset_b[tp] : 0;
      int col_off = is_b ? offset_b[sp] : 0;
      for (size_t r = 0; r < mat.size(); ++r)
        for (size_t c = 0; c < mat[r].size(); ++c)
          it->second[r + static_cast<size_t>(row_off)][c + static_cast<size_t>(col_off)] = mat[r][c];
    }
  };
  for (int i = 0; i < rank; ++i) {
    splice(a, false, i, true);
    splice(a, false, i, false);
    splice(b, true, i, true);
    splice(b, true, i, false);
  }
  return m;
}

GradedModule conjugate(const GradedModule& m, const std::map<size_t, Matrix>& base_change) {
  GradedModule r = m;
  std::map<size_t, Matrix> inv;
  for (const auto& [w, p] : base_change) {
    auto pi = mat_inverse(p);
    if (!pi) fail(Err::USAGE, "base change not invertible");
    inv[w] = std::move(*pi);
  }
  auto cb = [&](size_t w) -> const Matrix* {
    auto it = base_change.find(w);
    return it == base_change.end() ? nullptr : &it->second;
  };
  auto conj = [&](std::map<size_t, Matrix>& acts, int i, bool is_f) {
    for (auto& [src, mat] : acts) {
      std::vector<int> tp = r.shifted(r.weights[src].pairings, i, is_f ? -1 : +1);
      size_t tgt = r.find(tp);
      const Matrix* ps = cb(src);
      if (ps) mat = mat_mul(mat, *ps);
      if (tgt != GradedModule::npos) {
        auto it = inv.find(tgt);
        if (it != inv.end()) mat = mat_mul(it->second, mat);
      }
    }
  };
  for (int i = 0; i < r.ctx->datum.rank; ++i) {
    conj(r.f_act[static_cast<size_t>(i)], i, true);
    conj(r.edd_act[static_cast<size_t>(i)], i, false);
  }
  return r;
}

WeightVectors kernel_K(const GradedModule& m) {
  WeightVectors out;
  for (size_t w = 0; w < m.weights.size(); ++w) {
    if (m.weights[w].dim == 0) continue;
    auto vecs = nullspace(stacked_edd(m, w));
    if (!vecs.empty()) out[w] = std::move(vecs);
  }
  return out;
}

std::map<size_t, Matrix> gamma_on_module(const GradedModule& m) {
  const Context& ctx = *m.ctx;
  if (m.truncation > ctx.height_limit)
    fail(Err::UNSAFE_REGION, "module truncation exceeds the height limit");
  SeriesElement G = build_gamma(ctx, m.truncation);
  std::map<size_t, Matrix> out;
  for (size_t w = 0; w < m.weights.size(); ++w) {
    const int dim = m.weights[w].dim;
    if (dim == 0) continue;
    Matrix acc = mat_zero(static_cast<size_t>(dim), static_cast<size_t>(dim));
    for (const auto& [word, c] : G.elem.terms()) {
      // act with the e''-part first (ascending), then the f-part (descending)
      Matrix cur = mat_identity(static_cast<size_t>(dim));
      std::vector<int> p = m.weights[w].pairings;
      bool dead = false;
      for (auto it = word.e_word.rbegin(); it != word.e_word.rend() && !dead; ++it) {
        int i = *it;
        size_t at = m.find(p);
        auto act = m.edd_act[static_cast<size_t>(i)].find(at);
        p = m.shifted(p, i, +1);
        if (act == m.edd_act[static_cast<size_t>(i)].end() || m.find(p) == GradedModule::npos) {
          dead = true;  // above the top: e'' kills
          break;
        }
        cur = mat_mul(act->second, cur);
      }
      if (dead) continue;
      for (auto it = word.f_word.rbegin(); it != word.f_word.rend() && !dead; ++it) {
        int i = *it;
        size_t at = m.find(p);
        auto act = m.f_act[static_cast<size_t>(i)].find(at);
        p = m.shifted(p, i, -1);
        if (act == m.f_act[static_cast<size_t>(i)].end() || m.find(p) == GradedModule::npos) {
          dead = true;
          break;
        }
        cur = mat_mul(act->second, cur);
      }
      if (dead) continue;
      if (m.find(p) != w) fail(Err::IDENTITY_VIOLATION, "projector term is not weight-preserving");
      for (size_t r = 0; r < acc.size(); ++r)
        for (size_t s = 0; s < acc.size(); ++s) acc[r][s] += cur[r][s] * c;
    }
    out[w] = std::move(acc);
  }

  // contract checks: idempotence, image = kernel of e'', kernel covers Im f
  WeightVectors kern = kernel_K(m);
  for (size_t w = 0; w < m.weights.size(); ++w) {
    if (m.weights[w].dim == 0) continue;
    const Matrix& g = out.at(w);
    if (!mat_eq(mat_mul(g, g), g))
      fail(Err::IDENTITY_VIOLATION, "projector matrix not idempotent");
    // image of gamma == joint kernel
    SpanBasis image(static_cast<size_t>(m.weights[w].dim));
    for (size_t c = 0; c < g[0].size(); ++c) {
      std::vector<Scalar> col(g.size());
      for (size_t r = 0; r < g.size(); ++r) col[r] = g[r][c];
      image.add(std::move(col));
    }
    size_t kdim = kern.count(w) ? kern[w].size() : 0;
    if (image.rank() != kdim)
      fail(Err::IDENTITY_VIOLATION, "projector image rank differs from the e''-kernel");
    if (kern.count(w))
      for (const auto& v : kern[w])
        if (!image.contains(v))
          fail(Err::IDENTITY_VIOLATION, "e''-kernel vector outside the projector image");
    // e''_i . gamma = 0
    for (int i = 0; i < m.ctx->datum.rank; ++i) {
      auto act = m.edd_act[static_cast<size_t>(i)].find(w);
      if (act == m.edd_act[static_cast<size_t>(i)].end()) continue;
      Matrix z = mat_mul(act->second, g);
      if (!mat_eq(z, mat_zero(z.size(), z[0].size())))
        fail(Err::IDENTITY_VIOLATION, "e'' does not kill the projector image");
    }
    // gamma . f_i = 0 (source one step up)
    for (int i = 0; i < m.ctx->datum.rank; ++i) {
      std::vector<int> up = m.shifted(m.weights[w].pairings, i, +1);
      size_t src = m.find(up);
      if (src == GradedModule::npos) continue;
      auto act = m.f_act[static_cast<size_t>(i)].find(src);
      if (act == m.f_act[static_cast<size_t>(i)].end()) continue;
      Matrix z = mat_mul(g, act->second);
      if (!mat_eq(z, mat_zero(z.size(), z[0].size())))
        fail(Err::IDENTITY_VIOLATION, "projector does not kill the f-image");
    }
  }
  return out;
}

CheckReport verify_direct_sum(const GradedModule& m) {
  CheckReport report;
  WeightVectors kern = kernel_K(m);

  {
    bool ok = true;
    std::string detail = "exact on non-boundary weights";
    for (size_t w = 0; w < m.weights.size() && ok; ++w) {
      if (m.weights[w].boundary || m.weights[w].dim == 0) continue;
      const size_t dim = static_cast<size_t>(m.weights[w].dim);
      SpanBasis kspan(dim), whole(dim);
      size_t krank = 0;
      if (kern.count(w)) {
        for (const auto& v : kern[w]) {
          kspan.add(v);
          whole.add(v);
        }
        krank = kspan.rank();
      }
      size_t im_rank_total = 0;
      SpanBasis imspan(dim);
      for (int i = 0; i < m.ctx->datum.rank; ++i) {
        std::vector<int> up = m.shifted(m.weights[w].pairings, i, +1);
        size_t src = m.find(up);
        if (src == GradedModule::npos) continue;
        auto act = m.f_act[static_cast<size_t>(i)].find(src);
        if (act == m.f_act[static_cast<size_t>(i)].end()) continue;
        for (size_t c = 0; c < act->second[0].size(); ++c) {
          std::vector<Scalar> col(dim);
          for (size_t r = 0; r < dim; ++r) col[r] = act->second[r][c];
          imspan.add(col);
          whole.add(col);
        }
      }
      im_rank_total = imspan.rank();
      if (krank + im_rank_total != dim || whole.rank() != dim) {
        ok = false;
        detail = "decomposition fails at weight slot " + std::to_string(w);
      }
    }
    report.add({"kernel_plus_f_image", ok, detail, 0});
  }

  {  // the f-half generates M from K(M)
    bool ok = true;
    std::string detail = "K(M) generates under the f-action";
    std::map<size_t, SpanBasis> span;
    for (size_t w = 0; w < m.weights.size(); ++w)
      span.emplace(w, SpanBasis(static_cast<size_t>(m.weights[w].dim)));
    std::vector<std::pair<size_t, std::vector<Scalar>>> queue;
    for (const auto& [w, vecs] : kern)
      for (const auto& v : vecs)
        if (span.at(w).add(v)) queue.push_back({w, v});
    while (!queue.empty()) {
      auto [w, v] = queue.back();
      queue.pop_back();
      for (int i = 0; i < m.ctx->datum.rank; ++i) {
        auto act = m.f_act[static_cast<size_t>(i)].find(w);
        if (act == m.f_act[static_cast<size_t>(i)].end()) continue;
        std::vector<int> down = m.shifted(m.weights[w].pairings, i, -1);
        size_t tgt = m.find(down);
        if (tgt == GradedModule::npos) continue;
        auto img = apply_matrix(act->second, v);
        if (span.at(tgt).add(img)) queue.push_back({tgt, img});
      }
    }
    for (size_t w = 0; w < m.weights.size(); ++w) {
      if (span.at(w).rank() != static_cast<size_t>(m.weights[w].dim)) {
        ok = false;
        detail = "generation fails at weight slot " + std::to_string(w);
        break;
      }
    }
    report.add({"f_half_generation", ok, detail, 0});
  }

  return report;
}

std::vector<std::pair<std::vector<int>, int>> decompose(const GradedModule& m) {
  const auto& dat = m.ctx->datum;
  WeightVectors kern = kernel_K(m);
  std::vector<std::pair<std::vector<int>, int>> found;
  for (const auto& [w, vecs] : kern)
    found.push_back({m.weights[w].pairings, static_cast<int>(vecs.size())});
  std::sort(found.begin(), found.end());

  // rank-one freeness accounting: the Cartan matrix must determine the root
  // offset of every stored weight from every found top
  Matrix A = mat_zero(static_cast<size_t>(dat.rank), static_cast<size_t>(dat.rank));
  for (int r = 0; r < dat.rank; ++r)
    for (int c = 0; c < dat.rank; ++c)
      A[static_cast<size_t>(r)][static_cast<size_t>(c)] =
          Scalar(dat.a[static_cast<size_t>(r)][static_cast<size_t>(c)]);
  auto Ainv = mat_inverse(A);
  if (!Ainv)
    fail(Err::INCONSISTENT_MODULE,
         "singular Cartan matrix: root offsets are not determined by weights");

  auto offset_of = [&](const std::vector<int>& top, const std::vector<int>& p)
      -> std::optional<RootWeight> {
    RootWeight beta = RootWeight::zero(dat.rank);
    for (int r = 0; r < dat.rank; ++r) {
      Scalar s(0);
      for (int c = 0; c < dat.rank; ++c)
        s += (*Ainv)[static_cast<size_t>(r)][static_cast<size_t>(c)] *
             Scalar(top[static_cast<size_t>(c)] - p[static_cast<size_t>(c)]);
      // must be a nonnegative integer
      if (s.den().degree() != 0 || s.num().degree() > 0) return std::nullopt;
      mpq_class v = s.is_zero() ? mpq_class(0) : s.num().coeff(0);
      if (v.get_den() != 1 || v < 0) return std::nullopt;
      beta.coords[static_cast<size_t>(r)] = static_cast<int>(v.get_num().get_si());
    }
    return beta;
  };

  for (size_t w = 0; w < m.weights.size(); ++w) {
    if (m.weights[w].boundary) continue;
    long expected = 0;
    bool verifiable = true;
    for (const auto& [top, mult] : found) {
      auto beta = offset_of(top, m.weights[w].pairings);
      if (!beta) continue;
      if (beta->height() > m.truncation) {
        verifiable = false;  // inside a found cone but beyond the truncation
        break;
      }
      expected += static_cast<long>(mult) * static_cast<long>(weight_basis(*m.ctx, *beta)->basis.size());
    }
    if (!verifiable) continue;
    if (expected != m.weights[w].dim)
      fail(Err::INCONSISTENT_MODULE,
           "freeness accounting fails at weight slot " + std::to_string(w) + " (dim " +
               std::to_string(m.weights[w].dim) + ", expected " + std::to_string(expected) + ")");
  }
  return found;
}

WeightVectors split_complement(const GradedModule& m, const WeightVectors& L,
                               WeightVectors* bn_out) {
  const auto& dat = m.ctx->datum;

  // stability of L under f and e''
  std::map<size_t, SpanBasis> lspan;
  for (size_t w = 0; w < m.weights.size(); ++w)
    lspan.emplace(w, SpanBasis(static_cast<size_t>(m.weights[w].dim)));
  for (const auto& [w, vecs] : L)
    for (const auto& v : vecs) lspan.at(w).add(v);
  for (const auto& [w, vecs] : L) {
    for (const auto& v : vecs) {
      for (int i = 0; i < dat.rank; ++i) {
        for (int sign : {-1, +1}) {
          const auto& acts = sign < 0 ? m.f_act[static_cast<size_t>(i)] : m.edd_act[static_cast<size_t>(i)];
          auto act = acts.find(w);
          if (act == acts.end()) continue;
          std::vector<int> tp = m.shifted(m.weights[w].pairings, i, sign);
          size_t tgt = m.find(tp);
          if (tgt == GradedModule::npos) continue;
          auto img = apply_matrix(act->second, v);
          bool zero = std::all_of(img.begin(), img.end(), [](const Scalar& s) { return s.is_zero(); });
          if (!zero && !lspan.at(tgt).contains(img))
            fail(Err::NOT_A_SUBMODULE, "L is not stable at weight slot " + std::to_string(w));
        }
      }
    }
  }

  WeightVectors kernM = kernel_K(m);

  // K(L): kernel of the stacked e'' restricted to the L-span
  WeightVectors kernL;
  for (const auto& [w, vecs] : L) {
    if (vecs.empty()) continue;
    Matrix stack = stacked_edd(m, w);
    // restrict to columns spanned by L: variables are L-coordinates
    Matrix restricted = mat_zero(stack.size(), vecs.size());
    for (size_t r = 0; r < stack.size(); ++r)
      for (size_t c = 0; c < vecs.size(); ++c)
        for (size_t k = 0; k < vecs[c].size(); ++k)
          if (!stack[r][k].is_zero() && !vecs[c][k].is_zero())
            restricted[r][c] += stack[r][k] * vecs[c][k];
    for (const auto& coeffs : nullspace(restricted)) {
      std::vector<Scalar> v(static_cast<size_t>(m.weights[w].dim));
      for (size_t c = 0; c < vecs.size(); ++c)
        for (size_t k = 0; k < v.size(); ++k) v[k] += coeffs[c] * vecs[c][k];
      kernL[w].push_back(std::move(v));
    }
  }

  // N: weightwise complement of K(L) inside K(M)
  WeightVectors N;
  for (const auto& [w, vecs] : kernM) {
    SpanBasis span(static_cast<size_t>(m.weights[w].dim));
    if (kernL.count(w))
      for (const auto& v : kernL[w]) span.add(v);
    for (const auto& v : vecs)
      if (span.add(v)) N[w].push_back(v);
  }

  // B.N: closure of N under the f-action
  std::map<size_t, SpanBasis> bnspan;
  for (size_t w = 0; w < m.weights.size(); ++w)
    bnspan.emplace(w, SpanBasis(static_cast<size_t>(m.weights[w].dim)));
  std::vector<std::pair<size_t, std::vector<Scalar>>> queue;
  for (const auto& [w, vecs] : N)
    for (const auto& v : vecs)
      if (bnspan.at(w).add(v)) queue.push_back({w, v});
  while (!queue.empty()) {
    auto [w, v] = queue.back();
    queue.pop_back();
    for (int i = 0; i < dat.rank; ++i) {
      auto act = m.f_act[static_cast<size_t>(i)].find(w);
      if (act == m.f_act[static_cast<size_t>(i)].end()) continue;
      std::vector<int> down = m.shifted(m.weights[w].pairings, i, -1);
      size_t tgt = m.find(down);
      if (tgt == GradedModule::npos) continue;
      auto img = apply_matrix(act->second, v);
      if (bnspan.at(tgt).add(img)) queue.push_back({tgt, img});
    }
  }

  // certification: M = L (+) B.N per weight
  for (size_t w = 0; w < m.weights.size(); ++w) {
    const size_t dim = static_cast<size_t>(m.weights[w].dim);
    if (dim == 0) continue;
    size_t rl = lspan.at(w).rank(), rb = bnspan.at(w).rank();
    SpanBasis both(dim);
    for (const auto& row : lspan.at(w).rows()) both.add(row);
    for (const auto& row : bnspan.at(w).rows()) both.add(row);
    if (rl + rb != dim || both.rank() != dim)
      fail(Err::IDENTITY_VIOLATION,
           "M = L (+) B.N fails at weight slot " + std::to_string(w));
  }

  if (bn_out) {
    bn_out->clear();
    for (size_t w = 0; w < m.weights.size(); ++w) {
      for (const auto& row : bnspan.at(w).rows()) (*bn_out)[w].push_back(row);
      if ((*bn_out)[w].empty()) bn_out->erase(w);
    }
  }
  return N;
}

std::string module_to_json(const GradedModule& m) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["datum"] = m.ctx->datum.name;
  j["truncation"] = m.truncation;
  nlohmann::json ws = nlohmann::json::array();
  for (const auto& w : m.weights)
    ws.push_back({{"pairings", w.pairings}, {"dim", w.dim}, {"boundary", w.boundary}});
  j["weights"] = ws;
  const long D = m.ctx->datum.exp_denom;
  auto acts_json = [&](const std::vector<std::map<size_t, Matrix>>& acts) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& per_gen : acts) {
      nlohmann::json ga = nlohmann::json::array();
      for (const auto& [src, mat] : per_gen) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : mat) {
          nlohmann::json r = nlohmann::json::array();
          for (const auto& s : row) r.push_back(render_scalar(s, D));
          rows.push_back(r);
        }
        ga.push_back({{"from", src}, {"matrix", rows}});
      }
      out.push_back(ga);
    }
    return out;
  };
  j["f"] = acts_json(m.f_act);
  j["edd"] = acts_json(m.edd_act);
  return j.dump(2);
}

GradedModule module_from_json(const Context& ctx, const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(Err::PARSE_ERROR, std::string("bad JSON: ") + e.what());
  }
  GradedModule m;
  m.ctx = &ctx;
  m.truncation = j.value("truncation", ctx.height_limit);
  if (j.value("datum", ctx.datum.name) != ctx.datum.name)
    fail(Err::USAGE, "module was exported for datum " + j.value("datum", std::string()));
  for (const auto& w : j.at("weights")) {
    ModuleWeight mw;
    mw.pairings = w.at("pairings").get<std::vector<int>>();
    if (static_cast<int>(mw.pairings.size()) != ctx.datum.rank)
      fail(Err::PARSE_ERROR, "weight pairings have wrong length");
    mw.dim = w.at("dim").get<int>();
    mw.boundary = w.value("boundary", false);
    m.weights.push_back(std::move(mw));
  }
  m.rebuild_index();
  if (m.index.size() != m.weights.size()) fail(Err::PARSE_ERROR, "duplicate weights");
  const long D = ctx.datum.exp_denom;
  auto acts_parse = [&](const nlohmann::json& arr, bool is_f) {
    std::vector<std::map<size_t, Matrix>> acts(static_cast<size_t>(ctx.datum.rank));
    if (static_cast<int>(arr.size()) != ctx.datum.rank)
      fail(Err::PARSE_ERROR, "actions have wrong generator count");
    for (int i = 0; i < ctx.datum.rank; ++i) {
      for (const auto& entry : arr[static_cast<size_t>(i)]) {
        size_t src = entry.at("from").get<size_t>();
        if (src >= m.weights.size()) fail(Err::PARSE_ERROR, "action source out of range");
        std::vector<int> tp = m.shifted(m.weights[src].pairings, i, is_f ? -1 : +1);
        size_t tgt = m.find(tp);
        if (tgt == GradedModule::npos) fail(Err::PARSE_ERROR, "action target weight missing");
        Matrix mat;
        for (const auto& row : entry.at("matrix")) {
          std::vector<Scalar> r;
          for (const auto& s : row) r.push_back(parse_scalar(s.get<std::string>(), D));
          mat.push_back(std::move(r));
        }
        if (mat.size() != static_cast<size_t>(m.weights[tgt].dim) ||
            (m.weights[tgt].dim > 0 && mat[0].size() != static_cast<size_t>(m.weights[src].dim)))
          fail(Err::PARSE_ERROR, "action matrix has wrong shape");
        acts[static_cast<size_t>(i)][src] = std::move(mat);
      }
    }
    return acts;
  };
  m.f_act = acts_parse(j.at("f"), true);
  m.edd_act = acts_parse(j.at("edd"), false);

  // category invariants: the defining commutation rule must hold exactly on
  // non-boundary weights (absent maps are exact zero maps there)
  for (size_t w = 0; w < m.weights.size(); ++w) {
    if (m.weights[w].boundary || m.weights[w].dim == 0) continue;
    const size_t dim = static_cast<size_t>(m.weights[w].dim);
    for (int i = 0; i < ctx.datum.rank; ++i) {
      for (int jg = 0; jg < ctx.datum.rank; ++jg) {
        Matrix lhs = mat_zero(dim, dim), rhs = mat_zero(dim, dim);
        std::vector<int> down = m.shifted(m.weights[w].pairings, jg, -1);
        size_t dj = m.find(down);
        auto fj = m.f_act[static_cast<size_t>(jg)].find(w);
        if (fj != m.f_act[static_cast<size_t>(jg)].end() && dj != GradedModule::npos) {
          auto ei = m.edd_act[static_cast<size_t>(i)].find(dj);
          if (ei != m.edd_act[static_cast<size_t>(i)].end() &&
              m.find(m.shifted(down, i, +1)) != GradedModule::npos)
            lhs = mat_mul(ei->second, fj->second);
        }
        auto ei0 = m.edd_act[static_cast<size_t>(i)].find(w);
        if (ei0 != m.edd_act[static_cast<size_t>(i)].end()) {
          std::vector<int> up = m.shifted(m.weights[w].pairings, i, +1);
          size_t ui = m.find(up);
          if (ui != GradedModule::npos) {
            auto fj2 = m.f_act[static_cast<size_t>(jg)].find(ui);
            if (fj2 != m.f_act[static_cast<size_t>(jg)].end())
              rhs = mat_mul(fj2->second, ei0->second);
          }
        }
        Scalar c = qipow(ctx, i, ctx.datum.a[static_cast<size_t>(i)][static_cast<size_t>(jg)]);
        for (auto& row : rhs)
          for (auto& x : row) x *= c;
        if (i == jg)
          for (size_t k = 0; k < dim; ++k) rhs[k][k] += Scalar(1);
        if (!mat_eq(lhs, rhs))
          fail(Err::INCONSISTENT_MODULE,
               "commutation rule fails at weight slot " + std::to_string(w));
      }
    }
  }
  return m;
}

}  // namespace qb
