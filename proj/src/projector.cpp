#include "qboson/projector.hpp"

#include <chrono>

#include "qboson/error.hpp"

namespace qb {

namespace {

Scalar qipow(const Context& ctx, int i, long e) {
  return Scalar::v_power(e * ctx.datum.qi_vexp(i));
}

long now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

TorusVec negated(const TorusVec& t) {
  TorusVec r = t;
  for (int& v : r) v = -v;
  return r;
}

/// k_beta^-1 S^-1(y) for a minus-side element y of weight -beta; lands in the
/// f-half (net torus cancels exactly).
AlgebraElement kinv_sinv(const Context& ctx, const RootWeight& beta, const AlgebraElement& y) {
  AlgebraElement s = antipode(y, /*inverse=*/true);
  AlgebraElement r =
      multiply(make_torus(ctx, Flavor::U, negated(k_beta_exponent(ctx.datum, beta))), s);
  for (const auto& [w, c] : r.terms())
    if (!w.torus_trivial() || !w.e_word.empty())
      fail(Err::IDENTITY_VIOLATION, "k_beta^-1 S^-1(y) left the f-half at " + beta.str());
  return r;
}

}  // namespace

TorusVec k_beta_exponent(const CartanDatum& dat, const RootWeight& beta) {
  TorusVec t(static_cast<size_t>(dat.rank), 0);
  for (int i = 0; i < dat.rank; ++i)
    t[static_cast<size_t>(i)] = dat.d[static_cast<size_t>(i)] * beta.coords[static_cast<size_t>(i)];
  return t;
}

SeriesTensor build_C(const Context& ctx, int l) {
  if (l > ctx.height_limit) fail(Err::HEIGHT_LIMIT, "cutoff exceeds the height limit");
  SeriesTensor out{l, TensorElement(&ctx, Flavor::U, Flavor::B)};
  const TorusVec zero_t(static_cast<size_t>(ctx.datum.rank), 0);
  for (const auto& beta : enumerate_qplus(ctx.datum, l)) {
    auto gd = gram(ctx, beta);
    auto duals = dual_basis(ctx, beta);
    for (size_t r = 0; r < gd->basis.size(); ++r) {
      AlgebraElement second = kinv_sinv(ctx, beta, duals[r]).with_flavor(Flavor::B);
      NormalWord xr;
      xr.e_word = gd->basis[r];
      xr.torus = zero_t;
      for (const auto& [w, c] : second.terms()) out.elem.add_term(xr, w, c);
    }
  }
  return out;
}

SeriesTensor build_C_inverse(const Context& ctx, int l) {
  if (l > ctx.height_limit) fail(Err::HEIGHT_LIMIT, "cutoff exceeds the height limit");
  SeriesTensor out{l, TensorElement(&ctx, Flavor::U, Flavor::B)};
  for (const auto& beta : enumerate_qplus(ctx.datum, l)) {
    auto gd = gram(ctx, beta);
    auto duals = dual_basis(ctx, beta);
    const Scalar factor =
        Scalar::v_power(-root_form(ctx.datum, beta, beta) * ctx.datum.exp_denom);
    const TorusVec kb = k_beta_exponent(ctx.datum, beta);
    for (size_t r = 0; r < gd->basis.size(); ++r) {
      // first leg: k_beta S^-1(x_r), a pure e-half element
      AlgebraElement xr(&ctx, Flavor::U);
      NormalWord wx;
      wx.e_word = gd->basis[r];
      wx.torus = TorusVec(static_cast<size_t>(ctx.datum.rank), 0);
      xr.add_term(wx, Scalar(1));
      AlgebraElement first =
          multiply(make_torus(ctx, Flavor::U, kb), antipode(xr, /*inverse=*/true));
      for (const auto& [w, c] : first.terms())
        if (!w.torus_trivial() || !w.f_word.empty())
          fail(Err::IDENTITY_VIOLATION, "k_beta S^-1(x) left the e-half at " + beta.str());
      AlgebraElement second = kinv_sinv(ctx, beta, duals[r]).with_flavor(Flavor::B);
      for (const auto& [w1, c1] : first.terms())
        for (const auto& [w2, c2] : second.terms())
          out.elem.add_term(w1, w2, factor * c1 * c2);
    }
  }
  return out;
}

SeriesElement build_gamma(const Context& ctx, int l) {
  if (l > ctx.height_limit) fail(Err::HEIGHT_LIMIT, "cutoff exceeds the height limit");
  SeriesElement out{l, make_zero(ctx, Flavor::B)};
  for (const auto& beta : enumerate_qplus(ctx.datum, l)) {
    auto gd = gram(ctx, beta);
    auto duals = dual_basis(ctx, beta);
    const int h = beta.height();
    for (size_t r = 0; r < gd->basis.size(); ++r) {
      AlgebraElement left = kinv_sinv(ctx, beta, duals[r]).with_flavor(Flavor::B);
      AlgebraElement xr(&ctx, Flavor::U);
      NormalWord wx;
      wx.e_word = gd->basis[r];
      wx.torus = TorusVec(static_cast<size_t>(ctx.datum.rank), 0);
      xr.add_term(wx, Scalar(1));
      AlgebraElement term = multiply(left, phi(xr));
      for (const auto& [w, c] : term.terms()) {
        if (!w.torus_trivial() || static_cast<int>(w.f_word.size()) != h ||
            static_cast<int>(w.e_word.size()) != h)
          fail(Err::IDENTITY_VIOLATION,
               "gamma term outside the f/e''-balanced torus-free form at " + beta.str());
      }
      out.elem = out.elem + term;
    }
  }
  return out;
}

SeriesElement gamma_closed_form_sl2(const Context& ctx, int l) {
  const auto& dat = ctx.datum;
  if (dat.rank != 1 || dat.a[0][0] != 2 || dat.d[0] != 1)
    fail(Err::WRONG_DATUM, "closed form is the rank-one (a=[[2]], d=[1]) series");
  if (l > ctx.height_limit) fail(Err::HEIGHT_LIMIT, "cutoff exceeds the height limit");
  SeriesElement out{l, make_zero(ctx, Flavor::B)};
  const long qi = dat.qi_vexp(0);
  for (int n = 0; n <= l; ++n) {
    Scalar c = Scalar::v_power(static_cast<long>(n) * (n - 1) / 2 * dat.exp_denom) /
               q_factorial(n, qi);
    if (n % 2) c = -c;
    NormalWord w;
    w.f_word.assign(static_cast<size_t>(n), 0);
    w.torus.assign(1, 0);
    w.e_word.assign(static_cast<size_t>(n), 0);
    out.elem.add_term(w, c);
  }
  return out;
}

AlgebraElement extract_v(const AlgebraElement& z, int i) {
  const Context& ctx = *z.ctx();
  check_index(ctx, i);
  RootWeight wt = z.weight();  // NOT_HOMOGENEOUS when mixed
  for (const auto& [w, c] : z.terms())
    if (!w.torus_trivial() || !w.e_word.empty())
      fail(Err::FLAVOR_MISMATCH, "extract_v expects an element of the f-half");
  AlgebraElement acc = make_zero(ctx, Flavor::U);
  for (const auto& [w, c] : z.terms()) {
    auto dz = delta_f_word(ctx, w.f_word);
    for (const auto& [key, cz] : dz->terms()) {
      const NormalWord& a = key.first;
      if (a.f_word.size() == 1 && a.f_word[0] == static_cast<uint8_t>(i) && a.torus_trivial() &&
          a.e_word.empty())
        acc = acc + elem_of_word(ctx, Flavor::U, key.second) * (c * cz);
    }
  }
  AlgebraElement v = multiply(acc, make_ti(ctx, Flavor::U, i, 1));
  for (const auto& [w, c] : v.terms())
    if (!w.torus_trivial() || !w.e_word.empty())
      fail(Err::IDENTITY_VIOLATION, "extract_v result left the f-half");
  return v;
}

CheckReport verify_C_identities(const Context& ctx, int l) {
  CheckReport report;
  const auto& dat = ctx.datum;
  SeriesTensor C = build_C(ctx, l);

  {  // per-weight commutator recursion defining the C-series
    long t0 = now_ms();
    bool ok = true;
    std::string detail;
    for (int i = 0; i < dat.rank && ok; ++i) {
      TensorElement TL = TensorElement::simple(make_ti(ctx, Flavor::U, i, -1),
                                               make_letter(ctx, Flavor::B, GenKind::Edd, i));
      TensorElement RM = TensorElement::simple(
          multiply(make_ti(ctx, Flavor::U, i, -1), make_letter(ctx, Flavor::U, GenKind::E, i)),
          make_one(ctx, Flavor::B) *
              (qipow(ctx, i, 1) - qipow(ctx, i, -1)));
      for (const auto& beta : enumerate_qplus(dat, l - 1)) {
        RootWeight up = beta + RootWeight::simple(dat.rank, i);
        TensorElement Cup = C.elem.component_leg1_weight(up);
        TensorElement Cb = C.elem.component_leg1_weight(beta);
        TensorElement lhs = TL.mul(Cup) - Cup.mul(TL);
        TensorElement rhs = Cb.mul(RM);
        if (!(lhs == rhs)) {
          ok = false;
          detail = "failed at i=" + std::to_string(i + 1) + " beta=" + beta.str();
          break;
        }
      }
    }
    report.add({"C_commutator_recursion", ok, ok ? "exact per weight" : detail, now_ms() - t0});
  }

  {  // e''-intertwining law of C, graded components of height <= l-1
    long t0 = now_ms();
    bool ok = true;
    std::string detail;
    for (int i = 0; i < dat.rank && ok; ++i) {
      TensorElement TL = TensorElement::simple(make_ti(ctx, Flavor::U, i, -1),
                                               make_letter(ctx, Flavor::B, GenKind::Edd, i));
      TensorElement RM = TensorElement::simple(
          multiply(make_ti(ctx, Flavor::U, i, -1), make_letter(ctx, Flavor::U, GenKind::E, i)) *
              (qipow(ctx, i, 1) - qipow(ctx, i, -1)),
          make_one(ctx, Flavor::B));
      TensorElement diff = TL.mul(C.elem) - C.elem.mul(TL) - C.elem.mul(RM);
      if (!diff.project_leg1_e_height(l - 1).is_zero()) {
        ok = false;
        detail = "residual below the cutoff at i=" + std::to_string(i + 1);
      }
    }
    report.add({"C_edd_intertwiner", ok, ok ? "components <= l-1 exact" : detail, now_ms() - t0});
  }

  {  // f-intertwining law of (phi x 1)(C), components of height <= l-1.
    // The second left factor is -1 (x) f_i t_i^-1 (not +1 (x) f_i, which
    // fails already at height 0 against the canonical pairing element).
    long t0 = now_ms();
    bool ok = true;
    std::string detail;
    TensorElement phiC =
        C.elem.apply_leg1(Flavor::B, [&](const AlgebraElement& a) { return phi(a); });
    for (int i = 0; i < dat.rank && ok; ++i) {
      TensorElement FT = TensorElement::simple(make_letter(ctx, Flavor::B, GenKind::F, i),
                                               make_ti(ctx, Flavor::B, i, -1));
      TensorElement OF = TensorElement::simple(
          make_one(ctx, Flavor::B),
          multiply(make_letter(ctx, Flavor::B, GenKind::F, i), make_ti(ctx, Flavor::B, i, -1)));
      TensorElement diff = FT.mul(phiC) - OF.mul(phiC) - phiC.mul(FT);
      if (!diff.project_leg1_e_height(l - 1).is_zero()) {
        ok = false;
        detail = "residual below the cutoff at i=" + std::to_string(i + 1);
      }
    }
    report.add({"phiC_f_intertwiner", ok, ok ? "components <= l-1 exact" : detail, now_ms() - t0});
  }

  {  // C C^-1 = C^-1 C = 1 on components of height <= l
    long t0 = now_ms();
    SeriesTensor Cinv = build_C_inverse(ctx, l);
    TensorElement one = TensorElement::one(ctx, Flavor::U, Flavor::B);
    bool ok = C.elem.mul(Cinv.elem, l) == one && Cinv.elem.mul(C.elem, l) == one;
    report.add({"C_inverse", ok, ok ? "components <= l equal 1(x)1" : "product differs from 1(x)1",
                now_ms() - t0});
  }

  {  // antipode commutator rule on basis f-words of height <= l
    long t0 = now_ms();
    bool ok = true;
    std::string detail;
    for (int h = 1; h <= l && ok; ++h) {
      for (const auto& bw : enumerate_qplus(dat, h)) {
        if (bw.height() != h) continue;
        auto bd = weight_basis(ctx, bw);
        for (const auto& zword : bd->basis) {
          AlgebraElement z(&ctx, Flavor::U);
          NormalWord nw;
          nw.f_word = zword;
          nw.torus.assign(static_cast<size_t>(dat.rank), 0);
          z.add_term(nw, Scalar(1));
          for (int i = 0; i < dat.rank; ++i) {
            if (bw.coords[static_cast<size_t>(i)] < 1) continue;
            AlgebraElement v = extract_v(z, i);
            AlgebraElement szB = antipode(z, true).with_flavor(Flavor::B);
            AlgebraElement edd = make_letter(ctx, Flavor::B, GenKind::Edd, i);
            AlgebraElement lhs = multiply(edd, szB) - multiply(szB, edd);
            AlgebraElement rhs =
                multiply(make_ti(ctx, Flavor::B, i, 1), antipode(v, true).with_flavor(Flavor::B)) *
                (-qipow(ctx, i, -2));
            if (!(lhs == rhs)) {
              ok = false;
              detail = "failed at z-weight " + bw.str() + " i=" + std::to_string(i + 1);
              break;
            }
          }
          if (!ok) break;
        }
        if (!ok) break;
      }
    }
    report.add({"antipode_commutator", ok, ok ? "exact for basis words <= l" : detail,
                now_ms() - t0});
  }

  return report;
}

CheckReport verify_gamma(const Context& ctx, int l) {
  CheckReport report;
  const auto& dat = ctx.datum;
  SeriesElement G = build_gamma(ctx, l);

  auto residual_detail = [](const AlgebraElement& r) {
    if (r.is_zero()) return std::string("0");
    int minh = 1 << 20;
    for (const auto& [w, c] : r.terms()) minh = std::min(minh, static_cast<int>(w.e_word.size()));
    return "residual from e''-height " + std::to_string(minh);
  };

  {
    long t0 = now_ms();
    bool ok = true;
    std::string detail = "0";
    for (int i = 0; i < dat.rank; ++i) {
      AlgebraElement r = multiply(make_letter(ctx, Flavor::B, GenKind::Edd, i), G.elem, l);
      if (!r.is_zero()) {
        ok = false;
        detail = residual_detail(r) + " at i=" + std::to_string(i + 1);
        break;
      }
    }
    report.add({"edd_kills_gamma", ok, detail, now_ms() - t0});
  }

  {
    long t0 = now_ms();
    bool ok = true;
    std::string detail = "0";
    for (int i = 0; i < dat.rank; ++i) {
      AlgebraElement r = multiply(G.elem, make_letter(ctx, Flavor::B, GenKind::F, i), l - 1);
      if (!r.is_zero()) {
        ok = false;
        detail = residual_detail(r) + " at i=" + std::to_string(i + 1);
        break;
      }
    }
    report.add({"gamma_kills_f", ok, detail, now_ms() - t0});
  }

  {
    long t0 = now_ms();
    AlgebraElement sq = multiply(G.elem, G.elem, l);
    bool ok = sq == G.elem;
    report.add({"gamma_idempotent", ok, ok ? "pi_<=l(Gamma^2) = Gamma" : "differs", now_ms() - t0});
  }

  {
    long t0 = now_ms();
    SeriesTensor Cinv = build_C_inverse(ctx, l);
    AlgebraElement acc = make_zero(ctx, Flavor::B);
    for (const auto& [key, c] : Cinv.elem.terms()) {
      const NormalWord& bprime = key.first;  // U+ leg
      const NormalWord& a = key.second;      // B- leg
      AlgebraElement bk = phi(elem_of_word(ctx, Flavor::U, bprime));
      AlgebraElement tmp = multiply(G.elem, bk, l);
      acc = acc + multiply(elem_of_word(ctx, Flavor::B, a), tmp, l) * c;
    }
    bool ok = acc == make_one(ctx, Flavor::B);
    report.add({"gamma_resolution_of_identity", ok,
                ok ? "pi_<=l(sum a_k Gamma b_k) = 1" : "sum differs from 1", now_ms() - t0});
  }

  return report;
}

}  // namespace qb
