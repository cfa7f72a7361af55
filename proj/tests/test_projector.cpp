#include <doctest.h>

#include <random>

#include "qboson/error.hpp"
#include "qboson/projector.hpp"

using namespace qb;

namespace {

Scalar qp(long k) { return Scalar::v_power(k); }

NormalWord nw(int rank, Word f, TorusVec t, Word e) {
  NormalWord w;
  w.f_word = std::move(f);
  w.torus = t.empty() ? TorusVec(static_cast<size_t>(rank), 0) : std::move(t);
  w.e_word = std::move(e);
  return w;
}

}  // namespace

TEST_CASE("C components on A1") {
  Context ctx(cartan_preset("A1"), 8);
  SeriesTensor C = build_C(ctx, 2);
  // height-0 component is 1 (x) 1
  TensorElement c0 = C.elem.component_leg1_weight(RootWeight{{0}});
  CHECK(c0 == TensorElement::one(ctx, Flavor::U, Flavor::B));
  // height-1 component: e (x) (q - q^-1) f  (the antipode and torus collapse)
  TensorElement c1 = C.elem.component_leg1_weight(RootWeight{{1}});
  TensorElement expect(&ctx, Flavor::U, Flavor::B);
  expect.add_term(nw(1, {}, {}, {0}), nw(1, {0}, {}, {}), qp(1) - qp(-1));
  CHECK(c1 == expect);
}

TEST_CASE("C inverse truncation has one term per weight on A1") {
  Context ctx(cartan_preset("A1"), 8);
  SeriesTensor Ci = build_C_inverse(ctx, 1);
  CHECK(Ci.elem.terms().size() == 2);
}

TEST_CASE("gamma matches the rank-one closed form") {
  Context ctx(cartan_preset("A1"), 8);
  SeriesElement g = build_gamma(ctx, 2);
  SeriesElement closed = gamma_closed_form_sl2(ctx, 2);
  CHECK(g.elem == closed.elem);

  // literal terms: 1 - f e'' + (q/[2]) f^2 e''^2
  AlgebraElement expect = make_zero(ctx, Flavor::B);
  expect.add_term(nw(1, {}, {}, {}), Scalar(1));
  expect.add_term(nw(1, {0}, {}, {0}), Scalar(-1));
  expect.add_term(nw(1, {0, 0}, {}, {0, 0}), qp(1) / q_integer(2, 1));
  CHECK(g.elem == expect);

  // deeper agreement
  CHECK(build_gamma(ctx, 6).elem == gamma_closed_form_sl2(ctx, 6).elem);

  // n = 3 coefficient: (-1)^3 q^3 / [3]!
  SeriesElement g3 = gamma_closed_form_sl2(ctx, 3);
  auto it = g3.elem.terms().find(nw(1, {0, 0, 0}, {}, {0, 0, 0}));
  REQUIRE(it != g3.elem.terms().end());
  CHECK(it->second == -qp(3) / q_factorial(3, 1));
}

TEST_CASE("closed form rejects other data") {
  Context a2(cartan_preset("A2"));
  CHECK_THROWS_WITH_AS(gamma_closed_form_sl2(a2, 2), doctest::Contains("WRONG_DATUM"), EngineError);
}

TEST_CASE("gamma beta-term is -f_i e''_i on every datum") {
  for (auto name : {"A1", "A2", "B2", "G2"}) {
    Context ctx(cartan_preset(name), 4);
    SeriesElement g = build_gamma(ctx, 1);
    for (int i = 0; i < ctx.datum.rank; ++i) {
      AlgebraElement comp = g.elem.component_of_weight(RootWeight::zero(ctx.datum.rank));
      auto it = comp.terms().find(nw(ctx.datum.rank, {static_cast<uint8_t>(i)}, {},
                                     {static_cast<uint8_t>(i)}));
      REQUIRE(it != comp.terms().end());
      CHECK(it->second == Scalar(-1));
    }
  }
}

TEST_CASE("gamma truncations are monotone") {
  Context ctx(cartan_preset("A1"), 8);
  for (int l = 0; l <= 5; ++l)
    CHECK(build_gamma(ctx, l + 1).elem.project_e_height(l) == build_gamma(ctx, l).elem);
  Context a2(cartan_preset("A2"), 5);
  CHECK(build_gamma(a2, 4).elem.project_e_height(3) == build_gamma(a2, 3).elem);
}

TEST_CASE("extract_v") {
  Context ctx(cartan_preset("A1"), 8);
  auto f = make_letter(ctx, Flavor::U, GenKind::F, 0);
  CHECK(extract_v(f, 0) == make_one(ctx, Flavor::U));
  CHECK(extract_v(multiply(f, f), 0) == f * (Scalar(1) + qp(2)));

  // composite rule v(z' z'') = z' v'' + q^{(b'', a_i)} v' z''
  Context a2(cartan_preset("A2"), 6);
  std::mt19937 rng(12);
  std::uniform_int_distribution<int> idx(0, 1);
  for (int t = 0; t < 10; ++t) {
    int len1 = 1 + t % 2, len2 = 1 + (t / 2) % 2;
    AlgebraElement z1 = make_one(a2, Flavor::U), z2 = make_one(a2, Flavor::U);
    for (int k = 0; k < len1; ++k)
      z1 = multiply(z1, make_letter(a2, Flavor::U, GenKind::F, idx(rng)));
    for (int k = 0; k < len2; ++k)
      z2 = multiply(z2, make_letter(a2, Flavor::U, GenKind::F, idx(rng)));
    RootWeight b2 = RootWeight::zero(2) - z2.weight();
    for (int i = 0; i < 2; ++i) {
      RootWeight total = RootWeight::zero(2) - multiply(z1, z2).weight();
      if (total.coords[static_cast<size_t>(i)] < 1) continue;
      AlgebraElement v = extract_v(multiply(z1, z2), i);
      AlgebraElement v1 = extract_v(z1, i), v2 = extract_v(z2, i);
      long form = root_form(a2.datum, b2, RootWeight::simple(2, i));
      AlgebraElement expect =
          multiply(z1, v2) + multiply(v1, z2) * qp(form * a2.datum.exp_denom);
      CHECK(v == expect);
    }
  }
}

TEST_CASE("antipode commutator identity, rank-one literal") {
  Context ctx(cartan_preset("A1"), 8);
  auto f = make_letter(ctx, Flavor::U, GenKind::F, 0);
  AlgebraElement sf = antipode(f, true).with_flavor(Flavor::B);
  auto edd = make_letter(ctx, Flavor::B, GenKind::Edd, 0);
  AlgebraElement lhs = multiply(edd, sf) - multiply(sf, edd);
  AlgebraElement rhs = make_ti(ctx, Flavor::B, 0, 1) * (-qp(-2));
  CHECK(lhs == rhs);
}

TEST_CASE("C identities verify on A1") {
  Context ctx(cartan_preset("A1"), 8);
  CheckReport rep = verify_C_identities(ctx, 3);
  for (const auto& c : rep.checks) {
    INFO(c.name, ": ", c.detail);
    CHECK(c.pass);
  }
}

TEST_CASE("residual placement at cutoff 2 on A1") {
  Context ctx(cartan_preset("A1"), 8);
  SeriesElement g = build_gamma(ctx, 2);
  auto edd = make_letter(ctx, Flavor::B, GenKind::Edd, 0);
  auto f = make_letter(ctx, Flavor::B, GenKind::F, 0);

  // e'' Gamma_{<=2} = q^5 f^(2) e''^3 exactly
  AlgebraElement r1 = multiply(edd, g.elem);
  AlgebraElement expect1 = make_zero(ctx, Flavor::B);
  expect1.add_term(nw(1, {0, 0}, {}, {0, 0, 0}), qp(5) / q_integer(2, 1));
  CHECK(r1 == expect1);

  // Gamma_{<=2} f = q^5 f^(2) f e''^2 exactly
  AlgebraElement r2 = multiply(g.elem, f);
  AlgebraElement expect2 = make_zero(ctx, Flavor::B);
  expect2.add_term(nw(1, {0, 0, 0}, {}, {0, 0}), qp(5) / q_integer(2, 1));
  CHECK(r2 == expect2);
}

TEST_CASE("projector contracts verify at small cutoffs") {
  {
    Context ctx(cartan_preset("A1"), 8);
    CheckReport rep = verify_gamma(ctx, 4);
    for (const auto& c : rep.checks) {
      INFO("A1: ", c.name, ": ", c.detail);
      CHECK(c.pass);
    }
  }
  {
    Context ctx(cartan_preset("A2"), 5);
    CheckReport rep = verify_gamma(ctx, 3);
    for (const auto& c : rep.checks) {
      INFO("A2: ", c.name, ": ", c.detail);
      CHECK(c.pass);
    }
  }
}
