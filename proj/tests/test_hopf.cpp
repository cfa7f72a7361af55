#include <doctest.h>

#include <random>

#include "qboson/error.hpp"
#include "qboson/hopf.hpp"

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

AlgebraElement random_u_word(const Context& ctx, std::mt19937& rng, int len) {
  std::uniform_int_distribution<int> idx(0, ctx.datum.rank - 1);
  std::uniform_int_distribution<int> kind(0, 2);
  AlgebraElement x = make_one(ctx, Flavor::U);
  for (int k = 0; k < len; ++k) {
    int i = idx(rng);
    switch (kind(rng)) {
      case 0: x = multiply(x, make_letter(ctx, Flavor::U, GenKind::F, i)); break;
      case 1: x = multiply(x, make_letter(ctx, Flavor::U, GenKind::E, i)); break;
      default: x = multiply(x, make_ti(ctx, Flavor::U, i, -1)); break;
    }
  }
  return x;
}

}  // namespace

TEST_CASE("coproduct generator values") {
  Context ctx(cartan_preset("A1"));
  auto f = make_letter(ctx, Flavor::U, GenKind::F, 0);

  TensorElement df = coproduct(ctx, CoproductVariant::Delta, f);
  TensorElement expect(&ctx, Flavor::U, Flavor::U);
  expect.add_term(nw(1, {0}, {}, {}), nw(1, {}, {-1}, {}), Scalar(1));  // f (x) t^-1
  expect.add_term(nw(1, {}, {}, {}), nw(1, {0}, {}, {}), Scalar(1));    // 1 (x) f
  CHECK(df == expect);

  auto edd = make_letter(ctx, Flavor::B, GenKind::Edd, 0);
  TensorElement dr = coproduct(ctx, CoproductVariant::DeltaR, edd);
  TensorElement expect2(&ctx, Flavor::B, Flavor::U);
  // (q - q^-1) (x) t^-1 e  +  e'' (x) t^-1
  expect2.add_term(nw(1, {}, {}, {}), nw(1, {}, {-1}, {0}), qp(1) - qp(-1));
  expect2.add_term(nw(1, {}, {}, {0}), nw(1, {}, {-1}, {}), Scalar(1));
  CHECK(dr == expect2);

  // group-like torus in all variants
  auto K = make_torus(ctx, Flavor::U, {2});
  TensorElement dk = coproduct(ctx, CoproductVariant::Delta, K);
  TensorElement expect3(&ctx, Flavor::U, Flavor::U);
  expect3.add_term(nw(1, {}, {2}, {}), nw(1, {}, {2}, {}), Scalar(1));
  CHECK(dk == expect3);
}

TEST_CASE("coproduct of f^2 straightens the mixed leg") {
  Context ctx(cartan_preset("A1"));
  auto f = make_letter(ctx, Flavor::U, GenKind::F, 0);
  TensorElement d = coproduct(ctx, CoproductVariant::Delta, multiply(f, f));
  TensorElement expect(&ctx, Flavor::U, Flavor::U);
  expect.add_term(nw(1, {0, 0}, {}, {}), nw(1, {}, {-2}, {}), Scalar(1));
  expect.add_term(nw(1, {0}, {}, {}), nw(1, {0}, {-1}, {}), Scalar(1) + qp(2));
  expect.add_term(nw(1, {}, {}, {}), nw(1, {0, 0}, {}, {}), Scalar(1));
  CHECK(d == expect);
}

TEST_CASE("coproducts preserve weight") {
  std::mt19937 rng(31);
  Context ctx(cartan_preset("A2"));
  for (int t = 0; t < 10; ++t) {
    auto x = random_u_word(ctx, rng, 3);
    if (x.is_zero()) continue;
    RootWeight w = x.weight();
    TensorElement d = coproduct(ctx, CoproductVariant::Delta, x);
    for (const auto& [key, c] : d.terms()) {
      RootWeight w1 = word_weight(ctx.datum, key.first.e_word) -
                      word_weight(ctx.datum, key.first.f_word);
      RootWeight w2 = word_weight(ctx.datum, key.second.e_word) -
                      word_weight(ctx.datum, key.second.f_word);
      CHECK(w1 + w2 == w);
    }
  }
}

TEST_CASE("antipode generator values and inverse") {
  Context a2(cartan_preset("A2"));
  // S(e_1 f_2) = f_2 t_2 t_1^-1 e_1
  auto e1 = make_letter(a2, Flavor::U, GenKind::E, 0);
  auto f2 = make_letter(a2, Flavor::U, GenKind::F, 1);
  AlgebraElement s = antipode(multiply(e1, f2));
  AlgebraElement expect = multiply(multiply(make_letter(a2, Flavor::U, GenKind::F, 1),
                                            make_torus(a2, Flavor::U, {-1, 1})),
                                   make_letter(a2, Flavor::U, GenKind::E, 0));
  CHECK(s == expect);

  Context a1(cartan_preset("A1"));
  // S^-1(f) = -t f = -q^-2 f t in normal order
  AlgebraElement si = antipode(make_letter(a1, Flavor::U, GenKind::F, 0), true);
  AlgebraElement ex = make_zero(a1, Flavor::U);
  ex.add_term(nw(1, {0}, {1}, {}), -qp(-2));
  CHECK(si == ex);

  // S(q^h) = q^-h
  AlgebraElement st = antipode(make_torus(a1, Flavor::U, {3}));
  CHECK(st == make_torus(a1, Flavor::U, {-3}));

  std::mt19937 rng(5);
  for (int t = 0; t < 12; ++t) {
    auto x = random_u_word(a2, rng, 4);
    CHECK(antipode(antipode(x, true), false) == x);
    CHECK(antipode(antipode(x, false), true) == x);
  }
}

TEST_CASE("phi generator values") {
  Context ctx(cartan_preset("A2"));
  Scalar qq = qp(1) - qp(-1);

  AlgebraElement pe = phi(make_letter(ctx, Flavor::Bbar, GenKind::E, 0));
  CHECK(pe == make_letter(ctx, Flavor::B, GenKind::Edd, 0) * (-qq.inverse()));

  AlgebraElement pf = phi(make_letter(ctx, Flavor::Bbar, GenKind::Fd, 0));
  CHECK(pf == make_letter(ctx, Flavor::B, GenKind::F, 0) * (-qq));

  // phi(e_1 e_2) = e''_2 e''_1 / ((q_1-q_1^-1)(q_2-q_2^-1))
  AlgebraElement p = phi(multiply(make_letter(ctx, Flavor::Bbar, GenKind::E, 0),
                                  make_letter(ctx, Flavor::Bbar, GenKind::E, 1)));
  AlgebraElement expect = multiply(make_letter(ctx, Flavor::B, GenKind::Edd, 1),
                                   make_letter(ctx, Flavor::B, GenKind::Edd, 0)) *
                          (qq * qq).inverse();
  CHECK(p == expect);

  // U>= elements are accepted
  AlgebraElement pu = phi(make_letter(ctx, Flavor::U, GenKind::E, 0));
  CHECK(pu == pe);
  CHECK_THROWS_AS(phi(make_letter(ctx, Flavor::U, GenKind::F, 0)), EngineError);
}

TEST_CASE("homomorphism and anti-homomorphism safety") {
  for (auto name : {"A1", "A2"}) {
    Context ctx(cartan_preset(name));
    CheckReport rep = verify_hopf(ctx);
    for (const auto& c : rep.checks) {
      INFO(name, ": ", c.name);
      CHECK(c.pass);
    }
  }
}
