#include <doctest.h>

#include "qboson/error.hpp"
#include "qboson/parse.hpp"
#include "qboson/projector.hpp"
#include "qboson/render.hpp"

using namespace qb;

namespace {
Scalar qp(long k) { return Scalar::v_power(k); }
}

TEST_CASE("scalar rendering") {
  CHECK(render_scalar(Scalar(0), 1) == "0");
  CHECK(render_scalar(Scalar(1), 1) == "1");
  CHECK(render_scalar(qp(2) + Scalar(1) + qp(-2), 1) == "q^2 + 1 + q^-2");
  CHECK(render_scalar((qp(-1) - qp(1)).inverse(), 1) == "1/(q^-1 - q)");
  CHECK(render_scalar(qp(1) + qp(-1), 1) == "q + q^-1");
  CHECK(render_scalar(Scalar(mpq_class(3, 2)) * qp(2), 1) == "3/2q^2");
  CHECK(render_scalar(-qp(1), 1) == "-q");
  // fractional exponents at D = 3
  CHECK(render_scalar(Scalar::v_power(1), 3) == "q^(1/3)");
  CHECK(render_scalar(Scalar::v_power(-2), 3) == "q^(-2/3)");
  CHECK(render_scalar(Scalar::v_power(3), 3) == "q");
}

TEST_CASE("scalar parsing round trips") {
  for (const char* s : {"0", "1", "q", "-q", "q^2 + 1 + q^-2", "1/(q^-1 - q)", "3/2q^2",
                        "q + q^-1", "5", "-2/3", "q^5/(q + q^-1)"}) {
    Scalar v = parse_scalar(s, 1);
    CHECK(render_scalar(v, 1) == s);
  }
  CHECK(parse_scalar("q^(1/3)", 3) == Scalar::v_power(1));
  CHECK(parse_scalar("(q - q^-1)*(q + q^-1)", 1) == qp(2) - qp(-2));
  CHECK(parse_scalar("1/2", 1) == Scalar(mpq_class(1, 2)));
  CHECK_THROWS_WITH_AS(parse_scalar("q^(1/2)", 3), doctest::Contains("PARSE_ERROR"), EngineError);
  CHECK_THROWS_AS(parse_scalar("q +", 1), EngineError);
}

TEST_CASE("expression parsing") {
  Context ctx(cartan_preset("A1"));
  AlgebraElement x = parse_expression(ctx, "edd1 f1");
  CHECK(x.flavor() == Flavor::B);
  CHECK(render_element(x) == "1 + q^2 f1 edd1");

  AlgebraElement f2 = parse_expression(ctx, "f1^2");
  CHECK(f2.weight() == (RootWeight{{-2}}));
  CHECK(render_element(f2) == "f1^2");

  // divided power input
  AlgebraElement fd2 = parse_expression(ctx, "f1^(2)");
  CHECK(fd2 == f2 * q_integer(2, 1).inverse());

  Context a2(cartan_preset("A2"));
  CHECK_THROWS_WITH_AS(parse_expression(a2, "e3"), doctest::Contains("UNKNOWN_INDEX"),
                       EngineError);
  CHECK_THROWS_WITH_AS(parse_expression(a2, "edd1 fd1"), doctest::Contains("FLAVOR_MISMATCH"),
                       EngineError);

  AlgebraElement torus = parse_expression(a2, "K[1,-2]");
  CHECK(torus == make_torus(a2, Flavor::U, {1, -2}));

  AlgebraElement with_scalar = parse_expression(ctx, "(q - q^-1) e1 + 3 K[1]");
  CHECK(with_scalar == make_letter(ctx, Flavor::U, GenKind::E, 0) * (qp(1) - qp(-1)) +
                           make_torus(ctx, Flavor::U, {1}) * Scalar(3));
}

TEST_CASE("render-parse-render is a fixed point") {
  Context ctx(cartan_preset("A2"));
  for (const char* s : {"f1 f2", "edd1 f1 f2", "q e1 e2 - e2 e1", "K[1,0] f1^2",
                        "f1 K[2,2] f2"}) {
    AlgebraElement x = parse_expression(ctx, s);
    std::string r1 = render_element(x);
    AlgebraElement y = parse_expression(ctx, r1);
    CHECK(render_element(y) == r1);
    CHECK(x == y);
  }
}

TEST_CASE("divided-f rendering of the projector series") {
  Context ctx(cartan_preset("A1"), 8);
  SeriesElement g = build_gamma(ctx, 2);
  CHECK(render_element(g.elem, RenderStyle::DividedF) == "1 - f1 edd1 + q f1^(2) edd1^2");
}

TEST_CASE("cartan JSON round trip") {
  CartanDatum g2 = cartan_preset("G2");
  std::string js = cartan_to_json(g2);
  CartanDatum back = cartan_from_json(js);
  CHECK(back.a == g2.a);
  CHECK(back.d == g2.d);
  CHECK(back.coroot_form == g2.coroot_form);
  CHECK(back.exp_denom == 3);

  CHECK_THROWS_AS(cartan_from_json("{\"name\":\"x\"}"), EngineError);
  // custom coroot form override
  std::string custom = R"({"name":"A1c","cartan_matrix":[[2]],"symmetrizers":[1],
                           "coroot_form":[["1/2"]]})";
  CartanDatum c = cartan_from_json(custom);
  CHECK(c.exp_denom == 2);
}
