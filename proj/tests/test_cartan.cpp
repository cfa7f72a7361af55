#include <doctest.h>

#include <random>

#include "qboson/cartan.hpp"
#include "qboson/error.hpp"

using namespace qb;

namespace {
RootWeight rw(std::vector<int> c) { return RootWeight{std::move(c)}; }
}

TEST_CASE("preset validation") {
  for (const char* name : {"A1", "A2", "B2", "G2", "A1aff"}) CHECK_NOTHROW(cartan_preset(name));
  CHECK(cartan_preset("A1~").name == "A1aff");

  CartanDatum bad;
  bad.rank = 2;
  bad.a = {{2, -1}, {-3, 2}};
  bad.d = {1, 1};
  CHECK_THROWS_WITH_AS(validate_cartan(bad), doctest::Contains("NON_SYMMETRIZABLE"), EngineError);

  CartanDatum diag;
  diag.rank = 1;
  diag.a = {{3}};
  diag.d = {1};
  CHECK_THROWS_AS(validate_cartan(diag), EngineError);
}

TEST_CASE("exponent denominators") {
  CHECK(cartan_preset("A1").exp_denom == 1);
  CHECK(cartan_preset("B2").exp_denom == 1);
  CHECK(cartan_preset("G2").exp_denom == 3);  // (h_2|h_2) = 2/3 under the default form
}

TEST_CASE("root form values") {
  auto a1 = cartan_preset("A1");
  CHECK(root_form(a1, rw({1}), rw({1})) == 2);
  auto a2 = cartan_preset("A2");
  CHECK(root_form(a2, rw({1, 0}), rw({0, 1})) == -1);
  auto b2 = cartan_preset("B2");
  // frozen from d_1 a_12 on the preset matrix
  CHECK(root_form(b2, rw({1, 0}), rw({0, 1})) == -2);
  CHECK(root_form(b2, rw({1, 0}), rw({1, 0})) == 4);
  CHECK(root_form(b2, rw({0, 1}), rw({0, 1})) == 2);
}

TEST_CASE("coroot pairings") {
  auto a1 = cartan_preset("A1");
  CHECK(coroot_pairing(a1, 0, rw({1})) == 2);
  auto a2 = cartan_preset("A2");
  CHECK(coroot_pairing(a2, 0, rw({0, 1})) == -1);
  CHECK(coroot_pairing(a2, 0, rw({1, 1})) == 1);
  // agreement with 2 (a_i, b)/(a_i, a_i)
  for (auto name : {"A2", "B2", "G2"}) {
    auto dat = cartan_preset(name);
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> u(-3, 3);
    for (int t = 0; t < 30; ++t) {
      RootWeight b = rw({u(rng), u(rng)});
      for (int i = 0; i < dat.rank; ++i) {
        RootWeight ai = RootWeight::simple(dat.rank, i);
        CHECK(2 * root_form(dat, ai, b) ==
              coroot_pairing(dat, i, b) * root_form(dat, ai, ai));
      }
    }
  }
}

TEST_CASE("root form is symmetric (random integer vectors)") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> u(-5, 5);
  for (auto name : {"A1", "A2", "B2", "G2", "A1aff"}) {
    auto dat = cartan_preset(name);
    for (int t = 0; t < 40; ++t) {
      std::vector<int> x(dat.rank), y(dat.rank);
      for (auto& v : x) v = u(rng);
      for (auto& v : y) v = u(rng);
      CHECK(root_form(dat, rw(x), rw(y)) == root_form(dat, rw(y), rw(x)));
      CHECK(coroot_form_pair(dat, x, y) == coroot_form_pair(dat, y, x));
    }
  }
}

TEST_CASE("height additivity") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> u(0, 5);
  for (int t = 0; t < 30; ++t) {
    RootWeight b = rw({u(rng), u(rng)}), g = rw({u(rng), u(rng)});
    CHECK((b + g).height() == b.height() + g.height());
  }
}

TEST_CASE("Q_+ enumeration") {
  auto a1 = cartan_preset("A1");
  auto l1 = enumerate_qplus(a1, 2);
  REQUIRE(l1.size() == 3);
  CHECK(l1[0] == rw({0}));
  CHECK(l1[1] == rw({1}));
  CHECK(l1[2] == rw({2}));

  auto a2 = cartan_preset("A2");
  auto l2 = enumerate_qplus(a2, 2);
  REQUIRE(l2.size() == 6);
  // [0, a1, a2, 2a1, a1+a2, 2a2]
  CHECK(l2[1] == rw({1, 0}));
  CHECK(l2[2] == rw({0, 1}));
  CHECK(l2[3] == rw({2, 0}));
  CHECK(l2[4] == rw({1, 1}));
  CHECK(l2[5] == rw({0, 2}));
  CHECK(enumerate_qplus(a2, 0).size() == 1);

  // simplex count C(l + rank, rank) against direct enumeration
  for (int l = 0; l <= 6; ++l) {
    size_t expect = static_cast<size_t>((l + 1) * (l + 2) / 2);
    CHECK(enumerate_qplus(a2, l).size() == expect);
  }
  // each element exactly once, heights ascending
  auto lst = enumerate_qplus(a2, 4);
  for (size_t k = 1; k < lst.size(); ++k) {
    CHECK(lst[k - 1].height() <= lst[k].height());
    CHECK(!(lst[k - 1] == lst[k]));
  }
}
