#include <doctest.h>

#include <random>

#include "qboson/error.hpp"
#include "qboson/module.hpp"

using namespace qb;

namespace {

Scalar qp(long k) { return Scalar::v_power(k); }

/// Random weight-preserving base change with unit determinant blocks
/// (integer unitriangular times a permutation).
std::map<size_t, Matrix> random_base_change(const GradedModule& m, std::mt19937& rng) {
  std::map<size_t, Matrix> out;
  std::uniform_int_distribution<int> coef(-2, 2);
  for (size_t w = 0; w < m.weights.size(); ++w) {
    const size_t n = static_cast<size_t>(m.weights[w].dim);
    if (n == 0) continue;
    Matrix p = mat_identity(n);
    for (size_t r = 0; r < n; ++r)
      for (size_t c = r + 1; c < n; ++c) p[r][c] = Scalar(coef(rng));
    std::vector<size_t> perm(n);
    for (size_t k = 0; k < n; ++k) perm[k] = k;
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix pp = mat_zero(n, n);
    for (size_t r = 0; r < n; ++r)
      for (size_t c = 0; c < n; ++c) pp[r][c] = p[r][perm[c]];
    out[w] = std::move(pp);
  }
  return out;
}

size_t total_kernel_dim(const WeightVectors& k) {
  size_t n = 0;
  for (const auto& [w, vecs] : k) n += vecs.size();
  return n;
}

}  // namespace

TEST_CASE("H(lambda) on rank one") {
  Context ctx(cartan_preset("A1"), 6);
  GradedModule m = build_H(ctx, {2}, 3);
  REQUIRE(m.weights.size() == 4);
  for (const auto& w : m.weights) CHECK(w.dim == 1);

  // e''(f^2 u) = (1 + q^2) f u
  size_t w2 = m.find({2 - 4});
  REQUIRE(w2 != GradedModule::npos);
  auto act = m.edd_act[0].find(w2);
  REQUIRE(act != m.edd_act[0].end());
  CHECK(act->second[0][0] == Scalar(1) + qp(2));

  // boundary flag at the truncation height
  CHECK(m.weights[m.find({2 - 6})].boundary);
  CHECK(!m.weights[m.find({2 - 4})].boundary);
}

TEST_CASE("H(lambda) dimensions follow the weight spaces") {
  Context ctx(cartan_preset("A2"), 6);
  GradedModule m = build_H(ctx, {1, 0}, 2);
  // at lambda - a1 - a2 the dimension is 2
  std::vector<int> p = {1 - 1, 0 - 1};  // <h, a1+a2> = (2-1, -1+2) = (1,1)
  p = {1 - (2 - 1), 0 - (-1 + 2)};
  size_t w = m.find(p);
  REQUIRE(w != GradedModule::npos);
  CHECK(m.weights[w].dim == 2);
}

TEST_CASE("kernels") {
  Context ctx(cartan_preset("A1"), 6);
  GradedModule h = build_H(ctx, {2}, 4);
  auto k = kernel_K(h);
  CHECK(total_kernel_dim(k) == 1);
  CHECK(k.count(h.find({2})) == 1);

  GradedModule sum = direct_sum(h, build_H(ctx, {5}, 4));
  auto k2 = kernel_K(sum);
  CHECK(total_kernel_dim(k2) == 2);

  GradedModule zero;
  zero.ctx = &ctx;
  zero.truncation = 0;
  zero.f_act.assign(1, {});
  zero.edd_act.assign(1, {});
  CHECK(kernel_K(zero).empty());
}

TEST_CASE("projector action on H(lambda)") {
  Context ctx(cartan_preset("A1"), 6);
  GradedModule h = build_H(ctx, {2}, 4);
  auto g = gamma_on_module(h);  // internal contract checks run here
  // rank one overall: identity at the top, zero below
  size_t top = h.find({2});
  CHECK(g.at(top)[0][0].is_one());
  size_t below = h.find({0});
  CHECK(g.at(below)[0][0].is_zero());
}

TEST_CASE("projector action after a base change") {
  Context ctx(cartan_preset("A2"), 5);
  GradedModule h = build_H(ctx, {1, 1}, 3);
  std::mt19937 rng(77);
  GradedModule c = conjugate(h, random_base_change(h, rng));
  auto g = gamma_on_module(c);
  size_t rank = 0;
  for (const auto& [w, mat] : g) rank += mat_rank(mat);
  CHECK(rank == 1);
}

TEST_CASE("direct sum decomposition checks") {
  Context ctx(cartan_preset("A1"), 6);
  GradedModule h = build_H(ctx, {2}, 4);
  CHECK(verify_direct_sum(h).pass());

  GradedModule sum = direct_sum(h, build_H(ctx, {-1}, 4));
  CHECK(verify_direct_sum(sum).pass());

  std::mt19937 rng(5);
  GradedModule conj = conjugate(sum, random_base_change(sum, rng));
  CHECK(verify_direct_sum(conj).pass());
}

TEST_CASE("decompose recovers planted multiplicities") {
  Context ctx(cartan_preset("A2"), 5);
  GradedModule a = build_H(ctx, {1, 0}, 3);
  GradedModule b = build_H(ctx, {0, 2}, 3);
  GradedModule m = direct_sum(direct_sum(a, a), b);
  std::mt19937 rng(123);
  GradedModule disguised = conjugate(m, random_base_change(m, rng));
  auto mults = decompose(disguised);
  REQUIRE(mults.size() == 2);
  CHECK(mults[0] == std::pair<std::vector<int>, int>{{0, 2}, 1});
  CHECK(mults[1] == std::pair<std::vector<int>, int>{{1, 0}, 2});

  CHECK(decompose(build_H(ctx, {3, 3}, 3)).size() == 1);
}

TEST_CASE("split_complement") {
  Context ctx(cartan_preset("A1"), 6);
  GradedModule h1 = build_H(ctx, {2}, 4);
  GradedModule h2 = build_H(ctx, {-3}, 4);
  GradedModule m = direct_sum(h1, h2);

  // L = first summand (block coordinates)
  WeightVectors L;
  for (size_t w = 0; w < h1.weights.size(); ++w) {
    size_t mw = m.find(h1.weights[w].pairings);
    std::vector<Scalar> v(static_cast<size_t>(m.weights[mw].dim));
    v[0] = Scalar(1);  // first block is the leading coordinate
    L[mw].push_back(v);
  }
  WeightVectors BN;
  WeightVectors N = split_complement(m, L, &BN);
  CHECK(total_kernel_dim(N) == 1);
  // B.N covers exactly the second block
  size_t bn_total = 0;
  for (const auto& [w, vecs] : BN) bn_total += vecs.size();
  CHECK(bn_total == h2.weights.size());

  // L = M gives a trivial complement
  WeightVectors full;
  for (size_t w = 0; w < m.weights.size(); ++w) {
    for (int k = 0; k < m.weights[w].dim; ++k) {
      std::vector<Scalar> v(static_cast<size_t>(m.weights[w].dim));
      v[static_cast<size_t>(k)] = Scalar(1);
      full[w].push_back(v);
    }
  }
  CHECK(split_complement(m, full).empty());

  // diagonal copy inside H (+) H
  GradedModule mm = direct_sum(h1, build_H(ctx, {2}, 4));
  WeightVectors diag;
  for (size_t w = 0; w < mm.weights.size(); ++w) {
    std::vector<Scalar> v(static_cast<size_t>(mm.weights[w].dim));
    v[0] = Scalar(1);
    v[1] = Scalar(1);
    diag[w].push_back(v);
  }
  WeightVectors BN2;
  WeightVectors N2 = split_complement(mm, diag, &BN2);
  CHECK(total_kernel_dim(N2) == 1);

  // a non-stable subspace is rejected
  WeightVectors bad;
  size_t top = mm.find({2});
  std::vector<Scalar> v(2);
  v[0] = Scalar(1);
  bad[top].push_back(v);  // top vector alone is not f-stable
  CHECK_THROWS_WITH_AS(split_complement(mm, bad), doctest::Contains("NOT_A_SUBMODULE"),
                       EngineError);
}

TEST_CASE("module JSON round trip") {
  Context ctx(cartan_preset("A2"), 5);
  GradedModule m = build_H(ctx, {1, 1}, 2);
  std::string js = module_to_json(m);
  GradedModule back = module_from_json(ctx, js);
  REQUIRE(back.weights.size() == m.weights.size());
  for (size_t w = 0; w < m.weights.size(); ++w) {
    CHECK(back.weights[w].pairings == m.weights[w].pairings);
    CHECK(back.weights[w].dim == m.weights[w].dim);
    CHECK(back.weights[w].boundary == m.weights[w].boundary);
  }
  for (int i = 0; i < 2; ++i) {
    REQUIRE(back.f_act[static_cast<size_t>(i)].size() == m.f_act[static_cast<size_t>(i)].size());
    for (const auto& [w, mat] : m.f_act[static_cast<size_t>(i)])
      CHECK(mat_eq(back.f_act[static_cast<size_t>(i)].at(w), mat));
  }

  // corrupting an action matrix trips the load-time relation check
  GradedModule bad = m;
  for (auto& [w, mat] : bad.f_act[0]) {
    mat[0][0] += Scalar(1);
    break;
  }
  CHECK_THROWS_WITH_AS(module_from_json(ctx, module_to_json(bad)),
                       doctest::Contains("INCONSISTENT_MODULE"), EngineError);
}
