#pragma once

#include "qboson/hopf.hpp"
#include "qboson/linalg.hpp"

namespace qb {

/// Gram data of the Drinfeld-Killing form at one weight: the shared basis
/// labels of the plus/minus weight spaces, the pairing matrix
/// G[r][s] = <x_r, y_s>, and its exact inverse.
struct GramData {
  RootWeight weight;
  std::vector<Word> basis;
  Matrix gram;
  Matrix inverse;
};

/// The Drinfeld-Killing form. x must live in U>= (no f-part), y in U<= (no
/// e-part); both U-flavored. Zero across distinct weights.
Scalar pair(const AlgebraElement& x, const AlgebraElement& y);

/// Word-level pairing of a pure e-word against a pure f-word (memoized).
Scalar pair_words(const Context& ctx, const Word& e_word, const Word& f_word);

/// Gram matrix at beta over the weight-space basis; cached. Throws
/// DEGENERATE_GRAM if the exact determinant vanishes.
std::shared_ptr<const GramData> gram(const Context& ctx, const RootWeight& beta);

/// Dual basis {y_s} of the minus side: <x_r, y_s> = delta_rs, certified.
std::vector<AlgebraElement> dual_basis(const Context& ctx, const RootWeight& beta);

/// Canonical element C_beta = sum_r x_r (x) y_r in U+_beta (x) U-_{-beta}.
TensorElement canonical_element(const Context& ctx, const RootWeight& beta);

}  // namespace qb
