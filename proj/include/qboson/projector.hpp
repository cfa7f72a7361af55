#pragma once

#include "qboson/pairing.hpp"
#include "qboson/report.hpp"

namespace qb {

/// Height-truncated series in B: all graded pieces of e''-height <= cutoff.
struct SeriesElement {
  int cutoff = 0;
  AlgebraElement elem;
};

/// Height-truncated series in U+ (x) B-: all pieces with first-leg weight
/// height <= cutoff.
struct SeriesTensor {
  int cutoff = 0;
  TensorElement elem;
};

/// C = sum_{|beta|<=l} (1 (x) k_beta^-1)(1 (x) S^-1)(C_beta) in U+ (x) B-.
SeriesTensor build_C(const Context& ctx, int l);

/// C^-1 = sum_{|beta|<=l} q^{-(beta,beta)} (k_beta (x) k_beta^-1)(S^-1 (x) S^-1)(C_beta).
SeriesTensor build_C_inverse(const Context& ctx, int l);

/// The truncated extremal projector: sum_{|beta|<=l, r} k_beta^-1 S^-1(y_r) phi(x_r),
/// a B-element whose beta-term has f-height = e''-height = |beta| and trivial torus.
SeriesElement build_gamma(const Context& ctx, int l);

/// Rank-one closed form sum_{n<=l} q^{n(n-1)/2} (-1)^n f^(n) e''^n; WRONG_DATUM
/// unless the datum is the rank-1 a=[[2]], d=[1] preset shape.
SeriesElement gamma_closed_form_sl2(const Context& ctx, int l);

/// The unique v with Delta(z) = 1 (x) z + f_i (x) v t_i^-1 + (terms with other
/// first legs), for weight-homogeneous z in U- (accepted as U- or B-flavored).
AlgebraElement extract_v(const AlgebraElement& z, int i);

/// Exact checks of the C-element identities modulo the height filtration:
///  - the per-weight commutator recursion defining C (exact per beta)
///  - the e''-intertwining law of C and the f-intertwining law of (phi x 1)(C)
///  - C C^-1 = C^-1 C = 1 (x) 1 on all components of height <= l
///  - the antipode commutator rule e''_i S^-1(z) - S^-1(z) e''_i = -q_i^-2 t_i S^-1(v)
CheckReport verify_C_identities(const Context& ctx, int l);

/// Exact truncated contracts of the extremal projector:
///  (i) pi_{<=l}(e''_i Gamma) = 0 and pi_{<=l-1}(Gamma f_i) = 0
///  (ii) pi_{<=l}(Gamma^2) = Gamma
///  (iii) pi_{<=l}(sum_k a_k Gamma phi(b'_k)) = 1 with C^-1 = sum_k b'_k (x) a_k
CheckReport verify_gamma(const Context& ctx, int l);

/// k_beta as a torus exponent vector: coords d_i * m_i.
TorusVec k_beta_exponent(const CartanDatum& dat, const RootWeight& beta);

}  // namespace qb
