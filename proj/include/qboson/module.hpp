#pragma once

#include <map>
#include <optional>

#include "qboson/linalg.hpp"
#include "qboson/projector.hpp"
#include "qboson/report.hpp"

namespace qb {

/// One weight space of a graded module: torus pairings <h_i, mu>, dimension,
/// and whether the f-action out of this weight is truncated.
struct ModuleWeight {
  std::vector<int> pairings;
  int dim = 0;
  bool boundary = false;
};

/// Finite-dimensional-per-weight module over B with exact generator matrices.
/// The torus action is implied by the weight pairings. f_act[i][w] maps the
/// space at w to the one at w - alpha_i (absent entry = zero/truncated map);
/// edd_act[i][w] maps to w + alpha_i and is always exact.
struct GradedModule {
  const Context* ctx = nullptr;
  int truncation = 0;
  std::vector<ModuleWeight> weights;                  // sorted by pairings
  std::map<std::vector<int>, size_t> index;           // pairings -> weight slot
  std::vector<std::map<size_t, Matrix>> f_act, edd_act;

  static constexpr size_t npos = static_cast<size_t>(-1);
  size_t find(const std::vector<int>& pairings) const;
  std::vector<int> shifted(const std::vector<int>& pairings, int i, int sign) const;
  void rebuild_index();
};

/// Per-weight lists of coordinate vectors (kernel bases, submodule specs).
using WeightVectors = std::map<size_t, std::vector<std::vector<Scalar>>>;

/// The highest-weight module H(lambda) truncated at height N: free rank-one
/// over the f-half, f_i left multiplication, e''_i by commuting through the
/// f-word and killing the generator.
GradedModule build_H(const Context& ctx, const std::vector<int>& lambda_pairings, int N);

GradedModule direct_sum(const GradedModule& a, const GradedModule& b);

/// Weight-preserving base change: the matrix at each weight sends new
/// coordinates to old ones (invertible).
GradedModule conjugate(const GradedModule& m, const std::map<size_t, Matrix>& base_change);

/// Joint exact kernel of all e''_i, per weight.
WeightVectors kernel_K(const GradedModule& m);

/// The matrix of the truncated projector per weight. Asserts exactness of the
/// projector contracts on the module (idempotence, image = kernel of e'',
/// f-image in the kernel of the matrix).
std::map<size_t, Matrix> gamma_on_module(const GradedModule& m);

/// Checks K(M) + sum Im(f_i) = M with trivial intersection (non-boundary
/// weights) and that the f-half generates M from K(M) (all weights).
CheckReport verify_direct_sum(const GradedModule& m);

/// Simple-module multiplicities: dim K(M) per weight, with the rank-one
/// freeness accounting cross-check. INCONSISTENT_MODULE when the accounting
/// fails (input outside category O, or the truncation is too tight).
std::vector<std::pair<std::vector<int>, int>> decompose(const GradedModule& m);

/// Weightwise complement: with L a stable graded submodule (NOT_A_SUBMODULE
/// otherwise), returns N with K(M) = K(L) (+) N and certifies
/// M = L (+) B.N per weight; bn_out receives the generated complement.
WeightVectors split_complement(const GradedModule& m, const WeightVectors& L,
                               WeightVectors* bn_out = nullptr);

/// JSON round-trip (schema_version 1; matrices as scalar strings).
std::string module_to_json(const GradedModule& m);
GradedModule module_from_json(const Context& ctx, const std::string& text);

}  // namespace qb
