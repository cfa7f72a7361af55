#pragma once

#include <string>

#include "qboson/linalg.hpp"
#include "qboson/tensor.hpp"

namespace qb {

/// Plain prints raw powers (f1^2); DividedF prints the f-part in divided
/// powers (f1^(2)) with the q-factorial folded into the coefficient, the way
/// the rank-one projector series is usually written.
enum class RenderStyle { Plain, DividedF };

std::string render_scalar(const Scalar& s, long exp_denom);
std::string render_element(const AlgebraElement& x, RenderStyle style = RenderStyle::Plain);
std::string render_tensor(const TensorElement& t, RenderStyle style = RenderStyle::Plain);
std::string render_matrix(const Matrix& m, long exp_denom);
std::string render_word(const CartanDatum& dat, Flavor flavor, const NormalWord& w,
                        RenderStyle style, Scalar* coeff_adjust);

}  // namespace qb
