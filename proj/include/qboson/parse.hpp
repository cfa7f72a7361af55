#pragma once

#include <optional>
#include <string>

#include "qboson/algebra.hpp"

namespace qb {

/// Parses the scalar grammar: rationals, q, q^k, q^(a/b), + - * /, parens,
/// and number-q juxtaposition ("3/2q^2"). Exponents must be multiples of 1/D.
Scalar parse_scalar(const std::string& text, long exp_denom);

/// Parses the expression grammar
///   expr   := term (('+'|'-') term)*
///   term   := scalar? factor+
///   factor := gen ('^' int | '^(' int ')')?       («^(n)» = divided power)
///   gen    := ('e'|'edd'|'f'|'fd') index | 'K' '[' int (',' int)* ']'
/// The flavor is inferred from the letters (edd -> B, fd -> Bbar, else U)
/// unless forced; mixed alphabets raise FLAVOR_MISMATCH.
AlgebraElement parse_expression(const Context& ctx, const std::string& text,
                                std::optional<Flavor> flavor = std::nullopt);

/// Cartan datum config (JSON): keys name, cartan_matrix, symmetrizers,
/// optional coroot_form (entries as integers or "p/q" strings).
CartanDatum cartan_from_json(const std::string& text);
std::string cartan_to_json(const CartanDatum& dat);

}  // namespace qb
