#pragma once

#include <memory>

#include "qboson/report.hpp"
#include "qboson/tensor.hpp"

namespace qb {

/// The four coproducts. Domains and leg flavors:
///   Delta:  U -> U (x) U         DeltaR: B -> B (x) U
///   DeltaL: Bbar -> U (x) Bbar   DeltaB: U -> Bbar (x) B
enum class CoproductVariant { Delta, DeltaR, DeltaL, DeltaB };

CoproductVariant coproduct_variant_from_name(const std::string& s);
const char* coproduct_variant_name(CoproductVariant v);
Flavor coproduct_domain(CoproductVariant v);

/// Multiplicative extension of the generator rules; every variant is
/// group-like on the torus. FLAVOR_MISMATCH when x is not in the domain.
TensorElement coproduct(const Context& ctx, CoproductVariant v, const AlgebraElement& x);

/// Memoized Delta of a pure e-word / f-word of U (used by the pairing
/// recursion and by extract_v).
std::shared_ptr<const TensorElement> delta_e_word(const Context& ctx, const Word& w);
std::shared_ptr<const TensorElement> delta_f_word(const Context& ctx, const Word& w);

/// Antipode of U and its inverse, extended anti-multiplicatively.
AlgebraElement antipode(const AlgebraElement& x, bool inverse = false);

/// The anti-isomorphism from Bbar (or its e/torus subalgebra, accepted as
/// U-flavored elements with no f-part) into B.
AlgebraElement phi(const AlgebraElement& x);

/// Substitutes generator images into every defining relation of each map's
/// domain (torus commutation, the mixed commutation rule, both quantum Serre
/// families) and checks that the images vanish: the four coproducts as
/// homomorphisms, S, S^-1 and phi as anti-homomorphisms.
CheckReport verify_hopf(const Context& ctx);

}  // namespace qb
