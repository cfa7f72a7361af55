#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qboson/context.hpp"
#include "qboson/types.hpp"

namespace qb {

/// Unreduced combination of raw same-kind words (used for Serre elements and
/// as input to reduce_to_basis).
using RawTerm = std::pair<Word, Scalar>;
using RawCombo = std::vector<RawTerm>;

/// Element of U, B or Bbar in triangular normal form: a finite map from
/// normal words to scalars, with both word parts reduced to weight-space
/// basis labels. Immutable value semantics; all producers canonicalize.
class AlgebraElement {
 public:
  AlgebraElement() : ctx_(nullptr), flavor_(Flavor::U) {}
  AlgebraElement(const Context* ctx, Flavor flavor) : ctx_(ctx), flavor_(flavor) {}

  const Context* ctx() const { return ctx_; }
  Flavor flavor() const { return flavor_; }
  const std::map<NormalWord, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool operator==(const AlgebraElement& o) const {
    return flavor_ == o.flavor_ && terms_ == o.terms_;
  }
  bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(const Scalar& s) const;
  AlgebraElement operator-() const { return *this * Scalar(-1); }

  /// Adds c * w without normalization checks; internal producers only.
  void add_term(const NormalWord& w, const Scalar& c);

  /// Weight of the element: sum over letters (e positive, f negative); fails
  /// with NOT_HOMOGENEOUS if the terms disagree.
  RootWeight weight() const;
  bool is_weight_homogeneous() const;

  int max_e_height() const;
  int max_f_height() const;

  /// Keep only terms with e-part height <= m (the truncation projection).
  AlgebraElement project_e_height(int m) const;
  /// Keep only terms of the given (e-weight minus f-weight) grading value.
  AlgebraElement component_of_weight(const RootWeight& w) const;

  /// Relabels an element between flavors; valid only when every letter kind
  /// exists in the target flavor (f/torus words for U <-> B, e-words U <-> Bbar).
  AlgebraElement with_flavor(Flavor target) const;

 private:
  const Context* ctx_;
  Flavor flavor_;
  std::map<NormalWord, Scalar> terms_;
};

// --- constructors -----------------------------------------------------------

AlgebraElement make_zero(const Context& ctx, Flavor f);
AlgebraElement make_one(const Context& ctx, Flavor f);
AlgebraElement make_scalar(const Context& ctx, Flavor f, const Scalar& s);
/// Single generator letter; validates the kind against the flavor and the index
/// against the rank.
AlgebraElement make_letter(const Context& ctx, Flavor f, GenKind kind, int index);
/// q^{sum c_i h_i}.
AlgebraElement make_torus(const Context& ctx, Flavor f, const TorusVec& c);
/// t_i^power = q^{power * d_i h_i}.
AlgebraElement make_ti(const Context& ctx, Flavor f, int i, int power = 1);
/// Normalizes a raw f-side or e-side word combination into an element.
AlgebraElement from_raw_f(const Context& ctx, Flavor f, const RawCombo& combo);
AlgebraElement from_raw_e(const Context& ctx, Flavor f, const RawCombo& combo);

// --- operations --------------------------------------------------------------

/// Normal form of the product. When e_height_cap >= 0, result terms with
/// e-part height above the cap are dropped before basis reduction; the caller
/// is responsible for the truncation bookkeeping that makes this exact.
AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b, int e_height_cap = -1);

/// The quantum Serre sum for the pair (i, j) in divided-power form, as raw
/// words with scalar coefficients. The word content and coefficients are the
/// same for every letter kind; `kind` records the intended alphabet.
RawCombo serre_element(const Context& ctx, int i, int j, GenKind kind = GenKind::E);

/// Basis of the weight space at beta (shared by all four half-algebras),
/// built by exact row reduction of the Serre-ideal component against all raw
/// words of the weight. Cached; throws HEIGHT_LIMIT above the context limit.
std::shared_ptr<const BasisData> weight_basis(const Context& ctx, const RootWeight& beta);

/// Coordinates of a raw word combination over weight_basis(beta).
/// All terms must have weight beta (WEIGHT_MIXED otherwise).
std::vector<Scalar> reduce_to_basis(const Context& ctx, const RawCombo& combo,
                                    const RootWeight& beta);

/// Normal form of e''_i^n f_j^(m) in B (divided power on the f side).
AlgebraElement commute_edd_power(const Context& ctx, int i, long n, int j, long m);

/// Straightened form of (e-part word) x (f-part word) for the flavor's
/// commutation rule; terms are (coeff, f-word, torus, e-word). Cached.
std::shared_ptr<const std::vector<STerm>> straighten(const Context& ctx, Flavor flavor,
                                                     const Word& e_word, const Word& f_word);

void check_index(const Context& ctx, int index);

}  // namespace qb
