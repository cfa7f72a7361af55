#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "qboson/cartan.hpp"
#include "qboson/types.hpp"

namespace qb {

/// Shared session state: the validated Cartan datum, the height guard, and the
/// memo tables. All caches are insert-if-absent under a lock; entries are
/// immutable once published, so shared_ptr values may be used across threads.
struct Context {
  explicit Context(CartanDatum dat, int height_limit_ = 6)
      : datum(std::move(dat)), height_limit(height_limit_) {}

  CartanDatum datum;
  int height_limit;

  // weight-space bases, keyed by weight (side-agnostic: all four halves share
  // one Serre presentation)
  mutable std::mutex basis_mu;
  mutable std::map<RootWeight, std::shared_ptr<const BasisData>> basis_cache;

  // straightening memo: (flavor, e-word, f-word) -> terms
  mutable std::mutex straighten_mu;
  mutable std::map<std::tuple<Flavor, Word, Word>, std::shared_ptr<const std::vector<STerm>>>
      straighten_cache;

  // word-level Drinfeld pairing memo: (e-word, f-word) -> value
  mutable std::mutex pair_mu;
  mutable std::map<std::pair<Word, Word>, Scalar> pair_cache;

  // gram data per weight (defined in pairing.hpp, stored type-erased here)
  mutable std::mutex gram_mu;
  mutable std::map<RootWeight, std::shared_ptr<const void>> gram_cache;

  // coproduct-of-word memos used by the pairing recursion and extract_v;
  // values are TensorElements, stored type-erased to avoid a header cycle
  mutable std::mutex delta_mu;
  mutable std::map<std::pair<bool /*e-side*/, Word>, std::shared_ptr<const void>> delta_cache;
};

}  // namespace qb
