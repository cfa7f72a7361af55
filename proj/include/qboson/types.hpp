#pragma once

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "qboson/cartan.hpp"
#include "qboson/scalar.hpp"

namespace qb {

/// A word over generator indices (0-based).
using Word = std::vector<uint8_t>;
/// Torus exponent c, meaning q^{sum_i c_i h_i}.
using TorusVec = std::vector<int>;

enum class GenKind { E, Edd, F, Fd, Torus };

/// Which algebra an element lives in. The letter kinds are implied:
///   U:    f-part = f_i,  e-part = e_i
///   B:    f-part = f_i,  e-part = e''_i
///   Bbar: f-part = f'_i, e-part = e_i
enum class Flavor { U, B, Bbar };

const char* flavor_name(Flavor f);

/// Triangular normal word: f-part, torus exponent, e-part. Once an element is
/// normalized, both word parts are labels from the weight-space basis.
struct NormalWord {
  Word f_word;
  TorusVec torus;
  Word e_word;

  bool torus_trivial() const {
    for (int c : torus)
      if (c) return false;
    return true;
  }
  bool is_identity() const { return f_word.empty() && e_word.empty() && torus_trivial(); }

  bool operator==(const NormalWord& o) const {
    return f_word == o.f_word && torus == o.torus && e_word == o.e_word;
  }
  // Output/term order: (f-height, lex f-word, torus, e-height, lex e-word).
  bool operator<(const NormalWord& o) const {
    if (f_word.size() != o.f_word.size()) return f_word.size() < o.f_word.size();
    if (f_word != o.f_word) return f_word < o.f_word;
    if (torus != o.torus) return torus < o.torus;
    if (e_word.size() != o.e_word.size()) return e_word.size() < o.e_word.size();
    return e_word < o.e_word;
  }
};

/// One straightened term of a product (e-part of a) x (f-part of b).
struct STerm {
  Scalar coeff;
  Word f;
  TorusVec torus;  // empty means trivial
  Word e;
};

/// Cached basis data for one weight space: all raw words of the weight in
/// ascending lex order, the chosen basis words (lex-earliest coset
/// representatives modulo the Serre ideal), and coordinates of every raw word
/// over the basis.
struct BasisData {
  RootWeight weight;
  std::vector<Word> words;
  std::vector<Word> basis;
  std::map<Word, std::vector<Scalar>> coords;
};

RootWeight word_weight(const CartanDatum& dat, const Word& w);

}  // namespace qb
