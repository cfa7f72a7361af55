#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace qb {

/// Element of the root lattice written over the simple roots: beta = sum m_i alpha_i.
struct RootWeight {
  std::vector<int> coords;

  int height() const;
  bool in_qplus() const;  // all coords >= 0
  bool is_zero() const;
  RootWeight operator+(const RootWeight& o) const;
  RootWeight operator-(const RootWeight& o) const;
  bool operator==(const RootWeight& o) const { return coords == o.coords; }
  bool operator<(const RootWeight& o) const;  // (height, lex) order

  static RootWeight zero(int rank) { return RootWeight{std::vector<int>(rank, 0)}; }
  static RootWeight simple(int rank, int i);
  std::string str() const;
};

/// Validated symmetrizable Kac-Moody Cartan datum: generalized Cartan matrix,
/// symmetrizers d_i, and the bilinear form on the coroot span. exp_denom is
/// the global D with v = q^(1/D), the lcm of the coroot-form denominators.
struct CartanDatum {
  std::string name;
  int rank = 0;
  std::vector<std::vector<int>> a;             // a[i][j] = <h_i, alpha_j>
  std::vector<int> d;                          // (alpha_i,alpha_i)/2, positive
  std::vector<std::vector<mpq_class>> coroot_form;  // (h_i|h_j)
  long exp_denom = 1;

  long qi_vexp(int i) const { return static_cast<long>(d[static_cast<size_t>(i)]) * exp_denom; }
};

/// Checks all datum invariants; fills in the default coroot form a_ij/d_j and
/// exp_denom. Throws NON_SYMMETRIZABLE / BAD_CARTAN naming the offending entry.
CartanDatum validate_cartan(CartanDatum datum);

/// Named presets: A1, A2, B2, G2, A1aff (alias "A1~").
CartanDatum cartan_preset(const std::string& name);

/// (beta,gamma) = sum m_i d_i a_ij n_j; integral and symmetric.
long root_form(const CartanDatum& dat, const RootWeight& beta, const RootWeight& gamma);
/// <h_i, beta> = sum_j a_ij n_j.
long coroot_pairing(const CartanDatum& dat, int i, const RootWeight& beta);
/// <sum_i c_i h_i, beta> for a torus exponent vector c.
long coroot_pairing_vec(const CartanDatum& dat, const std::vector<int>& c, const RootWeight& beta);
/// (h|h') for torus exponent vectors; denominator divides exp_denom.
mpq_class coroot_form_pair(const CartanDatum& dat, const std::vector<int>& c1,
                           const std::vector<int>& c2);

/// All beta in Q_+ with height <= max_height, sorted by (height, lex coords).
std::vector<RootWeight> enumerate_qplus(const CartanDatum& dat, int max_height);

}  // namespace qb
