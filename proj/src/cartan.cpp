#include "qboson/cartan.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qboson/error.hpp"

namespace qb {

int RootWeight::height() const {
  int h = 0;
  for (int m : coords) h += m;
  return h;
}

bool RootWeight::in_qplus() const {
  return std::all_of(coords.begin(), coords.end(), [](int m) { return m >= 0; });
}

bool RootWeight::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](int m) { return m == 0; });
}

RootWeight RootWeight::operator+(const RootWeight& o) const {
  RootWeight r = *this;
  for (size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
  return r;
}

RootWeight RootWeight::operator-(const RootWeight& o) const {
  RootWeight r = *this;
  for (size_t i = 0; i < coords.size(); ++i) r.coords[i] -= o.coords[i];
  return r;
}

bool RootWeight::operator<(const RootWeight& o) const {
  int h1 = height(), h2 = o.height();
  if (h1 != h2) return h1 < h2;
  return coords < o.coords;
}

RootWeight RootWeight::simple(int rank, int i) {
  RootWeight r = zero(rank);
  r.coords[static_cast<size_t>(i)] = 1;
  return r;
}

std::string RootWeight::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
  os << ")";
  return os.str();
}

CartanDatum validate_cartan(CartanDatum dat) {
  const int n = dat.rank;
  auto ij = [](int i, int j) {
    std::ostringstream os;
    os << "(" << i + 1 << "," << j + 1 << ")";
    return os.str();
  };
  if (n <= 0) fail(Err::BAD_CARTAN, "rank must be positive");
  if (static_cast<int>(dat.a.size()) != n) fail(Err::BAD_CARTAN, "cartan_matrix has wrong shape");
  for (const auto& row : dat.a)
    if (static_cast<int>(row.size()) != n) fail(Err::BAD_CARTAN, "cartan_matrix has wrong shape");
  if (static_cast<int>(dat.d.size()) != n) fail(Err::BAD_CARTAN, "symmetrizers have wrong length");

  for (int i = 0; i < n; ++i) {
    if (dat.a[i][i] != 2) fail(Err::BAD_CARTAN, "a_ii != 2 at " + ij(i, i));
    if (dat.d[i] < 1) fail(Err::BAD_CARTAN, "symmetrizer d_" + std::to_string(i + 1) + " must be >= 1");
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (dat.a[i][j] > 0) fail(Err::BAD_CARTAN, "a_ij > 0 off-diagonal at " + ij(i, j));
      if ((dat.a[i][j] == 0) != (dat.a[j][i] == 0))
        fail(Err::BAD_CARTAN, "a_ij = 0 but a_ji != 0 at " + ij(i, j));
      if (static_cast<long>(dat.d[i]) * dat.a[i][j] != static_cast<long>(dat.d[j]) * dat.a[j][i])
        fail(Err::NON_SYMMETRIZABLE, "d_i a_ij != d_j a_ji at " + ij(i, j));
    }
  }

  if (dat.coroot_form.empty()) {
    dat.coroot_form.assign(n, std::vector<mpq_class>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        mpq_class v(dat.a[i][j], dat.d[j]);
        v.canonicalize();
        dat.coroot_form[i][j] = v;
      }
  } else {
    if (static_cast<int>(dat.coroot_form.size()) != n)
      fail(Err::BAD_CARTAN, "coroot_form has wrong shape");
    for (const auto& row : dat.coroot_form)
      if (static_cast<int>(row.size()) != n) fail(Err::BAD_CARTAN, "coroot_form has wrong shape");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (dat.coroot_form[i][j] != dat.coroot_form[j][i])
          fail(Err::BAD_CARTAN, "coroot_form not symmetric at " + ij(i, j));
  }

  mpz_class lcm_den(1);
  for (const auto& row : dat.coroot_form)
    for (const auto& x : row) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den().get_mpz_t());
  if (!lcm_den.fits_slong_p()) fail(Err::BAD_CARTAN, "coroot_form denominators too large");
  dat.exp_denom = lcm_den.get_si();
  return dat;
}

CartanDatum cartan_preset(const std::string& name) {
  CartanDatum dat;
  dat.name = name;
  if (name == "A1") {
    dat.rank = 1;
    dat.a = {{2}};
    dat.d = {1};
  } else if (name == "A2") {
    dat.rank = 2;
    dat.a = {{2, -1}, {-1, 2}};
    dat.d = {1, 1};
  } else if (name == "B2") {
    dat.rank = 2;
    dat.a = {{2, -1}, {-2, 2}};
    dat.d = {2, 1};
  } else if (name == "G2") {
    dat.rank = 2;
    dat.a = {{2, -3}, {-1, 2}};
    dat.d = {1, 3};
  } else if (name == "A1aff" || name == "A1~") {
    dat.name = "A1aff";
    dat.rank = 2;
    dat.a = {{2, -2}, {-2, 2}};
    dat.d = {1, 1};
  } else {
    fail(Err::USAGE, "unknown preset '" + name + "'");
  }
  return validate_cartan(std::move(dat));
}

long root_form(const CartanDatum& dat, const RootWeight& beta, const RootWeight& gamma) {
  long s = 0;
  for (int i = 0; i < dat.rank; ++i)
    for (int j = 0; j < dat.rank; ++j)
      s += static_cast<long>(beta.coords[static_cast<size_t>(i)]) * dat.d[static_cast<size_t>(i)] *
           dat.a[static_cast<size_t>(i)][static_cast<size_t>(j)] * gamma.coords[static_cast<size_t>(j)];
  return s;
}

long coroot_pairing(const CartanDatum& dat, int i, const RootWeight& beta) {
  long s = 0;
  for (int j = 0; j < dat.rank; ++j)
    s += static_cast<long>(dat.a[static_cast<size_t>(i)][static_cast<size_t>(j)]) *
         beta.coords[static_cast<size_t>(j)];
  return s;
}

long coroot_pairing_vec(const CartanDatum& dat, const std::vector<int>& c, const RootWeight& beta) {
  long s = 0;
  for (int i = 0; i < dat.rank; ++i)
    if (c[static_cast<size_t>(i)] != 0) s += c[static_cast<size_t>(i)] * coroot_pairing(dat, i, beta);
  return s;
}

mpq_class coroot_form_pair(const CartanDatum& dat, const std::vector<int>& c1,
                           const std::vector<int>& c2) {
  mpq_class s(0);
  for (int i = 0; i < dat.rank; ++i) {
    if (c1[static_cast<size_t>(i)] == 0) continue;
    for (int j = 0; j < dat.rank; ++j) {
      if (c2[static_cast<size_t>(j)] == 0) continue;
      s += mpq_class(c1[static_cast<size_t>(i)]) * c2[static_cast<size_t>(j)] *
           dat.coroot_form[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
  }
  return s;
}

namespace {
void enumerate_rec(int rank, int pos, int remaining, RootWeight& cur, int height,
                   std::vector<RootWeight>& out) {
  if (pos == rank) {
    if (height == 0) out.push_back(cur);
    return;
  }
  for (int m = 0; m <= remaining; ++m) {
    cur.coords[static_cast<size_t>(pos)] = m;
    enumerate_rec(rank, pos + 1, remaining - m, cur, height - m, out);
  }
  cur.coords[static_cast<size_t>(pos)] = 0;
}
}  // namespace

std::vector<RootWeight> enumerate_qplus(const CartanDatum& dat, int max_height) {
  std::vector<RootWeight> out;
  RootWeight cur = RootWeight::zero(dat.rank);
  for (int h = 0; h <= max_height; ++h) enumerate_rec(dat.rank, 0, h, cur, h, out);
  // within a height, earlier simple roots come first: (1,0) before (0,1)
  std::sort(out.begin(), out.end(), [](const RootWeight& x, const RootWeight& y) {
    int hx = x.height(), hy = y.height();
    if (hx != hy) return hx < hy;
    return x.coords > y.coords;
  });
  return out;
}

}  // namespace qb
