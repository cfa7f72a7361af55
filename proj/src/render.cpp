#include "qboson/render.hpp"

#include <numeric>
#include <sstream>

namespace qb {

namespace {

struct LaurentTerm {
  mpq_class coeff;
  long vexp;
};

std::string q_power_str(long vexp, long D) {
  if (vexp == 0) return "";
  if (vexp % D == 0) {
    long k = vexp / D;
    if (k == 1) return "q";
    return "q^" + std::to_string(k);
  }
  long g = std::gcd(std::abs(vexp), D);
  long p = vexp / g, s = D / g;
  return "q^(" + std::to_string(p) + "/" + std::to_string(s) + ")";
}

std::string rational_str(const mpq_class& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

/// Magnitude of one Laurent term, sign returned separately.
std::pair<bool, std::string> term_magnitude(const LaurentTerm& t, long D) {
  bool neg = t.coeff < 0;
  mpq_class mag = neg ? mpq_class(-t.coeff) : t.coeff;
  std::string qs = q_power_str(t.vexp, D);
  if (qs.empty()) return {neg, rational_str(mag)};
  if (mag == 1) return {neg, qs};
  return {neg, rational_str(mag) + qs};
}

std::string join_laurent(const std::vector<LaurentTerm>& terms, long D) {
  std::string out;
  for (size_t k = 0; k < terms.size(); ++k) {
    auto [neg, mag] = term_magnitude(terms[k], D);
    if (k == 0)
      out += neg ? "-" + mag : mag;
    else
      out += (neg ? " - " : " + ") + mag;
  }
  return out.empty() ? "0" : out;
}

std::vector<LaurentTerm> laurent_terms(const Poly& p, long shift, bool ascending) {
  std::vector<LaurentTerm> out;
  for (int k = 0; k <= p.degree(); ++k)
    if (p.coeff(k) != 0) out.push_back({p.coeff(k), k - shift});
  if (!ascending) std::reverse(out.begin(), out.end());
  return out;
}

struct ScalarText {
  std::string text;
  bool single;     // single product (no top-level +/-)
  bool negative;   // sign of a single product
  std::string magnitude;
};

ScalarText render_scalar_ex(const Scalar& s, long D) {
  if (s.is_zero()) return {"0", true, false, "0"};
  const Poly& num = s.num();
  const Poly& den = s.den();
  if (den.is_monomial()) {
    // Laurent value: shift num by the denominator power
    long shift = den.degree();
    auto terms = laurent_terms(num, shift, /*ascending=*/false);
    std::string text = join_laurent(terms, D);
    if (terms.size() == 1) {
      auto [neg, mag] = term_magnitude(terms[0], D);
      return {text, true, neg, mag};
    }
    return {text, false, false, text};
  }
  // genuine fraction: balance exponents, then make the lowest denominator
  // coefficient positive
  long shift = (den.order() + den.degree()) / 2;
  Poly n = num, d = den;
  if (d.coeff(d.order()) < 0) {
    n = -n;
    d = -d;
  }
  auto nt = laurent_terms(n, shift, false);
  auto dt = laurent_terms(d, shift, d.leading() < 0);
  std::string dstr = "(" + join_laurent(dt, D) + ")";
  if (nt.size() == 1) {
    auto [neg, mag] = term_magnitude(nt[0], D);
    std::string text = (neg ? "-" : "") + mag + "/" + dstr;
    return {text, true, neg, mag + "/" + dstr};
  }
  std::string text = "(" + join_laurent(nt, D) + ")/" + dstr;
  return {text, false, false, text};
}

}  // namespace

std::string render_scalar(const Scalar& s, long exp_denom) {
  return render_scalar_ex(s, exp_denom).text;
}

std::string render_word(const CartanDatum& dat, Flavor flavor, const NormalWord& w,
                        RenderStyle style, Scalar* coeff_adjust) {
  const char* f_name = (flavor == Flavor::Bbar) ? "fd" : "f";
  const char* e_name = (flavor == Flavor::B) ? "edd" : "e";
  std::vector<std::string> parts;
  auto runs = [](const Word& word) {
    std::vector<std::pair<int, int>> rs;  // (index, count)
    for (uint8_t c : word) {
      if (!rs.empty() && rs.back().first == c)
        rs.back().second++;
      else
        rs.push_back({c, 1});
    }
    return rs;
  };
  for (auto [i, n] : runs(w.f_word)) {
    std::string base = std::string(f_name) + std::to_string(i + 1);
    if (n == 1) {
      parts.push_back(base);
    } else if (style == RenderStyle::DividedF) {
      if (coeff_adjust) *coeff_adjust *= q_factorial(n, dat.qi_vexp(i));
      parts.push_back(base + "^(" + std::to_string(n) + ")");
    } else {
      parts.push_back(base + "^" + std::to_string(n));
    }
  }
  if (!w.torus_trivial()) {
    std::string t = "K[";
    for (size_t k = 0; k < w.torus.size(); ++k)
      t += (k ? "," : "") + std::to_string(w.torus[k]);
    parts.push_back(t + "]");
  }
  for (auto [i, n] : runs(w.e_word)) {
    std::string base = std::string(e_name) + std::to_string(i + 1);
    parts.push_back(n == 1 ? base : base + "^" + std::to_string(n));
  }
  std::string out;
  for (size_t k = 0; k < parts.size(); ++k) out += (k ? " " : "") + parts[k];
  return out;
}

std::string render_element(const AlgebraElement& x, RenderStyle style) {
  if (x.is_zero()) return "0";
  const long D = x.ctx()->datum.exp_denom;
  std::string out;
  bool first = true;
  for (const auto& [w, c] : x.terms()) {
    Scalar coeff = c;
    std::string word = render_word(x.ctx()->datum, x.flavor(), w, style, &coeff);
    ScalarText st = render_scalar_ex(coeff, D);
    std::string body;
    bool neg = false;
    if (word.empty()) {
      neg = st.single && st.negative;
      body = st.single ? st.magnitude : st.text;
      if (!st.single) body = "(" + body + ")";
    } else if (st.single && st.magnitude == "1") {
      neg = st.negative;
      body = word;
    } else if (st.single) {
      neg = st.negative;
      body = st.magnitude + " " + word;
    } else {
      body = "(" + st.text + ") " + word;
    }
    if (first) {
      out += neg ? "-" + body : body;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + body;
    }
  }
  return out;
}

std::string render_tensor(const TensorElement& t, RenderStyle style) {
  if (t.is_zero()) return "0";
  const long D = t.ctx()->datum.exp_denom;
  std::string out;
  bool first = true;
  for (const auto& [key, c] : t.terms()) {
    Scalar coeff = c;
    std::string w1 = render_word(t.ctx()->datum, t.leg1(), key.first, style, &coeff);
    std::string w2 = render_word(t.ctx()->datum, t.leg2(), key.second, style, &coeff);
    if (w1.empty()) w1 = "1";
    if (w2.empty()) w2 = "1";
    ScalarText st = render_scalar_ex(coeff, D);
    std::string body;
    bool neg = false;
    if (st.single && st.magnitude == "1") {
      neg = st.negative;
      body = w1 + " (x) " + w2;
    } else if (st.single) {
      neg = st.negative;
      body = st.magnitude + " " + w1 + " (x) " + w2;
    } else {
      body = "(" + st.text + ") " + w1 + " (x) " + w2;
    }
    if (first) {
      out += neg ? "-" + body : body;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + body;
    }
  }
  return out;
}

std::string render_matrix(const Matrix& m, long exp_denom) {
  std::string out;
  for (size_t r = 0; r < m.size(); ++r) {
    out += "[ ";
    for (size_t c = 0; c < m[r].size(); ++c)
      out += (c ? ", " : "") + render_scalar(m[r][c], exp_denom);
    out += " ]";
    if (r + 1 < m.size()) out += "\n";
  }
  if (m.empty()) out = "[ ]";
  return out;
}

}  // namespace qb
