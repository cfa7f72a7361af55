#include "qboson/parse.hpp"

#include <cctype>

#include <json.hpp>

#include "qboson/error.hpp"

namespace qb {

namespace {

struct Cursor {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool accept(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) err(std::string("expected '") + c + "'");
  }
  [[noreturn]] void err(const std::string& what) {
    fail(Err::PARSE_ERROR, what + " at position " + std::to_string(pos));
  }
  long integer() {
    skip_ws();
    bool neg = accept('-');
    skip_ws();
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) err("expected integer");
    long v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + (s[pos] - '0');
      ++pos;
    }
    return neg ? -v : v;
  }
};

// --- scalar grammar ----------------------------------------------------------

Scalar s_expr(Cursor& c, long D);

Scalar q_power_from(Cursor& c, long D) {
  // after consuming 'q': optional ^exp with exp = int or (p/s)
  if (!c.accept('^')) return Scalar::v_power(D);
  if (c.accept('(')) {
    long p = c.integer();
    long s = 1;
    if (c.accept('/')) s = c.integer();
    c.expect(')');
    if (s == 0) c.err("zero exponent denominator");
    if ((p * D) % s != 0) c.err("exponent not a multiple of 1/D");
    return Scalar::v_power(p * D / s);
  }
  long k = c.integer();
  return Scalar::v_power(k * D);
}

Scalar s_atom(Cursor& c, long D) {
  c.skip_ws();
  if (c.accept('(')) {
    Scalar v = s_expr(c, D);
    c.expect(')');
    return v;
  }
  char ch = c.peek();
  if (ch == 'q') {
    ++c.pos;
    return q_power_from(c, D);
  }
  if (std::isdigit(static_cast<unsigned char>(ch))) {
    long num = c.integer();
    long den = 1;
    // '/' binds as part of a rational literal only when followed by a digit
    size_t save = c.pos;
    if (c.accept('/')) {
      c.skip_ws();
      if (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) {
        den = c.integer();
        if (den == 0) c.err("zero denominator");
      } else {
        c.pos = save;
      }
    }
    Scalar v{mpq_class(num, den)};
    // juxtaposed q-power: "3q^2"
    c.skip_ws();
    if (c.pos < c.s.size() && c.s[c.pos] == 'q') {
      ++c.pos;
      v *= q_power_from(c, D);
    }
    return v;
  }
  c.err("expected scalar atom");
}

Scalar s_factor(Cursor& c, long D) {
  if (c.accept('-')) return -s_factor(c, D);
  return s_atom(c, D);
}

Scalar s_term(Cursor& c, long D) {
  Scalar v = s_factor(c, D);
  for (;;) {
    if (c.accept('*')) {
      v *= s_factor(c, D);
    } else if (c.peek() == '/') {
      // only treat as division when not part of a rational literal (those are
      // consumed inside s_atom)
      ++c.pos;
      Scalar rhs = s_factor(c, D);
      if (rhs.is_zero()) fail(Err::DIVISION_BY_ZERO, "scalar division by zero");
      v /= rhs;
    } else {
      break;
    }
  }
  return v;
}

Scalar s_expr(Cursor& c, long D) {
  Scalar v = s_term(c, D);
  for (;;) {
    if (c.accept('+'))
      v += s_term(c, D);
    else if (c.accept('-'))
      v -= s_term(c, D);
    else
      break;
  }
  return v;
}

// --- expression grammar --------------------------------------------------------

struct GenTok {
  GenKind kind;
  int index = 0;      // 0-based
  TorusVec torus;     // for K[...]
};

bool try_gen(Cursor& c, const Context& ctx, GenTok& out) {
  c.skip_ws();
  size_t save = c.pos;
  const std::string& s = c.s;
  auto starts = [&](const char* p) {
    size_t n = std::char_traits<char>::length(p);
    return s.compare(c.pos, n, p) == 0;
  };
  if (starts("edd")) {
    c.pos += 3;
    out = {GenKind::Edd, static_cast<int>(c.integer() - 1), {}};
  } else if (starts("fd")) {
    c.pos += 2;
    out = {GenKind::Fd, static_cast<int>(c.integer() - 1), {}};
  } else if (starts("e") && c.pos + 1 < s.size() &&
             std::isdigit(static_cast<unsigned char>(s[c.pos + 1]))) {
    c.pos += 1;
    out = {GenKind::E, static_cast<int>(c.integer() - 1), {}};
  } else if (starts("f") && c.pos + 1 < s.size() &&
             std::isdigit(static_cast<unsigned char>(s[c.pos + 1]))) {
    c.pos += 1;
    out = {GenKind::F, static_cast<int>(c.integer() - 1), {}};
  } else if (starts("K")) {
    c.pos += 1;
    c.expect('[');
    TorusVec t;
    t.push_back(static_cast<int>(c.integer()));
    while (c.accept(',')) t.push_back(static_cast<int>(c.integer()));
    c.expect(']');
    if (static_cast<int>(t.size()) != ctx.datum.rank)
      fail(Err::PARSE_ERROR, "K[..] needs " + std::to_string(ctx.datum.rank) + " entries");
    out = {GenKind::Torus, 0, std::move(t)};
  } else {
    c.pos = save;
    return false;
  }
  if (out.kind != GenKind::Torus) check_index(ctx, out.index);
  return true;
}

}  // namespace

Scalar parse_scalar(const std::string& text, long exp_denom) {
  Cursor c{text};
  Scalar v = s_expr(c, exp_denom);
  if (!c.eof()) c.err("trailing characters");
  return v;
}

AlgebraElement parse_expression(const Context& ctx, const std::string& text,
                                std::optional<Flavor> flavor) {
  // pre-scan the alphabet to settle the flavor
  bool has_edd = text.find("edd") != std::string::npos;
  bool has_fd = text.find("fd") != std::string::npos;
  Flavor fl = Flavor::U;
  if (has_edd && has_fd) fail(Err::FLAVOR_MISMATCH, "expression mixes edd and fd letters");
  if (has_edd) fl = Flavor::B;
  if (has_fd) fl = Flavor::Bbar;
  if (flavor) {
    if ((has_edd && *flavor != Flavor::B) || (has_fd && *flavor != Flavor::Bbar))
      fail(Err::FLAVOR_MISMATCH, "expression letters conflict with the requested flavor");
    fl = *flavor;
  }

  Cursor c{text};
  const long D = ctx.datum.exp_denom;
  AlgebraElement sum = make_zero(ctx, fl);
  bool negate = c.accept('-');
  for (;;) {
    // term := scalar? factor+
    AlgebraElement term = make_one(ctx, fl);
    bool any = false;
    c.skip_ws();
    char ch = c.peek();
    bool scalar_ahead =
        std::isdigit(static_cast<unsigned char>(ch)) || ch == '(' ||
        (ch == 'q' && (c.pos + 1 >= text.size() ||
                       !std::isdigit(static_cast<unsigned char>(text[c.pos + 1]))));
    if (scalar_ahead) {
      Scalar s = s_term(c, D);
      term = term * s;
      c.accept('*');
      any = true;
    }
    GenTok g;
    while (try_gen(c, ctx, g)) {
      any = true;
      AlgebraElement base = (g.kind == GenKind::Torus) ? make_torus(ctx, fl, g.torus)
                                                       : make_letter(ctx, fl, g.kind, g.index);
      long power = 1;
      bool divided = false;
      if (c.accept('^')) {
        if (c.accept('(')) {
          power = c.integer();
          c.expect(')');
          divided = true;
        } else {
          power = c.integer();
        }
        if (power < 0) c.err("negative letter powers are not supported");
      }
      for (long k = 0; k < power; ++k) term = multiply(term, base);
      if (divided && g.kind != GenKind::Torus)
        term = term * q_factorial(power, ctx.datum.qi_vexp(g.index)).inverse();
    }
    if (!any) c.err("expected a term");
    sum = negate ? sum - term : sum + term;
    if (c.accept('+')) {
      negate = false;
    } else if (c.accept('-')) {
      negate = true;
    } else {
      break;
    }
  }
  if (!c.eof()) c.err("trailing characters");
  return sum;
}

CartanDatum cartan_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(Err::PARSE_ERROR, std::string("bad JSON: ") + e.what());
  }
  CartanDatum dat;
  dat.name = j.value("name", "custom");
  if (!j.contains("cartan_matrix")) fail(Err::PARSE_ERROR, "missing cartan_matrix");
  for (const auto& row : j["cartan_matrix"]) {
    std::vector<int> r;
    for (const auto& x : row) r.push_back(x.get<int>());
    dat.a.push_back(std::move(r));
  }
  dat.rank = static_cast<int>(dat.a.size());
  if (!j.contains("symmetrizers")) fail(Err::PARSE_ERROR, "missing symmetrizers");
  for (const auto& x : j["symmetrizers"]) dat.d.push_back(x.get<int>());
  if (j.contains("coroot_form")) {
    for (const auto& row : j["coroot_form"]) {
      std::vector<mpq_class> r;
      for (const auto& x : row) {
        if (x.is_string()) {
          mpq_class v(x.get<std::string>());
          v.canonicalize();
          r.push_back(v);
        } else {
          r.push_back(mpq_class(x.get<long>()));
        }
      }
      dat.coroot_form.push_back(std::move(r));
    }
  }
  return validate_cartan(std::move(dat));
}

std::string cartan_to_json(const CartanDatum& dat) {
  nlohmann::json j;
  j["name"] = dat.name;
  j["cartan_matrix"] = dat.a;
  j["symmetrizers"] = dat.d;
  nlohmann::json form = nlohmann::json::array();
  for (const auto& row : dat.coroot_form) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& x : row) r.push_back(x.get_str());
    form.push_back(r);
  }
  j["coroot_form"] = form;
  j["exponent_denominator"] = dat.exp_denom;
  return j.dump(2);
}

}  // namespace qb
