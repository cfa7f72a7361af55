#include "qboson/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qboson/error.hpp"
#include "qboson/module.hpp"
#include "qboson/parse.hpp"
#include "qboson/render.hpp"

namespace qb {

namespace {

RootWeight parse_weight_arg(const Context& ctx, const std::string& s) {
  RootWeight w = RootWeight::zero(ctx.datum.rank);
  std::stringstream ss(s);
  std::string tok;
  int k = 0;
  while (std::getline(ss, tok, ',')) {
    if (k >= ctx.datum.rank) fail(Err::USAGE, "too many weight coordinates");
    w.coords[static_cast<size_t>(k++)] = std::stoi(tok);
  }
  if (k != ctx.datum.rank) fail(Err::USAGE, "expected " + std::to_string(ctx.datum.rank) +
                                                " weight coordinates");
  return w;
}

std::vector<int> parse_pairing_arg(const Context& ctx, const std::string& s) {
  RootWeight w = parse_weight_arg(ctx, s);
  return w.coords;
}

nlohmann::json report_json(const CheckReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}, {"millis", c.millis}});
  return {{"checks", checks}, {"pass", r.pass()}};
}

void print_report(std::ostream& out, const CheckReport& r) {
  for (const auto& c : r.checks)
    out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " (" << c.detail << ", " << c.millis
        << " ms)\n";
  out << (r.pass() ? "all checks passed\n" : "CHECKS FAILED\n");
}

nlohmann::json element_json(const AlgebraElement& x) {
  const long D = x.ctx()->datum.exp_denom;
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [w, c] : x.terms()) {
    nlohmann::json t;
    t["f_word"] = nlohmann::json::array();
    for (uint8_t i : w.f_word) t["f_word"].push_back(i + 1);
    t["torus"] = w.torus;
    t["e_word"] = nlohmann::json::array();
    for (uint8_t i : w.e_word) t["e_word"].push_back(i + 1);
    t["coeff"] = render_scalar(c, D);
    terms.push_back(t);
  }
  return {{"flavor", flavor_name(x.flavor())}, {"terms", terms}};
}

nlohmann::json wrap_json(const Context& ctx, nlohmann::json result) {
  return {{"schema_version", 1}, {"datum", ctx.datum.name}, {"result", std::move(result)}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::USAGE, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int cli_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact engine for q-boson algebras, their Drinfeld pairing and extremal projector"};
  app.require_subcommand(1);

  std::string preset = "A1", cartan_file;
  int height_limit = 6;
  bool json_out = false;
  if (const char* env = std::getenv("QPROJ_HEIGHT_LIMIT")) height_limit = std::atoi(env);
  app.add_option("--preset", preset, "Cartan preset: A1, A2, B2, G2, A1aff");
  app.add_option("--cartan", cartan_file, "Cartan datum config file (JSON)");
  app.add_option("--height-limit", height_limit, "height guard for all computations");
  app.add_flag("--json", json_out, "machine-readable output");

  auto* c_cartan = app.add_subcommand("cartan", "validate and print the Cartan datum");

  auto* c_nf = app.add_subcommand("nf", "normal form of an expression");
  std::string nf_expr, nf_flavor;
  c_nf->add_option("expr", nf_expr, "expression")->required();
  c_nf->add_option("--flavor", nf_flavor, "U, B or Bbar (default: inferred)");

  auto* c_pair = app.add_subcommand("pair", "Drinfeld-Killing form of two elements");
  std::string pair_x, pair_y;
  c_pair->add_option("--x", pair_x, "element of U>= (e/K letters)")->required();
  c_pair->add_option("--y", pair_y, "element of U<= (f/K letters)")->required();

  auto* c_gram = app.add_subcommand("gram", "Gram matrix of the pairing at a weight");
  std::string gram_weight;
  c_gram->add_option("--weight", gram_weight, "root coordinates, e.g. 1,1")->required();

  auto* c_dual = app.add_subcommand("dual-basis", "dual basis of the minus side at a weight");
  std::string dual_weight;
  c_dual->add_option("--weight", dual_weight, "root coordinates")->required();

  auto* c_gamma = app.add_subcommand("gamma", "truncated extremal projector");
  int gamma_cutoff = 2;
  bool gamma_verify = false;
  c_gamma->add_option("--cutoff", gamma_cutoff, "series cutoff")->required();
  c_gamma->add_flag("--verify", gamma_verify, "also run the projector contracts");

  auto* c_verify = app.add_subcommand("verify", "run verification suites");
  std::string verify_target;
  int verify_cutoff = 3;
  c_verify->add_option("target", verify_target, "gamma | c | hopf | all")->required();
  c_verify->add_option("--cutoff", verify_cutoff, "series cutoff");

  auto* c_module = app.add_subcommand("module", "category O operations");
  c_module->require_subcommand(1);
  auto* m_build = c_module->add_subcommand("build", "build H(lambda) truncated at a height");
  std::string mb_weight, mb_out;
  int mb_cutoff = 4;
  m_build->add_option("--weight", mb_weight, "lambda as coroot pairings, e.g. 2 or 1,0")->required();
  m_build->add_option("--cutoff", mb_cutoff, "truncation height");
  m_build->add_option("--out", mb_out, "write module JSON to a file (default stdout)");
  auto* m_dec = c_module->add_subcommand("decompose", "simple multiplicities of a module");
  std::string md_input;
  m_dec->add_option("--input", md_input, "module JSON file")->required();
  auto* m_ver = c_module->add_subcommand("verify", "kernel/f-image decomposition checks");
  std::string mv_input;
  m_ver->add_option("--input", mv_input, "module JSON file")->required();
  auto* m_kern = c_module->add_subcommand("kernel", "joint e''-kernel of a module");
  std::string mk_input;
  m_kern->add_option("--input", mk_input, "module JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    CartanDatum dat = cartan_file.empty() ? cartan_preset(preset)
                                          : cartan_from_json(read_file(cartan_file));
    Context ctx(std::move(dat), height_limit);
    const long D = ctx.datum.exp_denom;

    if (*c_cartan) {
      if (json_out) {
        out << wrap_json(ctx, nlohmann::json::parse(cartan_to_json(ctx.datum))).dump(2) << "\n";
      } else {
        out << "name: " << ctx.datum.name << "\nrank: " << ctx.datum.rank << "\ncartan matrix:\n";
        for (const auto& row : ctx.datum.a) {
          out << " ";
          for (int v : row) out << " " << v;
          out << "\n";
        }
        out << "symmetrizers:";
        for (int v : ctx.datum.d) out << " " << v;
        out << "\nexponent denominator D: " << D << "\n";
      }
      return 0;
    }

    if (*c_nf) {
      std::optional<Flavor> fl;
      if (!nf_flavor.empty()) {
        if (nf_flavor == "U") fl = Flavor::U;
        else if (nf_flavor == "B") fl = Flavor::B;
        else if (nf_flavor == "Bbar") fl = Flavor::Bbar;
        else fail(Err::USAGE, "unknown flavor " + nf_flavor);
      }
      AlgebraElement x = parse_expression(ctx, nf_expr, fl);
      if (json_out)
        out << wrap_json(ctx, element_json(x)).dump(2) << "\n";
      else
        out << render_element(x) << "\n";
      return 0;
    }

    if (*c_pair) {
      AlgebraElement x = parse_expression(ctx, pair_x, Flavor::U);
      AlgebraElement y = parse_expression(ctx, pair_y, Flavor::U);
      Scalar v = pair(x, y);
      if (json_out)
        out << wrap_json(ctx, {{"value", render_scalar(v, D)}}).dump(2) << "\n";
      else
        out << render_scalar(v, D) << "\n";
      return 0;
    }

    if (*c_gram) {
      auto gd = gram(ctx, parse_weight_arg(ctx, gram_weight));
      if (json_out) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : gd->gram) {
          nlohmann::json r = nlohmann::json::array();
          for (const auto& s : row) r.push_back(render_scalar(s, D));
          rows.push_back(r);
        }
        out << wrap_json(ctx, {{"weight", gd->weight.coords}, {"matrix", rows}}).dump(2) << "\n";
      } else {
        out << render_matrix(gd->gram, D) << "\n";
      }
      return 0;
    }

    if (*c_dual) {
      RootWeight beta = parse_weight_arg(ctx, dual_weight);
      auto duals = dual_basis(ctx, beta);
      auto gd = gram(ctx, beta);
      if (json_out) {
        nlohmann::json arr = nlohmann::json::array();
        for (size_t r = 0; r < duals.size(); ++r) arr.push_back(element_json(duals[r]));
        out << wrap_json(ctx, {{"weight", beta.coords}, {"duals", arr}}).dump(2) << "\n";
      } else {
        for (size_t r = 0; r < duals.size(); ++r) {
          Scalar dummy(1);
          NormalWord xw;
          xw.e_word = gd->basis[r];
          xw.torus.assign(static_cast<size_t>(ctx.datum.rank), 0);
          out << render_word(ctx.datum, Flavor::U, xw, RenderStyle::Plain, &dummy)
              << "  ->  " << render_element(duals[r]) << "\n";
        }
      }
      return 0;
    }

    if (*c_gamma) {
      SeriesElement g = build_gamma(ctx, gamma_cutoff);
      CheckReport rep;
      if (gamma_verify) rep = verify_gamma(ctx, gamma_cutoff);
      if (json_out) {
        nlohmann::json res = element_json(g.elem);
        res["cutoff"] = g.cutoff;
        if (gamma_verify) res["verification"] = report_json(rep);
        out << wrap_json(ctx, res).dump(2) << "\n";
      } else {
        out << render_element(g.elem, RenderStyle::DividedF) << "\n";
        if (gamma_verify) print_report(out, rep);
      }
      return gamma_verify && !rep.pass() ? 1 : 0;
    }

    if (*c_verify) {
      CheckReport rep;
      if (verify_target == "gamma") {
        rep = verify_gamma(ctx, verify_cutoff);
      } else if (verify_target == "c") {
        rep = verify_C_identities(ctx, verify_cutoff);
      } else if (verify_target == "hopf") {
        rep = verify_hopf(ctx);
      } else if (verify_target == "all") {
        rep = verify_hopf(ctx);
        CheckReport r2 = verify_C_identities(ctx, verify_cutoff);
        CheckReport r3 = verify_gamma(ctx, verify_cutoff);
        for (auto& c : r2.checks) rep.add(c);
        for (auto& c : r3.checks) rep.add(c);
      } else {
        fail(Err::USAGE, "unknown verify target " + verify_target);
      }
      if (json_out)
        out << wrap_json(ctx, report_json(rep)).dump(2) << "\n";
      else
        print_report(out, rep);
      return rep.pass() ? 0 : 1;
    }

    if (*c_module) {
      if (*m_build) {
        GradedModule m = build_H(ctx, parse_pairing_arg(ctx, mb_weight), mb_cutoff);
        std::string js = module_to_json(m);
        if (!mb_out.empty()) {
          std::ofstream f(mb_out);
          f << js << "\n";
          out << "wrote " << mb_out << "\n";
        } else {
          out << js << "\n";
        }
        return 0;
      }
      if (*m_dec) {
        GradedModule m = module_from_json(ctx, read_file(md_input));
        auto mults = decompose(m);
        if (json_out) {
          nlohmann::json arr = nlohmann::json::array();
          for (const auto& [p, k] : mults) arr.push_back({{"weight", p}, {"multiplicity", k}});
          out << wrap_json(ctx, {{"summands", arr}}).dump(2) << "\n";
        } else {
          for (const auto& [p, k] : mults) {
            out << "H(";
            for (size_t t = 0; t < p.size(); ++t) out << (t ? "," : "") << p[t];
            out << ") x " << k << "\n";
          }
          if (mults.empty()) out << "zero module\n";
        }
        return 0;
      }
      if (*m_ver) {
        GradedModule m = module_from_json(ctx, read_file(mv_input));
        CheckReport rep = verify_direct_sum(m);
        if (json_out)
          out << wrap_json(ctx, report_json(rep)).dump(2) << "\n";
        else
          print_report(out, rep);
        return rep.pass() ? 0 : 1;
      }
      if (*m_kern) {
        GradedModule m = module_from_json(ctx, read_file(mk_input));
        auto kern = kernel_K(m);
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [w, vecs] : kern) {
          nlohmann::json vv = nlohmann::json::array();
          for (const auto& v : vecs) {
            nlohmann::json row = nlohmann::json::array();
            for (const auto& s : v) row.push_back(render_scalar(s, D));
            vv.push_back(row);
          }
          arr.push_back({{"weight", m.weights[w].pairings}, {"vectors", vv}});
        }
        if (json_out) {
          out << wrap_json(ctx, {{"kernel", arr}}).dump(2) << "\n";
        } else {
          for (const auto& e : arr) out << e.dump() << "\n";
        }
        return 0;
      }
    }
  } catch (const EngineError& e) {
    err << e.what() << "\n";
    return e.code() == Err::IDENTITY_VIOLATION ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace qb
