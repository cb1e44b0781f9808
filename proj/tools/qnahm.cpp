// qnahm: exact verification of the q-series identity catalog, the Bailey
// pair toolbox, and numeric modular transformation checks.
//
// Exit codes: 0 all requested checks passed; 1 a verification failed;
// 2 unknown id/pair or bad usage; 3 internal bound-certificate failure.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qnahm/bailey_registry.hpp"
#include "qnahm/catalog.hpp"
#include "qnahm/modular.hpp"
#include "qnahm/qsystem.hpp"

using namespace qnahm;
using nlohmann::json;

namespace {

json outcome_json(const VerifyOutcome& o) {
  json j{{"id", o.id},
         {"order", rat_str(o.order)},
         {"status", o.pass ? "pass" : "fail"},
         {"elapsed_ms", o.elapsed_ms}};
  if (o.x_order >= 0) j["x_order"] = o.x_order;
  if (o.discrepancy) {
    j["discrepancy"] = {{"exponent", rat_str(o.discrepancy->q.exponent)},
                        {"lhs", rat_str(o.discrepancy->q.lhs)},
                        {"rhs", rat_str(o.discrepancy->q.rhs)}};
    if (o.x_order >= 0) j["discrepancy"]["x_degree"] = o.discrepancy->xdeg;
  }
  if (!o.error.empty()) j["error"] = o.error;
  return j;
}

void print_outcome_text(const VerifyOutcome& o) {
  std::cout << (o.pass ? "pass" : "FAIL") << "  " << o.id << "  (order "
            << rat_str(o.order);
  if (o.x_order >= 0) std::cout << ", x-order " << o.x_order;
  std::cout << ", " << static_cast<long>(o.elapsed_ms) << " ms)";
  if (o.discrepancy)
    std::cout << "  first discrepancy at q^" << rat_str(o.discrepancy->q.exponent)
              << ": " << rat_str(o.discrepancy->q.lhs) << " vs "
              << rat_str(o.discrepancy->q.rhs);
  if (!o.error.empty()) std::cout << "  error: " << o.error;
  std::cout << "\n";
}

std::map<std::string, Rat> load_config_orders(const std::string& path) {
  std::map<std::string, Rat> out;
  if (path.empty()) return out;
  std::ifstream in(path);
  if (!in) throw qnahm_error("cannot open config file: " + path);
  json j;
  in >> j;
  if (j.contains("orders"))
    for (auto& [k, v] : j["orders"].items())
      out[k] = parse_rat(v.get<std::string>());
  return out;
}

Cplx parse_tau(const std::string& s) {
  // RE+IMi, e.g. "0.25+1i", "2i", "-0.3333+1.5i"
  std::string t;
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty() || t.back() != 'i')
    throw domain_error("tau must look like RE+IMi");
  t.pop_back();
  size_t split = t.npos;
  for (size_t p = 1; p < t.size(); ++p)
    if ((t[p] == '+' || t[p] == '-') && t[p - 1] != 'e' && t[p - 1] != 'E')
      split = p;
  double re = 0, im;
  if (split == t.npos) {
    im = t.empty() ? 1.0 : std::stod(t);
  } else {
    re = std::stod(t.substr(0, split));
    std::string imp = t.substr(split);
    im = (imp == "+" || imp == "-") ? (imp == "-" ? -1.0 : 1.0) : std::stod(imp);
  }
  if (!(im > 0)) throw domain_error("tau must have positive imaginary part");
  return Cplx(re, im);
}

json bailey_report_json(const BaileyReport& rep) {
  json fails = json::array();
  for (const auto& f : rep.failures)
    fails.push_back({{"n", f.n},
                     {"exponent", rat_str(f.exponent)},
                     {"lhs", rat_str(f.lhs)},
                     {"rhs", rat_str(f.rhs)}});
  return json{{"pair", rep.pair},
              {"n_max", rep.n_max},
              {"order", rat_str(rep.order)},
              {"status", rep.ok ? "pass" : "fail"},
              {"failures", fails}};
}

struct ModularCheck {
  std::string equation;
  Cplx tau;
  double residual;
  double tolerance;
};

json modular_json(const ModularCheck& c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g%+gi", c.tau.real(), c.tau.imag());
  return json{{"tau", buf},
              {"equation", c.equation},
              {"residual", c.residual},
              {"tolerance", c.tolerance},
              {"status", c.residual < c.tolerance ? "pass" : "fail"}};
}

std::vector<ModularCheck> modular_suite(double tol) {
  std::vector<ModularCheck> out;
  const Cplx I(0, 1);
  const double pi = 3.14159265358979323846;
  std::vector<Cplx> taus = {Cplx(0, 1), Cplx(0, 2), Cplx(0.25, 1),
                            Cplx(-1.0 / 3, 1.5)};
  for (Cplx tau : taus) {
    out.push_back({"eta(-1/tau) = sqrt(-i tau) eta(tau)", tau,
                   std::abs(eta_num(-1.0 / tau) -
                            std::sqrt(-I * tau) * eta_num(tau)),
                   tol});
    out.push_back({"f(-1/tau) = f(tau)", tau,
                   std::abs(weber_f(-1.0 / tau) - weber_f(tau)), tol});
    out.push_back({"f2(-1/tau) = f1(tau)/sqrt2", tau,
                   std::abs(weber_f2(-1.0 / tau) -
                            weber_f1(tau) / std::sqrt(2.0)),
                   tol});
    out.push_back({"f1(-1/tau) = sqrt2 f2(tau)", tau,
                   std::abs(weber_f1(-1.0 / tau) -
                            std::sqrt(2.0) * weber_f2(tau)),
                   tol});
    out.push_back({"f(tau+1) = e^{-pi i/24} f1(tau)", tau,
                   std::abs(weber_f(tau + 1.0) -
                            std::exp(-I * pi / 24.0) * weber_f1(tau)),
                   tol});
    out.push_back({"f2(tau+1) = e^{pi i/12} f2(tau)", tau,
                   std::abs(weber_f2(tau + 1.0) -
                            std::exp(I * pi / 12.0) * weber_f2(tau)),
                   tol});
  }
  // h/g reflection laws at tau = i for m in {11/2, 11}
  for (double m : {5.5, 11.0}) {
    Cplx tau = I;
    double worst_h = 0, worst_g = 0;
    for (long j = 0; j <= static_cast<long>(2 * m); ++j) {
      Cplx sum = 0;
      for (long k = 0; k <= static_cast<long>(2 * m) - 1; ++k)
        sum += std::exp(I * pi * double(j * k) / m) * h_num(k, m, tau);
      worst_h = std::max(worst_h,
                         std::abs(h_num(j, m, -1.0 / tau) -
                                  std::sqrt(-I * tau) / std::sqrt(2 * m) * sum));
      Cplx sg = 0;
      for (long k = 1; k <= static_cast<long>(4 * m) - 1; k += 2)
        sg += std::exp(I * pi * double(j) * double(k) / (2 * m)) *
              h_num(k / 2.0, m, tau);
      worst_g = std::max(worst_g,
                         std::abs(g_num(j, m, -1.0 / tau) -
                                  std::sqrt(-I * tau) / std::sqrt(2 * m) * sg));
    }
    out.push_back({"h reflection, m=" + std::to_string(m), tau, worst_h, tol});
    out.push_back({"g reflection, m=" + std::to_string(m), tau, worst_g, tol});
  }
  for (Cplx tau : taus) {
    SMatrixReport rep = check_S(tau);
    out.push_back({"V(-1/2tau) = S U(tau)", tau, rep.residual_v, 1e-7});
    out.push_back({"U(-1/tau) = 2S V(tau/2)", tau, rep.residual_u, 1e-7});
    out.push_back({"S^2 = I/2", tau, rep.s_square, 1e-12});
  }
  SMatrixReport at_i = check_S(Cplx(0, 1));
  out.push_back({"U dual-path agreement", Cplx(0, 1), at_i.dual_path_u, 1e-8});
  out.push_back({"V dual-path agreement", Cplx(0, 1), at_i.dual_path_v, 1e-8});
  return out;
}

BaileyPair run_chain(const std::string& spec, std::string* target_name) {
  // SPEC: "C1 > raise_b0 > reduce_binf [> reduce_b:-q^2] [= L22]"
  std::vector<std::string> parts;
  std::string cur;
  for (char c : spec) {
    if (c == '>' || c == '=') {
      parts.push_back(cur);
      cur.clear();
      if (c == '=') cur = "=";
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t");
    size_t b = s.find_last_not_of(" \t");
    return a == s.npos ? std::string() : s.substr(a, b - a + 1);
  };
  BaileyPair p = bailey_pair(trim(parts.at(0)));
  for (size_t i = 1; i < parts.size(); ++i) {
    std::string step = trim(parts[i]);
    if (step.empty()) continue;
    if (step[0] == '=') {
      *target_name = trim(step.substr(1));
      continue;
    }
    if (step == "S1" || step == "rho_infty")
      p = transform_rho_infty(p);
    else if (step == "raise_binf")
      p = transform_raise_binf(p);
    else if (step == "raise_b0")
      p = transform_raise_b0(p);
    else if (step == "reduce_binf")
      p = transform_reduce_binf(p);
    else if (step.rfind("reduce_b:", 0) == 0) {
      ExprPtr m = parse_expr_text(step.substr(9));
      SignedMonomial mono =
          m->kind == Expr::Kind::mono
              ? m->m
              : (m->kind == Expr::Kind::neg &&
                         m->kids[0]->kind == Expr::Kind::mono
                     ? SignedMonomial{-m->kids[0]->m.coeff, m->kids[0]->m.exp}
                     : throw domain_error("reduce_b argument must be a monomial"));
      p = transform_reduce_b(p, mono);
    } else {
      throw unknown_id_error("unknown transform: " + step);
    }
  }
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qnahm: exact q-series identity verification"};
  app.require_subcommand(1);

  // ---- verify -------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "verify catalog identities");
  std::string v_id, v_filter, v_format = "text", v_config;
  bool v_all = false;
  std::string v_order, v_xorder;
  unsigned v_jobs = 1;
  verify->add_option("--id", v_id, "single identity id or alias");
  verify->add_flag("--all", v_all, "verify the whole catalog");
  verify->add_option("--filter", v_filter, "verify ids with this prefix");
  verify->add_option("--order", v_order, "q validity order (rational, e.g. 50 or 101/2)");
  verify->add_option("--x-order", v_xorder, "x order for bivariate records");
  verify->add_option("--jobs", v_jobs, "worker threads");
  verify->add_option("--format", v_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--config", v_config, "JSON file overriding per-id orders");

  // ---- expand -------------------------------------------------------------
  auto* expand = app.add_subcommand("expand", "expand an expression");
  std::string e_expr, e_order = "20", e_format = "text";
  long e_xorder = 12;
  expand->add_option("--expr", e_expr, "expression source")->required();
  expand->add_option("--order", e_order, "q validity order");
  expand->add_option("--x-order", e_xorder, "x order for bivariate input");
  expand->add_option("--format", e_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // ---- bailey -------------------------------------------------------------
  auto* bailey = app.add_subcommand("bailey", "Bailey pair toolbox");
  bool b_list = false;
  std::string b_verify, b_chain, b_format = "text";
  long b_nmax = 10;
  std::string b_order = "40";
  bailey->add_flag("--list", b_list, "list registry pairs");
  bailey->add_option("--verify", b_verify, "verify a registry pair");
  bailey->add_option("--n-max", b_nmax, "largest index checked");
  bailey->add_option("--order", b_order, "q validity order");
  bailey->add_option("--chain", b_chain,
                     "transform chain, e.g. 'C1 > raise_b0 > reduce_binf = L22'");
  bailey->add_option("--format", b_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // ---- modular ------------------------------------------------------------
  auto* modular = app.add_subcommand("modular", "numeric transformation checks");
  std::string m_tau;
  double m_tol = 1e-7;
  bool m_suite = false;
  std::string m_format = "text";
  modular->add_option("--tau", m_tau, "evaluation point RE+IMi");
  modular->add_option("--tol", m_tol, "tolerance");
  modular->add_flag("--suite", m_suite, "run the full CI sample-point suite");
  modular->add_option("--format", m_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // ---- dual ---------------------------------------------------------------
  auto* dualc = app.add_subcommand("dual", "dual quadruple of a JSON file");
  std::string d_file;
  dualc->add_option("--quad", d_file, "quadruple JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) {
      Catalog cat = Catalog::load();
      std::optional<Rat> order;
      if (!v_order.empty()) order = parse_rat(v_order);
      std::optional<long> xorder;
      if (!v_xorder.empty()) xorder = std::stol(v_xorder);
      auto config = load_config_orders(v_config);
      auto with_config = [&](const IdentityRecord& r) {
        std::optional<Rat> o = order;
        if (!o) {
          auto it = config.find(r.id);
          if (it != config.end()) o = it->second;
        }
        return cat.verify(r, o, xorder);
      };
      std::vector<VerifyOutcome> outcomes;
      if (!v_id.empty()) {
        outcomes.push_back(with_config(cat.get(v_id)));
      } else if (v_all || !v_filter.empty()) {
        std::vector<const IdentityRecord*> todo;
        for (const auto& r : cat.records())
          if (v_filter.empty() || r.id.rfind(v_filter, 0) == 0)
            todo.push_back(&r);
        outcomes.resize(todo.size());
        std::atomic<size_t> next{0};
        auto worker = [&] {
          while (true) {
            size_t slot = next.fetch_add(1);
            if (slot >= todo.size()) return;
            outcomes[slot] = with_config(*todo[slot]);
          }
        };
        if (v_jobs <= 1) {
          worker();
        } else {
          std::vector<std::thread> pool;
          for (unsigned t = 0; t < v_jobs; ++t) pool.emplace_back(worker);
          for (auto& th : pool) th.join();
        }
      } else {
        std::cerr << "verify needs --id, --filter or --all\n";
        return 2;
      }
      long failed = 0;
      double ms = 0;
      for (const auto& o : outcomes) {
        failed += o.pass ? 0 : 1;
        ms += o.elapsed_ms;
      }
      if (v_format == "json") {
        json out;
        out["results"] = json::array();
        for (const auto& o : outcomes) out["results"].push_back(outcome_json(o));
        out["summary"] = {{"total", outcomes.size()},
                          {"passed", outcomes.size() - failed},
                          {"failed", failed},
                          {"elapsed_ms", ms}};
        std::cout << out.dump(1) << "\n";
      } else {
        for (const auto& o : outcomes) print_outcome_text(o);
        std::cout << (failed ? "FAILED " : "passed ")
                  << (outcomes.size() - failed) << "/" << outcomes.size()
                  << " identities in " << static_cast<long>(ms) << " ms\n";
      }
      return failed ? 1 : 0;
    }

    if (*expand) {
      ExprPtr e = parse_expr_text(e_expr);
      EvalCtx ctx;
      ctx.N = Order::at(parse_rat(e_order));
      ctx.M = e_xorder;
      if (expr_type(*e) == ExprType::X) {
        BiSeries s = evaluate_x(e, ctx);
        if (e_format == "json") {
          json out;
          out["x_order"] = s.x_order();
          out["q_order"] = s.q_order().str();
          out["coefficients"] = json::array();
          for (long m = 0; m <= s.x_order(); ++m) {
            json row = json::array();
            for (auto& [exp, c] : s.coeff_x(m).terms())
              row.push_back({{"exponent", exp}, {"coefficient", c}});
            out["coefficients"].push_back(row);
          }
          std::cout << out.dump(1) << "\n";
        } else {
          for (long m = 0; m <= s.x_order(); ++m)
            std::cout << "x^" << m << ": " << s.coeff_x(m).str(16) << "\n";
        }
      } else {
        QSeries s = evaluate_q(e, ctx);
        if (e_format == "json") {
          json out;
          out["scale"] = s.scale();
          out["order"] = s.order().str();
          out["terms"] = json::array();
          for (auto& [exp, c] : s.terms())
            out["terms"].push_back({{"exponent", exp}, {"coefficient", c}});
          std::cout << out.dump(1) << "\n";
        } else {
          std::cout << s.str(24) << "\n";
        }
      }
      return 0;
    }

    if (*bailey) {
      if (b_list) {
        for (const auto& p : bailey_registry())
          std::cout << p.name() << "  (relative q^" << rat_str(p.a_exp())
                    << ")\n";
        return 0;
      }
      if (!b_verify.empty()) {
        BaileyReport rep = verify_pair(bailey_pair(b_verify), b_nmax,
                                       parse_rat(b_order));
        if (b_format == "json") {
          std::cout << bailey_report_json(rep).dump(1) << "\n";
        } else {
          std::cout << rep.pair << ": " << (rep.ok ? "pass" : "FAIL")
                    << " (n <= " << rep.n_max << ", order " << rat_str(rep.order)
                    << ")\n";
          for (const auto& f : rep.failures)
            std::cout << "  n=" << f.n << " differs at q^" << rat_str(f.exponent)
                      << ": " << rat_str(f.lhs) << " vs " << rat_str(f.rhs)
                      << "\n";
        }
        return rep.ok ? 0 : 1;
      }
      if (!b_chain.empty()) {
        std::string target;
        BaileyPair p = run_chain(b_chain, &target);
        if (!target.empty()) {
          const BaileyPair& want = bailey_pair(target);
          Rat N = parse_rat(b_order);
          bool ok = p.a_exp() == want.a_exp();
          for (long n = 0; ok && n <= b_nmax; ++n) {
            ok = equal_up_to(eval_to_order([&](Order t) { return p.alpha(n, t); }, N),
                             eval_to_order([&](Order t) { return want.alpha(n, t); }, N), N)
                     .equal &&
                 equal_up_to(eval_to_order([&](Order t) { return p.beta(n, t); }, N),
                             eval_to_order([&](Order t) { return want.beta(n, t); }, N), N)
                     .equal;
          }
          std::cout << "chain " << (ok ? "matches " : "DIFFERS from ") << target
                    << " for n <= " << b_nmax << "\n";
          return ok ? 0 : 1;
        }
        Order N = Order::at(parse_rat(b_order));
        for (long n = 0; n <= std::min<long>(b_nmax, 6); ++n) {
          std::cout << "alpha_" << n << " = " << p.alpha(n, N).str(8) << "\n";
          std::cout << "beta_" << n << "  = " << p.beta(n, N).str(8) << "\n";
        }
        return 0;
      }
      std::cerr << "bailey needs --list, --verify or --chain\n";
      return 2;
    }

    if (*modular) {
      std::vector<ModularCheck> checks;
      if (m_suite) {
        checks = modular_suite(m_tol);
      } else if (!m_tau.empty()) {
        Cplx tau = parse_tau(m_tau);
        SMatrixReport rep = check_S(tau);
        checks.push_back({"V(-1/2tau) = S U(tau)", tau, rep.residual_v, m_tol});
        checks.push_back({"U(-1/tau) = 2S V(tau/2)", tau, rep.residual_u, m_tol});
        checks.push_back({"S^2 = I/2", tau, rep.s_square, 1e-12});
      } else {
        std::cerr << "modular needs --tau or --suite\n";
        return 2;
      }
      bool all_ok = true;
      json arr = json::array();
      for (const auto& c : checks) {
        bool ok = c.residual < c.tolerance;
        all_ok = all_ok && ok;
        if (m_format == "json")
          arr.push_back(modular_json(c));
        else
          std::cout << (ok ? "pass" : "FAIL") << "  " << c.equation << "  tau="
                    << c.tau.real() << "+" << c.tau.imag() << "i  residual="
                    << c.residual << " (tol " << c.tolerance << ")\n";
      }
      if (m_format == "json") std::cout << arr.dump(1) << "\n";
      return all_ok ? 0 : 1;
    }

    if (*dualc) {
      std::ifstream in(d_file);
      if (!in) throw qnahm_error("cannot open quadruple file: " + d_file);
      json j;
      in >> j;
      NahmQuadruple nq;
      for (const auto& row : j.at("A")) {
        RatVec r;
        for (const auto& v : row) r.push_back(parse_rat(v.get<std::string>()));
        nq.A.push_back(r);
      }
      for (const auto& v : j.at("b"))
        nq.b.push_back(parse_rat(v.get<std::string>()));
      nq.c = parse_rat(j.at("c").get<std::string>());
      for (const auto& v : j.at("d")) nq.d.push_back(v.get<long>());
      auto rep = nq.validate();
      NahmQuadruple du = dual(nq);
      json out;
      out["valid"] = rep.ok;
      out["validation"] = rep.message;
      json A = json::array();
      for (const auto& row : du.A) {
        json r = json::array();
        for (const auto& v : row) r.push_back(rat_str(v));
        A.push_back(r);
      }
      json b = json::array();
      for (const auto& v : du.b) b.push_back(rat_str(v));
      out["dual"] = {{"A", A}, {"b", b}, {"c", rat_str(du.c)}, {"d", du.d}};
      std::cout << out.dump(1) << "\n";
      return 0;
    }
  } catch (const unknown_id_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const bound_certificate_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
