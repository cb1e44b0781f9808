#include "catch_amalgamated.hpp"
#include "qnahm/modular.hpp"
#include "qnahm/parser.hpp"

using namespace qnahm;

namespace {
const Cplx I(0, 1);
const std::vector<Cplx> tau_set = {Cplx(0, 1), Cplx(0, 2), Cplx(0.25, 1),
                                   Cplx(-1.0 / 3, 1.5)};
double cabs(Cplx z) { return std::abs(z); }
}  // namespace

TEST_CASE("numeric products and series agree", "[modular]") {
  EvalPolicy pol;
  // (q;q)_inf at tau = i against the explicit factor product
  Cplx lhs = eval_num(parse_expr_text("J(1)"), I, pol);
  Cplx rhs = 1;
  for (int k = 1; k < 60; ++k) rhs *= (1.0 - std::exp(-2 * 3.14159265358979323846 * k));
  CHECK(cabs(lhs - rhs) < 1e-12);

  // phi: theta sum vs product form
  Cplx series = eval_num(parse_expr_text("phi"), I, pol);
  Cplx prod = eval_num(parse_expr_text("P(-q;q^2)_inf^2 * J(2)"), I, pol);
  CHECK(cabs(series - prod) < 1e-10);

  // truncated-series shadow: phi to order 40 evaluated at tau = i
  QSeries phi40 = phi(Order::at(40));
  CHECK(cabs(eval_at(phi40, I) - series) < 1e-10);

  Cplx one = eval_num(parse_expr_text("1"), I, pol);
  CHECK(cabs(one - 1.0) < 1e-15);
}

TEST_CASE("eta and Weber transformation laws", "[modular]") {
  EvalPolicy pol;
  for (Cplx tau : tau_set) {
    Cplx minus_inv = -1.0 / tau;
    CHECK(cabs(eta_num(minus_inv) - std::sqrt(-I * tau) * eta_num(tau)) < 1e-10);
    CHECK(cabs(eta_num(tau + 1.0) -
               std::exp(I * 3.14159265358979323846 / 12.0) * eta_num(tau)) < 1e-10);

    CHECK(cabs(weber_f(minus_inv) - weber_f(tau)) < 1e-8);
    CHECK(cabs(weber_f2(minus_inv) - weber_f1(tau) / std::sqrt(2.0)) < 1e-8);
    CHECK(cabs(weber_f1(minus_inv) - std::sqrt(2.0) * weber_f2(tau)) < 1e-8);

    Cplx ph = std::exp(-I * 3.14159265358979323846 / 24.0);
    CHECK(cabs(weber_f(tau + 1.0) - ph * weber_f1(tau)) < 1e-8);
    CHECK(cabs(weber_f1(tau + 1.0) - ph * weber_f(tau)) < 1e-8);
    CHECK(cabs(weber_f2(tau + 1.0) -
               std::exp(I * 3.14159265358979323846 / 12.0) * weber_f2(tau)) < 1e-8);
  }
}

TEST_CASE("theta transformation laws", "[modular]") {
  const double pi = 3.14159265358979323846;
  for (double m : {5.5, 11.0}) {
    for (Cplx tau : tau_set) {
      for (long j = 0; j <= static_cast<long>(2 * m); ++j) {
        // h_{j,m}(-1/tau) = sqrt(-i tau)/sqrt(2m) sum_k e^{pi i jk/m} h_{k,m}(tau)
        Cplx lhs = h_num(j, m, -1.0 / tau);
        Cplx sum = 0;
        for (long k = 0; k <= static_cast<long>(2 * m) - 1; ++k)
          sum += std::exp(I * pi * double(j) * double(k) / m) * h_num(k, m, tau);
        Cplx rhs = std::sqrt(-I * tau) / std::sqrt(2 * m) * sum;
        CHECK(cabs(lhs - rhs) < 1e-8);

        // g version: odd k window of half-index h's
        Cplx lg = g_num(j, m, -1.0 / tau);
        Cplx sg = 0;
        for (long k = 1; k <= static_cast<long>(4 * m) - 1; k += 2)
          sg += std::exp(I * pi * double(j) * double(k) / (2 * m)) *
                h_num(k / 2.0, m, tau);
        Cplx rg = std::sqrt(-I * tau) / std::sqrt(2 * m) * sg;
        CHECK(cabs(lg - rg) < 1e-8);

        // translation phases need j + m integral
        if (std::abs(j + m - std::round(j + m)) < 1e-12) {
          Cplx phase = std::exp(I * pi * double(j) * double(j) / (2 * m));
          CHECK(cabs(h_num(j, m, tau + 1.0) - phase * h_num(j, m, tau)) < 1e-8);
          CHECK(cabs(g_num(j, m, tau + 1.0) - phase * g_num(j, m, tau)) < 1e-8);
        }
      }
    }
  }
}

TEST_CASE("U and V dual evaluation paths", "[modular]") {
  UVPair U = U_vec(I);
  UVPair V = V_vec(I);
  for (int j = 0; j < 5; ++j) {
    CHECK(cabs(U.sum_path[j]) > 1e-6);
    CHECK(cabs(V.sum_path[j]) > 0);  // V5 ~ q^{362/88} is tiny at tau=i
    CHECK(cabs(U.sum_path[j] - U.closed_path[j]) < 1e-8);
    CHECK(cabs(V.sum_path[j] - V.closed_path[j]) < 1e-8);
  }
  UVPair U2 = U_vec(Cplx(0, 2));
  for (int j = 0; j < 5; ++j) {
    CHECK(std::isfinite(U2.sum_path[j].real()));
    CHECK(cabs(U2.sum_path[j]) > 1e-12);
  }
}

TEST_CASE("S-matrix transformation", "[modular]") {
  for (Cplx tau : tau_set) {
    SMatrixReport rep = check_S(tau);
    INFO("tau = " << tau.real() << " + " << tau.imag() << "i");
    CHECK(rep.s_square < 1e-12);
    CHECK(rep.residual_v < 1e-7);
    CHECK(rep.residual_u < 1e-7);
  }
}

TEST_CASE("tolerance self-consistency", "[modular][prop]") {
  EvalPolicy coarse{1e-8, 2000000};
  EvalPolicy fine{1e-9, 2000000};
  for (const char* src : {"J(1)", "J(2,5)/J(1)", "phi", "psi",
                          "theta_g(3,7)", "LTH(1,1,1;2,1)"}) {
    ExprPtr e = parse_expr_text(src);
    Cplx a = eval_num(e, I, coarse);
    Cplx b = eval_num(e, I, fine);
    CHECK(std::abs(a - b) < coarse.tail_tolerance);
  }
  SMatrixReport r8 = check_S(I, EvalPolicy{1e-10, 2000000});
  SMatrixReport r9 = check_S(I, EvalPolicy{1e-11, 2000000});
  CHECK(std::abs(r8.residual_v - r9.residual_v) < 1e-9);
}

TEST_CASE("series-product duality on catalog shapes", "[modular]") {
  EvalPolicy pol;
  for (auto [lhs, rhs] :
       std::vector<std::pair<const char*, const char*>>{
           {"nahm{A=[[2]];b=[0];c=0;d=[1]}", "1 / P(q,q^4;q^5)_inf"},
           {"JTS(q;q^3)", "J(1)"},
           {"psi", "J(2)^2 / J(1)"},
           {"jcube", "J(1)^3"}}) {
    Cplx a = eval_num(parse_expr_text(lhs), I, pol);
    Cplx b = eval_num(parse_expr_text(rhs), I, pol);
    INFO(lhs);
    CHECK(cabs(a - b) < 1e-9);
  }
}

TEST_CASE("non-convergence is reported with the achieved bound", "[modular]") {
  EvalPolicy tiny;
  tiny.max_terms = 3;
  CHECK_THROWS_AS(eval_num(parse_expr_text("J(1)"), Cplx(0, 0.01), tiny),
                  non_convergence_error);
  CHECK_THROWS_AS(Tau(Cplx(0, -1)), domain_error);
}
