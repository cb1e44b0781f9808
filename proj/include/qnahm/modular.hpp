#pragma once

#include <array>
#include <complex>

#include "qnahm/expr.hpp"

namespace qnahm {

using Cplx = std::complex<double>;

class non_convergence_error : public qnahm_error {
 public:
  non_convergence_error(const std::string& what, double achieved)
      : qnahm_error(what + " (achieved bound " + std::to_string(achieved) +
                    ")"),
        achieved(achieved) {}
  double achieved;
};

struct Tau {
  Cplx v;
  explicit Tau(Cplx tau) : v(tau) {
    if (!(tau.imag() > 0)) throw domain_error("tau must have Im > 0");
  }
};

struct EvalPolicy {
  double tail_tolerance = 1e-12;
  long max_terms = 2000000;
};

// Branch convention: q^r := exp(2 pi i r tau) for rational/real r.
inline Cplx q_power(Cplx tau, double r) {
  const double two_pi = 6.28318530717958647692;
  return std::exp(Cplx(0, two_pi * r) * tau);
}

inline double rat_d(const Rat& r) { return r.get_d(); }

// Partial sum of a truncated series (numeric shadow of its stored terms).
inline Cplx eval_at(const QSeries& s, Cplx tau) {
  Cplx acc = 0;
  for (long i = 0; i < s.size(); ++i) {
    if (s.coeff_key(i) == 0) continue;
    double e = static_cast<double>(s.base_key() + i) / s.scale();
    acc += s.coeff_key(i).get_d() * q_power(tau, e);
  }
  return acc;
}

namespace num_detail {

// factor (a nome^k) magnitude decays geometrically; the sign bookkeeping in
// poch_num above is O(k^2), so specialize the common sign cases instead.
inline Cplx poch_num_fast(const SignedMonomial& a, const SignedMonomial& nome,
                          long len, Cplx tau, const EvalPolicy& pol) {
  Cplx acc = 1;
  Cplx cur = rat_d(a.coeff) * q_power(tau, rat_d(a.exp));
  Cplx step = rat_d(nome.coeff) * q_power(tau, rat_d(nome.exp));
  double step_mag = std::abs(step);
  if (len < 0 && step_mag >= 1)
    throw divergent_product_error("numeric infinite product needs |nome| < 1");
  for (long k = 0;; ++k) {
    if (len >= 0 && k >= len) break;
    if (len < 0 && std::abs(cur) < pol.tail_tolerance) break;
    if (k > pol.max_terms)
      throw non_convergence_error("numeric product cap exceeded",
                                  std::abs(cur));
    acc *= (1.0 - cur);
    cur *= step;
  }
  return acc;
}

}  // namespace num_detail

inline Cplx eta_num(Cplx tau, const EvalPolicy& pol = {}) {
  return q_power(tau, 1.0 / 24) *
         num_detail::poch_num_fast(qmono(1, rat(1)), qmono(1, rat(1)), -1, tau,
                                   pol);
}

inline Cplx weber_f(Cplx tau, const EvalPolicy& pol = {}) {
  return q_power(tau, -1.0 / 48) *
         num_detail::poch_num_fast(qmono(-1, rat(1, 2)), qmono(1, rat(1)), -1,
                                   tau, pol);
}
inline Cplx weber_f1(Cplx tau, const EvalPolicy& pol = {}) {
  return q_power(tau, -1.0 / 48) *
         num_detail::poch_num_fast(qmono(1, rat(1, 2)), qmono(1, rat(1)), -1,
                                   tau, pol);
}
inline Cplx weber_f2(Cplx tau, const EvalPolicy& pol = {}) {
  return q_power(tau, 1.0 / 24) *
         num_detail::poch_num_fast(qmono(-1, rat(1)), qmono(1, rat(1)), -1,
                                   tau, pol);
}

// h_{j,m}(tau) = sum_k q^{m (k + j/2m)^2}; g adds (-1)^k.
inline Cplx theta_num(double j, double m, bool signed_sum, Cplx tau,
                      const EvalPolicy& pol = {}) {
  if (!(m > 0)) throw domain_error("theta_num: m must be positive");
  double decay = 6.28318530717958647692 * tau.imag() * m;
  double reach =
      std::sqrt(std::max(1.0, std::log(1.0 / pol.tail_tolerance) / decay));
  long window = static_cast<long>(reach + std::abs(j / (2 * m)) + 6);
  Cplx acc = 0;
  for (long k = -window; k <= window; ++k) {
    double u = k + j / (2 * m);
    Cplx t = q_power(tau, m * u * u);
    acc += (signed_sum && ((k % 2 + 2) % 2 == 1)) ? -t : t;
  }
  return acc;
}

inline Cplx h_num(double j, double m, Cplx tau, const EvalPolicy& pol = {}) {
  return theta_num(j, m, false, tau, pol);
}
inline Cplx g_num(double j, double m, Cplx tau, const EvalPolicy& pol = {}) {
  return theta_num(j, m, true, tau, pol);
}

// Numeric decorated Nahm sum over a lambda-estimated box.
inline Cplx nahm_num(const NahmQuadruple& nq, const SumDecoration& dec,
                     Cplx tau, const EvalPolicy& pol = {}) {
  long r = nq.rank();
  RatMat ad_exact = nq.AD();
  std::vector<std::vector<double>> ad(r, std::vector<double>(r));
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < r; ++j) ad[i][j] = rat_d(ad_exact[i][j]);
  std::vector<double> b(r);
  for (long i = 0; i < r; ++i) b[i] = rat_d(nq.b[i]);
  std::vector<double> wcoeff(r, 1.0);
  if (!dec.weights.empty())
    for (long i = 0; i < r; ++i) {
      b[i] += rat_d(dec.weights[i].exp);
      wcoeff[i] = rat_d(dec.weights[i].coeff);
    }
  double lam = linalg::min_eigenvalue_estimate(ad_exact);
  if (!(lam > 0)) throw domain_error("nahm_num: AD not positive definite");
  double imt = 6.28318530717958647692 * tau.imag();
  double need = std::log(1.0 / pol.tail_tolerance) / imt + 4.0;
  double bneg = 0;
  for (long i = 0; i < r; ++i) bneg += std::max(0.0, -b[i]);
  double R = std::sqrt(2 * std::max(need + std::abs(rat_d(nq.c)), 1.0) / lam) +
             2 * bneg / lam + 6;
  long box = static_cast<long>(R) + 1;
  // per-index denominator ladders 1/(q^d;q^d)_n
  std::vector<std::vector<Cplx>> denom(r);
  for (long i = 0; i < r; ++i) {
    denom[i].resize(box + 2);
    denom[i][0] = 1;
    Cplx qd = q_power(tau, nq.d[i]);
    Cplx cur = qd;
    for (long n = 1; n <= box + 1; ++n) {
      denom[i][n] = denom[i][n - 1] * (1.0 - cur);
      cur *= qd;
    }
  }
  std::vector<long> n(r, 0);
  Cplx acc = 0;
  long terms = 0;
  while (true) {
    bool ok = true;
    if (!dec.parity.empty())
      for (long i = 0; i < r && ok; ++i)
        ok = dec.parity[i] == Parity::any ||
             (n[i] % 2) == static_cast<long>(dec.parity[i]);
    if (ok) {
      double e = rat_d(nq.c);
      double coeff = 1;
      for (long i = 0; i < r; ++i) {
        e += b[i] * n[i];
        for (long j = 0; j < r; ++j) e += ad[i][j] * n[i] * n[j] / 2;
        if (wcoeff[i] != 1.0) coeff *= std::pow(wcoeff[i], double(n[i]));
      }
      Cplx t = coeff * q_power(tau, e);
      for (long i = 0; i < r; ++i) t /= denom[i][n[i]];
      acc += t;
      if (++terms > pol.max_terms)
        throw non_convergence_error("nahm_num cap exceeded", std::abs(t));
    }
    long i = 0;
    while (i < r && n[i] == box) n[i++] = 0;
    if (i == r) break;
    ++n[i];
  }
  return acc;
}

// --------------------------------------------------------------------------
// Numeric walker over catalog expressions (products / thetas / sums only).
// --------------------------------------------------------------------------

inline Cplx eval_num(const ExprPtr& ep, Cplx tau, const EvalPolicy& pol = {}) {
  const Expr& e = *ep;
  using K = Expr::Kind;
  switch (e.kind) {
    case K::scalar:
      return rat_d(e.value);
    case K::mono:
      if (e.m.xdeg || e.m.zdeg)
        throw type_error("numeric evaluation is univariate");
      return rat_d(e.m.coeff) * q_power(tau, rat_d(e.m.exp));
    case K::add:
      return eval_num(e.kids[0], tau, pol) + eval_num(e.kids[1], tau, pol);
    case K::sub:
      return eval_num(e.kids[0], tau, pol) - eval_num(e.kids[1], tau, pol);
    case K::mul:
      return eval_num(e.kids[0], tau, pol) * eval_num(e.kids[1], tau, pol);
    case K::div:
      return eval_num(e.kids[0], tau, pol) / eval_num(e.kids[1], tau, pol);
    case K::neg:
      return -eval_num(e.kids[0], tau, pol);
    case K::pow:
      return std::pow(eval_num(e.kids[0], tau, pol), double(e.ipar));
    case K::poch: {
      Cplx acc = 1;
      for (const auto& b : e.bases)
        acc *= num_detail::poch_num_fast(b, e.nome, e.len, tau, pol);
      return acc;
    }
    case K::jm:
      return num_detail::poch_num_fast(qmono(1, rat(e.ipar)),
                                       qmono(1, rat(e.ipar)), -1, tau, pol);
    case K::jam: {
      Cplx acc = num_detail::poch_num_fast(qmono(1, rat(e.ipar)),
                                           qmono(1, rat(e.ipar2)), -1, tau, pol);
      acc *= num_detail::poch_num_fast(qmono(1, rat(e.ipar2 - e.ipar)),
                                       qmono(1, rat(e.ipar2)), -1, tau, pol);
      acc *= num_detail::poch_num_fast(qmono(1, rat(e.ipar2)),
                                       qmono(1, rat(e.ipar2)), -1, tau, pol);
      return acc;
    }
    case K::theta_h:
      return theta_num(rat_d(e.r1), rat_d(e.r2), false, tau, pol);
    case K::theta_g:
      return theta_num(rat_d(e.r1), rat_d(e.r2), true, tau, pol);
    case K::phi_node:
      return theta_num(0, 1, false, tau, pol);
    case K::psi_node: {
      Cplx acc = 0;
      for (long n = 0;; ++n) {
        Cplx t = q_power(tau, n * (n + 1) / 2.0);
        acc += t;
        if (std::abs(t) < pol.tail_tolerance) break;
      }
      return acc;
    }
    case K::jcube_node: {
      Cplx acc = 0;
      for (long n = 0;; ++n) {
        Cplx t = double(2 * n + 1) * q_power(tau, n * (n + 1) / 2.0);
        acc += (n % 2 ? -t : t);
        if (std::abs(t) < pol.tail_tolerance) break;
      }
      return acc;
    }
    case K::lth: {
      double alpha = rat_d(e.r3), beta = rat_d(e.r4);
      double imt = 6.28318530717958647692 * tau.imag() * alpha;
      long window = static_cast<long>(
          std::sqrt(std::max(1.0, std::log(1.0 / pol.tail_tolerance) / imt)) +
          std::abs(beta / (2 * alpha)) + 6);
      Cplx acc = 0;
      for (long n = -window; n <= window; ++n) {
        double c = rat_d(e.r1) * n + rat_d(e.r2);
        if (e.sign < 0 && ((n % 2 + 2) % 2 == 1)) c = -c;
        acc += c * q_power(tau, alpha * n * n + beta * n);
      }
      return acc;
    }
    case K::jts: {
      if (e.m.zdeg) throw type_error("numeric evaluation is univariate");
      double ne = rat_d(e.nome.exp), ze = rat_d(e.m.exp);
      double imt = 6.28318530717958647692 * tau.imag() * ne / 2;
      long window = static_cast<long>(
          std::sqrt(std::max(1.0, std::log(1.0 / pol.tail_tolerance) / imt)) +
          std::abs(ze / ne) + 6);
      Cplx acc = 0;
      for (long n = -window; n <= window; ++n) {
        double c2 = n * (n - 1) / 2.0;
        Cplx t = q_power(tau, ne * c2 + ze * n);
        double coeff = (n % 2 == 0 ? 1.0 : -1.0) *
                       std::pow(rat_d(e.nome.coeff), c2) *
                       std::pow(rat_d(e.m.coeff), double(n));
        acc += coeff * t;
      }
      return acc;
    }
    case K::nahm:
      return nahm_num(*e.quad, *e.dec, tau, pol);
    case K::subst_pow:
      return eval_num(e.kids[0], rat_d(e.r1) * tau, pol);
    case K::subst_neg:
      return eval_num(e.kids[0], tau + 0.5, pol);
    default:
      throw type_error("expression kind unsupported in numeric evaluation");
  }
}

// --------------------------------------------------------------------------
// The two vector-valued functions and the S-matrix transformation
// --------------------------------------------------------------------------

namespace uv_detail {

inline NahmQuadruple f_quad() {
  // d = (1,1,2); 1/2 i^2 + j^2 + 2k^2 + ik + 2jk
  NahmQuadruple nq;
  nq.A = {{Rat(1), Rat(0), Rat(1, 2)},
          {Rat(0), Rat(2), Rat(1)},
          {Rat(1), Rat(2), Rat(2)}};
  nq.b = {Rat(0), Rat(0), Rat(0)};
  nq.d = {1, 1, 2};
  return nq;
}

inline NahmQuadruple g_quad() {
  // d = (1,2,2); i^2 + 2j^2 + k^2 + 2ij + ik (display order)
  NahmQuadruple nq;
  nq.A = {{Rat(2), Rat(1), Rat(1, 2)},
          {Rat(2), Rat(2), Rat(0)},
          {Rat(1), Rat(0), Rat(1)}};
  nq.b = {Rat(0), Rat(0), Rat(0)};
  nq.d = {1, 2, 2};
  return nq;
}

inline Cplx F_num(const Rat& bu, const Rat& bv, const Rat& bw, Cplx tau,
                  const EvalPolicy& pol) {
  NahmQuadruple nq = f_quad();
  nq.b = {bu, bv, bw};
  return nahm_num(nq, SumDecoration{}, tau, pol);
}

inline Cplx G_num(int sigma, const Rat& bu, const Rat& bv, const Rat& bw,
                  Cplx tau, const EvalPolicy& pol) {
  NahmQuadruple nq = g_quad();
  nq.b = {bu, bv, bw};
  SumDecoration dec;
  dec.parity = {sigma == 0 ? Parity::even : Parity::odd, Parity::any,
                Parity::any};
  return nahm_num(nq, dec, tau, pol);
}

}  // namespace uv_detail

struct UVPair {
  std::array<Cplx, 5> sum_path;     // the defining Nahm-sum combinations
  std::array<Cplx, 5> closed_path;  // Weber/eta/theta closed forms
};

inline UVPair U_vec(Cplx tau, const EvalPolicy& pol = {}) {
  using namespace uv_detail;
  UVPair out;
  out.sum_path[0] = q_power(tau, -5.0 / 88) * F_num(Rat(0), Rat(0), Rat(0), tau, pol);
  out.sum_path[1] = q_power(tau, -1.0 / 88) * F_num(Rat(0), Rat(0), Rat(1), tau, pol);
  out.sum_path[2] =
      q_power(tau, 7.0 / 88) *
      (F_num(Rat(0), Rat(1), Rat(1), tau, pol) +
       q_power(tau, 1) * F_num(Rat(1), Rat(2), Rat(3), tau, pol));
  out.sum_path[3] = q_power(tau, 19.0 / 88) * F_num(Rat(0), Rat(1), Rat(2), tau, pol);
  out.sum_path[4] = q_power(tau, 35.0 / 88) * F_num(Rat(1), Rat(1), Rat(2), tau, pol);
  for (int j = 1; j <= 5; ++j)
    out.closed_path[j - 1] =
        weber_f(tau, pol) / eta_num(tau, pol) * g_num(2 * j - 1, 11, tau / 4.0, pol);
  return out;
}

inline UVPair V_vec(Cplx tau, const EvalPolicy& pol = {}) {
  using namespace uv_detail;
  UVPair out;
  out.sum_path[0] = q_power(tau, -7.0 / 88) * G_num(0, Rat(0), Rat(0), Rat(0), tau, pol);
  out.sum_path[1] =
      q_power(tau, 25.0 / 88) *
      (G_num(0, Rat(1), Rat(0), Rat(0), tau, pol) +
       G_num(1, Rat(3), Rat(2), Rat(1), tau, pol));
  out.sum_path[2] = q_power(tau, 1.0 / 88) * G_num(1, Rat(0), Rat(0), Rat(1), tau, pol);
  out.sum_path[3] = q_power(tau, 9.0 / 88) * G_num(1, Rat(1), Rat(0), Rat(1), tau, pol);
  out.sum_path[4] = q_power(tau, 49.0 / 88) * G_num(1, Rat(2), Rat(2), Rat(1), tau, pol);
  for (int j = 1; j <= 5; ++j)
    out.closed_path[j - 1] = weber_f(2.0 * tau, pol) / eta_num(2.0 * tau, pol) *
                             g_num(2 * j - 1, 11, 2.0 * tau, pol);
  return out;
}

inline std::array<std::array<double, 5>, 5> s_matrix() {
  auto a = [](int k) {
    return std::sqrt(2.0 / 11) * std::sin(k * 3.14159265358979323846 / 11);
  };
  return {{{a(5), a(4), a(3), a(2), a(1)},
           {a(4), a(1), -a(2), -a(5), -a(3)},
           {a(3), -a(2), -a(4), a(1), a(5)},
           {a(2), -a(5), a(1), a(3), -a(4)},
           {a(1), -a(3), a(5), -a(4), a(2)}}};
}

struct SMatrixReport {
  double residual_v = 0;   // max |V(-1/2t) - S U(t)|
  double residual_u = 0;   // max |U(-1/t) - 2 S V(t/2)|
  double s_square = 0;     // max |(S^2 - I/2)_{jk}|
  double dual_path_u = 0;  // max |U sum path - closed path|
  double dual_path_v = 0;
};

inline SMatrixReport check_S(Cplx tau, const EvalPolicy& pol = {}) {
  SMatrixReport rep;
  auto S = s_matrix();
  for (int j = 0; j < 5; ++j)
    for (int k = 0; k < 5; ++k) {
      double want = j == k ? 0.5 : 0.0;
      double acc = 0;
      for (int t = 0; t < 5; ++t) acc += S[j][t] * S[t][k];
      rep.s_square = std::max(rep.s_square, std::abs(acc - want));
    }
  UVPair U = U_vec(tau, pol);
  UVPair V_half = V_vec(tau / 2.0, pol);
  UVPair V_at = V_vec(-1.0 / (2.0 * tau), pol);
  UVPair U_at = U_vec(-1.0 / tau, pol);
  for (int j = 0; j < 5; ++j) {
    Cplx su = 0, sv = 0;
    for (int k = 0; k < 5; ++k) {
      su += S[j][k] * U.sum_path[k];
      sv += 2.0 * S[j][k] * V_half.sum_path[k];
    }
    rep.residual_v = std::max(rep.residual_v, std::abs(V_at.sum_path[j] - su));
    rep.residual_u = std::max(rep.residual_u, std::abs(U_at.sum_path[j] - sv));
    rep.dual_path_u = std::max(rep.dual_path_u,
                               std::abs(U.sum_path[j] - U.closed_path[j]));
    rep.dual_path_v = std::max(rep.dual_path_v,
                               std::abs(V_half.sum_path[j] - V_half.closed_path[j]));
  }
  return rep;
}

}  // namespace qnahm
