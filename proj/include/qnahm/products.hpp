#pragma once

#include <map>
#include <vector>

#include "qnahm/series.hpp"

namespace qnahm {

// (base; nome)_length ^ power, length < 0 meaning the infinite product.
struct ProductFactor {
  SignedMonomial base;
  SignedMonomial nome;
  int power = 1;
  long length = -1;
};

struct ProductExpr {
  SignedMonomial prefactor{Rat(1), Rat(0)};
  std::vector<ProductFactor> factors;

  ProductExpr& mul_factor(SignedMonomial base, SignedMonomial nome,
                          int power = 1, long length = -1) {
    factors.push_back({std::move(base), std::move(nome), power, length});
    return *this;
  }
};

// J_m = (q^m; q^m)_inf
inline ProductExpr Jm(long m) {
  ProductExpr e;
  e.mul_factor(qmono(1, rat(m)), qmono(1, rat(m)));
  return e;
}

// J_{a,m} = (q^a, q^{m-a}, q^m; q^m)_inf, 0 < a < m enforced.
inline ProductExpr Jam(long a, long m) {
  if (a <= 0 || a >= m)
    throw domain_error("J(a,m) requires 0 < a < m");
  ProductExpr e;
  e.mul_factor(qmono(1, rat(a)), qmono(1, rat(m)));
  e.mul_factor(qmono(1, rat(m - a)), qmono(1, rat(m)));
  e.mul_factor(qmono(1, rat(m)), qmono(1, rat(m)));
  return e;
}

namespace detail {
// Minimum exponent of (base;nome)_len as a series (always <= 0).
inline Rat pochhammer_min_exp(const ProductFactor& f) {
  Rat m(0);
  if (f.base.exp >= 0) return m;
  for (long k = 0;; ++k) {
    if (f.length >= 0 && k >= f.length) break;
    Rat e = f.base.exp + f.nome.exp * k;
    if (e >= 0 && f.nome.exp >= 0) break;
    if (e < 0) m += e;
    if (f.length < 0 && f.nome.exp <= 0) break;  // guarded by callers
  }
  return m;
}
}  // namespace detail

inline QSeries eval_product(const ProductExpr& e, Order N) {
  if (e.prefactor.coeff == 0) return QSeries::zero(N);
  if (N.inf) {
    // exact evaluation only works for finite factor lists of finite factors
    for (const auto& f : e.factors)
      if (f.length < 0 || f.power < 0)
        throw domain_error("eval_product: needs a finite truncation order");
  }
  // Factors whose series dip below exponent 0 erode the propagated order
  // of the running product; pad the working order to compensate.
  Rat pad(0);
  for (const auto& f : e.factors)
    pad -= std::abs(f.power) * detail::pochhammer_min_exp(f);
  Order work = N.inf ? N : Order::at(N.v - e.prefactor.exp + pad);
  QSeries acc = QSeries::one(work);
  for (const auto& f : e.factors) {
    if (f.power == 0) continue;
    QSeries p = f.length < 0 ? pochhammer_infinite(f.base, f.nome, work)
                             : pochhammer_finite(f.base, f.nome, f.length, work);
    QSeries q = f.power > 0 ? p : invert(p, work);
    int reps = f.power > 0 ? f.power : -f.power;
    for (int i = 0; i < reps; ++i) acc = mul(acc, q);
  }
  return mul_monomial(acc, e.prefactor).truncated(N);
}

// sum_{n in Z} (-1)^n nome^{C(n,2)} z^n, the sum side of the triple
// product identity.  The exponent C(n,2)*e_nome + n*e_z must grow in both
// directions, which needs e_nome > 0.
inline QSeries jacobi_triple_sum(const SignedMonomial& z,
                                 const SignedMonomial& nome, Order N) {
  if (N.inf) throw domain_error("jacobi_triple_sum: needs a finite order");
  if (nome.exp <= 0)
    throw divergent_theta_error("jacobi_triple_sum: nome exponent must be > 0");
  auto expo = [&](long n) -> Rat { return nome.exp * rat(n * (n - 1), 2) + z.exp * n; };
  QSeries res = QSeries::zero(N);
  // vertex of the exponent parabola: n* = 1/2 - e_z/e_nome; the integer
  // minimum is at floor(n*) or floor(n*)+1 and expo is monotone on each side.
  long n0 = rat_floor_long(Rat(1, 2) - z.exp / nome.exp);
  auto term = [&](long n) {
    long c2 = n * (n - 1) / 2;
    Rat coeff = (n % 2 == 0 ? Rat(1) : Rat(-1));
    coeff *= rat_pow(nome.coeff, c2);  // C(n,2) >= 0 for all integer n
    if (n >= 0)
      coeff *= rat_pow(z.coeff, n);
    else
      coeff *= Rat(1) / rat_pow(z.coeff, -n);
    return QSeries::monomial(SignedMonomial{coeff, expo(n)}, N);
  };
  for (long n = n0; expo(n) <= N.v; --n) res = add(res, term(n));
  for (long n = n0 + 1; expo(n) <= N.v; ++n) res = add(res, term(n));
  return res;
}

// h_{j,m} = sum_k q^{m(k+j/2m)^2}; g adds (-1)^k.
struct ThetaSpec {
  Rat j;
  Rat m;  // positive half-integer
  bool signed_sum = false;
};

inline QSeries theta_series(const ThetaSpec& t, Order N) {
  if (t.m <= 0) throw domain_error("theta_series: m must be positive");
  if (N.inf) throw domain_error("theta_series: needs a finite order");
  auto expo = [&](long k) -> Rat {
    Rat u = Rat(k) + t.j / (2 * t.m);
    return t.m * u * u;
  };
  QSeries res = QSeries::zero(N);
  long k0 = rat_floor_long(-t.j / (2 * t.m));
  auto add_term = [&](long k) {
    Rat coeff = (t.signed_sum && (k % 2 != 0)) ? Rat(-1) : Rat(1);
    res = add(res, QSeries::monomial(SignedMonomial{coeff, expo(k)}, N));
  };
  for (long k = k0; expo(k) <= N.v; --k) add_term(k);
  for (long k = k0 + 1; expo(k) <= N.v; ++k) add_term(k);
  return res;
}

inline QSeries theta_h(const Rat& j, const Rat& m, Order N) {
  return theta_series(ThetaSpec{j, m, false}, N);
}
inline QSeries theta_g(const Rat& j, const Rat& m, Order N) {
  return theta_series(ThetaSpec{j, m, true}, N);
}

// phi(q) = sum_{n in Z} q^{n^2}
inline QSeries phi(Order N) { return theta_h(Rat(0), Rat(1), N); }

// psi(q) = sum_{n >= 0} q^{n(n+1)/2}
inline QSeries psi(Order N) {
  if (N.inf) throw domain_error("psi: needs a finite order");
  QSeries res = QSeries::zero(N);
  for (long n = 0; rat(n * (n + 1), 2) <= N.v; ++n)
    res = add(res, QSeries::monomial(qmono(1, rat(n * (n + 1), 2)), N));
  return res;
}

// J_1^3 = sum_{n >= 0} (-1)^n (2n+1) q^{n(n+1)/2}
inline QSeries jacobi_cube(Order N) {
  if (N.inf) throw domain_error("jacobi_cube: needs a finite order");
  QSeries res = QSeries::zero(N);
  for (long n = 0; rat(n * (n + 1), 2) <= N.v; ++n) {
    Rat c = rat(2 * n + 1);
    if (n % 2) c = -c;
    res = add(res, QSeries::monomial(SignedMonomial{c, rat(n * (n + 1), 2)}, N));
  }
  return res;
}

// Linear-weight theta: sum_{n in Z} (u*n + w) s^n q^{alpha n^2 + beta n}.
inline QSeries linear_theta(const Rat& u, const Rat& w, int sign,
                            const Rat& alpha, const Rat& beta, Order N) {
  if (alpha <= 0) throw divergent_theta_error("linear_theta: alpha must be > 0");
  if (N.inf) throw domain_error("linear_theta: needs a finite order");
  auto expo = [&](long n) -> Rat { return alpha * n * n + beta * n; };
  QSeries res = QSeries::zero(N);
  long n0 = rat_floor_long(-beta / (2 * alpha));
  auto add_term = [&](long n) {
    Rat c = u * n + w;
    if (sign < 0 && (n % 2 != 0)) c = -c;
    if (c == 0) return;
    res = add(res, QSeries::monomial(SignedMonomial{c, expo(n)}, N));
  };
  for (long n = n0; expo(n) <= N.v; --n) add_term(n);
  for (long n = n0 + 1; expo(n) <= N.v; ++n) add_term(n);
  return res;
}

// Second periodic Bernoulli value P2(t) = {t}^2 - {t} + 1/6.
inline Rat p2(const Rat& t) {
  Rat frac = t - rat_floor_long(t);
  return frac * frac - frac + rat(1, 6);
}

// The unique c with q^c * e a generalized Dedekind eta product, for e a
// quotient of J_m / J_{a,m} style factors.  Each atomic (q^a; q^m)_inf
// contributes m/24 when a = m and (m/4) P2(a/m) when 0 < a < m; bases with
// a = m/2 may stand alone (half-integer eta weights), all other 0 < a < m
// bases must pair up with their m-a partner at equal total power.
inline Rat prefactor_exponent(const ProductExpr& e) {
  std::map<std::pair<Rat, Rat>, long> pow;  // (a, m) -> net power
  for (const auto& f : e.factors) {
    if (f.length >= 0)
      throw domain_error("prefactor_exponent: finite factor is not an eta quotient");
    if (f.base.coeff != 1 || f.nome.coeff != 1)
      throw domain_error("prefactor_exponent: signed factor is not an eta quotient");
    Rat a = f.base.exp, m = f.nome.exp;
    if (!rat_is_integer(a) || !rat_is_integer(m) || a <= 0 || m <= 0 || a > m)
      throw domain_error("prefactor_exponent: factor is not J_m/J_{a,m} shaped");
    pow[{a, m}] += f.power;
  }
  Rat c(0);
  for (const auto& [key, p] : pow) {
    if (p == 0) continue;
    const auto& [a, m] = key;
    if (a == m) {
      c += p * m / 24;
      continue;
    }
    if (2 * a != m) {
      auto partner = pow.find({m - a, m});
      if (partner == pow.end() || partner->second != p)
        throw domain_error(
            "prefactor_exponent: unpaired base q^" + rat_str(a) + " mod q^" +
            rat_str(m));
    }
    c += p * (m / 4) * p2(a / m);
  }
  return c - e.prefactor.exp;
}

}  // namespace qnahm
