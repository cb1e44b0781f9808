#pragma once

#include "qnahm/bailey.hpp"

namespace qnahm {

// Named Bailey pairs.  Unified closed forms; alpha_0 is always 1 by the
// standing convention, overriding the n = 0 value of the displayed
// formulas where those would give 2.
namespace bailey_pairs {

namespace rd {  // registry detail

inline QSeries mono(const Rat& coeff, const Rat& e, Order N) {
  return QSeries::monomial(SignedMonomial{coeff, e}, N);
}

inline Rat sgn(long n) { return n % 2 == 0 ? Rat(1) : Rat(-1); }

// q^{e1} + s2 q^{e2}, times (-1)^n
inline QSeries two_term(long n, const Rat& e1, const Rat& s2, const Rat& e2,
                        Order N) {
  return add(mono(sgn(n), e1, N), mono(sgn(n) * s2, e2, N));
}

// beta denominators
inline QSeries inv_prod2(const SignedMonomial& a1, const SignedMonomial& q1,
                         const SignedMonomial& a2, const SignedMonomial& q2,
                         long n, Order N) {
  return invert(mul(pochhammer_finite(a1, q1, n, Order::infinite()),
                    pochhammer_finite(a2, q2, n, Order::infinite())),
                N);
}

inline QSeries beta_G_half(long n, Order N) {  // 1/((-q^{1/2};q)_n (q^2;q^2)_n)
  return inv_prod2(qmono(-1, rat(1, 2)), qmono(1, rat(1)), qmono(1, rat(2)),
                   qmono(1, rat(2)), n, N);
}
inline QSeries beta_G_three_half(long n, Order N) {
  return inv_prod2(qmono(-1, rat(3, 2)), qmono(1, rat(1)), qmono(1, rat(2)),
                   qmono(1, rat(2)), n, N);
}
inline QSeries beta_C_1(long n, Order N) {  // 1/((q;q)_n (q;q^2)_n)
  return inv_prod2(qmono(1, rat(1)), qmono(1, rat(1)), qmono(1, rat(1)),
                   qmono(1, rat(2)), n, N);
}
inline QSeries beta_C_3(long n, Order N) {  // 1/((q;q)_n (q^3;q^2)_n)
  return inv_prod2(qmono(1, rat(1)), qmono(1, rat(1)), qmono(1, rat(3)),
                   qmono(1, rat(2)), n, N);
}

inline QSeries geom_ratio(const Rat& num_exp, const Rat& den_exp, Order N) {
  // (1 - q^{num_exp})/(1 - q^{den_exp})
  return eval_to_order(
      [&](Order t) {
        QSeries num = sub(QSeries::one(t), mono(Rat(1), num_exp, t));
        QSeries den = sub(QSeries::one(t), mono(Rat(1), den_exp, t));
        return mul(num, invert(den, t));
      },
      N.v);
}

}  // namespace rd

inline BaileyPair G1() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    Rat e = rat(n * n, 2) + rat(n * (n - 1), 4);
    return rd::two_term(n, e, Rat(1), e + rat(n, 2), N);
  };
  auto beta = [](long n, Order N) { return rd::beta_G_half(n, N); };
  return BaileyPair("G1", Rat(0), alpha, beta);
}

inline BaileyPair G1s() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    Rat e = rat(3 * n * (n + 1), 4);
    QSeries num = rd::two_term(n, e - n, Rat(-1), e + n + 1, N);
    return mul(num, bailey_detail::unit_inverse(rat(1), N));
  };
  auto beta = [](long n, Order N) { return rd::beta_G_half(n, N); };
  return BaileyPair("G1s", Rat(1), alpha, beta);
}

inline BaileyPair G2() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    Rat e = rat(3 * n * (n + 1), 4);
    QSeries num =
        rd::two_term(n, e - rat(n, 2), Rat(-1), e + rat(n + 1, 2), N);
    return mul(num, bailey_detail::unit_inverse(rat(1, 2), N));
  };
  auto beta = [](long n, Order N) { return rd::beta_G_three_half(n, N); };
  return BaileyPair("G2", Rat(1), alpha, beta);
}

inline BaileyPair G3() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    Rat e = rat(3 * n * (n - 1), 4);
    return rd::two_term(n, e, Rat(1), e + rat(3 * n, 2), N);
  };
  auto beta = [](long n, Order N) {
    return mul_monomial(rd::beta_G_half(n, N), qmono(1, rat(n)));
  };
  return BaileyPair("G3", Rat(0), alpha, beta);
}

// Slater's G(4); the unified alpha is (-1)^n q^{C(n,2)/2} (1 + q^{n/2}),
// pinned against the defining relation.
inline BaileyPair G4() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    Rat e = rat(n * (n - 1), 4);
    return rd::two_term(n, e, Rat(1), e + rat(n, 2), N);
  };
  auto beta = [](long n, Order N) {
    return mul_monomial(rd::beta_G_half(n, N),
                        SignedMonomial{rd::sgn(n), rat(n * n, 2)});
  };
  return BaileyPair("G4", Rat(0), alpha, beta);
}

// Slater's G(5) with the corrected sign: alpha carries (-1)^n.
inline BaileyPair G5() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    Rat e = rat(n * (n - 1), 4);
    QSeries num = sub(rd::mono(rd::sgn(n), e, N),
                      rd::mono(rd::sgn(n), e + n + rat(1, 2), N));
    return mul(num, bailey_detail::unit_inverse(rat(1, 2), N));
  };
  auto beta = [](long n, Order N) {
    return mul_monomial(rd::beta_G_three_half(n, N),
                        SignedMonomial{rd::sgn(n), rat(n * n, 2)});
  };
  return BaileyPair("G5", Rat(1), alpha, beta);
}

inline BaileyPair G4s() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    Rat e = rat(n * (n - 1), 4) - rat(n, 2);
    return rd::two_term(n, e, Rat(1), e + rat(3 * n, 2), N);
  };
  auto beta = [](long n, Order N) {
    return mul_monomial(rd::beta_G_half(n, N),
                        SignedMonomial{rd::sgn(n), rat(n * n, 2) - n});
  };
  return BaileyPair("G4s", Rat(0), alpha, beta);
}

inline BaileyPair C1() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    if (n % 2) return QSeries::zero(Order::infinite());
    long m = n / 2;
    Rat e = rat(3 * m * m);
    return rd::two_term(m, e + m, Rat(1), e - m, N);
  };
  auto beta = [](long n, Order N) { return rd::beta_C_1(n, N); };
  return BaileyPair("C1", Rat(0), alpha, beta);
}

inline BaileyPair C3() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    long m = n / 2;
    if (n % 2 == 0) return rd::mono(rd::sgn(m), rat(3 * m * m + m), N);
    return rd::mono(-rd::sgn(m), rat(3 * m * m + 5 * m + 2), N);
  };
  auto beta = [](long n, Order N) { return rd::beta_C_3(n, N); };
  return BaileyPair("C3", Rat(1), alpha, beta);
}

inline BaileyPair C4() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    long m = n / 2;
    Rat e = rat(3 * m * m + 3 * m);
    return rd::mono(n % 2 == 0 ? rd::sgn(m) : -rd::sgn(m), e, N);
  };
  auto beta = [](long n, Order N) {
    return mul_monomial(rd::beta_C_3(n, N), qmono(1, rat(n)));
  };
  return BaileyPair("C4", Rat(1), alpha, beta);
}

inline BaileyPair C5() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    if (n % 2) return QSeries::zero(Order::infinite());
    long m = n / 2;
    Rat e = rat(m * m);
    return rd::two_term(m, e + m, Rat(1), e - m, N);
  };
  auto beta = [](long n, Order N) {
    return mul_monomial(rd::beta_C_1(n, N), qmono(1, rat(n * n - n, 2)));
  };
  return BaileyPair("C5", Rat(0), alpha, beta);
}

inline BaileyPair C6() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    long m = n / 2;
    if (n % 2 == 0) return rd::mono(rd::sgn(m), rat(m * m - m), N);
    return rd::mono(-rd::sgn(m), rat(m * m + 3 * m + 2), N);
  };
  auto beta = [](long n, Order N) {
    return mul_monomial(rd::beta_C_3(n, N), qmono(1, rat(n * n - n, 2)));
  };
  return BaileyPair("C6", Rat(1), alpha, beta);
}

inline BaileyPair C7() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    long m = n / 2;
    Rat e = rat(m * m + m);
    return rd::mono(n % 2 == 0 ? rd::sgn(m) : -rd::sgn(m), e, N);
  };
  auto beta = [](long n, Order N) {
    return mul_monomial(rd::beta_C_3(n, N), qmono(1, rat(n * n + n, 2)));
  };
  return BaileyPair("C7", Rat(1), alpha, beta);
}

inline BaileyPair C4s() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    if (n % 2) return QSeries::zero(Order::infinite());
    long m = n / 2;
    return mul_monomial(rd::geom_ratio(rat(4 * m + 2), rat(2), N),
                        SignedMonomial{rd::sgn(m), rat(3 * m * m + m)});
  };
  auto beta = [](long n, Order N) { return rd::beta_C_3(n, N); };
  return BaileyPair("C4s", Rat(2), alpha, beta);
}

inline BaileyPair C7s() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    if (n % 2) return QSeries::zero(Order::infinite());
    long m = n / 2;
    return mul_monomial(rd::geom_ratio(rat(4 * m + 2), rat(2), N),
                        SignedMonomial{rd::sgn(m), rat(m * m - m)});
  };
  auto beta = [](long n, Order N) {
    return mul_monomial(rd::beta_C_3(n, N), qmono(1, rat(n * n - n, 2)));
  };
  return BaileyPair("C7s", Rat(2), alpha, beta);
}

inline BaileyPair G41new() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    Rat e = rat(n * n, 4) - rat(3 * n, 4);
    return mul_monomial(rd::geom_ratio(rat(2 * n + 1), rat(1), N),
                        SignedMonomial{rd::sgn(n), e});
  };
  auto beta = [](long n, Order N) {
    return mul_monomial(rd::beta_G_half(n, N),
                        SignedMonomial{rd::sgn(n), rat(n * n, 2) - n});
  };
  return BaileyPair("G41new", Rat(1), alpha, beta);
}

// Lemma 2.2 pair
inline BaileyPair L22() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    if (n % 2) return QSeries::zero(Order::infinite());
    long m = n / 2;
    Rat e = rat(3 * m * m);
    return rd::two_term(m, e + 3 * m, Rat(1), e - 3 * m, N);
  };
  auto beta = [](long n, Order N) {
    // (q^n (1 + q^{-1}) - q^{2n-1}) / ((q;q)_n (q;q^2)_n)
    return eval_to_order(
        [&](Order t) {
          QSeries num = add(rd::mono(Rat(1), rat(n), t),
                            rd::mono(Rat(1), rat(n - 1), t));
          num = sub(num, rd::mono(Rat(1), rat(2 * n - 1), t));
          return mul(num, rd::beta_C_1(n, t));
        },
        N.v);
  };
  return BaileyPair("L22", Rat(0), alpha, beta);
}

// Lemma 2.3 pair
inline BaileyPair L23() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    Rat e = rat(3 * n * n, 4) - rat(5 * n, 4);
    return rd::two_term(n, e, Rat(1), e + rat(5 * n, 2), N);
  };
  auto beta = [](long n, Order N) {
    return eval_to_order(
        [&](Order t) {
          QSeries num = add(rd::mono(Rat(-1), rat(-1, 2), t),
                            rd::mono(Rat(1), rat(n), t));
          num = add(num, rd::mono(Rat(1), rat(2 * n) - rat(1, 2), t));
          return mul(num, rd::beta_G_half(n, t));
        },
        N.v);
  };
  return BaileyPair("L23", Rat(0), alpha, beta);
}

// Lemma 2.4 pair
inline BaileyPair L24() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    long m = n / 2;
    if (n % 2 == 0) return rd::mono(rd::sgn(m), rat(3 * m * m - m), N);
    return rd::mono(rd::sgn(m + 1), rat(3 * (m + 1) * (m + 1) + (m + 1)), N);
  };
  auto beta = [](long n, Order N) {
    return eval_to_order(
        [&](Order t) {
          QSeries num = add(QSeries::one(t), rd::mono(Rat(1), rat(n + 1), t));
          num = sub(num, rd::mono(Rat(1), rat(2 * n + 1), t));
          return mul(num, rd::beta_C_3(n, t));
        },
        N.v);
  };
  return BaileyPair("L24", Rat(1), alpha, beta);
}

// Lemma 2.6 pair
inline BaileyPair L26() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    QSeries s = QSeries::zero(N);
    for (long i = -n; i <= n - 1; ++i) {
      Rat c = ((i + n) % 2 == 0) ? Rat(1) : Rat(-1);
      s = add(s, rd::mono(c, rat(i * i), N));
    }
    return s;
  };
  auto beta = [](long n, Order N) {
    return eval_to_order(
        [&](Order t) {
          QSeries inner = QSeries::zero(t);
          for (long k = 0; k <= n; ++k) {
            QSeries term =
                mul(pochhammer_finite(qmono(-1, rat(1)), qmono(1, rat(1)), k,
                                      t),
                    invert(pochhammer_finite(qmono(1, rat(1)),
                                             qmono(1, rat(1)), k,
                                             Order::infinite()),
                           t));
            inner = add(inner, scaled(term, rd::sgn(k)));
          }
          QSeries res = mul(
              inner, invert(pochhammer_finite(qmono(1, rat(2)),
                                              qmono(1, rat(2)), n,
                                              Order::infinite()),
                            t));
          return scaled(res, rd::sgn(n));
        },
        N.v);
  };
  return BaileyPair("L26", Rat(0), alpha, beta);
}

// --- stated intermediate pairs of the Lemma 2.2-2.4 derivations ----------

inline BaileyPair L22_iterate1() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    long m = n / 2;
    if (n % 2 == 0)
      return mul_monomial(rd::geom_ratio(rat(4 * m + 1), rat(1), N),
                          SignedMonomial{rd::sgn(m), rat(3 * m * m - m)});
    return mul_monomial(rd::geom_ratio(rat(4 * m + 3), rat(1), N),
                        SignedMonomial{rd::sgn(m), rat(3 * m * m + 3 * m + 1)});
  };
  auto beta = [](long n, Order N) { return rd::beta_C_1(n, N); };
  return BaileyPair("L22.iter1", Rat(1), alpha, beta);
}

inline BaileyPair L22_iterate2() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    long m = n / 2;
    if (n % 2 == 0) {
      Rat e = rat(3 * m * m);
      return rd::two_term(m, e + m, Rat(1), e - m, N);
    }
    return sub(rd::mono(rd::sgn(m), rat(3 * m * m + 5 * m + 2), N),
               rd::mono(rd::sgn(m), rat(3 * m * m + m), N));
  };
  auto beta = [](long n, Order N) {
    return mul_monomial(rd::beta_C_1(n, N), qmono(1, rat(n)));
  };
  return BaileyPair("L22.iter2", Rat(0), alpha, beta);
}

inline BaileyPair L22_iterate3() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    long m = n / 2;
    return eval_to_order(
        [&](Order t) {
          if (n % 2 == 0) {
            QSeries inner =
                add(rd::two_term(m, rat(-m * (m + 1)), Rat(1),
                                 rat(-m * (m + 1)) + 1, t),
                    rd::mono(-rd::sgn(m), rat(-m * (m - 1) + 1), t));
            QSeries pre = mul(inner, rd::geom_ratio(rat(4 * m + 1), rat(1), t));
            return mul_monomial(pre, qmono(1, rat(4 * m * m)));
          }
          QSeries inner = add(rd::two_term(m, rat(-m * (m + 1)), Rat(1),
                                           rat(-m * (m + 1)) + 1, t),
                              rd::mono(-rd::sgn(m), rat(-m * m - 3 * m - 1), t));
          QSeries pre = mul(inner, rd::geom_ratio(rat(4 * m + 3), rat(1), t));
          return mul_monomial(pre, qmono(1, rat((2 * m + 1) * (2 * m + 1))));
        },
        N.v);
  };
  auto beta = [](long n, Order N) {
    return mul_monomial(rd::beta_C_1(n, N), qmono(1, rat(n)));
  };
  return BaileyPair("L22.iter3", Rat(1), alpha, beta);
}

inline BaileyPair L22_iterate4() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    long m = n / 2;
    QSeries s = QSeries::zero(N);
    if (n % 2 == 0) {
      long mm = 3 * m * m;
      s = add(s, rd::mono(rd::sgn(m), rat(mm + m), N));
      s = sub(s, rd::mono(rd::sgn(m), rat(mm + 3 * m + 1), N));
      s = add(s, rd::mono(rd::sgn(m), rat(mm + m + 1), N));
      s = add(s, rd::mono(rd::sgn(m), rat(mm - m), N));
      s = add(s, rd::mono(rd::sgn(m), rat(mm - m + 1), N));
      s = sub(s, rd::mono(rd::sgn(m), rat(mm - 3 * m + 1), N));
    } else {
      long mm = 3 * m * m;
      s = add(s, rd::mono(rd::sgn(m), rat(mm + 5 * m + 2), N));
      s = add(s, rd::mono(rd::sgn(m), rat(mm + 5 * m + 3), N));
      s = sub(s, rd::mono(rd::sgn(m), rat(mm + m), N));
      s = sub(s, rd::mono(rd::sgn(m), rat(mm + m + 1), N));
    }
    return s;
  };
  auto beta = [](long n, Order N) {
    return mul_monomial(rd::beta_C_1(n, N), qmono(1, rat(2 * n)));
  };
  return BaileyPair("L22.iter4", Rat(0), alpha, beta);
}

inline BaileyPair L23_part2() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    Rat e = rat(3 * n * n, 4) - rat(3 * n, 4);
    return rd::two_term(n, e, Rat(1), e + rat(3 * n, 2), N);
  };
  auto beta = [](long n, Order N) {
    return mul_monomial(rd::beta_G_half(n, N), qmono(1, rat(n)));
  };
  return BaileyPair("L23.part2", Rat(0), alpha, beta);
}

inline BaileyPair L23_part3mid() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    Rat e = rat(3 * n * n, 4) - rat(3 * n, 4);
    return eval_to_order(
        [&](Order t) {
          QSeries inner = add(QSeries::one(t),
                              rd::mono(Rat(-1), rat(n + 1, 2), t));
          inner = add(inner, rd::mono(Rat(1), rat(n) + rat(1, 2), t));
          QSeries pre = mul(inner, rd::geom_ratio(rat(2 * n + 1), rat(1), t));
          return mul_monomial(pre, SignedMonomial{rd::sgn(n), e});
        },
        N.v);
  };
  auto beta = [](long n, Order N) {
    return mul_monomial(rd::beta_G_half(n, N), qmono(1, rat(n)));
  };
  return BaileyPair("L23.mid", Rat(1), alpha, beta);
}

inline BaileyPair L23_part3() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    Rat b = rat(3 * n * n, 4);
    QSeries s = QSeries::zero(N);
    s = add(s, rd::mono(rd::sgn(n), b - rat(5 * n, 4) + rat(1, 2), N));
    s = sub(s, rd::mono(rd::sgn(n), b - rat(3 * n, 4) + rat(1, 2), N));
    s = add(s, rd::mono(rd::sgn(n), b - rat(n, 4), N));
    s = add(s, rd::mono(rd::sgn(n), b + rat(n, 4), N));
    s = sub(s, rd::mono(rd::sgn(n), b + rat(3 * n, 4) + rat(1, 2), N));
    s = add(s, rd::mono(rd::sgn(n), b + rat(5 * n, 4) + rat(1, 2), N));
    return s;
  };
  auto beta = [](long n, Order N) {
    return mul_monomial(rd::beta_G_half(n, N), qmono(1, rat(2 * n)));
  };
  return BaileyPair("L23.part3", Rat(0), alpha, beta);
}

inline BaileyPair L24_part1() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    long m = n / 2;
    return eval_to_order(
        [&](Order t) {
          if (n % 2 == 0) {
            long mm = 3 * m * m;
            QSeries num = rd::mono(-rd::sgn(m), rat(mm - m - 1), t);
            num = add(num, rd::mono(rd::sgn(m), rat(mm + 3 * m), t));
            num = add(num, rd::mono(rd::sgn(m), rat(mm + 5 * m), t));
            num = sub(num, rd::mono(rd::sgn(m), rat(mm + 9 * m - 1), t));
            QSeries den =
                mul(sub(QSeries::one(t), rd::mono(Rat(1), rat(4 * m + 1), t)),
                    sub(QSeries::one(t), rd::mono(Rat(1), rat(4 * m - 1), t)));
            QSeries res = mul(num, invert(den, t));
            return mul(res,
                       sub(QSeries::one(t), rd::mono(Rat(1), rat(1), t)));
          }
          long mm = 3 * m * m;
          QSeries num = rd::mono(-rd::sgn(m), rat(mm + 5 * m), t);
          num = add(num, rd::mono(rd::sgn(m), rat(mm + 9 * m + 2), t));
          QSeries den =
              mul(sub(QSeries::one(t), rd::mono(Rat(1), rat(4 * m + 3), t)),
                  sub(QSeries::one(t), rd::mono(Rat(1), rat(4 * m + 1), t)));
          QSeries res = mul(num, invert(den, t));
          return mul(res, sub(QSeries::one(t), rd::mono(Rat(1), rat(2), t)));
        },
        N.v);
  };
  auto beta = [](long n, Order N) {
    return mul_monomial(rd::beta_C_3(n, N), qmono(1, rat(2 * n)));
  };
  return BaileyPair("L24.part1", Rat(0), alpha, beta);
}

inline BaileyPair L24_part2() {
  auto alpha = [](long n, Order N) {
    if (n == 0) return QSeries::one(N);
    long m = n / 2;
    QSeries s = QSeries::zero(N);
    if (n % 2 == 0) {
      long mm = 3 * m * m;
      s = sub(s, rd::mono(rd::sgn(m), rat(mm - m - 1), N));
      s = add(s, rd::mono(rd::sgn(m), rat(mm + m - 1), N));
      s = add(s, rd::mono(rd::sgn(m), rat(mm + 3 * m), N));
    } else {
      long mm = 3 * m * m;
      s = sub(s, rd::mono(rd::sgn(m), rat(mm + 3 * m), N));
      s = sub(s, rd::mono(rd::sgn(m), rat(mm + 5 * m + 1), N));
      s = add(s, rd::mono(rd::sgn(m), rat(mm + 7 * m + 3), N));
    }
    return s;
  };
  auto beta = [](long n, Order N) {
    return mul_monomial(rd::beta_C_3(n, N), qmono(1, rat(2 * n)));
  };
  return BaileyPair("L24.part2", Rat(1), alpha, beta);
}

}  // namespace bailey_pairs

// The twenty registry pairs in paper-label order.
inline const std::vector<BaileyPair>& bailey_registry() {
  static const std::vector<BaileyPair> reg = [] {
    using namespace bailey_pairs;
    std::vector<BaileyPair> v;
    v.push_back(G1());
    v.push_back(G1s());
    v.push_back(G2());
    v.push_back(G3());
    v.push_back(G4());
    v.push_back(G5());
    v.push_back(G4s());
    v.push_back(C1());
    v.push_back(C3());
    v.push_back(C4());
    v.push_back(C5());
    v.push_back(C6());
    v.push_back(C7());
    v.push_back(C4s());
    v.push_back(C7s());
    v.push_back(G41new());
    v.push_back(L22());
    v.push_back(L23());
    v.push_back(L24());
    v.push_back(L26());
    return v;
  }();
  return reg;
}

inline const BaileyPair& bailey_pair(const std::string& name) {
  for (const auto& p : bailey_registry())
    if (p.name() == name) return p;
  throw domain_error("unknown Bailey pair: " + name);
}

}  // namespace qnahm
