#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "qnahm/series.hpp"

namespace qnahm {

// Re-evaluate f at a growing order until the result is valid to N.
// Order deficits (negative leading exponents, division shifts) do not
// depend on the evaluation order, so this settles in a step or two.
template <typename F>
QSeries eval_to_order(F&& f, const Rat& N, int tries = 5) {
  Rat target = N;
  for (int i = 0; i < tries; ++i) {
    QSeries s = f(Order::at(target));
    if (s.order().covers(N)) return s;
    target += N - s.order().v;
  }
  throw insufficient_order_error("eval_to_order: order deficit did not settle");
}

// A Bailey pair relative to a = q^{a_exp}: generators n -> alpha_n, beta_n
// as truncated series.  alpha(n < 0) = 0.  Handles share a memo cache, so
// copies are cheap and transform chains reuse parent evaluations.
class BaileyPair {
 public:
  using Gen = std::function<QSeries(long, Order)>;

  BaileyPair() = default;
  BaileyPair(std::string name, Rat a_exp, Gen alpha, Gen beta)
      : impl_(std::make_shared<Impl>()) {
    impl_->name = std::move(name);
    impl_->a_exp = std::move(a_exp);
    impl_->alpha = std::move(alpha);
    impl_->beta = std::move(beta);
  }

  const std::string& name() const { return impl_->name; }
  const Rat& a_exp() const { return impl_->a_exp; }

  QSeries alpha(long n, Order N) const {
    if (n < 0) return QSeries::zero(Order::infinite());
    return cached(impl_->alpha_memo, impl_->alpha, n, N);
  }
  QSeries beta(long n, Order N) const {
    if (n < 0) return QSeries::zero(Order::infinite());
    return cached(impl_->beta_memo, impl_->beta, n, N);
  }

  BaileyPair renamed(std::string name) const {
    return BaileyPair(std::move(name), impl_->a_exp, impl_->alpha, impl_->beta);
  }

 private:
  struct Impl {
    std::string name;
    Rat a_exp;
    Gen alpha, beta;
    std::map<long, QSeries> alpha_memo, beta_memo;
    std::mutex mu;
  };

  QSeries cached(std::map<long, QSeries>& memo, const Gen& gen, long n,
                 Order N) const {
    {
      std::lock_guard<std::mutex> lock(impl_->mu);
      auto it = memo.find(n);
      if (it != memo.end() && min(it->second.order(), N) == N)
        return it->second.truncated(N);
    }
    QSeries s = gen(n, N);
    {
      std::lock_guard<std::mutex> lock(impl_->mu);
      auto it = memo.find(n);
      if (it == memo.end() || min(s.order(), it->second.order()) ==
                                  it->second.order())
        memo[n] = s;
    }
    return s;
  }

  std::shared_ptr<Impl> impl_;
};

namespace bailey_detail {

inline QSeries inv_finite(const SignedMonomial& a, const SignedMonomial& nome,
                          long n, Order N) {
  return invert(pochhammer_finite(a, nome, n, N), N);
}

inline QSeries unit_inverse(const Rat& exp, Order N) {
  // 1/(1 - q^exp) for exp != 0
  if (exp == 0) throw non_invertible_error("1/(1-q^0) is singular");
  QSeries denom = sub(QSeries::one(N), QSeries::monomial(qmono(1, exp), N));
  return invert(denom, N);
}

}  // namespace bailey_detail

// beta_n from the defining relation:
//   beta_n = sum_{k=0}^n alpha_k / ((q;q)_{n-k} (q^{1+a_exp};q)_{n+k})
inline QSeries beta_from_alpha(const BaileyPair& p, long n, Order N) {
  if (n < 0) throw domain_error("beta_from_alpha: negative index");
  return eval_to_order(
      [&](Order target) {
        QSeries sum = QSeries::zero(target);
        SignedMonomial q1 = qmono(1, rat(1));
        SignedMonomial aq = qmono(1, p.a_exp() + 1);
        for (long k = 0; k <= n; ++k) {
          QSeries t = mul(p.alpha(k, target),
                          bailey_detail::inv_finite(q1, q1, n - k, target));
          t = mul(t, bailey_detail::inv_finite(aq, q1, n + k, target));
          sum = add(sum, t);
        }
        return sum;
      },
      N.v);
}

struct BaileyFailure {
  long n;
  Rat exponent;
  Rat lhs;  // stored beta coefficient
  Rat rhs;  // beta reconstructed from alpha
};

struct BaileyReport {
  std::string pair;
  long n_max = 0;
  Rat order;
  bool ok = true;
  std::vector<BaileyFailure> failures;
};

inline BaileyReport verify_pair(const BaileyPair& p, long n_max, const Rat& N) {
  BaileyReport rep;
  rep.pair = p.name();
  rep.n_max = n_max;
  rep.order = N;
  for (long n = 0; n <= n_max; ++n) {
    QSeries stored = eval_to_order(
        [&](Order t) { return p.beta(n, t); }, N);
    QSeries rebuilt = beta_from_alpha(p, n, Order::at(N));
    auto cmp = equal_up_to(stored, rebuilt, N);
    if (!cmp.equal) {
      rep.ok = false;
      rep.failures.push_back(
          BaileyFailure{n, cmp.first->exponent, cmp.first->lhs, cmp.first->rhs});
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Transforms
// ---------------------------------------------------------------------------

// rho_1, rho_2 -> infinity limit of Bailey's lemma: stays relative to a.
inline BaileyPair transform_rho_infty(const BaileyPair& p) {
  Rat a = p.a_exp();
  auto alpha = [p, a](long n, Order N) {
    return mul_monomial(p.alpha(n, N), qmono(1, Rat(n) * n + a * n));
  };
  auto beta = [p, a](long n, Order N) {
    QSeries sum = QSeries::zero(N);
    SignedMonomial q1 = qmono(1, rat(1));
    for (long r = 0; r <= n; ++r) {
      QSeries t = mul(p.beta(r, N), bailey_detail::inv_finite(q1, q1, n - r, N));
      sum = add(sum, mul_monomial(t, qmono(1, Rat(r) * r + a * r)));
    }
    return sum;
  };
  return BaileyPair(p.name() + ">S1", a, alpha, beta);
}

// b -> infinity case of the a -> a/q reduction.
inline BaileyPair transform_reduce_binf(const BaileyPair& p) {
  Rat a = p.a_exp();
  if (a == 0)
    throw domain_error("reduce_binf: defined only for a != 1 (a_exp != 0)");
  auto alpha = [p, a](long n, Order N) {
    // (1-a) [ q^n alpha_n/(1-a q^{2n}) - q^{n-1} alpha_{n-1}/(1-a q^{2n-2}) ]
    QSeries first = mul(mul_monomial(p.alpha(n, N), qmono(1, rat(n))),
                        bailey_detail::unit_inverse(a + 2 * n, N));
    QSeries res = first;
    if (n >= 1) {
      QSeries second =
          mul(mul_monomial(p.alpha(n - 1, N), qmono(1, rat(n - 1))),
              bailey_detail::unit_inverse(a + 2 * (n - 1), N));
      res = sub(res, second);
    }
    return mul(res, sub(QSeries::one(N), QSeries::monomial(qmono(1, a), N)));
  };
  auto beta = [p](long n, Order N) {
    return mul_monomial(p.beta(n, N), qmono(1, rat(n)));
  };
  return BaileyPair(p.name() + ">reduce_binf", a - 1, alpha, beta);
}

// Finite-b case of the same reduction; b a signed monomial, b != 1.
inline BaileyPair transform_reduce_b(const BaileyPair& p,
                                     const SignedMonomial& b) {
  Rat a = p.a_exp();
  if (b.coeff == 1 && b.exp == 0)
    throw domain_error("reduce_b: b = 1 is singular");
  auto one_minus = [](const SignedMonomial& m, Order N) {
    return sub(QSeries::one(N), QSeries::monomial(m, N));
  };
  auto alpha = [p, a, b, one_minus](long n, Order N) {
    return eval_to_order(
        [&](Order t) {
          QSeries inv1mb = invert(one_minus(b, t), t);
          QSeries first =
              mul(mul(p.alpha(n, t), one_minus(b * SignedMonomial{Rat(1), rat(n)}, t)),
                  mul(inv1mb, bailey_detail::unit_inverse(a + 2 * n, t)));
          QSeries res = first;
          if (n >= 1) {
            // q^{n-1} (a q^{n-1} - b) alpha_{n-1} / ((1-b)(1-a q^{2n-2}))
            QSeries aq = QSeries::monomial(qmono(1, a + (n - 1)), t);
            QSeries diff = sub(aq, QSeries::monomial(b, t));
            QSeries second = mul(mul(p.alpha(n - 1, t), diff),
                                 mul(inv1mb, bailey_detail::unit_inverse(
                                                 a + 2 * (n - 1), t)));
            res = sub(res, mul_monomial(second, qmono(1, rat(n - 1))));
          }
          return mul(res, one_minus(SignedMonomial{Rat(1), a}, t));
        },
        N.v);
  };
  auto beta = [p, b](long n, Order N) {
    return eval_to_order(
        [&](Order t) {
          QSeries num = pochhammer_finite(b * SignedMonomial{Rat(1), rat(1)},
                                          qmono(1, rat(1)), n, t);
          QSeries den = pochhammer_finite(b, qmono(1, rat(1)), n, t);
          return mul(p.beta(n, t), mul(num, invert(den, t)));
        },
        N.v);
  };
  return BaileyPair(p.name() + ">reduce_b", a - 1, alpha, beta);
}

// b -> infinity case of the a -> aq raise.
inline BaileyPair transform_raise_binf(const BaileyPair& p) {
  Rat a = p.a_exp();
  auto alpha = [p, a](long n, Order N) {
    // (1-a q^{2n+1})/(1-a q) q^{-n} sum_{r<=n} alpha_r
    Order inner = N + rat(n);
    QSeries sum = QSeries::zero(inner);
    for (long r = 0; r <= n; ++r) sum = add(sum, p.alpha(r, inner));
    QSeries res = mul(sum, bailey_detail::unit_inverse(a + 1, inner));
    res = mul(res, sub(QSeries::one(inner),
                       QSeries::monomial(qmono(1, a + 2 * n + 1), inner)));
    return mul_monomial(res, qmono(1, rat(-n)));
  };
  auto beta = [p](long n, Order N) {
    return mul_monomial(p.beta(n, N + rat(n)), qmono(1, rat(-n)));
  };
  return BaileyPair(p.name() + ">raise_binf", a + 1, alpha, beta);
}

// b = 0 case of the raise.
inline BaileyPair transform_raise_b0(const BaileyPair& p) {
  Rat a = p.a_exp();
  auto alpha = [p, a](long n, Order N) {
    // (1-a q^{2n+1}) a^n q^{n^2}/(1-aq) sum_{r<=n} a^{-r} q^{-r^2} alpha_r
    QSeries sum = QSeries::zero(N);
    for (long r = 0; r <= n; ++r)
      sum = add(sum, mul_monomial(p.alpha(r, N), qmono(1, -Rat(r) * r - a * r)));
    QSeries res = mul(sum, bailey_detail::unit_inverse(a + 1, N));
    res = mul(res, sub(QSeries::one(N),
                       QSeries::monomial(qmono(1, a + 2 * n + 1), N)));
    return mul_monomial(res, qmono(1, Rat(n) * n + a * n));
  };
  auto beta = [p](long n, Order N) { return p.beta(n, N); };
  return BaileyPair(p.name() + ">raise_b0", a + 1, alpha, beta);
}

// Linear combination with small monomial-polynomial weights; all operands
// must share the relative parameter.
inline BaileyPair linear_combine(
    std::vector<std::pair<BaileyPair, std::vector<SignedMonomial>>> terms,
    std::string name) {
  if (terms.empty()) throw domain_error("linear_combine: no operands");
  Rat a = terms.front().first.a_exp();
  for (const auto& [q, w] : terms)
    if (q.a_exp() != a)
      throw domain_error(
          "linear_combine: operands relative to different parameters");
  auto shared = std::make_shared<decltype(terms)>(std::move(terms));
  auto combine = [shared](long n, Order N, bool use_alpha) {
    Rat pad(0);
    for (const auto& [p, ws] : *shared)
      for (const auto& w : ws)
        if (w.exp < 0 && -w.exp > pad) pad = -w.exp;
    Order inner = N + pad;
    QSeries sum = QSeries::zero(inner);
    for (const auto& [p, ws] : *shared) {
      QSeries base = use_alpha ? p.alpha(n, inner) : p.beta(n, inner);
      for (const auto& w : ws) sum = add(sum, mul_monomial(base, w));
    }
    return sum;
  };
  auto alpha = [combine](long n, Order N) { return combine(n, N, true); };
  auto beta = [combine](long n, Order N) { return combine(n, N, false); };
  return BaileyPair(std::move(name), a, alpha, beta);
}

// ---------------------------------------------------------------------------
// Sums fed by a pair
// ---------------------------------------------------------------------------

struct PairSumSides {
  QSeries lhs;
  QSeries rhs;
};

namespace bailey_detail {

// Iterate f(n) = q^{n^2 + a n} * g_n while contributions can reach N;
// defensively checks that the next two skipped terms are indeed beyond N.
template <typename Term>
QSeries sum_terms(const Rat& N, const Rat& a_exp, Term&& term, Order work) {
  QSeries sum = QSeries::zero(work);
  long n = 0;
  for (; Rat(n) * n + a_exp * n <= N + 8; ++n) sum = add(sum, term(n));
  for (int extra = 0; extra < 2; ++extra, ++n) {
    QSeries t = term(n);
    if (!t.is_zero() && t.min_exp() <= N)
      throw insufficient_order_error(
          "bailey sum: truncation window too small");
  }
  return sum;
}

}  // namespace bailey_detail

// Both sides of  sum a^n q^{n^2} beta_n = (1/(aq;q)_inf) sum a^n q^{n^2} alpha_n.
inline PairSumSides pair_sum(const BaileyPair& p, const Rat& N) {
  Order work = Order::at(N);
  Rat a = p.a_exp();
  QSeries lhs = eval_to_order(
      [&](Order t) {
        return bailey_detail::sum_terms(
            N, a,
            [&](long n) {
              return mul_monomial(p.beta(n, t), qmono(1, Rat(n) * n + a * n));
            },
            t);
      },
      N);
  QSeries rhs = eval_to_order(
      [&](Order t) {
        QSeries s = bailey_detail::sum_terms(
            N, a,
            [&](long n) {
              return mul_monomial(p.alpha(n, t), qmono(1, Rat(n) * n + a * n));
            },
            t);
        return mul(s, invert(pochhammer_infinite(qmono(1, a + 1),
                                                 qmono(1, rat(1)), t),
                             t));
      },
      N);
  return {lhs.truncated(work), rhs.truncated(work)};
}

// Both sides of the iterated form:
//   sum_n a^n q^{n^2} sum_{r<=n} a^r q^{r^2} beta_r/(q;q)_{n-r}
//     = (1/(aq;q)_inf) sum_n a^{2n} q^{2n^2} alpha_n.
inline PairSumSides pair_double_sum(const BaileyPair& p, const Rat& N) {
  Order work = Order::at(N);
  Rat a = p.a_exp();
  SignedMonomial q1 = qmono(1, rat(1));
  QSeries lhs = eval_to_order(
      [&](Order t) {
        return bailey_detail::sum_terms(
            N, a,
            [&](long n) {
              QSeries inner = QSeries::zero(t);
              for (long r = 0; r <= n; ++r) {
                QSeries x = mul(p.beta(r, t),
                                bailey_detail::inv_finite(q1, q1, n - r, t));
                inner = add(inner, mul_monomial(x, qmono(1, Rat(r) * r + a * r)));
              }
              return mul_monomial(inner, qmono(1, Rat(n) * n + a * n));
            },
            t);
      },
      N);
  QSeries rhs = eval_to_order(
      [&](Order t) {
        QSeries s = bailey_detail::sum_terms(
            N, 2 * a,
            [&](long n) {
              return mul_monomial(p.alpha(n, t),
                                  qmono(1, 2 * Rat(n) * n + 2 * a * n));
            },
            t);
        return mul(s, invert(pochhammer_infinite(qmono(1, a + 1),
                                                 qmono(1, rat(1)), t),
                             t));
      },
      N);
  return {lhs.truncated(work), rhs.truncated(work)};
}

}  // namespace qnahm
