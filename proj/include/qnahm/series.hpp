#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qnahm/rational.hpp"

namespace qnahm {

// Validity order of a truncated series. `inf` marks exact values
// (monomials, finite products); everything else is trusted only for
// exponents <= v.
struct Order {
  bool inf = false;
  Rat v;

  static Order infinite() { return Order{true, Rat(0)}; }
  static Order at(Rat x) { return Order{false, std::move(x)}; }
  static Order at(long x) { return Order{false, Rat(x)}; }

  bool covers(const Rat& e) const { return inf || e <= v; }

  Order operator+(const Rat& e) const {
    return inf ? *this : Order::at(v + e);
  }

  friend Order min(const Order& a, const Order& b) {
    if (a.inf) return b;
    if (b.inf) return a;
    return a.v <= b.v ? a : b;
  }
  friend bool operator==(const Order& a, const Order& b) {
    return a.inf == b.inf && (a.inf || a.v == b.v);
  }
  std::string str() const { return inf ? "inf" : rat_str(v); }
};

// c * q^e  (also carries optional x^g / z^p degrees for the bivariate and
// constant-term layers; plain q-monomials leave those at zero).
struct SignedMonomial {
  Rat coeff{1};
  Rat exp{0};
  long xdeg = 0;
  long zdeg = 0;

  SignedMonomial() = default;
  SignedMonomial(Rat c, Rat e) : coeff(std::move(c)), exp(std::move(e)) {}
  SignedMonomial(long c, Rat e) : coeff(c), exp(std::move(e)) {}

  bool is_zero() const { return coeff == 0; }
  SignedMonomial pow(long n) const {
    if (n < 0) throw domain_error("monomial power must be nonnegative");
    return SignedMonomial{rat_pow(coeff, n), exp * n, xdeg * n, zdeg * n};
  }
  friend SignedMonomial operator*(const SignedMonomial& a,
                                  const SignedMonomial& b) {
    return SignedMonomial{a.coeff * b.coeff, a.exp + b.exp, a.xdeg + b.xdeg,
                          a.zdeg + b.zdeg};
  }

 private:
  SignedMonomial(Rat c, Rat e, long x, long z)
      : coeff(std::move(c)), exp(std::move(e)), xdeg(x), zdeg(z) {}
};

inline SignedMonomial qmono(Rat coeff, Rat exp) {
  return SignedMonomial{std::move(coeff), std::move(exp)};
}
inline SignedMonomial qmono(long coeff, Rat exp) {
  return SignedMonomial{Rat(coeff), std::move(exp)};
}

struct Discrepancy {
  Rat exponent;
  Rat lhs;
  Rat rhs;
};

struct CompareResult {
  bool equal = true;
  std::optional<Discrepancy> first;
};

// Truncated Laurent-Puiseux series in q over exact rationals.  Exponents
// live on the lattice (1/scale)*Z; coefficients are stored densely from
// the minimum key, trimmed at both ends.  An empty coefficient vector is
// the zero series (still carrying its validity order).
class QSeries {
 public:
  QSeries() : order_(Order::infinite()) {}

  static QSeries zero(Order n = Order::infinite()) {
    QSeries s;
    s.order_ = n;
    return s;
  }

  static QSeries one(Order n = Order::infinite()) {
    return monomial(SignedMonomial{Rat(1), Rat(0)}, n);
  }

  static QSeries monomial(const SignedMonomial& m,
                          Order n = Order::infinite()) {
    QSeries s;
    s.order_ = n;
    if (m.coeff == 0) return s;
    long den = rat_den_long(m.exp);
    s.scale_ = den;
    s.base_ = rat_num_long(m.exp);
    if (!n.covers(m.exp)) return zero(n);
    s.c_.push_back(m.coeff);
    return s;
  }

  long scale() const { return scale_; }
  const Order& order() const { return order_; }
  bool is_zero() const { return c_.empty(); }
  long size() const { return static_cast<long>(c_.size()); }

  Rat min_exp() const {
    if (is_zero()) throw domain_error("min_exp of zero series");
    return rat(base_, scale_);
  }
  Rat max_exp() const {
    if (is_zero()) throw domain_error("max_exp of zero series");
    return rat(base_ + size() - 1, scale_);
  }

  // Coefficient of q^e (zero if absent / not stored).
  Rat coeff_at(const Rat& e) const {
    Rat k = e * scale_;
    if (!rat_is_integer(k)) return Rat(0);
    long key = rat_num_long(k);
    if (key < base_ || key >= base_ + size()) return Rat(0);
    return c_[key - base_];
  }

  // Direct keyed access used by the arithmetic kernels.
  long base_key() const { return base_; }
  const Rat& coeff_key(long i) const { return c_[i]; }

  void set_order(Order n) {
    order_ = n;
    clamp_to_order();
  }

  QSeries truncated(Order n) const {
    QSeries r = *this;
    r.set_order(min(order_, n));
    return r;
  }

  // --- construction from raw data -------------------------------------
  static QSeries from_dense(long scale, long base, std::vector<Rat> coeffs,
                            Order n) {
    QSeries s;
    s.scale_ = scale;
    s.base_ = base;
    s.c_ = std::move(coeffs);
    s.order_ = n;
    s.trim();
    s.clamp_to_order();
    return s;
  }

  // --- scale handling --------------------------------------------------
  // Pre: L' a multiple of scale().
  QSeries rescaled_to(long L2) const {
    if (L2 <= 0 || L2 % scale_ != 0)
      throw incompatible_scale_error("rescale_to: " + std::to_string(L2) +
                                     " is not a multiple of scale " +
                                     std::to_string(scale_));
    if (L2 == scale_ || is_zero()) {
      QSeries r = *this;
      r.scale_ = L2;
      r.base_ = is_zero() ? 0 : base_ * (L2 / scale_);
      if (is_zero()) return r;
      long f = L2 / scale_;
      std::vector<Rat> out(static_cast<size_t>((size() - 1) * f + 1));
      for (long i = 0; i < size(); ++i) out[i * f] = c_[i];
      r.c_ = std::move(out);
      return r;
    }
    long f = L2 / scale_;
    QSeries r;
    r.scale_ = L2;
    r.base_ = base_ * f;
    r.order_ = order_;
    r.c_.assign(static_cast<size_t>((size() - 1) * f + 1), Rat(0));
    for (long i = 0; i < size(); ++i) r.c_[i * f] = c_[i];
    return r;
  }

  // Reduce scale to the minimal lattice actually used.
  QSeries normalized() const {
    if (is_zero()) {
      QSeries r = *this;
      r.scale_ = 1;
      r.base_ = 0;
      return r;
    }
    long g = std::gcd(scale_, std::abs(base_));
    for (long i = 0; i < size() && g > 1; ++i)
      if (c_[i] != 0) g = std::gcd(g, std::abs(base_ + i));
    if (g <= 1) return *this;
    QSeries r;
    r.scale_ = scale_ / g;
    r.base_ = base_ / g;
    r.order_ = order_;
    r.c_.assign(static_cast<size_t>((size() - 1) / g + 1), Rat(0));
    for (long i = 0; i < size(); ++i)
      if (c_[i] != 0) r.c_[(base_ + i) / g - r.base_] = c_[i];
    r.trim();
    return r;
  }

  // --- serialization ---------------------------------------------------
  std::vector<std::pair<std::string, std::string>> terms() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (long i = 0; i < size(); ++i)
      if (c_[i] != 0)
        out.emplace_back(rat_str(rat(base_ + i, scale_)), rat_str(c_[i]));
    return out;
  }

  std::string str(long max_terms = 12) const;

 private:
  void trim() {
    size_t lo = 0, hi = c_.size();
    while (lo < hi && c_[lo] == 0) ++lo;
    while (hi > lo && c_[hi - 1] == 0) --hi;
    if (lo == hi) {
      c_.clear();
      base_ = 0;
      scale_ = scale_ <= 0 ? 1 : scale_;
      return;
    }
    if (lo > 0) c_.erase(c_.begin(), c_.begin() + lo);
    c_.resize(hi - lo);
    base_ += static_cast<long>(lo);
  }

  void clamp_to_order() {
    if (order_.inf || is_zero()) return;
    // drop keys with key/scale > order
    Rat limit = order_.v * scale_;
    long kmax = rat_floor_long(limit);
    if (base_ > kmax) {
      c_.clear();
      base_ = 0;
      return;
    }
    long keep = kmax - base_ + 1;
    if (keep < size()) c_.resize(keep);
    trim();
  }

  long scale_ = 1;
  long base_ = 0;
  std::vector<Rat> c_;
  Order order_;
};

namespace detail {
inline void align(QSeries& a, QSeries& b) {
  long L = lcm_long(a.scale(), b.scale());
  if (a.scale() != L) a = a.rescaled_to(L);
  if (b.scale() != L) b = b.rescaled_to(L);
}
}  // namespace detail

inline QSeries add(const QSeries& s1, const QSeries& s2) {
  QSeries a = s1, b = s2;
  detail::align(a, b);
  Order n = min(a.order(), b.order());
  if (a.is_zero()) {
    QSeries r = b;
    r.set_order(n);
    return r;
  }
  if (b.is_zero()) {
    QSeries r = a;
    r.set_order(n);
    return r;
  }
  long base = std::min(a.base_key(), b.base_key());
  long top = std::max(a.base_key() + a.size(), b.base_key() + b.size());
  std::vector<Rat> out(static_cast<size_t>(top - base));
  for (long i = 0; i < a.size(); ++i) out[a.base_key() - base + i] = a.coeff_key(i);
  for (long i = 0; i < b.size(); ++i) out[b.base_key() - base + i] += b.coeff_key(i);
  return QSeries::from_dense(a.scale(), base, std::move(out), n);
}

inline QSeries negated(const QSeries& s) {
  if (s.is_zero()) return s;
  std::vector<Rat> out(static_cast<size_t>(s.size()));
  for (long i = 0; i < s.size(); ++i) out[i] = -s.coeff_key(i);
  return QSeries::from_dense(s.scale(), s.base_key(), std::move(out), s.order());
}

inline QSeries sub(const QSeries& s1, const QSeries& s2) {
  return add(s1, negated(s2));
}

inline QSeries scaled(const QSeries& s, const Rat& c) {
  if (c == 0) return QSeries::zero(s.order());
  if (s.is_zero()) return s;
  std::vector<Rat> out(static_cast<size_t>(s.size()));
  for (long i = 0; i < s.size(); ++i) out[i] = s.coeff_key(i) * c;
  return QSeries::from_dense(s.scale(), s.base_key(), std::move(out), s.order());
}

// Multiply by c*q^e (exact shift; order shifts with it).
inline QSeries mul_monomial(const QSeries& s, const SignedMonomial& m) {
  if (m.coeff == 0) return QSeries::zero(s.order() + m.exp);
  long L = lcm_long(s.scale(), rat_den_long(m.exp));
  QSeries a = s.rescaled_to(L);
  Rat keyshift = m.exp * L;
  long shift = rat_num_long(keyshift);
  if (a.is_zero()) return QSeries::zero(a.order() + m.exp);
  std::vector<Rat> out(static_cast<size_t>(a.size()));
  for (long i = 0; i < a.size(); ++i) out[i] = a.coeff_key(i) * m.coeff;
  return QSeries::from_dense(L, a.base_key() + shift, std::move(out),
                             a.order() + m.exp);
}

// Cauchy product, truncated.  Optional cap tightens the result order
// (used by the lattice evaluators to keep high-shift terms cheap).
inline QSeries mul(const QSeries& s1, const QSeries& s2,
                   std::optional<Order> cap = std::nullopt) {
  // A zero operand keeps only order information.
  if (s1.is_zero() || s2.is_zero()) {
    Order n = Order::infinite();
    if (s1.is_zero() && s2.is_zero())
      n = (s1.order().inf || s2.order().inf)
              ? min(s1.order(), s2.order())
              : Order::at(s1.order().v + s2.order().v);
    else if (s1.is_zero())
      n = s1.order() + s2.min_exp();
    else
      n = s2.order() + s1.min_exp();
    if (cap) n = min(n, *cap);
    return QSeries::zero(n);
  }
  QSeries a = s1, b = s2;
  detail::align(a, b);
  Order n = min(a.order() + b.min_exp(), b.order() + a.min_exp());
  if (cap) n = min(n, *cap);
  long L = a.scale();
  long base = a.base_key() + b.base_key();
  long top;  // one past the last key we keep
  if (n.inf) {
    top = base + a.size() + b.size() - 1;
  } else {
    long kmax = rat_floor_long(n.v * L);
    if (kmax < base) return QSeries::zero(n);
    top = std::min(base + a.size() + b.size() - 1, kmax + 1);
  }
  std::vector<Rat> out(static_cast<size_t>(top - base));
  mpq_t tmp;
  mpq_init(tmp);
  for (long i = 0; i < a.size(); ++i) {
    const Rat& ai = a.coeff_key(i);
    if (ai == 0) continue;
    long jmax = std::min<long>(b.size(), top - base - i);
    for (long j = 0; j < jmax; ++j) {
      const Rat& bj = b.coeff_key(j);
      if (bj == 0) continue;
      mpq_mul(tmp, ai.get_mpq_t(), bj.get_mpq_t());
      mpq_add(out[i + j].get_mpq_t(), out[i + j].get_mpq_t(), tmp);
    }
  }
  mpq_clear(tmp);
  return QSeries::from_dense(L, base, std::move(out), n);
}

// Reciprocal.  The leading monomial c*q^e is factored out and the unit
// part inverted by the usual quadratic recurrence.  Result is valid to
// order N - 2e for input order N; exact inputs need an explicit target.
inline QSeries invert(const QSeries& s,
                      std::optional<Order> target = std::nullopt) {
  if (s.is_zero()) throw non_invertible_error("invert: zero series");
  Order n = s.order();
  if (target) n = min(n, *target);
  if (n.inf)
    throw non_invertible_error(
        "invert: exact series needs an explicit truncation order");
  Rat e = s.min_exp();
  const Rat& c0 = s.coeff_key(0);
  // relative length: unit part of s known to exponent n.v - e
  Rat rel = n.v - e;
  long L = s.scale();
  long m = rat_floor_long(rel * L);  // keys 0..m of the unit part
  if (m < 0) m = 0;
  std::vector<Rat> u(static_cast<size_t>(m + 1));  // unit part coefficients
  for (long i = 0; i <= m && i < s.size(); ++i) u[i] = s.coeff_key(i) / c0;
  std::vector<Rat> v(static_cast<size_t>(m + 1));
  v[0] = 1;
  mpq_t tmp;
  mpq_init(tmp);
  for (long k = 1; k <= m; ++k) {
    Rat acc(0);
    for (long j = 1; j <= k; ++j) {
      if (u[j] == 0 || v[k - j] == 0) continue;
      mpq_mul(tmp, u[j].get_mpq_t(), v[k - j].get_mpq_t());
      mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), tmp);
    }
    v[k] = -acc;
  }
  mpq_clear(tmp);
  Order out_order = Order::at(n.v - 2 * e);
  QSeries unit_inv = QSeries::from_dense(L, 0, std::move(v), Order::at(rel));
  return mul_monomial(unit_inv, qmono(Rat(1) / c0, -e)).truncated(out_order);
}

// q -> q^m for rational m > 0.
inline QSeries substitute_power(const QSeries& s, const Rat& m) {
  if (m <= 0) throw domain_error("substitute_power: exponent must be > 0");
  Order n = s.order().inf ? s.order() : Order::at(s.order().v * m);
  if (s.is_zero()) return QSeries::zero(n);
  long p = rat_num_long(m), r = rat_den_long(m);
  long L = s.scale();
  long g = std::gcd(p, L * r);
  long L2 = L * r / g;
  long f = p / g;
  std::vector<Rat> out(static_cast<size_t>((s.size() - 1) * f + 1));
  for (long i = 0; i < s.size(); ++i) out[i * f] = s.coeff_key(i);
  return QSeries::from_dense(L2, s.base_key() * f, std::move(out), n);
}

// q -> -q on integer-exponent series.
inline QSeries substitute_signed(const QSeries& s) {
  QSeries a = s.normalized();
  if (a.is_zero()) return a;
  if (a.scale() != 1)
    throw unsupported_substitution_error(
        "substitute_signed: series has fractional exponents");
  std::vector<Rat> out(static_cast<size_t>(a.size()));
  for (long i = 0; i < a.size(); ++i) {
    long key = a.base_key() + i;
    out[i] = (key % 2 == 0) ? a.coeff_key(i) : -a.coeff_key(i);
  }
  return QSeries::from_dense(1, a.base_key(), std::move(out), a.order());
}

// (a; nome)_n = prod_{k<n} (1 - a*nome^k), truncated at N.
inline QSeries pochhammer_finite(const SignedMonomial& a,
                                 const SignedMonomial& nome, long n, Order N) {
  if (n < 0) throw domain_error("pochhammer_finite: negative length");
  QSeries res = QSeries::one(N);
  for (long k = 0; k < n; ++k) {
    SignedMonomial t = a * nome.pow(k);
    if (!N.inf && t.exp > N.v && nome.exp >= 0) break;  // factors only grow
    if (!N.inf && t.exp > N.v) continue;
    res = sub(res, mul_monomial(res, t)).truncated(N);
  }
  return res;
}

// (a; nome)_infinity; requires the nome exponent to be positive.
inline QSeries pochhammer_infinite(const SignedMonomial& a,
                                   const SignedMonomial& nome, Order N) {
  if (nome.exp <= 0)
    throw divergent_product_error(
        "pochhammer_infinite: nome exponent must be positive");
  if (N.inf)
    throw domain_error("pochhammer_infinite: needs a finite truncation order");
  QSeries res = QSeries::one(N);
  for (long k = 0;; ++k) {
    SignedMonomial t = a * nome.pow(k);
    if (t.exp > N.v) break;
    res = sub(res, mul_monomial(res, t)).truncated(N);
  }
  return res;
}

// Coefficientwise comparison for all exponents <= N.
// Pre: both orders cover N.
inline CompareResult equal_up_to(const QSeries& s1, const QSeries& s2,
                                 const Rat& N) {
  if (!s1.order().covers(N) || !s2.order().covers(N))
    throw insufficient_order_error(
        "equal_up_to: operand order below comparison order " + rat_str(N));
  QSeries a = s1, b = s2;
  detail::align(a, b);
  long L = a.scale();
  long kmax = rat_floor_long(N * L);
  long lo = std::min(a.is_zero() ? kmax + 1 : a.base_key(),
                     b.is_zero() ? kmax + 1 : b.base_key());
  CompareResult res;
  for (long k = lo; k <= kmax; ++k) {
    Rat ca = (!a.is_zero() && k >= a.base_key() && k < a.base_key() + a.size())
                 ? a.coeff_key(k - a.base_key())
                 : Rat(0);
    Rat cb = (!b.is_zero() && k >= b.base_key() && k < b.base_key() + b.size())
                 ? b.coeff_key(k - b.base_key())
                 : Rat(0);
    if (ca != cb) {
      res.equal = false;
      res.first = Discrepancy{rat(k, L), ca, cb};
      return res;
    }
  }
  return res;
}

inline std::string QSeries::str(long max_terms) const {
  if (is_zero()) return "0 + O(q^" + order_.str() + ")";
  std::string out;
  long shown = 0;
  for (long i = 0; i < size() && shown < max_terms; ++i) {
    if (c_[i] == 0) continue;
    Rat e = rat(base_ + i, scale_);
    if (!out.empty()) out += " + ";
    out += rat_str(c_[i]);
    if (e != 0) out += "*q^" + (rat_is_integer(e) ? rat_str(e) : "(" + rat_str(e) + ")");
    ++shown;
  }
  if (shown == max_terms) out += " + ...";
  out += " + O(q^" + order_.str() + ")";
  return out;
}

}  // namespace qnahm
