#pragma once

#include <map>

#include "qnahm/series.hpp"

namespace qnahm {

// Polynomial in x (degrees 0..x_order) with QSeries coefficients.
// Coefficients all share the same validity order in q.
class BiSeries {
 public:
  BiSeries() = default;
  BiSeries(long x_order, Order q_order)
      : m_(x_order), q_order_(q_order),
        cx_(static_cast<size_t>(x_order + 1), QSeries::zero(q_order)) {
    if (x_order < 0) throw domain_error("BiSeries: negative x order");
  }

  long x_order() const { return m_; }
  const Order& q_order() const { return q_order_; }
  const QSeries& coeff_x(long m) const { return cx_.at(m); }

  void set_coeff_x(long m, QSeries s) {
    cx_.at(m) = s.truncated(q_order_);
  }
  void add_coeff_x(long m, const QSeries& s) {
    if (m < 0 || m > m_) return;
    cx_[m] = add(cx_[m], s).truncated(q_order_);
  }

  BiSeries truncated(long x_order, Order q_order) const {
    BiSeries r(std::min(x_order, m_), min(q_order, q_order_));
    for (long m = 0; m <= r.m_; ++m) r.set_coeff_x(m, cx_[m]);
    return r;
  }

 private:
  long m_ = 0;
  Order q_order_ = Order::at(0);
  std::vector<QSeries> cx_;
};

inline BiSeries add(const BiSeries& a, const BiSeries& b) {
  BiSeries r(std::min(a.x_order(), b.x_order()),
             min(a.q_order(), b.q_order()));
  for (long m = 0; m <= r.x_order(); ++m)
    r.set_coeff_x(m, add(a.coeff_x(m), b.coeff_x(m)));
  return r;
}

inline BiSeries sub(const BiSeries& a, const BiSeries& b) {
  BiSeries r(std::min(a.x_order(), b.x_order()),
             min(a.q_order(), b.q_order()));
  for (long m = 0; m <= r.x_order(); ++m)
    r.set_coeff_x(m, sub(a.coeff_x(m), b.coeff_x(m)));
  return r;
}

inline BiSeries mul(const BiSeries& a, const BiSeries& b) {
  // q-order of the product: the min-exponent rule applied over the x-slices
  Rat amin(0), bmin(0);
  bool afound = false, bfound = false;
  for (long m = 0; m <= a.x_order(); ++m)
    if (!a.coeff_x(m).is_zero()) {
      Rat e = a.coeff_x(m).min_exp();
      amin = afound ? std::min(amin, e) : e;
      afound = true;
    }
  for (long m = 0; m <= b.x_order(); ++m)
    if (!b.coeff_x(m).is_zero()) {
      Rat e = b.coeff_x(m).min_exp();
      bmin = bfound ? std::min(bmin, e) : e;
      bfound = true;
    }
  Order n = min(a.q_order() + (bfound ? bmin : Rat(0)),
                b.q_order() + (afound ? amin : Rat(0)));
  BiSeries r(std::min(a.x_order(), b.x_order()), n);
  for (long i = 0; i <= a.x_order(); ++i) {
    if (a.coeff_x(i).is_zero()) continue;
    for (long j = 0; i + j <= r.x_order() && j <= b.x_order(); ++j) {
      if (b.coeff_x(j).is_zero()) continue;
      r.add_coeff_x(i + j, mul(a.coeff_x(i), b.coeff_x(j), n));
    }
  }
  return r;
}

// multiply by c*q^e
inline BiSeries mul_monomial(const BiSeries& a, const SignedMonomial& m) {
  if (m.xdeg != 0) {
    BiSeries r(a.x_order(), a.q_order() + m.exp);
    SignedMonomial qm = m;
    qm.xdeg = 0;
    for (long k = 0; k + m.xdeg <= a.x_order(); ++k)
      r.set_coeff_x(k + m.xdeg, mul_monomial(a.coeff_x(k), qm));
    return r;
  }
  BiSeries r(a.x_order(), a.q_order() + m.exp);
  for (long k = 0; k <= a.x_order(); ++k)
    r.set_coeff_x(k, mul_monomial(a.coeff_x(k), m));
  return r;
}

inline BiSeries scaled(const BiSeries& a, const Rat& c) {
  BiSeries r(a.x_order(), a.q_order());
  for (long k = 0; k <= a.x_order(); ++k) r.set_coeff_x(k, scaled(a.coeff_x(k), c));
  return r;
}

// x -> x * q^r : the x^m coefficient picks up q^{r m}
inline BiSeries subst_x_shift(const BiSeries& a, const Rat& r) {
  BiSeries out(a.x_order(), a.q_order());
  for (long m = 0; m <= a.x_order(); ++m)
    out.set_coeff_x(m, mul_monomial(a.coeff_x(m), qmono(1, r * m)));
  return out;
}

struct BiDiscrepancy {
  long xdeg = 0;
  Discrepancy q;
};

struct BiCompareResult {
  bool equal = true;
  std::optional<BiDiscrepancy> first;
};

inline BiCompareResult equal_up_to(const BiSeries& a, const BiSeries& b,
                                   long M, const Rat& N) {
  if (a.x_order() < M || b.x_order() < M)
    throw insufficient_order_error("BiSeries compare: x order too small");
  BiCompareResult res;
  for (long m = 0; m <= M; ++m) {
    auto c = equal_up_to(a.coeff_x(m), b.coeff_x(m), N);
    if (!c.equal) {
      res.equal = false;
      res.first = BiDiscrepancy{m, *c.first};
      return res;
    }
  }
  return res;
}

// Laurent polynomial in z over QSeries, keys clamped to [z_min, z_max].
// Used only by the constant-term extractor; products silently drop terms
// outside the window, so callers must pick a window wide enough that the
// dropped terms cannot flow back to z^0 below the q order (the CT driver
// double-checks by widening).
class ZSeries {
 public:
  ZSeries(long z_min, long z_max, Order q_order)
      : lo_(z_min), hi_(z_max), q_order_(q_order) {
    if (z_min > z_max) throw domain_error("ZSeries: empty z window");
  }

  long z_min() const { return lo_; }
  long z_max() const { return hi_; }
  const Order& q_order() const { return q_order_; }

  const QSeries& coeff_z(long p) const {
    static const QSeries zero = QSeries::zero(Order::infinite());
    auto it = t_.find(p);
    return it == t_.end() ? zero : it->second;
  }

  void add_coeff_z(long p, const QSeries& s) {
    if (p < lo_ || p > hi_ || s.is_zero()) return;
    auto it = t_.find(p);
    if (it == t_.end())
      t_.emplace(p, s.truncated(q_order_));
    else
      it->second = add(it->second, s).truncated(q_order_);
  }

  static ZSeries one(long z_min, long z_max, Order q_order) {
    ZSeries r(z_min, z_max, q_order);
    r.add_coeff_z(0, QSeries::one(q_order));
    return r;
  }

  // the z^0 coefficient
  QSeries ct() const { return coeff_z(0).truncated(q_order_); }

  friend ZSeries mul(const ZSeries& a, const ZSeries& b) {
    ZSeries r(std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_),
              min(a.q_order_, b.q_order_));
    for (const auto& [pa, ca] : a.t_)
      for (const auto& [pb, cb] : b.t_) {
        long p = pa + pb;
        if (p < r.lo_ || p > r.hi_) continue;
        r.add_coeff_z(p, mul(ca, cb, r.q_order_));
      }
    return r;
  }

  // multiply by (1 + mono) where mono carries a z power
  void mul_binomial(const SignedMonomial& mono) {
    std::map<long, QSeries> shifted;
    SignedMonomial qm = mono;
    qm.zdeg = 0;
    for (const auto& [p, c] : t_) {
      long np = p + mono.zdeg;
      if (np < lo_ || np > hi_) continue;
      shifted.emplace(np, mul_monomial(c, qm).truncated(q_order_));
    }
    for (const auto& [p, c] : shifted) {
      auto it = t_.find(p);
      if (it == t_.end())
        t_.emplace(p, c);
      else
        it->second = add(it->second, c).truncated(q_order_);
    }
  }

 private:
  long lo_, hi_;
  Order q_order_;
  std::map<long, QSeries> t_;
};

}  // namespace qnahm
