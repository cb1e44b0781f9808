#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "qnahm/biseries.hpp"
#include "qnahm/series.hpp"

namespace qnahm {

using RatMat = std::vector<std::vector<Rat>>;
using RatVec = std::vector<Rat>;

namespace linalg {

inline RatMat mat_mul_diag(const RatMat& a, const std::vector<long>& d) {
  RatMat r = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) r[i][j] = a[i][j] * d[j];
  return r;
}

inline bool is_symmetric(const RatMat& m) {
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = i + 1; j < m.size(); ++j)
      if (m[i][j] != m[j][i]) return false;
  return true;
}

// Leading principal minor determinants, exact.
inline RatVec leading_minors(const RatMat& m) {
  size_t r = m.size();
  RatVec out;
  for (size_t k = 1; k <= r; ++k) {
    RatMat sub(k, RatVec(k));
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) sub[i][j] = m[i][j];
    // Gaussian elimination with exact pivots
    Rat det(1);
    bool zero = false;
    for (size_t col = 0; col < k && !zero; ++col) {
      size_t piv = col;
      while (piv < k && sub[piv][col] == 0) ++piv;
      if (piv == k) {
        zero = true;
        break;
      }
      if (piv != col) {
        std::swap(sub[piv], sub[col]);
        det = -det;
      }
      det *= sub[col][col];
      for (size_t row = col + 1; row < k; ++row) {
        if (sub[row][col] == 0) continue;
        Rat f = sub[row][col] / sub[col][col];
        for (size_t j = col; j < k; ++j) sub[row][j] -= f * sub[col][j];
      }
    }
    out.push_back(zero ? Rat(0) : det);
  }
  return out;
}

inline RatMat inverse(const RatMat& m) {
  size_t r = m.size();
  RatMat a = m;
  RatMat inv(r, RatVec(r, Rat(0)));
  for (size_t i = 0; i < r; ++i) inv[i][i] = 1;
  for (size_t col = 0; col < r; ++col) {
    size_t piv = col;
    while (piv < r && a[piv][col] == 0) ++piv;
    if (piv == r) throw domain_error("matrix inverse: singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Rat p = a[col][col];
    for (size_t j = 0; j < r; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (size_t row = 0; row < r; ++row) {
      if (row == col || a[row][col] == 0) continue;
      Rat f = a[row][col];
      for (size_t j = 0; j < r; ++j) {
        a[row][j] -= f * a[col][j];
        inv[row][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

// Smallest eigenvalue estimate of a symmetric matrix (double precision,
// Jacobi rotations).  Only feeds the certified rational bound.
inline double min_eigenvalue_estimate(const RatMat& m) {
  size_t r = m.size();
  std::vector<std::vector<double>> a(r, std::vector<double>(r));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) a[i][j] = m[i][j].get_d();
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0;
    for (size_t i = 0; i < r; ++i)
      for (size_t j = i + 1; j < r; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-24) break;
    for (size_t p = 0; p < r; ++p)
      for (size_t q = p + 1; q < r; ++q) {
        if (std::abs(a[p][q]) < 1e-18) continue;
        double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (size_t k = 0; k < r; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (size_t k = 0; k < r; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  double mn = a[0][0];
  for (size_t i = 1; i < r; ++i) mn = std::min(mn, a[i][i]);
  return mn;
}

}  // namespace linalg

struct ValidationReport {
  bool ok = true;
  bool symmetric = true;
  int bad_minor = -1;  // 1-based index of the first nonpositive minor
  std::string message = "valid";
};

// Generalized Nahm quadruple (A, b, c, d); AD = A*diag(d) must be
// symmetric positive definite for undecorated sums.
struct NahmQuadruple {
  RatMat A;
  RatVec b;
  Rat c{0};
  std::vector<long> d;

  long rank() const { return static_cast<long>(d.size()); }

  RatMat AD() const { return linalg::mat_mul_diag(A, d); }

  ValidationReport validate() const {
    ValidationReport rep;
    if (A.size() != d.size() || b.size() != d.size()) {
      rep.ok = false;
      rep.message = "dimension mismatch";
      return rep;
    }
    for (long x : d)
      if (x <= 0) {
        rep.ok = false;
        rep.message = "symmetrizer entries must be positive";
        return rep;
      }
    RatMat ad = AD();
    if (!linalg::is_symmetric(ad)) {
      rep.ok = false;
      rep.symmetric = false;
      rep.message = "AD is not symmetric";
      return rep;
    }
    RatVec minors = linalg::leading_minors(ad);
    for (size_t k = 0; k < minors.size(); ++k)
      if (minors[k] <= 0) {
        rep.ok = false;
        rep.bad_minor = static_cast<int>(k + 1);
        rep.message = "leading minor " + std::to_string(k + 1) +
                      " is not positive (" + rat_str(minors[k]) + ")";
        return rep;
      }
    return rep;
  }
};

enum class Parity : int8_t { any = -1, even = 0, odd = 1 };

struct SumDecoration {
  std::vector<SignedMonomial> weights;  // per-index u_i, empty = all 1
  std::vector<Parity> parity;           // empty = unrestricted
  std::vector<long> x_grading;          // empty = univariate

  bool graded() const { return !x_grading.empty(); }
};

// The dual quadruple: A* = A^{-1}, b* = A^{-1} b,
// c* = 1/2 b^T (AD)^{-1} b - tr(D)/24 - c, d* = d.
inline NahmQuadruple dual(const NahmQuadruple& nq) {
  NahmQuadruple out;
  out.A = linalg::inverse(nq.A);
  long r = nq.rank();
  out.b.assign(r, Rat(0));
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < r; ++j) out.b[i] += out.A[i][j] * nq.b[j];
  RatMat adInv = linalg::inverse(nq.AD());
  Rat quad(0);
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < r; ++j) quad += nq.b[i] * adInv[i][j] * nq.b[j];
  Rat trD(0);
  for (long x : nq.d) trD += x;
  out.c = quad / 2 - trD / 24 - nq.c;
  out.d = nq.d;
  return out;
}

namespace detail {

// Rational lambda with AD - lambda*I exactly positive definite; starts
// from a float eigenvalue estimate and halves until the Sylvester check
// passes.
inline Rat certify_lambda(const RatMat& ad) {
  double est = linalg::min_eigenvalue_estimate(ad);
  if (!(est > 0)) throw bound_certificate_error("lambda estimate not positive");
  double start = est * 0.9;
  long den = 1 << 20;
  Rat lam(static_cast<long>(std::floor(start * den)), den);
  lam.canonicalize();
  for (int tries = 0; tries < 80; ++tries) {
    if (lam > 0) {
      RatMat shifted = ad;
      for (size_t i = 0; i < ad.size(); ++i) shifted[i][i] -= lam;
      RatVec minors = linalg::leading_minors(shifted);
      bool ok = true;
      for (const Rat& m : minors)
        if (m <= 0) {
          ok = false;
          break;
        }
      if (ok) return lam;
    }
    lam /= 2;
    if (lam < rat(1, 1l << 40)) break;
  }
  throw bound_certificate_error("could not certify a positive lambda for AD");
}

struct LatticePoint {
  std::vector<long> n;
  Rat expo;
  long xdeg = 0;
  Rat coeff;
};

// Inverse Pochhammer ladder: T[m] = 1/(q^d;q^d)_m to absolute order N,
// built by the geometric-prefix recurrence.
inline std::vector<QSeries> inv_poch_table(long d, long max_len, long Nint) {
  std::vector<QSeries> T;
  T.reserve(max_len + 1);
  std::vector<Rat> cur(static_cast<size_t>(Nint + 1), Rat(0));
  cur[0] = 1;
  T.push_back(QSeries::from_dense(1, 0, cur, Order::at(Nint)));
  for (long m = 1; m <= max_len; ++m) {
    long step = d * m;
    if (step <= Nint)
      for (long k = step; k <= Nint; ++k) cur[k] += cur[k - step];
    T.push_back(QSeries::from_dense(1, 0, cur, Order::at(Nint)));
  }
  return T;
}

}  // namespace detail

// Exact evaluation of the decorated generalized Nahm sum
//   sum_n q^{1/2 n^T AD n + n^T b + c} * prod u_i^{n_i}
//        / prod (q^{d_i}; q^{d_i})_{n_i}
// over n >= 0 with optional per-index parity restriction and x-grading.
// Enumeration is bounded by a certified rational lambda with AD - lambda I
// positive definite (or by the x-degree cap when every index is graded),
// plus a boundary-shell assertion.
class NahmEvaluator {
 public:
  NahmEvaluator(const NahmQuadruple& nq, const SumDecoration& dec)
      : nq_(nq), dec_(dec), r_(nq.rank()), ad_(nq.AD()) {
    if (!linalg::is_symmetric(ad_))
      throw domain_error("nahm_sum: AD is not symmetric");
    beff_ = nq_.b;
    wcoeff_.assign(r_, Rat(1));
    if (!dec_.weights.empty()) {
      if (static_cast<long>(dec_.weights.size()) != r_)
        throw domain_error("nahm_sum: weight arity mismatch");
      for (long i = 0; i < r_; ++i) {
        beff_[i] += dec_.weights[i].exp;
        wcoeff_[i] = dec_.weights[i].coeff;
      }
    }
    if (!dec_.parity.empty() &&
        static_cast<long>(dec_.parity.size()) != r_)
      throw domain_error("nahm_sum: parity arity mismatch");
    if (dec_.graded()) {
      if (static_cast<long>(dec_.x_grading.size()) != r_)
        throw domain_error("nahm_sum: grading arity mismatch");
      for (long g : dec_.x_grading)
        if (g < 0) throw domain_error("nahm_sum: grading must be >= 0");
    }
    bool all_graded = dec_.graded();
    if (dec_.graded())
      for (long g : dec_.x_grading) all_graded = all_graded && g >= 1;
    needs_pd_ = !all_graded;
    if (needs_pd_) {
      auto rep = nq_.validate();
      if (!rep.ok) throw domain_error("nahm_sum: invalid quadruple: " + rep.message);
    }
  }

  QSeries sum_q(Order N) {
    if (N.inf) throw domain_error("nahm_sum: needs a finite order");
    auto acc = run(N, -1);
    return std::move(acc.rows[0]);
  }

  BiSeries sum_x(Order N, long M) {
    if (N.inf) throw domain_error("nahm_sum: needs a finite order");
    if (!dec_.graded()) throw domain_error("nahm_sum: no x-grading present");
    auto acc = run(N, M);
    BiSeries out(M, N);
    for (long m = 0; m <= M; ++m) out.set_coeff_x(m, std::move(acc.rows[m]));
    return out;
  }

 private:
  Rat exponent_at(const std::vector<long>& n) const {
    Rat e = nq_.c;
    for (long i = 0; i < r_; ++i) {
      if (n[i] == 0) continue;
      e += beff_[i] * n[i];
      e += ad_[i][i] * n[i] * n[i] / 2;
      for (long j = i + 1; j < r_; ++j) e += ad_[i][j] * n[i] * n[j];
    }
    return e;
  }

  static long key_of(const Rat& e, long S) {
    Rat k = e * S;
    return rat_num_long(k);
  }

  static long exponent_scale(const std::vector<detail::LatticePoint>& pts) {
    long S = 1;
    for (const auto& p : pts) S = lcm_long(S, rat_den_long(p.expo));
    return S;
  }

  std::vector<long> box_bounds(const Rat& N, long M) const {
    std::vector<long> bound(r_, -1);
    if (dec_.graded() && M >= 0) {
      for (long i = 0; i < r_; ++i)
        if (dec_.x_grading[i] >= 1) bound[i] = M / dec_.x_grading[i];
    }
    if (needs_pd_) {
      Rat lam = detail::certify_lambda(ad_);
      Rat bneg(0);
      for (long i = 0; i < r_; ++i)
        if (beff_[i] < 0) bneg -= beff_[i];
      long m = 0;
      Rat vertex = bneg / lam;
      while (true) {
        Rat val = lam * m * m / 2 - bneg * m + nq_.c;
        if (val > N && Rat(m) >= vertex) break;
        ++m;
        if (m > 2000000)
          throw bound_certificate_error("nahm_sum: enumeration radius blew up");
      }
      long R = m == 0 ? 0 : m - 1;
      for (long i = 0; i < r_; ++i)
        bound[i] = bound[i] < 0 ? R : std::min(bound[i], R);
      radius_ = R;
    }
    for (long i = 0; i < r_; ++i)
      if (bound[i] < 0)
        throw bound_certificate_error("nahm_sum: unbounded index " +
                                      std::to_string(i));
    return bound;
  }

  bool parity_ok(long i, long v) const {
    if (dec_.parity.empty() || dec_.parity[i] == Parity::any) return true;
    return (v % 2) == static_cast<long>(dec_.parity[i]);
  }

  std::vector<detail::LatticePoint> collect(const Rat& N, long M) const {
    auto bound = box_bounds(N, M);
    std::vector<detail::LatticePoint> pts;
    std::vector<long> n(r_, 0);
    while (true) {
      bool ok = true;
      for (long i = 0; i < r_ && ok; ++i) ok = parity_ok(i, n[i]);
      long xdeg = 0;
      if (ok && dec_.graded()) {
        for (long i = 0; i < r_; ++i) xdeg += dec_.x_grading[i] * n[i];
        ok = xdeg <= M;
      }
      if (ok) {
        Rat e = exponent_at(n);
        if (e <= N) {
          detail::LatticePoint p;
          p.n = n;
          p.expo = e;
          p.xdeg = xdeg;
          p.coeff = Rat(1);
          for (long i = 0; i < r_; ++i)
            if (wcoeff_[i] != 1) p.coeff *= rat_pow(wcoeff_[i], n[i]);
          pts.push_back(std::move(p));
        }
      }
      long i = 0;
      while (i < r_ && n[i] == bound[i]) n[i++] = 0;
      if (i == r_) break;
      ++n[i];
    }
    if (needs_pd_) shell_check(bound, N, M);
    return pts;
  }

  // Boundary shell: every point one step outside the box must exceed N.
  void shell_check(const std::vector<long>& bound, const Rat& N, long M) const {
    long R = radius_;
    std::vector<long> n(r_, 0);
    std::vector<long> shell_bound = bound;
    for (long i = 0; i < r_; ++i)
      if (bound[i] == R) shell_bound[i] = R + 1;
    while (true) {
      bool on_shell = false;
      for (long i = 0; i < r_; ++i)
        if (n[i] == R + 1 && bound[i] == R) on_shell = true;
      if (on_shell) {
        bool ok = true;
        for (long i = 0; i < r_ && ok; ++i) ok = parity_ok(i, n[i]);
        if (ok && dec_.graded() && M >= 0) {
          long xdeg = 0;
          for (long i = 0; i < r_; ++i) xdeg += dec_.x_grading[i] * n[i];
          ok = xdeg <= M;
        }
        if (ok && exponent_at(n) <= N)
          throw bound_certificate_error(
              "nahm_sum: shell point below order; bound certificate violated");
      }
      long i = 0;
      while (i < r_ && n[i] == shell_bound[i]) n[i++] = 0;
      if (i == r_) break;
      ++n[i];
    }
  }

  struct Accumulated {
    std::vector<QSeries> rows;  // one per x degree; single row if univariate
  };

  Accumulated run(Order N, long M) const {
    auto pts = collect(N.v, M);
    long S = exponent_scale(pts);
    long rows = M < 0 ? 1 : M + 1;
    long lo = 0;
    for (const auto& p : pts) lo = std::min(lo, key_of(p.expo, S));
    long hi = std::max(rat_floor_long(N.v * S), lo);
    std::vector<std::vector<Rat>> acc(
        static_cast<size_t>(rows),
        std::vector<Rat>(static_cast<size_t>(hi - lo + 1), Rat(0)));

    std::vector<long> maxlen(r_, 0);
    Rat emin(0);
    for (const auto& p : pts) {
      for (long i = 0; i < r_; ++i) maxlen[i] = std::max(maxlen[i], p.n[i]);
      emin = std::min(emin, p.expo);
    }
    long Nint = rat_ceil_long(N.v - emin) + 1;
    std::vector<std::vector<QSeries>> T;
    for (long i = 0; i < r_; ++i)
      T.push_back(detail::inv_poch_table(nq_.d[i], maxlen[i], Nint));

    mpq_t tmp;
    mpq_init(tmp);
    for (const auto& p : pts) {
      Order cap = Order::at(N.v - p.expo);
      QSeries prod = T[0][p.n[0]].truncated(cap);
      for (long i = 1; i < r_; ++i) prod = mul(prod, T[i][p.n[i]], cap);
      if (prod.is_zero()) continue;
      long shift = key_of(p.expo, S);
      auto& row = acc[M < 0 ? 0 : p.xdeg];
      for (long k = 0; k < prod.size(); ++k) {
        const Rat& cv = prod.coeff_key(k);
        if (cv == 0) continue;
        long key = (prod.base_key() + k) * S + shift - lo;
        if (p.coeff == 1) {
          mpq_add(row[key].get_mpq_t(), row[key].get_mpq_t(), cv.get_mpq_t());
        } else {
          mpq_mul(tmp, cv.get_mpq_t(), p.coeff.get_mpq_t());
          mpq_add(row[key].get_mpq_t(), row[key].get_mpq_t(), tmp);
        }
      }
    }
    mpq_clear(tmp);

    Accumulated out;
    out.rows.reserve(rows);
    for (long m = 0; m < rows; ++m)
      out.rows.push_back(QSeries::from_dense(S, lo, std::move(acc[m]), N));
    return out;
  }

  NahmQuadruple nq_;
  SumDecoration dec_;
  long r_;
  RatMat ad_;
  RatVec beff_;
  RatVec wcoeff_;
  bool needs_pd_ = true;
  mutable long radius_ = 0;
};

inline QSeries nahm_sum(const NahmQuadruple& nq, const SumDecoration& dec,
                        Order N) {
  return NahmEvaluator(nq, dec).sum_q(N);
}

inline QSeries nahm_sum(const NahmQuadruple& nq, Order N) {
  return NahmEvaluator(nq, SumDecoration{}).sum_q(N);
}

inline BiSeries nahm_sum_graded(const NahmQuadruple& nq,
                                const SumDecoration& dec, Order N, long M) {
  return NahmEvaluator(nq, dec).sum_x(N, M);
}

}  // namespace qnahm
