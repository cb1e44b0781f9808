#pragma once

#include "qnahm/nahm.hpp"

namespace qnahm {

// The k = 4 Andrews q-difference system:  Q_{4,i}(x) for 1 <= i <= 4 and
// the companion family L_i(x) built from two displayed triple sums.
// x -> xq acts exactly on the lattice side as b -> b + grading.

namespace qsys_detail {

// Q_{k,i}(x): quadratic sum(N_j^2) on (n_1..n_{k-1}), linear N_i+..+N_{k-1},
// grading sum(N_j) -> t * n_t.
inline BiSeries Q_ki(long k, long i, Order N, long M) {
  long r = k - 1;
  NahmQuadruple nq;
  nq.A.assign(r, RatVec(r, Rat(0)));
  nq.b.assign(r, Rat(0));
  nq.d.assign(r, 1);
  SumDecoration dec;
  dec.x_grading.assign(r, 0);
  for (long s = 0; s < r; ++s) {
    for (long t = 0; t < r; ++t) nq.A[s][t] = 2 * std::min(s, t) + 2;
    nq.b[s] = std::max<long>(0, s + 1 - i + 1);
    dec.x_grading[s] = s + 1;
  }
  return nahm_sum_graded(nq, dec, N, M);
}

inline NahmQuadruple L_quad() {
  // (i+j)^2 + (j+k)^2 + k^2 over d = (1,2,2)
  NahmQuadruple nq;
  nq.A = {{Rat(2), Rat(1), Rat(0)},
          {Rat(2), Rat(2), Rat(1)},
          {Rat(0), Rat(1), Rat(2)}};
  nq.b = {Rat(0), Rat(0), Rat(0)};
  nq.d = {1, 2, 2};
  return nq;
}

// L-family evaluator with an extra x -> x q^{shift} twist folded into b.
inline BiSeries L_sum(const RatVec& b, const Rat& shift, Order N, long M) {
  NahmQuadruple nq = L_quad();
  SumDecoration dec;
  dec.x_grading = {1, 2, 2};
  nq.b = b;
  if (shift != 0)
    for (long t = 0; t < 3; ++t) nq.b[t] += shift * dec.x_grading[t];
  return nahm_sum_graded(nq, dec, N, M);
}

inline BiSeries L2(const Rat& shift, Order N, long M) {
  return L_sum({Rat(0), Rat(1), Rat(2)}, shift, N, M);
}
inline BiSeries L4(const Rat& shift, Order N, long M) {
  return L_sum({Rat(0), Rat(1), Rat(0)}, shift, N, M);
}
inline BiSeries L1(const Rat& shift, Order N, long M) {
  return L4(shift + 1, N, M);  // L1(x) = L4(xq)
}
inline BiSeries L3(const Rat& shift, Order N, long M) {
  // L3(x) = L2(x) + (xq)^2 L2(xq)
  BiSeries tail = L2(shift + 1, N, M);
  SignedMonomial x2q2{Rat(1), 2 * (shift + 1)};
  x2q2.xdeg = 2;
  return add(L2(shift, N, M), mul_monomial(tail, x2q2));
}

// x^p q^{p*(shift+1)} * S(x q^{...}) helper for the right sides
inline BiSeries xq_pow(const BiSeries& s, long p, const Rat& shift) {
  SignedMonomial m{Rat(1), Rat(p) * (shift + 1)};
  m.xdeg = p;
  return mul_monomial(s, m);
}

}  // namespace qsys_detail

struct QSystemCheck {
  std::string relation;
  bool pass;
  std::optional<BiDiscrepancy> discrepancy;
};

struct QSystemReport {
  bool ok = true;
  std::vector<QSystemCheck> checks;
};

// Checks the four Q-relations, the four L-relations and Q_{4,i} = L_i at
// bivariate truncation (M, N).
inline QSystemReport q_system_check(long M, const Rat& N) {
  using namespace qsys_detail;
  QSystemReport rep;
  Order work = Order::at(N + 8);
  long Mw = M + 4;
  auto record = [&](const std::string& name, const BiSeries& lhs,
                    const BiSeries& rhs) {
    auto cmp = equal_up_to(lhs, rhs, M, N);
    rep.checks.push_back(QSystemCheck{
        name, cmp.equal,
        cmp.equal ? std::nullopt : std::make_optional(*cmp.first)});
    if (!cmp.equal) rep.ok = false;
  };

  auto Q = [&](long i, Rat shift) {
    BiSeries s = Q_ki(4, i, work, Mw);
    return shift == 0 ? s : subst_x_shift(s, shift);
  };

  // Q-relations
  record("Q4.1(x) = Q4.4(xq)", Q(1, Rat(0)), Q(4, Rat(1)));
  record("Q4.2(x) - Q4.1(x) = xq Q4.3(xq)", sub(Q(2, Rat(0)), Q(1, Rat(0))),
         xq_pow(Q(3, Rat(1)), 1, Rat(0)));
  record("Q4.3(x) - Q4.2(x) = (xq)^2 Q4.2(xq)",
         sub(Q(3, Rat(0)), Q(2, Rat(0))), xq_pow(Q(2, Rat(1)), 2, Rat(0)));
  record("Q4.4(x) - Q4.3(x) = (xq)^3 Q4.1(xq)",
         sub(Q(4, Rat(0)), Q(3, Rat(0))), xq_pow(Q(1, Rat(1)), 3, Rat(0)));

  // L-relations (1 and 3 are definitions; 2 and 4 are the checks, but all
  // four displayed relations are exercised)
  record("L1(x) = L4(xq)", L1(Rat(0), work, Mw), L4(Rat(1), work, Mw));
  record("L2(x) - L1(x) = xq L3(xq)",
         sub(L2(Rat(0), work, Mw), L1(Rat(0), work, Mw)),
         xq_pow(L3(Rat(1), work, Mw), 1, Rat(0)));
  record("L3(x) = L2(x) + (xq)^2 L2(xq)", L3(Rat(0), work, Mw),
         add(L2(Rat(0), work, Mw),
             xq_pow(L2(Rat(1), work, Mw), 2, Rat(0))));
  record("L4(x) - L3(x) = (xq)^3 L1(xq)",
         sub(L4(Rat(0), work, Mw), L3(Rat(0), work, Mw)),
         xq_pow(L1(Rat(1), work, Mw), 3, Rat(0)));

  // Q = L
  for (long i = 1; i <= 4; ++i) {
    BiSeries l = i == 1   ? L1(Rat(0), work, Mw)
                 : i == 2 ? L2(Rat(0), work, Mw)
                 : i == 3 ? L3(Rat(0), work, Mw)
                          : L4(Rat(0), work, Mw);
    record("Q4." + std::to_string(i) + " = L" + std::to_string(i),
           Q(i, Rat(0)), l);
  }
  return rep;
}

}  // namespace qnahm
