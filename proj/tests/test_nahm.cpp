#include "catch_amalgamated.hpp"
#include "qnahm/nahm.hpp"

using namespace qnahm;

namespace {

RatMat mat(std::vector<std::vector<long>> rows) {
  RatMat m;
  for (auto& r : rows) {
    RatVec v;
    for (long x : r) v.push_back(Rat(x));
    m.push_back(v);
  }
  return m;
}

// Independent oracle: plain bounded loop, one invert per lattice point,
// no lambda certificates or tables shared with the evaluator under test.
QSeries naive_nahm(const NahmQuadruple& nq, const SumDecoration& dec, long N,
                   long nmax = 40) {
  long r = nq.rank();
  RatMat ad = nq.AD();
  QSeries total = QSeries::zero(Order::at(N));
  std::vector<long> n(r, 0);
  while (true) {
    bool ok = true;
    if (!dec.parity.empty())
      for (long i = 0; i < r && ok; ++i)
        ok = dec.parity[i] == Parity::any ||
             (n[i] % 2) == static_cast<long>(dec.parity[i]);
    if (ok) {
      Rat e = nq.c;
      Rat coeff(1);
      for (long i = 0; i < r; ++i) {
        e += nq.b[i] * n[i];
        if (!dec.weights.empty()) {
          e += dec.weights[i].exp * n[i];
          coeff *= rat_pow(dec.weights[i].coeff, n[i]);
        }
        for (long j = 0; j < r; ++j) e += ad[i][j] * n[i] * n[j] / 2;
      }
      if (e <= N) {
        QSeries term = QSeries::monomial(SignedMonomial{coeff, e}, Order::at(N));
        for (long i = 0; i < r; ++i) {
          QSeries denom = pochhammer_finite(qmono(1, rat(nq.d[i])),
                                            qmono(1, rat(nq.d[i])), n[i],
                                            Order::at(N - e + 1));
          term = mul(term, invert(denom, Order::at(N - e + 1)));
        }
        total = add(total, term.truncated(Order::at(N)));
      }
    }
    long i = 0;
    while (i < r && n[i] == nmax) n[i++] = 0;
    if (i == r) break;
    ++n[i];
  }
  return total;
}

const NahmQuadruple example1_display{
    // display order (i,j,k): exponent i^2+2j^2+k^2+2ij+ik, d=(1,2,2)
    RatMat{{Rat(2), Rat(1), Rat(1, 2)}, {Rat(2), Rat(2), Rat(0)},
           {Rat(1), Rat(0), Rat(1)}},
    RatVec{Rat(0), Rat(0), Rat(0)},
    Rat(0),
    {1, 2, 2}};

}  // namespace

TEST_CASE("validate examples", "[nahm]") {
  // paper-order quadruple for Example 1: AD = [[2,0,1],[0,4,2],[1,2,2]]
  NahmQuadruple nq{RatMat{{Rat(1), Rat(0), Rat(1)},
                          {Rat(0), Rat(2), Rat(2)},
                          {Rat(1, 2), Rat(1), Rat(2)}},
                   RatVec{Rat(0), Rat(0), Rat(0)},
                   Rat(0),
                   {2, 2, 1}};
  auto ad = nq.AD();
  CHECK(ad == mat({{2, 0, 1}, {0, 4, 2}, {1, 2, 2}}));
  CHECK(nq.validate().ok);

  // display-order Example 1 is the same form, also valid
  CHECK(example1_display.validate().ok);

  NahmQuadruple zero_minor{mat({{0, 0}, {0, 1}}), RatVec{Rat(0), Rat(0)},
                           Rat(0), {1, 1}};
  auto rep = zero_minor.validate();
  CHECK(!rep.ok);
  CHECK(rep.bad_minor == 1);

  NahmQuadruple asym{mat({{1, 1}, {0, 1}}), RatVec{Rat(0), Rat(0)}, Rat(0),
                     {1, 1}};
  auto rep2 = asym.validate();
  CHECK(!rep2.ok);
  CHECK(!rep2.symmetric);
}

TEST_CASE("rank one Rogers-Ramanujan sum", "[nahm]") {
  NahmQuadruple nq{mat({{2}}), RatVec{Rat(0)}, Rat(0), {1}};
  QSeries s = nahm_sum(nq, Order::at(8));
  long expect[] = {1, 1, 1, 1, 2, 2, 3, 3, 4};
  for (long k = 0; k <= 8; ++k) CHECK(s.coeff_at(rat(k)) == expect[k]);
}

TEST_CASE("example 1 vs naive oracle", "[nahm]") {
  QSeries fast = nahm_sum(example1_display, Order::at(20));
  QSeries slow = naive_nahm(example1_display, SumDecoration{}, 20);
  CHECK(equal_up_to(fast, slow, rat(20)).equal);
}

TEST_CASE("negative b and fractional entries vs oracle", "[nahm]") {
  // Example 8 shape with negative shifts (display order, d=(1,2,2))
  NahmQuadruple nq{RatMat{{Rat(5, 2), Rat(1, 2), Rat(1)},
                          {Rat(1), Rat(1), Rat(1)},
                          {Rat(2), Rat(1), Rat(2)}},
                   RatVec{Rat(-1), Rat(1), Rat(0)},
                   Rat(0),
                   {1, 2, 2}};
  REQUIRE(nq.validate().ok);
  SumDecoration even_i;
  even_i.parity = {Parity::even, Parity::any, Parity::any};
  QSeries fast = nahm_sum(nq, even_i, Order::at(18));
  QSeries slow = naive_nahm(nq, even_i, 18);
  CHECK(equal_up_to(fast, slow, rat(18)).equal);
}

TEST_CASE("parity split partitions the sum", "[nahm]") {
  for (int idx = 0; idx < 3; ++idx) {
    SumDecoration even, odd;
    even.parity.assign(3, Parity::any);
    odd.parity.assign(3, Parity::any);
    even.parity[idx] = Parity::even;
    odd.parity[idx] = Parity::odd;
    QSeries g0 = nahm_sum(example1_display, even, Order::at(16));
    QSeries g1 = nahm_sum(example1_display, odd, Order::at(16));
    QSeries g = nahm_sum(example1_display, Order::at(16));
    CHECK(equal_up_to(add(g0, g1), g, rat(16)).equal);
  }
}

TEST_CASE("weights fold like b shifts", "[nahm]") {
  SumDecoration w;
  w.weights = {qmono(1, rat(1)), qmono(1, rat(0)), qmono(1, rat(1))};
  QSeries a = nahm_sum(example1_display, w, Order::at(15));
  NahmQuadruple shifted = example1_display;
  shifted.b = {Rat(1), Rat(0), Rat(1)};
  QSeries b = nahm_sum(shifted, Order::at(15));
  CHECK(equal_up_to(a, b, rat(15)).equal);

  // signed weight: (-1)^i handled through the coefficient
  SumDecoration sw;
  sw.weights = {qmono(-1, rat(0)), qmono(1, rat(0)), qmono(1, rat(0))};
  QSeries c = nahm_sum(example1_display, sw, Order::at(12));
  QSeries d = naive_nahm(example1_display, sw, 12);
  CHECK(equal_up_to(c, d, rat(12)).equal);
}

TEST_CASE("monotone truncation", "[nahm]") {
  QSeries small = nahm_sum(example1_display, Order::at(12));
  QSeries big = nahm_sum(example1_display, Order::at(25));
  CHECK(equal_up_to(small, big.truncated(Order::at(12)), rat(12)).equal);
}

TEST_CASE("dual quadruple", "[nahm]") {
  NahmQuadruple rr{mat({{2}}), RatVec{Rat(0)}, rat(-1, 60), {1}};
  NahmQuadruple du = dual(rr);
  CHECK(du.A[0][0] == rat(1, 2));
  CHECK(du.b[0] == 0);
  CHECK(du.c == rat(-1, 40));
  CHECK(du.d == std::vector<long>{1});

  NahmQuadruple dd = dual(du);
  CHECK(dd.A == rr.A);
  CHECK(dd.b == rr.b);
  CHECK(dd.c == rr.c);
  CHECK(dd.d == rr.d);

  NahmQuadruple ex1 = example1_display;
  ex1.b = {Rat(1), Rat(0), Rat(1)};
  ex1.c = rat(3, 7);
  NahmQuadruple d2 = dual(dual(ex1));
  CHECK(d2.A == ex1.A);
  CHECK(d2.b == ex1.b);
  CHECK(d2.c == ex1.c);
  CHECK(d2.d == ex1.d);

  NahmQuadruple singular{mat({{1, 1}, {1, 1}}), RatVec{Rat(0), Rat(0)}, Rat(0),
                         {1, 1}};
  CHECK_THROWS_AS(dual(singular), domain_error);
}

TEST_CASE("x-graded sum exposes coefficients", "[nahm]") {
  NahmQuadruple rr{mat({{2}}), RatVec{Rat(0)}, Rat(0), {1}};
  SumDecoration dec;
  dec.x_grading = {1};
  BiSeries s = nahm_sum_graded(rr, dec, Order::at(30), 5);
  for (long n = 0; n <= 5; ++n) {
    QSeries want = mul_monomial(
        invert(pochhammer_finite(qmono(1, rat(1)), qmono(1, rat(1)), n,
                                 Order::at(30)),
               Order::at(30)),
        qmono(1, rat(n * n)));
    CHECK(equal_up_to(s.coeff_x(n), want, rat(28)).equal);
  }
}

TEST_CASE("graded sums allow non-definite forms", "[nahm]") {
  // q^{2jk} with grading (1,1): indefinite AD but x-bounded
  NahmQuadruple nq{mat({{0, 1}, {1, 0}}), RatVec{Rat(0), Rat(0)}, Rat(0),
                   {2, 2}};
  SumDecoration dec;
  dec.x_grading = {1, 1};
  BiSeries s = nahm_sum_graded(nq, dec, Order::at(20), 6);
  // x^2 coefficient: sum_{j+k=2} q^{2jk}/((q^2;q^2)_j (q^2;q^2)_k)
  QSeries p1 = invert(pochhammer_finite(qmono(1, rat(2)), qmono(1, rat(2)), 1,
                                        Order::at(20)),
                      Order::at(20));
  QSeries p2 = invert(pochhammer_finite(qmono(1, rat(2)), qmono(1, rat(2)), 2,
                                        Order::at(20)),
                      Order::at(20));
  QSeries want = add(scaled(mul(p2, QSeries::one(Order::at(20))), rat(2)),
                     mul_monomial(mul(p1, p1), qmono(1, rat(2))));
  CHECK(equal_up_to(s.coeff_x(2), want, rat(18)).equal);

  // but the ungraded path must reject it
  CHECK_THROWS_AS(nahm_sum(nq, Order::at(10)), domain_error);
}

TEST_CASE("reduction lemmas finite forms", "[nahm][prop]") {
  Order N = Order::at(42);
  auto invp = [&](long d, long n) {
    return invert(pochhammer_finite(qmono(1, rat(d)), qmono(1, rat(d)), n, N),
                  N);
  };
  for (long n = 0; n <= 25; ++n) {
    // sum_{i+2j=n} q^{i(i-1)/2} / ((q;q)_i (q^2;q^2)_j) = 1/(q;q)_n
    QSeries lhs = QSeries::zero(N);
    for (long j = 0; 2 * j <= n; ++j) {
      long i = n - 2 * j;
      lhs = add(lhs, mul_monomial(mul(invp(1, i), invp(2, j)),
                                  qmono(1, rat(i * (i - 1), 2))));
    }
    CHECK(equal_up_to(lhs, invp(1, n), rat(40)).equal);

    // sum_{i+j=n} q^{i^2+j^2-i} / ((q^2;q^2)_i (q^2;q^2)_j)
    //   = q^{(n^2-n)/2} / (q;q)_n
    QSeries lhs2 = QSeries::zero(N);
    for (long i = 0; i <= n; ++i) {
      long j = n - i;
      lhs2 = add(lhs2, mul_monomial(mul(invp(2, i), invp(2, j)),
                                    qmono(1, rat(i * i + j * j - i))));
    }
    QSeries rhs2 = mul_monomial(invp(1, n), qmono(1, rat(n * n - n, 2)));
    CHECK(equal_up_to(lhs2, rhs2, rat(40)).equal);

    // sum_{i+j=n} q^{i^2} / ((q^2;q^2)_i (q^2;q^2)_j)
    //   = (-q;q^2)_n / (q^2;q^2)_n
    QSeries lhs3 = QSeries::zero(N);
    for (long i = 0; i <= n; ++i) {
      long j = n - i;
      lhs3 = add(lhs3, mul_monomial(mul(invp(2, i), invp(2, j)),
                                    qmono(1, rat(i * i))));
    }
    QSeries rhs3 = mul(pochhammer_finite(qmono(-1, rat(1)), qmono(1, rat(2)),
                                         n, N),
                       invp(2, n));
    CHECK(equal_up_to(lhs3, rhs3, rat(40)).equal);
  }
}
