#include <random>

#include "catch_amalgamated.hpp"
#include "qnahm/series.hpp"

using namespace qnahm;

namespace {

QSeries from_terms(long scale, std::vector<std::pair<long, long>> kv,
                   Order n = Order::infinite()) {
  QSeries s = QSeries::zero(n);
  for (auto& [k, c] : kv)
    s = add(s, QSeries::monomial(qmono(c, rat(k, scale)), n));
  return s;
}

// Independent oracle: number of partitions of n into odd parts.
std::vector<long> odd_part_counts(long nmax) {
  std::vector<long> dp(nmax + 1, 0);
  dp[0] = 1;
  for (long part = 1; part <= nmax; part += 2)
    for (long v = part; v <= nmax; ++v) dp[v] += dp[v - part];
  return dp;
}

QSeries random_series(std::mt19937& rng, long scale, Order n) {
  std::uniform_int_distribution<long> key(-3, 12);
  std::uniform_int_distribution<long> coeff(-4, 4);
  std::uniform_int_distribution<int> len(1, 6);
  QSeries s = QSeries::zero(n);
  int terms = len(rng);
  for (int i = 0; i < terms; ++i)
    s = add(s, QSeries::monomial(qmono(coeff(rng), rat(key(rng), scale)), n));
  return s;
}

}  // namespace

TEST_CASE("rescale keeps values", "[series]") {
  QSeries s = from_terms(2, {{0, 1}, {1, 1}});  // 1 + q^(1/2)
  QSeries r = s.rescaled_to(4);
  CHECK(r.scale() == 4);
  CHECK(r.coeff_at(rat(0)) == 1);
  CHECK(r.coeff_at(rat(1, 2)) == 1);
  CHECK(equal_up_to(s, r, rat(5)).equal);

  QSeries z = QSeries::zero(Order::at(10));
  CHECK(z.rescaled_to(6).is_zero());

  QSeries p = from_terms(1, {{0, 1}, {1, -1}});  // 1 - q
  QSeries p88 = p.rescaled_to(88);
  CHECK(p88.coeff_at(rat(0)) == 1);
  CHECK(p88.coeff_at(rat(1)) == -1);
  CHECK(p88.base_key() == 0);
  CHECK(p88.size() == 89);

  CHECK_THROWS_AS(s.rescaled_to(3), incompatible_scale_error);
}

TEST_CASE("add basics", "[series]") {
  QSeries a = from_terms(1, {{0, 1}, {1, 1}});
  QSeries b = from_terms(1, {{0, 1}, {1, -1}});
  QSeries two = add(a, b);
  CHECK(two.coeff_at(rat(0)) == 2);
  CHECK(two.coeff_at(rat(1)) == 0);

  QSeries s = random_series(*new std::mt19937(7), 2, Order::at(9));
  CHECK(equal_up_to(add(s, QSeries::zero(Order::at(9))), s, rat(9)).equal);

  QSeries c = from_terms(1, {{0, 1}, {1, 1}, {2, 1}}, Order::at(2));
  QSeries d = from_terms(1, {{3, 1}}, Order::at(3));
  QSeries e = add(c, d);
  CHECK(e.order() == Order::at(2));
  CHECK(e.coeff_at(rat(3)) == 0);
}

TEST_CASE("mul basics", "[series]") {
  QSeries a = from_terms(1, {{0, 1}, {1, -1}});
  QSeries b = from_terms(1, {{0, 1}, {1, 1}});
  QSeries ab = mul(a, b);
  CHECK(ab.coeff_at(rat(0)) == 1);
  CHECK(ab.coeff_at(rat(1)) == 0);
  CHECK(ab.coeff_at(rat(2)) == -1);

  QSeries m = QSeries::monomial(qmono(1, rat(-1)));
  QSeries r = mul(m, b);
  CHECK(r.coeff_at(rat(-1)) == 1);
  CHECK(r.coeff_at(rat(0)) == 1);

  // (q;q)_3 expanded
  QSeries p = pochhammer_finite(qmono(1, rat(1)), qmono(1, rat(1)), 3,
                                Order::infinite());
  QSeries want = from_terms(1, {{0, 1}, {1, -1}, {2, -1}, {4, 1}, {5, 1}, {6, -1}});
  CHECK(equal_up_to(p, want, rat(6)).equal);
  CHECK(p.coeff_at(rat(3)) == 0);
}

TEST_CASE("invert basics", "[series]") {
  QSeries one_minus_q = from_terms(1, {{0, 1}, {1, -1}}, Order::at(10));
  QSeries geo = invert(one_minus_q);
  for (long k = 0; k <= 8; ++k) CHECK(geo.coeff_at(rat(k)) == 1);

  QSeries mono = QSeries::monomial(qmono(rat(3, 2), rat(5, 2)), Order::at(20));
  QSeries mi = invert(mono);
  CHECK(mi.coeff_at(rat(-5, 2)) == rat(2, 3));

  // 1/(q;q^2)_inf counts partitions into odd parts
  QSeries oddprod =
      pochhammer_infinite(qmono(1, rat(1)), qmono(1, rat(2)), Order::at(14));
  QSeries inv = invert(oddprod);
  auto dp = odd_part_counts(14);
  for (long k = 0; k <= 14; ++k) CHECK(inv.coeff_at(rat(k)) == dp[k]);
  // frozen spot checks
  CHECK(inv.coeff_at(rat(3)) == 2);
  CHECK(inv.coeff_at(rat(5)) == 3);
  CHECK(inv.coeff_at(rat(6)) == 4);

  CHECK_THROWS_AS(invert(QSeries::zero(Order::at(5))), non_invertible_error);
}

TEST_CASE("mul by invert is one", "[series]") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    QSeries s = random_series(rng, 2, Order::at(12));
    if (s.is_zero()) continue;
    QSeries t = invert(s);
    QSeries prod = mul(s, t);
    Rat upto = prod.order().v;
    CHECK(equal_up_to(prod, QSeries::one(prod.order()), upto).equal);
  }
}

TEST_CASE("substitute_power", "[series]") {
  QSeries a = from_terms(1, {{0, 1}, {1, 1}});
  QSeries a2 = substitute_power(a, rat(2));
  CHECK(a2.coeff_at(rat(2)) == 1);
  CHECK(a2.coeff_at(rat(1)) == 0);

  QSeries h = from_terms(2, {{0, 1}, {1, 1}});  // 1 + q^(1/2)
  QSeries h2 = substitute_power(h, rat(2));
  CHECK(h2.coeff_at(rat(1)) == 1);
  CHECK(h2.scale() == 1);

  CHECK_THROWS_AS(substitute_power(a, rat(0)), domain_error);
  CHECK_THROWS_AS(substitute_power(a, rat(-2)), domain_error);

  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    QSeries s = random_series(rng, 2, Order::at(8));
    QSeries lhs = substitute_power(substitute_power(s, rat(3, 2)), rat(4, 3));
    QSeries rhs = substitute_power(s, rat(2));
    CHECK(equal_up_to(lhs, rhs, rat(15)).equal);
  }
}

TEST_CASE("substitute_signed", "[series]") {
  QSeries a = from_terms(1, {{0, 1}, {1, 1}, {2, 1}});
  QSeries am = substitute_signed(a);
  CHECK(am.coeff_at(rat(1)) == -1);
  CHECK(am.coeff_at(rat(2)) == 1);

  QSeries even = from_terms(1, {{0, 2}, {2, -3}, {4, 5}});
  CHECK(equal_up_to(substitute_signed(even), even, rat(4)).equal);

  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    QSeries s = random_series(rng, 1, Order::at(10));
    CHECK(equal_up_to(substitute_signed(substitute_signed(s)), s, rat(10)).equal);
  }

  QSeries frac = from_terms(2, {{1, 1}});
  CHECK_THROWS_AS(substitute_signed(frac), unsupported_substitution_error);
}

TEST_CASE("pochhammer finite", "[series]") {
  CHECK(equal_up_to(pochhammer_finite(qmono(1, rat(1)), qmono(1, rat(1)), 0,
                                      Order::at(10)),
                    QSeries::one(Order::at(10)), rat(10))
            .equal);

  QSeries p2 = pochhammer_finite(qmono(1, rat(1)), qmono(1, rat(1)), 2,
                                 Order::infinite());
  QSeries want = from_terms(1, {{0, 1}, {1, -1}, {2, -1}, {3, 1}});
  CHECK(equal_up_to(p2, want, rat(3)).equal);

  QSeries ph = pochhammer_finite(qmono(-1, rat(1, 2)), qmono(1, rat(1)), 2,
                                 Order::infinite());
  QSeries wanth = from_terms(2, {{0, 1}, {1, 1}, {3, 1}, {4, 1}});
  CHECK(equal_up_to(ph, wanth, rat(2)).equal);

  // recurrence (a;q)_{n+1} = (a;q)_n (1 - a q^n)
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> ed(1, 3);
  for (int trial = 0; trial < 10; ++trial) {
    SignedMonomial a = qmono(trial % 2 ? 1 : -1, rat(ed(rng), 2));
    SignedMonomial nome = qmono(1, rat(ed(rng)));
    for (long n = 0; n < 5; ++n) {
      QSeries lhs =
          pochhammer_finite(a, nome, n + 1, Order::at(30));
      QSeries rhs = mul(pochhammer_finite(a, nome, n, Order::at(30)),
                        sub(QSeries::one(Order::at(30)),
                            QSeries::monomial(a * nome.pow(n), Order::at(30))));
      CHECK(equal_up_to(lhs, rhs, rat(25)).equal);
    }
  }
}

TEST_CASE("pochhammer infinite", "[series]") {
  // pentagonal numbers
  QSeries e =
      pochhammer_infinite(qmono(1, rat(1)), qmono(1, rat(1)), Order::at(7));
  QSeries want =
      from_terms(1, {{0, 1}, {1, -1}, {2, -1}, {5, 1}, {7, 1}}, Order::at(7));
  CHECK(equal_up_to(e, want, rat(7)).equal);

  // (-1;q)_inf = 2 (-q;q)_inf
  QSeries lhs =
      pochhammer_infinite(qmono(-1, rat(0)), qmono(1, rat(1)), Order::at(20));
  QSeries rhs = scaled(
      pochhammer_infinite(qmono(-1, rat(1)), qmono(1, rat(1)), Order::at(20)),
      rat(2));
  CHECK(equal_up_to(lhs, rhs, rat(20)).equal);

  // negative nome is fine: (-q^11; -q^11)_inf
  QSeries neg = pochhammer_infinite(qmono(-1, rat(11)), qmono(-1, rat(11)),
                                    Order::at(50));
  CHECK(neg.coeff_at(rat(0)) == 1);
  CHECK(neg.coeff_at(rat(11)) == 1);   // -(-q^11)
  CHECK(neg.coeff_at(rat(22)) == -1);  // -(-q^11)(-q^11)^1 from k=1 factor

  CHECK_THROWS_AS(
      pochhammer_infinite(qmono(1, rat(1)), qmono(1, rat(0)), Order::at(5)),
      divergent_product_error);
}

TEST_CASE("equal_up_to reporting", "[series]") {
  QSeries a = from_terms(1, {{0, 1}, {1, 1}}, Order::at(9));
  QSeries b = from_terms(1, {{0, 1}, {1, 1}, {3, 1}}, Order::at(9));
  CHECK(equal_up_to(a, b, rat(2)).equal);
  auto r = equal_up_to(a, b, rat(3));
  REQUIRE(!r.equal);
  REQUIRE(r.first.has_value());
  CHECK(r.first->exponent == 3);
  CHECK(r.first->lhs == 0);
  CHECK(r.first->rhs == 1);

  CHECK_THROWS_AS(equal_up_to(a, b, rat(10)), insufficient_order_error);
}

TEST_CASE("ring laws up to truncation", "[series][prop]") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    Order n = Order::at(10);
    QSeries a = random_series(rng, 2, n);
    QSeries b = random_series(rng, 2, n);
    QSeries c = random_series(rng, 2, n);
    CHECK(equal_up_to(add(a, b), add(b, a), rat(10)).equal);
    CHECK(equal_up_to(add(add(a, b), c), add(a, add(b, c)), rat(10)).equal);

    QSeries ab = mul(a, b);
    QSeries ba = mul(b, a);
    if (!ab.order().inf && !ba.order().inf) {
      Rat upto = std::min(ab.order().v, ba.order().v);
      CHECK(equal_up_to(ab, ba, upto).equal);
    }
    QSeries l = mul(a, add(b, c));
    QSeries r = add(mul(a, b), mul(a, c));
    if (!l.order().inf) {
      Rat upto = std::min(l.order().v, r.order().v);
      CHECK(equal_up_to(l, r, upto).equal);
    }
    QSeries abc1 = mul(mul(a, b), c);
    QSeries abc2 = mul(a, mul(b, c));
    if (!abc1.order().inf) {
      Rat upto = std::min(abc1.order().v, abc2.order().v);
      CHECK(equal_up_to(abc1, abc2, upto).equal);
    }
  }
}

TEST_CASE("euler identities", "[series][prop]") {
  // sum z^n/(q;q)_n = 1/(z;q)_inf ; sum q^C(n,2) z^n/(q;q)_n = (-z;q)_inf
  Order N = Order::at(42);
  for (auto [zc, ze] : std::vector<std::pair<long, Rat>>{
           {1, rat(1)}, {-1, rat(2)}, {1, rat(1, 2)}, {-1, rat(3, 2)}}) {
    SignedMonomial z = qmono(zc, ze);
    SignedMonomial nome = qmono(1, rat(1));
    QSeries lhs1 = QSeries::zero(N), lhs2 = QSeries::zero(N);
    for (long n = 0; n * ze <= rat(44); ++n) {
      QSeries invp = invert(pochhammer_finite(nome, nome, n, N), N);
      QSeries zn = QSeries::monomial(z.pow(n), N);
      lhs1 = add(lhs1, mul(invp, zn));
      lhs2 = add(lhs2, mul_monomial(mul(invp, zn), qmono(1, rat(n * (n - 1), 2))));
    }
    QSeries rhs1 = invert(pochhammer_infinite(z, nome, N), N);
    QSeries rhs2 = pochhammer_infinite(
        SignedMonomial{-z.coeff, z.exp}, nome, N);
    CHECK(equal_up_to(lhs1, rhs1, rat(40)).equal);
    CHECK(equal_up_to(lhs2, rhs2, rat(40)).equal);
  }
}

TEST_CASE("q-binomial theorem", "[series][prop]") {
  // sum (a;q)_n z^n/(q;q)_n = (az;q)_inf/(z;q)_inf
  Order N = Order::at(45);
  SignedMonomial nome = qmono(1, rat(1));
  for (auto [a, z] : std::vector<std::pair<SignedMonomial, SignedMonomial>>{
           {qmono(1, rat(2)), qmono(1, rat(1))},
           {qmono(-1, rat(1)), qmono(1, rat(2))},
           {qmono(1, rat(1, 2)), qmono(-1, rat(1))},
           {qmono(-1, rat(0)), qmono(1, rat(3, 2))}}) {
    QSeries lhs = QSeries::zero(N);
    for (long n = 0; n * z.exp <= rat(46); ++n) {
      QSeries t = mul(pochhammer_finite(a, nome, n, N),
                      invert(pochhammer_finite(nome, nome, n, N), N));
      lhs = add(lhs, mul_monomial(t, z.pow(n)));
    }
    QSeries rhs = mul(pochhammer_infinite(a * z, nome, N),
                      invert(pochhammer_infinite(z, nome, N), N));
    CHECK(equal_up_to(lhs, rhs, rat(40)).equal);
  }
}

TEST_CASE("serialization lists nonzero terms", "[series]") {
  QSeries s = from_terms(2, {{-2, 3}, {1, -1}}, Order::at(5));
  auto t = s.terms();
  REQUIRE(t.size() == 2);
  CHECK(t[0].first == "-1");
  CHECK(t[0].second == "3");
  CHECK(t[1].first == "1/2");
  CHECK(t[1].second == "-1");
}
