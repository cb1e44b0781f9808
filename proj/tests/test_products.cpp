#include <random>

#include "catch_amalgamated.hpp"
#include "qnahm/products.hpp"

using namespace qnahm;

namespace {
const Order N40 = Order::at(40);
const Order N60 = Order::at(60);
}  // namespace

TEST_CASE("eval_product J1 pentagonal", "[products]") {
  QSeries j1 = eval_product(Jm(1), Order::at(7));
  CHECK(j1.coeff_at(rat(0)) == 1);
  CHECK(j1.coeff_at(rat(1)) == -1);
  CHECK(j1.coeff_at(rat(2)) == -1);
  CHECK(j1.coeff_at(rat(3)) == 0);
  CHECK(j1.coeff_at(rat(4)) == 0);
  CHECK(j1.coeff_at(rat(5)) == 1);
  CHECK(j1.coeff_at(rat(6)) == 0);
  CHECK(j1.coeff_at(rat(7)) == 1);
}

TEST_CASE("eval_product Rogers-Ramanujan product vs brute force", "[products]") {
  // 1/(q,q^4;q^5)_inf written as J_{2,5}/J_1
  ProductExpr e = Jam(2, 5);
  for (auto& f : Jm(1).factors) e.mul_factor(f.base, f.nome, -1);
  QSeries rhs = eval_product(e, Order::at(12));
  // brute-force sum side of the first Rogers-Ramanujan identity
  QSeries lhs = QSeries::zero(Order::at(12));
  for (long n = 0; n * n <= 12; ++n) {
    QSeries t = invert(pochhammer_finite(qmono(1, rat(1)), qmono(1, rat(1)), n,
                                         Order::at(12)),
                       Order::at(12));
    lhs = add(lhs, mul_monomial(t, qmono(1, rat(n * n))));
  }
  CHECK(equal_up_to(lhs, rhs, rat(12)).equal);
  // frozen values
  long expect[] = {1, 1, 1, 1, 2, 2, 3};
  for (long k = 0; k <= 6; ++k) CHECK(rhs.coeff_at(rat(k)) == expect[k]);

  ProductExpr empty;
  CHECK(equal_up_to(eval_product(empty, Order::at(5)),
                    QSeries::one(Order::at(5)), rat(5))
            .equal);
}

TEST_CASE("jacobi triple product", "[products][prop]") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<long> ze(-2, 4), qe(1, 4), sg(0, 1);
  int done = 0;
  while (done < 10) {
    SignedMonomial nome = qmono(sg(rng) ? 1 : -1, rat(qe(rng)));
    SignedMonomial z = qmono(sg(rng) ? 1 : -1, rat(ze(rng), 2));
    if (nome.coeff < 0 && !rat_is_integer(nome.exp)) continue;
    QSeries sum = jacobi_triple_sum(z, nome, N40);
    ProductExpr prod;
    prod.mul_factor(nome, nome);
    prod.mul_factor(z, nome);
    // nome/z
    SignedMonomial noz{nome.coeff / z.coeff, nome.exp - z.exp};
    if (noz.exp <= 0) continue;  // outside the product's convergence domain
    prod.mul_factor(noz, nome);
    QSeries pr = eval_product(prod, N40);
    CHECK(equal_up_to(sum, pr, rat(40)).equal);
    ++done;
  }

  // (q;q)_inf via pentagonal choice z=q, nome=q^3
  QSeries pent = jacobi_triple_sum(qmono(1, rat(1)), qmono(1, rat(3)), N40);
  CHECK(equal_up_to(pent, eval_product(Jm(1), N40), rat(40)).equal);

  CHECK_THROWS_AS(jacobi_triple_sum(qmono(1, rat(1)), qmono(1, rat(0)), N40),
                  divergent_theta_error);
}

TEST_CASE("theta series basics", "[products]") {
  QSeries h01 = theta_h(Rat(0), Rat(1), Order::at(10));
  CHECK(h01.coeff_at(rat(0)) == 1);
  CHECK(h01.coeff_at(rat(1)) == 2);
  CHECK(h01.coeff_at(rat(4)) == 2);
  CHECK(h01.coeff_at(rat(9)) == 2);
  CHECK(h01.coeff_at(rat(2)) == 0);
}

TEST_CASE("theta periodicity and reflection", "[products][prop]") {
  for (long twom = 1; twom <= 24; ++twom) {
    Rat m = rat(twom, 2);
    for (long j = 0; j <= twom; ++j) {
      QSeries h = theta_h(rat(j), m, N60);
      CHECK(equal_up_to(h, theta_h(rat(-j), m, N60), rat(60)).equal);
      CHECK(equal_up_to(h, theta_h(rat(j) + 2 * m, m, N60), rat(60)).equal);
      QSeries g = theta_g(rat(j), m, N60);
      CHECK(equal_up_to(g, theta_g(rat(-j), m, N60), rat(60)).equal);
      CHECK(equal_up_to(g, negated(theta_g(rat(j) + 2 * m, m, N60)), rat(60))
                .equal);
    }
  }
}

TEST_CASE("theta g-h change and doubling", "[products][prop]") {
  for (long twom = 1; twom <= 24; ++twom) {
    Rat m = rat(twom, 2);
    for (long j = 0; j <= twom; ++j) {
      QSeries g = theta_g(rat(j), m, N60);
      QSeries diff = sub(theta_h(rat(2 * j), 4 * m, N60),
                         theta_h(4 * m - rat(2 * j), 4 * m, N60));
      CHECK(equal_up_to(g, diff, rat(60)).equal);

      QSeries hd = substitute_power(theta_h(rat(j), m, Order::at(30)), rat(2));
      CHECK(equal_up_to(hd, theta_h(rat(2 * j), 2 * m, N60), rat(60)).equal);
      QSeries gd = substitute_power(theta_g(rat(j), m, Order::at(30)), rat(2));
      CHECK(equal_up_to(gd, theta_g(rat(2 * j), 2 * m, N60), rat(60)).equal);
    }
  }
}

TEST_CASE("phi psi jacobi_cube", "[products]") {
  // phi(-q) = J1^2/J2
  QSeries phim = substitute_signed(phi(N40));
  ProductExpr e1 = Jm(1);
  e1.mul_factor(qmono(1, rat(1)), qmono(1, rat(1)));
  for (auto& f : Jm(2).factors) e1.mul_factor(f.base, f.nome, -1);
  CHECK(equal_up_to(phim, eval_product(e1, N40), rat(40)).equal);

  // psi(q) = J2^2/J1
  ProductExpr e2 = Jm(2);
  e2.mul_factor(qmono(1, rat(2)), qmono(1, rat(2)));
  for (auto& f : Jm(1).factors) e2.mul_factor(f.base, f.nome, -1);
  CHECK(equal_up_to(psi(N40), eval_product(e2, N40), rat(40)).equal);

  // J1^3
  ProductExpr e3;
  e3.mul_factor(qmono(1, rat(1)), qmono(1, rat(1)), 3);
  CHECK(equal_up_to(jacobi_cube(N40), eval_product(e3, N40), rat(40)).equal);
}

TEST_CASE("P2 values", "[products]") {
  CHECK(p2(rat(0)) == rat(1, 6));
  CHECK(p2(rat(1, 2)) == rat(-1, 12));
  std::mt19937 rng(17);
  std::uniform_int_distribution<long> num(-30, 30), den(1, 12);
  for (int i = 0; i < 25; ++i) {
    Rat t = rat(num(rng), den(rng));
    CHECK(p2(t) == p2(t + 1));
  }
}

TEST_CASE("prefactor exponents", "[products]") {
  CHECK(prefactor_exponent(Jm(1)) == rat(1, 24));

  ProductExpr j2_over_j1 = Jm(2);
  for (auto& f : Jm(1).factors) j2_over_j1.mul_factor(f.base, f.nome, -1);
  CHECK(prefactor_exponent(j2_over_j1) == rat(1, 24));

  ProductExpr j1cube_over_j2;
  j1cube_over_j2.mul_factor(qmono(1, rat(1)), qmono(1, rat(1)), 3);
  for (auto& f : Jm(2).factors) j1cube_over_j2.mul_factor(f.base, f.nome, -1);
  CHECK(prefactor_exponent(j1cube_over_j2) == rat(1, 24));

  // J_{16,36} machinery
  CHECK(prefactor_exponent(Jam(16, 36)) == rat(1, 18));

  // unpaired base is not an eta quotient
  ProductExpr bad;
  bad.mul_factor(qmono(1, rat(1)), qmono(1, rat(5)));
  CHECK_THROWS_AS(prefactor_exponent(bad), domain_error);
  // signed base is not an eta quotient
  ProductExpr bad2;
  bad2.mul_factor(qmono(-1, rat(1)), qmono(1, rat(5)));
  CHECK_THROWS_AS(prefactor_exponent(bad2), domain_error);
  // a = m/2 may stand alone
  ProductExpr half;
  half.mul_factor(qmono(1, rat(3)), qmono(1, rat(6)));
  CHECK(prefactor_exponent(half) == rat(6, 4) * p2(rat(1, 2)));

  CHECK_THROWS_AS(Jam(0, 5), domain_error);
  CHECK_THROWS_AS(Jam(5, 5), domain_error);
  CHECK_THROWS_AS(Jam(7, 5), domain_error);
}
