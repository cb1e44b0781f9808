#include "catch_amalgamated.hpp"
#include "qnahm/bailey_registry.hpp"
#include "qnahm/products.hpp"

using namespace qnahm;

namespace {

// alpha(n) and beta(n) of two pairs agree as series for n <= n_max.
void check_same_pair(const BaileyPair& got, const BaileyPair& want,
                     long n_max, const Rat& N) {
  REQUIRE(got.a_exp() == want.a_exp());
  for (long n = 0; n <= n_max; ++n) {
    QSeries ga = eval_to_order([&](Order t) { return got.alpha(n, t); }, N);
    QSeries wa = eval_to_order([&](Order t) { return want.alpha(n, t); }, N);
    INFO("alpha mismatch at n=" << n << " between " << got.name() << " and "
                                << want.name());
    CHECK(equal_up_to(ga, wa, N).equal);
    QSeries gb = eval_to_order([&](Order t) { return got.beta(n, t); }, N);
    QSeries wb = eval_to_order([&](Order t) { return want.beta(n, t); }, N);
    INFO("beta mismatch at n=" << n);
    CHECK(equal_up_to(gb, wb, N).equal);
  }
}

}  // namespace

TEST_CASE("beta_from_alpha unit pair", "[bailey]") {
  auto alpha = [](long n, Order N) {
    return n == 0 ? QSeries::one(N) : QSeries::zero(Order::infinite());
  };
  auto beta = [](long n, Order N) {
    QSeries p = pochhammer_finite(qmono(1, rat(1)), qmono(1, rat(1)), n,
                                  Order::infinite());
    return invert(mul(p, p), N);
  };
  BaileyPair unit("unit", Rat(0), alpha, beta);
  for (long n = 0; n <= 8; ++n) {
    QSeries want = unit.beta(n, Order::at(30));
    QSeries got = beta_from_alpha(unit, n, Order::at(30));
    CHECK(equal_up_to(want, got, rat(30)).equal);
  }
}

TEST_CASE("registry pairs satisfy the defining relation", "[bailey]") {
  for (const auto& p : bailey_registry()) {
    auto rep = verify_pair(p, 10, rat(40));
    INFO("pair " << p.name());
    CHECK(rep.ok);
  }
}

TEST_CASE("corrupted pair is reported", "[bailey]") {
  BaileyPair c1 = bailey_pairs::C1();
  auto bad_beta = [c1](long n, Order N) {
    QSeries b = c1.beta(n, N);
    return n == 3 ? negated(b) : b;
  };
  BaileyPair bad("C1.bad", c1.a_exp(),
                 [c1](long n, Order N) { return c1.alpha(n, N); }, bad_beta);
  auto rep = verify_pair(bad, 6, rat(30));
  REQUIRE(!rep.ok);
  REQUIRE(rep.failures.size() == 1);
  CHECK(rep.failures[0].n == 3);
  CHECK(rep.failures[0].exponent == 0);  // beta_3 starts at q^0
}

TEST_CASE("raise transforms reproduce starred pairs", "[bailey]") {
  check_same_pair(transform_raise_binf(bailey_pairs::C4()),
                  bailey_pairs::C4s(), 10, rat(40));
  check_same_pair(transform_raise_binf(bailey_pairs::C7()),
                  bailey_pairs::C7s(), 10, rat(40));
  check_same_pair(transform_raise_binf(bailey_pairs::G3()),
                  bailey_pairs::G1s(), 10, rat(40));
  check_same_pair(transform_raise_b0(bailey_pairs::G4s()),
                  bailey_pairs::G41new(), 10, rat(40));
}

TEST_CASE("lemma 2.2 derivation chain", "[bailey][chain]") {
  Rat N(40);
  BaileyPair it1 = transform_raise_b0(bailey_pairs::C1());
  check_same_pair(it1, bailey_pairs::L22_iterate1(), 10, N);
  BaileyPair it2 = transform_reduce_binf(it1);
  check_same_pair(it2, bailey_pairs::L22_iterate2(), 10, N);
  BaileyPair it3 = transform_raise_b0(it2);
  check_same_pair(it3, bailey_pairs::L22_iterate3(), 10, N);
  BaileyPair it4 = transform_reduce_binf(it3);
  check_same_pair(it4, bailey_pairs::L22_iterate4(), 10, N);
  BaileyPair combined = linear_combine(
      {{it2, {qmono(1, rat(0)), qmono(1, rat(-1))}},
       {it4, {qmono(-1, rat(-1))}}},
      "L22.chain");
  check_same_pair(combined, bailey_pairs::L22(), 10, N);
}

TEST_CASE("lemma 2.3 derivation chain", "[bailey][chain]") {
  Rat N(40);
  BaileyPair p2 = transform_reduce_binf(bailey_pairs::G1s());
  check_same_pair(p2, bailey_pairs::L23_part2(), 10, N);
  BaileyPair mid = transform_raise_b0(p2);
  check_same_pair(mid, bailey_pairs::L23_part3mid(), 10, N);
  BaileyPair p3 = transform_reduce_binf(mid);
  check_same_pair(p3, bailey_pairs::L23_part3(), 10, N);
  BaileyPair combined = linear_combine(
      {{bailey_pairs::G1(), {qmono(-1, rat(-1, 2))}},
       {p2, {qmono(1, rat(0))}},
       {p3, {qmono(1, rat(-1, 2))}}},
      "L23.chain");
  check_same_pair(combined, bailey_pairs::L23(), 10, N);
}

TEST_CASE("lemma 2.4 derivation chain", "[bailey][chain]") {
  Rat N(40);
  BaileyPair p1 = transform_reduce_binf(bailey_pairs::C4());
  check_same_pair(p1, bailey_pairs::L24_part1(), 10, N);
  BaileyPair p2 = transform_raise_b0(p1);
  check_same_pair(p2, bailey_pairs::L24_part2(), 10, N);
  BaileyPair combined = linear_combine(
      {{bailey_pairs::C3(), {qmono(1, rat(0))}},
       {bailey_pairs::C4(), {qmono(1, rat(1))}},
       {p2, {qmono(-1, rat(1))}}},
      "L24.chain");
  check_same_pair(combined, bailey_pairs::L24(), 10, N);
}

TEST_CASE("transform soundness on sampled pairs", "[bailey][prop]") {
  std::vector<BaileyPair> samples = {bailey_pairs::C1(), bailey_pairs::C4(),
                                     bailey_pairs::G1(), bailey_pairs::G5()};
  for (const auto& p : samples) {
    CHECK(verify_pair(transform_rho_infty(p), 8, rat(30)).ok);
    CHECK(verify_pair(transform_raise_binf(p), 8, rat(30)).ok);
    CHECK(verify_pair(transform_raise_b0(p), 8, rat(30)).ok);
    if (p.a_exp() != 0) {
      CHECK(verify_pair(transform_reduce_binf(p), 8, rat(30)).ok);
      CHECK(verify_pair(transform_reduce_b(p, qmono(-1, rat(1))), 8, rat(30)).ok);
      CHECK(verify_pair(transform_reduce_b(p, qmono(1, rat(2))), 8, rat(30)).ok);
    }
  }
  CHECK_THROWS_AS(transform_reduce_binf(bailey_pairs::C1()), domain_error);
  CHECK_THROWS_AS(
      linear_combine({{bailey_pairs::C1(), {qmono(1, rat(0))}},
                      {bailey_pairs::C4(), {qmono(1, rat(0))}}},
                     "bad"),
      domain_error);
}

TEST_CASE("pair sums agree on both sides", "[bailey]") {
  for (const auto& name : {"C1", "G1", "L22", "L24"}) {
    const BaileyPair& p = bailey_pair(name);
    auto s = pair_sum(p, rat(40));
    INFO("pair_sum " << name);
    CHECK(equal_up_to(s.lhs, s.rhs, rat(40)).equal);
    auto d = pair_double_sum(p, rat(40));
    INFO("pair_double_sum " << name);
    CHECK(equal_up_to(d.lhs, d.rhs, rat(40)).equal);
  }
}

TEST_CASE("pair sum of L22 gives the mod 14 product", "[bailey]") {
  auto s = pair_sum(bailey_pair("L22"), rat(40));
  // (q^4, q^10, q^14; q^14)_inf / (q;q)_inf
  ProductExpr e = Jam(4, 14);
  for (auto& f : Jm(1).factors) e.mul_factor(f.base, f.nome, -1);
  QSeries rhs = eval_product(e, Order::at(40));
  CHECK(equal_up_to(s.lhs, rhs, rat(40)).equal);
}
