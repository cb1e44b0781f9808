#include "catch_amalgamated.hpp"
#include "qnahm/qsystem.hpp"

using namespace qnahm;

TEST_CASE("Q/L difference system at (10, 40)", "[qsystem]") {
  QSystemReport rep = q_system_check(10, rat(40));
  CHECK(rep.checks.size() == 12);
  for (const auto& c : rep.checks) {
    INFO(c.relation);
    CHECK(c.pass);
  }
  CHECK(rep.ok);
}

TEST_CASE("Q44 at x = 1 matches the ungraded sum", "[qsystem]") {
  // every lattice point contributing below order 40 has x-degree <= 10,
  // so the graded slices must add up to the full Andrews-Gordon sum
  Order N = Order::at(40);
  BiSeries graded = qsys_detail::Q_ki(4, 4, N, 10);
  QSeries folded = QSeries::zero(N);
  for (long m = 0; m <= 10; ++m) folded = add(folded, graded.coeff_x(m));
  NahmQuadruple nq;
  nq.A = {{Rat(2), Rat(2), Rat(2)}, {Rat(2), Rat(4), Rat(4)},
          {Rat(2), Rat(4), Rat(6)}};
  nq.b = {Rat(0), Rat(0), Rat(0)};
  nq.d = {1, 1, 1};
  CHECK(equal_up_to(folded, nahm_sum(nq, N), rat(40)).equal);
}
