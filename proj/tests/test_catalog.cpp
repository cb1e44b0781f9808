#include "catch_amalgamated.hpp"
#include "qnahm/catalog.hpp"

using namespace qnahm;

namespace {
const Catalog& catalog() {
  static Catalog cat = Catalog::load();
  return cat;
}
}  // namespace

TEST_CASE("catalog covers the manifest one-to-one", "[catalog]") {
  auto cov = catalog().coverage();
  CAPTURE(cov.missing, cov.extra);
  CHECK(cov.ok);
  CHECK(catalog().records().size() == 150);
  for (const auto& r : catalog().records()) CHECK(!r.anchors.empty());
}

TEST_CASE("alias lookup and unknown ids", "[catalog]") {
  CHECK(catalog().get("table3.1.1").id == "T1.1.1");
  CHECK(catalog().get("S1-product").id == "T1.4.1");
  CHECK(catalog().get("id-mod7").id == "BP.mod7");
  CHECK_THROWS_AS(catalog().get("no-such-identity"), unknown_id_error);
}

TEST_CASE("spot verification at spec orders", "[catalog]") {
  CHECK(catalog().verify("T1.1.1", rat(50)).pass);
  CHECK(catalog().verify("T1.4.1", rat(100)).pass);
  CHECK(catalog().verify("T1.3.1", rat(40), 12).pass);
  CHECK(catalog().verify("EX11.1", rat(60)).pass);
  CHECK(catalog().verify("RR.1").pass);
  CHECK(catalog().verify("AUX.lem-12").pass);
  CHECK(catalog().verify("AUX.78-sum-1", rat(30)).pass);
}

TEST_CASE("verify_all over a prefix", "[catalog]") {
  auto sum = catalog().verify_all("EX13", rat(35), std::nullopt, 2);
  CHECK(sum.total == 3);
  CHECK(sum.failed == 0);
}

TEST_CASE("seeded sign flip is detected with its exponent", "[catalog]") {
  // negating one side must fail exactly at the minimum exponent of the value
  for (const char* id : {"RR.1", "T1.1.1", "EX5.2", "BP.mod14.1"}) {
    const IdentityRecord& rec = catalog().get(id);
    EvalCtx ctx;
    ctx.N = Order::at(30);
    QSeries lhs = evaluate_q(rec.lhs, ctx);
    QSeries rhs = evaluate_q(rec.rhs, ctx);
    REQUIRE(equal_up_to(lhs, rhs, rat(30)).equal);
    auto cmp = equal_up_to(lhs, negated(rhs), rat(30));
    REQUIRE(!cmp.equal);
    CHECK(cmp.first->exponent == lhs.min_exp());
  }
}

TEST_CASE("empty filter is a no-op summary", "[catalog]") {
  auto sum = catalog().verify_all("ZZZ-nothing");
  CHECK(sum.total == 0);
  CHECK(sum.failed == 0);
}
