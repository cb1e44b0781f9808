#pragma once

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <set>
#include <thread>

#include "json.hpp"
#include "qnahm/parser.hpp"

namespace qnahm {

class unknown_id_error : public qnahm_error {
 public:
  using qnahm_error::qnahm_error;
};

struct IdentityRecord {
  std::string id;
  std::vector<std::string> aliases;
  std::vector<std::string> anchors;
  bool bivariate = false;
  std::string kind = "expr";
  std::string lhs_src, rhs_src;
  ExprPtr lhs, rhs;
  Rat default_order{50};
  long default_x_order = 12;
  std::string note;
};

struct VerifyOutcome {
  std::string id;
  bool pass = false;
  Rat order;
  long x_order = -1;
  double elapsed_ms = 0.0;
  std::optional<BiDiscrepancy> discrepancy;
  std::string error;
};

struct VerifySummary {
  long total = 0;
  long passed = 0;
  long failed = 0;
  double elapsed_ms = 0.0;
  std::vector<VerifyOutcome> outcomes;
};

inline std::string default_data_dir() {
#ifdef QNAHM_DATA_DIR
  return QNAHM_DATA_DIR;
#else
  return "data";
#endif
}

inline std::string default_catalog_path() {
  if (const char* env = std::getenv("QNAHM_CATALOG")) return env;
  return default_data_dir() + "/catalog.json";
}

class Catalog {
 public:
  static Catalog load(const std::string& path = default_catalog_path()) {
    std::ifstream in(path);
    if (!in) throw qnahm_error("cannot open catalog file: " + path);
    nlohmann::json j;
    in >> j;
    Catalog cat;
    for (const auto& jr : j.at("records")) {
      IdentityRecord rec;
      rec.id = jr.at("id").get<std::string>();
      if (jr.contains("aliases"))
        rec.aliases = jr["aliases"].get<std::vector<std::string>>();
      if (jr.contains("anchors"))
        rec.anchors = jr["anchors"].get<std::vector<std::string>>();
      rec.bivariate = jr.value("arity", "q") == std::string("xq");
      rec.kind = jr.value("kind", "expr");
      rec.lhs_src = jr.value("lhs", "");
      rec.rhs_src = jr.value("rhs", "");
      if (jr.contains("order"))
        rec.default_order = parse_rat(jr["order"].get<std::string>());
      else
        rec.default_order = rec.bivariate ? Rat(40) : Rat(50);
      rec.default_x_order = jr.value("x_order", 12);
      rec.note = jr.value("note", "");
      if (rec.kind == "expr") {
        rec.lhs = parse_expr_text(rec.lhs_src);
        rec.rhs = parse_expr_text(rec.rhs_src);
      }
      cat.add(std::move(rec));
    }
    return cat;
  }

  void add(IdentityRecord rec) {
    size_t idx = records_.size();
    if (!index_.emplace(rec.id, idx).second)
      throw qnahm_error("duplicate catalog id: " + rec.id);
    for (const auto& a : rec.aliases) index_.emplace(a, idx);
    records_.push_back(std::move(rec));
  }

  const std::vector<IdentityRecord>& records() const { return records_; }

  const IdentityRecord& get(const std::string& id_or_alias) const {
    auto it = index_.find(id_or_alias);
    if (it == index_.end())
      throw unknown_id_error("unknown identity id: " + id_or_alias);
    return records_[it->second];
  }

  VerifyOutcome verify(const IdentityRecord& rec,
                       std::optional<Rat> order = std::nullopt,
                       std::optional<long> x_order = std::nullopt) const {
    VerifyOutcome out;
    out.id = rec.id;
    out.order = order.value_or(rec.default_order);
    auto start = std::chrono::steady_clock::now();
    try {
      if (rec.kind == "family:78-1" || rec.kind == "family:78-2") {
        out = verify_family(rec, out.order);
      } else if (rec.bivariate) {
        out.x_order = x_order.value_or(rec.default_x_order);
        EvalCtx ctx;
        ctx.N = Order::at(out.order);
        ctx.M = out.x_order;
        BiSeries l = evaluate_x(rec.lhs, ctx);
        BiSeries r = evaluate_x(rec.rhs, ctx);
        auto cmp = equal_up_to(l, r, out.x_order, out.order);
        out.pass = cmp.equal;
        if (!cmp.equal) out.discrepancy = cmp.first;
      } else {
        EvalCtx ctx;
        ctx.N = Order::at(out.order);
        QSeries l = evaluate_q(rec.lhs, ctx);
        QSeries r = evaluate_q(rec.rhs, ctx);
        auto cmp = equal_up_to(l, r, out.order);
        out.pass = cmp.equal;
        if (!cmp.equal) out.discrepancy = BiDiscrepancy{0, *cmp.first};
      }
    } catch (const std::exception& e) {
      out.pass = false;
      out.error = e.what();
    }
    auto end = std::chrono::steady_clock::now();
    out.elapsed_ms =
        std::chrono::duration<double, std::milli>(end - start).count();
    return out;
  }

  VerifyOutcome verify(const std::string& id_or_alias,
                       std::optional<Rat> order = std::nullopt,
                       std::optional<long> x_order = std::nullopt) const {
    return verify(get(id_or_alias), order, x_order);
  }

  // Runs every record (or those with ids starting with `prefix`) across a
  // small worker pool; outcomes keep catalog order.
  VerifySummary verify_all(const std::string& prefix = "",
                           std::optional<Rat> order = std::nullopt,
                           std::optional<long> x_order = std::nullopt,
                           unsigned jobs = 1) const {
    std::vector<size_t> todo;
    for (size_t i = 0; i < records_.size(); ++i)
      if (prefix.empty() || records_[i].id.rfind(prefix, 0) == 0)
        todo.push_back(i);
    VerifySummary sum;
    sum.outcomes.resize(todo.size());
    auto start = std::chrono::steady_clock::now();
    std::atomic<size_t> next{0};
    auto worker = [&] {
      while (true) {
        size_t slot = next.fetch_add(1);
        if (slot >= todo.size()) return;
        sum.outcomes[slot] = verify(records_[todo[slot]], order, x_order);
      }
    };
    if (jobs <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    auto end = std::chrono::steady_clock::now();
    sum.elapsed_ms =
        std::chrono::duration<double, std::milli>(end - start).count();
    sum.total = static_cast<long>(sum.outcomes.size());
    for (const auto& o : sum.outcomes)
      (o.pass ? sum.passed : sum.failed) += 1;
    return sum;
  }

  // Coverage against the checked-in manifest: ids must match one-to-one.
  struct Coverage {
    bool ok = true;
    std::vector<std::string> missing;  // required but absent
    std::vector<std::string> extra;    // registered but not required
  };

  Coverage coverage(const std::string& manifest_path = default_data_dir() +
                                                       "/manifest.json") const {
    std::ifstream in(manifest_path);
    if (!in) throw qnahm_error("cannot open manifest: " + manifest_path);
    nlohmann::json j;
    in >> j;
    Coverage cov;
    std::set<std::string> required;
    for (const auto& id : j.at("required_ids"))
      required.insert(id.get<std::string>());
    std::set<std::string> have;
    for (const auto& r : records_) have.insert(r.id);
    for (const auto& id : required)
      if (!have.count(id)) cov.missing.push_back(id);
    for (const auto& id : have)
      if (!required.count(id)) cov.extra.push_back(id);
    cov.ok = cov.missing.empty() && cov.extra.empty();
    return cov;
  }

 private:
  // The fixed-(m,n) coefficient families behind the Example 7/8 transfer:
  // sum over {i+j=m, i+k=n} of q^{2jk}/((q;q)_{2i+s}(q^2;q^2)_j(q^2;q^2)_k)
  // equals the same sum with q^{2i^2 -+ i} in place of q^{2jk}.
  VerifyOutcome verify_family(const IdentityRecord& rec, const Rat& N) const {
    VerifyOutcome out;
    out.id = rec.id;
    out.order = N;
    bool odd = rec.kind == "family:78-2";
    Order work = Order::at(N);
    auto invp = [&](long d, long n) {
      return invert(pochhammer_finite(qmono(1, rat(d)), qmono(1, rat(d)), n,
                                      Order::infinite()),
                    work);
    };
    for (long m = 0; m <= 10; ++m) {
      for (long n = 0; n <= 10; ++n) {
        QSeries lhs = QSeries::zero(work), rhs = QSeries::zero(work);
        for (long i = 0; i <= std::min(m, n); ++i) {
          long j = m - i, k = n - i;
          QSeries core = mul(invp(1, 2 * i + (odd ? 1 : 0)),
                             mul(invp(2, j), invp(2, k)));
          lhs = qnahm::add(lhs, mul_monomial(core, qmono(1, rat(2 * j * k))));
          long e = odd ? 2 * i * i + i : 2 * i * i - i;
          rhs = qnahm::add(rhs, mul_monomial(core, qmono(1, rat(e))));
        }
        auto cmp = equal_up_to(lhs, rhs, N);
        if (!cmp.equal) {
          out.pass = false;
          out.discrepancy = BiDiscrepancy{m * 100 + n, *cmp.first};
          return out;
        }
      }
    }
    out.pass = true;
    return out;
  }

  std::vector<IdentityRecord> records_;
  std::map<std::string, size_t> index_;
};

}  // namespace qnahm
