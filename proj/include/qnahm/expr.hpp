#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qnahm/bailey_registry.hpp"
#include "qnahm/biseries.hpp"
#include "qnahm/nahm.hpp"
#include "qnahm/products.hpp"

namespace qnahm {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// One node of a catalog expression.  A deliberately flat variant record:
// the evaluator and printer switch on `kind` and read the fields that
// kind uses.
struct Expr {
  enum class Kind {
    scalar,     // value
    mono,       // m (may carry x/z degrees)
    add,        // kids[0] + kids[1]
    sub,        // kids[0] - kids[1]
    mul,        // kids[0] * kids[1]
    div,        // kids[0] / kids[1]
    pow,        // kids[0] ^ ipar (ipar may be negative, univariate only)
    neg,        // -kids[0]
    poch,       // prod_i (bases[i]; nome)_len, len < 0 = infinite
    jm,         // J(ipar)
    jam,        // J(ipar, ipar2)
    theta_h,    // h_{r1, r2}
    theta_g,    // g_{r1, r2}
    phi_node,
    psi_node,
    jcube_node,
    lth,        // sum_{n in Z} (r1 n + r2) sign^n q^{r3 n^2 + r4 n}
    jts,        // jacobi triple sum with z-monomial `m`, nome `nome`
    nahm,       // quad + dec
    bsum,       // sum a^n q^{n^2} beta_n of registry pair `name`
    subst_pow,  // kids[0] with q -> q^{r1}
    subst_neg,  // kids[0] with q -> -q
    xset,       // kids[0] with x -> q^{r1}
    ct,         // CT_z(kids[0])
  };

  Kind kind;
  Rat value;
  SignedMonomial m;
  SignedMonomial nome;
  std::vector<SignedMonomial> bases;
  long len = -1;
  long ipar = 0, ipar2 = 0;
  Rat r1, r2, r3, r4;
  int sign = 1;
  std::shared_ptr<NahmQuadruple> quad;
  std::shared_ptr<SumDecoration> dec;
  std::string name;
  std::vector<ExprPtr> kids;
};

namespace ex {

inline ExprPtr make(Expr e) { return std::make_shared<Expr>(std::move(e)); }

inline ExprPtr scalar(Rat v) {
  Expr e;
  e.kind = Expr::Kind::scalar;
  e.value = std::move(v);
  return make(std::move(e));
}
inline ExprPtr mono(SignedMonomial m) {
  Expr e;
  e.kind = Expr::Kind::mono;
  e.m = std::move(m);
  return make(std::move(e));
}
inline ExprPtr binary(Expr::Kind k, ExprPtr a, ExprPtr b) {
  Expr e;
  e.kind = k;
  e.kids = {std::move(a), std::move(b)};
  return make(std::move(e));
}
inline ExprPtr add(ExprPtr a, ExprPtr b) {
  return binary(Expr::Kind::add, std::move(a), std::move(b));
}
inline ExprPtr sub(ExprPtr a, ExprPtr b) {
  return binary(Expr::Kind::sub, std::move(a), std::move(b));
}
inline ExprPtr mul(ExprPtr a, ExprPtr b) {
  return binary(Expr::Kind::mul, std::move(a), std::move(b));
}
inline ExprPtr div(ExprPtr a, ExprPtr b) {
  return binary(Expr::Kind::div, std::move(a), std::move(b));
}
inline ExprPtr neg(ExprPtr a) {
  Expr e;
  e.kind = Expr::Kind::neg;
  e.kids = {std::move(a)};
  return make(std::move(e));
}
inline ExprPtr pow(ExprPtr a, long k) {
  Expr e;
  e.kind = Expr::Kind::pow;
  e.kids = {std::move(a)};
  e.ipar = k;
  return make(std::move(e));
}
inline ExprPtr poch(std::vector<SignedMonomial> bases, SignedMonomial nome,
                    long len = -1) {
  Expr e;
  e.kind = Expr::Kind::poch;
  e.bases = std::move(bases);
  e.nome = std::move(nome);
  e.len = len;
  return make(std::move(e));
}
inline ExprPtr jm(long m) {
  Expr e;
  e.kind = Expr::Kind::jm;
  e.ipar = m;
  return make(std::move(e));
}
inline ExprPtr jam(long a, long m) {
  Expr e;
  e.kind = Expr::Kind::jam;
  e.ipar = a;
  e.ipar2 = m;
  return make(std::move(e));
}
inline ExprPtr theta(bool signed_sum, Rat j, Rat m) {
  Expr e;
  e.kind = signed_sum ? Expr::Kind::theta_g : Expr::Kind::theta_h;
  e.r1 = std::move(j);
  e.r2 = std::move(m);
  return make(std::move(e));
}
inline ExprPtr lth(Rat u, Rat w, int sign, Rat alpha, Rat beta) {
  Expr e;
  e.kind = Expr::Kind::lth;
  e.r1 = std::move(u);
  e.r2 = std::move(w);
  e.sign = sign;
  e.r3 = std::move(alpha);
  e.r4 = std::move(beta);
  return make(std::move(e));
}
inline ExprPtr jts(SignedMonomial z, SignedMonomial nome) {
  Expr e;
  e.kind = Expr::Kind::jts;
  e.m = std::move(z);
  e.nome = std::move(nome);
  return make(std::move(e));
}
inline ExprPtr nahm(NahmQuadruple quad, SumDecoration dec = {}) {
  Expr e;
  e.kind = Expr::Kind::nahm;
  e.quad = std::make_shared<NahmQuadruple>(std::move(quad));
  e.dec = std::make_shared<SumDecoration>(std::move(dec));
  return make(std::move(e));
}
inline ExprPtr bsum(std::string pair) {
  Expr e;
  e.kind = Expr::Kind::bsum;
  e.name = std::move(pair);
  return make(std::move(e));
}
inline ExprPtr subst_pow(ExprPtr a, Rat m) {
  Expr e;
  e.kind = Expr::Kind::subst_pow;
  e.kids = {std::move(a)};
  e.r1 = std::move(m);
  return make(std::move(e));
}
inline ExprPtr subst_neg(ExprPtr a) {
  Expr e;
  e.kind = Expr::Kind::subst_neg;
  e.kids = {std::move(a)};
  return make(std::move(e));
}
inline ExprPtr xset(ExprPtr a, Rat r) {
  Expr e;
  e.kind = Expr::Kind::xset;
  e.kids = {std::move(a)};
  e.r1 = std::move(r);
  return make(std::move(e));
}
inline ExprPtr ct(ExprPtr a) {
  Expr e;
  e.kind = Expr::Kind::ct;
  e.kids = {std::move(a)};
  return make(std::move(e));
}

}  // namespace ex

// --------------------------------------------------------------------------
// Typing: univariate (Q), x-graded (X), z-Laurent (Z)
// --------------------------------------------------------------------------

enum class ExprType { Q, X, Z };

class type_error : public qnahm_error {
 public:
  using qnahm_error::qnahm_error;
};

inline ExprType expr_type(const Expr& e) {
  auto join = [](ExprType a, ExprType b) {
    if (a == b) return a;
    if (a == ExprType::Q) return b;
    if (b == ExprType::Q) return a;
    throw type_error("cannot mix x-graded and z-Laurent subexpressions");
  };
  using K = Expr::Kind;
  switch (e.kind) {
    case K::scalar:
      return ExprType::Q;
    case K::mono:
      if (e.m.zdeg != 0 && e.m.xdeg != 0)
        throw type_error("monomial carries both x and z degrees");
      if (e.m.zdeg != 0) return ExprType::Z;
      return e.m.xdeg != 0 ? ExprType::X : ExprType::Q;
    case K::add:
    case K::sub:
    case K::mul:
      return join(expr_type(*e.kids[0]), expr_type(*e.kids[1]));
    case K::div: {
      ExprType num = expr_type(*e.kids[0]);
      if (expr_type(*e.kids[1]) != ExprType::Q)
        throw type_error("division only by univariate expressions");
      return num;
    }
    case K::pow:
    case K::neg:
      return expr_type(*e.kids[0]);
    case K::poch: {
      ExprType t = ExprType::Q;
      for (const auto& b : e.bases) {
        if (b.zdeg != 0) t = join(t, ExprType::Z);
        if (b.xdeg != 0) t = join(t, ExprType::X);
      }
      if (e.nome.xdeg != 0 || e.nome.zdeg != 0)
        throw type_error("Pochhammer nome must be a pure q-monomial");
      return t;
    }
    case K::jm:
    case K::jam:
    case K::theta_h:
    case K::theta_g:
    case K::phi_node:
    case K::psi_node:
    case K::jcube_node:
    case K::lth:
    case K::bsum:
      return ExprType::Q;
    case K::jts:
      return e.m.zdeg != 0 ? ExprType::Z : ExprType::Q;
    case K::nahm:
      return e.dec && e.dec->graded() ? ExprType::X : ExprType::Q;
    case K::subst_pow:
    case K::subst_neg:
      if (expr_type(*e.kids[0]) != ExprType::Q)
        throw type_error("substitution applies to univariate expressions");
      return ExprType::Q;
    case K::xset:
      if (expr_type(*e.kids[0]) != ExprType::X)
        throw type_error("xset needs an x-graded operand");
      return ExprType::Q;
    case K::ct:
      if (expr_type(*e.kids[0]) != ExprType::Z)
        throw type_error("CT_z needs a z-Laurent operand");
      return ExprType::Q;
  }
  throw type_error("unreachable expression kind");
}

// --------------------------------------------------------------------------
// x -> q^r leaf substitution (exact; grading folds into the linear term)
// --------------------------------------------------------------------------

inline ExprPtr fold_x(const ExprPtr& e, const Rat& r) {
  using K = Expr::Kind;
  Expr out = *e;
  auto fold_mono = [&](SignedMonomial m) {
    if (m.xdeg != 0) {
      m.exp += r * m.xdeg;
      m.xdeg = 0;
    }
    return m;
  };
  switch (e->kind) {
    case K::mono:
      out.m = fold_mono(e->m);
      break;
    case K::poch:
      for (auto& b : out.bases) b = fold_mono(b);
      break;
    case K::nahm:
      if (e->dec && e->dec->graded()) {
        auto dec = std::make_shared<SumDecoration>(*e->dec);
        auto quad = std::make_shared<NahmQuadruple>(*e->quad);
        for (long i = 0; i < quad->rank(); ++i)
          quad->b[i] += r * dec->x_grading[i];
        dec->x_grading.clear();
        out.quad = quad;
        out.dec = dec;
      }
      break;
    default:
      out.kids.clear();
      for (const auto& k : e->kids) out.kids.push_back(fold_x(k, r));
      break;
  }
  return ex::make(std::move(out));
}

// --------------------------------------------------------------------------
// Exact evaluation
// --------------------------------------------------------------------------

struct EvalCtx {
  Order N = Order::at(50);  // q validity order
  long M = 12;              // x order for bivariate subtrees
  long zwin = -1;           // z window; derived from N when < 0
};

namespace detail_eval {

inline long z_window(const EvalCtx& ctx) {
  if (ctx.zwin > 0) return ctx.zwin;
  long nv = ctx.N.inf ? 64 : std::max<long>(0, rat_ceil_long(ctx.N.v));
  long w = 2;
  while (w * w <= 4 * nv) ++w;
  return w + 8;
}

}  // namespace detail_eval

QSeries eval_q(const ExprPtr& e, const EvalCtx& ctx);
BiSeries eval_x(const ExprPtr& e, const EvalCtx& ctx);
ZSeries eval_z(const ExprPtr& e, const EvalCtx& ctx, long win);

// Bivariate product of binomial factors (1 - base nome^k) where base may
// carry x^g; sound truncation because each selected factor contributes at
// least its own q-exponent and x-degree.
inline BiSeries eval_poch_x(const Expr& e, const EvalCtx& ctx) {
  BiSeries acc(ctx.M, ctx.N);
  acc.set_coeff_x(0, QSeries::one(ctx.N));
  if (ctx.N.inf) throw domain_error("bivariate products need a finite order");
  for (const auto& b : e.bases) {
    if (b.xdeg < 0) throw domain_error("negative x powers unsupported");
    long kmax;
    if (e.len >= 0) {
      kmax = e.len - 1;
    } else {
      if (e.nome.exp <= 0)
        throw divergent_product_error(
            "infinite bivariate product needs positive nome exponent");
      kmax = -1;  // until exponent escapes
    }
    for (long k = 0;; ++k) {
      if (e.len >= 0 && k > kmax) break;
      SignedMonomial t = b * e.nome.pow(k);
      if (!ctx.N.covers(t.exp)) {
        if (e.nome.exp >= 0) break;
        continue;
      }
      // acc *= (1 - t)
      BiSeries shifted = mul_monomial(acc, t);
      acc = sub(acc, shifted);
    }
  }
  return acc;
}

inline ZSeries eval_poch_z(const Expr& e, const EvalCtx& ctx, long win) {
  if (ctx.N.inf) throw domain_error("z products need a finite order");
  if (e.len < 0 && e.nome.exp <= 0)
    throw divergent_product_error(
        "infinite z product needs positive nome exponent");
  ZSeries acc = ZSeries::one(-win, win, ctx.N);
  for (const auto& b : e.bases) {
    for (long k = 0;; ++k) {
      if (e.len >= 0 && k >= e.len) break;
      SignedMonomial t = b * e.nome.pow(k);
      if (t.exp > ctx.N.v) {
        // factors only grow once past the order when the nome is positive
        if (e.len < 0 || e.nome.exp >= 0) break;
        continue;
      }
      SignedMonomial neg = t;
      neg.coeff = -neg.coeff;
      acc.mul_binomial(neg);
    }
  }
  return acc;
}

inline ZSeries eval_jts_z(const Expr& e, const EvalCtx& ctx, long win) {
  if (e.nome.exp <= 0)
    throw divergent_theta_error("triple-product sum needs positive nome");
  ZSeries acc(-win, win, ctx.N);
  long zstep = e.m.zdeg;
  if (zstep == 0) throw type_error("triple-product sum needs a z power");
  for (long n = -4 * win / std::abs(zstep) - 4;
       n <= 4 * win / std::abs(zstep) + 4; ++n) {
    long c2 = n * (n - 1) / 2;
    Rat expn = e.nome.exp * c2 + e.m.exp * n;
    long zp = zstep * n;
    if (zp < -win || zp > win) continue;
    Rat coeff = (n % 2 == 0) ? Rat(1) : Rat(-1);
    coeff *= rat_pow(e.nome.coeff, c2);
    if (n >= 0)
      coeff *= rat_pow(e.m.coeff, n);
    else
      coeff *= Rat(1) / rat_pow(e.m.coeff, -n);
    acc.add_coeff_z(zp, QSeries::monomial(SignedMonomial{coeff, expn}, ctx.N));
  }
  return acc;
}

inline ZSeries eval_z(const ExprPtr& ep, const EvalCtx& ctx, long win) {
  const Expr& e = *ep;
  using K = Expr::Kind;
  switch (e.kind) {
    case K::mono: {
      ZSeries r(-win, win, ctx.N);
      SignedMonomial qm = e.m;
      long zp = qm.zdeg;
      qm.zdeg = 0;
      r.add_coeff_z(zp, QSeries::monomial(qm, ctx.N));
      return r;
    }
    case K::poch:
      return eval_poch_z(e, ctx, win);
    case K::jts:
      return eval_jts_z(e, ctx, win);
    case K::mul: {
      return mul(eval_z(e.kids[0], ctx, win), eval_z(e.kids[1], ctx, win));
    }
    case K::add:
    case K::sub: {
      ZSeries a = eval_z(e.kids[0], ctx, win);
      ZSeries b = eval_z(e.kids[1], ctx, win);
      ZSeries r(-win, win, min(a.q_order(), b.q_order()));
      for (long p = -win; p <= win; ++p) {
        QSeries c = e.kind == K::add ? add(a.coeff_z(p), b.coeff_z(p))
                                     : sub(a.coeff_z(p), b.coeff_z(p));
        r.add_coeff_z(p, c);
      }
      return r;
    }
    case K::div: {
      ZSeries a = eval_z(e.kids[0], ctx, win);
      QSeries d = eval_q(e.kids[1], ctx);
      QSeries dinv = invert(d, ctx.N);
      ZSeries r(-win, win, min(a.q_order(), dinv.order()));
      for (long p = -win; p <= win; ++p)
        r.add_coeff_z(p, mul(a.coeff_z(p), dinv));
      return r;
    }
    default: {
      // univariate subexpression embedded in a z context
      if (expr_type(e) == ExprType::Q) {
        ZSeries r(-win, win, ctx.N);
        r.add_coeff_z(0, eval_q(ep, ctx));
        return r;
      }
      throw type_error("unsupported node inside CT_z");
    }
  }
}

inline BiSeries eval_x(const ExprPtr& ep, const EvalCtx& ctx) {
  const Expr& e = *ep;
  using K = Expr::Kind;
  auto lift = [&](const QSeries& s) {
    BiSeries r(ctx.M, s.order());
    r.set_coeff_x(0, s);
    return r;
  };
  switch (e.kind) {
    case K::mono: {
      BiSeries r(ctx.M, Order::infinite());
      SignedMonomial qm = e.m;
      long xd = qm.xdeg;
      qm.xdeg = 0;
      if (xd < 0 || xd > ctx.M)
        throw domain_error("x power outside the bivariate window");
      r.set_coeff_x(xd, QSeries::monomial(qm, Order::infinite()));
      return r;
    }
    case K::poch:
      return eval_poch_x(e, ctx);
    case K::nahm:
      return nahm_sum_graded(*e.quad, *e.dec, ctx.N, ctx.M);
    case K::add:
      return add(eval_x(e.kids[0], ctx), eval_x(e.kids[1], ctx));
    case K::sub:
      return sub(eval_x(e.kids[0], ctx), eval_x(e.kids[1], ctx));
    case K::mul:
      return mul(eval_x(e.kids[0], ctx), eval_x(e.kids[1], ctx));
    case K::div: {
      BiSeries a = eval_x(e.kids[0], ctx);
      QSeries d = eval_q(e.kids[1], ctx);
      QSeries dinv = invert(d, ctx.N);
      BiSeries r(ctx.M, min(a.q_order(), dinv.order()));
      for (long m = 0; m <= ctx.M; ++m)
        r.set_coeff_x(m, mul(a.coeff_x(m), dinv));
      return r;
    }
    case K::neg: {
      BiSeries a = eval_x(e.kids[0], ctx);
      return scaled(a, Rat(-1));
    }
    case K::pow: {
      if (e.ipar < 0) throw type_error("negative powers of x-graded values");
      BiSeries base = eval_x(e.kids[0], ctx);
      BiSeries acc = lift(QSeries::one(ctx.N));
      for (long i = 0; i < e.ipar; ++i) acc = mul(acc, base);
      return acc;
    }
    default:
      if (expr_type(e) == ExprType::Q) return lift(eval_q(ep, ctx));
      throw type_error("unsupported node in bivariate context");
  }
}

inline QSeries eval_q(const ExprPtr& ep, const EvalCtx& ctx) {
  const Expr& e = *ep;
  using K = Expr::Kind;
  switch (e.kind) {
    case K::scalar:
      return scaled(QSeries::one(Order::infinite()), e.value);
    case K::mono:
      if (e.m.xdeg != 0 || e.m.zdeg != 0)
        throw type_error("x/z monomial in univariate context");
      return QSeries::monomial(e.m, Order::infinite());
    case K::add:
      return add(eval_q(e.kids[0], ctx), eval_q(e.kids[1], ctx));
    case K::sub:
      return sub(eval_q(e.kids[0], ctx), eval_q(e.kids[1], ctx));
    case K::mul:
      return mul(eval_q(e.kids[0], ctx), eval_q(e.kids[1], ctx));
    case K::div: {
      QSeries a = eval_q(e.kids[0], ctx);
      QSeries b = eval_q(e.kids[1], ctx);
      return mul(a, invert(b, ctx.N));
    }
    case K::neg:
      return negated(eval_q(e.kids[0], ctx));
    case K::pow: {
      QSeries base = eval_q(e.kids[0], ctx);
      long k = e.ipar;
      if (k == 0) return QSeries::one(ctx.N);
      QSeries b = k > 0 ? base : invert(base, ctx.N);
      QSeries acc = b;
      for (long i = 1; i < std::abs(k); ++i) acc = mul(acc, b);
      return acc;
    }
    case K::poch: {
      ProductExpr pe;
      for (const auto& b : e.bases) {
        if (b.xdeg != 0 || b.zdeg != 0)
          throw type_error("x/z base in univariate Pochhammer");
        pe.mul_factor(b, e.nome, 1, e.len);
      }
      return eval_product(pe, ctx.N);
    }
    case K::jm:
      return eval_product(Jm(e.ipar), ctx.N);
    case K::jam:
      return eval_product(Jam(e.ipar, e.ipar2), ctx.N);
    case K::theta_h:
      return theta_h(e.r1, e.r2, ctx.N);
    case K::theta_g:
      return theta_g(e.r1, e.r2, ctx.N);
    case K::phi_node:
      return phi(ctx.N);
    case K::psi_node:
      return psi(ctx.N);
    case K::jcube_node:
      return jacobi_cube(ctx.N);
    case K::lth:
      return linear_theta(e.r1, e.r2, e.sign, e.r3, e.r4, ctx.N);
    case K::jts:
      if (e.m.zdeg != 0) throw type_error("z-graded theta outside CT_z");
      return jacobi_triple_sum(e.m, e.nome, ctx.N);
    case K::nahm:
      return nahm_sum(*e.quad, *e.dec, ctx.N);
    case K::bsum:
      return pair_sum(bailey_pair(e.name), ctx.N.inf ? rat(50) : ctx.N.v).lhs;
    case K::subst_pow: {
      if (e.r1 <= 0) throw domain_error("q -> q^m needs m > 0");
      EvalCtx inner = ctx;
      if (!ctx.N.inf) inner.N = Order::at(ctx.N.v / e.r1);
      return substitute_power(eval_q(e.kids[0], inner), e.r1);
    }
    case K::subst_neg:
      return substitute_signed(eval_q(e.kids[0], ctx));
    case K::xset:
      return eval_q(fold_x(e.kids[0], e.r1), ctx);
    case K::ct: {
      // Dropped z-tails and negative q-dips in the integrand both shrink
      // what can reach z^0; evaluate twice at widening (window, padding)
      // settings and require agreement before trusting the result.
      if (ctx.N.inf) throw domain_error("CT_z needs a finite order");
      long win = detail_eval::z_window(ctx);
      Rat upto = ctx.N.v;
      QSeries prev;
      bool have_prev = false;
      long pads[] = {8, 16, 28};
      long widens[] = {0, 4, 12};
      for (int i = 0; i < 3; ++i) {
        EvalCtx inner = ctx;
        inner.N = Order::at(ctx.N.v + pads[i]);
        QSeries cur =
            eval_z(e.kids[0], inner, win + widens[i]).ct().truncated(ctx.N);
        if (have_prev && equal_up_to(prev, cur, upto).equal) return cur;
        prev = cur;
        have_prev = true;
      }
      throw bound_certificate_error(
          "CT_z window too small: widening kept changing the constant term");
    }
    default:
      throw type_error("x-graded node in univariate context");
  }
}

// Evaluate with type dispatch; callers pick the overload they expect.
inline QSeries evaluate_q(const ExprPtr& e, const EvalCtx& ctx) {
  if (expr_type(*e) != ExprType::Q)
    throw type_error("expression is not univariate");
  return eval_to_order(
      [&](Order t) {
        EvalCtx c = ctx;
        c.N = t;
        return eval_q(e, c);
      },
      ctx.N.inf ? rat(50) : ctx.N.v);
}

inline BiSeries evaluate_x(const ExprPtr& e, const EvalCtx& ctx) {
  if (expr_type(*e) != ExprType::X)
    throw type_error("expression is not x-graded");
  // the retry loop mirrors eval_to_order for the bivariate case
  Rat want = ctx.N.inf ? rat(40) : ctx.N.v;
  Rat target = want;
  for (int i = 0; i < 5; ++i) {
    EvalCtx c = ctx;
    c.N = Order::at(target);
    BiSeries s = eval_x(e, c);
    if (s.q_order().covers(want)) return s;
    target += want - s.q_order().v;
  }
  throw insufficient_order_error("bivariate evaluation did not settle");
}

}  // namespace qnahm
