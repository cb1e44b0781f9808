#pragma once

#include <cctype>
#include <sstream>

#include "qnahm/expr.hpp"

namespace qnahm {

class parse_error : public qnahm_error {
 public:
  parse_error(const std::string& what, size_t offset)
      : qnahm_error(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  size_t offset() const { return offset_; }

 private:
  size_t offset_;
};

// Recursive-descent parser for the catalog expression grammar:
//
//   expr    := term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := atom ('^' int)?
//   atom    := rational | monomial | call | '(' expr ')' | '-' atom
//   monomial:= product of q^(r), x^(k), z^(k) and rational factors
//   call    := P(b,...;nome)_inf | P(b,...;nome)_k | J(m) | J(a,m)
//            | theta_h(j,m) | theta_g(j,m) | phi | psi | jcube
//            | LTH(u,w,s;alpha,beta) | JTS(zm;nome) | bsum(NAME)
//            | subst(E, q->q^(m)) | subst(E, q->-q)
//            | xset(E, x->q^(r)) | CT_z(E) | nahm{...}
class Parser {
 public:
  explicit Parser(std::string src) : src_(std::move(src)) {}

  ExprPtr parse() {
    ExprPtr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) fail("trailing input after expression");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw parse_error(what, pos_);
  }

  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  bool peek_word(const std::string& w) {
    skip_ws();
    if (src_.compare(pos_, w.size(), w) != 0) return false;
    size_t end = pos_ + w.size();
    if (end < src_.size() &&
        (std::isalnum(static_cast<unsigned char>(src_[end])) ||
         src_[end] == '_'))
      return false;
    return true;
  }

  bool eat_word(const std::string& w) {
    if (!peek_word(w)) return false;
    pos_ += w.size();
    return true;
  }

  std::string parse_name() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '_' || src_[pos_] == '.'))
      ++pos_;
    if (pos_ == start) fail("expected a name");
    return src_.substr(start, pos_ - start);
  }

  long parse_int() {
    skip_ws();
    size_t start = pos_;
    if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) ++pos_;
    size_t digits = pos_;
    while (pos_ < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    if (pos_ == digits) fail("expected an integer");
    return std::stol(src_.substr(start, pos_ - start));
  }

  Rat parse_rational() {
    long num = parse_int();
    // a fraction bar binds only when the denominator follows immediately;
    // "3 / x" stays a division
    if (pos_ + 1 < src_.size() && src_[pos_] == '/' &&
        std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
      ++pos_;
      long den = parse_int();
      if (den == 0) fail("zero denominator");
      return rat(num, den);
    }
    return Rat(num);
  }

  // '^' exponent for q: integer or (rational)
  Rat parse_q_exponent() {
    skip_ws();
    if (eat('(')) {
      Rat r = parse_rational();
      expect(')');
      return r;
    }
    return Rat(parse_int());
  }

  long parse_i_exponent() {
    skip_ws();
    if (eat('(')) {
      long v = parse_int();
      expect(')');
      return v;
    }
    return parse_int();
  }

  bool starts_monomial_part() {
    skip_ws();
    if (pos_ >= src_.size()) return false;
    char c = src_[pos_];
    if (c == 'q' || c == 'x' || c == 'z') {
      size_t end = pos_ + 1;
      return end >= src_.size() ||
             !(std::isalnum(static_cast<unsigned char>(src_[end])) ||
               src_[end] == '_');
    }
    return c == '-' || c == '+' ||
           std::isdigit(static_cast<unsigned char>(c));
  }

  // A signed monomial literal: optional sign/rational coefficient and q/x/z
  // powers joined by '*'.
  SignedMonomial parse_monomial() {
    SignedMonomial m{Rat(1), Rat(0)};
    bool any = false;
    skip_ws();
    if (eat('-')) m.coeff = -m.coeff;
    while (true) {
      skip_ws();
      if (pos_ >= src_.size()) break;
      char c = src_[pos_];
      if (c == 'q' && word_char_ends(pos_ + 1)) {
        ++pos_;
        m.exp += eat('^') ? parse_q_exponent() : Rat(1);
        any = true;
      } else if (c == 'x' && word_char_ends(pos_ + 1)) {
        ++pos_;
        m.xdeg += eat('^') ? parse_i_exponent() : 1;
        any = true;
      } else if (c == 'z' && word_char_ends(pos_ + 1)) {
        ++pos_;
        m.zdeg += eat('^') ? parse_i_exponent() : 1;
        any = true;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        m.coeff *= parse_rational();
        any = true;
      } else {
        break;
      }
      size_t save = pos_;
      if (!eat('*')) break;
      skip_ws();
      if (!starts_monomial_part()) {
        pos_ = save;
        break;
      }
    }
    if (!any) fail("expected a monomial");
    return m;
  }

  bool word_char_ends(size_t end) const {
    return end >= src_.size() ||
           !(std::isalnum(static_cast<unsigned char>(src_[end])) ||
             src_[end] == '_');
  }

  ExprPtr parse_expr() {
    ExprPtr e = parse_term();
    while (true) {
      if (eat('+'))
        e = ex::add(e, parse_term());
      else if (eat('-'))
        e = ex::sub(e, parse_term());
      else
        return e;
    }
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_factor();
    while (true) {
      if (eat('*'))
        e = ex::mul(e, parse_factor());
      else if (eat('/'))
        e = ex::div(e, parse_factor());
      else
        return e;
    }
  }

  ExprPtr parse_factor() {
    ExprPtr a = parse_atom();
    while (eat('^')) a = ex::pow(a, parse_i_exponent());
    return a;
  }

  ExprPtr parse_atom() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    if (eat('(')) {
      ExprPtr e = parse_expr();
      expect(')');
      return e;
    }
    if (peek('-')) {
      ++pos_;
      return ex::neg(parse_factor());
    }
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      // a literal coefficient may start a monomial: 2*q^3, 1/2*x
      SignedMonomial m = parse_monomial();
      if (m.exp == 0 && m.xdeg == 0 && m.zdeg == 0) return ex::scalar(m.coeff);
      return ex::mono(m);
    }
    if (peek_word("P")) return parse_poch();
    if (peek_word("J")) return parse_J();
    if (peek_word("theta_h")) return parse_theta(false);
    if (peek_word("theta_g")) return parse_theta(true);
    if (eat_word("phi")) {
      Expr e;
      e.kind = Expr::Kind::phi_node;
      return ex::make(std::move(e));
    }
    if (eat_word("psi")) {
      Expr e;
      e.kind = Expr::Kind::psi_node;
      return ex::make(std::move(e));
    }
    if (eat_word("jcube")) {
      Expr e;
      e.kind = Expr::Kind::jcube_node;
      return ex::make(std::move(e));
    }
    if (peek_word("LTH")) return parse_lth();
    if (peek_word("JTS")) return parse_jts();
    if (peek_word("bsum")) return parse_bsum();
    if (peek_word("subst")) return parse_subst();
    if (peek_word("xset")) return parse_xset();
    if (peek_word("CT_z")) return parse_ct();
    if (peek_word("nahm")) return parse_nahm();
    if (c == 'q' || c == 'x' || c == 'z') return ex::mono(parse_monomial());
    fail("expected an expression atom");
  }

  ExprPtr parse_poch() {
    eat_word("P");
    expect('(');
    std::vector<SignedMonomial> bases;
    bases.push_back(parse_monomial());
    while (eat(',')) bases.push_back(parse_monomial());
    expect(';');
    SignedMonomial nome = parse_monomial();
    expect(')');
    expect('_');
    long len;
    if (eat_word("inf")) {
      len = -1;
    } else {
      len = parse_int();
      if (len < 0) fail("negative Pochhammer length");
    }
    if (nome.xdeg != 0 || nome.zdeg != 0)
      fail("Pochhammer nome must be a q-monomial");
    return ex::poch(std::move(bases), nome, len);
  }

  ExprPtr parse_J() {
    eat_word("J");
    expect('(');
    long a = parse_int();
    if (eat(',')) {
      long m = parse_int();
      expect(')');
      if (a <= 0 || a >= m) fail("J(a,m) requires 0 < a < m");
      return ex::jam(a, m);
    }
    expect(')');
    if (a <= 0) fail("J(m) requires m > 0");
    return ex::jm(a);
  }

  ExprPtr parse_theta(bool signed_sum) {
    eat_word(signed_sum ? "theta_g" : "theta_h");
    expect('(');
    Rat j = parse_rational();
    expect(',');
    Rat m = parse_rational();
    expect(')');
    if (m <= 0) fail("theta needs m > 0");
    return ex::theta(signed_sum, j, m);
  }

  ExprPtr parse_lth() {
    eat_word("LTH");
    expect('(');
    Rat u = parse_rational();
    expect(',');
    Rat w = parse_rational();
    expect(',');
    Rat s = parse_rational();
    expect(';');
    Rat alpha = parse_rational();
    expect(',');
    Rat beta = parse_rational();
    expect(')');
    if (s != 1 && s != -1) fail("LTH sign must be 1 or -1");
    if (alpha <= 0) fail("LTH needs alpha > 0");
    return ex::lth(u, w, s == 1 ? 1 : -1, alpha, beta);
  }

  ExprPtr parse_jts() {
    eat_word("JTS");
    expect('(');
    SignedMonomial zm = parse_monomial();
    expect(';');
    SignedMonomial nome = parse_monomial();
    expect(')');
    if (nome.xdeg != 0 || nome.zdeg != 0) fail("JTS nome must be a q-monomial");
    return ex::jts(zm, nome);
  }

  ExprPtr parse_bsum() {
    eat_word("bsum");
    expect('(');
    std::string name = parse_name();
    expect(')');
    return ex::bsum(std::move(name));
  }

  ExprPtr parse_subst() {
    eat_word("subst");
    expect('(');
    ExprPtr e = parse_expr();
    expect(',');
    skip_ws();
    if (!eat_word("q")) fail("expected 'q' in substitution");
    if (!(eat('-') && eat('>'))) fail("expected '->' in substitution");
    skip_ws();
    if (eat('-')) {
      if (!eat_word("q")) fail("expected 'q' after '-'");
      expect(')');
      return ex::subst_neg(e);
    }
    if (!eat_word("q")) fail("expected 'q' or '-q' after '->'");
    Rat m = eat('^') ? parse_q_exponent() : Rat(1);
    expect(')');
    if (m <= 0) fail("q -> q^m needs m > 0");
    return ex::subst_pow(e, m);
  }

  ExprPtr parse_xset() {
    eat_word("xset");
    expect('(');
    ExprPtr e = parse_expr();
    expect(',');
    skip_ws();
    if (!eat_word("x")) fail("expected 'x' in xset");
    if (!(eat('-') && eat('>'))) fail("expected '->' in xset");
    SignedMonomial m = parse_monomial();
    if (m.coeff != 1 || m.xdeg != 0 || m.zdeg != 0)
      fail("xset target must be a positive q-power");
    expect(')');
    return ex::xset(e, m.exp);
  }

  ExprPtr parse_ct() {
    eat_word("CT_z");
    expect('(');
    ExprPtr e = parse_expr();
    expect(')');
    return ex::ct(e);
  }

  RatVec parse_rat_list() {
    RatVec v;
    expect('[');
    v.push_back(parse_rational());
    while (eat(',')) v.push_back(parse_rational());
    expect(']');
    return v;
  }

  ExprPtr parse_nahm() {
    eat_word("nahm");
    expect('{');
    NahmQuadruple quad;
    SumDecoration dec;
    bool have_A = false, have_b = false, have_c = false, have_d = false;
    while (true) {
      skip_ws();
      std::string field = parse_name();
      expect('=');
      if (field == "A") {
        expect('[');
        quad.A.clear();
        quad.A.push_back(parse_rat_list());
        while (eat(',')) quad.A.push_back(parse_rat_list());
        expect(']');
        have_A = true;
      } else if (field == "b") {
        quad.b = parse_rat_list();
        have_b = true;
      } else if (field == "c") {
        quad.c = parse_rational();
        have_c = true;
      } else if (field == "d") {
        RatVec d = parse_rat_list();
        quad.d.clear();
        for (const Rat& x : d) {
          if (!rat_is_integer(x) || x <= 0) fail("d entries must be positive integers");
          quad.d.push_back(rat_num_long(x));
        }
        have_d = true;
      } else if (field == "u") {
        expect('[');
        dec.weights.clear();
        dec.weights.push_back(parse_monomial());
        while (eat(',')) dec.weights.push_back(parse_monomial());
        expect(']');
      } else if (field == "parity") {
        expect('[');
        dec.parity.clear();
        do {
          skip_ws();
          if (eat('e'))
            dec.parity.push_back(Parity::even);
          else if (eat('o'))
            dec.parity.push_back(Parity::odd);
          else if (eat('*'))
            dec.parity.push_back(Parity::any);
          else
            fail("parity entries are e, o or *");
        } while (eat(','));
        expect(']');
      } else if (field == "x") {
        RatVec g = parse_rat_list();
        dec.x_grading.clear();
        for (const Rat& x : g) {
          if (!rat_is_integer(x) || x < 0) fail("x grading entries must be nonnegative integers");
          dec.x_grading.push_back(rat_num_long(x));
        }
      } else {
        fail("unknown nahm field '" + field + "'");
      }
      if (!eat(';')) break;
    }
    expect('}');
    if (!have_A || !have_d) fail("nahm literal needs at least A and d");
    size_t r = quad.A.size();
    for (const auto& row : quad.A)
      if (row.size() != r) fail("nahm A must be square");
    if (!have_b) quad.b.assign(r, Rat(0));
    if (!have_c) quad.c = Rat(0);
    if (quad.d.size() != r || quad.b.size() != r) fail("nahm arity mismatch");
    if (!dec.weights.empty() && dec.weights.size() != r)
      fail("nahm u arity mismatch");
    if (!dec.parity.empty() && dec.parity.size() != r)
      fail("nahm parity arity mismatch");
    if (!dec.x_grading.empty() && dec.x_grading.size() != r)
      fail("nahm x arity mismatch");
    return ex::nahm(std::move(quad), std::move(dec));
  }

  std::string src_;
  size_t pos_ = 0;
};

inline ExprPtr parse_expr_text(const std::string& src) {
  return Parser(src).parse();
}

// --------------------------------------------------------------------------
// Canonical printer (round-trips through the parser)
// --------------------------------------------------------------------------

namespace printer_detail {

inline std::string print_rat(const Rat& r) { return rat_str(r); }

inline std::string print_exp_rat(const Rat& r) {
  if (rat_is_integer(r) && r >= 0) return rat_str(r);
  return "(" + rat_str(r) + ")";
}

inline std::string print_monomial(const SignedMonomial& m) {
  std::string out;
  Rat c = m.coeff;
  if (c == -1 && (m.exp != 0 || m.xdeg != 0 || m.zdeg != 0)) {
    out += "-";
  } else if (c != 1 || (m.exp == 0 && m.xdeg == 0 && m.zdeg == 0)) {
    out += print_rat(c);
    if (m.exp != 0 || m.xdeg != 0 || m.zdeg != 0) out += "*";
  }
  bool first = true;
  auto piece = [&](const std::string& s) {
    if (!first) out += "*";
    out += s;
    first = false;
  };
  if (m.exp != 0) piece("q^" + print_exp_rat(m.exp));
  if (m.xdeg != 0)
    piece(m.xdeg == 1 ? "x" : "x^" + print_exp_rat(Rat(m.xdeg)));
  if (m.zdeg != 0)
    piece(m.zdeg == 1 ? "z" : "z^" + print_exp_rat(Rat(m.zdeg)));
  return out;
}

}  // namespace printer_detail

inline std::string print_expr(const ExprPtr& ep) {
  using K = Expr::Kind;
  namespace pd = printer_detail;
  const Expr& e = *ep;
  switch (e.kind) {
    case K::scalar:
      return e.value < 0 ? "(" + pd::print_rat(e.value) + ")"
                         : pd::print_rat(e.value);
    case K::mono: {
      std::string s = pd::print_monomial(e.m);
      return s[0] == '-' ? "(" + s + ")" : s;
    }
    case K::add:
      return "(" + print_expr(e.kids[0]) + " + " + print_expr(e.kids[1]) + ")";
    case K::sub:
      return "(" + print_expr(e.kids[0]) + " - " + print_expr(e.kids[1]) + ")";
    case K::mul:
      return "(" + print_expr(e.kids[0]) + " * " + print_expr(e.kids[1]) + ")";
    case K::div:
      return "(" + print_expr(e.kids[0]) + " / " + print_expr(e.kids[1]) + ")";
    case K::neg:
      return "(-" + print_expr(e.kids[0]) + ")";
    case K::pow:
      return print_expr(e.kids[0]) + "^" +
             (e.ipar < 0 ? "(" + std::to_string(e.ipar) + ")"
                         : std::to_string(e.ipar));
    case K::poch: {
      std::string s = "P(";
      for (size_t i = 0; i < e.bases.size(); ++i) {
        if (i) s += ",";
        s += pd::print_monomial(e.bases[i]);
      }
      s += ";" + pd::print_monomial(e.nome) + ")_";
      s += e.len < 0 ? "inf" : std::to_string(e.len);
      return s;
    }
    case K::jm:
      return "J(" + std::to_string(e.ipar) + ")";
    case K::jam:
      return "J(" + std::to_string(e.ipar) + "," + std::to_string(e.ipar2) +
             ")";
    case K::theta_h:
      return "theta_h(" + pd::print_rat(e.r1) + "," + pd::print_rat(e.r2) + ")";
    case K::theta_g:
      return "theta_g(" + pd::print_rat(e.r1) + "," + pd::print_rat(e.r2) + ")";
    case K::phi_node:
      return "phi";
    case K::psi_node:
      return "psi";
    case K::jcube_node:
      return "jcube";
    case K::lth:
      return "LTH(" + pd::print_rat(e.r1) + "," + pd::print_rat(e.r2) + "," +
             std::to_string(e.sign) + ";" + pd::print_rat(e.r3) + "," +
             pd::print_rat(e.r4) + ")";
    case K::jts:
      return "JTS(" + pd::print_monomial(e.m) + ";" +
             pd::print_monomial(e.nome) + ")";
    case K::nahm: {
      std::string s = "nahm{A=[";
      for (size_t i = 0; i < e.quad->A.size(); ++i) {
        if (i) s += ",";
        s += "[";
        for (size_t j = 0; j < e.quad->A[i].size(); ++j) {
          if (j) s += ",";
          s += pd::print_rat(e.quad->A[i][j]);
        }
        s += "]";
      }
      s += "];b=[";
      for (size_t i = 0; i < e.quad->b.size(); ++i) {
        if (i) s += ",";
        s += pd::print_rat(e.quad->b[i]);
      }
      s += "];c=" + pd::print_rat(e.quad->c) + ";d=[";
      for (size_t i = 0; i < e.quad->d.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(e.quad->d[i]);
      }
      s += "]";
      if (e.dec && !e.dec->weights.empty()) {
        s += ";u=[";
        for (size_t i = 0; i < e.dec->weights.size(); ++i) {
          if (i) s += ",";
          s += pd::print_monomial(e.dec->weights[i]);
        }
        s += "]";
      }
      if (e.dec && !e.dec->parity.empty()) {
        s += ";parity=[";
        for (size_t i = 0; i < e.dec->parity.size(); ++i) {
          if (i) s += ",";
          s += e.dec->parity[i] == Parity::even
                   ? "e"
                   : (e.dec->parity[i] == Parity::odd ? "o" : "*");
        }
        s += "]";
      }
      if (e.dec && !e.dec->x_grading.empty()) {
        s += ";x=[";
        for (size_t i = 0; i < e.dec->x_grading.size(); ++i) {
          if (i) s += ",";
          s += std::to_string(e.dec->x_grading[i]);
        }
        s += "]";
      }
      s += "}";
      return s;
    }
    case K::bsum:
      return "bsum(" + e.name + ")";
    case K::subst_pow:
      return "subst(" + print_expr(e.kids[0]) + ", q->q^" +
             pd::print_exp_rat(e.r1) + ")";
    case K::subst_neg:
      return "subst(" + print_expr(e.kids[0]) + ", q->-q)";
    case K::xset:
      return "xset(" + print_expr(e.kids[0]) + ", x->" +
             pd::print_monomial(SignedMonomial{Rat(1), e.r1}) + ")";
    case K::ct:
      return "CT_z(" + print_expr(e.kids[0]) + ")";
  }
  throw qnahm_error("unreachable printer case");
}

// Structural equality, used by the round-trip property test.
inline bool expr_equal(const ExprPtr& pa, const ExprPtr& pb) {
  const Expr& a = *pa;
  const Expr& b = *pb;
  if (a.kind != b.kind) return false;
  auto mono_eq = [](const SignedMonomial& x, const SignedMonomial& y) {
    return x.coeff == y.coeff && x.exp == y.exp && x.xdeg == y.xdeg &&
           x.zdeg == y.zdeg;
  };
  if (a.value != b.value || !mono_eq(a.m, b.m) || !mono_eq(a.nome, b.nome))
    return false;
  if (a.bases.size() != b.bases.size()) return false;
  for (size_t i = 0; i < a.bases.size(); ++i)
    if (!mono_eq(a.bases[i], b.bases[i])) return false;
  if (a.len != b.len || a.ipar != b.ipar || a.ipar2 != b.ipar2) return false;
  if (a.r1 != b.r1 || a.r2 != b.r2 || a.r3 != b.r3 || a.r4 != b.r4)
    return false;
  if (a.sign != b.sign || a.name != b.name) return false;
  if (static_cast<bool>(a.quad) != static_cast<bool>(b.quad)) return false;
  if (a.quad) {
    if (a.quad->A != b.quad->A || a.quad->b != b.quad->b ||
        a.quad->c != b.quad->c || a.quad->d != b.quad->d)
      return false;
    if (a.dec->weights.size() != b.dec->weights.size()) return false;
    for (size_t i = 0; i < a.dec->weights.size(); ++i)
      if (!mono_eq(a.dec->weights[i], b.dec->weights[i])) return false;
    if (a.dec->parity != b.dec->parity ||
        a.dec->x_grading != b.dec->x_grading)
      return false;
  }
  if (a.kids.size() != b.kids.size()) return false;
  for (size_t i = 0; i < a.kids.size(); ++i)
    if (!expr_equal(a.kids[i], b.kids[i])) return false;
  return true;
}

}  // namespace qnahm
