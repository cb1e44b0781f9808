#pragma once

#include <gmpxx.h>

#include <numeric>
#include <stdexcept>
#include <string>

namespace qnahm {

// Exact rational scalar. GMP keeps values canonical (reduced, positive
// denominator), which is exactly the Exponent/coefficient contract.
using Rat = mpq_class;

class qnahm_error : public std::runtime_error {
 public:
  explicit qnahm_error(const std::string& what) : std::runtime_error(what) {}
};

class incompatible_scale_error : public qnahm_error {
 public:
  using qnahm_error::qnahm_error;
};
class non_invertible_error : public qnahm_error {
 public:
  using qnahm_error::qnahm_error;
};
class divergent_product_error : public qnahm_error {
 public:
  using qnahm_error::qnahm_error;
};
class divergent_theta_error : public qnahm_error {
 public:
  using qnahm_error::qnahm_error;
};
class insufficient_order_error : public qnahm_error {
 public:
  using qnahm_error::qnahm_error;
};
class unsupported_substitution_error : public qnahm_error {
 public:
  using qnahm_error::qnahm_error;
};
class domain_error : public qnahm_error {
 public:
  using qnahm_error::qnahm_error;
};
class bound_certificate_error : public qnahm_error {
 public:
  using qnahm_error::qnahm_error;
};

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw domain_error("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "p", "-p", "p/q" with optional whitespace.
inline Rat parse_rat(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw domain_error("empty rational literal");
  Rat r;
  if (r.set_str(t, 10) != 0)
    throw domain_error("bad rational literal: '" + s + "'");
  r.canonicalize();
  if (r.get_den() == 0) throw domain_error("rational with zero denominator");
  return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline bool rat_is_integer(const Rat& r) { return r.get_den() == 1; }

inline long rat_floor_long(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  if (!q.fits_slong_p()) throw domain_error("rational floor out of range");
  return q.get_si();
}

inline long rat_ceil_long(const Rat& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  if (!q.fits_slong_p()) throw domain_error("rational ceil out of range");
  return q.get_si();
}

inline long rat_num_long(const Rat& r) {
  if (!r.get_num().fits_slong_p()) throw domain_error("numerator out of range");
  return r.get_num().get_si();
}

inline long rat_den_long(const Rat& r) {
  if (!r.get_den().fits_slong_p())
    throw domain_error("denominator out of range");
  return r.get_den().get_si();
}

inline long lcm_long(long a, long b) { return std::lcm(a, b); }

// Integer power with nonnegative exponent.
inline Rat rat_pow(const Rat& base, long e) {
  if (e < 0) throw domain_error("rat_pow: negative exponent");
  Rat acc(1), b = base;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

}  // namespace qnahm
