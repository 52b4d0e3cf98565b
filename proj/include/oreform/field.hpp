#pragma once

#include <gmpxx.h>

#include <string>

#include "oreform/errors.hpp"

namespace oreform {

/// Field element. Over QQ a canonical GMP rational; over GF(p) an integer
/// residue in [0, p) stored with denominator 1.
using Scalar = mpq_class;

/// Coefficient field descriptor: QQ (characteristic 0) or GF(p).
///
/// All scalar arithmetic goes through the field so that residues stay
/// reduced. The descriptor is a small value type and is copied freely.
class Field {
 public:
  Field() = default;

  static Field rationals() { return Field{}; }

  static Field prime(unsigned long p) {
    if (p < 2) throw DomainError("field characteristic must be a prime >= 2");
    mpz_class z(p);
    if (mpz_probab_prime_p(z.get_mpz_t(), 30) == 0)
      throw DomainError("GF(" + std::to_string(p) + "): modulus is not prime");
    return Field(p);
  }

  unsigned long characteristic() const noexcept { return p_; }
  bool is_rational() const noexcept { return p_ == 0; }

  std::string name() const { return p_ == 0 ? "QQ" : "GF(" + std::to_string(p_) + ")"; }

  Scalar zero() const { return Scalar(0); }
  Scalar one() const { return Scalar(1); }

  Scalar from_int(long v) const { return reduce(Scalar(v)); }

  /// Maps an arbitrary rational into the field (num * den^-1 mod p).
  Scalar reduce(const Scalar& q) const {
    if (p_ == 0) {
      Scalar r = q;
      r.canonicalize();
      return r;
    }
    mpz_class m(p_);
    mpz_class num = q.get_num() % m;
    if (num < 0) num += m;
    mpz_class den = q.get_den() % m;
    if (den < 0) den += m;
    if (den == 0) throw DomainError("rational with denominator divisible by p in " + name());
    if (den != 1) {
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
      num = (num * inv) % m;
    }
    return Scalar(num);
  }

  Scalar add(const Scalar& a, const Scalar& b) const {
    if (p_ == 0) return a + b;
    return wrap(a.get_num() + b.get_num());
  }

  Scalar sub(const Scalar& a, const Scalar& b) const {
    if (p_ == 0) return a - b;
    return wrap(a.get_num() - b.get_num());
  }

  Scalar neg(const Scalar& a) const {
    if (p_ == 0) return -a;
    return wrap(-a.get_num());
  }

  Scalar mul(const Scalar& a, const Scalar& b) const {
    if (p_ == 0) {
      if (a.get_den() == 1 && b.get_den() == 1) {
        Scalar r;
        mpz_mul(r.get_num_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
        return r;
      }
      return a * b;
    }
    return wrap(a.get_num() * b.get_num());
  }

  Scalar inv(const Scalar& a) const {
    if (sgn(a) == 0) throw DomainError("division by zero in " + name());
    if (p_ == 0) return 1 / a;
    mpz_class m(p_), r;
    mpz_invert(r.get_mpz_t(), a.get_num().get_mpz_t(), m.get_mpz_t());
    return Scalar(r);
  }

  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

  Scalar pow(const Scalar& a, unsigned long e) const {
    Scalar r = one(), b = a;
    while (e != 0) {
      if (e & 1UL) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(unsigned long p) : p_(p) {}

  Scalar wrap(mpz_class z) const {
    mpz_class m(p_);
    z %= m;
    if (z < 0) z += m;
    return Scalar(z);
  }

  unsigned long p_ = 0;
};

inline bool is_zero(const Scalar& a) { return sgn(a) == 0; }

inline std::string scalar_to_string(const Scalar& a) { return a.get_str(); }

/// Bit length of the largest integer in a reduced rational (numerator or denominator).
inline std::size_t scalar_bits(const Scalar& a) {
  std::size_t n = sgn(a) == 0 ? 0 : mpz_sizeinbase(a.get_num().get_mpz_t(), 2);
  std::size_t d = mpz_sizeinbase(a.get_den().get_mpz_t(), 2);
  return n > d ? n : d;
}

}  // namespace oreform
