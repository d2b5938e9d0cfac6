#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace bigres {

/// Raised for failed preconditions and impossible configurations detected
/// during a computation. The CLI maps it to exit code 1.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t kDefaultPrime = 32003;

bool is_prime(std::uint64_t n);

struct FieldSpec {
  enum class Kind { Rationals, PrimeField };
  Kind kind = Kind::Rationals;
  std::uint32_t p = 0;

  static FieldSpec rationals() { return {}; }
  /// Throws std::invalid_argument unless p is a prime with 3 < p < 2^31.
  static FieldSpec prime(std::uint64_t p);
  /// Accepts "Q", "QQ", "GF(p)" or a bare prime.
  static FieldSpec parse(std::string_view text);

  bool is_prime_field() const { return kind == Kind::PrimeField; }
  std::string name() const;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Integers mod p for a runtime prime p < 2^31. Elements are canonical
/// representatives in [0, p).
class PrimeField {
 public:
  using Element = std::uint32_t;

  explicit PrimeField(std::uint32_t p = kDefaultPrime);

  std::uint32_t modulus() const { return p_; }
  FieldSpec spec() const { return FieldSpec::prime(p_); }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  bool is_zero(Element a) const { return a == 0; }
  bool is_one(Element a) const { return a == 1; }

  Element from_int(std::int64_t v) const;
  Element from_mpz(const mpz_class& v) const;
  /// Integer or "num/den" string.
  Element parse(std::string_view text) const;
  std::string to_string(Element a) const { return std::to_string(a); }

  Element add(Element a, Element b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const {
    return reduce(static_cast<std::uint64_t>(a) * b);
  }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  /// x mod p for any 64-bit x.
  Element reduce(std::uint64_t x) const {
    if (x < (std::uint64_t{1} << 32)) return fastmod(static_cast<std::uint32_t>(x));
    return static_cast<Element>(x % p_);
  }

  /// True when (p-1)^2 + p fits in 32 bits, so products can be reduced with
  /// reduce_u32 without widening.
  bool small_modulus() const { return p_ < 65536; }
  Element reduce_u32(std::uint32_t x) const { return fastmod(x); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  Element fastmod(std::uint32_t a) const {
    std::uint64_t low = magic_ * a;
    return static_cast<Element>((static_cast<__uint128_t>(low) * p_) >> 64);
  }

  std::uint32_t p_;
  std::uint64_t magic_;
};

/// Exact rationals backed by GMP.
class RationalField {
 public:
  using Element = mpq_class;

  FieldSpec spec() const { return FieldSpec::rationals(); }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool is_one(const Element& a) const { return a == 1; }

  Element from_int(std::int64_t v) const { return mpq_class(mpz_class(std::to_string(v))); }
  Element from_mpz(const mpz_class& v) const { return mpq_class(v); }
  Element parse(std::string_view text) const;
  std::string to_string(const Element& a) const { return a.get_str(); }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const;
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

}  // namespace bigres
