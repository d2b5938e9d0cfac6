#include "bigres/field.hpp"

#include <cctype>
#include <string>

namespace bigres {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t k = 3; k * k <= n; k += 2)
    if (n % k == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p <= 3 || p >= (std::uint64_t{1} << 31) || !is_prime(p))
    throw std::invalid_argument("field modulus must be a prime p with 3 < p < 2^31, got " +
                                std::to_string(p));
  FieldSpec f;
  f.kind = Kind::PrimeField;
  f.p = static_cast<std::uint32_t>(p);
  return f;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::uint64_t parse_unsigned(const std::string& s) {
  if (s.empty() || s.size() > 18) throw std::invalid_argument("bad integer '" + s + "'");
  std::uint64_t v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("bad integer '" + s + "'");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

mpz_class parse_mpz(const std::string& s) {
  std::size_t i = 0;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) throw std::invalid_argument("bad integer '" + s + "'");
  for (std::size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k])))
      throw std::invalid_argument("bad integer '" + s + "'");
  return mpz_class(s[0] == '+' ? s.substr(1) : s, 10);
}

}  // namespace

FieldSpec FieldSpec::parse(std::string_view text) {
  std::string t = trim(text);
  if (t == "Q" || t == "QQ") return rationals();
  if (t.size() > 4 && (t.rfind("GF(", 0) == 0 || t.rfind("gf(", 0) == 0) && t.back() == ')')
    return prime(parse_unsigned(t.substr(3, t.size() - 4)));
  return prime(parse_unsigned(t));
}

std::string FieldSpec::name() const {
  return kind == Kind::Rationals ? "Q" : "GF(" + std::to_string(p) + ")";
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  FieldSpec::prime(p);  // validates
  magic_ = UINT64_C(0xFFFFFFFFFFFFFFFF) / p + 1;
}

PrimeField::Element PrimeField::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Element>(r);
}

PrimeField::Element PrimeField::from_mpz(const mpz_class& v) const {
  mpz_class r = v % p_;
  if (r < 0) r += p_;
  return static_cast<Element>(r.get_ui());
}

PrimeField::Element PrimeField::inv(Element a) const {
  if (a == 0) throw std::domain_error("division by zero in " + spec().name());
  std::int64_t t = 0, newt = 1, r = p_, newr = a;
  while (newr != 0) {
    std::int64_t q = r / newr;
    std::int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (t < 0) t += p_;
  return static_cast<Element>(t);
}

PrimeField::Element PrimeField::parse(std::string_view text) const {
  std::string t = trim(text);
  auto slash = t.find('/');
  if (slash == std::string::npos) return from_mpz(parse_mpz(t));
  Element num = from_mpz(parse_mpz(trim(t.substr(0, slash))));
  Element den = from_mpz(parse_mpz(trim(t.substr(slash + 1))));
  if (den == 0) throw std::invalid_argument("denominator vanishes mod " + std::to_string(p_));
  return div(num, den);
}

RationalField::Element RationalField::parse(std::string_view text) const {
  std::string t = trim(text);
  auto slash = t.find('/');
  if (slash == std::string::npos) return mpq_class(parse_mpz(t));
  mpz_class num = parse_mpz(trim(t.substr(0, slash)));
  mpz_class den = parse_mpz(trim(t.substr(slash + 1)));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + t + "'");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

RationalField::Element RationalField::inv(const Element& a) const {
  if (sgn(a) == 0) throw std::domain_error("division by zero in Q");
  return 1 / a;
}

}  // namespace bigres
