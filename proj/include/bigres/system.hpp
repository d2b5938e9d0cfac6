#pragma once

#include <array>
#include <string>
#include <variant>

#include "bigres/bipoly.hpp"

namespace bigres {

/// Three bihomogeneous polynomials of common bidegree d >= (1,1), linearly
/// independent over the ground field.
template <class F>
class SystemF {
 public:
  using Element = typename F::Element;

  SystemF() = default;
  /// Throws std::invalid_argument if a degree differs from d, d is not
  /// >= (1,1), or the polynomials are linearly dependent.
  SystemF(const F& field, BiDegree d, std::array<BiPoly<F>, 3> f);

  const F& field() const { return field_; }
  BiDegree d() const { return d_; }
  const std::array<BiPoly<F>, 3>& f() const { return f_; }
  const BiPoly<F>& operator[](std::size_t i) const { return f_[i]; }

  std::string to_string() const;

 private:
  F field_{};
  BiDegree d_{};
  std::array<BiPoly<F>, 3> f_;
};

using AnySystem = std::variant<SystemF<PrimeField>, SystemF<RationalField>>;

}  // namespace bigres
