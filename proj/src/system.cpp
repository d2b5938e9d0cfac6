#include "bigres/system.hpp"

namespace bigres {

template <class F>
SystemF<F>::SystemF(const F& field, BiDegree d, std::array<BiPoly<F>, 3> f)
    : field_(field), d_(d), f_(std::move(f)) {
  if (d.a1 < 1 || d.a2 < 1)
    throw std::invalid_argument("system degree must be at least (1,1), got " + d.to_string());
  for (std::size_t i = 0; i < 3; ++i)
    if (f_[i].degree() != d)
      throw std::invalid_argument("f" + std::to_string(i) + " has degree " +
                                  f_[i].degree().to_string() + ", expected " + d.to_string());
  Matrix<F> m(field, 3, dimR(d));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < dimR(d); ++k) m(i, k) = f_[i].coeffs()[k];
  if (mat_rank(m) != 3) throw std::invalid_argument("f0, f1, f2 are linearly dependent");
}

template <class F>
std::string SystemF<F>::to_string() const {
  return "d=" + d_.to_string() + " over " + field_.spec().name() + "\n  f0 = " + f_[0].to_string() +
         "\n  f1 = " + f_[1].to_string() + "\n  f2 = " + f_[2].to_string();
}

template class SystemF<PrimeField>;
template class SystemF<RationalField>;

}  // namespace bigres
