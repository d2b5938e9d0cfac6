#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bigres/system.hpp"

namespace bigres {

/// Basis of a strand of R1 (x) w*_{R2} (side UV: polynomial in s,t, inverse in
/// u,v) or of w*_{R1} (x) R2 (side ST: inverse in s,t, polynomial in u,v).
///
/// Side UV, first = s-exponent c in [0,stPart], second = i in [0,uvOrder]:
///   s^c t^(stPart-c) (x) 1/(u^(i+1) v^(uvOrder-i+1)).
/// Side ST, first = i in [0,stOrder], second = u-exponent e in [0,uvPart]:
///   1/(s^(i+1) t^(stOrder-i+1)) (x) u^e v^(uvPart-e).
/// Elements are ordered by first descending, then second descending.
struct InverseStrandBasis {
  enum class Side { UV, ST };
  Side side = Side::UV;
  int n_first = -1;
  int n_second = -1;

  /// Strand of part 1 (side UV) or part 2 (side ST) of H^2 at bidegree b for
  /// the shift by 3d: the domain of phi1/phi2 at b.
  static InverseStrandBasis domain(int part, BiDegree d, BiDegree b);
  static InverseStrandBasis codomain(int part, BiDegree d, BiDegree b);

  std::size_t size() const {
    return (n_first >= 0 && n_second >= 0)
               ? static_cast<std::size_t>(n_first + 1) * static_cast<std::size_t>(n_second + 1)
               : 0;
  }
  std::size_t index(int first, int second) const {
    return static_cast<std::size_t>(n_first - first) * static_cast<std::size_t>(n_second + 1) +
           static_cast<std::size_t>(n_second - second);
  }
  std::pair<int, int> coords(std::size_t idx) const {
    const auto w = static_cast<std::size_t>(n_second + 1);
    return {n_first - static_cast<int>(idx / w), n_second - static_cast<int>(idx % w)};
  }
  /// Image of basis element (first, second) under multiplication by
  /// s^ms t^mt u^mu v^mv: the index in `target` or nullopt when truncated.
  std::optional<std::size_t> act(int first, int second, const Monomial& m,
                                 const InverseStrandBasis& target) const;
  /// Shape of the strand reached by multiplying with a monomial of degree e.
  InverseStrandBasis shifted(BiDegree e) const;
  std::string symbol(std::size_t idx) const;
  std::string describe() const;
};

template <class F>
struct StrandMap {
  Matrix<F> matrix;
  std::string domain_label;
  std::string codomain_label;
};

/// phi1 (part 1) and phi2 (part 2) at bidegree a; the three codomain blocks
/// are stacked in the order f0, f1, f2.
template <class F>
std::pair<StrandMap<F>, StrandMap<F>> phi_matrices(const SystemF<F>& sys, BiDegree a);
template <class F>
RowSystem<F> phi_rows(const SystemF<F>& sys, BiDegree a, int part);
/// Same rows for three polynomials of degree d that need not form a system.
template <class F>
RowSystem<F> phi_rows(const F& field, BiDegree d, const std::array<BiPoly<F>, 3>& polys, BiDegree a, int part);

/// Kernel of phi_part at a: the part-th summand of (H1)_a.
template <class F>
struct H1Piece {
  BiDegree a;
  int part = 1;
  InverseStrandBasis basis;
  /// Coordinates of a kernel element are its entries at these positions.
  std::vector<std::size_t> free_cols;
  std::vector<Vec<F>> kernel;
  std::size_t dim() const { return kernel.size(); }
};

template <class F>
H1Piece<F> compute_h1_piece(const SystemF<F>& sys, BiDegree a, int part);

/// (R/I)_b: the ideal strand in echelon form and its standard monomials.
template <class F>
struct QuotientStrand {
  BiDegree b;
  Echelon<F> ideal;
  std::vector<std::size_t> standard;
  /// position in strand_basis(b) -> index in `standard`, or -1.
  std::vector<long> standard_index;
  std::size_t dim() const { return standard.size(); }
  /// Normal form of the monomial at strand position pos, as (standard index,
  /// coefficient) pairs.
  std::vector<std::pair<std::size_t, typename F::Element>> normal_form(std::size_t pos) const;
};

template <class F>
QuotientStrand<F> compute_quotient_strand(const SystemF<F>& sys, BiDegree b);

/// Memoized per-bidegree data for one system. Safe to share between threads:
/// values are computed outside the lock and inserted idempotently.
template <class F>
class StrandCache {
 public:
  explicit StrandCache(SystemF<F> sys) : sys_(std::move(sys)) {}

  const SystemF<F>& system() const { return sys_; }

  std::size_t h1_part_dim(BiDegree a, int part);
  std::size_t h1_dim(BiDegree a) { return h1_part_dim(a, 1) + h1_part_dim(a, 2); }
  std::shared_ptr<const H1Piece<F>> h1_piece(BiDegree a, int part);
  std::shared_ptr<const QuotientStrand<F>> quotient(BiDegree b);
  std::size_t hf(BiDegree b);

 private:
  SystemF<F> sys_;
  std::mutex mu_;
  std::map<std::pair<BiDegree, int>, std::size_t> h1_dims_;
  std::map<std::pair<BiDegree, int>, std::shared_ptr<const H1Piece<F>>> pieces_;
  std::map<BiDegree, std::shared_ptr<const QuotientStrand<F>>> quotients_;
  std::map<BiDegree, std::size_t> hf_;
};

template <class F>
std::size_t h1_dim(const SystemF<F>& sys, BiDegree a);
template <class F>
std::size_t hf_quotient(const SystemF<F>& sys, BiDegree a);
/// dim H_i of the degree-a strand of the Koszul complex on f0,f1,f2.
template <class F>
std::size_t koszul_strand_homology(const SystemF<F>& sys, BiDegree a, int i);

struct GenericVerdict {
  bool generic = true;
  std::optional<BiDegree> witness;
  /// 1 or 2: which of phi1/phi2 lost rank at the witness.
  int part = 0;
  std::string to_string() const;
};

/// Full-rank test of phi1 and phi2 on [0,box]: the critical ranges first
/// (a1 ascending, then a2), then every remaining bidegree unless
/// `sanity_sweep` is false. Throws std::invalid_argument when box is smaller
/// than (3d1+1, 3d2+1).
template <class F>
GenericVerdict is_generic(const SystemF<F>& sys, BiDegree box, bool sanity_sweep = true);

/// Default box for genericity checks: (3d1+d1, 3d2+d2).
inline BiDegree default_generic_box(BiDegree d) { return {4 * d.a1, 4 * d.a2}; }

}  // namespace bigres
