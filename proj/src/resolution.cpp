#include "bigres/resolution.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "bigres/parallel.hpp"
#include "bigres/strands.hpp"

namespace bigres {

template <class F>
BettiTable ResolutionComplex<F>::betti() const {
  BettiTable t;
  t.convention = Convention::Ideal;
  for (std::size_t i = 0; i < shifts.size(); ++i)
    for (const auto& a : shifts[i]) {
      t.entries[{static_cast<int>(i), a}] += 1;
      t.box = {std::max(t.box.a1, a.a1), std::max(t.box.a2, a.a2)};
    }
  return t;
}

template <class F>
std::string ResolutionComplex<F>::to_string() const {
  std::ostringstream os;
  os << "generators: " << generators[0].to_string() << ", " << generators[1].to_string() << ", "
     << generators[2].to_string() << "\n";
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    os << "F" << i << ":";
    for (const auto& a : shifts[i]) os << ' ' << a.to_string();
    os << "\n";
  }
  for (std::size_t i = 0; i < differentials.size(); ++i)
    os << "d" << i + 1 << " (" << differentials[i].rows() << "x" << differentials[i].cols() << "):\n"
       << differentials[i].to_string();
  return os.str();
}

bool VerificationReport::has_failure(const std::string& check, int spot) const {
  return std::any_of(failures.begin(), failures.end(),
                     [&](const VerificationFailure& f) { return f.check == check && f.spot == spot; });
}

std::string VerificationReport::to_string() const {
  std::ostringstream os;
  os << (ok() ? "PASS" : "FAIL") << ": " << strands_checked << " strands checked on box " << box.to_string()
     << ", " << failures.size() << " failure(s)\n";
  for (const auto& f : failures) {
    os << "  " << f.check;
    if (f.spot >= 0) os << " at F" << f.spot;
    if (f.check == "exact" || f.check == "euler") os << " in degree " << f.a.to_string();
    if (!f.detail.empty()) os << ": " << f.detail;
    os << "\n";
  }
  return os.str();
}

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["ok"] = ok();
  j["box"] = {box.a1, box.a2};
  j["strands_checked"] = strands_checked;
  auto arr = nlohmann::json::array();
  for (const auto& f : failures) {
    nlohmann::json e;
    e["check"] = f.check;
    e["spot"] = f.spot;
    e["a"] = {f.a.a1, f.a.a2};
    e["detail"] = f.detail;
    arr.push_back(e);
  }
  j["failures"] = arr;
  return j.dump();
}

namespace {

template <class F>
std::size_t strand_dim(const std::vector<BiDegree>& shifts, BiDegree a) {
  std::size_t n = 0;
  for (const auto& c : shifts) n += dimR(a - c);
  return n;
}

template <class F>
std::size_t strand_rank(const PolyMatrix<F>& m, const std::vector<BiDegree>& row_shifts,
                        const std::vector<BiDegree>& col_shifts, BiDegree a) {
  std::vector<std::size_t> row_off(row_shifts.size() + 1, 0), col_off(col_shifts.size() + 1, 0);
  for (std::size_t r = 0; r < row_shifts.size(); ++r) row_off[r + 1] = row_off[r] + dimR(a - row_shifts[r]);
  for (std::size_t c = 0; c < col_shifts.size(); ++c) col_off[c + 1] = col_off[c] + dimR(a - col_shifts[c]);
  if (row_off.back() == 0 || col_off.back() == 0) return 0;
  RowSystem<F> rs;
  rs.field = m.field();
  rs.cols = col_off.back();
  rs.rows.resize(row_off.back());
  for (std::size_t r = 0; r < row_shifts.size(); ++r)
    for (std::size_t c = 0; c < col_shifts.size(); ++c) {
      const auto& p = m(r, c);
      const BiDegree src = a - col_shifts[c];
      if (p.is_zero() || !src.nonnegative() || !(a - row_shifts[r]).nonnegative()) continue;
      append_mul_block(rs, p, src, row_off[r], col_off[c], m.field().one());
    }
  return mat_rank(std::move(rs));
}

}  // namespace

template <class F>
BiDegree default_verification_box(const ResolutionComplex<F>& rc) {
  BiDegree b{0, 0};
  for (const auto& level : rc.shifts)
    for (const auto& a : level) b = {std::max(b.a1, a.a1), std::max(b.a2, a.a2)};
  return b + BiDegree{3, 3};
}

template <class F>
VerificationReport verify_resolution(const ResolutionComplex<F>& rc, BiDegree box) {
  VerificationReport rep;
  rep.box = box;
  const F& fld = rc.system.field();
  const auto& sh = rc.shifts;
  const auto& dd = rc.differentials;

  if (sh.size() != dd.size() + 1 || sh.empty() || sh[0].size() != 3) {
    rep.failures.push_back({"shape", -1, {}, "expected three generators and one more module than differentials"});
    return rep;
  }
  for (std::size_t i = 0; i < dd.size(); ++i)
    if (dd[i].rows() != sh[i].size() || dd[i].cols() != sh[i + 1].size()) {
      rep.failures.push_back({"shape", static_cast<int>(i + 1), {},
                              "d" + std::to_string(i + 1) + " is " + std::to_string(dd[i].rows()) + "x" +
                                  std::to_string(dd[i].cols())});
      return rep;
    }

  // Degrees and minimality.
  for (std::size_t r = 0; r < 3; ++r)
    if (!rc.generators[r].is_zero() && rc.generators[r].degree() != sh[0][r])
      rep.failures.push_back({"degree", 0, {}, "generator " + std::to_string(r) + " does not have degree " +
                                                   sh[0][r].to_string()});
  for (std::size_t i = 0; i < dd.size(); ++i)
    for (std::size_t r = 0; r < dd[i].rows(); ++r)
      for (std::size_t c = 0; c < dd[i].cols(); ++c) {
        const auto& p = dd[i](r, c);
        if (p.is_zero()) continue;
        const BiDegree want = sh[i + 1][c] - sh[i][r];
        const std::string where = "d" + std::to_string(i + 1) + "(" + std::to_string(r) + "," + std::to_string(c) + ")";
        if (p.degree() != want)
          rep.failures.push_back({"degree", static_cast<int>(i + 1), {},
                                  where + " has degree " + p.degree().to_string() + ", expected " + want.to_string()});
        if (p.degree() == BiDegree{0, 0})
          rep.failures.push_back({"minimal", static_cast<int>(i + 1), {}, where + " is a nonzero constant"});
      }

  // Products of entries with inconsistent degrees are not defined.
  if (!rep.ok()) return rep;

  // Compositions.
  PolyMatrix<F> gen(fld, 1, 3);
  for (std::size_t c = 0; c < 3; ++c) gen(0, c) = rc.generators[c];
  if (!(gen * dd[0]).is_zero()) rep.failures.push_back({"compose", 0, {}, "[generators] * d1 != 0"});
  for (std::size_t i = 0; i + 1 < dd.size(); ++i)
    if (!(dd[i] * dd[i + 1]).is_zero())
      rep.failures.push_back({"compose", static_cast<int>(i + 1), {},
                              "d" + std::to_string(i + 1) + " * d" + std::to_string(i + 2) + " != 0"});
  if (!rep.ok()) return rep;

  std::vector<BiDegree> points;
  for (int a1 = 0; a1 <= box.a1; ++a1)
    for (int a2 = 0; a2 <= box.a2; ++a2) points.push_back({a1, a2});
  StrandCache<F> cache(rc.system);
  std::vector<std::vector<VerificationFailure>> found(points.size());
  const std::vector<BiDegree> one{BiDegree{0, 0}};
  parallel_for(points.size(), [&](std::size_t k) {
    const BiDegree a = points[k];
    const std::size_t levels = sh.size();
    std::vector<std::size_t> dim(levels), rank(levels + 1, 0);
    for (std::size_t i = 0; i < levels; ++i) dim[i] = strand_dim<F>(sh[i], a);
    for (std::size_t i = 1; i < levels; ++i) rank[i] = strand_rank(dd[i - 1], sh[i - 1], sh[i], a);
    rank[0] = strand_rank(gen, one, sh[0], a);  // dim I_a
    auto& out = found[k];
    for (std::size_t i = 0; i < levels; ++i) {
      const std::size_t image = i + 1 < levels ? rank[i + 1] : 0;
      if (dim[i] != rank[i] + image)
        out.push_back({"exact", static_cast<int>(i), a,
                       "dim " + std::to_string(dim[i]) + ", rank out " + std::to_string(rank[i]) + ", rank in " +
                           std::to_string(image)});
    }
    long long euler = static_cast<long long>(dimR(a));
    for (std::size_t i = 0; i < levels; ++i)
      euler += (i % 2 == 0 ? -1 : 1) * static_cast<long long>(dim[i]);
    const long long hf = static_cast<long long>(cache.hf(a));
    if (euler != hf)
      out.push_back({"euler", -1, a, "alternating sum " + std::to_string(euler) + ", hf " + std::to_string(hf)});
  });
  for (auto& f : found) rep.failures.insert(rep.failures.end(), f.begin(), f.end());
  rep.strands_checked = points.size();
  return rep;
}

#define BIGRES_INSTANTIATE(F)                                                                  \
  template struct ResolutionComplex<F>;                                                        \
  template BiDegree default_verification_box(const ResolutionComplex<F>&);                     \
  template VerificationReport verify_resolution(const ResolutionComplex<F>&, BiDegree);

BIGRES_INSTANTIATE(PrimeField)
BIGRES_INSTANTIATE(RationalField)
#undef BIGRES_INSTANTIATE

}  // namespace bigres
