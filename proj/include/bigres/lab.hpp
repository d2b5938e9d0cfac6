#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bigres/betti.hpp"
#include "bigres/system.hpp"

namespace bigres {

struct ExperimentConfig {
  BiDegree d{1, 1};
  std::size_t trials = 1;
  FieldSpec field = FieldSpec::prime(kDefaultPrime);
  std::uint64_t seed = 0;
  BiDegree box{6, 6};
  /// Rational coefficients are uniform integers in [-N, N]; prime field
  /// coefficients are uniform in [0, p).
  std::int64_t N = 100;
  /// Rank only the critical ranges and take every other strand from the
  /// full-rank formula. Meant for large d where the full box is expensive.
  bool critical_only = false;
  /// Compare hf_quotient with chi_+ on every trial.
  bool check_rs = true;
  /// Keep the per-bidegree data needed by ExperimentReport::to_csv.
  bool collect_grid = false;
  /// Extra systems run as trials trials, trials+1, ... after the random ones.
  std::vector<AnySystem> planted;

  /// Throws std::invalid_argument unless trials >= 1, N >= 1, the planted
  /// systems match field and d, and box >= 3d + (1,1).
  void validate() const;
  std::size_t total_trials() const { return trials + planted.size(); }
};

/// Seed of the generator used for one trial: splitmix64(seed ^ trial).
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

template <class F>
struct Sample {
  SystemF<F> system;
  std::size_t rejections = 0;
};

/// Draws coefficients until the system is linearly independent and
/// basepoint_free returns Free. Throws ComputationError after 100 rejections.
template <class F>
Sample<F> sample_system(const F& field, const ExperimentConfig& cfg, std::size_t trial);

struct H1Mismatch {
  std::size_t trial = 0;
  BiDegree a;
  std::size_t observed = 0;
  long long expected = 0;
};

struct RsViolation {
  std::size_t trial = 0;
  BiDegree a;
  std::size_t observed = 0;
  long long expected = 0;
  /// Outside the critical ranges, where hf == chi_+ is a theorem.
  bool escalated = false;
};

struct GridPoint {
  std::size_t trial = 0;
  BiDegree a;
  std::size_t h1 = 0;
  long long nd = 0;
  std::size_t hf = 0;
  long long chi = 0;
};

struct TrialRecord {
  std::size_t trial = 0;
  bool planted = false;
  std::size_t rejections = 0;
  bool generic = false;
  std::optional<BiDegree> witness;
  std::map<BiDegree, std::size_t> beta1;
};

using Beta1Profile = std::map<BiDegree, std::size_t>;

struct ExperimentReport {
  BiDegree d;
  BiDegree box;
  std::string field;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t generic_count = 0;
  std::size_t basepoint_rejections = 0;
  std::vector<TrialRecord> records;
  std::vector<H1Mismatch> mismatches;
  std::vector<RsViolation> rs_violations;
  /// Non-Koszul beta_1 profile -> number of trials showing it.
  std::map<Beta1Profile, std::size_t> beta1_histogram;
  std::vector<GridPoint> grid;

  double fraction_generic() const;
  std::size_t escalated_violations() const;
  std::string to_json() const;
  std::string to_text() const;
  /// "trial,a1,a2,dimH1,nd,hf,chi" rows; empty body unless collect_grid was set.
  std::string to_csv() const;
};

/// Per trial: genericity on the box, dim H1 against nd (abort with
/// ComputationError if dim H1 < nd anywhere), rs_check, and the non-Koszul
/// first Betti numbers.
ExperimentReport generic_report(const ExperimentConfig& cfg);

/// Compares hf_quotient with chi_+ on [0,box]. With critical_only only the
/// critical ranges are computed.
template <class F>
std::vector<RsViolation> rs_check(const SystemF<F>& sys, BiDegree box, bool critical_only = false);

struct ProbeEntry {
  std::size_t trial = 0;
  bool planted = false;
  bool generic = false;
  std::optional<BiDegree> witness;
  /// Subset of "conic", "factorized", "pencil", "square_strand".
  std::vector<std::string> detectors;
  std::vector<std::string> notes;
  /// "generic", "explained", or "unexplained (conjecture candidate)".
  std::string label;
};

struct ProbeReport {
  BiDegree d;
  std::string field;
  std::uint64_t seed = 0;
  std::vector<ProbeEntry> entries;
  std::string to_json() const;
  std::string to_text() const;
};

/// Runs the structured detectors on every trial (random and planted).
/// Detectors need d1 == 1 or d2 == 1; the (3,8) determinant needs d == (1,5).
ProbeReport nongeneric_probe(const ExperimentConfig& cfg);

}  // namespace bigres
