#include "bigres/lab.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "bigres/combinat.hpp"
#include "bigres/parallel.hpp"
#include "bigres/segre.hpp"
#include "bigres/strands.hpp"

namespace bigres {

namespace {

constexpr std::size_t kMaxRejections = 100;

// Uniform integer in [0, span) by rejection, independent of the standard
// library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t span) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % span;
  }
}

PrimeField::Element draw(const PrimeField& f, const ExperimentConfig&, std::mt19937_64& rng) {
  return static_cast<PrimeField::Element>(uniform_below(rng, f.modulus()));
}

RationalField::Element draw(const RationalField& f, const ExperimentConfig& cfg, std::mt19937_64& rng) {
  const auto span = static_cast<std::uint64_t>(2 * cfg.N + 1);
  return f.from_int(static_cast<std::int64_t>(uniform_below(rng, span)) - cfg.N);
}

std::string field_name(const ExperimentConfig& cfg) { return cfg.field.name(); }

nlohmann::ordered_json degree_json(BiDegree a) { return nlohmann::ordered_json::array({a.a1, a.a2}); }

std::string profile_text(const Beta1Profile& p) {
  if (p.empty()) return "{}";
  std::string out = "{";
  bool first = true;
  for (const auto& [a, m] : p) {
    if (!first) out += ", ";
    first = false;
    out += a.to_string() + ":" + std::to_string(m);
  }
  return out + "}";
}

template <class F>
const SystemF<F>* planted_as(const AnySystem& s) {
  return std::get_if<SystemF<F>>(&s);
}

template <class F>
SystemF<F> trial_system(const F& field, const ExperimentConfig& cfg, std::size_t trial, std::size_t& rejections) {
  if (trial >= cfg.trials) {
    rejections = 0;
    return *planted_as<F>(cfg.planted[trial - cfg.trials]);
  }
  auto s = sample_system(field, cfg, trial);
  rejections = s.rejections;
  return s.system;
}

struct TrialOutcome {
  TrialRecord record;
  std::vector<H1Mismatch> mismatches;
  std::vector<RsViolation> violations;
  std::vector<GridPoint> grid;
};

template <class F>
TrialOutcome run_trial(const F& field, const ExperimentConfig& cfg, std::size_t trial) {
  TrialOutcome out;
  out.record.trial = trial;
  out.record.planted = trial >= cfg.trials;
  const auto sys = trial_system(field, cfg, trial, out.record.rejections);
  const BiDegree d = sys.d();

  const auto verdict = is_generic(sys, cfg.box, !cfg.critical_only);
  out.record.generic = verdict.generic;
  out.record.witness = verdict.witness;

  StrandCache<F> cache(sys);
  for (int a1 = 0; a1 <= cfg.box.a1; ++a1)
    for (int a2 = 0; a2 <= cfg.box.a2; ++a2) {
      const BiDegree a{a1, a2};
      const bool critical = in_critical_range(d, a);
      if (cfg.critical_only && !critical) continue;
      const std::size_t h = cache.h1_dim(a);
      const long long expected = nd(d, a);
      if (static_cast<long long>(h) < expected)
        throw ComputationError("internal error: dim H1 at " + a.to_string() + " is " + std::to_string(h) +
                               ", below the lower bound " + std::to_string(expected) + " (trial " +
                               std::to_string(trial) + ")");
      if (verdict.generic && static_cast<long long>(h) != expected)
        out.mismatches.push_back({trial, a, h, expected});
      if (!cfg.check_rs && !cfg.collect_grid) continue;
      const std::size_t hf = cache.hf(a);
      const long long c = chi(d, a);
      if (cfg.check_rs && static_cast<long long>(hf) != pos_part(c))
        out.violations.push_back({trial, a, hf, pos_part(c), !critical});
      if (cfg.collect_grid) out.grid.push_back({trial, a, h, expected, hf, c});
    }

  FastBeta1Options opt;
  opt.full_rank_outside_critical = true;
  out.record.beta1 = nonkoszul_beta1_fast(cache, cfg.box, opt).beta;
  return out;
}

template <class F>
ExperimentReport generic_report_impl(const F& field, const ExperimentConfig& cfg) {
  const std::size_t total = cfg.total_trials();
  std::vector<TrialOutcome> outcomes(total);
  parallel_for(total, [&](std::size_t k) { outcomes[k] = run_trial(field, cfg, k); });

  ExperimentReport rep;
  rep.d = cfg.d;
  rep.box = cfg.box;
  rep.field = field_name(cfg);
  rep.seed = cfg.seed;
  rep.trials = total;
  for (auto& o : outcomes) {
    if (o.record.generic) ++rep.generic_count;
    rep.basepoint_rejections += o.record.rejections;
    ++rep.beta1_histogram[o.record.beta1];
    rep.mismatches.insert(rep.mismatches.end(), o.mismatches.begin(), o.mismatches.end());
    rep.rs_violations.insert(rep.rs_violations.end(), o.violations.begin(), o.violations.end());
    rep.grid.insert(rep.grid.end(), o.grid.begin(), o.grid.end());
    rep.records.push_back(std::move(o.record));
  }
  return rep;
}

template <class F>
ProbeEntry probe_trial(const F& field, const ExperimentConfig& cfg, std::size_t trial) {
  ProbeEntry e;
  e.trial = trial;
  e.planted = trial >= cfg.trials;
  std::size_t rejections = 0;
  auto sys = trial_system(field, cfg, trial, rejections);
  const auto verdict = is_generic(sys, cfg.box, !cfg.critical_only);
  e.generic = verdict.generic;
  e.witness = verdict.witness;

  if (sys.d().a1 != 1 && sys.d().a2 == 1) {
    sys = swap_factors(sys);
    e.notes.push_back("detectors run with the two factors exchanged");
  }
  const BiDegree d = sys.d();
  if (d.a1 == 1) {
    const int n = d.a2;
    try {
      if (detect_conic(sys)) e.detectors.push_back("conic");
    } catch (const ImpossibleFactorization& ex) {
      e.notes.push_back(ex.what());
    }
    // Candidate h_i: the u,v-part shared by the s- and t-coefficients of f_i.
    std::vector<BinaryForm<F>> h;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto sp = split_st(sys[i]);
      h.push_back(sp.p.is_zero() ? sp.q : sp.q.is_zero() ? sp.p : gcd_binary(sp.p, sp.q));
    }
    const bool factorized = std::all_of(h.begin(), h.end(), [](const auto& g) { return g.degree() >= 1; });
    if (factorized) {
      e.detectors.push_back("factorized");
      std::ostringstream os;
      os << "h degrees " << h[0].degree() << "," << h[1].degree() << "," << h[2].degree();
      e.notes.push_back(os.str());
      const int k = h[0].degree();
      if (h[1].degree() == k && h[2].degree() == k) {
        Matrix<F> hm(field, 3, static_cast<std::size_t>(k + 1));
        for (std::size_t i = 0; i < 3; ++i)
          for (int j = 0; j <= k; ++j) hm(i, static_cast<std::size_t>(j)) = h[i].coeff(j);
        if (mat_rank(hm) <= 2) e.detectors.push_back("pencil");
      }
    }
    if (n == 5 && field.is_zero(square_strand_det(sys).det)) e.detectors.push_back("square_strand");
  } else {
    e.notes.push_back("no structured detector applies to d = " + d.to_string());
  }

  if (e.generic)
    e.label = "generic";
  else if (!e.detectors.empty())
    e.label = "explained";
  else
    e.label = "unexplained (conjecture candidate)";
  return e;
}

template <class F>
ProbeReport probe_impl(const F& field, const ExperimentConfig& cfg) {
  ProbeReport rep;
  rep.d = cfg.d;
  rep.field = field_name(cfg);
  rep.seed = cfg.seed;
  rep.entries.resize(cfg.total_trials());
  parallel_for(rep.entries.size(), [&](std::size_t k) { rep.entries[k] = probe_trial(field, cfg, k); });
  return rep;
}

template <class Fn>
auto dispatch(const ExperimentConfig& cfg, Fn&& fn) {
  if (cfg.field.is_prime_field()) return fn(PrimeField(cfg.field.p));
  return fn(RationalField{});
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (N < 1) throw std::invalid_argument("N must be at least 1");
  if (d.a1 < 1 || d.a2 < 1) throw std::invalid_argument("d must be >= (1,1)");
  if (box.a1 < 3 * d.a1 + 1 || box.a2 < 3 * d.a2 + 1)
    throw std::invalid_argument("box " + box.to_string() + " must be at least 3d + (1,1) = " +
                                (3 * d + BiDegree{1, 1}).to_string());
  for (const auto& s : planted) {
    const bool prime = std::holds_alternative<SystemF<PrimeField>>(s);
    if (prime != field.is_prime_field() ||
        (prime && std::get<SystemF<PrimeField>>(s).field().modulus() != field.p))
      throw std::invalid_argument("planted system over a different field");
    const BiDegree sd = std::visit([](const auto& x) { return x.d(); }, s);
    if (sd != d) throw std::invalid_argument("planted system of degree " + sd.to_string());
  }
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  std::uint64_t z = (seed ^ static_cast<std::uint64_t>(trial)) + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

template <class F>
Sample<F> sample_system(const F& field, const ExperimentConfig& cfg, std::size_t trial) {
  std::mt19937_64 rng(trial_seed(cfg.seed, trial));
  const std::size_t len = dimR(cfg.d);
  for (std::size_t rejections = 0; rejections <= kMaxRejections; ++rejections) {
    std::array<BiPoly<F>, 3> f;
    for (auto& p : f) {
      Vec<F> c;
      c.reserve(len);
      for (std::size_t i = 0; i < len; ++i) c.push_back(draw(field, cfg, rng));
      p = BiPoly<F>::from_coeffs(field, cfg.d, std::move(c));
    }
    try {
      SystemF<F> sys(field, cfg.d, f);
      if (basepoint_free(sys).verdict == BasepointVerdict::Free) return {std::move(sys), rejections};
    } catch (const std::invalid_argument&) {
    }
  }
  throw ComputationError("no basepoint free system after " + std::to_string(kMaxRejections) +
                         " rejections (trial " + std::to_string(trial) + ", d = " + cfg.d.to_string() + ", " +
                         cfg.field.name() + ")");
}

template <class F>
std::vector<RsViolation> rs_check(const SystemF<F>& sys, BiDegree box, bool critical_only) {
  std::vector<RsViolation> out;
  StrandCache<F> cache(sys);
  const BiDegree d = sys.d();
  for (int a1 = 0; a1 <= box.a1; ++a1)
    for (int a2 = 0; a2 <= box.a2; ++a2) {
      const BiDegree a{a1, a2};
      const bool critical = in_critical_range(d, a);
      if (critical_only && !critical) continue;
      const std::size_t hf = cache.hf(a);
      const long long expected = pos_part(chi(d, a));
      if (static_cast<long long>(hf) != expected) out.push_back({0, a, hf, expected, !critical});
    }
  return out;
}

ExperimentReport generic_report(const ExperimentConfig& cfg) {
  cfg.validate();
  return dispatch(cfg, [&](const auto& field) { return generic_report_impl(field, cfg); });
}

ProbeReport nongeneric_probe(const ExperimentConfig& cfg) {
  cfg.validate();
  return dispatch(cfg, [&](const auto& field) { return probe_impl(field, cfg); });
}

double ExperimentReport::fraction_generic() const {
  return trials == 0 ? 0.0 : static_cast<double>(generic_count) / static_cast<double>(trials);
}

std::size_t ExperimentReport::escalated_violations() const {
  return static_cast<std::size_t>(
      std::count_if(rs_violations.begin(), rs_violations.end(), [](const auto& v) { return v.escalated; }));
}

std::string ExperimentReport::to_json() const {
  nlohmann::ordered_json j;
  j["d"] = degree_json(d);
  j["box"] = degree_json(box);
  j["field"] = field;
  j["seed"] = seed;
  j["trials"] = trials;
  j["genericCount"] = generic_count;
  j["fractionGeneric"] = fraction_generic();
  j["basepointRejections"] = basepoint_rejections;
  auto recs = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json x;
    x["trial"] = r.trial;
    x["planted"] = r.planted;
    x["rejections"] = r.rejections;
    x["generic"] = r.generic;
    x["witness"] = r.witness ? degree_json(*r.witness) : nlohmann::ordered_json(nullptr);
    auto b = nlohmann::ordered_json::array();
    for (const auto& [a, m] : r.beta1) b.push_back({a.a1, a.a2, m});
    x["beta1"] = b;
    recs.push_back(x);
  }
  j["records"] = recs;
  auto mm = nlohmann::ordered_json::array();
  for (const auto& m : mismatches) mm.push_back({m.trial, m.a.a1, m.a.a2, m.observed, m.expected});
  j["mismatches"] = mm;
  auto rv = nlohmann::ordered_json::array();
  for (const auto& v : rs_violations) {
    nlohmann::ordered_json x;
    x["trial"] = v.trial;
    x["a"] = degree_json(v.a);
    x["hf"] = v.observed;
    x["chiPlus"] = v.expected;
    x["level"] = v.escalated ? "ERROR" : "candidate";
    rv.push_back(x);
  }
  j["rsViolations"] = rv;
  auto hist = nlohmann::ordered_json::array();
  for (const auto& [profile, count] : beta1_histogram) {
    nlohmann::ordered_json x;
    auto b = nlohmann::ordered_json::array();
    for (const auto& [a, m] : profile) b.push_back({a.a1, a.a2, m});
    x["beta1"] = b;
    x["count"] = count;
    hist.push_back(x);
  }
  j["bettiHistogram"] = hist;
  return j.dump(2) + "\n";
}

std::string ExperimentReport::to_text() const {
  std::ostringstream os;
  os << "d = " << d.to_string() << ", box " << box.to_string() << ", " << field << ", seed " << seed << "\n";
  os << "trials: " << trials << ", generic: " << generic_count << " (" << fraction_generic() << ")"
     << ", basepoint rejections: " << basepoint_rejections << "\n";
  for (const auto& r : records)
    if (!r.generic)
      os << "trial " << r.trial << (r.planted ? " (planted)" : "") << ": not generic"
         << (r.witness ? ", witness " + r.witness->to_string() : std::string()) << "\n";
  os << "dim H1 != nd on generic trials: " << mismatches.size() << "\n";
  for (const auto& m : mismatches)
    os << "  trial " << m.trial << " at " << m.a.to_string() << ": " << m.observed << " vs " << m.expected << "\n";
  os << "hf != chi_+: " << rs_violations.size() << " (ERROR: " << escalated_violations() << ")\n";
  for (const auto& v : rs_violations)
    os << "  " << (v.escalated ? "ERROR" : "candidate") << " trial " << v.trial << " at " << v.a.to_string()
       << ": hf " << v.observed << ", chi_+ " << v.expected << "\n";
  os << "non-Koszul beta_1:\n";
  for (const auto& [profile, count] : beta1_histogram) os << "  " << count << " x " << profile_text(profile) << "\n";
  return os.str();
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream os;
  os << "trial,a1,a2,dimH1,nd,hf,chi\n";
  for (const auto& g : grid)
    os << g.trial << "," << g.a.a1 << "," << g.a.a2 << "," << g.h1 << "," << g.nd << "," << g.hf << "," << g.chi
       << "\n";
  return os.str();
}

std::string ProbeReport::to_json() const {
  nlohmann::ordered_json j;
  j["d"] = degree_json(d);
  j["field"] = field;
  j["seed"] = seed;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json x;
    x["trial"] = e.trial;
    x["planted"] = e.planted;
    x["generic"] = e.generic;
    x["witness"] = e.witness ? degree_json(*e.witness) : nlohmann::ordered_json(nullptr);
    x["detectors"] = e.detectors;
    x["notes"] = e.notes;
    x["label"] = e.label;
    arr.push_back(x);
  }
  j["entries"] = arr;
  return j.dump(2) + "\n";
}

std::string ProbeReport::to_text() const {
  std::ostringstream os;
  os << "d = " << d.to_string() << ", " << field << ", seed " << seed << "\n";
  for (const auto& e : entries) {
    os << "trial " << e.trial << (e.planted ? " (planted)" : "") << ": " << e.label;
    if (e.witness) os << ", witness " << e.witness->to_string();
    if (!e.detectors.empty()) {
      os << ", detectors:";
      for (const auto& s : e.detectors) os << " " << s;
    }
    os << "\n";
  }
  return os.str();
}

#define BIGRES_INSTANTIATE(F)                                                              \
  template Sample<F> sample_system(const F&, const ExperimentConfig&, std::size_t);       \
  template std::vector<RsViolation> rs_check(const SystemF<F>&, BiDegree, bool);

BIGRES_INSTANTIATE(PrimeField)
BIGRES_INSTANTIATE(RationalField)
#undef BIGRES_INSTANTIATE

}  // namespace bigres
