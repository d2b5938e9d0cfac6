#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bigres/betti.hpp"
#include "bigres/combinat.hpp"
#include "bigres/lab.hpp"
#include "bigres/render.hpp"
#include "bigres/resolution.hpp"
#include "bigres/segre.hpp"
#include "bigres/strands.hpp"
#include "bigres/sysio.hpp"

namespace bigres::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

BiDegree parse_pair(const std::string& text, const std::string& what) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(text);
    std::size_t p1 = 0, p2 = 0;
    const int x = std::stoi(text.substr(0, comma), &p1);
    const int y = std::stoi(text.substr(comma + 1), &p2);
    if (p1 != comma || p2 != text.size() - comma - 1 || x < 0 || y < 0) throw std::invalid_argument(text);
    return {x, y};
  } catch (const std::exception&) {
    throw UsageError(what + " must be two nonnegative integers \"x,y\", got \"" + text + "\"");
  }
}

ojson pair_json(BiDegree a) { return ojson::array({a.a1, a.a2}); }

ojson grid_json(const std::vector<std::vector<long long>>& g) {
  auto arr = ojson::array();
  for (const auto& col : g) arr.push_back(col);
  return arr;
}

using Grid = std::vector<std::vector<long long>>;

template <class Fn>
Grid make_grid(BiDegree box, Fn&& fn) {
  Grid g(static_cast<std::size_t>(box.a1 + 1), std::vector<long long>(static_cast<std::size_t>(box.a2 + 1)));
  for (int a1 = 0; a1 <= box.a1; ++a1)
    for (int a2 = 0; a2 <= box.a2; ++a2)
      g[static_cast<std::size_t>(a1)][static_cast<std::size_t>(a2)] = fn(BiDegree{a1, a2});
  return g;
}

template <class F>
std::vector<PlotPoint> beta1_points(const SystemF<F>& sys, BiDegree box) {
  StrandCache<F> cache(sys);
  std::vector<PlotPoint> pts;
  for (const auto& [a, m] : nonkoszul_beta1_fast(cache, box).beta)
    pts.push_back({a.a1, a.a2, static_cast<long long>(m)});
  return pts;
}

template <class F>
ojson resolution_json(const ResolutionComplex<F>& rc) {
  ojson j;
  auto shifts = ojson::array();
  for (const auto& level : rc.shifts) {
    auto row = ojson::array();
    for (const auto& a : level) row.push_back(pair_json(a));
    shifts.push_back(row);
  }
  j["shifts"] = shifts;
  auto diffs = ojson::array();
  for (const auto& m : rc.differentials) {
    auto rows = ojson::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      auto row = ojson::array();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
      rows.push_back(row);
    }
    diffs.push_back(rows);
  }
  j["differentials"] = diffs;
  return j;
}

struct Options {
  std::string file;
  std::string box = "";
  std::string d = "";
  std::string convention = "ideal";
  std::string resolve_case;
  std::string output;
  std::string field = "32003";
  std::string csv;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  bool json = false;
  bool probe = false;
  bool critical_only = false;
};

class Runner {
 public:
  Runner(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

  int betti() {
    return with_system([&](const auto& sys) {
      const auto t = betti_table(sys, box(), parse_convention(o_.convention));
      if (t.warning) err_ << "warning: " << *t.warning << "\n";
      out_ << (o_.json ? t.to_json() + "\n" : t.to_text());
      return 0;
    });
  }

  int grid(const std::string& quantity) {
    return with_system([&](const auto& sys) {
      using F = std::decay_t<decltype(sys.field())>;
      StrandCache<F> cache(sys);
      const BiDegree b = box();
      const Grid g = make_grid(b, [&](BiDegree a) {
        return static_cast<long long>(quantity == "h1" ? cache.h1_dim(a) : cache.hf(a));
      });
      if (o_.json) {
        ojson j;
        j["quantity"] = quantity;
        j["d"] = pair_json(sys.d());
        j["box"] = pair_json(b);
        j["values"] = grid_json(g);
        out_ << j.dump() << "\n";
      } else {
        out_ << render_grid(g);
      }
      return 0;
    });
  }

  int chi_grids() {
    const BiDegree dd = degree(), b = box();
    const auto s = series_coeffs(dd, b);
    const auto n = nd_grid(dd, b);
    if (o_.json) {
      ojson j;
      j["d"] = pair_json(dd);
      j["box"] = pair_json(b);
      j["chi"] = grid_json(s.chi);
      j["chi_plus"] = grid_json(s.plus);
      j["chi_minus"] = grid_json(s.minus);
      j["nd"] = grid_json(n);
      out_ << j.dump() << "\n";
    } else {
      out_ << "chi:\n" << render_grid(s.chi) << "chi_plus:\n" << render_grid(s.plus) << "chi_minus:\n"
           << render_grid(s.minus) << "nd:\n" << render_grid(n);
    }
    return 0;
  }

  int nd_only() {
    const BiDegree dd = degree(), b = box();
    const auto n = nd_grid(dd, b);
    if (o_.json) {
      ojson j;
      j["quantity"] = "nd";
      j["d"] = pair_json(dd);
      j["box"] = pair_json(b);
      j["values"] = grid_json(n);
      out_ << j.dump() << "\n";
    } else {
      out_ << render_grid(n);
    }
    return 0;
  }

  int classify_cmd() {
    return with_system([&](const auto& sys) {
      out_ << classify(sys).to_json() << "\n";
      return 0;
    });
  }

  int resolve() {
    return with_system([&](const auto& sys) -> int {
      const auto bp = basepoint_free(sys);
      if (bp.verdict != BasepointVerdict::Free) {
        err_ << "error: the input is not known to be basepoint free: " << bp.to_string() << "\n";
        return 1;
      }
      using F = std::decay_t<decltype(sys.field())>;
      ResolutionComplex<F> rc;
      std::optional<int> mu;
      if (o_.resolve_case == "conic") {
        if (!detect_conic(sys)) {
          err_ << "error: no (3," << sys.d().a2 << ") syzygy, so the conic construction does not apply\n";
          return 1;
        }
        rc = conic_resolution(sys);
      } else {
        const auto fb = factor_linear(sys);
        if (!fb) {
          err_ << "error: the generators are not products of linear forms in s,t with forms in u,v\n";
          return 1;
        }
        auto tp = three_point_resolution(*fb);
        rc = std::move(tp.complex);
        mu = tp.mu;
      }
      const auto rep = verify_resolution(rc, default_verification_box(rc));
      if (o_.json) {
        ojson j;
        j["case"] = o_.resolve_case;
        if (mu) j["mu"] = *mu;
        const auto body = resolution_json(rc);
        j["shifts"] = body["shifts"];
        j["differentials"] = body["differentials"];
        j["betti"] = ojson::parse(rc.betti().to_json());
        j["verification"] = ojson::parse(rep.to_json());
        out_ << j.dump() << "\n";
      } else {
        if (mu) out_ << "mu = " << *mu << "\n";
        out_ << rc.to_string() << rc.betti().to_text() << rep.to_string();
      }
      return rep.ok() ? 0 : 1;
    });
  }

  int generic() {
    return with_system([&](const auto& sys) {
      const BiDegree b = box();
      const auto v = is_generic(sys, b);
      if (o_.json) {
        ojson j;
        j["generic"] = v.generic;
        j["box"] = pair_json(b);
        j["witness"] = v.witness ? pair_json(*v.witness) : ojson(nullptr);
        j["part"] = v.part;
        out_ << j.dump() << "\n";
      } else {
        out_ << v.to_string() << "\n";
      }
      return 0;
    });
  }

  int lab() {
    ExperimentConfig cfg;
    cfg.d = degree();
    cfg.box = o_.box.empty() ? 3 * cfg.d + BiDegree{3, 3} : box();
    cfg.trials = o_.trials;
    cfg.seed = o_.seed;
    cfg.critical_only = o_.critical_only;
    cfg.collect_grid = !o_.csv.empty();
    try {
      cfg.field = FieldSpec::parse(o_.field);
    } catch (const std::exception& e) {
      throw UsageError(std::string("--field: ") + e.what());
    }
    if (o_.probe) {
      const auto rep = nongeneric_probe(cfg);
      out_ << (o_.json ? rep.to_json() : rep.to_text());
      return 0;
    }
    const auto rep = generic_report(cfg);
    if (!o_.csv.empty()) {
      std::ofstream f(o_.csv, std::ios::binary);
      if (!f || !(f << rep.to_csv())) throw ComputationError("cannot write " + o_.csv);
    }
    out_ << (o_.json ? rep.to_json() : rep.to_text());
    return 0;
  }

  int plot() {
    return with_system([&](const auto& sys) {
      PlotSpec spec;
      spec.d = sys.d();
      spec.box = box();
      spec.points = beta1_points(sys, spec.box);
      spec.title = "non-Koszul first Betti numbers, d = " + sys.d().to_string();
      emit_svg(spec, o_.output);
      if (o_.json) {
        ojson j;
        j["output"] = o_.output;
        j["d"] = pair_json(spec.d);
        j["box"] = pair_json(spec.box);
        auto pts = ojson::array();
        for (const auto& p : spec.points) pts.push_back({p.a1, p.a2, p.beta});
        j["points"] = pts;
        out_ << j.dump() << "\n";
      } else {
        out_ << "wrote " << o_.output << " (" << spec.points.size() << " points)\n";
      }
      return 0;
    });
  }

 private:
  BiDegree box() const {
    if (o_.box.empty()) throw UsageError("--box is required");
    return parse_pair(o_.box, "--box");
  }
  BiDegree degree() const {
    const BiDegree dd = parse_pair(o_.d, "--d");
    if (dd.a1 < 1 || dd.a2 < 1) throw UsageError("--d must be at least 1,1");
    return dd;
  }

  template <class Fn>
  int with_system(Fn&& fn) {
    const AnySystem sys = read_system_file(o_.file);
    return std::visit(fn, sys);
  }

  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bigraded syzygies and Betti numbers of three forms on P1 x P1", "bigres"};
  app.require_subcommand(1);
  Options o;

  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "Emit JSON"); };
  auto add_file = [&](CLI::App* sub) { sub->add_option("file", o.file, "System file (JSON)")->required(); };
  auto add_box = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--box", o.box, "Upper corner a1,a2 of the grid");
    if (required) opt->required();
  };
  auto add_d = [&](CLI::App* sub) { sub->add_option("--d", o.d, "Bidegree d1,d2 of the forms")->required(); };

  auto* betti = app.add_subcommand("betti", "Bigraded Betti numbers of the ideal");
  add_file(betti);
  add_box(betti, true);
  betti->add_option("--convention", o.convention, "ideal or quotient")
      ->check(CLI::IsMember({"ideal", "quotient"}));
  add_json(betti);

  auto* h1 = app.add_subcommand("h1", "Grid of dim H1 of the Koszul complex");
  add_file(h1);
  add_box(h1, true);
  add_json(h1);

  auto* hf = app.add_subcommand("hf", "Grid of the Hilbert function of R/I");
  add_file(hf);
  add_box(hf, true);
  add_json(hf);

  auto* chi = app.add_subcommand("chi", "Grids of chi, chi_plus, chi_minus and nd");
  add_d(chi);
  add_box(chi, true);
  add_json(chi);

  auto* nd = app.add_subcommand("nd", "Grid of the expected generic dim H1");
  add_d(nd);
  add_box(nd, true);
  add_json(nd);

  auto* cls = app.add_subcommand("classify", "Position of the span relative to Segre varieties (JSON)");
  add_file(cls);
  cls->add_flag("--json", o.json, "Accepted for uniformity; output is always JSON");

  auto* res = app.add_subcommand("resolve", "Explicit minimal resolution with verification");
  add_file(res);
  res->add_option("--case", o.resolve_case, "conic or threepoint")
      ->required()
      ->check(CLI::IsMember({"conic", "threepoint"}));
  add_json(res);

  auto* gen = app.add_subcommand("generic", "Full-rank test of the Koszul kernel maps on a box");
  add_file(gen);
  add_box(gen, true);
  add_json(gen);

  auto* lab = app.add_subcommand("lab", "Random experiments on generic systems");
  add_d(lab);
  add_box(lab, false);
  lab->add_option("--trials", o.trials, "Number of random systems")->check(CLI::PositiveNumber);
  lab->add_option("--seed", o.seed, "Seed");
  lab->add_option("--field", o.field, "Prime p or Q");
  lab->add_option("--csv", o.csv, "Write per-bidegree data to this CSV file");
  lab->add_flag("--probe", o.probe, "Run the structured nongeneric detectors instead");
  lab->add_flag("--critical-only", o.critical_only, "Rank only the critical ranges");
  add_json(lab);

  auto* plot = app.add_subcommand("plot", "SVG of the non-Koszul first Betti numbers");
  add_file(plot);
  add_box(plot, true);
  plot->add_option("-o,--output", o.output, "Output SVG path")->required();
  add_json(plot);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Runner r(o, out, err);
  try {
    if (betti->parsed()) return r.betti();
    if (h1->parsed()) return r.grid("h1");
    if (hf->parsed()) return r.grid("hf");
    if (chi->parsed()) return r.chi_grids();
    if (nd->parsed()) return r.nd_only();
    if (cls->parsed()) return r.classify_cmd();
    if (res->parsed()) return r.resolve();
    if (gen->parsed()) return r.generic();
    if (lab->parsed()) return r.lab();
    if (plot->parsed()) return r.plot();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const SystemFileError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace bigres::cli
