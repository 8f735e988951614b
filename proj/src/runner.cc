#include "fragile_cpr/runner.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

#include "fragile_cpr/best_response.h"
#include "fragile_cpr/csv.h"
#include "fragile_cpr/heterogeneity.h"
#include "fragile_cpr/metrics.h"
#include "fragile_cpr/parallel.h"
#include "fragile_cpr/roots.h"

namespace fragile_cpr {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

// A written equilibrium may miss the fixed point by at most this multiple
// of the sweep tolerance.
constexpr double kResidualFactor = 10.0;

constexpr int kFig1GridPoints = 200;

double ResidualLimit(const SolverSettings& s) {
  return std::max(kResidualFactor * s.sweep_tol, kRootTol);
}

FragileCprGame MakeGame(std::vector<RiskProfile> players,
                        const Resource& resource, const SolverSettings& s) {
  return FragileCprGame(std::move(players), resource, s.grid_n);
}

FragileCprGame MakeHomogeneous(const Resource& resource, RiskProfile prof,
                               int n, const SolverSettings& s) {
  return MakeGame(std::vector<RiskProfile>(n, prof), resource, s);
}

double FixedPointResidual(const FragileCprGame& game,
                          const std::vector<double>& x) {
  const double total = std::accumulate(x.begin(), x.end(), 0.0);
  double worst = 0.0;
  for (int i = 0; i < game.n(); ++i) {
    worst = std::max(worst, std::abs(x[i] - BestResponse(game, i, total - x[i])));
  }
  return worst;
}

void CheckFixedPoint(const FragileCprGame& game, const std::vector<double>& x,
                     const SolverSettings& s, const std::string& where) {
  const double r = FixedPointResidual(game, x);
  if (!(r <= ResidualLimit(s))) {
    throw NonConvergenceError(where + ": fixed-point residual " +
                              FormatNumber(r) + " exceeds " +
                              FormatNumber(ResidualLimit(s)));
  }
}

EquilibriumResult SolveChecked(const FragileCprGame& game,
                               const SolverSettings& s,
                               const std::string& where) {
  EquilibriumResult res = SolvePne(game, ToSolverOptions(s));
  if (!res.converged) {
    throw NonConvergenceError(where + ": best-response dynamics did not settle in " +
                              std::to_string(s.max_sweeps) + " sweeps");
  }
  CheckFixedPoint(game, res.investments, s, where);
  return res;
}

// Symmetric equilibrium of an n-player homogeneous game, re-checked as a
// profile of best responses.
HomogeneousSolution HomogeneousChecked(const FragileCprGame& game,
                                       const SolverSettings& s,
                                       const std::string& where) {
  const HomogeneousSolution sol = SolveHomogeneous(game, game.n());
  CheckFixedPoint(game, std::vector<double>(game.n(), sol.per_player), s, where);
  return sol;
}

void RequireNontrivial(const FragileCprGame& game) {
  if (ComputeRegion(game, 0).trivial()) {
    throw TrivialGameError("game is trivial: ybar = 0, nobody invests");
  }
}

std::string SupportCell(const std::vector<int>& support) {
  std::string s;
  for (int i : support) {
    if (!s.empty()) s += ' ';
    s += std::to_string(i + 1);
  }
  return s;
}

std::vector<int> RangeValues(const IntRange& r) {
  std::vector<int> v;
  for (int x = r.lo; x <= r.hi; x += r.step) v.push_back(x);
  return v;
}

std::vector<std::string> NumberedColumns(const std::string& prefix, int n) {
  std::vector<std::string> cols;
  for (int i = 1; i <= n; ++i) cols.push_back(prefix + std::to_string(i));
  return cols;
}

void ResourceMeta(CsvWriter& w, const Resource& resource) {
  w.Meta("rate", resource.rate.Describe());
  w.Meta("failure", resource.failure.Describe());
}

double BoundValue(const BoundsReport& rep, const char* name) {
  const BoundEntry& e = rep.at(name);
  return e.applicable ? e.value : kNaN;
}

void EmitGammaSweep(CsvWriter& w, const RateOfReturn& rate, RiskProfile prof,
                    int n, const IntRange& gammas, const SolverSettings& s) {
  const std::vector<int> gs = RangeValues(gammas);
  std::vector<BoundsReport> reps(gs.size());
  ParallelFor(static_cast<int>(gs.size()), [&](int i) {
    const Resource res{rate, FailureProb::Power(gs[i])};
    const FragileCprGame game = MakeHomogeneous(res, prof, n, s);
    if (n > 1) HomogeneousChecked(game, s, "gamma=" + std::to_string(gs[i]));
    reps[i] = EvaluateBounds(game, n);
  });

  w.Meta("alpha", prof.alpha);
  w.Meta("k", prof.k);
  w.Meta("n", static_cast<double>(n));
  w.Meta("x_star_r", reps.front().x_star_r);
  w.Header({"gamma", "fuc", "trivial_bound", "cor43_bound", "thm44_lower",
            "linear_upper_bound", "increasing_fuc_bound", "fuc_limit", "x_pvt", "ybar"});
  using namespace bound_names;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const BoundsReport& r = reps[i];
    w.Row(std::vector<double>{
        static_cast<double>(gs[i]), r.fuc, BoundValue(r, kTrivial),
        BoundValue(r, kFucDegree), BoundValue(r, kFucLowerExponential),
        BoundValue(r, kFucUpperLinear), BoundValue(r, kFucIncreasing), r.fuc_limit,
        r.x_pvt, r.ybar});
  }
}

void EmitNSweep(CsvWriter& w, const Resource& resource, RiskProfile prof,
                const IntRange& ns_range, const SolverSettings& s) {
  const std::vector<int> ns = RangeValues(ns_range);
  std::vector<std::array<double, 3>> rows(ns.size());
  ParallelFor(static_cast<int>(ns.size()), [&](int i) {
    const FragileCprGame game = MakeHomogeneous(resource, prof, ns[i], s);
    RequireNontrivial(game);
    const HomogeneousSolution sol =
        HomogeneousChecked(game, s, "n=" + std::to_string(ns[i]));
    const double p_pvt = game.failure().ValueClamped(PrivateInvestment(game));
    const double p_ybar = game.failure().ValueClamped(ComputeRegion(game, 0).ybar);
    rows[i] = {sol.total, ComputeFuc(game, ns[i]),
               p_pvt > 0.0 ? p_ybar / p_pvt : kInf};
  });
  w.Meta("alpha", prof.alpha);
  w.Meta("k", prof.k);
  w.Header({"n", "total", "fuc", "fuc_limit"});
  for (std::size_t i = 0; i < ns.size(); ++i) {
    w.Row(std::vector<double>{static_cast<double>(ns[i]), rows[i][0], rows[i][1],
                              rows[i][2]});
  }
}

void EmitBounds(CsvWriter& w, const FragileCprGame& game,
                const SolverSettings& s) {
  if (game.n() > 1) HomogeneousChecked(game, s, "bounds");
  const BoundsReport rep = EvaluateBounds(game, game.n());
  w.Meta("alpha", game.player(0).alpha);
  w.Meta("k", game.player(0).k);
  w.Meta("all_hold", rep.all_hold() ? "1" : "0");
  w.Header({"quantity", "value", "applicable", "holds"});
  const std::pair<const char*, double> scalars[] = {
      {"n", static_cast<double>(rep.n)},
      {"x_pvt", rep.x_pvt},
      {"ybar", rep.ybar},
      {"fuc", rep.fuc},
      {"fuc_limit", rep.fuc_limit},
      {"investment_ratio", rep.investment_ratio},
      {"x_star_r", rep.x_star_r},
      {"zeta", rep.zeta},
  };
  for (const auto& [name, value] : scalars) {
    w.Row(std::vector<std::string>{name, FormatNumber(value), "", ""});
  }
  for (const auto& [name, entry] : rep.bounds) {
    w.Row(std::vector<std::string>{
        name, entry.applicable ? FormatNumber(entry.value) : "nan",
        entry.applicable ? "1" : "0",
        entry.applicable ? (entry.holds ? "1" : "0") : ""});
  }
}

void EmitKSpread(CsvWriter& w, const ExperimentConfig& cfg) {
  const SolverSettings& s = cfg.solver;
  const int n = static_cast<int>(cfg.players.size());
  const RiskProfile prof = cfg.players.front();
  const FragileCprGame homogeneous = MakeHomogeneous(cfg.resource, prof, n, s);
  RequireNontrivial(homogeneous);
  const double base = SolveChecked(homogeneous, s, "homogeneous").fragility;

  const MeanPreservingFamily family =
      SampleMeanPreserving(n, prof.k, cfg.samples, s.seed);
  std::vector<double> frag(family.samples.size());
  ParallelFor(static_cast<int>(frag.size()), [&](int i) {
    std::vector<RiskProfile> players;
    for (double k : family.samples[i]) players.push_back({prof.alpha, k});
    const FragileCprGame game = MakeGame(std::move(players), cfg.resource, s);
    frag[i] = SolveChecked(game, s, "sample " + std::to_string(i)).fragility;
  });
  const auto violations = std::count_if(frag.begin(), frag.end(), [&](double f) {
    return f < base - kFragilityNoise;
  });

  if (!s.seed_given) w.Comment("seed not given; defaulted to 0");
  w.Meta("seed", std::to_string(s.seed));
  w.Meta("samples", static_cast<double>(cfg.samples));
  w.Meta("alpha", prof.alpha);
  w.Meta("k_mean", prof.k);
  w.Meta("homogeneous_fragility", base);
  w.Meta("violations", static_cast<double>(violations));
  w.Meta("min_at_homogeneous", violations == 0 ? "1" : "0");
  std::vector<std::string> cols{"sample", "fragility"};
  for (auto& c : NumberedColumns("k_", n)) cols.push_back(c);
  w.Header(cols);
  for (std::size_t i = 0; i < frag.size(); ++i) {
    std::vector<double> row{static_cast<double>(i + 1), frag[i]};
    row.insert(row.end(), family.samples[i].begin(), family.samples[i].end());
    w.Row(row);
  }
}

EquilibriumResult SolveAlphaRow(const Resource& resource,
                                const std::vector<RiskProfile>& players,
                                const std::vector<double>& alphas,
                                const SolverSettings& s, const std::string& where) {
  std::vector<RiskProfile> row = players;
  for (std::size_t i = 0; i < row.size(); ++i) row[i].alpha = alphas[i];
  return SolveChecked(MakeGame(std::move(row), resource, s), s, where);
}

void EmitAlphaTable(CsvWriter& w, const ExperimentConfig& cfg) {
  const auto& rows = cfg.alpha_rows;
  std::vector<EquilibriumResult> eq(rows.size());
  ParallelFor(static_cast<int>(rows.size()), [&](int i) {
    eq[i] = SolveAlphaRow(cfg.resource, cfg.players, rows[i], cfg.solver,
                          "row " + std::to_string(i + 1));
  });
  const int n = static_cast<int>(cfg.players.size());
  std::vector<std::string> cols{"row"};
  for (auto& c : NumberedColumns("alpha_", n)) cols.push_back(c);
  for (const char* c : {"fragility", "total", "support"}) cols.push_back(c);
  w.Header(cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<std::string> cells{std::to_string(i + 1)};
    for (double a : rows[i]) cells.push_back(FormatNumber(a));
    cells.push_back(FormatNumber(eq[i].fragility));
    cells.push_back(FormatNumber(eq[i].total));
    cells.push_back(SupportCell(eq[i].support));
    w.Row(cells);
  }
}

void EmitAlphaSweep(CsvWriter& w, const Resource& resource, double k, int n,
                    const std::vector<double>& grid, const SolverSettings& s) {
  std::vector<double> frag(grid.size());
  ParallelFor(static_cast<int>(grid.size()), [&](int i) {
    const FragileCprGame game = MakeHomogeneous(resource, {grid[i], k}, n, s);
    frag[i] = SolveChecked(game, s, "alpha=" + FormatNumber(grid[i])).fragility;
  });
  const auto argmax = std::max_element(frag.begin(), frag.end()) - frag.begin();
  w.Meta("k", k);
  w.Meta("n", static_cast<double>(n));
  w.Meta("rise_then_fall", IsRiseThenFall(frag) ? "1" : "0");
  w.Meta("monotone", IsMonotone(frag) ? "1" : "0");
  w.Meta("argmax_alpha", grid[argmax]);
  w.Header({"alpha", "fragility"});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    w.Row(std::vector<double>{grid[i], frag[i]});
  }
}

void EmitPoaSweep(CsvWriter& w, const Resource& resource, RiskProfile prof,
                  const IntRange& ns_range, const SolverSettings& s) {
  const std::vector<int> ns = RangeValues(ns_range);
  std::vector<std::array<double, 3>> rows(ns.size());
  ParallelFor(static_cast<int>(ns.size()), [&](int i) {
    const FragileCprGame game = MakeHomogeneous(resource, prof, ns[i], s);
    const EquilibriumResult eq = SolveChecked(game, s, "n=" + std::to_string(ns[i]));
    const double pne = Welfare(game, eq.investments);
    const double opt = ComputeSocialOptimum(game, ns[i]).welfare;
    rows[i] = {pne <= kPoaWelfareFloor ? kInf : opt / pne, opt, pne};
  });
  w.Meta("alpha", prof.alpha);
  w.Meta("k", prof.k);
  w.Header({"n", "poa", "welfare_opt", "welfare_pne"});
  for (std::size_t i = 0; i < ns.size(); ++i) {
    w.Row(std::vector<double>{static_cast<double>(ns[i]), rows[i][0], rows[i][1],
                              rows[i][2]});
  }
}

// ---- reproduce ---------------------------------------------------------

using Panels = std::vector<std::pair<std::string, std::string>>;

Panels ReproduceFig1(const SolverSettings& s) {
  struct Panel {
    const char* name;
    Resource resource;
    double k;
  };
  const Panel panels[] = {
      {"a", {RateOfReturn::DirectAffine(2.0, -1.0), FailureProb::Power(1.0)}, 2.0},
      {"b", {RateOfReturn::DirectPowerShift(0.1, 0.5), FailureProb::Power(2.0)}, 1.0},
  };
  Panels out;
  for (const Panel& p : panels) {
    // rbar is given directly, so alpha does not enter f.
    const FragileCprGame game = MakeGame({{1.0, p.k}}, p.resource, s);
    const ResponseRegion region = ComputeRegion(game, 0);
    std::ostringstream buf;
    CsvWriter w(buf);
    w.Meta("target", "fig1");
    w.Meta("panel", p.name);
    ResourceMeta(w, p.resource);
    w.Meta("k", p.k);
    w.Meta("ybar", region.ybar);
    if (region.zhat) w.Meta("zhat", *region.zhat);
    if (region.interval) {
      w.Meta("interval_lo", region.interval->first);
      w.Meta("interval_hi", region.interval->second);
    }
    w.Header({"x_T", "f", "f_prime"});
    for (int i = 0; i <= kFig1GridPoints; ++i) {
      const double x = static_cast<double>(i) / kFig1GridPoints;
      const Derivs f = game.EffectiveRate(0, x);
      w.Row(std::vector<double>{x, f.value, f.first});
    }
    out.emplace_back(p.name, buf.str());
  }
  return out;
}

// Figure panels sweeping gamma = 1..25 at alpha = 0.88, k = 2.25. The finite
// n only affects the `fuc` column; `fuc_limit` is the n -> infinity value.
constexpr int kGammaFigurePlayers = 10;

Panels ReproduceGammaFigure(const char* target,
                            const std::vector<std::pair<double, double>>& rates,
                            const SolverSettings& s) {
  Panels out;
  const char* names[] = {"a", "b"};
  for (std::size_t i = 0; i < rates.size(); ++i) {
    const RateOfReturn rate = RateOfReturn::Affine(rates[i].first, rates[i].second);
    std::ostringstream buf;
    CsvWriter w(buf);
    w.Meta("target", target);
    w.Meta("panel", names[i]);
    w.Meta("rate", rate.Describe());
    w.Meta("failure", "p(x)=x^gamma");
    EmitGammaSweep(w, rate, {0.88, 2.25}, kGammaFigurePlayers, {1, 25, 1}, s);
    out.emplace_back(names[i], buf.str());
  }
  return out;
}

Panels ReproduceFig4(const SolverSettings& s) {
  Panels out;
  const std::pair<const char*, RateOfReturn> panels[] = {
      {"a", RateOfReturn::Affine(1.25, -0.2)},
      {"b", RateOfReturn::Affine(1.1, 0.8)},
  };
  for (const auto& [name, rate] : panels) {
    const Resource res{rate, FailureProb::Power(1.0)};
    std::ostringstream buf;
    CsvWriter w(buf);
    w.Meta("target", "fig4");
    w.Meta("panel", name);
    ResourceMeta(w, res);
    EmitAlphaSweep(w, res, 1.0, 3, DefaultAlphaGrid(), s);
    out.emplace_back(name, buf.str());
  }
  return out;
}

Panels ReproduceTable1(const SolverSettings& s) {
  const std::vector<std::vector<double>> rows = {{0.5, 0.5, 0.5}, {0.3, 0.3, 0.9}};
  const std::vector<RiskProfile> players(3, RiskProfile{0.5, 1.0});
  const std::pair<const char*, std::vector<std::pair<double, double>>> panels[] = {
      {"a", {{5.0, -1.0}, {1.55, -0.5}}},
      {"b", {{3.0, 1.0}, {1.05, 0.9}}},
  };
  Panels out;
  for (const auto& [name, rates] : panels) {
    std::vector<EquilibriumResult> eq(rates.size() * rows.size());
    ParallelFor(static_cast<int>(eq.size()), [&](int j) {
      const auto& [c0, c1] = rates[j / rows.size()];
      const Resource res{RateOfReturn::Affine(c0, c1), FailureProb::Power(1.0)};
      eq[j] = SolveAlphaRow(res, players, rows[j % rows.size()], s,
                            "table1 entry " + std::to_string(j + 1));
    });
    std::ostringstream buf;
    CsvWriter w(buf);
    w.Meta("target", "table1");
    w.Meta("panel", name);
    w.Meta("failure", "p(x)=x");
    w.Meta("k", 1.0);
    w.Header({"c0", "c1", "row", "alpha_1", "alpha_2", "alpha_3", "fragility",
              "total", "support"});
    for (std::size_t j = 0; j < eq.size(); ++j) {
      const auto& [c0, c1] = rates[j / rows.size()];
      const auto& alphas = rows[j % rows.size()];
      w.Row(std::vector<std::string>{
          FormatNumber(c0), FormatNumber(c1), std::to_string(j % rows.size() + 1),
          FormatNumber(alphas[0]), FormatNumber(alphas[1]), FormatNumber(alphas[2]),
          FormatNumber(eq[j].fragility), FormatNumber(eq[j].total),
          SupportCell(eq[j].support)});
    }
    out.emplace_back(name, buf.str());
  }
  return out;
}

Panels ReproduceExample2(const SolverSettings& s) {
  struct Point {
    int n;
    double gamma, alpha, k, b;
  };
  std::vector<Point> grid;
  for (int n : {1, 2, 5, 50})
    for (double gamma : {1.0, 2.0, 5.0})
      for (double alpha : {0.5, 0.88, 1.0})
        for (double k : {0.5, 1.0, 2.25})
          for (double b : {0.5, 1.0, 3.0}) grid.push_back({n, gamma, alpha, k, b});

  std::vector<double> solver(grid.size());
  ParallelFor(static_cast<int>(grid.size()), [&](int i) {
    const Point& p = grid[i];
    const Resource res{RateOfReturn::Constant(p.b), FailureProb::Power(p.gamma)};
    const FragileCprGame game = MakeHomogeneous(res, {p.alpha, p.k}, p.n, s);
    if (p.n > 1) HomogeneousChecked(game, s, "example2 point " + std::to_string(i));
    solver[i] = ComputeFuc(game, p.n);
  });

  double max_diff = 0.0;
  std::vector<double> closed(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point& p = grid[i];
    closed[i] = (p.gamma + p.alpha) / (p.alpha + p.gamma / p.n);
    max_diff = std::max(max_diff, std::abs(solver[i] - closed[i]));
  }
  std::ostringstream buf;
  CsvWriter w(buf);
  w.Meta("target", "example2");
  w.Meta("panel", "grid");
  w.Meta("rate", "r(x)=1+b");
  w.Meta("failure", "p(x)=x^gamma");
  w.Meta("max_abs_diff", max_diff);
  w.Header({"n", "gamma", "alpha", "k", "b", "fuc_solver", "fuc_closed_form",
            "abs_diff"});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point& p = grid[i];
    w.Row(std::vector<double>{static_cast<double>(p.n), p.gamma, p.alpha, p.k, p.b,
                              solver[i], closed[i], std::abs(solver[i] - closed[i])});
  }
  return {{"grid", buf.str()}};
}

Panels ReproduceTarget(const std::string& target, const SolverSettings& s) {
  if (target == "fig1") return ReproduceFig1(s);
  if (target == "fig2") return ReproduceGammaFigure("fig2", {{1.21, -0.2}, {4.0, -1.0}}, s);
  if (target == "fig3") return ReproduceGammaFigure("fig3", {{4.0, 1.0}, {4.0, 4.0}}, s);
  if (target == "fig4") return ReproduceFig4(s);
  if (target == "table1") return ReproduceTable1(s);
  if (target == "example2") return ReproduceExample2(s);
  throw ConfigError("unknown reproduce target '" + target + "'");
}

std::string TargetList() {
  std::string s;
  for (const auto& t : ReproduceTargets()) s += (s.empty() ? "" : ", ") + t;
  return s;
}

// Runs `body`, mapping library exceptions to exit codes.
int Guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const AssumptionViolation& e) {
    err << "assumption violated:\n" << e.report().FailureSummary();
  } catch (const TrivialGameError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const NonConvergenceError& e) {
    err << "not converged: " << e.what() << '\n';
    return kExitNotConverged;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
  } catch (const std::domain_error& e) {
    err << "invalid input: " << e.what() << '\n';
  }
  return kExitInvalid;
}

bool WriteFile(const std::filesystem::path& path, const std::string& text,
               std::ostream& err) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text) || !f.flush()) {
    err << "error: cannot write " << path.string() << '\n';
    return false;
  }
  return true;
}

}  // namespace

void ApplyOverrides(const RunOverrides& o, SolverSettings& s) {
  if (o.sweep_tol) s.sweep_tol = *o.sweep_tol;
  if (o.max_sweeps) s.max_sweeps = *o.max_sweeps;
  if (o.seed) {
    s.seed = *o.seed;
    s.seed_given = true;
  }
  if (o.grid_n) s.grid_n = *o.grid_n;
}

SolverOptions ToSolverOptions(const SolverSettings& s) {
  SolverOptions opts;
  opts.sweep_tol = s.sweep_tol;
  opts.max_sweeps = s.max_sweeps;
  return opts;
}

FragileCprGame BuildGame(const ExperimentConfig& config) {
  return MakeGame(config.players, config.resource, config.solver);
}

void WriteExperiment(const ExperimentConfig& cfg, std::ostream& csv) {
  CsvWriter w(csv);
  w.Meta("experiment", ExperimentName(cfg.type));
  ResourceMeta(w, cfg.resource);
  const int n = static_cast<int>(cfg.players.size());
  const RiskProfile first = cfg.players.front();
  switch (cfg.type) {
    case ExperimentType::kSolve: {
      const FragileCprGame game = BuildGame(cfg);
      const EquilibriumResult eq = SolveChecked(game, cfg.solver, "solve");
      w.Meta("n", static_cast<double>(n));
      std::vector<std::string> cols{"total", "fragility", "support_size", "sweeps",
                                    "residual"};
      for (auto& c : NumberedColumns("x_", n)) cols.push_back(c);
      w.Header(cols);
      std::vector<double> row{eq.total, eq.fragility,
                              static_cast<double>(eq.support.size()),
                              static_cast<double>(eq.sweeps), eq.residual};
      row.insert(row.end(), eq.investments.begin(), eq.investments.end());
      w.Row(row);
      break;
    }
    case ExperimentType::kFucSweep:
      if (cfg.gamma_range) {
        EmitGammaSweep(w, cfg.resource.rate, first, n, *cfg.gamma_range, cfg.solver);
      } else {
        EmitNSweep(w, cfg.resource, first, *cfg.n_range, cfg.solver);
      }
      break;
    case ExperimentType::kBounds:
      EmitBounds(w, BuildGame(cfg), cfg.solver);
      break;
    case ExperimentType::kKSpread:
      EmitKSpread(w, cfg);
      break;
    case ExperimentType::kAlphaTable:
      BuildGame(cfg);  // validates the resource once, up front
      EmitAlphaTable(w, cfg);
      break;
    case ExperimentType::kAlphaSweep:
      EmitAlphaSweep(w, cfg.resource, first.k, n,
                     cfg.alpha_grid.empty() ? DefaultAlphaGrid() : cfg.alpha_grid,
                     cfg.solver);
      break;
    case ExperimentType::kPoaSweep:
      EmitPoaSweep(w, cfg.resource, first, *cfg.n_range, cfg.solver);
      break;
  }
}

int Run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    const ValidationReport report = ValidateConfig(config);
    if (!report.ok()) {
      err << "invalid config:\n" << report.FailureSummary();
      return kExitInvalid;
    }
    std::ostringstream csv;
    WriteExperiment(config, csv);
    if (!config.output) {
      out << csv.str();
      return kExitOk;
    }
    return WriteFile(*config.output, csv.str(), err) ? kExitOk : kExitInvalid;
  });
}

int RunFile(const std::string& path, const RunOverrides& overrides,
            std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    ExperimentConfig config = LoadConfig(path);
    ApplyOverrides(overrides, config.solver);
    return Run(config, out, err);
  });
}

int ValidateFile(const std::string& path, const RunOverrides& overrides,
                 std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    ExperimentConfig config = LoadConfig(path);
    ApplyOverrides(overrides, config.solver);
    const ValidationReport report = ValidateConfig(config);
    for (const auto& c : report.checks) {
      out << (c.passed ? "PASS " : "FAIL ") << c.name;
      if (!c.passed) out << ": " << c.message;
      out << '\n';
    }
    return report.ok() ? kExitOk : kExitInvalid;
  });
}

const std::vector<std::string>& ReproduceTargets() {
  static const std::vector<std::string> kTargets = {"fig1", "fig2",   "fig3",
                                                    "fig4", "table1", "example2"};
  return kTargets;
}

int Reproduce(const std::vector<std::string>& targets, const std::string& out_dir,
              const RunOverrides& overrides, std::ostream& out, std::ostream& err) {
  if (targets.empty()) {
    err << "error: no reproduce target given (" << TargetList() << ")\n";
    return kExitInvalid;
  }
  const auto& known = ReproduceTargets();
  for (const auto& t : targets) {
    if (std::find(known.begin(), known.end(), t) == known.end()) {
      err << "error: unknown reproduce target '" << t << "' (" << TargetList()
          << ")\n";
      return kExitInvalid;
    }
  }
  SolverSettings settings;
  ApplyOverrides(overrides, settings);
  return Guarded(err, [&] {
    std::vector<std::pair<std::string, std::string>> files;
    for (const auto& t : targets) {
      for (auto& [panel, text] : ReproduceTarget(t, settings)) {
        files.emplace_back("repro_" + t + "_" + panel + ".csv", std::move(text));
      }
    }
    for (const auto& [name, text] : files) {
      const auto path = std::filesystem::path(out_dir) / name;
      if (!WriteFile(path, text, err)) return kExitInvalid;
      out << path.string() << '\n';
    }
    return kExitOk;
  });
}

}  // namespace fragile_cpr
