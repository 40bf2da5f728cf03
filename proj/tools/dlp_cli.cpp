// Command-line driver: single solves, interior evaluation and the experiment tables.

#include "dlp/experiments.hpp"
#include "dlp/geometry.hpp"
#include "dlp/nystrom.hpp"
#include "dlp/solver.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace ex = dlp::experiments;
namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNoConvergence = 3;

const char* kColumnsHelp = R"(CSV outputs
  report.csv     geometry,n,leaf,precond,precond_cost,rhs,seed,tol,iterations,
                 scaled_matvecs,converged,final_relres,true_relres,resolution_metric
  residuals.csv  iter,relres   (relres = ||f - A x_k|| / ||f||, row 0 is 1)
  geometry dump  j,theta,x,y,nx,ny,kappa,jac
  eval output    x,y,u
  tables         lines starting with '#' carry run metadata, then a header row
    aspect-ratio       aspect,iterations
    lobes              lobes,iterations
    two-level          geometry,n,precond,single,nmin128,nmin16
    coarsening         geometry,n,nmin,mcoarse,precond,geometric_iterations,
                       geometric_matvecs,projection_iterations,projection_matvecs
    coarse512          n,metric,unpre,single_p0,{two,mg}_{picard,p0}_{512,1024}
    single-grid        lobes,n,metric,unpre,p_d,p_0,p_0_ilu,p_1,p_s1,p_s1_ilu
    smoother-spectrum  n,smoother,mode,amplitude
  Empty cells mark runs that were skipped or did not converge.
Exit codes: 0 success, 2 configuration error, 3 GMRES did not converge.)";

struct Args {
  std::string geometry = "simple";
  double aspect = 2.0;
  int lobes = 4;
  std::string rhs = "point";
  std::string coarsening = "geometric";
  std::string cycle = "1,0";
  std::string levels = "two";
  std::string smoother = "picard";
  std::string coarse = "lu";
  std::string out;
  std::string dump_geometry;
  std::string targets;
  std::string table;
  bool large = false;
};

void add_problem_options(CLI::App& app, Args& a, ex::SolveConfig& c) {
  app.add_option("--geometry", a.geometry, "ellipse, simple, moderate or flower")->capture_default_str();
  app.add_option("--aspect", a.aspect, "ellipse aspect ratio")->capture_default_str();
  app.add_option("--lobes", a.lobes, "flower lobe count")->capture_default_str();
  app.add_option("--n", c.n, "number of boundary points (power of 2)")->capture_default_str();
  app.add_option("--leaf", c.leaf, "quadtree leaf capacity s")->capture_default_str();
  app.add_option("--moments", c.moments, "multipole moments p")->capture_default_str();
  app.add_option("--precond", c.precond,
                 "none, banded, blockdiag, ulist, ulist-ilu, vlist1, vlist1-exact, vlist2, fmmschur, "
                 "fmmschur-ilu, multigrid")
      ->capture_default_str();
  app.add_option("--band", c.band, "band half-width for banded preconditioners and smoothers")->capture_default_str();
  app.add_option("--ilu-drop", c.ilu_drop, "ILU drop tolerance")->capture_default_str();
  app.add_option("--nmin", c.n_min, "coarsest multigrid grid size")->capture_default_str();
  app.add_option("--coarsening", a.coarsening, "geometric or projection")->capture_default_str();
  app.add_option("--cycle", a.cycle, "pre,post smoothing sweeps, e.g. 1,0")->capture_default_str();
  app.add_option("--levels", a.levels, "two (two-grid) or all (V-cycle down to --nmin)")->capture_default_str();
  app.add_option("--smoother", a.smoother, "picard, banded, blockdiag, ulist or vlist")->capture_default_str();
  app.add_option("--coarse", a.coarse, "coarse solver: lu, gmres or fmmschur")->capture_default_str();
  app.add_option("--mcoarse", c.m_coarse, "coarse GMRES iterations")->capture_default_str();
  app.add_option("--rhs", a.rhs, "point, quadratic or random")->capture_default_str();
  app.add_option("--seed", c.seed, "seed for random boundary data")->capture_default_str();
  app.add_option("--tol", c.tol, "GMRES relative residual tolerance")->capture_default_str();
  app.add_option("--max-iter", c.max_iter, "GMRES iteration cap")->capture_default_str();
  app.add_option("--dump-geometry", a.dump_geometry, "write the boundary grid to this CSV file");
}

dlp::SmootherKind parse_smoother(const std::string& s) {
  if (s == "picard") return dlp::SmootherKind::Picard;
  if (s == "banded") return dlp::SmootherKind::Banded;
  if (s == "blockdiag") return dlp::SmootherKind::BlockDiag;
  if (s == "ulist") return dlp::SmootherKind::Ulist;
  if (s == "vlist") return dlp::SmootherKind::Vlist;
  throw dlp::ConfigError("unknown smoother '" + s + "'");
}

void finish_config(const Args& a, ex::SolveConfig& c) {
  const dlp::CurveKind kind = dlp::parse_curve_kind(a.geometry);
  switch (kind) {
    case dlp::CurveKind::Ellipse: c.curve = dlp::CurveSpec::ellipse(a.aspect); break;
    case dlp::CurveKind::Simple: c.curve = dlp::CurveSpec::simple(); break;
    case dlp::CurveKind::Moderate: c.curve = dlp::CurveSpec::moderate(); break;
    case dlp::CurveKind::Flower: c.curve = dlp::CurveSpec::flower(a.lobes); break;
  }
  c.rhs = ex::parse_rhs(a.rhs);
  if (a.coarsening == "geometric")
    c.coarsening = dlp::CoarseningMode::Geometric;
  else if (a.coarsening == "projection")
    c.coarsening = dlp::CoarseningMode::Projection;
  else
    throw dlp::ConfigError("--coarsening must be geometric or projection");
  if (a.levels == "two")
    c.shape = dlp::HierarchyShape::TwoGrid;
  else if (a.levels == "all")
    c.shape = dlp::HierarchyShape::VCycle;
  else
    throw dlp::ConfigError("--levels must be two or all");
  char comma = 0;
  std::istringstream cyc(a.cycle);
  if (!(cyc >> c.pre_smooth >> comma >> c.post_smooth) || comma != ',' || !cyc.eof())
    throw dlp::ConfigError("--cycle expects two counts such as 1,0");
  c.smoother = parse_smoother(a.smoother);
  if (a.coarse == "lu")
    c.coarse_solver = dlp::CoarseSolverKind::ExactLU;
  else if (a.coarse == "gmres")
    c.coarse_solver = dlp::CoarseSolverKind::Gmres;
  else if (a.coarse == "fmmschur")
    c.coarse_solver = dlp::CoarseSolverKind::PreconditionedGmres;
  else
    throw dlp::ConfigError("--coarse must be lu, gmres or fmmschur");
  c.validate();
}

std::ofstream open_out(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream os(p);
  if (!os) throw dlp::ConfigError("cannot write " + p.string());
  os.precision(17);
  return os;
}

void dump_geometry(const Args& a, const ex::SolveConfig& c) {
  if (a.dump_geometry.empty()) return;
  auto os = open_out(a.dump_geometry);
  dlp::write_geometry_csv(os, dlp::build_grid(c.curve, c.n));
}

std::vector<dlp::Point> read_targets(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw dlp::ConfigError("cannot read targets file " + path);
  std::vector<dlp::Point> pts;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    dlp::Point p;
    char comma = 0;
    if (!(ls >> p.x >> comma >> p.y) || comma != ',') {
      if (pts.empty()) continue;  // header row
      throw dlp::ConfigError("bad target line '" + line + "'");
    }
    pts.push_back(p);
  }
  if (pts.empty()) throw dlp::ConfigError("no targets in " + path);
  return pts;
}

int cmd_solve(const Args& a, const ex::SolveConfig& c) {
  dump_geometry(a, c);
  const ex::SolveOutcome out = ex::run_solve(c);
  const fs::path dir = a.out.empty() ? fs::path(".") : fs::path(a.out);
  {
    auto os = open_out(dir / "report.csv");
    ex::write_report_csv(os, c, out);
  }
  {
    auto os = open_out(dir / "residuals.csv");
    dlp::write_residuals_csv(os, out.report);
  }
  std::cout << out.precond_name << ": " << out.report.iterations << " iterations, "
            << out.report.scaled_matvecs << " scaled matvecs, relres " << out.report.true_relres << '\n';
  return out.report.converged ? 0 : kExitNoConvergence;
}

int cmd_eval(const Args& a, const ex::SolveConfig& c) {
  if (a.targets.empty()) throw dlp::ConfigError("eval needs --targets");
  const auto targets = read_targets(a.targets);
  dump_geometry(a, c);
  const ex::SolveOutcome out = ex::run_solve(c);
  const dlp::Vector u = dlp::eval_interior(dlp::build_grid(c.curve, c.n), out.report.solution, targets);
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!a.out.empty()) {
    file = open_out(a.out);
    os = &file;
  }
  os->precision(17);
  *os << "x,y,u\n";
  for (std::size_t i = 0; i < targets.size(); ++i)
    *os << targets[i].x << ',' << targets[i].y << ',' << u[static_cast<Eigen::Index>(i)] << '\n';
  return out.report.converged ? 0 : kExitNoConvergence;
}

int cmd_table(const Args& a, const ex::SolveConfig& c) {
  const auto names = ex::table_names();
  if (std::find(names.begin(), names.end(), a.table) == names.end())
    throw dlp::ConfigError("unknown table '" + a.table + "'");
  ex::RunOptions o;
  o.large = a.large;
  o.seed = c.seed;
  o.tol = c.tol;
  o.progress = [](const std::string& m) { std::cerr << m << '\n'; };
  const ex::Table t = ex::run_table(a.table, o);
  if (a.out.empty()) {
    t.write_csv(std::cout);
  } else {
    auto os = open_out(a.out);
    t.write_csv(os);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double-layer Laplace solver with multigrid and FMM-based preconditioners"};
  app.footer(kColumnsHelp);
  app.require_subcommand(1);
  Args a;
  ex::SolveConfig c;

  auto* solve = app.add_subcommand("solve", "run one configured solve; writes report.csv and residuals.csv");
  add_problem_options(*solve, a, c);
  solve->add_option("--out", a.out, "output directory (default: current directory)");

  auto* eval = app.add_subcommand("eval", "solve, then evaluate the interior potential at points from --targets");
  add_problem_options(*eval, a, c);
  eval->add_option("--targets", a.targets, "CSV of x,y target points")->required();
  eval->add_option("--out", a.out, "output CSV (default: stdout)");

  auto* table = app.add_subcommand("table", "run an experiment suite and emit its CSV");
  table->add_option("name", a.table, "aspect-ratio, lobes, two-level, coarsening, coarse512, single-grid, smoother-spectrum")
      ->required();
  table->add_option("--out", a.out, "output CSV (default: stdout)");
  table->add_option("--seed", c.seed, "seed for random boundary data")->capture_default_str();
  table->add_option("--tol", c.tol, "GMRES relative residual tolerance")->capture_default_str();
  table->add_flag("--large", a.large, "include the 24-lobed N = 16384 case (about 2 GB per dense matrix)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*table) {
      if (c.tol <= 0.0 || c.tol >= 1.0) throw dlp::ConfigError("--tol must lie in (0, 1)");
      return cmd_table(a, c);
    }
    finish_config(a, c);
    return *solve ? cmd_solve(a, c) : cmd_eval(a, c);
  } catch (const dlp::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
