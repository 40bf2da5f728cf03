#pragma once

#include "dlp/geometry.hpp"
#include "dlp/multigrid.hpp"
#include "dlp/nystrom.hpp"
#include "dlp/precond.hpp"
#include "dlp/solver.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace dlp::experiments {

enum class RhsKind { PointSource, Quadratic, Random };

RhsKind parse_rhs(const std::string& s);
std::string to_string(RhsKind kind);
BoundaryData make_rhs(const BoundaryGrid& grid, RhsKind kind, std::uint64_t seed);

struct Table {
  std::string name;
  std::vector<std::string> meta;  // written as leading `# ` lines
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write_csv(std::ostream& os) const;
};

struct RunOptions {
  bool large = false;
  std::uint64_t seed = 1;
  double tol = 1e-12;
  std::function<void(const std::string&)> progress;
};

/// One configured solve, as driven by the command line.
struct SolveConfig {
  CurveSpec curve = CurveSpec::simple();
  int n = 512;
  int leaf = 10;
  int moments = 4;
  /// none, banded, blockdiag, ulist, ulist-ilu, vlist1, vlist1-exact, vlist2,
  /// fmmschur, fmmschur-ilu, multigrid
  std::string precond = "none";
  int band = 2;
  double ilu_drop = 1e-3;
  // Multigrid.
  int n_min = 128;
  CoarseningMode coarsening = CoarseningMode::Geometric;
  HierarchyShape shape = HierarchyShape::TwoGrid;
  int pre_smooth = 1;
  int post_smooth = 0;
  int m_coarse = 20;
  SmootherKind smoother = SmootherKind::Picard;
  CoarseSolverKind coarse_solver = CoarseSolverKind::ExactLU;
  // Data and stopping.
  RhsKind rhs = RhsKind::PointSource;
  std::uint64_t seed = 1;
  double tol = 1e-12;
  int max_iter = 2000;

  /// Throws ConfigError on inconsistent settings before any heavy work.
  void validate() const;
};

PreconditionerPtr make_preconditioner(const SolveConfig& config, const DenseOperator& op);

struct SolveOutcome {
  SolveReport report;
  std::string precond_name;
  double precond_cost = 0.0;
  double resolution = 0.0;
};

SolveOutcome run_solve(const SolveConfig& config);

/// Summary CSV with one header and one data row.
void write_report_csv(std::ostream& os, const SolveConfig& config, const SolveOutcome& out);

// ---------------------------------------------------------------------------
// Experiment suites. Each returns raw rows; the *_table functions format them.

/// Ellipse grid size: max(256, 32 a) rounded up to a power of 2.
int aspect_ratio_n(double aspect);

struct AspectRow {
  double aspect;
  int n;
  int iterations;
};
std::vector<AspectRow> aspect_ratio(const RunOptions& options, const std::vector<double>& aspects = {2, 4, 8, 16, 32, 64, 128});

/// Grid size used for the lobe sweep.
inline constexpr int kLobesN = 1024;

struct LobesRow {
  int lobes;
  int n;
  int iterations;
};
std::vector<LobesRow> lobes(const RunOptions& options, const std::vector<int>& ks = {2, 3, 4, 5, 6, 7, 8});

struct TwoLevelCase {
  CurveSpec curve;
  int n;
};
std::vector<TwoLevelCase> two_level_cases();

struct TwoLevelRow {
  std::string geometry;
  int n;
  std::string precond;
  int single;    // -1 when not run
  int nmin128;
  int nmin16;
};
std::vector<TwoLevelRow> two_level(const RunOptions& options, const std::vector<TwoLevelCase>& cases,
                                   bool multigrid_columns = true);

struct CoarseningCase {
  CurveSpec curve;
  int n;
  int n_min;
  int m_coarse;
  int leaf;
};
std::vector<CoarseningCase> coarsening_cases();

struct CoarseningRow {
  std::string geometry;
  int n;
  std::string precond;
  int geo_iterations;
  double geo_matvecs;
  int proj_iterations;  // -1 for the unpreconditioned row
  double proj_matvecs;
  double geo_cycle_cost;
  double proj_cycle_cost;
};
std::vector<CoarseningRow> coarsening(const RunOptions& options, const std::vector<CoarseningCase>& cases);

struct Coarse512Row {
  int n;
  double metric;
  int unpre;
  int single_p0;
  // [coarse 512, coarse 1024]; -1 when N does not exceed the coarse size
  int two_picard[2];
  int two_p0[2];
  int mg_picard[2];
  int mg_p0[2];
};
std::vector<Coarse512Row> coarse512(const RunOptions& options, const std::vector<int>& ns = {512, 1024, 2048, 4096, 8192});

struct SingleGridRow {
  int lobes;
  int n;
  double metric;
  int unpre;
  int pd;
  int p0;
  int p0_ilu;
  int p1;  // -1 when skipped for memory
  int ps1;
  int ps1_ilu;
};
/// Random right-hand side, s = 50.
std::vector<SingleGridRow> single_grid(const RunOptions& options, int lobes, const std::vector<int>& ns);
/// Largest N for which the dense P_1 factorization is attempted.
inline constexpr int kMaxDenseP1 = 8192;

struct SpectrumRow {
  int n;
  std::string smoother;
  int mode;  // k in -N/2 .. N/2-1
  double amplitude;
};
/// Four-lobe flower, f = 0, initial error with every Fourier coefficient equal to
/// one; amplitude of each Fourier coefficient after one smoothing sweep.
std::vector<SpectrumRow> smoother_spectrum(const RunOptions& options, const std::vector<int>& ns = {128, 512, 2048});
inline constexpr int kSpectrumLeaf = 10;

Table aspect_ratio_table(const RunOptions& options);
Table lobes_table(const RunOptions& options);
Table two_level_table(const RunOptions& options);
Table coarsening_table(const RunOptions& options);
Table coarse512_table(const RunOptions& options);
Table single_grid_table(const RunOptions& options);
Table smoother_spectrum_table(const RunOptions& options);

std::vector<std::string> table_names();
Table run_table(const std::string& name, const RunOptions& options);

}  // namespace dlp::experiments
