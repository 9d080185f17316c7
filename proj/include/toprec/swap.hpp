#pragma once

#include <cstdint>
#include <vector>

#include "toprec/classical.hpp"
#include "toprec/pseries.hpp"
#include "toprec/table.hpp"

namespace toprec {

// Coordinates used for the T / W generating functions.
enum class Chart {
  Simple,  // d/dx and dx, dy
  Log,     // d/dX with dX = -dx/x, dY = -dy/y
};

enum class Direction { XtoY, YtoX };

// Series in hbar (cutoff 2G) and one parameter w; coefficients in the z variables.
using WPoly = PSeries;

// T_{|I|+1,|J|}(w; z_I; z; z_J) through hbar^{2G}. The term k = 1 of genus omit_genus is skipped.
WPoly t_cal(const OmegaTable& t, Chart chart, const std::vector<Sym>& I, Sym z, const std::vector<Sym>& J, int G,
            int omit_genus = -1);
// Only the k-th summand of t_cal.
WPoly t_cal_k(const OmegaTable& t, Chart chart, const std::vector<Sym>& I, Sym z, const std::vector<Sym>& J, int k,
              int G, int omit_genus = -1);

// e^{-c w} W_{m+1,n}(w; z) in canonical variables (z_M = z1..zm, z = z_{m+1}, z_N after),
// where c = -y for the simple chart and c = x y for the log chart. omit_genus drops the
// omega^(g)_{m+1,n} term itself.
WPoly w_cal_reduced(const OmegaTable& t, Chart chart, int m, int n, int G, int omit_genus = -1);
// [w^a] of W^{x,(g)}_{m+1,n}(w; z) (simple chart, not reduced).
MRat w_cal_coeff(const OmegaTable& t, int g, int m, int n, int a);
// Number of set partitions of a k-element set used by w_cal (Bell number).
std::size_t count_set_partitions(int k);

// XtoY: omega^(g)_{m,n+1} from W^x_{m+1,n}. YtoX: omega^(g)_{m+1,n} from W^y_{m,n+1}.
CorrDiff step_simple(const OmegaTable& t, Direction d, int g, int m, int n);
CorrDiff step_standard(const OmegaTable& t, Direction d, int g, int m, int n);

// L_r(v, theta) through hbar^{2G}; parameter v, coefficients in theta_symbol().
Sym theta_symbol();
PSeries l_series(int r, int G);

// Connected graphs with leaves 0..m-1 and regular vertices m..m+n-1. Each edge is a
// sorted list of targets of size >= 2; every leaf occurs exactly once.
struct Graph {
  int n_vertices = 0;
  int m_leaves = 0;
  std::vector<std::vector<int>> edges;  // sorted
  int betti = 0;
  long aut_order = 1;
};
std::vector<Graph> enumerate_graphs(int n_vertices, int m_leaves, int max_betti);

// omega^(g)_{0,n} from the n = 0 column.
CorrDiff graph_sum_swap(const OmegaTable& t, int g, int n);
// omega^(g)_{m,n} from the n = 0 column.
CorrDiff graph_sum_mixed(const OmegaTable& t, int g, int m, int n);

// body_{m+1,n} + body_{m,n+1} in the shared layout, from lower entries only.
MRat split_rhs(const OmegaTable& t, int g, int m, int n);
struct SplitResult {
  MRat first;   // omega_{m+1,n}
  MRat second;  // omega_{m,n+1}
};
// Splits by the poles in z_{m+1}; throws std::domain_error on an unclassified pole or a
// nonzero polynomial part.
SplitResult split_poles(const MRat& rhs, const Curve& c, int m, int n);

// Parametric identities between W^x and W^y, checked through the given parameter orders.
Check check_parametric_duality(const OmegaTable& t, int g, int m, int n, int w_max, int wt_max);
// Same with explicitly supplied reduced series (e^{wy} W^x and e^{w~ x} W^y at hbar^{2g},
// in the base layout); used to test detection of corrupted input.
Check check_parametric_duality(const Curve& c, const WPoly& rx, const WPoly& ry, int m, int n, int w_max,
                               int wt_max);
// Reduced W^y_{m,n+1} at hbar^{2g}, renamed to the base layout.
WPoly w_y_reduced_slice(const OmegaTable& t, int g, int m, int n);

// r-loop equations of (g, m, n) on one side: [w^{r-1}] W^{x,(g)}_{m+1,n} in Xi^x (Side::X),
// or [w^{r-1}] W^{y,(g)}_{m,n+1} in Xi^y (Side::Y).
Check check_loop_equations(const OmegaTable& t, Side side, int g, int m, int n, int r,
                           std::uint64_t seed = kDefaultSeed);

// Entry-level invariants.
Check check_block_symmetry(const OmegaTable& t, int g, int m, int n);
Check check_diagonal_regularity(const OmegaTable& t, int g, int m, int n);
Check check_pole_classification(const OmegaTable& t, int g, int m, int n);
// omega_{m+1,n} + omega_{m,n+1} is exact in z_{m+1}.
Check check_exactness(const OmegaTable& t, int g, int m, int n, std::uint64_t seed = kDefaultSeed);

// Restriction of several variables to one (z_bar_i -> z); uses a limit when a
// denominator factor vanishes on the diagonal. Throws std::domain_error if singular.
MRat restrict_diagonal(const MRat& f, const std::vector<Sym>& from, Sym to);

}  // namespace toprec
