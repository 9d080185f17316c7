#include "toprec/verify.hpp"

#include <chrono>
#include <functional>

#include "toprec/swap.hpp"

namespace toprec {

namespace {

std::string tag(const std::string& name, int g, int m, int n) {
  return name + "(" + std::to_string(g) + "," + std::to_string(m) + "," + std::to_string(n) + ")";
}

void record(std::vector<CheckRecord>& out, std::string name, const std::function<Check()>& f) {
  auto t0 = std::chrono::steady_clock::now();
  auto secs = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
  try {
    Check c = f();
    out.push_back({std::move(name), c.ok, c.detail, secs()});
  } catch (const std::exception& e) {
    out.push_back({std::move(name), false, std::string("error: ") + e.what(), secs()});
  }
}

Check equal(const MRat& a, const MRat& b, const char* what) {
  return a == b ? Check::pass() : Check::fail(std::string(what) + " differ: " + (a - b).str());
}

}  // namespace

std::vector<CheckRecord> run_verify_suite(const OmegaTable& t, const VerifyOptions& opt) {
  std::vector<CheckRecord> out;
  const Curve& c = t.curve();
  const bool dual = c.dual_side_valid();
  const int chi = opt.chi_max;
  auto within = [&](int g, int m, int n) { return 2 * g - 2 + m + n <= chi; };

  for (int g = 0; 2 * g - 1 <= chi; ++g)
    for (int m = 0; within(g, m, 0); ++m)
      for (int n = 0; within(g, m, n); ++n) {
        if (!is_stable(g, m, n)) continue;
        if (n > 0 && !dual) continue;
        record(out, tag("block_symmetry", g, m, n), [&] { return check_block_symmetry(t, g, m, n); });
        record(out, tag("diagonal_regularity", g, m, n), [&] { return check_diagonal_regularity(t, g, m, n); });
        record(out, tag("pole_classification", g, m, n), [&] { return check_pole_classification(t, g, m, n); });
        if (n == 0) {
          for (auto& rp : c.ramification_points(Side::X)) {
            std::string at = " at z=" + to_string(rp.location);
            record(out, tag("linear_loop", g, m, 0) + at,
                   [&] { return check_linear_loop(t, g, m - 1, rp, opt.seed); });
            record(out, tag("quadratic_loop", g, m, 0) + at,
                   [&] { return check_quadratic_loop(t, g, m - 1, rp, opt.seed); });
          }
          record(out, tag("projection", g, m, 0), [&] { return check_projection(t, g, m); });
        } else {
          record(out, tag("simple_vs_standard", g, m, n), [&] {
            MRat a = step_simple(t, Direction::XtoY, g, m, n - 1).body;
            MRat b = step_standard(t, Direction::XtoY, g, m, n - 1).body;
            Check e = equal(a, b, "simple and standard steps");
            return e ? equal(a, t.get(g, m, n), "step and table entry") : e;
          });
          record(out, tag("graph_sum_vs_steps", g, m, n),
                 [&] { return equal(graph_sum_mixed(t, g, m, n).body, t.get(g, m, n), "graph sum and steps"); });
        }
      }

  // relations that involve the entry one step up in m or n
  for (int g = 0; 2 * g - 1 <= chi; ++g)
    for (int m = 0; within(g, m + 1, 0); ++m)
      for (int n = 0; within(g, m + 1, n); ++n) {
        if (!dual && n > 0) continue;
        for (int r = 1; r <= opt.r_max; ++r) {
          record(out, tag("loop_equation_x_r" + std::to_string(r), g, m, n),
                 [&] { return check_loop_equations(t, Side::X, g, m, n, r, opt.seed); });
          if (dual)
            record(out, tag("loop_equation_y_r" + std::to_string(r), g, n, m),
                   [&] { return check_loop_equations(t, Side::Y, g, n, m, r, opt.seed); });
        }
        if (dual) {
          record(out, tag("exactness", g, m, n), [&] { return check_exactness(t, g, m, n, opt.seed); });
          // the identity is not claimed for (0,0,0)
          if (g + m + n > 0)
            record(out, tag("parametric_duality", g, m, n),
                   [&] { return check_parametric_duality(t, g, m, n, opt.duality_order, opt.duality_order); });
        }
      }
  return out;
}

}  // namespace toprec
