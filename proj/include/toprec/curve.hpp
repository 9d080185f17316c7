#pragma once

#include <memory>
#include <string>
#include <vector>

#include "toprec/mrat.hpp"
#include "toprec/series.hpp"

namespace toprec {

enum class Side { X, Y };

inline Side other(Side s) { return s == Side::X ? Side::Y : Side::X; }

// Symbol of the global coordinate in which x and y are written.
Sym curve_var();

struct RamificationPoint {
  Rational location;
  Side side;
};

class CurveValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Genus-0 spectral curve with global coordinate z, B = dz1 dz2/(z1-z2)^2.
class Curve {
 public:
  // Validates the x-side hypotheses (and the y-side ones when present) and throws
  // CurveValidationError quoting the violated hypothesis.
  Curve(std::string name, MRat x, MRat y);

  const std::string& name() const { return name_; }
  const MRat& x() const { return x_; }
  const MRat& y() const { return y_; }
  const MRat& dx() const { return dx_; }
  const MRat& dy() const { return dy_; }
  const MRat& fn(Side s) const { return s == Side::X ? x_ : y_; }
  const MRat& dfn(Side s) const { return s == Side::X ? dx_ : dy_; }

  // fn(side) written in variable v
  MRat fn_at(Side s, Sym v) const;
  MRat dfn_at(Side s, Sym v) const;

  const std::vector<RamificationPoint>& ramification_points(Side s) const;
  bool dual_side_valid() const { return y_error_.empty(); }

  // sigma(p + t) - p through t^K (coefficient list, index 0 is 0)
  std::vector<Rational> deck_series(const RamificationPoint& rp, int K) const;
  ShiftFn deck_shift(const RamificationPoint& rp) const;

  // Swap the roles of x and y.
  Curve swapped() const;
  // x replaced by x + c
  Curve shifted_x(const Rational& c) const;

 private:
  struct DeckCache;
  std::string name_;
  MRat x_, y_, dx_, dy_;
  std::vector<RamificationPoint> rx_, ry_;
  std::string y_error_;
  std::shared_ptr<DeckCache> cache_;
};

std::vector<RamificationPoint> ramification_points(const Curve& c, Side s);

// (d/dz_v f) / f'(z_v) for the curve function on the given side.
MRat d_op(const Curve& c, const MRat& f, Sym v, Side s);

}  // namespace toprec
