#pragma once

#include <compare>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "toprec/curve.hpp"
#include "toprec/mrat.hpp"

namespace toprec {

struct Triple {
  int g = 0, m = 0, n = 0;
  auto operator<=>(const Triple&) const = default;
  int chi() const { return 2 * g - 2 + m + n; }
  std::string str() const;
};

inline bool is_stable(int g, int m, int n) { return 2 * g - 2 + m + n > 0; }

// omega^(g)_{m,n} / prod dz_i in the canonical variables z1..z_{m+n};
// z1..zm are the x-type arguments, the rest are y-type.
struct CorrDiff {
  int g = 0, m = 0, n = 0;
  MRat body;
  Triple key() const { return {g, m, n}; }
};

class MissingEntry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// How the n = 0 column is produced on demand.
enum class ColumnSource {
  Recursion,   // residue recursion at the zeros of dx
  SplitPoles,  // pole splitting of the simple-step relation
  Given,       // only entries stored with put(); others are missing
};

// Lazily filled table of mixed correlation differentials for one curve.
// Entries with n >= 1 are defined through the simple x -> y step from the
// n = 0 column. Copies share the cache; swapped() is a view with the roles of
// x and y exchanged (omega_{m,n} of the view is omega_{n,m} of the base with the
// argument blocks exchanged).
class OmegaTable {
 public:
  explicit OmegaTable(Curve c, ColumnSource src = ColumnSource::Recursion);

  const Curve& curve() const;
  ColumnSource source() const;
  bool is_swapped_view() const { return swapped_; }

  // Throws MissingEntry naming (g,m,n) when the entry cannot be produced.
  const MRat& get(int g, int m, int n) const;
  CorrDiff entry(int g, int m, int n) const { return {g, m, n, get(g, m, n)}; }
  bool has(int g, int m, int n) const;
  void put(int g, int m, int n, MRat body);
  std::vector<Triple> stored() const;

  OmegaTable swapped() const;
  // Independent cache with the same stored entries.
  OmegaTable clone() const;

 private:
  struct Impl;
  OmegaTable(std::shared_ptr<Impl> impl, bool swapped) : impl_(std::move(impl)), swapped_(swapped) {}
  std::shared_ptr<Impl> impl_;
  bool swapped_ = false;
};

// Rename canonical variables of an (m,n) body into the (n,m) layout of the swapped view.
MRat transpose_body(const MRat& body, int m, int n);

// Unstable entries fixed by convention.
MRat unstable_body(const Curve& c, int m, int n);

// B(z_a, z_b) / dz_a dz_b
MRat bergman(Sym a, Sym b);

// Rename canonical z1..zk of a body to the given symbols.
MRat place_body(const MRat& body, const std::vector<Sym>& vars);

namespace detail {
// Defined by the engine; computes an entry that is not stored.
MRat compute_entry(const OmegaTable& t, int g, int m, int n);
}  // namespace detail

}  // namespace toprec
