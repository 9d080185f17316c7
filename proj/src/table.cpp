#include "toprec/table.hpp"

#include <mutex>
#include <shared_mutex>

namespace toprec {

std::string Triple::str() const {
  return "(" + std::to_string(g) + "," + std::to_string(m) + "," + std::to_string(n) + ")";
}

struct OmegaTable::Impl {
  Curve curve;
  std::shared_ptr<Curve> swapped_curve;
  ColumnSource source;
  mutable std::shared_mutex mu;
  std::map<Triple, MRat> entries;
  Impl(Curve c, ColumnSource s) : curve(std::move(c)), source(s) {}
};

OmegaTable::OmegaTable(Curve c, ColumnSource src) : impl_(std::make_shared<Impl>(std::move(c), src)) {}

const Curve& OmegaTable::curve() const {
  if (!swapped_) return impl_->curve;
  std::unique_lock lk(impl_->mu);
  if (!impl_->swapped_curve) impl_->swapped_curve = std::make_shared<Curve>(impl_->curve.swapped());
  return *impl_->swapped_curve;
}

ColumnSource OmegaTable::source() const { return impl_->source; }

MRat bergman(Sym a, Sym b) {
  MRat d = MRat::var(a) - MRat::var(b);
  return (d * d).inverse();
}

MRat place_body(const MRat& body, const std::vector<Sym>& vars) {
  std::vector<std::pair<Sym, Sym>> map;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (zvar(static_cast<int>(i) + 1) != vars[i]) map.emplace_back(zvar(static_cast<int>(i) + 1), vars[i]);
  return map.empty() ? body : body.rename(map);
}

MRat transpose_body(const MRat& body, int m, int n) {
  std::vector<Sym> vars;
  for (int i = 1; i <= m; ++i) vars.push_back(zvar(n + i));
  for (int j = 1; j <= n; ++j) vars.push_back(zvar(j));
  return place_body(body, vars);
}

MRat unstable_body(const Curve& c, int m, int n) {
  Sym z1 = zvar(1), z2 = zvar(2);
  if (m == 1 && n == 0) return -(c.fn_at(Side::Y, z1) * c.dfn_at(Side::X, z1));
  if (m == 0 && n == 1) return -(c.fn_at(Side::X, z1) * c.dfn_at(Side::Y, z1));
  if (m + n == 2) return (m == 1 ? MRat(-1) : MRat(1)) * bergman(z1, z2);
  throw std::invalid_argument("unstable_body: (m,n) is not unstable");
}

const MRat& OmegaTable::get(int g, int m, int n) const {
  if (g < 0 || m < 0 || n < 0 || m + n == 0) throw MissingEntry("invalid index " + Triple{g, m, n}.str());
  int bm = swapped_ ? n : m, bn = swapped_ ? m : n;
  Triple key{g, bm, bn};
  Triple view_key{g, m, n};
  {
    std::shared_lock lk(impl_->mu);
    if (swapped_) {
      // view entries are cached under a negative genus tag to keep one map
      auto it = impl_->entries.find(Triple{-1 - g, m, n});
      if (it != impl_->entries.end()) return it->second;
    } else {
      auto it = impl_->entries.find(key);
      if (it != impl_->entries.end()) return it->second;
    }
  }
  MRat body;
  if (swapped_) {
    OmegaTable base(impl_, false);
    body = transpose_body(base.get(g, bm, bn), bm, bn);
  } else if (!is_stable(g, m, n)) {
    body = unstable_body(impl_->curve, m, n);
  } else {
    if (n == 0 && impl_->source == ColumnSource::Given)
      throw MissingEntry("table entry " + key.str() + " is not available");
    body = detail::compute_entry(*this, g, m, n);
  }
  std::unique_lock lk(impl_->mu);
  Triple store = swapped_ ? Triple{-1 - g, view_key.m, view_key.n} : key;
  auto [it, inserted] = impl_->entries.emplace(store, std::move(body));
  return it->second;
}

bool OmegaTable::has(int g, int m, int n) const {
  std::shared_lock lk(impl_->mu);
  if (swapped_) return impl_->entries.count(Triple{g, n, m}) > 0;
  return impl_->entries.count(Triple{g, m, n}) > 0;
}

void OmegaTable::put(int g, int m, int n, MRat body) {
  if (swapped_) throw std::logic_error("cannot store into a swapped view");
  std::unique_lock lk(impl_->mu);
  // drop cached view entries, they may depend on the replaced value
  for (auto it = impl_->entries.begin(); it != impl_->entries.end();)
    it = it->first.g < 0 ? impl_->entries.erase(it) : std::next(it);
  impl_->entries[Triple{g, m, n}] = std::move(body);
}

std::vector<Triple> OmegaTable::stored() const {
  std::shared_lock lk(impl_->mu);
  std::vector<Triple> out;
  for (auto& [k, v] : impl_->entries)
    if (k.g >= 0) out.push_back(swapped_ ? Triple{k.g, k.n, k.m} : k);
  return out;
}

OmegaTable OmegaTable::swapped() const { return OmegaTable(impl_, !swapped_); }

OmegaTable OmegaTable::clone() const {
  auto impl = std::make_shared<Impl>(impl_->curve, impl_->source);
  {
    std::shared_lock lk(impl_->mu);
    for (auto& [k, v] : impl_->entries)
      if (k.g >= 0) impl->entries.emplace(k, v);
  }
  return OmegaTable(impl, swapped_);
}

}  // namespace toprec
