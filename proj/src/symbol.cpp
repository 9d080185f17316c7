#include "toprec/symbol.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace toprec {

namespace {

struct Interner {
  std::shared_mutex mu;
  std::deque<std::string> names;
  std::unordered_map<std::string, Sym> ids;

  Interner() {
    // fixed prefix keeps ids of the argument names stable across runs
    for (int i = 1; i <= 16; ++i) add("z" + std::to_string(i));
  }

  Sym add(const std::string& n) {
    if (names.size() >= 0xFFFF) throw std::length_error("symbol table full");
    Sym id = static_cast<Sym>(names.size());
    names.push_back(n);
    ids.emplace(n, id);
    return id;
  }
};

Interner& table() {
  static Interner t;
  return t;
}

}  // namespace

Sym intern(std::string_view name) {
  auto& t = table();
  std::string key(name);
  {
    std::shared_lock lk(t.mu);
    auto it = t.ids.find(key);
    if (it != t.ids.end()) return it->second;
  }
  std::unique_lock lk(t.mu);
  auto it = t.ids.find(key);
  if (it != t.ids.end()) return it->second;
  return t.add(key);
}

std::optional<Sym> lookup_symbol(std::string_view name) {
  auto& t = table();
  std::shared_lock lk(t.mu);
  auto it = t.ids.find(std::string(name));
  if (it == t.ids.end()) return std::nullopt;
  return it->second;
}

std::string symbol_name(Sym s) {
  auto& t = table();
  std::shared_lock lk(t.mu);
  if (s >= t.names.size()) throw std::out_of_range("unknown symbol id");
  return t.names[s];
}

Sym zvar(int i) { return intern("z" + std::to_string(i)); }

}  // namespace toprec
