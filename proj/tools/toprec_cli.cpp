// Command-line front end: tr, swap, mixed, closed-yz, psi, verify.
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "toprec/classical.hpp"
#include "toprec/io.hpp"
#include "toprec/special.hpp"
#include "toprec/swap.hpp"
#include "toprec/verify.hpp"

using namespace toprec;

namespace {

enum Exit { kOk = 0, kValidation = 1, kVerification = 2, kInternal = 3 };

class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string curve_path;
  int chi = 2;
  int g = 0, m = 0, n = 0;
  std::string method;
  std::string cache_dir;
  std::string format = "pretty";
  std::uint64_t seed = kDefaultSeed;
};

const char* kProvTr = "residue recursion at the zeros of dx";
const char* kProvSwap = "x-y swap graph sum over the n=0 column";
const char* kProvSimple = "iterated simple x->y step (d/dx form)";
const char* kProvStandard = "standard x->y step (log chart, d/dX form)";
const char* kProvGraph = "mixed graph sum over the n=0 column";
const char* kProvClosed = "closed y=z formula over simple graphs";

class Runner {
 public:
  Runner(const Config& cfg, Curve c) : cfg_(cfg), curve_(std::move(c)), hash_(curve_hash(curve_)), table_(curve_) {
    if (!cfg.cache_dir.empty()) cache_.emplace(cfg.cache_dir);
  }

  OmegaTable& table() { return table_; }
  const Curve& curve() const { return curve_; }

  // Cached n = 0 column entries are loaded into the table before any computation.
  void preload_column(int chi_max) {
    if (!cache_) return;
    for (int g = 0; 2 * g - 1 <= chi_max; ++g)
      for (int m = 1; 2 * g - 2 + m <= chi_max; ++m) {
        if (!is_stable(g, m, 0)) continue;
        if (auto e = cache_->load("tr", hash_, g, m, 0)) table_.put(g, m, 0, e->body);
      }
  }

  Envelope make(int g, int m, int n, MRat body, const std::string& prov) const {
    Envelope e;
    e.curve_hash = hash_;
    e.g = g;
    e.m = m;
    e.n = n;
    e.body = std::move(body);
    e.provenance = prov;
    e.seed = cfg_.seed;
    return e;
  }

  // Cached result of `kind` or compute and store it.
  Envelope obtain(const std::string& kind, int g, int m, int n, const std::string& prov,
                  const std::function<MRat()>& compute) {
    if (cache_)
      if (auto e = cache_->load(kind, hash_, g, m, n)) return *e;
    ++computed_;
    Envelope e = make(g, m, n, compute(), prov);
    if (cache_) cache_->store(kind, e);
    return e;
  }

  void emit(const Envelope& e) {
    if (cfg_.format == "json")
      out_.push_back(envelope_to_json(e));
    else
      std::cout << pretty_body(e.body, e.g, e.m, e.n) << "\n  [" << e.provenance << "]\n";
  }
  void emit_json(Json j) {
    if (cfg_.format == "json")
      out_.push_back(std::move(j));
  }
  void finish() {
    if (cfg_.format == "json") std::cout << (out_.size() == 1 ? out_[0] : out_).dump(2) << "\n";
    if (cache_)
      std::cerr << "cache: " << cache_->hits() << " hits, " << cache_->corrupt() << " corrupt, " << computed_
                << " computed\n";
  }

 private:
  const Config& cfg_;
  Curve curve_;
  std::string hash_;
  OmegaTable table_;
  std::optional<ResultCache> cache_;
  Json out_ = Json::array();
  int computed_ = 0;
};

Curve airy_curve() {
  MRat z = MRat::var(curve_var());
  return Curve("airy", z * z * Rational(1, 2), z);
}

Curve curve_for(const Config& cfg) {
  if (cfg.curve_path.empty()) throw FormatError("--curve is required");
  return load_curve(cfg.curve_path);
}

void require_stable(int g, int m, int n) {
  if (g < 0 || m < 0 || n < 0) throw std::invalid_argument("indices must be non-negative");
  if (!is_stable(g, m, n)) throw std::invalid_argument("(g,m,n) must satisfy 2g-2+m+n > 0");
}

int cmd_tr(const Config& cfg) {
  if (cfg.chi < 1) throw std::invalid_argument("--chi must be at least 1");
  Runner r(cfg, curve_for(cfg));
  r.preload_column(cfg.chi);
  for (int chi = 1; chi <= cfg.chi; ++chi)
    for (int g = 0; 2 * g - 1 <= chi; ++g) {
      int m = chi + 2 - 2 * g;
      if (m < 1) continue;
      r.emit(r.obtain("tr", g, m, 0, kProvTr, [&] { return r.table().get(g, m, 0); }));
    }
  r.finish();
  return kOk;
}

int cmd_swap(const Config& cfg) {
  require_stable(cfg.g, 0, cfg.n);
  Runner r(cfg, curve_for(cfg));
  if (!r.curve().dual_side_valid()) throw CurveValidationError("the y side of the curve is not admissible");
  r.preload_column(2 * cfg.g - 2 + cfg.n);
  std::string method = cfg.method.empty() ? "graph" : cfg.method;
  std::optional<Envelope> a, b;
  if (method == "graph" || method == "both")
    a = r.obtain("swap-graph", cfg.g, 0, cfg.n, kProvSwap,
                 [&] { return graph_sum_swap(r.table(), cfg.g, cfg.n).body; });
  if (method == "simple" || method == "both")
    b = r.obtain("swap-simple", cfg.g, 0, cfg.n, kProvSimple, [&] { return r.table().get(cfg.g, 0, cfg.n); });
  if (method == "standard")
    b = r.obtain("swap-standard", cfg.g, 0, cfg.n, kProvStandard,
                 [&] { return step_standard(r.table(), Direction::XtoY, cfg.g, 0, cfg.n - 1).body; });
  if (!a && !b) throw std::invalid_argument("swap: --method must be graph, simple, standard or both");
  if (a) r.emit(*a);
  if (b) r.emit(*b);
  if (a && b) {
    bool eq = a->body == b->body;
    r.emit_json(Json{{"attestation", "graph sum equals iterated steps"}, {"equal", eq}});
    if (cfg.format != "json") std::cout << "attestation: graph sum " << (eq ? "==" : "!=") << " iterated steps\n";
    r.finish();
    return eq ? kOk : kVerification;
  }
  r.finish();
  return kOk;
}

int cmd_mixed(const Config& cfg) {
  require_stable(cfg.g, cfg.m, cfg.n);
  if (cfg.n < 1) throw std::invalid_argument("mixed: n must be at least 1 (use tr for n = 0)");
  Runner r(cfg, curve_for(cfg));
  if (!r.curve().dual_side_valid()) throw CurveValidationError("the y side of the curve is not admissible");
  r.preload_column(2 * cfg.g - 2 + cfg.m + cfg.n);
  const int g = cfg.g, m = cfg.m, n = cfg.n;
  std::string method = cfg.method.empty() ? "simple" : cfg.method;
  std::vector<Envelope> res;
  auto simple = [&] {
    return r.obtain("mixed-simple", g, m, n, kProvSimple,
                    [&] { return step_simple(r.table(), Direction::XtoY, g, m, n - 1).body; });
  };
  auto standard = [&] {
    return r.obtain("mixed-standard", g, m, n, kProvStandard,
                    [&] { return step_standard(r.table(), Direction::XtoY, g, m, n - 1).body; });
  };
  auto graph = [&] {
    return r.obtain("mixed-graph", g, m, n, kProvGraph, [&] { return graph_sum_mixed(r.table(), g, m, n).body; });
  };
  if (method == "simple") res = {simple()};
  else if (method == "standard") res = {standard()};
  else if (method == "both") res = {simple(), standard()};
  else if (method == "graph") res = {graph()};
  else throw std::invalid_argument("mixed: --method must be simple, standard, both or graph");
  for (auto& e : res) r.emit(e);
  if (res.size() == 2) {
    bool eq = res[0].body == res[1].body;
    r.emit_json(Json{{"attestation", "simple step equals standard step"}, {"equal", eq}});
    if (cfg.format != "json") std::cout << "attestation: simple " << (eq ? "==" : "!=") << " standard\n";
    r.finish();
    return eq ? kOk : kVerification;
  }
  r.finish();
  return kOk;
}

int cmd_closed_yz(const Config& cfg) {
  require_stable(cfg.g, cfg.m, 0);
  Curve c = cfg.curve_path.empty() ? airy_curve() : curve_for(cfg);
  if (c.y() != MRat::var(curve_var())) throw CurveValidationError("closed-yz requires y = z");
  Runner r(cfg, c);
  r.emit(r.obtain("closed-yz", cfg.g, cfg.m, 0, kProvClosed,
                  [&] { return yz_closed_formula(c.x(), cfg.g, cfg.m).body; }));
  r.finish();
  return kOk;
}

int cmd_psi(const Config& cfg) {
  const int g = cfg.g, m = cfg.m < 1 ? 1 : cfg.m;
  require_stable(g, m, 0);
  Curve c = airy_curve();
  OmegaTable t(c);
  PsiTable a = psi_extract(t.get(g, m, 0), g, m);
  PsiTable b = psi_extract(yz_closed_formula(c.x(), g, m).body, g, m);
  if (a.entries != b.entries) throw VerificationFailure("psi: residue recursion and closed formula disagree");
  Json j = Json::parse(a.to_json());
  if (cfg.format == "json") {
    j["provenance"] = std::string(kProvTr) + "; cross-checked with " + kProvClosed;
    std::cout << j.dump(2) << "\n";
  } else {
    for (auto& [k, v] : a.entries) {
      std::cout << "<";
      for (std::size_t i = 0; i < k.size(); ++i) std::cout << (i ? " " : "") << "tau_" << k[i];
      std::cout << ">_" << g << " = " << to_string(v) << "\n";
    }
  }
  return kOk;
}

int cmd_verify(const Config& cfg) {
  Curve c = curve_for(cfg);
  OmegaTable t(c);
  VerifyOptions opt;
  opt.chi_max = cfg.chi;
  opt.seed = cfg.seed;
  auto recs = run_verify_suite(t, opt);
  bool all = true;
  Json checks = Json::array();
  for (auto& r : recs) {
    all = all && r.ok;
    checks.push_back(Json{{"name", r.name}, {"ok", r.ok}, {"detail", r.detail}});
  }
  if (cfg.format == "json") {
    std::cout << Json{{"curve_hash", curve_hash(c)},
                      {"seed", std::to_string(cfg.seed)},
                      {"chi", cfg.chi},
                      {"all_pass", all},
                      {"checks", checks}}
                     .dump(2)
              << "\n";
  } else {
    for (auto& r : recs)
      std::cout << (r.ok ? "PASS " : "FAIL ") << r.name << (r.ok ? "" : ": " + r.detail) << "\n";
    std::cout << (all ? "all checks passed" : "some checks failed") << "\n";
  }
  return all ? kOk : kVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact topological recursion and x-y swap engine"};
  app.require_subcommand(1);
  Config cfg;
  auto common = [&](CLI::App* s, bool curve) {
    auto* o = s->add_option("--curve", cfg.curve_path, "curve JSON file");
    if (curve) o->required();
    s->add_option("--cache", cfg.cache_dir, "result cache directory");
    s->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"pretty", "json"}));
    s->add_option("--seed", cfg.seed, "probe seed");
  };
  auto gmn = [&](CLI::App* s, bool m, bool n) {
    s->add_option("--g", cfg.g, "genus")->required();
    if (m) s->add_option("--m", cfg.m, "number of x-type arguments")->required();
    if (n) s->add_option("--n", cfg.n, "number of y-type arguments")->required();
  };
  auto* tr = app.add_subcommand("tr", "n = 0 column by the residue recursion");
  common(tr, true);
  tr->add_option("--chi", cfg.chi, "largest 2g-2+m")->required();
  auto* sw = app.add_subcommand("swap", "omega^(g)_{0,n} from the n = 0 column");
  common(sw, true);
  gmn(sw, false, true);
  sw->add_option("--method", cfg.method, "graph, simple, standard or both");
  auto* mx = app.add_subcommand("mixed", "omega^(g)_{m,n} with n >= 1");
  common(mx, true);
  gmn(mx, true, true);
  mx->add_option("--method", cfg.method, "simple, standard, both or graph");
  auto* cy = app.add_subcommand("closed-yz", "omega^(g)_{m,0} of (x, y = z) by the closed formula");
  common(cy, false);
  gmn(cy, true, false);
  auto* ps = app.add_subcommand("psi", "intersection numbers from the Airy curve");
  common(ps, false);
  ps->add_option("--g", cfg.g, "genus")->required();
  ps->add_option("--m", cfg.m, "number of points (default 1)");
  auto* vf = app.add_subcommand("verify", "run the invariant suites");
  common(vf, true);
  vf->add_option("--chi", cfg.chi, "largest 2g-2+m+n (default 2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    if (*tr) return cmd_tr(cfg);
    if (*sw) return cmd_swap(cfg);
    if (*mx) return cmd_mixed(cfg);
    if (*cy) return cmd_closed_yz(cfg);
    if (*ps) return cmd_psi(cfg);
    if (*vf) return cmd_verify(cfg);
  } catch (const CurveValidationError& e) {
    std::cerr << "curve validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const FormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return kValidation;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kVerification;
  } catch (const std::exception& e) {
    std::cerr << "internal invariant breach: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
