#include "toprec/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "toprec/symbol.hpp"

namespace toprec {

namespace {

using NamedMono = std::vector<std::pair<std::string, int>>;

NamedMono named(const Monomial& m) {
  NamedMono out;
  for (int i = 0; i < m.n; ++i) out.emplace_back(symbol_name(m.v[i]), m.e[i]);
  std::sort(out.begin(), out.end());
  return out;
}

// Terms sorted by name-ordered monomials.
std::vector<std::pair<NamedMono, Rational>> named_terms(const MPoly& p) {
  std::vector<std::pair<NamedMono, Rational>> out;
  for (auto& [m, c] : p.terms()) out.emplace_back(named(m), c);
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first < b.first; });
  return out;
}

Json poly_json(const std::vector<std::pair<NamedMono, Rational>>& terms, bool negate) {
  Json arr = Json::array();
  for (auto& [m, c] : terms) {
    Json mono = Json::object();
    for (auto& [name, e] : m) mono[name] = e;
    arr.push_back(Json{{"m", mono}, {"c", to_string(negate ? Rational(-c) : c)}});
  }
  return arr;
}

MPoly poly_from_json(const Json& arr) {
  if (!arr.is_array()) throw FormatError("polynomial must be an array of terms");
  std::vector<MPoly::Term> terms;
  for (auto& t : arr) {
    if (!t.is_object() || !t.contains("m") || !t.contains("c")) throw FormatError("term needs fields m and c");
    Monomial mono;
    for (auto& [name, e] : t.at("m").items()) {
      if (!e.is_number_integer() || e.get<int>() <= 0) throw FormatError("monomial exponents must be positive integers");
      mono = mono * Monomial::of(intern(name), e.get<int>());
    }
    terms.emplace_back(mono, parse_rational(t.at("c").get<std::string>()));
  }
  return MPoly::from_terms(std::move(terms));
}

Rational parse_coeff(const Json& j) {
  if (!j.is_string()) throw FormatError("coefficients must be exact strings \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    throw FormatError("bad rational \"" + j.get<std::string>() + "\"");
  }
}

MRat univariate_from_json(const Json& j, const char* what) {
  if (!j.is_object() || !j.contains("num")) throw FormatError(std::string(what) + " needs a \"num\" coefficient list");
  auto poly = [&](const Json& arr) {
    if (!arr.is_array() || arr.empty()) throw FormatError(std::string(what) + ": coefficient list must be non-empty");
    MRat out;
    MRat z = MRat::var(curve_var());
    MRat zp(1);
    for (auto& c : arr) {
      out += zp * parse_coeff(c);
      zp *= z;
    }
    return out;
  };
  MRat num = poly(j.at("num"));
  MRat den = j.contains("den") ? poly(j.at("den")) : MRat(1);
  if (den.is_zero()) throw FormatError(std::string(what) + ": zero denominator");
  return num / den;
}

Json univariate_to_json(const MRat& f) {
  auto list = [](const MPoly& p) {
    Json arr = Json::array();
    for (auto& c : p.coeffs_in(curve_var())) arr.push_back(to_string(c.constant_term()));
    if (arr.empty()) arr.push_back("0");
    return arr;
  };
  return Json{{"num", list(f.num())}, {"den", list(f.den())}};
}

}  // namespace

Json mrat_to_json(const MRat& f) {
  bool flip = false;
  std::vector<std::pair<Json, int>> den;
  for (auto& [id, e] : f.den_factors()) {
    auto terms = named_terms(factor_info(id).poly);
    bool neg = terms.back().second < 0;
    if (neg && e % 2 == 1) flip = !flip;
    den.emplace_back(poly_json(terms, neg), e);
  }
  std::sort(den.begin(), den.end(), [](auto& a, auto& b) { return a.first.dump() < b.first.dump(); });
  Json jd = Json::array();
  for (auto& [p, e] : den) jd.push_back(Json{{"f", p}, {"e", e}});
  return Json{{"num", poly_json(named_terms(f.num()), flip)}, {"den", jd}};
}

MRat mrat_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) throw FormatError("rational function needs num and den");
  MRat out(poly_from_json(j.at("num")));
  for (auto& d : j.at("den")) {
    if (!d.contains("f") || !d.contains("e") || !d.at("e").is_number_integer() || d.at("e").get<int>() <= 0)
      throw FormatError("denominator factor needs f and a positive exponent e");
    MRat f(poly_from_json(d.at("f")));
    if (f.is_zero()) throw FormatError("zero denominator factor");
    out = out / f.pow(d.at("e").get<int>());
  }
  return out;
}

std::string emit_mrat(const MRat& f) { return mrat_to_json(f).dump(); }

MRat parse_mrat(std::string_view s) {
  Json j;
  try {
    j = Json::parse(s);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  return mrat_from_json(j);
}

Curve curve_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("x") || !j.contains("y")) throw FormatError("curve needs fields x and y");
  std::string name = j.contains("name") ? j.at("name").get<std::string>() : "curve";
  return Curve(name, univariate_from_json(j.at("x"), "x"), univariate_from_json(j.at("y"), "y"));
}

Json curve_to_json(const Curve& c) {
  return Json{{"name", c.name()}, {"x", univariate_to_json(c.x())}, {"y", univariate_to_json(c.y())}};
}

Curve load_curve(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw FormatError("cannot open curve file " + p.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("curve file " + p.string() + ": " + e.what());
  }
  return curve_from_json(j);
}

std::string curve_hash(const Curve& c) {
  Json j{{"x", univariate_to_json(c.x())}, {"y", univariate_to_json(c.y())}};
  return sha256_hex(j.dump());
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

Json convention_flags() {
  return Json{{"omega_0_1", "-y dx"},
              {"omega_0_0_1", "-x dy"},
              {"bergman", "dz1 dz2/(z1-z2)^2"},
              {"layout", "x-block z1..zm then y-block"}};
}

Json envelope_to_json(const Envelope& e) {
  Json body = mrat_to_json(e.body);
  return Json{{"engine_version", e.engine_version},
              {"curve_hash", e.curve_hash},
              {"g", e.g},
              {"m", e.m},
              {"n", e.n},
              {"conventions", e.conventions},
              {"provenance", e.provenance},
              {"seed", std::to_string(e.seed)},
              {"body", body},
              {"body_digest", sha256_hex(body.dump())}};
}

Envelope envelope_from_json(const Json& j) {
  try {
    Envelope e;
    e.engine_version = j.at("engine_version").get<std::string>();
    e.curve_hash = j.at("curve_hash").get<std::string>();
    e.g = j.at("g").get<int>();
    e.m = j.at("m").get<int>();
    e.n = j.at("n").get<int>();
    e.conventions = j.at("conventions");
    e.provenance = j.at("provenance").get<std::string>();
    e.seed = std::stoull(j.at("seed").get<std::string>());
    if (sha256_hex(j.at("body").dump()) != j.at("body_digest").get<std::string>())
      throw FormatError("body digest mismatch");
    e.body = mrat_from_json(j.at("body"));
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw FormatError(std::string("malformed envelope: ") + ex.what());
  } catch (const std::invalid_argument&) {
    throw FormatError("malformed envelope seed");
  }
}

void write_atomic(const std::filesystem::path& p, const std::string& text) {
  namespace fs = std::filesystem;
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::random_device rd;
  fs::path tmp = p;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, p);
}

std::filesystem::path ResultCache::path_for(const std::string& kind, const std::string& hash, int g, int m,
                                            int n) const {
  return dir_ / hash / (kind + "_g" + std::to_string(g) + "_m" + std::to_string(m) + "_n" + std::to_string(n) + ".json");
}

std::optional<Envelope> ResultCache::load(const std::string& kind, const std::string& hash, int g, int m, int n) {
  auto p = path_for(kind, hash, g, m, n);
  std::ifstream in(p);
  if (!in) {
    ++misses_;
    return std::nullopt;
  }
  try {
    Envelope e = envelope_from_json(Json::parse(in));
    if (e.curve_hash != hash || e.engine_version != kEngineVersion || e.conventions != convention_flags() ||
        e.g != g || e.m != m || e.n != n) {
      ++misses_;
      return std::nullopt;
    }
    ++hits_;
    return e;
  } catch (const std::exception&) {
    ++corrupt_;
    ++misses_;
    return std::nullopt;
  }
}

std::filesystem::path ResultCache::store(const std::string& kind, const Envelope& e) {
  auto p = path_for(kind, e.curve_hash, e.g, e.m, e.n);
  write_atomic(p, envelope_to_json(e).dump(2) + "\n");
  return p;
}

std::string pretty_body(const MRat& body, int g, int m, int n) {
  std::ostringstream os;
  os << "omega^(" << g << ")_{" << m << "," << n << "} = (" << body.str() << ")";
  for (int i = 1; i <= m + n; ++i) os << " dz" << i;
  return os.str();
}

}  // namespace toprec
