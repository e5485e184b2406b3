#include "localpt/io.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace localpt {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("malformed JSON: " + what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) bad(std::string("missing field ") + name);
  return j.at(name);
}

Json exps_json(const Exps& e, int n) {
  Json a = Json::array();
  for (int i = 0; i < n; ++i) a.push_back(int(e[i]));
  return a;
}

std::string insertions_key(const std::vector<Insertion>& ins) {
  std::string s;
  for (const auto& i : ins) s += insertion_string(i) + ";";
  return s;
}

std::string weights_key(const Weights& w) { return w.t1.to_string() + "|" + w.t2.to_string(); }

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

Json to_json(const BigRat& q) { return to_string(q); }

Json to_json(const Poly2& p) {
  Json a = Json::array();
  for (const auto& t : p.terms()) a.push_back(Json::array({t.a, t.b, to_string(t.c)}));
  return a;
}

Json to_json(const RatFunc& f) { return Json{{"num", to_json(f.num())}, {"den", to_json(f.den())}}; }

Json to_json(const Weights& w) { return Json{{"t1", to_json(w.t1)}, {"t2", to_json(w.t2)}}; }

Json to_json(const VarSet& vs) {
  Json vars = Json::array();
  for (const auto& v : vs.vars) vars.push_back(Json{{"name", v.name}, {"order", v.order}, {"box", v.box}});
  return Json{{"vars", vars}, {"total_box_order", vs.total_box_order}};
}

Json to_json(const TruncSeries& s) {
  Json terms = Json::array();
  int n = s.varset()->size();
  for (const auto& [e, c] : s.terms()) terms.push_back(Json::array({exps_json(e, n), to_json(c)}));
  return Json{{"varset", to_json(*s.varset())}, {"terms", terms}};
}

Json to_json(const ShiftedSeries& s) { return Json{{"shift", s.shift}, {"series", to_json(s.series)}}; }

Json to_json(const BetheRoot& r) {
  Json y = Json::array(), w = Json::array();
  for (const auto& s : r.y) y.push_back(to_json(s));
  for (const auto& s : r.w) w.push_back(to_json(s));
  return Json{{"partition", r.lambda}, {"mode", mode_name(r.mode)}, {"order", r.order},
              {"weights", to_json(r.weights)}, {"y", y}, {"w", w}};
}

Json to_json(const InvariantSeries& inv) {
  Json ins = Json::array();
  for (const auto& i : inv.insertions) ins.push_back(insertion_string(i));
  return Json{{"geometry", {{"g", inv.geom.g}, {"l1", inv.geom.l1}, {"l2", inv.geom.l2}, {"d", inv.geom.d}}},
              {"insertions", ins},
              {"sign", inv.sign},
              {"vanishes", inv.vanishes},
              {"p_shift", inv.p_shift},
              {"series", to_json(inv.series)}};
}

Json to_json(const PPoly& p) {
  Json a = Json::array();
  for (const auto& c : trim(p)) a.push_back(to_json(c));
  return a;
}

Json to_json(const RationalFit& f) {
  return Json{{"p_shift", f.p_shift}, {"num", to_json(f.num)}, {"den", to_json(f.den)}};
}

Json to_json(const InvariantFit& f) {
  Json fits = Json::array();
  for (const auto& [k, r] : f.fits) fits.push_back(Json{{"z_exponents", k}, {"fit", to_json(r)}});
  return Json{{"complete", f.complete()}, {"fits", fits}, {"unfitted", f.unfitted}};
}

Json to_json(const Verdict& v) {
  return Json{{"check", v.check}, {"status", v.pass ? "PASS" : "FAIL"}, {"witness", v.witness}};
}

Json to_json(const ResidualReport& r) {
  return Json{{"status", r.pass ? "PASS" : "FAIL"},
              {"constants_ok", r.constants_ok},
              {"failing_degree", r.failing_degree},
              {"failing_box", r.failing_box},
              {"message", r.message}};
}

BigRat bigrat_from_json(const Json& j) {
  if (!j.is_string()) bad("rational must be a string");
  try {
    return parse_bigrat(j.get<std::string>());
  } catch (const std::exception&) {
    bad("rational " + j.get<std::string>());
  }
}

Poly2 poly2_from_json(const Json& j) {
  if (!j.is_array()) bad("polynomial must be an array");
  std::vector<Poly2::Term> terms;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_unsigned() || !t[1].is_number_unsigned())
      bad("polynomial term");
    terms.push_back(Poly2::Term{t[0].get<uint32_t>(), t[1].get<uint32_t>(), bigrat_from_json(t[2])});
  }
  return Poly2::from_terms(std::move(terms));
}

RatFunc ratfunc_from_json(const Json& j) {
  Poly2 den = poly2_from_json(field(j, "den"));
  if (den.is_zero()) bad("zero denominator");
  return RatFunc(poly2_from_json(field(j, "num")), den);
}

Weights weights_from_json(const Json& j) {
  Weights w;
  w.t1 = ratfunc_from_json(field(j, "t1"));
  w.t2 = ratfunc_from_json(field(j, "t2"));
  return w;
}

VarSetPtr varset_from_json(const Json& j) {
  auto vs = std::make_shared<VarSet>();
  const Json& vars = field(j, "vars");
  if (!vars.is_array() || vars.size() > size_t(kMaxVars)) bad("variables");
  for (const auto& v : vars) {
    VarSet::Var x;
    x.name = field(v, "name").get<std::string>();
    x.order = field(v, "order").get<int>();
    x.box = field(v, "box").get<bool>();
    if (x.order < 0 || x.order > 255) bad("variable order");
    vs->vars.push_back(x);
  }
  vs->total_box_order = field(j, "total_box_order").get<int>();
  return vs;
}

TruncSeries series_from_json(const Json& j) {
  VarSetPtr vs = varset_from_json(field(j, "varset"));
  std::vector<TruncSeries::Term> terms;
  for (const auto& t : field(j, "terms")) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_array() || int(t[0].size()) != vs->size()) bad("series term");
    Exps e{};
    for (int i = 0; i < vs->size(); ++i) {
      int x = t[0][i].get<int>();
      if (x < 0 || x > 255) bad("exponent");
      e[i] = uint8_t(x);
    }
    if (!vs->admits(e)) bad("exponent beyond the truncation order");
    terms.push_back({e, ratfunc_from_json(t[1])});
  }
  return TruncSeries::from_terms(vs, std::move(terms));
}

BetheRoot root_from_json(const Json& j) {
  BetheRoot r;
  r.lambda = field(j, "partition").get<Partition>();
  if (!is_partition(r.lambda)) bad("partition");
  r.mode = parse_mode(field(j, "mode").get<std::string>());
  r.order = field(j, "order").get<int>();
  r.weights = weights_from_json(field(j, "weights"));
  for (const auto& s : field(j, "y")) r.y.push_back(series_from_json(s));
  for (const auto& s : field(j, "w")) r.w.push_back(series_from_json(s));
  if (r.y.size() != size_t(size_of(r.lambda)) || r.w.size() != r.y.size()) bad("root size");
  r.vars = r.y.front().varset();
  for (auto& s : r.y) s = TruncSeries::from_terms(r.vars, s.terms());
  for (auto& s : r.w) s = TruncSeries::from_terms(r.vars, s.terms());
  return r;
}

InvariantSeries invariant_from_json(const Json& j) {
  InvariantSeries inv;
  const Json& g = field(j, "geometry");
  inv.geom = Geometry{field(g, "g").get<int>(), field(g, "l1").get<int>(), field(g, "l2").get<int>(),
                      field(g, "d").get<int>()};
  for (const auto& s : field(j, "insertions")) inv.insertions.push_back(parse_insertion(s.get<std::string>()));
  inv.sign = field(j, "sign").get<int>();
  inv.vanishes = field(j, "vanishes").get<bool>();
  inv.p_shift = field(j, "p_shift").get<int>();
  inv.series = series_from_json(field(j, "series"));
  return inv;
}

RationalFit fit_from_json(const Json& j) {
  RationalFit f;
  f.p_shift = field(j, "p_shift").get<int>();
  for (const auto& c : field(j, "num")) f.num.push_back(ratfunc_from_json(c));
  for (const auto& c : field(j, "den")) f.den.push_back(ratfunc_from_json(c));
  return f;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Cache::Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path Cache::resolve_dir(const std::string& explicit_dir) {
  if (const char* env = std::getenv("BETHE_CACHE_DIR"); env && *env) return env;
  if (!explicit_dir.empty()) return explicit_dir;
  return ".bethe-cache";
}

std::filesystem::path Cache::path_for(const std::string& key) const {
  std::ostringstream os;
  os << std::hex << fnv1a(std::string(kEngineVersion) + "\n" + key);
  return dir_ / (os.str() + ".json");
}

std::optional<Json> Cache::load(const std::string& key) const {
  auto path = path_for(key);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  std::ifstream in(path);
  if (!in) {
    std::cerr << "warning: cannot read cache entry " << path << "\n";
    return std::nullopt;
  }
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("version") || !j.contains("key") || !j.contains("value")) {
    std::cerr << "warning: corrupted cache entry " << path << ", recomputing\n";
    return std::nullopt;
  }
  if (j["version"] != kEngineVersion || j["key"] != key) return std::nullopt;
  return j["value"];
}

void Cache::store(const std::string& key, const Json& value) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw std::runtime_error("cannot create cache directory " + dir_.string() + ": " + ec.message());
  auto path = path_for(key);
  std::random_device rd;
  auto tmp = path;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << Json{{"version", kEngineVersion}, {"key", key}, {"value", value}}.dump();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move cache entry into place: " + ec.message());
  }
}

std::string root_cache_key(const Partition& lambda, int order, RootMode mode, const Weights& w) {
  return "root|" + partition_string(lambda) + "|" + std::to_string(order) + "|" + mode_name(mode) + "|" +
         weights_key(w);
}

std::string invariant_cache_key(const Geometry& geom, const std::vector<Insertion>& ins, const Orders& o,
                                const Weights& w, const std::string& route) {
  return "invariant|" + route + "|" + std::to_string(geom.g) + "," + std::to_string(geom.l1) + "," +
         std::to_string(geom.l2) + "," + std::to_string(geom.d) + "|" + insertions_key(ins) + "|" +
         std::to_string(o.p) + "," + std::to_string(o.z) + "|" + weights_key(w);
}

RootProvider cached_root_provider(const Cache& cache) {
  return [cache](const Partition& l, int order, const Weights& w) {
    std::string key = root_cache_key(l, order, RootMode::PerBox, w);
    if (auto j = cache.load(key)) {
      try {
        return root_from_json(*j);
      } catch (const std::exception& e) {
        std::cerr << "warning: unusable cache entry for " << partition_string(l) << " (" << e.what()
                  << "), recomputing\n";
      }
    }
    BetheRoot r = solve_bethe_fixed_point(l, order, RootMode::PerBox, w);
    cache.store(key, to_json(r));
    return r;
  };
}

}  // namespace localpt
