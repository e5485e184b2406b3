#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "localpt/analysis.hpp"
#include "localpt/io.hpp"
#include "localpt/locoracle.hpp"

namespace localpt {

namespace {

struct RunConfig {
  Geometry geom;
  std::vector<std::string> insertions;
  int p_order = 4;
  int z_order = 4;
  std::string partition;
  int root_order = 4;
  std::string mode = "perbox";
  std::string route = "bethe";
  std::string cache_dir;
  bool no_cache = false;
  bool probe = false;
  uint64_t probe_seed = 1;
  int guards = 1;
  std::string out = "-";
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Runner {
 public:
  Runner(const RunConfig& c, std::ostream& out) : c_(c), out_(out) {
    if (c.geom.d < 0 || c.p_order < 0 || c.z_order < 0 || c.root_order < 0)
      throw UsageError("orders and degree must be nonnegative");
    for (const auto& s : c.insertions) ins_.push_back(parse_insertion(s));
    w_ = c.probe ? Weights::probe(c.probe_seed) : Weights{};
    if (!c.no_cache) cache_.emplace(Cache::resolve_dir(c.cache_dir));
  }

  Orders orders() const { return Orders{c_.p_order, c_.z_order}; }

  void emit(const Json& j) const {
    std::string text = dump(j);
    if (c_.out == "-") {
      out_ << text;
      return;
    }
    std::ofstream f(c_.out);
    if (!f) throw std::runtime_error("cannot open " + c_.out);
    f << text;
    if (!f) throw std::runtime_error("write failed for " + c_.out);
  }

  Json config_json() const {
    Json ins = Json::array();
    for (const auto& s : c_.insertions) ins.push_back(s);
    return Json{{"geometry", {{"g", c_.geom.g}, {"l1", c_.geom.l1}, {"l2", c_.geom.l2}, {"d", c_.geom.d}}},
                {"insertions", ins},
                {"p_order", c_.p_order},
                {"z_order", c_.z_order},
                {"weights", c_.probe ? to_json(w_) : Json("symbolic")}};
  }

  InvariantSeries compute(const std::string& route) const {
    std::string key = invariant_cache_key(c_.geom, ins_, orders(), w_, route);
    if (cache_) {
      if (auto j = cache_->load(key)) {
        try {
          return invariant_from_json(*j);
        } catch (const std::exception& e) {
          std::cerr << "warning: unusable cached invariant (" << e.what() << "), recomputing\n";
        }
      }
    }
    InvariantSeries inv = route == "localization"
                              ? invariant_via_m_sum(c_.geom, ins_, orders(), w_)
                              : invariant(c_.geom, ins_, orders(), w_,
                                          cache_ ? cached_root_provider(*cache_) : default_root_provider());
    if (cache_) cache_->store(key, to_json(inv));
    return inv;
  }

  int bethe() const {
    Partition l = parse_partition(c_.partition);
    RootMode mode = parse_mode(c_.mode);
    BetheRoot root;
    std::string key = root_cache_key(l, c_.root_order, mode, w_);
    bool cached = false;
    if (cache_) {
      if (auto j = cache_->load(key)) {
        try {
          root = root_from_json(*j);
          cached = true;
        } catch (const std::exception&) {
          std::cerr << "warning: unusable cached root, recomputing\n";
        }
      }
    }
    if (!cached) {
      root = solve_bethe_fixed_point(l, c_.root_order, mode, w_);
      if (cache_) cache_->store(key, to_json(root));
    }
    ResidualReport rep = verify_bethe(root);
    emit(Json{{"root", to_json(root)}, {"residual", to_json(rep)}});
    return rep.pass ? 0 : 1;
  }

  int invariant_cmd() const {
    if (c_.route != "bethe" && c_.route != "localization" && c_.route != "both")
      throw UsageError("route must be bethe, localization or both");
    Json j = config_json();
    if (c_.route == "both") {
      InvariantSeries a = compute("bethe"), b = compute("localization");
      bool agree = same_invariant(a, b);
      j["bethe"] = to_json(a);
      j["localization"] = to_json(b);
      j["agree"] = agree;
      emit(j);
      return agree ? 0 : 1;
    }
    j["invariant"] = to_json(compute(c_.route));
    emit(j);
    return 0;
  }

  int rationalize() const {
    InvariantSeries inv = compute("bethe");
    InvariantFit fit = fit_invariant_minimal(inv, c_.guards);
    Json j = config_json();
    j["fit"] = to_json(fit);
    emit(j);
    return fit.complete() ? 0 : 1;
  }

  int verdict(const Verdict& v, Json extra = Json::object()) const {
    Json j = to_json(v);
    for (auto& [k, x] : extra.items()) j[k] = x;
    emit(j);
    return v.pass ? 0 : 1;
  }

  int check(const std::string& what) const {
    if (what == "functional" || what == "poles") {
      InvariantSeries inv = compute("bethe");
      InvariantFit fit = fit_invariant_minimal(inv, c_.guards);
      if (what == "poles") return verdict(check_pole_locations(fit, c_.geom.d), {{"fit", to_json(fit)}});
      InvariantFit neg = fit_invariant_minimal(negate_descendents(inv), c_.guards);
      return verdict(check_functional_equation(fit, neg, c_.geom.d_beta()),
                     {{"d_beta", c_.geom.d_beta()}, {"fit", to_json(fit)}});
    }
    if (what == "residual") {
      BetheRoot root = solve_bethe_fixed_point(parse_partition(c_.partition), c_.root_order, parse_mode(c_.mode), w_);
      ResidualReport rep = verify_bethe(root);
      Verdict v{"residual", rep.pass, rep.message};
      return verdict(v, {{"failing_degree", rep.failing_degree}, {"failing_box", rep.failing_box}});
    }
    if (what == "oracle") {
      InvariantSeries a = compute("bethe"), b = compute("localization");
      Verdict v{"oracle", same_invariant(a, b), ""};
      if (!v.pass) v.witness = "bethe " + a.series.to_string() + " vs localization " + b.series.to_string();
      return verdict(v);
    }
    if (what == "spectrum") {
      SpectrumReport rep = spectrum_check(c_.geom.d, c_.z_order, c_.p_order, w_, Weights::probe(c_.probe_seed));
      Verdict v{"spectrum", rep.pass(), rep.message};
      Json eig = Json::array();
      for (size_t i = 0; i < rep.partitions.size(); ++i)
        eig.push_back(Json{{"partition", rep.partitions[i]}, {"eigenvalue", to_json(rep.eigenvalues[i])}});
      return verdict(v, {{"classical_limit", rep.classical_limit},
                         {"trace_identity", rep.trace_identity},
                         {"k0", rep.k0},
                         {"eigenvalues", eig}});
    }
    throw UsageError("unknown check " + what);
  }

  int connected() const {
    Orders o = orders();
    VarSetPtr vs = bracket_varset(ins_, o);
    BracketTable disc = disconnected_table(c_.geom, ins_, o, w_);
    BracketTable conn = connected_invariants(disc, ins_, c_.geom.d, vs);
    Json rows = Json::array();
    for (const auto& [k, v] : conn) {
      if (k.second == 0) continue;
      Json ins = Json::array();
      for (size_t i = 0; i < ins_.size(); ++i)
        if (k.first >> i & 1) ins.push_back(insertion_string(ins_[i]));
      rows.push_back(Json{{"insertions", ins}, {"degree", k.second}, {"connected", to_json(v)}});
    }
    Json j = config_json();
    j["brackets"] = rows;
    emit(j);
    return 0;
  }

 private:
  const RunConfig& c_;
  std::ostream& out_;
  std::vector<Insertion> ins_;
  Weights w_;
  std::optional<Cache> cache_;
};

void add_geometry(CLI::App* app, RunConfig& c) {
  app->add_option("--genus", c.geom.g, "genus of the base curve")->check(CLI::NonNegativeNumber);
  app->add_option("--l1", c.geom.l1, "degree of the first line bundle");
  app->add_option("--l2", c.geom.l2, "degree of the second line bundle");
  app->add_option("-d,--degree", c.geom.d, "curve degree")->check(CLI::NonNegativeNumber);
  app->add_option("-i,--insert", c.insertions, "insertion such as pt:y, 1:x, a1:z, b1:w");
  app->add_option("--p-order", c.p_order, "truncation order in p")->check(CLI::NonNegativeNumber);
  app->add_option("--z-order", c.z_order, "truncation order in each descendent variable")
      ->check(CLI::NonNegativeNumber);
}

void add_root(CLI::App* app, RunConfig& c) {
  app->add_option("--partition", c.partition, "partition such as 2,1")->required();
  app->add_option("--order", c.root_order, "total truncation order")->check(CLI::NonNegativeNumber);
  app->add_option("--mode", c.mode, "perbox or single")->check(CLI::IsMember({"perbox", "single"}));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Descendent invariants of local curves via Bethe roots"};
  app.require_subcommand(1);
  app.add_option("--cache-dir", c.cache_dir, "cache directory (BETHE_CACHE_DIR takes precedence)");
  app.add_flag("--no-cache", c.no_cache, "disable the on-disk cache");
  app.add_flag("--probe", c.probe, "bind t1, t2 to a fixed random rational point");
  app.add_option("--probe-seed", c.probe_seed, "seed of the probe point");
  app.add_option("-o,--out", c.out, "output file, - for standard output");

  auto* bethe = app.add_subcommand("bethe", "solve and verify a Bethe root");
  add_root(bethe, c);

  auto* inv = app.add_subcommand("invariant", "compute a descendent invariant");
  add_geometry(inv, c);
  inv->add_option("--route", c.route, "bethe, localization or both");

  auto* rat = app.add_subcommand("rationalize", "fit the invariant as a rational function of p");
  add_geometry(rat, c);
  rat->add_option("--guards", c.guards, "coefficients checked beyond the fitted degrees")
      ->check(CLI::NonNegativeNumber);

  auto* chk = app.add_subcommand("check", "structural checks");
  chk->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App*>> checks;
  for (const char* name : {"functional", "poles", "residual", "oracle", "spectrum"}) {
    auto* s = chk->add_subcommand(name);
    if (std::string(name) == "residual")
      add_root(s, c);
    else
      add_geometry(s, c);
    s->add_option("--guards", c.guards, "coefficients checked beyond the fitted degrees");
    checks.push_back({name, s});
  }

  auto* conn = app.add_subcommand("connected", "connected invariants by inversion over set partitions");
  add_geometry(conn, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    Runner r(c, out);
    if (*bethe) return r.bethe();
    if (*inv) return r.invariant_cmd();
    if (*rat) return r.rationalize();
    if (*conn) return r.connected();
    for (const auto& [name, s] : checks)
      if (*s) return r.check(name);
    throw UsageError("no subcommand");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace localpt
