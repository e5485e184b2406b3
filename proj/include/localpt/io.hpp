#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "localpt/analysis.hpp"

namespace localpt {

using Json = nlohmann::ordered_json;

// Bump when any computed value may change.
inline constexpr const char* kEngineVersion = "localpt-engine-1";

Json to_json(const BigRat& q);
Json to_json(const Poly2& p);
Json to_json(const RatFunc& f);
Json to_json(const Weights& w);
Json to_json(const VarSet& vs);
Json to_json(const TruncSeries& s);
Json to_json(const ShiftedSeries& s);
Json to_json(const BetheRoot& r);
Json to_json(const InvariantSeries& inv);
Json to_json(const PPoly& p);
Json to_json(const RationalFit& f);
Json to_json(const InvariantFit& f);
Json to_json(const Verdict& v);
Json to_json(const ResidualReport& r);

// All throw on malformed input (std::invalid_argument or nlohmann::json::exception).
BigRat bigrat_from_json(const Json& j);
Poly2 poly2_from_json(const Json& j);
RatFunc ratfunc_from_json(const Json& j);
Weights weights_from_json(const Json& j);
VarSetPtr varset_from_json(const Json& j);
TruncSeries series_from_json(const Json& j);
BetheRoot root_from_json(const Json& j);
InvariantSeries invariant_from_json(const Json& j);
RationalFit fit_from_json(const Json& j);

// Pretty-printed, keys in insertion order, trailing newline.
std::string dump(const Json& j);

// Content-addressed store of JSON values keyed by a canonical key string salted with the engine version.
class Cache {
 public:
  explicit Cache(std::filesystem::path dir);
  // BETHE_CACHE_DIR, then the explicit directory, then .bethe-cache.
  static std::filesystem::path resolve_dir(const std::string& explicit_dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const std::string& key) const;
  // Missing entries return nullopt; unreadable or mismatched entries warn on stderr and return nullopt.
  std::optional<Json> load(const std::string& key) const;
  // Writes a temporary file and renames it into place; throws std::runtime_error on IO failure.
  void store(const std::string& key, const Json& value) const;

 private:
  std::filesystem::path dir_;
};

std::string root_cache_key(const Partition& lambda, int order, RootMode mode, const Weights& w);
std::string invariant_cache_key(const Geometry& geom, const std::vector<Insertion>& ins, const Orders& o,
                                const Weights& w, const std::string& route);
// Roots are loaded from or stored into the cache.
RootProvider cached_root_provider(const Cache& cache);

}  // namespace localpt
