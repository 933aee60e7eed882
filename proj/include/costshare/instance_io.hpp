#pragma once

// JSON instance files: {"format_version", "kind", "body"}.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "costshare/facility_location.hpp"
#include "costshare/rent_or_buy.hpp"
#include "costshare/set_cover.hpp"
#include "costshare/steiner.hpp"

namespace costshare {

using Json = nlohmann::json;

inline constexpr const char* kFormatVersion = "1";

struct LowerBoundSpec {
  std::size_t k = 4;
  double beta = 2.0;
  std::optional<std::size_t> m;

  friend bool operator==(const LowerBoundSpec&, const LowerBoundSpec&) = default;
};

using InstanceBody = std::variant<FacilityLocationInstance, SteinerInstance, RentOrBuyInstance,
                                  SetCoverInstance, LowerBoundSpec>;

struct InstanceFile {
  std::string format_version = kFormatVersion;
  InstanceBody body;

  // "facility-location", "steiner", "ssrob", "set-cover" or "lower-bound-spec".
  std::string kind() const;
  std::size_t num_players() const;
};

// Throws InvalidInput whose path() names the offending field, or
// InfeasibleError for an uncoverable set-cover element.
InstanceFile parse_instance(const Json& document);
InstanceFile load_instance(const std::string& path);

Json to_json(const InstanceFile& file);
void save_instance(const InstanceFile& file, const std::string& path);

// FNV-1a over the canonical serialization, as 16 hex digits.
std::string instance_digest(const InstanceFile& file);

struct Diagnostic {
  std::string path;
  std::string message;
};

// Empty when the document is a valid instance.
std::vector<Diagnostic> validate_instance(const Json& document);

Json read_json_file(const std::string& path);

}  // namespace costshare
