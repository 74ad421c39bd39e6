// JSON documents for maps, map pairs, abstract economies and information
// economies, and machine-readable records for reports and certificates.
//
// Intervals are written as strings such as "(0, 1]" or "[1/2, 2]"; numbers in
// them may be decimals or ratios of integers.  Numbers are written in the
// shortest form that reads back to the same double.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "setval/checks.hpp"
#include "setval/economy.hpp"
#include "setval/fixedpoint.hpp"
#include "setval/maps.hpp"
#include "setval/radner.hpp"

namespace setval::io {

using json = nlohmann::ordered_json;

/// Malformed input.  `where` is a JSON pointer into the document, or a file
/// position for syntax errors.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

std::string format_interval(const FlaggedInterval& iv);
FlaggedInterval parse_interval(const std::string& text, const std::string& where = "");

json to_json(const Box& b);
json to_json(const BoxSet& s);
json to_json(const AffineForm& f);
json to_json(const AffineBox& v);
json to_json(const PiecewiseMap& t);

Box box_from_json(const json& j, const std::string& where = "");
/// Accepts a list of boxes or {"dim": n, "boxes": [...]}; `dim` is required
/// for the empty set.
BoxSet boxset_from_json(const json& j, const std::string& where = "");
AffineForm form_from_json(const json& j, std::size_t xdim, const std::string& where = "");
AffineBox affine_box_from_json(const json& j, std::size_t xdim, const std::string& where = "");
PiecewiseMap map_from_json(const json& j, const std::string& where = "");

/// A single map with an optional target set D and, for the selection check,
/// an optional region K, candidate selection and self offset.
struct MapDocument {
  PiecewiseMap map;
  std::optional<BoxSet> target;
  std::optional<BoxSet> region;
  std::optional<PiecewiseMap> candidate;
  std::size_t self_offset = 0;
};

struct PairDocument {
  PiecewiseMap t1;
  PiecewiseMap t2;
  BoxSet target;
};

struct InfoEconomyDocument {
  InfoEconomy economy;
  std::optional<double> price_step;
};

/// Indented JSON with arrays of scalars kept on one line.
std::string pretty(const json& j);

/// Reads a file and parses it as JSON; syntax errors carry the byte offset.
json read_document(const std::string& path);
/// The "type" member: "map", "pair", "economy" or "info-economy".
std::string document_type(const json& doc);

MapDocument map_document_from_json(const json& doc);
PairDocument pair_from_json(const json& doc);
AbstractEconomy economy_from_json(const json& doc);
InfoEconomyDocument info_economy_from_json(const json& doc);

json map_document(const PiecewiseMap& t, const std::optional<BoxSet>& target = std::nullopt);
json pair_document(const PiecewiseMap& t1, const PiecewiseMap& t2, const BoxSet& target);
json economy_document(const AbstractEconomy& e);
json info_economy_document(const InfoEconomy& e, std::optional<double> price_step = std::nullopt);

json to_json(const CheckReport& r);
json to_json(const EquilibriumCertificate& c);
json to_json(const RadnerCertificate& c);
json to_json(const MarketClearing& m);
json to_json(const ChainResult& r);

}  // namespace setval::io
