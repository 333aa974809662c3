#pragma once

#include <string>

#include <json.hpp>

#include "minstab/explorer.hpp"
#include "minstab/gain.hpp"
#include "minstab/identify.hpp"
#include "minstab/lti.hpp"

namespace minstab {

// JSON layouts are fixed interchange formats:
//   system   {"n": int, "m": int, "A": row-major array, "B": row-major array}
//   dataset  {"n": int, "m": int, "triples": [{"x_plus", "x", "u"}, ...]}
//   estimate {"A_hat": row-major array, "B_hat": row-major array}
//   gain     fields mirroring GainResult
// Loaders validate shape and finiteness and throw std::runtime_error (or a
// JSON parse error) on malformed input.

nlohmann::json system_to_json(const LtiSystem& sys);
LtiSystem system_from_json(const nlohmann::json& j);

nlohmann::json dataset_to_json(const OnlineDataset& dataset);
OnlineDataset dataset_from_json(const nlohmann::json& j);

nlohmann::json estimate_to_json(const Estimate& est);
Estimate estimate_from_json(const nlohmann::json& j);

nlohmann::json gain_to_json(const GainResult& gain);
GainResult gain_from_json(const nlohmann::json& j);

void save_json(const nlohmann::json& j, const std::string& path);
nlohmann::json load_json(const std::string& path);

/// Deterministic lossless decimal form ("%.17g") used for every CSV cell.
std::string format_double(double value);

}  // namespace minstab
