#pragma once

#include <json.hpp>

#include "algebra.hpp"

namespace denmet {

// Element <-> JSON: shape as integer array, blocks as row-major [re, im] pairs.
nlohmann::json element_to_json(const Element& a);
Element element_from_json(const nlohmann::json& j);

// Trace <-> JSON: shape plus real weight array.
nlohmann::json trace_to_json(const Trace& tau);
Trace trace_from_json(const nlohmann::json& j);

}  // namespace denmet
