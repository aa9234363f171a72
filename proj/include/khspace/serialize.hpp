#pragma once

#include <string>

#include "json.hpp"
#include "khspace/field.hpp"
#include "khspace/weights.hpp"

namespace kh {

using json = nlohmann::json;

/// Weight expression-tree schema:
///   {"op":"jbpow","s":2.0} {"op":"const","c":5.0}
///   {"op":"add","args":[A,B]} {"op":"mul","args":[A,B]}
///   {"op":"sup","args":[A,B]} {"op":"inf","args":[A,B]}
///   {"op":"pow","base":A,"t":0.5} {"op":"reflect","arg":A}
json weight_to_json(const Weight& w);
Weight weight_from_json(const json& j, int dim);

/// Flat binary container: magic "KHSF", version, n, L, M, domain tag, then
/// little-endian complex64 (float32 re/im) samples.
void save_field(const Field& u, const std::string& path);
Field load_field(const std::string& path);

/// JSON form for small grids in test fixtures.
json field_to_json(const Field& u);
Field field_from_json(const json& j);

}  // namespace kh
