#pragma once

// JSON file formats.
//
//   matrix:       {"dim": d, "re": [[...], ...], "im": [[...], ...]}   (row-major)
//   distribution: {"probs": [...]}
//   povm:         {"dim": d, "elements": [matrix, ...]}
//   channel:      {"kind": "kraus", "dim": d, "operators": [matrix, ...]}
//                 {"kind": "env", "dim_a": d, "dim_e": N, "unitary": matrix, "env_state": matrix}
//                 {"kind": "named", "name": "amplitude-damping", "gamma": g}
//                 {"kind": "named", "name": "depolarizing", "p": p}
//                 {"kind": "named", "name": "phase-damping", "lambda": l}
//
// Numbers are written with 17 significant digits so that every double
// survives a write/read cycle unchanged.

#include <string>

#include <json.hpp>

#include "pfid/channels.hpp"
#include "pfid/measurement.hpp"
#include "pfid/states.hpp"

namespace pfid {

using Json = nlohmann::ordered_json;

std::string format_number(double x);

/// Serialises with format_number for every floating-point value. indent < 0
/// gives a single line.
std::string dump_json(const Json& j, int indent = -1);

Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json distribution_to_json(const ProbabilityDistribution& p);
ProbabilityDistribution distribution_from_json(const Json& j);

Json povm_to_json(const Povm& povm);
Povm povm_from_json(const Json& j);

Json channel_to_json(const Channel& ch);
Channel channel_from_json(const Json& j);

}  // namespace pfid
