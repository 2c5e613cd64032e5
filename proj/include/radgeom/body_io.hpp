// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "radgeom/body.hpp"

namespace radgeom {

/// Body file format: a JSON object {"kappa": 0|1, "dim": n, "balls":
/// [{"center": [...], "radius": r}, ...]} where centers carry n
/// coordinates for kappa = 0 and n+1 unit-norm coordinates for kappa = 1.
/// Parse errors report the origin and location; schema errors name the
/// offending field.
Body parse_body_json(const std::string& text, const std::string& origin = "<string>");

Body read_body_file(const std::string& path);

/// Serializes with 17 significant digits so a written body parses back
/// bit-exactly.
std::string body_to_json(const Body& body);

void write_body_file(const Body& body, const std::string& path);

}  // namespace radgeom
