#pragma once

// JSON and CSV formats. Exact values travel as strings in the scalar
// grammar, so every read/write pair round-trips bit for bit.

#include <string>

#include <json.hpp>

#include "dhl/dirichlet.hpp"
#include "dhl/extension.hpp"
#include "dhl/gallery.hpp"
#include "dhl/goodrect.hpp"

namespace dhl::io {

using json = nlohmann::json;

json rect_to_json(const SlopedRect& r);  // ["a1","a2","b1","b2"], half-integer strings
SlopedRect rect_from_json(const json& j);

json grid_to_json(const GridFunction& u);
GridFunction grid_from_json(const json& j);
/// Rows "n,m,value" or "s,k,value"; unset cells are skipped.
std::string grid_to_csv(const GridFunction& u);
std::string grid3_to_csv(const Grid3Function& u);

json boundary_to_json(const BoundaryData& d);
BoundaryData boundary_from_json(const json& j);

json lshape_to_json(const LShapeData& d);
LShapeData lshape_from_json(const json& j);

json seed_to_json(const DiagonalSeed& s);
DiagonalSeed seed_from_json(const json& j);

json family_to_json(const SquareFamily& f);
SquareFamily family_from_json(const json& j);

std::string kernel_table_csv(const PoissonKernelTable& t);

/// "# key: value" lines for CSV outputs.
std::string csv_header(const json& header);

json read_json_file(const std::string& path);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
/// Sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

}  // namespace dhl::io
