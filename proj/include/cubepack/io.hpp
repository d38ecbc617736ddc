#pragma once

// Text formats: packing documents (JSON), cover listings, CSV tables, basis
// lines, generator descriptions and SVG renderings.
//
// Every parser throws cubepack::Error with kParseSyntax, kParseSchema,
// kParseRange or kParseOverlap; every serializer is deterministic.

#include <optional>
#include <string>
#include <vector>

#include "cubepack/additive_basis.hpp"
#include "cubepack/audits.hpp"
#include "cubepack/dimension.hpp"
#include "cubepack/geometry.hpp"
#include "cubepack/lift.hpp"

namespace cubepack {

struct PackingDocument {
  SizePacking packing;
  std::optional<Generator> generator;  // set for packings built from a lifted set
};

/// {"dimension": n, "pieces": [{"t_lo", "t_hi", "center"}], "samples": [{"t", "center"}],
///  "generator": {...}}; exactly one of pieces / samples.
PackingDocument parse_packing_document(const std::string& text);
SizePacking parse_packing_spec(const std::string& text);
/// Canonical form: fixed key order, entries sorted by size, two-space indent.
std::string serialize_packing(const SizePacking& packing, const std::optional<Generator>& generator = std::nullopt);

/// {"base": n, "alphabet": [...]} or {"schedule": [...]}
Generator parse_generator(const std::string& text);
std::string serialize_generator(const Generator& generator);

/// Header "k=<int> n=<int>", then one comma-separated index tuple per line.
std::string serialize_cover(const GridCover& cover);
GridCover parse_cover(const std::string& text);

/// Header "k,count".
std::string serialize_profile(const ScaleProfile& profile);
ScaleProfile parse_profile(const std::string& text);

std::string serialize_estimate(const DimensionEstimate& estimate);

/// "n: e1 e2 ..."
std::string serialize_basis(const AdditiveBasis& basis);
AdditiveBasis parse_basis(const std::string& text);

std::string audit_csv_header();
std::string audit_csv_row(const OverlapAudit& audit);

std::string sweep_csv(const std::vector<SliceEstimate>& sweep);

/// One <rect> per cell in sorted order, y axis pointing up. Plane covers only.
std::string render_svg(const GridCover& cover, int cell_pixels = 4);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace cubepack
