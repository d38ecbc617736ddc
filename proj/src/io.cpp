#include "cubepack/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cubepack/error.hpp"
#include "json.hpp"

namespace cubepack {
namespace {

using Json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::kParseSchema, what); }
[[noreturn]] void range(const std::string& what) { throw Error(ErrorCode::kParseRange, what); }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParseSyntax, e.what());
  }
}

const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object()) schema("expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) schema(std::string("missing key \"") + key + "\"");
  return *it;
}

double number(const Json& v, const char* what) {
  if (!v.is_number()) schema(std::string(what) + " must be a number");
  return v.get<double>();
}

std::int64_t integer(const Json& v, const char* what) {
  if (!v.is_number_integer()) schema(std::string(what) + " must be an integer");
  return v.get<std::int64_t>();
}

std::vector<std::int64_t> integers(const Json& v, const char* what) {
  if (!v.is_array()) schema(std::string(what) + " must be an array");
  std::vector<std::int64_t> out;
  for (const auto& x : v) out.push_back(integer(x, what));
  return out;
}

Point center_of(const Json& v, int dimension) {
  if (!v.is_array()) schema("center must be an array");
  if (static_cast<int>(v.size()) != dimension) schema("center length differs from dimension");
  Point c;
  for (const auto& x : v) {
    const double value = number(x, "center coordinate");
    if (!(value >= 0.0 && value <= 1.0)) range("center coordinate outside [0,1]");
    c.push_back(value);
  }
  return c;
}

Generator generator_from(const Json& j) {
  if (!j.is_object()) schema("generator must be an object");
  try {
    if (j.contains("schedule")) return BlockedDescription(integers(j["schedule"], "schedule"));
    return CantorDescription(integer(field(j, "base"), "base"), integers(field(j, "alphabet"), "alphabet"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kDomain) range(e.what());
    throw;
  }
}

Json generator_json(const Generator& g) {
  Json j;
  if (const auto* c = std::get_if<CantorDescription>(&g)) {
    j["base"] = c->base();
    j["alphabet"] = c->alphabet();
  } else {
    j["schedule"] = std::get<BlockedDescription>(g).lengths();
  }
  return j;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::int64_t parse_int(const std::string& s) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParseSyntax, "not an integer: \"" + s + "\"");
  }
  if (used != s.size()) throw Error(ErrorCode::kParseSyntax, "not an integer: \"" + s + "\"");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

}  // namespace

PackingDocument parse_packing_document(const std::string& text) {
  const Json doc = parse_json(text);
  const std::int64_t dimension = integer(field(doc, "dimension"), "dimension");
  if (dimension < 2 || dimension > kMaxDimension) range("dimension must lie in [2, 4]");
  const int n = static_cast<int>(dimension);
  const bool has_pieces = doc.contains("pieces");
  if (has_pieces == doc.contains("samples")) schema("exactly one of \"pieces\" and \"samples\" is required");
  std::optional<Generator> generator;
  if (doc.contains("generator")) generator = generator_from(doc["generator"]);

  if (has_pieces) {
    const Json& list = doc["pieces"];
    if (!list.is_array()) schema("pieces must be an array");
    std::vector<PackingPiece> pieces;
    for (const auto& p : list) {
      const double lo = number(field(p, "t_lo"), "t_lo");
      const double hi = number(field(p, "t_hi"), "t_hi");
      if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) range("piece interval must satisfy 0 <= t_lo < t_hi <= 1");
      pieces.push_back({lo, hi, center_of(field(p, "center"), n)});
    }
    std::sort(pieces.begin(), pieces.end(), [](const auto& a, const auto& b) { return a.t_lo < b.t_lo; });
    for (std::size_t i = 1; i < pieces.size(); ++i) {
      if (pieces[i].t_lo < pieces[i - 1].t_hi) throw Error(ErrorCode::kParseOverlap, "piece intervals overlap");
    }
    return {SizePacking::from_pieces(n, std::move(pieces)), std::move(generator)};
  }
  const Json& list = doc["samples"];
  if (!list.is_array()) schema("samples must be an array");
  std::vector<PackingSample> samples;
  for (const auto& s : list) {
    const double t = number(field(s, "t"), "t");
    if (!(t > 0.0 && t < 1.0)) range("sample size must lie in (0,1)");
    samples.push_back({t, center_of(field(s, "center"), n)});
  }
  std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].t == samples[i - 1].t) throw Error(ErrorCode::kParseOverlap, "repeated sample size");
  }
  return {SizePacking::from_samples(n, std::move(samples)), std::move(generator)};
}

SizePacking parse_packing_spec(const std::string& text) { return parse_packing_document(text).packing; }

std::string serialize_packing(const SizePacking& packing, const std::optional<Generator>& generator) {
  Json doc;
  doc["dimension"] = packing.dimension();
  if (packing.is_piecewise()) {
    doc["pieces"] = Json::array();
    for (const auto& p : packing.pieces()) {
      doc["pieces"].push_back(Json{{"t_lo", p.t_lo}, {"t_hi", p.t_hi}, {"center", p.center}});
    }
  } else {
    doc["samples"] = Json::array();
    for (const auto& s : packing.samples()) doc["samples"].push_back(Json{{"t", s.t}, {"center", s.center}});
  }
  if (generator) doc["generator"] = generator_json(*generator);
  return doc.dump(2) + "\n";
}

Generator parse_generator(const std::string& text) { return generator_from(parse_json(text)); }

std::string serialize_generator(const Generator& generator) { return generator_json(generator).dump() + "\n"; }

std::string serialize_cover(const GridCover& cover) {
  std::string out = "k=" + std::to_string(cover.scale_exponent()) + " n=" + std::to_string(cover.dimension()) + "\n";
  for (std::size_t i = 0; i < cover.size(); ++i) {
    const auto c = cover.cell(i);
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j > 0) out += ',';
      out += std::to_string(c[j]);
    }
    out += '\n';
  }
  return out;
}

GridCover parse_cover(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw Error(ErrorCode::kParseSyntax, "missing cover header");
  int k = 0;
  int n = 0;
  char tail = 0;
  if (std::sscanf(lines[0].c_str(), "k=%d n=%d%c", &k, &n, &tail) != 2) {
    throw Error(ErrorCode::kParseSyntax, "cover header must read \"k=<int> n=<int>\"");
  }
  if (k < 0 || n < 1 || n > kMaxDimension) range("cover header out of range");
  std::vector<std::int64_t> flat;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto parts = split(lines[i], ',');
    if (static_cast<int>(parts.size()) != n) schema("cell tuple length differs from n");
    for (const auto& p : parts) flat.push_back(parse_int(p));
  }
  return GridCover(n, k, std::move(flat));
}

std::string serialize_profile(const ScaleProfile& profile) {
  std::string out = "k,count\n";
  for (const auto& e : profile.entries()) out += std::to_string(e.k) + "," + std::to_string(e.count) + "\n";
  return out;
}

ScaleProfile parse_profile(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != "k,count") throw Error(ErrorCode::kParseSyntax, "profile header must be \"k,count\"");
  std::vector<ScaleEntry> entries;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto parts = split(lines[i], ',');
    if (parts.size() != 2) schema("profile rows have two fields");
    const std::int64_t k = parse_int(parts[0]);
    const std::int64_t count = parse_int(parts[1]);
    if (k < 0 || count < 0) range("negative profile value");
    entries.push_back({static_cast<int>(k), static_cast<std::uint64_t>(count)});
  }
  try {
    return ScaleProfile(std::move(entries));
  } catch (const Error& e) {
    range(e.what());
  }
}

std::string serialize_estimate(const DimensionEstimate& estimate) {
  Json j;
  j["slope"] = estimate.slope;
  j["intercept"] = estimate.intercept;
  j["residual"] = estimate.residual;
  j["k_min"] = estimate.k_min;
  j["k_max"] = estimate.k_max;
  return j.dump() + "\n";
}

std::string serialize_basis(const AdditiveBasis& basis) {
  std::string out = std::to_string(basis.modulus) + ":";
  for (std::int64_t e : basis.elements) out += " " + std::to_string(e);
  return out + "\n";
}

AdditiveBasis parse_basis(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.size() != 1) throw Error(ErrorCode::kParseSyntax, "basis is a single line");
  const auto colon = lines[0].find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::kParseSyntax, "basis line needs \"n:\"");
  const std::int64_t n = parse_int(lines[0].substr(0, colon));
  if (n < 1) range("modulus must be positive");
  std::vector<std::int64_t> elements;
  std::istringstream in(lines[0].substr(colon + 1));
  std::string token;
  while (in >> token) {
    const std::int64_t e = parse_int(token);
    if (e < 0 || e >= n) range("basis element outside [0, n)");
    elements.push_back(e);
  }
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return AdditiveBasis{n, std::move(elements), basis_size_bound(n)};
}

std::string audit_csv_header() { return "delta,M,bound_overlap,bound_antichain,bound_sqrt,measured_area,pass\n"; }

std::string audit_csv_row(const OverlapAudit& a) {
  return fmt(a.delta) + "," + std::to_string(a.M) + "," + fmt(a.bound_overlap) + "," + fmt(a.bound_antichain) + "," +
         fmt(a.bound_sqrt) + "," + fmt(a.measured_area) + "," + (a.pass ? "pass" : "fail") + "\n";
}

std::string sweep_csv(const std::vector<SliceEstimate>& sweep) {
  std::string out = "r,slope,residual\n";
  for (const auto& s : sweep) out += fmt(s.r) + "," + fmt(s.estimate.slope) + "," + fmt(s.estimate.residual) + "\n";
  return out;
}

std::string render_svg(const GridCover& cover, int cell_pixels) {
  if (cover.dimension() != 2) throw Error(ErrorCode::kUnsupportedDimension, "only plane covers can be rendered");
  if (cell_pixels < 1) throw Error(ErrorCode::kDomain, "cell size must be positive");
  // View the unit square, widened to hold every cell.
  const std::int64_t side = std::int64_t{1} << cover.scale_exponent();
  std::int64_t x0 = 0, y0 = 0, x1 = side, y1 = side;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    const auto c = cover.cell(i);
    x0 = std::min(x0, c[0]);
    y0 = std::min(y0, c[1]);
    x1 = std::max(x1, c[0] + 1);
    y1 = std::max(y1, c[1] + 1);
  }
  const std::int64_t w = (x1 - x0) * cell_pixels;
  const std::int64_t h = (y1 - y0) * cell_pixels;
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) + "\" height=\"" +
         std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) + " " + std::to_string(h) + "\">\n";
  out += "<g fill=\"#1f4e79\">\n";
  for (std::size_t i = 0; i < cover.size(); ++i) {
    const auto c = cover.cell(i);
    out += "<rect x=\"" + std::to_string((c[0] - x0) * cell_pixels) + "\" y=\"" +
           std::to_string((y1 - 1 - c[1]) * cell_pixels) + "\" width=\"" + std::to_string(cell_pixels) +
           "\" height=\"" + std::to_string(cell_pixels) + "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

}  // namespace cubepack
