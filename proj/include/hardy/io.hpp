#pragma once

// JSON, CSV and SVG encodings of domains and reports.

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "hardy/bounds.hpp"
#include "hardy/conditions.hpp"
#include "hardy/conformal.hpp"
#include "hardy/geometry.hpp"
#include "hardy/variational.hpp"

namespace hardy::io {

using json = nlohmann::ordered_json;
using geometry::CPoint;
using geometry::DomainSpec;

// ---------------------------------------------------------------------------
// JSON. Parsers are strict: unknown keys, wrong types and invalid parameters
// raise Error(SpecParse).

json to_json(CPoint p);
CPoint point_from_json(const json& j);

json to_json(const DomainSpec& d);
DomainSpec domain_from_json(const json& j);

json to_json(const geometry::IntervalEstimate& e);
geometry::IntervalEstimate interval_from_json(const json& j);

json to_json(const conditions::ConeReport& r);
conditions::ConeReport cone_report_from_json(const json& j);

json to_json(const conditions::CutDiskReport& r);
conditions::CutDiskReport cutdisk_report_from_json(const json& j);

json to_json(const bounds::BoundCertificate& c);
bounds::BoundCertificate certificate_from_json(const json& j);

/// Mesh and mode are not serialised.
json to_json(const variational::RayleighEstimate& e);
variational::RayleighEstimate rayleigh_from_json(const json& j);

json to_json(const conformal::LogDerivReport& r);

/// Two-space indented text with a trailing newline.
std::string dump(const json& j);
json parse(const std::string& text);
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// ---------------------------------------------------------------------------
// CSV. First line "# hardy <table> v<version>", then the header row.

std::string format_double(double v);  // %.17g, empty for NaN

class CsvTable {
 public:
  CsvTable(std::string table, int version, std::vector<std::string> columns);

  void add_row(std::vector<std::string> cells);
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t n_rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::string table_;
  int version_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

CsvTable cone_witness_table(const conditions::ConeReport& r);
CsvTable cutdisk_witness_table(const conditions::CutDiskReport& r);
CsvTable certificate_table(const bounds::BoundCertificate& c);

// ---------------------------------------------------------------------------
// SVG.

/// Polylines tracing the boundary pieces; rays are cut at `extent`.
std::vector<std::vector<CPoint>> outline(const DomainSpec& d, double extent = 4.0);

class Svg {
 public:
  Svg(geometry::BoundingBox view, double width_px = 640.0);

  void polyline(const std::vector<CPoint>& pts, const std::string& style, bool closed = false);
  void circle(CPoint c, double radius, const std::string& style);
  void label(CPoint at, const std::string& text);
  std::string str() const;

 private:
  std::string xy(CPoint p) const;

  geometry::BoundingBox view_;
  double scale_;
  double width_;
  double height_;
  std::string body_;
};

/// Domain outline plus the worst cone witness (the containing sector's edges)
/// and the worst cut-disk witness (the removed disk and its cut).
std::string conditions_svg(const DomainSpec& d, const std::optional<conditions::ConeReport>& cone,
                           const std::optional<conditions::CutDiskReport>& cutdisk, double extent = 4.0);

/// Image domain with the circle of radius delta(f(0)) around f(0) and the
/// circle of radius r |f'(0)| it has to contain.
std::string koebe_svg(const conformal::TestMap& f, double r, double extent = 4.0);

/// Ground mode per triangle (vertex mean) over the mesh.
std::string mode_svg(const variational::RayleighEstimate& e);

}  // namespace hardy::io
