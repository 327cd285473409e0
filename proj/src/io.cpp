#include "hardy/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>

#include "hardy/error.hpp"

namespace hardy::io {

namespace {

using namespace geometry;

constexpr double kPi = std::numbers::pi;

[[noreturn]] void parse_fail(const std::string& what) { fail(ErrorCode::SpecParse, what); }

void expect_object(const json& j, const std::string& ctx, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) parse_fail(ctx + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; })) {
      parse_fail(ctx + ": unknown key '" + key + "'");
    }
  }
}

const json& field(const json& j, const char* key, const std::string& ctx) {
  const auto it = j.find(key);
  if (it == j.end()) parse_fail(ctx + ": missing '" + key + "'");
  return *it;
}

double number(const json& j, const char* key, const std::string& ctx) {
  const auto& v = field(j, key, ctx);
  if (!v.is_number()) parse_fail(ctx + ": '" + key + "' must be a number");
  return v.get<double>();
}

std::optional<double> opt_number(const json& j, const char* key, const std::string& ctx) {
  if (!j.contains(key)) return std::nullopt;
  return number(j, key, ctx);
}

bool boolean(const json& j, const char* key, const std::string& ctx) {
  const auto& v = field(j, key, ctx);
  if (!v.is_boolean()) parse_fail(ctx + ": '" + key + "' must be a boolean");
  return v.get<bool>();
}

std::size_t count(const json& j, const char* key, const std::string& ctx) {
  const auto& v = field(j, key, ctx);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    parse_fail(ctx + ": '" + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string text(const json& j, const char* key, const std::string& ctx) {
  const auto& v = field(j, key, ctx);
  if (!v.is_string()) parse_fail(ctx + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

const json& array(const json& j, const char* key, const std::string& ctx) {
  const auto& v = field(j, key, ctx);
  if (!v.is_array()) parse_fail(ctx + ": '" + key + "' must be an array");
  return v;
}

template <class T>
T validated(T d) {
  try {
    validate(DomainSpec{d});
  } catch (const Error& e) {
    parse_fail(e.what());
  }
  return d;
}

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

BoundingBox view_of(const DomainSpec& d, double extent) {
  if (const auto box = bounding_box(d)) {
    const double pad = 0.1 * std::max(box->width(), box->height());
    return {box->lo - CPoint{pad, pad}, box->hi + CPoint{pad, pad}};
  }
  return {{-extent, -extent}, {extent, extent}};
}

// Viridis, five stops.
std::string colour(double t) {
  static constexpr std::array<std::array<double, 3>, 5> stops{{
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
  t = std::clamp(t, 0.0, 1.0) * 4.0;
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(t), 3);
  const double s = t - static_cast<double>(k);
  char buf[16];
  int c[3];
  for (int i = 0; i < 3; ++i) c[i] = static_cast<int>(std::lround(stops[k][i] + s * (stops[k + 1][i] - stops[k][i])));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------

json to_json(CPoint p) { return json::array({p.real(), p.imag()}); }

CPoint point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    parse_fail("a point is an array [x, y] of two numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const DomainSpec& d) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Polygon>) {
          json pts = json::array();
          for (const auto& p : v.vertices) pts.push_back(to_json(p));
          return {{"kind", "polygon"}, {"vertices", pts}};
        } else if constexpr (std::is_same_v<T, Sector>) {
          return {{"kind", "sector"}, {"theta", v.theta}};
        } else if constexpr (std::is_same_v<T, CutPlane>) {
          return {{"kind", "cutplane"}};
        } else if constexpr (std::is_same_v<T, CutDiskExterior>) {
          return {{"kind", "cutdisk"}, {"a", v.a}, {"theta", v.theta}};
        } else if constexpr (std::is_same_v<T, Horseshoe>) {
          return {{"kind", "horseshoe"}, {"rho", v.rho}, {"delta", v.delta}, {"psi", v.psi}};
        } else if constexpr (std::is_same_v<T, Disk>) {
          return {{"kind", "disk"}, {"center", to_json(v.center)}, {"radius", v.radius}};
        } else {
          return {{"kind", "halfplane"}};
        }
      },
      d);
}

DomainSpec domain_from_json(const json& j) {
  if (!j.is_object()) parse_fail("domain: expected an object");
  const std::string kind = text(j, "kind", "domain");
  const std::string ctx = "domain '" + kind + "'";
  if (kind == "polygon") {
    expect_object(j, ctx, {"kind", "vertices"});
    std::vector<CPoint> pts;
    for (const auto& p : array(j, "vertices", ctx)) pts.push_back(point_from_json(p));
    try {
      return make_polygon(std::move(pts));
    } catch (const Error& e) {
      parse_fail(e.what());
    }
  }
  if (kind == "sector") {
    expect_object(j, ctx, {"kind", "theta"});
    return validated(Sector{number(j, "theta", ctx)});
  }
  if (kind == "cutplane") {
    expect_object(j, ctx, {"kind"});
    return CutPlane{};
  }
  if (kind == "cutdisk") {
    expect_object(j, ctx, {"kind", "a", "theta"});
    return validated(CutDiskExterior{number(j, "a", ctx), number(j, "theta", ctx)});
  }
  if (kind == "horseshoe") {
    expect_object(j, ctx, {"kind", "rho", "delta", "psi"});
    return validated(Horseshoe{number(j, "rho", ctx), number(j, "delta", ctx), number(j, "psi", ctx)});
  }
  if (kind == "disk") {
    expect_object(j, ctx, {"kind", "center", "radius"});
    const CPoint c = j.contains("center") ? point_from_json(j["center"]) : CPoint{};
    return validated(Disk{c, number(j, "radius", ctx)});
  }
  if (kind == "halfplane") {
    expect_object(j, ctx, {"kind"});
    return HalfPlane{};
  }
  parse_fail("unknown domain kind '" + kind + "'");
}

json to_json(const IntervalEstimate& e) { return {{"lower", e.lower}, {"upper", e.upper}}; }

IntervalEstimate interval_from_json(const json& j) {
  expect_object(j, "interval", {"lower", "upper"});
  return {number(j, "lower", "interval"), number(j, "upper", "interval")};
}

json to_json(const conditions::ConeReport& r) {
  json w = json::array();
  for (const auto& x : r.witnesses) {
    w.push_back({{"w", to_json(x.w)}, {"theta", x.theta}, {"phi", x.phi}, {"full_circle", x.full_circle}});
  }
  return {{"theta_sup", r.theta_sup},
          {"full_circle", r.full_circle},
          {"n_boundary_samples", r.n_boundary_samples},
          {"witnesses", w}};
}

conditions::ConeReport cone_report_from_json(const json& j) {
  const std::string ctx = "cone report";
  expect_object(j, ctx, {"theta_sup", "full_circle", "n_boundary_samples", "witnesses"});
  conditions::ConeReport r;
  r.theta_sup = number(j, "theta_sup", ctx);
  r.full_circle = boolean(j, "full_circle", ctx);
  r.n_boundary_samples = count(j, "n_boundary_samples", ctx);
  for (const auto& x : array(j, "witnesses", ctx)) {
    expect_object(x, "cone witness", {"w", "theta", "phi", "full_circle"});
    r.witnesses.push_back({point_from_json(field(x, "w", "cone witness")), number(x, "theta", "cone witness"),
                           number(x, "phi", "cone witness"), boolean(x, "full_circle", "cone witness")});
  }
  return r;
}

json to_json(const conditions::CutDiskReport& r) {
  json w = json::array();
  for (const auto& x : r.witnesses) {
    w.push_back({{"w", to_json(x.w)},
                 {"phi", x.phi},
                 {"theta_used", x.theta_used},
                 {"margin", x.margin},
                 {"found", x.found}});
  }
  return {{"a", r.a},
          {"theta0", r.theta0},
          {"feasible", r.feasible},
          {"n_boundary_samples", r.n_boundary_samples},
          {"n_domain_samples", r.n_domain_samples},
          {"witnesses", w}};
}

conditions::CutDiskReport cutdisk_report_from_json(const json& j) {
  const std::string ctx = "cut-disk report";
  expect_object(j, ctx, {"a", "theta0", "feasible", "n_boundary_samples", "n_domain_samples", "witnesses"});
  conditions::CutDiskReport r;
  r.a = number(j, "a", ctx);
  r.theta0 = number(j, "theta0", ctx);
  r.feasible = boolean(j, "feasible", ctx);
  r.n_boundary_samples = count(j, "n_boundary_samples", ctx);
  r.n_domain_samples = count(j, "n_domain_samples", ctx);
  for (const auto& x : array(j, "witnesses", ctx)) {
    const std::string wc = "cut-disk witness";
    expect_object(x, wc, {"w", "phi", "theta_used", "margin", "found"});
    r.witnesses.push_back({point_from_json(field(x, "w", wc)), number(x, "phi", wc), number(x, "theta_used", wc),
                           number(x, "margin", wc), boolean(x, "found", wc)});
  }
  return r;
}

json to_json(const bounds::BoundCertificate& c) {
  json in = json::object();
  if (c.inputs.theta) in["theta"] = *c.inputs.theta;
  if (c.inputs.a) in["a"] = *c.inputs.a;
  if (c.inputs.theta0) in["theta0"] = *c.inputs.theta0;
  if (c.inputs.delta_in) in["delta_in"] = *c.inputs.delta_in;
  return {{"method", std::string(bounds::to_string(c.method))},
          {"r", c.r},
          {"r_squared", c.r_squared},
          {"inputs", in},
          {"preconditions_ok", c.preconditions_ok},
          {"notes", c.notes}};
}

bounds::BoundCertificate certificate_from_json(const json& j) {
  const std::string ctx = "certificate";
  expect_object(j, ctx, {"method", "r", "r_squared", "inputs", "preconditions_ok", "notes"});
  bounds::BoundCertificate c;
  const auto m = bounds::method_from_string(text(j, "method", ctx));
  if (!m) parse_fail(ctx + ": unknown method");
  c.method = *m;
  c.r = number(j, "r", ctx);
  c.r_squared = number(j, "r_squared", ctx);
  const auto& in = field(j, "inputs", ctx);
  expect_object(in, "certificate inputs", {"theta", "a", "theta0", "delta_in"});
  c.inputs.theta = opt_number(in, "theta", ctx);
  c.inputs.a = opt_number(in, "a", ctx);
  c.inputs.theta0 = opt_number(in, "theta0", ctx);
  c.inputs.delta_in = opt_number(in, "delta_in", ctx);
  c.preconditions_ok = boolean(j, "preconditions_ok", ctx);
  c.notes = text(j, "notes", ctx);
  return c;
}

json to_json(const variational::RayleighEstimate& e) {
  json j = {{"h", e.h},
            {"lambda_h", e.lambda_h},
            {"iterations", e.iterations},
            {"residual", e.residual},
            {"eigen_residual", e.eigen_residual},
            {"n_unknowns", e.n_unknowns}};
  if (e.certificate_compared) {
    j["certificate"] = {{"r_squared", e.certificate_compared->r_squared}, {"margin", e.certificate_compared->margin}};
  }
  return j;
}

variational::RayleighEstimate rayleigh_from_json(const json& j) {
  const std::string ctx = "rayleigh estimate";
  expect_object(j, ctx, {"h", "lambda_h", "iterations", "residual", "eigen_residual", "n_unknowns", "certificate"});
  variational::RayleighEstimate e;
  e.h = number(j, "h", ctx);
  e.lambda_h = number(j, "lambda_h", ctx);
  e.iterations = count(j, "iterations", ctx);
  e.residual = number(j, "residual", ctx);
  e.eigen_residual = number(j, "eigen_residual", ctx);
  e.n_unknowns = count(j, "n_unknowns", ctx);
  if (j.contains("certificate")) {
    const auto& c = j["certificate"];
    expect_object(c, ctx + " certificate", {"r_squared", "margin"});
    e.certificate_compared = variational::CertificateComparison{number(c, "r_squared", ctx), number(c, "margin", ctx)};
  }
  return e;
}

json to_json(const conformal::LogDerivReport& r) {
  return {{"theta", r.theta},   {"a", r.a},
          {"R", r.R},           {"beta", r.beta},
          {"n_samples", r.n_samples}, {"min_margin", r.min_margin},
          {"worst_z", to_json(r.worst_z)}, {"passed", r.passed}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse(const std::string& s) {
  try {
    return json::parse(s);
  } catch (const json::parse_error& e) {
    parse_fail(e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void write_text_file(const std::string& path, const std::string& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::InvalidParameters, "cannot write " + path);
  out << s;
}

// ---------------------------------------------------------------------------

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvTable::CsvTable(std::string table, int version, std::vector<std::string> columns)
    : table_(std::move(table)), version_(version), columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) fail(ErrorCode::InvalidParameters, "csv row width does not match the header");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::string out = "# hardy " + table_ + " v" + std::to_string(version_) + "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
  return out;
}

CsvTable cone_witness_table(const conditions::ConeReport& r) {
  CsvTable t("cone_witnesses", 1, {"w_re", "w_im", "theta", "phi", "full_circle"});
  for (const auto& w : r.witnesses) {
    t.add_row({format_double(w.w.real()), format_double(w.w.imag()), format_double(w.theta), format_double(w.phi),
               w.full_circle ? "1" : "0"});
  }
  return t;
}

CsvTable cutdisk_witness_table(const conditions::CutDiskReport& r) {
  CsvTable t("cutdisk_witnesses", 1, {"w_re", "w_im", "phi", "theta_used", "margin", "found"});
  for (const auto& w : r.witnesses) {
    t.add_row({format_double(w.w.real()), format_double(w.w.imag()), format_double(w.phi), format_double(w.theta_used),
               format_double(w.margin), w.found ? "1" : "0"});
  }
  return t;
}

CsvTable certificate_table(const bounds::BoundCertificate& c) {
  CsvTable t("certificate", 1, {"method", "r", "r_squared", "theta", "a", "theta0", "delta_in"});
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  t.add_row({std::string(bounds::to_string(c.method)), format_double(c.r), format_double(c.r_squared),
             opt(c.inputs.theta), opt(c.inputs.a), opt(c.inputs.theta0), opt(c.inputs.delta_in)});
  return t;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<CPoint>> outline(const DomainSpec& d, double extent) {
  std::vector<std::vector<CPoint>> out;
  for (const auto& piece : boundary_pieces(d)) {
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, Segment>) {
            out.push_back({p.a, p.b});
          } else if constexpr (std::is_same_v<T, Ray>) {
            out.push_back({p.origin, p.origin + extent * p.dir});
          } else {
            const int n = std::max(8, static_cast<int>(std::ceil(std::abs(p.sweep) / (kPi / 90))));
            std::vector<CPoint> arc;
            for (int k = 0; k <= n; ++k) arc.push_back(p.at(p.start + p.sweep * k / n));
            out.push_back(std::move(arc));
          }
        },
        piece);
  }
  return out;
}

Svg::Svg(BoundingBox view, double width_px) : view_(view), width_(width_px) {
  if (!(view.width() > 0 && view.height() > 0)) fail(ErrorCode::InvalidParameters, "empty svg view");
  scale_ = width_px / view.width();
  height_ = view.height() * scale_;
}

std::string Svg::xy(CPoint p) const {
  return num((p.real() - view_.lo.real()) * scale_) + "," + num((view_.hi.imag() - p.imag()) * scale_);
}

void Svg::polyline(const std::vector<CPoint>& pts, const std::string& style, bool closed) {
  body_ += closed ? "<polygon points=\"" : "<polyline points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) body_ += (i ? " " : "") + xy(pts[i]);
  body_ += "\" style=\"" + style + "\"/>\n";
}

void Svg::circle(CPoint c, double radius, const std::string& style) {
  const auto p = xy(c);
  const auto comma = p.find(',');
  body_ += "<circle cx=\"" + p.substr(0, comma) + "\" cy=\"" + p.substr(comma + 1) + "\" r=\"" + num(radius * scale_) +
           "\" style=\"" + style + "\"/>\n";
}

void Svg::label(CPoint at, const std::string& s) {
  const auto p = xy(at);
  const auto comma = p.find(',');
  body_ += "<text x=\"" + p.substr(0, comma) + "\" y=\"" + p.substr(comma + 1) +
           "\" font-family=\"monospace\" font-size=\"12\">" + esc(s) + "</text>\n";
}

std::string Svg::str() const {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_) + "\" height=\"" + num(height_) +
         "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" +
         body_ + "</svg>\n";
}

std::string conditions_svg(const DomainSpec& d, const std::optional<conditions::ConeReport>& cone,
                           const std::optional<conditions::CutDiskReport>& cutdisk, double extent) {
  const BoundingBox view = view_of(d, extent);
  Svg svg(view);
  const double reach = std::abs(view.hi - view.lo);
  for (const auto& line : outline(d, extent)) svg.polyline(line, "fill:none;stroke:black;stroke-width:2");

  if (cone && !cone->witnesses.empty()) {
    const auto& w = cone->worst();
    if (!w.full_circle) {
      const CPoint a = w.w + std::polar(reach, w.phi + w.theta);
      const CPoint b = w.w + std::polar(reach, w.phi - w.theta);
      svg.polyline({a, w.w, b}, "fill:none;stroke:#c03030;stroke-width:1.5;stroke-dasharray:6,3");
    }
    svg.circle(w.w, 0.01 * reach, "fill:#c03030");
    svg.label(view.lo + CPoint{0.02, 0.04} * reach, "cone theta_sup = " + num(cone->theta_sup));
  }
  if (cutdisk && cutdisk->feasible && !cutdisk->witnesses.empty()) {
    const auto worst = std::min_element(cutdisk->witnesses.begin(), cutdisk->witnesses.end(),
                                        [](const auto& x, const auto& y) { return x.margin < y.margin; });
    const Placement pl{worst->w, worst->phi};
    const double a = cutdisk->a;
    const CPoint centre = pl.apply(-a * std::polar(1.0, worst->theta_used));
    const CPoint tip = pl.apply(-a * std::polar(1.0, worst->theta_used) - a);
    svg.circle(centre, a, "fill:#3060c0;fill-opacity:0.15;stroke:#3060c0;stroke-width:1.5");
    svg.polyline({tip, tip - std::polar(reach, worst->phi)}, "fill:none;stroke:#3060c0;stroke-width:1.5");
    svg.label(view.lo + CPoint{0.02, 0.08} * reach, "cut-disk min margin = " + num(worst->margin));
  }
  return svg.str();
}

std::string koebe_svg(const conformal::TestMap& f, double r, double extent) {
  const CPoint c = f.eval({0.0, 0.0});
  const double delta = boundary_distance(f.image, c);
  const double need = r * std::abs(f.deriv({0.0, 0.0}));
  const double half = std::max(extent, 1.5 * std::max(delta, need));
  const BoundingBox view{c - CPoint{half, half}, c + CPoint{half, half}};
  Svg svg(view);
  for (const auto& line : outline(f.image.shape, 2.0 * half / f.image.scale + std::abs(c))) {
    std::vector<CPoint> world;
    for (const auto& p : line) world.push_back(f.image.to_world(p));
    svg.polyline(world, "fill:none;stroke:black;stroke-width:2");
  }
  svg.circle(c, delta, "fill:#30a060;fill-opacity:0.15;stroke:#30a060;stroke-width:1.5");
  svg.circle(c, need, "fill:none;stroke:#c03030;stroke-width:1.5;stroke-dasharray:6,3");
  svg.circle(c, 0.01 * half, "fill:black");
  svg.label(view.lo + CPoint{0.04, 0.08} * half, f.name + ": delta(f(0)) = " + num(delta) + ", r|f'(0)| = " + num(need));
  return svg.str();
}

std::string mode_svg(const variational::RayleighEstimate& e) {
  const auto& m = e.mesh;
  if (m.vertices.empty()) fail(ErrorCode::InvalidParameters, "estimate carries no mesh");
  BoundingBox box{m.vertices.front(), m.vertices.front()};
  for (const auto& v : m.vertices) {
    box.lo = {std::min(box.lo.real(), v.real()), std::min(box.lo.imag(), v.imag())};
    box.hi = {std::max(box.hi.real(), v.real()), std::max(box.hi.imag(), v.imag())};
  }
  const double pad = 0.05 * std::max(box.width(), box.height());
  Svg svg({box.lo - CPoint{pad, pad}, box.hi + CPoint{pad, pad}});
  for (const auto& t : m.triangles) {
    const double u = (e.mode[t[0]] + e.mode[t[1]] + e.mode[t[2]]) / 3.0;
    const auto c = colour(u);
    svg.polyline({m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]}, "fill:" + c + ";stroke:" + c + ";stroke-width:0.3",
                 true);
  }
  svg.label(box.lo - CPoint{0, pad * 0.5}, "lambda_h = " + format_double(e.lambda_h) + ", h = " + format_double(e.h));
  return svg.str();
}

}  // namespace hardy::io
