#include "dhl/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "dhl/error.hpp"

namespace dhl::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw io_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw io_error(std::string("field '") + what + "' has the wrong type");
  }
}

long half_from(const json& j) {
  if (j.is_number_integer()) return 2 * j.get<long>();
  if (j.is_string()) return parse_half(j.get<std::string>());
  throw io_error("coordinate must be an integer or a half-integer string");
}

ScalarKind kind_from(const json& j) { return ScalarKind::parse(as<std::string>(field(j, "scalar_kind"), "scalar_kind")); }

Scalar value_from(const json& v, const ScalarKind& kind) {
  if (!v.is_string()) throw io_error("values must be strings in the scalar grammar");
  return parse_scalar(v.get<std::string>(), kind);
}

}  // namespace

json rect_to_json(const SlopedRect& r) { return json::array({half_str(r.a1), half_str(r.a2), half_str(r.b1), half_str(r.b2)}); }

SlopedRect rect_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw io_error("rectangle must be a quadruple [a1, a2, b1, b2]");
  return {half_from(j[0]), half_from(j[1]), half_from(j[2]), half_from(j[3])};
}

json grid_to_json(const GridFunction& u) {
  json j;
  if (u.coords() == Coords::Standard) {
    j["coords"] = "standard";
    j["window"] = {{"center", {u.square().center.n, u.square().center.m}}, {"radius", u.square().radius}};
  } else {
    j["coords"] = "sloped";
    j["window"] = {{"rect", rect_to_json(u.rect())}};
  }
  j["scalar_kind"] = u.kind().name();
  json vals = json::array();
  for (std::size_t i = 0; i < u.size(); ++i)
    vals.push_back(u.mask()[i] ? json(u.values()[i].str()) : json(nullptr));
  j["values"] = std::move(vals);
  return j;
}

GridFunction grid_from_json(const json& j) {
  const std::string coords = as<std::string>(field(j, "coords"), "coords");
  const ScalarKind kind = kind_from(j);
  const json& w = field(j, "window");
  GridFunction u;
  if (coords == "standard") {
    const json& c = field(w, "center");
    if (!c.is_array() || c.size() != 2) throw io_error("window center must be [n, m]");
    u = GridFunction::standard({{as<long>(c[0], "center"), as<long>(c[1], "center")}, as<long>(field(w, "radius"), "radius")},
                               kind);
  } else if (coords == "sloped") {
    u = GridFunction::sloped(rect_from_json(field(w, "rect")), kind);
  } else {
    throw io_error("coords must be 'standard' or 'sloped'");
  }
  const json& vals = field(j, "values");
  if (!vals.is_array() || vals.size() != u.size())
    throw io_error("values has " + std::to_string(vals.size()) + " entries, window has " + std::to_string(u.size()));
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (!vals[i].is_null()) u.set_index(i, value_from(vals[i], kind));
  return u;
}

std::string grid_to_csv(const GridFunction& u) {
  std::ostringstream out;
  if (u.coords() == Coords::Standard) {
    out << "n,m,value\n";
    for (Cell c : u.cells())
      if (u.is_set(c)) out << c.n << ',' << c.m << ',' << u.at(c).str() << '\n';
  } else {
    out << "s,k,value\n";
    for (SlopedCell p : u.sloped_cells())
      if (u.is_set(p)) out << half_str(p.s2) << ',' << half_str(p.k2) << ',' << u.at(p).str() << '\n';
  }
  return out.str();
}

std::string grid3_to_csv(const Grid3Function& u) {
  std::ostringstream out;
  out << "x,y,z,value\n";
  for (long z = u.lo(); z < u.lo() + u.side(); ++z)
    for (long y = u.lo(); y < u.lo() + u.side(); ++y)
      for (long x = u.lo(); x < u.lo() + u.side(); ++x) out << x << ',' << y << ',' << z << ',' << u.at(x, y, z).str() << '\n';
  return out.str();
}

json boundary_to_json(const BoundaryData& d) {
  json j;
  j["coords"] = "boundary";
  j["window"] = {{"center", {0, 0}}, {"radius", d.N}};
  j["scalar_kind"] = d.kind.name();
  json vals = json::array();
  for (const auto& v : d.values) vals.push_back(v.str());
  j["values"] = std::move(vals);
  return j;
}

BoundaryData boundary_from_json(const json& j) {
  if (as<std::string>(field(j, "coords"), "coords") != "boundary") throw io_error("coords must be 'boundary'");
  BoundaryData d;
  d.N = as<long>(field(field(j, "window"), "radius"), "radius");
  require(d.N >= 1 && d.N <= 512, "boundary radius must be in [1, 512]");
  d.kind = kind_from(j);
  d.cells = BoundaryData::boundary_cells(d.N);
  const json& vals = field(j, "values");
  if (!vals.is_array() || vals.size() != d.cells.size())
    throw io_error("boundary values must list " + std::to_string(d.cells.size()) + " entries");
  for (const auto& v : vals) d.values.push_back(value_from(v, d.kind));
  d.validate();
  return d;
}

json lshape_to_json(const LShapeData& d) {
  json j;
  j["rect"] = rect_to_json(d.rect);
  j["scalar_kind"] = d.kind.name();
  json vals = json::array();
  for (std::size_t i = 0; i < d.cells.size(); ++i)
    vals.push_back(json::array({json::array({half_str(d.cells[i].s2), half_str(d.cells[i].k2)}), d.values[i].str()}));
  j["values"] = std::move(vals);
  return j;
}

LShapeData lshape_from_json(const json& j) {
  LShapeData d;
  d.rect = rect_from_json(field(j, "rect"));
  d.kind = kind_from(j);
  std::map<SlopedCell, Scalar> given;
  for (const auto& e : field(j, "values")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_array() || e[0].size() != 2)
      throw io_error("L-shape entries must be [[s, k], value]");
    SlopedCell p{half_from(e[0][0]), half_from(e[0][1])};
    require(p.valid(), "cell (" + half_str(p.s2) + "," + half_str(p.k2) + ") has s + k not an integer");
    require(given.emplace(p, value_from(e[1], d.kind)).second, "duplicate L-shape cell");
  }
  d.cells = LShapeData::domain(d.rect);
  require(given.size() == d.cells.size(), "L-shape data must cover exactly S (" + std::to_string(d.cells.size()) + " cells)");
  for (SlopedCell p : d.cells) {
    auto it = given.find(p);
    require(it != given.end(), "L-shape data misses cell (" + half_str(p.s2) + "," + half_str(p.k2) + ")");
    d.values.push_back(it->second);
  }
  return d;
}

json seed_to_json(const DiagonalSeed& s) {
  json j;
  j["N"] = s.N;
  j["scalar_kind"] = s.kind.name();
  json vals = json::array();
  for (std::size_t i = 0; i < s.t.size(); ++i) vals.push_back(json::array({static_cast<long>(i + 1), s.t[i].str()}));
  j["values"] = std::move(vals);
  return j;
}

DiagonalSeed seed_from_json(const json& j) {
  DiagonalSeed s;
  s.N = as<long>(field(j, "N"), "N");
  require(s.N >= 1 && s.N <= 512, "seed window radius must be in [1, 512]");
  s.kind = kind_from(j);
  require(s.kind.exact(), "half-plane seeds need an exact kind");
  s.t.assign(static_cast<std::size_t>(2 * s.N), Scalar::zero(s.kind));
  for (const auto& e : field(j, "values")) {
    if (!e.is_array() || e.size() != 2) throw io_error("seed entries must be [d, value]");
    long d = as<long>(e[0], "d");
    require(d >= 1 && d <= 2 * s.N, "seed diagonal d must lie in [1, 2N]");
    s.t[static_cast<std::size_t>(d - 1)] = value_from(e[1], s.kind);
  }
  return s;
}

json family_to_json(const SquareFamily& f) {
  json sq = json::array();
  for (const auto& r : f.squares) sq.push_back(rect_to_json(r));
  return {{"ambient", rect_to_json(f.ambient)}, {"squares", sq}};
}

SquareFamily family_from_json(const json& j) {
  SquareFamily f;
  f.ambient = rect_from_json(field(j, "ambient"));
  for (const auto& r : field(j, "squares")) f.squares.push_back(rect_from_json(r));
  return f;
}

std::string kernel_table_csv(const PoissonKernelTable& t) {
  const ScalarKind f53 = ScalarKind::floating(53);
  std::ostringstream out;
  out << "xn,xm,yn,ym,value\n";
  for (std::size_t i = 0; i < t.interior.size(); ++i)
    for (std::size_t k = 0; k < t.boundary.size(); ++k)
      out << t.interior[i].n << ',' << t.interior[i].m << ',' << t.boundary[k].n << ',' << t.boundary[k].m << ','
          << Scalar::from_double(t.at(i, k), f53).str() << '\n';
  return out.str();
}

std::string csv_header(const json& header) {
  // json objects iterate alphabetically; the header has a fixed reading order
  static const char* const order[] = {"tool", "version", "command", "config", "seed", "scalar_kind"};
  std::string out;
  auto line = [&](const std::string& key, const json& v) {
    out += "# " + key + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
  };
  for (const char* key : order)
    if (header.contains(key)) line(key, header.at(key));
  for (auto it = header.begin(); it != header.end(); ++it)
    if (std::find(std::begin(order), std::end(order), it.key()) == std::end(order)) line(it.key(), *it);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw io_error("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw io_error("write to '" + path + "' failed");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace dhl::io
