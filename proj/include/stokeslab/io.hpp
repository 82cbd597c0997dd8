#pragma once

#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "stokeslab/costokes.hpp"
#include "stokeslab/presentation.hpp"

namespace stokeslab {

/// Versioned interchange document.  All numerics are exact rational strings
/// ("p" or "p/q" in lowest terms); directions are "x/y" integer pairs.
/// parse(serialize(doc)) is the identity, byte for byte.
struct Document {
  static constexpr int version = 1;
  std::string kind;  // "presentation" | "stokes_data" | "report"
  Presentation presentation;
  StokesData stokes;
  nlohmann::json report;
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace io {

using nlohmann::json;

inline std::string direction_str(const Direction& d) {
  return d.x.get_str() + "/" + d.y.get_str();
}

inline Direction parse_direction(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) throw ParseError("direction must be x/y: " + s);
  try {
    Integer x(s.substr(0, slash));
    Integer y(s.substr(slash + 1));
    if (x == 0 && y == 0) throw ParseError("zero direction");
    return Direction(x, y);
  } catch (const std::invalid_argument&) {
    throw ParseError("bad direction literal: " + s);
  }
}

inline json rational_json(const Rational& q) { return q.get_str(); }

inline Rational parse_rational_json(const json& j) {
  if (!j.is_string()) throw ParseError("rationals must be strings");
  return parse_rational(j.get<std::string>());
}

inline json point_json(const GaussianRational& z) {
  return json{{"re", rational_json(z.re)}, {"im", rational_json(z.im)}};
}

inline GaussianRational parse_point(const json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    throw ParseError("points must be {re, im}");
  return {parse_rational_json(j.at("re")), parse_rational_json(j.at("im"))};
}

inline json matrix_json(const MatQ& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) entries.push_back(rational_json(m(i, j)));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

inline MatQ parse_matrix(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw ParseError("matrices must be {rows, cols, entries}");
  std::size_t r = j.at("rows").get<std::size_t>();
  std::size_t c = j.at("cols").get<std::size_t>();
  const json& e = j.at("entries");
  if (!e.is_array() || e.size() != r * c) throw ParseError("matrix entry count mismatch");
  MatQ m(r, c);
  std::size_t k = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t jj = 0; jj < c; ++jj) m(i, jj) = parse_rational_json(e.at(k++));
  return m;
}

inline json presentation_json(const Presentation& p) {
  json exps = json::array();
  for (const auto& c : p.cfg.exponents) exps.push_back(point_json(c));
  json maps = json::array();
  for (std::size_t i = 0; i < p.count(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < p.count(); ++j) row.push_back(matrix_json(p.maps[i][j]));
    maps.push_back(row);
  }
  return json{{"exponents", exps},
              {"block_dims", p.blocks.dims},
              {"maps", maps},
              {"cut_direction", direction_str(p.cut_direction)},
              {"base_direction", direction_str(p.base_direction)}};
}

inline Presentation parse_presentation(const json& j) {
  Presentation p;
  if (!j.is_object()) throw ParseError("presentation payload must be an object");
  for (const char* key : {"exponents", "block_dims", "maps", "cut_direction", "base_direction"})
    if (!j.contains(key)) throw ParseError(std::string("presentation missing ") + key);
  for (const json& e : j.at("exponents")) p.cfg.exponents.push_back(parse_point(e));
  std::vector<std::size_t> dims = j.at("block_dims").get<std::vector<std::size_t>>();
  p.blocks = BlockStructure(dims);
  const json& maps = j.at("maps");
  if (!maps.is_array() || maps.size() != p.cfg.size()) throw ParseError("maps shape mismatch");
  for (const json& row : maps) {
    if (!row.is_array() || row.size() != p.cfg.size()) throw ParseError("maps shape mismatch");
    std::vector<MatQ> out;
    for (const json& m : row) out.push_back(parse_matrix(m));
    p.maps.push_back(std::move(out));
  }
  p.cut_direction = parse_direction(j.at("cut_direction").get<std::string>());
  p.base_direction = parse_direction(j.at("base_direction").get<std::string>());
  return p;
}

inline json stokes_json(const StokesData& d) {
  json exps = json::array();
  for (const auto& c : d.exponents) exps.push_back(point_json(c));
  return json{{"direction", direction_str(d.theta)},
              {"exponents", exps},
              {"graded_dims", d.dims},
              {"s", matrix_json(d.s)},
              {"q", matrix_json(d.q)}};
}

inline StokesData parse_stokes(const json& j) {
  StokesData d;
  if (!j.is_object()) throw ParseError("stokes payload must be an object");
  for (const char* key : {"direction", "exponents", "graded_dims", "s", "q"})
    if (!j.contains(key)) throw ParseError(std::string("stokes data missing ") + key);
  d.theta = parse_direction(j.at("direction").get<std::string>());
  for (const json& e : j.at("exponents")) d.exponents.push_back(parse_point(e));
  d.dims = j.at("graded_dims").get<std::vector<std::size_t>>();
  d.s = parse_matrix(j.at("s"));
  d.q = parse_matrix(j.at("q"));
  return d;
}

}  // namespace io

inline std::string serialize(const Document& doc) {
  nlohmann::json j{{"format", "stokeslab"}, {"version", Document::version}, {"kind", doc.kind}};
  if (doc.kind == "presentation")
    j["payload"] = io::presentation_json(doc.presentation);
  else if (doc.kind == "stokes_data")
    j["payload"] = io::stokes_json(doc.stokes);
  else if (doc.kind == "report")
    j["payload"] = doc.report;
  else
    throw ParseError("unknown document kind: " + doc.kind);
  return j.dump(2) + "\n";
}

inline Document parse_document(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid json: ") + e.what());
  }
  if (!j.is_object() || j.value("format", "") != "stokeslab")
    throw ParseError("not a stokeslab document");
  if (j.value("version", -1) != Document::version) throw ParseError("unsupported format version");
  Document doc;
  doc.kind = j.value("kind", "");
  try {
    if (doc.kind == "presentation")
      doc.presentation = io::parse_presentation(j.at("payload"));
    else if (doc.kind == "stokes_data")
      doc.stokes = io::parse_stokes(j.at("payload"));
    else if (doc.kind == "report")
      doc.report = j.at("payload");
    else
      throw ParseError("unknown document kind: " + doc.kind);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed payload: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("malformed payload: ") + e.what());
  } catch (const DimensionMismatch& e) {
    throw ParseError(std::string("malformed payload: ") + e.what());
  }
  return doc;
}

inline Document read_document(std::istream& in) {
  std::string text(std::istreambuf_iterator<char>(in), {});
  return parse_document(text);
}

}  // namespace stokeslab
