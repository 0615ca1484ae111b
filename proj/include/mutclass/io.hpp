#pragma once

// JSON matrix documents, DOT export, and JSON encodings of reports shared by
// the command-line tool and the HTTP service.

#include "mutclass/classify.hpp"
#include "mutclass/forms.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>
#include <string>

namespace mutclass {

using Json = nlohmann::ordered_json;

/// Malformed or invalid input document; `where` names the offending part.
class DocumentError : public std::invalid_argument {
 public:
  DocumentError(const std::string& what, std::string where = {})
      : std::invalid_argument(what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct MatrixDocument {
  ExtendedMatrix matrix;
  std::string name;
};

// integers above 2^53 - 1 in magnitude are written as decimal strings
inline Json integer_json(const Integer& x) {
  static const Integer safe = (Integer(1) << 53) - 1;
  if (abs(x) <= safe) return Json(x.convert_to<long long>());
  return Json(to_string(x));
}

inline Integer integer_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    std::size_t start = !s.empty() && (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (s.size() == start) throw DocumentError("expected an integer", where);
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw DocumentError("expected an integer", where);
    return Integer(s[0] == '+' ? s.substr(1) : s);
  }
  throw DocumentError("expected an integer", where);
}

inline Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json vector_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer_json(x));
  return out;
}

inline Json indices_json(const std::vector<std::size_t>& v) {
  Json out = Json::array();
  for (auto k : v) out.push_back(k + 1);
  return out;
}

/// Rectangular integer matrix from a JSON array of equal-length rows.
inline IntMatrix int_matrix_from_json(const Json& rows, const std::string& field = "rows") {
  if (!rows.is_array() || rows.empty()) throw DocumentError("\"" + field + "\" must be a non-empty array", field);
  if (!rows[0].is_array()) throw DocumentError("row 1 is not an array", field + "[1]");
  const std::size_t m = rows.size();
  const std::size_t n = rows[0].size();
  IntMatrix out(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    const std::string where = field + "[" + std::to_string(i + 1) + "]";
    if (!rows[i].is_array()) throw DocumentError("row is not an array", where);
    if (rows[i].size() != n)
      throw DocumentError("row " + std::to_string(i + 1) + " has length " + std::to_string(rows[i].size()) +
                              ", expected " + std::to_string(n),
                          where);
    for (std::size_t j = 0; j < n; ++j)
      out(i, j) = integer_from_json(rows[i][j], where + "[" + std::to_string(j + 1) + "]");
  }
  return out;
}

/// Parses {"m":..,"n":..,"rows":[[..],..],"name":..}. m and n may be omitted
/// (they are checked against the rows when present).
inline MatrixDocument parse_document(const Json& doc) {
  if (!doc.is_object()) throw DocumentError("document must be a JSON object");
  if (!doc.contains("rows") || !doc["rows"].is_array()) throw DocumentError("missing \"rows\" array", "rows");
  IntMatrix entries = int_matrix_from_json(doc["rows"]);
  const std::size_t m = entries.rows();
  const std::size_t n = entries.cols();
  if (doc.contains("m") && (!doc["m"].is_number_unsigned() || doc["m"].get<std::size_t>() != m))
    throw DocumentError("\"m\" does not match the number of rows", "m");
  if (doc.contains("n") && (!doc["n"].is_number_unsigned() || doc["n"].get<std::size_t>() != n))
    throw DocumentError("\"n\" does not match the row length", "n");
  if (n == 0 || m < n) throw DocumentError("matrix must be m x n with m >= n >= 1", "rows");
  MatrixDocument out;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw DocumentError("\"name\" must be a string", "name");
    out.name = doc["name"].get<std::string>();
  }
  auto check = check_skew_symmetrizable(entries.block(0, 0, n, n));
  if (!check) {
    const auto& v = *check.violation;
    throw DocumentError(v.message(), "(" + std::to_string(v.i + 1) + "," + std::to_string(v.j + 1) + ")");
  }
  out.matrix = ExtendedMatrix(std::move(entries), n);
  return out;
}

inline MatrixDocument parse_matrix(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DocumentError(std::string("malformed JSON: ") + e.what());
  }
  return parse_document(doc);
}

inline Json document_json(const ExtendedMatrix& b, const std::string& name = {}) {
  Json out;
  out["m"] = b.rows();
  out["n"] = b.mutable_count();
  out["rows"] = matrix_json(b.entries());
  if (!name.empty()) out["name"] = name;
  return out;
}

inline std::string emit_matrix(const ExtendedMatrix& b, const std::string& name = {}) {
  return document_json(b, name).dump();
}

/// Vertices are numbered from 1; frozen vertices are drawn as boxes and
/// weight-1 edges carry no label.
inline std::string emit_dot(const Diagram& g) {
  std::ostringstream out;
  out << "digraph G {\n";
  for (std::size_t v = 0; v < g.size(); ++v) {
    out << "  " << v + 1;
    if (g.is_frozen(v)) out << " [shape=box]";
    out << ";\n";
  }
  for (const auto& e : g.edges()) {
    out << "  " << e.from + 1 << " -> " << e.to + 1;
    if (e.weight > 1) out << " [label=\"" << e.weight << "\"]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

inline Json diagram_json(const Diagram& g) {
  Json out;
  Json vertices = Json::array();
  for (std::size_t v = 0; v < g.size(); ++v) vertices.push_back({{"id", v + 1}, {"frozen", g.is_frozen(v)}});
  Json edges = Json::array();
  for (const auto& e : g.edges())
    edges.push_back({{"from", e.from + 1}, {"to", e.to + 1}, {"weight", integer_json(e.weight)}});
  out["vertices"] = std::move(vertices);
  out["edges"] = std::move(edges);
  out["max_weight"] = integer_json(g.max_weight());
  return out;
}

inline Json label_json(const DynkinLabel& l) {
  return {{"family", to_string(l.family)}, {"rank", l.rank}, {"affine", l.affine}, {"label", l.str()}};
}

inline Json certificate_json(const Certificate& c) {
  Json out;
  out["kind"] = to_string(c.kind);
  out["path"] = indices_json(c.path);
  out["pair"] = {c.i + 1, c.j + 1};
  out["third"] = c.r + 1;
  out["witness"] = document_json(c.witness);
  return out;
}

inline Json class_report_json(const ClassReport& r) {
  Json out;
  out["outcome"] = to_string(r.outcome);
  out["labeled_count"] = r.labeled_count;
  out["iso_count"] = r.iso_count;
  out["visited"] = r.visited;
  out["budget"] = {{"max_nodes", r.budget.max_nodes}};
  if (r.budget.max_entry) out["budget"]["max_entry"] = integer_json(*r.budget.max_entry);
  if (r.certificate) out["certificate"] = certificate_json(*r.certificate);
  return out;
}

inline Json theorem_json(const TheoremReport& t) {
  Json out;
  out["verdict"] = to_string(t.verdict);
  out["consistent"] = t.verdict == TheoremReport::Verdict::Consistent;
  out["lhs"] = t.lhs_finite ? "finite" : "infinite";
  out["rhs"] = to_string(t.rhs.outcome);
  if (t.rhs.certificate) {
    out["rhs_certificate"] = to_string(t.rhs.certificate->kind);
    out["certificate_verified"] = t.certificate_verified;
  }
  out["report"] = class_report_json(t.rhs);
  return out;
}

inline Json definiteness_json(const Definiteness& d) {
  Json out{{"kind", to_string(d.kind)}};
  if (d.kind != Definiteness::Kind::Indefinite) out["corank"] = d.corank;
  return out;
}

inline Json companion_json(const Companion& c) {
  Json out;
  out["matrix"] = matrix_json(c.matrix());
  out["symmetrizer"] = vector_json(c.symmetrizer());
  out["definiteness"] = definiteness_json(semidefiniteness(c));
  Json radical = Json::array();
  for (const auto& u : radical_basis(c)) radical.push_back({{"vector", vector_json(u.u)}, {"sincere", u.sincere()}});
  out["radical"] = std::move(radical);
  return out;
}

/// Finite-type answer for the principal part, with the Dynkin label when the
/// diagram is connected.
inline Json classify_json(const ExchangeMatrix& b) {
  const Diagram g = diagram_of(b);
  const auto result = decide_finite_type(g);
  Json out;
  out["finite_type"] = result.finite;
  if (result.finite) {
    if (g.is_connected()) {
      const auto label = identify_dynkin_type(b);
      out["family"] = to_string(label.family);
      out["rank"] = label.rank;
    }
    out["class_size_up_to_iso"] = result.members.size();
  } else {
    out["witness_path"] = indices_json(result.witness_path);
    out["witness_max_weight"] = integer_json(result.witness->max_weight());
  }
  return out;
}

inline Json error_json(const std::string& kind, const std::string& message, const std::string& where = {}) {
  Json out{{"error", kind}, {"message", message}};
  if (!where.empty()) out["location"] = where;
  return out;
}

}  // namespace mutclass
