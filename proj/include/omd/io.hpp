#pragma once

// Serialization: the JSON design format, a plain-text grid and a LaTeX
// array for small designs.
//
// JSON layout (keys in this order, cells sorted by (row, col), edges in
// canonical order):
//   {"n": int, "k": int, "side": int, "host": {...},
//    "cells": [{"row": int, "col": int, "edges": [[u, v], ...]}, ...]}
// Host objects carry a "type" tag:
//   {"type": "complete", "n": N}
//   {"type": "complete_bipartite", "a": A, "b": B}
//   {"type": "lex_matching", "l": L, "s": S}
//   {"type": "lex_matching_complete", "l": L, "s": S}
//   {"type": "complete_multipartite", "parts": [..]}

#include <sstream>
#include <string>

#include <json.hpp>

#include "omd/core.hpp"
#include "omd/verifier.hpp"

namespace omd {

using json = nlohmann::ordered_json;

inline json host_to_json(const HostGraph& host) {
  return std::visit(
      [](const auto& h) -> json {
        using T = std::decay_t<decltype(h)>;
        json j;
        if constexpr (std::is_same_v<T, Complete>) {
          j["type"] = "complete";
          j["n"] = h.n;
        } else if constexpr (std::is_same_v<T, CompleteBipartite>) {
          j["type"] = "complete_bipartite";
          j["a"] = h.a;
          j["b"] = h.b;
        } else if constexpr (std::is_same_v<T, LexMatching>) {
          j["type"] = "lex_matching";
          j["l"] = h.l;
          j["s"] = h.s;
        } else if constexpr (std::is_same_v<T, LexMatchingComplete>) {
          j["type"] = "lex_matching_complete";
          j["l"] = h.l;
          j["s"] = h.s;
        } else {
          j["type"] = "complete_multipartite";
          j["parts"] = h.parts;
        }
        return j;
      },
      host.variant());
}

inline json design_to_json(const DesignArray& arr) {
  json j;
  j["n"] = arr.n();
  j["k"] = arr.k();
  j["side"] = arr.side();
  j["host"] = host_to_json(arr.host());
  json cells = json::array();
  for (int r = 0; r < arr.side(); ++r)
    for (int c = 0; c < arr.side(); ++c) {
      const auto& b = arr.at(r, c);
      if (!b) continue;
      json edges = json::array();
      for (const auto& e : b->edges()) edges.push_back({e.u(), e.v()});
      json cell;
      cell["row"] = r;
      cell["col"] = c;
      cell["edges"] = std::move(edges);
      cells.push_back(std::move(cell));
    }
  j["cells"] = std::move(cells);
  return j;
}

inline json transversal_to_json(const Transversal& t) {
  json out = json::array();
  for (const auto& c : t.cells) out.push_back({c.row, c.col});
  return out;
}

inline json hole_to_json(const Hole& h) {
  json out;
  out["rows"] = h.rows;
  out["cols"] = h.cols;
  return out;
}

inline json report_to_json(const VerificationReport& rep) {
  json j;
  j["passed"] = rep.passed;
  json checks = json::array();
  for (const auto& c : rep.checks) {
    json cj;
    cj["name"] = c.name;
    cj["passed"] = c.passed;
    if (!c.passed) cj["counterexample"] = c.counterexample;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  j["counts"]["nonempty"] = rep.nonempty;
  j["counts"]["per_row"] = rep.per_row;
  j["counts"]["per_col"] = rep.per_col;
  return j;
}

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& what) { throw error(errc::parse_error, what); }

inline int get_int(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number_integer())
    parse_fail(std::string("missing or non-integer field \"") + key + "\"");
  return j.at(key).get<int>();
}

inline HostGraph host_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) parse_fail("host needs a string \"type\"");
  const auto type = j.at("type").get<std::string>();
  if (type == "complete") return Complete{get_int(j, "n")};
  if (type == "complete_bipartite") return CompleteBipartite{get_int(j, "a"), get_int(j, "b")};
  if (type == "lex_matching") return LexMatching{get_int(j, "l"), get_int(j, "s")};
  if (type == "lex_matching_complete") return LexMatchingComplete{get_int(j, "l"), get_int(j, "s")};
  if (type == "complete_multipartite") {
    if (!j.contains("parts") || !j.at("parts").is_array()) parse_fail("complete_multipartite needs \"parts\"");
    std::vector<int> parts;
    for (const auto& p : j.at("parts")) {
      if (!p.is_number_integer()) parse_fail("part sizes must be integers");
      parts.push_back(p.get<int>());
    }
    return CompleteMultipartite{std::move(parts)};
  }
  parse_fail("unknown host type \"" + type + "\"");
}

}  // namespace detail

/// Parses the JSON design format. Structural problems (bad JSON, missing
/// fields, out-of-range cells, degenerate edges, repeated cells) raise
/// ParseError; combinatorial problems are left for the verifier.
inline DesignArray design_from_json(const json& j) {
  using detail::get_int;
  using detail::parse_fail;
  const int n = get_int(j, "n");
  const int k = get_int(j, "k");
  const int side = get_int(j, "side");
  if (n < 2 || k < 1 || side < 0) parse_fail("need n >= 2, k >= 1, side >= 0");
  if (!j.contains("host")) parse_fail("missing \"host\"");
  DesignArray arr(side, n, k, detail::host_from_json(j.at("host")));

  if (!j.contains("cells") || !j.at("cells").is_array()) parse_fail("missing \"cells\" array");
  for (const auto& cell : j.at("cells")) {
    const int r = get_int(cell, "row");
    const int c = get_int(cell, "col");
    if (!arr.in_range(r, c)) parse_fail("cell (" + std::to_string(r) + "," + std::to_string(c) + ") out of range");
    if (arr.at(r, c)) parse_fail("cell (" + std::to_string(r) + "," + std::to_string(c) + ") listed twice");
    if (!cell.contains("edges") || !cell.at("edges").is_array()) parse_fail("cell without \"edges\" array");
    std::vector<Edge> edges;
    for (const auto& e : cell.at("edges")) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
        parse_fail("edges must be [u, v] integer pairs");
      const int u = e[0].get<int>(), v = e[1].get<int>();
      if (u == v || u < 0 || v < 0) parse_fail("degenerate edge [" + std::to_string(u) + "," + std::to_string(v) + "]");
      edges.emplace_back(u, v);
    }
    arr.set_unchecked(r, c, Block(std::move(edges)));
  }
  return arr;
}

inline DesignArray design_from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw error(errc::parse_error, e.what());
  }
  return design_from_json(j);
}

/// One line per row, cells separated by '|', '.' for empty, "u-v,u-v" for a block.
inline std::string to_grid(const DesignArray& arr) {
  std::ostringstream os;
  for (int r = 0; r < arr.side(); ++r) {
    for (int c = 0; c < arr.side(); ++c) {
      if (c) os << '|';
      const auto& b = arr.at(r, c);
      if (!b) {
        os << '.';
        continue;
      }
      bool first = true;
      for (const auto& e : b->edges()) {
        if (!first) os << ',';
        first = false;
        os << e.u() << '-' << e.v();
      }
    }
    os << '\n';
  }
  return os.str();
}

inline constexpr int max_latex_side = 15;

/// LaTeX array with one edge list per cell. Refused above side 15.
inline std::string to_latex(const DesignArray& arr) {
  if (arr.side() > max_latex_side)
    throw error(errc::invalid_argument, "LaTeX export is limited to side <= " + std::to_string(max_latex_side) +
                                            " (this design has side " + std::to_string(arr.side()) + ")");
  std::ostringstream os;
  os << "\\[\n\\begin{array}{|";
  for (int c = 0; c < arr.side(); ++c) os << "c|";
  os << "} \\hline\n";
  for (int r = 0; r < arr.side(); ++r) {
    for (int c = 0; c < arr.side(); ++c) {
      if (c) os << " & ";
      if (const auto& b = arr.at(r, c)) {
        bool first = true;
        for (const auto& e : b->edges()) {
          if (!first) os << ",\\,";
          first = false;
          os << e.u() << "\\;" << e.v();
        }
      }
    }
    os << " \\\\ \\hline\n";
  }
  os << "\\end{array}\n\\]\n";
  return os.str();
}

}  // namespace omd
