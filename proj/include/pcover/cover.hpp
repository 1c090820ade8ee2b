#pragma once

#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pcover/errors.hpp"
#include "pcover/graph.hpp"
#include "pcover/hamilton.hpp"

namespace pcover {

/// Vertex-disjoint paths plus the vertices they miss.
struct PathCover {
  std::vector<Path> paths;
  VertexSet uncovered;
};

/// Vertex-disjoint cycles plus the vertices they miss.
struct CycleSet {
  std::vector<Cycle> cycles;
  VertexSet uncovered;
};

/// Vertices of `g` not on any of the given sequences.
template <class Seqs>
VertexSet complement_of(const Graph& g, const Seqs& seqs) {
  std::vector<bool> used(g.order(), false);
  for (const auto& s : seqs)
    for (Vertex v : s.vertices)
      if (g.valid(v)) used[v] = true;
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.order(); ++v)
    if (!used[v]) out.push_back(v);
  return VertexSet(std::move(out));
}

struct CoverLimits {
  std::int64_t max_count = INT64_MAX;
  std::int64_t max_uncovered = INT64_MAX;
};

struct AuditItem {
  std::string check;
  bool pass = true;
  std::string detail;
};

struct CoverAudit {
  std::vector<AuditItem> items;

  bool ok() const {
    for (const auto& i : items)
      if (!i.pass) return false;
    return true;
  }
  /// True when every check other than the count and uncovered limits passes.
  bool structural_ok() const {
    for (const auto& i : items)
      if (!i.pass && i.check != "count" && i.check != "uncovered") return false;
    return true;
  }
  std::string to_text() const {
    std::ostringstream out;
    for (const auto& i : items) {
      out << (i.pass ? "PASS " : "FAIL ") << i.check;
      if (!i.detail.empty()) out << ": " << i.detail;
      out << '\n';
    }
    return out.str();
  }
};

namespace detail {

inline CoverAudit audit_sequences(const Graph& g, const std::vector<std::vector<Vertex>>& seqs,
                                  const VertexSet& uncovered, bool closed, const CoverLimits& limits) {
  CoverAudit audit;
  const char* what = closed ? "cycle" : "path";

  AuditItem range{"vertex-range", true, ""};
  AuditItem adjacency{"adjacency", true, ""};
  AuditItem disjoint{"disjointness", true, ""};
  std::vector<int> owner(g.order(), -1);
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    const auto& s = seqs[i];
    const std::string label = std::string(what) + " " + std::to_string(i);
    if (s.empty() || (closed && s.size() < 3)) {
      adjacency.pass = false;
      adjacency.detail = label + " has " + std::to_string(s.size()) + " vertices";
      continue;
    }
    bool in_range = true;
    for (Vertex v : s) {
      if (!g.valid(v)) {
        in_range = false;
        if (range.pass) range.detail = label + " uses vertex " + std::to_string(v) + " outside the graph";
        range.pass = false;
      }
    }
    if (!in_range) continue;
    for (Vertex v : s) {
      if (owner[v] >= 0 && disjoint.pass) {
        disjoint.pass = false;
        disjoint.detail = "vertex " + std::to_string(v) + " shared by " + what + "s " + std::to_string(owner[v]) +
                          " and " + std::to_string(i);
        if (owner[v] == static_cast<int>(i)) disjoint.detail = "vertex " + std::to_string(v) + " repeated in " + label;
      }
      owner[v] = static_cast<int>(i);
    }
    const std::size_t steps = closed ? s.size() : s.size() - 1;
    for (std::size_t k = 0; k < steps && adjacency.pass; ++k) {
      Vertex a = s[k];
      Vertex b = s[(k + 1) % s.size()];
      if (!g.adjacent(a, b)) {
        adjacency.pass = false;
        adjacency.detail = label + " steps along non-edge (" + std::to_string(a) + "," + std::to_string(b) + ")";
      }
    }
  }

  AuditItem partition{"partition", true, ""};
  for (Vertex v : uncovered) {
    if (!g.valid(v)) {
      partition.pass = false;
      partition.detail = "uncovered vertex " + std::to_string(v) + " outside the graph";
      break;
    }
    if (owner[v] >= 0) {
      partition.pass = false;
      partition.detail = "vertex " + std::to_string(v) + " both covered and uncovered";
      break;
    }
  }
  if (partition.pass) {
    for (Vertex v = 0; v < g.order(); ++v) {
      if (owner[v] < 0 && !uncovered.contains(v)) {
        partition.pass = false;
        partition.detail = "vertex " + std::to_string(v) + " neither covered nor listed uncovered";
        break;
      }
    }
  }

  const auto count = static_cast<std::int64_t>(seqs.size());
  const auto missed = static_cast<std::int64_t>(uncovered.size());
  AuditItem count_item{"count", count <= limits.max_count,
                       std::to_string(count) + " " + what + "s, limit " + std::to_string(limits.max_count)};
  AuditItem uncovered_item{"uncovered", missed <= limits.max_uncovered,
                           std::to_string(missed) + " uncovered, limit " + std::to_string(limits.max_uncovered)};
  audit.items = {range, adjacency, disjoint, partition, count_item, uncovered_item};
  return audit;
}

}  // namespace detail

/// Itemized audit of a path cover: vertex ids, consecutive adjacency,
/// disjointness, covered + uncovered = V, and the two limits.
inline CoverAudit verify_cover(const Graph& g, const PathCover& cover, const CoverLimits& limits = {}) {
  std::vector<std::vector<Vertex>> seqs;
  for (const auto& p : cover.paths) seqs.push_back(p.vertices);
  return detail::audit_sequences(g, seqs, cover.uncovered, false, limits);
}

/// Same audit for cycles; each cycle needs at least three vertices and the
/// closing edge.
inline CoverAudit verify_cover(const Graph& g, const CycleSet& cover, const CoverLimits& limits = {}) {
  std::vector<std::vector<Vertex>> seqs;
  for (const auto& c : cover.cycles) seqs.push_back(c.vertices);
  return detail::audit_sequences(g, seqs, cover.uncovered, true, limits);
}

/// Cover file: one path per line as space-separated vertex ids, '#' starts a
/// comment line. Uncovered vertices are not listed; read_cover derives them
/// from the graph order.
inline std::string write_cover(const PathCover& cover) {
  std::ostringstream out;
  for (const auto& p : cover.paths) {
    for (std::size_t i = 0; i < p.vertices.size(); ++i) out << (i ? " " : "") << p.vertices[i];
    out << '\n';
  }
  return out.str();
}

inline PathCover read_cover(std::istream& in, const Graph& g) {
  PathCover cover;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    Path p;
    std::string tok;
    while (fields >> tok) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || v < 0 || v > INT32_MAX)
        throw FormatError(lineno, "expected a vertex id, got '" + tok + "'");
      p.vertices.push_back(static_cast<Vertex>(v));
    }
    cover.paths.push_back(std::move(p));
  }
  cover.uncovered = complement_of(g, cover.paths);
  return cover;
}

inline PathCover read_cover(std::string_view text, const Graph& g) {
  std::istringstream in{std::string(text)};
  return read_cover(in, g);
}

}  // namespace pcover
