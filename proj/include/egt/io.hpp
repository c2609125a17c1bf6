// GameFile JSON schema, trajectory CSV export, and JSON views of the report
// types. All floating-point serialization goes through shortest
// round-trip formatting, so identical inputs produce byte-identical output.
#pragma once

#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "egt/bases.hpp"
#include "egt/classify.hpp"
#include "egt/dynamics.hpp"
#include "egt/nplayer.hpp"
#include "egt/zeeman.hpp"

namespace egt {

using json = nlohmann::ordered_json;

/// On-disk game document: {"kind": "symmetric"|"bimatrix"|"nplayer",
/// "A": rows, "B": rows, "payoffs": [tensor...], "labels": [...]}.
struct GameFile {
  std::variant<MatrixGame<double>, BimatrixGame<double>, TensorGame<double>>
      game;
  std::vector<std::string> labels;

  std::string kind() const {
    switch (game.index()) {
      case 0: return "symmetric";
      case 1: return "bimatrix";
      default: return "nplayer";
    }
  }
};

// ---------------------------------------------------------------------------
// Matrix <-> JSON.

inline json matrix_to_json(const MatrixX<double>& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline MatrixX<double> matrix_from_json(const json& node, const std::string& field) {
  if (!node.is_array() || node.empty() || !node.front().is_array()) {
    throw DomainError(field + ": expected a non-empty array of rows");
  }
  const Index rows = static_cast<Index>(node.size());
  const Index cols = static_cast<Index>(node.front().size());
  MatrixX<double> m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = node[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw DomainError(field + ": row " + std::to_string(i + 1) +
                        " is not rectangular");
    }
    for (Index j = 0; j < cols; ++j) {
      const json& cell = row[static_cast<std::size_t>(j)];
      if (!cell.is_number()) {
        throw DomainError(field + ": entry (" + std::to_string(i + 1) + "," +
                          std::to_string(j + 1) + ") is not a number");
      }
      m(i, j) = cell.get<double>();
    }
  }
  if (!m.allFinite()) throw DomainError(field + ": entries must be finite");
  return m;
}

// ---------------------------------------------------------------------------
// Tensor <-> JSON (nested arrays, outermost index = player 1's strategy).

namespace detail {

inline void read_nested_tensor(const json& node, TensorGame<double>& g,
                               Index player, std::vector<Index>& profile,
                               Index depth, const std::string& field) {
  if (depth == g.players) {
    if (!node.is_number()) {
      throw DomainError(field + ": expected a number at depth " +
                        std::to_string(depth));
    }
    g.set(player, profile, node.get<double>());
    return;
  }
  if (!node.is_array() ||
      static_cast<Index>(node.size()) != g.strategies) {
    throw DomainError(field + ": expected an array of length " +
                      std::to_string(g.strategies) + " at depth " +
                      std::to_string(depth + 1));
  }
  for (Index i = 1; i <= g.strategies; ++i) {
    profile[static_cast<std::size_t>(depth)] = i;
    read_nested_tensor(node[static_cast<std::size_t>(i - 1)], g, player,
                       profile, depth + 1, field);
  }
}

inline json write_nested_tensor(const TensorGame<double>& g, Index player,
                                std::vector<Index>& profile, Index depth) {
  if (depth == g.players) {
    return json(g.at(player, profile));
  }
  json out = json::array();
  for (Index i = 1; i <= g.strategies; ++i) {
    profile[static_cast<std::size_t>(depth)] = i;
    out.push_back(write_nested_tensor(g, player, profile, depth + 1));
  }
  return out;
}

}  // namespace detail

inline TensorGame<double> tensor_from_json(const json& node) {
  if (!node.is_array() || node.size() < 2) {
    throw DomainError("payoffs: expected one nested array per player (>= 2)");
  }
  const Index n = static_cast<Index>(node.size());
  const json* probe = &node.front();
  Index depth = 0;
  while (probe->is_array() && !probe->empty()) {
    ++depth;
    probe = &probe->front();
  }
  if (depth == 0) throw DomainError("payoffs: tensors must be nested arrays");
  if (depth != n) {
    throw DomainError("payoffs: tensor depth " + std::to_string(depth) +
                      " does not match player count " + std::to_string(n));
  }
  const Index l = static_cast<Index>(node.front().size());
  if (l < 2) throw DomainError("payoffs: strategy count must be >= 2");
  if (detail::checked_power(l, n) > kTensorEntryGuard) {
    throw CapacityError("payoffs: l^n exceeds the dense-enumeration guard of " +
                        std::to_string(kTensorEntryGuard));
  }
  TensorGame<double> g = TensorGame<double>::zeros(n, l);
  std::vector<Index> profile(static_cast<std::size_t>(n), 1);
  for (Index p = 1; p <= n; ++p) {
    detail::read_nested_tensor(node[static_cast<std::size_t>(p - 1)], g, p,
                               profile, 0,
                               "payoffs[" + std::to_string(p - 1) + "]");
  }
  for (const auto& t : g.payoffs) {
    if (!t.allFinite()) throw DomainError("payoffs: entries must be finite");
  }
  return g;
}

inline json tensor_to_json(const TensorGame<double>& g) {
  json out = json::array();
  std::vector<Index> profile(static_cast<std::size_t>(g.players), 1);
  for (Index p = 1; p <= g.players; ++p) {
    out.push_back(detail::write_nested_tensor(g, p, profile, 0));
  }
  return out;
}

// ---------------------------------------------------------------------------
// GameFile.

inline GameFile game_from_json(const json& doc) {
  if (!doc.is_object()) throw DomainError("game file: expected a JSON object");
  if (!doc.contains("kind") || !doc["kind"].is_string()) {
    throw DomainError("kind: missing or not a string");
  }
  const std::string kind = doc["kind"].get<std::string>();
  GameFile file;
  if (kind == "symmetric") {
    if (!doc.contains("A")) throw DomainError("A: required for kind \"symmetric\"");
    file.game = MatrixGame<double>(matrix_from_json(doc["A"], "A"));
  } else if (kind == "bimatrix") {
    if (!doc.contains("A") || !doc.contains("B")) {
      throw DomainError("A/B: both required for kind \"bimatrix\"");
    }
    file.game = BimatrixGame<double>(matrix_from_json(doc["A"], "A"),
                                     matrix_from_json(doc["B"], "B"));
  } else if (kind == "nplayer") {
    if (!doc.contains("payoffs")) {
      throw DomainError("payoffs: required for kind \"nplayer\"");
    }
    file.game = tensor_from_json(doc["payoffs"]);
  } else {
    throw DomainError("kind: must be \"symmetric\", \"bimatrix\" or \"nplayer\"");
  }
  if (doc.contains("labels")) {
    if (!doc["labels"].is_array()) throw DomainError("labels: expected an array");
    for (const auto& label : doc["labels"]) {
      if (!label.is_string()) throw DomainError("labels: entries must be strings");
      file.labels.push_back(label.get<std::string>());
    }
  }
  return file;
}

inline json game_to_json(const GameFile& file) {
  json doc;
  doc["kind"] = file.kind();
  if (const auto* g = std::get_if<MatrixGame<double>>(&file.game)) {
    doc["A"] = matrix_to_json(g->payoff);
  } else if (const auto* g = std::get_if<BimatrixGame<double>>(&file.game)) {
    doc["A"] = matrix_to_json(g->a);
    doc["B"] = matrix_to_json(g->b);
  } else {
    doc["payoffs"] = tensor_to_json(std::get<TensorGame<double>>(file.game));
  }
  if (!file.labels.empty()) doc["labels"] = file.labels;
  return doc;
}

inline GameFile load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError(path + ": cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError(path + ": malformed JSON (" + std::string(e.what()) + ")");
  }
  return game_from_json(doc);
}

// ---------------------------------------------------------------------------
// Report views.

inline json criterion_json(const CriterionResult<double>& r) {
  json out;
  out["value"] = r.value;
  out["cycle_residual"] = r.cycle_residual;
  out["component_residual"] = r.component_residual;
  out["witness"] = r.witness.empty() ? json(nullptr) : json(r.witness);
  return out;
}

inline json stability_json(const StabilityReport<double>& r) {
  json out;
  out["is_potential"] = r.is_potential;
  out["is_zero_sum"] = r.is_zero_sum;
  out["is_null_stable"] = r.is_null_stable;
  out["is_stable"] = r.is_stable;
  out["is_strict_stable"] = r.is_strict_stable;
  out["tangent_eigenvalues"] = r.tangent_eigenvalues;
  out["max_criterion_residual"] = r.max_criterion_residual;
  out["witness"] = r.witness.empty() ? json(nullptr) : json(r.witness);
  return out;
}

inline json dimensions_json(const DimensionReport& r) {
  json out;
  out["dim_potential"] = r.dim_potential;
  out["dim_anti_potential"] = r.dim_anti_potential;
  out["dim_zero_sum"] = r.dim_zero_sum;
  out["dim_anti_zero_sum"] = r.dim_anti_zero_sum;
  out["dim_kernel"] = r.dim_kernel;
  out["dim_range"] = r.dim_range;
  return out;
}

inline json zeeman_json(const ZeemanReport<double>& r) {
  json out;
  out["ess_strategy"] =
      r.ess_strategy ? json(*r.ess_strategy) : json(nullptr);
  out["interior_type"] = to_string(r.interior_type);
  json eigs = json::array();
  for (const auto& z : r.jacobian_eigenvalues) {
    eigs.push_back(json::array({z.real(), z.imag()}));
  }
  out["jacobian_eigenvalues"] = std::move(eigs);
  return out;
}

// ---------------------------------------------------------------------------
// Trajectory CSV.

namespace detail {

// Shortest round-trip decimal representation.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

/// Header `t,x1,...[,y1,...][,H]`, one row per recorded step.
inline void write_trajectory_csv(std::ostream& os,
                                 const Trajectory<double>& traj) {
  os << "t";
  for (Index i = 1; i <= traj.dim_x; ++i) os << ",x" << i;
  for (Index j = 1; j <= traj.dim_y; ++j) os << ",y" << j;
  const bool with_h = !traj.invariant_values.empty();
  if (with_h) os << ",H";
  os << "\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    os << detail::format_double(traj.times[k]);
    const auto& state = traj.states[k];
    for (Index i = 0; i < state.size(); ++i) {
      os << "," << detail::format_double(state(i));
    }
    if (with_h) os << "," << detail::format_double(traj.invariant_values[k]);
    os << "\n";
  }
}

}  // namespace egt
