// Copyright 2026 The Chaoscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chaoscope/game_io.h"

#include <fstream>
#include <sstream>

#include "chaoscope/errors.h"
#include "json.hpp"

namespace chaoscope {
namespace {

using nlohmann::json;

json ParseJson(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("json: ") + e.what());
  }
}

const json& Field(const json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) {
    throw InvalidArgument(std::string(name) + ": missing");
  }
  return obj.at(name);
}

double Number(const json& v, const std::string& field) {
  if (!v.is_number()) throw InvalidArgument(field + ": expected a number");
  return v.get<double>();
}

int Integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) {
    throw InvalidArgument(field + ": expected an integer");
  }
  return v.get<int>();
}

Vector ParseVector(const json& v, const std::string& field) {
  if (!v.is_array()) throw InvalidArgument(field + ": expected an array");
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t j = 0; j < v.size(); ++j) {
    out[j] = Number(v[j], field + "[" + std::to_string(j) + "]");
  }
  return out;
}

Matrix ParseMatrix(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty()) {
    throw InvalidArgument(field + ": expected a non-empty array of rows");
  }
  const std::size_t rows = v.size();
  if (!v[0].is_array()) throw InvalidArgument(field + "[0]: expected a row");
  const std::size_t cols = v[0].size();
  Matrix out(rows, cols);
  for (std::size_t j = 0; j < rows; ++j) {
    const std::string row_field = field + "[" + std::to_string(j) + "]";
    if (!v[j].is_array() || v[j].size() != cols) {
      throw InvalidArgument(row_field + ": expected a row of length " +
                            std::to_string(cols));
    }
    for (std::size_t k = 0; k < cols; ++k) {
      out(j, k) = Number(v[j][k], row_field + "[" + std::to_string(k) + "]");
    }
  }
  return out;
}

std::vector<int> ParseCounts(const json& v) {
  if (!v.is_array()) {
    throw InvalidArgument("strategy_counts: expected an array");
  }
  std::vector<int> counts;
  for (std::size_t i = 0; i < v.size(); ++i) {
    counts.push_back(
        Integer(v[i], "strategy_counts[" + std::to_string(i) + "]"));
  }
  return counts;
}

void FillNested(const json& v, std::span<const int> shape, std::size_t axis,
                const std::string& field, std::vector<double>& out) {
  if (axis == shape.size()) {
    out.push_back(Number(v, field));
    return;
  }
  if (!v.is_array() || static_cast<int>(v.size()) != shape[axis]) {
    throw InvalidArgument(field + ": expected an array of length " +
                          std::to_string(shape[axis]));
  }
  for (std::size_t j = 0; j < v.size(); ++j) {
    FillNested(v[j], shape, axis + 1, field + "[" + std::to_string(j) + "]",
               out);
  }
}

Tensor ParseNested(const json& v, std::span<const int> shape,
                   const std::string& field) {
  std::vector<double> values;
  values.reserve(ProfileCount(shape));
  FillNested(v, shape, 0, field, values);
  return Tensor(std::vector<int>(shape.begin(), shape.end()),
                std::move(values));
}

json MatrixJson(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(j, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

json NestedJson(const Tensor& t, std::size_t axis, std::int64_t offset) {
  const auto& shape = t.shape();
  json out = json::array();
  for (int j = 0; j < shape[axis]; ++j) {
    const std::int64_t flat = offset + j * t.stride(static_cast<int>(axis));
    if (axis + 1 == shape.size()) {
      out.push_back(t.values()[flat]);
    } else {
      out.push_back(NestedJson(t, axis + 1, flat));
    }
  }
  return out;
}

DualPoint DualPointFromJson(const json& v, std::span<const int> counts,
                            const std::string& field) {
  if (v.is_string()) {
    if (v.get<std::string>() == "uniform") return DualPoint::Zeros(counts);
    throw InvalidArgument(field + ": unknown keyword '" +
                          v.get<std::string>() + "'");
  }
  const json& blocks = (v.is_object() && v.contains("p")) ? v.at("p") : v;
  if (!blocks.is_array() || blocks.size() != counts.size()) {
    throw InvalidArgument(field + ": expected " +
                          std::to_string(counts.size()) +
                          " per-player vectors");
  }
  DualPoint p;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const std::string block_field = field + "[" + std::to_string(i) + "]";
    Vector b = ParseVector(blocks[i], block_field);
    if (b.size() != counts[i]) {
      throw InvalidArgument(block_field + ": expected length " +
                            std::to_string(counts[i]));
    }
    p.blocks.push_back(std::move(b));
  }
  return p;
}

}  // namespace

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Game ParseGame(std::string_view json_text) {
  const json doc = ParseJson(json_text);
  const json& kind_field = Field(doc, "kind");
  if (!kind_field.is_string()) throw InvalidArgument("kind: expected a string");
  const std::string kind = kind_field.get<std::string>();

  if (kind == "bimatrix") {
    return BimatrixGame(ParseMatrix(Field(doc, "A"), "A"),
                        ParseMatrix(Field(doc, "B"), "B"));
  }
  if (kind == "normal_form") {
    std::vector<int> counts = ParseCounts(Field(doc, "strategy_counts"));
    const json& payoffs = Field(doc, "payoffs");
    if (!payoffs.is_array() || payoffs.size() != counts.size()) {
      throw InvalidArgument("payoffs: expected one tensor per player");
    }
    for (int n : counts) {
      if (n < 1) throw InvalidArgument("strategy_counts: entries must be >= 1");
    }
    std::vector<Tensor> tensors;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      tensors.push_back(
          ParseNested(payoffs[i], counts, "payoffs[" + std::to_string(i) + "]"));
    }
    return NormalFormGame(std::move(counts), std::move(tensors));
  }
  if (kind == "graphical") {
    GraphicalGame game(ParseCounts(Field(doc, "strategy_counts")));
    const json& edges = Field(doc, "edges");
    if (!edges.is_array()) throw InvalidArgument("edges: expected an array");
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const std::string field = "edges[" + std::to_string(e) + "]";
      const json& edge = edges[e];
      if (!edge.is_object()) throw InvalidArgument(field + ": expected object");
      const int i = Integer(Field(edge, "i"), field + ".i");
      const int k = Integer(Field(edge, "k"), field + ".k");
      if (i < 0 || k < 0 || i >= game.num_players() ||
          k >= game.num_players() || i == k) {
        throw InvalidArgument(field + ": invalid player pair (" +
                              std::to_string(i) + "," + std::to_string(k) +
                              ")");
      }
      if (edge.contains("H_ik")) {
        game.SetEdge(i, k, ParseMatrix(edge.at("H_ik"), field + ".H_ik"));
      }
      if (edge.contains("H_ki")) {
        game.SetEdge(k, i, ParseMatrix(edge.at("H_ki"), field + ".H_ki"));
      }
    }
    return game;
  }
  throw InvalidArgument("kind: unknown game kind '" + kind + "'");
}

Game LoadGameFile(const std::string& path) {
  return ParseGame(ReadTextFile(path));
}

std::string GameToJson(const Game& game) {
  nlohmann::ordered_json doc;
  if (const auto* g = std::get_if<BimatrixGame>(&game)) {
    doc["kind"] = "bimatrix";
    doc["A"] = MatrixJson(g->A());
    doc["B"] = MatrixJson(g->B());
  } else if (const auto* g = std::get_if<NormalFormGame>(&game)) {
    doc["kind"] = "normal_form";
    doc["strategy_counts"] = g->strategy_counts();
    json payoffs = json::array();
    for (int i = 0; i < g->num_players(); ++i) {
      payoffs.push_back(NestedJson(g->payoffs(i), 0, 0));
    }
    doc["payoffs"] = std::move(payoffs);
  } else {
    const auto& h = std::get<GraphicalGame>(game);
    doc["kind"] = "graphical";
    doc["strategy_counts"] = h.strategy_counts();
    json edges = json::array();
    for (int i = 0; i < h.num_players(); ++i) {
      for (int k = i + 1; k < h.num_players(); ++k) {
        json edge;
        edge["i"] = i;
        edge["k"] = k;
        edge["H_ik"] = MatrixJson(h.Edge(i, k));
        edge["H_ki"] = MatrixJson(h.Edge(k, i));
        edges.push_back(std::move(edge));
      }
    }
    doc["edges"] = std::move(edges);
  }
  return doc.dump();
}

DualPoint ParseDualPoint(std::string_view json_text,
                         std::span<const int> strategy_counts) {
  const std::string trimmed(json_text);
  if (trimmed == "uniform") return DualPoint::Zeros(strategy_counts);
  return DualPointFromJson(ParseJson(json_text), strategy_counts, "point");
}

std::vector<DualPoint> ParseDualPoints(std::string_view json_text,
                                       std::span<const int> strategy_counts) {
  const json doc = ParseJson(json_text);
  const json& list =
      (doc.is_object() && doc.contains("points")) ? doc.at("points") : doc;
  if (!list.is_array()) throw InvalidArgument("points: expected an array");
  std::vector<DualPoint> points;
  for (std::size_t t = 0; t < list.size(); ++t) {
    points.push_back(DualPointFromJson(list[t], strategy_counts,
                                       "points[" + std::to_string(t) + "]"));
  }
  return points;
}

Tensor ParseTensor(std::string_view json_text, std::span<const int> shape) {
  const json doc = ParseJson(json_text);
  if (doc.is_object()) {
    return ParseNested(Field(doc, "potential"), shape, "potential");
  }
  return ParseNested(doc, shape, "potential");
}

}  // namespace chaoscope
