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

#include "report.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "chaoscope/errors.h"

namespace chaoscope::tools {
namespace {

void Indent(std::string& out, int depth) { out.append(2 * depth, ' '); }

void Dump(const Json& v, int depth, std::string& out) {
  switch (v.type()) {
    case Json::value_t::null:
      out += "null";
      return;
    case Json::value_t::boolean:
      out += v.get<bool>() ? "true" : "false";
      return;
    case Json::value_t::number_integer:
      out += std::to_string(v.get<std::int64_t>());
      return;
    case Json::value_t::number_unsigned:
      out += std::to_string(v.get<std::uint64_t>());
      return;
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      out += std::isfinite(d) ? FormatDouble(d) : "null";
      return;
    }
    case Json::value_t::string:
      out += v.dump();
      return;
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : v) flat = flat && !e.is_structured();
      out += '[';
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) {
          out += '\n';
          Indent(out, depth + 1);
        }
        Dump(e, depth + 1, out);
      }
      if (!flat) {
        out += '\n';
        Indent(out, depth);
      }
      out += ']';
      return;
    }
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += '\n';
        Indent(out, depth + 1);
        out += Json(it.key()).dump();
        out += ": ";
        Dump(it.value(), depth + 1, out);
      }
      out += '\n';
      Indent(out, depth);
      out += '}';
      return;
    }
    default:
      throw Error("json: unsupported value type");
  }
}

}  // namespace

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string DumpJson(const Json& doc) {
  std::string out;
  Dump(doc, 0, out);
  out += '\n';
  return out;
}

Json MatrixToJson(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(j, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json VectorToJson(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index j = 0; j < v.size(); ++j) out.push_back(v[j]);
  return out;
}

Json DualPointToJson(const DualPoint& p) {
  Json out = Json::array();
  for (const Vector& b : p.blocks) out.push_back(VectorToJson(b));
  return out;
}

namespace {

Json NestedTensor(const Tensor& t, std::size_t axis, std::int64_t offset) {
  Json out = Json::array();
  for (int j = 0; j < t.shape()[axis]; ++j) {
    const std::int64_t flat = offset + j * t.stride(static_cast<int>(axis));
    if (axis + 1 == t.shape().size()) {
      out.push_back(t.values()[flat]);
    } else {
      out.push_back(NestedTensor(t, axis + 1, flat));
    }
  }
  return out;
}

}  // namespace

Json TensorToJson(const Tensor& t) { return NestedTensor(t, 0, 0); }

Json CertificateToJson(const ChaosCertificate& cert) {
  Json out;
  out["certified"] = true;
  out["kind"] = CertificateKindName(cert.kind);
  out["algorithm"] = AlgorithmName(cert.algorithm);
  out["route"] = cert.route;
  out["region_delta"] = cert.region_delta;
  out["epsilon"] = cert.epsilon;
  out["dual_dimension"] = cert.dual_dimension;
  out["theta"] = cert.theta;
  out["cbar_lower"] = cert.cbar_lower;
  out["lyapunov_exponent"] = cert.lyapunov_exponent;
  if (cert.theorem_exponent) {
    out["theorem_exponent"] = *cert.theorem_exponent;
  } else {
    out["theorem_exponent"] = nullptr;
  }
  return out;
}

CsvWriter::CsvWriter(std::vector<std::string> header)
    : columns_(header.size()) {
  AddRow(header);
}

void CsvWriter::AddRow(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw Error("csv: row width mismatch");
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (c > 0) text_ += ',';
    text_ += cells[c];
  }
  text_ += '\n';
}

void EmitText(const std::string& text, const std::string& path,
              std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("out: cannot open '" + path + "'");
  out << text;
  if (!out) throw Error("out: write to '" + path + "' failed");
}

}  // namespace chaoscope::tools
