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

#ifndef CHAOSCOPE_TOOLS_REPORT_H_
#define CHAOSCOPE_TOOLS_REPORT_H_

// Deterministic JSON and CSV emission. Doubles are written with 17
// significant digits so that every value round-trips exactly.

#include <string>
#include <vector>

#include "chaoscope/certificates.h"
#include "chaoscope/game.h"
#include "json.hpp"

namespace chaoscope::tools {

using Json = nlohmann::ordered_json;

// "%.17g"; non-finite values become "nan", "inf" or "-inf".
std::string FormatDouble(double v);

// Two-space indented JSON, keys in insertion order, doubles via
// FormatDouble (non-finite doubles become null).
std::string DumpJson(const Json& doc);

Json MatrixToJson(const Matrix& m);
Json VectorToJson(const Vector& v);
Json DualPointToJson(const DualPoint& p);
// Nested arrays, first axis outermost.
Json TensorToJson(const Tensor& t);
Json CertificateToJson(const ChaosCertificate& cert);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void AddRow(const std::vector<std::string>& cells);
  std::string str() const { return text_; }

 private:
  std::size_t columns_;
  std::string text_;
};

// Writes `text` to `path`, or to `fallback` when path is empty.
void EmitText(const std::string& text, const std::string& path,
              std::ostream& fallback);

}  // namespace chaoscope::tools

#endif  // CHAOSCOPE_TOOLS_REPORT_H_
