// Copyright 2026 The proctensor Authors
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

#ifndef PROCTENSOR_IO_H
#define PROCTENSOR_IO_H

#include <string>

#include <json.hpp>

#include "proctensor/instruments.h"
#include "proctensor/linalg.h"
#include "proctensor/process.h"

namespace proctensor::io {

using Json = nlohmann::ordered_json;

/// {"rows": n, "cols": m, "re": [...], "im": [...]}, row-major.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json layout_to_json(const LegLayout& layout);
LegLayout layout_from_json(const Json& j);

/// {"layout": [...], "matrix": {...}}
Json process_to_json(const ProcessTensor& p);
ProcessTensor process_from_json(const Json& j);

/// {"dim": d, "elements": [matrix...]}
Json instrument_to_json(const Instrument& inst);
Instrument instrument_from_json(const Json& j, const std::string& name = "file");

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace proctensor::io

#endif  // PROCTENSOR_IO_H
