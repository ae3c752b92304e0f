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

#include "proctensor/io.h"

#include <fstream>
#include <sstream>

#include "proctensor/error.h"

namespace proctensor::io {

Json matrix_to_json(const Matrix& m) {
    Json re = Json::array(), im = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            re.push_back(m(r, c).real());
            im.push_back(m(r, c).imag());
        }
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re")) {
        throw ValidationError("matrix JSON needs rows, cols and re");
    }
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    if (rows <= 0 || cols <= 0) throw ValidationError("matrix JSON has non-positive shape");
    const auto& re = j.at("re");
    const bool has_im = j.contains("im");
    if (re.size() != static_cast<std::size_t>(rows * cols) ||
        (has_im && j.at("im").size() != static_cast<std::size_t>(rows * cols))) {
        throw ValidationError("matrix JSON entry count does not match rows*cols");
    }
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            const auto k = static_cast<std::size_t>(r * cols + c);
            m(r, c) = Complex(re[k].get<double>(), has_im ? j.at("im")[k].get<double>() : 0.0);
        }
    return m;
}

Json layout_to_json(const LegLayout& layout) {
    Json arr = Json::array();
    for (const auto& leg : layout.legs()) {
        arr.push_back({{"label", leg.label},
                       {"dim", leg.dim},
                       {"direction", leg.direction == LegDirection::kInput ? "input" : "output"}});
    }
    return arr;
}

LegLayout layout_from_json(const Json& j) {
    if (!j.is_array()) throw ValidationError("layout JSON must be an array");
    std::vector<Leg> legs;
    for (const auto& e : j) {
        const auto dir = e.at("direction").get<std::string>();
        if (dir != "input" && dir != "output") throw ValidationError("leg direction must be input or output");
        legs.push_back({e.at("label").get<std::string>(), e.at("dim").get<int>(),
                        dir == "input" ? LegDirection::kInput : LegDirection::kOutput});
    }
    return LegLayout(std::move(legs));
}

Json process_to_json(const ProcessTensor& p) {
    Json j;
    j["layout"] = layout_to_json(p.layout());
    j["matrix"] = matrix_to_json(p.matrix());
    return j;
}

ProcessTensor process_from_json(const Json& j) {
    return ProcessTensor(matrix_from_json(j.at("matrix")), layout_from_json(j.at("layout")));
}

Json instrument_to_json(const Instrument& inst) {
    Json j;
    j["dim"] = inst.dim();
    j["elements"] = Json::array();
    for (const auto& e : inst.elements()) j["elements"].push_back(matrix_to_json(e.effect));
    return j;
}

Instrument instrument_from_json(const Json& j, const std::string& name) {
    const int d = j.at("dim").get<int>();
    std::vector<PovmElement> elements;
    int k = 0;
    for (const auto& e : j.at("elements")) {
        Matrix m = matrix_from_json(e);
        if (m.rows() != d || m.cols() != d) throw DimensionError("instrument element does not match dim");
        elements.push_back({std::move(m), name + std::to_string(++k)});
    }
    return Instrument(name, std::move(elements));
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("invalid JSON in '" + path + "': " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << text;
}

}  // namespace proctensor::io
