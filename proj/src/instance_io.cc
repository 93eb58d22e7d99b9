// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ksubmax/instance_io.h"

#include <fstream>
#include <sstream>

namespace ksubmax {

using nlohmann::json;

namespace {

json BlockToJson(const Block& block) {
  json out;
  std::visit(
      [&](const auto& body) {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, UnaryBlock>) {
          out["type"] = "unary";
          out["params"] = {{"element", body.element}, {"weights", body.weights}};
        } else if constexpr (std::is_same_v<T, CoverageBlock>) {
          out["type"] = "coverage";
          out["params"] = {{"item_weights", body.item_weights},
                           {"covers", body.covers}};
        } else if constexpr (std::is_same_v<T, TableBlock>) {
          out["type"] = "table";
          out["params"] = {{"elements", body.elements}, {"values", body.values}};
        } else {
          out["type"] = "constant";
          out["params"] = {{"value", body.value}};
        }
      },
      block.body);
  out["scale"] = block.scale;
  return out;
}

Block BlockFromJson(const json& doc) {
  const std::string type = doc.at("type").get<std::string>();
  const json& params = doc.at("params");
  Block block;
  block.scale = doc.value("scale", 1.0);
  if (type == "unary") {
    block.body = UnaryBlock{params.at("element").get<int>(),
                            params.at("weights").get<std::vector<double>>()};
  } else if (type == "coverage") {
    block.body = CoverageBlock{
        params.at("item_weights").get<std::vector<double>>(),
        params.at("covers").get<std::vector<std::vector<std::vector<int>>>>()};
  } else if (type == "table") {
    block.body = TableBlock{params.at("elements").get<std::vector<int>>(),
                            params.at("values").get<std::vector<double>>()};
  } else if (type == "constant") {
    block.body = ConstantBlock{params.at("value").get<double>()};
  } else {
    throw InstanceFormatError("unknown block type '" + type + "'");
  }
  return block;
}

}  // namespace

json ToJson(const OracleSpec& spec) {
  json doc;
  doc["version"] = 1;
  doc["n"] = spec.dims().n;
  doc["k"] = spec.dims().k;
  if (spec.is_table()) {
    doc["body"] = {{"type", "table"}, {"values", spec.table().values}};
  } else {
    json blocks = json::array();
    for (const Block& block : spec.block_sum().blocks) {
      blocks.push_back(BlockToJson(block));
    }
    doc["body"] = {{"type", "blocks"}, {"blocks", std::move(blocks)}};
  }
  return doc;
}

OracleSpec FromJson(const json& doc) {
  try {
    if (doc.at("version").get<int>() != 1) {
      throw InstanceFormatError("unsupported instance version");
    }
    const Dims dims(doc.at("n").get<int>(), doc.at("k").get<int>());
    const json& body = doc.at("body");
    const std::string type = body.at("type").get<std::string>();
    if (type == "table") {
      return OracleSpec(
          dims, ExplicitTable{body.at("values").get<std::vector<double>>()});
    }
    if (type == "blocks") {
      BlockSum sum;
      for (const json& b : body.at("blocks")) sum.blocks.push_back(BlockFromJson(b));
      return OracleSpec(dims, std::move(sum));
    }
    throw InstanceFormatError("unknown body type '" + type + "'");
  } catch (const json::exception& e) {
    throw InstanceFormatError(std::string("malformed instance: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InstanceFormatError(std::string("invalid instance: ") + e.what());
  }
}

std::string SerializeInstance(const OracleSpec& spec) {
  return ToJson(spec).dump(1) + "\n";
}

OracleSpec ParseInstance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InstanceFormatError(std::string("not valid JSON: ") + e.what());
  }
  return FromJson(doc);
}

void WriteInstanceFile(const std::string& path, const OracleSpec& spec) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << SerializeInstance(spec);
  if (!out) throw std::runtime_error("failed writing " + path);
}

OracleSpec ReadInstanceFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseInstance(buffer.str());
}

}  // namespace ksubmax
