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

// Instance files: UTF-8 JSON documents
//
//   {"version": 1, "n": ..., "k": ..., "body": BODY}
//
// where BODY is {"type": "table", "values": [...]} with values in the
// mixed-radix order of IndexOf, or {"type": "blocks", "blocks": [...]} with
// each block {"type", "params", "scale"}:
//
//   unary     params {"element": e, "weights": [w_1..w_k]}
//   coverage  params {"item_weights": [...], "covers": [[[items]..k]..n]}
//   table     params {"elements": [...], "values": [...]}
//   constant  params {"value": c}
//
// Doubles are written with round-trip precision, so write -> read is exact.

#ifndef KSUBMAX_INSTANCE_IO_H_
#define KSUBMAX_INSTANCE_IO_H_

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "ksubmax/oracle.h"

namespace ksubmax {

class InstanceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json ToJson(const OracleSpec& spec);
OracleSpec FromJson(const nlohmann::json& doc);

std::string SerializeInstance(const OracleSpec& spec);
OracleSpec ParseInstance(const std::string& text);

void WriteInstanceFile(const std::string& path, const OracleSpec& spec);
OracleSpec ReadInstanceFile(const std::string& path);

}  // namespace ksubmax

#endif  // KSUBMAX_INSTANCE_IO_H_
