// Copyright 2026 The scddq Authors. All rights reserved.
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

#ifndef SCDDQ_JSON_IO_H_
#define SCDDQ_JSON_IO_H_

#include <string>

#include "json.hpp"

namespace scddq {

// Parses a whole JSON document. Malformed input raises ParseError naming the
// file, line and column of the failure.
nlohmann::json ReadJsonFile(const std::string& path);
nlohmann::json ParseJsonText(const std::string& text, const std::string& origin);

// Writes `j` with two-space indentation and a trailing newline. Keys are
// emitted in sorted order so equal values produce byte-identical files.
void WriteJsonFile(const nlohmann::json& j, const std::string& path);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& text, const std::string& path);

}  // namespace scddq

#endif  // SCDDQ_JSON_IO_H_
