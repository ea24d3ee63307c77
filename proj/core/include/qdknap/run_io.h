// Copyright 2026 The qdknap Authors
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

#ifndef QDKNAP_RUN_IO_H_
#define QDKNAP_RUN_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "qdknap/map_elites.h"

namespace qdknap {

// Scalars and trajectory only; the map goes to a separate snapshot CSV and
// wall time is left out so that the record is reproducible byte for byte.
nlohmann::json run_result_to_json(const RunResult& result);
RunResult run_result_from_json(const nlohmann::json& j);

// Pretty-printed with sorted keys and a trailing newline.
std::string dump_json(const nlohmann::json& j);

// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace qdknap

#endif  // QDKNAP_RUN_IO_H_
