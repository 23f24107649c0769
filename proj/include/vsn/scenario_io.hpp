// Copyright 2026 The vsnsim Authors
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

#ifndef VSN_SCENARIO_IO_HPP
#define VSN_SCENARIO_IO_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "vsn/scenario.hpp"

namespace vsn {

using Json = nlohmann::ordered_json;

// Instance files store radio powers in watts for exact round-tripping;
// loading also accepts *_dbm spellings. Generator configs are written in dBm.
Json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const Json& j);

void save_scenario(const Scenario& scenario, const std::string& path);
Scenario load_scenario(const std::string& path);

Json generator_config_to_json(const GeneratorConfig& config);
GeneratorConfig generator_config_from_json(const Json& j);
GeneratorConfig load_generator_config(const std::string& path);

// Canonical serialized bytes (2-space indent, trailing newline). All
// determinism contracts are stated on these bytes.
std::string to_canonical_bytes(const Json& j);

// Stable 64-bit FNV-1a over the canonical bytes of a scenario with the two
// cost knobs zeroed, so sweep runs over delta/phi share one identity.
std::uint64_t scenario_base_hash(const Scenario& scenario);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Shortest decimal form that parses back to the same double; used by every
// hand-rolled text format so identical values always render identically.
std::string format_double(double v);

}  // namespace vsn

#endif  // VSN_SCENARIO_IO_HPP
