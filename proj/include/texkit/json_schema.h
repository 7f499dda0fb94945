// Copyright 2026 The Texkit Authors.
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

// A small JSON Schema validator covering the keywords the bundled response
// schemas use: type, enum, const, required, properties,
// additionalProperties, items, minItems, maxItems, minimum, maximum and
// minLength.

#ifndef TEXKIT_JSON_SCHEMA_H_
#define TEXKIT_JSON_SCHEMA_H_

#include <string>
#include <vector>

#include "json.hpp"

namespace texkit {

// Returns one message per violation, each prefixed with a JSON pointer to
// the offending value. Empty means valid. Unknown keywords are ignored.
std::vector<std::string> ValidateJsonSchema(const nlohmann::json &instance,
                                            const nlohmann::json &schema);

nlohmann::json LoadJsonFile(const std::string &path);

}  // namespace texkit

#endif  // TEXKIT_JSON_SCHEMA_H_
