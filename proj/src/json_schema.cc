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

#include "texkit/json_schema.h"

#include <fstream>

#include "texkit/errors.h"

namespace texkit {

using nlohmann::json;

namespace {

bool HasType(const json &v, const std::string &type) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  if (type == "number") return v.is_number();
  if (type == "integer") {
    return v.is_number_integer() ||
           (v.is_number_float() && v.get<double>() == static_cast<double>(
                                                           v.get<int64_t>()));
  }
  return false;
}

void Validate(const json &v, const json &schema, const std::string &where,
              std::vector<std::string> *errors) {
  if (!schema.is_object()) return;
  auto fail = [&](const std::string &msg) {
    errors->push_back((where.empty() ? "/" : where) + ": " + msg);
  };

  if (auto it = schema.find("type"); it != schema.end()) {
    bool ok = false;
    if (it->is_string()) {
      ok = HasType(v, *it);
    } else if (it->is_array()) {
      for (const json &t : *it) ok = ok || HasType(v, t.get<std::string>());
    }
    if (!ok) {
      fail("expected type " + it->dump());
      return;
    }
  }
  if (auto it = schema.find("enum"); it != schema.end()) {
    if (std::find(it->begin(), it->end(), v) == it->end()) {
      fail("value " + v.dump() + " not in enum");
    }
  }
  if (auto it = schema.find("const"); it != schema.end() && *it != v) {
    fail("expected " + it->dump());
  }
  if (v.is_number()) {
    double x = v.get<double>();
    if (auto it = schema.find("minimum"); it != schema.end() && x < *it) {
      fail("below minimum " + it->dump());
    }
    if (auto it = schema.find("maximum"); it != schema.end() && x > *it) {
      fail("above maximum " + it->dump());
    }
  }
  if (v.is_string()) {
    if (auto it = schema.find("minLength");
        it != schema.end() && v.get<std::string>().size() < it->get<size_t>()) {
      fail("shorter than minLength");
    }
  }
  if (v.is_array()) {
    if (auto it = schema.find("minItems");
        it != schema.end() && v.size() < it->get<size_t>()) {
      fail("fewer than " + it->dump() + " items");
    }
    if (auto it = schema.find("maxItems");
        it != schema.end() && v.size() > it->get<size_t>()) {
      fail("more than " + it->dump() + " items");
    }
    if (auto it = schema.find("items"); it != schema.end()) {
      for (size_t i = 0; i < v.size(); ++i) {
        Validate(v[i], *it, where + "/" + std::to_string(i), errors);
      }
    }
  }
  if (v.is_object()) {
    if (auto it = schema.find("required"); it != schema.end()) {
      for (const json &key : *it) {
        if (!v.contains(key.get<std::string>())) {
          fail("missing required field " + key.dump());
        }
      }
    }
    const json *props = nullptr;
    if (auto it = schema.find("properties"); it != schema.end()) props = &*it;
    auto extra = schema.find("additionalProperties");
    for (const auto &[key, value] : v.items()) {
      std::string child = where + "/" + key;
      if (props && props->contains(key)) {
        Validate(value, (*props)[key], child, errors);
      } else if (extra != schema.end()) {
        if (extra->is_boolean() && !extra->get<bool>()) {
          fail("unexpected field \"" + key + "\"");
        } else if (extra->is_object()) {
          Validate(value, *extra, child, errors);
        }
      }
    }
  }
}

}  // namespace

std::vector<std::string> ValidateJsonSchema(const json &instance,
                                            const json &schema) {
  std::vector<std::string> errors;
  Validate(instance, schema, "", &errors);
  return errors;
}

json LoadJsonFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception &e) {
    throw LoadError(path + ": " + e.what());
  }
}

}  // namespace texkit
