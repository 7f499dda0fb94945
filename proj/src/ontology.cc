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

#include "texkit/ontology.h"

#include <algorithm>
#include <fstream>

#include "json.hpp"
#include "texkit/errors.h"
#include "texkit/text.h"

namespace texkit {

using nlohmann::json;

Ontology::Ontology(std::vector<OntologyType> types) {
  for (OntologyType &t : types) {
    if (t.type_id.empty()) throw ValidationError("empty type_id");
    if (t.names.empty()) {
      throw ValidationError("type " + t.type_id + " has no names");
    }
    std::string id = t.type_id;
    if (!types_.emplace(id, std::move(t)).second) {
      throw ValidationError("duplicate type_id: " + id);
    }
  }

  for (const auto &[id, t] : types_) {
    if (t.parent_id && !types_.count(*t.parent_id)) {
      throw ValidationError("type " + id + " has unknown parent " +
                            *t.parent_id);
    }
    for (const std::string &name : t.names) {
      name_index_[AsciiLower(name)].insert(id);
    }
  }

  // Depths double as the cycle check: a chain longer than the type count
  // cannot terminate at a root.
  for (const auto &[id, t] : types_) {
    int d = 0;
    const OntologyType *cur = &t;
    while (cur->parent_id) {
      if (++d > static_cast<int>(types_.size())) {
        throw ValidationError("parent cycle through type " + id);
      }
      cur = &types_.find(*cur->parent_id)->second;
    }
    depth_[id] = d;
  }
}

bool Ontology::contains(std::string_view type_id) const {
  return types_.find(type_id) != types_.end();
}

const OntologyType &Ontology::type(std::string_view type_id) const {
  auto it = types_.find(type_id);
  if (it == types_.end()) {
    throw LookupError("unknown type id: " + std::string(type_id));
  }
  return it->second;
}

const std::set<std::string> &Ontology::types_named(
    std::string_view name) const {
  static const std::set<std::string> kEmpty;
  auto it = name_index_.find(AsciiLower(name));
  return it == name_index_.end() ? kEmpty : it->second;
}

int Ontology::depth(std::string_view type_id) const {
  auto it = depth_.find(type_id);
  if (it == depth_.end()) {
    throw LookupError("unknown type id: " + std::string(type_id));
  }
  return it->second;
}

std::vector<std::string> Ontology::path(std::string_view type_id) const {
  std::vector<std::string> chain;
  const OntologyType *cur = &type(type_id);
  chain.push_back(cur->type_id);
  while (cur->parent_id) {
    cur = &type(*cur->parent_id);
    chain.push_back(cur->type_id);
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

bool Ontology::is_ancestor(std::string_view ancestor,
                           std::string_view type_id) const {
  const OntologyType *cur = &type(type_id);
  while (cur->parent_id) {
    if (*cur->parent_id == ancestor) return true;
    cur = &type(*cur->parent_id);
  }
  return false;
}

Ontology load_ontology(std::istream &in) {
  std::vector<OntologyType> types;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    OntologyType t;
    try {
      json j = json::parse(line);
      t.type_id = j.at("type_id").get<std::string>();
      if (j.contains("parent") && !j["parent"].is_null()) {
        t.parent_id = j["parent"].get<std::string>();
      }
      t.names = j.at("names").get<std::vector<std::string>>();
      if (j.contains("instances")) {
        t.sample_instances = j["instances"].get<std::vector<std::string>>();
      }
    } catch (const json::exception &e) {
      throw ParseError(std::string("bad ontology record: ") + e.what(),
                       lineno);
    }
    types.push_back(std::move(t));
  }
  return Ontology(std::move(types));
}

Ontology load_ontology(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open ontology file " + path);
  return load_ontology(in);
}

bool is_compatible(std::string_view a, std::string_view b,
                   const Ontology &ont) {
  ont.type(a);
  ont.type(b);
  return a == b || ont.is_ancestor(a, b) || ont.is_ancestor(b, a);
}

std::vector<TypeScore> score_candidate_types(
    const std::vector<std::string> &hypernyms,
    const std::vector<std::string> &members, const Ontology &ont,
    const TypeScoringWeights &weights) {
  std::set<std::string> hyper;
  for (const auto &h : hypernyms) hyper.insert(AsciiLower(h));
  std::set<std::string> member_set;
  for (const auto &m : members) member_set.insert(AsciiLower(m));
  if (hyper.empty()) return {};

  std::set<std::string> candidates;
  for (const auto &h : hyper) {
    const auto &ids = ont.types_named(h);
    candidates.insert(ids.begin(), ids.end());
  }

  std::vector<TypeScore> ranked;
  for (const std::string &id : candidates) {
    const OntologyType &t = ont.type(id);
    std::set<std::string> names;
    for (const auto &n : t.names) names.insert(AsciiLower(n));
    int name_hits = 0;
    for (const auto &n : names) name_hits += hyper.count(n);
    std::set<std::string> instances;
    for (const auto &s : t.sample_instances) instances.insert(AsciiLower(s));
    int inst_hits = 0;
    for (const auto &s : instances) inst_hits += member_set.count(s);
    double score =
        weights.name_weight * name_hits / static_cast<double>(hyper.size()) +
        weights.instance_weight * inst_hits /
            static_cast<double>(std::max<size_t>(1, instances.size()));
    ranked.push_back({id, score});
  }

  std::sort(ranked.begin(), ranked.end(),
            [&](const TypeScore &a, const TypeScore &b) {
              if (a.score != b.score) return a.score > b.score;
              int da = ont.depth(a.type_id), db = ont.depth(b.type_id);
              if (da != db) return da > db;
              return a.type_id < b.type_id;
            });
  return ranked;
}

bool IsCoarseType(std::string_view type_id) {
  constexpr std::string_view kSuffix = ".generic";
  return type_id.size() > kSuffix.size() &&
         type_id.substr(type_id.size() - kSuffix.size()) == kSuffix;
}

}  // namespace texkit
