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

// Formal entity type hierarchy. Each type has a dotted id ("work.movie"),
// an optional parent, a list of type names and a short list of sample
// instances. Types are loaded from JSON lines:
//
//   {"type_id":"work.movie","parent":"work.generic",
//    "names":["movie","film"],"instances":["Star Wars"]}

#ifndef TEXKIT_ONTOLOGY_H_
#define TEXKIT_ONTOLOGY_H_

#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace texkit {

struct OntologyType {
  std::string type_id;
  std::optional<std::string> parent_id;
  std::vector<std::string> names;
  std::vector<std::string> sample_instances;
};

struct TypeScore {
  std::string type_id;
  double score = 0;
};

struct TypeScoringWeights {
  double name_weight = 0.5;
  double instance_weight = 0.5;
};

class Ontology {
 public:
  Ontology() = default;

  // Validates and indexes a set of types. Throws ValidationError on duplicate
  // ids, empty name lists, dangling parents or parent cycles.
  explicit Ontology(std::vector<OntologyType> types);

  bool contains(std::string_view type_id) const;
  // Throws LookupError for unknown ids.
  const OntologyType &type(std::string_view type_id) const;
  size_t size() const { return types_.size(); }
  const std::map<std::string, OntologyType, std::less<>> &types() const {
    return types_;
  }

  // Types whose name list contains `name` (case-insensitive).
  const std::set<std::string> &types_named(std::string_view name) const;
  const std::map<std::string, std::set<std::string>, std::less<>> &
  name_index() const {
    return name_index_;
  }

  // Number of ancestors above the type; roots have depth 0.
  int depth(std::string_view type_id) const;
  // Ancestor chain from the root down to and including `type_id`.
  std::vector<std::string> path(std::string_view type_id) const;
  bool is_ancestor(std::string_view ancestor, std::string_view type_id) const;

 private:
  std::map<std::string, OntologyType, std::less<>> types_;
  std::map<std::string, std::set<std::string>, std::less<>> name_index_;
  std::map<std::string, int, std::less<>> depth_;
};

Ontology load_ontology(const std::string &path);
Ontology load_ontology(std::istream &in);

// Equal types, or one is an ancestor of the other.
bool is_compatible(std::string_view a, std::string_view b, const Ontology &ont);

// Ranks the types whose name lists intersect `hypernyms`:
//
//   score(t) = w_n * |names(t) & hypernyms| / |hypernyms|
//            + w_i * |instances(t) & members| / max(1, |instances(t)|)
//
// Comparison is case-insensitive. Ties go to the deeper type, then to the
// lexicographically smaller id.
std::vector<TypeScore> score_candidate_types(
    const std::vector<std::string> &hypernyms,
    const std::vector<std::string> &members, const Ontology &ont,
    const TypeScoringWeights &weights = {});

// Generic top-level types ("person.generic") count as coarse-grained.
bool IsCoarseType(std::string_view type_id);

}  // namespace texkit

#endif  // TEXKIT_ONTOLOGY_H_
