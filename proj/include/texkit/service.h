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

// The analysis pipeline behind the HTTP API, request option handling and
// the JSON response layout.
//
// POST /api/analyze     {"str": "..." | [...], "options": {...}}
// POST /api/match_text  {"str_a": "...", "str_b": "...", "options": {...}}
//
// Semantic errors come back with HTTP 200 and an "error.*" ret_code in the
// header; only unparseable bodies get HTTP 400.

#ifndef TEXKIT_SERVICE_H_
#define TEXKIT_SERVICE_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "texkit/deep_semantics.h"
#include "texkit/embedding_store.h"
#include "texkit/errors.h"
#include "texkit/knowledge.h"
#include "texkit/ner.h"
#include "texkit/ontology.h"
#include "texkit/pos_tagger.h"
#include "texkit/segmentation.h"
#include "texkit/text.h"
#include "texkit/text_matching.h"

namespace texkit {

// A request-level failure reported through header.ret_code.
class ApiError : public Error {
 public:
  ApiError(std::string code, const std::string &msg)
      : Error(msg), code_(std::move(code)) {}
  const std::string &code() const { return code_; }

 private:
  std::string code_;
};

struct ApiOptions {
  Language lang = Language::kAuto;
  bool word_seg = true;
  bool pos_tagging = true;
  std::string pos_alg = "log_linear";
  bool ner = true;
  std::string ner_alg = "fine.std";
  bool syntactic_parsing = false;
  bool srl = false;
  std::optional<ReferenceTime> reference_time;
};

struct AnalyzeRequest {
  std::vector<std::string> items;
  bool batch = false;
  ApiOptions options;
};

// Throws ApiError: error.missing_str, error.bad_request, error.bad_option,
// error.unsupported_alg.
AnalyzeRequest parse_options(const nlohmann::json &request);

// "chs" when more than a fifth of the non-space characters are Han.
Language ResolveLanguage(std::string_view text, Language requested);

// Every resource an analysis may use, loaded from a model directory:
//
//   ontology.jsonl  clusters.jsonl  isa.tsv  embeddings.in.txt
//   embeddings.out.txt  lexicon.txt  stats.tsv  synonyms.tsv  pos.model
//   pos.chs.model  ner.model  ner.chs.model  grammars/
//
// Only ontology.jsonl is required; a missing file disables what needs it.
struct ModelSet {
  Ontology ontology;
  ClusterIndex clusters;
  EmbeddingStore embeddings;
  Lexicon lexicon;
  CollocationStats stats;
  SynonymTable synonyms;
  IdfTable idf;
  std::optional<PosModel> pos_en, pos_chs;
  std::optional<CoarseModel> ner_en, ner_chs;
  DeepSemantics grammar_en, grammar_chs;

  static std::shared_ptr<const ModelSet> Load(const std::string &dir);
};

// Runs the pipeline on one text. Immutable and safe to share across threads.
class Analyzer {
 public:
  explicit Analyzer(std::shared_ptr<const ModelSet> models);

  const ModelSet &models() const { return *models_; }

  // normalize, segment, tag, recognize entities, attach deep semantics.
  AnalysisResult Analyze(std::string_view text, const ApiOptions &options,
                         const ReferenceTime &ref) const;

  // Response objects. Never throw for bad requests.
  nlohmann::json HandleAnalyze(const nlohmann::json &request) const;
  nlohmann::json HandleMatch(const nlohmann::json &request) const;

  struct HttpReply {
    int status = 200;
    std::string body;
  };
  // Raw body in, serialized body out: what the server and the CLI emit.
  HttpReply AnalyzeBody(std::string_view body, int indent = -1) const;
  HttpReply MatchBody(std::string_view body, int indent = -1) const;

 private:
  nlohmann::json AnalyzeItem(const std::string &text, const ApiOptions &options,
                             const ReferenceTime &ref) const;

  std::shared_ptr<const ModelSet> models_;
};

// JSON for the eight top-level fields of one analysis.
nlohmann::json ResultToJson(const AnalysisResult &result,
                            const Ontology &ontology);
// A response with every field present and empty, carrying an error code.
nlohmann::json ErrorResponse(const std::string &code, const std::string &msg);

struct ServiceConfig {
  std::string model_dir = "models/toy";
  std::string host = "127.0.0.1";
  int port = 8080;
  size_t max_body_bytes = 1 << 20;
  int threads = 4;
};

// JSON config file ({"model_dir", "host", "port", "max_body_bytes",
// "threads"}), then TEXKIT_MODEL_DIR, TEXKIT_PORT, TEXKIT_MAX_BODY and
// TEXKIT_THREADS from the environment. An empty path skips the file.
ServiceConfig LoadServiceConfig(const std::string &path);

// Blocks serving HTTP until Stop() is called from another thread.
class Server {
 public:
  Server(const ServiceConfig &config, std::shared_ptr<const Analyzer> analyzer);
  ~Server();

  // Binds and serves; returns false when the port cannot be bound.
  bool Run();
  // Binds to an ephemeral port, returned; serve with RunBound().
  int BindEphemeral();
  void RunBound();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace texkit

#endif  // TEXKIT_SERVICE_H_
