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

#include "texkit/service.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

namespace texkit {

using nlohmann::json;

namespace {

namespace fs = std::filesystem;

double MillisSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

void CheckKeys(const json &obj, const std::set<std::string> &allowed,
               const std::string &where) {
  for (const auto &[key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ApiError("error.bad_option",
                     "unknown option '" + where + key + "'");
    }
  }
}

const json &ObjectOption(const json &options, const char *key) {
  static const json kEmpty = json::object();
  auto it = options.find(key);
  if (it == options.end()) return kEmpty;
  if (!it->is_object()) {
    throw ApiError("error.bad_option",
                   std::string("option '") + key + "' must be an object");
  }
  return *it;
}

bool BoolOption(const json &obj, const char *key, bool fallback,
                const std::string &where) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean()) {
    throw ApiError("error.bad_option",
                   "option '" + where + key + "' must be a boolean");
  }
  return it->get<bool>();
}

std::string EnumOption(const json &obj, const char *key,
                       const std::string &fallback,
                       const std::set<std::string> &values,
                       const std::string &where) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_string() || !values.count(it->get<std::string>())) {
    throw ApiError("error.bad_option",
                   "bad value for option '" + where + key + "'");
  }
  return it->get<std::string>();
}

json HeaderJson(const ResultHeader &h) {
  return {{"time_cost_ms", h.time_cost_ms},
          {"core_time_cost_ms", h.core_time_cost_ms},
          {"ret_code", h.ret_code},
          {"ret_msg", h.ret_msg}};
}

json TokensJson(const std::vector<Token> &tokens) {
  json out = json::array();
  for (const Token &t : tokens) {
    out.push_back({{"str", t.surface},
                   {"hit", {t.span.offset, t.span.length}},
                   {"tag", t.pos_tag}});
  }
  return out;
}

std::string Dump(const json &j, int indent) {
  return j.dump(indent, ' ', false, json::error_handler_t::replace);
}

}  // namespace

AnalyzeRequest parse_options(const json &request) {
  if (!request.is_object()) {
    throw ApiError("error.bad_request", "request body must be a JSON object");
  }
  for (const auto &[key, value] : request.items()) {
    if (key != "str" && key != "options") {
      throw ApiError("error.bad_request", "unknown field '" + key + "'");
    }
  }
  AnalyzeRequest req;
  auto str = request.find("str");
  if (str == request.end()) {
    throw ApiError("error.missing_str", "field 'str' is required");
  }
  if (str->is_string()) {
    req.items.push_back(str->get<std::string>());
  } else if (str->is_array()) {
    req.batch = true;
    for (const json &item : *str) {
      if (!item.is_string()) {
        throw ApiError("error.bad_request", "'str' items must be strings");
      }
      req.items.push_back(item.get<std::string>());
    }
  } else {
    throw ApiError("error.bad_request",
                   "'str' must be a string or an array of strings");
  }

  const json options =
      request.contains("options") ? request["options"] : json::object();
  if (!options.is_object()) {
    throw ApiError("error.bad_option", "'options' must be an object");
  }
  CheckKeys(options,
            {"input_spec", "word_seg", "pos_tagging", "ner",
             "syntactic_parsing", "srl", "reference_time"},
            "");
  ApiOptions &o = req.options;

  const json &input = ObjectOption(options, "input_spec");
  CheckKeys(input, {"lang"}, "input_spec.");
  o.lang = ParseLanguage(
      EnumOption(input, "lang", "auto", {"auto", "chs", "en"}, "input_spec."));

  const json &seg = ObjectOption(options, "word_seg");
  CheckKeys(seg, {"enable"}, "word_seg.");
  o.word_seg = BoolOption(seg, "enable", true, "word_seg.");

  const json &pos = ObjectOption(options, "pos_tagging");
  CheckKeys(pos, {"enable", "alg"}, "pos_tagging.");
  o.pos_tagging = BoolOption(pos, "enable", true, "pos_tagging.");
  o.pos_alg = EnumOption(pos, "alg", "log_linear",
                         {"log_linear", "crf", "dnn"}, "pos_tagging.");

  const json &ner = ObjectOption(options, "ner");
  CheckKeys(ner, {"enable", "alg"}, "ner.");
  o.ner = BoolOption(ner, "enable", true, "ner.");
  o.ner_alg = EnumOption(
      ner, "alg", "fine.std",
      {"coarse.crf", "coarse.dnn", "coarse.lua", "fine.std", "fine.high_acc"},
      "ner.");

  const json &syn = ObjectOption(options, "syntactic_parsing");
  CheckKeys(syn, {"enable"}, "syntactic_parsing.");
  o.syntactic_parsing = BoolOption(syn, "enable", false, "syntactic_parsing.");
  const json &srl = ObjectOption(options, "srl");
  CheckKeys(srl, {"enable"}, "srl.");
  o.srl = BoolOption(srl, "enable", false, "srl.");

  if (auto it = options.find("reference_time"); it != options.end()) {
    if (!it->is_string()) {
      throw ApiError("error.bad_option", "'reference_time' must be a string");
    }
    try {
      o.reference_time = ParseReferenceTime(it->get<std::string>());
    } catch (const ValidationError &e) {
      throw ApiError("error.bad_option", e.what());
    }
  }

  // Recognized names without an implementation fail loudly.
  if (o.pos_alg != "log_linear") {
    throw ApiError("error.unsupported_alg",
                   "pos_tagging.alg '" + o.pos_alg + "' is not available");
  }
  if (o.ner_alg != "fine.std" && o.ner_alg != "coarse.crf") {
    throw ApiError("error.unsupported_alg",
                   "ner.alg '" + o.ner_alg + "' is not available");
  }
  if (o.syntactic_parsing) {
    throw ApiError("error.unsupported_alg",
                   "syntactic parsing is not available");
  }
  if (o.srl) {
    throw ApiError("error.unsupported_alg",
                   "semantic role labeling is not available");
  }
  return req;
}

Language ResolveLanguage(std::string_view text, Language requested) {
  if (requested != Language::kAuto) return requested;
  return HanRatio(text) > 0.2 ? Language::kChinese : Language::kEnglish;
}

std::shared_ptr<const ModelSet> ModelSet::Load(const std::string &dir) {
  auto m = std::make_shared<ModelSet>();
  fs::path root(dir);
  auto has = [&](const char *name) { return fs::exists(root / name); };
  auto at = [&](const char *name) { return (root / name).string(); };

  if (!has("ontology.jsonl")) {
    throw LoadError("model directory " + dir + " has no ontology.jsonl");
  }
  m->ontology = load_ontology(at("ontology.jsonl"));
  if (has("clusters.jsonl")) m->clusters = LoadClusterIndex(at("clusters.jsonl"));
  if (has("embeddings.in.txt")) {
    m->embeddings = load_embeddings(
        at("embeddings.in.txt"),
        has("embeddings.out.txt") ? at("embeddings.out.txt") : "");
  }
  if (has("lexicon.txt")) m->lexicon = load_lexicon(at("lexicon.txt"));
  if (has("stats.tsv")) {
    m->stats = LoadCollocationStats(at("stats.tsv"));
    m->idf = IdfTable(m->stats);
  }
  if (has("synonyms.tsv")) m->synonyms = LoadSynonymTable(at("synonyms.tsv"));
  if (has("pos.model")) m->pos_en = PosModel::Load(at("pos.model"));
  if (has("pos.chs.model")) m->pos_chs = PosModel::Load(at("pos.chs.model"));
  if (has("ner.model")) m->ner_en = CoarseModel::Load(at("ner.model"));
  if (has("ner.chs.model")) m->ner_chs = CoarseModel::Load(at("ner.chs.model"));
  if (has("grammars")) {
    m->grammar_en = DeepSemantics::Load(at("grammars"), Language::kEnglish);
    m->grammar_chs = DeepSemantics::Load(at("grammars"), Language::kChinese);
  }
  return m;
}

Analyzer::Analyzer(std::shared_ptr<const ModelSet> models)
    : models_(std::move(models)) {
  if (!models_) throw ValidationError("analyzer needs models");
}

AnalysisResult Analyzer::Analyze(std::string_view text,
                                 const ApiOptions &options,
                                 const ReferenceTime &ref) const {
  const ModelSet &m = *models_;
  const Language lang = ResolveLanguage(text, options.lang);
  const bool chinese = lang == Language::kChinese;

  AnalysisResult result;
  result.norm_text = normalize_text(text);
  const std::u32string chars = DecodeUtf8(result.norm_text);

  // Segmentation and tagging always run: entity recognition needs them even
  // when they are not reported.
  std::vector<Token> words = segment_words(result.norm_text, lang, m.lexicon);
  const std::optional<PosModel> &pos = chinese ? m.pos_chs : m.pos_en;
  if (options.pos_tagging && pos) words = tag_pos(words, *pos);

  if (options.word_seg) {
    std::vector<Token> phrases =
        segment_phrases(result.norm_text, words, m.stats, m.lexicon);
    // Phrase tokens are tagged as a sequence of their own.
    if (options.pos_tagging && pos) phrases = tag_pos(phrases, *pos);
    result.word_list = words;
    result.phrase_list = std::move(phrases);
    if (!options.pos_tagging) {
      for (Token &t : result.word_list) t.pos_tag.clear();
      for (Token &t : result.phrase_list) t.pos_tag.clear();
    }
  }

  if (options.ner) {
    std::vector<EntityMention> coarse;
    const std::optional<CoarseModel> &ner = chinese ? m.ner_chs : m.ner_en;
    if (ner) coarse = tag_coarse(chars, words, *ner);
    std::vector<EntityMention> mentions;
    if (options.ner_alg == "coarse.crf") {
      mentions = std::move(coarse);
    } else {
      std::vector<EntityMention> fine = tag_fine_unsupervised(
          chars, words, m.clusters, m.embeddings, m.ontology);
      mentions = combine_hybrid(fine, coarse, m.ontology);
    }

    const DeepSemantics &grammar = chinese ? m.grammar_chs : m.grammar_en;
    std::vector<EntityMention> entities = grammar.Extract(chars, ref);
    // Grammar entities take precedence over overlapping NER mentions.
    for (EntityMention &e : mentions) {
      bool clash = std::any_of(
          entities.begin(), entities.end(),
          [&](const EntityMention &g) { return g.span.overlaps(e.span); });
      if (!clash) entities.push_back(std::move(e));
    }
    std::stable_sort(entities.begin(), entities.end(),
                     [](const EntityMention &a, const EntityMention &b) {
                       return a.span.offset < b.span.offset;
                     });
    result.entity_list = std::move(entities);
  }
  return result;
}

json ResultToJson(const AnalysisResult &result, const Ontology &ontology) {
  json entities = json::array();
  for (const EntityMention &e : result.entity_list) {
    std::string path = e.type_id;
    if (ontology.contains(e.type_id)) {
      path.clear();
      for (const std::string &t : ontology.path(e.type_id)) {
        path += (path.empty() ? "" : "/") + t;
      }
    }
    json item = {{"str", e.surface},
                 {"hit", {e.span.offset, e.span.length}},
                 {"type", {{"name", e.type_id}, {"path", path}}},
                 {"related", e.related}};
    if (e.meaning) item["meaning"] = *e.meaning;
    entities.push_back(std::move(item));
  }
  return {{"header", HeaderJson(result.header)},
          {"norm_str", result.norm_text},
          {"word_list", TokensJson(result.word_list)},
          {"phrase_list", TokensJson(result.phrase_list)},
          {"entity_list", entities},
          {"syntactic_parsing_str", ""},
          {"srl_str", ""},
          {"cat_list", json::array()}};
}

json ErrorResponse(const std::string &code, const std::string &msg) {
  AnalysisResult empty;
  empty.header.ret_code = code;
  empty.header.ret_msg = msg;
  return ResultToJson(empty, Ontology());
}

json Analyzer::AnalyzeItem(const std::string &text, const ApiOptions &options,
                           const ReferenceTime &ref) const {
  const auto start = std::chrono::steady_clock::now();
  try {
    AnalysisResult result = Analyze(text, options, ref);
    result.header.core_time_cost_ms = MillisSince(start);
    json out = ResultToJson(result, models_->ontology);
    out["header"]["time_cost_ms"] =
        std::max(MillisSince(start), result.header.core_time_cost_ms);
    return out;
  } catch (const EncodingError &e) {
    return ErrorResponse("error.bad_text", e.what());
  }
}

json Analyzer::HandleAnalyze(const json &request) const {
  const auto start = std::chrono::steady_clock::now();
  const bool batch_shape = request.is_object() && request.contains("str") &&
                           request["str"].is_array();
  AnalyzeRequest req;
  try {
    req = parse_options(request);
  } catch (const ApiError &e) {
    json err = ErrorResponse(e.code(), e.what());
    if (!batch_shape) return err;
    return {{"header", err["header"]}, {"res_list", json::array()}};
  }
  const ReferenceTime ref = req.options.reference_time
                                ? *req.options.reference_time
                                : ReferenceTime::Now();
  if (!req.batch) return AnalyzeItem(req.items[0], req.options, ref);

  json list = json::array();
  double core = 0;
  for (const std::string &item : req.items) {
    list.push_back(AnalyzeItem(item, req.options, ref));
    core += list.back()["header"]["core_time_cost_ms"].get<double>();
  }
  ResultHeader header;
  header.core_time_cost_ms = core;
  header.time_cost_ms = std::max(MillisSince(start), core);
  return {{"header", HeaderJson(header)}, {"res_list", list}};
}

json Analyzer::HandleMatch(const json &request) const {
  const auto start = std::chrono::steady_clock::now();
  auto error = [&](const std::string &code, const std::string &msg) {
    ResultHeader h;
    h.ret_code = code;
    h.ret_msg = msg;
    return json{{"header", HeaderJson(h)},
                {"score", 0.0},
                {"alignment", json::array()}};
  };
  if (!request.is_object()) {
    return error("error.bad_request", "request body must be a JSON object");
  }
  for (const char *key : {"str_a", "str_b"}) {
    auto it = request.find(key);
    if (it == request.end()) {
      return error(std::string("error.missing_") + key,
                   std::string("field '") + key + "' is required");
    }
    if (!it->is_string()) {
      return error("error.bad_request",
                   std::string("'") + key + "' must be a string");
    }
  }
  for (const auto &[key, value] : request.items()) {
    if (key != "str_a" && key != "str_b" && key != "options") {
      return error("error.bad_request", "unknown field '" + key + "'");
    }
  }

  MatchOptions mo;
  Language lang = Language::kAuto;
  try {
    const json options =
        request.contains("options") ? request["options"] : json::object();
    if (!options.is_object()) {
      throw ApiError("error.bad_option", "'options' must be an object");
    }
    CheckKeys(options, {"input_spec", "alg", "link_floor", "use_idf"}, "");
    const json &input = ObjectOption(options, "input_spec");
    CheckKeys(input, {"lang"}, "input_spec.");
    lang = ParseLanguage(EnumOption(input, "lang", "auto",
                                    {"auto", "chs", "en"}, "input_spec."));
    std::string alg =
        EnumOption(options, "alg", "linkage", {"linkage", "esim"}, "");
    if (alg != "linkage") {
      throw ApiError("error.unsupported_alg", "alg '" + alg +
                                                  "' is not available");
    }
    if (auto it = options.find("link_floor"); it != options.end()) {
      if (!it->is_number() || *it < 0 || *it > 1) {
        throw ApiError("error.bad_option", "'link_floor' must be in [0, 1]");
      }
      mo.link_floor = it->get<double>();
    }
    mo.use_idf = BoolOption(options, "use_idf", false, "");
    mo.idf = &models_->idf;
  } catch (const ApiError &e) {
    return error(e.code(), e.what());
  }

  const std::string a = request["str_a"], b = request["str_b"];
  const auto core_start = std::chrono::steady_clock::now();
  MatchResult r;
  try {
    r = match_score(a, b, models_->embeddings, models_->synonyms, lang, mo);
  } catch (const EncodingError &e) {
    return error("error.bad_text", e.what());
  }
  ResultHeader h;
  h.core_time_cost_ms = MillisSince(core_start);
  h.time_cost_ms = std::max(MillisSince(start), h.core_time_cost_ms);
  json alignment = json::array();
  for (const AlignmentLink &l : r.alignment) {
    alignment.push_back({{"a", l.a}, {"b", l.b}, {"weight", l.weight}});
  }
  return {{"header", HeaderJson(h)}, {"score", r.score},
          {"alignment", alignment}};
}

Analyzer::HttpReply Analyzer::AnalyzeBody(std::string_view body,
                                          int indent) const {
  json request = json::parse(body, nullptr, false);
  if (request.is_discarded()) {
    return {400, Dump(ErrorResponse("error.bad_json", "malformed JSON body"),
                      indent)};
  }
  return {200, Dump(HandleAnalyze(request), indent)};
}

Analyzer::HttpReply Analyzer::MatchBody(std::string_view body,
                                        int indent) const {
  json request = json::parse(body, nullptr, false);
  if (request.is_discarded()) {
    ResultHeader h;
    h.ret_code = "error.bad_json";
    h.ret_msg = "malformed JSON body";
    json err = {{"header", HeaderJson(h)},
                {"score", 0.0},
                {"alignment", json::array()}};
    return {400, Dump(err, indent)};
  }
  return {200, Dump(HandleMatch(request), indent)};
}

ServiceConfig LoadServiceConfig(const std::string &path) {
  ServiceConfig c;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open config " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw LoadError("config " + path + " is not a JSON object");
    }
    try {
      for (const auto &[key, value] : j.items()) {
        if (key == "model_dir") {
          c.model_dir = value.get<std::string>();
        } else if (key == "host") {
          c.host = value.get<std::string>();
        } else if (key == "port") {
          c.port = value.get<int>();
        } else if (key == "max_body_bytes") {
          c.max_body_bytes = value.get<size_t>();
        } else if (key == "threads") {
          c.threads = value.get<int>();
        } else {
          throw ValidationError("unknown config key '" + key + "'");
        }
      }
    } catch (const json::exception &e) {
      throw ValidationError(std::string("bad config value: ") + e.what());
    }
  }
  auto env_int = [](const char *name, long long fallback) -> long long {
    const char *v = std::getenv(name);
    if (!v || !*v) return fallback;
    char *end = nullptr;
    long long x = std::strtoll(v, &end, 10);
    if (*end != '\0' || x < 0) {
      throw ValidationError(std::string("bad value for ") + name);
    }
    return x;
  };
  if (const char *d = std::getenv("TEXKIT_MODEL_DIR"); d && *d) {
    c.model_dir = d;
  }
  c.port = static_cast<int>(env_int("TEXKIT_PORT", c.port));
  c.max_body_bytes =
      static_cast<size_t>(env_int("TEXKIT_MAX_BODY", c.max_body_bytes));
  c.threads = static_cast<int>(env_int("TEXKIT_THREADS", c.threads));
  if (c.port < 0 || c.port > 65535) throw ValidationError("bad port");
  if (c.threads < 1) throw ValidationError("threads must be >= 1");
  return c;
}

}  // namespace texkit
