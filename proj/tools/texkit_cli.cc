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

// texkit command line: offline builds, training, analysis and serving.
//
// Exit codes: 0 success, 1 runtime failure (bad data, missing files),
// 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "texkit/deep_semantics.h"
#include "texkit/embedding_store.h"
#include "texkit/errors.h"
#include "texkit/knowledge.h"
#include "texkit/ner.h"
#include "texkit/ontology.h"
#include "texkit/pos_tagger.h"
#include "texkit/segmentation.h"
#include "texkit/service.h"
#include "texkit/text.h"

namespace texkit {
namespace {

using nlohmann::json;

std::vector<std::string> ReadLines(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

void WriteFile(const std::string &path, const std::string &data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError("cannot write " + path);
  out << data;
  if (!out) throw LoadError("write failed: " + path);
}

// Lines grouped by language. With kAuto each line is routed by its Han ratio.
std::map<Language, std::vector<std::string>> SplitByLanguage(
    const std::vector<std::string> &lines, Language lang) {
  std::map<Language, std::vector<std::string>> out;
  for (const auto &l : lines) {
    std::string norm = normalize_text(l);
    if (norm.empty()) continue;
    out[ResolveLanguage(norm, lang)].push_back(std::move(norm));
  }
  return out;
}

Lexicon OptionalLexicon(const std::string &path) {
  return path.empty() ? Lexicon() : load_lexicon(path);
}

std::string DefaultModelDir() {
  const char *env = std::getenv("TEXKIT_MODEL_DIR");
  return env && *env ? env : "models/toy";
}

// ---------------------------------------------------------------------------
// build-isa / build-stats

struct CorpusArgs {
  std::string corpus;
  std::string lang = "auto";
  std::string lexicon;
  std::string out;
};

int BuildIsa(const CorpusArgs &a, int64_t min_count, int threads) {
  ExtractOptions opts;
  opts.min_count = min_count;
  opts.lexicon = OptionalLexicon(a.lexicon);
  opts.threads = threads;
  IsaMap isa;
  for (const auto &[lang, lines] :
       SplitByLanguage(ReadLines(a.corpus), ParseLanguage(a.lang))) {
    ExtractOptions per = opts;
    per.min_count = 1;
    isa.merge(extract_isa_pairs(lines, lang, per));
  }
  isa.prune(min_count);
  std::ostringstream out;
  SaveIsaMap(isa, out);
  WriteFile(a.out, out.str());
  std::cerr << "is-a pairs: " << isa.size() << "\n";
  return 0;
}

int BuildStats(const CorpusArgs &a) {
  Lexicon lex = OptionalLexicon(a.lexicon);
  CollocationStats stats;
  for (const auto &[lang, lines] :
       SplitByLanguage(ReadLines(a.corpus), ParseLanguage(a.lang))) {
    stats.merge(build_collocation_stats(lines, lang, lex));
  }
  std::ostringstream out;
  SaveCollocationStats(stats, out);
  WriteFile(a.out, out.str());
  std::cerr << "unigrams: " << stats.unigram_counts.size()
            << " bigrams: " << stats.bigram_counts.size() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// build-clusters

struct ClusterArgs {
  std::string isa;
  std::string emb_in;
  std::string emb_out;
  std::string stats;
  std::vector<std::string> surface;
  std::string ontology;
  std::string out;
  ClusterOptions options;
};

int BuildClusters(const ClusterArgs &a) {
  IsaMap isa = LoadIsaMap(a.isa);
  EmbeddingStore store = load_embeddings(a.emb_in, a.emb_out);
  CollocationStats stats;
  if (!a.stats.empty()) stats = LoadCollocationStats(a.stats);
  TermSimilarity sim(&store, &isa, &stats);
  ClusterIndex built = build_clusters(
      isa, [&](std::string_view x, std::string_view y) { return sim(x, y); },
      a.options);

  // Members are stored lowercased. Restore the spelling used in the surface
  // files or the ontology instances when exactly one is known.
  std::map<std::string, std::set<std::string>> spellings;
  auto remember = [&](const std::string &term) {
    if (term.empty() || term[0] == '#') return;
    spellings[AsciiLower(term)].insert(term);
  };
  for (const auto &path : a.surface) {
    for (const auto &l : ReadLines(path)) remember(l);
  }
  if (!a.ontology.empty()) {
    Ontology ont = load_ontology(a.ontology);
    for (const auto &[id, t] : ont.types()) {
      for (const auto &i : t.sample_instances) remember(i);
    }
  }
  std::vector<TermCluster> clusters;
  for (const auto &[id, c] : built.clusters()) {
    TermCluster copy = c;
    for (auto &m : copy.members) {
      auto it = spellings.find(m);
      if (it != spellings.end() && it->second.size() == 1) {
        m = *it->second.begin();
      }
    }
    clusters.push_back(std::move(copy));
  }
  ClusterIndex index(std::move(clusters));
  std::ostringstream out;
  SaveClusterIndex(index, out);
  WriteFile(a.out, out.str());
  std::cerr << "clusters: " << index.size() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// train-pos / train-ner

int TrainPos(const std::string &train, const std::string &tagset,
             const TrainConfig &config, const std::string &out) {
  auto corpus = ReadColumnCorpus(train);
  std::vector<double> losses;
  PosModel model =
      train_log_linear(corpus, ParseTagSetName(tagset), config, &losses);
  WriteFile(out, model.Serialize());
  for (size_t e = 0; e < losses.size(); ++e) {
    std::cerr << "epoch " << e + 1 << " loss " << losses[e] << "\n";
  }
  return 0;
}

int TrainNer(const std::string &train, const TrainConfig &config,
             const std::vector<std::string> &types, const std::string &out) {
  auto corpus = ReadColumnCorpus(train);
  CoarseModel model = train_coarse(
      corpus, config, types.empty() ? DefaultCoarseTypes() : types);
  WriteFile(out, model.Serialize());
  std::cerr << "labels: " << model.labels().size() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// eval-ner

// {"doc": id, "entity_list": [{"hit": [off, len], "type": "t" | {"name"}}]}
std::map<std::string, std::vector<EntityMention>> ReadMentionFile(
    const std::string &path) {
  std::map<std::string, std::vector<EntityMention>> docs;
  int line_no = 0;
  for (const auto &line : ReadLines(path)) {
    ++line_no;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw DataError("invalid JSON", line_no);
    }
    std::string doc = j.contains("doc") ? j["doc"].dump()
                                        : std::to_string(line_no);
    auto &mentions = docs[doc];
    for (const auto &e : j.value("entity_list", json::array())) {
      EntityMention m;
      const auto &hit = e.at("hit");
      m.span = {hit.at(0).get<int>(), hit.at(1).get<int>()};
      const auto &type = e.at("type");
      m.type_id = type.is_string() ? type.get<std::string>()
                                   : type.at("name").get<std::string>();
      m.surface = e.value("str", "");
      mentions.push_back(std::move(m));
    }
  }
  return docs;
}

int EvalNer(const std::string &gold_path, const std::string &pred_path,
            const std::string &ontology_path) {
  Ontology ont = load_ontology(ontology_path);
  auto gold = ReadMentionFile(gold_path);
  auto pred = ReadMentionFile(pred_path);
  MatchCounts total;
  for (const auto &[doc, g] : gold) {
    auto it = pred.find(doc);
    total.add(f1_variant_counts(
        g, it == pred.end() ? std::vector<EntityMention>{} : it->second, ont));
  }
  for (const auto &[doc, p] : pred) {
    if (!gold.count(doc)) total.predicted += p.size();
  }
  PrecisionRecall pr = PrecisionRecallFromCounts(total);
  std::cout << "P=" << pr.precision << " R=" << pr.recall << " F1=" << pr.f1
            << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// analyze / match / serve

// Non-zero when the response carries an error ret_code.
int ReplyExitCode(const Analyzer::HttpReply &reply) {
  if (reply.status != 200) return 1;
  json j = json::parse(reply.body, nullptr, false);
  if (j.is_discarded()) return 1;
  const json &header = j.contains("header") ? j["header"] : json::object();
  std::string code = header.value("ret_code", "succ");
  return code == "succ" ? 0 : 1;
}

int Analyze(const std::string &model_dir, const std::string &text,
            const std::string &input, const std::string &lang,
            const std::string &ref_time, bool pretty) {
  auto analyzer = std::make_shared<Analyzer>(ModelSet::Load(model_dir));
  json options = {{"input_spec", {{"lang", lang}}}};
  if (!ref_time.empty()) options["reference_time"] = ref_time;
  json request = {{"options", options}};
  if (!input.empty()) {
    json items = json::array();
    for (const auto &l : ReadLines(input)) {
      if (!l.empty()) items.push_back(l);
    }
    request["str"] = items;
  } else {
    request["str"] = text;
  }
  auto reply = analyzer->AnalyzeBody(request.dump(), pretty ? 2 : -1);
  std::cout << reply.body << "\n";
  return ReplyExitCode(reply);
}

int Match(const std::string &model_dir, const std::string &a,
          const std::string &b, const std::string &lang, bool pretty) {
  auto analyzer = std::make_shared<Analyzer>(ModelSet::Load(model_dir));
  json request = {{"str_a", a},
                  {"str_b", b},
                  {"options", {{"input_spec", {{"lang", lang}}}}}};
  auto reply = analyzer->MatchBody(request.dump(), pretty ? 2 : -1);
  std::cout << reply.body << "\n";
  return ReplyExitCode(reply);
}

int Serve(const std::string &config_path, const std::string &model_dir,
          int port) {
  ServiceConfig config = LoadServiceConfig(config_path);
  if (!model_dir.empty()) config.model_dir = model_dir;
  if (port > 0) config.port = port;
  auto analyzer = std::make_shared<Analyzer>(ModelSet::Load(config.model_dir));
  Server server(config, analyzer);
  std::cerr << "listening on " << config.host << ":" << config.port << "\n";
  return server.Run() ? 0 : 1;
}

int Main(int argc, char **argv) {
  CLI::App app{"texkit text understanding toolkit"};
  app.require_subcommand(1);

  CorpusArgs isa_args;
  int64_t min_count = 2;
  int threads = 1;
  auto *isa_cmd = app.add_subcommand("build-isa", "Extract is-a pairs");
  isa_cmd->add_option("--corpus", isa_args.corpus, "Raw text, one line each")
      ->required();
  isa_cmd->add_option("--lang", isa_args.lang, "auto | en | chs");
  isa_cmd->add_option("--lexicon", isa_args.lexicon, "Chinese word list");
  isa_cmd->add_option("--min-count", min_count);
  isa_cmd->add_option("--threads", threads);
  isa_cmd->add_option("--out", isa_args.out)->required();

  CorpusArgs stats_args;
  auto *stats_cmd =
      app.add_subcommand("build-stats", "Count unigrams and bigrams");
  stats_cmd->add_option("--corpus", stats_args.corpus)->required();
  stats_cmd->add_option("--lang", stats_args.lang);
  stats_cmd->add_option("--lexicon", stats_args.lexicon);
  stats_cmd->add_option("--out", stats_args.out)->required();

  ClusterArgs cl;
  auto *cl_cmd = app.add_subcommand("build-clusters", "Cluster hyponyms");
  cl_cmd->add_option("--isa", cl.isa)->required();
  cl_cmd->add_option("--embeddings-in", cl.emb_in)->required();
  cl_cmd->add_option("--embeddings-out", cl.emb_out);
  cl_cmd->add_option("--stats", cl.stats);
  cl_cmd->add_option("--surface", cl.surface, "Files with cased spellings");
  cl_cmd->add_option("--ontology", cl.ontology);
  cl_cmd->add_option("--threshold", cl.options.threshold);
  cl_cmd->add_option("--seed", cl.options.seed);
  cl_cmd->add_option("--min-size", cl.options.min_cluster_size);
  cl_cmd->add_option("--threads", cl.options.threads);
  cl_cmd->add_option("--out", cl.out)->required();

  std::string train, out, tagset = "ptb";
  TrainConfig tc;
  auto *pos_cmd = app.add_subcommand("train-pos", "Train the POS tagger");
  pos_cmd->add_option("--train", train)->required();
  pos_cmd->add_option("--tagset", tagset, "ptb | ctb");
  pos_cmd->add_option("--epochs", tc.epochs);
  pos_cmd->add_option("--lr", tc.learning_rate);
  pos_cmd->add_option("--l2", tc.l2);
  pos_cmd->add_option("--seed", tc.seed);
  pos_cmd->add_option("--out", out)->required();

  std::vector<std::string> types;
  auto *ner_cmd = app.add_subcommand("train-ner", "Train the coarse NER model");
  ner_cmd->add_option("--train", train)->required();
  ner_cmd->add_option("--epochs", tc.epochs);
  ner_cmd->add_option("--seed", tc.seed);
  ner_cmd->add_option("--types", types, "Coarse type ids");
  ner_cmd->add_option("--out", out)->required();

  std::string gold, pred, ontology;
  auto *eval_cmd = app.add_subcommand("eval-ner", "Score entity predictions");
  eval_cmd->add_option("--gold", gold)->required();
  eval_cmd->add_option("--pred", pred)->required();
  eval_cmd->add_option("--ontology", ontology)->required();

  std::string model_dir = DefaultModelDir(), text, input, lang = "auto",
              ref_time;
  bool pretty = false;
  auto *an_cmd = app.add_subcommand("analyze", "Analyze text");
  auto *text_opt = an_cmd->add_option("--text", text);
  an_cmd->add_option("--input", input, "One text per line")
      ->excludes(text_opt);
  an_cmd->add_option("--lang", lang);
  an_cmd->add_option("--ref-time", ref_time, "YYYY-MM-DD[THH[:MM]]");
  an_cmd->add_option("--model-dir", model_dir);
  an_cmd->add_flag("--pretty", pretty);

  std::string str_a, str_b;
  auto *match_cmd = app.add_subcommand("match", "Score a text pair");
  match_cmd->add_option("--a", str_a)->required();
  match_cmd->add_option("--b", str_b)->required();
  match_cmd->add_option("--lang", lang);
  match_cmd->add_option("--model-dir", model_dir);
  match_cmd->add_flag("--pretty", pretty);

  std::string config_path;
  std::string serve_model_dir;
  int port = 0;
  auto *serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--config", config_path);
  serve_cmd->add_option("--model-dir", serve_model_dir);
  serve_cmd->add_option("--port", port);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    ParseLanguage(lang);
    if (*isa_cmd) return BuildIsa(isa_args, min_count, threads);
    if (*stats_cmd) return BuildStats(stats_args);
    if (*cl_cmd) return BuildClusters(cl);
    if (*pos_cmd) return TrainPos(train, tagset, tc, out);
    if (*ner_cmd) return TrainNer(train, tc, types, out);
    if (*eval_cmd) return EvalNer(gold, pred, ontology);
    if (*an_cmd) {
      if (text.empty() && input.empty()) {
        std::cerr << "analyze needs --text or --input\n";
        return 2;
      }
      return Analyze(model_dir, text, input, lang, ref_time, pretty);
    }
    if (*match_cmd) return Match(model_dir, str_a, str_b, lang, pretty);
    if (*serve_cmd) return Serve(config_path, serve_model_dir, port);
  } catch (const ValidationError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace
}  // namespace texkit

int main(int argc, char **argv) { return texkit::Main(argc, argv); }
