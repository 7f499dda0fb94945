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

#include "texkit/pos_tagger.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "texkit/errors.h"

namespace texkit {

using nlohmann::json;

const std::vector<std::string> &TagSetTags(TagSetName name) {
  static const std::vector<std::string> kPtb = {
      "CC",  "CD",  "DT",   "EX",   "FW",    "IN",    "JJ",  "JJR", "JJS",
      "LS",  "MD",  "NN",   "NNS",  "NNP",   "NNPS",  "PDT", "POS", "PRP",
      "PRP$", "RB", "RBR",  "RBS",  "RP",    "SYM",   "TO",  "UH",  "VB",
      "VBD", "VBG", "VBN",  "VBP",  "VBZ",   "WDT",   "WP",  "WP$", "WRB",
      "#",   "$",   ".",    ",",    ":",     "``",    "''",  "-LRB-", "-RRB-",
      "HYPH"};
  static const std::vector<std::string> kCtb = {
      "AD", "AS", "BA", "CC", "CD", "CS", "DEC", "DEG", "DER", "DEV", "DT",
      "ETC", "FW", "IJ", "JJ", "LB", "LC", "M",  "MSP", "NN", "NR", "NT",
      "OD", "ON", "P",  "PN", "PU", "SB", "SP", "VA",  "VC", "VE", "VV"};
  return name == TagSetName::kCtb ? kCtb : kPtb;
}

TagSetName ParseTagSetName(std::string_view name) {
  if (name == "ptb") return TagSetName::kPtb;
  if (name == "ctb") return TagSetName::kCtb;
  throw ValidationError("unknown tag set: " + std::string(name));
}

const char *TagSetNameString(TagSetName name) {
  return name == TagSetName::kCtb ? "ctb" : "ptb";
}

std::vector<LabeledSentence> ReadColumnCorpus(std::istream &in) {
  std::vector<LabeledSentence> corpus;
  LabeledSentence cur;
  std::string line;
  int lineno = 0;
  auto flush = [&] {
    if (!cur.words.empty()) corpus.push_back(std::move(cur));
    cur = LabeledSentence();
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) {
      flush();
      continue;
    }
    size_t tab = line.rfind('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw DataError("expected word<TAB>label", lineno);
    }
    cur.words.push_back(line.substr(0, tab));
    cur.labels.push_back(line.substr(tab + 1));
    cur.lines.push_back(lineno);
  }
  flush();
  return corpus;
}

std::vector<LabeledSentence> ReadColumnCorpus(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open corpus " + path);
  return ReadColumnCorpus(in);
}

void PosModel::Features(const std::vector<std::string> &words, size_t i,
                        std::string_view prev, std::string_view prev2,
                        std::vector<std::string> *out) {
  out->clear();
  const std::string &w = words[i];
  std::u32string chars = DecodeUtf8(w);
  out->push_back("b");
  out->push_back("w=" + w);
  out->push_back("lw=" + AsciiLower(w));
  for (size_t k = 1; k <= 3 && k <= chars.size(); ++k) {
    out->push_back("p" + std::to_string(k) + "=" +
                   EncodeUtf8(std::u32string_view(chars).substr(0, k)));
    out->push_back("s" + std::to_string(k) + "=" +
                   EncodeUtf8(std::u32string_view(chars).substr(
                       chars.size() - k)));
  }
  if (std::any_of(w.begin(), w.end(),
                  [](char c) { return c >= '0' && c <= '9'; })) {
    out->push_back("digit");
  }
  if (w.find('-') != std::string::npos) out->push_back("hyphen");
  out->push_back("t1=" + std::string(prev));
  out->push_back("t2=" + std::string(prev2) + "|" + std::string(prev));
  out->push_back("pw=" + (i > 0 ? AsciiLower(words[i - 1]) : "<s>"));
  out->push_back("nw=" +
                 (i + 1 < words.size() ? AsciiLower(words[i + 1]) : "</s>"));
}

void PosModel::Scores(const std::vector<std::string> &feats,
                      std::vector<double> *scores) const {
  const size_t nt = tags_.size();
  scores->assign(nt, 0.0);
  for (const std::string &f : feats) {
    auto it = features_.find(f);
    if (it == features_.end()) continue;
    const double *row = &weights_[static_cast<size_t>(it->second) * nt];
    for (size_t t = 0; t < nt; ++t) (*scores)[t] += row[t];
  }
}

std::vector<std::string> PosModel::Tag(
    const std::vector<std::string> &words) const {
  std::vector<std::string> out;
  out.reserve(words.size());
  std::vector<std::string> feats;
  std::vector<double> scores;
  for (size_t i = 0; i < words.size(); ++i) {
    std::string_view prev = i > 0 ? std::string_view(out[i - 1]) : "<s>";
    std::string_view prev2 = i > 1 ? std::string_view(out[i - 2]) : "<s>";
    Features(words, i, prev, prev2, &feats);
    Scores(feats, &scores);
    size_t best = std::max_element(scores.begin(), scores.end()) -
                  scores.begin();
    out.push_back(tags_.empty() ? "" : tags_[best]);
  }
  return out;
}

std::string PosModel::Serialize() const {
  json weights = json::object();
  const size_t nt = tags_.size();
  for (const auto &[f, id] : features_) {
    std::vector<double> row(weights_.begin() + id * nt,
                            weights_.begin() + (id + 1) * nt);
    if (std::all_of(row.begin(), row.end(), [](double x) { return x == 0; })) {
      continue;
    }
    weights[f] = row;
  }
  json j = {{"format", "texkit.pos.v1"},
            {"tag_set", TagSetNameString(tag_set_name_)},
            {"tags", tags_},
            {"weights", weights}};
  return j.dump() + "\n";
}

PosModel PosModel::Deserialize(std::string_view data) {
  PosModel m;
  try {
    json j = json::parse(data);
    if (j.at("format") != "texkit.pos.v1") {
      throw LoadError("unsupported POS model format");
    }
    m.tag_set_name_ = ParseTagSetName(j.at("tag_set").get<std::string>());
    m.tags_ = j.at("tags").get<std::vector<std::string>>();
    const size_t nt = m.tags_.size();
    for (const auto &[f, row] : j.at("weights").items()) {
      auto values = row.get<std::vector<double>>();
      if (values.size() != nt) throw LoadError("bad weight row for " + f);
      m.features_.emplace(f, static_cast<int>(m.features_.size()));
      m.weights_.insert(m.weights_.end(), values.begin(), values.end());
    }
  } catch (const json::exception &e) {
    throw LoadError(std::string("bad POS model: ") + e.what());
  }
  return m;
}

PosModel PosModel::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open POS model " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return Deserialize(ss.str());
}

class PosTrainer {
 public:
  static PosModel Train(const std::vector<LabeledSentence> &corpus,
                        TagSetName tag_set, const TrainConfig &config,
                        std::vector<double> *epoch_losses) {
    if (config.epochs < 1) throw ValidationError("epochs must be >= 1");
    if (!(config.learning_rate > 0)) {
      throw ValidationError("learning rate must be positive");
    }
    const auto &declared = TagSetTags(tag_set);
    std::set<std::string> seen;
    size_t num_tokens = 0;
    for (const LabeledSentence &s : corpus) {
      for (size_t i = 0; i < s.labels.size(); ++i) {
        if (std::find(declared.begin(), declared.end(), s.labels[i]) ==
            declared.end()) {
          throw DataError("tag '" + s.labels[i] + "' is not in the " +
                              TagSetNameString(tag_set) + " tag set",
                          i < s.lines.size() ? s.lines[i] : 0);
        }
        seen.insert(s.labels[i]);
      }
      num_tokens += s.words.size();
    }
    if (num_tokens == 0) throw DataError("empty training corpus");

    PosModel model;
    model.tag_set_name_ = tag_set;
    for (const std::string &t : declared) {
      if (seen.count(t)) model.tags_.push_back(t);
    }
    const size_t nt = model.tags_.size();
    std::unordered_map<std::string, int> tag_index;
    for (size_t t = 0; t < nt; ++t) tag_index[model.tags_[t]] = t;

    // Feature ids are assigned in corpus order, so they are reproducible.
    struct Example {
      std::vector<int> feats;
      int gold;
    };
    std::vector<Example> examples;
    examples.reserve(num_tokens);
    std::vector<std::string> feats;
    for (const LabeledSentence &s : corpus) {
      for (size_t i = 0; i < s.words.size(); ++i) {
        std::string_view prev = i > 0 ? std::string_view(s.labels[i - 1]) : "<s>";
        std::string_view prev2 = i > 1 ? std::string_view(s.labels[i - 2]) : "<s>";
        PosModel::Features(s.words, i, prev, prev2, &feats);
        Example ex;
        ex.gold = tag_index[s.labels[i]];
        for (const std::string &f : feats) {
          auto [it, added] = model.features_.emplace(
              f, static_cast<int>(model.features_.size()));
          ex.feats.push_back(it->second);
        }
        examples.push_back(std::move(ex));
      }
    }
    model.weights_.assign(model.features_.size() * nt, 0.0);

    std::mt19937_64 rng(config.seed);
    std::vector<size_t> order(examples.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::vector<double> probs(nt);
    const double lr = config.learning_rate;

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
      // Fisher-Yates with the raw engine output keeps the order identical
      // across standard library implementations.
      for (size_t i = order.size(); i > 1; --i) {
        size_t j = rng() % i;
        std::swap(order[i - 1], order[j]);
      }
      for (size_t idx : order) {
        const Example &ex = examples[idx];
        Softmax(model, ex.feats, &probs);
        for (int f : ex.feats) {
          double *row = &model.weights_[static_cast<size_t>(f) * nt];
          for (size_t t = 0; t < nt; ++t) {
            double grad = probs[t] - (static_cast<int>(t) == ex.gold ? 1 : 0);
            row[t] -= lr * (grad + config.l2 * row[t]);
          }
        }
      }
      if (epoch_losses) {
        epoch_losses->push_back(Objective(model, examples, config.l2));
      }
    }
    return model;
  }

 private:
  template <typename Examples>
  static double Objective(const PosModel &model, const Examples &examples,
                          double l2) {
    std::vector<double> probs(model.tags_.size());
    double nll = 0;
    for (const auto &ex : examples) {
      Softmax(model, ex.feats, &probs);
      nll -= std::log(std::max(probs[ex.gold], 1e-300));
    }
    double norm = 0;
    for (double w : model.weights_) norm += w * w;
    return nll / examples.size() + 0.5 * l2 * norm;
  }

  static void Softmax(const PosModel &model, const std::vector<int> &feats,
                      std::vector<double> *probs) {
    const size_t nt = model.tags_.size();
    probs->assign(nt, 0.0);
    for (int f : feats) {
      const double *row = &model.weights_[static_cast<size_t>(f) * nt];
      for (size_t t = 0; t < nt; ++t) (*probs)[t] += row[t];
    }
    double mx = *std::max_element(probs->begin(), probs->end());
    double z = 0;
    for (double &p : *probs) {
      p = std::exp(p - mx);
      z += p;
    }
    for (double &p : *probs) p /= z;
  }
};

PosModel train_log_linear(const std::vector<LabeledSentence> &corpus,
                          TagSetName tag_set, const TrainConfig &config,
                          std::vector<double> *epoch_losses) {
  return PosTrainer::Train(corpus, tag_set, config, epoch_losses);
}

std::vector<Token> tag_pos(const std::vector<Token> &tokens,
                           const PosModel &model) {
  std::vector<std::string> words;
  words.reserve(tokens.size());
  for (const Token &t : tokens) words.push_back(t.surface);
  std::vector<std::string> tags = model.Tag(words);
  std::vector<Token> out = tokens;
  for (size_t i = 0; i < out.size(); ++i) out[i].pos_tag = tags[i];
  return out;
}

}  // namespace texkit
