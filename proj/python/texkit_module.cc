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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "texkit/errors.h"
#include "texkit/segmentation.h"
#include "texkit/service.h"

namespace py = pybind11;

namespace {

class PyAnalyzer {
 public:
  explicit PyAnalyzer(const std::string &model_dir)
      : analyzer_(texkit::ModelSet::Load(model_dir)) {}

  // Request and response travel as JSON text.
  std::string Analyze(const std::string &request) const {
    py::gil_scoped_release release;
    return analyzer_.AnalyzeBody(request).body;
  }

  std::string Match(const std::string &request) const {
    py::gil_scoped_release release;
    return analyzer_.MatchBody(request).body;
  }

  std::vector<std::tuple<std::string, int, int>> Segment(
      const std::string &text, const std::string &lang) const {
    texkit::Language l = texkit::ResolveLanguage(
        text, texkit::ParseLanguage(lang));
    std::vector<std::tuple<std::string, int, int>> out;
    for (const auto &t :
         texkit::segment_words(text, l, analyzer_.models().lexicon)) {
      out.emplace_back(t.surface, t.span.offset, t.span.length);
    }
    return out;
  }

 private:
  texkit::Analyzer analyzer_;
};

}  // namespace

PYBIND11_MODULE(_texkit, m) {
  m.doc() = "Native bindings for texkit";

  auto base = py::register_exception<texkit::Error>(m, "TexkitError");
  py::register_exception<texkit::LoadError>(m, "LoadError", base.ptr());
  py::register_exception<texkit::ValidationError>(m, "ValidationError",
                                                  base.ptr());

  py::class_<PyAnalyzer>(m, "Analyzer")
      .def(py::init<const std::string &>(), py::arg("model_dir"))
      .def("analyze_json", &PyAnalyzer::Analyze, py::arg("request"))
      .def("match_json", &PyAnalyzer::Match, py::arg("request"))
      .def("segment", &PyAnalyzer::Segment, py::arg("text"),
           py::arg("lang") = "auto");
}
