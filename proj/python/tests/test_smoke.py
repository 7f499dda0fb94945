# Copyright 2026 The Texkit Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import os
import pathlib

import pytest

import texkit

ROOT = pathlib.Path(__file__).resolve().parents[2]
PREMIERE = "Captain Marvel was premiered in Los Angeles 22 months ago."


@pytest.fixture(scope="module")
def analyzer():
    return texkit.Analyzer(os.environ.get("TEXKIT_MODEL_DIR", ROOT / "models" / "toy"))


def entity(response, surface):
    for e in response["entity_list"]:
        if e["str"] == surface:
            return e
    return None


def test_premiere_sentence(analyzer):
    r = analyzer.analyze(PREMIERE, reference_time="2020-12-23")
    assert r["header"]["ret_code"] == "succ"
    assert entity(r, "Captain Marvel")["type"]["name"] == "work.movie"
    assert entity(r, "Los Angeles")["type"]["name"] == "loc.city"
    assert entity(r, "22 months ago")["meaning"] == {"value": [2019, 2]}


def test_response_matches_schema(analyzer):
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads((ROOT / "schemas" / "analyze_response.schema.json").read_text())
    for text in [PREMIERE, "上个月30号我在洛杉矶吃了三公斤苹果。", ""]:
        jsonschema.validate(analyzer.analyze(text, reference_time="2020-12-23"), schema)


def test_batch_and_errors(analyzer):
    r = analyzer.analyze(["a", "b", "c"])
    assert len(r["res_list"]) == 3
    bad = analyzer.analyze("x", ner={"alg": "coarse.dnn"})
    assert bad["header"]["ret_code"] == "error.unsupported_alg"


def test_match(analyzer):
    r = analyzer.match("big city", "large city")
    assert r["score"] == pytest.approx(1.0)


def test_segment_offsets_are_code_points(analyzer):
    words = analyzer.segment("我在洛杉矶", lang="chs")
    assert "洛杉矶" in [w for w, _, _ in words]
    text = "I love Los Angeles"
    for w, off, n in analyzer.segment(text, lang="en"):
        assert text[off:off + n] == w


def test_errors():
    with pytest.raises(texkit.LoadError):
        texkit.Analyzer("/nonexistent/texkit-models")
    a = texkit.Analyzer(ROOT / "models" / "toy")
    with pytest.raises(texkit.ValidationError):
        a.segment("x", lang="klingon")
