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

"""Python access to the texkit analyzer."""

import json
import os

from ._texkit import LoadError, TexkitError, ValidationError
from ._texkit import Analyzer as _NativeAnalyzer

__all__ = ["Analyzer", "LoadError", "TexkitError", "ValidationError"]


class Analyzer:
    """Loads a model directory and answers analyze / match requests.

    model_dir defaults to the TEXKIT_MODEL_DIR environment variable.
    """

    def __init__(self, model_dir=None):
        if model_dir is None:
            model_dir = os.environ.get("TEXKIT_MODEL_DIR")
        if not model_dir:
            raise ValueError("model_dir is required when TEXKIT_MODEL_DIR is unset")
        self._native = _NativeAnalyzer(os.fspath(model_dir))

    def analyze(self, text, **options):
        """Analyzes a string or a list of strings; returns the response dict."""
        request = {"str": text}
        if options:
            request["options"] = options
        return json.loads(self._native.analyze_json(json.dumps(request)))

    def match(self, str_a, str_b, **options):
        request = {"str_a": str_a, "str_b": str_b}
        if options:
            request["options"] = options
        return json.loads(self._native.match_json(json.dumps(request)))

    def segment(self, text, lang="auto"):
        """Returns (word, offset, length) triples; offsets count code points."""
        return self._native.segment(text, lang)
