# Copyright 2026 The Analogy Engine Authors
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
"""Analogical entity mapping between procedural texts.

Documents and configs may be given as paths, JSON strings, or dicts.
Embeddings may be a path or a loaded :class:`EmbeddingTable`.
"""

import json
import os
from pathlib import Path

from ._core import (
    ConfigError,
    DimensionError,
    EmbeddingTable,
    Error,
    MissingKeyError,
    NormError,
    ParseError,
    ValidationError,
    __version__,
    agglomerate,
    average_precision_at_k,
    beam_search,
    canonical_key,
    cosine,
    ndcg_at_k,
    precision_at_k,
)
from . import _core

__all__ = [
    "ConfigError",
    "DimensionError",
    "EmbeddingTable",
    "Error",
    "MissingKeyError",
    "NormError",
    "ParseError",
    "ValidationError",
    "__version__",
    "agglomerate",
    "average_precision_at_k",
    "beam_search",
    "canonical_key",
    "cluster_document",
    "cosine",
    "default_config",
    "filter_document",
    "map_documents",
    "mapping_prf",
    "mine",
    "ndcg_at_k",
    "precision_at_k",
]


def _text(obj):
    """JSON text for a dict, a JSON string, or a path to a JSON file."""
    if obj is None:
        return ""
    if isinstance(obj, (dict, list)):
        return json.dumps(obj)
    if isinstance(obj, os.PathLike) or (isinstance(obj, str) and not obj.lstrip().startswith(("{", "["))):
        return Path(obj).read_text(encoding="utf-8")
    return obj


def _table(embeddings):
    if isinstance(embeddings, EmbeddingTable):
        return embeddings
    return EmbeddingTable.load(os.fspath(embeddings))


def default_config():
    return json.loads(_core.default_config())


def filter_document(document, config=None):
    """Returns (filtered document, rejections)."""
    out = json.loads(_core.filter_json(_text(document), _text(config)))
    return out["document"], out["rejections"]


def cluster_document(document, embeddings, config=None):
    return json.loads(_core.clusters_json(_text(document), _table(embeddings), _text(config)))


def map_documents(base, target, embeddings, config=None, mode=None):
    """Top-k mappings from base entities to target entities.

    The result mirrors the `analogy map` output, plus a "dot" entry holding
    the top mapping as a DOT graph.
    """
    return json.loads(
        _core.map_json(_text(base), _text(target), _table(embeddings), _text(config), mode or "")
    )


def mine(corpus, embeddings, config=None, mode=None, jobs=1):
    """Ranks every document pair. `corpus` is a directory or a list of documents.

    Returns (ranking, warnings).
    """
    if isinstance(corpus, (str, os.PathLike)) and Path(corpus).is_dir():
        docs = [p.read_text(encoding="utf-8") for p in sorted(Path(corpus).glob("*.json"))]
    else:
        docs = [_text(d) for d in corpus]
    out = json.loads(
        _core.mine_json(docs, _table(embeddings), _text(config), mode or "", jobs)
    )
    return out["ranking"], out["warnings"]


def mapping_prf(prediction, gold, k=1):
    """(precision, recall, f1) of the best of the first k predicted mappings."""
    return _core.mapping_prf(_text(prediction), _text(gold), k)
