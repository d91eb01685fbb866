"""Evaluation toolkit for distant multi-talker speech recognition.

segLST arguments accept a list of segment dicts, a JSON string or a path to a
segLST file. Reports are returned as parsed JSON.
"""

import json
import os

from . import _core
from ._core import (
    INFINITE_COLLAR,
    ContractError,
    Error,
    InvalidValueError,
    LayoutError,
    MissingSessionsError,
    ParseError,
    SchemaError,
    ScoringError,
    UndefinedRateError,
    expand_numbers,
    levenshtein,
    norm_fingerprint,
    normalize_text,
    prep,
    validate,
)

__all__ = [
    "INFINITE_COLLAR",
    "ContractError",
    "Error",
    "InvalidValueError",
    "LayoutError",
    "MissingSessionsError",
    "ParseError",
    "SchemaError",
    "ScoringError",
    "UndefinedRateError",
    "corpus_stats",
    "cp_wer",
    "der",
    "expand_numbers",
    "levenshtein",
    "norm_fingerprint",
    "normalize_seglst",
    "normalize_text",
    "prep",
    "score",
    "score_diar",
    "session_activity",
    "speaker_count_errors",
    "tcp_wer",
    "validate",
]


def _as_json(seglst):
    if isinstance(seglst, (list, tuple)):
        return json.dumps(list(seglst))
    if isinstance(seglst, os.PathLike):
        with open(seglst, encoding="utf-8") as f:
            return f.read()
    return seglst


def normalize_seglst(seglst, norm_config=None):
    return json.loads(_core.normalize_seglst(_as_json(seglst), norm_config))


def cp_wer(ref, hyp):
    return _core.cp_wer(_as_json(ref), _as_json(hyp))


def tcp_wer(ref, hyp, collar=5.0):
    return _core.tcp_wer(_as_json(ref), _as_json(hyp), collar)


def der(ref, hyp, collar=0.25, score_overlap=True):
    return _core.der(_as_json(ref), _as_json(hyp), collar, score_overlap)


def speaker_count_errors(ref, hyp):
    return _core.speaker_count_errors(_as_json(ref), _as_json(hyp))


def session_activity(seglst, session_end=None):
    return _core.session_activity(_as_json(seglst), session_end)


def corpus_stats(root):
    return json.loads(_core.corpus_stats(root))


def score(ref, hyp, **options):
    return json.loads(_core.score(ref, hyp, **options))


def score_diar(ref, hyp, **options):
    return json.loads(_core.score_diar(ref, hyp, **options))
