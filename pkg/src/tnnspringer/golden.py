"""Golden files for cell atlases and the diff between them and fresh output.

Two kinds of file are kept:

``transcription``
    pairs copied by hand from a printed list, with the counts stated next to
    it and any entries already known to be doubtful (``suspect``).
    Differences are reported as ``paper-transcription mismatch``.
``atlas``
    an atlas document regenerated by this package.  Any difference is a
    ``regression``.

Words are compared after canonicalization, so ``212`` and ``121`` agree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .coxeter import WeylGroup, build_weyl
from .errors import ValidationError

__all__ = ["GoldenDiff", "load_golden", "diff_against", "golden_path", "TRANSCRIPTION_MISMATCH", "REGRESSION"]

TRANSCRIPTION_MISMATCH = "paper-transcription mismatch"
REGRESSION = "regression"


def golden_path(name: str) -> Path:
    """Path of a file shipped in the package's golden directory."""
    return Path(str(resources.files("tnnspringer") / "data" / "golden" / name))


def load_golden(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read golden file {path}: {exc}") from exc
    if doc.get("kind") not in ("transcription", "atlas"):
        raise ValidationError(f"golden file {path} has unknown kind {doc.get('kind')!r}")
    return doc


def _word(text) -> tuple[int, ...]:
    if isinstance(text, str):
        return tuple(int(ch) for ch in text)
    return tuple(int(i) for i in text)


def _canon(W: WeylGroup, word) -> tuple[int, ...]:
    word = _word(word)
    el = W.word(word)
    if len(el) != len(word):
        raise ValidationError(f"golden word {word} is not reduced")
    return el.word


def _show(pair) -> list[str]:
    return ["".join(map(str, x)) or "e" for x in pair]


@dataclass
class GoldenDiff:
    """Outcome of comparing an atlas with a golden file."""

    kind: str
    category: str
    missing: list = field(default_factory=list)   # computed, absent from the file
    extra: list = field(default_factory=list)     # in the file, not computed
    suspect: list = field(default_factory=list)   # differences already flagged in the file
    count_mismatches: list = field(default_factory=list)

    @property
    def unexplained(self) -> list:
        flagged = set(self.suspect)
        return [p for p in self.missing + self.extra if p not in flagged]

    @property
    def ok(self) -> bool:
        return not self.unexplained and not self.count_mismatches

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "category": self.category,
            "match": self.ok,
            "missing_from_golden": [_show(p) for p in self.missing],
            "extra_in_golden": [_show(p) for p in self.extra],
            "flagged_suspect": [_show(p) for p in self.suspect],
            "count_mismatches": self.count_mismatches,
        }


def _cell_pair(W: WeylGroup, cell: dict) -> tuple:
    # flag cells are compared through their (r, t) coordinates
    v, w = cell["rt"] if "rt" in cell else (cell["v"], cell["w"])
    return _canon(W, v), _canon(W, w)


def _golden_pairs(W: WeylGroup, doc: dict) -> set:
    if doc["kind"] == "atlas":
        return {_cell_pair(W, c) for c in doc["cells"]}
    return {(_canon(W, v), _canon(W, w)) for v, w in doc["pairs"]}


def diff_against(doc: dict, atlas_json: dict) -> GoldenDiff:
    """Compare a freshly built atlas document with a golden document."""
    for key in ("type", "rank", "z", "zprime", "H"):
        if key in doc and doc[key] != atlas_json.get(key, [] if key == "H" else None):
            raise ValidationError(f"golden file is for {key}={doc[key]!r}, not {atlas_json.get(key)!r}")
    W = build_weyl(atlas_json["type"], atlas_json["rank"])
    computed = {_cell_pair(W, c) for c in atlas_json["cells"]}
    golden = _golden_pairs(W, doc)
    kind = doc["kind"]
    out = GoldenDiff(kind, TRANSCRIPTION_MISMATCH if kind == "transcription" else REGRESSION,
                     missing=sorted(computed - golden), extra=sorted(golden - computed))
    if kind == "transcription":
        flagged = {(_canon(W, v), _canon(W, w)) for v, w in doc.get("suspect", {}).get("pairs", [])}
        out.suspect = sorted(flagged & (set(out.missing) | set(out.extra)))
        hist = atlas_json["dim_histogram"]
        for d, n in sorted(doc.get("stated_counts", {}).items()):
            if hist.get(d, 0) != n:
                out.count_mismatches.append(f"dim {d}: stated {n}, computed {hist.get(d, 0)}")
        stated_max = doc.get("stated_max_dim")
        if stated_max is not None and max(map(int, hist), default=0) != stated_max:
            out.count_mismatches.append(f"max dim: stated {stated_max}, computed {max(map(int, hist))}")
    elif doc.get("dim_histogram") not in (None, atlas_json["dim_histogram"]):
        out.count_mismatches.append("dim_histogram differs")
    return out
