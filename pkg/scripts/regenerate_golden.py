"""Rewrite the regenerated atlas golden files from the current code.

Run after an intentional change to the enumeration; review the git diff
before committing.  The hand transcriptions are never touched.
"""

import json
from pathlib import Path

from tnnspringer.cli import atlas_document, dump, flag_atlas_document

OUT = Path(__file__).resolve().parents[1] / "src" / "tnnspringer" / "data" / "golden"

ATLASES = {
    "atlas_A2_e.json": ("A", 2, (), ()),
    "atlas_A3_121.json": ("A", 3, (1, 2, 1), ()),
    "atlas_A3_121_x3.json": ("A", 3, (1, 2, 1), (3,)),
    "atlas_A3_13.json": ("A", 3, (1, 3), ()),
    "atlas_A3_13_x2.json": ("A", 3, (1, 3), (2,)),
    "atlas_A3_1.json": ("A", 3, (1,), ()),
    "atlas_A3_2.json": ("A", 3, (2,), ()),
    "atlas_A4_1213214.json": ("A", 4, (1, 2, 1, 3, 2, 1), ()),
}
FLAG_ATLASES = {
    "flag_atlas_A2_H2_1.json": ("A", 2, (2,), (1,), ()),
    "flag_atlas_A3_H13_2.json": ("A", 3, (1, 3), (2,), ()),
}


def _strip(doc: dict) -> dict:
    doc = dict(doc)
    doc.pop("tool_version", None)
    return doc


def main() -> None:
    for name, (t, r, y, x) in ATLASES.items():
        (OUT / name).write_text(dump(_strip(atlas_document(t, r, y, x))), encoding="utf-8")
    for name, (t, r, H, y, x) in FLAG_ATLASES.items():
        (OUT / name).write_text(dump(_strip(flag_atlas_document(t, r, H, y, x))), encoding="utf-8")
    print(f"wrote {len(ATLASES) + len(FLAG_ATLASES)} files to {OUT}")


if __name__ == "__main__":
    main()
