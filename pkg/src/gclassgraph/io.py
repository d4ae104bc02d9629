"""Reading and writing groups as json documents.

A document looks like::

    {
      "name": "S3",
      "degree": 3,
      "generators": [[1, 2, 0], [1, 0, 2]],
      "normal_subgroups": {"A3": [[1, 2, 0]]}
    }

Points are 0-based. Files exported from a CAS that counts from 1 can set
``"one_based": true`` and every image array is shifted down on load.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .perm import GroupError, NotMemberError, NotNormalError, PermGroup, Permutation, check_normal


class GroupFileError(GroupError, ValueError):
    pass


@dataclass
class GroupDocument:
    name: str
    degree: int
    generators: list[list[int]]
    normal_subgroups: dict[str, list[list[int]]] = field(default_factory=dict)

    def group(self) -> PermGroup:
        return PermGroup(self.degree, [Permutation(g) for g in self.generators])

    def subgroup(self, name: str) -> PermGroup:
        if name not in self.normal_subgroups:
            known = ", ".join(sorted(self.normal_subgroups)) or "none"
            raise GroupFileError(f"no subgroup named {name!r} in {self.name!r} (known: {known})")
        return PermGroup(self.degree, [Permutation(g) for g in self.normal_subgroups[name]])

    def to_json(self) -> str:
        """Stable json text with one image array per line."""

        def gen_block(gens: list[list[int]], indent: str) -> str:
            if not gens:
                return "[]"
            rows = ",\n".join(indent + "  " + json.dumps(g) for g in gens)
            return "[\n" + rows + "\n" + indent + "]"

        lines = [
            "{",
            f'  "name": {json.dumps(self.name)},',
            f'  "degree": {self.degree},',
            f'  "generators": {gen_block(self.generators, "  ")},',
        ]
        if self.normal_subgroups:
            subs = ",\n".join(
                f"    {json.dumps(k)}: {gen_block(v, '    ')}" for k, v in self.normal_subgroups.items()
            )
            lines.append('  "normal_subgroups": {\n' + subs + "\n  }")
        else:
            lines.append('  "normal_subgroups": {}')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _image_array(raw, degree: int, where: str, shift: int) -> list[int]:
    if not isinstance(raw, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in raw):
        raise GroupFileError(f"{where}: expected a list of integers")
    images = [i - shift for i in raw]
    if len(images) != degree:
        raise GroupFileError(f"{where}: has length {len(images)}, expected degree {degree}")
    if sorted(images) != list(range(degree)):
        base = "1-based" if shift else "0-based"
        raise GroupFileError(f"{where}: not a permutation of the {base} points")
    return images


def _generator_list(raw, degree: int, what: str, shift: int) -> list[list[int]]:
    if not isinstance(raw, list):
        raise GroupFileError(f"{what}: expected a list of image arrays")
    return [_image_array(g, degree, f"{what} generator {k}", shift) for k, g in enumerate(raw)]


def parse_group_file(text: str) -> GroupDocument:
    """Parse and fully validate a group document, including normality of every named subgroup."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as err:
        raise GroupFileError(f"parse error at line {err.lineno} column {err.colno}: {err.msg}") from None
    if not isinstance(raw, dict):
        raise GroupFileError("parse error: top level must be a json object")
    for key in ("name", "degree", "generators"):
        if key not in raw:
            raise GroupFileError(f"missing field {key!r}")
    name, degree = raw["name"], raw["degree"]
    if not isinstance(name, str):
        raise GroupFileError("field 'name' must be a string")
    if not isinstance(degree, int) or isinstance(degree, bool) or degree < 1:
        raise GroupFileError("field 'degree' must be a positive integer")
    shift = 1 if raw.get("one_based", False) else 0
    gens = _generator_list(raw["generators"], degree, "group", shift)
    normals_raw = raw.get("normal_subgroups", {})
    if not isinstance(normals_raw, dict):
        raise GroupFileError("field 'normal_subgroups' must map names to generator lists")
    normals = {
        sub: _generator_list(sub_gens, degree, f"subgroup {sub!r}", shift)
        for sub, sub_gens in normals_raw.items()
    }
    doc = GroupDocument(name, degree, gens, normals)
    G = doc.group()
    for sub in normals:
        try:
            check_normal(G, doc.subgroup(sub), f"subgroup {sub!r}")
        except (NotMemberError, NotNormalError) as err:
            raise GroupFileError(str(err)) from None
    return doc


def load_group_file(path: str | Path) -> GroupDocument:
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise GroupFileError(f"cannot read {path}: {err.strerror}") from None
    try:
        return parse_group_file(text)
    except GroupFileError as err:
        raise GroupFileError(f"{path}: {err}") from None


def export_group(name: str, G: PermGroup, normals: dict[str, PermGroup] | None = None) -> GroupDocument:
    def gens(H: PermGroup) -> list[list[int]]:
        return [list(g.images) for g in H.generators]

    return GroupDocument(name, G.degree, gens(G), {k: gens(H) for k, H in (normals or {}).items()})
