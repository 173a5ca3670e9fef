"""Strict parsing of the JSON specification documents used by the CLI.

One document format is shared by every subcommand; unknown fields are
rejected so golden outputs stay trustworthy.  Schemas:

Group:        {"kind": "cyclic", "n": 3}
              {"kind": "product", "factors": [<group>, ...]}
              {"kind": "symmetric", "n": 3}
              {"kind": "table", "mul": [[...]]}

Group-set:    {"kind": "standard_semitorsor", "group": <group>, "n": 2}
              {"kind": "table", "group": <group>, "act": [[...]]}

Bundle:       {"kind": "winding", "group": <group>, "k": 2}
              {"kind": "flat", "mode": "group", "fiber": <group>,
               "loops": 1, "clutching": [<entry>, ...]}
              {"kind": "flat", "mode": "gspace", "fiber": <group-set>,
               "loops": 1, "clutching": [<entry>, ...]}
Clutching:    {"aut": [...]}     image table of a group automorphism (group mode)
              {"perm": [...]}    carrier permutation (trivial-group fibers)
              {"table": [...]}   explicit equivariant bijection table
              {"wreath": {"g": [...], "perm": [...]}}   via the wreath
                                 isomorphism (standard semi-torsor fibers)

Circle bundle: {"k": 2, "loops": 1,
                "generators": [{"angles": ["0", "1/3"], "perm": [1, 0]}]}

Path:          {"step": "1/100",
                "points": [{"angle": "p/q", "sheet": 0}, ...]}

Permutations are 0-based forward image tables throughout.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .bundles import FlatBundle, flat_bundle, group_bundle_over_circle
from .errors import SchemaError
from .frames import WreathElement
from .groups import FiniteGroup, GroupHom, from_mul_table, make_cyclic, make_direct_product, make_symmetric
from .gset_aut import wreath_to_aut
from .gsets import EquivariantMap, GSet, identity_hom, make_gset, standard_semitorsor
from .u1 import Angle, FiberPoint, U1FlatBundle, U1Wreath


def _require_keys(obj: Any, where: str, required: set[str], optional: set[str] = frozenset()) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object, got {type(obj).__name__}")
    keys = set(obj.keys())
    missing = required - keys
    unknown = keys - required - optional
    if missing:
        raise SchemaError(f"{where}: missing fields {sorted(missing)}")
    if unknown:
        raise SchemaError(f"{where}: unknown fields {sorted(unknown)}")
    return obj


def _int(obj: Any, where: str) -> int:
    if not isinstance(obj, int) or isinstance(obj, bool):
        raise SchemaError(f"{where}: expected an integer")
    return obj


def _int_list(obj: Any, where: str) -> list[int]:
    if not isinstance(obj, list):
        raise SchemaError(f"{where}: expected a list of integers")
    return [_int(x, where) for x in obj]


def parse_group(obj: Any, where: str = "group") -> FiniteGroup:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SchemaError(f"{where}: expected an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "cyclic":
        _require_keys(obj, where, {"kind", "n"})
        return make_cyclic(_int(obj["n"], f"{where}.n"))
    if kind == "product":
        _require_keys(obj, where, {"kind", "factors"})
        factors = obj["factors"]
        if not isinstance(factors, list) or not factors:
            raise SchemaError(f"{where}.factors: expected a non-empty list")
        groups = [parse_group(f, f"{where}.factors[{i}]") for i, f in enumerate(factors)]
        out = groups[0]
        for other in groups[1:]:
            out = make_direct_product(out, other)
        return out
    if kind == "symmetric":
        _require_keys(obj, where, {"kind", "n"})
        return make_symmetric(_int(obj["n"], f"{where}.n"))
    if kind == "table":
        _require_keys(obj, where, {"kind", "mul"})
        try:
            return from_mul_table(obj["mul"], label="G")
        except ValueError as exc:
            raise SchemaError(f"{where}.mul: {exc}") from exc
    raise SchemaError(f"{where}.kind: unknown kind {kind!r}")


def parse_gset(obj: Any, where: str = "gset") -> GSet:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SchemaError(f"{where}: expected an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "standard_semitorsor":
        _require_keys(obj, where, {"kind", "group", "n"})
        G = parse_group(obj["group"], f"{where}.group")
        return standard_semitorsor(G, _int(obj["n"], f"{where}.n"))
    if kind == "table":
        _require_keys(obj, where, {"kind", "group", "act"})
        G = parse_group(obj["group"], f"{where}.group")
        try:
            return make_gset(G, obj["act"])
        except ValueError as exc:
            raise SchemaError(f"{where}.act: {exc}") from exc
    raise SchemaError(f"{where}.kind: unknown kind {kind!r}")


def _parse_clutching_gspace(entry: Any, fiber: GSet, where: str) -> EquivariantMap:
    if not isinstance(entry, dict) or len(entry) != 1:
        raise SchemaError(f"{where}: expected exactly one of perm/table/wreath")
    (key, value), = entry.items()
    if key == "perm":
        if fiber.group.order != 1:
            raise SchemaError(f"{where}.perm: bare permutations need a trivial-group fiber")
        table = _int_list(value, f"{where}.perm")
    elif key == "table":
        table = _int_list(value, f"{where}.table")
    elif key == "wreath":
        spec = _require_keys(value, f"{where}.wreath", {"g", "perm"})
        G = fiber.group
        n = fiber.size // G.order
        if n < 1 or fiber != standard_semitorsor(G, n):
            raise SchemaError(f"{where}.wreath: fiber is not a standard semi-torsor")
        w = WreathElement(
            G,
            tuple(_int_list(spec["g"], f"{where}.wreath.g")),
            tuple(_int_list(spec["perm"], f"{where}.wreath.perm")),
        )
        try:
            return wreath_to_aut(w, n, G)
        except ValueError as exc:
            raise SchemaError(f"{where}.wreath: {exc}") from exc
    else:
        raise SchemaError(f"{where}: unknown clutching form {key!r}")
    try:
        from .gsets import equivariant_map

        return equivariant_map(fiber, fiber, identity_hom(fiber.group), table)
    except ValueError as exc:
        raise SchemaError(f"{where}: {exc}") from exc


def parse_bundle(obj: Any, where: str = "bundle") -> FlatBundle:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SchemaError(f"{where}: expected an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "winding":
        _require_keys(obj, where, {"kind", "group", "k"})
        from .bundles import finite_winding_bundle

        G = parse_group(obj["group"], f"{where}.group")
        k = _int(obj["k"], f"{where}.k")
        if k < 1:
            raise SchemaError(f"{where}.k: must be >= 1")
        return finite_winding_bundle(G, k)
    if kind != "flat":
        raise SchemaError(f"{where}.kind: unknown kind {kind!r}")
    spec = _require_keys(obj, where, {"kind", "mode", "fiber", "loops", "clutching"})
    mode = spec["mode"]
    loops = _int(spec["loops"], f"{where}.loops")
    clutching = spec["clutching"]
    if not isinstance(clutching, list) or len(clutching) != loops:
        raise SchemaError(f"{where}.clutching: expected a list of {loops} entries")
    if mode == "group":
        G = parse_group(spec["fiber"], f"{where}.fiber")
        if loops != 1:
            raise SchemaError(f"{where}.loops: group mode supports a single circle")
        entry = clutching[0]
        if not isinstance(entry, dict) or set(entry) != {"aut"}:
            raise SchemaError(f"{where}.clutching[0]: group mode expects {{'aut': [...]}}")
        image = _int_list(entry["aut"], f"{where}.clutching[0].aut")
        try:
            return group_bundle_over_circle(G, GroupHom(G, G, tuple(image)))
        except ValueError as exc:
            raise SchemaError(f"{where}.clutching[0].aut: {exc}") from exc
    if mode == "gspace":
        fiber = parse_gset(spec["fiber"], f"{where}.fiber")
        maps = [
            _parse_clutching_gspace(entry, fiber, f"{where}.clutching[{i}]")
            for i, entry in enumerate(clutching)
        ]
        try:
            return flat_bundle(fiber, maps, mode="gspace")
        except ValueError as exc:
            raise SchemaError(f"{where}: {exc}") from exc
    raise SchemaError(f"{where}.mode: unknown mode {mode!r}")


def parse_angle(obj: Any, where: str) -> Angle:
    if isinstance(obj, int) and not isinstance(obj, bool):
        return Angle(obj)
    if isinstance(obj, str):
        try:
            return Angle.parse(obj)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"{where}: bad rational {obj!r}") from exc
    raise SchemaError(f"{where}: expected an integer or a 'p/q' string")


def parse_u1_bundle(obj: Any, where: str = "u1") -> U1FlatBundle:
    spec = _require_keys(obj, where, {"k", "loops", "generators"})
    k = _int(spec["k"], f"{where}.k")
    loops = _int(spec["loops"], f"{where}.loops")
    gens = spec["generators"]
    if not isinstance(gens, list) or len(gens) != loops:
        raise SchemaError(f"{where}.generators: expected a list of {loops} entries")
    out = []
    for i, g in enumerate(gens):
        entry = _require_keys(g, f"{where}.generators[{i}]", {"angles", "perm"})
        angles = entry["angles"]
        if not isinstance(angles, list) or len(angles) != k:
            raise SchemaError(f"{where}.generators[{i}].angles: expected {k} entries")
        perm = tuple(_int_list(entry["perm"], f"{where}.generators[{i}].perm"))
        if sorted(perm) != list(range(k)):
            raise SchemaError(f"{where}.generators[{i}].perm: not a permutation of 0..{k-1}")
        out.append(
            U1Wreath(
                tuple(parse_angle(a, f"{where}.generators[{i}].angles[{j}]") for j, a in enumerate(angles)),
                perm,
            )
        )
    try:
        return U1FlatBundle(k, loops, tuple(out))
    except ValueError as exc:
        raise SchemaError(f"{where}: {exc}") from exc


def parse_fiber_point(obj: Any, k: int, where: str = "point") -> FiberPoint:
    spec = _require_keys(obj, where, {"angle", "sheet"})
    sheet = _int(spec["sheet"], f"{where}.sheet")
    if not (0 <= sheet < k):
        raise SchemaError(f"{where}.sheet: out of range for {k} sheets")
    return FiberPoint(parse_angle(spec["angle"], f"{where}.angle"), sheet)


def parse_path(obj: Any, k: int, where: str = "path") -> tuple[list[FiberPoint], Fraction]:
    spec = _require_keys(obj, where, {"step", "points"})
    if isinstance(spec["step"], str):
        try:
            step = Fraction(spec["step"])
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"{where}.step: bad rational") from exc
    elif isinstance(spec["step"], int) and not isinstance(spec["step"], bool):
        step = Fraction(spec["step"])
    else:
        raise SchemaError(f"{where}.step: expected an integer or a 'p/q' string")
    if step <= 0:
        raise SchemaError(f"{where}.step: must be positive")
    pts = spec["points"]
    if not isinstance(pts, list) or len(pts) < 2:
        raise SchemaError(f"{where}.points: need at least two samples")
    return [parse_fiber_point(p, k, f"{where}.points[{i}]") for i, p in enumerate(pts)], step


def parse_word(text: str, loops: int) -> tuple[int, ...]:
    """Parse a loop word like ``1,-2,1`` (commas or spaces); empty means identity."""
    text = text.strip()
    if not text:
        return ()
    parts = text.replace(",", " ").split()
    try:
        letters = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise SchemaError(f"word: not an integer sequence: {text!r}") from exc
    for letter in letters:
        if letter == 0 or abs(letter) > loops:
            raise SchemaError(f"word: letter {letter} outside +-1..+-{loops}")
    return letters


def load_document(arg: str) -> Any:
    """Load a JSON document from inline text, a file path, or '-' for stdin."""
    import sys
    from pathlib import Path

    if arg.strip().startswith("{"):
        text = arg
    elif arg == "-":
        text = sys.stdin.read()
    else:
        path = Path(arg)
        if not path.exists():
            raise SchemaError(f"document not found: {arg}")
        text = path.read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
