"""Load object descriptions from JSON.

Kinds: ``topology``, ``preorder``, ``lattice``, ``ring`` and ``template``.
Structural mistakes raise ParseError naming the offending field; objects
that parse but break their axioms raise ValidationError (or the specific
subclass, such as NotClosedUnderUnion, when one exists).
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import (
    AxiomViolation,
    InvalidOrder,
    InvalidTemplate,
    NotAnIdeal,
    ParseError,
    StoneDualError,
    TopologyError,
    ValidationError,
)
from .order import FiniteLattice, FinitePreorder, lattice_from_pairs, mask_of
from .rings import FiniteCommRing, cyclic, from_tables, ideal_as_ring, is_ideal, product
from .symbolic import Block, BlockKind, ChainTemplate, chain_block, fin, preset
from .topology import FiniteSpace, alexandroff, validate_topology

KINDS = ("topology", "preorder", "lattice", "ring", "template")


def _field(obj: dict, name: str, path: str, kind=list):
    if name not in obj:
        raise ParseError(f"missing field {name!r}", field=f"{path}{name}")
    value = obj[name]
    if kind is not None and not isinstance(value, kind):
        raise ParseError(f"field {name!r} must be a {kind.__name__}", field=f"{path}{name}")
    return value


def _label(x):
    # JSON has no tuples; lists used as labels become tuples so they hash
    return tuple(_label(y) for y in x) if isinstance(x, list) else x


def _labels(values: list, path: str) -> list:
    out = [_label(v) for v in values]
    if len(set(out)) != len(out):
        raise ValidationError(f"{path}: duplicate labels")
    return out


def _pairs(values: list, path: str) -> list[tuple]:
    out = []
    for i, p in enumerate(values):
        if not isinstance(p, list) or len(p) != 2:
            raise ParseError("expected a pair [a, b]", field=f"{path}[{i}]")
        out.append((_label(p[0]), _label(p[1])))
    return out


def _known(labels: list, used, path: str) -> None:
    s = set(labels)
    for x in used:
        if x not in s:
            raise ValidationError(f"{path}: unknown label {x!r}")


def parse_topology(obj: dict, path: str = "") -> FiniteSpace:
    points = _labels(_field(obj, "points", path), path + "points")
    opens = _field(obj, "opens", path)
    for i, U in enumerate(opens):
        if not isinstance(U, list):
            raise ParseError("each open set must be a list", field=f"{path}opens[{i}]")
        _known(points, map(_label, U), f"{path}opens[{i}]")
    return validate_topology(points, [[_label(x) for x in U] for U in opens])


def parse_preorder(obj: dict, path: str = "") -> FinitePreorder:
    elements = _labels(_field(obj, "elements", path), path + "elements")
    le = _pairs(obj.get("le", []), path + "le")
    _known(elements, (x for p in le for x in p), path + "le")
    try:
        return FinitePreorder.from_pairs(elements, le)
    except InvalidOrder as e:
        raise ValidationError(str(e)) from e


def parse_lattice(obj: dict, path: str = "") -> FiniteLattice:
    elements = _labels(_field(obj, "elements", path), path + "elements")
    le = _pairs(obj.get("le", []), path + "le")
    _known(elements, (x for p in le for x in p), path + "le")
    return lattice_from_pairs(elements, le)


def parse_ring(obj: dict, path: str = "") -> FiniteCommRing:
    if "modulus" in obj:
        n = obj["modulus"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ParseError("modulus must be a positive integer", field=path + "modulus")
        return cyclic(n)
    if "product" in obj:
        parts = _field(obj, "product", path)
        if len(parts) != 2:
            raise ParseError("product takes two rings", field=path + "product")
        return product(*(parse_ring(_obj(p, f"{path}product[{i}]"), f"{path}product[{i}].") for i, p in enumerate(parts)))
    if "ideal_of" in obj:
        R = parse_ring(_obj(obj["ideal_of"], path + "ideal_of"), path + "ideal_of.")
        carrier = [_label(x) for x in _field(obj, "carrier", path)]
        _known(list(R.elements), carrier, path + "carrier")
        mask = mask_of(R.index(x) for x in carrier)
        if not is_ideal(R, mask):
            raise NotAnIdeal(f"{R.format(mask)} is not an ideal")
        return ideal_as_ring(R, mask)
    if "tables" in obj:
        t = _obj(obj["tables"], path + "tables")
        elements = _labels(_field(t, "elements", path + "tables."), path + "tables.elements")
        index = {x: i for i, x in enumerate(elements)}
        tables = []
        for name in ("add", "mul"):
            rows = _field(t, name, path + "tables.")
            try:
                tables.append([[index[_label(v)] for v in row] for row in rows])
            except (KeyError, TypeError):
                raise ParseError("table entries must be element labels", field=f"{path}tables.{name}") from None
        return from_tables(elements, *tables)
    raise ParseError("ring needs one of modulus, product, ideal_of, tables", field=path.rstrip(".") or None)


def parse_block(obj: dict, path: str) -> Block:
    name = _field(obj, "name", path, str)
    kind = _field(obj, "type", path, str)
    try:
        kind = BlockKind(kind)
    except ValueError:
        raise ParseError(f"unknown block type {kind!r}", field=path + "type") from None
    if kind is not BlockKind.FIN:
        return chain_block(name, kind)
    le = _pairs(obj.get("le", []), path + "le")
    points = [_label(x) for x in obj.get("points", [])]
    for p in le:
        for x in p:
            if x not in points:
                points.append(x)
    if not points:
        raise ParseError("finite block needs points or le", field=path + "points")
    return fin(name, points, le)


def parse_template(obj: dict, path: str = "") -> ChainTemplate:
    if "preset" in obj:
        return preset(obj["preset"])
    blocks = [parse_block(_obj(b, f"{path}blocks[{i}]"), f"{path}blocks[{i}].") for i, b in enumerate(_field(obj, "blocks", path))]
    below = _pairs(obj.get("below", []), path + "below")
    return ChainTemplate(tuple(blocks), frozenset(below))


_PARSERS = {
    "topology": parse_topology,
    "preorder": parse_preorder,
    "lattice": parse_lattice,
    "ring": parse_ring,
    "template": parse_template,
}


def _obj(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise ParseError("expected an object", field=path or None)
    return value


def parse_object(obj: Any):
    """Build the object described by an already decoded JSON value."""
    obj = _obj(obj, "")
    kind = _field(obj, "kind", "", str)
    if kind not in _PARSERS:
        raise ParseError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", field="kind")
    try:
        return _PARSERS[kind](obj)
    except (ParseError, ValidationError, TopologyError, AxiomViolation, InvalidTemplate, NotAnIdeal):
        raise
    except StoneDualError as e:
        raise ValidationError(str(e)) from e


def loads(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno) from None
    return parse_object(obj)


def load(path: str | Path):
    return loads(Path(path).read_text(encoding="utf-8"))


def as_space(obj) -> FiniteSpace:
    """Spaces as they are; preorders through their Alexandroff topology."""
    if isinstance(obj, FiniteSpace):
        return obj
    if isinstance(obj, FinitePreorder):
        return alexandroff(obj)
    raise ValidationError(f"{type(obj).__name__} is not a space")
