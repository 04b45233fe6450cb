"""Workspace files: named inputs for the command-line front end.

A workspace is one JSON document defining groups, actions, lattices,
cocycles, and reduction inputs, cross-referenced by name.  Everything is
resolved and validated at load time, before any command runs; commands
then look objects up by name, falling back to the built-in corpus for
names the file does not define.

Schema (all sections optional, all names must be unique per section)::

    {
      "format": 1,
      "groups":   {name: {"points": int, "generators": [[int, ...], ...],
                          "labels": [str, ...]?}},
      "actions":  {name: {"actor": group, "target": group,
                          "generator_images": [[int, ...], ...]}},
      "lattices": {name: {"group": group-or-"semidirect:<action>",
                          "rank": int, "generator_matrices": [matrix, ...]}},
      "cocycles": {name: {"action": action, "values": [int, ...]}},
      "reductions": {name: {"hf": group, "gamma": group, "action": action,
                            "t_hat": lattice, "gtor_hat": lattice,
                            "d": int?}}
    }

A matrix is ``{"rows": int, "cols": int, "entries": [[int-or-string]]}``;
entries may be decimal strings so arbitrarily large values survive JSON
readers with small number types.  A lattice over ``semidirect:<action>``
lists one generator matrix per generator of the inner group followed by
one per generator of the acting group.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .corpus import builtin_group, builtin_lattice, builtin_reduction
from .errors import InvalidCocycle, UnknownName, WorkspaceError
from .groups import (
    Cocycle,
    FiniteGroup,
    GroupAction,
    SemidirectProduct,
    group_from_generators,
    semidirect_product,
    validate_cocycle,
)
from .intlinalg import IntMatrix
from .lattices import GammaLattice, lattice_from_action
from .reduction import ReductionInput, reduction_input

__all__ = [
    "Workspace",
    "load_workspace",
    "empty_workspace",
    "resolve_group",
    "resolve_action",
    "resolve_lattice",
    "resolve_cocycle",
    "resolve_reduction",
]


@dataclass
class Workspace:
    """Named objects from one workspace file (or nothing, for builtins only)."""

    path: Optional[str] = None
    groups: dict[str, FiniteGroup] = field(default_factory=dict)
    actions: dict[str, GroupAction] = field(default_factory=dict)
    products: dict[str, SemidirectProduct] = field(default_factory=dict)
    lattices: dict[str, GammaLattice] = field(default_factory=dict)
    cocycles: dict[str, Cocycle] = field(default_factory=dict)
    reductions: dict[str, ReductionInput] = field(default_factory=dict)


def empty_workspace() -> Workspace:
    return Workspace()


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise WorkspaceError(message)


def _as_int(value: object, where: str) -> int:
    if isinstance(value, bool):
        raise WorkspaceError(f"{where}: expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value, 10)
        except ValueError:
            raise WorkspaceError(f"{where}: {value!r} is not a decimal integer") from None
    raise WorkspaceError(f"{where}: expected an integer, got {type(value).__name__}")


def _as_section(doc: dict, key: str) -> dict:
    section = doc.get(key, {})
    _require(isinstance(section, dict), f"section {key!r} must be an object")
    for name in section:
        _require(isinstance(name, str) and name, f"section {key!r} has a non-string name")
        _require(
            isinstance(section[name], dict), f"{key}/{name}: definition must be an object"
        )
    return section


def _parse_int_list(obj: object, where: str) -> list[int]:
    _require(isinstance(obj, list), f"{where}: expected a list")
    return [_as_int(x, where) for x in obj]  # type: ignore[union-attr]


def _parse_matrix(obj: object, where: str) -> IntMatrix:
    _require(isinstance(obj, dict), f"{where}: a matrix must be an object")
    assert isinstance(obj, dict)
    for key in ("rows", "cols", "entries"):
        _require(key in obj, f"{where}: matrix is missing {key!r}")
    rows = _as_int(obj["rows"], f"{where}/rows")
    cols = _as_int(obj["cols"], f"{where}/cols")
    entries = obj["entries"]
    _require(isinstance(entries, list), f"{where}/entries: expected a list of rows")
    parsed = [_parse_int_list(row, f"{where}/entries") for row in entries]
    _require(len(parsed) == rows, f"{where}: expected {rows} rows, got {len(parsed)}")
    for row in parsed:
        _require(len(row) == cols, f"{where}: expected {cols} columns, got {len(row)}")
    return IntMatrix.from_rows(parsed, cols=cols)


def _load_groups(section: dict) -> dict[str, FiniteGroup]:
    out = {}
    for name, entry in section.items():
        where = f"groups/{name}"
        _require("points" in entry and "generators" in entry, f"{where}: needs points and generators")
        points = _as_int(entry["points"], f"{where}/points")
        _require(points >= 1, f"{where}: points must be >= 1")
        gens_obj = entry["generators"]
        _require(isinstance(gens_obj, list) and gens_obj, f"{where}: generators must be a nonempty list")
        gens = [_parse_int_list(g, f"{where}/generators") for g in gens_obj]
        for g in gens:
            _require(len(g) == points, f"{where}: each generator must list {points} images")
        letters = None
        if "labels" in entry:
            labels_obj = entry["labels"]
            _require(
                isinstance(labels_obj, list)
                and len(labels_obj) == len(gens)
                and all(isinstance(s, str) for s in labels_obj),
                f"{where}/labels: expected one string per generator",
            )
            letters = [str(s) for s in labels_obj]
        out[name] = group_from_generators(gens, generator_letters=letters)
    return out


def _load_actions(section: dict, ws: Workspace) -> None:
    for name, entry in section.items():
        where = f"actions/{name}"
        for key in ("actor", "target", "generator_images"):
            _require(key in entry, f"{where}: missing {key!r}")
        actor = resolve_group(ws, str(entry["actor"]))
        target = resolve_group(ws, str(entry["target"]))
        images_obj = entry["generator_images"]
        _require(isinstance(images_obj, list), f"{where}/generator_images: expected a list")
        images = [_parse_int_list(img, f"{where}/generator_images") for img in images_obj]
        action = GroupAction.from_generator_images(actor, target, images)
        ws.actions[name] = action
        ws.products[name] = semidirect_product(action)


def _load_lattices(section: dict, ws: Workspace) -> None:
    for name, entry in section.items():
        where = f"lattices/{name}"
        for key in ("group", "rank", "generator_matrices"):
            _require(key in entry, f"{where}: missing {key!r}")
        group_name = entry["group"]
        _require(isinstance(group_name, str), f"{where}/group: expected a name")
        if group_name.startswith("semidirect:"):
            action_name = group_name[len("semidirect:") :]
            if action_name not in ws.products:
                raise UnknownName(f"{where}: no action named {action_name!r} in the workspace")
            group = ws.products[action_name].group
        else:
            group = resolve_group(ws, group_name)
        rank = _as_int(entry["rank"], f"{where}/rank")
        mats_obj = entry["generator_matrices"]
        _require(isinstance(mats_obj, list), f"{where}/generator_matrices: expected a list")
        mats = [_parse_matrix(mat, f"{where}/generator_matrices") for mat in mats_obj]
        ws.lattices[name] = lattice_from_action(group, rank, mats, name)


def _load_cocycles(section: dict, ws: Workspace) -> None:
    for name, entry in section.items():
        where = f"cocycles/{name}"
        for key in ("action", "values"):
            _require(key in entry, f"{where}: missing {key!r}")
        action = resolve_action(ws, str(entry["action"]))
        values = _parse_int_list(entry["values"], f"{where}/values")
        try:
            cocycle = Cocycle(action, tuple(values))
        except ValueError as exc:
            raise WorkspaceError(f"{where}: {exc}") from exc
        check = validate_cocycle(cocycle)
        if not check.ok:
            raise InvalidCocycle(f"{where}: cocycle law fails at pair {check.witness}")
        ws.cocycles[name] = cocycle


def _load_reductions(section: dict, ws: Workspace) -> None:
    for name, entry in section.items():
        where = f"reductions/{name}"
        for key in ("hf", "gamma", "action", "t_hat", "gtor_hat"):
            _require(key in entry, f"{where}: missing {key!r}")
        hf = resolve_group(ws, str(entry["hf"]))
        gamma = resolve_group(ws, str(entry["gamma"]))
        action = resolve_action(ws, str(entry["action"]))
        t_hat = resolve_lattice(ws, str(entry["t_hat"]))
        gtor_hat = resolve_lattice(ws, str(entry["gtor_hat"]))
        d = _as_int(entry["d"], f"{where}/d") if "d" in entry else None
        ws.reductions[name] = reduction_input(hf, gamma, action, t_hat, gtor_hat, d)


def load_workspace(path: str) -> Workspace:
    """Parse and validate a workspace file; raises WorkspaceError/UnknownName
    or the underlying validator's error on bad definitions."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise WorkspaceError(f"cannot read workspace {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise WorkspaceError(f"workspace {path!r} is not valid JSON: {exc}") from exc
    _require(isinstance(doc, dict), "workspace document must be a JSON object")
    _require("format" in doc, 'workspace is missing the "format" field')
    _require(doc["format"] == 1, f'unsupported workspace format {doc["format"]!r}')
    known = {"format", "groups", "actions", "lattices", "cocycles", "reductions"}
    for key in doc:
        _require(key in known, f"unknown workspace section {key!r}")

    ws = Workspace(path=path)
    ws.groups = _load_groups(_as_section(doc, "groups"))
    _load_actions(_as_section(doc, "actions"), ws)
    _load_lattices(_as_section(doc, "lattices"), ws)
    _load_cocycles(_as_section(doc, "cocycles"), ws)
    _load_reductions(_as_section(doc, "reductions"), ws)
    return ws


def resolve_group(ws: Workspace, name: str) -> FiniteGroup:
    if name in ws.groups:
        return ws.groups[name]
    try:
        return builtin_group(name)
    except UnknownName:
        raise UnknownName(f"no group named {name!r} in the workspace or the built-ins") from None


def resolve_action(ws: Workspace, name: str) -> GroupAction:
    if name in ws.actions:
        return ws.actions[name]
    raise UnknownName(f"no action named {name!r} in the workspace")


def resolve_lattice(ws: Workspace, name: str) -> GammaLattice:
    if name in ws.lattices:
        return ws.lattices[name]
    try:
        return builtin_lattice(name)
    except UnknownName:
        raise UnknownName(f"no lattice named {name!r} in the workspace or the built-ins") from None


def resolve_cocycle(ws: Workspace, name: str) -> Cocycle:
    if name in ws.cocycles:
        return ws.cocycles[name]
    raise UnknownName(f"no cocycle named {name!r} in the workspace")


def resolve_reduction(ws: Workspace, name: str) -> ReductionInput:
    if name in ws.reductions:
        return ws.reductions[name]
    try:
        return builtin_reduction(name)
    except UnknownName:
        raise UnknownName(
            f"no reduction input named {name!r} in the workspace or the built-ins"
        ) from None
