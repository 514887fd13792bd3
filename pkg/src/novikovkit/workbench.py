"""JSON definition files for structure constants.

A workbench file names its basis spaces and lists operations
(``{"e1 e2": {"e2": "1"}}``), cooperations (``{"e1": {"e2 e2": "1"}}``),
bilinear forms (Gram matrices), gradings and 2-tensors.  Scalars are exact:
integers or ``"p/q"`` strings.  Emission is canonical, so
``emit(parse(emit(w))) == emit(w)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import jsonschema

from .core import BasisSpace, BilinearOp, CoOp, FormDef, Tensor, scalar

FORMAT = "novikovkit/1"

_SCALAR = {"oneOf": [{"type": "integer"},
                     {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*\d+)?\s*$"}]}
_LABEL = r"^[^\s]+$"
_VECTOR = {"type": "object", "additionalProperties": _SCALAR}

SCHEMA = {
    "type": "object",
    "required": ["kind", "spaces"],
    "additionalProperties": False,
    "properties": {
        "format": {"const": FORMAT},
        "name": {"type": "string"},
        "kind": {"type": "string"},
        "description": {"type": "string"},
        "spaces": {
            "type": "object",
            "minProperties": 1,
            "additionalProperties": {
                "type": "array", "minItems": 1, "uniqueItems": True,
                "items": {"type": "string", "pattern": _LABEL},
            },
        },
        "operations": {
            "type": "object",
            "additionalProperties": {
                "type": "object", "required": ["space", "table"], "additionalProperties": False,
                "properties": {"space": {"type": "string"},
                               "table": {"type": "object", "additionalProperties": _VECTOR}},
            },
        },
        "cooperations": {
            "type": "object",
            "additionalProperties": {
                "type": "object", "required": ["space", "table"], "additionalProperties": False,
                "properties": {"space": {"type": "string"},
                               "table": {"type": "object", "additionalProperties": _VECTOR}},
            },
        },
        "forms": {
            "type": "object",
            "additionalProperties": {
                "type": "object", "required": ["space", "matrix"], "additionalProperties": False,
                "properties": {
                    "space": {"type": "string"},
                    "matrix": {"type": "array", "items": {"type": "array", "items": _SCALAR}},
                    "grading_shift": {"type": "integer"},
                },
            },
        },
        "gradings": {
            "type": "object",
            "additionalProperties": {
                "type": "object", "required": ["space", "degrees"], "additionalProperties": False,
                "properties": {"space": {"type": "string"},
                               "degrees": {"type": "array", "items": {"type": "integer"}}},
            },
        },
        "tensors": {
            "type": "object",
            "additionalProperties": {
                "type": "object", "required": ["space", "arity", "terms"],
                "additionalProperties": False,
                "properties": {"space": {"type": "string"},
                               "arity": {"type": "integer", "minimum": 1},
                               "terms": _VECTOR},
            },
        },
        "metadata": {"type": "object"},
    },
}


class WorkbenchError(ValueError):
    """A definition file is malformed; ``path`` locates the offending entry."""

    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


@dataclass(frozen=True)
class NamedTensor:
    space: BasisSpace
    tensor: Tensor


@dataclass(frozen=True)
class Grading:
    space: BasisSpace
    degrees: tuple


@dataclass
class WorkbenchFile:
    kind: str
    spaces: dict = field(default_factory=dict)
    operations: dict = field(default_factory=dict)
    cooperations: dict = field(default_factory=dict)
    forms: dict = field(default_factory=dict)
    gradings: dict = field(default_factory=dict)
    tensors: dict = field(default_factory=dict)
    name: str = ""
    description: str = ""
    metadata: dict = field(default_factory=dict)

    def role(self, name: str):
        for group in (self.operations, self.cooperations, self.forms, self.tensors,
                      self.gradings):
            if name in group:
                return group[name]
        raise KeyError(name)

    def has(self, name: str) -> bool:
        try:
            self.role(name)
        except KeyError:
            return False
        return True

    def roles(self) -> set:
        return (set(self.operations) | set(self.cooperations) | set(self.forms)
                | set(self.tensors) | set(self.gradings))


def _pointer(parts) -> str:
    return "/" + "/".join(str(p) for p in parts)


def _scalar_at(value, path) -> Fraction:
    try:
        return scalar(value)
    except (ValueError, TypeError) as exc:
        raise WorkbenchError(str(exc), path) from None


def _space_at(spaces: dict, name, path) -> BasisSpace:
    if name not in spaces:
        raise WorkbenchError(f"unknown space {name!r}", path)
    return spaces[name]


def _key(space: BasisSpace, text: str, arity: int, path: str) -> tuple:
    labels = text.split()
    if len(labels) != arity:
        raise WorkbenchError(f"expected {arity} basis labels, got {text!r}", path)
    try:
        return tuple(space.index(l) for l in labels)
    except KeyError as exc:
        raise WorkbenchError(exc.args[0], path) from None


def _vector(space, raw: dict, arity: int, path: str) -> Tensor:
    terms = {}
    for text, c in raw.items():
        terms[_key(space, text, arity, f"{path}/{text}")] = _scalar_at(c, f"{path}/{text}")
    return Tensor(terms, arity)


def from_dict(data) -> WorkbenchFile:
    """Validate and build; raises WorkbenchError naming the JSON path."""
    try:
        jsonschema.validate(data, SCHEMA)
    except jsonschema.ValidationError as exc:
        raise WorkbenchError(exc.message, _pointer(exc.absolute_path)) from None
    from .kinds import KINDS

    if data["kind"] not in KINDS:
        raise WorkbenchError(f"unknown structure kind {data['kind']!r}", "/kind")
    spaces = {}
    for name, labels in data["spaces"].items():
        spaces[name] = BasisSpace(name, tuple(labels))
    wb = WorkbenchFile(kind=data["kind"], spaces=spaces, name=data.get("name", ""),
                       description=data.get("description", ""),
                       metadata=dict(data.get("metadata", {})))
    for role, spec in data.get("operations", {}).items():
        path = f"/operations/{role}"
        space = _space_at(spaces, spec["space"], path + "/space")
        table = {}
        for text, vec in spec["table"].items():
            key = _key(space, text, 2, f"{path}/table/{text}")
            t = _vector(space, vec, 1, f"{path}/table/{text}")
            if t:
                table[key] = t
        wb.operations[role] = BilinearOp(space, table, role)
    for role, spec in data.get("cooperations", {}).items():
        path = f"/cooperations/{role}"
        space = _space_at(spaces, spec["space"], path + "/space")
        table = {}
        for text, vec in spec["table"].items():
            (i,) = _key(space, text, 1, f"{path}/table/{text}")
            t = _vector(space, vec, 2, f"{path}/table/{text}")
            if t:
                table[i] = t
        wb.cooperations[role] = CoOp(space, table, role)
    for role, spec in data.get("forms", {}).items():
        path = f"/forms/{role}"
        space = _space_at(spaces, spec["space"], path + "/space")
        rows = spec["matrix"]
        if len(rows) != space.dim or any(len(r) != space.dim for r in rows):
            raise WorkbenchError(f"matrix must be {space.dim}x{space.dim}", path + "/matrix")
        matrix = tuple(tuple(_scalar_at(c, f"{path}/matrix/{i}/{j}") for j, c in enumerate(row))
                       for i, row in enumerate(rows))
        wb.forms[role] = FormDef(space, matrix, spec.get("grading_shift"))
    for role, spec in data.get("gradings", {}).items():
        path = f"/gradings/{role}"
        space = _space_at(spaces, spec["space"], path + "/space")
        if len(spec["degrees"]) != space.dim:
            raise WorkbenchError(f"need {space.dim} degrees", path + "/degrees")
        wb.gradings[role] = Grading(space, tuple(spec["degrees"]))
    for role, spec in data.get("tensors", {}).items():
        path = f"/tensors/{role}"
        space = _space_at(spaces, spec["space"], path + "/space")
        wb.tensors[role] = NamedTensor(space, _vector(space, spec["terms"], spec["arity"],
                                                      path + "/terms"))
    clashes = [r for r in wb.roles()
               if sum(r in g for g in (wb.operations, wb.cooperations, wb.forms,
                                       wb.tensors, wb.gradings)) > 1]
    if clashes:
        raise WorkbenchError(f"role names used twice: {', '.join(sorted(clashes))}")
    return wb


def parse(text: str) -> WorkbenchFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WorkbenchError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: "
                             f"{exc.msg}") from None
    return from_dict(data)


def load(path) -> WorkbenchFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise WorkbenchError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse(text)
    except WorkbenchError as exc:
        raise WorkbenchError(f"{path}: {exc}") from None


def _fmt(c: Fraction) -> str:
    return str(c)


def _label_key(space: BasisSpace, key) -> str:
    return " ".join(space.labels[i] for i in key)


def _vector_dict(space, t: Tensor) -> dict:
    return {_label_key(space, k): _fmt(c) for k, c in t.items()}


def to_dict(wb: WorkbenchFile) -> dict:
    out: dict = {"format": FORMAT, "kind": wb.kind,
                 "spaces": {n: list(s.labels) for n, s in wb.spaces.items()}}
    if wb.name:
        out["name"] = wb.name
    if wb.description:
        out["description"] = wb.description
    if wb.operations:
        out["operations"] = {
            role: {"space": op.space.name,
                   "table": {_label_key(op.space, k): _vector_dict(op.space, v)
                             for k, v in op.table.items()}}
            for role, op in wb.operations.items()}
    if wb.cooperations:
        out["cooperations"] = {
            role: {"space": c.space.name,
                   "table": {c.space.labels[k]: _vector_dict(c.space, v)
                             for k, v in c.table.items()}}
            for role, c in wb.cooperations.items()}
    if wb.forms:
        out["forms"] = {}
        for role, f in wb.forms.items():
            entry = {"space": f.space.name, "matrix": [[_fmt(c) for c in row] for row in f.matrix]}
            if f.grading_shift is not None:
                entry["grading_shift"] = f.grading_shift
            out["forms"][role] = entry
    if wb.gradings:
        out["gradings"] = {role: {"space": g.space.name, "degrees": list(g.degrees)}
                           for role, g in wb.gradings.items()}
    if wb.tensors:
        out["tensors"] = {role: {"space": t.space.name, "arity": t.tensor.arity or 2,
                                 "terms": _vector_dict(t.space, t.tensor)}
                          for role, t in wb.tensors.items()}
    if wb.metadata:
        out["metadata"] = wb.metadata
    return out


def dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def emit(wb: WorkbenchFile) -> str:
    return dumps(to_dict(wb))


def workbench_for(kind: str, name: str = "", **roles) -> WorkbenchFile:
    """Assemble a file from structures; spaces are collected from the roles."""
    wb = WorkbenchFile(kind=kind, name=name)
    for role, obj in roles.items():
        if isinstance(obj, BilinearOp):
            wb.operations[role] = obj
        elif isinstance(obj, CoOp):
            wb.cooperations[role] = obj
        elif isinstance(obj, FormDef):
            wb.forms[role] = obj
        elif isinstance(obj, NamedTensor):
            wb.tensors[role] = obj
        elif isinstance(obj, Grading):
            wb.gradings[role] = obj
        else:
            raise TypeError(f"cannot store {type(obj).__name__} as {role!r}")
        space = obj.space
        known = wb.spaces.get(space.name)
        if known is not None and known != space:
            raise WorkbenchError(f"two different spaces named {space.name!r}")
        wb.spaces[space.name] = space
    return wb
