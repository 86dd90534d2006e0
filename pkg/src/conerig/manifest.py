"""Manifold-manifest files and deterministic report serialization.

A manifest is a JSON document declaring the curvature, the holonomy group,
a finite presentation with tagged meridians, generator images, and optional
boundary and singular-graph data.  Complex numbers serialize as [re, im]
pairs, matrices row-major; SU(2) images are accepted either as quaternions
[a, b, c, d] or as 2x2 matrices and are normalized on load.
"""
from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .cohomology import BoundaryComponent
from .errors import DomainError, ManifestError
from .liecore import (
    GROUPS,
    SL2C,
    SU2,
    Sl2cElement,
    Su2Element,
    Su2PairElement,
    validate_curvature,
)
from .spectral import SingularEdge, SingularVertex
from .words import Presentation, Representation

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Manifest:
    schema: int
    curvature: int
    group: str
    presentation: Presentation
    representation: Representation
    boundary: tuple[BoundaryComponent, ...]
    singular_edges: tuple[SingularEdge, ...]
    singular_vertices: tuple[SingularVertex, ...]
    warnings: tuple[str, ...]


def _require(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise ManifestError(path, message)


def _as_complex(value, path: str) -> complex:
    _require(
        isinstance(value, list) and len(value) == 2 and all(isinstance(x, (int, float)) for x in value),
        path,
        "expected a [re, im] pair",
    )
    return complex(value[0], value[1])


def _as_matrix(value, path: str) -> np.ndarray:
    _require(isinstance(value, list) and len(value) == 2, path, "expected a 2x2 matrix")
    rows = []
    for i, row in enumerate(value):
        _require(isinstance(row, list) and len(row) == 2, f"{path}/{i}", "expected a row of 2 entries")
        rows.append([_as_complex(row[j], f"{path}/{i}/{j}") for j in range(2)])
    return np.array(rows, dtype=complex)


def _parse_su2(value, path: str) -> Su2Element:
    if isinstance(value, list) and len(value) == 4 and all(isinstance(x, (int, float)) for x in value):
        try:
            return Su2Element(np.array(value, dtype=float))
        except DomainError as exc:
            raise ManifestError(path, str(exc)) from exc
    try:
        return Su2Element.from_matrix(_as_matrix(value, path))
    except DomainError as exc:
        raise ManifestError(path, str(exc)) from exc


def _parse_image(value, group: str, path: str):
    if group == SL2C:
        try:
            return Sl2cElement(_as_matrix(value, path))
        except DomainError as exc:
            raise ManifestError(path, str(exc)) from exc
    if group == SU2:
        return _parse_su2(value, path)
    if isinstance(value, dict):
        _require(set(value) == {"left", "right"}, path, "expected keys 'left' and 'right'")
        left, right = value["left"], value["right"]
    else:
        _require(isinstance(value, list) and len(value) == 2, path, "expected [left, right]")
        left, right = value
    return Su2PairElement(_parse_su2(left, f"{path}/left"), _parse_su2(right, f"{path}/right"))


def manifest_from_dict(doc: dict, source: str = "<manifest>") -> Manifest:
    _require(isinstance(doc, dict), "", "manifest must be a JSON object")
    _require(doc.get("schema") == SCHEMA_VERSION, "/schema", f"expected schema {SCHEMA_VERSION}")
    try:
        curvature = validate_curvature(doc.get("curvature"))
    except DomainError as exc:
        raise ManifestError("/curvature", str(exc)) from exc
    group = doc.get("group")
    _require(group in GROUPS, "/group", f"group must be one of {list(GROUPS)}")

    gens = doc.get("generators")
    _require(
        isinstance(gens, list) and gens and all(isinstance(g, str) for g in gens),
        "/generators",
        "expected a nonempty list of generator letters",
    )
    relators = doc.get("relators", [])
    _require(
        isinstance(relators, list) and all(isinstance(r, str) for r in relators),
        "/relators",
        "expected a list of word strings",
    )
    meridians_doc = doc.get("meridians", [])
    _require(isinstance(meridians_doc, list), "/meridians", "expected a list")
    meridians = []
    for k, m in enumerate(meridians_doc):
        p = f"/meridians/{k}"
        _require(isinstance(m, dict), p, "expected an object")
        _require(isinstance(m.get("word"), str), f"{p}/word", "expected a word string")
        _require(isinstance(m.get("edge_id"), int), f"{p}/edge_id", "expected an integer")
        angle = m.get("cone_angle")
        _require(isinstance(angle, (int, float)), f"{p}/cone_angle", "expected a number")
        _require(0.0 < angle <= 2.0 * math.pi, f"{p}/cone_angle", "must lie in (0, 2*pi]")
        meridians.append((m["word"], m["edge_id"], float(angle)))
    try:
        pres = Presentation.from_strings(gens, relators, meridians)
    except (DomainError, ValueError) as exc:
        raise ManifestError("/generators", str(exc)) from exc

    hol = doc.get("holonomy")
    _require(isinstance(hol, dict), "/holonomy", "expected an object keyed by generator")
    images = []
    for g in gens:
        _require(g in hol, f"/holonomy/{g}", f"missing image for generator {g!r}")
        images.append(_parse_image(hol[g], group, f"/holonomy/{g}"))
    rho = Representation(group, tuple(images))

    boundary = []
    for k, comp in enumerate(doc.get("boundary", []) or []):
        p = f"/boundary/{k}"
        _require(isinstance(comp, dict), p, "expected an object")
        _require(isinstance(comp.get("genus"), int), f"{p}/genus", "expected an integer")
        words = comp.get("generator_words")
        _require(
            isinstance(words, list) and all(isinstance(w, str) for w in words),
            f"{p}/generator_words",
            "expected a list of word strings",
        )
        try:
            boundary.append(BoundaryComponent(comp["genus"], tuple(words)))
        except DomainError as exc:
            raise ManifestError(p, str(exc)) from exc

    edges: list[SingularEdge] = []
    vertices: list[SingularVertex] = []
    graph = doc.get("singular_graph")
    if graph is not None:
        _require(isinstance(graph, dict), "/singular_graph", "expected an object")
        for k, e in enumerate(graph.get("edges", [])):
            p = f"/singular_graph/edges/{k}"
            _require(isinstance(e, dict), p, "expected an object")
            _require(isinstance(e.get("id"), int), f"{p}/id", "expected an integer")
            _require(isinstance(e.get("angle"), (int, float)), f"{p}/angle", "expected a number")
            edges.append(SingularEdge(e["id"], float(e["angle"])))
        for k, v in enumerate(graph.get("vertices", [])):
            p = f"/singular_graph/vertices/{k}"
            _require(isinstance(v, dict), p, "expected an object")
            inc = v.get("incident")
            _require(
                isinstance(inc, list) and len(inc) == 3 and all(isinstance(i, int) for i in inc),
                f"{p}/incident",
                "vertices are trivalent: expected 3 incident edge ids",
            )
            vertices.append(SingularVertex(tuple(inc)))

    warnings = _genus_relation_warnings(edges, vertices, boundary)
    return Manifest(
        schema=SCHEMA_VERSION,
        curvature=curvature,
        group=group,
        presentation=pres,
        representation=rho,
        boundary=tuple(boundary),
        singular_edges=tuple(edges),
        singular_vertices=tuple(vertices),
        warnings=tuple(warnings),
    )


def _genus_relation_warnings(edges, vertices, boundary) -> list[str]:
    """Cross-check genus = N/3 + 1 for a connected closed trivalent graph."""
    if not edges or not vertices:
        return []
    incidences = sum(1 for v in vertices for _ in v.incident)
    if incidences != 2 * len(edges):
        return []
    adjacency: dict[int, set[int]] = {}
    for k, v in enumerate(vertices):
        for e in v.incident:
            adjacency.setdefault(e, set()).add(k)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for e in vertices[v].incident:
            for w in adjacency.get(e, ()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    if len(seen) != len(vertices):
        return []
    expected = len(edges) / 3 + 1
    declared = [c.genus for c in boundary if c.genus >= 2]
    if declared and not any(math.isclose(g, expected) for g in declared):
        return [
            f"connected trivalent graph with {len(edges)} edges has boundary genus "
            f"{expected:g}; manifest declares {declared}"
        ]
    return []


def load_manifest(path) -> Manifest:
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ManifestError("", f"invalid JSON: {exc}") from exc
    return manifest_from_dict(doc, source=str(path))


# ---------------------------------------------------------------------------
# serialization


def _float_token(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError("NaN/Inf are not serializable in reports")
    return f"{x:.17g}"


def _encode(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _float_token(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        z = complex(obj)
        return f"[{_float_token(z.real)}, {_float_token(z.imag)}]"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        if hasattr(obj, "to_dict"):
            return _encode(obj.to_dict())
        return _encode(dataclasses.asdict(obj))
    if isinstance(obj, dict):
        items = sorted(obj.items(), key=lambda kv: str(kv[0]))
        body = ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in items)
        return "{" + body + "}"
    raise ValueError(f"cannot serialize {type(obj).__name__} in a report")


def report_text(report) -> str:
    """Canonical report encoding: sorted keys, 17-significant-digit floats."""
    return _encode(report) + "\n"


def write_report(report, path) -> None:
    """Write a report; identical inputs produce byte-identical files."""
    text = report_text(report)
    Path(path).write_text(text, encoding="utf-8")


def manifest_to_dict(m: Manifest) -> dict:
    """Inverse of manifest_from_dict up to numeric formatting."""
    pres = m.presentation
    doc: dict = {
        "schema": m.schema,
        "curvature": m.curvature,
        "group": m.group,
        "generators": list(pres.generators),
        "relators": list(pres.relator_texts),
        "meridians": [
            {"word": mer.text, "edge_id": mer.edge_id, "cone_angle": mer.cone_angle}
            for mer in pres.meridians
        ],
        "holonomy": {
            g: _image_payload(img, m.group)
            for g, img in zip(pres.generators, m.representation.images)
        },
    }
    if m.boundary:
        doc["boundary"] = [
            {"genus": c.genus, "generator_words": list(c.generator_words)} for c in m.boundary
        ]
    if m.singular_edges or m.singular_vertices:
        doc["singular_graph"] = {
            "edges": [{"id": e.id, "angle": e.angle} for e in m.singular_edges],
            "vertices": [{"incident": list(v.incident)} for v in m.singular_vertices],
        }
    return doc


def _image_payload(img, group: str):
    if group == SL2C:
        return [[[z.real, z.imag] for z in row] for row in np.asarray(img.mat).tolist()]
    if group == SU2:
        return [float(x) for x in img.q]
    return {
        "left": [float(x) for x in img.left.q],
        "right": [float(x) for x in img.right.q],
    }


def fixture_path(name: str) -> Path:
    """Path of a bundled example manifest, e.g. fixture_path('torus.json')."""
    return Path(str(resources.files("conerig").joinpath("fixtures", name)))
