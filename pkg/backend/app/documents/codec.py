"""
JSON instance documents: parsing, validation against the core modules and
canonical emission
"""
import json
from typing import Dict, Optional, Tuple, Union

import pydantic
from loguru import logger

from ..models.errors import AlgebraError, ParseError, SubsetOutOfRange, ValidationError
from ..models.schemas import InstanceDocument, NeighborhoodDocument, TopologySpec
from ..services.bitsets import mask_of, members
from ..services.finsemigroup import FinSemigroup, build_semigroup
from ..services.fintopology import FinTopology, generate_topology, topology_from_opens
from ..services.topoalgebra import NeighborhoodSystem, TopoSemigroup, oracle_opens, topology_from_neighborhoods

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))
from config import settings

Source = Union[bytes, str]


def _load_json(data: Source) -> dict:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        return json.loads(data)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", {"line": e.lineno, "column": e.colno})


def _validate_model(model, raw: dict):
    try:
        return model.model_validate(raw)
    except pydantic.ValidationError as e:
        first = e.errors()[0]
        raise ParseError(
            f"malformed document: {first['msg']}",
            {"location": ".".join(str(p) for p in first["loc"]), "errors": len(e.errors())},
        )


def _delegate(step):
    """Re-raise core-module errors as ValidationError"""
    try:
        return step()
    except AlgebraError as e:
        if isinstance(e, (ParseError, ValidationError)):
            raise
        raise ValidationError(e.message, {"cause": e.kind, **e.detail})


def parse_instance(data: Source) -> InstanceDocument:
    return load_instance(data)[0]


def to_topo_semigroup(doc: InstanceDocument) -> TopoSemigroup:
    S = _delegate(lambda: build_semigroup(doc.n, doc.table))
    spec = doc.topology
    if spec.opens is not None:
        T = _delegate(lambda: topology_from_opens(doc.n, spec.opens))
    else:
        T = _delegate(lambda: generate_topology(doc.n, spec.subbase))
    for name, subset in doc.subsets.items():
        if any(not 0 <= x < doc.n for x in subset):
            raise ValidationError(f"subset {name!r} leaves the ground set",
                                  {"cause": SubsetOutOfRange.__name__, "subset": name})
    return TopoSemigroup(S, T, name=doc.name)


def load_instance(data: Source) -> Tuple[InstanceDocument, TopoSemigroup]:
    return _instance_from_raw(_load_json(data))


def _instance_from_raw(raw: dict) -> Tuple[InstanceDocument, TopoSemigroup]:
    doc = _validate_model(InstanceDocument, raw)
    TS = to_topo_semigroup(doc)
    logger.info(f"Parsed instance {doc.name} (n={doc.n})")
    return doc, TS


def read_source(path: str) -> bytes:
    """File contents, or standard input for '-'"""
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as f:
        return f.read()


def fixture_path(name: str) -> str:
    if not name.endswith(".json"):
        name += ".json"
    return os.path.join(settings.FIXTURES_DIR, name)


def load_fixture(name: str) -> TopoSemigroup:
    _, TS = load_instance(read_source(fixture_path(name)))
    return TS


def topology_spec(T: FinTopology) -> TopologySpec:
    """Full open family when it is small enough, otherwise the minimal-neighborhood base"""
    if T.count_opens(settings.OPEN_ENUMERATION_CAP) <= settings.OPEN_ENUMERATION_CAP:
        return TopologySpec(opens=[members(o) for o in T.opens])
    return TopologySpec(subbase=[members(m) for m in oracle_opens(T)])


def document_for(TS: TopoSemigroup, name: Optional[str] = None,
                 subsets: Optional[Dict[str, int]] = None) -> InstanceDocument:
    return InstanceDocument(
        name=name or TS.name,
        n=TS.n,
        table=TS.S.as_lists(),
        topology=topology_spec(TS.T),
        subsets={k: members(v) for k, v in sorted((subsets or {}).items())},
    )


def emit_instance(doc: InstanceDocument) -> str:
    """Canonical JSON: fixed key order, one table row per line"""
    topology = doc.topology.model_dump(exclude_none=True)
    key, family = next(iter(topology.items()))
    lines = [
        "{",
        f'  "name": {json.dumps(doc.name)},',
        f'  "n": {doc.n},',
        '  "table": [',
        ",\n".join(f"    {json.dumps(row)}" for row in doc.table),
        "  ],",
        f'  "topology": {{"{key}": {json.dumps(family)}}},',
        f'  "subsets": {json.dumps(dict(sorted(doc.subsets.items())))}',
        "}",
    ]
    return "\n".join(lines) + "\n"


def canonical_instance(doc: InstanceDocument) -> InstanceDocument:
    """Same instance with sorted subsets and the open family spelled out"""
    TS = to_topo_semigroup(doc)
    return document_for(TS, doc.name, {k: mask_of(v) for k, v in doc.subsets.items()})


def parse_neighborhoods(data: Source) -> Tuple[NeighborhoodDocument, FinSemigroup, NeighborhoodSystem]:
    return _neighborhoods_from_raw(_load_json(data))


def _neighborhoods_from_raw(raw: dict) -> Tuple[NeighborhoodDocument, FinSemigroup, NeighborhoodSystem]:
    doc = _validate_model(NeighborhoodDocument, raw)
    S = _delegate(lambda: build_semigroup(doc.n, doc.table))
    NS: NeighborhoodSystem = {}
    for key, family in doc.families.items():
        try:
            e = int(key)
        except ValueError:
            raise ParseError(f"family key {key!r} is not an element index", {"location": f"families.{key}"})
        for subset in family:
            if any(not 0 <= x < doc.n for x in subset):
                raise ValidationError(f"family of {e} leaves the ground set",
                                      {"cause": SubsetOutOfRange.__name__, "idempotent": e})
        NS[e] = [mask_of(subset) for subset in family]
    return doc, S, NS


def load_topo_semigroup(data: Source) -> TopoSemigroup:
    """An instance document, or a neighborhood document whose topology is
    built from its families"""
    raw = _load_json(data)
    if isinstance(raw, dict) and "families" in raw and "topology" not in raw:
        doc, S, NS = _neighborhoods_from_raw(raw)
        T = _delegate(lambda: topology_from_neighborhoods(S, NS))
        logger.info(f"Built instance {doc.name} (n={doc.n}) from neighborhood families")
        return TopoSemigroup(S, T, name=doc.name)
    return _instance_from_raw(raw)[1]


def parse_subset(text: str, n: int) -> int:
    """Comma-separated indices"""
    text = text.strip()
    if not text:
        return 0
    try:
        elements = [int(part) for part in text.split(",")]
    except ValueError:
        raise ParseError(f"not a comma-separated subset: {text!r}", {"location": "subset"})
    bad = [x for x in elements if not 0 <= x < n]
    if bad:
        raise SubsetOutOfRange(f"elements {bad} are outside 0..{n - 1}", {"elements": bad})
    return mask_of(elements)
