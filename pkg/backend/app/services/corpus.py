"""
Seeded corpus of small instances: standard generators crossed with
discrete, indiscrete, H-block, rho_N-coset and random topologies
"""
import random
from typing import Dict, List, Optional, Tuple

from loguru import logger

from .bitsets import members
from .finsemigroup import FinSemigroup, Partition, classify, generate, h_structure
from .fintopology import (
    FinTopology, discrete_topology, indiscrete_topology, partition_topology,
    topology_from_masks,
)
from .subcrypto import full_subcryptogroup_masks, rho_n
from .topoalgebra import TopoSemigroup

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))
from config import settings

TOPOLOGY_KINDS = ("discrete", "indiscrete", "h-block")

# (label, kind, params); squarefree n keeps Z_n under multiplication completely regular
GENERATOR_SPECS: List[Tuple[str, str, Dict]] = [
    ("zn_mul(2)", "zn_mul", {"n": 2}),
    ("zn_mul(3)", "zn_mul", {"n": 3}),
    ("zn_mul(5)", "zn_mul", {"n": 5}),
    ("zn_mul(6)", "zn_mul", {"n": 6}),
    ("zn_mul(7)", "zn_mul", {"n": 7}),
    ("zn_mul(10)", "zn_mul", {"n": 10}),
    ("zn_mul(4)", "zn_mul", {"n": 4}),
    ("zn_mul(8)", "zn_mul", {"n": 8}),
    ("zn_add(1)", "zn_add", {"n": 1}),
    ("zn_add(3)", "zn_add", {"n": 3}),
    ("zn_add(4)", "zn_add", {"n": 4}),
    ("zn_add(6)", "zn_add", {"n": 6}),
    ("left_zero(3)", "left_zero", {"n": 3}),
    ("right_zero(3)", "right_zero", {"n": 3}),
    ("null(3)", "null", {"n": 3}),
    ("rectangular_band(2,2)", "rectangular_band", {"r": 2, "c": 2}),
    ("rectangular_band(2,3)", "rectangular_band", {"r": 2, "c": 3}),
]

PRODUCT_SPECS: List[Tuple[str, Tuple[str, Dict], Tuple[str, Dict]]] = [
    ("zn_add(2)xleft_zero(2)", ("zn_add", {"n": 2}), ("left_zero", {"n": 2})),
    ("zn_mul(3)xzn_add(2)", ("zn_mul", {"n": 3}), ("zn_add", {"n": 2})),
    ("zn_add(3)xright_zero(2)", ("zn_add", {"n": 3}), ("right_zero", {"n": 2})),
]


def generator_instances() -> List[Tuple[str, FinSemigroup]]:
    out = [(label, generate(kind, **params)) for label, kind, params in GENERATOR_SPECS]
    for label, (k1, p1), (k2, p2) in PRODUCT_SPECS:
        out.append((label, generate("direct_product", s1=generate(k1, **p1), s2=generate(k2, **p2))))
    return out


def random_block_topology(blocks: List[int], rng: random.Random, count: int = 3) -> Tuple[int, ...]:
    """Subbase of random unions of the given blocks"""
    subbase = []
    for _ in range(count):
        chosen = 0
        for block in blocks:
            if rng.random() < 0.5:
                chosen |= block
        subbase.append(chosen)
    return tuple(subbase)


def coset_partitions(S: FinSemigroup, rng: random.Random, count: int = 3) -> List[Partition]:
    """rho_N partitions for random full normal N strictly between the
    equality and H, so some H-class carries a proper coset topology"""
    H = h_structure(S).h_partition
    trivial = (Partition.discrete(S.n), H)
    candidates = []
    for N in full_subcryptogroup_masks(S, only_normal=True):
        p = rho_n(S, N).partition
        if p not in trivial and p not in candidates:
            candidates.append(p)
    return rng.sample(candidates, min(count, len(candidates)))


def random_subbase(n: int, rng: random.Random, count: int = 3) -> Tuple[int, ...]:
    return tuple(rng.getrandbits(n) for _ in range(count))


def topologies_for(S: FinSemigroup, rng: random.Random, random_count: Optional[int] = None) -> List[Tuple[str, FinTopology]]:
    """Discrete and indiscrete always; on cryptogroups H-block, random unions
    of H-classes and rho_N coset partitions; unconstrained random subbases
    otherwise"""
    random_count = settings.CORPUS_RANDOM_TOPOLOGIES if random_count is None else random_count
    n = S.n
    out = [("discrete", discrete_topology(n)), ("indiscrete", indiscrete_topology(n))]
    if classify(S).is_cryptogroup:
        H = h_structure(S).h_partition
        out.append(("h-block", partition_topology(H)))
        for i in range(random_count):
            out.append((f"h-random-{i}", topology_from_masks(n, random_block_topology(list(H.blocks), rng))))
        for i, p in enumerate(coset_partitions(S, rng, random_count)):
            out.append((f"rho-{i}", partition_topology(p)))
        out.append(("random-0", topology_from_masks(n, random_subbase(n, rng))))
    else:
        for i in range(random_count):
            out.append((f"random-{i}", topology_from_masks(n, random_subbase(n, rng))))
    return out


def build_corpus(seed: Optional[int] = None, random_count: Optional[int] = None) -> List[TopoSemigroup]:
    """Deterministic for a given seed"""
    rng = random.Random(settings.RANDOM_SEED if seed is None else seed)
    corpus = []
    for label, S in generator_instances():
        for kind, T in topologies_for(S, rng, random_count):
            corpus.append(TopoSemigroup(S, T, name=f"{label}/{kind}"))
    logger.info(f"Built corpus of {len(corpus)} instances")
    return corpus


def describe(TS: TopoSemigroup) -> str:
    return f"{TS.name}: n={TS.n}, atoms={sorted(members(m) for m in set(TS.T.min_nbhd))}"
