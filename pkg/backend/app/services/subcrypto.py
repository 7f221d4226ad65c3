"""
Full (normal) subcryptogroups, symmetric sets, U-disjointness, the rho_N
congruence and the topological quotient S/N.
"""
import random
from typing import List, Optional, Tuple

from loguru import logger

from ..models.errors import (
    HypothesisViolated, InvariantViolation, NotFullNormalSubcryptogroup,
    PreconditionViolated, SubsetOutOfRange, TooLarge,
)
from ..models.schemas import HausdorffTriple, SubcryptoEntry, SubcryptoRecord, TheoremResult
from .bitsets import all_submasks, image, is_subset, iter_members, members
from .finsemigroup import (
    FinSemigroup, HStructure, Partition, classify, h_structure, idempotents,
    is_congruence, quotient_by_congruence,
)
from .fintopology import product_topology, quotient_topology, separation_flags
from .topoalgebra import (
    TRIVIALIZED, TopoSemigroup, is_base_at, open_filter, oracle_opens, require_botg,
    require_cryptogroup, sample_subsets, star_xU,
)

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))
from config import settings


def close_subcryptogroup(S: FinSemigroup, h: HStructure, mask: int) -> int:
    """Smallest subset containing `mask` closed under product and inverse"""
    while True:
        grown = mask | S.product_set(mask, mask) | h.inverse_set(mask)
        if grown == mask:
            return mask
        mask = grown


def is_subcryptogroup(S: FinSemigroup, h: HStructure, K: int) -> bool:
    return K != 0 and is_subset(S.product_set(K, K), K) and is_subset(h.inverse_set(K), K)


def is_normal(S: FinSemigroup, h: HStructure, K: int) -> bool:
    """s k s^-1 in K for every s in S and k in K"""
    rows = S.rows
    for s in range(S.n):
        si = h.inv[s]
        for k in iter_members(K):
            if not (K >> rows[rows[s][k]][si]) & 1:
                return False
    return True


def is_full_normal(S: FinSemigroup, h: HStructure, K: int) -> bool:
    return is_subset(idempotents(S), K) and is_subcryptogroup(S, h, K) and is_normal(S, h, K)


def is_symmetric(h: HStructure, A: int) -> bool:
    return h.inverse_set(A) == A


def subcrypto_flags(TS: TopoSemigroup, K: int) -> SubcryptoRecord:
    h = require_cryptogroup(TS)
    S, T = TS.S, TS.T
    if K & ~S.full:
        raise SubsetOutOfRange("subset leaves the ground set", {"subset": members(K & ~S.full)})
    return SubcryptoRecord(
        subset=members(K),
        is_subcryptogroup=is_subcryptogroup(S, h, K),
        is_full=is_subset(TS.E, K),
        is_normal=is_normal(S, h, K),
        is_open=T.is_open(K),
        is_closed=T.is_closed(K),
        is_discrete_subspace=all(T.min_nbhd[x] & K == 1 << x for x in iter_members(K)),
    )


def subgroups(S: FinSemigroup, h: HStructure, block: int) -> List[int]:
    """Every subgroup of the group H-class `block`"""
    e = h.zero[members(block)[0]]
    found = {1 << e}
    frontier = [1 << e]
    while frontier:
        nxt = []
        for G in frontier:
            for g in iter_members(block & ~G):
                bigger = close_subcryptogroup(S, h, G | (1 << g))
                if bigger not in found:
                    found.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    return sorted(found)


def full_subcryptogroup_masks(S: FinSemigroup, only_normal: bool = False,
                              cap: Optional[int] = None) -> List[int]:
    """Closure-driven search over one subgroup choice per H-class"""
    cap = settings.SUBCRYPTO_CAP if cap is None else cap
    if S.n > cap:
        raise TooLarge(f"n = {S.n} exceeds the enumeration cap {cap}", {"n": S.n, "cap": cap})
    h = h_structure(S)

    # E(S) need not be closed under product, so seed from what it generates
    states = {close_subcryptogroup(S, h, idempotents(S))}
    for block in h.h_partition.blocks:
        choices = subgroups(S, h, block)
        nxt = set()
        for state in states:
            inside = state & block
            for G in choices:
                if is_subset(inside, G):
                    nxt.add(close_subcryptogroup(S, h, state | G))
        states = nxt

    found = sorted(K for K in states if not only_normal or is_normal(S, h, K))
    logger.debug(f"{len(found)} full {'normal ' if only_normal else ''}subcryptogroups on n={S.n}")
    return found


def exhaustive_full_subcryptogroups(S: FinSemigroup, only_normal: bool = False) -> List[int]:
    """Oracle: scan every superset of E(S)"""
    if S.n > settings.ORACLE_MAX_N:
        raise TooLarge(f"exhaustive scan limited to n <= {settings.ORACLE_MAX_N}", {"n": S.n})
    h = h_structure(S)
    E = idempotents(S)
    found = []
    for rest in all_submasks(S.full & ~E):
        K = E | rest
        if is_subcryptogroup(S, h, K) and (not only_normal or is_normal(S, h, K)):
            found.append(K)
    return sorted(found)


def enumerate_full_subcryptogroups(TS: TopoSemigroup, only_normal: bool = False,
                                   cap: Optional[int] = None) -> List[SubcryptoRecord]:
    require_cryptogroup(TS)
    return [subcrypto_flags(TS, K) for K in full_subcryptogroup_masks(TS.S, only_normal, cap)]


def verify_closure_lemmas(TS: TopoSemigroup, sample_cap: Optional[int] = None) -> List[TheoremResult]:
    """Closures of (full normal) subcryptogroups and of symmetric sets, and
    symmetric bases at idempotents"""
    names = ("closure-of-subcryptogroup", "closure-of-full-normal", "closure-of-symmetric", "symmetric-base")
    if not TS.flags.is_topological_cryptogroup:
        logger.warning(f"{TS.name}: closure lemmas need a topological cryptogroup")
        return [TheoremResult(theorem=name, applicable=False, passed=True) for name in names]

    results = []
    if TS.n > settings.SUBCRYPTO_CAP:
        note = above_cap(TS)
        results.extend(TheoremResult(theorem=name, applicable=False, passed=True, note=note) for name in names[:2])
    else:
        results.extend(_closure_of_subcryptogroups(TS, names[:2]))
    results.extend(_closure_of_symmetric(TS, names[2:], sample_cap))
    return results


def above_cap(TS: TopoSemigroup) -> str:
    logger.warning(f"{TS.name}: n = {TS.n} above the enumeration cap {settings.SUBCRYPTO_CAP}, skipping")
    return f"n above {settings.SUBCRYPTO_CAP}"


def _closure_of_subcryptogroups(TS: TopoSemigroup, names: Tuple[str, ...]) -> List[TheoremResult]:
    S, T, h = TS.S, TS.T, TS.h
    results = []

    witness, checks = None, 0
    for K in full_subcryptogroup_masks(S):
        checks += 1
        closure = T.closure(K)
        if not is_subcryptogroup(S, h, closure):
            witness = {"K": members(K), "closure": members(closure)}
            break
    results.append(TheoremResult(theorem=names[0], applicable=True, passed=witness is None,
                                 checks=checks, witness=witness))

    witness, checks = None, 0
    for K in full_subcryptogroup_masks(S, only_normal=True):
        checks += 1
        closure = T.closure(K)
        if not is_full_normal(S, h, closure):
            witness = {"K": members(K), "closure": members(closure)}
            break
    results.append(TheoremResult(theorem=names[1], applicable=True, passed=witness is None,
                                 checks=checks, witness=witness))
    return results


def _closure_of_symmetric(TS: TopoSemigroup, names: Tuple[str, ...],
                          sample_cap: Optional[int]) -> List[TheoremResult]:
    T, h = TS.T, TS.h
    results = []

    witness, checks = None, 0
    rng = random.Random(settings.RANDOM_SEED)
    for B in sample_subsets(TS.n, rng, sample_cap):
        A = B | h.inverse_set(B)
        checks += 1
        if not is_symmetric(h, T.closure(A)):
            witness = {"A": members(A)}
            break
    results.append(TheoremResult(theorem=names[0], applicable=True, passed=witness is None,
                                 checks=checks, witness=witness))

    witness, checks = None, 0
    for e in iter_members(TS.E):
        checks += 1
        family = [U & h.inverse_set(U) for U in open_filter(T, e)]
        if not all(is_symmetric(h, W) for W in family) or not is_base_at(T, e, family):
            witness = {"e": e}
            break
    results.append(TheoremResult(theorem=names[1], applicable=True, passed=witness is None,
                                 checks=checks, witness=witness))
    return results


def open_full_is_closed(TS: TopoSemigroup) -> TheoremResult:
    """Every open full subcryptogroup of a band of topological groups is closed"""
    require_botg(TS)
    if TS.n > settings.SUBCRYPTO_CAP:
        return TheoremResult(theorem="open-full-subcryptogroup-closed", applicable=False, passed=True,
                             note=above_cap(TS))
    records = enumerate_full_subcryptogroups(TS)
    bad = [r.subset for r in records if r.is_open and not r.is_closed]
    return TheoremResult(
        theorem="open-full-subcryptogroup-closed",
        applicable=True,
        passed=not bad,
        checks=len(records),
        witness={"K": bad[0]} if bad else None,
    )


def discrete_full_is_closed(TS: TopoSemigroup) -> TheoremResult:
    """Discrete full subcryptogroups of a Hausdorff band of topological groups are closed"""
    require_botg(TS)
    if not separation_flags(TS.T).t2:
        return TheoremResult(theorem="discrete-full-subcryptogroup-closed", applicable=False, passed=True)
    if TS.n > settings.SUBCRYPTO_CAP:
        return TheoremResult(theorem="discrete-full-subcryptogroup-closed", applicable=False, passed=True,
                             note=above_cap(TS))
    records = enumerate_full_subcryptogroups(TS)
    bad = [r.subset for r in records if r.is_discrete_subspace and not r.is_closed]
    return TheoremResult(
        theorem="discrete-full-subcryptogroup-closed",
        applicable=True,
        passed=not bad,
        checks=len(records),
        note=TRIVIALIZED,
        witness={"K": bad[0]} if bad else None,
    )


def u_disjoint(TS: TopoSemigroup, A: int, U: int) -> bool:
    """q not in (pU)* for distinct p, q in A"""
    h = require_cryptogroup(TS)
    for p in iter_members(A):
        if star_xU(TS.S, h, p, U) & A & ~(1 << p):
            return False
    return True


def fourfold(S: FinSemigroup, V: int) -> int:
    VV = S.product_set(V, V)
    return S.product_set(VV, VV)


def discrete_family_check(TS: TopoSemigroup, A: int, U: int, V: int) -> bool:
    """Is {(aV)* : a in A} a discrete family (some neighborhood of each point
    meets at most one member)"""
    if not TS.is_botg:
        raise HypothesisViolated("not a band of topological groups", {"which": "botg"})
    h = TS.h
    S, T = TS.S, TS.T
    E = TS.E
    hypotheses = (
        ("U open", T.is_open(U)),
        ("V open", T.is_open(V)),
        ("E inside U", is_subset(E, U)),
        ("E inside V", is_subset(E, V)),
        ("V symmetric", is_symmetric(h, V)),
        ("V^4 inside U", is_subset(fourfold(S, V), U)),
    )
    for which, holds in hypotheses:
        if not holds:
            raise HypothesisViolated(f"hypothesis '{which}' fails", {"which": which})

    family = [star_xU(S, h, a, V) for a in iter_members(A)]
    discrete = all(sum(1 for F in family if F & T.min_nbhd[x]) <= 1 for x in range(TS.n))
    if u_disjoint(TS, A, U) and not discrete:
        raise InvariantViolation(
            "family of a U-disjoint set is not discrete",
            {"A": members(A), "U": members(U), "V": members(V)},
        )
    return discrete


class RhoN:
    """The congruence a ~ b iff a^-1 b in N and a^0 = b^0"""

    __slots__ = ("N", "partition")

    def __init__(self, N: int, partition: Partition):
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "partition", partition)

    def __setattr__(self, name, value):
        raise AttributeError("RhoN is immutable")

    def __repr__(self) -> str:
        return f"RhoN(N={members(self.N)}, classes={self.partition.as_lists()})"


def rho_n(S: FinSemigroup, N: int) -> RhoN:
    h = h_structure(S)
    if N & ~S.full or not is_full_normal(S, h, N):
        raise NotFullNormalSubcryptogroup("N is not a full normal subcryptogroup", {"N": members(N)})

    stars = [star_xU(S, h, x, N) for x in range(S.n)]
    p = Partition(S.n, set(stars))
    if any(p.block_of(x) != stars[x] for x in range(S.n)):
        raise InvariantViolation("star sets do not partition S", {"N": members(N)})
    if not is_congruence(S, p):
        raise InvariantViolation("rho_N is not a congruence", {"N": members(N)})

    Q, projection = quotient_by_congruence(S, p)
    if not classify(Q).is_cryptogroup:
        raise InvariantViolation("S/N is not a cryptogroup", {"N": members(N)})
    if idempotents(Q) != image(N, projection):
        raise InvariantViolation("E(S/N) differs from the image of N", {"N": members(N)})
    return RhoN(N, p)


def _require_quotient_inputs(TS: TopoSemigroup, N: int) -> RhoN:
    if not TS.is_botg:
        raise PreconditionViolated(f"{TS.name} is not a band of topological groups", {})
    try:
        return rho_n(TS.S, N)
    except NotFullNormalSubcryptogroup as e:
        raise PreconditionViolated(e.message, e.detail)


def quotient_by_n(TS: TopoSemigroup, N: int) -> TopoSemigroup:
    """S/N with the quotient topology"""
    rho = _require_quotient_inputs(TS, N)
    p = rho.partition
    Q, projection = quotient_by_congruence(TS.S, p)
    TQ = TopoSemigroup(Q, quotient_topology(TS.T, p), name=f"{TS.name}/N")
    if not TQ.is_botg:
        raise InvariantViolation("S/N is not a band of topological groups", {"N": members(N)})

    h, hq = TS.h, TQ.h
    for x in range(TS.n):
        if image(h.h_class(x), projection) != hq.h_class(projection[x]):
            raise InvariantViolation("projection does not carry H-classes onto H-classes", {"x": x})
    logger.info(f"Quotient {TS.name} by N={members(N)}: {Q.n} classes")
    return TQ


def quotient_correspondence(TS: TopoSemigroup, N: int) -> bool:
    """M -> M/N is a bijection from full normal M containing N onto the full
    normal subcryptogroups of S/N"""
    rho = _require_quotient_inputs(TS, N)
    Q, projection = quotient_by_congruence(TS.S, rho.partition)
    above = [M for M in full_subcryptogroup_masks(TS.S, only_normal=True) if is_subset(N, M)]
    images = [image(M, projection) for M in above]
    return len(set(images)) == len(images) and sorted(images) == full_subcryptogroup_masks(Q, only_normal=True)


def hausdorff_equivalence(TS: TopoSemigroup, N: int) -> HausdorffTriple:
    """S/N Hausdorff, rho_N closed in S x S and N closed in S, each computed on its own"""
    rho = _require_quotient_inputs(TS, N)
    quotient = quotient_topology(TS.T, rho.partition)
    triple = HausdorffTriple(
        subset=members(N),
        quotient_hausdorff=separation_flags(quotient).t2,
        rho_closed=product_topology(TS.T, TS.T).is_closed(rho.partition.pairs_mask()),
        n_closed=TS.T.is_closed(N),
    )
    if not triple.agree:
        raise InvariantViolation("Hausdorff triple disagrees", triple.model_dump())
    return triple


def subcrypto_entries(TS: TopoSemigroup, only_normal: bool = True,
                      cap: Optional[int] = None) -> List[SubcryptoEntry]:
    """Records plus Hausdorff triples for full normal ones on botg instances"""
    entries = []
    for record in enumerate_full_subcryptogroups(TS, only_normal, cap):
        triple = None
        if record.is_full_normal and TS.is_botg:
            triple = hausdorff_equivalence(TS, record.mask)
        entries.append(SubcryptoEntry(record=record, hausdorff=triple))
    return entries


def symmetric_pairs(TS: TopoSemigroup, limit: int = 4) -> List[Tuple[int, int]]:
    """(U, V) with U, V open around E, V symmetric and V^4 inside U"""
    require_botg(TS)
    S, T, h = TS.S, TS.T, TS.h
    out = []
    for U in open_filter_around(TS, TS.E):
        for V in open_filter_around(TS, TS.E):
            if is_symmetric(h, V) and is_subset(fourfold(S, V), U):
                out.append((U, V))
                if len(out) >= limit:
                    return out
    return out


def open_filter_around(TS: TopoSemigroup, mask: int) -> List[int]:
    return [o for o in oracle_opens(TS.T) if is_subset(mask, o)]
