"""
Topological algebra on finite cryptogroups: continuity, band-of-topological-
groups classification, star sets, neighborhood systems and the topology
they generate.
"""
import random
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from loguru import logger

from ..models.errors import (
    AxiomsViolated, BadParams, InvariantViolation, MissingIdempotentFamily,
    NotABaseAtIdempotent, NotBotg, NotCryptogroup,
)
from ..models.schemas import (
    AxiomResult, ClassifyFlags, FlagEquivalence, HomCheck,
    NeighborhoodAxiomReport, SeparationEquivalenceReport, SpecialSetsReport,
    SubsetFlag, TheoremResult, TopoFlags,
)
from .bitsets import full_mask, is_subset, iter_members, mask_of, members, popcount
from .finsemigroup import (
    FinSemigroup, HStructure, Partition, classify, h_structure, idempotents,
    quotient_by_congruence,
)
from .fintopology import (
    FinTopology, is_continuous_at, partition_topology, product_topology,
    quotient_topology, separation_flags, subspace_topology, topology_from_masks,
)

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))
from config import settings

TRIVIALIZED = "trivialized-at-finite-scale: finite Hausdorff spaces are discrete"

NeighborhoodSystem = Dict[int, List[int]]


class TopoSemigroup:
    """A finite semigroup with a topology on the same ground set"""

    __slots__ = ("S", "T", "name", "_cache")

    def __init__(self, S: FinSemigroup, T: FinTopology, name: str = "instance"):
        if S.n != T.n:
            raise BadParams("semigroup and topology sizes differ", {"n": S.n, "topology_n": T.n})
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("TopoSemigroup is immutable")

    def __repr__(self) -> str:
        return f"TopoSemigroup({self.name!r}, n={self.n})"

    @property
    def n(self) -> int:
        return self.S.n

    def _cached(self, key, compute):
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    @property
    def algebra(self) -> ClassifyFlags:
        return self._cached("classify", lambda: classify(self.S))

    @property
    def h(self) -> HStructure:
        """H-structure; raises NotCryptogroup"""
        return self._cached("h", lambda: h_structure(self.S))

    @property
    def E(self) -> int:
        return self._cached("E", lambda: idempotents(self.S))

    @property
    def flags(self) -> TopoFlags:
        return self._cached("flags", lambda: classify_topological(self))

    @property
    def is_botg(self) -> bool:
        return self.flags.is_botg_criterion


def require_cryptogroup(TS: TopoSemigroup) -> HStructure:
    if not TS.algebra.is_cryptogroup:
        raise NotCryptogroup(f"{TS.name} is not a cryptogroup", TS.algebra.model_dump())
    return TS.h


def require_botg(TS: TopoSemigroup) -> HStructure:
    if not TS.is_botg:
        raise NotBotg(f"{TS.name} is not a band of topological groups", TS.flags.model_dump())
    return TS.h


def oracle_opens(T: FinTopology) -> Sequence[int]:
    """Opens walked by definitional oracles; the minimal-neighborhood base
    when the family is too large (preimages commute with unions)"""
    if T.count_opens(settings.OPEN_ENUMERATION_CAP) <= settings.OPEN_ENUMERATION_CAP:
        return T.opens
    logger.debug(f"Open family of size > {settings.OPEN_ENUMERATION_CAP}; using minimal neighborhoods")
    return sorted(set(T.min_nbhd))


def open_filter(T: FinTopology, x: int) -> List[int]:
    """Opens containing x (capped as in oracle_opens)"""
    return [o for o in oracle_opens(T) if (o >> x) & 1] or [T.min_nbhd[x]]


# ---------------------------------------------------------------------------
# Continuity
# ---------------------------------------------------------------------------

def mult_continuity_witness(TS: TopoSemigroup) -> Optional[Tuple[int, int]]:
    """First (x, y) with m(x)m(y) not inside m(xy)"""
    S, m = TS.S, TS.T.min_nbhd
    for x in range(TS.n):
        for y in range(TS.n):
            if not is_subset(S.product_set(m[x], m[y]), m[S.mul(x, y)]):
                return x, y
    return None


def mult_continuous_by_preimages(TS: TopoSemigroup) -> bool:
    """Preimage of every open under multiplication is open in T x T"""
    n = TS.n
    P = product_topology(TS.T, TS.T)
    fiber = [0] * n
    for a in range(n):
        row = TS.S.rows[a]
        for b in range(n):
            fiber[row[b]] |= 1 << (a * n + b)
    for W in oracle_opens(TS.T):
        pre = 0
        for z in iter_members(W):
            pre |= fiber[z]
        if not P.is_open(pre):
            return False
    return True


def check_mult_continuity(TS: TopoSemigroup) -> bool:
    by_neighborhoods = mult_continuity_witness(TS) is None
    by_preimages = mult_continuous_by_preimages(TS)
    if by_neighborhoods != by_preimages:
        raise InvariantViolation(
            "continuity criteria disagree",
            {"minimal_neighborhoods": by_neighborhoods, "preimages": by_preimages},
        )
    return by_preimages


def check_inversion_continuity(TS: TopoSemigroup) -> bool:
    h = require_cryptogroup(TS)
    T = TS.T
    for W in oracle_opens(T):
        if not T.is_open(mask_of(x for x in range(TS.n) if (W >> h.inv[x]) & 1)):
            return False
    return True


def h_classes_form_group_base(TS: TopoSemigroup) -> bool:
    """Each H-class subspace is a topological group and the union of their
    topologies is a base for T"""
    h = TS.h
    S, T = TS.S, TS.T
    for block in h.h_partition.blocks:
        elems = members(block)
        index = {x: i for i, x in enumerate(elems)}
        sub = subspace_topology(T, block)
        sub_mins = [mask_of(elems[i] for i in iter_members(m)) for m in sub.min_nbhd]
        for x in elems:
            trace = sub_mins[index[x]]
            # subspace opens must be open in T, and sit inside m(x)
            if not T.is_open(trace) or not is_subset(trace, T.min_nbhd[x]):
                return False
            for y in elems:
                image = S.product_set(trace, sub_mins[index[y]]) & block
                if not is_subset(image, sub_mins[index[S.mul(x, y)]]):
                    return False
            if not is_subset(h.inverse_set(trace), sub_mins[index[h.inv[x]]]):
                return False
    return True


def classify_topological(TS: TopoSemigroup) -> TopoFlags:
    witness = mult_continuity_witness(TS)
    mult = check_mult_continuity(TS)
    crypto = TS.algebra.is_cryptogroup
    inversion = check_inversion_continuity(TS) if crypto else False
    topo_crypto = mult and crypto and inversion

    definitional = crypto and mult and h_classes_form_group_base(TS)
    criterion = topo_crypto and all(TS.T.is_open(b) for b in TS.h.h_partition.blocks)

    if topo_crypto and definitional != criterion:
        raise InvariantViolation(
            "band-of-topological-groups routes disagree",
            {"definitional": definitional, "criterion": criterion},
        )
    logger.debug(f"{TS.name}: mult={mult} inversion={inversion} botg={criterion}")
    return TopoFlags(
        mult_continuous=mult,
        inversion_continuous=inversion,
        is_topological_semigroup=mult,
        is_topological_cryptogroup=topo_crypto,
        is_botg_definitional=definitional,
        is_botg_criterion=criterion,
        mult_witness=list(witness) if witness else None,
    )


def classes_open(T: FinTopology, p: Partition) -> bool:
    return all(T.is_open(b) for b in p.blocks)


def rho_classes_open_criterion(T: FinTopology, p: Partition) -> bool:
    """For each x and open G around x there is an open W with x in W inside G and the class of x"""
    for x in range(T.n):
        cls = p.block_of(x)
        for G in open_filter(T, x):
            target = G & cls
            if not any((W >> x) & 1 and is_subset(W, target) for W in open_filter(T, x)):
                return False
    return True


def sufficient_condition_holds(TS: TopoSemigroup) -> bool:
    """Topological semigroup, cryptogroup, open H-classes and, at each
    idempotent e, every open U around e has an open V around e with V^-1 in U"""
    if not (TS.algebra.is_cryptogroup and check_mult_continuity(TS)):
        return False
    h = TS.h
    if not classes_open(TS.T, h.h_partition):
        return False
    for e in iter_members(TS.E):
        nbhds = open_filter(TS.T, e)
        for U in nbhds:
            if not any(is_subset(h.inverse_set(V), U) for V in nbhds):
                return False
    return True


def h_classes_clopen(TS: TopoSemigroup) -> bool:
    return all(TS.T.is_clopen(b) for b in TS.h.h_partition.blocks)


# ---------------------------------------------------------------------------
# Star sets
# ---------------------------------------------------------------------------

def star_xU(S: FinSemigroup, h: HStructure, x: int, U: int) -> int:
    """(xU)* = {y : x^-1 y in U and x^0 = y^0}"""
    xi = S.rows[h.inv[x]]
    return mask_of(y for y in iter_members(h.h_class(x)) if (U >> xi[y]) & 1)


def star_Ux(S: FinSemigroup, h: HStructure, U: int, x: int) -> int:
    """(Ux)* = {y : y x^-1 in U and x^0 = y^0}"""
    xi = h.inv[x]
    return mask_of(y for y in iter_members(h.h_class(x)) if (U >> S.rows[y][xi]) & 1)


def star_UV(S: FinSemigroup, h: HStructure, U: int, V: int) -> int:
    """(UV)* = union of (uV)* over u in U"""
    out = 0
    for u in iter_members(U):
        out |= star_xU(S, h, u, V)
    return out


def star_xUy(S: FinSemigroup, h: HStructure, x: int, U: int, y: int) -> int:
    """(xUy)* = {s in S : x^-1 s y^-1 in U and x^0 = s^0 = y^0}"""
    if h.zero[x] != h.zero[y]:
        return 0
    xi, yi = h.inv[x], h.inv[y]
    rows = S.rows
    return mask_of(s for s in iter_members(h.h_class(x)) if (U >> rows[rows[xi][s]][yi]) & 1)


def star(TS: TopoSemigroup, kind: str, x: Optional[int] = None, y: Optional[int] = None,
         U: int = 0, V: int = 0) -> int:
    h = require_cryptogroup(TS)
    S = TS.S
    for name, value in (("x", x), ("y", y)):
        if value is not None and not 0 <= value < TS.n:
            raise BadParams(f"{name} = {value} is outside the ground set", {name: value})
    if (U | V) & ~S.full:
        raise BadParams("set argument leaves the ground set", {})
    needs = {"xU": ("x",), "Ux": ("x",), "UV": (), "xUy": ("x", "y")}
    if kind not in needs:
        raise BadParams(f"unknown star kind {kind!r}", {"kind": kind})
    missing = [name for name in needs[kind] if {"x": x, "y": y}[name] is None]
    if missing:
        raise BadParams(f"star kind {kind} needs {', '.join(missing)}", {"missing": missing})

    if kind == "xU":
        return star_xU(S, h, x, U)
    if kind == "Ux":
        return star_Ux(S, h, U, x)
    if kind == "UV":
        return star_UV(S, h, U, V)
    return star_xUy(S, h, x, U, y)


def sample_subsets(n: int, rng: random.Random, cap: Optional[int] = None) -> List[int]:
    """All subsets for small n, otherwise a seeded uniform sample"""
    cap = cap or settings.SUBSET_SAMPLE_CAP
    if n <= settings.EXHAUSTIVE_SUBSET_MAX_N and (1 << n) <= cap:
        return list(range(1 << n))
    return [0, full_mask(n)] + [rng.getrandbits(n) for _ in range(cap - 2)]


def opens_containing(T: FinTopology, mask: int, limit: int = 8) -> List[int]:
    """Smallest open around `mask`, the full set and a few between"""
    candidates = [o for o in oracle_opens(T) if is_subset(mask, o)]
    smallest = T.up_closure(mask)
    picked = {smallest, T.full}
    for o in sorted(candidates, key=popcount):
        if len(picked) >= limit:
            break
        picked.add(o)
    return sorted(picked)


def verify_star_theorems(TS: TopoSemigroup, sample_cap: Optional[int] = None,
                         seed: Optional[int] = None) -> List[TheoremResult]:
    """Dense-set, closure and three-way star identities"""
    h = require_botg(TS)
    S, T = TS.S, TS.T
    rng = random.Random(settings.RANDOM_SEED if seed is None else seed)
    subsets = sample_subsets(TS.n, rng, sample_cap)
    E_opens = opens_containing(T, TS.E)

    dense_checks = 0
    dense_witness = None
    for D in subsets:
        if not T.is_dense(D):
            continue
        for U in E_opens:
            dense_checks += 1
            UD = star_UV(S, h, U, D)
            DU = star_UV(S, h, D, U)
            if UD != S.full or DU != S.full:
                dense_witness = {"D": members(D), "U": members(U), "UD": members(UD), "DU": members(DU)}
                break
        if dense_witness:
            break

    closure_checks = 0
    closure_witness = None
    for A in subsets:
        closure = T.closure(A)
        for U in E_opens:
            closure_checks += 1
            if not is_subset(closure, star_UV(S, h, A, U)):
                closure_witness = {"A": members(A), "U": members(U)}
                break
        if closure_witness:
            break

    identity_checks = 0
    identity_witness = None
    samples = sample_cap or settings.CONFIG_SAMPLE_COUNT
    for _ in range(samples):
        x, y = rng.randrange(TS.n), rng.randrange(TS.n)
        U = rng.getrandbits(TS.n)
        identity_checks += 1
        a = star_Ux(S, h, star_xU(S, h, x, U), y)
        b = star_xU(S, h, x, star_Ux(S, h, U, y))
        c = star_xUy(S, h, x, U, y)
        if not a == b == c:
            identity_witness = {"x": x, "y": y, "U": members(U)}
            break

    return [
        TheoremResult(theorem="dense-star-cover", applicable=True, passed=dense_witness is None,
                      checks=dense_checks, witness=dense_witness),
        TheoremResult(theorem="closure-inside-star", applicable=True, passed=closure_witness is None,
                      checks=closure_checks, witness=closure_witness),
        TheoremResult(theorem="star-three-way-identity", applicable=True, passed=identity_witness is None,
                      checks=identity_checks, witness=identity_witness),
    ]


# ---------------------------------------------------------------------------
# Bases and neighborhood systems
# ---------------------------------------------------------------------------

def is_base_at(T: FinTopology, x: int, family: Iterable[int]) -> bool:
    """Open members around x, one of them inside every open around x"""
    family = list(family)
    if not all(T.is_open(U) and (U >> x) & 1 for U in family):
        return False
    return any(U == T.min_nbhd[x] for U in family)


def base_transport(TS: TopoSemigroup, x: int, B0: Iterable[int], side: str = "left") -> List[int]:
    """{(xU)* : U in B0} (or {(Ux)*} for side='right'), a base at x"""
    h = require_botg(TS)
    B0 = list(B0)
    e = h.zero[x]
    if not is_base_at(TS.T, e, B0):
        raise NotABaseAtIdempotent(
            f"family is not a neighborhood base at {e}",
            {"idempotent": e, "family": [members(U) for U in B0]},
        )
    if side == "left":
        family = [star_xU(TS.S, h, x, U) for U in B0]
    elif side == "right":
        family = [star_Ux(TS.S, h, U, x) for U in B0]
    else:
        raise BadParams(f"unknown side {side!r}", {"side": side})
    if not is_base_at(TS.T, x, family):
        raise InvariantViolation("transported family is not a base", {"x": x, "side": side})
    return family


def verify_base_properties(TS: TopoSemigroup) -> List[TheoremResult]:
    """Base transport both sides and the five base properties at idempotents,
    with U_e the open filter at e"""
    h = require_botg(TS)
    S, T = TS.S, TS.T
    n = TS.n
    E = members(TS.E)
    # smallest first, so existence checks usually stop at m(e)
    bases = {e: sorted(open_filter(T, e), key=popcount) for e in E}
    results = []

    transported = 0
    for x in range(n):
        for side in ("left", "right"):
            base_transport(TS, x, bases[h.zero[x]], side)
            transported += 1
    results.append(TheoremResult(theorem="base-transport", applicable=True, passed=True, checks=transported))

    def record(name: str, witness, checks: int, applicable: bool = True, note: Optional[str] = None):
        results.append(TheoremResult(theorem=name, applicable=applicable, passed=witness is None,
                                     checks=checks, witness=witness, note=note))

    # (i) every open U around x has V in U_{x^0} with (Vx)* inside U
    witness, checks = None, 0
    for U in oracle_opens(T):
        for x in iter_members(U):
            checks += 1
            if not any(is_subset(star_Ux(S, h, V, x), U) for V in bases[h.zero[x]]):
                witness = {"U": members(U), "x": x}
                break
        if witness:
            break
    record("base-right-translate", witness, checks)

    # (ii) (xy)^0 in W in U_e gives U, V with (UV)^0 inside W
    witness, checks = None, 0
    for e in E:
        for W in bases[e]:
            for x in range(n):
                for y in range(n):
                    if not (W >> h.zero[S.mul(x, y)]) & 1:
                        continue
                    checks += 1
                    ok = any(
                        is_subset(mask_of(h.zero[z] for z in iter_members(S.product_set(U, V))), W)
                        for U in bases[h.zero[x]] for V in bases[h.zero[y]]
                    )
                    if not ok:
                        witness = {"W": members(W), "x": x, "y": y}
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    record("base-idempotent-image", witness, checks)

    # (iii) V^2 inside U
    witness, checks = None, 0
    for e in E:
        for U in bases[e]:
            checks += 1
            if not any(is_subset(S.product_set(V, V), U) for V in bases[e]):
                witness = {"e": e, "U": members(U)}
                break
    record("base-square-root", witness, checks)

    # (iv) y in U and H_e gives V with (y V y^-1)* inside U
    witness, checks = None, 0
    for e in E:
        for U in bases[e]:
            for y in iter_members(U & h.h_class(e)):
                checks += 1
                if not any(is_subset(star_xUy(S, h, y, V, h.inv[y]), U) for V in bases[e]):
                    witness = {"e": e, "U": members(U), "y": y}
                    break
    record("base-conjugation", witness, checks)

    # (v) only for Hausdorff spaces
    hausdorff = separation_flags(T).t2
    witness, checks = None, 0
    if hausdorff:
        for e in E:
            checks += 1
            meet = full_mask(n)
            for U in bases[e]:
                meet &= U
            if meet != 1 << e:
                witness = {"e": e, "meet": members(meet)}
    record("base-meet-is-point", witness, checks, applicable=hausdorff,
           note=TRIVIALIZED if hausdorff else None)
    return results


def open_filter_system(TS: TopoSemigroup) -> NeighborhoodSystem:
    """U_e = every open containing e"""
    return {e: open_filter(TS.T, e) for e in iter_members(TS.E)}


def _minimal(family: Iterable[int]) -> List[int]:
    family = sorted(set(family), key=popcount)
    out = []
    for U in family:
        if not any(is_subset(V, U) for V in out):
            out.append(U)
    return out


def _validate_system(S: FinSemigroup, NS: NeighborhoodSystem) -> HStructure:
    h = h_structure(S)
    E = members(idempotents(S))
    missing = [e for e in E if not NS.get(e)]
    if missing:
        raise MissingIdempotentFamily("no neighborhood family for some idempotents", {"missing": missing})
    extra = [k for k in NS if k not in E]
    if extra:
        raise MissingIdempotentFamily("families indexed by non-idempotents", {"extra": extra})
    for e in E:
        for U in NS[e]:
            if U & ~S.full:
                raise BadParams("family member leaves the ground set", {"e": e})
            if not (U >> e) & 1:
                raise BadParams(f"member of U_{e} does not contain {e}", {"e": e, "U": members(U)})
    return h


def neighborhood_axiom_check(S: FinSemigroup, NS: NeighborhoodSystem) -> NeighborhoodAxiomReport:
    """Axioms (1)-(5) for families U_e indexed by the idempotents.

    Every axiom is monotone in its set arguments, so universally quantified
    members and existential witnesses both range over inclusion-minimal
    members without changing the outcome.
    """
    h = _validate_system(S, NS)
    n = S.n
    rows = S.rows
    inv, zero = h.inv, h.zero
    E = sorted(NS)
    minimal = {e: _minimal(NS[e]) for e in E}

    through: Dict[Tuple[int, int], List[int]] = {}

    def minimal_through(e: int, z: int) -> List[int]:
        if (e, z) not in through:
            through[e, z] = _minimal(U for U in NS[e] if (U >> z) & 1)
        return through[e, z]

    results = []

    # (1) V^-1 inside U
    witness = None
    for e in E:
        for U in minimal[e]:
            if not any(is_subset(h.inverse_set(V), U) for V in minimal[e]):
                witness = {"e": e, "U": members(U)}
                break
        if witness:
            break
    results.append(AxiomResult(axiom=1, holds=witness is None, witness=witness))

    # (2) y in U gives V in U_{y^0} with (Vy)* inside U
    witness = None
    for e in E:
        for y in range(n):
            for U in minimal_through(e, y):
                if not any(is_subset(star_Ux(S, h, V, y), U) for V in minimal[zero[y]]):
                    witness = {"e": e, "U": members(U), "y": y}
                    break
            if witness:
                break
        if witness:
            break
    results.append(AxiomResult(axiom=2, holds=witness is None, witness=witness))

    # (3) x^-1 y in U gives V in U_{y^0} with x^-1 V y inside U
    witness = None
    for x in range(n):
        xi = rows[inv[x]]
        for y in range(n):
            z = xi[y]
            for e in E:
                for U in minimal_through(e, z):
                    ok = any(
                        all((U >> rows[xi[v]][y]) & 1 for v in iter_members(V))
                        for V in minimal[zero[y]]
                    )
                    if not ok:
                        witness = {"e": e, "U": members(U), "x": x, "y": y}
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    results.append(AxiomResult(axiom=3, holds=witness is None, witness=witness))

    # (4) U a V b (ab)^-1 inside W
    witness = None
    for a in range(n):
        for b in range(n):
            ab = rows[a][b]
            abi = inv[ab]
            for W in minimal[zero[ab]]:
                ok = False
                for U in minimal[zero[a]]:
                    Ua = mask_of(rows[u][a] for u in iter_members(U))
                    for V in minimal[zero[b]]:
                        Vb = mask_of(rows[v][b] for v in iter_members(V))
                        left = S.product_set(Ua, Vb)
                        image = mask_of(rows[t][abi] for t in iter_members(left))
                        if is_subset(image, W):
                            ok = True
                            break
                    if ok:
                        break
                if not ok:
                    witness = {"a": a, "b": b, "W": members(W)}
                    break
            if witness:
                break
        if witness:
            break
    results.append(AxiomResult(axiom=4, holds=witness is None, witness=witness))

    # (5) directedness
    witness = None
    for e in E:
        for U in minimal[e]:
            for V in minimal[e]:
                if not any(is_subset(W, U & V) for W in minimal[e]):
                    witness = {"e": e, "U": members(U), "V": members(V)}
                    break
            if witness:
                break
        if witness:
            break
    results.append(AxiomResult(axiom=5, holds=witness is None, witness=witness))

    return NeighborhoodAxiomReport(results=results)


def _step_one_min_nbhds(S: FinSemigroup, h: HStructure, NS: NeighborhoodSystem) -> List[int]:
    """Minimal neighborhoods of {W : each x in W has U in U_{x^0} with (Ux)* inside W}"""
    n = S.n
    least = []
    for x in range(n):
        meet = full_mask(n)
        for U in NS[h.zero[x]]:
            meet &= star_Ux(S, h, U, x)
        least.append(meet)
    mins = []
    for x in range(n):
        seen = least[x] | (1 << x)
        frontier = seen
        while frontier:
            nxt = 0
            for y in iter_members(frontier):
                nxt |= least[y]
            frontier = nxt & ~seen
            seen |= nxt
        mins.append(seen)
    return mins


def topology_from_neighborhoods(S: FinSemigroup, NS: NeighborhoodSystem) -> FinTopology:
    """Topology with base {(Ua)* : U in some U_e, a in S}"""
    report = neighborhood_axiom_check(S, NS)
    if not report.all_hold:
        raise AxiomsViolated(
            f"neighborhood axioms {report.failed} fail",
            {"failed": report.failed, "witnesses": [r.witness for r in report.results if not r.holds]},
        )
    h = h_structure(S)
    base = set()
    for family in NS.values():
        for U in family:
            for a in range(S.n):
                base.add(star_Ux(S, h, U, a))
    T = topology_from_masks(S.n, base)

    if list(T.min_nbhd) != _step_one_min_nbhds(S, h, NS):
        raise InvariantViolation("base topology differs from the pointwise construction", {})
    if not classify_topological(TopoSemigroup(S, T)).is_botg_criterion:
        raise InvariantViolation("constructed topology is not a band of topological groups", {})
    logger.info(f"Built topology from {sum(len(f) for f in NS.values())} neighborhoods, base size {len(base)}")
    return T


def topology_from_h_discrete(S: FinSemigroup) -> FinTopology:
    """Opens are unions of H-classes"""
    flags = classify(S)
    if not flags.is_cryptogroup:
        raise NotCryptogroup("semigroup is not a cryptogroup", flags.model_dump())
    H = h_structure(S).h_partition
    T = partition_topology(H)
    TS = TopoSemigroup(S, T)
    if not TS.is_botg:
        raise InvariantViolation("H-block topology is not a band of topological groups", {})
    if not separation_flags(quotient_topology(T, H)).discrete:
        raise InvariantViolation("S/H is not discrete under the H-block topology", {})
    return T


# ---------------------------------------------------------------------------
# Homomorphisms, special sets, separation per H-class
# ---------------------------------------------------------------------------

def hom_check(TS1: TopoSemigroup, TS2: TopoSemigroup, f: Sequence[int]) -> HomCheck:
    if len(f) != TS1.n or any(not 0 <= v < TS2.n for v in f):
        raise BadParams("map must send every element into the target", {})
    S1, S2 = TS1.S, TS2.S
    is_hom = all(
        f[S1.mul(a, b)] == S2.mul(f[a], f[b])
        for a in range(TS1.n) for b in range(TS1.n)
    )
    fn = f.__getitem__
    cont_at = [is_continuous_at(fn, TS1.T, TS2.T, x) for x in range(TS1.n)]
    is_continuous = all(
        TS1.T.is_open(mask_of(x for x in range(TS1.n) if (W >> f[x]) & 1))
        for W in oracle_opens(TS2.T)
    )
    if is_continuous != all(cont_at):
        raise InvariantViolation("pointwise and global continuity disagree", {})

    if is_hom and TS1.is_botg and TS2.is_botg:
        at_idempotents = all(cont_at[e] for e in iter_members(TS1.E))
        if at_idempotents and not is_continuous:
            raise InvariantViolation("continuity at idempotents did not spread", {"map": list(f)})
    return HomCheck(is_hom=is_hom, cont_at=cont_at, is_continuous=is_continuous)


def centralizer(S: FinSemigroup, t: int) -> int:
    return mask_of(x for x in range(S.n) if S.mul(x, t) == S.mul(t, x))


def power_preidem(S: FinSemigroup, k: int) -> int:
    """S[k] = {x : x^k idempotent}"""
    E = idempotents(S)
    return mask_of(x for x in range(S.n) if (E >> S.power(x, k)) & 1)


def special_sets(TS: TopoSemigroup, ts: Optional[Iterable[int]] = None,
                 ks: Optional[Iterable[int]] = None) -> SpecialSetsReport:
    S, T = TS.S, TS.T
    ts = list(range(TS.n)) if ts is None else list(ts)
    ks = list(range(1, TS.n + 1)) if ks is None else list(ks)
    hausdorff = separation_flags(T).t2

    def flag(mask: int) -> SubsetFlag:
        return SubsetFlag(subset=members(mask), closed=T.is_closed(mask))

    centralizers = {}
    for t in ts:
        C = centralizer(S, t)
        if not is_subset(S.product_set(C, C), C):
            raise InvariantViolation("centralizer is not a subsemigroup", {"t": t})
        centralizers[t] = flag(C)
    powers = {k: flag(power_preidem(S, k)) for k in ks}
    E = flag(TS.E)

    if hausdorff:
        every = list(centralizers.values()) + list(powers.values()) + [E]
        if not all(f.closed for f in every):
            raise InvariantViolation("special set not closed in a Hausdorff space", {})
    return SpecialSetsReport(
        centralizers=centralizers,
        power_preidem=powers,
        idempotent_set=E,
        hausdorff=hausdorff,
        annotation=TRIVIALIZED if hausdorff else None,
    )


PER_CLASS_FLAGS = ("t0", "t1", "t2", "regular", "completely_regular", "normal", "locally_connected")
CHAIN_FLAGS = ("t0", "t1", "t2", "t3", "tychonoff")


def separation_per_hclass(TS: TopoSemigroup) -> SeparationEquivalenceReport:
    h = require_botg(TS)
    whole = separation_flags(TS.T)
    parts = [separation_flags(subspace_topology(TS.T, b)) for b in h.h_partition.blocks]
    flags = {
        name: FlagEquivalence(
            global_value=getattr(whole, name),
            per_class=[getattr(p, name) for p in parts],
        )
        for name in PER_CLASS_FLAGS
    }
    report = SeparationEquivalenceReport(
        flags=flags,
        chain={name: getattr(whole, name) for name in CHAIN_FLAGS},
    )
    broken = [name for name, eq in flags.items() if not eq.agrees]
    if broken or not report.chain_holds:
        raise InvariantViolation(
            "separation flags disagree with their H-class conjunction",
            {"flags": broken, "chain": report.chain},
        )
    return report


def quotient_by_h(TS: TopoSemigroup) -> TopoSemigroup:
    """S/H with the quotient topology"""
    h = require_cryptogroup(TS)
    Q, _ = quotient_by_congruence(TS.S, h.h_partition)
    return TopoSemigroup(Q, quotient_topology(TS.T, h.h_partition), name=f"{TS.name}/H")
