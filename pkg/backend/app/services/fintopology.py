"""
Finite topologies as Alexandrov spaces: generation, closure/interior,
separation axioms, products, subspaces and quotients.

A topology on {0..n-1} is held by its minimal neighborhoods m(x), the
intersection of all opens containing x. A set is open iff it contains m(x)
for each of its points, so the open family is enumerated only on demand.
"""
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from loguru import logger

from ..models.errors import BadParams, BadPartition, SubsetOutOfRange
from ..models.schemas import SeparationFlags
from .bitsets import full_mask, is_subset, iter_members, mask_of, members
from .finsemigroup import Partition

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))
from config import settings

TRIVIAL_ON_FINITE = "trivially-true-on-finite"
FINITE_PROXY = "finite-proxy: metrizable iff T1 iff discrete on finite spaces"
COMPONENTS_ONLY = "components only: the clopen sets are their unions"


class FinTopology:
    """Immutable finite topology"""

    __slots__ = ("n", "min_nbhd", "_opens")

    def __init__(self, n: int, min_nbhd: Sequence[int]):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "min_nbhd", tuple(min_nbhd))
        object.__setattr__(self, "_opens", None)
        self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("FinTopology is immutable")

    def _validate(self):
        if len(self.min_nbhd) != self.n:
            raise BadParams("one minimal neighborhood per point", {"n": self.n})
        full = full_mask(self.n)
        for x, m in enumerate(self.min_nbhd):
            if not (m >> x) & 1 or m & ~full:
                raise BadParams("minimal neighborhood must contain its point", {"x": x})
            for y in iter_members(m):
                if not is_subset(self.min_nbhd[y], m):
                    raise BadParams(
                        "minimal neighborhoods are not transitive",
                        {"x": x, "y": y},
                    )

    def __eq__(self, other) -> bool:
        return isinstance(other, FinTopology) and self.n == other.n and self.min_nbhd == other.min_nbhd

    def __hash__(self) -> int:
        return hash((self.n, self.min_nbhd))

    def __repr__(self) -> str:
        return f"FinTopology(n={self.n}, min_nbhd={[members(m) for m in self.min_nbhd]})"

    @property
    def full(self) -> int:
        return full_mask(self.n)

    @property
    def opens(self) -> Tuple[int, ...]:
        """Every open set, ascending as bitmasks"""
        if self._opens is None:
            family = {0}
            for m in set(self.min_nbhd):
                family |= {o | m for o in family}
            object.__setattr__(self, "_opens", tuple(sorted(family)))
        return self._opens

    def count_opens(self, cap: Optional[int] = None) -> int:
        """Number of opens, stopping early once `cap` is exceeded"""
        if self._opens is not None:
            return len(self._opens)
        family = {0}
        for m in set(self.min_nbhd):
            family |= {o | m for o in family}
            if cap is not None and len(family) > cap:
                return len(family)
        object.__setattr__(self, "_opens", tuple(sorted(family)))
        return len(family)

    def is_open(self, mask: int) -> bool:
        return all(is_subset(self.min_nbhd[x], mask) for x in iter_members(mask))

    def is_closed(self, mask: int) -> bool:
        return self.is_open(self.full & ~mask)

    def is_clopen(self, mask: int) -> bool:
        return self.is_open(mask) and self.is_closed(mask)

    def up_closure(self, mask: int) -> int:
        """Smallest open set containing `mask`"""
        out = 0
        for x in iter_members(mask):
            out |= self.min_nbhd[x]
        return out

    def closure(self, mask: int) -> int:
        return mask_of(x for x in range(self.n) if self.min_nbhd[x] & mask)

    def interior(self, mask: int) -> int:
        return mask_of(x for x in range(self.n) if is_subset(self.min_nbhd[x], mask))

    def is_dense(self, mask: int) -> bool:
        return self.closure(mask) == self.full

    def check_lattice(self) -> bool:
        """Opens contain 0 and full and are closed under pairwise union and intersection"""
        opens = set(self.opens)
        if 0 not in opens or self.full not in opens:
            return False
        return all(a | b in opens and a & b in opens for a in opens for b in opens)

    def components(self, within: Optional[int] = None) -> List[int]:
        """Connected components of the subspace `within` (default: everything)"""
        universe = self.full if within is None else within
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for x in iter_members(universe):
            for y in iter_members(self.min_nbhd[x] & universe):
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[ry] = rx

        grouped = {}
        for x in iter_members(universe):
            r = find(x)
            grouped[r] = grouped.get(r, 0) | (1 << x)
        return sorted(grouped.values(), key=lambda b: (b & -b).bit_length())

    def is_connected_subspace(self, mask: int) -> bool:
        return mask == 0 or len(self.components(mask)) == 1

    def clopens(self) -> List[int]:
        """Clopen sets are exactly unions of connected components"""
        family = {0}
        for comp in self.components():
            family |= {c | comp for c in family}
        return sorted(family)


def _check_subsets(n: int, subsets: Iterable[Iterable[int]]) -> List[int]:
    masks = []
    for index, subset in enumerate(subsets):
        subset = list(subset)
        for x in subset:
            if not isinstance(x, int) or not 0 <= x < n:
                raise SubsetOutOfRange(
                    f"element {x} of subset #{index} is outside 0..{n - 1}",
                    {"subset_index": index, "element": x},
                )
        masks.append(mask_of(subset))
    return masks


def topology_from_masks(n: int, subbase: Iterable[int]) -> FinTopology:
    """Smallest topology containing the given masks"""
    full = full_mask(n)
    mins = [full] * n
    for s in subbase:
        for x in iter_members(s):
            mins[x] &= s
    return FinTopology(n, mins)


def generate_topology(n: int, subbase: Iterable[Iterable[int]]) -> FinTopology:
    """Topology generated by a subbase given as lists of elements"""
    if n < 1:
        raise BadParams("ground set must be nonempty", {"n": n})
    return topology_from_masks(n, _check_subsets(n, subbase))


def topology_from_opens(n: int, opens: Iterable[Iterable[int]]) -> FinTopology:
    """Validate an explicit open family and wrap it"""
    masks = set(_check_subsets(n, opens))
    full = full_mask(n)
    if 0 not in masks or full not in masks:
        raise BadParams("open family must contain the empty set and the full set", {})
    for a in masks:
        for b in masks:
            if a | b not in masks or a & b not in masks:
                raise BadParams(
                    "open family is not closed under union and intersection",
                    {"a": members(a), "b": members(b)},
                )
    return topology_from_masks(n, masks)


def discrete_topology(n: int) -> FinTopology:
    return FinTopology(n, [1 << x for x in range(n)])


def indiscrete_topology(n: int) -> FinTopology:
    return FinTopology(n, [full_mask(n)] * n)


def partition_topology(p: Partition) -> FinTopology:
    """Opens are the unions of blocks"""
    return FinTopology(p.n, [p.block_of(x) for x in range(p.n)])


def closed_sets(T: FinTopology) -> List[int]:
    return sorted(T.full & ~o for o in T.opens)


def separation_flags(T: FinTopology) -> SeparationFlags:
    """Separation battery.

    Closed sets avoiding x all lie inside S - m(x), and closed sets through a
    point contain its closure, so each quantifier over closed sets reduces to
    one over points.
    """
    n = T.n
    m = T.min_nbhd
    point_closure = [T.closure(1 << x) for x in range(n)]
    comps = T.components()
    comp_of = {}
    for c in comps:
        for x in iter_members(c):
            comp_of[x] = c

    t0 = all(not ((m[x] >> y) & 1 and (m[y] >> x) & 1) for x in range(n) for y in range(x + 1, n))
    discrete = all(m[x] == 1 << x for x in range(n))
    t1 = discrete
    t2 = all(m[x] & m[y] == 0 for x in range(n) for y in range(x + 1, n))
    regular = all(m[x] & m[y] == 0 for x in range(n) for y in range(n) if not (m[x] >> y) & 1)
    completely_regular = all(is_subset(comp_of[x], m[x]) for x in range(n))
    normal = all(
        m[a] & m[b] == 0
        for a in range(n) for b in range(a + 1, n)
        if point_closure[a] & point_closure[b] == 0
    )
    connected = len(comps) == 1
    locally_connected = all(T.is_connected_subspace(m[x]) for x in range(n))

    annotations = {
        "metrizable": FINITE_PROXY,
        "separable": TRIVIAL_ON_FINITE,
        "first_countable": TRIVIAL_ON_FINITE,
        "second_countable": TRIVIAL_ON_FINITE,
    }
    if 1 << len(comps) <= settings.OPEN_ENUMERATION_CAP:
        clopens = T.clopens()
    else:
        clopens = comps
        annotations["clopens"] = COMPONENTS_ONLY

    return SeparationFlags(
        t0=t0,
        t1=t1,
        t2=t2,
        regular=regular,
        completely_regular=completely_regular,
        normal=normal,
        connected=connected,
        locally_connected=locally_connected,
        discrete=discrete,
        t3=regular and t1,
        tychonoff=completely_regular and t1,
        metrizable=t1,
        clopens=[members(c) for c in clopens],
        annotations=annotations,
    )


def rectangle(A: int, B: int, n2: int) -> int:
    """A x B inside the n1*n2 product, pair (a, b) at a*n2 + b"""
    out = 0
    for a in iter_members(A):
        out |= B << (a * n2)
    return out


def product_topology(T1: FinTopology, T2: FinTopology) -> FinTopology:
    """Product generated by open rectangles"""
    n2 = T2.n
    mins = [
        rectangle(T1.min_nbhd[a], T2.min_nbhd[b], n2)
        for a in range(T1.n) for b in range(n2)
    ]
    return FinTopology(T1.n * n2, mins)


def reindex(mask: int, subset: int) -> int:
    """Position of mask's points inside `subset`, ascending"""
    index = {x: i for i, x in enumerate(iter_members(subset))}
    return mask_of(index[x] for x in iter_members(mask & subset))


def subspace_topology(T: FinTopology, A: int) -> FinTopology:
    """Traces of opens on A, re-indexed by A ascending"""
    if A & ~T.full:
        raise SubsetOutOfRange("subspace leaves the ground set", {"subset": members(A)})
    return FinTopology(
        bin(A).count("1"),
        [reindex(T.min_nbhd[x], A) for x in iter_members(A)],
    )


def quotient_topology(T: FinTopology, p: Partition) -> FinTopology:
    """U open iff its preimage is open; blocks numbered as in `p`"""
    if p.n != T.n:
        raise BadPartition("partition and topology sizes differ", {"n": T.n, "partition_n": p.n})

    # block i forces block j into every open containing i when j meets m(x), x in i
    reach = []
    for block in p.blocks:
        touched = mask_of(p.class_of[y] for y in iter_members(T.up_closure(block)))
        reach.append(touched)

    mins = []
    for c in range(len(p.blocks)):
        seen = 1 << c
        frontier = 1 << c
        while frontier:
            nxt = 0
            for i in iter_members(frontier):
                nxt |= reach[i]
            frontier = nxt & ~seen
            seen |= nxt
        mins.append(seen)
    logger.debug(f"Quotient topology on {len(p.blocks)} blocks")
    return FinTopology(len(p.blocks), mins)


def preimage_is_open(f: Callable[[int], int], source: FinTopology, target_open: int) -> bool:
    pre = mask_of(x for x in range(source.n) if (target_open >> f(x)) & 1)
    return source.is_open(pre)


def is_continuous(f: Callable[[int], int], source: FinTopology, target: FinTopology) -> bool:
    """Preimages of the minimal-neighborhood base are open"""
    return all(preimage_is_open(f, source, m) for m in set(target.min_nbhd))


def is_continuous_at(f: Callable[[int], int], source: FinTopology, target: FinTopology, x: int) -> bool:
    """Every open W around f(x) has an open V around x with f(V) inside W"""
    image = mask_of(f(y) for y in iter_members(source.min_nbhd[x]))
    return is_subset(image, target.min_nbhd[f(x)])
