"""
Finite semigroup algebra: Cayley tables, Green's relations, complete
regularity, crypticity, congruences and algebraic quotients
"""
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..models.errors import (
    BadParams, BadPartition, EntryOutOfRange, NotACongruence,
    NotAssociative, NotCryptogroup,
)
from ..models.schemas import ClassifyFlags
from .bitsets import full_mask, iter_members, mask_of, members


class Partition:
    """Partition of {0..n-1}; blocks are masks ordered by minimal member"""

    __slots__ = ("n", "blocks", "class_of")

    def __init__(self, n: int, blocks: Iterable[int]):
        blocks = sorted((b for b in blocks), key=lambda b: (b & -b).bit_length())
        class_of = [-1] * n
        for index, block in enumerate(blocks):
            if block == 0:
                raise BadPartition("empty block", {"block_index": index})
            if block >> n:
                raise BadPartition("block leaves the ground set", {"block": members(block)})
            for x in iter_members(block):
                if class_of[x] != -1:
                    raise BadPartition("blocks overlap", {"element": x})
                class_of[x] = index
        missing = [x for x, c in enumerate(class_of) if c == -1]
        if missing:
            raise BadPartition("blocks do not cover the ground set", {"missing": missing})
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "blocks", tuple(blocks))
        object.__setattr__(self, "class_of", tuple(class_of))

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    @classmethod
    def from_labels(cls, labels: Sequence) -> "Partition":
        grouped: Dict[object, int] = {}
        for x, label in enumerate(labels):
            grouped[label] = grouped.get(label, 0) | (1 << x)
        return cls(len(labels), grouped.values())

    @classmethod
    def from_lists(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        return cls(n, [mask_of(b) for b in blocks])

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(n, [1 << x for x in range(n)])

    @classmethod
    def indiscrete(cls, n: int) -> "Partition":
        return cls(n, [full_mask(n)])

    def __len__(self) -> int:
        return len(self.blocks)

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.n == other.n and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash((self.n, self.blocks))

    def __repr__(self) -> str:
        return f"Partition({self.as_lists()})"

    def as_lists(self) -> List[List[int]]:
        return [members(b) for b in self.blocks]

    def block_of(self, x: int) -> int:
        return self.blocks[self.class_of[x]]

    def same(self, a: int, b: int) -> bool:
        return self.class_of[a] == self.class_of[b]

    def meet(self, other: "Partition") -> "Partition":
        """Common refinement"""
        return Partition.from_labels(list(zip(self.class_of, other.class_of)))

    def pairs_mask(self) -> int:
        """The relation as a subset of the n*n product, pair (a, b) at a*n + b"""
        mask = 0
        for block in self.blocks:
            elems = members(block)
            for a in elems:
                for b in elems:
                    mask |= 1 << (a * self.n + b)
        return mask


class FinSemigroup:
    """Validated finite semigroup on {0..n-1}; table[a][b] = a*b"""

    __slots__ = ("n", "table", "rows")

    def __init__(self, table: np.ndarray):
        table = np.array(table, dtype=np.int64)
        table.setflags(write=False)
        object.__setattr__(self, "n", int(table.shape[0]))
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "rows", tuple(tuple(int(v) for v in row) for row in table))

    def __setattr__(self, name, value):
        raise AttributeError("FinSemigroup is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, FinSemigroup) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"FinSemigroup(n={self.n})"

    @property
    def full(self) -> int:
        return full_mask(self.n)

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def product_set(self, a_mask: int, b_mask: int) -> int:
        """{ab : a in A, b in B}"""
        out = 0
        bs = members(b_mask)
        for a in iter_members(a_mask):
            row = self.rows[a]
            for b in bs:
                out |= 1 << row[b]
        return out

    def power(self, x: int, k: int) -> int:
        result = x
        for _ in range(k - 1):
            result = self.rows[result][x]
        return result

    def as_lists(self) -> List[List[int]]:
        return [list(row) for row in self.rows]


class HStructure:
    """H-classes of a cryptogroup with x^0 and x^-1 per element"""

    __slots__ = ("h_partition", "idem_of_class", "inv", "zero")

    def __init__(self, h_partition: Partition, idem_of_class: Sequence[int], inv: Sequence[int]):
        object.__setattr__(self, "h_partition", h_partition)
        object.__setattr__(self, "idem_of_class", tuple(idem_of_class))
        object.__setattr__(self, "inv", tuple(inv))
        object.__setattr__(
            self, "zero",
            tuple(self.idem_of_class[c] for c in h_partition.class_of),
        )

    def __setattr__(self, name, value):
        raise AttributeError("HStructure is immutable")

    def h_class(self, x: int) -> int:
        return self.h_partition.block_of(x)

    def inverse_set(self, mask: int) -> int:
        return mask_of(self.inv[x] for x in iter_members(mask))


def build_semigroup(n: int, table: Sequence[Sequence[int]]) -> FinSemigroup:
    """Validate a Cayley table and wrap it"""
    if n < 1:
        raise BadParams("a semigroup needs at least one element", {"n": n})
    if len(table) != n or any(len(row) != n for row in table):
        raise BadParams("table must be n x n", {"n": n, "rows": len(table)})

    for a, row in enumerate(table):
        for b, value in enumerate(row):
            if not isinstance(value, (int, np.integer)) or not 0 <= value < n:
                raise EntryOutOfRange(
                    f"table[{a}][{b}] = {value} is outside 0..{n - 1}",
                    {"a": a, "b": b, "value": value},
                )

    arr = np.asarray(table, dtype=np.int64)
    # left[a, b, c] = (ab)c, right[a, b, c] = a(bc)
    left = arr[arr]
    right = arr[:, arr]
    bad = np.argwhere(left != right)
    if bad.size:
        a, b, c = (int(v) for v in bad[0])
        raise NotAssociative(
            f"({a}*{b})*{c} != {a}*({b}*{c})",
            {"a": a, "b": b, "c": c},
        )
    return FinSemigroup(arr)


def idempotents(S: FinSemigroup) -> int:
    return mask_of(x for x in range(S.n) if S.rows[x][x] == x)


def left_principal_ideal(S: FinSemigroup, a: int) -> int:
    """S^1 a"""
    return (1 << a) | mask_of(S.rows[s][a] for s in range(S.n))


def right_principal_ideal(S: FinSemigroup, a: int) -> int:
    """a S^1"""
    return (1 << a) | mask_of(S.rows[a])


def green_relations(S: FinSemigroup) -> Tuple[Partition, Partition, Partition]:
    L = Partition.from_labels([left_principal_ideal(S, a) for a in range(S.n)])
    R = Partition.from_labels([right_principal_ideal(S, a) for a in range(S.n)])
    return L, R, L.meet(R)


def _require_same_size(S: FinSemigroup, p: Partition):
    if p.n != S.n:
        raise BadPartition("partition and semigroup sizes differ", {"n": S.n, "partition_n": p.n})


def congruence_witness(S: FinSemigroup, p: Partition) -> Optional[Tuple[int, int, int]]:
    """First (a, b, c) with a ~ b but ac !~ bc or ca !~ cb, else None"""
    _require_same_size(S, p)
    cls = p.class_of
    rows = S.rows
    for block in p.blocks:
        elems = members(block)
        rep = elems[0]
        for b in elems[1:]:
            for c in range(S.n):
                if cls[rows[rep][c]] != cls[rows[b][c]] or cls[rows[c][rep]] != cls[rows[c][b]]:
                    return rep, b, c
    return None


def is_congruence(S: FinSemigroup, p: Partition) -> bool:
    return congruence_witness(S, p) is None


def _is_completely_regular(S: FinSemigroup) -> bool:
    rows = S.rows
    for a in range(S.n):
        if not any(rows[rows[a][x]][a] == a and rows[a][x] == rows[x][a] for x in range(S.n)):
            return False
    return True


def classify(S: FinSemigroup) -> ClassifyFlags:
    _, _, H = green_relations(S)
    is_band = idempotents(S) == S.full
    completely_regular = _is_completely_regular(S)
    cryptic = is_congruence(S, H)
    return ClassifyFlags(
        is_band=is_band,
        is_completely_regular=completely_regular,
        is_cryptic=cryptic,
        is_cryptogroup=completely_regular and cryptic,
    )


def h_structure(S: FinSemigroup) -> HStructure:
    flags = classify(S)
    if not flags.is_cryptogroup:
        raise NotCryptogroup("semigroup is not a cryptogroup", flags.model_dump())

    _, _, H = green_relations(S)
    E = idempotents(S)
    rows = S.rows
    idem_of_class = []
    for block in H.blocks:
        # a completely regular H-class is a group, so exactly one idempotent
        idem_of_class.append(members(block & E)[0])

    inv = [0] * S.n
    for x in range(S.n):
        e = idem_of_class[H.class_of[x]]
        block = H.block_of(x)
        inv[x] = next(y for y in iter_members(block) if rows[x][y] == e and rows[y][x] == e)
    return HStructure(H, idem_of_class, inv)


def quotient_by_congruence(S: FinSemigroup, p: Partition) -> Tuple[FinSemigroup, Tuple[int, ...]]:
    """S/p with blocks numbered by minimal member; returns (quotient, projection)"""
    witness = congruence_witness(S, p)
    if witness is not None:
        a, b, c = witness
        raise NotACongruence("partition is not compatible with multiplication", {"a": a, "b": b, "c": c})
    reps = [members(block)[0] for block in p.blocks]
    table = [[p.class_of[S.rows[r][s]] for s in reps] for r in reps]
    return FinSemigroup(np.asarray(table, dtype=np.int64)), p.class_of


def _zn_mul(n: int) -> List[List[int]]:
    return [[(a * b) % n for b in range(n)] for a in range(n)]


def generate(kind: str, **params) -> FinSemigroup:
    """Standard semigroups: zn_mul, zn_add, left_zero, right_zero, null,
    rectangular_band(r, c) and direct_product(s1, s2)"""
    try:
        if kind == "direct_product":
            s1: FinSemigroup = params["s1"]
            s2: FinSemigroup = params["s2"]
            n2 = s2.n
            size = s1.n * n2
            table = [
                [s1.rows[a // n2][b // n2] * n2 + s2.rows[a % n2][b % n2] for b in range(size)]
                for a in range(size)
            ]
            return build_semigroup(size, table)

        if kind == "rectangular_band":
            r, c = int(params["r"]), int(params["c"])
            if r < 1 or c < 1:
                raise BadParams("rectangular band needs r, c >= 1", {"r": r, "c": c})
            size = r * c
            # (i, l)(j, m) = (i, m) with element (i, l) at i*c + l
            table = [[(a // c) * c + (b % c) for b in range(size)] for a in range(size)]
            return build_semigroup(size, table)

        n = int(params["n"])
    except KeyError as e:
        raise BadParams(f"missing parameter {e.args[0]!r} for {kind}", {"kind": kind})

    if n < 1:
        raise BadParams("n must be positive", {"kind": kind, "n": n})

    builders = {
        "zn_mul": lambda: _zn_mul(n),
        "zn_add": lambda: [[(a + b) % n for b in range(n)] for a in range(n)],
        "left_zero": lambda: [[a for _ in range(n)] for a in range(n)],
        "right_zero": lambda: [list(range(n)) for _ in range(n)],
        "null": lambda: [[0] * n for _ in range(n)],
    }
    if kind not in builders:
        raise BadParams(f"unknown generator {kind!r}", {"kind": kind})

    logger.debug(f"Generating {kind}({n})")
    return build_semigroup(n, builders[kind]())
