"""
Subsets of {0..n-1} stored as int bitmasks
"""
from typing import Iterable, Iterator, List


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for x in elements:
        mask |= 1 << x
    return mask


def members(mask: int) -> List[int]:
    """Ascending list of the elements of `mask`"""
    out = []
    x = 0
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return out


def iter_members(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def full_mask(n: int) -> int:
    return (1 << n) - 1


def contains(mask: int, x: int) -> bool:
    return (mask >> x) & 1 == 1


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def image(mask: int, f) -> int:
    """Image of the set under an element map (callable or sequence)"""
    get = f if callable(f) else f.__getitem__
    return mask_of(get(x) for x in iter_members(mask))


def preimage(mask: int, f, n: int) -> int:
    get = f if callable(f) else f.__getitem__
    return mask_of(x for x in range(n) if contains(mask, get(x)))


def all_submasks(mask: int) -> Iterator[int]:
    """Every subset of `mask`, including 0 and `mask` itself"""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask
