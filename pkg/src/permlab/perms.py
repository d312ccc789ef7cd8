"""Pure operations on permutations in one-line notation.

A permutation is a tuple of the integers 1..n with no repeats; the empty
tuple is the empty permutation.  All functions here are pure and treat
their arguments as immutable, so values can be shared freely across
threads.

Positions in returned index sets (``lr_maxima``, ``horizontal_gaps``,
``lr_minima``, ``intervals``) are 1-based, matching the usual one-line
conventions; values are 1-based by construction.

Text format (shared repo-wide): a digit string for length <= 9
("2413"), a comma-separated list otherwise ("2,4,1,3" also accepted),
and the empty string for the empty permutation.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

Perm = tuple[int, ...]


class ParseError(ValueError):
    """Raised when text does not describe a permutation."""


def perm(values: Iterable[int]) -> Perm:
    """Validate ``values`` as a rearrangement of 1..n and return it as a tuple.

    >>> perm([2, 4, 1, 3])
    (2, 4, 1, 3)
    """
    vals = tuple(values)
    _validate(vals, [str(v) for v in vals])
    return vals


def _validate(vals: Sequence[int], tokens: Sequence[str]) -> None:
    seen: set[int] = set()
    for v, tok in zip(vals, tokens):
        if v <= 0:
            raise ParseError(f"non-positive value {tok!r}")
        if v in seen:
            raise ParseError(f"duplicate value {tok!r}")
        seen.add(v)
    n = len(vals)
    for v in range(1, n + 1):
        if v not in seen:
            raise ParseError(f"missing value {v}")


def parse_permutation(text: str) -> Perm:
    """Parse the shared text format into a permutation.

    >>> parse_permutation("2413")
    (2, 4, 1, 3)
    >>> parse_permutation("2,4,1,3")
    (2, 4, 1, 3)
    >>> parse_permutation("")
    ()
    """
    s = text.strip()
    if not s:
        return ()
    if "," in s:
        tokens = [t.strip() for t in s.split(",")]
        vals = []
        for tok in tokens:
            try:
                vals.append(int(tok))
            except ValueError:
                raise ParseError(f"malformed token {tok!r}") from None
    else:
        tokens = list(s)
        vals = []
        for tok in tokens:
            if not tok.isdigit():
                raise ParseError(f"malformed token {tok!r}")
            vals.append(int(tok))
    _validate(vals, tokens)
    return tuple(vals)


def perm_to_text(p: Perm) -> str:
    """Inverse of :func:`parse_permutation` (digit string when possible)."""
    if len(p) <= 9:
        return "".join(str(v) for v in p)
    return ",".join(str(v) for v in p)


def standardize(values: Sequence[int]) -> Perm:
    """Map distinct integers order-isomorphically onto 1..k.

    >>> standardize((3, 1, 5, 6))
    (2, 1, 3, 4)
    """
    rank = {v: r for r, v in enumerate(sorted(values), start=1)}
    return tuple(rank[v] for v in values)


# ---------------------------------------------------------------------------
# containment


def contains(host: Sequence[int], pattern: Perm) -> bool:
    """Exact test: does some subsequence of ``host`` realize ``pattern``?

    Depth-first search over partial occurrences, pruning candidates by
    the value window forced by entries already matched.  ``host`` may be
    any sequence of distinct integers (only relative order matters).

    >>> contains((3, 1, 5, 4, 6, 2), (3, 1, 4, 2))
    True
    >>> contains((1, 2, 3, 4, 5, 6), (2, 1, 4, 3))
    False
    """
    k = len(pattern)
    n = len(host)
    if k == 0:
        return True
    if k > n:
        return False
    chosen = [0] * k
    last_idx = k - 1
    top = max(host) + 1  # host values need not be standardized
    bottom = min(host) - 1

    def rec(j: int, start: int) -> bool:
        pj = pattern[j]
        lo, hi = bottom, top
        for i in range(j):
            ci = chosen[i]
            if pattern[i] < pj:
                if ci > lo:
                    lo = ci
            elif ci < hi:
                hi = ci
        for pos in range(start, n - (k - j) + 1):
            v = host[pos]
            if lo < v < hi:
                if j == last_idx:
                    return True
                chosen[j] = v
                if rec(j + 1, pos + 1):
                    return True
        return False

    return rec(0, 0)


def avoids_all(host: Sequence[int], patterns: Iterable[Perm]) -> bool:
    """True iff ``host`` contains none of ``patterns``."""
    return not any(contains(host, p) for p in patterns)


def occurs_with_new_max(parent: Sequence[int], slot: int, pattern: Perm) -> bool:
    """Occurrence test through an inserted maximum.

    Conceptually the host is ``parent`` with a new maximum inserted at
    0-based position ``slot``; the function decides whether that host
    has an occurrence of ``pattern`` using the new entry.  When
    ``parent`` avoids ``pattern`` this is equivalent to containment in
    the child, which is what makes insertion-tree enumeration cheap.
    """
    k = len(pattern)
    if k == 0:
        return False
    if k == 1:
        return True
    q = pattern.index(k)  # the new maximum must play the pattern's maximum
    reduced = pattern[:q] + pattern[q + 1 :]
    n = len(parent)
    if q > slot or (k - 1 - q) > n - slot:
        return False
    chosen = [0] * (k - 1)
    last_idx = k - 2

    def rec(j: int, start: int) -> bool:
        if j == q and start < slot:
            start = slot
        pj = reduced[j]
        lo, hi = 0, n + 1
        for i in range(j):
            ci = chosen[i]
            if reduced[i] < pj:
                if ci > lo:
                    lo = ci
            elif ci < hi:
                hi = ci
        last = (slot - (q - j)) if j < q else (n - (k - 1 - j))
        for pos in range(start, last + 1):
            v = parent[pos]
            if lo < v < hi:
                if j == last_idx:
                    return True
                chosen[j] = v
                if rec(j + 1, pos + 1):
                    return True
        return False

    return rec(0, 0)


# ---------------------------------------------------------------------------
# statistics


def lr_maxima(p: Perm) -> tuple[int, ...]:
    """1-based positions whose value exceeds everything earlier.

    >>> lr_maxima((2, 4, 3, 1, 5, 6))
    (1, 2, 5, 6)
    """
    out = []
    best = 0
    for i, v in enumerate(p, start=1):
        if v > best:
            out.append(i)
            best = v
    return tuple(out)


def lr_minima(p: Perm) -> tuple[int, ...]:
    """1-based positions whose value is below everything earlier."""
    out = []
    best = len(p) + 1
    for i, v in enumerate(p, start=1):
        if v < best:
            out.append(i)
            best = v
    return tuple(out)


def leading_maxima_count(p: Perm) -> int:
    """Length of the maximal strictly increasing prefix (0 for the empty one).

    >>> leading_maxima_count((2, 4, 3, 1, 5, 6))
    2
    """
    count = 0
    best = 0
    for v in p:
        if v < best:
            break
        best = v
        count += 1
    return count


def horizontal_gaps(p: Perm) -> tuple[int, ...]:
    """Positions that are simultaneously an LR-maximum and a descent.

    >>> horizontal_gaps((2, 4, 3, 1, 5, 6))
    (2,)
    """
    n = len(p)
    lr = set(lr_maxima(p))
    return tuple(i for i in sorted(lr) if i < n and (i + 1) not in lr)


def bond_count(p: Perm) -> int:
    """Number of adjacent positions whose values differ by exactly 1."""
    return sum(1 for a, b in zip(p, p[1:]) if abs(a - b) == 1)


# ---------------------------------------------------------------------------
# composition operators


def direct_sum(a: Perm, b: Perm) -> Perm:
    """a (+) b: place b above and to the right of a."""
    n = len(a)
    return a + tuple(v + n for v in b)


def skew_sum(a: Perm, b: Perm) -> Perm:
    """a (-) b: place a above and to the left of b."""
    m = len(b)
    return tuple(v + m for v in a) + b


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def extraction(a: Perm, b: Perm, i: int) -> Perm:
    """Skew sum with the first ``i`` leading maxima of ``b`` slid before ``a``.

    Only the positions of the extracted entries change, never their
    values; ``i = 0`` degenerates to the plain skew sum.

    >>> extraction((1,), (2, 3, 1), 1)
    (2, 4, 3, 1)
    """
    if not a:
        raise ValueError("extraction requires a nonempty left operand")
    if i < 0 or i > leading_maxima_count(b):
        raise ValueError(
            f"cannot extract {i} leading maxima from a permutation with "
            f"{leading_maxima_count(b)}"
        )
    shifted = tuple(v + len(b) for v in a)
    return b[:i] + shifted + b[i:]


# ---------------------------------------------------------------------------
# intervals, simplicity, inflation, deflation


class Interval(NamedTuple):
    lo: int
    hi: int
    value_lo: int
    value_hi: int


def intervals(p: Perm) -> list[Interval]:
    """All nontrivial intervals (1 < length < n), sorted by (lo, hi).

    >>> intervals((2, 4, 1, 3))
    []
    """
    n = len(p)
    out = []
    for lo0 in range(n):
        mn = mx = p[lo0]
        for hi0 in range(lo0 + 1, n):
            v = p[hi0]
            if v < mn:
                mn = v
            elif v > mx:
                mx = v
            if hi0 - lo0 + 1 < n and mx - mn == hi0 - lo0:
                out.append(Interval(lo0 + 1, hi0 + 1, mn, mx))
    return out


def is_simple(p: Perm) -> bool:
    """True iff ``p`` has no nontrivial interval (1, 12, 21, () are simple)."""
    n = len(p)
    for lo0 in range(n):
        mn = mx = p[lo0]
        for hi0 in range(lo0 + 1, n):
            v = p[hi0]
            if v < mn:
                mn = v
            elif v > mx:
                mx = v
            if hi0 - lo0 + 1 < n and mx - mn == hi0 - lo0:
                return False
    return True


def inflate(skeleton: Perm, blocks: Sequence[Perm]) -> Perm:
    """Replace each entry of ``skeleton`` by the corresponding block.

    >>> inflate((2, 1), ((1, 2), (1,)))
    (2, 3, 1)
    """
    if len(blocks) != len(skeleton):
        raise ValueError(
            f"expected {len(skeleton)} blocks, got {len(blocks)}"
        )
    if any(not b for b in blocks):
        raise ValueError("blocks must be nonempty")
    size_of_value = {v: len(blocks[i]) for i, v in enumerate(skeleton)}
    offset = {}
    acc = 0
    for v in sorted(skeleton):
        offset[v] = acc
        acc += size_of_value[v]
    out: list[int] = []
    for v, block in zip(skeleton, blocks):
        off = offset[v]
        out.extend(w + off for w in block)
    return tuple(out)


class Deflation(NamedTuple):
    skeleton: Perm
    blocks: tuple[Perm, ...]


def sum_components(p: Perm) -> list[Perm]:
    """Finest decomposition p = c1 (+) c2 (+) ... into sum-indecomposables."""
    out = []
    start = 0
    mx = 0
    for idx, v in enumerate(p):
        if v > mx:
            mx = v
        if mx == idx + 1:
            out.append(tuple(w - start for w in p[start : idx + 1]))
            start = idx + 1
    return out


def skew_components(p: Perm) -> list[Perm]:
    """Finest decomposition p = c1 (-) c2 (-) ... into skew-indecomposables."""
    n = len(p)
    out = []
    start = 0
    mn = n + 1
    for idx, v in enumerate(p):
        if v < mn:
            mn = v
        if mn == n - idx:
            below = n - idx - 1
            out.append(tuple(w - below for w in p[start : idx + 1]))
            start = idx + 1
    return out


def is_sum_decomposable(p: Perm) -> bool:
    return len(sum_components(p)) > 1


def is_skew_decomposable(p: Perm) -> bool:
    return len(skew_components(p)) > 1


def _direct_sum_all(parts: Sequence[Perm]) -> Perm:
    acc: Perm = ()
    for part in parts:
        acc = direct_sum(acc, part)
    return acc


def _skew_sum_all(parts: Sequence[Perm]) -> Perm:
    acc: Perm = ()
    for part in parts:
        acc = skew_sum(acc, part)
    return acc


def deflate(p: Perm) -> Deflation:
    """Unique decomposition into a simple skeleton and its blocks.

    Conventions: skeleton 12 forces a sum-indecomposable first block,
    skeleton 21 a skew-indecomposable one; skeletons of length >= 4 have
    uniquely determined blocks (the maximal proper intervals, which are
    pairwise disjoint once sum/skew decomposability is excluded).

    >>> deflate((3, 1, 5, 4, 6, 2))
    Deflation(skeleton=(3, 1, 4, 2), blocks=((1,), (1,), (2, 1, 3), (1,)))
    """
    if not p:
        raise ValueError("cannot deflate the empty permutation")
    if len(p) == 1:
        return Deflation((1,), ((1,),))
    comps = sum_components(p)
    if len(comps) > 1:
        return Deflation((1, 2), (comps[0], _direct_sum_all(comps[1:])))
    comps = skew_components(p)
    if len(comps) > 1:
        return Deflation((2, 1), (comps[0], _skew_sum_all(comps[1:])))
    ivs = intervals(p)
    maximal = [
        a
        for a in ivs
        if not any(
            b is not a and b.lo <= a.lo and a.hi <= b.hi for b in ivs
        )
    ]
    maximal.sort()
    blocks: list[Perm] = []
    reps: list[int] = []
    pos = 1
    for iv in maximal:
        if iv.lo < pos:
            raise AssertionError(f"overlapping maximal intervals in {p}")
        while pos < iv.lo:
            blocks.append((1,))
            reps.append(p[pos - 1])
            pos += 1
        blocks.append(tuple(v - iv.value_lo + 1 for v in p[iv.lo - 1 : iv.hi]))
        reps.append(iv.value_lo)
        pos = iv.hi + 1
    while pos <= len(p):
        blocks.append((1,))
        reps.append(p[pos - 1])
        pos += 1
    return Deflation(standardize(reps), tuple(blocks))


# ---------------------------------------------------------------------------
# deletions


def strip_leading_maxima(p: Perm) -> Perm:
    """Delete the increasing prefix and standardize the remainder.

    >>> strip_leading_maxima((2, 4, 3, 1, 5, 6))
    (2, 1, 3, 4)
    """
    return standardize(p[leading_maxima_count(p):])


def delete_lr_maxima(p: Perm) -> Perm:
    """Delete every LR-maximum position and standardize the remainder.

    >>> delete_lr_maxima((2, 4, 3, 1, 5, 6))
    (2, 1)
    """
    lr = set(lr_maxima(p))
    return standardize([v for i, v in enumerate(p, start=1) if i not in lr])
