"""Exhaustive, pruned enumeration of pattern-avoidance classes.

Generation proceeds level by level: every member of Av_n(basis) arises
exactly once by inserting the new maximum n into a member of
Av_{n-1}(basis), so only occurrences through the new maximum need to be
tested.  The frequent patterns (2143, 3142, 132, 4132) get dedicated
per-parent precomputations; everything else falls back to the generic
pinned-maximum search in :mod:`permlab.perms`.

Output is deterministic: each level is sorted lexicographically, with or
without worker processes.
"""

from __future__ import annotations

import hashlib
import json
import os
from bisect import bisect_right, insort
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from io import StringIO
from typing import Callable, Iterable, Sequence

from permlab.perms import (
    Perm,
    bond_count,
    contains,
    is_simple,
    leading_maxima_count,
    lr_minima,
    occurs_with_new_max,
    parse_permutation,
    perm_to_text,
)

DEFAULT_CAP = 10_000_000

_INF = 1 << 30


class CapacityError(RuntimeError):
    """Raised when a level exceeds the configured class-size cap."""

    def __init__(self, n: int, size: int, cap: int):
        super().__init__(f"Av_{n} exceeds capacity cap ({size} > {cap})")
        self.n = n
        self.size = size
        self.cap = cap


# ---------------------------------------------------------------------------
# pattern basis


@dataclass(frozen=True)
class PatternBasis:
    """Normalized finite set of forbidden patterns.

    Duplicates and dominated patterns (those containing another basis
    element) are removed; the remainder is sorted by length, then
    lexicographically.
    """

    patterns: tuple[Perm, ...]

    def __init__(self, patterns: Iterable[Perm]):
        pats = sorted(set(tuple(p) for p in patterns), key=lambda p: (len(p), p))
        if any(len(p) == 0 for p in pats):
            raise ValueError("patterns must have length >= 1")
        kept = [
            p
            for p in pats
            if not any(q != p and contains(p, q) for q in pats)
        ]
        object.__setattr__(self, "patterns", tuple(kept))

    @classmethod
    def from_text(cls, text: str) -> "PatternBasis":
        """Parse a comma-separated list of digit-string patterns."""
        tokens = [t.strip() for t in text.split(",") if t.strip()]
        if not tokens:
            raise ValueError("empty basis")
        pats = []
        for tok in tokens:
            if not tok.isdigit():
                raise ValueError(
                    f"basis token {tok!r} is not a digit string; digit-string "
                    "and comma-list forms may not be mixed within one token"
                )
            pats.append(parse_permutation(tok))
        return cls(pats)

    @property
    def key(self) -> str:
        return ";".join(perm_to_text(p) for p in self.patterns)

    def __iter__(self):
        return iter(self.patterns)

    def __len__(self):
        return len(self.patterns)


# ---------------------------------------------------------------------------
# per-pattern insertion checkers
#
# Each checker decides, for a parent known to avoid the pattern, whether
# inserting a new maximum at a given slot creates an occurrence.  The
# prepare() step may build whatever per-parent tables make the per-slot
# query cheap.


class _GenericChecker:
    cost = 10

    def __init__(self, pattern: Perm):
        self.pattern = pattern

    def prepare(self, parent: Perm):
        return None

    def occurs(self, parent: Perm, state, slot: int) -> bool:
        return occurs_with_new_max(parent, slot, self.pattern)


class _Checker2143:
    # New max plays the 4.  Occurrence iff some inversion left of the
    # slot has its top below some value right of the slot; only the
    # minimal inversion top matters.
    cost = 1
    pattern = (2, 1, 4, 3)

    def prepare(self, parent: Perm):
        n = len(parent)
        min_inv_top = [_INF] * (n + 1)
        prefix_sorted: list[int] = []
        for j, v in enumerate(parent):
            best = min_inv_top[j]
            idx = bisect_right(prefix_sorted, v)
            if idx < len(prefix_sorted) and prefix_sorted[idx] < best:
                best = prefix_sorted[idx]
            min_inv_top[j + 1] = best
            insort(prefix_sorted, v)
        max_suffix = [0] * (n + 1)
        for j in range(n - 1, -1, -1):
            max_suffix[j] = max(max_suffix[j + 1], parent[j])
        return min_inv_top, max_suffix

    def occurs(self, parent: Perm, state, slot: int) -> bool:
        min_inv_top, max_suffix = state
        return max_suffix[slot] > min_inv_top[slot]


class _Checker3142:
    # New max plays the 4: need prefix values straddling a suffix value.
    cost = 2
    pattern = (3, 1, 4, 2)

    def prepare(self, parent: Perm):
        n = len(parent)
        min_gt = [[_INF] * (n + 2)]
        max_lt = [[-1] * (n + 2)]
        for p in range(1, n + 1):
            w = parent[p - 1]
            row_gt = min_gt[p - 1].copy()
            row_lt = max_lt[p - 1].copy()
            for v in range(1, w):
                if row_gt[v] == _INF:
                    row_gt[v] = p - 1
            for v in range(w + 1, n + 1):
                if row_lt[v] < p - 1:
                    row_lt[v] = p - 1
            min_gt.append(row_gt)
            max_lt.append(row_lt)
        return min_gt, max_lt

    def occurs(self, parent: Perm, state, slot: int) -> bool:
        min_gt, max_lt = state
        row_gt = min_gt[slot]
        row_lt = max_lt[slot]
        for l in range(slot, len(parent)):
            v = parent[l]
            if row_gt[v] < row_lt[v]:
                return True
        return False


class _Checker132:
    # New max plays the 3: any prefix value below any suffix value.
    cost = 0
    pattern = (1, 3, 2)

    def prepare(self, parent: Perm):
        n = len(parent)
        min_prefix = [_INF] * (n + 1)
        for j, v in enumerate(parent):
            min_prefix[j + 1] = min(min_prefix[j], v)
        max_suffix = [0] * (n + 1)
        for j in range(n - 1, -1, -1):
            max_suffix[j] = max(max_suffix[j + 1], parent[j])
        return min_prefix, max_suffix

    def occurs(self, parent: Perm, state, slot: int) -> bool:
        min_prefix, max_suffix = state
        return max_suffix[slot] > min_prefix[slot]


class _Checker4132:
    # New max plays the 4 in front: occurrence iff the suffix from the
    # slot contains a 132.
    cost = 1
    pattern = (4, 1, 3, 2)

    def prepare(self, parent: Perm):
        n = len(parent)
        has132_from = [False] * (n + 2)
        suffix_sorted: list[int] = []
        max_inv_bottom = -1  # max bottom over inversions in the suffix
        for j in range(n - 1, -1, -1):
            w = parent[j]
            starts_here = max_inv_bottom > w
            has132_from[j] = has132_from[j + 1] or starts_here
            idx = bisect_right(suffix_sorted, w) - 1
            if idx >= 0 and suffix_sorted[idx] > max_inv_bottom:
                max_inv_bottom = suffix_sorted[idx]
            insort(suffix_sorted, w)
        return has132_from

    def occurs(self, parent: Perm, state, slot: int) -> bool:
        return state[slot]


_SPECIAL: dict[Perm, type] = {
    (2, 1, 4, 3): _Checker2143,
    (3, 1, 4, 2): _Checker3142,
    (1, 3, 2): _Checker132,
    (4, 1, 3, 2): _Checker4132,
}


def _compile_checkers(patterns: Sequence[Perm], generic_only: bool = False):
    checkers = []
    for p in patterns:
        cls = None if generic_only else _SPECIAL.get(p)
        checkers.append(cls() if cls else _GenericChecker(p))
    checkers.sort(key=lambda c: c.cost)
    return checkers


def _extend_level(parents: Sequence[Perm], patterns: Sequence[Perm],
                  generic_only: bool = False) -> list[Perm]:
    """Children of ``parents`` under max-insertion that stay in the class."""
    checkers = _compile_checkers(patterns, generic_only)
    out: list[Perm] = []
    append = out.append
    for parent in parents:
        new_val = len(parent) + 1
        states = [c.prepare(parent) for c in checkers]
        for slot in range(new_val):
            for c, st in zip(checkers, states):
                if c.occurs(parent, st, slot):
                    break
            else:
                append(parent[:slot] + (new_val,) + parent[slot:])
    return out


def _extend_level_chunk(args) -> list[Perm]:
    parents, patterns = args
    return _extend_level(parents, patterns)


# ---------------------------------------------------------------------------
# class enumeration with an in-process cache

_LEVELS_CACHE: dict[tuple[Perm, ...], list[list[Perm]]] = {}


def class_levels(basis: PatternBasis, max_n: int, *, parallelism: int = 1,
                 cap: int = DEFAULT_CAP) -> list[list[Perm]]:
    """Av_0(basis) .. Av_max_n(basis) as sorted lists (cached per basis)."""
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    if len(basis) == 0:
        raise ValueError("basis must be nonempty")
    patterns = basis.patterns
    levels = _LEVELS_CACHE.setdefault(patterns, [[()]])
    while len(levels) <= max_n:
        parents = levels[-1]
        if parallelism > 1 and len(parents) >= 4 * parallelism:
            chunk = (len(parents) + parallelism - 1) // parallelism
            jobs = [
                (parents[i : i + chunk], patterns)
                for i in range(0, len(parents), chunk)
            ]
            with ProcessPoolExecutor(max_workers=parallelism) as pool:
                parts = list(pool.map(_extend_level_chunk, jobs))
            children = [p for part in parts for p in part]
        else:
            children = _extend_level(parents, patterns)
        if len(children) > cap:
            raise CapacityError(len(levels), len(children), cap)
        children.sort()
        levels.append(children)
    return levels[: max_n + 1]


def enumerate_class(basis: PatternBasis, n: int, *, parallelism: int = 1,
                    cap: int = DEFAULT_CAP) -> list[Perm]:
    """Exactly Av_n(basis) in lexicographic order."""
    return class_levels(basis, n, parallelism=parallelism, cap=cap)[n]


def count_class(basis: PatternBasis, max_n: int, *, parallelism: int = 1,
                cap: int = DEFAULT_CAP, cache_dir: str | None = None) -> list[int]:
    """(|Av_0|, ..., |Av_max_n|), optionally resumable via a cache directory."""
    cached = _read_count_cache(cache_dir, basis) if cache_dir else {}
    if cached and all(n in cached for n in range(max_n + 1)):
        return [cached[n] for n in range(max_n + 1)]
    counts = [
        len(level)
        for level in class_levels(basis, max_n, parallelism=parallelism, cap=cap)
    ]
    if cache_dir:
        _write_count_cache(cache_dir, basis, counts)
    return counts


def _basis_hash(basis: PatternBasis) -> str:
    return hashlib.sha256(basis.key.encode()).hexdigest()[:16]


def _count_cache_path(cache_dir: str) -> str:
    return os.path.join(cache_dir, "counts.txt")


def _read_count_cache(cache_dir: str, basis: PatternBasis) -> dict[int, int]:
    path = _count_cache_path(cache_dir)
    out: dict[int, int] = {}
    if not os.path.exists(path):
        return out
    want = _basis_hash(basis)
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            parts = line.strip().split(",")
            if len(parts) == 3 and parts[0] == want:
                out[int(parts[1])] = int(parts[2])
    return out


def _write_count_cache(cache_dir: str, basis: PatternBasis, counts: list[int]) -> None:
    os.makedirs(cache_dir, exist_ok=True)
    known = _read_count_cache(cache_dir, basis)
    h = _basis_hash(basis)
    with open(_count_cache_path(cache_dir), "a", encoding="utf-8") as fh:
        for n, c in enumerate(counts):
            if n not in known:
                fh.write(f"{h},{n},{c}\n")


# ---------------------------------------------------------------------------
# refined counting


def _lr_min_count(p: Perm) -> int:
    return len(lr_minima(p))


STATISTICS: dict[str, Callable[[Perm], int]] = {
    "leading-maxima": leading_maxima_count,
    "bond": bond_count,
    "lr-min": _lr_min_count,
}

FILTERS: dict[str, Callable[[Perm], bool]] = {
    "none": lambda p: True,
    "last-entry-equals-length": lambda p: bool(p) and p[-1] == len(p),
    "last-entry-not-length": lambda p: not p or p[-1] != len(p),
    "first-entry-not-max": lambda p: not p or p[0] != len(p),
    "first-entry-not-one": lambda p: bool(p) and p[0] != 1,
}


@dataclass
class RefinedCountTable:
    """Counts of a class by length and a tuple of statistics."""

    basis: PatternBasis
    max_length: int
    stat_names: tuple[str, ...]
    filter_name: str = "none"
    counts: dict[tuple[int, tuple[int, ...]], int] = field(default_factory=dict)

    def total(self, n: int) -> int:
        return sum(c for (m, _), c in self.counts.items() if m == n)

    def get(self, n: int, stats: tuple[int, ...]) -> int:
        return self.counts.get((n, stats), 0)

    def rows(self):
        for (n, stats), count in sorted(self.counts.items()):
            yield n, stats, count

    def to_csv(self) -> str:
        buf = StringIO()
        buf.write(",".join(["n", *self.stat_names, "count"]) + "\n")
        for n, stats, count in self.rows():
            buf.write(",".join(str(v) for v in [n, *stats, count]) + "\n")
        return buf.getvalue()

    def to_json(self) -> str:
        records = [
            {"n": n, **dict(zip(self.stat_names, stats)), "count": count}
            for n, stats, count in self.rows()
        ]
        return json.dumps(
            {
                "basis": [perm_to_text(p) for p in self.basis.patterns],
                "maxLength": self.max_length,
                "stats": list(self.stat_names),
                "filter": self.filter_name,
                "counts": records,
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "RefinedCountTable":
        data = json.loads(text)
        stat_names = tuple(data["stats"])
        counts = {
            (rec["n"], tuple(rec[s] for s in stat_names)): rec["count"]
            for rec in data["counts"]
        }
        return cls(
            basis=PatternBasis([parse_permutation(t) for t in data["basis"]]),
            max_length=data["maxLength"],
            stat_names=stat_names,
            filter_name=data["filter"],
            counts=counts,
        )


def export_counts(table: RefinedCountTable, fmt: str) -> bytes:
    """Deterministic serialization of a count table (csv or json)."""
    if fmt == "csv":
        return table.to_csv().encode()
    if fmt == "json":
        return table.to_json().encode()
    raise ValueError(f"unknown format {fmt!r}")


def refined_count(basis: PatternBasis, max_n: int, stats: Sequence[str],
                  filter_id: str = "none", *, parallelism: int = 1) -> RefinedCountTable:
    """Count class members by length and the named statistics.

    Statistics come from the closed registry {leading-maxima, bond,
    lr-min}; the optional element filter from {none,
    last-entry-equals-length, last-entry-not-length, first-entry-not-max,
    first-entry-not-one}.
    """
    try:
        fns = [STATISTICS[s] for s in stats]
    except KeyError as exc:
        raise ValueError(f"unknown statistic id {exc.args[0]!r}") from None
    if filter_id not in FILTERS:
        raise ValueError(f"unknown filter id {filter_id!r}")
    keep = FILTERS[filter_id]
    table = RefinedCountTable(basis, max_n, tuple(stats), filter_id)
    counts = table.counts
    for n, level in enumerate(class_levels(basis, max_n, parallelism=parallelism)):
        for p in level:
            if keep(p):
                key = (n, tuple(fn(p) for fn in fns))
                counts[key] = counts.get(key, 0) + 1
    return table


# ---------------------------------------------------------------------------
# simple permutations


def enumerate_simples(basis: PatternBasis, n: int) -> list[Perm]:
    """The simple members of Av_n(basis), sorted."""
    return [p for p in enumerate_class(basis, n) if is_simple(p)]


def simples_by_insertion(n: int) -> list[Perm]:
    """Length-n simples built from 132-avoiders by leading-maximum insertion.

    Base permutations are the alpha in Av_m(132) (m >= 3) with
    alpha_1 = m and alpha_m = m-1; below each row r in 2..m-1 at most one
    leading maximum is inserted, and exactly one between every bonded
    pair of rows.  Insertion below rows 1 and m is never allowed.
    """
    if n < 4:
        raise ValueError("the construction produces nothing below length 4")
    from itertools import combinations

    basis132 = PatternBasis([(1, 3, 2)])
    out: list[Perm] = []
    for m in range(3, n + 1):
        k = n - m
        if k > m - 2:
            continue
        for rho in enumerate_class(basis132, m - 2):
            alpha = (m,) + rho + (m - 1,)
            forced = {
                max(a, b)
                for a, b in zip(alpha, alpha[1:])
                if abs(a - b) == 1
            }
            free = sorted(set(range(2, m)) - forced)
            need = k - len(forced)
            if need < 0 or need > len(free):
                continue
            for extra in combinations(free, need):
                rows = sorted(forced.union(extra))
                sigma = _insert_leading_maxima(alpha, rows)
                out.append(sigma)
    return sorted(out)


def _insert_leading_maxima(alpha: Perm, rows: list[int]) -> Perm:
    """Insert one new leading maximum directly below each listed row."""
    shift = {}
    inserted = {}
    j = 0
    for v in range(1, len(alpha) + 1):
        if j < len(rows) and rows[j] == v:
            inserted[v] = v + j
            j += 1
        shift[v] = v + j
    prefix = tuple(inserted[r] for r in rows)
    return prefix + tuple(shift[v] for v in alpha)
