"""Element-wise verification of the structural facts behind the counts.

Every check here either scans an exhaustively enumerated class for a
claimed property or rebuilds a class from a case decomposition and
compares multisets, so failures always come with a concrete witness
permutation.  Reconstruction checks demand every element be produced
exactly once: overcounting is as much a failure as undercounting.
"""

from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from permlab.enumeration import (
    PatternBasis,
    class_levels,
    count_class,
    enumerate_simples,
    simples_by_insertion,
)
from permlab.perms import (
    Perm,
    avoids_all,
    contains,
    deflate,
    delete_lr_maxima,
    direct_sum,
    extraction,
    horizontal_gaps,
    identity,
    inflate,
    is_simple,
    is_skew_decomposable,
    is_sum_decomposable,
    leading_maxima_count,
    lr_maxima,
    lr_minima,
    perm_to_text,
    skew_sum,
    standardize,
    strip_leading_maxima,
)
from permlab.series import check_identity, identity_ids, named_series

BASIS_2143 = PatternBasis.from_text("2143")
BASIS_2143_3142 = PatternBasis.from_text("2143,3142")
BASIS_254613 = PatternBasis.from_text("2143,3142,254613")
BASIS_524361 = PatternBasis.from_text("2143,3142,524361")
BASIS_546132 = PatternBasis.from_text("2143,3142,546132")
BASIS_263514 = PatternBasis.from_text("2143,3142,263514")
BASIS_4132 = PatternBasis.from_text("2143,3142,4132")
PAT_132 = (1, 3, 2)

SCHRODER_BASES = {
    "254613": BASIS_254613,
    "524361": BASIS_524361,
    "546132": BASIS_546132,
    "263514": BASIS_263514,
}


@dataclass
class VerificationReport:
    check_id: str
    max_n: int
    status: str  # "pass" | "fail"
    witnesses: list[tuple[Perm, str]] = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json_dict(self) -> dict:
        return {
            "checkId": self.check_id,
            "maxN": self.max_n,
            "status": self.status,
            "witnesses": [
                {"perm": perm_to_text(p), "reason": r} for p, r in self.witnesses
            ],
            "elapsedMillis": round(self.elapsed_ms, 3),
        }


@dataclass(frozen=True)
class CaseTag:
    """Which branch of a case decomposition produced an element."""

    case_id: str  # "no-gap" | "one-gap" | "multi-gap"
    payload: tuple = ()

    def __str__(self) -> str:
        if not self.payload:
            return self.case_id
        return f"{self.case_id}{self.payload}"


def _report(check_id: str, max_n: int, witnesses: list[tuple[Perm, str]],
            started: float) -> VerificationReport:
    witnesses.sort(key=lambda w: (len(w[0]), w[0]))
    return VerificationReport(
        check_id,
        max_n,
        "fail" if witnesses else "pass",
        witnesses,
        (time.perf_counter() - started) * 1000.0,
    )


# ---------------------------------------------------------------------------
# structural scans


def check_top_values(max_n: int = 8) -> VerificationReport:
    """Over Av(2143): the LR-maxima from the last leading maximum onward
    carry exactly the top values, and that position is a horizontal gap
    unless the permutation is the identity."""
    started = time.perf_counter()
    witnesses: list[tuple[Perm, str]] = []
    for n, level in enumerate(class_levels(BASIS_2143, max_n)):
        if n == 0:
            continue
        for p in level:
            ell = leading_maxima_count(p)
            lrset = set(lr_maxima(p))
            tail = {p[i - 1] for i in lrset if i >= ell}
            expect = set(range(p[ell - 1], n + 1))
            if tail != expect:
                witnesses.append((p, f"LR tail values {sorted(tail)} != {sorted(expect)}"))
            if any(p[ell - 1] <= p[i - 1] for i in range(1, n + 1) if i not in lrset):
                witnesses.append((p, "a non-LR-maximum exceeds the last leading maximum"))
            if p != identity(n) and ell not in horizontal_gaps(p):
                witnesses.append((p, "last leading maximum is not a horizontal gap"))
    return _report("top-values", max_n, witnesses, started)


def _gap_blocks(p: Perm) -> list[Perm]:
    """Standardized non-LR-max content following each horizontal gap."""
    gaps = horizontal_gaps(p)
    lr = set(lr_maxima(p))
    blocks: list[list[int]] = [[] for _ in gaps]
    g = -1
    for i, v in enumerate(p, start=1):
        if i in lr:
            if g + 1 < len(gaps) and i == gaps[g + 1]:
                g += 1
            continue
        blocks[g].append(v)
    return [standardize(b) for b in blocks]


def check_gap_staircase(max_n: int = 8) -> VerificationReport:
    """Over Av(2143,3142): deleting all LR-maxima leaves the skew sum of
    the per-gap blocks."""
    started = time.perf_counter()
    witnesses: list[tuple[Perm, str]] = []
    for level in class_levels(BASIS_2143_3142, max_n):
        for p in level:
            blocks = _gap_blocks(p)
            stacked: Perm = ()
            for b in blocks:
                stacked = skew_sum(stacked, b)
            got = delete_lr_maxima(p)
            if got != stacked:
                witnesses.append(
                    (p, f"deleting LR-maxima gives {got}, gap blocks stack to {stacked}")
                )
    return _report("gap-staircase", max_n, witnesses, started)


def check_strip_characterization(max_n: int = 8) -> VerificationReport:
    """Membership in the 4132 class == stripped permutation avoids 132,
    over every permutation of each length."""
    from itertools import permutations as iperm

    started = time.perf_counter()
    witnesses: list[tuple[Perm, str]] = []
    basis = BASIS_4132.patterns
    for n in range(max_n + 1):
        for p in iperm(range(1, n + 1)):
            member = avoids_all(p, basis)
            stripped_ok = not contains(strip_leading_maxima(p), PAT_132)
            if member != stripped_ok:
                witnesses.append(
                    (p, f"class membership {member} but stripped-avoids-132 {stripped_ok}")
                )
    return _report("strip-132", max_n, witnesses, started)


# ---------------------------------------------------------------------------
# case-decomposition rebuilds


def _one_gap_pairs(levels: Sequence[Sequence[Perm]], max_core: int,
                   require_132_rest: bool) -> Iterator[tuple[Perm, int]]:
    """(beta, i) pairs usable for single-gap extraction cores."""
    for b_len in range(1, max_core):
        for beta in levels[b_len]:
            top = min(leading_maxima_count(beta), b_len - 1)
            for i in range(top + 1):
                if require_132_rest and not contains(beta[i:], PAT_132):
                    continue
                yield beta, i


def _with_trailing_runs(core: Perm, tag: CaseTag, max_n: int):
    m = 0
    while len(core) + m <= max_n:
        yield direct_sum(core, identity(m)), tag
        m += 1


def _sep_append(x: Perm, beta: Perm) -> Perm:
    b = len(beta)
    return (b + 1,) + tuple(v + b + 1 for v in x) + beta


def _gen_254613(max_n: int) -> Iterator[tuple[Perm, CaseTag]]:
    levels = class_levels(BASIS_254613, max_n)
    for n in range(max_n + 1):
        yield identity(n), CaseTag("no-gap")
    for beta, i in _one_gap_pairs(levels, max_n, require_132_rest=False):
        core = extraction((1,), beta, i)
        yield from _with_trailing_runs(core, CaseTag("one-gap", (beta, i)), max_n)
    # multi-gap: one gap insertion on a gapped seed, then any number of
    # block insertions, then a trailing run
    frontier: list[tuple[Perm, CaseTag]] = []
    for p0_len in range(2, max_n - 1):
        for p0 in levels[p0_len]:
            if p0 == identity(p0_len):
                continue
            capped = direct_sum(p0, (1,))
            for k1 in range(max_n - p0_len - 1):
                for b_len in range(1, max_n - p0_len - k1):
                    for beta in levels[b_len]:
                        x = direct_sum(identity(k1), skew_sum(capped, beta))
                        frontier.append((x, CaseTag("multi-gap", (p0, k1, beta))))
    while frontier:
        x, tag = frontier.pop()
        yield from _with_trailing_runs(x, tag, max_n)
        for k in range(max_n - len(x)):
            for b_len in range(1, max_n - len(x) - k + 1):
                if len(x) + k + 1 + b_len > max_n:
                    continue
                for beta in levels[b_len]:
                    x2 = direct_sum(identity(k), _sep_append(x, beta))
                    frontier.append((x2, CaseTag("multi-gap", tag.payload + (k, beta))))


def _gen_524361(max_n: int) -> Iterator[tuple[Perm, CaseTag]]:
    levels = class_levels(BASIS_524361, max_n)
    levels_4132 = class_levels(BASIS_4132, max_n)
    for level in levels_4132:
        for p in level:
            yield p, CaseTag("no-gap")  # the 132-free case, any gap count
    pairs = list(_one_gap_pairs(levels, max_n, require_132_rest=True))
    for beta, i in pairs:
        core = extraction((1,), beta, i)
        yield from _with_trailing_runs(core, CaseTag("one-gap", (beta, i)), max_n)
    for a_len in range(1, max_n - 3):
        for alpha in levels_4132[a_len]:
            if alpha[0] == 1:
                continue
            alpha_prime = direct_sum(alpha, (1,))
            for beta, i in pairs:
                if a_len + 1 + len(beta) > max_n:
                    continue
                core = extraction(alpha_prime, beta, i)
                yield from _with_trailing_runs(
                    core, CaseTag("multi-gap", (alpha, beta, i)), max_n
                )


def _in_relocation_domain(sigma: Perm) -> bool:
    """sigma != empty and the last leading maximum is not one more than
    its predecessor (predecessor of position 1 reads as value 0)."""
    if not sigma:
        return False
    ell = leading_maxima_count(sigma)
    prev = sigma[ell - 2] if ell >= 2 else 0
    return sigma[ell - 1] - 1 != prev


def _gen_546132(max_n: int) -> Iterator[tuple[Perm, CaseTag]]:
    levels = class_levels(BASIS_546132, max_n)
    levels_4132 = class_levels(BASIS_4132, max_n)
    for level in levels_4132:
        for p in level:
            yield p, CaseTag("no-gap")
    pairs = list(_one_gap_pairs(levels, max_n, require_132_rest=True))
    one_gap_by_len: dict[int, list[tuple[Perm, CaseTag]]] = {}
    for beta, i in pairs:
        core = extraction((1,), beta, i)
        for p, tag in _with_trailing_runs(core, CaseTag("one-gap", (beta, i)), max_n):
            yield p, tag
            one_gap_by_len.setdefault(len(p), []).append((p, tag))
    for b_len in range(1, max_n):
        for beta in levels_4132[b_len]:
            if not _in_relocation_domain(beta):
                continue
            ell = leading_maxima_count(beta)
            for a_len in range(4, max_n - b_len + 1):
                for alpha, _ in one_gap_by_len.get(a_len, []):
                    blocks = [(1,)] * b_len
                    blocks[ell - 1] = direct_sum(alpha, (1,))
                    yield inflate(beta, blocks), CaseTag("multi-gap", (alpha, beta))


def _rebuild_check(check_id: str, basis: PatternBasis,
                   gen: Callable[[int], Iterator[tuple[Perm, CaseTag]]],
                   max_n: int) -> VerificationReport:
    started = time.perf_counter()
    produced: Counter[Perm] = Counter()
    tags: dict[Perm, list[CaseTag]] = {}
    for p, tag in gen(max_n):
        if len(p) > max_n:
            continue
        produced[p] += 1
        tags.setdefault(p, []).append(tag)
    witnesses: list[tuple[Perm, str]] = []
    members: set[Perm] = set()
    for level in class_levels(basis, max_n):
        for p in level:
            members.add(p)
            got = produced.get(p, 0)
            if got == 0:
                witnesses.append((p, "class element never generated"))
            elif got > 1:
                via = ", ".join(str(t) for t in tags[p][:3])
                witnesses.append((p, f"generated {got} times (via {via})"))
    for p, count in produced.items():
        if p not in members:
            witnesses.append((p, f"generated {count}x but not in the class"))
    return _report(check_id, max_n, witnesses, started)


def check_rebuild_254613(max_n: int = 8) -> VerificationReport:
    """Identity / single-gap-extraction / gap-and-block-insertion cases
    rebuild the 254613 class exactly once each."""
    return _rebuild_check("rebuild-254613", BASIS_254613, _gen_254613, max_n)


def check_rebuild_524361(max_n: int = 8) -> VerificationReport:
    """132-free case plus extraction cases rebuild the 524361 class."""
    return _rebuild_check("rebuild-524361", BASIS_524361, _gen_524361, max_n)


def check_rebuild_546132(max_n: int = 8) -> VerificationReport:
    """132-free case, extraction case, and the inflate-at-last-leading-
    maximum case rebuild the 546132 class."""
    return _rebuild_check("rebuild-546132", BASIS_546132, _gen_546132, max_n)


# ---------------------------------------------------------------------------
# the prefix-relocation bijection


def relocate_identity_prefix(sigma: Perm) -> Perm:
    """Slide the maximal identity prefix to sit directly below and before
    the last leading maximum, values packed just under it."""
    ell = leading_maxima_count(sigma)
    i = 0
    while i < len(sigma) and sigma[i] == i + 1:
        i += 1
    if i == 0:
        return sigma
    top = sigma[ell - 1]

    def remap(v: int) -> int:
        if v <= i:
            return v + top - i - 1
        if v < top:
            return v - i
        return v

    middle = tuple(remap(v) for v in sigma[i : ell - 1])
    moved = tuple(range(top - i, top))
    return middle + moved + (top,) + tuple(remap(v) for v in sigma[ell:])


def check_prefix_relocation(max_n: int = 8) -> VerificationReport:
    """The relocation map is a length- and leading-maxima-preserving
    bijection from the bonded-top subset onto the first-entry != 1 subset
    of the 4132 class."""
    started = time.perf_counter()
    witnesses: list[tuple[Perm, str]] = []
    levels = class_levels(BASIS_4132, max_n)
    for n, level in enumerate(levels):
        if n == 0:
            continue
        members = set(level)
        domain = [p for p in level if _in_relocation_domain(p)]
        codomain = {p for p in level if p[0] != 1}
        image = set()
        for sigma in domain:
            tau = relocate_identity_prefix(sigma)
            if len(tau) != n:
                witnesses.append((sigma, f"image {tau} has wrong length"))
                continue
            if tau not in members:
                witnesses.append((sigma, f"image {tau} left the class"))
            if tau[0] == 1:
                witnesses.append((sigma, f"image {tau} starts with 1"))
            if leading_maxima_count(tau) != leading_maxima_count(sigma):
                witnesses.append((sigma, f"image {tau} changed leading maxima"))
            if tau in image:
                witnesses.append((sigma, f"image {tau} already hit (not injective)"))
            image.add(tau)
        if len(domain) != len(codomain):
            witnesses.append(
                ((), f"n={n}: domain size {len(domain)} != codomain size {len(codomain)}")
            )
        elif image != codomain:
            missed = sorted(codomain - image)[:3]
            witnesses.extend((p, "never hit by the relocation map") for p in missed)
    return _report("prefix-relocation", max_n, witnesses, started)


# ---------------------------------------------------------------------------
# simples


def check_simples_coincide(max_n: int = 8) -> VerificationReport:
    """The 263514 and 4132 classes have identical simple members."""
    started = time.perf_counter()
    witnesses: list[tuple[Perm, str]] = []
    for n in range(max_n + 1):
        a = set(enumerate_simples(BASIS_263514, n))
        b = set(enumerate_simples(BASIS_4132, n))
        for p in sorted(a - b):
            witnesses.append((p, "simple in the 263514 class only"))
        for p in sorted(b - a):
            witnesses.append((p, "simple in the 4132 class only"))
    return _report("simples-coincide", max_n, witnesses, started)


def check_simples_construction(max_n: int = 8) -> VerificationReport:
    """Leading-maximum insertion into 132-avoiders yields exactly the
    simples of the 4132 class (plus 1, 12, 21 at short lengths)."""
    started = time.perf_counter()
    witnesses: list[tuple[Perm, str]] = []
    short = {1: [(1,)], 2: [(1, 2), (2, 1)], 3: []}
    for n, expect in short.items():
        if n > max_n:
            continue
        got = enumerate_simples(BASIS_4132, n)
        if got != expect:
            witnesses.append(((), f"n={n}: simples {got} != {expect}"))
    for n in range(4, max_n + 1):
        built = simples_by_insertion(n)
        enumerated = enumerate_simples(BASIS_4132, n)
        built_set, enum_set = set(built), set(enumerated)
        if len(built) != len(built_set):
            dup = [p for p, c in Counter(built).items() if c > 1][:3]
            witnesses.extend((p, "constructed more than once") for p in dup)
        for p in sorted(built_set - enum_set):
            witnesses.append((p, "constructed but not a class simple"))
        for p in sorted(enum_set - built_set):
            witnesses.append((p, "class simple the construction misses"))
    return _report("simples-construction", max_n, witnesses, started)


def _is_one_of_132(p: Perm, i: int) -> bool:
    n = len(p)
    return any(
        p[i - 1] < p[k - 1] < p[j - 1]
        for j in range(i + 1, n + 1)
        for k in range(j + 1, n + 1)
    )


def _is_three_of_213(p: Perm, i: int) -> bool:
    return any(
        p[b - 1] < p[a - 1] < p[i - 1]
        for a in range(1, i)
        for b in range(a + 1, i)
    )


def check_inflation_rules(max_n: int = 8) -> VerificationReport:
    """Position classification of class simples, and closure of inflation:
    constrained positions tolerate only increasing blocks, free positions
    tolerate every small class member."""
    started = time.perf_counter()
    witnesses: list[tuple[Perm, str]] = []
    basis = BASIS_263514.patterns
    small_blocks = [
        p
        for n in (2, 3)
        for p in class_levels(BASIS_263514, 3)[n]
        if p != identity(len(p))
    ]
    for n in range(4, max_n + 1):
        for sigma in enumerate_simples(BASIS_263514, n):
            ell = leading_maxima_count(sigma)
            suffix_lrmin = set(lr_minima(standardize(sigma[ell:])))
            constrained = set()
            for i in range(1, n + 1):
                is_one = _is_one_of_132(sigma, i)
                is_three = _is_three_of_213(sigma, i)
                want_one = i < ell
                want_three = i > ell and (i - ell) not in suffix_lrmin
                if is_one != want_one:
                    witnesses.append(
                        (sigma, f"position {i}: 1-of-132 is {is_one}, classified {want_one}")
                    )
                if is_three != want_three:
                    witnesses.append(
                        (sigma, f"position {i}: 3-of-213 is {is_three}, classified {want_three}")
                    )
                if is_one or is_three:
                    constrained.add(i)
            free = set(range(1, n + 1)) - constrained
            ones = [(1,)] * n
            for i in constrained:
                blocks = list(ones)
                blocks[i - 1] = (2, 1)
                if avoids_all(inflate(sigma, blocks), basis):
                    witnesses.append(
                        (sigma, f"21 at constrained position {i} stays in the class")
                    )
            for i in free:
                for rho in small_blocks:
                    blocks = list(ones)
                    blocks[i - 1] = rho
                    if not avoids_all(inflate(sigma, blocks), basis):
                        witnesses.append(
                            (sigma, f"{perm_to_text(rho)} at free position {i} leaves the class")
                        )
            joint = [
                (2, 1) if i in free else (1, 2) for i in range(1, n + 1)
            ]
            if not avoids_all(inflate(sigma, joint), basis):
                witnesses.append((sigma, "joint conforming inflation leaves the class"))
    return _report("inflation-rules", max_n, witnesses, started)


# ---------------------------------------------------------------------------
# deflation uniqueness


def _all_decompositions(p: Perm) -> list[tuple[Perm, tuple[Perm, ...]]]:
    """Every way to write p as simple-skeleton[blocks] honoring the
    12/21 first-block conventions, found by brute force over cut sets."""
    n = len(p)
    if n == 1:
        return [((1,), ((1,),))]
    out = []
    for cuts in range(1 << (n - 1)):
        bounds = [0]
        for b in range(n - 1):
            if cuts >> b & 1:
                bounds.append(b + 1)
        bounds.append(n)
        if len(bounds) == 2:
            continue  # skeleton of length 1 is only for length-1 hosts
        segments = [p[a:b] for a, b in zip(bounds, bounds[1:])]
        blocks = []
        reps = []
        ok = True
        for seg in segments:
            lo, hi = min(seg), max(seg)
            if hi - lo + 1 != len(seg):
                ok = False
                break
            blocks.append(tuple(v - lo + 1 for v in seg))
            reps.append(lo)
        if not ok:
            continue
        skeleton = standardize(reps)
        if not is_simple(skeleton):
            continue
        if skeleton == (1, 2) and is_sum_decomposable(blocks[0]):
            continue
        if skeleton == (2, 1) and is_skew_decomposable(blocks[0]):
            continue
        out.append((skeleton, tuple(blocks)))
    return out


def check_deflation_uniqueness(max_n: int = 7) -> VerificationReport:
    """deflate() returns the unique convention-respecting decomposition."""
    from itertools import permutations as iperm

    started = time.perf_counter()
    witnesses: list[tuple[Perm, str]] = []
    for n in range(1, max_n + 1):
        for p in iperm(range(1, n + 1)):
            d = deflate(p)
            if inflate(d.skeleton, d.blocks) != p:
                witnesses.append((p, "deflation does not inflate back"))
                continue
            alternatives = _all_decompositions(p)
            if len(alternatives) != 1:
                witnesses.append(
                    (p, f"{len(alternatives)} convention-respecting decompositions")
                )
            elif alternatives[0] != (d.skeleton, d.blocks):
                witnesses.append((p, "deflate() disagrees with the exhaustive search"))
    return _report("deflation-uniqueness", max_n, witnesses, started)


# ---------------------------------------------------------------------------
# cross counts


DEFAULT_COUNT_TARGETS: list[tuple[PatternBasis, str]] = [
    (BASIS_254613, "large-schroder"),
    (BASIS_524361, "large-schroder"),
    (BASIS_546132, "large-schroder"),
    (BASIS_263514, "large-schroder"),
    (BASIS_4132, "a033321"),
]


def check_cross_counts(max_n: int = 10,
                       targets: Sequence[tuple[PatternBasis, str]] | None = None,
                       *, parallelism: int = 1) -> VerificationReport:
    """Class counts match their closed-form series coefficient by coefficient."""
    started = time.perf_counter()
    witnesses: list[tuple[Perm, str]] = []
    for basis, series_name in (targets if targets is not None else DEFAULT_COUNT_TARGETS):
        counts = count_class(basis, max_n, parallelism=parallelism)
        coeffs = named_series(series_name, max_n).x_coefficients()
        for n, (got, want) in enumerate(zip(counts, coeffs)):
            if got != want:
                witnesses.append(
                    ((), f"basis {basis.key}: count {got} at n={n}, "
                         f"{series_name} coefficient {want}")
                )
                break
    return _report("cross-count", max_n, witnesses, started)


# ---------------------------------------------------------------------------
# aggregation

STRUCTURAL_CHECKS: dict[str, Callable[[int], VerificationReport]] = {
    "top-values": check_top_values,
    "gap-staircase": check_gap_staircase,
    "strip-132": check_strip_characterization,
    "rebuild-254613": check_rebuild_254613,
    "rebuild-524361": check_rebuild_524361,
    "rebuild-546132": check_rebuild_546132,
    "prefix-relocation": check_prefix_relocation,
    "simples-coincide": check_simples_coincide,
    "simples-construction": check_simples_construction,
    "inflation-rules": check_inflation_rules,
    "deflation-uniqueness": check_deflation_uniqueness,
}


def check_ids() -> list[str]:
    return [*STRUCTURAL_CHECKS, "cross-count", *identity_ids()]


def _identity_report(identity_id: str, order: int) -> VerificationReport:
    started = time.perf_counter()
    res = check_identity(identity_id, order)
    witnesses: list[tuple[Perm, str]] = []
    if res.status == "fail":
        key, lhs, rhs = res.first_mismatch
        witnesses.append(
            ((), f"coefficient of x^{key[0]} t^{key[1]} u^{key[2]}: "
                 f"lhs {lhs} != rhs {rhs}")
        )
    return VerificationReport(
        identity_id, order, res.status, witnesses,
        (time.perf_counter() - started) * 1000.0,
    )


def run_check(check_id: str, max_n: int = 8, order: int = 12) -> VerificationReport:
    """Run one registered structural check or series identity by id."""
    if check_id in STRUCTURAL_CHECKS:
        budget = min(max_n, 7) if check_id == "deflation-uniqueness" else max_n
        return STRUCTURAL_CHECKS[check_id](budget)
    if check_id == "cross-count":
        return check_cross_counts(max_n)
    if check_id in identity_ids():
        from permlab.series import IDENTITIES

        budget = min(order, max_n) if IDENTITIES[check_id].enum_backed else order
        return _identity_report(check_id, budget)
    raise KeyError(
        f"unknown check id {check_id!r}; known: {', '.join(check_ids())}"
    )


def run_all(max_n: int = 8, order: int = 12, *, count_n: int = 10) -> list[VerificationReport]:
    """Every structural check plus every registered series identity.

    Structural checks run at max_n (deflation uniqueness capped at 7),
    cross counts at count_n, closed-form identities at ``order`` and
    enumeration-backed ones at min(order, max_n).
    """
    reports = [
        run_check(cid, max_n=max_n, order=order) for cid in STRUCTURAL_CHECKS
    ]
    reports.append(check_cross_counts(count_n))
    reports.extend(
        run_check(iid, max_n=max_n, order=order) for iid in identity_ids()
    )
    return reports


def reports_to_json(reports: Iterable[VerificationReport]) -> str:
    return json.dumps([r.to_json_dict() for r in reports], indent=2)
