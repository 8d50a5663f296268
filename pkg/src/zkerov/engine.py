"""Exact coefficient computation by exhaustive gluing enumeration.

One full pass over all (2n-1)!! matchings tallies, for every map, every
admissible q-coloring into a per-monomial raw count.  Coefficients are
the raw counts rescaled by (-1)^(n+1+V) * 2^(V-(n-1)) with V the
monomial's vertex count; when the exponent is negative the division must
be exact, anything else is an internal consistency failure.

The scan keeps a union-find incrementally along the matching recursion
(undo on backtrack) instead of re-gluing every matching from scratch;
tests cross-validate it against the straightforward glue()/enumerate_q()
path.  Enumeration is partitioned into the 2n-1 branches fixed by the
partner of side 0, so worker processes merge tallies by plain addition
and results are independent of the worker count.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .admissibility import Monomial
from .partitions import compositions
from .polygon import double_factorial

DEFAULT_N_LIMIT = 8
FORCE_N_LIMIT = 10

CACHE_SCHEMA_VERSION = 1


class InternalConsistencyError(RuntimeError):
    """A quantity that must be exact (a power-of-two division, an integral
    rational total) came out inexact; signals an implementation bug."""


def rescaled_coefficient(n: int, mono: Monomial, raw_count: int) -> int:
    """Exact coefficient from a raw (M,q) pair count.

    Raises InternalConsistencyError when the required power-of-two division
    is inexact.  This does happen: at n=6 the raw counts of R_4 (701) and
    R_2 (1348) are not divisible by 2 and 8 respectively, so those two
    coefficients are genuine half-integers; see rescaled_coefficient_exact
    for the tolerant variant used by the expansion report.
    """
    value = rescaled_coefficient_exact(n, mono, raw_count)
    if isinstance(value, Fraction):
        raise InternalConsistencyError(
            f"raw count {raw_count} for mu={mono.parts} at n={n} is not divisible "
            f"by 2^{(n - 1) - mono.vertex_count}"
        )
    return value


def rescaled_coefficient_exact(n: int, mono: Monomial, raw_count: int) -> int | Fraction:
    """Rescaled coefficient as an exact integer, or an exact dyadic rational
    when the power-of-two division does not come out even."""
    v = mono.vertex_count
    sign = -1 if (n + 1 + v) % 2 else 1
    shift = v - (n - 1)
    if shift >= 0:
        return sign * raw_count * (1 << shift)
    quotient, remainder = divmod(raw_count, 1 << -shift)
    if remainder == 0:
        return sign * quotient
    return Fraction(sign * raw_count, 1 << -shift)


@dataclass(frozen=True)
class GenusPolynomial:
    """Terms of one genus stratum: monomial -> exact coefficient, plus the
    pre-rescaling (M,q) pair counts.

    A coefficient is a Fraction exactly when its power-of-two division is
    inexact (a known phenomenon from n=6 on); ``inexact_monomials`` lists
    those terms so reports can flag them.
    """

    n: int
    doubled_genus: int
    raw_counts: dict[Monomial, int]
    terms: dict[Monomial, int | Fraction]

    def sorted_monomials(self) -> list[Monomial]:
        return sorted(self.raw_counts, key=lambda m: m.parts, reverse=True)

    def inexact_monomials(self) -> list[Monomial]:
        return [m for m in self.sorted_monomials() if isinstance(self.terms[m], Fraction)]


@dataclass(frozen=True)
class ScanResult:
    """Full-pass tallies over every matching of the 2n-gon."""

    n: int
    gluing_count: int
    tallies: dict[Monomial, int]  # monomial -> number of admissible (M,q) pairs


def _check_limit(n: int, force: bool) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > FORCE_N_LIMIT:
        raise ValueError(f"n={n} exceeds the hard limit {FORCE_N_LIMIT}")
    if n > DEFAULT_N_LIMIT and not force:
        raise ValueError(
            f"n={n} exceeds the default limit {DEFAULT_N_LIMIT}; pass force=True (--force)"
        )


# composition lists are tiny and shared across millions of leaves
_COMP_CACHE: dict[tuple[int, int], list[tuple[int, ...]]] = {}


def _comps(total: int, parts: int) -> list[tuple[int, ...]]:
    key = (total, parts)
    got = _COMP_CACHE.get(key)
    if got is None:
        got = list(compositions(total, parts, 1))
        _COMP_CACHE[key] = got
    return got


def _scan_branch(task: tuple[int, tuple[int, ...], int]) -> tuple[int, dict[tuple[int, ...], int]]:
    """Tally all matchings whose side-0 partner lies in the given set.

    Returns (matching count, {monomial parts: raw count}).
    """
    n, first_partners, black_parity = task
    m = 2 * n
    tally: dict[tuple[int, ...], int] = {}
    count = 0

    pairing = [-1] * m
    parent = list(range(m))
    size = [1] * m

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def apply_pair(i: int, j: int) -> list[int]:
        # merge the corner pairs dictated by the color-preserving rule
        i1 = i + 1 if i + 1 < m else 0
        j1 = j + 1 if j + 1 < m else 0
        if (i ^ j) & 1:
            merges = ((i, j1), (i1, j))
        else:
            merges = ((i, j), (i1, j1))
        ops: list[int] = []
        for a, b in merges:
            ra, rb = find(a), find(b)
            if ra != rb:
                if size[ra] < size[rb]:
                    ra, rb = rb, ra
                parent[rb] = ra
                size[ra] += size[rb]
                ops.append(rb)
        return ops

    def undo(ops: list[int]) -> None:
        for rb in reversed(ops):
            ra = parent[rb]
            size[ra] -= size[rb]
            parent[rb] = rb

    def leaf() -> None:
        root_of = [find(c) for c in range(m)]
        black_index: dict[int, int] = {}
        white_index: dict[int, int] = {}
        for c in range(m):
            r = root_of[c]
            if c % 2 == black_parity:
                if r not in black_index:
                    black_index[r] = len(black_index)
            elif r not in white_index:
                white_index[r] = len(white_index)
        b = len(black_index)
        w = len(white_index)
        if w < b or b == 0:
            return
        if b == 1:
            key = (w + 1,)
            tally[key] = tally.get(key, 0) + 1
            return
        masks = [0] * b
        for i in range(m):
            j = pairing[i]
            if j < i:
                continue
            u = root_of[i]
            v = root_of[i + 1 if i + 1 < m else 0]
            if u in black_index:
                masks[black_index[u]] |= 1 << white_index[v]
            else:
                masks[black_index[v]] |= 1 << white_index[u]
        full = 1 << b
        nbr_count = [0] * full
        nbr = [0] * full
        for a in range(1, full):
            low = a & -a
            nbr[a] = nbr[a ^ low] | masks[low.bit_length() - 1]
            nbr_count[a] = nbr[a].bit_count()
        need = [0] * full
        for comp in _comps(w, b):
            ok = True
            for a in range(1, full - 1):
                low = a & -a
                req = need[a] = need[a ^ low] + comp[low.bit_length() - 1]
                if nbr_count[a] <= req:
                    ok = False
                    break
            if ok:
                key = tuple(sorted((x + 1 for x in comp), reverse=True))
                tally[key] = tally.get(key, 0) + 1

    def rec(start: int) -> None:
        nonlocal count
        i = start
        while i < m and pairing[i] >= 0:
            i += 1
        if i == m:
            count += 1
            leaf()
            return
        for j in range(i + 1, m):
            if pairing[j] < 0:
                pairing[i] = j
                pairing[j] = i
                ops = apply_pair(i, j)
                rec(i + 1)
                undo(ops)
                pairing[j] = -1
        pairing[i] = -1

    for fp in first_partners:
        pairing[0] = fp
        pairing[fp] = 0
        ops = apply_pair(0, fp)
        rec(1)
        undo(ops)
        pairing[fp] = -1
        pairing[0] = -1

    return count, tally


_SCAN_MEMO: dict[tuple[int, int], ScanResult] = {}


def scan(
    n: int,
    *,
    threads: int = 1,
    cache_dir: str | Path | None = None,
    black_parity: int = 0,
    force: bool = False,
) -> ScanResult:
    """Full tally pass over every matching of the 2n-gon (memoized per run)."""
    _check_limit(n, force)
    memo_key = (n, black_parity)
    got = _SCAN_MEMO.get(memo_key)
    if got is not None:
        return got

    if cache_dir is not None and black_parity == 0:
        cached = load_cache(cache_dir, n)
        if cached is not None:
            _SCAN_MEMO[memo_key] = cached
            return cached

    branches = tuple(range(1, 2 * n))
    workers = max(1, min(threads, len(branches)))
    if workers == 1:
        raw_results = [_scan_branch((n, branches, black_parity))]
    else:
        chunks = [
            (n, branches[k::workers], black_parity)
            for k in range(workers)
            if branches[k::workers]
        ]
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            raw_results = list(pool.map(_scan_branch, chunks))

    total = 0
    merged: dict[tuple[int, ...], int] = {}
    for cnt, tal in raw_results:
        total += cnt
        for key, c in tal.items():
            merged[key] = merged.get(key, 0) + c

    expected = double_factorial(2 * n - 1)
    if total != expected:
        raise InternalConsistencyError(
            f"scanned {total} matchings at n={n}, expected {expected}"
        )
    result = ScanResult(
        n=n,
        gluing_count=total,
        tallies={Monomial(parts): c for parts, c in merged.items()},
    )
    _SCAN_MEMO[memo_key] = result
    if cache_dir is not None and black_parity == 0:
        write_cache(cache_dir, result)
    return result


def coefficient(
    n: int,
    mono: Monomial,
    *,
    threads: int = 1,
    cache_dir: str | Path | None = None,
    force: bool = False,
) -> tuple[int, int]:
    """(raw count, exact coefficient) of a monomial in the n-th polynomial."""
    result = scan(n, threads=threads, cache_dir=cache_dir, force=force)
    raw = result.tallies.get(mono, 0)
    return raw, rescaled_coefficient(n, mono, raw)


def genus_part(
    n: int,
    doubled_genus: int,
    *,
    threads: int = 1,
    cache_dir: str | Path | None = None,
    force: bool = False,
) -> GenusPolynomial:
    """The homogeneous part with vertex count V = n + 1 - doubledGenus."""
    if doubled_genus < 0:
        raise ValueError(f"doubledGenus must be >= 0, got {doubled_genus}")
    result = scan(n, threads=threads, cache_dir=cache_dir, force=force)
    target_v = n + 1 - doubled_genus
    raw = {m: c for m, c in result.tallies.items() if m.vertex_count == target_v}
    terms = {m: rescaled_coefficient_exact(n, m, c) for m, c in raw.items()}
    return GenusPolynomial(n=n, doubled_genus=doubled_genus, raw_counts=raw, terms=terms)


def full_expansion(
    n: int,
    *,
    threads: int = 1,
    cache_dir: str | Path | None = None,
    force: bool = False,
) -> list[GenusPolynomial]:
    """All occurring genus strata, doubledGenus ascending."""
    result = scan(n, threads=threads, cache_dir=cache_dir, force=force)
    by_genus: dict[int, dict[Monomial, int]] = {}
    for m, c in result.tallies.items():
        by_genus.setdefault(n + 1 - m.vertex_count, {})[m] = c
    return [
        GenusPolynomial(
            n=n,
            doubled_genus=dg,
            raw_counts=raw,
            terms={m: rescaled_coefficient_exact(n, m, c) for m, c in raw.items()},
        )
        for dg, raw in sorted(by_genus.items())
    ]


def cache_path(cache_dir: str | Path, n: int) -> Path:
    return Path(cache_dir) / f"zkerov-cache-v{CACHE_SCHEMA_VERSION}-n{n}.json"


def write_cache(cache_dir: str | Path, result: ScanResult) -> Path:
    path = cache_path(cache_dir, result.n)
    path.parent.mkdir(parents=True, exist_ok=True)
    doc = {
        "schemaVersion": CACHE_SCHEMA_VERSION,
        "n": result.n,
        "gluings": str(result.gluing_count),
        "tallies": [
            {"mu": list(m.parts), "rawCount": str(result.tallies[m])}
            for m in sorted(result.tallies, key=lambda m: m.parts, reverse=True)
        ],
    }
    path.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    return path


def load_cache(cache_dir: str | Path, n: int) -> ScanResult | None:
    path = cache_path(cache_dir, n)
    if not path.exists():
        return None
    doc = json.loads(path.read_text(encoding="utf-8"))
    if doc.get("schemaVersion") != CACHE_SCHEMA_VERSION or doc.get("n") != n:
        return None
    tallies = {
        Monomial(tuple(int(a) for a in entry["mu"])): int(entry["rawCount"])
        for entry in doc["tallies"]
    }
    return ScanResult(n=n, gluing_count=int(doc["gluings"]), tallies=tallies)
