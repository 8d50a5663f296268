"""Self-contained verification battery behind the ``selftest`` subcommand.

Each check mirrors one of the project's acceptance criteria at a scale
bounded by ``max_n``.  Checks never raise; failures (including unexpected
exceptions) are reported in the returned list so the CLI can render one
line per check and exit 2 when anything failed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from . import engine
from .admissibility import (
    Monomial,
    candidate_colorings,
    hall_condition,
    orientation_walk_condition,
)
from .census import (
    canonical_key,
    census_classes,
    contributing_reduced_bipartite_census,
    decoration_count,
    small_reduced_census,
    is_contributing,
    reduce_map,
    underlying_multigraph,
    verify_decoration_accounting,
)
from .closedform import partition_polynomial, lassalle_scan, family_sum_polynomial, symmetrized_polynomial
from .engine import full_expansion, genus_part
from .polygon import (
    Gluing,
    double_factorial,
    enumerate_gluings,
    enumerate_twisted_gluings,
    glue,
    rotate_gluing,
)

PINNED_GENUS1_VALUES = {
    (3, (2,)): 4,
    (4, (3,)): 21,
    (5, (2, 2)): 20,
    (5, (4,)): 65,
    (6, (3, 2)): 143,
    (6, (5,)): 155,
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _run(name: str, fn: Callable[[], str]) -> CheckResult:
    try:
        return CheckResult(name, True, fn())
    except Exception as exc:
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")


def _check_gluing_counts(max_n: int) -> str:
    counts = []
    for n in range(1, max_n + 1):
        got = sum(1 for _ in enumerate_gluings(n))
        expected = double_factorial(2 * n - 1)
        assert got == expected, f"n={n}: {got} != {expected}"
        counts.append(got)
    return f"matching counts {counts} match the double factorials"


def _check_twisted_counts(max_n: int) -> str:
    top = min(max_n, 4)
    for n in range(1, top + 1):
        got = sum(1 for _ in enumerate_twisted_gluings(n))
        expected = double_factorial(2 * n - 1) << n
        assert got == expected, f"n={n}: {got} != {expected}"
    return f"twisted counts match (2n-1)!!*2^n for n<= {top}"


def _check_glue_invariants(max_n: int) -> str:
    top = min(max_n, 5)
    maps = 0
    for n in range(1, top + 1):
        for g in enumerate_gluings(n):
            m = glue(g)
            assert sum(m.degree.values()) == 2 * n
            assert m.euler_char == m.vertex_count - n + 1
            assert m.doubled_genus >= 0
            assert m.bipartite
            maps += 1
    return f"{maps} maps satisfy the degree-sum, Euler, and bipartite invariants"


def _check_rotation_equivariance(max_n: int) -> str:
    top = min(max_n, 4)
    checked = 0
    for n in range(1, top + 1):
        for g in enumerate_gluings(n):
            m = glue(g)
            sig = (sorted(m.degree.values()), m.euler_char,
                   len(m.black_vertices), len(m.white_vertices))
            for r in range(n):
                m2 = glue(rotate_gluing(g, r))
                sig2 = (sorted(m2.degree.values()), m2.euler_char,
                        len(m2.black_vertices), len(m2.white_vertices))
                assert sig == sig2, (g, r)
                checked += 1
    return f"{checked} rotated maps keep degree multiset, Euler characteristic, colors"


def _check_oracle_equivalence(max_n: int) -> str:
    top = min(max_n, 6)
    pairs = 0
    for n in range(1, top + 1):
        for g in enumerate_gluings(n):
            m = glue(g)
            for q in candidate_colorings(m):
                assert hall_condition(m, q) == orientation_walk_condition(m, q), (g, q)
                pairs += 1
    sampled = 0
    if max_n >= 7:
        rng = random.Random(20260808)
        while sampled < 10_000:
            perm = list(range(14))
            rng.shuffle(perm)
            pairing = [0] * 14
            for k in range(0, 14, 2):
                a, b = perm[k], perm[k + 1]
                pairing[a] = b
                pairing[b] = a
            m = glue(Gluing(tuple(pairing)))
            for q in candidate_colorings(m):
                assert hall_condition(m, q) == orientation_walk_condition(m, q)
                sampled += 1
    extra = f" plus {sampled} sampled pairs at n=7" if sampled else ""
    return f"both oracles agree on all {pairs} (map, q) pairs for n<= {top}{extra}"


def _check_genus1_agreement(max_n: int, threads: int) -> str:
    checked = 0
    for n in range(3, max_n + 1):
        reference = {m.parts: v for m, v in partition_polynomial(n).terms.items()}
        assert {m.parts: v for m, v in family_sum_polynomial(n).terms.items()} == reference, n
        assert {m.parts: v for m, v in symmetrized_polynomial(n).terms.items()} == reference, n
        part = genus_part(n, 2, threads=threads)
        assert {m.parts: v for m, v in part.terms.items()} == reference, n
        assert part.raw_counts == part.terms, f"genus-1 rescale factor != 1 at n={n}"
        checked += len(reference)
    return f"three closed forms == enumeration on {checked} genus-one coefficients, n=3..{max_n}"


def _check_pinned_values(max_n: int, threads: int) -> str:
    hit = 0
    for (n, parts), expected in PINNED_GENUS1_VALUES.items():
        if n > max_n:
            continue
        raw, coeff = engine.coefficient(n, Monomial(parts), threads=threads)
        assert raw == coeff == expected, (n, parts, raw, coeff, expected)
        hit += 1
    return f"{hit} pinned genus-one values reproduced by enumeration"


def _check_rescale_integrality(max_n: int, threads: int) -> str:
    top = min(max_n, 6)
    terms = 0
    for n in range(1, top + 1):
        for part in full_expansion(n, threads=threads):
            bad = part.inexact_monomials()
            assert not bad, (
                f"inexact power-of-two division at n={n}: "
                + ", ".join(f"mu={m.parts} raw={part.raw_counts[m]}" for m in bad)
            )
            terms += len(part.terms)
    return f"{terms} rescaled coefficients are exact integers for n<= {top}"


def _check_pinned_census_counts(max_n: int) -> str:
    details = []
    if max_n >= 3:
        small = small_reduced_census(3)
        assert len(small) == 5, f"reduced twisted census gave {len(small)} classes, expected 5"
        details.append("5 reduced classes (twisted, dihedral, n<=3)")
    if max_n >= 6:
        contributing = contributing_reduced_bipartite_census(6)
        assert len(contributing) == 7, f"contributing reduced-bipartite census gave {len(contributing)}, expected 7"
        details.append("7 contributing reduced-bipartite classes (n<=6)")
    return "; ".join(details) if details else "skipped (max_n too small)"


def _check_orbit_stabilizer(max_n: int) -> str:
    top = min(max_n, 6)
    classes_seen = 0
    for n in range(1, top + 1):
        classes = census_classes(n)
        assert sum(c.orbit_size for c in classes) == double_factorial(2 * n - 1)
        for c in classes:
            assert c.orbit_size * c.stabilizer_order == n, c
        classes_seen += len(classes)
    # a filtered family: genus-one maps at n=3 total four gluings in two orbits
    fam = census_classes(3, doubled_genus=2, bipartite_only=True)
    assert sorted(c.orbit_size for c in fam) == [1, 3]
    return f"orbit*stabilizer == n for all {classes_seen} classes, n<= {top}"


def _check_decoration_count() -> str:
    cases = 0
    for m in range(1, 5):
        for k in range(6):
            decoration_count(m, k, verify=True)
            cases += 1
    return f"{cases} decoration counts match explicit placement generation"


def _check_decoration_accounting(max_n: int) -> str:
    bases = [c for c in contributing_reduced_bipartite_census(min(max_n, 6)) if c.n <= 4]
    cases = 0
    for c in bases:
        m = glue(c.representative)
        b0, w0 = len(m.black_vertices), len(m.white_vertices)
        for kp in range(3):
            for lv in range(4):
                report = verify_decoration_accounting(c, b0 + kp, w0 + kp + lv)
                assert report.ok, report
                cases += 1
    return f"labeled-map accounting holds for {cases} decoration targets on {len(bases)} bases"


def _check_reduction(max_n: int) -> str:
    top = min(max_n, 6)
    targets = {canonical_key(underlying_multigraph(glue(c.representative)))
               for c in contributing_reduced_bipartite_census(6)}
    reduced_maps = 0
    for n in range(1, top + 1):
        for g in enumerate_gluings(n):
            m = glue(g)
            if m.doubled_genus != 2 or not is_contributing(m):
                continue
            k1 = canonical_key(reduce_map(m, ("leaf", "smooth")))
            k2 = canonical_key(reduce_map(m, ("smooth", "leaf")))
            assert k1 == k2, f"reduction is not confluent on {g}"
            assert k1 in targets, f"{g} does not reduce to a contributing class"
            reduced_maps += 1
    return f"{reduced_maps} contributing genus-one maps reduce confluently into the 7 classes"


def _check_determinism(max_n: int) -> str:
    n = min(max_n, 5)
    one = engine._scan_branch((n, tuple(range(1, 2 * n)), 0))
    split = [engine._scan_branch((n, tuple(range(1, 2 * n))[k::3], 0)) for k in range(3)]
    merged: dict[tuple[int, ...], int] = {}
    for _cnt, tal in split:
        for key, v in tal.items():
            merged[key] = merged.get(key, 0) + v
    assert sum(c for c, _t in split) == one[0]
    assert merged == one[1]
    return f"partitioned enumeration merge equals the single pass at n={n}"


def _check_color_swap(max_n: int) -> str:
    n = min(max_n, 4)
    plain = engine._scan_branch((n, tuple(range(1, 2 * n)), 0))[1]
    swapped = engine._scan_branch((n, tuple(range(1, 2 * n)), 1))[1]
    assert plain == swapped
    return f"per-monomial totals are invariant under the black/white swap at n={n}"


def _check_degenerate_genus1(threads: int) -> str:
    part = genus_part(2, 2, threads=threads)
    assert part.terms == {} and part.raw_counts == {}
    return "the genus-one stratum at n=2 is empty"


def _check_lassalle() -> str:
    report = lassalle_scan(12)
    assert report.ok, report.violations
    assert all(v > 0 for _n, _mu, v in report.rows)
    return f"{len(report.rows)} genus-one coefficients up to n=12 are positive integers"


def run_selftest(max_n: int = 6, threads: int = 1) -> list[CheckResult]:
    if max_n < 1:
        raise ValueError(f"max_n must be >= 1, got {max_n}")
    checks = [
        _run("gluing-counts", lambda: _check_gluing_counts(max_n)),
        _run("twisted-counts", lambda: _check_twisted_counts(max_n)),
        _run("glue-invariants", lambda: _check_glue_invariants(max_n)),
        _run("rotation-equivariance", lambda: _check_rotation_equivariance(max_n)),
        _run("oracle-equivalence", lambda: _check_oracle_equivalence(max_n)),
        _run("genus1-agreement", lambda: _check_genus1_agreement(max_n, threads)),
        _run("pinned-values", lambda: _check_pinned_values(max_n, threads)),
        _run("rescale-integrality", lambda: _check_rescale_integrality(max_n, threads)),
        _run("census-pinned-counts", lambda: _check_pinned_census_counts(max_n)),
        _run("orbit-stabilizer", lambda: _check_orbit_stabilizer(max_n)),
        _run("decoration-count", _check_decoration_count),
        _run("decoration-accounting", lambda: _check_decoration_accounting(max_n)),
        _run("reduction-closure", lambda: _check_reduction(max_n)),
        _run("parallel-determinism", lambda: _check_determinism(max_n)),
        _run("color-swap", lambda: _check_color_swap(max_n)),
        _run("degenerate-genus1", lambda: _check_degenerate_genus1(threads)),
        _run("lassalle-positivity", _check_lassalle),
    ]
    return checks
