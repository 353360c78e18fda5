"""Acceptance criteria, one check (and one printed PASS/FAIL line) each.

Run under pytest, or directly with ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import sys
import time

import numpy as np
import pytest

from amqft.accuracy import make_reference, ordering_check, relative_errors
from amqft.elaborations import ElaborationId, bindings
from amqft.elaborations import backward as el_backward
from amqft.elaborations import forward as el_forward
from amqft.metering import measure, predicted_cost
from amqft.oracle import pruned_transform, reference_cells
from amqft.signals import Domain, SignalBuffer, TransformKind
from amqft.tables import build_trig_table
from amqft.variants import FunctionId, build_plan, execute, min_size

# Pinned tolerances and grids.
COUNT_SIZES = [2**e for e in range(2, 12)]
ORACLE_MAX_N = 1024
ORACLE_TRIALS = 20
TOL_ACCURATE = 1e-10
TOL_MIXED_SMALL = 1e-8  # N <= 64
TOL_MIXED = 1e-6  # N <= 1024
CONST_TOL = 1e-15
CONST_NMAX = [8, 16, 64, 256, 1024, 4096]
SANDWICH_SIZES = [8, 16, 32, 64]
SANDWICH_TOL = 1e-12
ORDER_SIZES = [256, 1024]
ORDER_TRIALS = 50
ORDER_MARGIN = 10.0

# Reference CDFT rows: (adds, muls, flops case A, flops case B).
CDFT_LITERAL = {16: (148, 20, 168, 172), 2048: (61444, 16388, 77832, 79840)}


def _line(num: int, ok: bool, text: str) -> str:
    return f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {text}"


def check_counts():
    bad = []
    for v in range(1, 9):
        for kind in TransformKind:
            for N in COUNT_SIZES:
                if N < min_size(kind):
                    continue
                muls, adds, bt = predicted_cost(kind, N)
                m = measure(v, kind, N)
                if m.as_tuple() != (adds, muls, bt if v % 2 else 0):
                    bad.append((v, kind.value, N, m.as_tuple()))
    for N, (adds, muls, fa, fb) in CDFT_LITERAL.items():
        even, odd = measure(4, "cdft", N), measure(1, "cdft", N)
        got = (even.adds, even.muls, even.flops_case_a, odd.flops_case_b)
        if got != (adds, muls, fa, fb) or odd.flops_case_a != fa:
            bad.append(("literal", N, got))
    detail = "exact integer match, 8 variants x 4 transforms, N=4..2048"
    return not bad, detail if not bad else f"{len(bad)} mismatches, first {bad[0]}"


def check_oracle():
    worst = {}
    bad = []
    for kind in TransformKind:
        N = min_size(kind)
        while N <= ORACLE_MAX_N:
            ref = make_reference(kind, N, ORACLE_TRIALS, seed=N)
            for v in range(1, 9):
                err = float(relative_errors(execute(v, kind, ref.inputs).cells, ref).max())
                if v <= 4:
                    tol = TOL_ACCURATE
                else:
                    tol = TOL_MIXED_SMALL if N <= 64 else TOL_MIXED
                group = "1-4" if v <= 4 else "5-8"
                worst[group] = max(worst.get(group, 0.0), err)
                if err > tol:
                    bad.append((v, kind.value, N, err))
            N *= 2
    detail = (f"max rel L2 err v1-4 {worst['1-4']:.2e}, v5-8 {worst['5-8']:.2e} "
              f"({ORACLE_TRIALS} trials, N<={ORACLE_MAX_N})")
    return not bad, detail if not bad else f"{len(bad)} cells over tolerance, first {bad[0]}"


def _distinct(values: np.ndarray) -> int:
    v = np.sort(values)
    return 1 + int(np.sum(np.diff(v) > CONST_TOL))


def check_constants():
    problems = []
    for Nmax in CONST_NMAX:
        sets = {}
        for v in range(1, 9):
            t = build_trig_table(v, Nmax)
            vals = t.value_set()
            sets[v] = np.sort(vals)
            if len(vals) != Nmax // 4:
                problems.append(f"v{v} Nmax={Nmax}: {len(vals)} stored")
            d = _distinct(vals)
            if d != Nmax // 4:
                problems.append(f"v{v} Nmax={Nmax}: {d} distinct values, expected {Nmax // 4}")
        for group in ((1, 3, 5, 7), (2, 4, 6, 8)):
            for v in group[1:]:
                if np.max(np.abs(sets[v] - sets[group[0]])) > CONST_TOL:
                    problems.append(f"Nmax={Nmax}: v{v} value set differs from v{group[0]}")
    if not problems:
        return True, "Nmax/4 distinct constants per table; family value sets coincide to 1e-15"
    reciprocal = [p for p in problems if "distinct" in p]
    note = ""
    if reciprocal and len(reciprocal) == len(problems):
        note = (" (reciprocal tables: 1/(2cos(pi/4)) equals the shared cos(pi/4); "
                "stored counts and value-set equalities hold)")
    return False, f"{len(problems)} problems, first: {problems[0]}{note}"


def check_sandwich():
    rng = np.random.default_rng(7)
    worst, tested, bad = 0.0, 0, []
    for b in bindings():
        for N in SANDWICH_SIZES:
            need = max([b.mother_type.min_n] + [c.min_n * b.child_n_ratio for c in b.child_types])
            if N < need:
                continue
            m = SignalBuffer(b.mother_type, N, Domain.TEMPORAL,
                             rng.uniform(-1, 1, b.mother_type.length(N, Domain.TEMPORAL)))
            kids = el_forward(b.id, m)
            got = el_backward(b.id, [pruned_transform(k) for k in kids]).cells
            ref = reference_cells(m)
            err = np.max(np.abs(got - ref)) / max(1.0, np.max(np.abs(ref)))
            worst = max(worst, err)
            tested += 1
            if err > SANDWICH_TOL:
                bad.append((b.id.value, b.mother_type.name, N, err))
    ids = {b.id for b in bindings()}
    ok = not bad and ids == set(ElaborationId)
    detail = f"{tested} (elaboration, type, N) cells over {len(ids)} elaborations, max err {worst:.1e}"
    return ok, detail if not bad else f"{len(bad)} cells over tolerance, first {bad[0]}"


def check_ordering():
    parts, ok, soft = [], True, []
    for N in ORDER_SIZES:
        res = ordering_check(TransformKind.CDFT, N, ORDER_TRIALS, seed=0, margin=ORDER_MARGIN)
        mean = dict(res.ranked)
        ok = ok and res.reference_ok and bool(res.mixed_worse) and bool(res.v2_best)
        if res.mixed_worse and not res.margin_ok:
            soft.append(f"N={N} margin below {ORDER_MARGIN:g}x")
        ratio = min(mean[v] for v in (5, 6, 7, 8)) / max(mean[v] for v in (1, 2, 3, 4))
        parts.append(
            f"N={N}: mixed worse {'yes' if res.mixed_worse else 'NO'} ({ratio:.1e}x), "
            f"v2<=v1,v3 {'yes' if res.v2_best else 'NO'} "
            f"(v1 {mean[1]:.3e}, v2 {mean[2]:.3e}, v3 {mean[3]:.3e})"
        )
    text = "; ".join(parts)
    if soft:
        text += " [warning: " + ", ".join(soft) + "]"
    return ok, text


def check_structure():
    problems = []
    for a, b in ((1, 4), (3, 2), (5, 8), (7, 6)):
        pa, pb = build_plan(a), build_plan(b)
        differ = {fn for fn in pa.functions | pb.functions
                  if pa.wiring.get(fn) != pb.wiring.get(fn)}
        if differ != {FunctionId.DCT_OO, FunctionId.DST_OO}:
            problems.append(f"v{a}/v{b} differ in {sorted(f.value for f in differ)}")
    ot = {FunctionId.DCT_OT, FunctionId.DST_OT}
    to = {FunctionId.DCT_TO, FunctionId.DST_TO}
    for t, f in ((1, 2), (4, 3), (5, 6), (8, 7)):
        ft = build_plan(t).reachable(FunctionId.CDFT)
        ff = build_plan(f).reachable(FunctionId.CDFT)
        if ft - ff != ot or ff - ft != to:
            problems.append(f"v{t}/v{f} function sets {sorted(x.value for x in ft ^ ff)}")
    detail = "pairs 1/4, 3/2, 5/8, 7/6 differ only in dct_oo/dst_oo; ot<->to across families"
    return not problems, detail if not problems else "; ".join(problems)


CRITERIA = [
    (1, "exact count reproduction", check_counts),
    (2, "oracle equivalence", check_oracle),
    (3, "constant budget", check_constants),
    (4, "elaboration round trips", check_sandwich),
    (5, "accuracy ordering", check_ordering),
    (6, "structural equalities", check_structure),
]


@pytest.mark.parametrize("num,name,check", CRITERIA, ids=[c[1].replace(" ", "_") for c in CRITERIA])
def test_criterion(num, name, check, capsys):
    t0 = time.perf_counter()
    ok, detail = check()
    with capsys.disabled():
        print("\n" + _line(num, ok, f"{name} -- {detail} [{time.perf_counter() - t0:.1f}s]"))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for num, name, check in CRITERIA:
        ok, detail = check()
        failed += not ok
        print(_line(num, ok, f"{name} -- {detail}"))
    sys.exit(1 if failed else 0)
