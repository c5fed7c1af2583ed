"""Acceptance suite AC-1 .. AC-10.

Each check prints one line "AC-k PASS (t s)" or "AC-k FAIL: reason" straight to
the terminal (pytest capture is bypassed) and then asserts.
"""

import itertools
import json
import time
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

import pytest

from gelfandpairs import gelfand, qfunc, qjohnson
from gelfandpairs.exactnum import Cyclotomic
from gelfandpairs.qfunc import count_hom_rank, gauss_binom, qjohnson_phi, qkrawtchouk, qkrawtchouk_sum
from gelfandpairs.qjohnson import QJParams

FIXTURES = Path(__file__).parent / "fixtures"

AC6_GRID = [(2, 3, 1, 0, 1), (2, 4, 1, 0, 1), (2, 4, 2, 1, 1), (2, 4, 1, 0, 2), (3, 3, 1, 0, 1)]


def q2_desk(max_n=4):
    return [QJParams(2, n, m, r, s) for n in range(1, max_n + 1) for m in range(n + 1)
            for r in range(m + 1) for s in range(n - m + 1)]


@contextmanager
def acceptance(capsys, tag, limit):
    t0 = time.perf_counter()
    try:
        yield
    except AssertionError as e:
        msg = str(e).splitlines()[0] if str(e) else "assertion failed"
        with capsys.disabled():
            print(f"\n{tag} FAIL: {msg}")
        raise
    dt = time.perf_counter() - t0
    ok = dt < limit
    with capsys.disabled():
        print(f"\n{tag} {'PASS' if ok else 'FAIL'} ({dt:.1f} s, limit {limit} s)")
    assert ok, f"{tag} exceeded its time limit: {dt:.1f} s"


def test_ac1_krawtchouk_agreement(capsys):
    with acceptance(capsys, "AC-1", 60):
        count = 0
        for q in (2, 3):
            for a, b in itertools.product(range(4), repeat=2):
                for ell, x in itertools.product(range(min(a, b) + 1), repeat=2):
                    closed = qkrawtchouk(ell, x, a, b, q)
                    brute = qkrawtchouk_sum(ell, x, a, b, q)
                    assert closed == brute, f"K_{ell}({x}; {a},{b}; {q}): {closed} != {brute}"
                    count += 1
        assert count == 140


def test_ac2_orbit_mass_and_base_pin(capsys):
    with acceptance(capsys, "AC-2", 60):
        for q in (2, 3):
            for n in range(0, 6):
                for m, in itertools.product(range(n + 1)):
                    for r, s in itertools.product(range(m + 1), range(n - m + 1)):
                        p = QJParams(q, n, m, r, s)
                        size = gauss_binom(m, r, q) * gauss_binom(n - m, s, q) * q ** (s * (m - r))
                        mass = sum(qjohnson.orbit_size_gamma(*t, p) for t in qjohnson.orbit_parameters(p))
                        assert mass == size == p.X_size, f"mass {mass} != |X| {size} at {p.as_tuple()}"
                        assert qjohnson.orbit_size_gamma(r, s, s, p) == 1, f"gamma(r,s,s) != 1 at {p.as_tuple()}"


def test_ac3_orbit_structure_oracle(capsys):
    with acceptance(capsys, "AC-3", 300):
        for p in q2_desk(4):
            ad = qjohnson.engine_adapter(p)
            inst = ad.instance
            ot = inst.orbit_table
            triples = [ad.triple(x) for x in inst.X]
            base = p.base
            # orbit-for-orbit: delta to the base point is constant on engine orbits and separates them
            label_of_orbit = {}
            for k, tr in enumerate(triples):
                lab = qjohnson.delta(tr, base, p)
                prev = label_of_orbit.setdefault(ot.orbit_of[k], lab)
                assert prev == lab, f"delta not constant on an engine orbit at {p.as_tuple()}"
            assert len(set(label_of_orbit.values())) == len(ot.reps), f"delta merges orbits at {p.as_tuple()}"
            assert sorted(label_of_orbit.values()) == qjohnson.orbit_parameters(p)
            for o, lab in label_of_orbit.items():
                assert ot.sizes[o] == qjohnson.orbit_size_gamma(*lab, p) == ot.formula_sizes[o], \
                    f"orbit size mismatch at {p.as_tuple()} {lab}"
            # pairwise: the diagonal relation of (x, x') and delta(x, x') determine each other
            R = inst.relation_matrix
            fwd, back = {}, {}
            for i, j in itertools.product(range(len(triples)), repeat=2):
                d = qjohnson.delta(triples[i], triples[j], p)
                rel = int(R[i, j])
                assert fwd.setdefault(rel, d) == d, f"relation -> delta not a function at {p.as_tuple()}"
                assert back.setdefault(d, rel) == rel, f"delta -> relation not a function at {p.as_tuple()}"


def test_ac4_gelfand_certificates(capsys):
    with acceptance(capsys, "AC-4", 300):
        for p in q2_desk(4):
            cert = qjohnson.engine_adapter(p).instance.gelfand_certificate()
            for key in ("commutative", "symmetric", "condition_i", "condition_ii", "consistent"):
                assert cert[key], f"{key} false at {p.as_tuple()}"
        cert = gelfand.build_wreath_instance([[1], [2, 3]], 3).gelfand_certificate()
        assert cert["commutative"] and not cert["symmetric"], f"wreath 1|2,3: {cert}"
        cert = gelfand.build_wreath_instance([[1, 2], [3, 4]], 3).gelfand_certificate()
        assert not cert["condition_i"], f"wreath 1,2|3,4: {cert}"
        assert cert["consistent"]


def test_ac5_convention_pin(capsys):
    with acceptance(capsys, "AC-5", 300):
        matches = {c.name: True for c in qfunc.CONVENTIONS}
        for n in range(1, 6):
            for m in range(0, min(2, n) + 1):
                for q in (2, 3):
                    table, ws = qjohnson.grassmann_table(n, m, q)
                    for c in qfunc.CONVENTIONS:
                        if not matches[c.name]:
                            continue
                        try:
                            rows = qjohnson.qjohnson_rows(n, m, q, ws, c)
                        except ZeroDivisionError:
                            matches[c.name] = False
                            continue
                        matches[c.name] = gelfand.same_row_sets(rows, table.values)
        winners = [k for k, v in matches.items() if v]
        assert len(winners) == 1, f"conventions matching the oracle: {winners}"
        pin = json.loads((FIXTURES / "pochhammer_pin.json").read_text())
        assert pin["pinned"] == winners[0] == qfunc.DEFAULT_CONVENTION.name
        assert pin["matches"] == matches


def test_ac6_three_way_agreement(capsys):
    with acceptance(capsys, "AC-6", 900):
        for t in AC6_GRID:
            res = qjohnson.three_way(QJParams(*t))
            assert all(res.values()), f"{t}: {res}"


def test_ac7_orthogonality_and_mass(capsys):
    with acceptance(capsys, "AC-7", 300):
        for t in AC6_GRID:
            p = QJParams(*t)
            rep = qjohnson.verify_orthogonality_qj(p)
            assert rep["ok"], f"{t}: {rep['failures']}"
            comps = qjohnson.components(p)
            assert sum(qjohnson.dim_component(*c, p) for c in comps) == p.X_size
            for c in comps:
                assert qjohnson.beta_norm(*c, p) * qjohnson.dim_component(*c, p) == p.X_size


def lambda_family(p):
    m, r = p.m, p.r
    out = []
    for h in range(max(2 * r - m, 0), r + 1):
        for i in range(max(2 * p.s - p.k1, 0), p.s + 1):
            for ell in range(min(i, m - 2 * r + h) + 1):
                out.append((h, i, ell))
    return out


def test_ac8_intermediate_basis(capsys):
    with acceptance(capsys, "AC-8", 300):
        for t in AC6_GRID:
            p = QJParams(*t)
            ad = qjohnson.engine_adapter(p)
            inst = ad.instance
            labels = ad.orbit_labels
            order = [labels.index(o) for o in qjohnson.orbit_parameters(p)]
            basis = gelfand.lambda_basis(inst)
            engine_rows = [[vals[k] for k in order] for _, vals in basis]
            closed_rows = [[qjohnson.lambda_qj(h, i, ell, o, p) for o in qjohnson.orbit_parameters(p)]
                           for h, i, ell in lambda_family(p)]
            assert gelfand.same_row_sets(engine_rows, closed_rows), f"Lambda rows differ at {t}"
            funcs = [inst.lambda_function(g) for g, _ in basis]
            ones = [1] * len(inst.X)
            for a, b in itertools.combinations_with_replacement(range(len(funcs)), 2):
                val = gelfand.inner(funcs[a], funcs[b], ones)
                expect = basis[a][0].norm_squared(inst) if a == b else 0
                assert val == expect, f"Gram entry ({a},{b}) at {t}: {val} != {expect}"


def test_ac9_harmonics(capsys):
    with acceptance(capsys, "AC-9", 300):
        p = QJParams(2, 3, 1, 0, 1)
        pts = qjohnson.enumerate_X(p)
        labels = qjohnson.relation_labels(p, pts)
        comps = qjohnson.components(p)
        E = {c: qjohnson.idempotent(*c, p, pts, labels) for c in comps}
        n = len(pts)
        for c in comps:
            M = E[c]
            sq = [[sum((M[i][k] * M[k][j] for k in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
            assert sq == M, f"E{c} is not idempotent"
        total = [[sum(E[c][i][j] for c in comps) for j in range(n)] for i in range(n)]
        assert total == [[int(i == j) for j in range(n)] for i in range(n)], "sum of idempotents is not I"
        for c in comps:
            for seed in range(3):
                F = qjohnson.spherical_harmonic(*c, seed, p, pts)
                f = [F[x] for x in pts]
                assert any(not v.is_zero() for v in f), f"zero harmonic {c} seed {seed}"
                for c2 in comps:
                    img = qjohnson.apply_matrix(E[c2], f)
                    if c2 == c:
                        assert img == f, f"E{c} F != F for seed {seed}"
                    else:
                        assert all(v.is_zero() for v in img), f"E{c2} F{c} != 0 for seed {seed}"


def test_ac10_scheme_recovery(capsys):
    with acceptance(capsys, "AC-10", 120):
        for n in range(1, 5):
            # m = 0: the Grassmann scheme G(n, s)
            for s in range(n + 1):
                p = QJParams(2, n, 0, 0, s)
                ad = qjohnson.engine_adapter(p)
                diag = ad.table_in_labels(ad.instance.spherical_by_diagonalization())
                ws = [i for _, i, _ in qjohnson.orbit_parameters(p)]
                rows = qjohnson.qjohnson_rows(n, s, 2, ws)
                assert gelfand.same_row_sets(diag, rows), f"q-Johnson rows differ at n={n}, s={s}"
            # r = 0, s = n - m: bilinear forms Hom(F^s, F^m), normalized q-Krawtchouk rows
            for m in range(1, n + 1):
                s = n - m
                p = QJParams(2, n, m, 0, s)
                ad = qjohnson.engine_adapter(p)
                diag = ad.table_in_labels(ad.instance.spherical_by_diagonalization())
                orbs = qjohnson.orbit_parameters(p)
                rows = [[Fraction(qkrawtchouk(ell, i - j, m, s, 2), count_hom_rank(ell, m, s, 2)) for _, i, j in orbs]
                        for ell in range(min(m, s) + 1)]
                assert gelfand.same_row_sets(diag, rows), f"q-Krawtchouk rows differ at n={n}, m={m}"
