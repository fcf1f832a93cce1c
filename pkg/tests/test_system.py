from fractions import Fraction

import pytest

from tbtridiag.arrays import (AskeyWilsonSeq, Family, aw_sequence,
                              aw_sequence_nonzero, generate_family,
                              validate_array)
from tbtridiag.errors import NotSelfDual
from tbtridiag.fields import QQ
from tbtridiag.matrices import Matrix, column, diagonal, identity, zeros
from tbtridiag.system import (build_system, dagger, dagger_report,
                              intersection_numbers, involutions_check,
                              isomorphic, raising_lowering, sd_isomorphism,
                              verify_aw_relations, verify_axioms)
from tbtridiag.serialize import decode_system, emit_system


def _rank(vectors):
    """Row rank over the field, reduced independently of the library paths."""
    rows = [list(v) for v in vectors]
    rank, pivots = 0, []
    for row in rows:
        for col, prow in pivots:
            if not row[col].is_zero():
                f = row[col]
                row = [a - f * b for a, b in zip(row, prow)]
        lead = next((j for j, v in enumerate(row) if not v.is_zero()), None)
        if lead is not None:
            inv = row[lead].inverse()
            pivots.append((lead, [v * inv for v in row]))
            rank += 1
    return rank


def test_intersection_numbers_d1():
    inters = intersection_numbers(validate_array(QQ, [7, -7], [2, -2]))
    assert inters.c == (QQ(7),) and inters.b == (QQ(7),)
    assert inters.c_star == (QQ(2),) and inters.b_star == (QQ(2),)


def test_intersection_numbers_d2():
    inters = intersection_numbers(validate_array(QQ, [1, 0, -1], [3, 0, -3]))
    assert [str(v) for v in inters.c] == ["1/2", "1"]
    assert [str(v) for v in inters.b] == ["1", "1/2"]
    assert [str(v) for v in inters.c_star] == ["3/2", "3"]
    assert [str(v) for v in inters.b_star] == ["3", "3/2"]


def test_intersection_numbers_krawtchouk(k3):
    assert [v.value for v in k3.inters.c] == [1, 2, 3]
    assert [v.value for v in k3.inters.b] == [3, 2, 1]


def test_intersection_numbers_qracah(qr3):
    inters = qr3.inters
    assert inters.c[0] == QQ.one
    assert inters.b[1] == QQ(Fraction(17, 4))
    assert inters.c[2] == QQ(Fraction(21, 4)) == inters.b[0]
    # oracle: c_i + b_i = theta_0 for interior i
    theta0 = qr3.array.theta[0]
    assert inters.c[0] + inters.b[1] == theta0
    assert inters.c[1] + inters.b[2] == theta0


def test_build_system_golden(k3):
    assert k3.A == Matrix(QQ, [[0, 3, 0, 0], [1, 0, 2, 0],
                               [0, 2, 0, 1], [0, 0, 3, 0]])
    assert k3.A_star == diagonal(QQ, [3, 1, -1, -3])
    assert k3.K == diagonal(QQ, [1, 3, 3, 1])


def test_build_system_d1():
    s = build_system(validate_array(QQ, [1, -1], [1, -1]))
    assert s.A == Matrix(QQ, [[0, 1], [1, 0]])
    assert s.A_star == diagonal(QQ, [1, -1])
    # S = E_0 - E_1 recombines to A here since theta = (1, -1)
    assert s.S == s.A


def test_standard_eigenvectors(k3, qr3):
    others = [build_system(generate_family(QQ, Family.BANNAI_ITO, 4)),
              build_system(generate_family(QQ, Family.QRACAH_EVEN, 4, q=2)),
              build_system(generate_family(QQ, Family.KRAWTCHOUK, 5, h=2, h_star=3))]
    for s in (k3, qr3, *others):
        d = s.d
        theta, theta_star = s.array.theta, s.array.theta_star
        v0 = column(s.field, [1] * (d + 1))
        v1 = column(s.field, theta_star)
        vd = column(s.field, [(-1) ** i for i in range(d + 1)])
        vd1 = column(s.field, [theta_star[i] * (-1) ** i for i in range(d + 1)])
        assert s.A * v0 == v0 * theta[0]
        assert s.A * v1 == v1 * theta[1]
        assert s.A * vd == vd * theta[d]
        assert s.A * vd1 == vd1 * theta[d - 1]


def test_raising_lowering(k3):
    R, L = raising_lowering(k3)
    assert R == Matrix(QQ, [[0, 0, 0, 0], [1, 0, 0, 0],
                            [0, 2, 0, 0], [0, 0, 3, 0]])
    assert L == Matrix(QQ, [[0, 3, 0, 0], [0, 0, 2, 0],
                            [0, 0, 0, 1], [0, 0, 0, 0]])
    assert R + L == k3.A
    assert (k3.E_star[0] * R).is_zero()
    e0 = column(QQ, [1, 0, 0, 0])
    assert (L * e0).is_zero()
    # action on the all-ones eigenvector slices: R v_{i-1} = c_i v_i, L v_1 = theta_0 v_0
    theta, theta_star = k3.array.theta, k3.array.theta_star
    for i in range(1, 3):
        ci = (theta[1] * theta_star[i] - theta[0] * theta_star[i + 1]) / \
            (theta_star[i - 1] - theta_star[i + 1])
        vi_prev = column(QQ, [1 if j == i - 1 else 0 for j in range(4)])
        vi = column(QQ, [1 if j == i else 0 for j in range(4)])
        assert R * vi_prev == vi * ci
    v1 = column(QQ, [0, 1, 0, 0])
    v0 = column(QQ, [1, 0, 0, 0])
    assert L * v1 == v0 * theta[0]


def test_verify_axioms_passes(k3, qr3):
    for s in (k3, qr3):
        report = verify_axioms(s)
        assert report.passed, report.failures()


def test_power_pattern_golden(k3):
    # E*_0 A^3 E*_3 != 0 while E*_0 A^2 E*_3 = 0, via direct powers
    a2 = k3.A * k3.A
    a3 = a2 * k3.A
    assert a2[0, 3].is_zero()
    assert not a3[0, 3].is_zero()


def test_verify_axioms_flags_mutations(k3):
    doc = emit_system(k3)
    doc["A"][1][2] = "0"  # zero out b_1
    broken = decode_system(doc)
    report = verify_axioms(broken)
    failed = {c.name for c in report.failures()}
    assert "irreducible: c_i b_{i-1} != 0" in failed
    assert "A, A* generate the full matrix algebra" in failed
    witness = next(c.witness for c in report.failures()
                   if c.name.startswith("irreducible"))
    assert witness


def test_verify_aw_relations(k3, qr3):
    for s, beta in ((k3, QQ(2)), (qr3, QQ(Fraction(17, 4)))):
        report = verify_aw_relations(s, aw_sequence(s.array, beta))
        assert report.passed, report.failures()


def test_verify_aw_relations_small_d():
    s1 = build_system(generate_family(QQ, Family.SMALL_D1, 1, h=2))
    report = verify_aw_relations(s1, aw_sequence_nonzero(s1.array))
    assert report.passed
    names = [c.name for c in report]
    assert "A A* = -A* A" in names and "A^2 = theta_0^2 I" in names
    s2 = build_system(generate_family(QQ, Family.SMALL_D2, 2, h=3))
    report = verify_aw_relations(s2, aw_sequence_nonzero(s2.array))
    assert report.passed
    assert (s2.A * s2.A_star * s2.A).is_zero()


def test_verify_aw_relations_perturbed_rho(k3):
    seq = aw_sequence(k3.array, QQ(2))
    bad = AskeyWilsonSeq(seq.beta, seq.rho + 1, seq.rho_star)
    report = verify_aw_relations(k3, bad)
    fails = report.failures()
    assert len(fails) == 1
    assert fails[0].name.startswith("A^2 A*")
    assert fails[0].witness  # residual entry

def test_dagger_fixes_and_reverses(k3):
    report = dagger_report(k3, pairs=25)
    assert report.passed, report.failures()
    assert dagger(k3, k3.A) == k3.A
    R, L = raising_lowering(k3)
    assert dagger(k3, R) == L
    x = Matrix(QQ, [[1, 2, 0, 1], [0, 1, 5, 0], [3, 0, 1, 0], [0, 0, 2, 7]])
    assert dagger(k3, dagger(k3, x)) == x


def test_involutions(k3, qr3):
    for s in (k3, qr3):
        report = involutions_check(s)
        assert report.passed, report.failures()
    # odd diameter: S and S* anticommute
    assert k3.S * k3.S_star == -(k3.S_star * k3.S)


def test_involutions_even_diameter():
    s = build_system(generate_family(QQ, Family.BANNAI_ITO, 4))
    report = involutions_check(s)
    assert report.passed, report.failures()
    assert s.S * s.S_star == s.S_star * s.S


def test_sandwich_boundary_identity(k3, qr3):
    # E*_i A^r A* A^s E*_j vanishes beyond the band |i-j| > r+s and touches
    # the band with weight theta*_{j+s} (or theta*_{i+r} on the other side)
    for s in (k3, qr3):
        d = s.d
        theta_star = s.array.theta_star
        powers = [identity(s.field, d + 1)]
        for _ in range(d):
            powers.append(powers[-1] * s.A)
        for r in range(d + 1):
            for t in range(d + 1 - r):
                m = powers[r] * s.A_star * powers[t]
                band = powers[r + t]
                for i in range(d + 1):
                    for j in range(d + 1):
                        if abs(i - j) > r + t:
                            assert m[i, j].is_zero()
                        elif i - j == r + t:
                            assert m[i, j] == theta_star[j + t] * band[i, j]
                        elif j - i == r + t:
                            assert m[i, j] == theta_star[i + r] * band[i, j]


def test_nearest_neighbour_products_are_independent(k3):
    # the 2d elements E_{i-1} A* E_i, E_i A* E_{i-1} span a 2d-dimensional space
    mats = []
    for i in range(1, 4):
        mats.append(k3.E[i - 1] * k3.A_star * k3.E[i])
        mats.append(k3.E[i] * k3.A_star * k3.E[i - 1])
    vecs = [[e for row in m.rows for e in row] for m in mats]
    assert _rank(vecs) == 6


def test_sd_isomorphism_d1():
    s = build_system(validate_array(QQ, [1, -1], [1, -1]))
    psi = sd_isomorphism(s)
    # oracle: any intertwiner of ([[0,1],[1,0]], diag(1,-1)) is a multiple
    # of the 2x2 Hadamard-type matrix
    hadamard = Matrix(QQ, [[1, 1], [1, -1]])
    scale = psi[0, 0]
    assert not scale.is_zero()
    assert psi == hadamard * scale
    sq = psi * psi
    assert sq[0, 1].is_zero() and sq[1, 0].is_zero()
    assert sq[0, 0] == sq[1, 1] and not sq[0, 0].is_zero()


def test_sd_isomorphism_d3(k3):
    psi = sd_isomorphism(k3)
    assert psi * k3.A == k3.A_star * psi
    assert psi * k3.A_star == k3.A * psi
    sq = psi * psi
    lam = sq[0, 0]
    assert not lam.is_zero()
    assert sq == identity(QQ, 4) * lam


def test_sd_isomorphism_requires_self_dual():
    s = build_system(generate_family(QQ, Family.KRAWTCHOUK, 3, h=1, h_star=2))
    with pytest.raises(NotSelfDual):
        sd_isomorphism(s)


def test_isomorphic(k3):
    assert isomorphic(k3, k3)
    rebuilt = build_system(k3.array)
    assert isomorphic(k3, rebuilt)
    other = build_system(generate_family(QQ, Family.KRAWTCHOUK, 3, h=2))
    assert not isomorphic(k3, other)
