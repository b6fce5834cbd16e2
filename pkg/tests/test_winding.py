from fractions import Fraction

import pytest

from kricker.exactalg import LaurentPoly, PolyMatrix, t_power
from kricker.presentation import parse_program, trace_components, move_base_point
from kricker.winding import (
    winding_matrix,
    apply_base_point_move,
    linking_and_signatures,
    alexander_and_h1,
    rho_p,
    rho_all,
)
from kricker import presets


def W(name):
    return winding_matrix(trace_components(presets.program(name)))


class TestWindingMatrix:
    def test_fig8_example_paper_values(self):
        w = W("fig8example")
        assert w[0, 1] == LaurentPoly({1: 1, 0: 1})
        assert w[1, 0] == LaurentPoly({-1: 1, 0: 1})

    def test_hermitian_on_corpus(self):
        for name in presets.PROGRAMS:
            w = W(name)
            assert w.matrix.is_hermitian()
            # W(1) symmetric integer matrix
            lk, _, _ = linking_and_signatures(w)
            n = len(lk)
            for i in range(n):
                for j in range(n):
                    assert lk[i][j] == lk[j][i]
                    assert lk[i][j].denominator == 1

    def test_u_plus(self):
        w = W("u+")
        assert w[0, 0] == LaurentPoly.one()

    def test_classical_linking_oracle(self):
        # independent oracle: lk(L_i, L_j) = half the signed sum of mutual
        # crossings; framing = writhe
        for name in presets.PROGRAMS:
            cm = trace_components(presets.program(name))
            n = cm.n_components
            lk = [[Fraction(0)] * n for _ in range(n)]
            for c in cm.crossings.values():
                i, j = c.comp_a, c.comp_b
                if i == j:
                    lk[i][i] += c.sign
                else:
                    lk[i][j] += Fraction(c.sign, 2)
                    lk[j][i] += Fraction(c.sign, 2)
            got, _, _ = linking_and_signatures(winding_matrix(cm))
            assert got == lk, name


class TestMoves:
    def test_move_then_back_is_identity(self):
        w = W("fig8example")
        assert apply_base_point_move(apply_base_point_move(w, 0, +1), 0, -1).matrix == w.matrix

    def test_fig8_move_row_scaling(self):
        w = W("fig8example")
        moved = apply_base_point_move(w, 0, +1)
        # row 0 scaled by t^{-1}
        assert moved[0, 1] == w[0, 1] * t_power(-1)
        assert moved[1, 0] == w[1, 0] * t_power(1)

    def test_diagonal_invariant(self):
        w = W("trefoil")
        assert apply_base_point_move(w, 0, +1)[0, 0] == w[0, 0]

    def test_consistent_with_component_map_move(self):
        # recomputing the winding matrix after moving the base point in the
        # component map equals applying the stated column/row action
        cm = trace_components(presets.program("fig8example"))
        w = winding_matrix(cm)
        for comp in range(2):
            cm2, eps = move_base_point(cm, comp, +1)
            assert eps is not None
            w2 = winding_matrix(cm2)
            assert w2.matrix == apply_base_point_move(w, comp, eps).matrix

    def test_full_cycle_restores(self):
        cm = trace_components(presets.program("trefoil"))
        w = winding_matrix(cm)
        cur, cm_cur = w, cm
        n_disk = len(cm.disk_signs(0))
        for _ in range(n_disk):
            cm_cur, eps = move_base_point(cm_cur, 0, +1)
            cur = apply_base_point_move(cur, 0, eps)
        assert cur.matrix == w.matrix


class TestReidemeisterInvariance:
    # program pairs related by RII / RIII rewrites away from base points/disk
    def test_r2_pair(self):
        base = "cup 0 lr\ncup 2 rl\nx- 1\ndisk 2 2\nx+ 1\nx- 2\ncap 1\ncap 0\n"
        padded = "cup 0 lr\ncup 2 rl\nx+ 1\nx- 1\nx- 1\ndisk 2 2\nx+ 1\nx- 2\ncap 1\ncap 0\n"
        w1 = winding_matrix(trace_components(parse_program(base)))
        w2 = winding_matrix(trace_components(parse_program(padded)))
        assert w1.matrix == w2.matrix

    def test_r3_pair(self):
        # slide a strand across a crossing: x+0 x+1 x+0 ~ x+1 x+0 x+1
        pre = "cup 0 lr\ncup 2 lr\ncup 0 lr\nx- 1\nx- 1\nx- 3\nx- 3\n"
        post = "disk 0 4\ncap 2\ncap 1\ncap 0\n"
        a = parse_program(pre + "x+ 0\nx+ 1\nx+ 0\nx- 0\nx- 1\nx- 0\n" + post)
        b = parse_program(pre + "x+ 1\nx+ 0\nx+ 1\nx- 1\nx- 0\nx- 1\n" + post)
        wa = winding_matrix(trace_components(a))
        wb = winding_matrix(trace_components(b))
        assert wa.matrix == wb.matrix


class TestAlexander:
    def test_empty(self):
        p = presets.program("empty")
        cm = trace_components(p)
        w = winding_matrix(cm)
        alex, h1 = alexander_and_h1(w)
        assert alex == LaurentPoly.one() and h1 == 1

    def test_trefoil(self):
        alex, h1 = alexander_and_h1(W("trefoil"))
        assert alex == LaurentPoly({1: 1, 0: -1, -1: 1})
        assert h1 == 1

    def test_seifert_oracle_trefoil(self):
        # independent oracle: Seifert matrix V = [[-1,1],[0,-1]],
        # Alexander = det(V - t V^t) normalized
        V = [[-1, 1], [0, -1]]
        det = seifert_alexander(V)
        alex, _ = alexander_and_h1(W("trefoil"))
        assert alex == det

    def test_seifert_oracle_fig8(self):
        V = [[1, 1], [0, -1]]
        det = seifert_alexander(V)
        alex, _ = alexander_and_h1(W("fig8knot"))
        assert alex == det
        assert alex == LaurentPoly({1: 1, 0: -3, -1: 1})

    def test_degenerate(self):
        with pytest.raises(ValueError, match="not a Q-sphere"):
            alexander_and_h1(W("ring"))

    def test_h12(self):
        _, h1 = alexander_and_h1(W("h12"))
        assert h1 == 12


def seifert_alexander(V):
    """det(V - t V^t), normalized like alexander_and_h1."""
    n = len(V)
    ent = [
        [LaurentPoly({0: V[i][j]}) + LaurentPoly({1: -V[j][i]}) for j in range(n)]
        for i in range(n)
    ]
    det = PolyMatrix(ent).det()
    lo, hi = det.min_exp(), det.max_exp()
    if (lo + hi) % 2 == 0:
        det = det.shift(-(lo + hi) // 2)
    else:
        det = det.shift(-lo)
    if det.leading_coeff() < 0:
        det = det * -1
    return det


class TestSignatures:
    def test_u_plus(self):
        lk, sp, sn = linking_and_signatures(W("u+"))
        assert (lk, sp, sn) == ([[1]], 1, 0)

    def test_u_pair(self):
        from kricker.presentation import stack_programs

        p = stack_programs(presets.program("u+"), presets.program("u-"))
        w = winding_matrix(trace_components(p))
        _, sp, sn = linking_and_signatures(w)
        assert (sp, sn) == (1, 1)

    def test_fig8_example_at_one(self):
        lk, sp, sn = linking_and_signatures(W("fig8example"))
        assert lk == [[0, 2], [2, 0]]
        assert (sp, sn) == (1, 1)

    def test_zero_blocks(self):
        w = W("ring")
        _, sp, sn = linking_and_signatures(w)
        assert (sp, sn) == (0, 0)


class TestRho:
    def test_rho_12(self):
        assert rho_p(12, 2) == -2
        assert rho_p(12, 3) == -1
        assert rho_p(1, 5) == 0

    def test_rho_nonprime(self):
        with pytest.raises(ValueError):
            rho_p(12, 4)

    def test_rho_all(self):
        assert rho_all(12) == {2: -2, 3: -1}
        assert rho_all(1) == {}
