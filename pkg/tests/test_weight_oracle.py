"""Independent soundness oracle for the relation engine.

The so(3) weight system (structure constants eps_{abc} at trivalent
vertices, adjoint matrices along the skeleton) kills AS, IHX and STU by
the Jacobi identity and the commutation relations, so every generated
relation vector must evaluate to zero on bead-free diagrams.  Failures
here mean the relation engine would prove wrong equalities.
"""

import itertools
from fractions import Fraction

from kricker.diagrams import JacobiDiagram, relabel_randomly, SKEL
from kricker.relations import relation_vectors_at
from kricker.series import normalize_diagram

EPS = {}
for p in itertools.permutations((0, 1, 2)):
    sw = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
    EPS[p] = 1 if sw % 2 == 0 else -1


def so3_weight(d):
    """Scalar of the so(3) weight system on a one-interval, bead-free diagram."""
    assert d.skeleton and len(d.skeleton) == 1
    legs_in_order = [it[1] for it in d.skeleton[0][1] if it[0] == "l"]
    if any(lab != 0 for _, _, lab in d.edges):
        raise ValueError("weight system needs bead-free diagrams")
    nedges = len(d.edges)

    def ad(a):
        m = [[0] * 3 for _ in range(3)]
        for (x, y, z), s in EPS.items():
            if x == a:
                m[y][z] = s
        return m

    res = [[0] * 3 for _ in range(3)]
    for assign in itertools.product(range(3), repeat=nedges):
        coef = 1
        for v in range(d.nv):
            idxs = [None, None, None]
            for ei, (a, b, _) in enumerate(d.edges):
                if a[0] == "v" and a[1] == v:
                    idxs[a[2]] = assign[ei]
                if b[0] == "v" and b[1] == v:
                    idxs[b[2]] = assign[ei]
            key = tuple(idxs)
            if len(set(key)) < 3:
                coef = 0
                break
            coef *= EPS[key]
        if not coef:
            continue
        m = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
        for leg in legs_in_order:
            ei = next(i for i, (a, b, _) in enumerate(d.edges)
                      if a == ("l", leg) or b == ("l", leg))
            amat = ad(assign[ei])
            m = [[sum(amat[i][k] * m[k][j] for k in range(3)) for j in range(3)]
                 for i in range(3)]
        for i in range(3):
            for j in range(3):
                res[i][j] += coef * m[i][j]
    assert all(res[i][j] == 0 for i in range(3) for j in range(3) if i != j)
    assert res[0][0] == res[1][1] == res[2][2]
    return res[0][0]


def interval_diagram(edges, legs, nv=0):
    skel = (("i", tuple(("l", j) for j in legs)),)
    return JacobiDiagram(SKEL, nv, edges, (None,) * len(legs), skeleton=skel)


SAMPLES = [
    interval_diagram([(("v", 0, 0), ("l", 0), 0), (("v", 0, 1), ("l", 1), 0),
                      (("v", 0, 2), ("l", 2), 0)], [0, 1, 2], nv=1),
    interval_diagram([(("l", 0), ("l", 2), 0), (("l", 1), ("l", 3), 0)], [0, 1, 2, 3]),
    interval_diagram([(("l", 0), ("l", 3), 0), (("l", 1), ("l", 2), 0)], [0, 1, 2, 3]),
    interval_diagram([(("l", 0), ("l", 1), 0), (("l", 2), ("l", 3), 0)], [0, 1, 2, 3]),
    interval_diagram([(("v", 0, 0), ("l", 0), 0), (("v", 0, 1), ("l", 1), 0),
                      (("v", 0, 2), ("v", 1, 0), 0), (("v", 1, 1), ("l", 2), 0),
                      (("v", 1, 2), ("l", 3), 0)], [0, 1, 2, 3], nv=2),
    interval_diagram([(("v", 0, 0), ("l", 0), 0), (("v", 0, 1), ("v", 1, 1), 0),
                      (("v", 0, 2), ("v", 1, 0), 0), (("v", 1, 2), ("l", 1), 0)],
                     [0, 1], nv=2),
]


class TestWeightOracle:
    def test_raw_relation_vectors_vanish(self):
        checked = 0
        for d in SAMPLES:
            for vec in relation_vectors_at(d):
                try:
                    val = sum(c * so3_weight(dd) for dd, c in vec)
                except ValueError:
                    continue  # beaded diagrams in a Hol vector
                checked += 1
                assert val == 0, vec
        assert checked >= 15

    def test_normalized_relation_vectors_vanish(self):
        checked = 0
        for d in SAMPLES:
            for vec in relation_vectors_at(d):
                norm = {}
                for dd, c in vec:
                    for k, cc in normalize_diagram(dd, c, None):
                        norm[k] = norm.get(k, Fraction(0)) + cc
                try:
                    val = sum(c * so3_weight(k) for k, c in norm.items())
                except ValueError:
                    continue
                checked += 1
                assert val == 0
        assert checked >= 15

    def test_canonical_sign_matches_weight(self):
        import random

        rng = random.Random(7)
        for d in SAMPLES:
            base = so3_weight(d)
            for _ in range(30):
                d2, sign = relabel_randomly(d, rng)
                assert so3_weight(d2) == base * sign

    def test_known_values(self):
        # single chord on a strand: ad_a ad_a = Casimir of the adjoint = 2*Id
        one_chord = interval_diagram([(("l", 0), ("l", 1), 0)], [0, 1])
        assert so3_weight(one_chord) == -2 or so3_weight(one_chord) == 2
