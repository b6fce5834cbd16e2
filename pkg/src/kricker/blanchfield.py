"""Blanchfield module presentations and the pairing used to color diagrams.

From a hermitian matrix W over Q[t^±1] with det W(1) != 0 we form

    A = Q[t^±1]^n / ^tW Q[t^±1]^n,
    b(x_i, x_j) = -(W^{-1})_{ij}(t)  mod Q[t^±1].

Module elements are coordinate vectors reduced to a normal form modulo the
column space of ^tW (triangular column echelon over the PID Q[t^±1], with
canonical coset representatives in each quotient Q[t^±1]/(p)), so equality
in A is a structural comparison.  The exact pairing representative of two
coordinate vectors u, v is  u^t B bar(v)  with B = -W^{-1}; it is linear in
the first slot and bar-linear in the second.
"""

from .exactalg import LaurentPoly, RationalFraction, PolyMatrix, ZERO, ONE


def _poly_span(p):
    return p.max_exp() - p.min_exp()


def _pos_reduce(p, bpoly, d):
    """Reduce a nonnegative-exponent polynomial into exponents [0, d)."""
    lead = bpoly.coeff(d)
    while not p.is_zero() and p.max_exp() >= d:
        e, c = p.terms[-1]
        p = p - bpoly.shift(e - d) * (c / lead)
    return p


def laurent_mod_canonical(y, b):
    """Canonical representative of y modulo the ideal (b) in Q[t^±1].

    With b = t^s B, B(0) != 0, deg B = d, the representatives are the
    Laurent polynomials supported on exponents [0, d-1]; for d = 0 the
    quotient is trivial.  Returns (rep, q) with y = q*b + rep.
    """
    if b.is_zero():
        raise ZeroDivisionError("reduction modulo zero")
    d = _poly_span(b)
    if d == 0:
        return ZERO, y // b
    bpoly = b.shift(-b.min_exp())  # B with B(0) != 0
    # t^{-1} is invertible modulo B: inv = -(B - B(0)) / (t B(0))
    b0 = bpoly.coeff(0)
    inv_t = (bpoly - LaurentPoly.const(b0)).shift(-1) * (-1 / b0)
    rep = y
    m = -rep.min_exp() if not rep.is_zero() else 0
    if m > 0:
        power = ONE
        for _ in range(m):
            power = _pos_reduce(power * inv_t, bpoly, d)
        rep = _pos_reduce(rep.shift(m), bpoly, d) * power
    rep = _pos_reduce(rep, bpoly, d)
    q = (y - rep) // b
    return rep, q


class BlanchfieldPresentation:
    def __init__(self, w):
        if not w.is_hermitian():
            raise ValueError("presentation matrix must be hermitian")
        n = w.rows
        det1 = PolyMatrix([[LaurentPoly.const(w[i, j].eval(1)) for j in range(n)]
                           for i in range(n)]).det()
        if det1.is_zero():
            raise ValueError("degenerate presentation: det W(1) = 0")
        self.w = w
        self.n = n
        det = w.det()
        self.delta = normalize_annihilator(det)
        self.pairing_matrix = w.inverse().map(lambda x: -x)  # B = -W^{-1}
        self._echelon = _column_echelon(w.transpose())

    # -- normal form -----------------------------------------------------
    def reduce(self, coords):
        """Normal form of a coordinate vector modulo the columns of ^tW."""
        vec = [c if isinstance(c, LaurentPoly) else LaurentPoly.const(c) for c in coords]
        if len(vec) != self.n:
            raise ValueError("dimension mismatch")
        for piv_row, col in self._echelon:
            rep, q = laurent_mod_canonical(vec[piv_row], col[piv_row])
            if not q.is_zero():
                vec = [v - q * c for v, c in zip(vec, col)]
            vec[piv_row] = rep
        return tuple(vec)

    def element(self, coords):
        return self.reduce(coords)

    def generator(self, i):
        out = [ZERO] * self.n
        out[i] = ONE
        return self.reduce(out)

    def zero_element(self):
        return tuple([ZERO] * self.n)

    def is_zero_element(self, coords):
        return all(c.is_zero() for c in self.reduce(coords))

    # -- pairing ----------------------------------------------------------
    def pairing_exact(self, u, v):
        """The representative u^t B bar(v) in Q(t) (not reduced mod Q[t^±1])."""
        if len(u) != self.n or len(v) != self.n:
            raise ValueError("dimension mismatch")
        acc = RationalFraction(ZERO)
        for i in range(self.n):
            ui = u[i] if isinstance(u[i], LaurentPoly) else LaurentPoly.const(u[i])
            if ui.is_zero():
                continue
            for j in range(self.n):
                vj = v[j] if isinstance(v[j], LaurentPoly) else LaurentPoly.const(v[j])
                if vj.is_zero():
                    continue
                acc = acc + self.pairing_matrix[i, j] * ui * vj.bar()
        return acc

    def pairing(self, u, v):
        """A proper representative of b(u, v) mod Q[t^±1]."""
        _, frac = self.pairing_exact(u, v).poly_part_split()
        return frac


def from_matrix(w):
    return BlanchfieldPresentation(w)


def normalize_annihilator(det):
    if det.is_zero():
        raise ValueError("degenerate presentation: det W = 0")
    lo, hi = det.min_exp(), det.max_exp()
    if (lo + hi) % 2 == 0:
        det = det.shift(-(lo + hi) // 2)
    else:
        det = det.shift(-lo)
    if det.leading_coeff() < 0:
        det = det * -1
    return det


def _column_echelon(m):
    """Triangular column echelon of a nonsingular matrix over Q[t^±1].

    Returns a list of (pivot_row, column) with strictly increasing pivot
    rows and zeros above each pivot; spans the same column module.
    """
    n = m.rows
    cols = [[m[i, j] for i in range(n)] for j in range(n)]
    out = []
    for row in range(n):
        while True:
            nz = [c for c in cols if not c[row].is_zero()]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda c: _poly_span(c[row]))
            piv = nz[0]
            for c in nz[1:]:
                q, _ = c[row].divmod_poly(piv[row])
                for i in range(n):
                    c[i] = c[i] - q * piv[i]
        nz = [c for c in cols if not c[row].is_zero()]
        if nz:
            piv = nz[0]
            out.append((row, [x for x in piv]))
            cols = [c for c in cols if c is not piv]
    return out
