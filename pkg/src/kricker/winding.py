"""Combinatorial winding matrices from traced programs.

The entry (i, j) is the winding number

    w(L_i, L_j) = 1/2 sum_c sg(c) t^{e_ij(c)}            (i != j)
    w(L_i, L_i) = 1/2 sum_c sg(c) (t^{e_ii(c)} + t^{-e_ii(c)})

summed over crossings between the two components, where e_ij(c) counts the
signed disk passes along the path base_i -> c -> base_j (switching strand at
the first occurrence of c when i = j).  This matrix presents the Alexander
module (transposed) and the Blanchfield form (-W^{-1}); it is the exact
combinatorial oracle against which the Kontsevich pipeline is checked.
"""

from fractions import Fraction

from .exactalg import LaurentPoly, PolyMatrix, t_power


class WindingMatrix:
    """Hermitian matrix of winding numbers plus base-point metadata."""

    def __init__(self, matrix, base_cups=(), base_shift=()):
        self.matrix = matrix
        self.base_cups = tuple(base_cups)
        self.base_shift = tuple(base_shift)
        if not matrix.is_hermitian():
            raise ValueError("winding matrix must be hermitian")

    @property
    def size(self):
        return self.matrix.rows

    def __getitem__(self, ij):
        return self.matrix[ij]

    def __eq__(self, other):
        return isinstance(other, WindingMatrix) and self.matrix == other.matrix

    def __repr__(self):
        return "WindingMatrix(%r)" % (self.matrix.entries,)


def _prefix_disk_sums(events):
    """Disk-sign partial sums just before each event position."""
    sums = []
    acc = 0
    for ev in events:
        sums.append(acc)
        if ev[0] == "disk":
            acc += ev[1]
    return sums


def winding_matrix(cmap):
    n = cmap.n_components
    # locate each crossing occurrence: (component, prefix) per occurrence
    occ = {}  # cid -> list of (comp, prefix_sum), in traversal-discovery order
    for comp in range(n):
        events = cmap.events[comp]
        pre = _prefix_disk_sums(events)
        for k, ev in enumerate(events):
            if ev[0] == "x":
                occ.setdefault(ev[1], []).append((comp, pre[k]))
    half = Fraction(1, 2)
    entries = [[LaurentPoly.zero() for _ in range(n)] for _ in range(n)]
    for cid, c in cmap.crossings.items():
        places = occ[cid]
        if len(places) != 2:
            raise AssertionError("crossing %d traced %d times" % (cid, len(places)))
        (ca, pa), (cb, pb) = places
        if ca != cb:
            i, j = ca, cb
            eij = pa - pb
            entries[i][j] = entries[i][j] + t_power(eij) * (half * c.sign)
            entries[j][i] = entries[j][i] + t_power(-eij) * (half * c.sign)
        else:
            i = ca
            e = pa - pb  # first occurrence minus second, traversal order
            entries[i][i] = entries[i][i] + (t_power(e) + t_power(-e)) * (half * c.sign)
    return WindingMatrix(PolyMatrix(entries), cmap.base_cups, cmap.base_shift)


def apply_base_point_move(w, i, eps):
    """Column i scaled by t^eps, row i by t^-eps (diagonal untouched)."""
    if eps not in (1, -1):
        raise ValueError("eps must be +-1")
    n = w.size
    ent = [list(row) for row in w.matrix.entries]
    for k in range(n):
        if k != i:
            ent[k][i] = ent[k][i] * t_power(eps)
            ent[i][k] = ent[i][k] * t_power(-eps)
    shifts = list(w.base_shift) if w.base_shift else [0] * n
    if shifts:
        shifts[i] += eps  # bookkeeping only; not used for further math here
    return WindingMatrix(PolyMatrix(ent), w.base_cups, shifts)


def linking_and_signatures(w):
    """W(1) as an exact rational matrix, and its signature pair.

    Sylvester's law via symmetric pivoting: congruence transformations only,
    all over Fraction.
    """
    n = w.size
    a = [[w.matrix[i, j].eval(1) for j in range(n)] for i in range(n)]
    lk = [row[:] for row in a]
    sig_pos = sig_neg = 0
    live = list(range(n))
    while live:
        # prefer a nonzero diagonal pivot
        piv = None
        for r in live:
            if a[r][r] != 0:
                piv = r
                break
        if piv is None:
            # find a nonzero off-diagonal pair; if none, the rest is zero
            pair = None
            for r in live:
                for s in live:
                    if r < s and a[r][s] != 0:
                        pair = (r, s)
                        break
                if pair:
                    break
            if pair is None:
                break
            r, s = pair
            # congruence: add row/col s to r, producing a nonzero diagonal
            for k in range(n):
                a[r][k] += a[s][k]
            for k in range(n):
                a[k][r] += a[k][s]
            continue
        d = a[piv][piv]
        if d > 0:
            sig_pos += 1
        else:
            sig_neg += 1
        live.remove(piv)
        for r in live:
            f = a[r][piv] / d
            if f:
                for k in range(n):
                    a[r][k] -= f * a[piv][k]
                for k in range(n):
                    a[k][r] -= f * a[k][piv]
    return lk, sig_pos, sig_neg


def alexander_and_h1(w):
    """Normalized det(^tW) and |H1| = |det W(1)|.

    The determinant is normalized up to +-t^k: symmetric exponent range when
    possible (hermitian input), lowest exponent 0 otherwise, positive leading
    coefficient.
    """
    lk, sp, sn = linking_and_signatures(w)
    det1 = _int_det([row[:] for row in lk])
    if det1 == 0:
        raise ValueError("not a Q-sphere presentation: det W(1) = 0")
    det = w.matrix.transpose().det()
    if det.is_zero():
        raise ValueError("not a Q-sphere presentation: det W = 0")
    lo, hi = det.min_exp(), det.max_exp()
    if (lo + hi) % 2 == 0:
        det = det.shift(-(lo + hi) // 2)
    else:
        det = det.shift(-lo)
    if det.leading_coeff() < 0:
        det = det * -1
    h1 = abs(det1)
    if h1.denominator != 1:
        raise ValueError("presentation matrix not integral at t=1")
    return det, int(h1)


def _int_det(a):
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for k in range(col, n):
                    a[r][k] -= f * a[col][k]
    return det


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def rho_p(h1_order, p):
    """-v_p(|H1|): the coefficient of the isolated vertex labeled p."""
    if not _is_prime(p):
        raise ValueError("%d is not prime" % p)
    if h1_order <= 0:
        raise ValueError("group order must be positive")
    v = 0
    while h1_order % p == 0:
        h1_order //= p
        v += 1
    return -v


def rho_all(h1_order):
    """All nonzero rho_p coefficients, as {p: -v_p}."""
    out = {}
    n = h1_order
    p = 2
    while p * p <= n:
        if n % p == 0:
            v = 0
            while n % p == 0:
                n //= p
                v += 1
            out[p] = -v
        p += 1
    if n > 1:
        out[n] = -1
    return out
