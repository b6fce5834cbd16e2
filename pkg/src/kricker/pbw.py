"""The PBW averaging map chi, its per-sector inverse, and leg surgery ops.

chi sends set-labeled diagrams to skeleton diagrams by averaging over all
ways to attach each color's legs along that color's interval.  Its inverse
is computed per graded piece by assembling chi as an exact matrix over
relation-reduced coordinates and solving; candidate preimages come from the
relation closure of the input with legs re-colored by their component.

Also here: the contraction bracket, pushing e^h / t^k on a color's legs,
the Baker-Campbell-Hausdorff element used by handle-slide bookkeeping, and
the skeleton duplicate/merge operators.
"""

from fractions import Fraction
import itertools

from .diagrams import JacobiDiagram, canonical_form, bar_label, SET, SKEL
from .series import DiagramSeries, Trunc, zero_series, normalize_diagram, _sort_key
from .relations import RelationSpace, Budget, DEFAULT_BUDGET, _exponent_window


# ---------------------------------------------------------------------------
# chi
# ---------------------------------------------------------------------------

def chi_diagram(d, colors):
    """All attachments of d's legs along intervals, with the averaging weight."""
    legs_by_color = {c: [] for c in colors}
    for j, att in enumerate(d.legs):
        if att not in legs_by_color:
            raise ValueError("leg color %r not among %r" % (att, colors))
        legs_by_color[att].append(j)
    per_color_orders = [list(itertools.permutations(legs_by_color[c])) for c in colors]
    weight = Fraction(1)
    for orders in per_color_orders:
        weight /= len(orders)
    out = []
    for combo in itertools.product(*per_color_orders):
        skel = tuple(("i", tuple(("l", j) for j in order)) for order in combo)
        out.append((JacobiDiagram(SKEL, d.nv, d.edges, (None,) * len(d.legs),
                                  skeleton=skel, dots=d.dots), weight))
    return out


def chi(series, colors, trunc=None):
    """Ã(*_C) -> Ã(up_C), averaging leg attachments per color."""
    trunc = trunc or series.trunc
    out = DiagramSeries(SKEL, trunc)
    for d, c in series.terms.items():
        for skel_d, w in chi_diagram(d, colors):
            out.add_diagram(skel_d, c * w)
    return out


def _strip_to_set(d, colors):
    """Forget leg order: skeleton legs become set-legs of their component color."""
    attach = {}
    for ci, (kind, items) in enumerate(d.skeleton or ()):
        for it in items:
            if it[0] == "l":
                attach[it[1]] = colors[ci]
    legs = tuple(attach[j] for j in range(len(d.legs)))
    return JacobiDiagram(SET, d.nv, d.edges, legs, dots=d.dots)


def chi_inverse(series, colors, budget=DEFAULT_BUDGET):
    """Solve chi(x) = series per graded piece; raises on failure."""
    out = DiagramSeries(SET, series.trunc)
    grades = sorted({d.gsize for d in series.terms})
    for g in grades:
        piece = {d: c for d, c in series.terms.items() if d.gsize == g}
        if not piece:
            continue
        x = _chi_inverse_piece(piece, colors, series.trunc, budget)
        for d, c in x.items():
            out.add_canonical(d, c)
    return out


def _chi_inverse_piece(piece, colors, trunc, budget):
    probe = DiagramSeries(SKEL, trunc)
    probe.terms = dict(piece)
    window = _exponent_window(probe, budget.bead_slack)
    explore = RelationSpace(None, budget, window, trunc)
    explore.close_over(piece.keys())
    candidates = {}
    for d in sorted(explore.seen, key=_sort_key):
        stripped = _strip_to_set(d, colors)
        res = canonical_form(stripped)
        if res is None:
            continue
        candidates[res[0]] = None
    candidates = sorted(candidates, key=_sort_key)
    images = []
    all_keys = set(piece.keys())
    for cand in candidates:
        img = {}
        for skel_d, w in chi_diagram(cand, colors):
            for key, cc in normalize_diagram(skel_d, w, None):
                img[key] = img.get(key, Fraction(0)) + cc
        img = {k: v for k, v in img.items() if v}
        images.append(img)
        all_keys.update(img.keys())
    space = RelationSpace(None, budget, window, trunc)
    space.close_over(all_keys)
    red_y = space.reduce_vector(piece)
    red_imgs = [space.reduce_vector(img) for img in images]
    sol = _solve_linear(red_imgs, red_y)
    if sol is None:
        raise ValueError("chi inversion failed (relation budget exhausted?)")
    out = {}
    for alpha, cand in zip(sol, candidates):
        if alpha:
            out[cand] = out.get(cand, Fraction(0)) + alpha
    return {k: v for k, v in out.items() if v}


def _solve_linear(columns, target):
    """Solve sum alpha_i columns_i = target exactly; None when inconsistent."""
    keys = sorted({k for col in columns for k in col} | set(target), key=_sort_key)
    key_index = {k: i for i, k in enumerate(keys)}
    rows = len(keys)
    ncols = len(columns)
    mat = [[Fraction(0)] * (ncols + 1) for _ in range(rows)]
    for j, col in enumerate(columns):
        for k, v in col.items():
            mat[key_index[k]][j] = v
    for k, v in target.items():
        mat[key_index[k]][ncols] = v
    # Gaussian elimination
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, rows) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if mat[i][ncols] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = mat[i][ncols]
    return sol


# ---------------------------------------------------------------------------
# contraction bracket
# ---------------------------------------------------------------------------

def _glue_two_legs(d, u, v):
    """Concatenate the edges of legs u, v (u's edge, then v's reversed)."""
    iu = next(i for i, (a, b, _) in enumerate(d.edges) if ("l", u) in (a, b))
    iv = next(i for i, (a, b, _) in enumerate(d.edges) if ("l", v) in (a, b))
    if iu == iv:
        raise ValueError("contracting a strut onto itself (vacuum circle)")
    keep = [j for j in range(len(d.legs)) if j not in (u, v)]
    remap = {old: new for new, old in enumerate(keep)}
    edges = []
    for idx, (a, b, lab) in enumerate(d.edges):
        if idx in (iu, iv):
            continue
        edges.append((a, b, lab))
    a1, b1, l1 = d.edges[iu]
    a2, b2, l2 = d.edges[iv]
    # orient both toward their leg
    if a1 == ("l", u):
        other1, lab1 = b1, bar_label(l1)
    else:
        other1, lab1 = a1, l1
    if a2 == ("l", v):
        other2, lab2 = b2, bar_label(l2)
    else:
        other2, lab2 = a2, l2

    def mp(e):
        if e[0] == "l":
            return ("l", remap[e[1]])
        return e

    edges = [(mp(a), mp(b), lab) for a, b, lab in edges]
    # composite other1 -> other2: traverse edge1 forward, edge2 backward
    if isinstance(lab1, int) and isinstance(lab2, int):
        lab = lab1 - lab2
    else:
        raise ValueError("contraction expects monomial labels")
    edges.append((mp(other1), mp(other2), lab))
    legs = tuple(d.legs[j] for j in keep)
    return JacobiDiagram(d.kind, d.nv, edges, legs, dots=d.dots)


def contract_bracket(d, c, cbar):
    """<D>_{c-cbar}: sum over all bijections gluing c-legs to cbar-legs."""
    cl = [j for j, att in enumerate(d.legs) if att == c]
    bl = [j for j, att in enumerate(d.legs) if att == cbar]
    out = []
    if len(cl) != len(bl):
        return out
    for perm in itertools.permutations(bl):
        cur = d
        pairs = sorted(zip(cl, perm), key=lambda p: -max(p))
        work = list(zip(cl, perm))
        # glue iteratively, remapping indices as legs disappear
        cur = d
        pending = list(work)
        while pending:
            u, v = pending.pop(0)
            cur = _glue_two_legs(cur, u, v)
            newpending = []
            for (x, y) in pending:
                x2 = x - sum(1 for z in (u, v) if z < x)
                y2 = y - sum(1 for z in (u, v) if z < y)
                newpending.append((x2, y2))
            pending = newpending
        out.append((cur, Fraction(1)))
    return out


def contract_series(series, c, cbar):
    out = DiagramSeries(series.kind, series.trunc, context=series.context)
    for d, coeff in series.terms.items():
        for gl, w in contract_bracket(d, c, cbar):
            out.add_diagram(gl, coeff * w)
    return out


# ---------------------------------------------------------------------------
# pushing e^h and t^k
# ---------------------------------------------------------------------------

def push_monomial(d, c, k):
    """Winding relation push: multiply each c-leg's edge by t^{±k}."""
    edges = list(d.edges)
    for idx, (a, b, lab) in enumerate(d.edges):
        if not isinstance(lab, int):
            raise ValueError("push expects monomial labels")
        delta = 0
        if a[0] == "l" and d.legs[a[1]] == c:
            delta += k  # oriented away from the leg
        if b[0] == "l" and d.legs[b[1]] == c:
            delta -= k
        if delta:
            edges[idx] = (a, b, lab + delta)
    return JacobiDiagram(d.kind, d.nv, edges, d.legs, d.labels, d.ftable,
                         d.skeleton, d.dots)


def _attach_h_chain(d, leg, n, h):
    """Insert n new vertices along leg's edge near the leg, each carrying an
    h-leg on the right when walking toward the leg."""
    if n == 0:
        return d
    idx = next(i for i, (a, b, _) in enumerate(d.edges) if ("l", leg) in (a, b))
    a, b, lab = d.edges[idx]
    if a == ("l", leg):
        far, lab_in = b, bar_label(lab)
    else:
        far, lab_in = a, lab
    # far --lab_in--> v1 -> v2 ... -> vn -> leg, each vi has an h-leg
    nv0 = d.nv
    nl0 = len(d.legs)
    edges = [e for i, e in enumerate(d.edges) if i != idx]
    prev = far
    prev_lab = lab_in
    for i in range(n):
        v = nv0 + i
        edges.append((prev, ("v", v, 0), prev_lab))
        edges.append((("v", v, 1), ("l", nl0 + i), 0))
        prev = ("v", v, 2)
        prev_lab = 0
    edges.append((prev, ("l", leg), prev_lab))
    legs = d.legs + (h,) * n
    return JacobiDiagram(d.kind, d.nv + n, edges, legs, d.labels, d.ftable,
                         d.skeleton, d.dots)


def push_exponential(d, c, h, max_extra):
    """D_{|c -> c e^h}: returns [(diagram, coefficient)] up to max_extra new legs."""
    cl = [j for j, att in enumerate(d.legs) if att == c]
    out = []
    for counts in itertools.product(range(max_extra + 1), repeat=len(cl)):
        if sum(counts) > max_extra:
            continue
        cur = d
        coeff = Fraction(1)
        for leg, n in zip(cl, counts):
            cur = _attach_h_chain(cur, leg, n, h)
            for i in range(1, n + 1):
                coeff /= i
        out.append((cur, coeff))
    return out


# ---------------------------------------------------------------------------
# Baker-Campbell-Hausdorff element
# ---------------------------------------------------------------------------

def bch_lambda(n, k, h, depth):
    """Lambda^{kh}_n as a set-labeled series: struts + 1/2 [k,h] + 1/12 terms.

    `depth` is the Lie word length (1, 2 or 3); coefficients beyond length 3
    are out of scope.
    """
    if depth > 3:
        raise ValueError("BCH coefficients beyond depth 3 are not supported")
    trunc = Trunc(max_idegree=None, max_gsize=2 + 2 * depth)
    s = DiagramSeries(SET, trunc)
    s.add_diagram(JacobiDiagram(SET, 0, [(("l", 0), ("l", 1), 0)], (n, k)), 1)
    s.add_diagram(JacobiDiagram(SET, 0, [(("l", 0), ("l", 1), 0)], (n, h)), 1)
    if depth >= 2:
        # Y with legs (n, h, k) in stored cyclic order
        y = JacobiDiagram(
            SET, 1,
            [(("v", 0, 0), ("l", 0), 0), (("v", 0, 1), ("l", 1), 0),
             (("v", 0, 2), ("l", 2), 0)],
            (n, h, k))
        s.add_diagram(y, Fraction(1, 2))
    if depth >= 3:
        for tip, sign in ((k, 1), (h, -1)):
            tree = JacobiDiagram(
                SET, 2,
                [
                    (("v", 0, 0), ("l", 0), 0),   # to n
                    (("v", 0, 1), ("v", 1, 0), 0),
                    (("v", 0, 2), ("l", 1), 0),   # first branch: tip color
                    (("v", 1, 1), ("l", 2), 0),   # h at the end
                    (("v", 1, 2), ("l", 3), 0),   # k at the end
                ],
                (n, tip, h, k))
            s.add_diagram(tree, Fraction(sign, 12))
    return s


# ---------------------------------------------------------------------------
# skeleton component surgery (Kirby II bookkeeping)
# ---------------------------------------------------------------------------

def duplicate_component(series, comp_index):
    """Delta_i^{ii'}: duplicate interval comp_index, summing over all ways of
    distributing its legs; the copy is inserted right after the original."""
    out = DiagramSeries(series.kind, series.trunc, context=series.context)
    for d, c in series.terms.items():
        kind, items = d.skeleton[comp_index]
        if kind != "i":
            raise ValueError("duplicate acts on interval components")
        leg_items = [it for it in items if it[0] == "l"]
        others = [it for it in items if it[0] != "l"]
        if others:
            raise ValueError("duplicate acts on bead-free components")
        for choice in itertools.product((0, 1), repeat=len(leg_items)):
            left = tuple(it for it, ch in zip(leg_items, choice) if ch == 0)
            right = tuple(it for it, ch in zip(leg_items, choice) if ch == 1)
            skel = (d.skeleton[:comp_index] + (("i", left), ("i", right))
                    + d.skeleton[comp_index + 1:])
            out.add_diagram(
                JacobiDiagram(d.kind, d.nv, d.edges, d.legs, d.labels, d.ftable,
                              skel, d.dots), c)
    return out


def merge_components(series, j_index, ip_index):
    """m_{j'}^{j i'}: glue the head of interval j to the tail of interval i'.

    The merged interval replaces component j_index; ip_index disappears.
    """
    if j_index == ip_index:
        raise ValueError("cannot merge a component with itself")
    out = DiagramSeries(series.kind, series.trunc, context=series.context)
    for d, c in series.terms.items():
        kj, items_j = d.skeleton[j_index]
        ki, items_i = d.skeleton[ip_index]
        if kj != "i" or ki != "i":
            raise ValueError("merge acts on interval components")
        merged = ("i", tuple(items_j) + tuple(items_i))
        skel = []
        for ci, comp in enumerate(d.skeleton):
            if ci == j_index:
                skel.append(merged)
            elif ci == ip_index:
                continue
            else:
                skel.append(comp)
        out.add_diagram(
            JacobiDiagram(d.kind, d.nv, d.edges, d.legs, d.labels, d.ftable,
                          tuple(skel), d.dots), c)
    return out
