"""Equality modulo the diagram relation ideals, by explicit linear algebra.

AS, OR, LE (and for colored diagrams LV, EV, LD, plus skeleton bead moves)
are normalizers applied at series insertion.  The remaining relations --
IHX, STU and the holonomy relation Hol -- are generated as exact relation
vectors at every applicable site of every diagram reachable from the input
support within a budget (bead-exponent window, graph-size cap, support
cap).  The generated subspace is echelonized over Q and the input reduced
against it.

The outcome is one-sided: a reduction to zero certifies equality, anything
else is reported as "unresolved"; the default budgets are set so that every
pipeline-critical equality resolves.
"""

from fractions import Fraction

from .diagrams import JacobiDiagram, SET, SKEL, COL, DELTA
from .series import DiagramSeries, normalize_diagram, _sort_key


class Budget:
    def __init__(self, bead_slack=3, max_support=4000, max_vertices=8, max_rounds=8):
        self.bead_slack = bead_slack
        self.max_support = max_support
        self.max_vertices = max_vertices
        self.max_rounds = max_rounds

    def __repr__(self):
        return ("Budget(slack=%d, support=%d, vertices=%d)"
                % (self.bead_slack, self.max_support, self.max_vertices))


DEFAULT_BUDGET = Budget()


class ReductionResult:
    def __init__(self, series, complete):
        self.series = series
        self.complete = complete  # False when a budget was hit


def _exponent_window(series, slack):
    lo, hi = 0, 0
    for d in series.terms:
        for _, _, lab in d.edges:
            if isinstance(lab, int):
                lo = min(lo, lab)
                hi = max(hi, lab)
    return lo - slack, hi + slack


def _within_window(d, window):
    lo, hi = window
    for _, _, lab in d.edges:
        if isinstance(lab, int) and not lo <= lab <= hi:
            return False
    return True


# ---------------------------------------------------------------------------
# relation vector generation at the sites of one canonical diagram
# ---------------------------------------------------------------------------

def _vertex_word(d, v):
    """Half-edge descriptors at v in slot order: (edge_index, side)."""
    word = [None, None, None]
    for idx, (a, b, _) in enumerate(d.edges):
        if a[0] == "v" and a[1] == v:
            word[a[2]] = (idx, 0)
        if b[0] == "v" and b[1] == v:
            word[b[2]] = (idx, 1)
    return word


def _shift_label(lab, delta):
    if isinstance(lab, int):
        return lab + delta
    from .exactalg import LaurentPoly
    return lab * LaurentPoly({delta: 1})


def _hol_vectors(d):
    """Pushing t^{±1} around each trivalent vertex."""
    out = []
    for v in range(d.nv):
        for step in (1, -1):
            edges = list(d.edges)
            for idx, (a, b, lab) in enumerate(d.edges):
                delta = 0
                if a[0] == "v" and a[1] == v:
                    delta += step  # oriented away from v
                if b[0] == "v" and b[1] == v:
                    delta -= step
                if delta:
                    edges[idx] = (a, b, _shift_label(lab, delta))
            shifted = JacobiDiagram(d.kind, d.nv, edges, d.legs, d.labels,
                                    d.ftable, d.skeleton, d.dots)
            out.append([(d, Fraction(1)), (shifted, Fraction(-1))])
    return out


def _rotate_word_to(word, idx_side):
    k = word.index(idx_side)
    return word[k:] + word[:k]


def _ihx_vectors(d):
    """I - H + X at every label-0 edge joining two distinct vertices."""
    out = []
    for eidx, (a, b, lab) in enumerate(d.edges):
        if lab != 0 or a[0] != "v" or b[0] != "v" or a[1] == b[1]:
            continue
        v, w = a[1], b[1]
        wv = _rotate_word_to(_vertex_word(d, v), (eidx, 0))
        ww = _rotate_word_to(_vertex_word(d, w), (eidx, 1))
        (_, p, q) = wv
        (_, r, s) = ww
        # with stored words (e,p,q) at v and (e,r,s) at w:
        #   D - [v:(e,q,r), w:(e,s,p)] + [v:(e,p,r), w:(e,s,q)] = 0
        term_h = _rewire(d, v, w, eidx, (q, r), (s, p))
        term_x = _rewire(d, v, w, eidx, (p, r), (s, q))
        out.append([(d, Fraction(1)), (term_h, Fraction(-1)), (term_x, Fraction(1))])
    return out


def _rewire(d, v, w, eidx, at_v, at_w):
    """Rebuild d with outer half-edges reattached: at_v/at_w are pairs of
    (edge_index, side) that should sit at slots 1,2 of v resp. w; slot 0 is
    the middle edge eidx."""
    ends = {}
    ends[(eidx, 0)] = ("v", v, 0)
    ends[(eidx, 1)] = ("v", w, 0)
    for slot, ref in ((1, at_v[0]), (2, at_v[1])):
        ends[ref] = ("v", v, slot)
    for slot, ref in ((1, at_w[0]), (2, at_w[1])):
        ends[ref] = ("v", w, slot)
    edges = []
    for idx, (a, b, lab) in enumerate(d.edges):
        na = ends.get((idx, 0), a)
        nb = ends.get((idx, 1), b)
        edges.append((na, nb, lab))
    return JacobiDiagram(d.kind, d.nv, edges, d.legs, d.labels, d.ftable,
                         d.skeleton, d.dots)


def _skeleton_positions(d):
    """(component index, item position) of each leg item."""
    out = {}
    for ci, (kind, items) in enumerate(d.skeleton or ()):
        for pi, it in enumerate(items):
            if it[0] == "l":
                out[it[1]] = (ci, pi)
    return out


def _stu_expand_vectors(d):
    """STU at every trivalent vertex attached to the skeleton by a 0-edge."""
    if d.skeleton is None:
        return []
    out = []
    for eidx, (a, b, lab) in enumerate(d.edges):
        if lab != 0:
            continue
        for vend, lend in ((a, b), (b, a)):
            if vend[0] != "v" or lend[0] != "l":
                continue
            v, leg = vend[1], lend[1]
            pos = _skeleton_positions(d).get(leg)
            if pos is None:
                continue
            word = _rotate_word_to(_vertex_word(d, v), (eidx, 0 if vend is a else 1))
            (_, h1, h2) = word
            d1 = _stu_attach(d, v, leg, eidx, h1, h2)
            d2 = _stu_attach(d, v, leg, eidx, h2, h1)
            out.append([(d, Fraction(1)), (d1, Fraction(-1)), (d2, Fraction(1))])
            break
    return out


def _stu_attach(d, v, leg, eidx, first, second):
    """Replace vertex v (attached at `leg` by edge eidx) by two direct legs;
    `first` sits earlier along the skeleton."""
    # remove vertex v and edge eidx; legs: replace `leg` by two legs
    new_leg_first = leg  # reuse the id, insert a fresh one after it
    fresh = len(d.legs)
    edges = []
    for idx, (a, b, lab) in enumerate(d.edges):
        if idx == eidx:
            continue

        def mp(e, ref_idx, side):
            if e[0] == "v" and e[1] == v:
                ref = (ref_idx, side)
                if ref == first:
                    return ("l", new_leg_first)
                if ref == second:
                    return ("l", fresh)
                raise AssertionError("unexpected half-edge at removed vertex")
            if e[0] == "v" and e[1] > v:
                return ("v", e[1] - 1, e[2])
            return e

        edges.append((mp(a, idx, 0), mp(b, idx, 1), lab))
    legs = d.legs + (d.legs[leg],)
    labels = d.labels + (d.labels[leg],) if d.labels is not None else None
    ftable = d.ftable  # colored diagrams never reach here (no skeleton)
    skel = []
    for ci, (kind, items) in enumerate(d.skeleton):
        new_items = []
        for it in items:
            new_items.append(it)
            if it == ("l", leg):
                new_items.append(("l", fresh))
        skel.append((kind, tuple(new_items)))
    return JacobiDiagram(d.kind, d.nv - 1, edges, legs, labels, ftable,
                         tuple(skel), d.dots)


def _stu_contract_vectors(d):
    """Reverse STU: two adjacent skeleton legs fuse into a trivalent vertex."""
    if d.skeleton is None:
        return []
    out = []
    for ci, (kind, items) in enumerate(d.skeleton):
        nlegs = [it for it in items if it[0] == "l"]
        for pi in range(len(items)):
            it = items[pi]
            nxt = items[(pi + 1) % len(items)] if kind == "o" else (
                items[pi + 1] if pi + 1 < len(items) else None)
            if nxt is None or nxt is it or it[0] != "l" or nxt[0] != "l":
                continue
            la, lb = it[1], nxt[1]
            if la == lb:
                continue
            ds = _stu_fuse(d, ci, pi, la, lb)
            swapped = _swap_adjacent_legs(d, ci, pi)
            out.append([(ds, Fraction(1)), (d, Fraction(-1)), (swapped, Fraction(1))])
    return out


def _swap_adjacent_legs(d, ci, pi):
    kind, items = d.skeleton[ci]
    items = list(items)
    j = (pi + 1) % len(items)
    items[pi], items[j] = items[j], items[pi]
    skel = list(d.skeleton)
    skel[ci] = (kind, tuple(items))
    return JacobiDiagram(d.kind, d.nv, d.edges, d.legs, d.labels, d.ftable,
                         tuple(skel), d.dots)


def _stu_fuse(d, ci, pi, la, lb):
    """Fuse adjacent legs la (earlier), lb into a new vertex with a 0-edge."""
    v = d.nv
    keep = [j for j in range(len(d.legs)) if j not in (la, lb)]
    remap = {old: new for new, old in enumerate(keep)}
    fused_leg = len(keep)  # new leg at the fused position

    def mp(e):
        if e[0] == "l":
            if e[1] == la:
                return ("v", v, 1)
            if e[1] == lb:
                return ("v", v, 2)
            return ("l", remap[e[1]])
        return e

    edges = [(mp(a), mp(b), lab) for a, b, lab in d.edges]
    edges.append((("v", v, 0), ("l", fused_leg), 0))
    legs = tuple(d.legs[j] for j in keep) + (d.legs[la],)
    skel = []
    for cj, (kind, items) in enumerate(d.skeleton):
        new_items = []
        for qi, it in enumerate(items):
            if cj == ci and qi == pi:
                new_items.append(("l", fused_leg))
                continue
            if cj == ci and it == ("l", lb) and qi == (pi + 1) % len(items):
                continue
            if it[0] == "l":
                new_items.append(("l", remap[it[1]]))
            else:
                new_items.append(it)
        skel.append((kind, tuple(new_items)))
    return JacobiDiagram(d.kind, d.nv + 1, edges, legs, d.labels, d.ftable,
                         tuple(skel), d.dots)


def relation_vectors_at(d):
    vecs = []
    vecs.extend(_hol_vectors(d))
    vecs.extend(_ihx_vectors(d))
    if d.kind == SKEL:
        vecs.extend(_stu_expand_vectors(d))
        vecs.extend(_stu_contract_vectors(d))
    return vecs


# ---------------------------------------------------------------------------
# closure, echelon, reduction
# ---------------------------------------------------------------------------

def _normalize_vector(raw, context):
    out = {}
    for d, c in raw:
        for key, cc in normalize_diagram(d, c, context):
            cur = out.get(key, Fraction(0)) + cc
            if cur == 0:
                out.pop(key, None)
            else:
                out[key] = cur
    return out


class RelationSpace:
    """Echelonized relation subspace over a diagram support."""

    def __init__(self, context=None, budget=DEFAULT_BUDGET, window=(0, 0), trunc=None):
        self.context = context
        self.budget = budget
        self.window = window
        self.trunc = trunc
        self.pivots = {}  # pivot key -> vector (dict)
        self.seen = set()
        self.complete = True

    def _admit(self, key):
        if self.trunc is not None and not self.trunc.admits(key):
            return False
        return _within_window(key, self.window) and key.nv <= self.budget.max_vertices

    def close_over(self, keys):
        frontier = sorted(set(keys) - self.seen, key=_sort_key)
        while frontier:
            if len(self.seen) > self.budget.max_support:
                self.complete = False
                return
            d = frontier.pop(0)
            if d in self.seen:
                continue
            self.seen.add(d)
            try:
                raws = relation_vectors_at(d)
            except ValueError:
                self.complete = False
                continue
            for raw in raws:
                try:
                    vec = _normalize_vector(raw, self.context)
                except ValueError:
                    self.complete = False
                    continue
                if not vec:
                    continue
                if not all(self._admit(k) for k in vec):
                    continue
                newkeys = [k for k in vec if k not in self.seen]
                self._insert(vec)
                frontier.extend(newkeys)
                frontier.sort(key=_sort_key)

    def _insert(self, vec):
        vec = self.reduce_vector(vec)
        if not vec:
            return
        piv = min(vec, key=_sort_key)
        c = vec[piv]
        vec = {k: v / c for k, v in vec.items()}
        self.pivots[piv] = vec
        # keep echelon reduced: eliminate piv from existing pivot rows
        for p, row in list(self.pivots.items()):
            if p == piv:
                continue
            if piv in row:
                f = row[piv]
                newrow = dict(row)
                for k, v in vec.items():
                    cur = newrow.get(k, Fraction(0)) - f * v
                    if cur == 0:
                        newrow.pop(k, None)
                    else:
                        newrow[k] = cur
                self.pivots[p] = newrow

    def reduce_vector(self, vec):
        vec = dict(vec)
        changed = True
        while changed:
            changed = False
            for k in sorted(vec, key=_sort_key):
                row = self.pivots.get(k)
                if row is None:
                    continue
                f = vec[k]
                for kk, vv in row.items():
                    cur = vec.get(kk, Fraction(0)) - f * vv
                    if cur == 0:
                        vec.pop(kk, None)
                    else:
                        vec[kk] = cur
                changed = True
                break
        return vec


def reduce_mod_relations(series, budget=DEFAULT_BUDGET):
    """Reduce against the relation subspace generated from the support."""
    current = dict(series.terms)
    complete = True
    for round_no in range(budget.max_rounds):
        probe = DiagramSeries(series.kind, series.trunc, context=series.context)
        probe.terms = dict(current)
        window = _exponent_window(probe, budget.bead_slack)
        space = RelationSpace(series.context, budget, window, series.trunc)
        space.close_over(current.keys())
        reduced = space.reduce_vector(current)
        complete = complete and space.complete
        if reduced == current:
            break
        current = reduced
    else:
        complete = False
    out = DiagramSeries(series.kind, series.trunc, context=series.context)
    for k, c in current.items():
        out.add_canonical(k, c)
    return ReductionResult(out, complete)


def equal_mod_relations(a, b, budget=DEFAULT_BUDGET):
    """'equal' iff a - b reduces to 0 within budget, else 'unresolved'."""
    diff = a - b
    if diff.is_zero():
        return "equal"
    res = reduce_mod_relations(diff, budget)
    if res.series.is_zero():
        return "equal"
    return "unresolved"
