"""Graded Q-linear series of canonical Jacobi diagrams.

Insertion normalizes:

  * LE: multi-term edge labels expand into monomial (t^k) pieces;
  * skeleton beads: absorbed by Hol_w pushes (intervals keep one trailing
    bead; circles absorb fully and quotient the winding shift);
  * colored diagrams: EV pulls leg-edge beads into labels, labels reduce to
    module normal form, LD rewrites the pairing table onto the canonical
    representative f0(labels) (spawning arc closures), LV expands labels
    into monomial pieces and kills zero labels;
  * AS / OR via canonical graph labeling.

Two truncations: `max_idegree` bounds trivalent vertices plus isolated
prime-labeled dots, `max_gsize` bounds total graph vertices (the Vassiliev
cap used by the functor pipeline).
"""

from fractions import Fraction
import itertools

from .exactalg import LaurentPoly, RationalFraction, ZERO, ONE
from .diagrams import JacobiDiagram, canonical_form, bar_label, SET, SKEL, COL, DELTA


class Trunc:
    __slots__ = ("max_idegree", "max_gsize")

    def __init__(self, max_idegree=None, max_gsize=None):
        self.max_idegree = max_idegree
        self.max_gsize = max_gsize

    def admits(self, d):
        if self.max_idegree is not None and d.idegree > self.max_idegree:
            return False
        if self.max_gsize is not None and d.gsize > self.max_gsize:
            return False
        return True

    def __eq__(self, other):
        return (isinstance(other, Trunc) and self.max_idegree == other.max_idegree
                and self.max_gsize == other.max_gsize)

    def __repr__(self):
        return "Trunc(i<=%s, g<=%s)" % (self.max_idegree, self.max_gsize)


class DiagramSeries:
    def __init__(self, kind, trunc, terms=None, context=None):
        self.kind = kind
        self.trunc = trunc
        self.context = context
        self.terms = {}
        if terms:
            for d, c in terms.items():
                self.add_diagram(d, c)

    # -- building ---------------------------------------------------------
    def add_diagram(self, d, coeff):
        """Insert a raw diagram: normalizes, canonicalizes, truncates."""
        coeff = Fraction(coeff)
        if coeff == 0:
            return
        for key, c in normalize_diagram(d, coeff, self.context):
            if not self.trunc.admits(key):
                continue
            cur = self.terms.get(key, Fraction(0)) + c
            if cur == 0:
                self.terms.pop(key, None)
            else:
                self.terms[key] = cur

    def add_canonical(self, key, coeff):
        if not self.trunc.admits(key):
            return
        cur = self.terms.get(key, Fraction(0)) + Fraction(coeff)
        if cur == 0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = cur

    def copy(self):
        out = DiagramSeries(self.kind, self.trunc, context=self.context)
        out.terms = dict(self.terms)
        return out

    # -- queries ------------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def coeff(self, d):
        res = normalize_diagram(d, Fraction(1), self.context)
        acc = Fraction(0)
        for key, c in res:
            acc += self.terms.get(key, Fraction(0)) * c
        # meaningful for diagrams normalizing to a single key
        return acc

    def constant_term(self):
        return self.terms.get(_empty_key(self.kind), Fraction(0))

    def graded_piece(self, n):
        out = self.copy()
        out.terms = {d: c for d, c in self.terms.items() if d.idegree == n}
        return out

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))

    # -- linear ops ----------------------------------------------------------
    def __add__(self, other):
        self._check(other)
        out = self.copy()
        for d, c in other.terms.items():
            out.add_canonical(d, c)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        out = DiagramSeries(self.kind, self.trunc, context=self.context)
        if c != 0:
            out.terms = {d: cc * c for d, cc in self.terms.items()}
        return out

    def __eq__(self, other):
        return (isinstance(other, DiagramSeries) and self.kind == other.kind
                and self.terms == other.terms)

    def _check(self, other):
        if self.kind != other.kind or self.trunc != other.trunc:
            raise ValueError("series kind/truncation mismatch")

    def __repr__(self):
        return "DiagramSeries(%s, %d terms)" % (self.kind, len(self.terms))

    # -- multiplicative ops ---------------------------------------------------
    def disjoint_union(self, other):
        self._check(other)
        out = DiagramSeries(self.kind, self.trunc, context=self.context)
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                out.add_diagram(merge_disjoint(d1, d2, self.context), c1 * c2)
        return out

    def power(self, n):
        out = unit_series(self.kind, self.trunc, self.context)
        for _ in range(n):
            out = out.disjoint_union(self)
        return out

    def invert(self):
        """Inverse for the disjoint union (constant term must be 1)."""
        const = self.terms.get(_empty_key(self.kind), Fraction(0))
        if const != 1:
            raise ValueError("series inversion needs constant term 1")
        eps = self - unit_series(self.kind, self.trunc, self.context)
        out = unit_series(self.kind, self.trunc, self.context)
        term = unit_series(self.kind, self.trunc, self.context)
        bound = _nilpotency_bound(self.trunc)
        for _ in range(bound):
            term = term.disjoint_union(eps).scale(-1)
            if term.is_zero():
                break
            out = out + term
        return out

    def exp_disjoint(self):
        """exp_⊔ of a series with no constant term (each piece positive size)."""
        if _empty_key(self.kind) in self.terms:
            raise ValueError("exp of a series with nonzero constant term")
        out = unit_series(self.kind, self.trunc, self.context)
        term = unit_series(self.kind, self.trunc, self.context)
        k = 0
        bound = _nilpotency_bound(self.trunc)
        while k < bound:
            k += 1
            term = term.disjoint_union(self).scale(Fraction(1, k))
            if term.is_zero():
                break
            out = out + term
        return out

    def log_disjoint(self):
        const = self.terms.get(_empty_key(self.kind), Fraction(0))
        if const != 1:
            raise ValueError("log needs constant term 1")
        eps = self - unit_series(self.kind, self.trunc, self.context)
        out = zero_series(self.kind, self.trunc, self.context)
        term = unit_series(self.kind, self.trunc, self.context)
        bound = _nilpotency_bound(self.trunc)
        for k in range(1, bound + 1):
            term = term.disjoint_union(eps)
            if term.is_zero():
                break
            out = out + term.scale(Fraction((-1) ** (k + 1), k))
        return out

    # -- Hopf structure ----------------------------------------------------
    def coproduct(self):
        out = TensorSeries(self.kind, self.trunc)
        for d, c in self.terms.items():
            for left, right, mult in split_components(d, self.context):
                out.add(left, right, c * mult)
        return out

    def is_group_like(self):
        lhs = self.coproduct()
        rhs = TensorSeries(self.kind, self.trunc)
        for d1, c1 in self.terms.items():
            for d2, c2 in self.terms.items():
                rhs.add(d1, d2, c1 * c2)
        return lhs == rhs

    def is_primitive_supported(self):
        """True when every term is a connected diagram (or a single dot)."""
        for d in self.terms:
            ngraph = len(d.graph_components())
            if ngraph + len(d.dots) != 1:
                return False
        return True


class TensorSeries:
    def __init__(self, kind, trunc):
        self.kind = kind
        self.trunc = trunc
        self.terms = {}

    def add(self, d1, d2, c):
        if self.trunc.max_idegree is not None and d1.idegree + d2.idegree > self.trunc.max_idegree:
            return
        if self.trunc.max_gsize is not None and d1.gsize + d2.gsize > self.trunc.max_gsize:
            return
        key = (d1, d2)
        cur = self.terms.get(key, Fraction(0)) + c
        if cur == 0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = cur

    def __eq__(self, other):
        return isinstance(other, TensorSeries) and self.terms == other.terms


# ---------------------------------------------------------------------------
# construction helpers
# ---------------------------------------------------------------------------

_EMPTY_KEYS = {}


def _empty_key(kind):
    key = _EMPTY_KEYS.get(kind)
    if key is None:
        d = JacobiDiagram(kind, 0, (), (), labels=() if kind == COL else None,
                          ftable=() if kind == COL else None)
        key, _ = canonical_form(d)
        _EMPTY_KEYS[kind] = key
    return key


def empty_diagram(kind):
    return _empty_key(kind)


def unit_series(kind, trunc, context=None):
    s = DiagramSeries(kind, trunc, context=context)
    s.add_canonical(_empty_key(kind), 1)
    return s


def zero_series(kind, trunc, context=None):
    return DiagramSeries(kind, trunc, context=context)


def _nilpotency_bound(trunc):
    if trunc.max_idegree is None and trunc.max_gsize is None:
        raise ValueError("series operations need a truncation bound")
    bounds = []
    if trunc.max_idegree is not None:
        bounds.append(trunc.max_idegree)
    if trunc.max_gsize is not None:
        bounds.append(trunc.max_gsize)
    return max(1, min(bounds) + 1)


def _sort_key(d):
    return (d.idegree, d.gsize, repr(d.edges), repr(d.legs), repr(d.labels),
            repr(d.skeleton), d.dots)


# ---------------------------------------------------------------------------
# normalization pipeline
# ---------------------------------------------------------------------------

def normalize_diagram(d, coeff, context=None):
    """Full normalization: returns a list of (canonical_key, coefficient)."""
    out = []
    stack = [(d, Fraction(coeff))]
    while stack:
        cur, c = stack.pop()
        step = _expand_le(cur, c)
        if step is not None:
            stack.extend(step)
            continue
        if cur.skeleton is not None and _has_beads(cur):
            stack.append((_absorb_beads(cur), c))
            continue
        if cur.kind == COL:
            step = _normalize_colored(cur, c, context)
            if step is not None:
                stack.extend(step)
                continue
        if cur.skeleton is not None:
            cur = _shift_minimize_circles(cur)
        res = canonical_form(cur)
        if res is None:
            continue
        key, mult = res
        out.append((key, c * mult))
    return out


def _expand_le(d, c):
    """Expand one LaurentPoly edge label; None when none remain."""
    for idx, (a, b, lab) in enumerate(d.edges):
        if isinstance(lab, LaurentPoly):
            if lab.is_zero():
                return []
            pieces = []
            for e, coef in lab.terms:
                edges = list(d.edges)
                edges[idx] = (a, b, e)
                pieces.append((JacobiDiagram(d.kind, d.nv, edges, d.legs, d.labels,
                                             d.ftable, d.skeleton, d.dots), c * coef))
            return pieces
        if isinstance(lab, RationalFraction) and d.kind != DELTA:
            raise ValueError("fraction edge labels only live in the delta world")
    if d.kind == DELTA:
        for idx, (a, b, lab) in enumerate(d.edges):
            if isinstance(lab, int):
                edges = list(d.edges)
                edges[idx] = (a, b, RationalFraction(LaurentPoly({lab: 1})))
                return [(JacobiDiagram(d.kind, d.nv, edges, d.legs, d.labels,
                                       d.ftable, d.skeleton, d.dots), c)]
    return None


def _has_beads(d):
    """True when some bead is not in normal position (trailing on an interval)."""
    for kind, items in d.skeleton:
        for pos, it in enumerate(items):
            if it[0] != "b":
                continue
            if kind == "o" or pos != len(items) - 1:
                return True
            if len([x for x in items if x[0] == "b"]) > 1:
                return True
    return False


def _leg_edge_index(d, leg):
    for idx, (a, b, _) in enumerate(d.edges):
        if a == ("l", leg) or b == ("l", leg):
            return idx
    raise ValueError("leg %d has no incident edge" % leg)


def _scale_leg_edge(edges, d, leg, k):
    """Multiply the label of leg's edge by t^k as seen from an outward edge."""
    idx = _leg_edge_index(d, leg)
    a, b, lab = edges[idx]
    if not isinstance(lab, int):
        raise ValueError("bead absorption expects monomial labels")
    if a == ("l", leg):  # oriented away from the leg
        edges[idx] = (a, b, lab + k)
    else:
        edges[idx] = (a, b, lab - k)


def _absorb_beads(d):
    """Push beads to the head of each interval / fully around circles."""
    edges = list(d.edges)
    skel = []
    for kindc, items in d.skeleton:
        acc = 0
        kept = []
        for it in items:
            if it[0] == "b":
                acc += it[1]
            elif it[0] == "l":
                if acc:
                    _scale_leg_edge(edges, d, it[1], acc)
                kept.append(it)
            else:
                kept.append(it)
        if kindc == "i" and acc:
            kept.append(("b", acc))
        elif kindc == "o" and acc:
            raise ValueError("closed skeleton component with net bead t^%d" % acc)
        skel.append((kindc, tuple(kept)))
    return JacobiDiagram(d.kind, d.nv, edges, d.legs, d.labels, d.ftable, tuple(skel), d.dots)


def _circle_shift_sigma(d, comp_index):
    """Per edge, the winding multiplier for pushing t^k around this circle."""
    kindc, items = d.skeleton[comp_index]
    legs = {it[1] for it in items if it[0] == "l"}
    mult = {}
    for idx, (a, b, lab) in enumerate(d.edges):
        m = 0
        if a[0] == "l" and a[1] in legs:
            m += 1
        if b[0] == "l" and b[1] in legs:
            m -= 1
        if m:
            mult[idx] = m
    return mult


def _shift_minimize_circles(d):
    """Canonical winding representative: per circle, the smallest k minimizing
    sum |exp + m k| over incident edges."""
    edges = list(d.edges)
    for ci, (kindc, items) in enumerate(d.skeleton):
        if kindc != "o":
            continue
        mult = _circle_shift_sigma(d, ci)
        if not mult:
            continue
        pairs = [(edges[idx][2], m) for idx, m in mult.items()]

        def cost(k):
            return sum(abs(e + m * k) for e, m in pairs)

        span = max(abs(e) for e, _ in pairs) + 1
        best = min(range(-span, span + 1), key=lambda k: (cost(k), k))
        if best:
            for idx, m in mult.items():
                a, b, lab = edges[idx]
                edges[idx] = (a, b, lab + m * best)
        d = JacobiDiagram(d.kind, d.nv, edges, d.legs, d.labels, d.ftable, d.skeleton, d.dots)
    return d


# -- colored normalization ---------------------------------------------------

def _normalize_colored(d, c, ctx):
    """One colored rewriting step; None when d is already normal."""
    if ctx is None:
        raise ValueError("colored series need a Blanchfield presentation context")
    n = len(d.legs)
    # EV: absorb leg-edge beads into labels / f-rows
    for j in range(n):
        idx = _leg_edge_index(d, j)
        a, b, lab = d.edges[idx]
        into = 1 if b == ("l", j) else -1
        if lab != 0:
            k = lab * into  # exponent as seen by an inward edge
            edges = list(d.edges)
            edges[idx] = (a, b, 0)
            labels = list(d.labels)
            labels[j] = _label_scale(labels[j], k, ctx)
            ftab = _ftable_as_dict(d)
            for (u, v), f in list(ftab.items()):
                if u == j:
                    ftab[(u, v)] = f * LaurentPoly({k: 1})
                elif v == j:
                    ftab[(u, v)] = f * LaurentPoly({-k: 1})
            return [(JacobiDiagram(COL, d.nv, edges, d.legs, labels,
                                   _ftable_from_dict(ftab, n), d.skeleton, d.dots), c)]
    # reduce labels to module normal form
    labels = list(d.labels)
    changed = False
    for j in range(n):
        red = _label_reduce(labels[j], ctx)
        if red != labels[j]:
            labels[j] = red
            changed = True
    if changed:
        return [(JacobiDiagram(COL, d.nv, d.edges, d.legs, labels, d.ftable,
                               d.skeleton, d.dots), c)]
    # LD: rewrite f to the canonical representative f0, spawning closures
    ftab = _ftable_as_dict(d)
    for (u, v), f in sorted(ftab.items()):
        f0 = _f0(labels[u], labels[v], ctx)
        diff = f - f0
        if diff.is_zero():
            continue
        if not diff.is_polynomial():
            raise ValueError("pairing entry differs from b(labels) by a non-polynomial")
        base = dict(ftab)
        base[(u, v)] = f0
        d_base = JacobiDiagram(COL, d.nv, d.edges, d.legs, labels,
                               _ftable_from_dict(base, n), d.skeleton, d.dots)
        d_closed = _join_legs(d, u, v, diff.as_laurent())
        return [(d_base, c), (d_closed, c)]
    # LV: zero labels kill, non-monomial labels expand
    expansions = []
    for j in range(n):
        pieces = _label_pieces(labels[j])
        if pieces == []:
            return []  # zero label
        expansions.append(pieces)
    if all(len(p) == 1 and p[0][0] == 1 for p in expansions) and \
            all(_is_monomial_label(l) for l in labels):
        return None  # already normal
    out = []
    for combo in itertools.product(*expansions):
        coeff = c
        new_labels = []
        for coef, mono in combo:
            coeff *= coef
            new_labels.append(mono)
        ftab2 = {}
        for u in range(n):
            for v in range(u + 1, n):
                ftab2[(u, v)] = _f0(new_labels[u], new_labels[v], ctx)
        out.append((JacobiDiagram(COL, d.nv, d.edges, d.legs, new_labels,
                                  _ftable_from_dict(ftab2, n), d.skeleton, d.dots), coeff))
    return out


def _is_monomial_label(label):
    return isinstance(label, tuple) and len(label) == 2 and all(isinstance(x, int) for x in label)


def _label_vector(label, ctx):
    """Labels are either monomials (exp, generator) or coordinate vectors."""
    if _is_monomial_label(label):
        e, g = label
        vec = [ZERO] * ctx.n
        vec[g] = LaurentPoly({e: 1})
        return tuple(vec)
    return tuple(x if isinstance(x, LaurentPoly) else LaurentPoly.const(x) for x in label)


def _label_scale(label, k, ctx):
    vec = _label_vector(label, ctx)
    return tuple(x.shift(k) for x in vec)


def _label_reduce(label, ctx):
    if _is_monomial_label(label):
        vec = ctx.reduce(_label_vector(label, ctx))
        mono = _vector_as_monomial(vec)
        if mono == label:
            return label
        return vec
    return ctx.reduce(_label_vector(label, ctx))


def _vector_as_monomial(vec):
    found = None
    for g, p in enumerate(vec):
        if p.is_zero():
            continue
        if found is not None or not p.is_monomial():
            return None
        e, coef = p.terms[0]
        if coef != 1:
            return None
        found = (e, g)
    return found


def _label_pieces(label):
    """LV expansion into (rational, (exp, gen)) monomial pieces."""
    if _is_monomial_label(label):
        return [(Fraction(1), label)]
    pieces = []
    for g, p in enumerate(label):
        if p.is_zero():
            continue
        for e, coef in p.terms:
            pieces.append((coef, (e, g)))
    return pieces


def _f0(label_u, label_v, ctx):
    return ctx.pairing_exact(_label_vector(label_u, ctx), _label_vector(label_v, ctx))


def _ftable_as_dict(d):
    out = {}
    n = len(d.legs)
    idx = 0
    for i in range(n):
        for j in range(i + 1, n):
            out[(i, j)] = d.ftable[idx]
            idx += 1
    return out


def _ftable_from_dict(ftab, n):
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            out.append(ftab[(i, j)])
    return tuple(out)


def _join_legs(d, u, v, poly):
    """LD closure: connect legs u and v by an edge labeled poly (u -> v)."""
    n = len(d.legs)
    keep = [j for j in range(n) if j not in (u, v)]
    remap = {old: new for new, old in enumerate(keep)}
    iu = _leg_edge_index(d, u)
    iv = _leg_edge_index(d, v)
    if iu == iv:
        raise ValueError("closing the two legs of a strut is not supported")
    edges = []
    other_u = other_v = None
    lab_u = lab_v = 0
    for idx, (a, b, lab) in enumerate(d.edges):
        if idx == iu:
            # orient toward the leg u, label as inward
            if b == ("l", u):
                other_u, lab_u = a, lab
            else:
                other_u, lab_u = b, -lab if isinstance(lab, int) else bar_label(lab)
            continue
        if idx == iv:
            if b == ("l", v):
                other_v, lab_v = a, lab
            else:
                other_v, lab_v = b, -lab if isinstance(lab, int) else bar_label(lab)
            continue
        edges.append((a, b, lab))

    def remap_end(e):
        if e[0] == "l":
            return ("l", remap[e[1]])
        return e

    edges = [(remap_end(a), remap_end(b), lab) for a, b, lab in edges]
    # composite edge: other_u -> other_v traversing (edge into u), the new
    # LD arc labeled poly (u -> v), then (edge into v) reversed
    lab_uv = LaurentPoly({lab_u: 1}) * poly * LaurentPoly({lab_v: 1}).bar() \
        if isinstance(lab_u, int) and isinstance(lab_v, int) else None
    if lab_uv is None:
        raise ValueError("LD closure expects monomial leg edges")
    edges.append((remap_end(other_u), remap_end(other_v), lab_uv))
    labels = tuple(d.labels[j] for j in keep)
    ftab = _ftable_as_dict(d)
    new_ftab = {}
    for i2 in range(len(keep)):
        for j2 in range(i2 + 1, len(keep)):
            a0, b0 = keep[i2], keep[j2]
            new_ftab[(i2, j2)] = ftab[(a0, b0)] if a0 < b0 else ftab[(b0, a0)].bar()
    return JacobiDiagram(COL, d.nv, edges, tuple(d.legs[j] for j in keep), labels,
                         _ftable_from_dict(new_ftab, len(keep)), d.skeleton, d.dots)


# ---------------------------------------------------------------------------
# disjoint union / coproduct on canonical diagrams
# ---------------------------------------------------------------------------

def merge_disjoint(d1, d2, context=None):
    """Raw disjoint union of two canonical diagrams (same kind)."""
    if d1.kind != d2.kind:
        raise ValueError("kind mismatch")
    if d1.skeleton is not None or d2.skeleton is not None:
        raise ValueError("disjoint union is for skeleton-free diagrams")
    nv = d1.nv
    nl = len(d1.legs)

    def shift_end(e):
        if e[0] == "v":
            return ("v", e[1] + nv, e[2])
        return ("l", e[1] + nl)

    edges = list(d1.edges) + [(shift_end(a), shift_end(b), lab) for a, b, lab in d2.edges]
    legs = d1.legs + d2.legs
    labels = None
    ftable = None
    if d1.kind == COL:
        labels = (d1.labels or ()) + (d2.labels or ())
        f1 = _ftable_as_dict(d1)
        f2 = _ftable_as_dict(d2)
        ftab = {}
        n = len(legs)
        for i in range(n):
            for j in range(i + 1, n):
                if j < nl:
                    ftab[(i, j)] = f1[(i, j)]
                elif i >= nl:
                    ftab[(i, j)] = f2[(i - nl, j - nl)]
                else:
                    ftab[(i, j)] = _f0(labels[i], labels[j], context)
        ftable = _ftable_from_dict(ftab, n)
    return JacobiDiagram(d1.kind, d1.nv + d2.nv, edges, legs, labels, ftable,
                         None, d1.dots + d2.dots)


def split_components(d, context=None):
    """All splittings (left, right) of d's connected pieces, for the coproduct."""
    comps = d.graph_components()
    units = [("g", k) for k in range(len(comps))] + [("d", k) for k in range(len(d.dots))]
    out = []
    for r in range(len(units) + 1):
        for chosen in itertools.combinations(range(len(units)), r):
            left, ml = _subdiagram(d, [units[i] for i in chosen], comps, context)
            right, mr = _subdiagram(d, [units[i] for i in range(len(units)) if i not in chosen],
                                    comps, context)
            out.append((left, right, ml * mr))
    return out


def _subdiagram(d, chosen_units, comps, context=None):
    vs = set()
    ls = set()
    es = set()
    dots = []
    for kind, k in chosen_units:
        if kind == "g":
            cv, cl, ce = comps[k]
            vs.update(cv)
            ls.update(cl)
            es.update(ce)
        else:
            dots.append(d.dots[k])
    vmap = {v: i for i, v in enumerate(sorted(vs))}
    lmap = {l: i for i, l in enumerate(sorted(ls))}

    def mp(e):
        if e[0] == "v":
            return ("v", vmap[e[1]], e[2])
        return ("l", lmap[e[1]])

    edges = [(mp(a), mp(b), lab) for i, (a, b, lab) in enumerate(d.edges) if i in es]
    legs = tuple(d.legs[l] for l in sorted(ls))
    labels = tuple(d.labels[l] for l in sorted(ls)) if d.labels is not None else None
    ftable = None
    if d.ftable is not None:
        ftab = _ftable_as_dict(d)
        sl = sorted(ls)
        new = {}
        for i in range(len(sl)):
            for j in range(i + 1, len(sl)):
                a0, b0 = sl[i], sl[j]
                new[(i, j)] = ftab[(a0, b0)]
        ftable = _ftable_from_dict(new, len(sl))
    skel = None
    if d.skeleton is not None:
        skel = tuple(
            (kindc, tuple(("l", lmap[it[1]]) if it[0] == "l" else it
                          for it in items if it[0] != "l" or it[1] in ls))
            for kindc, items in d.skeleton
        )
    sub = JacobiDiagram(d.kind, len(vs), edges, legs, labels, ftable, skel, tuple(dots))
    res = canonical_form(sub)
    if res is None:
        raise AssertionError("subdiagram of a canonical diagram vanished")
    return res
