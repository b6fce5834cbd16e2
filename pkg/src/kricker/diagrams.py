"""Beaded, w-beaded and module-colored Jacobi diagrams, with canonical forms.

A diagram is a unitrivalent graph:

  * internal vertices 0..nv-1, trivalent, carrying a cyclic order of their
    three half-edges (slots 0,1,2 read cyclically);
  * legs (univalent vertices), attached to a set-label, to a position on a
    skeleton component, or carrying a module-element label;
  * edges (end_a, end_b, label), oriented a -> b; labels are integers k
    (meaning t^k) in the beaded worlds or RationalFraction in the
    delta-colored world.

Ends are ('v', vertex, slot) or ('l', leg).  Skeletons are tuples of
components ('i'|'o', items) whose items are ('l', leg), ('b', k) beads or
('m', name) marks; bead items only appear on raw diagrams and are absorbed
into the adjacent leg labels during normalization.

Canonical forms implement AS and OR as normalizers: the canonical
representative is the minimum over vertex relabelings (pruned by a
Weisfeiler-Lehman style refinement), slot reorderings (reflections cost a
sign) and leg renumberings; a diagram whose canonical encoding is reachable
with both signs is zero.
"""

from fractions import Fraction
import itertools

from .exactalg import LaurentPoly, RationalFraction

SET, SKEL, COL, DELTA = "set", "skel", "col", "delta"


def bar_label(label):
    if isinstance(label, int):
        return -label
    return label.bar()


def mul_label(a, b):
    """Compose labels along a path (both ints or both fractions or mix)."""
    if isinstance(a, int) and isinstance(b, int):
        return a + b
    fa = RationalFraction(LaurentPoly({a: 1})) if isinstance(a, int) else a
    fb = RationalFraction(LaurentPoly({b: 1})) if isinstance(b, int) else b
    return fa * fb


class JacobiDiagram:
    """Immutable diagram; build raw ones freely, hash canonical ones."""

    __slots__ = ("kind", "nv", "edges", "legs", "labels", "ftable", "skeleton", "dots", "_hash")

    def __init__(self, kind, nv, edges, legs=(), labels=None, ftable=None, skeleton=None, dots=()):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "nv", nv)
        object.__setattr__(self, "edges", tuple(tuple(e) for e in edges))
        object.__setattr__(self, "legs", tuple(legs))
        object.__setattr__(self, "labels", tuple(labels) if labels is not None else None)
        object.__setattr__(self, "ftable", tuple(ftable) if ftable is not None else None)
        object.__setattr__(self, "skeleton", tuple(skeleton) if skeleton is not None else None)
        object.__setattr__(self, "dots", tuple(sorted(dots)))
        object.__setattr__(self, "_hash", hash((kind, nv, self.edges, self.legs, self.labels,
                                                self.ftable, self.skeleton, self.dots)))

    def __setattr__(self, *a):
        raise AttributeError("JacobiDiagram is immutable")

    def __eq__(self, other):
        return (isinstance(other, JacobiDiagram)
                and self.kind == other.kind and self.nv == other.nv
                and self.edges == other.edges and self.legs == other.legs
                and self.labels == other.labels and self.ftable == other.ftable
                and self.skeleton == other.skeleton and self.dots == other.dots)

    def __hash__(self):
        return self._hash

    # degrees ----------------------------------------------------------
    @property
    def idegree(self):
        return self.nv + len(self.dots)

    @property
    def gsize(self):
        """Total number of graph vertices (trivalent + univalent)."""
        return self.nv + len(self.legs)

    def is_strut(self):
        return self.nv == 0 and len(self.edges) == 1 and len(self.legs) == 2

    def has_strut(self):
        """A connected component of the graph that is a single edge."""
        for a, b, _ in self.edges:
            if a[0] == "l" and b[0] == "l":
                return True
        return False

    def n_legs(self):
        return len(self.legs)

    def __repr__(self):
        return "JD(%s nv=%d e=%r legs=%r)" % (self.kind, self.nv, self.edges, self.legs)

    # convenience ------------------------------------------------------
    def vertex_halfedges(self):
        """Per vertex, the incident (edge_index, end_side) in slot order."""
        out = [[None, None, None] for _ in range(self.nv)]
        for idx, (a, b, _) in enumerate(self.edges):
            if a[0] == "v":
                out[a[1]][a[2]] = (idx, 0)
            if b[0] == "v":
                out[b[1]][b[2]] = (idx, 1)
        return out

    def graph_components(self):
        """Connected components of the graph part: lists of (vertexset, legset, edgeidxs)."""
        parent = {}

        def node(x):
            return ("v", x[1]) if x[0] == "v" else ("l", x[1])

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(self.nv):
            parent[("v", i)] = ("v", i)
        for j in range(len(self.legs)):
            parent[("l", j)] = ("l", j)
        for a, b, _ in self.edges:
            ra, rb = find(node(a)), find(node(b))
            if ra != rb:
                parent[ra] = rb
        groups = {}
        for idx, (a, b, _) in enumerate(self.edges):
            groups.setdefault(find(node(a)), []).append(idx)
        comps = []
        seen = set()
        for key in parent:
            r = find(key)
            if r in seen:
                continue
            seen.add(r)
            vs = [i for i in range(self.nv) if find(("v", i)) == r]
            ls = [j for j in range(len(self.legs)) if find(("l", j)) == r]
            comps.append((tuple(vs), tuple(ls), tuple(groups.get(r, ()))))
        return comps


# ---------------------------------------------------------------------------
# canonical form
# ---------------------------------------------------------------------------

_canon_cache = {}


def canonical_form(d, max_vertices=8):
    """Return (canonical_diagram, Fraction multiplier) or None when d = 0.

    The multiplier records the AS sign and any scalar pulled out of
    delta-world edge labels.  Raises ValueError when the graph exceeds the
    canonicalization budget.
    """
    key = d
    hit = _canon_cache.get(key)
    if hit is not None:
        return hit
    if d.nv > max_vertices:
        raise ValueError("canonicalization budget exceeded: %d > %d internal vertices"
                         % (d.nv, max_vertices))
    res = _canonical_uncached(d)
    _canon_cache[key] = res
    return res


def _scalar_normalize_label(label):
    """Pull a rational scalar out of a delta-world fraction label."""
    if isinstance(label, int):
        return Fraction(1), label
    if label.is_zero():
        return Fraction(0), label
    c = label.num.leading_coeff()
    return c, label * Fraction(1, 1) * (1 / c)


def _canonical_uncached(d):
    scalar = Fraction(1)
    edges = []
    for a, b, lab in d.edges:
        if isinstance(lab, RationalFraction):
            c, lab = _scalar_normalize_label(lab)
            if c == 0:
                return None  # zero-labeled edge kills the diagram (LE)
            scalar *= c
        elif isinstance(lab, LaurentPoly):
            raise ValueError("canonical_form expects expanded monomial labels")
        edges.append((a, b, lab))
    d = JacobiDiagram(d.kind, d.nv, edges, d.legs, d.labels, d.ftable, d.skeleton, d.dots)

    rotations = _circle_rotation_candidates(d)
    best = None
    best_signs = None
    for rotated in rotations:
        for enc, sign in _enumerate_encodings(rotated):
            if best is None or enc < best:
                best = enc
                best_signs = {sign}
            elif enc == best:
                best_signs.add(sign)
    if best is None:
        raise AssertionError("no encoding produced")
    if len(best_signs) == 2:
        return None
    sign = best_signs.pop()
    return _decode(best), scalar * sign


def _circle_rotation_candidates(d):
    """All rotations of circle components (winding shifts are handled upstream)."""
    if not d.skeleton:
        return [d]
    circle_idxs = [i for i, (k, items) in enumerate(d.skeleton) if k == "o" and items]
    if not circle_idxs:
        return [d]
    options = []
    for i, (k, items) in enumerate(d.skeleton):
        if k == "o" and items:
            options.append([tuple(items[r:] + items[:r]) for r in range(len(items))])
        else:
            options.append([tuple(items)])
    out = []
    for combo in itertools.product(*options):
        skel = tuple((d.skeleton[i][0], combo[i]) for i in range(len(d.skeleton)))
        out.append(JacobiDiagram(d.kind, d.nv, d.edges, d.legs, d.labels, d.ftable, skel, d.dots))
    return out


def _refine_colors(d):
    """WL-style vertex colors, invariant under relabeling and edge flips."""
    def rough_end(e, me):
        a, b, lab = e
        other = b if me == 0 else a
        lab_cls = (min(repr(lab), repr(bar_label(lab))),)
        if other[0] == "l":
            att = d.legs[other[1]]
            if d.kind == COL:
                att = ("m", d.labels[other[1]])
            return ("l", att, lab_cls)
        return ("v", lab_cls)

    halfedges = d.vertex_halfedges()
    colors = []
    for v in range(d.nv):
        descr = sorted(rough_end(d.edges[ei], side) for ei, side in halfedges[v])
        colors.append(hash(("c0", tuple(descr))))
    for _ in range(d.nv):
        new = []
        for v in range(d.nv):
            nb = []
            for ei, side in halfedges[v]:
                a, b, lab = d.edges[ei]
                other = b if side == 0 else a
                if other[0] == "v":
                    nb.append(colors[other[1]])
                else:
                    nb.append(-1)
            new.append(hash(("c", colors[v], tuple(sorted(nb)))))
        if new == colors:
            break
        colors = new
    return colors


def _enumerate_encodings(d):
    """Yield (encoding, sign) over vertex orders (pruned), leg ties, flips."""
    nv = d.nv
    colors = _refine_colors(d)
    order_groups = {}
    for v in range(nv):
        order_groups.setdefault(colors[v], []).append(v)
    group_keys = sorted(order_groups, key=lambda c: (len(order_groups[c]), c))
    perms_per_group = [list(itertools.permutations(order_groups[c])) for c in group_keys]

    results = []
    for combo in itertools.product(*perms_per_group):
        sigma = {}
        i = 0
        for grp in combo:
            for v in grp:
                sigma[v] = i
                i += 1
        results.extend(_encodings_for_order(d, sigma))
    return results


def _leg_sort_key(d, j, sigma):
    att = d.legs[j]
    if d.kind == COL:
        att = ("m", d.labels[j])
    incident = []
    for a, b, lab in d.edges:
        for me, other in ((a, b), (b, a)):
            if me == ("l", j):
                if other[0] == "v":
                    oth = ("v", sigma[other[1]])
                else:
                    oth = ("l", d.legs[other[1]] if d.kind != COL else ("m", d.labels[other[1]]))
                incident.append((oth, min(repr(lab), repr(bar_label(lab)))))
    return (repr(att), tuple(sorted(incident)))


def _encodings_for_order(d, sigma):
    # canonical leg numbering: skeleton legs fixed by position, others sorted
    # with tie groups enumerated
    n_legs = len(d.legs)
    skel_leg_order = []
    if d.skeleton:
        for kind, items in d.skeleton:
            for it in items:
                if it[0] == "l":
                    skel_leg_order.append(it[1])
    fixed = set(skel_leg_order)
    free = [j for j in range(n_legs) if j not in fixed]
    keyed = sorted(((_leg_sort_key(d, j, sigma), j) for j in free), key=lambda x: x[0])
    tie_groups = []
    for _, grp in itertools.groupby(keyed, key=lambda x: x[0]):
        tie_groups.append([j for _, j in grp])

    out = []
    for tie_perm in itertools.product(*[itertools.permutations(g) for g in tie_groups]):
        leg_order = list(skel_leg_order)
        for grp in tie_perm:
            leg_order.extend(grp)
        leg_map = {j: i for i, j in enumerate(leg_order)}
        out.extend(_encodings_for_maps(d, sigma, leg_map))
    return out


def _encodings_for_maps(d, sigma, leg_map):
    # normalize each edge (flip so encoded ends are sorted); loops with
    # bar-symmetric labels get both orientations (AS zero detection)
    def enc_end(e):
        if e[0] == "v":
            return (1, sigma[e[1]])
        return (0, leg_map[e[1]])

    edge_variants = []
    for a, b, lab in d.edges:
        ea, eb = enc_end(a), enc_end(b)
        variants = []
        if ea < eb:
            variants.append(((ea, eb, lab), (a, b)))
        elif eb < ea:
            variants.append(((eb, ea, bar_label(lab)), (b, a)))
        else:
            # loop at one vertex (or strut between interchangeable legs)
            variants.append(((ea, eb, lab), (a, b)))
            flipped = bar_label(lab)
            if flipped == lab and a != b:
                variants.append(((ea, eb, lab), (b, a)))
            elif a != b:
                variants.append(((ea, eb, flipped), (b, a)))
        edge_variants.append(variants)

    results = []
    for chosen in itertools.product(*edge_variants):
        enc_edges = [c[0] for c in chosen]
        phys = [c[1] for c in chosen]
        base_order = sorted(range(len(enc_edges)), key=lambda i: enc_edges[i])
        sorted_edges = tuple(enc_edges[i] for i in base_order)
        # identical encoded edges are interchangeable: enumerate their rank
        # assignments (their transpositions are graph automorphisms)
        blocks = []
        start = 0
        for k in range(1, len(base_order) + 1):
            if k == len(base_order) or enc_edges[base_order[k]] != enc_edges[base_order[start]]:
                blocks.append(base_order[start:k])
                start = k
        for block_perm in itertools.product(*[itertools.permutations(b) for b in blocks]):
            edge_index = {}
            rank = 0
            for blk in block_perm:
                for i in blk:
                    edge_index[i] = rank
                    rank += 1
            results.extend(
                _finish_encoding(d, sigma, leg_map, sorted_edges, phys, edge_index))
    return results


def _finish_encoding(d, sigma, leg_map, sorted_edges, phys, edge_index):
    # per-vertex cyclic canonicalization: rotations are free, reflections
    # cost the AS sign
    halfedge_ref = [[] for _ in range(d.nv)]  # slot -> (edge_rank, side)
    for i, (a2, b2) in enumerate(phys):
        if a2[0] == "v":
            halfedge_ref[a2[1]].append((a2[2], (edge_index[i], 0)))
        if b2[0] == "v":
            halfedge_ref[b2[1]].append((b2[2], (edge_index[i], 1)))
    sign = 1
    vertex_words = []
    for v in sorted(range(d.nv), key=lambda v0: sigma[v0]):
        slots = sorted(halfedge_ref[v])
        if len(slots) != 3:
            raise ValueError("vertex %d is not trivalent" % v)
        trip = tuple(ref for _, ref in slots)
        cands = {}
        for s, word in (
            (1, trip), (1, trip[1:] + trip[:1]), (1, trip[2:] + trip[:2]),
            (-1, (trip[0], trip[2], trip[1])),
            (-1, (trip[2], trip[1], trip[0])),
            (-1, (trip[1], trip[0], trip[2])),
        ):
            cands.setdefault(word, set()).add(s)
        word = min(cands)
        ss = cands[word]
        sign *= ss.pop()  # half-edge refs are pairwise distinct: one sign
        vertex_words.append(word)
    # remap legs in attachments / labels / ftable / skeleton
    inv_leg = {new: old for old, new in leg_map.items()}
    legs = tuple(d.legs[inv_leg[i]] for i in range(len(d.legs)))
    labels = tuple(d.labels[inv_leg[i]] for i in range(len(d.legs))) if d.labels is not None else None
    ftable = None
    if d.ftable is not None:
        f_old = _ftable_dict(d)
        ftable = []
        for i in range(len(d.legs)):
            for j in range(i + 1, len(d.legs)):
                ftable.append(f_old[(inv_leg[i], inv_leg[j])]
                              if inv_leg[i] < inv_leg[j]
                              else f_old[(inv_leg[j], inv_leg[i])].bar())
        ftable = tuple(ftable)
    skel = None
    if d.skeleton is not None:
        skel = tuple(
            (kind, tuple(("l", leg_map[it[1]]) if it[0] == "l" else it for it in items))
            for kind, items in d.skeleton
        )
    enc = (d.kind, d.nv, sorted_edges, tuple(vertex_words), legs, labels, ftable, skel, d.dots)
    return [(enc, sign)]


def _ftable_dict(d):
    out = {}
    n = len(d.legs)
    idx = 0
    for i in range(n):
        for j in range(i + 1, n):
            out[(i, j)] = d.ftable[idx]
            idx += 1
    return out


def _decode(enc):
    kind, nv, edges, vertex_words, legs, labels, ftable, skel, dots = enc
    # rebuild edges with slots from vertex words
    slot_of = {}
    for v, word in enumerate(vertex_words):
        for slot, ref in enumerate(word):
            slot_of[(v, ref)] = slot
    out_edges = []
    for rank, (ea, eb, lab) in enumerate(edges):
        def mk(end, side):
            if end[0] == 1:
                return ("v", end[1], slot_of[(end[1], (rank, side))])
            return ("l", end[1])
        out_edges.append((mk(ea, 0), mk(eb, 1), lab))
    return JacobiDiagram(kind, nv, out_edges, legs, labels, ftable, skel, dots)


def relabel_randomly(d, rng):
    """Permute vertex ids, slots (cyclically or with AS sign), edge order and
    orientations; returns (diagram, sign).  Test helper for canonicity."""
    perm = list(range(d.nv))
    rng.shuffle(perm)
    sign = 1
    slot_perms = []
    for _ in range(d.nv):
        p = rng.choice([(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)])
        slot_perms.append(p)
        if p in ((0, 2, 1), (2, 1, 0), (1, 0, 2)):
            sign = -sign

    def mp(end):
        if end[0] == "v":
            v, s = end[1], end[2]
            return ("v", perm[v], slot_perms[v].index(s))
        return end

    edges = []
    for a, b, lab in d.edges:
        if rng.random() < 0.5:
            edges.append((mp(b), mp(a), bar_label(lab)))
        else:
            edges.append((mp(a), mp(b), lab))
    rng.shuffle(edges)
    return JacobiDiagram(d.kind, d.nv, edges, d.legs, d.labels, d.ftable, d.skeleton, d.dots), sign
