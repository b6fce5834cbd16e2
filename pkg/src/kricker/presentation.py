"""Surgery presentations as tangle programs.

A program is a bottom-to-top list of elementary slices acting on a row of
strand positions:

    cup <pos> <lr|rl>   create strands pos, pos+1 (lr: left leg oriented
                        down into the minimum, right leg up; rl: converse)
    cap <pos>           close strands pos, pos+1 (opposite directions)
    x+ <pos> | x- <pos> crossing of strands pos, pos+1; x+ is the pattern
                        whose over-strand runs from (pos, bottom) to
                        (pos+1, top); the sign of the crossing also depends
                        on the strand orientations
    disk <pos> <width>  the slice where the disk spans [pos, pos+width)

Comments start with '#'.  The bottom and the top of the program have width
zero, so the tangle is a closed link; exactly one disk slice is required.
"""

from dataclasses import dataclass


class PresentationError(ValueError):
    """Structurally invalid tangle program; carries the offending slice index."""

    def __init__(self, message, slice_index=None):
        self.slice_index = slice_index
        if slice_index is not None:
            message = "slice %d: %s" % (slice_index, message)
        super().__init__(message)


@dataclass(frozen=True)
class Slice:
    kind: str  # 'cup' | 'cap' | 'x+' | 'x-' | 'disk'
    pos: int
    arg: object = None  # 'lr'/'rl' for cups, width for disk

    def text(self):
        if self.kind == "cup":
            return "cup %d %s" % (self.pos, self.arg)
        if self.kind == "disk":
            return "disk %d %d" % (self.pos, self.arg)
        return "%s %d" % (self.kind, self.pos)


class TangleProgram:
    """A validated slice program (one disk slice, closed link)."""

    def __init__(self, slices):
        self.slices = tuple(slices)
        self.widths = self._validate()

    def _validate(self):
        widths = [0]
        w = 0
        disk_count = 0
        for idx, s in enumerate(self.slices):
            if s.kind == "cup":
                if not 0 <= s.pos <= w:
                    raise PresentationError("cup position %d out of range (width %d)" % (s.pos, w), idx)
                w += 2
            elif s.kind == "cap":
                if not 0 <= s.pos < w - 1:
                    raise PresentationError("cap position %d out of range (width %d)" % (s.pos, w), idx)
                w -= 2
            elif s.kind in ("x+", "x-"):
                if not 0 <= s.pos < w - 1:
                    raise PresentationError("crossing position %d out of range (width %d)" % (s.pos, w), idx)
            elif s.kind == "disk":
                disk_count += 1
                if s.arg < 0 or not 0 <= s.pos <= w - s.arg or (s.arg == 0 and s.pos > w):
                    raise PresentationError("disk [%d,%d) out of range (width %d)" % (s.pos, s.pos + s.arg, w), idx)
            else:
                raise PresentationError("unknown slice kind %r" % s.kind, idx)
            widths.append(w)
        if w != 0:
            raise PresentationError("program ends with width %d, expected 0 (unclosed strands)" % w,
                                    len(self.slices) - 1 if self.slices else None)
        if disk_count == 0:
            raise PresentationError("no disk slice")
        if disk_count > 1:
            raise PresentationError("multiple disk slices")
        return tuple(widths)

    @property
    def disk_slice_index(self):
        for i, s in enumerate(self.slices):
            if s.kind == "disk":
                return i
        raise AssertionError

    def text(self):
        return "\n".join(s.text() for s in self.slices) + "\n"

    def __eq__(self, other):
        return isinstance(other, TangleProgram) and self.slices == other.slices

    def __repr__(self):
        return "TangleProgram(%d slices)" % len(self.slices)


def parse_program(text):
    """Parse the presentation file format into a TangleProgram."""
    slices = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        try:
            if kind == "cup":
                if len(parts) != 3 or parts[2] not in ("lr", "rl"):
                    raise ValueError
                slices.append(Slice("cup", int(parts[1]), parts[2]))
            elif kind == "cap":
                slices.append(Slice("cap", int(parts[1])))
            elif kind in ("x+", "x-"):
                slices.append(Slice(kind, int(parts[1])))
            elif kind == "disk":
                slices.append(Slice("disk", int(parts[1]), int(parts[2])))
            else:
                raise ValueError
        except (ValueError, IndexError):
            raise PresentationError("cannot parse line %d: %r" % (lineno, raw), len(slices))
    return TangleProgram(slices)


# ---------------------------------------------------------------------------
# Component tracing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Crossing:
    """One crossing of the diagram.

    sign is the honest crossing sign (orientation dependent); comp_a/occ_a
    refer to the strand starting at the lower-left position.
    """

    ident: int
    slice_index: int
    comp_a: int
    comp_b: int
    sign: int


class ComponentMap:
    """Components of a traced program with per-component event lists.

    events[i] is the traversal-ordered list, starting at the base point of
    component i, of
        ('disk', eps, slice_index)          a disk pass of sign eps
        ('x', crossing_id, other_component) a crossing occurrence
    The base point of a component sits on the up-oriented leg of its lowest
    cup, just above the cup; `base_shift[i]` records how many disk passes a
    base point has been moved across (signed), for consumers that cut the
    skeleton at base points.
    """

    def __init__(self, program, n_components, events, crossings, base_cups, base_shift=None):
        self.program = program
        self.n_components = n_components
        self.events = [tuple(e) for e in events]
        self.crossings = dict(crossings)
        self.base_cups = tuple(base_cups)
        self.base_shift = tuple(base_shift) if base_shift is not None else (0,) * n_components

    def disk_signs(self, i):
        return [ev[1] for ev in self.events[i] if ev[0] == "disk"]

    def crossings_of(self, i):
        return [ev[1] for ev in self.events[i] if ev[0] == "x"]


def trace_components(program):
    """Trace strands through the program; deterministic component numbering."""
    threads = []  # per thread: dict with events list, endpoints
    row = []  # current row: list of thread ids

    def new_thread(slice_idx, kind):
        threads.append({
            "events": [],  # (slice_index, payload) in slice order
            "bottom": (slice_idx, kind),  # created at this cup
            "top": None,
            "dir": 0,  # +1 traversal upward, -1 downward; set at cup
        })
        return len(threads) - 1

    cups = []  # (slice_idx, pos, left_thread, right_thread, orient)
    caps = []  # (slice_idx, left_thread, right_thread)
    crossing_records = []  # (slice_idx, thread_a, thread_b, kind)

    for idx, s in enumerate(program.slices):
        if s.kind == "cup":
            a = new_thread(idx, "cupL")
            b = new_thread(idx, "cupR")
            if s.arg == "lr":
                threads[a]["dir"] = -1
                threads[b]["dir"] = +1
            else:
                threads[a]["dir"] = +1
                threads[b]["dir"] = -1
            row[s.pos:s.pos] = [a, b]
            cups.append((idx, s.pos, a, b, s.arg))
        elif s.kind == "cap":
            a, b = row[s.pos], row[s.pos + 1]
            da, db = threads[a]["dir"], threads[b]["dir"]
            if da + db != 0:
                raise PresentationError("cap joins strands with equal orientation", idx)
            threads[a]["top"] = (idx, "cap")
            threads[b]["top"] = (idx, "cap")
            caps.append((idx, a, b))
            del row[s.pos:s.pos + 2]
        elif s.kind in ("x+", "x-"):
            a, b = row[s.pos], row[s.pos + 1]
            crossing_records.append((idx, a, b, s.kind))
            row[s.pos], row[s.pos + 1] = b, a
        elif s.kind == "disk":
            for p in range(s.pos, s.pos + s.arg):
                th = row[p]
                threads[th]["events"].append((idx, ("disk", threads[th]["dir"])))

    for cid, (idx, a, b, kind) in enumerate(crossing_records):
        base = 1 if kind == "x+" else -1
        sign = base * threads[a]["dir"] * threads[b]["dir"]
        threads[a]["events"].append((idx, ("x", cid, "a")))
        threads[b]["events"].append((idx, ("x", cid, "b")))
        crossing_records[cid] = (idx, a, b, kind, sign)

    # stitch threads into components: cup joins (a,b) at the bottom, cap at top
    parent = list(range(len(threads)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for _, _, a, b, _ in cups:
        union(a, b)
    for _, a, b in caps:
        union(a, b)

    # component numbering by first appearance (lowest cup, then position)
    comp_of_root = {}
    base_cup_of_comp = []
    for idx, pos, a, b, orient in cups:
        r = find(a)
        if r not in comp_of_root:
            comp_of_root[r] = len(base_cup_of_comp)
            base_cup_of_comp.append((idx, pos, a, b, orient))
    n_comp = len(base_cup_of_comp)
    comp_of_thread = {t: comp_of_root[find(t)] for t in range(len(threads))}

    # adjacency along the component: walking off an endpoint of a thread
    # continues on the partner thread of the same cup/cap
    partner_at_bottom = {}
    partner_at_top = {}
    for _, _, a, b, _ in cups:
        partner_at_bottom[a] = b
        partner_at_bottom[b] = a
    for _, a, b in caps:
        partner_at_top[a] = b
        partner_at_top[b] = a

    events = []
    for comp in range(n_comp):
        idx, pos, a, b, orient = base_cup_of_comp[comp]
        up_leg = b if orient == "lr" else a
        ev = []
        th = up_leg
        while True:
            if threads[th]["dir"] == +1:
                ordered = sorted(threads[th]["events"], key=lambda x: x[0])
                nxt = partner_at_top[th]
            else:
                ordered = sorted(threads[th]["events"], key=lambda x: -x[0])
                nxt = partner_at_bottom[th]
            for slice_idx, payload in ordered:
                if payload[0] == "disk":
                    ev.append(("disk", payload[1], slice_idx))
                else:
                    _, cid, _ = payload
                    rec = crossing_records[cid]
                    other_thread = rec[2] if rec[1] == th else rec[1]
                    ev.append(("x", cid, comp_of_thread[other_thread]))
            if nxt == up_leg:
                break
            th = nxt
        events.append(ev)

    crossings = {}
    for cid, (idx, a, b, kind, sign) in enumerate(crossing_records):
        crossings[cid] = Crossing(cid, idx, comp_of_thread[a], comp_of_thread[b], sign)

    for comp in range(n_comp):
        total = sum(e[1] for e in events[comp] if e[0] == "disk")
        if total != 0:
            raise PresentationError(
                "component %d not null-homologous in the complement of the axis (disk-pass sum %d)"
                % (comp, total))

    base_cups = [(idx, pos) for idx, pos, _, _, _ in base_cup_of_comp]
    return ComponentMap(program, n_comp, events, crossings, base_cups)


def move_base_point(cmap, i, direction=+1):
    """Move the base point of component i across one disk pass.

    Returns (new_map, eps) where eps is the sign of the pass crossed, or
    (rotated_map, None) when the component never meets the disk ("no disk
    crossed"): then the event list is rotated by a single event.
    """
    ev = list(cmap.events[i])
    events = [list(e) for e in cmap.events]
    shifts = list(cmap.base_shift)
    if not any(e[0] == "disk" for e in ev):
        if ev:
            events[i] = ev[direction:] + ev[:direction] if direction > 0 else ev[direction:] + ev[:direction]
        return ComponentMap(cmap.program, cmap.n_components, events, cmap.crossings,
                            cmap.base_cups, shifts), None
    if direction > 0:
        k = next(j for j, e in enumerate(ev) if e[0] == "disk")
        eps = ev[k][1]
        events[i] = ev[k + 1:] + ev[:k + 1]
        shifts[i] += 1
    else:
        k = max(j for j, e in enumerate(ev) if e[0] == "disk")
        eps = ev[k][1]
        events[i] = ev[k:] + ev[:k]
        shifts[i] -= 1
    return ComponentMap(cmap.program, cmap.n_components, events, cmap.crossings,
                        cmap.base_cups, shifts), eps


# ---------------------------------------------------------------------------
# Program transforms used by the move-checking harness
# ---------------------------------------------------------------------------

def append_split_unknot(program, sign):
    """Stack a split +-1-framed unknot (one kink) above the program."""
    kink = Slice("x+" if sign > 0 else "x-", 0)
    extra = [Slice("cup", 0, "lr"), kink, Slice("cap", 0)]
    return TangleProgram(list(program.slices) + extra)


def _cup_component_membership(program):
    """Map each cup slice index to its component number (first-appearance order)."""
    row = []
    parent = []

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    cup_slices = []
    for idx, s in enumerate(program.slices):
        if s.kind == "cup":
            a = len(parent)
            parent.extend([a, a + 1])
            parent[a + 1] = a
            row[s.pos:s.pos] = [a, a + 1]
            cup_slices.append((idx, a))
        elif s.kind == "cap":
            a, b = row[s.pos], row[s.pos + 1]
            parent[find(a)] = find(b)
            del row[s.pos:s.pos + 2]
        elif s.kind in ("x+", "x-"):
            row[s.pos], row[s.pos + 1] = row[s.pos + 1], row[s.pos]
    roots = []
    comp_of_cup = {}
    for idx, a in cup_slices:
        r = find(a)
        if r not in roots:
            roots.append(r)
        comp_of_cup[idx] = roots.index(r)
    return comp_of_cup


def reverse_component(program, comp):
    """Flip the orientation of one component (its cup letters swapped)."""
    comp_of_cup = _cup_component_membership(program)
    if comp not in comp_of_cup.values():
        raise ValueError("no component %d" % comp)
    out = []
    for idx, s in enumerate(program.slices):
        if s.kind == "cup" and comp_of_cup[idx] == comp:
            out.append(Slice("cup", s.pos, "rl" if s.arg == "lr" else "lr"))
        else:
            out.append(s)
    return TangleProgram(out)


def stack_programs(p1, p2):
    """Connected-sum presentation: run p2 in fresh columns at p1's disk level.

    The two disk slices fuse into a single one, so the result is again a
    valid program.  This needs the disk ranges to sit next to each other:
    either one of the disks is empty, or p1's disk range is a suffix of its
    width and p2's disk spans its full width.
    """
    d1, d2 = p1.disk_slice_index, p2.disk_slice_index
    s1, s2 = p1.slices[d1], p2.slices[d2]
    w1 = p1.widths[d1]
    w2 = p2.widths[d2]
    if s2.arg == 0:
        fused = Slice("disk", s1.pos, s1.arg)
    elif s1.arg == 0:
        fused = Slice("disk", w1 + s2.pos, s2.arg)
    elif s1.pos + s1.arg == w1 and s2.pos == 0 and s2.arg == w2:
        fused = Slice("disk", s1.pos, (w1 - s1.pos) + w2)
    else:
        raise PresentationError(
            "cannot fuse disk slices: need a suffix disk in the lower program "
            "and a full-width disk in the upper one")
    out = list(p1.slices[:d1])
    out.extend(Slice(s.kind, s.pos + w1, s.arg) for s in p2.slices[:d2])
    out.append(fused)
    out.extend(Slice(s.kind, s.pos + w1, s.arg) for s in p2.slices[d2 + 1:])
    out.extend(p1.slices[d1 + 1:])
    return TangleProgram(out)
