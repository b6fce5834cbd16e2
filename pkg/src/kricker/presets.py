"""Built-in presentation programs used across tests, demos and the CLI.

The text blocks are in the presentation file format of `presentation`.
"""

from .presentation import parse_program

# S^3 with the trivial knot: nothing to do
EMPTY = "disk 0 0\n"

# zero-framed unknot split from the axis
UNKNOT0 = """\
cup 0 lr
cap 0
disk 0 0
"""

# +-1 framed unknots split from the axis (one kink; cup pair is (down, up),
# so the honest kink sign is minus the slice's geometric sign)
U_PLUS = """\
cup 0 lr
x- 0
cap 0
disk 0 0
"""

U_MINUS = """\
cup 0 lr
x+ 0
cap 0
disk 0 0
"""

# one zero-framed circle through the disk (surgery gives S^3 again)
RING = """\
cup 0 lr
disk 0 2
cap 0
"""

# single component clasping the disk, one negative self-crossing of winding
# zero: W = (t - 1 + t^{-1}), a presentation of the trefoil pair
TREFOIL = """\
cup 0 lr
cup 2 rl
x- 1
disk 2 2
x+ 1
x- 2
cap 1
cap 0
"""

# same clasp with three winding-zero negative self-crossings:
# W = (t - 3 + t^{-1}), a presentation of the figure-eight-knot pair
FIG8_KNOT = """\
cup 0 lr
cup 2 rl
x- 1
disk 2 2
x+ 1
x- 2
cap 1
cup 2 rl
x- 1
cap 2
cup 2 rl
x- 1
cap 2
cap 0
"""

# the two-component worked example: each component crosses the disk twice
# with opposite signs, four positive mutual crossings, w(L1,L2) = t + 1
FIG8_EXAMPLE = """\
cup 0 lr
cup 2 lr
cup 0 lr
x- 1
x- 1
x- 3
x- 3
disk 0 4
cap 2
cap 1
cap 0
"""

# two split unknots with framings -3 and -4: |H1| = 12
H12 = """\
cup 0 lr
x+ 0
x+ 0
x+ 0
cap 0
cup 0 lr
x+ 0
x+ 0
x+ 0
x+ 0
cap 0
disk 0 0
"""

PROGRAMS = {
    "empty": EMPTY,
    "unknot0": UNKNOT0,
    "u+": U_PLUS,
    "u-": U_MINUS,
    "ring": RING,
    "trefoil": TREFOIL,
    "fig8knot": FIG8_KNOT,
    "fig8example": FIG8_EXAMPLE,
    "h12": H12,
}


def program(name):
    return parse_program(PROGRAMS[name])
