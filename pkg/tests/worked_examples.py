"""Hand transcriptions of the worked n=8 multiplication examples.

Each entry gives the two factors, the stated coefficient and the stated
product.  Pairs are written with the endpoint helpers from diagalg.diagram.
"""

from diagalg.coeff import (BETA, GHOST_GAMMA3, GHOST_GAMMA12, Monomial, alpha_up, delta_down, gamma,
                           ghost_alpha, ghost_delta)
from diagalg.diagram import B, L, R, T, make_diagram
from diagalg.ghostalg import make_ghost

X01 = ("0", "1")

# First example: d1 has top endpoints R8, R3; d2 sends L1, L2, R2, R1 to the
# top and L8, L3 to the bottom, with the loop L4-L7 / R4-R5 / R6-R7 / L5-L6.
_D1_PAIRS = [(L(1), L(2)), (L(3), L(8)), (L(4), L(5)), (L(6), L(7)),
             (R(1), R(2)), (R(3), T(2)), (R(4), R(5)), (R(6), R(7)), (R(8), T(1))]
_D2_PAIRS = [(L(1), T(1)), (L(2), T(2)), (L(3), B(2)), (L(4), L(7)), (L(5), L(6)), (L(8), B(1)),
             (R(1), T(4)), (R(2), T(3)), (R(3), R(6)), (R(4), R(5)), (R(7), R(8))]
_P1_PAIRS = [(L(1), L(2)), (L(3), L(8)), (L(4), L(5)), (L(6), L(7)),
             (R(1), T(2)), (R(2), T(1)), (R(3), R(6)), (R(4), R(5)), (R(7), R(8))]

# Second example.
_E1_PAIRS = [(L(1), L(2)), (L(3), T(1)), (L(4), R(3)), (L(5), L(6)), (L(7), L(8)),
             (R(1), T(3)), (R(2), T(2)), (R(4), R(5)), (R(6), B(1)), (R(7), B(2)), (R(8), B(3))]
_E2_PAIRS = [(L(1), T(1)), (L(2), T(2)), (L(3), R(1)), (L(4), R(2)), (L(5), R(7)),
             (L(6), B(3)), (L(7), B(2)), (L(8), B(1)), (R(3), R(4)), (R(5), R(6)), (R(8), B(4))]
_P2_PAIRS = [(L(1), L(2)), (L(3), T(1)), (L(4), R(1)), (L(5), L(6)), (L(7), L(8)),
             (R(2), R(7)), (R(3), R(4)), (R(5), R(6)), (R(8), B(1))]

LABEL_EXAMPLES = [
    (make_diagram(8, X01, ["0", "1"], [], _D1_PAIRS),
     make_diagram(8, X01, ["1", "0", "1", "0"], ["1", "1"], _D2_PAIRS),
     Monomial.of(BETA, alpha_up("1", "0"), gamma("0", "1"), gamma("1", "1")),
     make_diagram(8, X01, ["1", "0"], [], _P1_PAIRS)),
    (make_diagram(8, X01, ["0", "1", "0"], ["0", "1", "0"], _E1_PAIRS),
     make_diagram(8, X01, ["1", "1"], ["1", "0", "0", "1"], _E2_PAIRS),
     Monomial.of(alpha_up("1", "1"), alpha_up("0", "1"), delta_down("0", "0"), delta_down("1", "0"),
                 delta_down("0", "1")),
     make_diagram(8, X01, ["0"], ["1"], _P2_PAIRS)),
]

# The ghost examples draw the same shapes; the second one routes L2 of the
# right factor to the third top point, behind a ghost.
GHOST_EXAMPLES = [
    (make_ghost(8, [1, 0, 1], [0], _D1_PAIRS),
     make_ghost(8, [0, 0, 0, 0, 0], [0, 1, 1], _D2_PAIRS),
     Monomial.of(BETA, ghost_alpha(1), GHOST_GAMMA12, GHOST_GAMMA3),
     make_ghost(8, [0, 0, 0], [0], _P1_PAIRS)),
    (make_ghost(8, [1, 0, 0, 0], [1, 0, 0, 0], _E1_PAIRS),
     make_ghost(8, [0, 1, 1], [0, 0, 1, 0, 1], _E2_PAIRS),
     Monomial.of(ghost_alpha(2), ghost_alpha(3), ghost_delta(1), ghost_delta(2), ghost_delta(3)),
     make_ghost(8, [1, 0], [0, 1], _P2_PAIRS)),
]
