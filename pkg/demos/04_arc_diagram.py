"""
Correlation arcs
================

Sites sit on a circle and every pair with |C_ij| above a threshold is
joined by a chord.  The rainbow state shows concentric mirror arcs; the
homogeneous chain shows short arcs that fade with distance.

Run as ``python 04_arc_diagram.py [output_dir]`` to also write SVG files.
"""

import sys
from pathlib import Path

import rainbowchain as rc


def ground(spec):
    return rc.ground_state_correlations(rc.diagonalize(rc.build_hopping_matrix(spec.couplings())))


# nearest-neighbour correlations are of order e^{-h/2}, so keep the cut above that
rainbow = rc.arc_diagram(ground(rc.ChainSpec(20, h=4.0)), threshold=0.2)
print("rainbow arcs:", rainbow.pairs())

uniform = rc.arc_diagram(ground(rc.ChainSpec(20, kind="homogeneous")), threshold=0.2)
print("homogeneous arcs:", len(uniform), "above 0.2")

if len(sys.argv) > 1:
    out = Path(sys.argv[1])
    out.mkdir(parents=True, exist_ok=True)
    rainbow.to_svg(out / "rainbow_arcs.svg")
    uniform.to_svg(out / "homogeneous_arcs.svg")
    print("wrote", out / "rainbow_arcs.svg", "and", out / "homogeneous_arcs.svg")
