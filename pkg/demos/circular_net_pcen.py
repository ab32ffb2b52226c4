"""Evolve a circular net in S^4 and dress it with principal contact elements.

A circular net is a lattice whose elementary quadrilaterals are concircular;
it arises here from a cross-ratio evolution with real negative ratio.  On top
of the net we propagate a principal contact element net (PCEN): one pencil of
touching spheres per vertex, adjacent pencils sharing a sphere.  The script
verifies the face-closure property and writes the base net to an OBJ file.
"""

import numpy as np

from twistnets.quat import Quaternion
from twistnets.twistor import HPoint
from twistnets.proj4 import normalize_proj, wedge
from twistnets.nets import evolve_net_circular
from twistnets.contact import (
    contact_element,
    null_line_real_point,
    pcen_adjacency_residual,
    pcen_face_closure,
    pcen_from_circular,
)
from twistnets.cli import main as cli_main, net_to_doc, dump_doc


def main():
    rng = np.random.default_rng(4)
    n = 8
    curve = [HPoint.from_quaternion(Quaternion(0.0, np.cos(t), np.sin(t), 0.0))
             for t in np.linspace(0.3, 2.4, n)]
    seeds = [HPoint.from_quaternion(Quaternion(*rng.standard_normal(4)))
             for _ in range(n - 1)]
    net = evolve_net_circular(curve, seeds, -1.0)
    print(f"evolved a {n}x{n} circular net")

    sphere = normalize_proj(wedge(
        net[0, 0].lift(),
        rng.standard_normal(4) + 1j * rng.standard_normal(4)))
    pcen = pcen_from_circular(net, contact_element(net[0, 0], sphere))
    print(f"PCEN face closure:     {pcen_face_closure(pcen):.3e}")
    print(f"PCEN adjacency defect: {pcen_adjacency_residual(pcen):.3e}")
    realized = sum(null_line_real_point(pcen[idx]) is not None
                   for idx in net.indices())
    print(f"elements with a real point: {realized}/{n * n}")

    dump_doc(net_to_doc(net), "circular_net.json")
    cli_main(["export", "circular_net.json", "-o", "circular_net.obj"])
    print("wrote circular_net.json and circular_net.obj")


if __name__ == "__main__":
    main()
