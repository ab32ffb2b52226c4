"""Four touching coins in S^3 and the sphere through their contact points.

The three-sphere sits inside S^4 as the null set of a quaternionic hermitian
form; circles of S^3 become pairs of oriented two-spheres in the ambient
geometry.  For a cyclic chain of four mutually tangent circles the script
finds the two-sphere through the four contact points and shows that it
half-touches each circle representative.  The flat chain of coins on a table
triggers the non-generic fallback (the contact points are concircular).
"""

import numpy as np

from twistnets.quat import Quaternion
from twistnets.twistor import HPoint
from twistnets.lie import (
    QuatHermitianForm,
    circle_to_Q3,
    lie_signature_report,
    touching_coins_check,
)

FORM = QuatHermitianForm()


def imag_point(v):
    return HPoint.from_quaternion(Quaternion(0.0, *v))


def circle(points3):
    return circle_to_Q3(points3[0], points3[1], points3[2], FORM)[0]


def geodesic_circle_points(a, b):
    """Points on the circle through a, b in S^2 meeting the sphere at right
    angles; consecutive circles of this kind touch at the shared point."""
    c = (a + b) / (1.0 + float(a @ b))
    r = np.linalg.norm(a - c)
    u = (a - c) / r
    w = b - c - ((b - c) @ u) * u
    w = w / np.linalg.norm(w)
    return [imag_point(c + r * (np.cos(t) * u + np.sin(t) * w))
            for t in (0.4, 1.3, 2.5)]


def coplanar_coins():
    radii = [1.0, 2.0, 1.5, 1.2]
    c1 = np.array([0.0, 0.0])
    c2 = np.array([radii[0] + radii[1], 0.0])
    th = np.deg2rad(100.0)
    c3 = c2 + (radii[1] + radii[2]) * np.array([np.cos(th), np.sin(th)])
    d41, d34 = radii[3] + radii[0], radii[2] + radii[3]
    span = np.linalg.norm(c3 - c1)
    a = (d41 ** 2 - d34 ** 2 + span ** 2) / (2 * span)
    h = np.sqrt(d41 ** 2 - a ** 2)
    u = (c3 - c1) / span
    c4 = c1 + a * u - h * np.array([-u[1], u[0]])
    out = []
    for c, r in zip([c1, c2, c3, c4], radii):
        pts = [imag_point((c[0] + r * np.cos(t), c[1] + r * np.sin(t), 0.0))
               for t in np.linspace(0.3, 2 * np.pi, 4)[:3]]
        out.append(circle(pts))
    return out


def show(label, circles):
    rpt = touching_coins_check(circles, FORM)
    print(f"{label}:")
    print(f"  generic configuration: {rpt.generic}")
    print(f"  chain contacts:        {rpt.contact_tags}")
    print(f"  sphere vs circles:     {rpt.sphere_tags}")


def main():
    sig = lie_signature_report(FORM)
    print(f"real slice signature {sig['basis']}, "
          f"circle-space slice {sig['omega_slice']}\n")

    rng = np.random.default_rng(7)
    qs = []
    for _ in range(4):
        v = rng.normal(size=3)
        qs.append(v / np.linalg.norm(v))
    chain = [circle(geodesic_circle_points(qs[k - 1], qs[k]))
             for k in range(4)]
    show("chain of circles orthogonal to the unit sphere", chain)
    print()
    show("flat chain of coins on a table", coplanar_coins())


if __name__ == "__main__":
    main()
