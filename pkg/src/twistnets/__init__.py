"""Discrete integrable nets through sphere geometry in twistor coordinates.

Subpackages cover quaternion algebra (:mod:`~twistnets.quat`), projective
linear algebra on C^4 and the Pluecker quadric (:mod:`~twistnets.proj4`), the
twistor fibration and sphere contact (:mod:`~twistnets.twistor`), cross-ratio
machinery (:mod:`~twistnets.xratio`), discrete nets (:mod:`~twistnets.nets`),
principal contact element nets (:mod:`~twistnets.contact`), the reduction to
three-sphere geometry (:mod:`~twistnets.lie`), and a command-line driver
(:mod:`~twistnets.cli`).
"""

from .quat import Quaternion
from .proj4 import GeometryError
from .twistor import HPoint, SphereEndo, classify_contact

__all__ = ["Quaternion", "GeometryError", "HPoint", "SphereEndo",
           "classify_contact"]

__version__ = "0.1.0"
