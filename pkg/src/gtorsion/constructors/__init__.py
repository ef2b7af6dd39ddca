"""Certificate builders and slope-condition checkers per knot family."""

from .builders import (PreconditionError, disk_presentation, genus1_case, genus1_cert,
                       meridian_evidence, positive_diagram_cert, singular_disk_cert,
                       torus_commutator_cert)
from .conditions import (FAMILIES, AlexanderReport, Applicable, ClassificationReport, FamilySpec,
                         MontesinosReport, alexander_genus1, classify, classify_quadratic_roots,
                         montesinos_c)

__all__ = [
    "PreconditionError", "disk_presentation", "genus1_case", "genus1_cert", "meridian_evidence",
    "positive_diagram_cert", "singular_disk_cert", "torus_commutator_cert", "AlexanderReport",
    "Applicable", "ClassificationReport", "FAMILIES", "FamilySpec", "MontesinosReport", "alexander_genus1",
    "classify", "classify_quadratic_roots", "montesinos_c",
]
