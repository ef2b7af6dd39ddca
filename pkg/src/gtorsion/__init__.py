"""Generalized-torsion certificates in Dehn-filled knot groups.

Words live in :mod:`gtorsion.word`, presentations and fillings in
:mod:`gtorsion.presentation`, replayable proofs in :mod:`gtorsion.derivation`,
certificates in :mod:`gtorsion.certificate`, builders in
:mod:`gtorsion.constructors` and cross-checks in :mod:`gtorsion.oracle`.
"""

from .certificate import (ConjugateProduct, Evidence, MembershipCertificate, TorsionCertificate,
                          certificate_from_json, concat_products, conjugate_product, power_product,
                          power_pair_certificate, commutator_powers_certificate, realize, verify)
from .derivation import DerivationLog, Move, replay
from .presentation import (Diagram, Presentation, Slope, dehn_fill, lin_presentation,
                           torus_presentation, wirtinger)
from .word import Alphabet, Word, commutator, conjugate

__version__ = "0.1.0"

__all__ = [
    "ConjugateProduct", "Evidence", "MembershipCertificate", "TorsionCertificate",
    "certificate_from_json", "concat_products", "conjugate_product", "power_product", "power_pair_certificate",
    "commutator_powers_certificate", "realize", "verify", "DerivationLog", "Move", "replay", "Diagram",
    "Presentation", "Slope", "dehn_fill", "lin_presentation", "torus_presentation", "wirtinger",
    "Alphabet", "Word", "commutator", "conjugate",
]
