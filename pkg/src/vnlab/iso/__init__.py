from vnlab.iso.canonical import CanonicalForm, canonical_form, canonical_key, structural_order
from vnlab.iso.enumeration import enumerate_iso_class
from vnlab.iso.isomorphism import (
    OrbitPartition,
    automorphism_count,
    automorphism_orbits,
    find_isomorphism,
    is_asymmetric,
)

__all__ = [
    "CanonicalForm",
    "OrbitPartition",
    "automorphism_count",
    "automorphism_orbits",
    "canonical_form",
    "canonical_key",
    "enumerate_iso_class",
    "find_isomorphism",
    "is_asymmetric",
    "structural_order",
]
