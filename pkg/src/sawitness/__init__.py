"""Witness certificates for the failure of strong approximation on elliptic
curves over Q punctured at rational torsion points."""

__version__ = "0.1.0"

from .certificate import parse, serialize, verify
from .errors import (
    BadPrime,
    CheckFailed,
    InvalidProgression,
    MalformedCertificate,
    NoAdmissiblePrime,
    NotTorsion,
    SingularCurve,
    TorsionGenerator,
    WitnessError,
)
from .rational_ec import INFINITY, Curve, PunctureSet, RationalPoint
from .witness import WitnessCertificate, WitnessConfig, build_witness

__all__ = [
    "BadPrime",
    "CheckFailed",
    "Curve",
    "INFINITY",
    "InvalidProgression",
    "MalformedCertificate",
    "NoAdmissiblePrime",
    "NotTorsion",
    "PunctureSet",
    "RationalPoint",
    "SingularCurve",
    "TorsionGenerator",
    "WitnessCertificate",
    "WitnessConfig",
    "WitnessError",
    "build_witness",
    "parse",
    "serialize",
    "verify",
]
