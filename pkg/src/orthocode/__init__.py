"""Self-dual linear codes over prime fields from orthogonal matrices."""

from .code import LinearCode, WeightEnumerator, classify, is_self_dual
from .construct import NegOrthogonalWitness, from_witness
from .field import PrimeField
from .kernels import BACKEND
from .matrix import FqMatrix

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FqMatrix",
    "LinearCode",
    "NegOrthogonalWitness",
    "PrimeField",
    "WeightEnumerator",
    "classify",
    "from_witness",
    "is_self_dual",
    "__version__",
]
