"""High-precision multiple zeta values, their algebra, and a catalog of identities."""

from .bigreal import BigReal, EvalConfig
from .core import (
    Composition,
    IndexEntry,
    MZVError,
    NotAdmissible,
    ParseError,
    Word,
    comp,
    decode_word,
    dual,
    encode_word,
    height_one,
)
from .eval import PrecisionUnreachable, zeta_m, zeta_m_checked

__version__ = "0.1.0"

__all__ = [
    "BigReal",
    "EvalConfig",
    "Composition",
    "IndexEntry",
    "MZVError",
    "NotAdmissible",
    "ParseError",
    "PrecisionUnreachable",
    "Word",
    "comp",
    "decode_word",
    "dual",
    "encode_word",
    "height_one",
    "zeta_m",
    "zeta_m_checked",
]
