"""Finite Moufang loops, Zorn vector matrices and loop algebras over small finite fields."""

from .errors import *  # noqa: F401,F403
from .gfpn import FieldElement, FiniteField, make_field, parse_field_spec
from .loopcore import FiniteLoop, SubloopRef, from_table
from .zorn import ZornMatrix

__all__ = ["FieldElement", "FiniteField", "FiniteLoop", "SubloopRef", "ZornMatrix",
           "from_table", "make_field", "parse_field_spec"]
__version__ = "0.1.0"
