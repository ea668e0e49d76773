"""Exact computation in free groups, their automorphism groups, holomorphs and
the iterated extensions H(n), with verification suites for the algebraic
facts they satisfy."""

from .words import Alphabet, Word, reduce, multiply, invert, substitute, extract_conjugator
from .morphisms import Endomorphism, Automorphism, IntMatrix, compose, equal, inner, abelianize, verify_automorphism
from .extensions import HolElement, TowerElement, hol_multiply, image_multiply, embed_E, tower_multiply, tower_action, project, section

__version__ = "0.1.0"
