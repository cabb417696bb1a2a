"""Slide trees, column-restricted parking functions and the words between them."""

from .bijection import big_pi, big_sigma, last, tree_of_word, word_of
from .caterpillar import caterpillar_member, tree_of_caterpillar_word
from .compositions import asym_multinomial, is_reverse_catalan, maxzero, multinomial
from .ones_case import phi, rho
from .parking import ParkingFunction, enumerate_cpf, is_cpf
from .slide_rules import OMEGA, PSI, SlideRule, enumerate_slide_set, is_member, slide_labeling
from .trees import canonicalize, parse_tree, serialize_tree

__all__ = [
    "OMEGA", "PSI", "ParkingFunction", "SlideRule", "asym_multinomial", "big_pi", "big_sigma",
    "canonicalize", "caterpillar_member", "enumerate_cpf", "enumerate_slide_set", "is_cpf",
    "is_member", "is_reverse_catalan", "last", "maxzero", "multinomial", "parse_tree", "phi",
    "rho", "serialize_tree", "slide_labeling", "tree_of_caterpillar_word", "tree_of_word",
    "word_of",
]
