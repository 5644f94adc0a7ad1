"""Spegion: a region calculus with sized regions, checked effects and a
small-step evaluator."""

from .checker import Checker, Judgement, LivenessEnv, StoreTypeError, TypeCheckError
from .effects import CompositionError, compose, normalize, render_effect, subsumes
from .evaluator import Done, OutOfFuel, Store, Stuck, evaluate, initial_store, step, trace
from .parser import ParseError, parse
from .printer import print_term, print_type

__all__ = [
    "Checker", "CompositionError", "Done", "Judgement", "LivenessEnv", "OutOfFuel",
    "ParseError", "Store", "StoreTypeError", "Stuck", "TypeCheckError", "compose",
    "evaluate", "initial_store", "normalize", "parse", "print_term", "print_type",
    "render_effect", "step", "subsumes", "trace",
]
