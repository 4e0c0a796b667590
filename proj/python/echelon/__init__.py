from ._echelon import Coefficient, Key, Series, Term, set_eps

__all__ = ["Coefficient", "Key", "Series", "Term", "set_eps"]
