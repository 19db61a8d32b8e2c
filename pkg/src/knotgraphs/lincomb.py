"""Tiny helpers for formal linear combinations over Q.

A combination is a plain dict mapping hashable basis keys to nonzero
`fractions.Fraction` coefficients.  Zero coefficients are never stored.
"""

from fractions import Fraction


def add_term(acc, key, coeff):
    """Add coeff * key into acc in place, dropping the key if it cancels."""
    c = acc.get(key, 0) + coeff
    if c:
        acc[key] = c
    else:
        acc.pop(key, None)


def add_scaled(acc, combo, scale=1):
    """Add scale * combo into acc in place."""
    if not scale:
        return acc
    for key, coeff in combo.items():
        add_term(acc, key, coeff * scale)
    return acc


def scaled(combo, scale):
    if not scale:
        return {}
    return {key: coeff * scale for key, coeff in combo.items()}


def apply_linear(fn, combo, *args, **kwargs):
    """Extend a basis-key map fn(key, ...) -> combination linearly to combos."""
    out = {}
    for key, coeff in combo.items():
        add_scaled(out, fn(key, *args, **kwargs), coeff)
    return out


def as_combo(x):
    """Wrap a bare basis key as a singleton combination; pass dicts through."""
    if isinstance(x, dict):
        return x
    return {x: Fraction(1)}
