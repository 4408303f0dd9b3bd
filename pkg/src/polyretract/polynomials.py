"""Polynomials whose projections approximate exponential maps.

Coefficients are kept as exact ``Fraction`` values and converted to floats
only when a polynomial is evaluated at a matrix.

* ``bessel_coeffs(n)`` -- coefficients of the scaled Bessel polynomial
  ``Theta_n(z) = sum_k C(n,k) (2n-k)!/(2n)! (2z)^k``.
* ``alpha_beta_coeffs(n)`` -- its even/odd split, used on the Grassmannian:
  ``Theta_n(z) = alpha_n(-z^2) + z beta_n(-z^2)``.
* ``gamma_delta(n)`` -- the two-variable, non-commutative polynomials used on
  the Stiefel manifold for ``n`` in 1..3.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np

from .errors import DimensionError, DomainError, UnsupportedOrderError
from .matcore import as_matrix

MAX_ORDER = 12


@dataclass(frozen=True)
class BesselCoeffs:
    n: int
    a: tuple

    def __call__(self, z):
        return sum(c * z**k for k, c in enumerate(self.a))


def _check_order(n):
    if not isinstance(n, (int, np.integer)) or not 0 <= n <= MAX_ORDER:
        raise DomainError(f"order n must be an integer in [0, {MAX_ORDER}], got {n!r}")
    return int(n)


def bessel_coeffs(n):
    n = _check_order(n)
    a = tuple(
        Fraction(comb(n, k) * factorial(2 * n - k) * 2**k, factorial(2 * n))
        for k in range(n + 1)
    )
    return BesselCoeffs(n, a)


def horner(coeffs, X):
    """Evaluate ``sum_k coeffs[k] X^k`` for a square matrix ``X``."""
    X = as_matrix(X, "X")
    if X.shape[0] != X.shape[1]:
        raise DimensionError(f"X must be square, got shape {X.shape}")
    eye = np.eye(X.shape[0], dtype=np.complex128)
    if len(coeffs) == 0:
        return np.zeros_like(eye)
    R = float(coeffs[-1]) * eye
    for c in reversed(coeffs[:-1]):
        R = R @ X + float(c) * eye
    return R


def theta_apply(n, X):
    """``Theta_n(X)`` by Horner's rule."""
    return horner(bessel_coeffs(n).a, X)


def alpha_beta_coeffs(n):
    """Coefficients of ``alpha_n(z) = sum_j a_{2j} (-z)^j`` and
    ``beta_n(z) = sum_j a_{2j+1} (-z)^j`` with the signs folded in.

    ``beta`` is empty for ``n = 0``.
    """
    a = bessel_coeffs(n).a
    alpha = tuple((-1) ** j * a[2 * j] for j in range(n // 2 + 1))
    beta = tuple((-1) ** j * a[2 * j + 1] for j in range((n - 1) // 2 + 1)) if n else ()
    return alpha, beta


@dataclass(frozen=True)
class NoncommutativePoly:
    """Polynomial in non-commuting ``x`` and ``y``.

    ``terms`` maps a word over ``"xy"`` to its rational coefficient; the empty
    word is the constant term. Word order is preserved on evaluation, so the
    word ``"xy"`` becomes ``X @ Y``.
    """

    terms: tuple  # ((word, Fraction), ...)

    @classmethod
    def from_dict(cls, d):
        for word in d:
            if set(word) - {"x", "y"}:
                raise DomainError(f"word {word!r} uses letters outside 'xy'")
        return cls(tuple(sorted((w, Fraction(c)) for w, c in d.items() if c != 0)))

    def as_dict(self):
        return dict(self.terms)

    def __call__(self, X, Y):
        return eval_noncommutative(self, X, Y)

    def commutative(self, x_poly, y_poly):
        """Substitute univariate rational polynomials (coefficient lists) for
        ``x`` and ``y``; the result is an exact coefficient list."""
        total = [Fraction(0)]
        for word, c in self.terms:
            term = [c]
            for letter in word:
                term = poly_mul(term, x_poly if letter == "x" else y_poly)
            total = poly_add(total, term)
        return poly_trim(total)


def poly_add(p, q):
    n = max(len(p), len(q))
    return [
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    ]


def poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def poly_trim(p):
    p = [Fraction(c) for c in p]
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def poly_compose(p, q):
    """Coefficient list of ``p(q(z))``."""
    out = [Fraction(0)]
    for c in reversed(p):
        out = poly_add(poly_mul(out, q), [c])
    return poly_trim(out)


_F = Fraction
_GAMMA_DELTA = {
    1: ({"": 1}, {"": 1}),
    2: (
        {"": 1, "x": _F(-1, 3), "yy": _F(-1, 2)},
        {"": 1, "y": _F(1, 2)},
    ),
    3: (
        {"": 1, "x": _F(-2, 5), "yy": _F(-1, 2), "yyy": _F(-1, 6), "xy": _F(-1, 6)},
        {"": 1, "x": _F(-1, 15), "y": _F(1, 2)},
    ),
}


def gamma_delta(n):
    """The Stiefel polynomials ``(gamma_n, delta_n)`` for ``n`` in 1, 2, 3.

    The mixed cubic term of ``gamma_3`` is the word ``"xy"``, realized as
    ``(t^2 H^* H)(t Y^* H)``.
    """
    if n not in _GAMMA_DELTA:
        raise UnsupportedOrderError(f"Stiefel polynomials exist only for n in 1..3, got {n!r}")
    g, d = _GAMMA_DELTA[n]
    return NoncommutativePoly.from_dict(g), NoncommutativePoly.from_dict(d)


def eval_noncommutative(poly, X, Y):
    """Evaluate ``poly`` at square matrices ``X`` (for ``x``) and ``Y`` (for ``y``)."""
    X = as_matrix(X, "X")
    Y = as_matrix(Y, "Y")
    if X.shape != Y.shape or X.shape[0] != X.shape[1]:
        raise DimensionError(
            f"X and Y must be square of equal size, got {X.shape} and {Y.shape}"
        )
    eye = np.eye(X.shape[0], dtype=np.complex128)
    letters = {"x": X, "y": Y}
    cache = {"": eye}

    def word_value(word):
        # Build from the cached prefix so shared prefixes are multiplied once.
        if word not in cache:
            cache[word] = word_value(word[:-1]) @ letters[word[-1]]
        return cache[word]

    out = np.zeros_like(eye)
    for word, c in poly.terms:
        out = out + float(c) * word_value(word)
    return out
