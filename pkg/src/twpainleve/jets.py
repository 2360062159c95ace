"""Truncated Taylor series ("jets") in a local variable s = t - t0.

Just enough arithmetic to push exact derivatives through the ODE right-hand
sides: +, -, *, /, integer powers, exp, integration and differentiation.
"""

from __future__ import annotations

import math

import numpy as np


class Jet:
    __slots__ = ("c",)

    def __init__(self, c):
        self.c = np.asarray(c, dtype=float)

    @classmethod
    def const(cls, v, K):
        c = np.zeros(K + 1)
        c[0] = v
        return cls(c)

    @classmethod
    def var(cls, t0, K):
        c = np.zeros(K + 1)
        c[0] = t0
        if K >= 1:
            c[1] = 1.0
        return cls(c)

    @property
    def K(self):
        return len(self.c) - 1

    def _lift(self, o):
        return o if isinstance(o, Jet) else Jet.const(o, self.K)

    def __add__(self, o):
        return Jet(self.c + self._lift(o).c)

    __radd__ = __add__

    def __sub__(self, o):
        return Jet(self.c - self._lift(o).c)

    def __rsub__(self, o):
        return Jet(self._lift(o).c - self.c)

    def __neg__(self):
        return Jet(-self.c)

    def __mul__(self, o):
        if not isinstance(o, Jet):
            return Jet(self.c * o)
        return Jet(np.convolve(self.c, o.c)[: self.K + 1])

    __rmul__ = __mul__

    def recip(self):
        a = self.c
        b = np.zeros_like(a)
        b[0] = 1.0 / a[0]
        for n in range(1, len(a)):
            b[n] = -(a[1: n + 1] @ b[n - 1:: -1]) / a[0]
        return Jet(b)

    def __truediv__(self, o):
        if not isinstance(o, Jet):
            return Jet(self.c / o)
        return self * o.recip()

    def __rtruediv__(self, o):
        return self.recip() * o

    def __pow__(self, n):
        out = Jet.const(1.0, self.K)
        for _ in range(int(n)):
            out = out * self
        return out

    def exp(self):
        a = self.c
        b = np.zeros_like(a)
        b[0] = math.exp(a[0])
        # b' = a' b
        for n in range(1, len(a)):
            k = np.arange(1, n + 1)
            b[n] = (k * a[1: n + 1]) @ b[n - 1:: -1] / n
        return Jet(b)

    def deriv(self):
        k = np.arange(1, len(self.c))
        return Jet(np.append(k * self.c[1:], 0.0))

    def integ(self, c0=0.0):
        k = np.arange(1, len(self.c))
        return Jet(np.concatenate([[c0], self.c[:-1] / k]))

    def derivs(self):
        """Derivatives of order 0..K at s = 0."""
        return self.c * np.array([math.factorial(k) for k in range(self.K + 1)])

    def __float__(self):
        return float(self.c[0])


def solve_second_order(f, y0, yp0, K):
    """Jet of y with y'' = f(y, y') built order by order.

    f receives jets of y and y' that are correct through the current order and
    returns a jet for y''; its coefficient n fixes y_{n+2}.
    """
    c = np.zeros(K + 1)
    c[0] = y0
    if K >= 1:
        c[1] = yp0
    for n in range(K - 1):
        y = Jet(c.copy())
        ypp = f(y, y.deriv())
        c[n + 2] = ypp.c[n] / ((n + 2) * (n + 1))
    return Jet(c)
