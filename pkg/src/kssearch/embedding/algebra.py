"""Closed-form residuals behind the unembeddability of G_min10A.

With the hub at (0,0,1) and x at (1,0,0), the two remaining inner vertices
v and w are unit vectors in the xy-plane.  Walking around the outer cycle by
cross products forces ``a`` to be collinear with
``x × (x × (w × (w × (v × (v × a)))))``, and for ``a`` off the axes that
reduces to one scalar identity in v and w which no pair of distinct unit
vectors satisfies.
"""

from __future__ import annotations

import math

import numpy as np


def _plane_pair(v, w):
    v = tuple(float(c) for c in v)
    w = tuple(float(c) for c in w)
    if len(v) != 3 or len(w) != 3:
        raise ValueError("expected 3-vectors")
    for p in (v, w):
        if abs(p[2]) > 1e-12:
            raise ValueError("vectors must lie in the xy-plane")
        if abs(math.hypot(p[0], p[1]) - 1.0) > 1e-9:
            raise ValueError("vectors must be unit length")
    if abs(v[0] * w[1] - v[1] * w[0]) < 1e-12:
        raise ValueError("v and w are collinear")
    return v, w


def min10A_identity_residual(v, w) -> float:
    """``v1*w2*(v1*w1 + v2*w2) - 1``: the identity as usually quoted."""
    v, w = _plane_pair(v, w)
    return v[0] * w[1] * (v[0] * w[0] + v[1] * w[1]) - 1.0


def min10A_chain_residual(v, w) -> float:
    """``v1*w1*(v1*w1 + v2*w2) - 1``: the identity as the cross-product chain yields it.

    Expanding the chain gives ``(0, -a2*v1*w1*<v,w>, -a3)`` for unit v, w
    and ``a = (0, a2, a3)``, so collinearity with ``a`` needs this to vanish.
    """
    v, w = _plane_pair(v, w)
    return v[0] * w[0] * (v[0] * w[0] + v[1] * w[1]) - 1.0


def identity_grid(step=1e-3, chunk=512):
    """Smallest |identity residual| over an angle grid of the parameter square.

    Both angles run over ``[0, 2*pi)`` in steps of ``step``; exactly collinear
    pairs are skipped.  Returns ``(min_abs, points_checked)``.
    """
    th = np.arange(0.0, 2 * math.pi, step)
    c, s = np.cos(th), np.sin(th)
    best = math.inf
    count = 0
    for i in range(0, len(th), chunk):
        v1 = c[i:i + chunk, None]
        v2 = s[i:i + chunk, None]
        val = v1 * s[None, :] * (v1 * c[None, :] + v2 * s[None, :]) - 1.0
        ok = np.abs(v1 * s[None, :] - v2 * c[None, :]) >= 1e-12
        if ok.any():
            best = min(best, float(np.min(np.abs(val[ok]))))
        count += int(ok.sum())
    return best, count
