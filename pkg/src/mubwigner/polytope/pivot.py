"""Vertex enumeration by walking the edge graph.

Starting from an LP vertex, each visited vertex contributes its edge
directions (the extreme rays of its tangent cone, i.e. of the cone cut out
by the constraints tight there). An exact ratio test along each edge gives
the neighbouring vertex. A breadth-first search over this graph reaches
every vertex of a bounded polytope because the edge graph is connected.

The work is output-sensitive: each vertex only sees its own tight
constraints, so the global intermediate blow-up of incremental methods
never occurs.
"""
from __future__ import annotations

from collections import deque
from fractions import Fraction
from functools import reduce

import numpy as np

from ..errors import ResourceLimitError, UnboundedPolytopeError
from .dd import cone_extreme_rays
from .rational import lcm


def _int_point(z):
    den = reduce(lcm, (v.denominator for v in z), 1)
    return [int(v * den) for v in z], den


def _slacks(A: np.ndarray, b: np.ndarray, z) -> tuple:
    """``den * (A z - b)`` as exact integers, with the common denominator."""
    Z, den = _int_point(z)
    Ao = A.astype(object)
    return Ao.dot(np.array(Z, dtype=object)) - b.astype(object) * den, den


def edge_walk(A, b, start, max_vertices=None, progress=None) -> list:
    """All vertices of ``{z : A z >= b}`` reachable from the vertex ``start``.

    ``A`` and ``b`` are integer arrays; ``A`` must have full column rank and
    the polytope must be bounded.
    """
    A = np.asarray(A)
    b = np.asarray(b)
    start = tuple(Fraction(v) for v in start)
    seen = {start}
    queue = deque([start])
    order = []
    while queue:
        z = queue.popleft()
        order.append(z)
        if progress is not None:
            progress({"visited": len(order), "known": len(seen)})
        s, den = _slacks(A, b, z)
        tight = np.nonzero(s == 0)[0]
        if tight.size == 0 or (s < 0).any():
            raise ArithmeticError("edge walk left the polytope")
        rays, _ = cone_extreme_rays(A[tight])
        for e in rays:
            ae = A.astype(object).dot(np.array(e, dtype=object))
            block = np.nonzero(ae < 0)[0]
            if not block.size:
                raise UnboundedPolytopeError("edge direction with no blocking constraint")
            step = min(Fraction(int(s[i]), -int(ae[i]) * den) for i in block)
            nxt = tuple(zi + step * ei for zi, ei in zip(z, e))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
                if max_vertices is not None and len(seen) > max_vertices:
                    raise ResourceLimitError(
                        "edge walk stopped: vertex cap exceeded",
                        progress={"visited": len(order), "known": len(seen)},
                    )
    return sorted(order)
