"""Composite Gauss-Legendre quadrature on an interval."""

import logging
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from teichranders.config import CONFIG

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def composite_rule(panels: int, nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the composite rule on [0, 1]."""
    x, w = leggauss(nodes)
    edges = np.linspace(0.0, 1.0, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    points = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    points.setflags(write=False)
    weights.setflags(write=False)
    return points, weights


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    panels: Optional[int] = None,
    nodes: Optional[int] = None,
) -> float:
    """Integrate a vectorized real integrand over [a, b]."""
    panels = panels or CONFIG.tolerances.quad_panels
    nodes = nodes or CONFIG.tolerances.quad_nodes
    x, w = composite_rule(panels, nodes)
    values = np.asarray(f(a + (b - a) * x), dtype=float)
    return float((b - a) * np.dot(w, values))
