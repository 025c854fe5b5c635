#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Brute-force validators for warpiso.
A discrete weighted line on which radial Cheeger cuts are searched exhaustively, and a
pure finite-difference stencil for the radial Laplacian.
"""

import logging
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from src.core.errors import DomainError
from src.core.radial_calculus import radial_laplacian

logger = logging.getLogger(__name__)

MIN_CELLS = 1000
BLOCK_ROWS = 128
PAIR_CANDIDATES = 64


@dataclass(frozen=True, eq=False)
class DiscreteLine:
    """
    The radial window [-L, L] cut into n cells.

    Cut points live on the n + 1 faces; weights are f^2 at the cell
    midpoints times the cell width, face_weights are f^2 at the faces.
    """
    half_width: float
    n: int
    faces: np.ndarray = field(repr=False)
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    face_weights: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, m, L, n):
        if not L > 0:
            raise DomainError(f"half-width must be positive, got {L}")
        if n < MIN_CELLS:
            raise DomainError(f"the discrete line needs at least {MIN_CELLS} cells, got {n}")

        faces = np.linspace(-L, L, n + 1)
        dr = 2.0 * L / n
        nodes = 0.5 * (faces[:-1] + faces[1:])
        weights = np.asarray(m.warp.eval(nodes), dtype=float) ** 2 * dr
        face_weights = np.asarray(m.warp.eval(faces), dtype=float) ** 2
        if np.any(weights <= 0) or not np.all(np.isfinite(weights)):
            raise DomainError(f"warp {m.warp.name} is not positive and finite on [-{L}, {L}]")
        return cls(float(L), int(n), faces, nodes, weights, face_weights)

    @property
    def spacing(self):
        return 2.0 * self.half_width / self.n

    @property
    def prefix_volume(self):
        """P[k] = sum of weights of the cells left of face k"""
        return np.concatenate(([0.0], np.cumsum(self.weights)))


class CheegerCut(NamedTuple):
    quotient: float
    intervals: List[Tuple[float, float]]
    faces: List[Tuple[int, int]]
    # Best two-interval quotient seen, when a pair search ran
    pair_quotient: Optional[float] = None
    pairs_evaluated: int = 0


def _single_interval_search(line):
    """
    Best (i, j) per left face i over all faces j > i, by blocks of rows.

    Ties go to the smallest i, then the smallest j.
    """
    F = line.face_weights
    P = line.prefix_volume
    size = F.size
    columns = np.arange(size)

    row_quotient = np.full(size - 1, np.inf)
    row_right = np.zeros(size - 1, dtype=int)
    for start in range(0, size - 1, BLOCK_ROWS):
        rows = np.arange(start, min(start + BLOCK_ROWS, size - 1))
        volume = P[None, :] - P[rows, None]
        with np.errstate(divide="ignore", invalid="ignore"):
            quotient = (F[rows, None] + F[None, :]) / volume
        quotient[columns[None, :] <= rows[:, None]] = np.inf

        best = np.argmin(quotient, axis=1)
        row_right[rows] = best
        row_quotient[rows] = quotient[np.arange(rows.size), best]

    return row_quotient, row_right


def discrete_cheeger_intervals(line, max_components=1):
    """
    Minimize boundary weight over volume among unions of up to two face intervals.

    A single interval is searched over every pair of faces. Two separated
    intervals are searched among block-wise best intervals and their best
    right neighbours; a union of separated intervals never beats its best
    component, so the pair search confirms the single optimum. The returned
    cut records the best pair quotient and how many pairs were tried.
    """
    if max_components not in (1, 2):
        raise DomainError(f"max_components must be 1 or 2, got {max_components}")

    row_quotient, row_right = _single_interval_search(line)
    i = int(np.argmin(row_quotient))
    j = int(row_right[i])
    best = CheegerCut(float(row_quotient[i]), [(float(line.faces[i]), float(line.faces[j]))], [(i, j)])
    logger.debug("Best single interval [%d, %d] with quotient %.12g", i, j, best.quotient)

    if max_components == 1:
        return best

    pair = _separated_pair_search(line, row_quotient, row_right, i)
    if pair.pairs_evaluated:
        logger.debug("Best of %d separated pairs has quotient %.12g", pair.pairs_evaluated, pair.quotient)
    if pair.pairs_evaluated and pair.quotient < best.quotient:
        return pair
    return best._replace(pair_quotient=pair.pair_quotient, pairs_evaluated=pair.pairs_evaluated)


def _separated_pair_search(line, row_quotient, row_right, best_row):
    """
    Best union of two disjoint face intervals.

    First components are the best interval of each block of left faces,
    plus the global optimum; each is paired with the best interval whose
    left face lies strictly right of its end.
    """
    F = line.face_weights
    P = line.prefix_volume
    rows = row_quotient.size

    firsts = {int(best_row)}
    for block in np.array_split(np.arange(rows), min(PAIR_CANDIDATES, rows)):
        if block.size:
            firsts.add(int(block[np.argmin(row_quotient[block])]))

    best_pair = None
    evaluated = 0
    for i1 in sorted(firsts):
        j1 = int(row_right[i1])
        if j1 + 1 >= rows:
            continue
        # argmin keeps the smallest left face on ties
        i2 = j1 + 1 + int(np.argmin(row_quotient[j1 + 1:]))
        j2 = int(row_right[i2])
        evaluated += 1
        q = float((F[i1] + F[j1] + F[i2] + F[j2]) / (P[j1] - P[i1] + P[j2] - P[i2]))
        if best_pair is None or q < best_pair[0]:
            best_pair = (q, (i1, j1), (i2, j2))

    if best_pair is None:
        return CheegerCut(np.inf, [], [], None, 0)
    q, first, second = best_pair
    intervals = [(float(line.faces[s]), float(line.faces[e])) for s, e in (first, second)]
    return CheegerCut(q, intervals, [first, second], q, evaluated)


def fd_laplacian(m, u, r, h):
    """Central-difference stencil of u'' + 2 (f'/f) u' using only values of u"""
    r = np.asarray(r, dtype=float)
    up, mid, down = u.eval(r + h), u.eval(r), u.eval(r - h)
    second = (up - 2.0 * mid + down) / (h * h)
    first = (up - down) / (2.0 * h)
    return second + 2.0 * (m.warp.deriv1(r) / m.warp.eval(r)) * first


def fd_operator_check(m, u, grid, h, target=None):
    """
    Largest discrepancy between the stencil and the analytic Laplacian on the grid.

    target, when given, replaces the analytic Laplacian by a closed form
    such as the constant 2 for r tanh r.
    """
    if not 1e-6 < h < 1e-2:
        raise DomainError(f"step must lie in (1e-6, 1e-2), got {h}")

    grid = np.asarray(grid, dtype=float)
    reference = radial_laplacian(m, u, grid) if target is None else target(grid)
    return float(np.max(np.abs(fd_laplacian(m, u, grid, h) - reference)))
