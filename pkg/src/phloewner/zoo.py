"""Reference models: the 2x2 analytic example, a 5-state RLC circuit and an RLC ladder."""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .errors import DimensionError
from .state_space import StateSpaceRealization


def make_analytic(a=-1.0, b=1.0, d=2.0):
    """``Z(s) = d I - (s I - A)^{-1}`` with ``A = [[a, b], [-b, a]]``; poles ``a +- ib``."""
    if not a < 0:
        raise DimensionError(f"need a < 0 for stability, got {a}")
    if not d > 0:
        raise DimensionError(f"need d > 0, got {d}")
    A = np.array([[a, b], [-b, a]], dtype=float)
    return StateSpaceRealization(A, np.eye(2), -np.eye(2), d * np.eye(2))


def make_rlc5():
    """Five-state single-port RLC circuit with ``D = 2``."""
    A = np.array([
        [-20.0, -10.0, 0.0, 0.0, 0.0],
        [10.0, 0.0, -10.0, 0.0, 0.0],
        [0.0, 10.0, 0.0, -10.0, 0.0],
        [0.0, 0.0, 10.0, 0.0, -10.0],
        [0.0, 0.0, 0.0, 10.0, -2.0],
    ])
    B = np.array([[20.0], [0.0], [0.0], [0.0], [0.0]])
    C = np.array([[-2.0, 0.0, 0.0, 0.0, 0.0]])
    return StateSpaceRealization(A, B, C, [[2.0]])


def default_dissipation(i, k):
    """Resistance of section ``i`` (1-based) out of ``k``."""
    return 0.05 + 0.15 * i / k


@dataclass(frozen=True)
class LadderSpec:
    """RLC ladder with ``sections`` inductor/capacitor pairs (``n = 2 * sections``).

    ``dissipation`` maps ``(i, k)`` to the resistance of section ``i`` or
    lists the ``k`` values directly.
    """

    sections: int = 100
    dissipation: Optional[Union[Callable[[int, int], float], Sequence[float]]] = None
    feedthrough: float = 1.0

    def resistances(self):
        k = self.sections
        if self.dissipation is None:
            r = [default_dissipation(i, k) for i in range(1, k + 1)]
        elif callable(self.dissipation):
            r = [float(self.dissipation(i, k)) for i in range(1, k + 1)]
        else:
            r = [float(x) for x in self.dissipation]
        r = np.asarray(r, dtype=float)
        if k < 1 or r.size != k:
            raise DimensionError(f"need {k} >= 1 dissipation values, got {r.size}")
        if np.any(r <= 0) or self.feedthrough <= 0:
            raise DimensionError("dissipation values and feedthrough must be positive")
        return r


def ladder_ph(spec):
    """The ladder's pH blocks ``(J, R, G, P, N, S, Q)``."""
    from .ph import PortHamiltonianForm

    # sections are numbered from the open end; the port sits at section k
    r = spec.resistances()[::-1]
    n = 2 * spec.sections
    J = np.diag(np.ones(n - 1), -1) - np.diag(np.ones(n - 1), 1)
    R = np.diag(np.repeat(r, 2))
    G = np.zeros((n, 1))
    G[0, 0] = 1.0
    return PortHamiltonianForm(
        J=J, R=R, G=G, P=np.zeros((n, 1)), N=np.zeros((1, 1)),
        S=[[spec.feedthrough]], Q=np.eye(n),
    )


def make_ladder(spec=None):
    """Strictly passive RLC ladder built in normalized pH form.

    ``J`` is tridiagonal skew with unit couplings, ``R`` carries each
    section's resistance on both of its states, the port drives the first
    state (section ``k``) and ``S = d``; ``X = I`` is a strict certificate.
    """
    from .ph import reconstruct

    return reconstruct(ladder_ph(spec or LadderSpec()))


MODELS = {
    "analytic": make_analytic,
    "rlc5": make_rlc5,
    "ladder": make_ladder,
}
