"""Vectorised tables over an enumerated P(U).

Operators are integer arrays of shape ``(..., p)`` mapping a canonical
subset index to the index of its image; leading axes batch many operators
at once.  Everything here is a second implementation of formulas that also
exist element-wise in ``approx`` and ``product``; the tests cross-check them.
"""
from __future__ import annotations

import weakref

import numpy as np

from .errors import PowersetTooLarge
from .universe import Universe

MATRIX_CAP = 4096
_CACHE: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def kernel_for(universe: Universe) -> "PowersetKernel":
    k = _CACHE.get(universe)
    if k is None:
        k = PowersetKernel(universe)
        _CACHE[universe] = k
    return k


class PowersetKernel:
    def __init__(self, universe: Universe, cap: int = MATRIX_CAP):
        ps = universe.powerset()
        if ps.size > cap:
            raise PowersetTooLarge(f"|P(U)| = {ps.size} exceeds the table cap {cap}", size=ps.size)
        self.universe = universe
        self.lattice = lat = universe.lattice
        self.ps = ps
        self.p = ps.size
        self.n = universe.n
        self.V = ps.values
        self.u = np.array(universe.membership, dtype=np.int64)
        self.ar = np.arange(self.p)
        self.zero = 0
        self.full = self.p - 1
        self.pt = np.array([ps.index_values(self._point_vals(d)) for d in range(self.n)])
        self.cpt = np.array([ps.index_values(self._copoint_vals(d)) for d in range(self.n)])
        V, u = self.V, self.u
        # U(d) -> W(d) for every subset, reused by the inner product
        self.UI = lat.I[u[None, :], V]
        self.NEG = lat.T[u[None, :], lat.I[V, lat.bot]]
        self.IP = self._pairwise(lambda Vi: lat.join_reduce(lat.T[Vi[:, None, :], self.UI[None, :, :]]))
        self.OP = self._pairwise(
            lambda Vi: lat.meet_reduce(lat.T[u, lat.I[self.NEG[Vi][:, None, :], V[None, :, :]]]),
            by_index=True)
        self.JOIN = self._index_pairwise(lat.J)
        self.MEET = self._index_pairwise(lat.M)
        self.SUBLE = self._pairwise(lambda Vi: lat.LE[Vi[:, None, :], V[None, :, :]].all(axis=-1))

    def _point_vals(self, d):
        v = np.zeros(self.n, dtype=np.int64) + self.lattice.bot
        v[d] = self.u[d]
        return v

    def _copoint_vals(self, d):
        v = self.u.copy()
        v[d] = self.lattice.bot
        return v

    def _pairwise(self, rowfn, by_index=False, chunk=256):
        out = []
        for s in range(0, self.p, chunk):
            sl = self.ar[s:s + chunk] if by_index else self.V[s:s + chunk]
            out.append(rowfn(sl))
        return np.concatenate(out, axis=0)

    def _index_pairwise(self, table, chunk=256):
        out = []
        for s in range(0, self.p, chunk):
            vals = table[self.V[s:s + chunk, None, :], self.V[None, :, :]]
            out.append(self.ps.index_values(vals))
        return np.concatenate(out, axis=0)

    def index(self, vals) -> np.ndarray:
        idx = self.ps.index_values(vals)
        if (idx < 0).any():
            raise AssertionError("kernel produced a value row outside P(U)")
        return idx

    # operator tables

    def identity(self) -> np.ndarray:
        return self.ar.copy()

    def upper_table(self, R: np.ndarray) -> np.ndarray:
        """Table of the induced upper operator; ``R`` is ``(..., n, n)``."""
        lat = self.lattice
        # [..., q, d, o] = R(d, o) * (U(d) -> Q(d))
        terms = lat.T[R[..., None, :, :], self.UI[:, :, None]]
        return self.index(lat.join_reduce(terms, axis=-2))

    def lower_table(self, R: np.ndarray) -> np.ndarray:
        lat = self.lattice
        # [..., q, d, o] = U(o) * (R(d, o) -> Q(d))
        terms = lat.T[self.u, lat.I[R[..., None, :, :], self.V[:, :, None]]]
        return self.index(lat.meet_reduce(terms, axis=-2))

    def h1_largest(self) -> np.ndarray:
        lat = self.lattice
        G = lat.I[self.u[:, None], self.u[None, :]]  # [b, a] = U(b) -> U(a)
        return self.index(lat.join_reduce(lat.T[self.V[:, :, None], G[None]], axis=1))

    def l1_least(self) -> np.ndarray:
        lat = self.lattice
        m = lat.meet_reduce(self.V, axis=1)
        return self.index(lat.M[self.u[None, :], m[:, None]])

    @staticmethod
    def compose(F, G):
        """``(F o G)[q] = F[G[q]]``, batched."""
        F, G = np.broadcast_arrays(F, G)
        return np.take_along_axis(F, G, axis=-1)

    def upper_inverse(self, H: np.ndarray) -> np.ndarray:
        lat = self.lattice
        img = self.V[H[..., self.pt]]  # [..., d, x] = H(U_d)(x)
        K = self.index(lat.M[self.u[:, None], img])  # U(d) /\ H(U_d)
        vals = self.IP[K[..., None, :], self.ar[:, None]]  # [..., q, d]
        return self.index(vals)

    def lower_inverse(self, L: np.ndarray) -> np.ndarray:
        C = L[..., self.cpt]
        vals = self.OP[C[..., None, :], self.ar[:, None]]
        return self.index(vals)

    def upper_relation(self, H: np.ndarray) -> np.ndarray:
        """``R(a, b) = H(U_a)(b)``."""
        return self.V[H[..., self.pt]]

    def lower_relation(self, L: np.ndarray) -> np.ndarray:
        """``R(a, b) = not L(U_{X-a})(b)``."""
        lat = self.lattice
        return lat.T[self.u, lat.I[self.V[L[..., self.cpt]], lat.bot]]

    def h0_holds(self, H: np.ndarray) -> np.ndarray:
        img = self.V[H[..., self.pt]]
        return self.lattice.LE[img, self.u[:, None]].all(axis=(-1, -2))

    @property
    def scalar_upper(self):
        """``(pairs, SC)``: ``SC[k, q]`` indexes ``beta * (alpha -> Q_q)``."""
        if not hasattr(self, "_su"):
            lat = self.lattice
            pairs = [(b, a) for a in lat.carrier for b in lat.carrier if lat.le(b, a)]
            B = np.array([b for b, _ in pairs])
            A = np.array([a for _, a in pairs])
            vals = lat.T[B[:, None, None], lat.I[A[:, None, None], self.V[None]]]
            SC = self.index(vals)
            top = lat.join_reduce(self.V, axis=1)
            valid = lat.LE[top[None, :], A[:, None]]
            self._su = (pairs, SC, valid)
        return self._su

    @property
    def scalar_lower(self):
        """``SL[alpha, q]`` indexes ``U /\\ (alpha -> Q_q)``."""
        if not hasattr(self, "_sl"):
            lat = self.lattice
            A = np.arange(lat.size)
            vals = lat.M[self.u, lat.I[A[:, None, None], self.V[None]]]
            self._sl = self.index(vals)
        return self._sl
