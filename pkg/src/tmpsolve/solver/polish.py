"""Nonlinear least squares refinement of a float measure against its data."""

import numpy as np
from scipy.optimize import least_squares

from ..core import AtomicMeasure, monomial_basis


def polish(beta, mu, max_nfev=200):
    """Refine float atoms and densities so their moments fit ``beta``.

    Residuals are weighted by the natural size of each moment so that every
    degree counts alike.  Densities are kept nonnegative.  Returns a new
    measure; the caller decides whether it is good enough.
    """
    atoms = mu.float_atoms()
    if not atoms:
        return mu
    keys = monomial_basis(beta.order)
    target = np.array([float(beta[k]) for k in keys])
    I = np.array([k[0] for k in keys])
    J = np.array([k[1] for k in keys])
    x0 = np.array([c for a in atoms for c in a], dtype=float)
    xs0, ys0, ws0 = x0[0::3], x0[1::3], x0[2::3]
    radius = 1 + xs0 ** 2 + ys0 ** 2
    scale = np.maximum((np.abs(ws0)[None, :] * radius[None, :] ** ((I + J)[:, None] / 2)).sum(axis=1),
                       np.abs(target))
    scale = np.maximum(scale, 1e-300)

    def powers(base, e):
        return np.where(e[:, None] == 0, 1.0, base[None, :] ** np.maximum(e[:, None], 0))

    def resid(p):
        xs, ys, ws = p[0::3], p[1::3], p[2::3]
        return ((powers(xs, I) * powers(ys, J)) @ ws - target) / scale

    def jac(p):
        xs, ys, ws = p[0::3], p[1::3], p[2::3]
        px, py = powers(xs, I), powers(ys, J)
        dpx = I[:, None] * powers(xs, I - 1)
        dpy = J[:, None] * powers(ys, J - 1)
        out = np.empty((len(keys), len(p)))
        out[:, 0::3] = dpx * py * ws
        out[:, 1::3] = px * dpy * ws
        out[:, 2::3] = px * py
        return out / scale[:, None]

    lower = np.full(len(x0), -np.inf)
    lower[2::3] = 0.0
    res = least_squares(resid, x0, jac=jac, bounds=(lower, np.inf), method="trf",
                        xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=max_nfev)
    p = res.x
    return AtomicMeasure([(float(p[3 * k]), float(p[3 * k + 1]), float(p[3 * k + 2]))
                          for k in range(len(atoms)) if p[3 * k + 2] > 0])
