"""Reference computations that do not go through the package.

Closed forms are typed in by hand, limits are taken in 50-digit arithmetic
at a tiny scale, distances come from brute-force grids.
"""

import mpmath as mp
import numpy as np

mp.mp.dps = 50


def ratex(l1, l2):
    return (1 + l1 + l2 - 3 * l1 * l2) / (3 - l1 - l2 - l1 * l2)


def psi(l1, l2):
    return (2 * l1 * l2 - l1 - l2) / (2 - l1 - l2)


def psi_on_ray(t, s):
    # psi(1 - t, 1 - s t) simplified by hand
    return -1 + 2 * s * t / (1 + s)


def d1_ratex(l1, l2):
    # quotient rule by hand
    num = 1 + l1 + l2 - 3 * l1 * l2
    den = 3 - l1 - l2 - l1 * l2
    return ((1 - 3 * l2) * den - num * (-1 - l2)) / den**2


def d1_psi(l1, l2):
    num = 2 * l1 * l2 - l1 - l2
    den = 2 - l1 - l2
    return ((2 * l2 - 1) * den + num) / den**2


def grid_dist_disk(l1, l2, n=20000):
    """Max-norm distance to the complement of the bidisk, brute force over circle points."""
    th = np.linspace(0, 2 * np.pi, n, endpoint=False)
    circle = np.exp(1j * th)
    # reaching {|w1| >= 1} costs min |l1 - w1| with w2 = l2 free; likewise for w2
    return min(np.min(np.abs(l1 - circle)), np.min(np.abs(l2 - circle)))


def grid_dist_halfplane(z1, z2, n=20001, width=50.0):
    xs = np.linspace(-width, width, n)
    return min(np.min(np.abs(z1 - xs)), np.min(np.abs(z2 - xs)))


def mp_limit(fn, t=mp.mpf("1e-30")):
    """``fn(t)`` at a tiny scale in 50-digit arithmetic."""
    return complex(fn(mp.mpf(t)))


def facial_solution_mp(xi, terms, fval):
    """``xi + 1/(r - f)`` in mpmath; ``terms`` are ``(coord, edge, slope)``; ``fval(z1, z2)``."""
    def h(z1, z2):
        r = sum(1 / (s * ((z1 if c == 1 else z2) - e)) for c, e, s in terms)
        return xi + 1 / (r - fval(z1, z2))
    return h


def node_slope_mp(xi, terms, fval, face, edge, interior, t=mp.mpf("1e-25")):
    """Im h(node + i t e_face)/t and h(node + i t e_face) for the facial solution, in 50 digits."""
    h = facial_solution_mp(xi, terms, fval)
    e, w = mp.mpc(edge), mp.mpc(interior)
    z = (e + 1j * t, w) if face == 1 else (w, e + 1j * t)
    v = h(*z)
    return float(mp.im(v) / t), complex(v)


def centred_partials(f, l1, l2, h=1e-5):
    """Centred finite differences of a two-variable holomorphic ``f``."""
    d1 = (f(l1 + h, l2) - f(l1 - h, l2)) / (2 * h)
    d2 = (f(l1, l2 + h) - f(l1, l2 - h)) / (2 * h)
    return d1, d2
