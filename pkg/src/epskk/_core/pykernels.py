"""Pure-Python adaptive Gauss-Kronrod engine.

This is the fallback implementation of the hot quadrature kernel; the
compiled extension in ``_cykernels`` implements the same algorithm with
C-level bookkeeping.  Both operate on vectorized integrands: the callable
receives a 1-D ndarray of abscissae and must return an equally shaped
array of (real or complex) values.  Segments are kept sorted by left
endpoint and refined breadth-first, so results are deterministic.
"""

import numpy as np

from .gk import WG15, WK, XK


def _eval_segments(f, lefts, rights):
    """Kronrod/Gauss estimates on a batch of segments.

    Returns (kronrod_values, error_estimates, n_evals).
    """
    half = 0.5 * (rights - lefts)
    mid = 0.5 * (rights + lefts)
    nodes = mid[:, None] + half[:, None] * XK[None, :]
    vals = np.asarray(f(nodes.ravel()))
    vals = vals.reshape(nodes.shape)
    kron = half * (vals @ WK)
    gauss = half * (vals @ WG15)
    return kron, np.abs(kron - gauss), nodes.size


def adaptive_quad(f, edges, abs_tol, rel_tol, max_rounds, min_width):
    """Adaptively integrate ``f`` over the union of segments given by ``edges``.

    Parameters
    ----------
    f : callable ndarray -> ndarray
    edges : ascending 1-D array of segment boundaries (at least 2 entries)
    abs_tol, rel_tol : stopping tolerances on the summed error estimate
    max_rounds : refinement-round budget
    min_width : segments narrower than this are never split further

    Returns
    -------
    (value, error_estimate, n_evals, converged)
    """
    edges = np.asarray(edges, dtype=float)
    lefts = edges[:-1].copy()
    rights = edges[1:].copy()
    vals, errs, n_evals = _eval_segments(f, lefts, rights)

    converged = False
    for _ in range(max_rounds):
        total = vals.sum()
        tol = max(abs_tol, rel_tol * abs(total))
        err_total = errs.sum()
        if err_total <= tol:
            converged = True
            break
        thresh = 0.5 * tol / max(1, len(lefts))
        split = (errs > thresh) & ((rights - lefts) > min_width)
        if not split.any():
            break
        mids = 0.5 * (lefts[split] + rights[split])
        child_lefts = np.column_stack([lefts[split], mids]).ravel()
        child_rights = np.column_stack([mids, rights[split]]).ravel()
        child_vals, child_errs, ne = _eval_segments(f, child_lefts, child_rights)
        n_evals += ne

        keep = ~split
        lefts = np.concatenate([lefts[keep], child_lefts])
        rights = np.concatenate([rights[keep], child_rights])
        vals = np.concatenate([vals[keep], child_vals])
        errs = np.concatenate([errs[keep], child_errs])
        order = np.argsort(lefts, kind="stable")
        lefts, rights, vals, errs = lefts[order], rights[order], vals[order], errs[order]
    else:
        converged = errs.sum() <= max(abs_tol, rel_tol * abs(vals.sum()))

    value = vals.sum()
    return value, float(errs.sum()), n_evals, converged


def fixed_panel_quad(f, a, b, n_panels):
    """Non-adaptive Kronrod estimate over ``n_panels`` uniform panels.

    Exposed for the engine order check and for benchmarking; returns
    (value, error_estimate).
    """
    edges = np.linspace(a, b, n_panels + 1)
    vals, errs, _ = _eval_segments(f, edges[:-1], edges[1:])
    return vals.sum(), float(errs.sum())
