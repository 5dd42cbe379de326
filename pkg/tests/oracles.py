"""Independent reference routes used to check the library.

Everything here recomputes results from first principles (direct per-type
arithmetic, cyclic Jacobi eigensolver, closed-form normal equations,
exhaustive scans) without touching the code paths under test.
"""

import math

import numpy as np


def expand_costs(rows, num_classes, resolution, input_channels=3):
    """(params, flops) from raw (type, depth, width, stride, kernel, ratio) rows.

    Direct accumulation: conv weights + 2*out batch norm per conv, MACs at
    the output feature map, 1x1 residual projection for X/B/D blocks on any
    channel or stride mismatch, classifier on the last row's width.
    """

    def conv_p(cin, cout, k, groups=1):
        return (cin // groups) * cout * k * k + 2 * cout

    def conv_f(cin, cout, k, hout, groups=1):
        return (cin // groups) * cout * k * k * hout * hout

    params = flops = 0
    cin, r = input_channels, resolution
    for (t, d, c, s, k, ratio) in rows:
        for b in range(d):
            st = s if b == 0 else 1
            rout = r // st
            if t == "C":
                params += conv_p(cin, c, k)
                flops += conv_f(cin, c, k, rout)
            elif t == "X":
                params += conv_p(cin, c, k) + conv_p(c, c, k)
                flops += conv_f(cin, c, k, rout) + conv_f(c, c, k, rout)
            elif t == "B":
                inner = int(round(c * ratio))
                params += conv_p(cin, inner, 1) + conv_p(inner, inner, k) + conv_p(inner, c, 1)
                flops += conv_f(cin, inner, 1, r) + conv_f(inner, inner, k, rout) + conv_f(inner, c, 1, rout)
            elif t == "D":
                exp = int(round(c * ratio))
                params += conv_p(cin, exp, 1) + conv_p(exp, exp, k, groups=exp) + conv_p(exp, c, 1)
                flops += conv_f(cin, exp, 1, r) + conv_f(exp, exp, k, rout, groups=exp) + conv_f(exp, c, 1, rout)
            else:
                raise ValueError(t)
            if t != "C" and (cin != c or st == 2):
                params += conv_p(cin, c, 1)
                flops += conv_f(cin, c, 1, rout)
            cin, r = c, rout
    head = rows[-1][2]
    params += head * num_classes + num_classes
    flops += head * num_classes
    return params, flops


def jacobi_eigenvalues(A, sweeps=60):
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations."""
    A = np.array(A, dtype=np.float64, copy=True)
    n = A.shape[0]
    scale = max(1.0, float(np.abs(A).max()))
    for _ in range(sweeps):
        off_diag = A - np.diag(np.diag(A))
        off = math.sqrt(float((off_diag ** 2).sum()))
        if off <= 1e-14 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(A[p, q]) <= 1e-300:
                    continue
                tau = (A[q, q] - A[p, p]) / (2.0 * A[p, q])
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                G = np.eye(n)
                G[p, p] = G[q, q] = c
                G[p, q] = s
                G[q, p] = -s
                A = G.T @ A @ G
    return np.sort(np.diag(A))[::-1]


def singular_values_via_gram(m):
    """Square roots of the eigenvalues of m m^T (or m^T m, whichever is smaller)."""
    m = np.asarray(m, dtype=np.float64)
    gram = m @ m.T if m.shape[0] <= m.shape[1] else m.T @ m
    ev = jacobi_eigenvalues(gram)
    return np.sqrt(np.clip(ev, 0.0, None))


def lsq_two_param(deltas_d, deltas_c, deltas_a):
    """Closed-form normal-equations solve of g1*dd + g2*dc ~ da (full rank)."""
    dd = np.asarray(deltas_d, dtype=np.float64)
    dc = np.asarray(deltas_c, dtype=np.float64)
    da = np.asarray(deltas_a, dtype=np.float64)
    a = float(dd @ dd)
    b = float(dd @ dc)
    c = float(dc @ dc)
    p = float(dd @ da)
    q = float(dc @ da)
    det = a * c - b * b
    if det == 0.0:
        raise ZeroDivisionError("design matrix is rank deficient")
    return (c * p - b * q) / det, (a * q - b * p) / det


def brute_force_select(candidates, predictions, latencies, budget):
    """Exhaustive filter-and-argmax: returns (winner_index, feasible_count).

    winner_index is None when nothing fits the budget.  Ties break toward
    the lowest index via the sort key.
    """
    feasible = [(i, predictions[i]) for i in range(len(candidates)) if latencies[i] <= budget]
    if not feasible:
        return None, 0
    ranked = sorted(feasible, key=lambda t: (-t[1], t[0]))
    return ranked[0][0], len(feasible)


def gram_schmidt_orthogonal(rng, n):
    """Random orthogonal matrix built by Gram-Schmidt on a random matrix."""
    while True:
        M = rng.standard_normal((n, n))
        Q = np.zeros_like(M)
        ok = True
        for j in range(n):
            v = M[:, j].copy()
            for i in range(j):
                v -= (Q[:, i] @ M[:, j]) * Q[:, i]
            norm = np.linalg.norm(v)
            if norm < 1e-8:
                ok = False
                break
            Q[:, j] = v / norm
        if ok:
            return Q
