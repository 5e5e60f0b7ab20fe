"""numba kernels for Monte Carlo batches.

These re-implement the per-trial logic of :mod:`propb.twophase`,
:mod:`propb.greedy` and :mod:`propb.events` over CSR edge arrays.  Trial
``t`` of a batch draws from ``derive_seed(master, t)`` exactly like the
reference code, so kernel and reference agree trial by trial (see
``tests/test_kernels.py``).
"""

from __future__ import annotations

import math

import numba
import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S12 = np.uint64(12)
_S63 = np.uint64(63)
_INV53 = 1.0 / 9007199254740992.0

jit = numba.njit(cache=True, nogil=True)

# per-trial columns of the event kernel
EVENT_COLUMNS = (
    "mono_count",
    "light",
    "Y",
    "D2",
    "X",
    "Y_e",
    "flag_A",
    "flag_B",
    "flag_C",
    "flag_D",
    "viol_R",
    "viol_X",
)


@jit
def finalize(z):
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


@jit
def output(seed, j):
    return finalize(seed + _GOLDEN * np.uint64(j + 1))


@jit
def derive_seed(master, index):
    return output(master ^ _GOLDEN, index)


@jit
def fill_initial(seed, n, ic, w):
    for v in range(n):
        ic[v] = np.uint8(output(seed, v) >> _S63)
    for v in range(n):
        w[v] = float((output(seed, n + v) >> _S12) * np.uint64(2) + np.uint64(1)) * _INV53


@jit
def _heads(indptr, indices, rank, head):
    for e in range(indptr.shape[0] - 1):
        best = indices[indptr[e]]
        for p in range(indptr[e] + 1, indptr[e + 1]):
            if rank[indices[p]] > rank[best]:
                best = indices[p]
        head[e] = best


@jit
def _ranks(w, rank):
    order = np.argsort(w, kind="mergesort")  # stable: ties go by id
    for r in range(order.shape[0]):
        rank[order[r]] = r
    return order


@jit
def two_phase_core(indptr, indices, ic, w, rank, head, mono, flipped):
    """Fill ``flipped`` (recolored vertices) for one initial state."""
    m = indptr.shape[0] - 1
    _ranks(w, rank)
    _heads(indptr, indices, rank, head)
    for e in range(m):
        c0 = ic[indices[indptr[e]]]
        same = True
        for p in range(indptr[e] + 1, indptr[e + 1]):
            if ic[indices[p]] != c0:
                same = False
                break
        mono[e] = same
    flipped[:] = False
    head_rank = np.empty(m, dtype=np.int64)
    for e in range(m):
        head_rank[e] = rank[head[e]]
    for e in np.argsort(head_rank, kind="mergesort"):
        if not mono[e]:
            continue
        v = head[e]
        clean = True
        for p in range(indptr[e], indptr[e + 1]):
            u = indices[p]
            if u != v and flipped[u]:
                clean = False
                break
        if clean:
            flipped[v] = True


@jit
def _edge_color(indptr, indices, color, e):
    """0 or 1 if edge e is monochromatic in that color, else -1."""
    c0 = color[indices[indptr[e]]]
    for p in range(indptr[e] + 1, indptr[e + 1]):
        if color[indices[p]] != c0:
            return -1
    return c0


@jit
def two_phase_batch(indptr, indices, n, master, start, count, focal):
    """Per-trial columns: proper, focal all red, initially mono, recolored,
    unrepaired mono edges, red-shield breaches."""
    m = indptr.shape[0] - 1
    out = np.zeros((count, 6), dtype=np.int64)
    ic = np.empty(n, dtype=np.uint8)
    w = np.empty(n, dtype=np.float64)
    rank = np.empty(n, dtype=np.int64)
    head = np.empty(m, dtype=np.int64)
    mono = np.empty(m, dtype=np.bool_)
    flipped = np.empty(n, dtype=np.bool_)
    final = np.empty(n, dtype=np.uint8)
    for t in range(count):
        seed = derive_seed(master, start + t)
        fill_initial(seed, n, ic, w)
        two_phase_core(indptr, indices, ic, w, rank, head, mono, flipped)
        nflip = 0
        for v in range(n):
            final[v] = ic[v] ^ np.uint8(flipped[v])
            nflip += flipped[v]
        proper = 1
        nmono = 0
        unrepaired = 0
        shield = 0
        for e in range(m):
            if _edge_color(indptr, indices, final, e) >= 0:
                proper = 0
            if mono[e]:
                nmono += 1
                hit = False
                for p in range(indptr[e], indptr[e + 1]):
                    if flipped[indices[p]]:
                        hit = True
                        break
                if not hit:
                    unrepaired += 1
                if ic[indices[indptr[e]]] == 1 and _edge_color(indptr, indices, final, e) == 1:
                    shield += 1
        out[t, 0] = proper
        if focal >= 0 and _edge_color(indptr, indices, final, focal) == 1:
            out[t, 1] = 1
        out[t, 2] = nmono
        out[t, 3] = nflip
        out[t, 4] = unrepaired
        out[t, 5] = shield
    return out


@jit
def greedy_core(indptr, indices, w, rank, head, color):
    """Fill ``color`` (0 blue, 1 red) by the greedy rule; returns the order."""
    m = indptr.shape[0] - 1
    order = _ranks(w, rank)
    _heads(indptr, indices, rank, head)
    color[:] = 0
    head_rank = np.empty(m, dtype=np.int64)
    for e in range(m):
        head_rank[e] = rank[head[e]]
    for e in np.argsort(head_rank, kind="mergesort"):
        v = head[e]
        blue = True
        for p in range(indptr[e], indptr[e + 1]):
            u = indices[p]
            if u != v and color[u] != 0:
                blue = False
                break
        if blue:
            color[v] = 1
    return order


@jit
def greedy_batch(indptr, indices, n, master, start, count):
    """Per-trial columns: failed, failing edges, failing edges lacking a
    conflicting partner (heaviest of some edge = its lightest vertex)."""
    m = indptr.shape[0] - 1
    out = np.zeros((count, 3), dtype=np.int64)
    ic = np.empty(n, dtype=np.uint8)
    w = np.empty(n, dtype=np.float64)
    rank = np.empty(n, dtype=np.int64)
    head = np.empty(m, dtype=np.int64)
    color = np.empty(n, dtype=np.uint8)
    is_head = np.empty(n, dtype=np.bool_)
    for t in range(count):
        seed = derive_seed(master, start + t)
        fill_initial(seed, n, ic, w)
        greedy_core(indptr, indices, w, rank, head, color)
        is_head[:] = False
        for e in range(m):
            is_head[head[e]] = True
        failing = 0
        orphan = 0
        for e in range(m):
            if _edge_color(indptr, indices, color, e) == 1:
                failing += 1
                low = indices[indptr[e]]
                for p in range(indptr[e] + 1, indptr[e + 1]):
                    if rank[indices[p]] < rank[low]:
                        low = indices[p]
                if not is_head[low]:
                    orphan += 1
        out[t, 0] = 1 if failing > 0 else 0
        out[t, 1] = failing
        out[t, 2] = orphan
    return out


@jit
def _p(j, q, alpha_b):
    if alpha_b * q <= 1.0:
        return 0.0
    return min(1.0, math.log(alpha_b * q) / j)


@jit
def event_batch(
    indptr, indices, n, master, start, count, q, alphas, t_indptr, t_indices, t_vertex, t_size
):
    """Per-trial event statistics; columns follow ``EVENT_COLUMNS``.

    The focal edge is given by its threat hypergraph (CSR of threat edges,
    their extension vertices and extension-edge sizes); pass empty arrays
    for none.
    """
    m = indptr.shape[0] - 1
    a_a, a_b, a_c, a_d = alphas[0], alphas[1], alphas[2], alphas[3]
    maxj = 2
    for e in range(m):
        maxj = max(maxj, indptr[e + 1] - indptr[e])
    maxj = max(maxj, 2)
    for t in range(t_size.shape[0]):
        maxj = max(maxj, t_size[t])
    enabled = a_b * q > 1.0
    log_bq = math.log(a_b * q) if q > 0 else 0.0
    out = np.zeros((count, 12), dtype=np.float64)
    ic = np.empty(n, dtype=np.uint8)
    w = np.empty(n, dtype=np.float64)
    Q = np.zeros(maxj + 1, dtype=np.int64)
    R = np.zeros(maxj + 1, dtype=np.int64)
    severity = np.zeros(n, dtype=np.int64)
    nt = t_size.shape[0]
    for t in range(count):
        seed = derive_seed(master, start + t)
        fill_initial(seed, n, ic, w)
        Q[:] = 0
        nmono = 0
        nlight = 0
        d2sum = 0.0
        for e in range(m):
            size = indptr[e + 1] - indptr[e]
            blue = 0
            top = -1.0
            second = -1.0
            for p in range(indptr[e], indptr[e + 1]):
                v = indices[p]
                if ic[v] == 0:
                    blue += 1
                if w[v] > top:
                    second = top
                    top = w[v]
                elif w[v] > second:
                    second = w[v]
            if blue <= 1 or blue >= size - 1:
                Q[size] += 1
            if blue == 0 or blue == size:
                nmono += 1
                d2sum += (size + 1) * (1.0 - second)
                if enabled and top < 1.0 - _p(size, q, a_b):
                    nlight += 1
        Y = 0.0
        for j in range(2, maxj + 1):
            Y += Q[j] / j
        # focal edge
        R[:] = 0
        severity[:] = 0
        Ye = 0.0
        for k in range(nt):
            blue = True
            for p in range(t_indptr[k], t_indptr[k + 1]):
                if ic[t_indices[p]] != 0:
                    blue = False
                    break
            if blue:
                Ye += 1.0 / (t_indptr[k + 1] - t_indptr[k] + 1)
                v = t_vertex[k]
                if severity[v] == 0 or t_size[k] < severity[v]:
                    severity[v] = t_size[k]
        for k in range(nt):
            v = t_vertex[k]
            if severity[v] > 0:
                R[severity[v]] += 1
                severity[v] = 0
        X = 0.0
        viol_r = 0
        for j in range(2, maxj + 1):
            X += R[j] * _p(j, q, a_b)
            if R[j] > Q[j]:
                viol_r += 1
        viol_x = 0
        if enabled and X > log_bq * Y * (1.0 + 1e-12):
            viol_x = 1
        out[t, 0] = nmono
        out[t, 1] = nlight
        out[t, 2] = Y
        out[t, 3] = d2sum
        out[t, 4] = X
        out[t, 5] = Ye
        out[t, 6] = nmono > a_a * q
        out[t, 7] = nlight > 0
        out[t, 8] = Y > a_c * q
        out[t, 9] = d2sum > a_d * q
        out[t, 10] = viol_r
        out[t, 11] = viol_x
    return out
