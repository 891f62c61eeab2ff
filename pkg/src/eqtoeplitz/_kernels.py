"""Inner loops with a numba path and a pure-numpy path.

Each public function dispatches on :func:`eqtoeplitz._accel.use_numba`.
Both paths return identical results up to floating-point reassociation;
``benchmarks/bench_kernels.py`` times them side by side.
"""

import numpy as np

from ._accel import njit, use_numba

# ---------------------------------------------------------------------------
# delta^t weighted separable double sums
#   S_k = sum_i sum_j wa_i wb_j delta(a_i, b_j)^t U[i, k] V[j, k]


@njit
def _delta_pair_nb(a, wa, b, wb, U, V, t):
    na = a.shape[0]
    nb = b.shape[0]
    nk = U.shape[1]
    out = np.zeros(nk, dtype=np.complex128)
    sa = 1.0 - (a.real ** 2 + a.imag ** 2)
    sb = 1.0 - (b.real ** 2 + b.imag ** 2)
    for i in range(na):
        row = np.zeros(nk, dtype=np.complex128)
        ai = a[i]
        for j in range(nb):
            bj = b[j]
            q = 1.0 - ai * bj.conjugate()
            d = sa[i] * sb[j] / (q.real * q.real + q.imag * q.imag)
            w = wb[j] * d ** t
            for k in range(nk):
                row[k] += w * V[j, k]
        for k in range(nk):
            out[k] += wa[i] * U[i, k] * row[k]
    return out


def _delta_pair_np(a, wa, b, wb, U, V, t, chunk=512):
    out = np.zeros(U.shape[1], dtype=complex)
    sb = 1.0 - np.abs(b) ** 2
    for s in range(0, a.size, chunk):
        ai = a[s:s + chunk, None]
        d = (1.0 - np.abs(ai) ** 2) * sb[None, :] / np.abs(1.0 - ai * np.conj(b)[None, :]) ** 2
        M = (d ** t) * wb[None, :]
        out += np.einsum("i,ik,ik->k", wa[s:s + chunk], U[s:s + chunk], M @ V)
    return out


def delta_pair_separable(a, wa, b, wb, U, V, t):
    a = np.ascontiguousarray(a, dtype=np.complex128)
    b = np.ascontiguousarray(b, dtype=np.complex128)
    wa = np.ascontiguousarray(wa, dtype=np.float64)
    wb = np.ascontiguousarray(wb, dtype=np.float64)
    U = np.ascontiguousarray(U, dtype=np.complex128)
    V = np.ascontiguousarray(V, dtype=np.complex128)
    if use_numba():
        return _delta_pair_nb(a, wa, b, wb, U, V, float(t))
    return _delta_pair_np(a, wa, b, wb, U, V, float(t))


# ---------------------------------------------------------------------------
# Toeplitz assembly from ring Fourier coefficients
#   T[m, n] = sum_i w_i A[i, n] A[i, m] F[i, m - n + P - 1]
# with A[i, n] = u_i^(n/2) / ||z^n|| real and F the angular Fourier coefficients.


@njit
def _ring_assembly_nb(w, A, F):
    nr, P = A.shape
    T = np.zeros((P, P), dtype=np.complex128)
    for i in range(nr):
        wi = w[i]
        for m in range(P):
            am = wi * A[i, m]
            for n in range(P):
                T[m, n] += am * A[i, n] * F[i, m - n + P - 1]
    return T


def _ring_assembly_np(w, A, F):
    nr, P = A.shape
    T = np.zeros((P, P), dtype=complex)
    WA = w[:, None] * A
    for k in range(-(P - 1), P):
        m = np.arange(max(k, 0), min(P, P + k))
        n = m - k
        T[m, n] = np.einsum("ij,ij,i->j", WA[:, m], A[:, n], F[:, k + P - 1])
    return T


def ring_assembly(w, A, F):
    w = np.ascontiguousarray(w, dtype=np.float64)
    A = np.ascontiguousarray(A, dtype=np.float64)
    F = np.ascontiguousarray(F, dtype=np.complex128)
    if use_numba():
        return _ring_assembly_nb(w, A, F)
    return _ring_assembly_np(w, A, F)


# ---------------------------------------------------------------------------
# orbit descent into a Schottky fundamental domain
#
# circles ordered (c1_0, c2_0, c1_1, c2_1, ...); generator k maps ext(c1_k) onto
# int(c2_k).  A point inside c1_k (open) is moved by g_k, a point inside c2_k
# (closed) by g_k^-1.  Letters are recorded as +-(k+1), latest application last.


@njit
def _descend_nb(z, cen, rad, ga, gb, max_steps):
    n = z.shape[0]
    nc = cen.shape[0]
    out = np.empty(n, dtype=np.complex128)
    length = np.zeros(n, dtype=np.int64)
    ok = np.ones(n, dtype=np.bool_)
    word = np.zeros((n, max_steps), dtype=np.int64)
    for p in range(n):
        x = z[p]
        steps = 0
        while True:
            hit = -1
            for c in range(nc):
                dz = x - cen[c]
                d2 = dz.real * dz.real + dz.imag * dz.imag
                r2 = rad[c] * rad[c]
                if (c % 2 == 1 and d2 <= r2) or (c % 2 == 0 and d2 < r2):
                    hit = c
                    break
            if hit < 0:
                break
            if steps >= max_steps:
                ok[p] = False
                break
            k = hit // 2
            a = ga[k]
            b = gb[k]
            if hit % 2 == 1:
                a = a.conjugate()
                b = -b
                word[p, steps] = -(k + 1)
            else:
                word[p, steps] = k + 1
            x = (a * x + b) / (b.conjugate() * x + a.conjugate())
            steps += 1
        out[p] = x
        length[p] = steps
    return out, length, ok, word


def _descend_np(z, cen, rad, ga, gb, max_steps):
    n = z.size
    x = z.copy()
    length = np.zeros(n, dtype=np.int64)
    ok = np.ones(n, dtype=bool)
    word = np.zeros((n, max_steps), dtype=np.int64)
    active = np.ones(n, dtype=bool)
    nc = cen.size
    while active.any():
        idx = np.nonzero(active)[0]
        xs = x[idx]
        hit = np.full(idx.size, -1)
        for c in range(nc - 1, -1, -1):
            d = np.abs(xs - cen[c])
            inside = d <= rad[c] if c % 2 == 1 else d < rad[c]
            hit = np.where(inside, c, hit)
        done = hit < 0
        active[idx[done]] = False
        idx, hit, xs = idx[~done], hit[~done], xs[~done]
        if idx.size == 0:
            break
        over = length[idx] >= max_steps
        ok[idx[over]] = False
        active[idx[over]] = False
        idx, hit, xs = idx[~over], hit[~over], xs[~over]
        k = hit // 2
        inv = hit % 2 == 1
        a = np.where(inv, np.conj(ga[k]), ga[k])
        b = np.where(inv, -gb[k], gb[k])
        word[idx, length[idx]] = np.where(inv, -(k + 1), k + 1)
        x[idx] = (a * xs + b) / (np.conj(b) * xs + np.conj(a))
        length[idx] += 1
    return x, length, ok, word


def descend(z, cen, rad, ga, gb, max_steps):
    z = np.ascontiguousarray(np.ravel(z), dtype=np.complex128)
    cen = np.ascontiguousarray(cen, dtype=np.complex128)
    rad = np.ascontiguousarray(rad, dtype=np.float64)
    ga = np.ascontiguousarray(ga, dtype=np.complex128)
    gb = np.ascontiguousarray(gb, dtype=np.complex128)
    if use_numba():
        return _descend_nb(z, cen, rad, ga, gb, int(max_steps))
    return _descend_np(z, cen, rad, ga, gb, int(max_steps))
