# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled occupancy-counting kernels; contract documented in _countpure."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def grid_occupancy(const cnp.uint8_t[:, ::1] pixels, int delta):
    cdef Py_ssize_t h = pixels.shape[0]
    cdef Py_ssize_t w = pixels.shape[1]
    cdef Py_ssize_t nby = h // delta
    cdef Py_ssize_t nbx = w // delta

    cdef int z0 = 255
    cdef Py_ssize_t i, j
    for j in range(h):
        for i in range(w):
            if pixels[j, i] < z0:
                z0 = pixels[j, i]

    occ = np.zeros(delta * delta + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] occ_v = occ

    # per-block tally of points per z bin; at most 256 // delta + 1 bins
    cdef cnp.int64_t[::1] zcount = np.zeros(256 // delta + 2, dtype=np.int64)
    cdef cnp.int64_t[::1] touched = np.zeros(delta * delta, dtype=np.int64)

    cdef Py_ssize_t by, bx, k, ntouched
    cdef int zb
    for by in range(nby):
        for bx in range(nbx):
            ntouched = 0
            for j in range(by * delta, (by + 1) * delta):
                for i in range(bx * delta, (bx + 1) * delta):
                    zb = (pixels[j, i] - z0) // delta
                    if zcount[zb] == 0:
                        touched[ntouched] = zb
                        ntouched += 1
                    zcount[zb] += 1
            for k in range(ntouched):
                zb = touched[k]
                occ_v[zcount[zb]] += 1
                zcount[zb] = 0
    return occ


def gliding_occupancy(const cnp.uint8_t[:, ::1] pixels, int delta):
    cdef Py_ssize_t h = pixels.shape[0]
    cdef Py_ssize_t w = pixels.shape[1]
    cdef int r0 = delta // 2
    cdef int lo = -r0
    cdef int hi = -r0 + delta - 1
    cdef Py_ssize_t nh = h - delta + 1
    cdef Py_ssize_t nw = w - delta + 1

    # offset-major accumulation keeps both reads sequential so the inner
    # loop vectorizes; per-center window scans are far slower
    m = np.zeros(nh * nw, dtype=np.int64)
    cdef cnp.int64_t[::1] m_v = m
    cdef Py_ssize_t oy, ox, ci, cj
    cdef int dz
    for oy in range(delta):
        for ox in range(delta):
            for ci in range(nh):
                for cj in range(nw):
                    dz = pixels[ci + oy, cj + ox] - pixels[ci + r0, cj + r0]
                    m_v[ci * nw + cj] += (lo <= dz) & (dz <= hi)
    return np.bincount(m, minlength=delta * delta + 1).astype(np.int64)
