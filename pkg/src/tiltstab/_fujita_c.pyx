# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled grid kernel for the adjoint-bundle scan (see ``_fujita_py``)."""

cdef enum:
    FAIL_A = 1
    FAIL_B = 2
    FAIL_C = 4


def scan_d_range(long long m, long long alpha, long long d_lo, long long d_hi,
                 long long bound, long long[::1] counts, long long[::1] first_q1,
                 long long[::1] first_q2, long long[::1] first_mask):
    cdef long long m2 = m * m
    cdef long long m3 = m2 * m
    cdef long long c_fail = 0, lc1_mask, lc
    cdef long long d, i, n, fq1, fq2, fmask, q1, q2, qq, nf
    cdef bint a_ok, b_ok, b_ok_when_applicable
    for lc in range(1, bound + 1):
        if m * lc < 3 * alpha:
            c_fail += 1
    lc1_mask = FAIL_C if m < 3 * alpha else 0
    with nogil:
        for d in range(d_lo, d_hi):
            i = d - d_lo
            a_ok = m3 * d > 49 * alpha
            n = 0
            fq1 = 0
            fq2 = 0
            fmask = 0
            for q1 in range(1, bound + 1):
                b_ok_when_applicable = m2 * q1 >= 7 * alpha
                qq = q1 * q1
                for q2 in range(0, bound + 1):
                    if qq < d * q2:
                        break
                    b_ok = b_ok_when_applicable or m * q2 >= alpha
                    nf = c_fail if (a_ok and b_ok) else bound
                    if nf:
                        n += nf
                        if not fmask:
                            fq1 = q1
                            fq2 = q2
                            fmask = (0 if a_ok else FAIL_A) | (0 if b_ok else FAIL_B) | lc1_mask
            counts[i] = n
            first_q1[i] = fq1
            first_q2[i] = fq2
            first_mask[i] = fmask
