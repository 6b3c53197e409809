"""Pure-Python grid kernel for the adjoint-bundle scan.

Mirrors ``_fujita_c.pyx`` line for line; used when the extension is not
built or when ``TILTSTAB_PURE_PYTHON`` is set.
"""

FAIL_A = 1
FAIL_B = 2
FAIL_C = 4


def scan_d_range(m, alpha, d_lo, d_hi, bound, counts, first_q1, first_q2, first_mask):
    """Fill per-``d`` results for ``d_lo <= d < d_hi`` into the output buffers.

    For each ``d`` the scan visits ``1 <= q1 <= bound`` and, while the Hodge
    index ``q1^2 >= d q2`` holds, ``0 <= q2 <= bound``.  Condition (C) only
    involves ``L.C``, so the failing curve degrees form the prefix
    ``1 <= LC < 3 alpha / m`` and are counted without a loop.
    """
    m2 = m * m
    m3 = m2 * m
    c_fail = 0
    for lc in range(1, bound + 1):
        if m * lc < 3 * alpha:
            c_fail += 1
    lc1_mask = FAIL_C if m < 3 * alpha else 0
    for d in range(d_lo, d_hi):
        i = d - d_lo
        a_ok = m3 * d > 49 * alpha
        n = 0
        fq1 = fq2 = fmask = 0
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
