"""Pure-numpy two-photon stepping kernel (fallback backend).

State layout (unsymmetrized-tensor storage over the one-photon basis
{L(xi), R(xi), C}): TLL and TRR are exactly symmetric M x M blocks,
TLR[a, b] holds the (L at a, R at b) component, TLC/TRC the guide-cavity
blocks divided by sqrt(2), tcc the doubly-occupied cavity amplitude.

Each step applies the one-photon interface map V in photon coordinate 1
and then coordinate 2 (their generators commute, so the composition is the
exact tensor square) around a Strang-split Kerr phase on tcc.  Only the
crossing row/column of each block is touched, so a step costs O(M).
"""

import numpy as np

BACKEND = "numpy"


def run_steps(TLL, TRR, TLR, TLC, TRC, tcc, V, uph, c_start, n_steps):
    """Advance the state ``n_steps`` steps in place; crossing index starts
    at ``c_start`` and decrements each step.  Returns the final tcc."""
    V00, V01, V02 = V[0]
    V10, V11, V12 = V[1]
    V20, V21, V22 = V[2]

    c = c_start
    for _ in range(n_steps):
        tcc = tcc * uph

        # snapshots of everything the step rewrites
        rowLL = TLL[c, :].copy()
        rowRR = TRR[c, :].copy()
        rowLR = TLR[c, :].copy()          # (L at c, R at xi)
        colLR = TLR[:, c].copy()          # (L at xi, R at c)
        tlc_c = TLC[c]
        trc_c = TRC[c]
        tcc0 = tcc

        # -- coordinate 1 --------------------------------------------------
        # triples over slot-2 = L(xi): (C,L), (L(c),L), (R(c),L)
        TLL[c, :] = V10 * TLC + V11 * rowLL + V12 * colLR
        cl_c = V00 * tlc_c + V01 * rowLL[c] + V02 * colLR[c]
        rcl_c = V20 * tlc_c + V21 * rowLL[c] + V22 * colLR[c]
        # triples over slot-2 = R(xi): (C,R), (L(c),R), (R(c),R)
        TRR[c, :] = V20 * TRC + V21 * rowLR + V22 * rowRR
        cr_c = V00 * trc_c + V01 * rowLR[c] + V02 * rowRR[c]
        lcr_c = V10 * trc_c + V11 * rowLR[c] + V12 * rowRR[c]
        # slot-2 = C triple: (C,C), (L(c),C), (R(c),C)
        tcc = V00 * tcc0 + V01 * tlc_c + V02 * trc_c
        TLC[c] = V10 * tcc0 + V11 * tlc_c + V12 * trc_c
        TRC[c] = V20 * tcc0 + V21 * tlc_c + V22 * trc_c

        # -- coordinate 2 --------------------------------------------------
        # slot-1 = L(xi): inputs are the intermediate (L(xi),C), (L(xi),L(c)),
        # (L(xi),R(c)); old symmetric values except the corner entries.
        in0 = TLC.copy()
        in1 = rowLL.copy()
        in1[c] = TLL[c, c]
        in2 = colLR.copy()
        in2[c] = lcr_c
        outC = V00 * in0 + V01 * in1 + V02 * in2
        outL = V10 * in0 + V11 * in1 + V12 * in2
        outR = V20 * in0 + V21 * in1 + V22 * in2
        TLC[:] = outC
        TLL[:, c] = outL
        TLL[c, :] = outL                  # restore exact symmetric storage
        TLR[:, c] = outR

        # slot-1 = R(xi)
        in0 = TRC.copy()
        in1 = rowLR.copy()
        in1[c] = rcl_c
        in2 = rowRR.copy()
        in2[c] = TRR[c, c]
        outC = V00 * in0 + V01 * in1 + V02 * in2
        outL = V10 * in0 + V11 * in1 + V12 * in2
        outR = V20 * in0 + V21 * in1 + V22 * in2
        TRC[:] = outC
        TLR[c, :] = outL
        TRR[:, c] = outR
        TRR[c, :] = outR

        # slot-1 = C
        tcc = V00 * tcc + V01 * cl_c + V02 * cr_c

        tcc = tcc * uph
        c -= 1

    return tcc


def run_steps_single(gL, gR, e, V, c_start, n_steps):
    """One-photon version: scalar cavity amplitude, 1-D guide arrays."""
    V00, V01, V02 = V[0]
    V10, V11, V12 = V[1]
    V20, V21, V22 = V[2]
    c = c_start
    for _ in range(n_steps):
        el, l, r = e, gL[c], gR[c]
        e = V00 * el + V01 * l + V02 * r
        gL[c] = V10 * el + V11 * l + V12 * r
        gR[c] = V20 * el + V21 * l + V22 * r
        c -= 1
    return e
