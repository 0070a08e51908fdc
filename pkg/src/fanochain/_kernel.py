"""Compiled RK4 stepper shared by the static-chain and driven simulators.

State layout: y[0] is the discrete-site amplitude, y[1..N] the chain.
The two time-dependent scalars -- edge hopping and discrete-site frequency --
arrive as precomputed arrays on the half-step grid (2*nsteps + 1 points), so
one kernel serves both the envelope-coupled chain (time-dependent edge,
constant on-site) and the driven chain (constant edge, modulated on-site).
"""

import numpy as np
from numba import njit

#: norm above which the run is declared unstable
OVERFLOW_NORM = 1.0e6

#: status codes returned by the kernel
OK, OVERFLOW = 0, 1


@njit(cache=True)
def rk4_run(c0, kappa, edge, onsite, dt, nsteps, stride, snap_stride):
    """March the coupled amplitudes with fixed-step classical RK4.

    edge[j], onsite[j] hold the edge hopping and discrete-site frequency at
    time t_start + j*dt/2. Observables are sampled every ``stride`` steps
    (plus the final step); full states every ``snap_stride`` steps when
    ``snap_stride`` > 0.
    """
    N = c0.size - 1
    y = c0.copy()

    nsamp = nsteps // stride + 1
    if nsteps % stride != 0:
        nsamp += 1
    idx = np.empty(nsamp, np.int64)
    ps = np.empty(nsamp, np.float64)
    pc = np.empty(nsamp, np.float64)
    ca = np.empty(nsamp, np.complex128)

    if snap_stride > 0:
        nsnap = nsteps // snap_stride + 1
        snap_idx = np.empty(nsnap, np.int64)
        snaps = np.empty((nsnap, N + 1), np.complex128)
    else:
        snap_idx = np.empty(0, np.int64)
        snaps = np.empty((0, N + 1), np.complex128)

    k1 = np.empty_like(y)
    k2 = np.empty_like(y)
    k3 = np.empty_like(y)
    k4 = np.empty_like(y)
    yt = np.empty_like(y)

    isamp = 0
    isnap = 0
    status = OK
    for i in range(nsteps + 1):
        sample_here = (i % stride == 0) or (i == nsteps)
        if sample_here:
            s = 0.0
            for n in range(1, N + 1):
                s += y[n].real * y[n].real + y[n].imag * y[n].imag
            p0 = y[0].real * y[0].real + y[0].imag * y[0].imag
            idx[isamp] = i
            ps[isamp] = p0
            pc[isamp] = s
            ca[isamp] = y[0]
            isamp += 1
            if p0 + s > OVERFLOW_NORM:
                status = OVERFLOW
                break
        if snap_stride > 0 and i % snap_stride == 0:
            snap_idx[isnap] = i
            for n in range(N + 1):
                snaps[isnap, n] = y[n]
            isnap += 1
        if i == nsteps:
            break

        for stage in range(4):
            if stage == 0:
                src = y
                k = k1
                j = 2 * i
            elif stage == 1:
                for n in range(N + 1):
                    yt[n] = y[n] + 0.5 * dt * k1[n]
                src = yt
                k = k2
                j = 2 * i + 1
            elif stage == 2:
                for n in range(N + 1):
                    yt[n] = y[n] + 0.5 * dt * k2[n]
                src = yt
                k = k3
                j = 2 * i + 1
            else:
                for n in range(N + 1):
                    yt[n] = y[n] + dt * k3[n]
                src = yt
                k = k4
                j = 2 * i + 2
            e = edge[j]
            w = onsite[j]
            k[0] = -1j * (w * src[0] - e * src[1])
            if N >= 2:
                k[1] = -1j * (-e * src[0] - kappa * src[2])
                for n in range(2, N):
                    k[n] = -1j * (-kappa * (src[n + 1] + src[n - 1]))
                k[N] = -1j * (-kappa * src[N - 1])
            else:
                k[1] = -1j * (-e * src[0])

        sixth = dt / 6.0
        for n in range(N + 1):
            y[n] = y[n] + sixth * (k1[n] + 2.0 * k2[n] + 2.0 * k3[n] + k4[n])

    return (idx[:isamp], ps[:isamp], pc[:isamp], ca[:isamp],
            snap_idx[:isnap], snaps[:isnap], y, status)
