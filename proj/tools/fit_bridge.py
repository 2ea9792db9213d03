#!/usr/bin/env python3
"""Fit the warp-function bridge spline used by core/src/warped_cusp.cpp.

The warp function h equals exp(-t) on [0,1] and 1/t^2 on [3,inf). On the
bridge (1,3) we represent phi := -h'/h as a C^1 piecewise-cubic Hermite
spline on uniform knots and recover h(t) = exp(-1 - int_1^t phi).

Seam conditions (continuity of h, h', h''):
    phi(1) = 1,  phi'(1) = 0,  phi(3) = 2/3,  phi'(3) = -2/9,
    int_1^3 phi = 2 ln 3 - 1.
All five are linear in the knot values/slopes.

Shape requirements enforced on a dense grid, written so that the curvature
window of the flattened cusp metric holds strictly on the bridge:
    g := phi^2 - phi'  (= h''/h)  in [G_LO, G_HI],
    phi >= PHI_LO  (keeps (h'/h)^2 = phi^2 above the same floor).

Run:  python3 tools/fit_bridge.py
Emits the knot arrays pasted into warped_cusp.cpp.
"""

import numpy as np
from scipy.optimize import linprog

N_KNOTS = 9          # uniform knots on [1,3]
G_LO = 0.0475        # floor for h''/h on the bridge
G_HI = 10.5          # ceiling, leaves margin under the -11 curvature bound
PHI_LO = 0.22        # floor for phi = -h'/h
PHI_HI = 1.0
GRID = 2001          # verification / constraint grid


def hermite_row(x, xs):
    """Row vectors (value, derivative) of the spline at x as linear maps
    applied to the packed unknowns [phi_0..phi_{n-1}, m_0..m_{n-1}]."""
    n = len(xs)
    seg = min(np.searchsorted(xs, x, side="right") - 1, n - 2)
    seg = max(seg, 0)
    L = xs[seg + 1] - xs[seg]
    u = (x - xs[seg]) / L
    h00 = 2 * u**3 - 3 * u**2 + 1
    h10 = u**3 - 2 * u**2 + u
    h01 = -2 * u**3 + 3 * u**2
    h11 = u**3 - u**2
    d00 = (6 * u**2 - 6 * u) / L
    d10 = (3 * u**2 - 4 * u + 1)
    d01 = (-6 * u**2 + 6 * u) / L
    d11 = (3 * u**2 - 2 * u)
    val = np.zeros(2 * n)
    der = np.zeros(2 * n)
    val[seg], val[seg + 1] = h00, h01
    val[n + seg], val[n + seg + 1] = L * h10, L * h11
    der[seg], der[seg + 1] = d00, d01
    der[n + seg], der[n + seg + 1] = d10, d11
    return val, der


def integral_row(xs):
    n = len(xs)
    row = np.zeros(2 * n)
    for seg in range(n - 1):
        L = xs[seg + 1] - xs[seg]
        row[seg] += L / 2
        row[seg + 1] += L / 2
        row[n + seg] += L * L / 12
        row[n + seg + 1] -= L * L / 12
    return row


def equality_system(xs):
    n = len(xs)
    A = np.zeros((5, 2 * n))
    b = np.zeros(5)
    v1, d1 = hermite_row(xs[0], xs)
    v3, d3 = hermite_row(xs[-1], xs)
    A[0], b[0] = v1, 1.0
    A[1], b[1] = d1, 0.0
    A[2], b[2] = v3, 2.0 / 3.0
    A[3], b[3] = d3, -2.0 / 9.0
    A[4], b[4] = integral_row(xs), 2 * np.log(3.0) - 1.0
    return A, b


def eval_spline(z, xs, ts):
    phi = np.empty_like(ts)
    dphi = np.empty_like(ts)
    for i, t in enumerate(ts):
        v, d = hermite_row(t, xs)
        phi[i] = v @ z
        dphi[i] = d @ z
    return phi, dphi


def solve():
    xs = np.linspace(1.0, 3.0, N_KNOTS)
    n = len(xs)
    Aeq, beq = equality_system(xs)
    ts = np.linspace(1.0, 3.0, GRID)

    # Initial shape: dip then slow recovery, consistent with the integral.
    z = np.zeros(2 * n)
    z[:n] = 0.62 + 0.38 * np.cos(np.pi * (xs - 1.0)) ** 3
    z[n:] = 0.0
    # Project onto the (linear) equality constraints.
    resid = Aeq @ z - beq
    z -= Aeq.T @ np.linalg.solve(Aeq @ Aeq.T, resid)

    # Sequential linearization of g = phi^2 - phi' with a max-margin LP.
    for _ in range(60):
        phi, dphi = eval_spline(z, xs, ts)
        rows_v = np.array([hermite_row(t, xs)[0] for t in ts])
        rows_d = np.array([hermite_row(t, xs)[1] for t in ts])
        # g(z0 + dz) ~ g0 + (2 phi rows_v - rows_d) dz
        Jg = 2 * phi[:, None] * rows_v - rows_d
        g0 = phi**2 - dphi
        nv = 2 * n
        # unknowns: [dz, s];  maximize margin s
        cons_A, cons_b = [], []
        cons_A.append(np.hstack([-Jg, np.ones((GRID, 1))]))          # g >= G_LO + s
        cons_b.append(g0 - G_LO)
        cons_A.append(np.hstack([Jg, np.ones((GRID, 1))]))           # g <= G_HI - s
        cons_b.append(G_HI - g0)
        cons_A.append(np.hstack([-rows_v, np.ones((GRID, 1))]))      # phi >= PHI_LO + s
        cons_b.append(phi - PHI_LO)
        cons_A.append(np.hstack([rows_v, np.ones((GRID, 1))]))       # phi <= PHI_HI - s
        cons_b.append(PHI_HI - phi)
        A_ub = np.vstack(cons_A)
        b_ub = np.hstack(cons_b)
        A_eq = np.hstack([Aeq, np.zeros((5, 1))])
        trust = 0.08
        bounds = [(-trust, trust)] * nv + [(None, None)]
        c = np.zeros(nv + 1)
        c[-1] = -1.0
        res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq,
                      b_eq=np.zeros(5), bounds=bounds, method="highs")
        if not res.success:
            raise RuntimeError(res.message)
        dz, s = res.x[:nv], res.x[nv]
        z = z + dz
        if np.linalg.norm(dz) < 1e-12:
            break

    # Exact projection back onto the equalities (kills LP round-off).
    resid = Aeq @ z - beq
    z -= Aeq.T @ np.linalg.solve(Aeq @ Aeq.T, resid)
    return xs, z, s


def report(xs, z):
    n = len(xs)
    ts = np.linspace(1.0, 3.0, 200001)
    phi, dphi = eval_spline(z, xs, ts)
    g = phi**2 - dphi
    print(f"phi range   [{phi.min():.6f}, {phi.max():.6f}]")
    print(f"g   range   [{g.min():.6f}, {g.max():.6f}]")
    print(f"integral residual {integral_row(xs) @ z - (2*np.log(3)-1):.3e}")
    print(f"seams: phi(1)-1={phi[0]-1:.3e} dphi(1)={dphi[0]:.3e} "
          f"phi(3)-2/3={phi[-1]-2/3:.3e} dphi(3)+2/9={dphi[-1]+2/9:.3e}")
    print("\nstatic constexpr double kBridgeKnots[] = {")
    print("    " + ", ".join(f"{x:.17g}" for x in xs) + "};")
    print("static constexpr double kBridgePhi[] = {")
    print("    " + ",\n    ".join(f"{v:.17g}" for v in z[:n]) + "};")
    print("static constexpr double kBridgeSlope[] = {")
    print("    " + ",\n    ".join(f"{v:.17g}" for v in z[n:]) + "};")


if __name__ == "__main__":
    xs, z, margin = solve()
    print(f"final margin {margin:.4f}")
    report(xs, z)
