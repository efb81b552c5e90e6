"""Independent numpy oracle used to freeze expected values in the C++ tests.

Run: python3 tests/oracle/oracle_values.py
"""
import numpy as np


def hex_hexagon(s):
    nodes = [(q, r) for q in range(-(s - 1), s) for r in range(-(s - 1), s)
             if abs(q + r) <= s - 1]
    idx = {p: i for i, p in enumerate(nodes)}
    A = np.zeros((len(nodes), len(nodes)))
    for (q, r), i in idx.items():
        for dq, dr in [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)]:
            j = idx.get((q + dq, r + dr))
            if j is not None:
                A[i, j] = 1
    return A


def grid(rows, cols):
    n = rows * cols
    A = np.zeros((n, n))
    for r in range(rows):
        for c in range(cols):
            i = r * cols + c
            if c + 1 < cols:
                A[i, i + 1] = A[i + 1, i] = 1
            if r + 1 < rows:
                A[i, i + cols] = A[i + cols, i] = 1
    return A


def double_star(k):
    n = 2 * k + 2
    A = np.zeros((n, n))
    A[0, 1] = A[1, 0] = 1
    for l in range(k):
        A[0, 2 + l] = A[2 + l, 0] = 1
        A[1, 2 + k + l] = A[2 + k + l, 1] = 1
    return A


def kinds(A):
    d = A.sum(1)
    P = A / d[:, None]
    L = np.diag(d) - A
    M = A / np.maximum.outer(d, d)
    np.fill_diagonal(M, 0)
    np.fill_diagonal(M, 1 - M.sum(1))
    return dict(A=A, P=P, L=L, M=M)


def moran(v, W):
    n = len(v)
    x = v - v.mean()
    return n / np.abs(W).sum() * (x @ W @ x) / (x @ x)


def grange(W):
    n = W.shape[0]
    S = 0.5 * (W + W.T)
    Pi = np.eye(n) - np.ones((n, n)) / n
    # orthonormal basis of 1-perp via QR, independent from the Householder path
    Q, _ = np.linalg.qr(np.hstack([np.ones((n, 1)), np.random.default_rng(0).standard_normal((n, n - 1))]))
    U = Q[:, 1:]
    ev = np.linalg.eigvalsh(U.T @ S @ U)
    s = n / np.abs(W).sum()
    return s * ev[0], s * ev[-1]


if __name__ == "__main__":
    for name, A in [("hex8", hex_hexagon(8)), ("grid13", grid(13, 13))]:
        print(name, A.shape[0], int(A.sum() / 2))
        for k, W in kinds(A).items():
            lo, hi = grange(W)
            print(f"  {k}: [{lo:.6f}, {hi:.6f}]")
    K = kinds(double_star(2))
    print("l1 offdiag M vs P on double_star(2):",
          np.abs((K["M"] - K["P"]) - np.diag(np.diag(K["M"] - K["P"]))).sum())
    for nl in [10, 100, 1000]:
        A = double_star(nl)
        K = kinds(A)
        va = np.array([1, -1] + [1 / 3] * nl + [-1 / 3] * nl)
        vi = np.array([1, -1] + [0] * (2 * nl))
        print(nl, {k: round(moran(va, W), 10) for k, W in K.items()},
              {k: round(moran(vi, W), 10) for k, W in K.items() if k != "L"},
              "closed -(n+1)/(2n+1) =", -(nl + 1) / (2 * nl + 1))
    # path P3 Fiedler
    A = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0.]])
    print("P3 L eig", np.linalg.eigh(kinds(A)["L"]))
