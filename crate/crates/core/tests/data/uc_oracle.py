"""Regenerates the expected values in uc_oracle.json.

Line-by-line transliteration of the reference Octave routine into numpy
(LAPACK SVD for pinv). Reads each case's "input" and writes "expected".

    python3 uc_oracle.py uc_oracle.json
"""
import json
import sys

import numpy as np


def pinv(a, rel_tol=1e-12):
    u, s, vt = np.linalg.svd(a)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros(a.T.shape)
    cutoff = rel_tol * s[0] * max(a.shape)
    inv = np.array([1.0 / x if x > cutoff else 0.0 for x in s])
    k = s.size
    return vt[:k].T @ np.diag(inv) @ u[:, :k].T


def ucrga(A):
    tol = 1e-15
    m, n = A.shape
    L = np.zeros((m, n))
    M = np.ones((m, n))
    S = np.sign(A)
    AA = np.abs(A)
    idx = AA > 0.0
    L[idx] = np.log(AA[idx])
    L[~idx] = 0
    M[~idx] = 0
    r = M.sum(axis=1)
    c = M.sum(axis=0)
    u = np.zeros(m)
    v = np.zeros(n)
    dx = 2 * tol
    while dx > tol:
        idx = c > 0
        p = L[:, idx].sum(axis=0) / c[idx]
        L[:, idx] = L[:, idx] - np.tile(p, (m, 1)) * M[:, idx]
        v[idx] = v[idx] - p
        dx = np.mean(np.abs(p)) if p.size else 0.0
        idx = r > 0
        p = L[idx, :].sum(axis=1) / r[idx]
        L[idx, :] = L[idx, :] - np.tile(p[:, None], (1, n)) * M[idx, :]
        u[idx] = u[idx] - p
        dx = dx + (np.mean(np.abs(p)) if p.size else 0.0)
    dl = np.exp(u)
    dr = np.exp(v)
    S = S * np.exp(L)
    return A * (pinv(S) * np.outer(dl, dr).T).T


def main(path):
    with open(path) as f:
        doc = json.load(f)
    for case in doc["cases"]:
        x = case["input"]
        a = np.array(x["data"], dtype=float).reshape(x["rows"], x["cols"])
        r = ucrga(a)
        case["expected"] = {"rows": r.shape[0], "cols": r.shape[1], "data": [float(v) for v in r.ravel()]}
    with open(path, "w") as f:
        json.dump(doc, f)


if __name__ == "__main__":
    main(sys.argv[1])
