#!/usr/bin/env python3
"""Solve an SDPA sparse problem with cvxpy and write a CSDP-style solution.

Usage: sdpa_solve.py problem.dat-s solution.sol

The problem is read as: maximise F0 . X subject to Fk . X = ck, X psd, with
negative block sizes denoting diagonal (nonnegative) blocks. The solution file
has the constraint multipliers on the first line followed by lines
"2 block i j value" for the upper triangle of X.
"""

import sys

import cvxpy as cp
import numpy as np


def tokens(path):
    with open(path) as f:
        for line in f:
            line = line.split('"')[0].split("*")[0]
            for tok in line.replace(",", " ").replace("{", " ").replace("}", " ").replace("(", " ").replace(")", " ").split():
                yield tok


def read_sdpa(path):
    it = tokens(path)
    m = int(next(it))
    nblocks = int(next(it))
    sizes = [int(next(it)) for _ in range(nblocks)]
    c = np.array([float(next(it)) for _ in range(m)])
    entries = []
    rest = list(it)
    for k in range(0, len(rest), 5):
        matno, block, i, j = (int(x) for x in rest[k : k + 4])
        entries.append((matno, block - 1, i - 1, j - 1, float(rest[k + 4])))
    return m, sizes, c, entries


def solve(m, sizes, c, entries):
    blocks = []
    for n in sizes:
        if n > 0:
            blocks.append(cp.Variable((n, n), symmetric=True))
        else:
            blocks.append(cp.Variable(-n, nonneg=True))

    def entry(b, i, j):
        return blocks[b][i, j] if sizes[b] > 0 else blocks[b][i]

    rows = [[] for _ in range(m + 1)]
    for matno, b, i, j, v in entries:
        scale = v if i == j else 2.0 * v
        rows[matno].append(scale * entry(b, i, j))

    constraints = [blocks[b] >> 0 for b in range(len(sizes)) if sizes[b] > 0]
    equalities = [cp.sum(cp.hstack(rows[k])) == c[k - 1] if rows[k] else cp.Constant(0) == c[k - 1]
                  for k in range(1, m + 1)]
    objective = cp.Maximize(cp.sum(cp.hstack(rows[0])) if rows[0] else cp.Constant(0))
    problem = cp.Problem(objective, constraints + equalities)
    try:
        problem.solve(solver=cp.CLARABEL, tol_gap_abs=1e-12, tol_gap_rel=1e-12, tol_feas=1e-12,
                      max_iter=500)
    except (cp.error.SolverError, TypeError):
        problem.solve(solver=cp.SCS, eps=1e-10, max_iters=200000)
    if problem.status not in ("optimal", "optimal_inaccurate"):
        raise SystemExit(f"solver status {problem.status}")
    duals = [float(np.ravel(e.dual_value)[0]) if e.dual_value is not None else 0.0 for e in equalities]
    return blocks, duals


def write_solution(path, sizes, blocks, duals):
    with open(path, "w") as out:
        out.write(" ".join(repr(y) for y in duals) + "\n")
        for b, n in enumerate(sizes):
            value = np.asarray(blocks[b].value)
            if n > 0:
                for i in range(n):
                    for j in range(i, n):
                        out.write(f"2 {b + 1} {i + 1} {j + 1} {float(value[i, j])!r}\n")
            else:
                for i in range(-n):
                    out.write(f"2 {b + 1} {i + 1} {i + 1} {float(value[i])!r}\n")


def main(argv):
    if len(argv) != 3:
        sys.stderr.write(__doc__)
        return 2
    m, sizes, c, entries = read_sdpa(argv[1])
    blocks, duals = solve(m, sizes, c, entries)
    write_solution(argv[2], sizes, blocks, duals)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
