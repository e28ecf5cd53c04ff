#!/usr/bin/env python3
"""Regenerate the bundled OEIS b-file snapshots in data/fixtures/.

Each fixture is a local snapshot produced from the sequence's defining
formula, so the conformance suite can run with no network access. The
online mode of the CLI (`oeis check --online`) fetches live b-files from
oeis.org instead; these snapshots exist to keep CI deterministic.

Definitions used (one per A-number):
  A000045  Fibonacci: F(0)=0, F(1)=1, F(n)=F(n-1)+F(n-2)
  A000032  Lucas: L(0)=2, L(1)=1, same recurrence
  A001629  Fibonacci numbers convolved with themselves:
           a(n) = sum_{k=0..n} F(k)*F(n-k)
  A006478  partial sums of A001629: a(n) = sum_{i=0..n} A001629(i)
  A002940  a(n) = A006478(n+3) - F(n+4) + 1
  A010049  second-order Fibonacci: a(0)=0, a(n) = A001629(n-1) + F(n)
  A014286  a(n) = sum_{k=0..n} k*F(k)
  A122491  a(0)=0, a(n) = A001629(n-1) + A006478(n-1)
  A178523  path length of the Fibonacci tree: a(0)=a(1)=0,
           a(n) = sum over the triangle j<=i<=n-1 of the grid
           H(i,j) = F(min)*F(|i-j|+2) + F(min-1)*F(|i-j|)
  A190062  a(0)=0, a(n) = A122491(n) + F(n)
"""

import pathlib

TERMS = 60
OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "fixtures"

F = [0, 1]
while len(F) < TERMS + 40:
    F.append(F[-1] + F[-2])
L = [2, 1]
while len(L) < TERMS + 40:
    L.append(L[-1] + L[-2])

conv = [sum(F[k] * F[n - k] for k in range(n + 1)) for n in range(TERMS + 20)]
csum = []
acc = 0
for x in conv:
    acc += x
    csum.append(acc)


def grid_cell(i, j):
    k, d = min(i, j), abs(i - j)
    lo = F[k - 1] if k >= 1 else 1  # F(-1) = 1
    return F[k] * F[d + 2] + lo * F[d]


def triangle(n):
    return sum(grid_cell(i, j) for i in range(n + 1) for j in range(i + 1))


SEQS = {
    "A000045": [F[n] for n in range(TERMS)],
    "A000032": [L[n] for n in range(TERMS)],
    "A001629": [conv[n] for n in range(TERMS)],
    "A006478": [csum[n] for n in range(TERMS)],
    "A002940": [csum[n + 3] - F[n + 4] + 1 for n in range(TERMS)],
    "A010049": [0] + [conv[n - 1] + F[n] for n in range(1, TERMS)],
    "A014286": [sum(k * F[k] for k in range(n + 1)) for n in range(TERMS)],
    "A122491": [0] + [conv[n - 1] + csum[n - 1] for n in range(1, TERMS)],
    "A178523": [0, 0] + [triangle(n - 1) for n in range(2, TERMS)],
    "A190062": [0] + [conv[n - 1] + csum[n - 1] + F[n] for n in range(1, TERMS)],
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for anum, terms in sorted(SEQS.items()):
        path = OUT / f"b{anum[1:]}.txt"
        with open(path, "w") as fh:
            for i, v in enumerate(terms):
                fh.write(f"{i} {v}\n")
        print(f"wrote {path.name}: {len(terms)} terms, offset 0")


if __name__ == "__main__":
    main()
