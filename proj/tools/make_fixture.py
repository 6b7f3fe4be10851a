#!/usr/bin/env python3
"""Builds tests/data/fixture_stripped.txt: eta-product prefixes plus negatives.

Pure-Python integer arithmetic, independent of the C++ library. Every
sequence is checked here for convolutivity at m = 2..6 before writing.
"""
import sys
from pathlib import Path

TERMS = 50


def eta(level, order):
    """(q^level; q^level)_inf via repeated multiplication by (1 - q^(level k))."""
    c = [0] * (order + 1)
    c[0] = 1
    k = 1
    while level * k <= order:
        step = level * k
        for n in range(order, step - 1, -1):
            c[n] -= c[n - step]
        k += 1
    return c


def mul(a, b):
    n = len(a)
    out = [0] * n
    for i, x in enumerate(a):
        if x:
            for j in range(n - i):
                out[i + j] += x * b[j]
    return out


def inv(a):
    n = len(a)
    out = [0] * n
    out[0] = 1
    for k in range(1, n):
        out[k] = -sum(a[j] * out[k - j] for j in range(1, k + 1))
    return out


def eta_quotient(spec, order):
    s = [1] + [0] * order
    for level, e in spec.items():
        f = eta(level, order)
        if e < 0:
            f = inv(f)
        for _ in range(abs(e)):
            s = mul(s, f)
    return s


def convolutive(a, m):
    """True iff a_{mn} equals [q^n] A^m for every testable n (n >= 1 compared)."""
    k = (len(a) - 1) // m
    if k < 1:
        return False
    trunc = a[: k + 1]
    p = [1] + [0] * k
    for _ in range(m):
        p = mul(p, trunc)
    return all(a[m * n] == p[n] for n in range(k + 1))


TABLE = [
    (7096, {1: -4, 2: 6, 4: -2}, 2),
    (103258, {1: -2, 2: 1, 4: 2, 8: -1}, 2),
    (102186, {1: -1, 3: -1, 4: 1, 6: 2, 12: -1}, 2),
    (94023, {1: -1, 6: 1, 10: 1, 15: -1}, 2),
    (128128, {1: -3, 2: 3, 3: 1, 6: -1}, 2),
    (98151, {1: -2, 2: 1, 3: 2, 6: -1}, 3),
    (385520, {1: -1, 2: 1, 3: -1, 4: -1, 6: 3, 12: -1}, 3),
]


def negatives():
    n = 34
    fib = [0, 1]
    while len(fib) < n:
        fib.append(fib[-1] + fib[-2])
    lucas = [2, 1]
    while len(lucas) < n:
        lucas.append(lucas[-1] + lucas[-2])
    pell = [0, 1]
    while len(pell) < n:
        pell.append(2 * pell[-1] + pell[-2])
    trib = [0, 0, 1]
    while len(trib) < n:
        trib.append(trib[-1] + trib[-2] + trib[-3])
    primes = []
    x = 2
    while len(primes) < n:
        if all(x % p for p in primes if p * p <= x):
            primes.append(x)
        x += 1
    from math import comb, factorial
    catalan = [comb(2 * i, i) // (i + 1) for i in range(n)]
    motzkin = [1, 1]
    for i in range(2, n):
        motzkin.append(((2 * i + 1) * motzkin[-1] + (3 * i - 3) * motzkin[-2]) // (i + 2))
    bell = [1]
    row = [1]
    for _ in range(n - 1):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
        bell.append(row[0])
    partitions = inv(eta(1, n - 1))
    distinct = mul(eta(2, n - 1), inv(eta(1, n - 1)))
    seqs = [
        (45, fib),
        (40, primes),
        (108, catalan),
        (41, partitions),
        (290, [i * i for i in range(n)]),
        (79, [2 ** i for i in range(n)]),
        (142, [factorial(i) for i in range(n)]),
        (217, [i * (i + 1) // 2 for i in range(n)]),
        (1006, motzkin),
        (110, bell),
        (129, pell),
        (32, lucas),
        (73, trib),
        (984, [comb(2 * i, i) for i in range(n)]),
        (27, list(range(1, n + 1))),
        (12, [1] * n),
        (9, distinct),
        (1045, [(2 ** i - (-1) ** i) // 3 for i in range(n)]),
        (10815, eta(1, n - 1)),
        (7, [1] + [0] * (n - 1)),       # eventually zero: trivial-prefix filter
        (33999, [1, 2, 4]),             # too short (and 2-convolutive on its 3 terms)
        (244, [3 ** i for i in range(n)]),
        (396, [sum(d for d in range(1, i + 1) if i % d == 0) for i in range(1, n + 1)]),
    ]
    return seqs


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "tests/data/fixture_stripped.txt"
    lines = ["# Test corpus in stripped format", "# eta-product prefixes and negatives"]
    expected = {}
    for a, spec, m in TABLE:
        s = eta_quotient(spec, TERMS - 1)
        got = [mm for mm in range(2, 7) if convolutive(s, mm)]
        assert got == [m], (a, got)
        lines.append(f"A{a:06d} ," + ",".join(map(str, s)) + ",")
        expected[a] = m
    for a, s in negatives():
        if len(s) >= 20 and any(s[len(s) // 2:]):
            got = [mm for mm in range(2, 7) if convolutive(s, mm)]
            assert not got, (a, got)
        lines.append(f"A{a:06d} ," + ",".join(map(str, s)) + ",")
    assert len(lines) - 2 == 30
    out.write_text("\n".join(lines) + "\n")
    print(f"wrote {out}: {len(lines) - 2} sequences, expected hits {expected}")


if __name__ == "__main__":
    main()
