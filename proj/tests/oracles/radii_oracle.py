"""Regenerates tests/data/radii_oracle.csv with 50-digit arithmetic.

Run from the repository root:  python3 tests/oracles/radii_oracle.py
Every formula is written out here from scratch with mpmath; nothing is shared
with the C++ implementation.
"""

import csv
import itertools
import pathlib

import mpmath as mp

mp.mp.dps = 50

COLUMNS = ["kind", "n", "m", "q", "delta", "delta2", "a", "b", "m_max", "z", "expected"]


def W(z):
    return mp.re(mp.lambertw(z))


def g(n, q, m, delta, a, b):
    n, q, m, delta, a, b = map(mp.mpf, (n, q, m, delta, a, b))
    inside = q * mp.log(n / q) / (a * n) + 4 * q * mp.log(1 / delta) / (a * (q - 2 * m) * n)
    return inside ** (1 / b)


def f(n, m, q, d1, d2, a, b):
    n, m, q, d1, d2, a, b = map(mp.mpf, (n, m, q, d1, d2, a, b))
    first = q * mp.log(n / q) / (a * (n / q)) + 4 * q * mp.log(1 / d1) / (a * (q - 2 * m) * n)
    second = mp.log(n - m) / (a * (n - m)) + 4 * mp.log(1 / d2) / (a * (n - m))
    return first ** (1 / b) + second ** (1 / b)


def h(n, m, delta, m_max, a, b):
    n, m, delta, m_max, a, b = map(mp.mpf, (n, m, delta, m_max, a, b))
    dmax = delta - mp.exp(-(1 + b) * (2 * m_max + 1))
    k = 2 * m + 1
    t1 = (k / (a * n) * W(n * mp.exp(4 * (1 + b) * (2 * m_max + 1)) / k)) ** (1 / b)
    t2 = (1 / (a * (n - m)) * W((n - m) * mp.exp(4 * mp.log(1 / dmax)))) ** (1 / b)
    return 2 * t1 + t2


def p(n, m, delta, a, b):
    n, m, delta, a, b = map(mp.mpf, (n, m, delta, a, b))
    k = 2 * m + 1
    return (k / (a * n) * W(n * mp.exp((1 + b) * mp.log(1 / delta)) / k)) ** (1 / b)


def row(kind, value, **kw):
    r = {c: 0 for c in COLUMNS}
    r.update(kw)
    r["kind"] = kind
    r["expected"] = mp.nstr(value, 25, strip_zeros=False)
    return r


def main():
    rows = []
    zs = [mp.mpf(0), mp.e, 2 * mp.e**2] + [mp.mpf(10) ** (k / 2) for k in range(-24, 25)]
    for z in zs:
        rows.append(row("lambert", W(z), z=mp.nstr(z, 20)))

    for n, q, a, b, delta in itertools.product([500, 1000, 5000], [1, 11, 51], [1.0, 2.5], [1.0, 2.0], [1e-3, 0.05]):
        for m in sorted({0, (q - 1) // 4, (q - 1) // 2}):
            rows.append(row("g", g(n, q, m, delta, a, b), n=n, m=m, q=q, delta=delta, a=a, b=b))

    for n, q, a, b in itertools.product([400, 2000], [3, 21, 101], [1.0, 3.0], [1.0, 2.0]):
        for m in sorted({0, (q - 1) // 2}):
            for d1, d2 in [(0.025, 0.025), (1e-4, 0.01)]:
                rows.append(row("f", f(n, m, q, d1, d2, a, b), n=n, m=m, q=q, delta=d1, delta2=d2, a=a, b=b))

    # Monotonicity sweep in m at fixed (n, delta, a, b, m_max).
    for m in range(0, 201, 5):
        rows.append(row("h", h(500, m, 0.1, 200, 1.0, 2.0), n=500, m=m, delta=0.1, a=1.0, b=2.0, m_max=200))
    for n, a, b, m_max in itertools.product([600, 5000], [1.0, 1e4], [1.0, 3.0], [20, 200]):
        for m in [0, 10, m_max]:
            rows.append(row("h", h(n, m, 0.05, m_max, a, b), n=n, m=m, delta=0.05, a=a, b=b, m_max=m_max))

    for n, a, b, delta in itertools.product([100, 1000, 100000], [1.0, 7.0], [1.0, 2.0], [0.01, 0.3]):
        for m in [0, 5, 40]:
            rows.append(row("p", p(n, m, delta, a, b), n=n, m=m, delta=delta, a=a, b=b))

    out = pathlib.Path(__file__).resolve().parent.parent / "data" / "radii_oracle.csv"
    with out.open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    print(f"wrote {len(rows)} rows to {out}")


if __name__ == "__main__":
    main()
