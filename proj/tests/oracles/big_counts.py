#!/usr/bin/env python3
"""Independent brute-force oracle for the big-integer representation counts.

Uses gmpy2.is_prime (Miller-Rabin with 25 bases) and enumerates the terms in a
different loop order than the C++ counter (outer loop over the second term).
Prints one line per target: form offset r s.
"""
import math
import sys

import gmpy2


def pell(bound, min_index=0):
    out = [0, 1]
    while out[-1] <= bound:
        out.append(2 * out[-1] + out[-2])
    return [v for i, v in enumerate(out) if v <= bound and i >= min_index]


def fib(bound):
    out = [0, 1]
    while out[-1] <= bound:
        out.append(out[-1] + out[-2])
    return [(i, v) for i, v in enumerate(out) if v <= bound]


def count_p2p(n, min_index=1):
    ps = pell(n, min_index)
    r = 0
    for t in ps:
        for s in ps:
            rest = n - s - 2 * t
            if rest >= 2 and gmpy2.is_prime(rest):
                r += 1
    return r


def count_ff1(n):
    fs = [(i, v) for i, v in fib(n) if i >= 2]
    r = 0
    for _, ft in fs:
        for _, fs_ in fs:
            if fs_ % 2 == 0 and ft % 2 == 0:
                continue
            rest = n - fs_ - ft
            if rest >= 3 and rest % 2 == 1 and gmpy2.is_prime(rest):
                r += 1
    return r


def main():
    targets = [
        ("pP2P_count", 10**50, 10045, count_p2p),
        ("pP2P_count", 10**200, 33, count_p2p),
        ("pP2P_count", 10**200, 18, count_p2p),
        ("pP2P_count0", 10**50, 10045, lambda n: count_p2p(n, 0)),
        ("pP2P_count0", 10**200, 33, lambda n: count_p2p(n, 0)),
        ("pP2P_count0", 10**200, 18, lambda n: count_p2p(n, 0)),
        ("pFF1_count", 10**50, 39030, count_ff1),
        ("pFF1_count", 10**50, 5864, count_ff1),
    ]
    if len(sys.argv) > 1:
        targets = [t for t in targets if t[0] == sys.argv[1]]
    for name, base, off, fn in targets:
        n = base + off
        r = fn(n)
        print(name, off, r, "%.6f" % (r / math.log(n)), flush=True)


if __name__ == "__main__":
    main()
