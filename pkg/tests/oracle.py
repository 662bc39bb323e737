"""
Arbitrary-precision reference evaluation of the Hall kernel and the ALB sums.

Independent of albscreen: plain decimal arithmetic over the defining
formulas. Two leave-one-out normalizations are available:

    "count"  within-class sums / ((class count - 1) b), pooled / ((N - 1) b)
    "total"  within-class sums / (class count * b),     pooled / (N b)

albscreen uses "count".
"""

from decimal import Decimal, getcontext
from typing import Sequence

getcontext().prec = 50

PI = Decimal("3.14159265358979323846264338327950288419716939937510")
E = Decimal(1).exp()
PHI_ONE = Decimal("0.84134474606854294858523254563203792247")
HALL_C = 1 / ((8 * PI * E).sqrt() * PHI_ONE)


def hall(z) -> Decimal:
    if not isinstance(z, Decimal):
        z = Decimal(repr(float(z)))
    z = abs(z)
    lz = (1 + z).ln()
    return HALL_C * (-(lz * lz) / 2).exp()


def alb(values: Sequence[float], labels: Sequence[int], b: float, normalization: str = "count") -> Decimal:
    xs = [Decimal(repr(float(v))) for v in values]
    bw = Decimal(repr(float(b)))
    labels = [int(v) for v in labels]
    total = len(xs)
    counts = {0: labels.count(0), 1: labels.count(1)}
    acc = Decimal(0)
    for i, xi in enumerate(xs):
        pooled = Decimal(0)
        within = Decimal(0)
        for j, xj in enumerate(xs):
            if i == j:
                continue
            k = hall((xi - xj) / bw)
            pooled += k
            if labels[j] == labels[i]:
                within += k
        own = counts[labels[i]]
        if normalization == "count":
            pooled /= (total - 1) * bw
            within /= (own - 1) * bw
        else:
            pooled /= total * bw
            within /= own * bw
        acc += (within / pooled).ln()
    return acc / total
