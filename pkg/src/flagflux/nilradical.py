"""Nilradical Malcev presentations from matrix-unit structure constants.

The nilradical of a type-A parabolic is the span of the complementary
positive root spaces, realized concretely as strictly upper-triangular
matrix units E_ij.  Basis order is summand-then-root order, which makes
every bracket land in a strictly later slot.
"""

from collections import namedtuple

from .exterior import Form, MalcevPresentation, ce_diff
from .rootsys import (
    UnsupportedSeriesError,
    build_root_system,
    isotropy_summands,
)

__all__ = [
    "WeylConstants",
    "JacobiReport",
    "nilradical_presentation",
    "jacobi_check",
    "legend_to_json",
]

JacobiReport = namedtuple("JacobiReport", ["ok", "failing_index", "residual"])


class WeylConstants:
    """Bracket table on the matrix units E_ij, i < j <= rank+1.

    [E_ij, E_kl] = delta_jk E_il - delta_li E_kj; for strictly
    upper-triangular arguments at most one delta can fire.
    """

    def __init__(self, rank):
        self.rank = rank
        self.size = rank + 1

    def units(self):
        return [
            (i, j)
            for i in range(1, self.size + 1)
            for j in range(i + 1, self.size + 1)
        ]

    def bracket(self, a, b):
        """[E_a, E_b] as a list of ((i, j), coefficient) pairs."""
        (i, j), (k, l) = a, b
        out = []
        if j == k:
            out.append(((i, l), 1))
        if l == i:
            out.append(((k, j), -1))
        return out


def nilradical_presentation(spec):
    """Malcev presentation of the nilradical plus its basis legend.

    Returns (presentation, legend) with legend[k-1] the Root spanned by
    the k-th basis vector.

    Examples::

        >>> from .rootsys import FlagSpec
        >>> from .exterior import print_malcev
        >>> p, _ = nilradical_presentation(FlagSpec("A", 2))
        >>> print_malcev(p)
        '(0,0,-e^{12})'
    """
    if spec.series != "A":
        raise UnsupportedSeriesError("only series A is supported, got %r" % spec.series)
    rs = build_root_system(spec.series, spec.rank)
    summands = isotropy_summands(rs, spec.theta)
    legend = [r for s in summands for r in s.roots]
    slot_of = {r.matrix_unit(): k for k, r in enumerate(legend, start=1)}

    weyl = WeylConstants(spec.rank)
    constants = {}
    units = [r.matrix_unit() for r in legend]
    for a in range(1, len(units) + 1):
        for b in range(a + 1, len(units) + 1):
            for unit, c in weyl.bracket(units[a - 1], units[b - 1]):
                # sums of complementary roots stay complementary
                k = slot_of[unit]
                constants[(a, b, k)] = constants.get((a, b, k), 0) + c

    diffs = [dict() for _ in legend]
    for (a, b, k), c in constants.items():
        if c:
            diffs[k - 1][(a, b)] = -c
    return MalcevPresentation([Form(2, d) for d in diffs]), legend


def jacobi_check(p):
    """d after d on every basis covector; reports the first failure."""
    for k in range(1, p.dim + 1):
        residual = ce_diff(p, p.differentials[k - 1])
        if not residual.is_zero():
            return JacobiReport(False, k, residual)
    return JacobiReport(True, None, None)


def legend_to_json(legend):
    return [
        {"slot": k, "root": list(r.coeffs), "matrix_unit": list(r.matrix_unit())}
        for k, r in enumerate(legend, start=1)
    ]
