"""Exact rational linear programming by two-phase simplex.

Small and deterministic rather than fast: dense Fraction tableaus, Bland's
least-index rule for anti-cycling, and a Farkas certificate verified before
returning.  Problem sizes here stay tiny (a few dozen rows).
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import Infeasible, Unbounded


@dataclass(frozen=True)
class LPSolution:
    """An exact optimum with its optimality certificate.

    x maximizes value = c.x over the rows; multipliers u >= 0 are supported
    on active rows and satisfy sum(u_i * a_i) = -c, which proves optimality:
    c.x = -sum(u_i a_i.x) <= sum(u_i const_i) = c.x* for every feasible x.
    """

    x: tuple
    value: Fraction
    multipliers: tuple


def maximize(c, rows) -> LPSolution:
    """Maximize c.x subject to coef.x + const >= 0 for each row.

    Variables are free.  Raises Infeasible when the rows exclude every x,
    Unbounded when the objective grows without limit.
    """
    c = [Fraction(v) for v in c]
    rows = [([Fraction(v) for v in coef], Fraction(const))
            for coef, const in rows]
    k = len(c)
    m = len(rows)
    assert all(len(coef) == k for coef, _ in rows)

    # columns: x+ (k), x- (k), slack (m), artificial (as needed), rhs last.
    # row i encodes -a.x <= const, i.e. -a.(x+ - x-) + s_i = const.
    ncols = 2 * k + m
    tab = []
    art_of = {}
    for i, (coef, const) in enumerate(rows):
        row = ([-v for v in coef] + [v for v in coef]
               + [Fraction(0)] * m + [const])
        row[2 * k + i] = Fraction(1)
        if const < 0:
            row = [-v for v in row]
            art_of[i] = ncols + len(art_of)
        tab.append(row)
    nart = len(art_of)
    for i, row in enumerate(tab):
        row[-1:-1] = [Fraction(0)] * nart
        if i in art_of:
            row[art_of[i]] = Fraction(1)
    width = ncols + nart

    basis = [art_of.get(i, 2 * k + i) for i in range(m)]

    def objective_row(cost):
        # reduced costs against the current basis; the rhs cell carries
        # minus the objective value of the basic solution
        obj = list(cost) + [Fraction(0)]
        for r, b in enumerate(basis):
            if obj[b] != 0:
                f = obj[b]
                obj = [v - f * w for v, w in zip(obj, tab[r])]
        return obj

    def pivot(r, col):
        piv = tab[r][col]
        tab[r] = [v / piv for v in tab[r]]
        for i in range(m):
            if i != r and tab[i][col] != 0:
                f = tab[i][col]
                tab[i] = [v - f * w for v, w in zip(tab[i], tab[r])]
        basis[r] = col

    def run(obj, banned):
        while True:
            enter = next((j for j in range(width)
                          if j not in banned and obj[j] > 0), None)
            if enter is None:
                return obj
            best = None
            for i in range(m):
                if tab[i][enter] > 0:
                    ratio = tab[i][-1] / tab[i][enter]
                    if (best is None or ratio < best[0]
                            or (ratio == best[0] and basis[i] < basis[best[1]])):
                        best = (ratio, i)
            if best is None:
                raise Unbounded("objective increases without limit")
            r = best[1]
            f = obj[enter] / tab[r][enter]
            obj = [v - f * w for v, w in zip(obj, tab[r])]
            pivot(r, enter)

    if nart:
        phase1 = [Fraction(0)] * width
        for col in art_of.values():
            phase1[col] = Fraction(-1)
        obj = run(objective_row(phase1), banned=frozenset())
        if obj[-1] > 0:
            raise Infeasible("empty polytope")
        # drive leftover zero-value artificials out of the basis
        for r in range(m):
            if basis[r] >= ncols:
                col = next((j for j in range(ncols) if tab[r][j] != 0), None)
                if col is not None:
                    pivot(r, col)

    cost = [v for v in c] + [-v for v in c] + [Fraction(0)] * m
    cost += [Fraction(0)] * nart
    banned = frozenset(range(ncols, width))
    obj = run(objective_row(cost), banned)

    xplus = [Fraction(0)] * k
    xminus = [Fraction(0)] * k
    for r, b in enumerate(basis):
        if b < k:
            xplus[b] = tab[r][-1]
        elif b < 2 * k:
            xminus[b - k] = tab[r][-1]
    x = tuple(p - q for p, q in zip(xplus, xminus))

    mult = []
    for i in range(m):
        u = obj[2 * k + i]
        mult.append(u if u >= 0 else -u)
    value = sum(v * xi for v, xi in zip(c, x))

    # exact certificate check: u >= 0 on active rows only, sum u_i a_i = -c
    for ui, (coef, const) in zip(mult, rows):
        slack = sum(v * xi for v, xi in zip(coef, x)) + const
        assert slack >= 0, "optimizer infeasible"
        assert ui == 0 or slack == 0, "multiplier on a slack row"
    for j in range(k):
        total = sum(ui * coef[j] for ui, (coef, _) in zip(mult, rows))
        assert total == -c[j], "certificate does not balance the objective"
    return LPSolution(x, value, tuple(mult))
