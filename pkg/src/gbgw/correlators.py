"""Connected correlators of the generalized BGW model from the Virasoro recursion.

With the largest part 2k+1 distinguished, the recursion reads

    <p_{2k+1} p_mu>_g = 1/2 sum_{a+b=2k, a,b odd>0} ( <p_a p_b p_mu>_{g-1}
                          + sum_{g1+g2=g, I|J=mu} <p_a p_I>_{g1} <p_b p_J>_{g2} )
                        + sum_i mu_i <p_{mu_i+2k} p_{mu minus i}>_g,

seeded by <p_1>_0 = -s/2, <p_1>_1 = 1/8, <p_1>_g = 0 for g >= 2, with
genus -1 correlators zero.  Every right-hand key has strictly smaller
weight, which is asserted.  Values are monomials c * s^e with
e = (|mu| - n + 2 - 2g)/2 (zero when that exponent would be negative).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb

from .poly import ParamPoly, ONE, ZERO, S
from .series import LaurentSeries, SparseTensor

__all__ = [
    "check_odd_partition",
    "correlator",
    "correlator_monomial",
    "one_point_closed",
    "wgn",
    "w01_closed",
    "w02_closed",
    "free_energy",
    "verify_special_deformation",
    "odd_partitions",
]

_cache = {}
MINUS_HALF_S = ParamPoly.monomial(Fraction(-1, 2), es=1)
EIGHTH = ParamPoly.const(Fraction(1, 8))


def check_odd_partition(parts):
    parts = tuple(sorted(parts, reverse=True))
    for p in parts:
        if p <= 0:
            raise ValueError(f"parts must be positive: {parts}")
        if p % 2 == 0:
            raise ValueError(f"parts must be odd: {parts}")
    return parts


def correlator(g, parts):
    """<p_{mu_1} ... p_{mu_n}>_g as an exact polynomial (monomial) in s."""
    parts = check_odd_partition(parts)
    if g < 0:
        return ZERO
    if not parts:
        raise ValueError("empty correlator is not defined")
    return _corr(g, parts)


def _corr(g, parts):
    key = (g, parts)
    out = _cache.get(key)
    if out is not None:
        return out
    if parts == (1,):
        out = MINUS_HALF_S if g == 0 else (EIGHTH if g == 1 else ZERO)
        _cache[key] = out
        return out
    out = _expand(g, parts, 0)
    _cache[key] = out
    return out


def _expand(g, parts, pick):
    """One recursion step distinguishing the part at position ``pick`` of the
    descending-sorted tuple.  Every sub-key must drop in weight."""
    big = parts[pick]
    rest = parts[:pick] + parts[pick + 1:]
    k = (big - 1) // 2
    weight = sum(parts)
    total = ZERO

    if k > 0:
        half = Fraction(1, 2)
        for a in range(1, 2 * k, 2):
            b = 2 * k - a
            merged = tuple(sorted(rest + (a, b), reverse=True))
            assert sum(merged) < weight
            if g >= 1:
                total = total + half * _corr(g - 1, merged)
            for g1 in range(g + 1):
                g2 = g - g1
                for r in range(len(rest) + 1):
                    for I in combinations(range(len(rest)), r):
                        Iset = set(I)
                        left = tuple(sorted((a,) + tuple(rest[i] for i in I), reverse=True))
                        right = tuple(sorted((b,) + tuple(rest[i] for i in range(len(rest)) if i not in Iset), reverse=True))
                        assert sum(left) < weight and sum(right) < weight
                        cl = _corr(g1, left)
                        if cl:
                            cr = _corr(g2, right)
                            if cr:
                                total = total + half * (cl * cr)
    for i in range(len(rest)):
        merged = tuple(sorted(rest[:i] + (rest[i] + 2 * k,) + rest[i + 1:], reverse=True))
        assert sum(merged) < weight
        c = _corr(g, merged)
        if c:
            total = total + rest[i] * c
    return total


def correlator_expand_distinguishing(g, parts, which="smallest"):
    """Recompute a correlator distinguishing a non-default part (for the
    distinguished-part-independence check); sub-calls hit the main memo."""
    parts = check_odd_partition(parts)
    if parts == (1,):
        return _corr(g, parts)
    pick = len(parts) - 1 if which == "smallest" else 0
    return _expand(g, parts, pick)


def correlator_monomial(g, parts):
    """(exponent, coefficient) of the single s-monomial, or (None, 0) if zero."""
    value = correlator(g, parts)
    if not value:
        return None, Fraction(0)
    terms = value.terms
    if len(terms) != 1:
        raise AssertionError(f"correlator is not an s-monomial: {value}")
    ((eh, eu, es, ev), c), = terms.items()
    if eh or eu or ev:
        raise AssertionError(f"correlator involves generators other than s: {value}")
    return es, c


def one_point_closed(n):
    """Closed form <p_{2n+1}>_0 = (-1)^(n+1)/2^(2n+1) * C(2n,n)/(n+1) * s^(n+1)."""
    c = Fraction((-1) ** (n + 1), 2 ** (2 * n + 1)) * Fraction(comb(2 * n, n), n + 1)
    return ParamPoly.monomial(c, es=n + 1)


def odd_partitions(max_weight, max_len):
    """Descending tuples of odd positive parts with the given bounds."""
    out = []

    def extend(prefix, remaining, cap):
        if prefix:
            out.append(prefix)
        if len(prefix) == max_len:
            return
        top = min(remaining, cap)
        if top % 2 == 0:
            top -= 1
        for p in range(top, 0, -2):
            extend(prefix + (p,), remaining - p, p)

    extend((), max_weight, max_weight)
    out.sort(key=lambda mu: (sum(mu), len(mu), mu))
    return out


def wgn(g, n, max_weight):
    """n-point coefficient tensor: value at (-mu_1-1, ..., -mu_n-1) is
    <p_mu>_g, for all odd mu with |mu| <= max_weight (all orderings)."""
    from itertools import permutations

    t = SparseTensor(n)
    for mu in odd_partitions(max_weight, n):
        if len(mu) != n:
            continue
        value = correlator(g, mu)
        if not value:
            continue
        for perm in set(permutations(mu)):
            t.coeffs[tuple(-m - 1 for m in perm)] = value
    return t


def w01_closed(depth):
    """W_{0,1}(x) = 1 - sqrt(1 + s/x^2), exact through x^-depth."""
    inner = LaurentSeries("x", {0: ONE, -2: S}, -depth, 0)
    return LaurentSeries.one("x", -depth) - inner.sqrt()


def w02_closed(depth):
    """W_{0,2} from its closed form, as a 2-variable coefficient dict.

    numerator = (x^2 + y^2 + 2 s)/sqrt((1+s/x^2)(1+s/y^2)) - x^2 - y^2 is
    divided exactly by (x^2 - y^2)^2; the division is long division in x
    with an explicit no-remainder check (no stray positive powers and exact
    reconstruction).  Returns {(ex, ey): coeff} with entries down to
    exponent -depth in each slot.
    """
    d = depth + 6
    inv_sqrt = LaurentSeries("x", {0: ONE, -2: S}, -d - 4, 0).sqrt().inverse()
    num = {}
    for i, cx in inv_sqrt.coeffs.items():
        for j, cy in inv_sqrt.coeffs.items():
            prod = cx * cy
            _acc2(num, (i + 2, j), prod)
            _acc2(num, (i, j + 2), prod)
            _acc2(num, (i, j), 2 * S * prod)
    _acc2(num, (2, 0), -ONE)
    _acc2(num, (0, 2), -ONE)
    # divide by x^4 - 2 x^2 y^2 + y^4:  q[i,j] = n[i+4,j] + 2 q[i+2,j-2] - q[i+4,j-4]
    q = {}
    for i in range(-2, -d - 1, -2):
        for j in range(0, -d - 1, -2):
            val = num.get((i + 4, j), ZERO) + 2 * q.get((i + 2, j - 2), ZERO) - q.get((i + 4, j - 4), ZERO)
            if val:
                q[(i, j)] = val
    for (i, j), val in list(num.items()):
        if i > 2 or j > 2:
            raise ArithmeticError("unexpected numerator support")
    # remainder check: reconstruct the numerator on the sound region
    for i in range(2, -depth - 1, -2):
        for j in range(0, -depth - 1, -2):
            recon = q.get((i - 4, j), ZERO) - 2 * q.get((i - 2, j - 2), ZERO) + q.get((i, j - 4), ZERO)
            if recon != num.get((i, j), ZERO):
                raise ArithmeticError("nonzero remainder dividing by (x^2-y^2)^2")
    return {k: v for k, v in q.items() if k[0] >= -depth and k[1] >= -depth}


def _acc2(d, key, value):
    r = d.get(key)
    r = value if r is None else r + value
    if r:
        d[key] = r
    else:
        d.pop(key, None)


def free_energy(g, degree, max_weight):
    """Truncated genus-g free energy: {mu: coefficient of prod t_{mu_i}}.

    The coefficient of the monomial for a partition mu with part
    multiplicities m_j is <p_mu>_g / prod_j m_j!.
    """
    from math import factorial

    out = {}
    for mu in odd_partitions(max_weight, degree):
        value = correlator(g, mu)
        if not value:
            continue
        aut = 1
        for p in set(mu):
            aut *= factorial(mu.count(p))
        out[mu] = Fraction(1, aut) * value
    return out


def _dF0_series(nu, xlo):
    """d F_0 / d t : the series sum_n <p_{2n+1} p_nu>_0 / aut(nu) x^{-2n-2},
    for one t-monomial nu, down to exponent xlo."""
    from math import factorial

    aut = 1
    for p in set(nu):
        aut *= factorial(nu.count(p))
    coeffs = {}
    e = -2
    while e >= xlo:
        m = -e - 1
        c = correlator(0, tuple(sorted(nu + (m,), reverse=True)))
        if c:
            coeffs[e] = Fraction(1, aut) * c
        e -= 2
    return LaurentSeries("x", coeffs, xlo, 0)


def verify_special_deformation(degree=4, min_order=-20, part_cap=13):
    """Check that all strictly negative x-powers of y^2 equal s * x^-2.

    y = sum_n (2n+1)(t_{2n+1} - delta_{n,0}) x^{2n}
        + sum_n dF0/dt_{2n+1} x^{-2n-2},
    assembled per t-monomial with parts <= part_cap; F0 enters through
    correlators with at most ``degree`` points, and the identity is checked
    for every monomial of total degree <= degree - 1 down to x^min_order.

    Returns (ok, failures) where failures lists (monomial, exponent) pairs.
    """
    xlo = min_order - part_cap - 1
    parts = [p for p in range(1, part_cap + 1, 2)]

    y = {}

    def add(nu, series):
        cur = y.get(nu)
        y[nu] = series if cur is None else cur + series

    add((), LaurentSeries.monomial("x", 0, ParamPoly.const(-1), xlo))
    for p in parts:
        add((p,), LaurentSeries.monomial("x", p - 1, ParamPoly.const(p), xlo))
    monomials = [()] + [mu for mu in odd_partitions((degree - 1) * part_cap, degree - 1)
                        if all(p <= part_cap for p in mu)]
    for nu in monomials:
        series = _dF0_series(nu, xlo)
        if not series.is_zero():
            add(nu, series)

    y2 = {}
    items = list(y.items())
    for idx, (nu1, s1) in enumerate(items):
        for nu2, s2 in items[idx:]:
            nu = tuple(sorted(nu1 + nu2, reverse=True))
            if len(nu) > degree - 1 or any(p > part_cap for p in nu):
                continue
            prod = s1 * s2
            if nu1 != nu2:
                prod = prod + prod
            cur = y2.get(nu)
            y2[nu] = prod if cur is None else cur + prod

    failures = []
    target = ParamPoly.gen("s")
    for nu, series in sorted(y2.items()):
        for e in range(-1, min_order - 1, -1):
            got = series.coeff(e)
            want = target if (nu == () and e == -2) else 0
            if got != want:
                failures.append((nu, e, got))
    return not failures, failures
