"""Connected n-point functions from the affine-coordinate cycle-sum formula.

For n >= 1 the correlators of log tau(t/2) are generated by

    sum <...> x_1^{-i_1} ... x_n^{-i_n}
        = -delta_{n,2} * sum_{m odd} (m/2) x_1^-m x_2^m
          - 2^(n-1) * [ sum_{cycles} prod_i xi(x_{c(i)}, -x_{c(i+1)}) ]_odd,

with xi drawn from the generating series A (1-point case) or At (the
tail-corrected series), sign-twisted by which slot of At carries which
variable.  The positive powers entering through the tail of At cancel in
the total; truncation windows make this an approximation whose soundness
is established by the recompute-at-a-larger-window stability protocol.

The same correlators are reachable through the Virasoro pipeline; the
exact bridge for an odd partition mu with n parts is

    2^-n * h^n * sum_g h^(2g-2) <p_mu>_g |_{s -> h^2 u},

a finite sum by homogeneity, with total h-degree |mu|.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .affine import affine_coeff, gen_A
from .correlators import check_odd_partition, correlator, correlator_monomial, odd_partitions
from .poly import ParamPoly, ZERO
from .series import SparseTensor

__all__ = [
    "correction_term",
    "cycles",
    "one_point_affine",
    "npoint_affine",
    "bridge",
    "crosscheck_affine_vs_virasoro",
    "WindowInstabilityError",
]


class WindowInstabilityError(ArithmeticError):
    """Recomputing with a larger window changed a target coefficient."""


def correction_term(max_order):
    """The n=2 correction sum_{m odd} (m/2) x1^-m x2^m as a sparse tensor."""
    t = SparseTensor(2)
    for m in range(1, max_order + 1, 2):
        t.coeffs[(-m, m)] = ParamPoly.const(Fraction(m, 2))
    return t


def cycles(n):
    """The (n-1)! cyclic orders on {1..n}, each starting at 1, deterministic."""
    return [(1,) + rest for rest in permutations(range(2, n + 1))]


def one_point_affine(max_weight, u_value=None):
    """One-point series A(-x, x) from the direct double sum.

    Computed as the odd projection -[A(x,-x)]_odd (equivalently A(-x,x);
    the two agree by antisymmetry of the coordinate table, which is
    asserted here).  Returns {exponent: value} for odd exponents.
    """
    out = {}
    # A(x,-x) = sum_{n,m>0} (-1)^(n+1) a_{n,m} x^(-n-m) - sum_{n odd} a_{0,n} x^-n
    for mu in range(1, max_weight + 1, 2):
        acc = ZERO
        for n in range(1, mu):
            m = mu - n
            c = affine_coeff(n, m)
            if c:
                acc = acc + (-c if n % 2 == 0 else c)
        acc = acc - affine_coeff(0, mu)
        acc = -acc  # the -[.]_odd projection
        # cross-check against the A(-x, x) arrangement
        other = affine_coeff(0, mu)
        for n in range(1, mu):
            m = mu - n
            c = affine_coeff(n, m)
            if c:
                other = other + (-c if m % 2 == 0 else c)
        assert acc == other, "one-point forms disagree: coordinate table not antisymmetric"
        if u_value is not None:
            acc = acc.subs_u(u_value)
        if acc:
            out[-mu] = acc
    return out


def _xi_factor(p, q, at):
    """Entries of xi(x_p, -x_q) as {(e_p, e_q): coeff}.

    p < q: At(x_p, -x_q); p > q: -At(-x_q, x_p) with the slots swapped.
    """
    out = {}
    if p < q:
        for (i, j), c in at.items():
            out[(i, j)] = -c if j % 2 else c
    else:
        for (i, j), c in at.items():
            v = -c if i % 2 == 0 else c  # -(-1)^i c
            out[(j, i)] = v
    return out


def _contract_cycle(order, at, lo, hi, budget):
    """Multiply the xi factors along one cycle under an exact weight budget.

    Every entry of the generating series is h-homogeneous of degree
    -(i + j) >= 0, so the degree of a partial product is minus the sum of
    its exponents and can only grow as further factors are multiplied in.
    Partial states whose degree exceeds ``budget`` can therefore never
    reach an output key of degree <= budget and are dropped exactly.

    Finalized exponents keep only odd values within [-budget, budget] (the
    odd projection commutes with summation, and tail-artifact cancellation
    at a key is complete once the window covers max |e_i|, which the caller
    guarantees for that band); open exponents stay within [lo, hi].
    Returns {tuple of exponents indexed by variable 1..n: coeff}.
    """
    n = len(order)
    factors = []
    for t in range(n):
        p = order[t]
        q = order[(t + 1) % n]
        factors.append(_xi_factor(p, q, at))

    # state: {(e_first_open, e_cur_open, finals...): coeff}; finals are the
    # exponents of order[1..t-1] in cycle order.
    state = {}
    for (e1, e2), c in factors[0].items():
        if -(e1 + e2) <= budget:
            state[(e1, e2)] = c
    for t in range(1, n - 1):
        nxt = {}
        fac = factors[t]
        for key, c in state.items():
            efirst, ecur = key[0], key[1]
            finals = key[2:]
            base = sum(key)
            for (i, j), d in fac.items():
                if -(base + i + j) > budget:
                    continue
                efin = ecur + i
                if efin % 2 == 0 or efin < -budget or efin > budget:
                    continue
                if j < lo or j > hi:
                    continue
                newkey = (efirst, j) + finals + (efin,)
                prod = c * d
                r = nxt.get(newkey)
                r = prod if r is None else r + prod
                if r:
                    nxt[newkey] = r
                else:
                    del nxt[newkey]
        state = nxt
    # last factor closes the cycle: contributes to order[n-1] and order[0]
    result = {}
    fac = factors[n - 1]
    for key, c in state.items():
        efirst, ecur = key[0], key[1]
        finals = key[2:]
        base = sum(key)
        for (i, j), d in fac.items():
            if -(base + i + j) > budget:
                continue
            elast = ecur + i
            e1 = efirst + j
            if elast % 2 == 0 or e1 % 2 == 0:
                continue
            if not (-budget <= elast <= budget and -budget <= e1 <= budget):
                continue
            newkey = (e1,) + finals + (elast,)
            prod = c * d
            r = result.get(newkey)
            r = prod if r is None else r + prod
            if r:
                result[newkey] = r
            else:
                del result[newkey]
    # reindex from cycle positions to variables 1..n
    out = {}
    for key, c in result.items():
        exps = [0] * n
        for pos, var in enumerate(order):
            exps[var - 1] = key[pos]
        out[tuple(exps)] = c
    return out


def _npoint_once(n, max_weight, tail_hi, u_value=None):
    if n == 1:
        return SparseTensor(1, {(e,): c for e, c in one_point_affine(max_weight, u_value).items()})
    lo = -(max_weight + tail_hi)
    _, At = gen_A("direct", lo, lo, tail_hi)
    # entries of degree beyond the weight budget can never contribute
    at = {k: c for k, c in At.coeffs.items() if -(k[0] + k[1]) <= max_weight}
    if u_value is not None:
        at = {k: v for k, v in ((k, c.subs_u(u_value)) for k, c in at.items()) if v}
    total = {}
    for order in cycles(n):
        part = _contract_cycle(order, at, lo, tail_hi, max_weight)
        for key, c in part.items():
            r = total.get(key)
            r = c if r is None else r + c
            if r:
                total[key] = r
            else:
                del total[key]
    factor = -(2 ** (n - 1))
    out = SparseTensor(n)
    for key, c in total.items():
        out.coeffs[key] = factor * c
    if n == 2:
        # off-diagonal tail artifacts self-cancel within the window; the
        # diagonal band (-m, +m) survives and is exactly the correction term
        # (the positive slot always carries the larger variable index, x_2)
        for key, c in correction_term(max_weight).coeffs.items():
            out.add_to(key, -c)
    return out


def npoint_affine(n, max_weight, tail_hi=None, u_value=None, stability=True):
    """Cycle-sum n-point tensor with negative odd exponents up to |mu| <= max_weight.

    The window protocol recomputes at tail_hi + 4 and demands identical
    target coefficients (and that every positive-exponent artifact has
    cancelled); WindowInstabilityError reports violations.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if tail_hi is None:
        # tail artifacts inside the certified band cancel once the window
        # covers the wandering range, which grows with the cycle length;
        # 2W is enough for n = 3 empirically, and the stability pass guards it
        tail_hi = max_weight if n <= 2 else 2 * max_weight + 1
    runs = [_npoint_once(n, max_weight, tail_hi, u_value)]
    if stability and n >= 2:
        runs.append(_npoint_once(n, max_weight, tail_hi + 4, u_value))

    def targets(t):
        kept = SparseTensor(n)
        for key, c in t.coeffs.items():
            if all(e <= -1 for e in key):
                kept.coeffs[key] = c
        return kept

    cleaned = [targets(t) for t in runs]
    if len(cleaned) == 2 and cleaned[0] != cleaned[1]:
        raise WindowInstabilityError("target coefficients changed when widening the window")
    # tail artifacts with a positive exponent must have cancelled; the weight
    # pruning already confines all surviving keys to the trusted band
    for key, c in runs[-1].coeffs.items():
        if any(e >= 1 for e in key):
            raise WindowInstabilityError(f"uncancelled positive exponent at {key}: {c!r}")
    return cleaned[0]


def bridge(mu, u_value=None):
    """Exact Virasoro-side value of the cycle-sum coefficient for mu."""
    mu = check_odd_partition(mu)
    n = len(mu)
    w = sum(mu)
    out = ZERO
    for g in range(0, (w - n + 2) // 2 + 1):
        e, c = correlator_monomial(g, mu)
        if e is None:
            continue
        hexp = n + 2 * g - 2 + 2 * e
        assert hexp == w, "h-degree of a bridged term must equal |mu|"
        out = out + ParamPoly.monomial(c * Fraction(1, 2 ** n), eh=hexp, eu=e)
    if u_value is not None:
        out = out.subs_u(u_value)
    return out


def crosscheck_affine_vs_virasoro(n_max, weight_max, one_point_weight=None, u_value=None):
    """Compare cycle-sum coefficients against bridged correlators.

    Returns (ok, mismatches, checked) where mismatches lists
    (mu, affine value, bridge value).
    """
    mismatches = []
    checked = 0
    for n in range(1, n_max + 1):
        w = weight_max if (n > 1 or one_point_weight is None) else one_point_weight
        tensor = npoint_affine(n, w, u_value=u_value)
        for mu in odd_partitions(w, n):
            if len(mu) != n:
                continue
            got = tensor.get(tuple(-m for m in mu))
            want = bridge(mu, u_value=u_value)
            checked += 1
            if got != want:
                mismatches.append((mu, got, want))
    return not mismatches, mismatches, checked
