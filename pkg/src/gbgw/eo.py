"""Topological recursion on the curve x^2 y^2 = x^2 + S^2.

With the parametrization x = sqrt(z^2 - S^2), y = z/sqrt(z^2 - S^2) the
branch point sits at z = 0, the involution is z -> -z, and the recursion
kernel expands as

    K(z0, z) = (z^2 - s) / (2 z (z0^2 - z^2)) dz0/dz
             = -1/2 sum_{m>=0} (s z^(2m-1) - z^(2m+1)) / z0^(2m+2).

Stable invariants are finite:  omega_{g,n} = sum W[k] prod z_i^(-2k_i-2)
(times dz's) with finitely many nonzero W[k] in Q[s].  The recursion is
evaluated in coefficient space: for the bracket

    c(z) = omega_{g-1,n+2}(z,-z,·) + sum' omega(z,·) omega(-z,·)

(raw coefficient substitution; the sign of d(-z) and the -1/2 of the
kernel cancel), the new entry at z0^(-2m-2) is (1/2)(s c_{-2m} - c_{-2m-2}).

The type-B variant replaces the unstable two-point part by its z -> -z
symmetrization, whose diagonal value is singular; its (1,1) entry is
therefore seeded, not recursed.  Both variants must produce identical
tables, which compare_kernels checks.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .correlators import correlator
from .poly import ParamPoly, ONE, S, ZERO, double_factorial, binomial
from .series import SparseTensor

__all__ = [
    "kernel_series",
    "omega",
    "omega_closed_step",
    "omega_support_bound",
    "to_x_coords",
    "from_x_coords",
    "b01_closed",
    "b02_closed",
    "verify_equivalence_theorem",
    "compare_kernels",
    "clear_caches",
]

_omega_cache = {}
_closed_cache = {}

_W11 = {(0,): ParamPoly.const(Fraction(-1, 8)), (1,): ParamPoly.monomial(Fraction(1, 8), es=1)}


def clear_caches():
    _omega_cache.clear()
    _closed_cache.clear()


def kernel_series(kind, max_m):
    """Kernel coefficients {(z0 exponent, z exponent): value} up to z0^(-2*max_m-2).

    Both Bergman kernels integrate to the same kernel; the type-B route is
    computed from its own two-sided primitive and must agree termwise.
    """
    if kind not in ("standard", "typeB"):
        raise ValueError(f"unknown kernel kind {kind!r}")
    out = {}
    for m in range(max_m + 1):
        # numerator of the primitive: standard int_{-z}^{z} B = 2z/(z0^2-z^2);
        # type-B: (1/2)(2z + 2z)/(z0^2-z^2) -- identical by construction.
        out[(-2 * m - 2, 2 * m - 1)] = ParamPoly.monomial(Fraction(-1, 2), es=1)
        out[(-2 * m - 2, 2 * m + 1)] = ParamPoly.const(Fraction(1, 2))
    return out


def _unstable_02(sign, kind):
    """Coefficient stream of omega_{0,2}(sign*z, z_i) near z = 0: yields
    (z exponent, z_i exponent, rational coefficient)."""

    def gen(max_m):
        for m in range(max_m + 1):
            if kind == "typeB" and m % 2:
                continue
            c = Fraction(m + 1)
            if sign < 0 and m % 2:
                c = -c
            yield (m, -m - 2, c)

    return gen


def omega_support_bound(g, n):
    """Upper bound for the z-pole order of a stable entry: poles have order
    at most 6g - 4 + 2n, i.e. indices k <= 3g - 3 + n."""
    return 3 * g - 3 + n


def omega(g, n, kind="standard"):
    """Raw coefficient tensor of omega_{g,n}: value at (k_1..k_n) multiplies
    prod z_i^(-2 k_i - 2)."""
    if 2 * g - 2 + n <= 0 or g < 0 or n < 1:
        raise ValueError(f"({g},{n}) is not stable")
    key = (kind, g, n)
    out = _omega_cache.get(key)
    if out is not None:
        return out
    if (g, n) == (1, 1):
        if kind == "typeB":
            # the symmetrized two-point part is singular on the diagonal,
            # so this entry is seeded with the known invariant
            out = SparseTensor(1, dict(_W11))
        else:
            # bracket is omega_{0,2}(z,-z) = 1/(4 z^2): c_{-2} = 1/4
            t = SparseTensor(1)
            quarter = ParamPoly.const(Fraction(1, 4))
            t.coeffs[(0,)] = Fraction(1, 2) * (-quarter)
            t.coeffs[(1,)] = Fraction(1, 2) * (S * quarter)
            out = t
    else:
        out = _recurse(g, n, kind)
    _omega_cache[key] = out
    return out


def _bracket(g, next_n, kind):
    """Coefficients of the recursion bracket for the entry (g, next_n).

    Returns {(e_z, e_1, ..., e_{next_n - 1}): value} with raw exponents for
    the external variables (e_i = -2k_i - 2 for stable contributions; the
    unstable two-point part contributes arbitrary integers, whose odd part
    never reaches a read position).
    """
    n = next_n - 1
    c = {}

    def acc(key, value):
        r = c.get(key)
        r = value if r is None else r + value
        if r:
            c[key] = r
        else:
            c.pop(key, None)

    # 1. the (g-1, n+2) term evaluated at (z, -z, externals)
    if g >= 1:
        if (g - 1, n + 2) == (0, 2):
            acc((-2,), ParamPoly.const(Fraction(1, 4)))
        elif 2 * (g - 1) - 2 + (n + 2) > 0:
            low = omega(g - 1, n + 2, kind)
            for kk, v in low.coeffs.items():
                a, b = kk[0], kk[1]
                ext = tuple(-2 * k - 2 for k in kk[2:])
                acc((-2 * a - 2 * b - 4,) + ext, v)

    # 2. ordered splittings; each factor is omega_{0,2} with one external
    #    variable, or a stable entry; omega_{0,1} factors are excluded.
    max_depth = 2 * (omega_support_bound(g, n + 1) + 2) + 4
    for g1 in range(g + 1):
        g2 = g - g1
        for mask in range(1 << n):
            I = [i for i in range(n) if mask >> i & 1]
            J = [i for i in range(n) if not mask >> i & 1]
            if (g1 == 0 and not I) or (g2 == 0 and not J):
                continue  # omega_{0,1} factors are excluded
            f1 = _factor(g1, I, +1, kind, max_depth)
            f2 = _factor(g2, J, -1, kind, max_depth)
            for (ez1, ext1), v1 in f1:
                for (ez2, ext2), v2 in f2:
                    ext = [0] * n
                    for i, e in ext1:
                        ext[i] = e
                    for i, e in ext2:
                        ext[i] = e
                    acc((ez1 + ez2,) + tuple(ext), v1 * v2)
    return c


def _factor(gf, idxs, sign, kind, max_depth):
    """Entries of omega_{gf, len(idxs)+1}(sign*z, externals) as a list of
    ((z exponent, ((slot, ext exponent), ...)), value); None if excluded."""
    nf = len(idxs)
    assert not (gf == 0 and nf == 0), "omega_{0,1} must be excluded by the caller"
    if gf == 0 and nf == 1:
        i = idxs[0]
        out = []
        for (m, ei, q) in _unstable_02(sign, kind)(max_depth):
            out.append(((m, ((i, ei),)), ParamPoly.const(q)))
        return out
    t = omega(gf, nf + 1, kind)
    out = []
    for kk, v in t.coeffs.items():
        ez = -2 * kk[0] - 2
        ext = tuple((i, -2 * k - 2) for i, k in zip(idxs, kk[1:]))
        out.append(((ez, ext), v))
    return out


def _recurse(g, next_n, kind):
    n = next_n - 1
    c = _bracket(g, next_n, kind)
    bound = omega_support_bound(g, next_n)
    ext_keys = {k[1:] for k in c}
    ext_keys = [e for e in ext_keys if not any(x % 2 or x > -2 for x in e)]
    t = SparseTensor(next_n)
    for m in range(bound + 3 + 1):
        for ext_key in ext_keys:
            v1 = c.get((-2 * m,) + ext_key, ZERO)
            v2 = c.get((-2 * m - 2,) + ext_key, ZERO)
            val = Fraction(1, 2) * (S * v1 - v2)
            if val:
                kk = (m,) + tuple((-e - 2) // 2 for e in ext_key)
                t.coeffs[kk] = val
    # finiteness: the slots just past the expected support must be empty
    for kk in t.coeffs:
        if kk[0] > bound:
            raise ArithmeticError(f"omega_({g},{next_n}) support exceeds pole bound at {kk}")
    return t


def omega_closed_step(g, n):
    """The same tables through the simplified coefficient recursion.

    For fixed external indices the unknowns A^{m, kvec} satisfy the
    lower-triangular system (m = 0, 1, 2, ...)

      sum_{k0<=m} C(m,k0) (-s/2)^(m-k0) (2k0+1)!!/2^(k0+1) A^{k0,kvec}
        = - sum_i sum_{k0} C(m+1,k0) (-s/2)^(m+1-k0)
              (2k_i+2k0-1)!!/(2^k0 (2k_i-1)!!) A_{g,n-1}^{k_i+k0-1, rest}
          - 1/2 sum_{a+b<=m-1} C(m+1,a+b+2) (2a+1)!!(2b+1)!!/2^(a+b+2)
              (-s/2)^(m-1-a-b) [ A_{g-1,n+1}^{a,b,kvec} + splittings ],

    where the splittings exclude one- and two-point factors.  The display
    assumes every referenced sub-entry is stable; the two entries with an
    unstable bracket, (1,1) and (0,3), are evaluated from their explicit
    residue instances instead.  Tables store normalized A-values
    (W = A * prod (2k_i+1)!!).
    """
    if 2 * g - 2 + n <= 0 or g < 0 or n < 1:
        raise ValueError(f"({g},{n}) is not stable")
    key = (g, n)
    out = _closed_cache.get(key)
    if out is not None:
        return out
    if (g, n) == (1, 1):
        # Res K(z0,z) * omega_{0,2}(z,-z) with bracket the constant 1/(4z^2):
        # A^0 = -1/8, A^1 = (s/8)/3!!
        out = SparseTensor(1, {
            (0,): ParamPoly.const(Fraction(-1, 8)),
            (1,): ParamPoly.monomial(Fraction(1, 24), es=1),
        })
    elif (g, n) == (0, 3):
        # Res K(z0,z) (omega02(z,z1) omega02(-z,z2) + omega02(z,z2) omega02(-z,z1))
        # = s/(z0^2 z1^2 z2^2): a single normalized coefficient
        out = SparseTensor(3, {(0, 0, 0): ParamPoly.gen("s")})
    else:
        out = _closed_solve(g, n)
    _closed_cache[key] = out
    return out


def _closed_solve(g, n):
    ext_n = n - 1
    bound = omega_support_bound(g, n)
    # candidate external tuples: total index bounded by the pole order of
    # (g, n); the entrywise comparison against the residue route guards this
    from itertools import product as iproduct

    ext_candidates = [kk for kk in iproduct(range(bound + 1), repeat=ext_n) if sum(kk) <= bound]
    mhalf = ParamPoly.monomial(Fraction(-1, 2), es=1)
    mmax = bound + 3
    mh_pow = [ONE]
    for _ in range(mmax + 2):
        mh_pow.append(mh_pow[-1] * mhalf)
    t = SparseTensor(n)
    for kvec in ext_candidates:
        # bracket values depend on (a, b) only: hoist them out of the m-loop
        inner_ab = {}
        for a in range(mmax):
            for b in range(mmax - a):
                inner = ZERO
                if g >= 1 and 2 * (g - 1) - 2 + (ext_n + 2) > 0:
                    inner = inner + _sub_lookup(g - 1, ext_n + 2, (a, b) + kvec)
                for g1 in range(g + 1):
                    g2 = g - g1
                    for mask in range(1 << ext_n):
                        I = tuple(i for i in range(ext_n) if mask >> i & 1)
                        J = tuple(i for i in range(ext_n) if not mask >> i & 1)
                        if (g1 == 0 and len(I) + 1 <= 2) or (g2 == 0 and len(J) + 1 <= 2):
                            continue
                        left = _sub_lookup(g1, len(I) + 1, (a,) + tuple(kvec[i] for i in I))
                        if not left:
                            continue
                        right = _sub_lookup(g2, len(J) + 1, (b,) + tuple(kvec[i] for i in J))
                        if not right:
                            continue
                        inner = inner + left * right
                if inner:
                    inner_ab[(a, b)] = inner
        sub_d = {}
        for pos in range(ext_n):
            ki = kvec[pos]
            rest = kvec[:pos] + kvec[pos + 1:]
            for k0 in range(mmax + 2):
                idx = ki + k0 - 1
                if idx < 0:
                    continue
                sub = _sub_lookup(g, n - 1, (idx,) + rest)
                if sub:
                    weight = Fraction(double_factorial(2 * ki + 2 * k0 - 1),
                                      2 ** k0 * double_factorial(2 * ki - 1))
                    sub_d.setdefault(k0, ZERO)
                    sub_d[k0] = sub_d[k0] + weight * sub
        solved = {}
        for m in range(mmax + 1):
            rhs = ZERO
            for k0, sub in sub_d.items():
                if k0 > m + 1:
                    continue
                rhs = rhs - binomial(m + 1, k0) * (mh_pow[m + 1 - k0] * sub)
            for (a, b), inner in inner_ab.items():
                if a + b > m - 1:
                    continue
                coef = Fraction(binomial(m + 1, a + b + 2)
                                * double_factorial(2 * a + 1) * double_factorial(2 * b + 1),
                                2 ** (a + b + 3))
                rhs = rhs - coef * (mh_pow[m - 1 - a - b] * inner)
            # move the known part of the triangular row to the right
            acc = rhs
            for k0 in range(m):
                prev = solved.get(k0)
                if prev:
                    coef = Fraction(binomial(m, k0) * double_factorial(2 * k0 + 1), 2 ** (k0 + 1))
                    acc = acc - coef * (mh_pow[m - k0] * prev)
            lead = Fraction(2 ** (m + 1), double_factorial(2 * m + 1))
            solved[m] = lead * acc
        for m, v in solved.items():
            if v:
                if m > bound:
                    raise ArithmeticError(f"closed-step support exceeds pole bound for ({g},{n})")
                t.coeffs[(m,) + kvec] = v
    return t


def _sub_lookup(g, n, kk):
    if 2 * g - 2 + n <= 0:
        return ZERO
    return omega_closed_step(g, n).get(kk)


def normalized(tensor):
    """Divide raw coefficients by prod (2k_i + 1)!!: the A-normalization."""
    out = SparseTensor(tensor.arity)
    for kk, v in tensor.coeffs.items():
        d = 1
        for k in kk:
            d *= double_factorial(2 * k + 1)
        out.coeffs[kk] = Fraction(1, d) * v
    return out


def raw_from_normalized(tensor):
    out = SparseTensor(tensor.arity)
    for kk, v in tensor.coeffs.items():
        d = 1
        for k in kk:
            d *= double_factorial(2 * k + 1)
        out.coeffs[kk] = d * v
    return out


def to_x_coords(a_tensor, max_weight):
    """B from A:  B^l = sum_{k+m=l} prod (-s)^(m_i)/(2^(m_i) m_i!) A^k,
    for all l with sum(2l_i + 1) <= max_weight."""
    return _transform(a_tensor, max_weight, Fraction(-1, 2))


def from_x_coords(b_tensor, max_weight):
    """Inverse transform (s -> -s in the weights)."""
    return _transform(b_tensor, max_weight, Fraction(1, 2))


def _transform(tensor, max_weight, half_sign):
    n = tensor.arity
    out = SparseTensor(n)
    from itertools import product as iproduct

    kmax = (max_weight - n) // 2
    if kmax < 0:
        return out
    for lvec in iproduct(range(kmax + 1), repeat=n):
        if sum(2 * l + 1 for l in lvec) > max_weight:
            continue
        acc = ZERO
        for kvec, v in tensor.coeffs.items():
            if any(k > l for k, l in zip(kvec, lvec)):
                continue
            c = Fraction(1)
            es = 0
            for k, l in zip(kvec, lvec):
                mi = l - k
                c *= half_sign ** mi / factorial(mi)
                es += mi
            acc = acc + ParamPoly.monomial(c, es=es) * v
        if acc:
            out.coeffs[lvec] = acc
    return out


def b01_closed(k):
    """B^k_{0,1} = -(-s)^(k+1) / (2^(k+1) (k+1)! (2k+1))."""
    c = -Fraction((-1) ** (k + 1), 2 ** (k + 1) * factorial(k + 1) * (2 * k + 1))
    return ParamPoly.monomial(c, es=k + 1)


def b02_closed(k1, k2):
    """B^{k1,k2}_{0,2} = (-s)^(k1+k2+1) / (2^(k1+k2+1) k1! k2! (k1+k2+1))."""
    w = k1 + k2 + 1
    c = Fraction((-1) ** w, 2 ** w * factorial(k1) * factorial(k2) * w)
    return ParamPoly.monomial(c, es=w)


def x_tensor(g, n, max_weight, kind="standard"):
    """Normalized B-coefficients of omega_{g,n} in the flat coordinate."""
    if (g, n) == (0, 1):
        t = SparseTensor(1)
        for k in range((max_weight - 1) // 2 + 1):
            t.coeffs[(k,)] = b01_closed(k)
        return t
    if (g, n) == (0, 2):
        t = SparseTensor(2)
        kmax = (max_weight - 2) // 2
        for k1 in range(kmax + 1):
            for k2 in range(kmax - k1 + 1):
                t.coeffs[(k1, k2)] = b02_closed(k1, k2)
        return t
    return to_x_coords(normalized(omega(g, n, kind)), max_weight)


def verify_equivalence_theorem(g, n, max_weight, kind="standard"):
    """Check B^k prod(2k_i+1)!! = (-1)^n <p_{2k_1+1} ... p_{2k_n+1}>_g
    for every k with sum (2k_i + 1) <= max_weight.

    Returns (ok, mismatches, checked).
    """
    b = x_tensor(g, n, max_weight, kind)
    sign = (-1) ** n
    mismatches = []
    checked = 0
    from itertools import product as iproduct

    kmax = (max_weight - n) // 2
    for kvec in iproduct(range(kmax + 1), repeat=n):
        mu = tuple(sorted((2 * k + 1 for k in kvec), reverse=True))
        if sum(mu) > max_weight:
            continue
        d = 1
        for k in kvec:
            d *= double_factorial(2 * k + 1)
        lhs = d * b.get(kvec)
        rhs = correlator(g, mu)
        if sign < 0:
            rhs = -rhs
        checked += 1
        if lhs != rhs:
            mismatches.append((kvec, lhs, rhs))
    return not mismatches, mismatches, checked


def compare_kernels(pairs):
    """omega tables must agree between the two kernels on the given (g,n) pairs."""
    mismatches = []
    for (g, n) in pairs:
        a = omega(g, n, "standard")
        b = omega(g, n, "typeB")
        if a != b:
            mismatches.append((g, n))
    return not mismatches, mismatches
