"""Exact gcd of multivariate polynomials over Q, by primitive polynomial
remainder sequences with content recursion, one variable at a time.

Polynomials are handled as plain dicts mapping exponent tuples to integer
coefficients; rational inputs are cleared to primitive integer form first,
which only changes the gcd by a unit.  Results are primitive with a positive
leading coefficient in descending lex order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from .poly import TPoly, exact


def _is_zero(p: dict) -> bool:
    return not p


def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            mono = tuple(x + y for x, y in zip(ma, mb))
            val = out.get(mono, 0) + ca * cb
            if val:
                out[mono] = val
            else:
                del out[mono]
    return out


def _sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for m, c in b.items():
        val = out.get(m, 0) - c
        if val:
            out[m] = val
        else:
            out.pop(m, None)
    return out


def exact_div(a: dict, b: dict) -> dict:
    """Exact division of term dicts; raises ArithmeticError when b does not
    divide a.  Works for int or Fraction coefficients."""
    if _is_zero(b):
        raise ZeroDivisionError("polynomial division by zero")
    if _is_zero(a):
        return {}
    rem = dict(a)
    quo: dict = {}
    lead_b = max(b)
    lb = b[lead_b]
    while rem:
        lead_r = max(rem)
        mono = tuple(x - y for x, y in zip(lead_r, lead_b))
        if any(e < 0 for e in mono):
            raise ArithmeticError("inexact polynomial division")
        c = exact(Fraction(rem[lead_r]) / Fraction(lb))
        quo[mono] = c
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(mono, mb))
            val = rem.get(m, 0) - c * cb
            if val:
                rem[m] = val
            else:
                rem.pop(m, None)
    return quo


def _normalize_sign(p: dict) -> dict:
    if p and p[max(p)] < 0:
        return {m: -c for m, c in p.items()}
    return p


def _to_univariate(p: dict, var: int) -> dict[int, dict]:
    """View an n-variable dict as univariate in `var` with dict coefficients
    in the remaining variables (exponent tuples keep their length)."""
    out: dict[int, dict] = {}
    for mono, c in p.items():
        d = mono[var]
        inner = list(mono)
        inner[var] = 0
        out.setdefault(d, {})[tuple(inner)] = c
    return out


def _from_univariate(u: dict[int, dict], var: int) -> dict:
    out: dict = {}
    for d, coeff in u.items():
        for mono, c in coeff.items():
            m = list(mono)
            m[var] = d
            out[tuple(m)] = c
    return out


def _content(u: dict[int, dict], nvars: int) -> dict:
    cont: dict = {}
    for coeff in u.values():
        cont = _gcd_rec(cont, coeff, nvars)
    return cont


def _primitive_part(u: dict[int, dict], nvars: int) -> dict[int, dict]:
    cont = _content(u, nvars)
    if not cont:
        return {}
    return {d: exact_div(coeff, cont) for d, coeff in u.items()}


def _prem(p: dict[int, dict], q: dict[int, dict]) -> dict[int, dict]:
    """Pseudo-remainder of univariate polynomials with dict coefficients:
    repeatedly scale p by the leading coefficient of q and subtract."""
    dq = max(q)
    lq = q[dq]
    r = dict(p)
    while r and max(r) >= dq:
        dr = max(r)
        lr = r[dr]
        shift = dr - dq
        new: dict[int, dict] = {}
        for d, coeff in r.items():
            if d == dr:
                continue
            new[d] = _mul(lq, coeff)
        for d, coeff in q.items():
            if d == dq:
                continue
            target = d + shift
            val = _sub(new.get(target, {}), _mul(lr, coeff))
            if val:
                new[target] = val
            else:
                new.pop(target, None)
        r = {d: c for d, c in new.items() if c}
    return r


def _gcd_rec(p: dict, q: dict, nvars: int) -> dict:
    """Gcd of term dicts over Z in the first `nvars` variables; exponents in
    later positions must be zero.  Result sign-normalized."""
    if _is_zero(p):
        return _normalize_sign(dict(q))
    if _is_zero(q):
        return _normalize_sign(dict(p))
    if nvars == 0:
        key = next(iter(p))
        return {key: int_gcd(abs(p[key]), abs(q[key]))}
    var = nvars - 1
    pu = _to_univariate(p, var)
    qu = _to_univariate(q, var)
    if max(pu) == 0 and max(qu) == 0:
        return _gcd_rec(pu[0], qu[0], var)

    cont_p = _content(pu, var)
    cont_q = _content(qu, var)
    cont_gcd = _gcd_rec(cont_p, cont_q, var)
    a = {d: exact_div(c, cont_p) for d, c in pu.items()}
    b = {d: exact_div(c, cont_q) for d, c in qu.items()}
    if max(a) < max(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, _primitive_part(r, var)
    if max(a) == 0:
        result_u = {0: cont_gcd}
    else:
        result_u = {d: _mul(c, cont_gcd) for d, c in a.items()}
    return _normalize_sign(_from_univariate(result_u, var))


def _integerize(p: TPoly) -> dict:
    """Primitive integer term dict of a TPoly (unit multiple of the input)."""
    prim = p.primitive()
    return dict(prim.terms)


def tpoly_gcd(a: TPoly, b: TPoly) -> TPoly:
    """Primitive, sign-normalized gcd of two target-ring polynomials."""
    if a.is_zero() and b.is_zero():
        return TPoly.zero()
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    g = _gcd_rec(_integerize(a), _integerize(b), 4)
    return TPoly(g).primitive()
