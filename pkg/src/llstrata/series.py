"""Exact sparse truncated Laurent series in a fixed variable set.

The ring has variables psi, nu, nu1, nu2, tau, z, h and t_1, t_2, ...
Negative exponents are allowed only for psi, nu, nu1, nu2.  Coefficients
are exact rationals.  Truncation is by weighted t-degree (weight of t_i
is i) and by z/h degree.  The quotient relations nu*nu1 = nu*nu2 = 0 are
enforced, when active, by annihilating offending monomials (the ideal is
monomial, so this is exact).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

LAURENT_VARS = frozenset({"psi", "nu", "nu1", "nu2"})

_DISPLAY_ORDER = {"psi": 0, "nu": 1, "nu1": 2, "nu2": 3, "tau": 4, "z": 5, "h": 6}
# lex order used by binomial division; nu1 > nu2 so that nu1 leads in nu1+nu2
_LEX_ORDER = {"nu1": 0, "nu2": 1, "psi": 2, "nu": 3, "tau": 4, "z": 5, "h": 6}


def tvar(i):
    if i < 1:
        raise ValueError(f"t-index must be >= 1, got {i}")
    return f"t{i}"


def t_index(var):
    """Index i for a variable t_i, or None for the other variables."""
    if var[0] == "t" and var[1:].isdigit():
        return int(var[1:])
    return None


def _var_key(var):
    i = t_index(var)
    if i is not None:
        return (1, i)
    return (0, _DISPLAY_ORDER[var])


def _lex_var_key(var):
    i = t_index(var)
    if i is not None:
        return (1, i)
    return (0, _LEX_ORDER[var])


class NotDivisibleError(ArithmeticError):
    """Raised when div_exact leaves a nonzero remainder."""


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an int or Fraction, got {type(x).__name__}")


def _merge_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class Series:
    """Immutable sparse series; all operations are pure functions.

    ``terms`` maps a sorted tuple of (var, exp) pairs to a nonzero
    Fraction.  ``trunc_t`` caps the weighted t-degree, ``trunc_aux``
    caps the z- and h-degrees; None means no cap.
    """

    __slots__ = ("terms", "trunc_t", "trunc_aux", "relations")

    def __init__(self, terms=None, trunc_t=None, trunc_aux=None, relations=False):
        self.trunc_t = trunc_t
        self.trunc_aux = trunc_aux
        self.relations = relations
        self.terms = self._canonicalize(terms or {})

    def _canonicalize(self, raw):
        out = {}
        for key, coeff in raw.items():
            coeff = _as_fraction(coeff)
            if not coeff:
                continue
            key = tuple(sorted(((v, e) for v, e in key if e), key=lambda p: _var_key(p[0])))
            tdeg = zdeg = hdeg = 0
            has_nu = has_nui = False
            for v, e in key:
                i = t_index(v)
                if i is not None:
                    if e < 0:
                        raise ValueError(f"negative exponent on {v}")
                    tdeg += i * e
                elif v == "z":
                    if e < 0:
                        raise ValueError("negative exponent on z")
                    zdeg = e
                elif v == "h":
                    if e < 0:
                        raise ValueError("negative exponent on h")
                    hdeg = e
                elif v == "tau":
                    if e < 0:
                        raise ValueError("negative exponent on tau")
                elif v == "nu":
                    has_nu = True
                elif v in ("nu1", "nu2"):
                    has_nui = True
                elif v != "psi":
                    raise ValueError(f"unknown variable {v!r}")
            if self.trunc_t is not None and tdeg > self.trunc_t:
                continue
            if self.trunc_aux is not None and (zdeg > self.trunc_aux or hdeg > self.trunc_aux):
                continue
            if self.relations and has_nu and has_nui:
                continue
            if key in out:
                coeff = out[key] + coeff
                if coeff:
                    out[key] = coeff
                else:
                    del out[key]
            else:
                out[key] = coeff
        return out

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, trunc_t=None, trunc_aux=None, relations=False):
        return cls({}, trunc_t, trunc_aux, relations)

    @classmethod
    def const(cls, c, trunc_t=None, trunc_aux=None, relations=False):
        return cls({(): _as_fraction(c)}, trunc_t, trunc_aux, relations)

    @classmethod
    def one(cls, trunc_t=None, trunc_aux=None, relations=False):
        return cls.const(1, trunc_t, trunc_aux, relations)

    @classmethod
    def var(cls, name, exp=1, coeff=1, trunc_t=None, trunc_aux=None, relations=False):
        return cls({((name, exp),): _as_fraction(coeff)}, trunc_t, trunc_aux, relations)

    def _like(self, terms):
        return Series(terms, self.trunc_t, self.trunc_aux, self.relations)

    def with_trunc(self, trunc_t=None, trunc_aux=None):
        return Series(dict(self.terms), trunc_t, trunc_aux, self.relations)

    def with_relations(self, relations):
        return Series(dict(self.terms), self.trunc_t, self.trunc_aux, relations)

    # -- basic queries -----------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @staticmethod
    def _t_weight(key):
        w = 0
        for v, e in key:
            i = t_index(v)
            if i is not None:
                w += i * e
        return w

    @staticmethod
    def _var_degree(key, var):
        for v, e in key:
            if v == var:
                return e
        return 0

    def constant_term(self):
        return self.terms.get((), Fraction(0))

    def variables(self):
        return {v for key in self.terms for v, _ in key}

    def is_polynomial(self):
        """True if no term carries a negative exponent."""
        return all(e >= 0 for key in self.terms for _, e in key)

    def homogeneous_class_degree(self):
        """Common total degree in {psi, nu, nu1, nu2} of the class part of
        every term (Laurent exponents counted with sign), or None if mixed.
        """
        degs = set()
        for key in self.terms:
            degs.add(sum(e for v, e in key if v in LAURENT_VARS))
        if not degs:
            return 0
        if len(degs) > 1:
            return None
        return degs.pop()

    def rename(self, mapping):
        """Rename variables (bijective on the keys used); exact, no truncation change."""
        out = {}
        for key, coeff in self.terms.items():
            new = tuple((mapping.get(v, v), e) for v, e in key)
            out[new] = out.get(new, Fraction(0)) + coeff
        return self._like(out)

    # -- ring operations ---------------------------------------------

    def _check_compatible(self, other):
        if self.relations != other.relations:
            raise ValueError("mismatched relation flags")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Series.const(other, self.trunc_t, self.trunc_aux, self.relations)
        if not isinstance(other, Series):
            return NotImplemented
        self._check_compatible(other)
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            terms[key] = terms.get(key, Fraction(0)) + coeff
        return Series(terms, _merge_trunc(self.trunc_t, other.trunc_t),
                      _merge_trunc(self.trunc_aux, other.trunc_aux), self.relations)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Series.const(other, self.trunc_t, self.trunc_aux, self.relations)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                return self._like({})
            return self._like({k: c * v for k, v in self.terms.items()})
        if not isinstance(other, Series):
            return NotImplemented
        self._check_compatible(other)
        trunc_t = _merge_trunc(self.trunc_t, other.trunc_t)
        trunc_aux = _merge_trunc(self.trunc_aux, other.trunc_aux)
        a_meta = [(key, coeff, self._t_weight(key)) for key, coeff in self.terms.items()]
        b_meta = [(key, coeff, self._t_weight(key)) for key, coeff in other.terms.items()]
        terms = {}
        for ka, ca, wa in a_meta:
            for kb, cb, wb in b_meta:
                if trunc_t is not None and wa + wb > trunc_t:
                    continue
                exps = dict(ka)
                for v, e in kb:
                    exps[v] = exps.get(v, 0) + e
                key = tuple(sorted(((v, e) for v, e in exps.items() if e),
                                   key=lambda p: _var_key(p[0])))
                terms[key] = terms.get(key, Fraction(0)) + ca * cb
        return Series(terms, trunc_t, trunc_aux, self.relations)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = Series.one(self.trunc_t, self.trunc_aux, self.relations)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Series.const(other)
        if not isinstance(other, Series):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    # -- analytic operations -----------------------------------------

    def _require_nilpotent(self):
        for key in self.terms:
            tdeg = self._t_weight(key)
            hdeg = self._var_degree(key, "h")
            if tdeg >= 1:
                if self.trunc_t is None:
                    raise ValueError("nilpotent argument requires a finite t-truncation")
            elif hdeg >= 1:
                if self.trunc_aux is None:
                    raise ValueError("nilpotent argument requires a finite h-truncation")
            else:
                raise ValueError("non-nilpotent argument: term free of t and h")

    def exp(self):
        """exp of a topologically nilpotent series; exp(0) = 1."""
        self._require_nilpotent()
        result = Series.one(self.trunc_t, self.trunc_aux, self.relations)
        power = result
        bound = (self.trunc_t or 0) + (self.trunc_aux or 0) + 1
        for k in range(1, bound + 1):
            power = power * self
            if not power:
                return result
            result = result + power * Fraction(1, factorial(k))
        raise AssertionError("exp did not terminate under the active truncations")

    def log1p(self):
        """log(1 + a) for topologically nilpotent a; inverse of exp - 1."""
        self._require_nilpotent()
        result = Series.zero(self.trunc_t, self.trunc_aux, self.relations)
        power = Series.one(self.trunc_t, self.trunc_aux, self.relations)
        bound = (self.trunc_t or 0) + (self.trunc_aux or 0) + 1
        for k in range(1, bound + 1):
            power = power * self
            if not power:
                return result
            result = result + power * Fraction((-1) ** (k + 1), k)
        raise AssertionError("log1p did not terminate under the active truncations")

    def _lex_leading(self):
        # lex maximum over exponent vectors in _LEX_ORDER, absent vars read as 0
        best = None
        for key in self.terms:
            if best is None or _lex_cmp(key, best) > 0:
                best = key
        return best

    def div_exact(self, divisor):
        """Exact division in the Laurent ring; raises NotDivisibleError."""
        if isinstance(divisor, (int, Fraction)):
            c = _as_fraction(divisor)
            if not c:
                raise ZeroDivisionError("division by zero series")
            return self._like({k: v / c for k, v in self.terms.items()})
        if not isinstance(divisor, Series):
            raise TypeError("divisor must be a Series or scalar")
        if not divisor.terms:
            raise ZeroDivisionError("division by zero series")
        if len(divisor.terms) == 1:
            (bkey, bc), = divisor.terms.items()
            out = {}
            for key, coeff in self.terms.items():
                exps = dict(key)
                for v, e in bkey:
                    exps[v] = exps.get(v, 0) - e
                new = tuple(sorted(((v, e) for v, e in exps.items() if e),
                                   key=lambda p: _var_key(p[0])))
                out[new] = out.get(new, Fraction(0)) + coeff / bc
            return self._like(out)
        return self._div_by_polynomial(divisor)

    def _div_by_polynomial(self, divisor):
        # term-ordered division; for an exact quotient q, every exponent of q
        # lies in the box [min_a - max_b, max_a - min_b] per variable, which
        # gives a sound non-divisibility guard.
        bounds = {}
        for v in self.variables() | divisor.variables():
            a_exps = [self._var_degree(k, v) for k in self.terms] or [0]
            b_exps = [divisor._var_degree(k, v) for k in divisor.terms]
            bounds[v] = (min(a_exps) - max(b_exps), max(a_exps) - min(b_exps))
        lead_key = divisor._lex_leading()
        lead_coeff = divisor.terms[lead_key]
        tail = [(k, c) for k, c in divisor.terms.items() if k != lead_key]
        rem = dict(self.terms)
        quot = {}
        while rem:
            rkey = max(rem, key=_LexKey)
            exps = dict(rkey)
            for v, e in lead_key:
                exps[v] = exps.get(v, 0) - e
            for v, e in exps.items():
                if e and not (bounds.get(v, (0, 0))[0] <= e <= bounds.get(v, (0, 0))[1]):
                    raise NotDivisibleError("nonzero remainder in exact division")
            qkey = tuple(sorted(((v, e) for v, e in exps.items() if e),
                                key=lambda p: _var_key(p[0])))
            qc = rem[rkey] / lead_coeff
            quot[qkey] = quot.get(qkey, Fraction(0)) + qc
            del rem[rkey]
            for tk, tc in tail:
                pexps = dict(qkey)
                for v, e in tk:
                    pexps[v] = pexps.get(v, 0) + e
                pkey = tuple(sorted(((v, e) for v, e in pexps.items() if e),
                                    key=lambda p: _var_key(p[0])))
                nc = rem.get(pkey, Fraction(0)) - qc * tc
                if nc:
                    rem[pkey] = nc
                elif pkey in rem:
                    del rem[pkey]
        return self._like(quot)

    # -- structural operations ---------------------------------------

    def substitute(self, assignment):
        """Simultaneous substitution var -> Series/scalar, re-canonicalized.

        A variable occurring with a negative exponent may only receive an
        invertible monomial.
        """
        asg = {}
        for v, val in assignment.items():
            if isinstance(val, (int, Fraction)):
                val = Series.const(val, self.trunc_t, self.trunc_aux, self.relations)
            asg[v] = val
        out = Series.zero(self.trunc_t, self.trunc_aux, self.relations)
        for key, coeff in self.terms.items():
            # Fold every monomial assignment into one exponent pass first, so
            # negative powers cancel against positive ones within the term
            # before any Series is built (intermediate net exponents on tau
            # stay legal for homogeneous class coefficients).
            exps = {}
            factors = []
            dead = False
            for v, e in key:
                if v not in asg:
                    exps[v] = exps.get(v, 0) + e
                    continue
                val = asg[v]
                if len(val.terms) == 1:
                    (mkey, mc), = val.terms.items()
                    coeff = coeff * mc ** e
                    for w, d in mkey:
                        exps[w] = exps.get(w, 0) + d * e
                elif e < 0:
                    raise ValueError(f"substituting a non-invertible value into {v}^{e}")
                elif not val.terms:
                    dead = True
                    break
                else:
                    factors.append(val ** e)
            if dead:
                continue
            mono = tuple(sorted(((v, e) for v, e in exps.items() if e),
                                key=lambda p: _var_key(p[0])))
            acc = Series({mono: coeff}, self.trunc_t, self.trunc_aux, self.relations)
            for f in factors:
                acc = acc * f
            out = out + acc
        return out

    def coeff_of_var(self, var, n):
        """Exact coefficient of var^n, as a series in the remaining variables."""
        out = {}
        for key, coeff in self.terms.items():
            if self._var_degree(key, var) != n:
                continue
            out[tuple((v, e) for v, e in key if v != var)] = coeff
        return self._like(out)

    def coeff_of_t(self, t_exponents):
        """Coefficient of the plain monomial prod t_i^mult (exact match on
        every t-variable), as a series in the remaining variables."""
        want = {i: m for i, m in t_exponents.items() if m}
        out = {}
        for key, coeff in self.terms.items():
            profile = {}
            rest = []
            for v, e in key:
                i = t_index(v)
                if i is not None:
                    profile[i] = e
                else:
                    rest.append((v, e))
            if profile != want:
                continue
            out[tuple(rest)] = coeff
        return self._like(out)

    def t_profiles(self):
        """Sorted list of t-exponent maps occurring in the series."""
        seen = set()
        for key in self.terms:
            profile = tuple(sorted((t_index(v), e) for v, e in key if t_index(v) is not None))
            seen.add(profile)
        return [dict(p) for p in sorted(seen, key=lambda p: (sum(i * e for i, e in p), p))]

    def replace_z_by_t(self):
        """Replace z^n by (n+1) t_n in every term; every term must have z-degree >= 1."""
        out = {}
        for key, coeff in self.terms.items():
            n = self._var_degree(key, "z")
            if n < 1:
                raise ValueError("replace_z_by_t requires z-degree >= 1 in every term")
            exps = {v: e for v, e in key if v != "z"}
            tv = tvar(n)
            exps[tv] = exps.get(tv, 0) + 1
            new = tuple(sorted(exps.items(), key=lambda p: _var_key(p[0])))
            out[new] = out.get(new, Fraction(0)) + coeff * (n + 1)
        return self._like(out)

    def diff(self, var):
        """Formal derivative with respect to a non-Laurent variable."""
        out = {}
        for key, coeff in self.terms.items():
            e = self._var_degree(key, var)
            if e == 0:
                continue
            exps = {v: d for v, d in key if v != var}
            if e != 1:
                exps[var] = e - 1
            new = tuple(sorted(exps.items(), key=lambda p: _var_key(p[0])))
            out[new] = out.get(new, Fraction(0)) + coeff * e
        return self._like(out)

    # -- rendering ---------------------------------------------------

    def _sorted_keys(self):
        def sort_key(key):
            tprof = tuple(sorted((t_index(v), e) for v, e in key if t_index(v) is not None))
            tw = sum(i * e for i, e in tprof)
            other = tuple(sorted(((_var_key(v), -e) for v, e in key if t_index(v) is None)))
            return (tw, tprof, other)
        return sorted(self.terms, key=sort_key)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in self._sorted_keys():
            coeff = self.terms[key]
            mono = "*".join(f"{v}^{e}" if e != 1 else v for v, e in
                            sorted(key, key=lambda p: _var_key(p[0])))
            mag = abs(coeff)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(("-" if coeff < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Series({self})"

    _LATEX_NAMES = {"psi": r"\psi", "nu": r"\nu", "nu1": r"\nu_1", "nu2": r"\nu_2",
                    "tau": r"\tau", "z": "z", "h": "h"}

    def latex(self):
        if not self.terms:
            return "0"
        parts = []
        for key in self._sorted_keys():
            coeff = self.terms[key]
            factors = []
            for v, e in sorted(key, key=lambda p: _var_key(p[0])):
                i = t_index(v)
                name = f"t_{{{i}}}" if i is not None else self._LATEX_NAMES[v]
                factors.append(name if e == 1 else f"{name}^{{{e}}}")
            mono = "".join(factors)
            mag = abs(coeff)
            if mag.denominator == 1:
                cstr = str(mag.numerator)
            else:
                cstr = rf"\frac{{{mag.numerator}}}{{{mag.denominator}}}"
            if mono and mag == 1:
                body = mono
            else:
                body = cstr + mono
            parts.append(("-" if coeff < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += sign + body
        return text


class _LexKey:
    """Adapter making exponent keys comparable in the division term order."""

    __slots__ = ("key",)

    def __init__(self, key):
        self.key = key

    def __lt__(self, other):
        return _lex_cmp(self.key, other.key) < 0


def _lex_cmp(key_a, key_b):
    ea = {v: e for v, e in key_a}
    eb = {v: e for v, e in key_b}
    for v in sorted(set(ea) | set(eb), key=_lex_var_key):
        da, db = ea.get(v, 0), eb.get(v, 0)
        if da != db:
            return 1 if da > db else -1
    return 0


def monomial_key(t_exponents):
    """Canonical text key for a t-monomial, e.g. {1: 2, 2: 1} -> 't1^2*t2'."""
    if not t_exponents:
        return "1"
    parts = []
    for i in sorted(t_exponents):
        e = t_exponents[i]
        parts.append(f"t{i}^{e}" if e != 1 else f"t{i}")
    return "*".join(parts)
