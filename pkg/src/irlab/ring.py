"""Prime fields, monomial orders, multivariate polynomials, parsing and printing.

Monomials are dense exponent tuples (one slot per ambient variable).  A
polynomial is a map from exponent tuples to nonzero field elements; the zero
polynomial is the empty map.  All values are immutable after construction and
safe to share.
"""

from __future__ import annotations

from itertools import combinations_with_replacement

from .errors import PolynomialParseError, RingMismatchError

DEFAULT_CHARACTERISTIC = 32003


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """Arithmetic in Z/p for a prime p; elements are ints in [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p: int = DEFAULT_CHARACTERISTIC):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        self.p = p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in prime field")
        return pow(a, self.p - 2, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


# ---------------------------------------------------------------------------
# Monomial orders.  Each order vends a sort key: bigger key == bigger monomial.
# All three are global orders (1 is minimal) and multiplicative.

def _grevlex_key(expo):
    return (sum(expo), tuple(-e for e in reversed(expo)))


class GrevLex:
    """Graded reverse lexicographic order (the default everywhere)."""

    kind = "grevlex"
    __slots__ = ()

    def key(self, expo):
        return _grevlex_key(expo)

    def __repr__(self):
        return "grevlex"


class Lex:
    kind = "lex"
    __slots__ = ()

    def key(self, expo):
        return tuple(expo)

    def __repr__(self):
        return "lex"


class Elimination:
    """Block order splitting off the first `block` variables (each block grevlex).

    Any monomial involving a block variable is larger than any monomial free of
    them, so discarding basis elements whose lead involves the block eliminates
    those variables.
    """

    kind = "elimination"
    __slots__ = ("block",)

    def __init__(self, block: int):
        self.block = block

    def key(self, expo):
        b = self.block
        return (_grevlex_key(expo[:b]), _grevlex_key(expo[b:]))

    def __repr__(self):
        return f"elimination({self.block})"


GREVLEX = GrevLex()
LEX = Lex()


# ---------------------------------------------------------------------------

_RING_CACHE: dict = {}


class Ring:
    """Ambient polynomial ring: a prime field, ordered variable names, an order.

    Instances are interned: `ring(...)` with equal arguments returns the same
    object, so identity comparison is safe.
    """

    __slots__ = ("field", "variables", "order", "nvars", "_var_index")

    def __init__(self, variables, field, order):
        self.field = field
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be distinct")
        self.order = order
        self.nvars = len(self.variables)
        self._var_index = {v: i for i, v in enumerate(self.variables)}

    # -- polynomial constructors -------------------------------------------
    def zero(self):
        return Poly(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, c):
        c %= self.field.p
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def variable(self, name_or_index):
        i = name_or_index if isinstance(name_or_index, int) else self._var_index[name_or_index]
        expo = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Poly(self, {expo: 1})

    def gens(self):
        return [self.variable(i) for i in range(self.nvars)]

    def monomial(self, expo, coeff=1):
        coeff %= self.field.p
        if len(expo) != self.nvars:
            raise ValueError("exponent length does not match variable count")
        return Poly(self, {tuple(expo): coeff} if coeff else {})

    def from_terms(self, terms):
        p = self.field.p
        clean = {}
        for expo, c in terms.items():
            c %= p
            if c:
                clean[tuple(expo)] = c
        return Poly(self, clean)

    def parse(self, text):
        return parse_polynomial(text, self)

    # -- derived rings -------------------------------------------------------
    def extended(self, extra_front):
        """Ring with `extra_front` fresh variables prepended (for elimination)."""
        return ring(tuple(extra_front) + self.variables, self.field.p, self.order)

    def __repr__(self):
        return f"F{self.field.p}[{','.join(self.variables)}]"


def ring(variables, p: int = DEFAULT_CHARACTERISTIC, order=GREVLEX) -> Ring:
    key = (tuple(variables), p, order.kind, getattr(order, "block", None))
    R = _RING_CACHE.get(key)
    if R is None:
        R = Ring(variables, PrimeField(p), order)
        _RING_CACHE[key] = R
    return R


# ---------------------------------------------------------------------------

class Poly:
    """Immutable multivariate polynomial over a prime field.

    `terms` maps exponent tuples to coefficients in [1, p); no zero
    coefficients are ever stored.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring_, terms):
        self.ring = ring_
        self.terms = terms
        self._hash = None

    # -- predicates ----------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_monomial(self):
        return len(self.terms) == 1

    def constant_value(self):
        if not self.terms:
            return 0
        return self.terms[(0,) * self.ring.nvars]

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        if not self.terms:
            return True
        degs = {sum(e) for e in self.terms}
        return len(degs) == 1

    def lead_monomial(self, order=None):
        order = order or self.ring.order
        return max(self.terms, key=order.key)

    def lead_coefficient(self, order=None):
        return self.terms[self.lead_monomial(order)]

    def monic(self, order=None):
        if not self.terms:
            return self
        c = self.lead_coefficient(order)
        if c == 1:
            return self
        inv = self.ring.field.inv(c)
        p = self.ring.field.p
        return Poly(self.ring, {m: (v * inv) % p for m, v in self.terms.items()})

    # -- arithmetic ----------------------------------------------------------
    def _check(self, other):
        if self.ring is not other.ring:
            raise RingMismatchError(f"operands over {self.ring} and {other.ring}")

    def __add__(self, other):
        self._check(other)
        p = self.ring.field.p
        res = dict(self.terms)
        for m, c in other.terms.items():
            v = (res.get(m, 0) + c) % p
            if v:
                res[m] = v
            else:
                res.pop(m, None)
        return Poly(self.ring, res)

    def __sub__(self, other):
        self._check(other)
        p = self.ring.field.p
        res = dict(self.terms)
        for m, c in other.terms.items():
            v = (res.get(m, 0) - c) % p
            if v:
                res[m] = v
            else:
                res.pop(m, None)
        return Poly(self.ring, res)

    def __neg__(self):
        p = self.ring.field.p
        return Poly(self.ring, {m: p - c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        p = self.ring.field.p
        res = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = (res.get(m, 0) + c1 * c2) % p
                if v:
                    res[m] = v
                else:
                    res.pop(m, None)
        return Poly(self.ring, res)

    __rmul__ = __mul__

    def scale(self, c):
        p = self.ring.field.p
        c %= p
        if c == 0:
            return self.ring.zero()
        if c == 1:
            return self
        return Poly(self.ring, {m: (v * c) % p for m, v in self.terms.items()})

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def term_mul(self, expo, coeff):
        """Multiply by the single term coeff * x^expo."""
        p = self.ring.field.p
        coeff %= p
        if coeff == 0:
            return self.ring.zero()
        return Poly(self.ring, {tuple(a + b for a, b in zip(m, expo)): (c * coeff) % p
                                for m, c in self.terms.items()})

    # -- identity ------------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Poly) and self.ring is other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.ring), frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"<{format_polynomial(self)}>"


# ---------------------------------------------------------------------------
# Canonical printing: terms in descending order under the ring's active order,
# explicit `*` products, `^` powers, balanced coefficient representatives.

def _monomial_str(expo, variables):
    parts = []
    for v, e in zip(variables, expo):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_polynomial(f: Poly) -> str:
    if not f.terms:
        return "0"
    ringv = f.ring.variables
    half = f.ring.field.p // 2
    key = f.ring.order.key
    pieces = []
    for expo in sorted(f.terms, key=key, reverse=True):
        c = f.terms[expo]
        signed = c if c <= half else c - f.ring.field.p
        mono = _monomial_str(expo, ringv)
        mag = abs(signed)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        pieces.append(("-" if signed < 0 else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# Parsing.  Grammar: poly := [sign] term (sign term)* ; term := factor ('*' factor)* ;
# factor := INT | VAR ['^' INT].  Whitespace is free.  Errors carry positions.

def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        raise PolynomialParseError(f"unexpected character {ch!r}", i)
    return tokens


def parse_polynomial(text: str, ring_: Ring) -> Poly:
    """Parse a polynomial in the canonical grammar over the given ring."""
    tokens = _tokenize(text)
    if not tokens:
        raise PolynomialParseError("empty polynomial text", 0)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None, len(text))

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    p = ring_.field.p
    nv = ring_.nvars
    result: dict = {}

    def add_term(expo, coeff):
        coeff %= p
        key = tuple(expo)
        v = (result.get(key, 0) + coeff) % p
        if v:
            result[key] = v
        else:
            result.pop(key, None)

    def parse_factor():
        kind, val, at = take()
        if kind == "int":
            base_c, base_e = int(val), [0] * nv
        elif kind == "name":
            if val not in ring_._var_index:
                raise PolynomialParseError(f"unknown variable {val!r}", at)
            base_c, base_e = 1, [0] * nv
            base_e[ring_._var_index[val]] = 1
        else:
            raise PolynomialParseError("expected a coefficient or variable", at)
        kind, val, at = peek()
        if kind == "^":
            take()
            kind, val, at = take()
            if kind != "int":
                raise PolynomialParseError("expected an integer exponent after '^'", at)
            k = int(val)
            base_c = pow(base_c, k, p)
            base_e = [e * k for e in base_e]
        return base_c, base_e

    def parse_term(sign):
        coeff, expo = parse_factor()
        while peek()[0] == "*":
            take()
            c2, e2 = parse_factor()
            coeff = coeff * c2
            expo = [a + b for a, b in zip(expo, e2)]
        add_term(expo, sign * coeff)

    sign = 1
    kind, val, at = peek()
    if kind in ("+", "-"):
        take()
        sign = -1 if kind == "-" else 1
    parse_term(sign)
    while pos < len(tokens):
        kind, val, at = take()
        if kind == "+":
            parse_term(1)
        elif kind == "-":
            parse_term(-1)
        else:
            raise PolynomialParseError(f"expected '+' or '-', found {val!r}", at)
    return Poly(ring_, result)


# ---------------------------------------------------------------------------

def monomials_of_degree(nvars: int, d: int):
    """All exponent tuples of total degree exactly d, ascending in grevlex.

    Count is C(d + nvars - 1, nvars - 1).
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    if nvars == 0:
        return [()] if d == 0 else []
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        expo = [0] * nvars
        for i in combo:
            expo[i] += 1
        out.append(tuple(expo))
    out.sort(key=_grevlex_key)
    return out


def monomials_up_to_degree(nvars: int, d: int):
    out = []
    for k in range(d + 1):
        out.extend(monomials_of_degree(nvars, k))
    return out
