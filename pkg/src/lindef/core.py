"""Prime fields, monomial orders and sparse polynomials.

Monomials are plain tuples of exponents internally; :class:`Monomial` is the
public face (a tuple with a cached degree).  Polynomials are immutable and
store their terms in a dict ``exponent tuple -> coefficient in [1, p)``.
"""
from __future__ import annotations

import ast
from typing import Dict, Iterable, Sequence, Tuple

Exp = Tuple[int, ...]


class StructuralError(ValueError):
    """Operands live in incompatible ambient structures."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def egcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b)."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


class PrimeField:
    """The field Z/p."""

    def __init__(self, p: int = 32003):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def __call__(self, a: int) -> int:
        return a % self.p

    def inv(self, a: int) -> int:
        g, s, _ = egcd(a % self.p, self.p)
        if g != 1:
            raise ZeroDivisionError(f"{a} is not invertible mod {self.p}")
        return s % self.p

    def signed(self, a: int) -> int:
        """Representative in (-p/2, p/2], used for printing."""
        a %= self.p
        return a - self.p if a > self.p // 2 else a

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


# ---------------------------------------------------------------- monomials

def mono_mul(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Exp, b: Exp) -> Exp:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(b: Exp, a: Exp) -> bool:
    return all(y <= x for x, y in zip(a, b))


def mono_lcm(a: Exp, b: Exp) -> Exp:
    return tuple(x if x > y else y for x, y in zip(a, b))


def monomials_of_degree(n: int, d: int):
    """All exponent vectors of length n and total degree d (lex descending)."""
    if d < 0:
        return []
    if n == 0:
        return [()] if d == 0 else []
    if n == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            out.append((first,) + rest)
    return out


class Monomial(tuple):
    """Exponent vector with its total degree."""

    @property
    def degree(self) -> int:
        return sum(self)

    def divides(self, other) -> bool:
        return mono_divides(self, other)

    def __mul__(self, other):
        return Monomial(mono_mul(self, other))


class MonomialOrder:
    """Degree-compatible order: ``degrevlex`` or ``deglex``.

    ``permutation[0]`` is the most significant variable; by default the
    declared variable order is used (first variable largest).
    """

    KINDS = ("degrevlex", "deglex")

    def __init__(self, kind: str = "degrevlex", nvars: int = 0,
                 permutation: Sequence[int] | None = None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.nvars = nvars
        perm = tuple(range(nvars)) if permutation is None else tuple(permutation)
        if sorted(perm) != list(range(nvars)):
            raise ValueError("permutation must be a permutation of the variables")
        self.permutation = perm
        self._cache: Dict[Exp, tuple] = {}

    def key(self, e: Exp) -> tuple:
        k = self._cache.get(e)
        if k is None:
            perm = self.permutation
            if self.kind == "degrevlex":
                k = (sum(e),) + tuple(-e[perm[i]] for i in range(len(perm) - 1, -1, -1))
            else:
                k = (sum(e),) + tuple(e[i] for i in perm)
            self._cache[e] = k
        return k

    def tail_key(self, e: Exp) -> tuple:
        return self.key(e)[1:]

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder) and other.kind == self.kind
                and other.permutation == self.permutation)

    def __hash__(self):
        return hash((self.kind, self.permutation))

    def __repr__(self):
        return f"MonomialOrder({self.kind!r}, perm={self.permutation})"


# ---------------------------------------------------------------- polynomials

class PolynomialRing:
    """k[x_1..x_n] with a fixed monomial order."""

    def __init__(self, variables: Sequence[str], p: int = 32003,
                 order: str = "degrevlex", permutation: Sequence[int] | None = None):
        names = tuple(variables)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        for v in names:
            if not v.isidentifier():
                raise ValueError(f"bad variable name {v!r}")
        self.variables = names
        self.field = PrimeField(p)
        self.order = MonomialOrder(order, len(names), permutation)
        self._index = {v: i for i, v in enumerate(names)}

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def p(self) -> int:
        return self.field.p

    def __eq__(self, other):
        return (isinstance(other, PolynomialRing) and other.variables == self.variables
                and other.field == self.field and other.order == self.order)

    def __hash__(self):
        return hash((self.variables, self.field, self.order))

    def __repr__(self):
        return f"PolynomialRing({list(self.variables)}, p={self.p}, {self.order.kind})"

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: 1})

    def const(self, c: int) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def gen(self, name_or_index) -> "Polynomial":
        i = self._index[name_or_index] if isinstance(name_or_index, str) else name_or_index
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, e: Exp, c: int = 1) -> "Polynomial":
        return Polynomial(self, {tuple(e): c})

    def parse(self, text) -> "Polynomial":
        if isinstance(text, Polynomial):
            if text.ring != self:
                raise StructuralError("polynomial belongs to a different ring")
            return text
        if isinstance(text, int):
            return self.const(text)
        return parse_polynomial(self, str(text))

    __call__ = parse


class Polynomial:
    """Sparse polynomial; terms sorted descending in the ring's order on demand."""

    __slots__ = ("ring", "_t", "_sorted", "_hash")

    def __init__(self, ring: PolynomialRing, terms: Dict[Exp, int], _clean: bool = False):
        self.ring = ring
        if not _clean:
            p = ring.p
            terms = {tuple(e): c % p for e, c in terms.items() if c % p}
        self._t = terms
        self._sorted = None
        self._hash = None

    # -- inspection
    @property
    def term_dict(self) -> Dict[Exp, int]:
        return self._t

    @property
    def terms(self):
        if self._sorted is None:
            key = self.ring.order.key
            self._sorted = tuple((Monomial(e), self._t[e])
                                 for e in sorted(self._t, key=key, reverse=True))
        return self._sorted

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def leading_monomial(self) -> Monomial:
        return self.terms[0][0]

    def leading_coefficient(self) -> int:
        return self.terms[0][1]

    def is_homogeneous(self) -> Tuple[bool, int | None]:
        """(True, d) when every term has total degree d.  The zero polynomial
        is homogeneous of every degree; it reports (True, None)."""
        degs = {sum(e) for e in self._t}
        if not degs:
            return True, None
        if len(degs) == 1:
            return True, degs.pop()
        return False, None

    @property
    def degree(self) -> int | None:
        return max((sum(e) for e in self._t), default=None)

    # -- arithmetic
    def _check(self, other) -> "Polynomial":
        if isinstance(other, int):
            return self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.ring.nvars != self.ring.nvars:
            raise StructuralError("mismatched variable counts")
        if other.ring != self.ring:
            raise StructuralError("polynomials from different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self._t)
        for e, c in other._t.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {e: p - c for e, c in self._t.items()}, _clean=True)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out: Dict[Exp, int] = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = (out.get(e, 0) + c1 * c2) % p
        return Polynomial(self.ring, {e: c for e, c in out.items() if c}, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.ring, {e: v * c for e, v in self._t.items()})

    def monic(self) -> "Polynomial":
        if not self._t:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient()))

    # -- comparison / display
    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def format_monomial(names: Sequence[str], e: Exp) -> str:
    parts = []
    for v, k in zip(names, e):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def format_terms(names: Sequence[str], field: PrimeField, terms) -> str:
    if not terms:
        return "0"
    out = []
    for e, c in terms:
        s = field.signed(c)
        mono = format_monomial(names, e)
        mag = abs(s)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if not out:
            out.append(("-" if s < 0 else "") + body)
        else:
            out.append((" - " if s < 0 else " + ") + body)
    return "".join(out)


def format_polynomial(f: Polynomial) -> str:
    return format_terms(f.ring.variables, f.ring.field, f.terms)


# ---------------------------------------------------------------- parsing

class PolynomialSyntaxError(ValueError):
    def __init__(self, msg: str, col: int = 0, text: str | None = None):
        super().__init__(msg)
        self.col = col
        self.text = text


def parse_polynomial(ring: PolynomialRing, text: str) -> Polynomial:
    """Parse ``x^2*y + 3*z`` style text.  Integer literals are reduced mod p."""
    src = text.strip().replace("^", "**")
    if not src:
        raise PolynomialSyntaxError("empty polynomial")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        # map the offset in src back to text (each ^ became two characters)
        stripped = text.strip()
        off, k = (exc.offset or 1) - 1, 0
        while k < len(stripped) and off > 0:
            off -= 2 if stripped[k] == "^" else 1
            k += 1
        lead = len(text) - len(text.lstrip())
        raise PolynomialSyntaxError(f"cannot parse {text!r}", lead + k, text) from None
    return _eval_node(ring, tree.body, text)


def _eval_node(ring: PolynomialRing, node, text: str) -> Polynomial:
    if isinstance(node, ast.BinOp):
        left = _eval_node(ring, node.left, text)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise PolynomialSyntaxError("exponent must be a non-negative integer literal",
                                            node.right.col_offset)
            return left ** node.right.value
        right = _eval_node(ring, node.right, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        raise PolynomialSyntaxError(f"unsupported operator in {text!r}", node.col_offset)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _eval_node(ring, node.operand, text)
        return -inner if isinstance(node.op, ast.USub) else inner
    if isinstance(node, ast.Name):
        if node.id not in ring._index:
            raise PolynomialSyntaxError(f"unknown variable {node.id!r}", node.col_offset)
        return ring.gen(node.id)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return ring.const(node.value)
    raise PolynomialSyntaxError(f"unsupported expression in {text!r}", getattr(node, "col_offset", 0))


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def is_homogeneous(f: Polynomial) -> Tuple[bool, int | None]:
    return f.is_homogeneous()


def polys(ring: PolynomialRing, items: Iterable) -> list:
    return [ring.parse(x) for x in items]
