"""Supercommutative polynomial rings over Q(i, sqrt2).

A :class:`RingContext` owns an ordered list of even and odd variables; a
:class:`SuperPoly` is a finite scalar combination of monomials in them.  Odd
variables anticommute and square to zero -- that is enforced structurally by
storing each monomial's odd part as a strictly ascending tuple of variable
ids and tracking the interleaving sign on multiplication.

Contexts can be *extended* (new variables appended; existing ids stay
stable), and a polynomial lifts for free into any extending context.
Combining polynomials from unrelated contexts is an error, never a silent
union.
"""

from __future__ import annotations

from fractions import Fraction

from .kernels import Q_ONE, Q_ZERO, merge_odd, mul_even, q_add, q_mul, q_neg
from .scalars import FieldScalar


class ContextError(Exception):
    """Raised when values from incompatible ring contexts are combined."""


class RingContext:
    __slots__ = ("_even", "_odd", "_byname")

    def __init__(self):
        self._even = []
        self._odd = []
        self._byname = {}

    # -- variable declaration ---------------------------------------------

    def even(self, name):
        self._declare(name, 0)
        return self.var(name)

    def odd(self, name):
        self._declare(name, 1)
        return self.var(name)

    def evens(self, *names):
        return tuple(self.even(n) for n in names)

    def odds(self, *names):
        return tuple(self.odd(n) for n in names)

    def _declare(self, name, parity):
        if name in self._byname:
            raise ContextError(f"variable {name!r} already declared")
        pool = self._odd if parity else self._even
        self._byname[name] = (parity, len(pool))
        pool.append(name)

    # -- lookup -----------------------------------------------------------

    def has(self, name):
        return name in self._byname

    def parity_of(self, name):
        return self._byname[name][0]

    @property
    def even_names(self):
        return tuple(self._even)

    @property
    def odd_names(self):
        return tuple(self._odd)

    def var(self, name):
        parity, vid = self._byname[name]
        if parity:
            key = ((), (vid,))
        else:
            key = (((vid, 1),), ())
        return SuperPoly._new(self, {key: Q_ONE})

    def scalar(self, c):
        c = _as_field_scalar(c)
        if c.is_zero():
            return SuperPoly._new(self, {})
        return SuperPoly._new(self, {((), ()): c.q})

    @property
    def zero(self):
        return SuperPoly._new(self, {})

    @property
    def one(self):
        return SuperPoly._new(self, {((), ()): Q_ONE})

    # -- extension and lifting --------------------------------------------

    def extended(self, even=(), odd=()):
        """A new context with the same variables plus the given fresh ones."""
        ctx = RingContext()
        ctx._even = list(self._even)
        ctx._odd = list(self._odd)
        ctx._byname = dict(self._byname)
        for name in even:
            ctx._declare(name, 0)
        for name in odd:
            ctx._declare(name, 1)
        return ctx

    def extends(self, other):
        """True when this context's variables start with all of ``other``'s."""
        if other is self:
            return True
        return (
            self._even[: len(other._even)] == other._even
            and self._odd[: len(other._odd)] == other._odd
        )

    def lift(self, p):
        if p.ctx is self:
            return p
        if not self.extends(p.ctx):
            raise ContextError("cannot lift: target context does not extend source")
        return SuperPoly._new(self, p.terms)

    def demote(self, p):
        """Rebuild ``p`` in this smaller context (it must not use newer vars)."""
        if p.ctx is self:
            return p
        if not p.ctx.extends(self):
            raise ContextError("demote target is not a prefix of the source context")
        ne, no = len(self._even), len(self._odd)
        for ek, ok in p.terms:
            if any(vid >= ne for vid, _ in ek) or any(oid >= no for oid in ok):
                raise ContextError(
                    "polynomial uses variables outside the target context"
                )
        return SuperPoly._new(self, p.terms)

    def __repr__(self):
        return f"<RingContext even={len(self._even)} odd={len(self._odd)}>"


#: Shared empty context: the natural home of purely numeric quantities,
#: liftable into every other context.
NUMERIC_CTX = RingContext()


def _as_field_scalar(c):
    if isinstance(c, FieldScalar):
        return c
    if isinstance(c, (int, Fraction)):
        return FieldScalar(c)
    raise TypeError(f"cannot interpret {c!r} as a scalar")


def _align(p, q):
    """Bring two polynomials into a common context, or fail loudly."""
    if p.ctx is q.ctx:
        return p, q
    if p.ctx.extends(q.ctx):
        return p, p.ctx.lift(q)
    if q.ctx.extends(p.ctx):
        return q.ctx.lift(p), q
    raise ContextError("polynomials live in unrelated ring contexts")


class SuperPoly:
    """A supercommutative polynomial; immutable by convention."""

    __slots__ = ("ctx", "terms")

    @classmethod
    def _new(cls, ctx, terms):
        obj = object.__new__(cls)
        obj.ctx = ctx
        obj.terms = terms
        return obj

    # -- structure --------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_scalar(self):
        return not self.terms or set(self.terms) == {((), ())}

    def scalar_part(self):
        """Coefficient of the empty monomial (the value at the origin)."""
        return FieldScalar.from_q(self.terms.get(((), ()), Q_ZERO))

    def body(self):
        """The monomial-free part obtained by killing every odd variable.

        Even variables survive; this is the underlying ordinary polynomial.
        """
        return SuperPoly._new(
            self.ctx, {k: q for k, q in self.terms.items() if not k[1]}
        )

    def parity(self):
        """0 or 1 for homogeneous polynomials, None for zero."""
        parities = {len(ok) % 2 for _, ok in self.terms}
        if not parities:
            return None
        if len(parities) > 1:
            raise ValueError("polynomial is not parity-homogeneous")
        return parities.pop()

    def is_even(self):
        return all(len(ok) % 2 == 0 for _, ok in self.terms)

    def is_odd(self):
        return all(len(ok) % 2 == 1 for _, ok in self.terms)

    def is_homogeneous(self):
        return len({len(ok) % 2 for _, ok in self.terms}) <= 1

    def variables(self):
        """Names of the variables actually appearing."""
        seen = set()
        for ek, ok in self.terms:
            for vid, _ in ek:
                seen.add(self.ctx._even[vid])
            for oid in ok:
                seen.add(self.ctx._odd[oid])
        return seen

    def monomials(self):
        """Iterate (even_factors, odd_factors, coefficient) deterministically.

        ``even_factors`` is a tuple of (name, exponent); ``odd_factors`` a
        tuple of names in canonical order.
        """
        for ek, ok in sorted(self.terms):
            yield (
                tuple((self.ctx._even[vid], e) for vid, e in ek),
                tuple(self.ctx._odd[oid] for oid in ok),
                FieldScalar.from_q(self.terms[(ek, ok)]),
            )

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, SuperPoly):
            return other
        if isinstance(other, (int, Fraction, FieldScalar)):
            return self.ctx.scalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = _align(self, other)
        terms = dict(a.terms)
        for key, q in b.terms.items():
            acc = q_add(terms.get(key, Q_ZERO), q)
            if acc == Q_ZERO:
                terms.pop(key, None)
            else:
                terms[key] = acc
        return SuperPoly._new(a.ctx, terms)

    __radd__ = __add__

    def __neg__(self):
        return SuperPoly._new(
            self.ctx, {k: q_neg(q) for k, q in self.terms.items()}
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = _align(self, other)
        terms = {}
        for (ek1, ok1), q1 in a.terms.items():
            for (ek2, ok2), q2 in b.terms.items():
                sign, ok = merge_odd(ok1, ok2)
                if sign == 0:
                    continue
                q = q_mul(q1, q2)
                if sign < 0:
                    q = q_neg(q)
                key = (mul_even(ek1, ek2), ok)
                acc = q_add(terms.get(key, Q_ZERO), q)
                if acc == Q_ZERO:
                    terms.pop(key, None)
                else:
                    terms[key] = acc
        return SuperPoly._new(a.ctx, terms)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = self.ctx.one
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = _align(self, other)
        return a.terms == b.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- calculus ----------------------------------------------------------

    def left_derivative(self, name):
        """Left partial derivative with respect to a declared variable.

        For an odd variable the factor is first anticommuted to the front:
        with xi before eta, d/d(xi) (xi*eta) = eta while
        d/d(eta) (xi*eta) = -xi.
        """
        parity, vid = self.ctx._byname[name]
        terms = {}
        if parity == 0:
            for (ek, ok), q in self.terms.items():
                for pos, (v, e) in enumerate(ek):
                    if v == vid:
                        if e == 1:
                            new_ek = ek[:pos] + ek[pos + 1:]
                        else:
                            new_ek = ek[:pos] + ((v, e - 1),) + ek[pos + 1:]
                        coeff = q_mul(q, (e, 0, 0, 0, 1))
                        key = (new_ek, ok)
                        acc = q_add(terms.get(key, Q_ZERO), coeff)
                        if acc == Q_ZERO:
                            terms.pop(key, None)
                        else:
                            terms[key] = acc
                        break
        else:
            for (ek, ok), q in self.terms.items():
                if vid not in ok:
                    continue
                pos = ok.index(vid)
                new_ok = ok[:pos] + ok[pos + 1:]
                coeff = q if pos % 2 == 0 else q_neg(q)
                key = (ek, new_ok)
                acc = q_add(terms.get(key, Q_ZERO), coeff)
                if acc == Q_ZERO:
                    terms.pop(key, None)
                else:
                    terms[key] = acc
        return SuperPoly._new(self.ctx, terms)

    def substitute(self, bindings):
        """Ring-homomorphic substitution ``{name: value}``.

        Values may be polynomials (in this context or one extending it) or
        plain scalars; each value's parity must match the variable it
        replaces.  Unbound variables map to themselves.
        """
        target = self.ctx
        resolved = {}
        for name, value in bindings.items():
            parity, _ = self.ctx._byname[name]
            if not isinstance(value, SuperPoly):
                value = NUMERIC_CTX.scalar(value)
            if value.ctx.extends(target):
                target = value.ctx
            elif not target.extends(value.ctx):
                raise ContextError(
                    f"substitution value for {name!r} lives in an unrelated context"
                )
            if not value.is_zero() and value.parity() != parity:
                raise ValueError(
                    f"substitution for {name!r} must have parity {parity}"
                )
            resolved[name] = value

    # Lift everything to the common target context.
        resolved = {n: target.lift(v) for n, v in resolved.items()}
        even_map = {}
        odd_map = {}
        for name, value in resolved.items():
            parity, vid = self.ctx._byname[name]
            (odd_map if parity else even_map)[vid] = value

        powers = {}

        def even_power(vid, e):
            key = (vid, e)
            if key not in powers:
                powers[key] = even_map[vid] ** e
            return powers[key]

        out = target.zero
        for (ek, ok), q in self.terms.items():
            piece = target.scalar(FieldScalar.from_q(q))
            for vid, e in ek:
                if vid in even_map:
                    piece = piece * even_power(vid, e)
                else:
                    name = self.ctx._even[vid]
                    piece = piece * (target.var(name) ** e)
            for oid in ok:
                if oid in odd_map:
                    piece = piece * odd_map[oid]
                else:
                    piece = piece * target.var(self.ctx._odd[oid])
            out = out + piece
        return out

    # -- rendering ---------------------------------------------------------

    def render(self):
        if not self.terms:
            return "0"
        items = sorted(
            self.terms.items(),
            key=lambda kv: (
                sum(e for _, e in kv[0][0]) + len(kv[0][1]),
                kv[0],
            ),
        )
        parts = []
        for (ek, ok), q in items:
            factors = []
            for vid, e in ek:
                name = self.ctx._even[vid]
                factors.append(name if e == 1 else f"{name}^{e}")
            for oid in ok:
                factors.append(self.ctx._odd[oid])
            coeff = FieldScalar.from_q(q)
            text = coeff.render()
            negative = False
            if factors:
                if text == "1":
                    body = "*".join(factors)
                elif text == "-1":
                    body = "*".join(factors)
                    negative = True
                else:
                    if " " in text:
                        body = f"({text})*" + "*".join(factors)
                    elif text.startswith("-"):
                        body = f"{text[1:]}*" + "*".join(factors)
                        negative = True
                    else:
                        body = f"{text}*" + "*".join(factors)
            else:
                if text.startswith("-"):
                    body = text[1:]
                    negative = True
                else:
                    body = text
            parts.append(("-" if negative else "+", body))
        sign, body = parts[0]
        out = body if sign == "+" else "-" + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = render

    def __repr__(self):
        return f"SuperPoly({self.render()!r})"
