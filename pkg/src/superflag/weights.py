"""Root systems and dominant-weight bookkeeping for osp(2k1-1|2l1).

Weights live in the integer lattice spanned by the orthonormal functionals
mu_1..mu_s (even part, type B_s with s = k1 - 1) and la_1..la_n (odd part,
type C_n with n = l1).  The cohomology bookkeeping reduces to filtering a
finite list of highest weights by dominance and reading off whether the
constant weight survives.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations


@dataclass(frozen=True)
class Weight:
    """An integer vector sum(mu_coeffs[i] mu_{i+1}) + sum(la_coeffs[j] la_{j+1})."""

    mu: tuple
    la: tuple

    @classmethod
    def zero(cls, s, n):
        return cls((0,) * s, (0,) * n)

    @classmethod
    def basis_mu(cls, s, n, i):
        """mu_i (1-based)."""
        if not 1 <= i <= s:
            raise IndexError(f"mu_{i} out of range for rank {s}")
        return cls(tuple(1 if t == i - 1 else 0 for t in range(s)), (0,) * n)

    @classmethod
    def basis_la(cls, s, n, j):
        """la_j (1-based)."""
        if not 1 <= j <= n:
            raise IndexError(f"la_{j} out of range for rank {n}")
        return cls((0,) * s, tuple(1 if t == j - 1 else 0 for t in range(n)))

    def __add__(self, other):
        self._check(other)
        return Weight(
            tuple(a + b for a, b in zip(self.mu, other.mu)),
            tuple(a + b for a, b in zip(self.la, other.la)),
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Weight(tuple(-a for a in self.mu), tuple(-a for a in self.la))

    def scale(self, c):
        return Weight(tuple(c * a for a in self.mu), tuple(c * a for a in self.la))

    def inner(self, other):
        """Inner product in the orthonormal mu/la basis."""
        self._check(other)
        return sum(a * b for a, b in zip(self.mu, other.mu)) + sum(
            a * b for a, b in zip(self.la, other.la)
        )

    def is_zero(self):
        return all(a == 0 for a in self.mu + self.la)

    def _check(self, other):
        if len(self.mu) != len(other.mu) or len(self.la) != len(other.la):
            raise ValueError("weights live in different lattices")

    def render(self):
        parts = []
        for i, a in enumerate(self.mu, start=1):
            if a:
                parts.append((a, f"mu{i}"))
        for j, a in enumerate(self.la, start=1):
            if a:
                parts.append((a, f"la{j}"))
        if not parts:
            return "0"
        out = ""
        for a, sym in parts:
            mag = abs(a)
            term = sym if mag == 1 else f"{mag}*{sym}"
            if not out:
                out = term if a > 0 else f"-{term}"
            else:
                out += f" + {term}" if a > 0 else f" - {term}"
        return out

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class RootSystem:
    """Positive roots of so(2s+1) x sp(2n) in the orthonormal basis."""

    s: int
    n: int

    def positive_even_part(self):
        """Positive roots of the so(2s+1) factor: mu_i +- mu_j (i<j), mu_i."""
        s, n = self.s, self.n
        roots = []
        for i, j in combinations(range(1, s + 1), 2):
            roots.append(Weight.basis_mu(s, n, i) - Weight.basis_mu(s, n, j))
            roots.append(Weight.basis_mu(s, n, i) + Weight.basis_mu(s, n, j))
        for i in range(1, s + 1):
            roots.append(Weight.basis_mu(s, n, i))
        return roots

    def positive_odd_part(self):
        """Positive roots of the sp(2n) factor: la_p - la_q (p<q), la_p + la_q (p<=q)."""
        s, n = self.s, self.n
        roots = []
        for p, q in combinations(range(1, n + 1), 2):
            roots.append(Weight.basis_la(s, n, p) - Weight.basis_la(s, n, q))
        for p in range(1, n + 1):
            for q in range(p, n + 1):
                roots.append(Weight.basis_la(s, n, p) + Weight.basis_la(s, n, q))
        return roots

    def positive_roots(self):
        return self.positive_even_part() + self.positive_odd_part()

    def simple_roots(self):
        """mu_i - mu_{i+1}, mu_s; la_j - la_{j+1}, 2 la_n."""
        s, n = self.s, self.n
        roots = []
        for i in range(1, s):
            roots.append(Weight.basis_mu(s, n, i) - Weight.basis_mu(s, n, i + 1))
        if s:
            roots.append(Weight.basis_mu(s, n, s))
        for j in range(1, n):
            roots.append(Weight.basis_la(s, n, j) - Weight.basis_la(s, n, j + 1))
        if n:
            roots.append(Weight.basis_la(s, n, n).scale(2))
        return roots

    def is_dominant(self, w):
        """Non-negative inner product with every positive root."""
        return all(w.inner(r) >= 0 for r in self.positive_roots())


def root_system(k1, l1):
    """The root system governing the fiber data at sizes (k1, l1)."""
    if k1 < 1 or l1 < 0:
        raise ValueError("need k1 >= 1 and l1 >= 0")
    return RootSystem(k1 - 1, l1)


def psi_highest_weights(k1, l1):
    """Highest weights of the pulled-back function sheaf on the fiber.

    The generic list is {mu1 - mu_s, mu1 - la_n, la1 - mu_s, la1 - la_n, 0};
    small ranks collapse coincident functionals, dropping the summands that
    degenerate (for s = 1 the difference mu1 - mu_s vanishes from the even
    block, for n = 1 the odd block contributes la1 - mu_s only, and so on).
    """
    if k1 < 1 or l1 < 0:
        raise ValueError("need k1 >= 1 and l1 >= 0")
    s, n = k1 - 1, l1
    mu = lambda i: Weight.basis_mu(s, n, i)
    la = lambda j: Weight.basis_la(s, n, j)
    zero = Weight.zero(s, n)
    if l1 == 0:
        if k1 > 2:
            return [mu(1) - mu(s)]
        return []
    if k1 == 1:
        if l1 > 1:
            return [la(1) - la(n)]
        return []
    if k1 == 2 and l1 == 1:
        return [mu(1) - la(1), la(1) - mu(1), zero]
    if k1 == 2:
        return [mu(1) - la(n), la(1) - mu(1), la(1) - la(n), zero]
    if l1 == 1:
        return [mu(1) - mu(s), mu(1) - la(1), la(1) - mu(s), zero]
    return [mu(1) - mu(s), mu(1) - la(n), la(1) - mu(s), la(1) - la(n), zero]


def bwb_dominant_filter(weights, rs):
    """Keep the dominant entries (with multiplicity, preserving order).

    Non-dominant highest weights contribute no cohomology in degree zero,
    so the surviving list is exactly what the fiber functions decompose
    into.
    """
    return [w for w in weights if rs.is_dominant(w)]


def w0_fiber_description(k1, l1):
    """Global functions on the fiber: "ℂ" (constants only) or "{0}".

    Filters the highest-weight list by dominance.  A surviving nonzero
    weight would mean a non-constant global function; no size produces
    one, and encountering it raises rather than guessing a description.
    """
    rs = root_system(k1, l1)
    survivors = bwb_dominant_filter(psi_highest_weights(k1, l1), rs)
    if not survivors:
        return "{0}"
    if all(w.is_zero() for w in survivors):
        return "ℂ"
    raise ValueError(
        "unexpected non-constant dominant weight: "
        + ", ".join(w.render() for w in survivors)
    )
