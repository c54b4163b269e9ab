"""Orthosymplectic Lie superalgebras as block supermatrices.

Four matrix realizations ("flavors") are supported, differing in the Gram
matrix of the defining bilinear form and hence in the block pattern of the
solution space of ``M^ST @ G + G @ M = 0``:

``odd``
    osp(2m+1|2n); even Gram has E_m off-diagonal blocks plus a middle 1,
    odd part is the standard symplectic J.  Five-block layout
    (m, m, 1 | n, n).
``even``
    osp(2k|2l); even Gram has E_k off-diagonal blocks.  Four-block layout
    (k, k | l, l).
``primed``
    the same algebras after the sqrt2/i change of basis: even Gram is the
    identity E_t with t = 2k-1 or 2k; the layout is five- or four-block
    depending on the parity of t.
``gl``
    the full matrix algebra gl(p|q); no defining equation.  Used as a
    control in center computations.

Every basis generator is tagged by its free block parameter (for instance
``A11:1,2`` or ``G4:1``) so structure constants are reproducible run to run.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import RankTracker
from .matrices import BlockShape, SuperMatrix
from .ring import NUMERIC_CTX
from .scalars import FieldScalar, I_INV_SQRT2, INV_SQRT2, ONE


class NotInSpanError(ValueError):
    """A matrix failed to expand exactly in the requested basis."""


@dataclass(frozen=True)
class GramForm:
    flavor: str
    sizes: tuple
    shape: BlockShape
    matrix: SuperMatrix


@dataclass(frozen=True)
class Generator:
    tag: str
    parity: int
    matrix: SuperMatrix
    primary: tuple


@dataclass
class OspBasis:
    flavor: str
    sizes: tuple
    gram: GramForm
    generators: list
    name: str = "osp"
    _by_tag: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._by_tag = {g.tag: g for g in self.generators}

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, tag):
        return self._by_tag[tag]

    def tags(self):
        return [g.tag for g in self.generators]

    def even_generators(self):
        return [g for g in self.generators if g.parity == 0]

    def odd_generators(self):
        return [g for g in self.generators if g.parity == 1]

    def coefficients_of(self, m):
        """Expand ``m`` exactly in this basis, or raise NotInSpanError.

        Each generator owns a distinct +1 "primary" slot that no other
        generator touches, so candidate coefficients are read off directly;
        the re-assembled combination is then compared entry by entry, which
        makes the read-off a sound span test.
        """
        coeffs = {}
        acc = None
        for gen in self.generators:
            entry = m[gen.primary]
            if entry.is_zero():
                continue
            if not entry.is_scalar():
                raise NotInSpanError(
                    f"slot {gen.primary} of the candidate is not scalar"
                )
            c = entry.scalar_part()
            coeffs[gen.tag] = c
            scaled = gen.matrix * c
            acc = scaled if acc is None else acc + scaled
        if acc is None:
            acc = SuperMatrix.zeros(m.rows, m.cols, m.ctx)
        if acc != m:
            raise NotInSpanError("matrix is not in the span of the basis")
        return coeffs


# ---------------------------------------------------------------------------
# Gram forms
# ---------------------------------------------------------------------------


def _check_sizes(flavor, a, b):
    if a < 0 or b < 0 or (a == 0 and b == 0):
        raise ValueError(f"invalid sizes ({a}, {b}) for flavor {flavor!r}")


def _shape(flavor, a, b):
    if flavor == "odd":
        return BlockShape(2 * a + 1, 2 * b, (a, a, 1), (b, b))
    if flavor == "even":
        return BlockShape(2 * a, 2 * b, (a, a), (b, b))
    if flavor == "primed":
        t = a
        if t % 2:
            k = (t + 1) // 2
            return BlockShape(t, 2 * b, (k - 1, k - 1, 1), (b, b))
        k = t // 2
        return BlockShape(t, 2 * b, (k, k), (b, b))
    if flavor == "gl":
        return BlockShape(a, b)
    raise ValueError(f"unknown flavor {flavor!r}")


def gram_form(flavor, a, b):
    """The Gram matrix of the defining form for the given flavor and sizes.

    Parameters mean (m, n) for ``odd``, (k, l) for ``even`` and (t, l) for
    ``primed`` where t is the full even size 2k-1 or 2k.
    """
    _check_sizes(flavor, a, b)
    shape = _shape(flavor, a, b)
    entries = {}
    p = shape.even
    if flavor == "odd":
        for i in range(a):
            entries[(i, a + i)] = ONE
            entries[(a + i, i)] = ONE
        entries[(2 * a, 2 * a)] = ONE
    elif flavor == "even":
        for i in range(a):
            entries[(i, a + i)] = ONE
            entries[(a + i, i)] = ONE
    elif flavor == "primed":
        for i in range(p):
            entries[(i, i)] = ONE
    else:
        raise ValueError(f"no gram form for flavor {flavor!r}")
    for j in range(b):
        entries[(p + j, p + b + j)] = ONE
        entries[(p + b + j, p + j)] = -ONE
    mat = SuperMatrix.build(shape, shape, entries)
    return GramForm(flavor, (a, b), shape, mat)


def is_member(m, gram):
    """Exact test of the defining equation M^ST G + G M = 0."""
    if not (m.rows.compatible(gram.shape) and m.cols.compatible(gram.shape)):
        raise ValueError("matrix shape does not match the gram form")
    return membership_residual(m, gram).is_zero()


def membership_residual(m, gram):
    g = gram.matrix.lift(m.ctx) if m.ctx is not gram.matrix.ctx else gram.matrix
    return m.supertranspose() @ g + g @ m


# ---------------------------------------------------------------------------
# Basis enumeration
# ---------------------------------------------------------------------------


def _unit_entries(shape, spec):
    """Build a generator matrix from ((i, j), +-1) entry specs."""
    entries = {(i, j): (ONE if s > 0 else -ONE) for (i, j), s in spec}
    return SuperMatrix.build(shape, shape, entries)


def _sp_block_generators(shape, c1, c2, n):
    gens = []
    for i in range(n):
        for j in range(n):
            gens.append((f"B11:{i + 1},{j + 1}", 0,
                         [((c1 + i, c1 + j), 1), ((c2 + j, c2 + i), -1)],
                         (c1 + i, c1 + j)))
    for i in range(n):
        for j in range(i, n):
            spec = [((c1 + i, c2 + j), 1)]
            if i != j:
                spec.append(((c1 + j, c2 + i), 1))
            gens.append((f"B12:{i + 1},{j + 1}", 0, spec, (c1 + i, c2 + j)))
    for i in range(n):
        for j in range(i, n):
            spec = [((c2 + i, c1 + j), 1)]
            if i != j:
                spec.append(((c2 + j, c1 + i), 1))
            gens.append((f"B21:{i + 1},{j + 1}", 0, spec, (c2 + i, c1 + j)))
    return gens


def _basis_specs(flavor, a, b):
    """(tag, parity, entry spec, primary slot) for every free block entry."""
    shape = _shape(flavor, a, b)
    p = shape.even
    gens = []
    if flavor == "gl":
        for i in range(shape.total):
            for j in range(shape.total):
                parity = int(i >= p) ^ int(j >= p)
                gens.append((f"E:{i + 1},{j + 1}", parity, [((i, j), 1)], (i, j)))
        # evens first, then odds, preserving index order within each class
        gens.sort(key=lambda g: g[1])
        return shape, gens

    if flavor == "odd":
        m, n = a, b
        b1, b2, b3 = 0, m, 2 * m
        c1, c2 = p, p + n
        for i in range(m):
            for j in range(m):
                gens.append((f"A11:{i + 1},{j + 1}", 0,
                             [((b1 + i, b1 + j), 1), ((b2 + j, b2 + i), -1)],
                             (b1 + i, b1 + j)))
        for i in range(m):
            for j in range(i + 1, m):
                gens.append((f"A12:{i + 1},{j + 1}", 0,
                             [((b1 + i, b2 + j), 1), ((b1 + j, b2 + i), -1)],
                             (b1 + i, b2 + j)))
                gens.append((f"A21:{i + 1},{j + 1}", 0,
                             [((b2 + i, b1 + j), 1), ((b2 + j, b1 + i), -1)],
                             (b2 + i, b1 + j)))
        for i in range(m):
            gens.append((f"G1:{i + 1}", 0,
                         [((b1 + i, b3), 1), ((b3, b2 + i), -1)], (b1 + i, b3)))
            gens.append((f"G2:{i + 1}", 0,
                         [((b2 + i, b3), 1), ((b3, b1 + i), -1)], (b2 + i, b3)))
        gens.extend(_sp_block_generators(shape, c1, c2, n))
        for i in range(m):
            for j in range(n):
                gens.append((f"C11:{i + 1},{j + 1}", 1,
                             [((b1 + i, c1 + j), 1), ((c2 + j, b2 + i), 1)],
                             (b1 + i, c1 + j)))
                gens.append((f"C12:{i + 1},{j + 1}", 1,
                             [((b1 + i, c2 + j), 1), ((c1 + j, b2 + i), -1)],
                             (b1 + i, c2 + j)))
                gens.append((f"C21:{i + 1},{j + 1}", 1,
                             [((b2 + i, c1 + j), 1), ((c2 + j, b1 + i), 1)],
                             (b2 + i, c1 + j)))
                gens.append((f"C22:{i + 1},{j + 1}", 1,
                             [((b2 + i, c2 + j), 1), ((c1 + j, b1 + i), -1)],
                             (b2 + i, c2 + j)))
        for j in range(n):
            gens.append((f"G3:{j + 1}", 1,
                         [((b3, c1 + j), 1), ((c2 + j, b3), 1)], (b3, c1 + j)))
            gens.append((f"G4:{j + 1}", 1,
                         [((b3, c2 + j), 1), ((c1 + j, b3), -1)], (b3, c2 + j)))
    elif flavor == "even":
        k, n = a, b
        b1, b2 = 0, k
        c1, c2 = p, p + n
        for i in range(k):
            for j in range(k):
                gens.append((f"A11:{i + 1},{j + 1}", 0,
                             [((b1 + i, b1 + j), 1), ((b2 + j, b2 + i), -1)],
                             (b1 + i, b1 + j)))
        for i in range(k):
            for j in range(i + 1, k):
                gens.append((f"A12:{i + 1},{j + 1}", 0,
                             [((b1 + i, b2 + j), 1), ((b1 + j, b2 + i), -1)],
                             (b1 + i, b2 + j)))
                gens.append((f"A21:{i + 1},{j + 1}", 0,
                             [((b2 + i, b1 + j), 1), ((b2 + j, b1 + i), -1)],
                             (b2 + i, b1 + j)))
        gens.extend(_sp_block_generators(shape, c1, c2, n))
        for i in range(k):
            for j in range(n):
                gens.append((f"C11:{i + 1},{j + 1}", 1,
                             [((b1 + i, c1 + j), 1), ((c2 + j, b2 + i), 1)],
                             (b1 + i, c1 + j)))
                gens.append((f"C12:{i + 1},{j + 1}", 1,
                             [((b1 + i, c2 + j), 1), ((c1 + j, b2 + i), -1)],
                             (b1 + i, c2 + j)))
                gens.append((f"C21:{i + 1},{j + 1}", 1,
                             [((b2 + i, c1 + j), 1), ((c2 + j, b1 + i), 1)],
                             (b2 + i, c1 + j)))
                gens.append((f"C22:{i + 1},{j + 1}", 1,
                             [((b2 + i, c2 + j), 1), ((c1 + j, b1 + i), -1)],
                             (b2 + i, c2 + j)))
    elif flavor == "primed":
        t, n = a, b
        c1, c2 = p, p + n
        if t % 2:
            # five-block layout (k-1, k-1, 1 | n, n); even part antisymmetric
            k1 = (t + 1) // 2
            s = k1 - 1
            b1, b2, b3 = 0, s, 2 * s
            for i in range(s):
                for j in range(i + 1, s):
                    gens.append((f"A21:{i + 1},{j + 1}", 0,
                                 [((b1 + i, b1 + j), 1), ((b1 + j, b1 + i), -1)],
                                 (b1 + i, b1 + j)))
                    gens.append((f"A12:{i + 1},{j + 1}", 0,
                                 [((b2 + i, b2 + j), 1), ((b2 + j, b2 + i), -1)],
                                 (b2 + i, b2 + j)))
            for i in range(s):
                for j in range(s):
                    gens.append((f"A11:{i + 1},{j + 1}", 0,
                                 [((b2 + i, b1 + j), 1), ((b1 + j, b2 + i), -1)],
                                 (b2 + i, b1 + j)))
            for i in range(s):
                gens.append((f"G2:{i + 1}", 0,
                             [((b1 + i, b3), 1), ((b3, b1 + i), -1)],
                             (b1 + i, b3)))
                gens.append((f"G1:{i + 1}", 0,
                             [((b2 + i, b3), 1), ((b3, b2 + i), -1)],
                             (b2 + i, b3)))
            gens.extend(_sp_block_generators(shape, c1, c2, n))
            for i in range(s):
                for j in range(n):
                    gens.append((f"C21:{i + 1},{j + 1}", 1,
                                 [((b1 + i, c1 + j), 1), ((c2 + j, b1 + i), 1)],
                                 (b1 + i, c1 + j)))
                    gens.append((f"C11:{i + 1},{j + 1}", 1,
                                 [((b2 + i, c1 + j), 1), ((c2 + j, b2 + i), 1)],
                                 (b2 + i, c1 + j)))
                    gens.append((f"C22:{i + 1},{j + 1}", 1,
                                 [((b1 + i, c2 + j), 1), ((c1 + j, b1 + i), -1)],
                                 (b1 + i, c2 + j)))
                    gens.append((f"C12:{i + 1},{j + 1}", 1,
                                 [((b2 + i, c2 + j), 1), ((c1 + j, b2 + i), -1)],
                                 (b2 + i, c2 + j)))
            for j in range(n):
                gens.append((f"G4:{j + 1}", 1,
                             [((b3, c1 + j), 1), ((c2 + j, b3), 1)],
                             (b3, c1 + j)))
                gens.append((f"G3:{j + 1}", 1,
                             [((c1 + j, b3), 1), ((b3, c2 + j), -1)],
                             (c1 + j, b3)))
        else:
            # four-block layout (k, k | n, n)
            k = t // 2
            b1, b2 = 0, k
            for i in range(k):
                for j in range(i + 1, k):
                    gens.append((f"A21:{i + 1},{j + 1}", 0,
                                 [((b1 + i, b1 + j), 1), ((b1 + j, b1 + i), -1)],
                                 (b1 + i, b1 + j)))
                    gens.append((f"A12:{i + 1},{j + 1}", 0,
                                 [((b2 + i, b2 + j), 1), ((b2 + j, b2 + i), -1)],
                                 (b2 + i, b2 + j)))
            for i in range(k):
                for j in range(k):
                    gens.append((f"A11:{i + 1},{j + 1}", 0,
                                 [((b2 + i, b1 + j), 1), ((b1 + j, b2 + i), -1)],
                                 (b2 + i, b1 + j)))
            gens.extend(_sp_block_generators(shape, c1, c2, n))
            for i in range(k):
                for j in range(n):
                    gens.append((f"C21:{i + 1},{j + 1}", 1,
                                 [((b1 + i, c1 + j), 1), ((c2 + j, b1 + i), 1)],
                                 (b1 + i, c1 + j)))
                    gens.append((f"C11:{i + 1},{j + 1}", 1,
                                 [((b2 + i, c1 + j), 1), ((c2 + j, b2 + i), 1)],
                                 (b2 + i, c1 + j)))
                    gens.append((f"C22:{i + 1},{j + 1}", 1,
                                 [((b1 + i, c2 + j), 1), ((c1 + j, b1 + i), -1)],
                                 (b1 + i, c2 + j)))
                    gens.append((f"C12:{i + 1},{j + 1}", 1,
                                 [((b2 + i, c2 + j), 1), ((c1 + j, b2 + i), -1)],
                                 (b2 + i, c2 + j)))
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    return shape, gens


_BLOCK_ORDER = ["A11", "A12", "A21", "G1", "G2", "B11", "B12", "B21",
                "C11", "C12", "C21", "C22", "G3", "G4", "E"]


def _tag_sort_key(item):
    tag = item[0]
    block, _, indices = tag.partition(":")
    nums = tuple(int(x) for x in indices.split(",")) if indices else ()
    return (item[1], _BLOCK_ORDER.index(block), nums)


def basis(flavor, a, b):
    """Canonical generators, one per free block entry, all verified members."""
    _check_sizes(flavor, a, b)
    shape, specs = _basis_specs(flavor, a, b)
    specs.sort(key=_tag_sort_key)
    gram = None if flavor == "gl" else gram_form(flavor, a, b)
    gens = []
    for tag, parity, spec, primary in specs:
        mat = _unit_entries(shape, spec)
        if gram is not None and not is_member(mat, gram):
            raise AssertionError(f"generator {tag} fails the defining equation")
        gens.append(Generator(tag, parity, mat, primary))
    return OspBasis(flavor, (a, b), gram, gens)


def dimension_counts(flavor, a, b):
    """(even, odd) dimensions by the block-parameter count."""
    if flavor == "odd":
        m, n = a, b
        return m * (2 * m + 1) + n * (2 * n + 1), 2 * n * (2 * m + 1)
    if flavor == "even":
        k, n = a, b
        return k * (2 * k - 1) + n * (2 * n + 1), 2 * n * (2 * k)
    if flavor == "primed":
        t, n = a, b
        return t * (t - 1) // 2 + n * (2 * n + 1), 2 * n * t
    if flavor == "gl":
        return a * a + b * b, 2 * a * b
    raise ValueError(f"unknown flavor {flavor!r}")


# ---------------------------------------------------------------------------
# Closure and center
# ---------------------------------------------------------------------------


def closure_check(bas):
    """Superbracket every generator pair and re-expand in the basis.

    Returns a report dict with the sparse structure constants
    ``(tag_p, tag_q, tag_r, coefficient)`` and any failures.  For a filtered
    basis (a parabolic) a bracket landing outside the subset is a failure,
    which is exactly the subalgebra test.
    """
    constants = []
    failures = []
    gens = bas.generators
    for p in range(len(gens)):
        for q in range(p, len(gens)):
            gp, gq = gens[p], gens[q]
            if p == q and gp.parity == 0:
                continue  # [X, X] = 0 identically for even X
            br = gp.matrix.superbracket(gq.matrix)
            try:
                coeffs = bas.coefficients_of(br)
            except NotInSpanError:
                failures.append((gp.tag, gq.tag))
                continue
            for tag, c in sorted(coeffs.items()):
                constants.append((gp.tag, gq.tag, tag, c))
    return {
        "pairs": len(gens) * (len(gens) + 1) // 2,
        "structure_constants": constants,
        "failures": failures,
    }


def super_jacobi_holds(x, y, z):
    """Graded Leibniz form of the Jacobi identity for three homogeneous
    matrices: [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]."""
    left = x.superbracket(y.superbracket(z))
    right = x.superbracket(y).superbracket(z)
    tail = y.superbracket(x.superbracket(z))
    if x.parity and y.parity:
        return left == right - tail
    return left == right + tail


def center(flavor, a, b):
    """Exact basis of {Z : [Z, X] = 0 for all X}, computed per parity sector."""
    bas = basis(flavor, a, b)
    out = []
    for parity in (0, 1):
        sector = [g for g in bas.generators if g.parity == parity]
        if not sector:
            continue
        tracker = RankTracker(len(sector))
        for probe in bas.generators:
            brackets = [g.matrix.superbracket(probe.matrix) for g in sector]
            slots = sorted({k for br in brackets for k in br.entries})
            for slot in slots:
                row = [br[slot].scalar_part() for br in brackets]
                tracker.add(row)
                if tracker.is_full():
                    break
            if tracker.is_full():
                break
        for vec in tracker.nullspace():
            acc = None
            for c, g in zip(vec, sector):
                if not c:
                    continue
                scaled = g.matrix * c
                acc = scaled if acc is None else acc + scaled
            if acc is not None:
                out.append(acc)
    return out


# ---------------------------------------------------------------------------
# Basis change, embedding, parabolics
# ---------------------------------------------------------------------------


def basis_change_S(flavor, k1, l1):
    """The sqrt2/i block matrix S with S^ST @ Gram @ S = primed Gram.

    ``flavor`` selects the source algebra: "odd" for osp(2k1-1|2l1) (the
    even part of S has a middle 1), "even" for osp(2k1|2l1).
    """
    if flavor == "odd":
        s = k1 - 1
        shape = _shape("odd", s, l1)
        middle = True
    elif flavor == "even":
        s = k1
        shape = _shape("even", s, l1)
        middle = False
    else:
        raise ValueError("flavor must be 'odd' or 'even'")
    entries = {}
    for i in range(s):
        entries[(i, i)] = INV_SQRT2
        entries[(i, s + i)] = I_INV_SQRT2
        entries[(s + i, i)] = INV_SQRT2
        entries[(s + i, s + i)] = -I_INV_SQRT2
    if middle:
        entries[(2 * s, 2 * s)] = ONE
    p = shape.even
    for j in range(2 * l1):
        entries[(p + j, p + j)] = ONE
    return SuperMatrix.build(shape, shape, entries)


def conjugate(m, s, s_inv=None):
    """S^{-1} M S; maps members of osp(Gram) to members of osp(primed Gram)."""
    if s_inv is None:
        s_inv = s.invert()
    return s_inv @ m @ s


def embed_j(x):
    """Border a primed osp(2k1-1|2l1) matrix with a zero first row/column.

    The result lies in primed osp(2k1|2l1); on the supergroup the map is
    X -> diag(1, X), on the superalgebra the new row and column are zero.
    """
    t, q = x.rows.even, x.rows.odd
    if t % 2 == 0 or not x.is_square():
        raise ValueError("source must be square with odd even-size 2k1-1")
    l1 = q // 2
    source = gram_form("primed", t, l1)
    if not is_member(x, source):
        raise ValueError("matrix is not in the source algebra")
    target_shape = _shape("primed", t + 1, l1)
    entries = {(i + 1, j + 1): v for (i, j), v in x.entries.items()}
    return SuperMatrix.build(target_shape, target_shape, entries,
                             ctx=x.ctx, parity=x.parity)


def j_image_contains(m):
    """Image test: vanishing first row and column plus primed membership."""
    t, q = m.rows.even, m.rows.odd
    if t % 2:
        raise ValueError("j lands in an even-sized primed algebra")
    for (i, j) in m.entries:
        if i == 0 or j == 0:
            return False
    return is_member(m, gram_form("primed", t, q // 2))


#: Free block families of the base-point stabilizers, per layout.
#:
#: "original" is the odd/even flavor where the stabilized subspace is the
#: span of the second even block and the second odd block; the pattern is a
#: genuine subalgebra.  "primed" is the corresponding block pattern written
#: with the primed slot names; it is the shape that the zero-bordering
#: embedding maps into itself (excluded families land on excluded slots),
#: which is what makes d j(p) subset-of p1 a slot-by-slot statement.  The
#: primed pattern is *not* bracket-closed as a literal subspace (for
#: instance [A11, G2] = G1 there), so closure is a property of the original
#: layout only.
PARABOLIC_TAGS = {
    ("p", "original"): {"A11", "A21", "G2", "C11", "C21", "C22", "G3",
                        "B11", "B21"},
    ("p1", "original"): {"A11", "A21", "C11", "C21", "C22", "B11", "B21"},
    ("p", "primed"): {"A21", "A11", "G2", "C21", "C22", "C11", "G4",
                      "B11", "B21"},
    ("p1", "primed"): {"A21", "A11", "C21", "C22", "C11", "B11", "B21"},
}


def parabolic_basis(which, k1, l1, layout="original"):
    """Basis of the stabilizer pattern p or p1 at sizes (k1, l1).

    ``which`` is "p" (ambient osp(2k1-1|2l1)) or "p1" (ambient
    osp(2k1|2l1)).  With ``layout="original"`` the ambient algebra is the
    odd/even flavor and the result is the stabilizer of the base flag, a
    bracket-closed subalgebra whose even diagonal carries the free A11
    block.  With ``layout="primed"`` the ambient algebra is the primed
    flavor and the result is the matching primed slot pattern, the one
    preserved slot-by-slot by the zero-bordering embedding; see
    PARABOLIC_TAGS for why that pattern is not itself closed.
    """
    key = (which, layout)
    if key not in PARABOLIC_TAGS:
        raise ValueError("which must be 'p' or 'p1'; layout 'original' or"
                         " 'primed'")
    if k1 < 1 or l1 < 1:
        raise ValueError("parabolic sizes need k1 >= 1 and l1 >= 1")
    if layout == "original":
        if which == "p":
            ambient = basis("odd", k1 - 1, l1)
        else:
            ambient = basis("even", k1, l1)
    else:
        t = 2 * k1 - 1 if which == "p" else 2 * k1
        ambient = basis("primed", t, l1)
    allowed = PARABOLIC_TAGS[key]
    gens = [g for g in ambient.generators if g.tag.split(":")[0] in allowed]
    return OspBasis(ambient.flavor, ambient.sizes, ambient.gram, gens,
                    name=which)


def stabilized_subspace_indices(flavor, shape):
    """Row indices of the base flag: second even block plus second odd block."""
    ev = shape.even_parts
    if flavor == "odd":
        lo = ev[0]
        even_idx = range(lo, lo + ev[1])
    elif flavor == "even":
        even_idx = range(ev[0], ev[0] + ev[1])
    else:
        raise ValueError("base flag is defined for the odd/even flavors")
    n = shape.odd_parts[1]
    odd_lo = shape.even + shape.odd_parts[0]
    return list(even_idx) + list(range(odd_lo, odd_lo + n))
