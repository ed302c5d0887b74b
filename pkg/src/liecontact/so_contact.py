"""The contact-graded orthogonal algebra so(p+2, q+2) in its block model.

Conventions, fixed once for the whole package:

* the quadratic form on R^(n+4), n = p+q, is

      S = [[ 0,    0,  -I2 ],
           [ 0,  Ipq,    0 ],
           [-I2,   0,    0 ]]

  with Ipq = diag(1,...,1,-1,...,-1) of signature (p, q);

* an algebra element is stored by its blocks (z, X, A, D, U, w) and
  assembles to

      [[ A,    U,    w*J ],
       [ X,    D,  Ipq*U^t],
       [z*J, X^t*Ipq, -A^t]]

  where J = [[0,1],[-1,0]], A is 2x2, D in so(p,q), X is nx2, U is 2xn;
  the grading reads z -> g_{-2}, X -> g_{-1}, (A,D) -> g_0, U -> g_1,
  w -> g_2, and e denotes the generator with z = 1;

* the ordered basis of the algebra is: e, then X entries column by column
  (first column top to bottom, then second column), then A entries row by
  row, then D_(i,j) = s_i E_(i,j) - s_j E_(j,i) for i < j row by row
  (s_i the form signs), then U entries row by row, then w. Cochain
  coefficient tables elsewhere depend on this order; do not reshuffle.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import Mat, Rat, commutator, det, invert, rank_kernel, rat

J2 = Mat([[0, 1], [-1, 0]]).map(Fraction)


class Signature:
    """Signature (p, q) of the bundle metric; n = p + q >= 1."""

    __slots__ = ("p", "q", "n")

    def __init__(self, p: int, q: int):
        if p < 0 or q < 0 or p + q < 1:
            raise ValueError("signature needs p, q >= 0 and p + q >= 1")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "n", p + q)

    def __setattr__(self, name, value):
        raise AttributeError("Signature is immutable")

    def signs(self):
        return (1,) * self.p + (-1,) * self.q

    def ipq(self) -> Mat:
        return Mat.diag([Fraction(s) for s in self.signs()])

    def form_s(self) -> Mat:
        n = self.n
        z2n = Mat.zeros(2, n)
        zn2 = Mat.zeros(n, 2)
        mi2 = -Mat.identity(2)
        return Mat.block([
            [Mat.zeros(2, 2), z2n, mi2],
            [zn2, self.ipq(), zn2],
            [mi2, z2n, Mat.zeros(2, 2)],
        ])

    def __eq__(self, other):
        return isinstance(other, Signature) and (self.p, self.q) == (other.p, other.q)

    def __hash__(self):
        return hash((self.p, self.q))

    def __repr__(self):
        return "Signature(%d, %d)" % (self.p, self.q)


def inner(sig: Signature, u, v) -> Fraction:
    """<u, v> with respect to Ipq; u, v are length-n sequences."""
    signs = sig.signs()
    acc = Fraction(0)
    for s, a, b in zip(signs, u, v):
        acc += s * a * b
    return acc


def _is_so_pq(sig: Signature, d: Mat) -> bool:
    ipq = sig.ipq()
    return (d.T * ipq + ipq * d).is_zero()


class SoElement:
    """Element of so(p+2, q+2) stored by blocks. Immutable."""

    __slots__ = ("sig", "z", "X", "A", "D", "U", "w")

    def __init__(self, sig: Signature, z=0, X: Mat | None = None,
                 A: Mat | None = None, D: Mat | None = None,
                 U: Mat | None = None, w=0):
        n = sig.n
        X = Mat.zeros(n, 2) if X is None else X
        A = Mat.zeros(2, 2) if A is None else A
        D = Mat.zeros(n, n) if D is None else D
        U = Mat.zeros(2, n) if U is None else U
        if X.rows != n or X.cols != 2:
            raise ValueError("X must be %dx2" % n)
        if A.rows != 2 or A.cols != 2:
            raise ValueError("A must be 2x2")
        if D.rows != n or D.cols != n:
            raise ValueError("D must be %dx%d" % (n, n))
        if U.rows != 2 or U.cols != n:
            raise ValueError("U must be 2x%d" % n)
        if not _is_so_pq(sig, D):
            raise ValueError("D is not in so(p,q) for the given signature")
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "z", rat(z))
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "U", U)
        object.__setattr__(self, "w", rat(w))

    def __setattr__(self, name, value):
        raise AttributeError("SoElement is immutable")

    @classmethod
    def zero(cls, sig: Signature):
        return cls(sig)

    @classmethod
    def generator_e(cls, sig: Signature):
        return cls(sig, z=1)

    def assemble(self) -> Mat:
        sig = self.sig
        ipq = sig.ipq()
        return Mat.block([
            [self.A, self.U, self.w * J2],
            [self.X, self.D, ipq * self.U.T],
            [self.z * J2, self.X.T * ipq, -self.A.T],
        ])

    @classmethod
    def from_matrix(cls, sig: Signature, m: Mat) -> "SoElement":
        """Decompose an (n+4)x(n+4) matrix, checking every redundant block."""
        n = sig.n
        if m.rows != n + 4 or m.cols != n + 4:
            raise ValueError("expected a %dx%d matrix" % (n + 4, n + 4))
        ipq = sig.ipq()
        a = m.submat(0, 2, 0, 2)
        u = m.submat(0, 2, 2, n + 2)
        wj = m.submat(0, 2, n + 2, n + 4)
        x = m.submat(2, n + 2, 0, 2)
        d = m.submat(2, n + 2, 2, n + 2)
        zj = m.submat(n + 2, n + 4, 0, 2)
        w = wj[0, 1]
        z = zj[0, 1]
        elt = cls(sig, z=z, X=x, A=a, D=d, U=u, w=w)
        if m != elt.assemble():
            raise ValueError("matrix is not in the orthogonal algebra "
                             "of the standard form")
        return elt

    def __add__(self, other):
        _check_sig(self, other)
        return SoElement(self.sig, self.z + other.z, self.X + other.X,
                         self.A + other.A, self.D + other.D,
                         self.U + other.U, self.w + other.w)

    def __sub__(self, other):
        _check_sig(self, other)
        return SoElement(self.sig, self.z - other.z, self.X - other.X,
                         self.A - other.A, self.D - other.D,
                         self.U - other.U, self.w - other.w)

    def __neg__(self):
        return SoElement(self.sig, -self.z, -self.X, -self.A, -self.D,
                         -self.U, -self.w)

    def __rmul__(self, scalar):
        s = rat(scalar)
        return SoElement(self.sig, s * self.z, s * self.X, s * self.A,
                         s * self.D, s * self.U, s * self.w)

    def grade(self, d: int) -> "SoElement":
        """Projection onto the degree-d component."""
        sig = self.sig
        if d == -2:
            return SoElement(sig, z=self.z)
        if d == -1:
            return SoElement(sig, X=self.X)
        if d == 0:
            return SoElement(sig, A=self.A, D=self.D)
        if d == 1:
            return SoElement(sig, U=self.U)
        if d == 2:
            return SoElement(sig, w=self.w)
        raise ValueError("degree must be in -2..2")

    def is_zero(self):
        return (self.z == 0 and self.w == 0 and self.X.is_zero()
                and self.A.is_zero() and self.D.is_zero() and self.U.is_zero())

    def __eq__(self, other):
        if not isinstance(other, SoElement):
            return NotImplemented
        return (self.sig == other.sig and self.z == other.z and self.w == other.w
                and self.X == other.X and self.A == other.A
                and self.D == other.D and self.U == other.U)

    def __hash__(self):
        return hash((self.sig, self.z, self.X, self.A, self.D, self.U, self.w))

    def __repr__(self):
        return ("SoElement(%r, z=%s, X=%r, A=%r, D=%r, U=%r, w=%s)"
                % (self.sig, self.z, self.X, self.A, self.D, self.U, self.w))


def _check_sig(x, y):
    if x.sig != y.sig:
        raise ValueError("signature mismatch: %r vs %r" % (x.sig, y.sig))


def bracket(x: SoElement, y: SoElement) -> SoElement:
    """Lie bracket: commutator of the assembled matrices, decomposed back.
    The closed forms below (bracket_gm1, rank_one_bracket) are the second
    computation path and are tested against this one."""
    _check_sig(x, y)
    return SoElement.from_matrix(x.sig, commutator(x.assemble(), y.assemble()))


def bracket_gm1(sig: Signature, x: Mat, y: Mat) -> Fraction:
    """g_{-1} x g_{-1} -> g_{-2} in closed form: the coefficient of e is
    <X1, Y2> - <X2, Y1>."""
    return inner(sig, x.column(0), y.column(1)) - inner(sig, x.column(1), y.column(0))


def equivariance_checks(sig: Signature, c: Mat, a: Mat, x: Mat, y: Mat):
    """Residuals of the two compatibility laws of the g_{-1} bracket:
    [Cx, Cy] - [x, y] for orthogonal C, and [xA, yA] - det(A) [x, y].
    Both must be exactly zero."""
    ipq = sig.ipq()
    if (c.T * ipq * c) != ipq:
        raise ValueError("C is not orthogonal for the (p,q) form")
    r1 = bracket_gm1(sig, c * x, c * y) - bracket_gm1(sig, x, y)
    r2 = bracket_gm1(sig, x * a, y * a) - det(a) * bracket_gm1(sig, x, y)
    return r1, r2


class G0Element:
    """Pair (B, C) with B in GL(2), C in O(p,q); equality is up to a
    simultaneous sign, no canonical representative is chosen."""

    __slots__ = ("sig", "B", "C")

    def __init__(self, sig: Signature, b: Mat, c: Mat):
        if det(b) == 0:
            raise ValueError("B must be invertible")
        ipq = sig.ipq()
        if (c.T * ipq * c) != ipq:
            raise ValueError("C is not orthogonal for the (p,q) form")
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "B", b)
        object.__setattr__(self, "C", c)

    def __setattr__(self, name, value):
        raise AttributeError("G0Element is immutable")

    def __eq__(self, other):
        if not isinstance(other, G0Element):
            return NotImplemented
        if self.sig != other.sig:
            return False
        return ((self.B == other.B and self.C == other.C)
                or (self.B == -other.B and self.C == -other.C))

    def __repr__(self):
        return "G0Element(%r, B=%r, C=%r)" % (self.sig, self.B, self.C)


def ad_g0(g: G0Element, z, x: Mat):
    """Adjoint action on g_{-2} + g_{-1}: (z, X) -> (z / det B, C X B^-1).
    Independent of the sign representative."""
    binv = invert(g.B)
    return rat(z) / det(g.B), g.C * x * binv


def segre_rank(x: Mat) -> int:
    rank, _ = rank_kernel(x)
    return rank


def rank_one_bracket(sig: Signature, f1, f2, u1, u2) -> Fraction:
    """Closed form of the bracket on rank-one elements u*f^t:
    det(f1, f2) <u1, u2>."""
    wedge = f1[0] * f2[1] - f1[1] * f2[0]
    return wedge * inner(sig, u1, u2)


class QGroupElement:
    """Element of the subgroup Q: data (B, C, w), assembling to

        [[B, 0, w*B*J], [0, C, 0], [0, 0, (B^-1)^t]].

    The upper-right block has to be w*B*J (it is the only 2x2 block linear
    in w for which the assembled matrix preserves the form S; a w*C*J block
    would not even be 2x2 for n != 2). Equality is up to an overall sign,
    realized as (B, C, w) ~ (-B, -C, w)."""

    __slots__ = ("sig", "B", "C", "w")

    def __init__(self, sig: Signature, b: Mat, c: Mat, w=0):
        if det(b) == 0:
            raise ValueError("B must be invertible")
        ipq = sig.ipq()
        if (c.T * ipq * c) != ipq:
            raise ValueError("C is not orthogonal for the (p,q) form")
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "B", b)
        object.__setattr__(self, "C", c)
        object.__setattr__(self, "w", rat(w))

    def __setattr__(self, name, value):
        raise AttributeError("QGroupElement is immutable")

    @classmethod
    def identity(cls, sig: Signature):
        return cls(sig, Mat.identity(2), Mat.identity(sig.n), 0)

    def det_b(self) -> Fraction:
        return det(self.B)

    def assemble(self) -> Mat:
        n = self.sig.n
        return Mat.block([
            [self.B, Mat.zeros(2, n), self.w * (self.B * J2)],
            [Mat.zeros(n, 2), self.C, Mat.zeros(n, 2)],
            [Mat.zeros(2, 2), Mat.zeros(2, n), invert(self.B).T],
        ])

    def compose(self, other: "QGroupElement") -> "QGroupElement":
        """Group law in block data; matches the assembled matrix product."""
        _check_sig(self, other)
        w = other.w + self.w / det(other.B)
        return QGroupElement(self.sig, self.B * other.B, self.C * other.C, w)

    def inverse(self) -> "QGroupElement":
        ipq = self.sig.ipq()
        cinv = ipq * self.C.T * ipq
        return QGroupElement(self.sig, invert(self.B), cinv,
                             -self.w * det(self.B))

    def ad_so(self, x: SoElement) -> SoElement:
        """Adjoint action h x h^-1 on the algebra."""
        h = self.assemble()
        hinv = self.inverse().assemble()
        return SoElement.from_matrix(self.sig, h * x.assemble() * hinv)

    def __eq__(self, other):
        if not isinstance(other, QGroupElement):
            return NotImplemented
        if self.sig != other.sig or self.w != other.w:
            return False
        return ((self.B == other.B and self.C == other.C)
                or (self.B == -other.B and self.C == -other.C))

    def __repr__(self):
        return ("QGroupElement(%r, B=%r, C=%r, w=%s)"
                % (self.sig, self.B, self.C, self.w))


# ---------------------------------------------------------------------------
# basis enumeration and structure constants


def so_basis(sig: Signature):
    """Ordered basis, see the module docstring. Length (n+3)(n+4)/2."""
    n = sig.n
    signs = sig.signs()
    out = [SoElement.generator_e(sig)]
    for j in range(2):
        for i in range(n):
            out.append(SoElement(sig, X=_unit(n, 2, i, j)))
    for i in range(2):
        for j in range(2):
            out.append(SoElement(sig, A=_unit(2, 2, i, j)))
    for i in range(n):
        for j in range(i + 1, n):
            d = [[Fraction(0)] * n for _ in range(n)]
            d[i][j] = Fraction(signs[i])
            d[j][i] = Fraction(-signs[j])
            out.append(SoElement(sig, D=Mat(d)))
    for i in range(2):
        for j in range(n):
            out.append(SoElement(sig, U=_unit(2, n, i, j)))
    out.append(SoElement(sig, w=1))
    return out


def _unit(r, c, i, j):
    m = [[Fraction(0)] * c for _ in range(r)]
    m[i][j] = Fraction(1)
    return Mat(m)


def so_basis_degrees(sig: Signature):
    n = sig.n
    return ([-2] + [-1] * (2 * n) + [0] * (4 + n * (n - 1) // 2)
            + [1] * (2 * n) + [2])


def so_coordinates(x: SoElement):
    """Coordinates in the so_basis order."""
    n = x.sig.n
    signs = x.sig.signs()
    coords = [x.z]
    for j in range(2):
        for i in range(n):
            coords.append(x.X[i, j])
    for i in range(2):
        for j in range(2):
            coords.append(x.A[i, j])
    for i in range(n):
        for j in range(i + 1, n):
            coords.append(x.D[i, j] / signs[i])
    for i in range(2):
        for j in range(n):
            coords.append(x.U[i, j])
    coords.append(x.w)
    return coords


def from_coordinates(sig: Signature, coords) -> SoElement:
    basis = so_basis(sig)
    if len(coords) != len(basis):
        raise ValueError("expected %d coordinates" % len(basis))
    acc = SoElement.zero(sig)
    for c, b in zip(coords, basis):
        if c != 0:
            acc = acc + rat(c) * b
    return acc


def structure_constants(sig: Signature):
    """Sparse integer structure-constant table over the so_basis:
    a dict (a, b) -> {c: coeff} with [x_a, x_b] = sum coeff * x_c.
    Runs over plain ints for speed; all basis brackets have integer
    coordinates in this basis."""
    basis = so_basis(sig)
    mats = [[[int(e) for e in row] for row in b.assemble().data] for b in basis]
    dim = len(basis)
    size = sig.n + 4
    idx = range(size)
    table = {}
    for a in range(dim):
        ma = mats[a]
        for b in range(a + 1, dim):
            mb = mats[b]
            comm = [[sum(ma[i][k] * mb[k][j] - mb[i][k] * ma[k][j] for k in idx)
                     for j in idx] for i in idx]
            coords = _int_coordinates(sig, comm)
            sparse = {c: v for c, v in enumerate(coords) if v}
            table[(a, b)] = sparse
            table[(b, a)] = {c: -v for c, v in sparse.items()}
    return table


def _int_coordinates(sig: Signature, m):
    """Integer coordinate extraction from an assembled integer matrix,
    with consistency checks on all redundant blocks."""
    n = sig.n
    signs = sig.signs()
    size = n + 4
    z = m[size - 2][1]
    w = m[0][size - 2 + 1]
    if (m[size - 2][0], m[size - 2][1], m[size - 1][0], m[size - 1][1]) != (0, z, -z, 0):
        raise ValueError("z block is not a multiple of J")
    if (m[0][size - 2], m[0][size - 1], m[1][size - 2], m[1][size - 1]) != (0, w, -w, 0):
        raise ValueError("w block is not a multiple of J")
    coords = [z]
    for j in range(2):
        for i in range(n):
            coords.append(m[2 + i][j])
    for i in range(2):
        for j in range(2):
            coords.append(m[i][j])
            if m[size - 2 + j][size - 2 + i] != -m[i][j]:
                raise ValueError("lower-right block is not -A^t")
    for i in range(n):
        for j in range(n):
            lhs = m[2 + i][2 + j] * signs[i]
            if lhs != -m[2 + j][2 + i] * signs[j]:
                raise ValueError("middle block is not in so(p,q)")
            if i < j:
                coords.append(m[2 + i][2 + j] * signs[i])
    for i in range(2):
        for j in range(n):
            coords.append(m[i][2 + j])
            if m[2 + j][size - 2 + i] != signs[j] * m[i][2 + j]:
                raise ValueError("U companion block mismatch")
    coords.append(w)
    return coords


def jacobi_check(sig: Signature):
    """Check the Jacobi identity on every ordered basis triple through the
    structure-constant table. Returns (triples_checked, failures)."""
    table = structure_constants(sig)
    dim = len(so_basis_degrees(sig))
    failures = 0
    for a in range(dim):
        for b in range(dim):
            tab_ab = table.get((a, b), {})
            for c in range(dim):
                acc = {}
                for e, v in tab_ab.items():
                    for f, u in table.get((e, c), {}).items():
                        acc[f] = acc.get(f, 0) + v * u
                for e, v in table.get((b, c), {}).items():
                    for f, u in table.get((e, a), {}).items():
                        acc[f] = acc.get(f, 0) + v * u
                for e, v in table.get((c, a), {}).items():
                    for f, u in table.get((e, b), {}).items():
                        acc[f] = acc.get(f, 0) + v * u
                if any(val != 0 for val in acc.values()):
                    failures += 1
    return dim ** 3, failures


def grading_check(sig: Signature):
    """Verify on all basis pairs that brackets respect the grading.
    Returns the number of failing pairs."""
    table = structure_constants(sig)
    degrees = so_basis_degrees(sig)
    failures = 0
    dim = len(degrees)
    for a in range(dim):
        for b in range(dim):
            if a == b:
                continue
            target = degrees[a] + degrees[b]
            sparse = table[(a, b)]
            if abs(target) > 2:
                if sparse:
                    failures += 1
            elif any(degrees[c] != target for c in sparse):
                failures += 1
    return failures
