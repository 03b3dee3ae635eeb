"""Classical Lie algebras, their enveloping algebras and Harish-Chandra images.

Three realizations are provided:

* ``gl`` - basis ``E_ij`` of ``gl_n``;
* signed ``o``/``sp`` - ``F_ij = E_ij - theta_ij E_{-j,-i}`` on the index set
  ``-n..n`` (with ``0`` exactly when ``N`` is odd), kept on a half-basis;
* ``o-skew`` - ``F_ij = E_ij - E_ji`` with indices ``1..N``.

The PBW order puts lowering generators first, then the Cartan ones, then
the raising ones, so the Harish-Chandra projection just drops every monomial
with a non-Cartan factor.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product

from .algebra import PBWAlgebra
from .scalars import Poly, Q, norm, var
from .series import SeriesMatrix

__all__ = [
    "EnvAlgebra",
    "LieSpec",
    "make_g",
    "make_gl",
    "make_o_skew",
    "signed_indices",
    "theta",
]

_RANK = {"lower": 0, "cartan": 1, "raise": 2, "other": 1}


def signed_indices(N):
    """``-n..n`` for ``N = 2n + 1`` and ``-n..-1, 1..n`` for ``N = 2n``."""
    n = N // 2
    idx = list(range(-n, n + 1))
    if N % 2 == 0:
        idx.remove(0)
    return idx


def _sgn(i):
    return (i > 0) - (i < 0)


def theta(case, i, j):
    """``1`` in the orthogonal case, ``sgn i * sgn j`` in the symplectic case."""
    if case == "o":
        return 1
    return _sgn(i) * _sgn(j)


def _mat_mul(a, b):
    out = {}
    for (i, k), x in a.items():
        for (k2, j), y in b.items():
            if k == k2:
                out[(i, j)] = out.get((i, j), 0) + x * y
    return {key: v for key, v in out.items() if v}


def _mat_comm(a, b):
    ab = _mat_mul(a, b)
    for key, v in _mat_mul(b, a).items():
        ab[key] = ab.get(key, 0) - v
    return {key: norm(v) for key, v in ab.items() if v}


class LieSpec:
    """Finite-dimensional Lie algebra given by a matrix realization.

    ``basis`` is a list of ``(label, matrix, kind)``; matrices are sparse
    dicts ``{(row, col): value}`` and ``label = (letter, i, j)`` names the
    pivot entry ``(i, j)`` where only that basis element is nonzero.
    Structure constants are derived from matrix commutators and then
    checked for antisymmetry and the Jacobi identity.
    """

    def __init__(self, realization, N, indices, basis, case=None):
        self.realization = realization
        self.N = N
        self.n = N // 2 if realization != "gl" else N
        self.case = case
        self.indices = list(indices)
        order = sorted(
            range(len(basis)),
            key=lambda k: (_RANK[basis[k][2]], basis[k][0][1], basis[k][0][2]),
        )
        self.labels = [basis[k][0] for k in order]
        self.matrices = [basis[k][1] for k in order]
        self.kinds = [basis[k][2] for k in order]
        self.id_of = {lab: g for g, lab in enumerate(self.labels)}
        self.dim = len(self.labels)
        self.table = {}
        for a in range(self.dim):
            for b in range(self.dim):
                if a != b:
                    self.table[(a, b)] = self.decompose(_mat_comm(self.matrices[a], self.matrices[b]))
        self._check_axioms()

    def __repr__(self):
        name = {"gl": f"gl_{self.N}", "o-skew": f"o_{self.N} (skew)"}.get(self.realization)
        return name or f"{self.realization}_{self.N}"

    def decompose(self, mat):
        coeffs = {}
        for g, lab in enumerate(self.labels):
            piv = (lab[1], lab[2])
            v = mat.get(piv, 0)
            if v:
                coeffs[g] = norm(Fraction(v) / self.matrices[g][piv])
        recon = {}
        for g, c in coeffs.items():
            for key, x in self.matrices[g].items():
                recon[key] = recon.get(key, 0) + c * x
        recon = {k: norm(v) for k, v in recon.items() if v}
        if recon != {k: norm(v) for k, v in mat.items() if v}:
            raise ValueError("matrix is not in the span of the basis")
        return coeffs

    def bracket_coeffs(self, a, b):
        if a == b:
            return {}
        return self.table[(a, b)]

    def _check_axioms(self):
        for (a, b), c in self.table.items():
            neg = {k: -v for k, v in self.table[(b, a)].items()}
            if c != neg:
                raise ValueError("structure constants are not antisymmetric")

        def br(x, y):
            out = {}
            for a, ca in x.items():
                for b, cb in y.items():
                    for c, v in self.bracket_coeffs(a, b).items():
                        out[c] = out.get(c, 0) + ca * cb * v
            return {k: v for k, v in out.items() if v}

        for a in range(self.dim):
            for b in range(a + 1, self.dim):
                for c in range(b + 1, self.dim):
                    total = {}
                    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                        for k, v in br({x: 1}, br({y: 1}, {z: 1})).items():
                            total[k] = total.get(k, 0) + v
                    if any(v for v in total.values()):
                        raise ValueError("structure constants violate the Jacobi identity")

    # -- weights --------------------------------------------------------
    def rho(self, i):
        """Shift ``rho_i`` of the signed realization (``rho_{-i} = -rho_i``)."""
        if self.realization not in ("o", "sp"):
            raise ValueError("rho is defined for the signed orthogonal/symplectic realization")
        if i == 0:
            return Q(1, 2)
        a = abs(i)
        if self.realization == "sp":
            r = a
        elif self.N % 2:
            r = Q(2 * a - 1, 2)
        else:
            r = a - 1
        return -r if i > 0 else r

    def lam(self, i):
        return var(f"lam{i}")

    def l_to_lambda(self):
        """Substitution ``l_i -> lambda_i + shift``."""
        if self.realization == "gl":
            return {f"l{i}": self.lam(i) - i + 1 for i in range(1, self.n + 1)}
        return {f"l{i}": self.lam(i) + self.rho(i) for i in range(1, self.n + 1)}

    def lambda_to_l(self):
        if self.realization == "gl":
            return {f"lam{i}": var(f"l{i}") + i - 1 for i in range(1, self.n + 1)}
        return {f"lam{i}": var(f"l{i}") - self.rho(i) for i in range(1, self.n + 1)}


def make_gl(n):
    basis = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            kind = "lower" if i > j else "cartan" if i == j else "raise"
            basis.append((("E", i, j), {(i, j): 1}, kind))
    return LieSpec("gl", n, range(1, n + 1), basis)


def make_g(case, N):
    """``o_N`` (``case='o'``) or ``sp_N`` (``case='sp'``) on signed indices."""
    if case not in ("o", "sp"):
        raise ValueError("case must be 'o' or 'sp'")
    if case == "sp" and N % 2:
        raise ValueError("sp needs even N")
    idx = signed_indices(N)
    basis = []
    seen = set()
    for i in idx:
        for j in idx:
            if i == j:
                rep = (abs(i), abs(i))
            else:
                rep = min((i, j), (-j, -i))
            if rep in seen:
                continue
            seen.add(rep)
            a, b = rep
            mat = {}
            mat[(a, b)] = mat.get((a, b), 0) + 1
            t = theta(case, a, b)
            mat[(-b, -a)] = mat.get((-b, -a), 0) - t
            mat = {k: v for k, v in mat.items() if v}
            if not mat:
                continue
            kind = "cartan" if a == b else "lower" if a > b else "raise"
            basis.append((("F", a, b), mat, kind))
    return LieSpec(case, N, idx, basis, case=case)


def make_o_skew(N):
    basis = []
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            basis.append((("F", i, j), {(i, j): 1, (j, i): -1}, "other"))
    return LieSpec("o-skew", N, range(1, N + 1), basis)


class EnvAlgebra(PBWAlgebra):
    """Universal enveloping algebra ``U(g)`` with PBW normal forms."""

    def __init__(self, spec):
        super().__init__()
        self.spec = spec
        self._powers = {}

    def __repr__(self):
        return f"U({self.spec!r})"

    def bracket(self, b, a):
        return [((c,), v) for c, v in self.spec.bracket_coeffs(b, a).items()]

    def mono_str(self, m):
        if not m:
            return "1"
        out = []
        for g in m:
            L, i, j = self.spec.labels[g]
            out.append(f"{L}{i},{j}" if (i < 0 or j < 0 or i > 9 or j > 9) else f"{L}{i}{j}")
        return "*".join(out)

    def mono_json(self, m):
        return [list(self.spec.labels[g]) for g in m]

    def basis_elements(self):
        return [self.gen(g) for g in range(self.spec.dim)]

    # -- named generators -----------------------------------------------
    def E(self, i, j):
        if self.spec.realization != "gl":
            raise ValueError("E_ij is available in gl_n only")
        return self.gen(self.spec.id_of[("E", i, j)])

    def F(self, i, j):
        """``F_ij`` resolved onto the half-basis."""
        sp = self.spec
        if sp.realization == "gl":
            return self.E(i, j)
        if sp.realization == "o-skew":
            if i == j:
                return self.zero()
            if i < j:
                return self.gen(sp.id_of[("F", i, j)])
            return -self.gen(sp.id_of[("F", j, i)])
        key = ("F", i, j)
        if key in sp.id_of:
            return self.gen(sp.id_of[key])
        alt = ("F", -j, -i)
        if alt in sp.id_of:
            # F_{-j,-i} = -theta_ij F_ij  =>  F_ij = -theta_ij F_{-j,-i}
            return self.gen(sp.id_of[alt]) * (-theta(sp.case, i, j))
        return self.zero()

    def generator_matrix(self):
        """The matrix ``E`` (gl) or ``F`` (other realizations) of generators."""
        idx = self.spec.indices
        if self.spec.realization == "gl":
            return SeriesMatrix(idx, lambda i, j: self.E(i, j))
        return SeriesMatrix(idx, lambda i, j: self.F(i, j))

    def matrix_power(self, s):
        if s not in self._powers:
            M = self.generator_matrix()
            if s == 0:
                P = SeriesMatrix.identity(M.labels, self.one(), self.zero())
            else:
                P = self.matrix_power(s - 1) * M
            self._powers[s] = P
        return self._powers[s]

    def matrix_power_entry(self, s, i, j):
        return self.matrix_power(s)[i, j]

    def gelfand_invariant(self, s):
        return self.matrix_power(s).trace()

    def is_central(self, x):
        for g in self.basis_elements():
            if x * g != g * x:
                return False
        return True

    def hc_image(self, x):
        """Harish-Chandra projection to a polynomial in ``lam1..lamn``."""
        sp = self.spec
        if sp.realization == "o-skew":
            raise ValueError("the skew realization has no triangular decomposition")
        x = self.coerce(x)
        out = Poly()
        for m, c in x.terms.items():
            if any(sp.kinds[g] != "cartan" for g in m):
                continue
            term = Poly.const(1)
            for g in m:
                _, i, _ = sp.labels[g]
                term = term * sp.lam(i)
            out = out + term * c
        return out

    def hc_image_l(self, x):
        """Harish-Chandra image expressed in the shifted variables ``l_i``."""
        return self.hc_image(x).subs(self.spec.lambda_to_l())


def weyl_invariant(poly, spec):
    """Invariance of a polynomial in ``l1..ln`` under the shifted Weyl group."""
    n = spec.n
    names = [f"l{i}" for i in range(1, n + 1)]
    for perm in permutations(range(n)):
        if spec.realization == "gl":
            signs = [(1,) * n]
        else:
            signs = product((1, -1), repeat=n)
        for sg in signs:
            if spec.realization == "o" and spec.N % 2 == 0 and sg.count(-1) % 2:
                continue
            mapping = {names[k]: var(names[perm[k]]) * sg[k] for k in range(n)}
            if poly.subs(mapping) != poly:
                return False
    return True
