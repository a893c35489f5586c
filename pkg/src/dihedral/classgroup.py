"""Form class groups (narrow for D > 0) with an explicit cyclic decomposition."""
from __future__ import annotations

from functools import lru_cache
from math import prod

from . import kernels
from .errors import BoundExceeded
from .quadfield import (
    Form,
    _cycle_key,
    check_discriminant,
    compose,
    form_power,
    principal_form,
    reduce_form,
    rho,
)

DEFAULT_BOUND = 10**7


def reduced_class_representatives(D: int) -> list[Form]:
    """One canonical form per (narrow) class, sorted."""
    if D < 0:
        return sorted((Form(*t) for t in kernels.reduced_forms_negative(D)), key=_cycle_key)
    reps = []
    seen = set()
    for t in kernels.reduced_forms_positive(D):
        if t in seen:
            continue
        cyc = [t]
        cur = rho(*t, D)
        while cur != t:
            cyc.append(cur)
            cur = rho(*cur, D)
        seen.update(cyc)
        reps.append(min((Form(*x) for x in cyc), key=_cycle_key))
    return sorted(reps, key=_cycle_key)


def smith_normal_form(R):
    """Diagonalize the square integer matrix R by unimodular row and column operations.

    Returns (diag, V, Vinv) with U R V = diag(diag) for some unimodular U,
    each diagonal entry non-negative and dividing the next.
    """
    n = len(R)
    A = [list(r) for r in R]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def col_add(i, j, k):
        # col_i += k * col_j
        for r in A:
            r[i] += k * r[j]
        for r in V:
            r[i] += k * r[j]
        Vi[j] = [x - k * y for x, y in zip(Vi[j], Vi[i])]

    def col_neg(i):
        for r in A:
            r[i] = -r[i]
        for r in V:
            r[i] = -r[i]
        Vi[i] = [-x for x in Vi[i]]

    for t in range(n):
        while True:
            entries = [(abs(A[i][j]), i, j) for i in range(t, n) for j in range(t, n) if A[i][j]]
            if not entries:
                return [A[i][i] for i in range(n)], V, Vi
            _, i, j = min(entries)
            A[t], A[i] = A[i], A[t]
            col_swap(t, j)
            done = True
            for i in range(t + 1, n):
                q = A[i][t] // A[t][t]
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // A[t][t]
                if q:
                    col_add(j, t, -q)
                if A[t][j]:
                    done = False
            if not done:
                continue
            bad = next(
                ((i, j) for i in range(t + 1, n) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad[0]])]
        if A[t][t] < 0:
            col_neg(t)
    return [A[i][i] for i in range(n)], V, Vi


class FormClassGroup:
    """The (narrow) class group of a fundamental discriminant.

    ``cyclic`` lists (generator, order) pairs whose product of orders is h;
    ``coords[i]`` gives the exponents expressing ``classes[i]`` in those generators.
    """

    def __init__(self, D: int, classes: list[Form]):
        self.D = D
        self.classes = classes
        self.index = {f: i for i, f in enumerate(classes)}
        self.identity = principal_form(D)
        self._table = None
        self.cyclic, self.coords = self._decompose()

    @property
    def h(self) -> int:
        return len(self.classes)

    @property
    def narrow(self) -> bool:
        return self.D > 0

    def class_of(self, f: Form) -> Form:
        return reduce_form(f)

    def mul(self, f: Form, g: Form) -> Form:
        return compose(f, g)

    def inverse(self, f: Form) -> Form:
        return reduce_form(f.opposite())

    def power(self, f: Form, n: int) -> Form:
        return form_power(f, n)

    def order_of(self, f: Form) -> int:
        f = reduce_form(f)
        k, x = 1, f
        while x != self.identity:
            x = compose(x, f)
            k += 1
        return k

    def coords_of(self, f: Form) -> tuple[int, ...]:
        return self.coords[self.index[reduce_form(f)]]

    def sign_class(self) -> Form:
        """Narrow class of the principal ideals with a negative-norm generator (D > 0)."""
        k = self.D % 2
        return reduce_form(Form(-1, k, (self.D - k) // 4))

    def table(self) -> list[list[int]]:
        """Full composition table on class indices."""
        if self._table is None:
            self._table = [
                [self.index[compose(f, g)] for g in self.classes] for f in self.classes
            ]
        return self._table

    def _decompose(self):
        gens: list[Form] = []
        rels: list[list[int]] = []
        known = {self.identity: ()}
        for x in self.classes:
            if x in known:
                continue
            k, y = 1, x
            while y not in known:
                y = compose(y, x)
                k += 1
            t = known[y]
            j = len(gens)
            rels = [r + [0] for r in rels]
            rels.append([-c for c in t] + [0] * (j - len(t)) + [k])
            gens.append(x)
            new = {}
            for h_form, c in known.items():
                z = h_form
                c = tuple(c) + (0,) * (j - len(c))
                for i in range(k):
                    new[z] = c + (i,)
                    z = compose(z, x)
            known = new
        if not gens:
            return [], [() for _ in self.classes]
        diag, V, Vi = smith_normal_form(rels)
        keep = [i for i, d in enumerate(diag) if d > 1]
        cyclic = []
        for i in keep:
            g = self.identity
            for j, e in enumerate(Vi[i]):
                if e:
                    g = compose(g, form_power(gens[j], e))
            cyclic.append((g, diag[i]))
        n = len(gens)
        coords = []
        for f in self.classes:
            c = known[f]
            c = tuple(c) + (0,) * (n - len(c))
            new = [sum(c[j] * V[j][i] for j in range(n)) for i in range(n)]
            coords.append(tuple(new[i] % diag[i] for i in keep))
        assert prod(d for _, d in cyclic) == self.h
        return cyclic, coords

    def element_from_coords(self, coords) -> Form:
        g = self.identity
        for (gen, _), e in zip(self.cyclic, coords):
            g = compose(g, form_power(gen, e))
        return g

    def to_json(self) -> dict:
        return {
            "D": self.D,
            "h": self.h,
            "cyclic": [[gen.to_list(), order] for gen, order in self.cyclic],
            "classes": [f.to_list() for f in self.classes],
        }

    def __repr__(self):
        inv = [d for _, d in self.cyclic]
        return f"FormClassGroup(D={self.D}, h={self.h}, invariants={inv})"


@lru_cache(maxsize=64)
def class_group(D: int, bound: int = DEFAULT_BOUND) -> FormClassGroup:
    """Class group (narrow when D > 0) of the fundamental discriminant D."""
    check_discriminant(D)
    if abs(D) > bound:
        raise BoundExceeded(f"|D|={abs(D)} exceeds the configured bound {bound}")
    return FormClassGroup(D, reduced_class_representatives(D))


def wide_class_number(G: FormClassGroup) -> int:
    """Order of the wide class group: the narrow group modulo the sign class."""
    if G.D < 0:
        return G.h
    return G.h if G.sign_class() == G.identity else G.h // 2
