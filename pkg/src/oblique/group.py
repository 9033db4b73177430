"""Permutation groups with deterministic stabilizer chains.

The chain (Schreier-Sims) certifies order and membership; base points are
always the first moved point not yet fixed, so construction is deterministic
for identical input. Heavy backtrack searches (centralizer, normalizer,
Sylow) are delegated to sympy.combinatorics behind this module's interface.

Subgroups always live in the ambient degree of their parent; nothing is
re-indexed.
"""

from __future__ import annotations

import itertools
from functools import reduce
from math import factorial, gcd

import numpy as np

from .caps import DEFAULT_CAPS, Caps
from .perm import Permutation


class DegreeMismatch(ValueError):
    pass


class NotASubgroup(ValueError):
    pass


class NotNormal(ValueError):
    pass


# ---------------------------------------------------------------------------
# tuple-level permutation helpers (hot paths avoid Permutation objects)


def _compose(a, b):
    """(a then b) as image tuples."""
    return tuple(map(b.__getitem__, a))


def _inverse(a):
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def _conj(x, g, g_inv):
    """x^g = g^-1 x g as image tuples."""
    return tuple(g[x[g_inv[p]]] for p in range(len(g)))


class StabilizerChain:
    """Deterministic Schreier-Sims stabilizer chain over image tuples.

    ``base_hint`` biases the choice of new base points: points earlier in the
    hint are used first. This is how homomorphism kernels are extracted (fix
    all codomain points first).
    """

    def __init__(self, degree, gen_tuples, base_hint=None, forced_prefix=None):
        self.degree = degree
        self.base = []
        self.transversals = []  # per level: {point: coset rep u with base^u == point}
        self._strong = []       # (perm tuple, deepest level it belongs to)
        self._hint = list(base_hint) if base_hint is not None else []
        self._hint_rank = {p: r for r, p in enumerate(self._hint)}
        if forced_prefix:
            for p in forced_prefix:
                self.base.append(p)
                self.transversals.append(None)
        ident = tuple(range(degree))
        for g in gen_tuples:
            if g != ident:
                self._add_generator(g)
        for i in reversed(range(len(self.base))):
            self._complete(i)

    # -- construction ------------------------------------------------------

    def _pick_base_point(self, g):
        moved = [i for i in range(self.degree) if g[i] != i]
        moved.sort(key=lambda p: (self._hint_rank.get(p, len(self._hint)), p))
        return moved[0]

    def _level_of(self, g):
        for i, b in enumerate(self.base):
            if g[b] != b:
                return i
        return len(self.base)

    def _add_generator(self, g):
        lev = self._level_of(g)
        if lev == len(self.base):
            self.base.append(self._pick_base_point(g))
            self.transversals.append(None)
        self._strong.append((g, self._level_of(g)))

    def _gens_at(self, i):
        return [g for g, lev in self._strong if lev >= i]

    def _orbit_update(self, i):
        gens = self._gens_at(i)
        b = self.base[i]
        ident = tuple(range(self.degree))
        transversal = {b: ident}
        frontier = [b]
        while frontier:
            nxt = []
            for p in frontier:
                u = transversal[p]
                for g in gens:
                    q = g[p]
                    if q not in transversal:
                        transversal[q] = _compose(u, g)
                        nxt.append(q)
            frontier = nxt
        self.transversals[i] = transversal

    def _strip(self, g, start=0):
        for i in range(start, len(self.base)):
            t = self.transversals[i]
            p = g[self.base[i]]
            if p not in t:
                return g, i
            g = _compose(g, _inverse(t[p]))
        return g, len(self.base)

    def _complete(self, i):
        if i >= len(self.base):
            return
        self._orbit_update(i)
        ident = tuple(range(self.degree))
        done = False
        while not done:
            done = True
            t = self.transversals[i]
            gens = self._gens_at(i)
            for p in list(t):
                u = t[p]
                for g in gens:
                    schreier = _compose(_compose(u, g), _inverse(t[g[p]]))
                    if schreier == ident:
                        continue
                    residue, lev = self._strip(schreier, i + 1)
                    if residue == ident:
                        continue
                    if lev == len(self.base):
                        self.base.append(self._pick_base_point(residue))
                        self.transversals.append(None)
                    self._strong.append((residue, self._level_of(residue)))
                    for j in range(lev, i, -1):
                        self._complete(j)
                    self._orbit_update(i)
                    done = False
                    break
                if not done:
                    break

    # -- queries -----------------------------------------------------------

    @property
    def order(self):
        out = 1
        for t in self.transversals:
            out *= len(t)
        return out

    def sift(self, g):
        residue, _ = self._strip(g)
        return residue

    def contains(self, g):
        return self.sift(g) == tuple(range(self.degree))

    def strong_generators_fixing(self, k):
        """Strong generators fixing base[:k] pointwise."""
        return [g for g, lev in self._strong if lev >= k]

    def element_tuples(self):
        """All elements, deterministically ordered (coset products)."""
        elems = [tuple(range(self.degree))]
        for t in reversed(self.transversals):
            elems = [_compose(e, u) for u in t.values() for e in elems]
        return elems

    def random_element(self, rng):
        g = tuple(range(self.degree))
        for t in reversed(self.transversals):
            reps = list(t.values())
            g = _compose(g, reps[rng.randrange(len(reps))])
        return g


class PermGroup:
    """A finite permutation group given by generators, with a verified chain.

    Instances are immutable after construction; internal caches are
    idempotent. Equality of the underlying subgroups is tested with
    :meth:`same_group`, not ``==``.
    """

    def __init__(self, degree, generators, caps: Caps = DEFAULT_CAPS):
        caps.check("degree", degree)
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != degree:
                raise DegreeMismatch(f"generator degree {g.degree} != group degree {degree}")
            if not g.is_identity():
                gens.append(g)
        self.degree = degree
        self.generators = tuple(gens)
        self._chain = None
        self._elements = None
        self._sympy = None
        self._lattice = None

    # -- constructions -----------------------------------------------------

    @staticmethod
    def trivial(degree, caps: Caps = DEFAULT_CAPS):
        return PermGroup(degree, [], caps=caps)

    @staticmethod
    def cyclic(n, degree=None, caps: Caps = DEFAULT_CAPS):
        degree = n if degree is None else degree
        return PermGroup(degree, [Permutation.from_cycles([list(range(n))], degree)], caps=caps)

    @staticmethod
    def symmetric(n, caps: Caps = DEFAULT_CAPS):
        if n <= 1:
            return PermGroup.trivial(max(n, 1), caps=caps)
        gens = [Permutation.from_cycles([[0, 1]], n)]
        if n > 2:
            gens.append(Permutation.from_cycles([list(range(n))], n))
        return PermGroup(n, gens, caps=caps)

    @staticmethod
    def alternating(n, caps: Caps = DEFAULT_CAPS):
        if n <= 2:
            return PermGroup.trivial(max(n, 1), caps=caps)
        gens = [Permutation.from_cycles([[i, i + 1, i + 2]], n) for i in range(n - 2)]
        return PermGroup(n, gens, caps=caps)

    @staticmethod
    def dihedral(n, caps: Caps = DEFAULT_CAPS):
        """Dihedral group of order 2n on n points (n >= 3)."""
        if n < 3:
            raise ValueError("dihedral(n) needs n >= 3")
        rot = Permutation.from_cycles([list(range(n))], n)
        refl = Permutation(tuple((n - i) % n for i in range(n)))
        return PermGroup(n, [rot, refl], caps=caps)

    # -- chain-backed queries ------------------------------------------------

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(self.degree, [g.images for g in self.generators])
        return self._chain

    @property
    def order(self) -> int:
        return self.chain.order

    def contains(self, x: Permutation) -> bool:
        if x.degree != self.degree:
            raise DegreeMismatch(f"element degree {x.degree} != group degree {self.degree}")
        return self.chain.contains(x.images)

    def __contains__(self, x):
        return self.contains(x)

    def element_tuples(self, cap=None):
        if self._elements is None:
            if cap is not None and self.order > cap:
                from .caps import CapExceeded

                raise CapExceeded("order_enum", cap, self.order)
            self._elements = self.chain.element_tuples()
        return self._elements

    def elements(self, cap=None):
        return [Permutation(t) for t in self.element_tuples(cap)]

    def element_set(self, cap=None):
        return frozenset(self.element_tuples(cap))

    def random_element(self, rng) -> Permutation:
        return Permutation(self.chain.random_element(rng))

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    # -- subgroup relations --------------------------------------------------

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.generators)

    def same_group(self, other: "PermGroup") -> bool:
        return self.order == other.order and self.is_subgroup_of(other)

    def is_normal_in(self, other: "PermGroup") -> bool:
        return self.is_subgroup_of(other) and all(
            self.contains(x.conj(g)) for x in self.generators for g in other.generators
        )

    def normalizes(self, other: "PermGroup") -> bool:
        return all(other.contains(x.conj(g)) for x in other.generators for g in self.generators)

    def conjugated(self, g: Permutation) -> "PermGroup":
        return PermGroup(self.degree, [x.conj(g) for x in self.generators])

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1 :])

    def is_perfect(self) -> bool:
        return derived_subgroup(self).order == self.order

    def is_trivial(self) -> bool:
        return not self.generators

    def exponent_primes(self):
        """Primes dividing the group order."""
        from .arith import prime_factors

        return prime_factors(self.order)

    def is_pgroup(self, p=None):
        primes = self.exponent_primes()
        if p is None:
            return len(primes) <= 1
        return primes in ([], [p])

    def orbits(self):
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            orbit = [start]
            seen[start] = True
            frontier = [start]
            while frontier:
                nxt = []
                for p in frontier:
                    for g in self.generators:
                        q = g(p)
                        if not seen[q]:
                            seen[q] = True
                            orbit.append(q)
                            nxt.append(q)
                frontier = nxt
            out.append(orbit)
        return out

    # -- sympy bridge ----------------------------------------------------------

    def to_sympy(self):
        if self._sympy is None:
            from sympy.combinatorics import Permutation as SPerm
            from sympy.combinatorics import PermutationGroup as SGroup

            if self.generators:
                self._sympy = SGroup([SPerm(list(g.images)) for g in self.generators])
            else:
                self._sympy = SGroup([SPerm(list(range(self.degree)))])
        return self._sympy

    def _from_sympy(self, sgroup) -> "PermGroup":
        gens = []
        for g in sgroup.generators:
            arr = g.array_form
            arr = arr + list(range(len(arr), self.degree))
            gens.append(Permutation(arr))
        return PermGroup(self.degree, gens)

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order}, gens={[str(g) for g in self.generators]})"


# ---------------------------------------------------------------------------
# spec operations


def group_from_generators(degree, gens, caps: Caps = DEFAULT_CAPS) -> PermGroup:
    return PermGroup(degree, gens, caps=caps)


def conjugacy_classes(G: PermGroup, caps: Caps = DEFAULT_CAPS):
    """All conjugacy classes as (representative, size), identity class first.

    Enumeration-based; representatives are the lexicographically least image
    tuples of their class, and classes are sorted by (size, representative).
    """
    caps.check("order_enum", G.order)
    elems = G.element_tuples()
    deg = G.degree
    arr = np.array(elems, dtype=np.int32).reshape(len(elems), deg)
    index = {row.tobytes(): i for i, row in enumerate(arr)}
    gen_arrs = [(np.array(g.images, dtype=np.int32), np.array(g.inv().images, dtype=np.int32)) for g in G.generators]
    seen = np.zeros(len(elems), dtype=bool)
    classes = []
    for start in range(len(elems)):
        if seen[start]:
            continue
        members = [start]
        seen[start] = True
        frontier = [start]
        while frontier:
            nxt = []
            for i in frontier:
                x = arr[i]
                for g, g_inv in gen_arrs:
                    y = g[x[g_inv]]
                    j = index[y.tobytes()]
                    if not seen[j]:
                        seen[j] = True
                        members.append(j)
                        nxt.append(j)
            frontier = nxt
        rep = min(tuple(arr[i]) for i in members)
        classes.append((Permutation(tuple(int(v) for v in rep)), len(members)))
    classes.sort(key=lambda rs: (rs[1], rs[0].images))
    return classes


def normal_closure(G: PermGroup, xs, caps: Caps = DEFAULT_CAPS) -> PermGroup:
    """Smallest subgroup containing xs that is normalized by G."""
    xs = list(xs)
    for x in xs:
        if not G.contains(x):
            raise NotASubgroup(f"element {x} is not in the ambient group")
    H = PermGroup(G.degree, xs, caps=caps)
    queue = list(H.generators)
    while queue:
        x = queue.pop(0)
        for g in G.generators:
            c = x.conj(g)
            if not H.contains(c):
                H = PermGroup(G.degree, H.generators + (c,), caps=caps)
                queue.append(c)
    return H


def derived_subgroup(G: PermGroup, caps: Caps = DEFAULT_CAPS) -> PermGroup:
    comms = [a.commutator(b) for i, a in enumerate(G.generators) for b in G.generators[i + 1 :]]
    return normal_closure(G, comms, caps=caps)


def derived_series(G: PermGroup, caps: Caps = DEFAULT_CAPS):
    series = [G]
    while True:
        nxt = derived_subgroup(series[-1], caps=caps)
        if nxt.order == series[-1].order:
            break
        series.append(nxt)
        if nxt.is_trivial():
            break
    return series


def lower_central_series(G: PermGroup, caps: Caps = DEFAULT_CAPS):
    series = [G]
    while True:
        cur = series[-1]
        comms = [a.commutator(b) for a in cur.generators for b in G.generators]
        nxt = normal_closure(G, comms, caps=caps)
        if nxt.order == cur.order:
            break
        series.append(nxt)
        if nxt.is_trivial():
            break
    return series


def is_nilpotent(G: PermGroup, caps: Caps = DEFAULT_CAPS) -> bool:
    return lower_central_series(G, caps=caps)[-1].is_trivial()


_BRUTE_SEARCH_LIMIT = 5000


def centralizer(G: PermGroup, x, caps: Caps = DEFAULT_CAPS) -> PermGroup:
    """C_G(x) for an element, or C_G(H) for a subgroup."""
    targets = [x] if isinstance(x, Permutation) else list(x.generators)
    for t in targets:
        if t.degree != G.degree:
            raise DegreeMismatch("centralizer argument degree mismatch")
    if not targets:
        return G
    if G.order <= _BRUTE_SEARCH_LIMIT:
        t_imgs = [t.images for t in targets]
        found = [
            Permutation(e)
            for e in G.element_tuples()
            if all(_compose(e, t) == _compose(t, e) for t in t_imgs)
        ]
        return _group_from_elements(G.degree, found, caps)
    sG = G.to_sympy()
    from sympy.combinatorics import Permutation as SPerm
    from sympy.combinatorics import PermutationGroup as SGroup

    sH = SGroup([SPerm(list(t.images)) for t in targets])
    return G._from_sympy(sG.centralizer(sH))


def center(G: PermGroup, caps: Caps = DEFAULT_CAPS) -> PermGroup:
    return centralizer(G, G, caps=caps)


def normalizer(G: PermGroup, H: PermGroup, caps: Caps = DEFAULT_CAPS) -> PermGroup:
    """N_G(H); requires H <= G."""
    if not H.is_subgroup_of(G):
        raise NotASubgroup("normalizer requires H <= G")
    if H.is_trivial():
        return G
    if G.order <= _BRUTE_SEARCH_LIMIT:
        found = []
        for e in G.element_tuples():
            g = Permutation(e)
            if all(H.contains(x.conj(g)) for x in H.generators):
                found.append(g)
        return _group_from_elements(G.degree, found, caps)
    sG = G.to_sympy()
    hgens = [g.images for g in H.generators]
    chain = H.chain

    def prop(sg):
        arr = sg.array_form
        arr = tuple(arr + list(range(len(arr), G.degree)))
        arr_inv = _inverse(arr)
        return all(chain.contains(_conj(x, arr, arr_inv)) for x in hgens)

    return G._from_sympy(sG.subgroup_search(prop))


def sylow(G: PermGroup, p: int, caps: Caps = DEFAULT_CAPS) -> PermGroup:
    """A Sylow p-subgroup of G (trivial if p does not divide |G|)."""
    from .arith import is_prime, p_part

    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    target = p_part(G.order, p)
    if target == 1:
        return PermGroup.trivial(G.degree)
    S = G._from_sympy(G.to_sympy().sylow_subgroup(p))
    if S.order != target:
        raise AssertionError(f"sylow backend returned order {S.order}, expected {target}")
    return S


def _group_from_elements(degree, elems, caps: Caps = DEFAULT_CAPS) -> PermGroup:
    H = PermGroup.trivial(degree)
    for e in elems:
        if not H.contains(e):
            H = PermGroup(degree, H.generators + (e,), caps=caps)
    H._elements = [e.images for e in elems] if len(elems) == H.order else None
    return H


def intersection(A: PermGroup, B: PermGroup, caps: Caps = DEFAULT_CAPS) -> PermGroup:
    if A.degree != B.degree:
        raise DegreeMismatch("intersection degree mismatch")
    small, big = (A, B) if A.order <= B.order else (B, A)
    caps.check("order_enum", small.order)
    found = [Permutation(e) for e in small.element_tuples() if big.chain.contains(e)]
    return _group_from_elements(A.degree, found, caps)


def conjugating_element(G: PermGroup, A: PermGroup, B: PermGroup, caps: Caps = DEFAULT_CAPS):
    """Some g in G with A^g = B, or None (search is exhaustive).

    Walks the G-orbit of A's element set under generator conjugation,
    tracking witnesses.
    """
    if A.order != B.order:
        return None
    caps.check("order_enum", A.order)
    start = A.element_set()
    target = B.element_set()
    if start == target:
        return G.identity()
    node_cap = max(1, caps.order_enum // max(1, A.order))
    witnesses = {start: G.identity()}
    frontier = [start]
    while frontier:
        nxt = []
        for node in frontier:
            w = witnesses[node]
            for g in G.generators:
                g_inv = g.inv().images
                image = frozenset(_conj(x, g.images, g_inv) for x in node)
                if image not in witnesses:
                    witnesses[image] = w * g
                    if image == target:
                        return witnesses[image]
                    if len(witnesses) > node_cap:
                        from .caps import CapExceeded

                        raise CapExceeded("order_enum", caps.order_enum, len(witnesses) * A.order)
                    nxt.append(image)
        frontier = nxt
    return None


# ---------------------------------------------------------------------------
# quotients and product constructions


def quotient_action(G: PermGroup, N: PermGroup, caps: Caps = DEFAULT_CAPS):
    """G acting on the right cosets of a normal subgroup N.

    Returns (Q, hom) where hom: G -> Q is surjective with kernel N.
    """
    from .hom import GroupHom

    if not N.is_normal_in(G):
        raise NotNormal("quotient_action requires N normal in G")
    index = G.order // N.order
    caps.check("degree", index)
    caps.check("order_enum", N.order)
    n_elems = N.element_tuples()

    def coset_rep(g):
        return min(_compose(n, g) for n in n_elems)

    ident = tuple(range(G.degree))
    first = coset_rep(ident)
    reps = {first: 0}
    order = [first]
    frontier = [first]
    edges = {}
    while frontier:
        nxt = []
        for rep in frontier:
            for gi, g in enumerate(G.generators):
                image = coset_rep(_compose(rep, g.images))
                if image not in reps:
                    reps[image] = len(order)
                    order.append(image)
                    nxt.append(image)
                edges[(reps[rep], gi)] = reps[image]
        frontier = nxt
    if len(order) != index:
        raise AssertionError("coset enumeration disagrees with index")
    gen_images = []
    for gi in range(len(G.generators)):
        gen_images.append(Permutation(tuple(edges[(ci, gi)] for ci in range(index))))
    Q = PermGroup(index, gen_images, caps=caps)
    hom = GroupHom(G, Q, gen_images, caps=caps)
    return Q, hom


def direct_product(A: PermGroup, B: PermGroup, caps: Caps = DEFAULT_CAPS) -> PermGroup:
    dA, dB = A.degree, B.degree
    caps.check("degree", dA + dB)
    gens = [g.extended(dA + dB) for g in A.generators]
    for g in B.generators:
        gens.append(Permutation(tuple(range(dA)) + tuple(dA + p for p in g.images)))
    return PermGroup(dA + dB, gens, caps=caps)


def wreath_imprimitive(A: PermGroup, m: int, top: PermGroup, caps: Caps = DEFAULT_CAPS) -> PermGroup:
    """A wr top in the imprimitive action on m blocks of size deg(A).

    Point (i, x) with block i < m sits at index i*deg(A) + x. The base group
    A^m has a copy of A's generators in every block; top permutes blocks.
    """
    if top.degree != m:
        raise DegreeMismatch(f"top group degree {top.degree} != block count {m}")
    dA = A.degree
    degree = m * dA
    caps.check("degree", degree)
    gens = []
    for block in range(m):
        for g in A.generators:
            images = list(range(degree))
            for x in range(dA):
                images[block * dA + x] = block * dA + g(x)
            gens.append(Permutation(images))
    for t in top.generators:
        images = [t(i) * dA + x for i in range(m) for x in range(dA)]
        gens.append(Permutation(images))
    return PermGroup(degree, gens, caps=caps)


def _mat_inverse_mod(mat, p):
    """Inverse of a matrix over F_p, or None if singular."""
    n = len(mat)
    aug = [[v % p for v in row] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] % p), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = pow(aug[col][col], -1, p)
        aug[col] = [(v * inv) % p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(a - f * b) % p for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def affine_semidirect(p: int, d: int, mats, caps: Caps = DEFAULT_CAPS) -> PermGroup:
    """F_p^d . <mats> acting on the p^d vectors (translations + linear maps).

    Vector v corresponds to point sum(v[i] * p^i). Raises on singular
    matrices or p^d beyond the degree cap.
    """
    from .arith import is_prime

    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    degree = p**d
    caps.check("degree", degree)
    for mat in mats:
        if len(mat) != d or any(len(row) != d for row in mat):
            raise ValueError(f"matrix is not {d}x{d}: {mat}")
        if _mat_inverse_mod(mat, p) is None:
            raise ValueError(f"singular matrix over F_{p}: {mat}")

    def to_vec(point):
        v = []
        for _ in range(d):
            v.append(point % p)
            point //= p
        return v

    def to_point(v):
        return sum((v[i] % p) * p**i for i in range(d))

    gens = []
    for i in range(d):
        images = []
        for pt in range(degree):
            v = to_vec(pt)
            v[i] = (v[i] + 1) % p
            images.append(to_point(v))
        gens.append(Permutation(images))
    for mat in mats:
        images = []
        for pt in range(degree):
            v = to_vec(pt)
            images.append(to_point([sum(mat[r][c] * v[c] for c in range(d)) % p for r in range(d)]))
        gens.append(Permutation(images))
    return PermGroup(degree, gens, caps=caps)
