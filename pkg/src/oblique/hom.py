"""Homomorphisms between permutation groups, given by generator images.

A map is certified at construction time: the pairs (g_i, phi(g_i)) generate a
subgroup of the direct product whose order equals |domain| exactly when the
generator assignment extends to a homomorphism. All element-level operations
(apply, lift, kernel) are answered from stabilizer chains of that pair group.
"""

from __future__ import annotations

from .caps import DEFAULT_CAPS, Caps
from .group import NotASubgroup, PermGroup, StabilizerChain, _compose, _inverse
from .perm import Permutation


class NotAHomomorphism(ValueError):
    pass


class GroupHom:
    def __init__(self, domain: PermGroup, codomain: PermGroup, images, caps: Caps = DEFAULT_CAPS):
        images = tuple(images)
        if len(images) != len(domain.generators):
            raise NotAHomomorphism("need one image per domain generator")
        for y in images:
            if y.degree != codomain.degree:
                raise NotAHomomorphism("image degree does not match codomain")
            if not codomain.contains(y):
                raise NotAHomomorphism("generator image lies outside the codomain")
        self.domain = domain
        self.codomain = codomain
        self.images = images
        self._pair_degree = domain.degree + codomain.degree
        self._pairs = [
            g.images + tuple(domain.degree + p for p in y.images)
            for g, y in zip(domain.generators, images)
        ]
        # Certificate: the graph of the map must have order |domain|.
        self._dom_chain = StabilizerChain(
            self._pair_degree, self._pairs, base_hint=list(range(domain.degree))
        )
        if self._dom_chain.order != domain.order:
            raise NotAHomomorphism(
                f"generator images do not define a homomorphism "
                f"(graph order {self._dom_chain.order} != domain order {domain.order})"
            )
        self._cod_chain = None
        self._image = None
        self._kernel = None
        self._caps = caps

    # -- internal chains -----------------------------------------------------

    def _codomain_first_chain(self):
        if self._cod_chain is None:
            dG = self.domain.degree
            moved = sorted(
                {dG + p for pair in self._pairs for p in range(self.codomain.degree) if pair[dG + p] != dG + p}
            )
            self._cod_chain = StabilizerChain(self._pair_degree, self._pairs, forced_prefix=moved)
            self._cod_prefix = len(moved)
        return self._cod_chain

    # -- queries ---------------------------------------------------------------

    def apply(self, x: Permutation) -> Permutation:
        """phi(x); raises if x is not in the domain."""
        dG, dH = self.domain.degree, self.codomain.degree
        if x.degree != dG:
            raise NotASubgroup("element degree does not match the domain")
        chain = self._dom_chain
        cur = x.images
        sec = tuple(range(dH))
        for i, b in enumerate(chain.base):
            t = chain.transversals[i]
            p = cur[b]
            if p == b and b not in t:
                continue
            if p not in t:
                raise NotASubgroup(f"element {x} is not in the domain")
            u = t[p]
            u_first = tuple(u[:dG])
            u_second = tuple(q - dG for q in u[dG:])
            cur = _compose(cur, _inverse(u_first))
            sec = _compose(sec, _inverse(u_second))
        if cur != tuple(range(dG)):
            raise NotASubgroup(f"element {x} is not in the domain")
        return Permutation(_inverse(sec))

    def image(self) -> PermGroup:
        if self._image is None:
            self._image = PermGroup(self.codomain.degree, self.images, caps=self._caps)
        return self._image

    def is_surjective(self) -> bool:
        return self.image().order == self.codomain.order

    def kernel(self) -> PermGroup:
        if self._kernel is None:
            dG = self.domain.degree
            chain = self._codomain_first_chain()
            gens = [
                Permutation(tuple(g[:dG]))
                for g in chain.strong_generators_fixing(self._cod_prefix)
            ]
            K = PermGroup(dG, gens, caps=self._caps)
            if K.order * self.image().order != self.domain.order:
                raise AssertionError("kernel extraction failed the order identity")
            self._kernel = K
        return self._kernel

    def lift(self, y: Permutation) -> Permutation:
        """Some x with phi(x) = y; raises if y is not in the image."""
        dG, dH = self.domain.degree, self.codomain.degree
        if y.degree != dH:
            raise NotASubgroup("element degree does not match the codomain")
        chain = self._codomain_first_chain()
        cur = y.images
        acc = tuple(range(dG))
        for i in range(self._cod_prefix):
            b = chain.base[i]
            t = chain.transversals[i]
            p = dG + cur[b - dG]
            if p not in t:
                raise NotASubgroup(f"element {y} is not in the image")
            u = t[p]
            u_first = tuple(u[:dG])
            u_second = tuple(q - dG for q in u[dG:])
            cur = _compose(cur, _inverse(u_second))
            acc = _compose(acc, _inverse(u_first))
        if cur != tuple(range(dH)):
            raise NotASubgroup(f"element {y} is not in the image")
        return Permutation(_inverse(acc))

    def preimage_group(self, H: PermGroup) -> PermGroup:
        """Full preimage of a subgroup H of the image."""
        gens = list(self.kernel().generators)
        for h in H.generators:
            gens.append(self.lift(h))
        P = PermGroup(self.domain.degree, gens, caps=self._caps)
        if P.order != self.kernel().order * H.order:
            raise AssertionError("preimage order identity failed")
        return P

    def image_of_group(self, H: PermGroup) -> PermGroup:
        """Image of a subgroup H of the domain."""
        return PermGroup(self.codomain.degree, [self.apply(h) for h in H.generators], caps=self._caps)

    def then(self, other: "GroupHom") -> "GroupHom":
        """Composite map x -> other(self(x))."""
        return GroupHom(self.domain, other.codomain, [other.apply(y) for y in self.images], caps=self._caps)

    def __repr__(self):
        return (
            f"GroupHom(|dom|={self.domain.order}, |cod|={self.codomain.order}, "
            f"|im|={self.image().order})"
        )
