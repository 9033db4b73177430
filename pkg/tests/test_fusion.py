from oblique import (
    PermGroup,
    Permutation,
    alperin_closure_check,
    automizer,
    centralizer,
    direct_product,
    fusion_table,
    intersection,
    normalizer,
    p_prime_kernel_invariance,
    subgroup_classes_of_sylow,
    sylow,
    wreath_imprimitive,
)


def perm(text, degree=None):
    p = Permutation.parse(text)
    return p if degree is None else p.extended(degree)


def _conjugate_set(elements, g):
    g_inv = g.inv()
    return frozenset((g_inv * Permutation(x) * g).images for x in elements)


# ---------------------------------------------------------------------------
# subgroup classes of a Sylow subgroup


def test_s4_subgroup_classes():
    G = PermGroup.symmetric(4)
    table = subgroup_classes_of_sylow(G, 2)
    assert len(table.subgroups) == 10
    assert len(table.s_classes) == 8
    # every class member really is S-conjugate to the representative
    for cls in table.s_classes:
        rep = table.subgroups[cls.rep_id]
        for member_id in cls.member_ids:
            w = cls.s_witnesses[member_id]
            assert table.sylow.contains(w)
            assert rep.conjugated(w).same_group(table.subgroups[member_id])


def test_subgroup_enumeration_matches_brute_force():
    G = PermGroup.symmetric(4)
    table = subgroup_classes_of_sylow(G, 2)
    S = table.sylow
    elements = sorted(S.element_tuples())
    ident = tuple(range(S.degree))
    found = {frozenset([ident])}
    frontier = [frozenset([ident])]
    while frontier:
        nxt = []
        for sub in frontier:
            for x in elements:
                if x in sub:
                    continue
                H = PermGroup(S.degree, [Permutation(t) for t in sub] + [Permutation(x)])
                bigger = H.element_set()
                if bigger not in found:
                    found.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    assert {H.element_set() for H in table.subgroups} == found


# ---------------------------------------------------------------------------
# G-fusion


def test_s4_fusion_classes():
    G = PermGroup.symmetric(4)
    table = fusion_table(G, 2)
    by_order = {}
    for cls in table.fusion_classes():
        key = table.subgroups[table.s_classes[cls[0]].rep_id].order
        by_order.setdefault(key, []).append(cls)
    # conjugation preserves cycle type, so <(1 3)> (a transposition) and
    # <(1 2)(3 4)> (a double transposition) are NOT fused in Sym(4)
    assert len(by_order[2]) == 2
    # the three S-classes of order-4 subgroups stay in separate fusion
    # classes too: the normal Klein group has only double transpositions,
    # the other Klein group contains transpositions, the third is cyclic
    assert sorted(len(c) for c in by_order[4]) == [1, 1, 1]


def test_fusion_witnesses_verify():
    for G, p in (
        (PermGroup.symmetric(4), 2),
        (PermGroup.alternating(5), 2),
        (PermGroup.symmetric(3), 3),
    ):
        table = fusion_table(G, p)
        for (i, j), g in table.g_fusion.items():
            assert G.contains(g)
            rep_i = table.subgroups[table.s_classes[i].rep_id]
            rep_j = table.subgroups[table.s_classes[j].rep_id]
            assert rep_i.conjugated(g).same_group(rep_j)


def test_fusion_classes_partition_s_classes(corpus):
    for name in ("S4", "A5", "S3wrC2", "A6"):
        G = corpus[name]
        table = fusion_table(G, 2)
        covered = sorted(i for cls in table.fusion_classes() for i in cls)
        assert covered == list(range(len(table.s_classes)))
        # S-conjugate subgroups land in the same fusion class
        for i, H in enumerate(table.subgroups):
            cid = table.class_of_subgroup[i]
            rid = table.class_of_subgroup[table.s_classes[cid].rep_id]
            assert table.fused(cid, rid)


def test_a6_fusion_matches_brute_conjugation():
    G = PermGroup.alternating(6)
    table = fusion_table(G, 2)
    group_elements = [Permutation(t) for t in G.element_tuples()]
    reps = [table.subgroups[c.rep_id] for c in table.s_classes]
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            if reps[i].order != reps[j].order:
                continue
            target = reps[j].element_set()
            source = reps[i].element_set()
            brute_fused = any(
                _conjugate_set(source, g) == target for g in group_elements
            )
            assert table.fused(i, j) == brute_fused, (i, j)


# ---------------------------------------------------------------------------
# automizers


def test_automizer_examples():
    G = PermGroup.symmetric(4)
    V4 = PermGroup(4, [perm("(1 2)(3 4)"), perm("(1 3)(2 4)")])
    assert automizer(G, V4).order == 6
    T = PermGroup(4, [perm("(1 2)", 4)])
    assert automizer(G, T).order == 1
    assert automizer(G, PermGroup.trivial(4)).order == 1


def test_automizer_order_constraints():
    for G, p in ((PermGroup.symmetric(4), 2), (PermGroup.alternating(5), 2)):
        table = fusion_table(G, p)
        S = table.sylow
        for i, aut in enumerate(table.automizers):
            P = table.subgroups[table.s_classes[i].rep_id]
            NG = normalizer(G, P)
            CG = centralizer(G, P)
            assert aut.order == NG.order // intersection(NG, CG).order
            NS = normalizer(S, P)
            CS = centralizer(S, P)
            s_automizer = NS.order // intersection(NS, CS).order
            assert aut.order % s_automizer == 0


# ---------------------------------------------------------------------------
# Alperin factorization


def test_alperin_holds_on_corpus_instances(corpus):
    cases = [
        ("S4", 2),
        ("S5", 2),
        ("A5", 2),
        ("A6", 2),
        ("S3wrC2", 2),
        ("S3wrC2", 3),
        ("A4xC2", 2),
        ("D6", 2),
    ]
    for name, p in cases:
        G = corpus[name]
        ok, chains, table = alperin_closure_check(G, p)
        assert ok, (name, p)
        # every produced chain composes to a verified fusion witness
        for (i, j), moves in chains.items():
            total = G.identity()
            for move in moves:
                total = total * move.element
            base = table.subgroups[table.s_classes[i].rep_id]
            rep = table.subgroups[table.s_classes[j].rep_id]
            assert base.conjugated(total).same_group(rep), (name, p, i, j)


def test_alperin_trivial_when_sylow_normal():
    G = PermGroup.dihedral(6)  # the Sylow 3-subgroup is normal
    ok, chains, table = alperin_closure_check(G, 3)
    assert ok
    assert len(table.fusion_classes()) == len(table.s_classes)


# ---------------------------------------------------------------------------
# p'-kernel invariance


def test_p_prime_kernel_invariance_examples():
    S3 = PermGroup.symmetric(3)
    assert p_prime_kernel_invariance(S3, 2)  # kernel is Alt(3)
    G = direct_product(PermGroup.symmetric(3), PermGroup.cyclic(3))
    assert p_prime_kernel_invariance(G, 2)
    # trivial kernel: nothing to quotient, invariance is immediate
    assert p_prime_kernel_invariance(PermGroup.symmetric(4), 2)
    assert p_prime_kernel_invariance(
        wreath_imprimitive(PermGroup.symmetric(3), 2, PermGroup.cyclic(2)), 2
    )
