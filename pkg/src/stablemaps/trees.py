"""Stable (n, d)-trees: enumeration, automorphisms, the flag injection, and
an independent stratification oracle for Poincare polynomials.

A tree is stored through its flags (half-edges).  ``sigma`` pairs the two
flags of an edge and fixes legs; ``vertex_of`` assigns each flag to its
vertex; legs carry labels ``1..n``; vertices carry degrees.  Isomorphisms
must fix every leg label and preserve degrees.

Canonical forms root the tree at its center, found by repeatedly pruning
the leaves of the leg-free tree.  The center is either a vertex or an edge
and is invariant under every automorphism.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .coeffring import LCoeff, projective_class
from .moduli import _m_open, _m_star
from .symfunc import Truncation, z_factor


@dataclass(frozen=True)
class StableTree:
    sigma: tuple[int, ...]
    vertex_of: tuple[int, ...]
    deg: tuple[int, ...]
    leaf_labels: tuple[tuple[int, int], ...]  # (flag, label), sorted by flag

    @property
    def flags(self) -> range:
        return range(len(self.sigma))

    @property
    def n_vertices(self) -> int:
        return len(self.deg)

    @property
    def legs(self) -> list[int]:
        return [f for f in self.flags if self.sigma[f] == f]

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(f, g) for f, g in enumerate(self.sigma) if f < g]

    @property
    def n(self) -> int:
        return len(self.leaf_labels)

    @property
    def d(self) -> int:
        return sum(self.deg)

    def flags_at(self, v: int) -> list[int]:
        return [f for f in self.flags if self.vertex_of[f] == v]

    def valence(self, v: int) -> int:
        return sum(1 for f in self.flags if self.vertex_of[f] == v)

    def label(self, f: int) -> int:
        return dict(self.leaf_labels)[f]

    def neighbors(self, v: int) -> list[tuple[int, int, int]]:
        """``(own flag, other flag, other vertex)`` for each edge at ``v``."""
        out = []
        for f in self.flags_at(v):
            g = self.sigma[f]
            if g != f:
                out.append((f, g, self.vertex_of[g]))
        return out

    def is_stable(self) -> bool:
        return all(self.deg[v] > 0 or self.valence(v) > 2 for v in range(self.n_vertices))

    def is_connected(self) -> bool:
        seen, stack = {0}, [0]
        while stack:
            v = stack.pop()
            for _, _, w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n_vertices

    def relabel_flags(self, perm: list[int]) -> "StableTree":
        """The same tree with flag ``f`` renamed ``perm[f]``."""
        n = len(perm)
        sigma = [0] * n
        vertex_of = [0] * n
        for f in range(n):
            sigma[perm[f]] = perm[self.sigma[f]]
            vertex_of[perm[f]] = self.vertex_of[f]
        labels = tuple(sorted((perm[f], lab) for f, lab in self.leaf_labels))
        return StableTree(tuple(sigma), tuple(vertex_of), self.deg, labels)

    def dimension(self, r: int) -> int:
        return r * self.d + r + self.d + self.n - 3 - len(self.edges)


# ---------------------------------------------------------------------------
# centers and canonical codes

def center(t: StableTree) -> tuple[str, tuple[int, ...]]:
    """``("V", (v,))`` or ``("E", (f, g))`` with ``f < g`` the flags of the center edge."""
    alive = set(range(t.n_vertices))
    degree = {v: len(t.neighbors(v)) for v in alive}
    while len(alive) > 2:
        leaves = [v for v in alive if degree[v] <= 1]
        for v in leaves:
            alive.discard(v)
            for _, _, w in t.neighbors(v):
                if w in alive:
                    degree[w] -= 1
    if len(alive) == 1:
        return "V", (alive.pop(),)
    u, w = sorted(alive)
    for f, g, x in t.neighbors(u):
        if x == w:
            return "E", tuple(sorted((f, g)))
    raise AssertionError("center vertices are not adjacent")


def rooted_code(t: StableTree, v: int, parent_flag: int | None = None) -> str:
    legs = sorted(t.label(f) for f in t.flags_at(v) if t.sigma[f] == f)
    kids = sorted(rooted_code(t, w, g) for f, g, w in t.neighbors(v) if f != parent_flag)
    return f"({t.deg[v]};{','.join(map(str, legs))};{''.join(kids)})"


def canonical_code(t: StableTree) -> str:
    kind, elems = center(t)
    if kind == "V":
        return "V" + rooted_code(t, elems[0])
    f, g = elems
    halves = sorted((rooted_code(t, t.vertex_of[f], f), rooted_code(t, t.vertex_of[g], g)))
    return "E" + "|".join(halves)


# ---------------------------------------------------------------------------
# automorphisms

def _isos(t: StableTree, v: int, pf: int | None, w: int, pg: int | None) -> list[dict[int, int]]:
    """Flag bijections from the branch at ``v`` onto the branch at ``w``."""
    if t.deg[v] != t.deg[w] or rooted_code(t, v, pf) != rooted_code(t, w, pg):
        return []
    base: dict[int, int] = {}
    if pf is not None:
        base[pf] = pg
    legs_w = {t.label(f): f for f in t.flags_at(w) if t.sigma[f] == f}
    for f in t.flags_at(v):
        if t.sigma[f] == f:
            base[f] = legs_w[t.label(f)]
    groups_v: dict[str, list] = defaultdict(list)
    groups_w: dict[str, list] = defaultdict(list)
    for f, g, x in t.neighbors(v):
        if f != pf:
            groups_v[rooted_code(t, x, g)].append((f, g, x))
    for f, g, x in t.neighbors(w):
        if f != pg:
            groups_w[rooted_code(t, x, g)].append((f, g, x))
    partial = [base]
    for code in sorted(groups_v):
        src, dst = groups_v[code], groups_w[code]
        extended = []
        for perm in itertools.permutations(dst):
            choices = [[]]
            for (f, g, x), (f2, g2, x2) in zip(src, perm):
                sub = _isos(t, x, g, x2, g2)
                choices = [c + [s | {f: f2}] for c in choices for s in sub]
            for m in partial:
                for c in choices:
                    merged = dict(m)
                    for piece in c:
                        merged.update(piece)
                    extended.append(merged)
        partial = extended
    return partial


def automorphisms(t: StableTree) -> list[tuple[int, ...]]:
    """All automorphisms as flag permutations, identity first."""
    kind, elems = center(t)
    if kind == "V":
        v = elems[0]
        maps = _isos(t, v, None, v, None)
    else:
        f, g = elems
        u, w = t.vertex_of[f], t.vertex_of[g]
        maps = [a | b for a in _isos(t, u, f, u, f) for b in _isos(t, w, g, w, g)]
        maps += [a | b for a in _isos(t, u, f, w, g) for b in _isos(t, w, g, u, f)]
    perms = sorted(tuple(m[x] for x in t.flags) for m in maps)
    ident = tuple(t.flags)
    perms.remove(ident)
    return [ident] + perms


def aut_order(t: StableTree) -> int:
    return len(automorphisms(t))


@dataclass(frozen=True)
class CanonicalTree:
    tree: StableTree
    code: str
    aut: int


# ---------------------------------------------------------------------------
# enumeration

# nested form: (deg, sorted legs, sorted children)
Node = tuple


def _node_code(node: Node) -> str:
    d, legs, kids = node
    return f"({d};{','.join(map(str, legs))};{''.join(sorted(_node_code(k) for k in kids))})"


def _splits(labels: frozenset, degree: int):
    """Multisets of child blocks ``(labels, degree)`` covering the given resources."""
    if labels:
        m = min(labels)
        rest = sorted(labels - {m})
        for size in range(len(rest) + 1):
            for extra in itertools.combinations(rest, size):
                block = frozenset((m,) + extra)
                for e in range(degree + 1):
                    for tail in _splits(labels - block, degree - e):
                        yield [(block, e)] + tail
        return
    # unlabeled blocks need positive degree; enumerate as a partition of degree
    for parts in _int_partitions(degree):
        yield [(frozenset(), e) for e in parts]


def _int_partitions(n: int, max_part: int | None = None):
    if max_part is None:
        max_part = n
    if n == 0:
        yield []
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _int_partitions(n - first, first):
            yield [first] + rest


def _vertex_options(labels: frozenset, degree: int, has_parent: bool):
    for dv in range(degree + 1):
        rest_deg = degree - dv
        for size in range(len(labels) + 1):
            for legs in itertools.combinations(sorted(labels), size):
                remaining = labels - frozenset(legs)
                for blocks in _splits(remaining, rest_deg):
                    valence = int(has_parent) + len(legs) + len(blocks)
                    if dv == 0 and valence < 3:
                        continue
                    yield dv, legs, blocks


def _assemble(dv: int, legs, blocks) -> list[Node]:
    pools = [_branches(b, e) for b, e in blocks]
    out = {}
    for kids in itertools.product(*pools):
        node = (dv, tuple(legs), tuple(sorted(kids, key=_node_code)))
        out.setdefault(_node_code(node), node)
    return list(out.values())


@lru_cache(maxsize=None)
def _branches(labels: frozenset, degree: int) -> tuple[Node, ...]:
    """Stable branches hanging from a parent flag with the given labels and degree."""
    if not labels and degree == 0:
        return ()
    out = {}
    for dv, legs, blocks in _vertex_options(labels, degree, True):
        for node in _assemble(dv, legs, blocks):
            out.setdefault(_node_code(node), node)
    return tuple(out[k] for k in sorted(out))


def _realize(root: Node) -> StableTree:
    sigma: list[int] = []
    vertex_of: list[int] = []
    deg: list[int] = []
    labels: list[tuple[int, int]] = []

    def build(node: Node, parent_flag: int | None) -> None:
        v = len(deg)
        d, legs, kids = node
        deg.append(d)
        if parent_flag is not None:
            vertex_of[parent_flag] = v
        for lab in legs:
            f = len(sigma)
            sigma.append(f)
            vertex_of.append(v)
            labels.append((f, lab))
        for kid in kids:
            f, g = len(sigma), len(sigma) + 1
            sigma.extend([g, f])
            vertex_of.extend([v, -1])
            build(kid, g)

    build(root, None)
    return StableTree(tuple(sigma), tuple(vertex_of), tuple(deg), tuple(sorted(labels)))


@lru_cache(maxsize=None)
def _enumerate(n: int, d: int) -> tuple[CanonicalTree, ...]:
    labels = frozenset(range(1, n + 1))
    found: dict[str, StableTree] = {}
    for dv, legs, blocks in _vertex_options(labels, d, False):
        for node in _assemble(dv, legs, blocks):
            t = _realize(node)
            found.setdefault(canonical_code(t), t)
    return tuple(CanonicalTree(found[c], c, aut_order(found[c])) for c in sorted(found))


def enumerate_trees(n: int, d: int) -> list[CanonicalTree]:
    """One stable tree per isomorphism class, ordered by canonical code."""
    if n < 0 or d < 0:
        raise ValueError("n and d must be nonnegative")
    return list(_enumerate(n, d))


def flag_bound(n: int, d: int) -> int:
    """The flag-count bound ``3n + 2d - 4`` from the vertex-valence count."""
    return 3 * n + 2 * d - 4


def max_flags(n: int, d: int) -> int:
    """Largest flag count actually attained, ``max(n, 3n + 4d - 6)`` for nonempty cases."""
    return max(n, 3 * n + 4 * d - 6)


# ---------------------------------------------------------------------------
# the flag injection

def flag_injection(t: StableTree) -> tuple[dict[int, tuple[str, int]], tuple[str, int]]:
    """Injection of flags into vertices, edges and legs, and the missed element.

    Legs map to themselves.  On the leg-free tree, each extremal vertex
    receives its unique flag and the other flag of that edge receives the
    edge; then the extremal vertices and edges are pruned.  Elements are
    tagged ``("V", v)``, ``("E", min flag)`` or ``("L", flag)``.
    """
    iota: dict[int, tuple[str, int]] = {f: ("L", f) for f in t.legs}
    alive_v = set(range(t.n_vertices))
    alive_e = {min(f, g): (f, g) for f, g in t.edges}
    while True:
        inc: dict[int, list[int]] = defaultdict(list)
        for key, (f, g) in alive_e.items():
            inc[t.vertex_of[f]].append(key)
            inc[t.vertex_of[g]].append(key)
        if len(alive_v) == 1:
            star = ("V", next(iter(alive_v)))
            break
        extremal = sorted(v for v in alive_v if len(inc[v]) == 1)
        if len(alive_v) == 2:
            (key,) = alive_e
            f, g = alive_e[key]
            iota[f] = ("V", t.vertex_of[f])
            iota[g] = ("V", t.vertex_of[g])
            star = ("E", key)
            break
        for v in extremal:
            (key,) = inc[v]
            f, g = alive_e[key]
            if t.vertex_of[f] != v:
                f, g = g, f
            iota[f] = ("V", v)
            iota[g] = ("E", key)
        for v in extremal:
            alive_v.discard(v)
            for key in inc[v]:
                alive_e.pop(key, None)
    return iota, star


def codomain(t: StableTree) -> set[tuple[str, int]]:
    return ({("V", v) for v in range(t.n_vertices)}
            | {("E", min(e)) for e in t.edges}
            | {("L", f) for f in t.legs})


# ---------------------------------------------------------------------------
# stratum classes by Burnside averaging

def _cycle_type(perm: tuple[int, ...], support: list[int]) -> tuple[int, ...]:
    seen, lengths = set(), []
    for f in support:
        if f in seen:
            continue
        k, g = 0, f
        while g not in seen:
            seen.add(g)
            g = perm[g]
            k += 1
        lengths.append(k)
    return tuple(sorted(lengths, reverse=True))


def _power(perm: tuple[int, ...], k: int) -> tuple[int, ...]:
    out = list(range(len(perm)))
    for _ in range(k):
        out = [perm[x] for x in out]
    return tuple(out)


def _trace(series, lam: tuple[int, ...], d: int) -> LCoeff:
    # character of the class at a permutation of cycle type lam
    return series[(lam, d)] * z_factor(lam)


def _oracle_trunc(trees: list[CanonicalTree], d: int) -> Truncation:
    need = 0
    for ct in trees:
        t = ct.tree
        for v in range(t.n_vertices):
            need = max(need, t.valence(v) + t.deg[v])
    return Truncation(max(need, d), d)


def stratum_poincare(ct: CanonicalTree, r: int, trunc: Truncation | None = None) -> LCoeff:
    """Serre polynomial of the stratum of maps with dual tree ``ct``.

    The center vertex carries the full open class, every other vertex the
    evaluation-fibre class over its parent's node; an edge center carries
    ``[P^r]`` for the node.  The quotient by Aut is the average of traces,
    each orbit of length k contributing the Adams transform of the trace of
    the k-th power on a representative.
    """
    t = ct.tree
    if trunc is None:
        trunc = _oracle_trunc([ct], t.d)
    mo = _m_open(r, trunc)
    ms = _m_star(r, trunc)
    kind, elems = center(t)
    pr = projective_class(r)

    parent: dict[int, int | None] = {}
    if kind == "V":
        roots = [(elems[0], None)]
    else:
        f, g = elems
        roots = [(t.vertex_of[f], f), (t.vertex_of[g], g)]
    stack = list(roots)
    while stack:
        v, pf = stack.pop()
        parent[v] = pf
        for f, g, w in t.neighbors(v):
            if f != pf:
                stack.append((w, g))

    total = LCoeff()
    auts = automorphisms(t)
    for perm in auts:
        vmap = {v: v for v in range(t.n_vertices)}
        vmap.update({t.vertex_of[f]: t.vertex_of[perm[f]] for f in t.flags})
        term = pr if kind == "E" else LCoeff.const(1)
        seen: set[int] = set()
        for v in range(t.n_vertices):
            if v in seen:
                continue
            orbit, w = [], v
            while w not in seen:
                seen.add(w)
                orbit.append(w)
                w = vmap[w]
            k = len(orbit)
            gk = _power(perm, k)
            own = [f for f in t.flags_at(v) if f != parent[v]]
            lam = _cycle_type(gk, own)
            if parent[v] is None:
                term = term * _trace(mo, lam, t.deg[v])
            else:
                term = term * _trace(ms, lam, t.deg[v]).adams(k)
        total = total + term
    return total * Fraction(1, len(auts))


def oracle_poincare(n: int, d: int, r: int) -> LCoeff:
    """Poincare polynomial of the compactified space as a sum over strata."""
    trees = enumerate_trees(n, d)
    trunc = _oracle_trunc(trees, d)
    total = LCoeff()
    for ct in trees:
        total = total + stratum_poincare(ct, r, trunc)
    return total


# ---------------------------------------------------------------------------
# output

def to_dot(ct: CanonicalTree, name: str = "T") -> str:
    """Graphviz rendering: vertices show their degree, legs their label."""
    t = ct.tree
    lines = [f'graph "{name}" {{', f'  label="{ct.code}  |Aut|={ct.aut}";']
    for v in range(t.n_vertices):
        lines.append(f'  v{v} [shape=circle,label="{t.deg[v]}"];')
    for f, lab in t.leaf_labels:
        lines.append(f'  l{lab} [shape=plaintext,label="{lab}"];')
        lines.append(f"  v{t.vertex_of[f]} -- l{lab};")
    for f, g in t.edges:
        lines.append(f"  v{t.vertex_of[f]} -- v{t.vertex_of[g]};")
    lines.append("}")
    return "\n".join(lines)
