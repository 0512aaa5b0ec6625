"""Prime graphs built from order spectra, and the degree-residue checks on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations

import networkx as nx

from .cyclotomic import prime_divisors

LABELS = (-2, -1, 0, 1, 2)


@dataclass(frozen=True)
class PrimeGraph:
    vertices: frozenset[int]
    edges: frozenset[frozenset[int]] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", frozenset(frozenset(e) for e in self.edges))
        for e in self.edges:
            if len(e) != 2 or not e <= self.vertices:
                raise ValueError(f"bad edge {sorted(e)}")

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def nx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(tuple(e) for e in self.edges)
        return g

    def __str__(self) -> str:
        es = " ".join(f"{p}-{q}" for p, q in self.sorted_edges())
        return f"vertices={','.join(map(str, sorted(self.vertices)))} edges={es or '-'}"


def graph_from_spectrum(spectrum) -> PrimeGraph:
    spec = set(spectrum)
    if not spec:
        raise ValueError("empty spectrum")
    if 1 not in spec or any(m < 1 for m in spec):
        raise ValueError("a spectrum must contain 1 and only positive integers")
    verts = set()
    edges = set()
    for m in spec:
        ps = prime_divisors(m) if m > 1 else ()
        verts.update(ps)
        edges.update(frozenset(e) for e in combinations(ps, 2))
    return PrimeGraph(frozenset(verts), frozenset(edges))


def components(g: PrimeGraph) -> list[frozenset[int]]:
    """Connected components, sorted by least vertex."""
    return sorted((frozenset(c) for c in nx.connected_components(g.nx())), key=min)


def induced(g: PrimeGraph, remove) -> PrimeGraph:
    """Drop the given primes and their incident edges."""
    drop = set(remove)
    return PrimeGraph(g.vertices - drop, frozenset(e for e in g.edges if not e & drop))


def restrict_to(g: PrimeGraph, keep) -> PrimeGraph:
    return induced(g, g.vertices - set(keep))


# -- residue partition -------------------------------------------------------


@dataclass(frozen=True)
class PiPartition:
    """Each prime p >= 5 labelled by the a in {-2..2} with degree = a mod p.

    Primes with no such residue go to ``unlabelled``.
    """

    degree: int
    labels: dict[int, int] = field(default_factory=dict)
    unlabelled: tuple[int, ...] = ()

    def cls(self, *labels: int) -> set[int]:
        return {p for p, a in self.labels.items() if a in labels}

    def __str__(self) -> str:
        parts = [f"{p}:{a:+d}" for p, a in sorted(self.labels.items())]
        parts += [f"{p}:none" for p in self.unlabelled]
        return f"degree={self.degree} " + " ".join(parts)


def pi_partition(degree: int, primes) -> PiPartition:
    labels = {}
    missing = []
    for p in sorted(set(primes)):
        if p < 5 or prime_divisors(p) != (p,):
            raise ValueError(f"{p} is not a prime >= 5")
        r = [a for a in LABELS if (degree - a) % p == 0]
        if r:
            labels[p] = r[0]
        else:
            missing.append(p)
    return PiPartition(degree, labels, tuple(missing))


@dataclass(frozen=True)
class Theorem15Result:
    holds: bool
    crossing_edges: tuple[tuple[int, int], ...] = ()

    def __bool__(self) -> bool:
        return self.holds


def _gamma2(g: PrimeGraph) -> PrimeGraph:
    return induced(g, {2, 3})


def _check_cover(g2: PrimeGraph, part: PiPartition) -> None:
    covered = set(part.labels) | set(part.unlabelled)
    if covered != set(g2.vertices):
        raise ValueError(f"partition covers {sorted(covered)}, graph has {sorted(g2.vertices)}")


def check_theorem15(g: PrimeGraph, part: PiPartition) -> Theorem15Result:
    """Each label class is a union of components of the graph without 2 and 3.

    Equivalently no edge joins primes with different labels; any such edge
    is returned as a certificate.
    """
    g2 = _gamma2(g)
    _check_cover(g2, part)
    label = dict(part.labels)
    label.update({p: None for p in part.unlabelled})
    crossing = tuple(sorted((p, q) for p, q in g2.sorted_edges() if label[p] != label[q]))
    return Theorem15Result(not crossing, crossing)


NOT_APPLICABLE = "not-applicable"
DISCONNECTED = "disconnected-confirmed"
VIOLATION = "violation"


def check_theorem17(g: PrimeGraph, part: PiPartition) -> str:
    """If pi_0, pi_{+-1}, pi_{+-2} are all nonempty, the graph without 2 is disconnected."""
    _check_cover(_gamma2(g), part)
    if not (part.cls(0) and part.cls(1, -1) and part.cls(2, -2)):
        return NOT_APPLICABLE
    return DISCONNECTED if len(components(induced(g, {2}))) > 1 else VIOLATION


# -- CRT degree construction -------------------------------------------------


def pi_part(n: int, primes) -> int:
    """Largest divisor of n supported on the given primes."""
    ps = set(primes)
    out = 1
    for p in prime_divisors(n):
        if p in ps:
            while n % p == 0:
                n //= p
                out *= p
    return out


def proposition6_degree(comps, values, order: int) -> int:
    """Least a >= 0 with a = values[i] mod order_{comps[i]} for every i."""
    comps = [frozenset(c) for c in comps]
    if len(comps) != len(values):
        raise ValueError("one value per component is required")
    if len(set(values)) != len(values):
        raise ValueError("values must be distinct")
    union = reduce(frozenset.union, comps, frozenset())
    if sum(len(c) for c in comps) != len(union):
        raise ValueError("components overlap")
    if union != frozenset(prime_divisors(order) if order > 1 else ()):
        raise ValueError(f"components do not partition the primes of {order}")
    if not comps:
        return 0
    a, m = 0, 1
    for c, v in zip(comps, values):
        mod = pi_part(order, c)
        # solve a + m t = v mod mod
        t = ((v - a) * pow(m, -1, mod)) % mod if mod > 1 else 0
        a, m = a + m * t, m * mod
    return a % m


def proposition6_class_function(table, comps, values):
    """Value values[i] on pi_i-classes, CRT degree at the identity.

    Every nonidentity class order must be a pi_i-number for a single i.
    """
    from .chartable import ClassFunction, _as_cyc

    comps = [frozenset(c) for c in comps]
    if table.order == 1:
        if len(values) != 1:
            raise ValueError("the trivial group takes a single value")
        return ClassFunction(table, (_as_cyc(values[0]),), "prop6")
    degree = proposition6_degree(comps, values, table.order)
    out = [_as_cyc(degree)]
    for i, c in enumerate(table.classes[1:], 1):
        ps = set(prime_divisors(c.elemorder))
        owners = [j for j, comp in enumerate(comps) if ps <= comp]
        if len(owners) != 1:
            raise ValueError(f"class {i} of order {c.elemorder} is not a pi_i-class for a single component")
        out.append(_as_cyc(values[owners[0]]))
    return ClassFunction(table, tuple(out), "prop6")
