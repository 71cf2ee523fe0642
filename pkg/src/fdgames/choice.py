"""Relations as choice correspondences, and exhaustive audits of choice axioms.

For a relation ``->`` the correspondence ``choose(rel, A)`` returns the sinks
of ``->`` restricted to ``A``.  The checks below also accept an explicit
correspondence given as a mapping from subsets to chosen subsets, so they can
be exercised on correspondences that do not come from a relation.

Subsets are handled internally as integer bitmasks over the ground set and
checked pairwise with numpy.  Pairs whose intersection is empty are never
examined: chosen sets live among the nonempty subsets, so such pairs carry no
constraint.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .errors import CapacityExceeded, EmptySubset, MalformedGame, UnknownNode
from .graph import Relation, intern_universe

EMPTY_INTERSECTION_CONVENTION = (
    "pairs (A, B) with an empty intersection are skipped by the iota, "
    "semi-lattice and intersection-inclusion checks"
)

DEFAULT_MAX_NODES = 12
# bitmask lookup tables are 2**n entries long
MAX_TABLE_NODES = 20
_CHUNK_PAIRS = 1 << 21

Subset = frozenset[int]
Choice = Union[Relation, Mapping[Subset, Subset]]


def _as_subset(rel: Relation, A: Iterable[int]) -> Subset:
    subset = frozenset(A)
    if not subset:
        raise EmptySubset()
    for v in subset:
        if not (isinstance(v, int) and 0 <= v < len(rel)):
            raise UnknownNode(v)
    return subset


def choose(rel: Relation, A: Iterable[int]) -> Subset:
    """Elements of ``A`` with no arc to another element of ``A``.

    An empty result means ``A`` lies outside the domain of the correspondence.
    """
    subset = _as_subset(rel, A)
    succ = rel.successors
    return frozenset(s for s in subset if all(t == s or t not in subset for t in succ[s]))


def in_domain(rel: Relation, A: Iterable[int]) -> bool:
    return bool(choose(rel, A))


@dataclass(frozen=True)
class SubsetFamily:
    """Distinct nonempty subsets of a named ground set."""

    ground: tuple[str, ...]
    members: tuple[Subset, ...]

    def __post_init__(self):
        object.__setattr__(self, "ground", tuple(self.ground))
        intern_universe(self.ground)
        members = tuple(frozenset(m) for m in self.members)
        if len(set(members)) != len(members):
            raise MalformedGame("family members must be distinct")
        for m in members:
            if not m:
                raise EmptySubset()
            for v in m:
                if not (isinstance(v, int) and 0 <= v < len(self.ground)):
                    raise UnknownNode(v)
        object.__setattr__(self, "members", members)

    @classmethod
    def powerset(cls, ground: Sequence[str]) -> SubsetFamily:
        """Every nonempty subset, by increasing size then lexicographically."""
        n = len(ground)
        members = [
            frozenset(c) for k in range(1, n + 1) for c in itertools.combinations(range(n), k)
        ]
        return cls(tuple(ground), tuple(members))

    @classmethod
    def from_names(cls, ground: Sequence[str], members: Iterable[Iterable[str]]) -> SubsetFamily:
        index = intern_universe(ground)
        try:
            return cls(tuple(ground), tuple(frozenset(index[x] for x in m) for m in members))
        except KeyError as exc:
            raise UnknownNode(exc.args[0]) from None

    def label(self, subset: Iterable[int]) -> list[str]:
        return [self.ground[i] for i in sorted(subset)]


@dataclass(frozen=True)
class Counterexample:
    A: Subset
    B: Subset | None = None
    x: int | None = None

    def named(self, ground: Sequence[str]) -> dict:
        out: dict = {"A": [ground[i] for i in sorted(self.A)]}
        if self.B is not None:
            out["B"] = [ground[i] for i in sorted(self.B)]
        if self.x is not None:
            out["x"] = ground[self.x]
        return out


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    counterexample: Counterexample | None = None


@dataclass(frozen=True)
class Implication:
    """Outcome of checking ``hypotheses => conclusion`` on one instance."""

    name: str
    hypotheses_hold: bool
    conclusion: Verdict

    @property
    def passed(self) -> bool:
        return not self.hypotheses_hold or self.conclusion.passed

    @property
    def status(self) -> str:
        if not self.hypotheses_hold:
            return "vacuous"
        return "holds" if self.conclusion.passed else "violated"


@dataclass(frozen=True)
class ChoiceAuditReport:
    ground: tuple[str, ...]
    kappa: Verdict
    alpha: Verdict
    iota: Verdict
    semilattice: Verdict
    domain_total: bool
    single_valued: bool
    prop1: Implication
    prop2_items: tuple[Implication, Implication]
    convention: str = EMPTY_INTERSECTION_CONVENTION

    @property
    def passed(self) -> bool:
        """True when no proven implication is contradicted."""
        return self.kappa.passed and self.prop1.passed and all(p.passed for p in self.prop2_items)


# -- bitmask machinery --------------------------------------------------------


def _mask(subset: Iterable[int]) -> int:
    m = 0
    for v in subset:
        m |= 1 << v
    return m


def _unmask(m: int) -> Subset:
    return frozenset(i for i in range(m.bit_length()) if m >> i & 1)


class _Tables:
    """Choice and family-membership lookups indexed by subset bitmask."""

    def __init__(self, choice: Choice, fam: SubsetFamily):
        n = len(fam.ground)
        if n > MAX_TABLE_NODES:
            raise CapacityExceeded(n, MAX_TABLE_NODES)
        size = 1 << n
        self.members = np.array([_mask(m) for m in fam.members], dtype=np.int64)
        self.in_family = np.zeros(size, dtype=bool)
        self.in_family[self.members] = True
        self.popcount = np.zeros(size, dtype=np.int64)
        for i in range(n):
            self.popcount += (np.arange(size, dtype=np.int64) >> i) & 1

        if isinstance(choice, Relation):
            if choice.names != fam.ground:
                raise MalformedGame("relation universe differs from the family's ground set")
            masks = np.arange(size, dtype=np.int64)
            table = np.zeros(size, dtype=np.int64)
            for x, out in enumerate(choice.successors):
                others = _mask(t for t in out if t != x)
                sink = ((masks >> x) & 1).astype(bool) & ((masks & others) == 0)
                table |= sink.astype(np.int64) << x
        else:
            table = np.full(size, -1, dtype=np.int64)
            for A, chosen in choice.items():
                table[_mask(A)] = _mask(chosen)
            undefined = [m for m in fam.members if table[_mask(m)] < 0]
            if undefined:
                raise MalformedGame(f"correspondence undefined on family member {sorted(undefined[0])}")
        self.choice = table

    def pairs(self):
        """Yield (A, B) mask arrays covering every ordered pair of members."""
        members = self.members
        rows = max(1, _CHUNK_PAIRS // max(1, len(members)))
        for start in range(0, len(members), rows):
            A = members[start : start + rows, None]
            yield np.broadcast_to(A, (A.shape[0], len(members))), np.broadcast_to(
                members[None, :], (A.shape[0], len(members))
            )


def _lowest_bit(m: int) -> int:
    return (m & -m).bit_length() - 1


def _pair_key(A: int, B: int, x: int | None):
    return (
        bin(A).count("1") + bin(B).count("1"),
        tuple(sorted(_unmask(A))),
        tuple(sorted(_unmask(B))),
        -1 if x is None else x,
    )


def _minimal_pair(tables: _Tables, found: list[tuple[np.ndarray, np.ndarray, np.ndarray | None]]):
    """Smallest |A|+|B|, then lexicographic node order of A, B, then x."""
    best = None
    for A, B, bits in found:
        if A.size == 0:
            continue
        total = tables.popcount[A] + tables.popcount[B]
        keep = total == total.min()
        A, B = A[keep], B[keep]
        bits = bits[keep] if bits is not None else None
        for k in range(A.size):
            x = None if bits is None else _lowest_bit(int(bits[k]))
            key = _pair_key(int(A[k]), int(B[k]), x)
            if best is None or key < best[0]:
                best = (key, int(A[k]), int(B[k]), x)
    if best is None:
        return None
    _, A, B, x = best
    return Counterexample(_unmask(A), _unmask(B), x)


def _pairwise(name: str, tables: _Tables, violations) -> Verdict:
    """Run ``violations(A, B) -> (mask, bits)`` over all pairs and keep the minimal one."""
    found = []
    for A, B in tables.pairs():
        bad, bits = violations(A, B)
        if bad.any():
            found.append((A[bad], B[bad], None if bits is None else bits[bad]))
    ce = _minimal_pair(tables, found)
    return Verdict(name, ce is None, ce)


def _kappa(tables: _Tables) -> Verdict:
    M = tables.members
    C = tables.choice[M]
    bad = (C & ~M) != 0
    if not bad.any():
        return Verdict("kappa", True)
    candidates = sorted(
        (bin(int(a)).count("1"), tuple(sorted(_unmask(int(a)))), int(a), int(c))
        for a, c in zip(M[bad], C[bad])
    )
    _, _, a, c = candidates[0]
    return Verdict("kappa", False, Counterexample(_unmask(a), None, _lowest_bit(c & ~a)))


def _alpha(tables: _Tables) -> Verdict:
    ch = tables.choice

    def violations(A, B):
        bits = A & ch[B] & ~ch[A]
        return ((A & ~B) == 0) & (bits != 0), bits

    return _pairwise("alpha", tables, violations)


def _iota(tables: _Tables) -> Verdict:
    ch = tables.choice

    def violations(A, B):
        inter = A & B
        bits = A & ch[B] & ~ch[inter]
        return (inter != 0) & tables.in_family[inter] & (bits != 0), bits

    return _pairwise("iota", tables, violations)


def _semilattice(tables: _Tables) -> Verdict:
    def violations(A, B):
        inter = A & B
        return (inter != 0) & ~tables.in_family[inter], None

    return _pairwise("semilattice", tables, violations)


def _prop1_conclusion(tables: _Tables) -> Verdict:
    ch = tables.choice

    def violations(A, B):
        inter = A & B
        bits = ch[A] & ch[B] & ~ch[inter]
        return (inter != 0) & tables.in_family[inter] & (bits != 0), bits

    return _pairwise("prop1", tables, violations)


def _tables(choice: Choice, fam: SubsetFamily) -> _Tables:
    return _Tables(choice, fam)


def check_kappa(choice: Choice, fam: SubsetFamily) -> Verdict:
    """Every chosen set is contained in the set it was chosen from."""
    return _kappa(_tables(choice, fam))


def check_alpha(choice: Choice, fam: SubsetFamily) -> Verdict:
    """A ⊆ B, x ∈ A and x ∈ C(B) imply x ∈ C(A), over all member pairs."""
    return _alpha(_tables(choice, fam))


def check_iota(choice: Choice, fam: SubsetFamily) -> Verdict:
    """x ∈ A and x ∈ C(B) imply x ∈ C(A ∩ B).

    Pairs whose intersection is empty or not a family member are skipped.
    """
    return _iota(_tables(choice, fam))


def check_semilattice(fam: SubsetFamily) -> bool:
    return _semilattice_verdict(fam).passed


def _semilattice_verdict(fam: SubsetFamily) -> Verdict:
    return _semilattice(_Tables({m: m for m in fam.members}, fam))


def _propositions(tables: _Tables, kappa: Verdict, alpha: Verdict, iota: Verdict, lattice: Verdict):
    prop1 = Implication("prop1", kappa.passed and iota.passed, _prop1_conclusion(tables))
    item1 = Implication("prop2.1", lattice.passed and iota.passed, alpha)
    item2 = Implication("prop2.2", lattice.passed and kappa.passed and alpha.passed, iota)
    return prop1, (item1, item2)


def check_propositions(choice: Choice, fam: SubsetFamily):
    """Check both propositions on one instance.

    Returns ``(prop1, (prop2_item1, prop2_item2))``.  Each is an
    :class:`Implication`; a ``violated`` status means a theorem was
    contradicted and indicates a bug, not a property of the data.
    """
    tables = _tables(choice, fam)
    return _propositions(tables, _kappa(tables), _alpha(tables), _iota(tables), _semilattice(tables))


def audit(rel: Relation, max_nodes: int = DEFAULT_MAX_NODES) -> ChoiceAuditReport:
    """Run every check for ``choose(rel, .)`` over all nonempty subsets."""
    if len(rel) > max_nodes:
        raise CapacityExceeded(len(rel), max_nodes)
    fam = SubsetFamily.powerset(rel.names)
    tables = _tables(rel, fam)
    kappa, alpha, iota = _kappa(tables), _alpha(tables), _iota(tables)
    lattice = _semilattice(tables)
    prop1, prop2 = _propositions(tables, kappa, alpha, iota, lattice)
    chosen = tables.choice[tables.members]
    return ChoiceAuditReport(
        ground=rel.names,
        kappa=kappa,
        alpha=alpha,
        iota=iota,
        semilattice=lattice,
        domain_total=bool((chosen != 0).all()),
        single_valued=bool((tables.popcount[chosen] == 1).all()),
        prop1=prop1,
        prop2_items=prop2,
    )
