"""SMILES parsing into an immutable molecular graph.

The parser covers the subset of SMILES that occurs in small-molecule
property datasets: organic-subset atoms, bracket atoms with isotope /
charge / H-count / chirality, branches, ring closures (including %nn),
aromatic lowercase notation, and '.'-separated fragments.  Directional
bond characters ('/' and '\\') are accepted and read as single bonds;
cis/trans information is not retained.

Aromaticity: lowercase flags are authoritative.  Additionally, rings of
C/N/O/S written with strictly alternating single/double Kekule bonds are
promoted to aromatic when the ring pi count satisfies the 4n+2 rule.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import networkx as nx

from ..errors import SmilesSyntaxError, ValenceError
from .tables import ATOMIC_NUMBERS

# Default valences used for implicit-hydrogen assignment; multi-valent
# elements list every standard state in increasing order.
STANDARD_VALENCES = {
    "B": (3,),
    "C": (4,),
    "N": (3, 5),
    "O": (2,),
    "P": (3, 5),
    "S": (2, 4, 6),
    "F": (1,),
    "Cl": (1,),
    "Br": (1,),
    "I": (1,),
}

ORGANIC_SUBSET = {"B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I"}
AROMATIC_SYMBOLS = {"b", "c", "n", "o", "p", "s"}

_BRACKET_RE = re.compile(
    r"^(?P<isotope>\d+)?"
    r"(?P<element>[A-Z][a-z]?|[bcnops]|se|as)"
    r"(?P<chiral>@{1,2})?"
    r"(?P<hcount>H\d*)?"
    r"(?P<charge>\+{1,3}|-{1,3}|[+-]\d)?"
    r"(?::\d+)?$"  # atom-map class, parsed and dropped
)

_BOND_ORDERS = {"-": 1, "=": 2, "#": 3, "/": 1, "\\": 1}


@dataclass(frozen=True)
class Atom:
    symbol: str
    atomic_number: int
    formal_charge: int = 0
    aromatic: bool = False
    implicit_h: int = 0
    chirality: str | None = None
    isotope: int | None = None


@dataclass(frozen=True)
class Bond:
    a: int
    b: int
    order: int
    aromatic: bool = False

    def other(self, idx: int) -> int:
        return self.b if idx == self.a else self.a


@dataclass(frozen=True)
class MoleculeGraph:
    atoms: tuple[Atom, ...]
    bonds: tuple[Bond, ...]
    rings: tuple[tuple[int, ...], ...]
    n_fragments: int
    smiles: str
    _adjacency: tuple[tuple[int, ...], ...] = field(repr=False, default=())

    def neighbors(self, idx: int):
        """Yield (neighbor_index, bond) pairs for one atom."""
        for bond_idx in self._adjacency[idx]:
            bond = self.bonds[bond_idx]
            yield bond.other(idx), bond

    def degree(self, idx: int) -> int:
        return len(self._adjacency[idx])

    def ring_membership(self, idx: int) -> int:
        return sum(1 for ring in self.rings if idx in ring)

    def ring_bond(self, a: int, b: int) -> bool:
        key = {a, b}
        for ring in self.rings:
            n = len(ring)
            for i in range(n):
                if {ring[i], ring[(i + 1) % n]} == key:
                    return True
        return False


class _ParsedAtom:
    """Mutable atom record used while parsing."""

    __slots__ = (
        "symbol", "aromatic", "charge", "bracket", "bracket_h",
        "chirality", "isotope",
    )

    def __init__(self, symbol, aromatic, charge=0, bracket=False,
                 bracket_h=0, chirality=None, isotope=None):
        self.symbol = symbol
        self.aromatic = aromatic
        self.charge = charge
        self.bracket = bracket
        self.bracket_h = bracket_h
        self.chirality = chirality
        self.isotope = isotope


def _parse_bracket(body: str, position: int) -> _ParsedAtom:
    match = _BRACKET_RE.match(body)
    if match is None:
        raise SmilesSyntaxError(f"malformed bracket atom [{body}] at position {position}")
    element = match.group("element")
    aromatic = element[0].islower()
    symbol = element.capitalize() if aromatic else element
    if symbol not in ATOMIC_NUMBERS:
        raise SmilesSyntaxError(f"unknown element '{element}' at position {position}")
    hcount = match.group("hcount")
    if hcount is None:
        n_h = 0
    elif hcount == "H":
        n_h = 1
    else:
        n_h = int(hcount[1:])
    charge_text = match.group("charge")
    if charge_text is None:
        charge = 0
    elif charge_text[-1].isdigit():
        charge = int(charge_text[-1]) * (1 if charge_text[0] == "+" else -1)
    else:
        charge = charge_text.count("+") - charge_text.count("-")
    isotope = match.group("isotope")
    return _ParsedAtom(
        symbol,
        aromatic,
        charge=charge,
        bracket=True,
        bracket_h=n_h,
        chirality=match.group("chiral"),
        isotope=int(isotope) if isotope else None,
    )


def _tokenize(smiles: str):
    """Yield (kind, payload, position) triples."""
    i = 0
    n = len(smiles)
    while i < n:
        ch = smiles[i]
        if ch == "[":
            end = smiles.find("]", i)
            if end < 0:
                raise SmilesSyntaxError(f"unclosed bracket at position {i}")
            yield "atom", _parse_bracket(smiles[i + 1:end], i), i
            i = end + 1
        elif ch.isupper():
            two = smiles[i:i + 2]
            if two in ("Cl", "Br"):
                symbol = two
                i += 2
            else:
                symbol = ch
                i += 1
            if symbol not in ORGANIC_SUBSET:
                raise SmilesSyntaxError(
                    f"element '{symbol}' must be written in brackets (position {i})")
            yield "atom", _ParsedAtom(symbol, aromatic=False), i
        elif ch in AROMATIC_SYMBOLS:
            yield "atom", _ParsedAtom(ch.upper(), aromatic=True), i
            i += 1
        elif ch in "-=#:/\\":
            yield "bond", ch, i
            i += 1
        elif ch == "(":
            yield "open", None, i
            i += 1
        elif ch == ")":
            yield "close", None, i
            i += 1
        elif ch.isdigit():
            yield "ring", int(ch), i
            i += 1
        elif ch == "%":
            if i + 2 >= n or not smiles[i + 1:i + 3].isdigit():
                raise SmilesSyntaxError(f"malformed %nn ring closure at position {i}")
            yield "ring", int(smiles[i + 1:i + 3]), i
            i += 3
        elif ch == ".":
            yield "dot", None, i
            i += 1
        elif ch.isspace():
            raise SmilesSyntaxError(f"whitespace inside SMILES at position {i}")
        else:
            raise SmilesSyntaxError(f"unexpected character {ch!r} at position {i}")


def _walk_ring_order(members: set[int], adjacency: dict[int, set[int]]) -> tuple[int, ...]:
    """Order a cycle's members by traversal; falls back to sorted order."""
    start = min(members)
    order = [start]
    prev = None
    current = start
    while True:
        nxt = [m for m in adjacency[current] if m in members and m != prev]
        if prev is None:
            nxt = sorted(nxt)
        if not nxt:
            return tuple(sorted(members))
        step = nxt[0]
        if step == start:
            break
        if step in order:
            return tuple(sorted(members))
        order.append(step)
        prev, current = current, step
    if len(order) != len(members):
        return tuple(sorted(members))
    return tuple(order)


def parse_smiles(smiles: str) -> MoleculeGraph:
    """Parse a SMILES string into a MoleculeGraph.

    Raises SmilesSyntaxError for malformed input and ValenceError when
    explicit bonds exceed an atom's standard valence.
    """
    if not isinstance(smiles, str) or not smiles.strip():
        raise SmilesSyntaxError("empty SMILES input")
    smiles = smiles.strip()

    atoms: list[_ParsedAtom] = []
    bonds: list[list] = []  # [a, b, order_or_None, explicit_aromatic]
    anchor: int | None = None
    pending_bond: str | None = None
    branch_stack: list[int | None] = []
    open_rings: dict[int, tuple[int, str | None, int]] = {}
    n_fragments = 1

    def add_bond(a: int, b: int, symbol: str | None, position: int):
        if a == b:
            raise SmilesSyntaxError(f"self-bond at position {position}")
        if symbol == ":":
            bonds.append([a, b, 1, True])
        elif symbol is None:
            aromatic = atoms[a].aromatic and atoms[b].aromatic
            bonds.append([a, b, 1, aromatic])
        else:
            bonds.append([a, b, _BOND_ORDERS[symbol], False])

    for kind, payload, pos in _tokenize(smiles):
        if kind == "atom":
            atoms.append(payload)
            idx = len(atoms) - 1
            if anchor is not None:
                add_bond(anchor, idx, pending_bond, pos)
            elif pending_bond is not None:
                raise SmilesSyntaxError(f"dangling bond symbol before position {pos}")
            pending_bond = None
            anchor = idx
        elif kind == "bond":
            if pending_bond is not None:
                raise SmilesSyntaxError(f"two bond symbols in a row at position {pos}")
            pending_bond = payload
        elif kind == "open":
            if anchor is None:
                raise SmilesSyntaxError(f"branch before any atom at position {pos}")
            branch_stack.append(anchor)
        elif kind == "close":
            if not branch_stack:
                raise SmilesSyntaxError(f"unmatched ')' at position {pos}")
            anchor = branch_stack.pop()
        elif kind == "ring":
            if anchor is None:
                raise SmilesSyntaxError(f"ring closure before any atom at position {pos}")
            if payload in open_rings:
                other, other_bond, other_pos = open_rings.pop(payload)
                symbol = pending_bond if pending_bond is not None else other_bond
                if (pending_bond is not None and other_bond is not None
                        and pending_bond != other_bond):
                    raise SmilesSyntaxError(
                        f"conflicting ring-bond orders for closure {payload}")
                add_bond(other, anchor, symbol, pos)
                pending_bond = None
            else:
                open_rings[payload] = (anchor, pending_bond, pos)
                pending_bond = None
        elif kind == "dot":
            if pending_bond is not None:
                raise SmilesSyntaxError(f"bond symbol before '.' at position {pos}")
            if anchor is None:
                raise SmilesSyntaxError(f"empty fragment at position {pos}")
            anchor = None
            n_fragments += 1

    if anchor is None and atoms:
        raise SmilesSyntaxError("trailing '.' separator")
    if branch_stack:
        raise SmilesSyntaxError("unclosed '(' branch")
    if open_rings:
        raise SmilesSyntaxError(
            f"unmatched ring closure digits: {sorted(open_rings)}")
    if pending_bond is not None:
        raise SmilesSyntaxError("trailing bond symbol")

    seen_pairs = set()
    for a, b, _, _ in bonds:
        pair = frozenset((a, b))
        if pair in seen_pairs:
            raise SmilesSyntaxError(f"duplicate bond between atoms {a} and {b}")
        seen_pairs.add(pair)

    # Ring perception (minimum cycle basis == smallest set of smallest rings
    # for the molecules this package targets).
    graph = nx.Graph()
    graph.add_nodes_from(range(len(atoms)))
    graph.add_edges_from((a, b) for a, b, _, _ in bonds)
    adjacency_sets: dict[int, set[int]] = {i: set(graph.neighbors(i)) for i in graph}
    rings = tuple(
        _walk_ring_order(set(cycle), adjacency_sets)
        for cycle in nx.minimum_cycle_basis(graph)
    )
    rings = tuple(sorted(rings, key=lambda r: (len(r), r)))
    actual_fragments = nx.number_connected_components(graph) if atoms else 0

    ring_edges = set()
    for ring in rings:
        n = len(ring)
        for i in range(n):
            ring_edges.add(frozenset((ring[i], ring[(i + 1) % n])))

    # Aromatic bonds only exist inside rings; demote stray flags (e.g. the
    # biphenyl linker bond written between two lowercase atoms).
    for bond in bonds:
        if bond[3] and frozenset((bond[0], bond[1])) not in ring_edges:
            bond[3] = False

    for idx, atom in enumerate(atoms):
        if atom.aromatic and not any(idx in ring for ring in rings):
            raise SmilesSyntaxError(
                f"aromatic atom at index {idx} is not in any ring")

    _promote_kekule_rings(atoms, bonds, rings)

    final_atoms = tuple(
        Atom(
            symbol=a.symbol,
            atomic_number=ATOMIC_NUMBERS[a.symbol],
            formal_charge=a.charge,
            aromatic=a.aromatic,
            implicit_h=_implicit_hydrogens(i, a, bonds),
            chirality=a.chirality,
            isotope=a.isotope,
        )
        for i, a in enumerate(atoms)
    )
    final_bonds = tuple(Bond(a, b, order, aromatic) for a, b, order, aromatic in bonds)
    adjacency: list[list[int]] = [[] for _ in atoms]
    for bond_idx, bond in enumerate(final_bonds):
        adjacency[bond.a].append(bond_idx)
        adjacency[bond.b].append(bond_idx)
    return MoleculeGraph(
        atoms=final_atoms,
        bonds=final_bonds,
        rings=rings,
        n_fragments=actual_fragments,
        smiles=smiles,
        _adjacency=tuple(tuple(x) for x in adjacency),
    )


def _promote_kekule_rings(atoms, bonds, rings):
    """Mark alternating single/double C/N/O/S rings aromatic (4n+2 only)."""
    bond_lookup = {}
    for i, (a, b, order, aromatic) in enumerate(bonds):
        bond_lookup[frozenset((a, b))] = i
    for ring in rings:
        n = len(ring)
        if n < 4 or n % 2:
            continue
        if any(atoms[i].aromatic for i in ring):
            continue
        if any(atoms[i].symbol not in ("C", "N", "O", "S") for i in ring):
            continue
        ring_bond_ids = []
        ok = True
        for i in range(n):
            key = frozenset((ring[i], ring[(i + 1) % n]))
            if key not in bond_lookup:
                ok = False
                break
            ring_bond_ids.append(bond_lookup[key])
        if not ok:
            continue
        orders = [bonds[i][2] for i in ring_bond_ids]
        if any(o not in (1, 2) for o in orders):
            continue
        alternating = all(orders[i] != orders[(i + 1) % n] for i in range(n))
        pi_electrons = 2 * orders.count(2)
        if alternating and pi_electrons % 4 == 2:
            for i in ring:
                atoms[i].aromatic = True
            for bond_id in ring_bond_ids:
                bonds[bond_id][3] = True


def _implicit_hydrogens(idx: int, atom: _ParsedAtom, bonds) -> int:
    """Implicit H count; raises ValenceError when explicit bonds overflow."""
    order_sum = 0
    for a, b, order, aromatic in bonds:
        if idx in (a, b):
            order_sum += 1 if aromatic else order
    valences = STANDARD_VALENCES.get(atom.symbol)
    if atom.bracket:
        if (valences is not None and atom.charge == 0
                and order_sum + atom.bracket_h > max(valences)):
            raise ValenceError(
                f"atom {idx} ({atom.symbol}) has valence "
                f"{order_sum + atom.bracket_h} > {max(valences)}")
        return atom.bracket_h
    if valences is None:
        return 0
    if order_sum > max(valences):
        raise ValenceError(
            f"atom {idx} ({atom.symbol}) has explicit valence "
            f"{order_sum} > {max(valences)}")
    if atom.aromatic:
        # One valence is consumed by the ring pi system.
        return max(0, valences[0] - order_sum - 1)
    for valence in valences:
        if valence >= order_sum:
            return valence - order_sum
    return 0
