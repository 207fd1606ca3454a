"""Self-contained reference cheminformatics toolkit.

Backs the golden-fixture generator when no external toolkit is importable.
Everything here is deliberately independent of the main package: its own
tokenizer, an explicit-hydrogen graph representation, Horton-style ring
perception, and inline parameter tables.  Version changes whenever any
output could change.
"""

from __future__ import annotations

import re
from collections import deque

TOOLKIT_NAME = "refchem"
TOOLKIT_VERSION = "0.1.0"


class RefChemError(ValueError):
    pass


# --- inline parameter tables (published constants) -------------------------

MASS = {
    "H": 1.008, "He": 4.002602, "Li": 6.94, "Be": 9.0121831, "B": 10.81,
    "C": 12.011, "N": 14.007, "O": 15.999, "F": 18.998403163, "Ne": 20.1797,
    "Na": 22.98976928, "Mg": 24.305, "Al": 26.9815384, "Si": 28.085,
    "P": 30.973761998, "S": 32.06, "Cl": 35.45, "Ar": 39.95, "K": 39.0983,
    "Ca": 40.078, "Ti": 47.867, "V": 50.9415, "Cr": 51.9961, "Mn": 54.938043,
    "Fe": 55.845, "Co": 58.933194, "Ni": 58.6934, "Cu": 63.546, "Zn": 65.38,
    "Ga": 69.723, "Ge": 72.630, "As": 74.921595, "Se": 78.971, "Br": 79.904,
    "Kr": 83.798, "Rb": 85.4678, "Sr": 87.62, "Zr": 91.224, "Mo": 95.95,
    "Ru": 101.07, "Rh": 102.90549, "Pd": 106.42, "Ag": 107.8682,
    "Cd": 112.414, "In": 114.818, "Sn": 118.710, "Sb": 121.760,
    "Te": 127.60, "I": 126.90447, "Xe": 131.293, "Cs": 132.90545196,
    "Ba": 137.327, "Pt": 195.084, "Au": 196.966570, "Hg": 200.592,
    "Tl": 204.38, "Pb": 207.2, "Bi": 208.98040,
}

NUMBER = {s: z for z, s in enumerate(
    "X H He Li Be B C N O F Ne Na Mg Al Si P S Cl Ar K Ca Sc Ti V Cr Mn Fe "
    "Co Ni Cu Zn Ga Ge As Se Br Kr Rb Sr Y Zr Nb Mo Tc Ru Rh Pd Ag Cd In Sn "
    "Sb Te I Xe Cs Ba".split())}
NUMBER.update({"Pt": 78, "Au": 79, "Hg": 80, "Tl": 81, "Pb": 82, "Bi": 83})

VALENCE = {"B": (3,), "C": (4,), "N": (3, 5), "O": (2,), "P": (3, 5),
           "S": (2, 4, 6), "F": (1,), "Cl": (1,), "Br": (1,), "I": (1,)}

TPSA_TERMS = {
    "[N]---": 3.24, "[N]-=": 12.36, "[N]#": 23.79, "[N]-==": 11.68,
    "[N]=#": 13.60, "[N]---r3": 3.01, "[NH1]--": 12.03, "[NH1]--r3": 21.94,
    "[NH1]=": 23.85, "[NH2]-": 26.02, "[N+]----": 0.00, "[N+]--=": 3.01,
    "[N+]-#": 4.36, "[NH1+]---": 4.44, "[NH1+]-=": 13.97, "[NH2+]--": 16.61,
    "[NH2+]=": 25.59, "[NH3+]-": 27.64, "[n]::": 12.89, "[n]:::": 4.41,
    "[n]-::": 4.93, "[n]=::": 8.39, "[nH1]::": 15.79, "[n+]:::": 4.10,
    "[n+]-::": 3.88, "[nH1+]::": 14.14,
    "[O]--": 9.23, "[O]--r3": 12.53, "[O]=": 17.07, "[OH1]-": 20.23,
    "[O-]-": 23.06, "[o]::": 13.14,
    "[S]--": 25.30, "[S]=": 32.09, "[S]--=": 19.21, "[S]--==": 8.38,
    "[SH1]-": 38.80, "[s]::": 28.24, "[s]=::": 21.70,
    "[P]---": 13.59, "[P]-=": 34.14, "[P]---=": 9.81, "[PH1]--=": 23.47,
}

CRIPPEN = {
    "C1": 0.1441, "C2": 0.0, "C3": -0.2035, "C4": -0.2051, "C5": -0.2783,
    "C6": 0.1551, "C7": 0.0017, "C8": 0.08452, "C9": -0.1444, "C10": -0.0516,
    "C11": 0.1193, "C12": -0.0967, "C13": -0.5443, "C14": 0.0, "C15": 0.245,
    "C16": 0.198, "C17": 0.0, "C18": 0.1581, "C19": 0.2955, "C20": 0.2713,
    "C21": 0.136, "C22": 0.4619, "C23": 0.5437, "C24": 0.1893, "C25": -0.8186,
    "C26": 0.264, "C27": 0.2148, "CS": 0.08129,
    "H1": 0.123, "H2": -0.2677, "H3": 0.2142, "H4": 0.298, "HS": 0.1125,
    "N1": -1.019, "N2": -0.7096, "N3": -1.027, "N4": -0.5188, "N5": 0.08387,
    "N6": 0.1836, "N7": -0.3187, "N8": -0.4458, "N9": 0.01508, "N10": -1.95,
    "N11": -0.3239, "N12": -1.119, "N13": -0.3396, "N14": 0.2887,
    "NS": -0.4806,
    "O1": 0.1552, "O2": -0.2893, "O3": -0.0684, "O4": 0.4833, "O5": 0.0335,
    "O6": -0.3339, "O7": -1.189, "O8": 0.1788, "O9": -0.1526, "O10": 0.1129,
    "O11": 0.4833, "O12": -1.326, "OS": -0.1188,
    "F": 0.4202, "Cl": 0.6895, "Br": 0.8456, "I": 0.8857, "Hal": -2.996,
    "P": 0.8612, "S1": 0.6482, "S2": -0.0024, "S3": 0.6237, "Me1": -0.3808,
}

METALS = frozenset(
    "Li Na K Rb Cs Be Mg Ca Sr Ba Al Zn Fe Cu Mn Cr Ni Co Ag Cd Hg Pb Sn "
    "Bi Ti V Mo Zr Ru Rh Pd Pt Au Ga Ge In Tl".split())

HETERO = frozenset("N O P S F Cl Br I".split())

_TOKEN = re.compile(
    r"(\[[^\]]*\])|(Cl|Br)|([BCNOPSFI])|([bcnops])|([-=#:/\\])|([()])"
    r"|(%\d\d)|(\d)|(\.)")

_BRACKET = re.compile(
    r"^\[(\d+)?([A-Z][a-z]?|[bcnops]|se|as)(@{1,2})?(H\d*)?"
    r"(\+{1,3}|-{1,3}|[+-]\d)?(?::\d+)?\]$")


class Mol:
    """Explicit-hydrogen molecular graph (arrays of atom fields)."""

    def __init__(self):
        self.symbol: list[str] = []
        self.charge: list[int] = []
        self.aromatic: list[bool] = []
        self.chiral: list[str | None] = []
        self.isotope: list[int | None] = []
        self.from_bracket: list[bool] = []
        self.bracket_h: list[int] = []
        self.edges: list[list] = []  # [a, b, order, aromatic]
        self.rings: list[tuple[int, ...]] = []
        self.n_heavy = 0  # atoms present before H expansion
        self.source = ""

    # -- convenience ------------------------------------------------------
    def adj(self):
        table = [[] for _ in self.symbol]
        for k, (a, b, order, arom) in enumerate(self.edges):
            table[a].append((b, order, arom, k))
            table[b].append((a, order, arom, k))
        return table


def _new_atom(mol: Mol, symbol, aromatic, charge=0, bracket=False,
              bracket_h=0, chiral=None, isotope=None) -> int:
    if symbol not in MASS:
        raise RefChemError(f"unknown element {symbol!r}")
    mol.symbol.append(symbol)
    mol.charge.append(charge)
    mol.aromatic.append(aromatic)
    mol.chiral.append(chiral)
    mol.isotope.append(isotope)
    mol.from_bracket.append(bracket)
    mol.bracket_h.append(bracket_h)
    return len(mol.symbol) - 1


def molecule(text: str) -> Mol:
    """Parse SMILES into an explicit-hydrogen graph."""
    if not text or not text.strip():
        raise RefChemError("empty SMILES")
    text = text.strip()
    mol = Mol()
    mol.source = text
    spans = [m for m in _TOKEN.finditer(text)]
    if sum(m.end() - m.start() for m in spans) != len(text):
        raise RefChemError(f"unrecognised characters in {text!r}")

    last: int | None = None
    bond: str | None = None
    stack: list[int | None] = []
    ring_open: dict[int, tuple[int, str | None]] = {}

    def connect(a, b, symbol):
        if a == b:
            raise RefChemError("self bond")
        if symbol == ":":
            mol.edges.append([a, b, 1, True])
        elif symbol is None:
            arom = mol.aromatic[a] and mol.aromatic[b]
            mol.edges.append([a, b, 1, arom])
        else:
            order = {"-": 1, "=": 2, "#": 3, "/": 1, "\\": 1}[symbol]
            mol.edges.append([a, b, order, False])

    for m in spans:
        bracket, halogen, upper, lower, bond_ch, paren, pct, digit, dot = m.groups()
        if bracket is not None:
            parsed = _BRACKET.match(bracket)
            if not parsed:
                raise RefChemError(f"bad bracket atom {bracket}")
            isotope, element, chiral, hspec, chargespec = parsed.groups()
            aromatic = element[0].islower()
            symbol = element.capitalize() if aromatic else element
            n_h = 0 if hspec is None else (1 if hspec == "H" else int(hspec[1:]))
            if chargespec is None:
                charge = 0
            elif chargespec[-1].isdigit():
                charge = int(chargespec[-1]) * (1 if chargespec[0] == "+" else -1)
            else:
                charge = chargespec.count("+") - chargespec.count("-")
            idx = _new_atom(mol, symbol, aromatic, charge, True, n_h, chiral,
                            int(isotope) if isotope else None)
        elif halogen is not None or upper is not None:
            idx = _new_atom(mol, halogen or upper, False)
        elif lower is not None:
            idx = _new_atom(mol, lower.upper(), True)
        elif bond_ch is not None:
            if bond is not None:
                raise RefChemError("doubled bond symbol")
            bond = bond_ch
            continue
        elif paren == "(":
            if last is None:
                raise RefChemError("branch before first atom")
            stack.append(last)
            continue
        elif paren == ")":
            if not stack:
                raise RefChemError("unbalanced parenthesis")
            last = stack.pop()
            continue
        elif pct is not None or digit is not None:
            number = int(pct[1:]) if pct else int(digit)
            if last is None:
                raise RefChemError("ring digit before first atom")
            if number in ring_open:
                other, obond = ring_open.pop(number)
                use = bond if bond is not None else obond
                if bond and obond and bond != obond:
                    raise RefChemError("ring bond order conflict")
                connect(other, last, use)
            else:
                ring_open[number] = (last, bond)
            bond = None
            continue
        elif dot is not None:
            if bond is not None:
                raise RefChemError("bond before fragment dot")
            if last is None:
                raise RefChemError("empty fragment")
            last = None
            continue
        else:  # pragma: no cover
            raise RefChemError("tokenizer error")
        # atom token fall-through
        if last is not None:
            connect(last, idx, bond)
        elif bond is not None:
            raise RefChemError("dangling bond")
        bond = None
        last = idx

    if last is None and mol.symbol:
        raise RefChemError("trailing fragment dot")
    if stack:
        raise RefChemError("unbalanced parenthesis")
    if ring_open:
        raise RefChemError("unclosed ring digits")
    if bond is not None:
        raise RefChemError("trailing bond symbol")
    pairs = set()
    for a, b, _, _ in mol.edges:
        key = (min(a, b), max(a, b))
        if key in pairs:
            raise RefChemError("duplicate bond")
        pairs.add(key)

    mol.n_heavy = len(mol.symbol)
    mol.rings = _smallest_rings(mol)
    ring_edges = set()
    for ring in mol.rings:
        for i in range(len(ring)):
            ring_edges.add(frozenset((ring[i], ring[(i + 1) % len(ring)])))
    for edge in mol.edges:
        if edge[3] and frozenset((edge[0], edge[1])) not in ring_edges:
            edge[3] = False
    in_ring = {i for ring in mol.rings for i in ring}
    for i, is_arom in enumerate(mol.aromatic):
        if is_arom and i not in in_ring:
            raise RefChemError("aromatic atom outside ring")
    _kekule_promotion(mol)
    _attach_hydrogens(mol)
    return mol


def _components(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, _, _ in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(i) for i in range(n)})


def _smallest_rings(mol: Mol) -> list[tuple[int, ...]]:
    """Greedy minimum cycle basis from per-edge shortest cycles."""
    n = len(mol.symbol)
    if n == 0:
        return []
    rank = len(mol.edges) - n + _components(n, mol.edges)
    if rank <= 0:
        return []
    neighbor = [[] for _ in range(n)]
    for k, (a, b, _, _) in enumerate(mol.edges):
        neighbor[a].append((b, k))
        neighbor[b].append((a, k))

    candidates = []
    for skip, (a, b, _, _) in enumerate(mol.edges):
        # BFS from a to b avoiding the edge itself.
        prev = {a: (None, None)}
        queue = deque([a])
        while queue and b not in prev:
            node = queue.popleft()
            for nxt, edge_id in neighbor[node]:
                if edge_id == skip or nxt in prev:
                    continue
                prev[nxt] = (node, edge_id)
                queue.append(nxt)
        if b not in prev:
            continue
        path = []
        edge_mask = 1 << skip
        node = b
        while node != a:
            parent, edge_id = prev[node]
            path.append(node)
            edge_mask |= 1 << edge_id
            node = parent
        path.append(a)
        candidates.append((len(path), tuple(reversed(path)), edge_mask))

    candidates.sort(key=lambda item: (item[0], item[1]))
    basis: dict[int, int] = {}
    chosen = []
    for _, atoms_in_order, mask in candidates:
        reduced = mask
        while reduced:
            pivot = reduced.bit_length() - 1
            if pivot not in basis:
                break
            reduced ^= basis[pivot]
        if not reduced:
            continue
        basis[reduced.bit_length() - 1] = reduced
        chosen.append(atoms_in_order)
        if len(chosen) == rank:
            break
    return chosen


def _kekule_promotion(mol: Mol):
    edge_index = {frozenset((a, b)): k for k, (a, b, _, _) in enumerate(mol.edges)}
    for ring in mol.rings:
        size = len(ring)
        if size < 4 or size % 2:
            continue
        if any(mol.aromatic[i] for i in ring):
            continue
        if any(mol.symbol[i] not in ("C", "N", "O", "S") for i in ring):
            continue
        ids = []
        for i in range(size):
            key = frozenset((ring[i], ring[(i + 1) % size]))
            if key not in edge_index:
                ids = None
                break
            ids.append(edge_index[key])
        if ids is None:
            continue
        orders = [mol.edges[k][2] for k in ids]
        if any(o not in (1, 2) for o in orders):
            continue
        if any(orders[i] == orders[(i + 1) % size] for i in range(size)):
            continue
        if (2 * orders.count(2)) % 4 != 2:
            continue
        for i in ring:
            mol.aromatic[i] = True
        for k in ids:
            mol.edges[k][3] = True


def _attach_hydrogens(mol: Mol):
    """Compute implicit hydrogen counts, then add them as explicit atoms."""
    sums = [0] * len(mol.symbol)
    for a, b, order, arom in mol.edges:
        value = 1 if arom else order
        sums[a] += value
        sums[b] += value
    for idx in range(mol.n_heavy):
        symbol = mol.symbol[idx]
        if mol.from_bracket[idx]:
            valences = VALENCE.get(symbol)
            if (valences is not None and mol.charge[idx] == 0
                    and sums[idx] + mol.bracket_h[idx] > max(valences)):
                raise RefChemError(f"valence overflow on atom {idx}")
            n_h = mol.bracket_h[idx]
        else:
            valences = VALENCE.get(symbol)
            if valences is None:
                n_h = 0
            elif sums[idx] > max(valences):
                raise RefChemError(f"valence overflow on atom {idx}")
            elif mol.aromatic[idx]:
                n_h = max(0, valences[0] - sums[idx] - 1)
            else:
                n_h = next(v for v in valences if v >= sums[idx]) - sums[idx]
        for _ in range(n_h):
            h = _new_atom(mol, "H", False)
            mol.edges.append([idx, h, 1, False])


# --- descriptors ------------------------------------------------------------

def _h_count(mol, adj, idx):
    return sum(1 for j, _, _, _ in adj[idx] if mol.symbol[j] == "H")


def _heavy(mol, adj, idx):
    return [(j, order, arom) for j, order, arom, _ in adj[idx]
            if mol.symbol[j] != "H"]


def _double_to_o(mol, adj, idx):
    return any(order == 2 and not arom and mol.symbol[j] == "O"
               for j, order, arom in _heavy(mol, adj, idx))


def _ring_pairs(mol):
    pairs = set()
    for ring in mol.rings:
        for i in range(len(ring)):
            pairs.add(frozenset((ring[i], ring[(i + 1) % len(ring)])))
    return pairs


def _tpsa(mol, adj):
    total = 0.0
    three_ring = {i for ring in mol.rings if len(ring) == 3 for i in ring}
    for idx in range(mol.n_heavy):
        symbol = mol.symbol[idx]
        if symbol not in ("N", "O", "S", "P"):
            continue
        letter = symbol.lower() if mol.aromatic[idx] else symbol
        n_h = _h_count(mol, adj, idx)
        label = letter + (f"H{n_h}" if n_h else "")
        if mol.charge[idx] > 0:
            label += "+"
        elif mol.charge[idx] < 0:
            label += "-"
        bond_chars = sorted(
            (":" if arom else {1: "-", 2: "=", 3: "#"}[order]
             for _, order, arom in _heavy(mol, adj, idx)),
            key="-=#:".index)
        key = f"[{label}]{''.join(bond_chars)}"
        if idx in three_ring and key + "r3" in TPSA_TERMS:
            key += "r3"
        total += TPSA_TERMS.get(key, 0.0)
    return total


def _crippen_carbon(mol, adj, idx):
    heavy = _heavy(mol, adj, idx)
    n_h = _h_count(mol, adj, idx)
    if mol.aromatic[idx]:
        plain = [(j, order) for j, order, arom in heavy if not arom]
        for j, order in plain:
            s = mol.symbol[j]
            if not mol.aromatic[j] and s != "C" and s not in HETERO:
                return "C13"
        for j, _ in plain:
            s = mol.symbol[j]
            if s in ("F", "Cl", "Br", "I"):
                return {"F": "C14", "Cl": "C15", "Br": "C16", "I": "C17"}[s]
        if n_h:
            return "C18"
        if sum(1 for _, _, arom in heavy if arom) == 3:
            return "C19"
        for j, order in plain:
            if order == 1:
                if mol.aromatic[j]:
                    return "C20"
                return {"C": "C21", "N": "C22", "O": "C23", "S": "C24"}.get(
                    mol.symbol[j], "CS")
            if order == 2 and mol.symbol[j] in ("C", "N", "O"):
                return "C25"
        return "CS"
    orders = [order for _, order, _ in heavy]
    if 3 in orders or orders.count(2) == 2:
        return "C7"
    if 2 in orders:
        if any(order == 2 and mol.symbol[j] != "C" and not mol.aromatic[j]
               for j, order, _ in heavy):
            return "C5"
        if any(mol.aromatic[j] for j, _, _ in heavy):
            return "C26"
        return "C6"
    if all(mol.symbol[j] == "C" and not mol.aromatic[j] for j, _, _ in heavy):
        return "C1" if len(heavy) <= 2 else "C2"
    if any(not mol.aromatic[j] and mol.symbol[j] in HETERO for j, _, _ in heavy):
        return "C3" if n_h >= 2 else "C4"
    if any(mol.aromatic[j] for j, _, _ in heavy):
        if n_h == 3:
            return "C8" if any(
                mol.aromatic[j] and mol.symbol[j] == "C" for j, _, _ in heavy
            ) else "C9"
        return {2: "C10", 1: "C11"}.get(n_h, "C12")
    if any(not mol.aromatic[j] and mol.symbol[j] != "C" for j, _, _ in heavy):
        return "C27"
    return "CS"


def _crippen_nitrogen(mol, adj, idx):
    heavy = _heavy(mol, adj, idx)
    n_h = _h_count(mol, adj, idx)
    if mol.aromatic[idx]:
        return "N11" if mol.charge[idx] == 0 else "N12"
    if mol.charge[idx] > 0:
        return "N10" if n_h else "N13"
    if mol.charge[idx] < 0:
        return "N14"
    orders = [order for _, order, _ in heavy]
    aromatic_neighbor = any(mol.aromatic[j] for j, _, _ in heavy)
    if 3 in orders:
        return "N9"
    if n_h >= 2:
        return "N3" if aromatic_neighbor else "N1"
    if n_h == 1:
        if 2 in orders:
            return "N5"
        if len(heavy) == 2:
            return "N4" if aromatic_neighbor else "N2"
        return "NS"
    if 2 in orders:
        return "N6"
    if len(heavy) == 3:
        return "N8" if aromatic_neighbor else "N7"
    return "NS"


def _crippen_oxygen(mol, adj, idx):
    heavy = _heavy(mol, adj, idx)
    n_h = _h_count(mol, adj, idx)
    if mol.aromatic[idx]:
        return "O1"
    if mol.charge[idx] < 0:
        symbols = {mol.symbol[j] for j, _, _ in heavy}
        if "N" in symbols:
            return "O5"
        if "S" in symbols:
            return "O6"
        if any(mol.symbol[j] == "C" and _double_to_o(mol, adj, j)
               for j, _, _ in heavy):
            return "O12"
        return "O7"
    if n_h:
        return "O2"
    doubles = [j for j, order, arom in heavy if order == 2 and not arom]
    if doubles:
        j = doubles[0]
        partner = mol.symbol[j]
        if partner in ("N", "O"):
            return "O5"
        if partner == "S":
            return "O6"
        if partner == "C":
            if mol.aromatic[j]:
                return "O8"
            rest = [(k, order) for k, order, _ in _heavy(mol, adj, j) if k != idx]
            if any(order == 2 for _, order in rest):
                return "O9"
            if any(mol.aromatic[k] for k, _ in rest):
                return "O10"
            if rest and all(mol.symbol[k] != "C" for k, _ in rest):
                return "O11"
            return "O9"
        return "OS"
    if len(heavy) == 2:
        return "O4" if any(mol.aromatic[j] for j, _, _ in heavy) else "O3"
    return "OS"


def _crippen_h(mol, adj, heavy_idx):
    anchor = mol.symbol[heavy_idx]
    if anchor == "C":
        return CRIPPEN["H1"]
    if anchor == "N":
        return CRIPPEN["H3"]
    if anchor == "O":
        neighbors = _heavy(mol, adj, heavy_idx)
        if any(mol.symbol[j] == "N" for j, _, _ in neighbors):
            return CRIPPEN["H3"]
        if any(mol.symbol[j] in ("O", "S") for j, _, _ in neighbors):
            return CRIPPEN["H4"]
        for j, _, _ in neighbors:
            if mol.symbol[j] == "C" and not mol.aromatic[j]:
                if any(order == 2 and not arom and mol.symbol[k] in "CNOS"
                       for k, order, arom in _heavy(mol, adj, j)):
                    return CRIPPEN["H4"]
        return CRIPPEN["H2"]
    return CRIPPEN["H2"]


def _logp(mol, adj):
    total = 0.0
    for idx in range(len(mol.symbol)):
        symbol = mol.symbol[idx]
        if symbol == "H":
            anchor = next((j for j, _, _, _ in adj[idx] if mol.symbol[j] != "H"),
                          None)
            total += _crippen_h(mol, adj, anchor) if anchor is not None else CRIPPEN["HS"]
            continue
        if symbol == "C":
            total += CRIPPEN[_crippen_carbon(mol, adj, idx)]
        elif symbol == "N":
            total += CRIPPEN[_crippen_nitrogen(mol, adj, idx)]
        elif symbol == "O":
            total += CRIPPEN[_crippen_oxygen(mol, adj, idx)]
        elif symbol == "S":
            if mol.aromatic[idx]:
                total += CRIPPEN["S3"]
            else:
                total += CRIPPEN["S1"] if mol.charge[idx] == 0 else CRIPPEN["S2"]
        elif symbol == "P":
            total += CRIPPEN["P"]
        elif symbol in ("F", "Cl", "Br", "I"):
            isolated = not _heavy(mol, adj, idx)
            if mol.charge[idx] < 0 and isolated:
                total += CRIPPEN["Hal"]
            else:
                total += CRIPPEN[symbol]
        elif symbol in METALS:
            total += CRIPPEN["Me1"]
    return total


def wire_graph(mol: Mol) -> dict:
    """Serialize to the sandbox wire format (implicit-hydrogen view)."""
    adj = mol.adj()
    atoms = []
    for i in range(mol.n_heavy):
        atoms.append({
            "symbol": mol.symbol[i],
            "atomic_number": NUMBER.get(mol.symbol[i], 0),
            "formal_charge": mol.charge[i],
            "aromatic": mol.aromatic[i],
            "implicit_h": sum(1 for j, _, _, _ in adj[i]
                              if mol.symbol[j] == "H" and j >= mol.n_heavy),
            "chirality": mol.chiral[i],
            "isotope": mol.isotope[i],
        })
    bonds = [{"a": a, "b": b, "order": order, "aromatic": arom}
             for a, b, order, arom in mol.edges
             if a < mol.n_heavy and b < mol.n_heavy]
    return {"atoms": atoms, "bonds": bonds,
            "rings": [list(r) for r in mol.rings],
            "n_fragments": _components(mol.n_heavy,
                                       [e for e in mol.edges
                                        if e[0] < mol.n_heavy and e[1] < mol.n_heavy]),
            "smiles": mol.source}


DESCRIPTOR_ORDER = (
    "molecular_weight", "heavy_atom_count", "num_h_bond_donors",
    "num_h_bond_acceptors", "tpsa", "num_rotatable_bonds", "num_rings",
    "num_aromatic_rings", "logp", "formal_charge_total",
    "num_chiral_centers", "num_carbon_atoms", "num_nitrogen_atoms",
    "num_oxygen_atoms", "num_sulfur_atoms", "num_fluorine_atoms",
    "num_chlorine_atoms", "num_bromine_atoms", "num_iodine_atoms",
    "num_hydrogen_atoms",
)


def all_descriptors(mol: Mol) -> dict[str, float]:
    adj = mol.adj()
    ring_pairs = _ring_pairs(mol)

    donors = sum(
        1 for i in range(mol.n_heavy)
        if mol.symbol[i] in ("N", "O") and _h_count(mol, adj, i) >= 1)

    acceptors = 0
    for i in range(mol.n_heavy):
        if mol.symbol[i] not in ("N", "O") or mol.charge[i] > 0:
            continue
        if mol.symbol[i] == "N":
            if mol.aromatic[i]:
                if _h_count(mol, adj, i) or len(_heavy(mol, adj, i)) == 3:
                    continue
            elif any(order == 1 and not arom and mol.symbol[j] == "C"
                     and _double_to_o(mol, adj, j)
                     for j, order, arom in _heavy(mol, adj, i)):
                continue
        acceptors += 1

    rotatable = 0
    for a, b, order, arom in mol.edges:
        if order != 1 or arom:
            continue
        if mol.symbol[a] == "H" or mol.symbol[b] == "H":
            continue
        if frozenset((a, b)) in ring_pairs:
            continue
        if len(_heavy(mol, adj, a)) < 2 or len(_heavy(mol, adj, b)) < 2:
            continue
        if {mol.symbol[a], mol.symbol[b]} == {"C", "N"}:
            carbon = a if mol.symbol[a] == "C" else b
            if _double_to_o(mol, adj, carbon):
                continue
        rotatable += 1

    aromatic_rings = 0
    edge_lookup = {frozenset((a, b)): (order, arom)
                   for a, b, order, arom in mol.edges}
    for ring in mol.rings:
        if not all(mol.aromatic[i] for i in ring):
            continue
        size = len(ring)
        if all(edge_lookup.get(frozenset((ring[i], ring[(i + 1) % size])),
                               (0, False))[1] for i in range(size)):
            aromatic_rings += 1

    def count(symbol):
        return sum(1 for s in mol.symbol if s == symbol)

    return {
        "molecular_weight": sum(MASS[s] for s in mol.symbol),
        "heavy_atom_count": len(mol.symbol) - count("H"),
        "num_h_bond_donors": donors,
        "num_h_bond_acceptors": acceptors,
        "tpsa": _tpsa(mol, adj),
        "num_rotatable_bonds": rotatable,
        "num_rings": len(mol.rings),
        "num_aromatic_rings": aromatic_rings,
        "logp": _logp(mol, adj),
        "formal_charge_total": sum(mol.charge),
        "num_chiral_centers": sum(1 for c in mol.chiral if c),
        "num_carbon_atoms": count("C"),
        "num_nitrogen_atoms": count("N"),
        "num_oxygen_atoms": count("O"),
        "num_sulfur_atoms": count("S"),
        "num_fluorine_atoms": count("F"),
        "num_chlorine_atoms": count("Cl"),
        "num_bromine_atoms": count("Br"),
        "num_iodine_atoms": count("I"),
        "num_hydrogen_atoms": count("H"),
    }
