"""Catalog files for lattices and codes, and neighbor-built catalogs for small n.

Lattice file::

    # name: D_12+
    12
    <12 rows of 12 integers>

Code file::

    # name: G12
    12 6
    <6 rows of 12 digits in 0..2>

Lines starting with ``#`` are comments; ``# key: value`` comments before the
header are kept as metadata.
"""

import os
import re
from dataclasses import dataclass, field

import numpy as np

from .codes import TernaryCode
from .exceptions import CatalogError, InvalidLatticeError, ParseError, ValidationError
from .isometry import are_isometric, automorphism_group, root_system
from .lattice import LatticeGram, builtin_lattices, integer_lattice
from .neighbors import p_neighbor
from .validation import check_generator_matrix, check_gram

LATTICE_SUFFIX = ".lat"
CODE_SUFFIX = ".code"
_META = re.compile(r"#\s*([A-Za-z_][\w-]*)\s*:\s*(.*?)\s*$")


@dataclass
class CatalogEntry:
    name: str
    payload: object
    provenance: str = "file"
    meta: dict = field(default_factory=dict)

    @property
    def kind(self):
        return "code" if isinstance(self.payload, TernaryCode) else "lattice"


class Catalog:
    """Ordered collection of uniquely named entries."""

    def __init__(self, entries=()):
        self._entries = {}
        for e in entries:
            self.add(e)

    def add(self, entry):
        if entry.name in self._entries:
            raise CatalogError("duplicate catalog name %r" % entry.name)
        self._entries[entry.name] = entry

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries.values())

    def __getitem__(self, name):
        return self._entries[name]

    def names(self):
        return list(self._entries)

    def lattices(self):
        return [e for e in self if e.kind == "lattice"]

    def codes(self):
        return [e for e in self if e.kind == "code"]


# -- parsing ---------------------------------------------------------------------


def _tokens(path, text):
    """(line number, column, token list) for every non-comment line, plus meta."""
    meta = {}
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            m = _META.match(stripped)
            if m and not rows:
                meta[m.group(1).lower()] = m.group(2)
            continue
        body = raw.split("#", 1)[0]
        col = len(body) - len(body.lstrip()) + 1
        rows.append((lineno, col, body.split()))
    return meta, rows


def _int(path, lineno, col, tok):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(path, lineno, col, "expected an integer, got %r" % tok)


def parse_lattice(text, path="<string>"):
    meta, rows = _tokens(path, text)
    if not rows:
        raise ParseError(path, 1, 1, "empty lattice file")
    lineno, col, head = rows[0]
    if len(head) != 1:
        raise ParseError(path, lineno, col, "lattice header must be a single rank")
    n = _int(path, lineno, col, head[0])
    body = rows[1:]
    if len(body) != n:
        ln = body[-1][0] if body else lineno
        raise ParseError(path, ln, 1, "expected %d Gram rows, found %d" % (n, len(body)))
    gram = []
    for lineno, col, toks in body:
        if len(toks) != n:
            raise ParseError(path, lineno, col, "expected %d entries, found %d" % (n, len(toks)))
        gram.append([_int(path, lineno, col, t) for t in toks])
    g = check_gram(np.array(gram, dtype=object).reshape(n, n))
    try:
        lat = LatticeGram(g, name=meta.get("name"))
    except InvalidLatticeError as exc:
        raise ValidationError("%s: %s" % (path, exc))
    return lat, meta


def parse_code(text, path="<string>"):
    meta, rows = _tokens(path, text)
    if not rows:
        raise ParseError(path, 1, 1, "empty code file")
    lineno, col, head = rows[0]
    if len(head) != 2:
        raise ParseError(path, lineno, col, "code header must be 'n k'")
    n, k = (_int(path, lineno, col, t) for t in head)
    body = rows[1:]
    if len(body) != k:
        ln = body[-1][0] if body else lineno
        raise ParseError(path, ln, 1, "expected %d generator rows, found %d" % (k, len(body)))
    gen = []
    for lineno, col, toks in body:
        word = "".join(toks)
        if len(word) != n:
            raise ParseError(path, lineno, col, "expected %d digits, found %d" % (n, len(word)))
        for off, ch in enumerate(word):
            if ch not in "012":
                raise ParseError(path, lineno, col + off,
                                 "invalid GF(3) digit %r" % ch)
        gen.append([int(ch) for ch in word])
    code = check_generator_matrix(np.array(gen, dtype=np.int64).reshape(k, n))
    return code, meta


def _kind_of(text):
    for raw in text.splitlines():
        s = raw.split("#", 1)[0].split()
        if s:
            return "code" if len(s) == 2 else "lattice"
    return "lattice"


def read_entry(path):
    with open(path) as fh:
        text = fh.read()
    kind = _kind_of(text)
    if kind == "code":
        payload, meta = parse_code(text, path)
    else:
        payload, meta = parse_lattice(text, path)
    name = meta.get("name") or os.path.splitext(os.path.basename(path))[0]
    if kind == "lattice":
        payload.name = name
    return CatalogEntry(name, payload, meta.get("provenance", "file"), meta)


def ingest(path):
    """Catalog from a file or from every .lat/.code file in a directory."""
    if os.path.isdir(path):
        files = sorted(f for f in os.listdir(path)
                       if f.endswith((LATTICE_SUFFIX, CODE_SUFFIX)))
        paths = [os.path.join(path, f) for f in files]
    else:
        paths = [path]
    cat = Catalog()
    for p in paths:
        cat.add(read_entry(p))
    return cat


# -- writing ---------------------------------------------------------------------


def format_entry(entry):
    lines = ["# name: %s" % entry.name, "# provenance: %s" % entry.provenance]
    for key in sorted(entry.meta):
        if key not in ("name", "provenance"):
            lines.append("# %s: %s" % (key, entry.meta[key]))
    p = entry.payload
    if entry.kind == "code":
        lines.append("%d %d" % (p.length, p.dimension))
        lines.extend(p.rows_as_strings())
    else:
        lines.append("%d" % p.rank)
        width = max(len(str(int(x))) for x in p.gram.flat) if p.rank else 1
        for row in p.gram:
            lines.append(" ".join(str(int(x)).rjust(width) for x in row))
    return "\n".join(lines) + "\n"


def _file_name(name):
    safe = re.sub(r"[^A-Za-z0-9_.+-]+", "_", name).strip("_") or "entry"
    return safe


def write_catalog(catalog, directory):
    """Write one file per entry; returns the written paths."""
    os.makedirs(directory, exist_ok=True)
    paths = []
    used = set()
    for idx, entry in enumerate(catalog):
        # index prefix keeps the catalog order on re-ingestion
        base = "%03d_%s" % (idx, _file_name(entry.name))
        stem, k = base, 1
        while stem in used:
            k += 1
            stem = "%s_%d" % (base, k)
        used.add(stem)
        suffix = CODE_SUFFIX if entry.kind == "code" else LATTICE_SUFFIX
        path = os.path.join(directory, stem + suffix)
        with open(path, "w") as fh:
            fh.write(format_entry(entry))
        paths.append(path)
    return paths


# -- neighbor closure ----------------------------------------------------------------


def _mod2_orbit_reps(lattice):
    """One representative per Aut(L)-orbit on the nonzero classes of L/2L."""
    n = lattice.rank
    gens = automorphism_group(lattice).generators
    size = 1 << n
    # images of the unit vectors mod 2, as bit masks
    images = []
    for a in gens:
        rows = np.asarray(a) % 2
        images.append([int("".join(str(int(b)) for b in rows[i][::-1]), 2) for i in range(n)])
    parent = list(range(size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for img in images:
        for x in range(1, size):
            y = 0
            m = x
            while m:
                low = m & -m
                y ^= img[low.bit_length() - 1]
                m ^= low
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    reps = sorted({find(x) for x in range(1, size)})
    return [[(r >> i) & 1 for i in range(n)] for r in reps]


def _lifts(lattice, v):
    """v and v + 2 e_j with (v, e_j) odd: their neighbors cover both new lattices."""
    g = lattice.gram
    gv = g @ np.asarray(v, dtype=np.int64)
    out = [list(v)]
    odd = [j for j in range(lattice.rank) if gv[j] % 2]
    if odd:
        w = list(v)
        w[odd[0]] += 2
        out.append(w)
    return out


def _name_for(lattice, known):
    for name, ref in known:
        if are_isometric(ref, lattice):
            return name
    return None


def neighbor_catalog(n, max_lattices=64):
    """All unimodular lattices of rank n reachable from Z^n by 2-neighbor steps.

    Aut(L)-orbits on L/2L are used to avoid redundant neighbors; new lattices
    are kept up to isometry.  Intended for small ranks (n <= 12).
    """
    if n > 16:
        raise ValueError("neighbor closure is only practical for small ranks")
    known = [(k, v) for k, v in builtin_lattices().items() if v.rank == n]
    start = integer_lattice(n)
    start.name = "Z%d" % n
    found = [start]
    queue = [start]
    while queue:
        lat = queue.pop(0)
        for x in _mod2_orbit_reps(lat):
            norm = int(np.asarray(x) @ lat.gram @ np.asarray(x))
            if norm % 4:
                continue
            for v in _lifts(lat, x):
                try:
                    nb = p_neighbor(lat, v, 2)
                except (ValueError, InvalidLatticeError):
                    continue
                if any(are_isometric(f, nb) for f in found):
                    continue
                nb.name = _name_for(nb, known) or "N%d_%d" % (n, len(found))
                found.append(nb)
                queue.append(nb)
                if len(found) > max_lattices:
                    raise CatalogError("neighbor closure exceeded %d lattices" % max_lattices)
    cat = Catalog()
    for lat in found:
        prov = "built-in" if lat is start else "neighbor-derived"
        meta = {"root_system": str(root_system(lat)),
                "parity": "even" if lat.is_even() else "odd"}
        cat.add(CatalogEntry(lat.name, lat, prov, meta))
    return cat
