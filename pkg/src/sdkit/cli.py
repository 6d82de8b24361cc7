"""The ``sdkit`` command line."""

import json
import os
import sys

import click
import numpy as np

from . import __version__
from .catalog import (Catalog, CatalogEntry, format_entry, ingest, neighbor_catalog,
                      read_entry, write_catalog)
from .classify import classify_lattice, classify_length
from .codes import (MonomialTransform, are_equivalent, automorphism_group, decompose,
                    mass_check, weight_distribution)
from .construction_a import (a3, even_neighbors, full_weight_words, is_admissible,
                             lemma1_check, straight_twisted)
from .constructors import builtin_codes
from .exceptions import SdkitError
from .frames import build_gamma, enumerate_frames
from .isometry import automorphism_group as lattice_aut
from .isometry import decompose_lattice, is_isomorphic, root_system
from .lattice import builtin_lattices, short_vectors, vectors_of_norm
from .neighbors import p_neighbor
from .report import render_report, table_from_dict
from .reproduce import SCRIPTS, reproduce
from .shadow import shadow


def _load(path, kind):
    entry = read_entry(path)
    if entry.kind != kind:
        raise click.BadParameter("%s is a %s file, expected a %s" % (path, entry.kind, kind))
    return entry.payload


def _emit_entry(entry, out):
    text = format_entry(entry)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


class _Group(click.Group):
    """Turn library errors into clean one-line failures."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except (SdkitError, ValueError, KeyError, OSError) as exc:
            if isinstance(exc, click.ClickException):
                raise
            raise click.ClickException(str(exc))


@click.group(cls=_Group)
@click.version_option(__version__, prog_name="sdkit")
def main():
    """Ternary self-dual codes via 3-frames of unimodular lattices."""


# -- code ---------------------------------------------------------------------------


@main.group(cls=_Group)
def code():
    """Operations on ternary codes (code files)."""


@code.command("wenum")
@click.argument("path")
def code_wenum(path):
    """Weight distribution."""
    wd = weight_distribution(_load(path, "code"))
    for w, a in wd.nonzero().items():
        click.echo("%d %d" % (w, a))


@code.command("aut")
@click.argument("path")
def code_aut(path):
    """Order and generators of the monomial automorphism group."""
    g = automorphism_group(_load(path, "code"))
    click.echo("order %d" % g.order)
    for t in g.generators:
        click.echo("perm %s sign %s" % (" ".join(map(str, t.perm)),
                                        "".join("+" if s > 0 else "-" for s in t.sign)))


@code.command("equiv")
@click.argument("path1")
@click.argument("path2")
def code_equiv(path1, path2):
    """Monomial equivalence test with witness."""
    p = are_equivalent(_load(path1, "code"), _load(path2, "code"))
    if p is None:
        click.echo("inequivalent")
        sys.exit(1)
    click.echo("equivalent")
    click.echo("perm %s sign %s" % (" ".join(map(str, p.perm)),
                                    "".join("+" if s > 0 else "-" for s in p.sign)))


@code.command("decompose")
@click.argument("path")
def code_decompose(path):
    """Direct-sum components with their supports."""
    for support, comp in decompose(_load(path, "code")):
        click.echo("support %s : [%d,%d]" % (",".join(map(str, support)),
                                             comp.length, comp.dimension))


@code.command("mass")
@click.option("-n", "length", type=int, default=None, help="code length (default: from the files)")
@click.argument("paths", nargs=-1)
def code_mass(length, paths):
    """Mass formula check over a list of inequivalent code files of one length."""
    codes = [_load(p, "code") for p in paths]
    n = length if length is not None else (codes[0].length if codes else None)
    if n is None:
        raise click.UsageError("give -n when no code files are listed")
    if any(c.length != n for c in codes):
        raise click.BadParameter("all codes must have length %d" % n)
    rep = mass_check(codes, n)
    click.echo("total %s expected %s %s" % (rep.total, rep.expected,
                                            "pass" if rep.passed else "deficit %s" % rep.deficit))
    sys.exit(0 if rep.passed else 1)


@code.command("admissible")
@click.argument("path")
def code_admissible(path):
    """Whether all full-weight codewords have coordinate product +1."""
    c = _load(path, "code")
    click.echo("full-weight words %d admissible %s" % (len(full_weight_words(c)),
                                                       is_admissible(c)))


@code.command("builtin")
@click.argument("name", type=click.Choice(sorted(builtin_codes())))
@click.option("--out", default=None, help="write to this file instead of stdout")
def code_builtin(name, out):
    """Write a built-in code."""
    _emit_entry(CatalogEntry(name, builtin_codes()[name], "built-in"), out)


# -- lattice --------------------------------------------------------------------------


@main.group(cls=_Group)
def lattice():
    """Operations on lattices (Gram files)."""


@lattice.command("shortvec")
@click.argument("path")
@click.option("--max-norm", type=int, required=True)
def lattice_shortvec(path, max_norm):
    """Short vectors, one per +- pair: norm then coordinates."""
    for v, q in short_vectors(_load(path, "lattice"), max_norm):
        click.echo("%d  %s" % (q, " ".join(map(str, v))))


@lattice.command("shadow")
@click.argument("path")
def lattice_shadow(path):
    """Minimal shadow norm and the number of minimal shadow vectors."""
    sd = shadow(_load(path, "lattice"))
    m = sd.min_norm()
    click.echo("min shadow norm %s count %d" % (m, len(sd.shadow_vectors(m))))


@lattice.command("iso")
@click.argument("path1")
@click.argument("path2")
def lattice_iso(path1, path2):
    """Isometry test; prints the witness matrix U (U G2 U^T = G1)."""
    l1, l2 = _load(path1, "lattice"), _load(path2, "lattice")
    w = is_isomorphic(l1, l2)
    if w is None:
        click.echo("not isomorphic")
        sys.exit(1)
    click.echo("isomorphic (%s)" % w.method)
    if w.matrix is not None:
        for row in w.matrix:
            click.echo(" ".join(str(int(x)) for x in row))


@lattice.command("aut")
@click.argument("path")
def lattice_aut_cmd(path):
    """Order of the automorphism group."""
    g = lattice_aut(_load(path, "lattice"))
    click.echo("order %d generators %d" % (g.order, len(g.generators)))


@lattice.command("rootsys")
@click.argument("path")
def lattice_rootsys(path):
    """ADE type of the norm-2 vectors."""
    click.echo(str(root_system(_load(path, "lattice"))))


@lattice.command("decompose")
@click.argument("path")
def lattice_decompose(path):
    """Ranks of the orthogonal components."""
    comps = decompose_lattice(_load(path, "lattice"))
    click.echo(" ".join(str(c.rank) for c in comps))


@lattice.command("neighbor")
@click.argument("path")
@click.option("--vector", required=True, help="coordinates, space or comma separated")
@click.option("-p", "prime", type=int, default=2, show_default=True)
@click.option("--out", default=None)
def lattice_neighbor(path, vector, prime, out):
    """Kneser p-neighbor along a lattice vector."""
    lat = _load(path, "lattice")
    v = [int(x) for x in vector.replace(",", " ").split()]
    nb = p_neighbor(lat, v, prime, name="%s/%d-neighbor" % (lat.name, prime))
    _emit_entry(CatalogEntry(nb.name, nb, "neighbor-derived"), out)


@lattice.command("builtin")
@click.argument("name", type=click.Choice(sorted(builtin_lattices())))
@click.option("--out", default=None)
def lattice_builtin(name, out):
    """Write a built-in lattice."""
    lat = builtin_lattices()[name]
    _emit_entry(CatalogEntry(name, lat, "built-in"), out)


# -- constructions ----------------------------------------------------------------


@main.command("cons-a")
@click.argument("path")
@click.option("--lemma1", is_flag=True, help="check the norm-1/norm-2 counts")
@click.option("--out", default=None)
def cons_a(path, lemma1, out):
    """Construction A: Gram matrix of A3(C)."""
    c = _load(path, "code")
    if lemma1:
        r = lemma1_check(c)
        click.echo("alpha1 %d beta3 %d alpha2 %d beta6 %d %s" % (
            r["alpha1"], r["beta3"], r["alpha2"], r["beta6"],
            "pass" if r["passed"] else "FAIL"))
        sys.exit(0 if r["passed"] else 1)
    _emit_entry(CatalogEntry("A3", a3(c), "construction-a"), out)


@main.command("neighbor")
@click.argument("path")
@click.option("--straight", "mode", flag_value="straight", help="L_S(C) from a code file")
@click.option("--twisted", "mode", flag_value="twisted", help="L_T(C) from a code file")
@click.option("--even", "mode", flag_value="even",
              help="both even neighbors of an odd lattice (or of A3(C))")
@click.option("--out", default=None)
def neighbor_cmd(path, mode, out):
    """Even unimodular neighbors."""
    entry = read_entry(path)
    if mode in ("straight", "twisted"):
        if entry.kind != "code":
            raise click.BadParameter("--%s needs a code file" % mode)
        pair = straight_twisted(entry.payload)
        lat = pair.first if mode == "straight" else pair.second
        _emit_entry(CatalogEntry("L_S" if mode == "straight" else "L_T", lat,
                                 "neighbor-derived"), out)
        return
    if mode != "even":
        raise click.UsageError("choose one of --straight, --twisted, --even")
    lat = a3(entry.payload) if entry.kind == "code" else entry.payload
    pair = even_neighbors(lat)
    for label, nb in zip(pair.labels, pair):
        click.echo("%s: %s roots %d" % (label, root_system(nb),
                                         2 * len(vectors_of_norm(nb, 2))))


# -- frames and classification ------------------------------------------------------


@main.group(cls=_Group)
def frames():
    """The orthogonality graph of norm-3 vectors and its n-cliques."""


@frames.command("graph")
@click.argument("path")
@click.option("--no-shadow-filter", is_flag=True)
def frames_graph(path, no_shadow_filter):
    """Vertex/edge counts of the frame graph."""
    g = build_gamma(_load(path, "lattice"), shadow_filter=not no_shadow_filter)
    click.echo("vertices %d edges %d filtered %d" % (g.n_vertices, g.n_edges, g.removed))


@frames.command("enumerate")
@click.argument("path")
@click.option("--no-shadow-filter", is_flag=True)
@click.option("--threads", type=int, default=None, help="default: $SDKIT_THREADS or 1")
def frames_enumerate(path, no_shadow_filter, threads):
    """One frame per Aut(L)-orbit, with the projected code."""
    lat = _load(path, "lattice")
    g = build_gamma(lat, shadow_filter=not no_shadow_filter)
    res = enumerate_frames(g, n_jobs=threads)
    click.echo("orbits %d (nodes %d, leaves %d)" % (len(res.frames), res.stats.nodes,
                                                   res.stats.leaves))
    for k, (f, c) in enumerate(zip(res.frames, res.codes), start=1):
        click.echo("frame %d" % k)
        for v in f.vectors:
            click.echo("  " + " ".join(map(str, v)))
        click.echo("code %d" % k)
        for row in c.rows_as_strings():
            click.echo("  " + row)


@main.command("classify")
@click.option("--lattice", "lattice_path", default=None)
@click.option("--length", type=int, default=None)
@click.option("--catalog", "catalog_dir", default=None,
              help="directory of lattice files (default for n <= 12: neighbor closure)")
@click.option("--json", "json_out", default=None, help="write the JSON report here")
@click.option("--threads", type=int, default=None)
@click.option("--no-shadow-filter", is_flag=True)
def classify_cmd(lattice_path, length, catalog_dir, json_out, threads, no_shadow_filter):
    """Classify codes from one lattice or from a catalog of one length."""
    if (lattice_path is None) == (length is None):
        raise click.UsageError("give exactly one of --lattice or --length")
    if lattice_path:
        lat = _load(lattice_path, "lattice")
        rep = classify_lattice(lat, shadow_filter=not no_shadow_filter, n_jobs=threads,
                               name=lat.name)
    else:
        if catalog_dir:
            cat = [e for e in ingest(catalog_dir) if e.kind == "lattice"]
        elif length <= 12:
            cat = list(neighbor_catalog(length))
        else:
            raise click.UsageError("--catalog is required for lengths above 12")
        rep = classify_length(length, cat, shadow_filter=not no_shadow_filter,
                              n_jobs=threads)
    table, doc = render_report(rep)
    click.echo(table, nl=False)
    if length is not None:
        m = rep.mass
        click.echo("mass %s / %s %s" % (m.total, m.expected,
                                        "pass" if m.passed else "deficit %s" % m.deficit))
    if json_out:
        with open(json_out, "w") as fh:
            fh.write(doc)


# -- catalog plumbing ----------------------------------------------------------------------


@main.command("ingest")
@click.argument("path")
@click.option("--out", default=None, help="write the normalized catalog to this directory")
def ingest_cmd(path, out):
    """Validate catalog files (a file or a directory)."""
    cat = ingest(path)
    for e in cat:
        size = e.payload.rank if e.kind == "lattice" else e.payload.length
        click.echo("%s\t%s\t%d\t%s" % (e.name, e.kind, size, e.provenance))
    if out:
        write_catalog(cat, out)


@main.command("catalog")
@click.argument("n", type=int)
@click.option("--out", required=True)
def catalog_cmd(n, out):
    """Build the 2-neighbor closure of Z^n and write it as a catalog."""
    cat = neighbor_catalog(n)
    for p in write_catalog(cat, out):
        click.echo(p)


@main.command("corpus")
@click.option("--seed", type=int, required=True)
@click.option("--count", type=int, default=3, show_default=True)
@click.option("--out", required=True)
def corpus_cmd(seed, count, out):
    """Random monomial images of the built-in codes (test corpus generation)."""
    rng = np.random.default_rng(seed)
    entries = []
    for name, c in sorted(builtin_codes().items()):
        for k in range(count):
            t = MonomialTransform.random(c.length, rng)
            entries.append(CatalogEntry("%s_%d" % (name, k), t.apply_code(c), "corpus",
                                        {"seed": str(seed)}))
    for p in write_catalog(Catalog(entries), out):
        click.echo(p)


@main.command("report")
@click.argument("path")
def report_cmd(path):
    """Render a persisted JSON report as a table."""
    with open(path) as fh:
        doc = json.load(fh)
    click.echo(table_from_dict(doc), nl=False)


@main.command("reproduce")
@click.argument("name", required=False)
@click.option("--list", "list_only", is_flag=True)
@click.option("--out", default="runs", show_default=True)
def reproduce_cmd(name, list_only, out):
    """Run a reproduction script and write its manifest."""
    if list_only or not name:
        for k in SCRIPTS:
            click.echo(k)
        return
    passed, manifest, _, ck = reproduce(name, out_dir=out)
    for c in ck.items:
        click.echo("%s %s: expected %s, got %s" % ("ok  " if c["ok"] else "FAIL",
                                                  c["check"], c["expected"], c["actual"]))
    click.echo("%s %s (manifest %s)" % (name, "pass" if passed else "FAIL",
                                        os.path.join(out, name + ".manifest.json")))
    sys.exit(0 if passed else 1)


if __name__ == "__main__":
    main()
