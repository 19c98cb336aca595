"""The example corpus shipped with the package.

Files under ``corpus/`` are produced by :func:`write_corpus` from the
constructors below, so they always round-trip bit-exactly. Every expected
value carries a provenance note.
"""

from dataclasses import dataclass, field
from pathlib import Path

from . import formats
from .monoid import (
    FiniteMonoid,
    cyclic_group_table,
    f1,
    group_plus,
    prototype,
    smash,
    symmetric_group_table,
    truncated_polynomial,
    twisted_truncated_extension,
)
from .nset import TAIL, FgNSet, FunctionalNSet

CORPUS_DIR = Path(__file__).parent / "corpus"


@dataclass
class CorpusEntry:
    name: str
    file: str
    kind: str  # monoid, group or nset
    expected: dict = field(default_factory=dict)  # property -> (value, provenance)

    @property
    def path(self):
        return CORPUS_DIR / self.file

    def load(self):
        return load_file(self.path)


def _z(k):
    return group_plus(cyclic_group_table(k), name=f"Z{k}+")


def _s3():
    return group_plus(symmetric_group_table(3), name="S3+")


def _idempotent():
    return FiniteMonoid([[0, 0, 0], [0, 1, 2], [0, 2, 2]], name="idem", names=["*", "1", "e"])


def _twisted():
    # (Z/3)_+ extended by t with t a = a^-1 t and t^2 = *
    return twisted_truncated_extension(_z(3), (0, 1, 3, 2), 2, name="Z3+xt2")


LEN = "oracle: powers of the maximal ideal"
UNITS = "oracle: invertible elements of the table"
PCN = "oracle: exhaustive cancellation check"
K0 = "oracle: Smith form of the truncated presentation"

MONOIDS = {
    "f1": (lambda: f1(), dict(pc=(True, PCN), length=(1, LEN), units=(1, UNITS), k0_rank=(1, K0))),
    "ntr2": (lambda: truncated_polynomial(2, name="N/t2"), dict(pc=(True, PCN), length=(2, LEN), units=(1, UNITS), k0_rank=(1, K0))),
    "ntr3": (lambda: truncated_polynomial(3, name="N/t3"), dict(pc=(True, PCN), length=(3, LEN), units=(1, UNITS), k0_rank=(1, K0))),
    "ntr4": (lambda: truncated_polynomial(4, name="N/t4"), dict(pc=(True, PCN), length=(4, LEN), units=(1, UNITS), k0_rank=(1, K0))),
    "proto1": (lambda: prototype(1, name="proto1"), dict(pc=(False, PCN + "; 1 t = t t with t != 1"), length=(None, "no maximal ideal without pc"), units=(1, UNITS), k0_rank=(1, K0))),
    "proto2": (lambda: prototype(2, name="proto2"), dict(pc=(False, PCN), length=(None, "no maximal ideal without pc"), units=(1, UNITS), k0_rank=(1, K0))),
    "proto3": (lambda: prototype(3, name="proto3"), dict(pc=(False, PCN), length=(None, "no maximal ideal without pc"), units=(1, UNITS), k0_rank=(1, K0))),
    "z2": (lambda: _z(2), dict(pc=(True, PCN), length=(1, LEN), units=(2, UNITS), k0_rank=(1, K0))),
    "z3": (lambda: _z(3), dict(pc=(True, PCN), length=(1, LEN), units=(3, UNITS), k0_rank=(1, K0))),
    "z4": (lambda: _z(4), dict(pc=(True, PCN), length=(1, LEN), units=(4, UNITS), k0_rank=(1, K0))),
    "s3": (lambda: _s3(), dict(pc=(True, PCN), length=(1, LEN), units=(6, UNITS), k0_rank=(1, K0), k0_bound=(6, "one free orbit needs 6 points"))),
    "ntr2_ntr2": (lambda: smash(truncated_polynomial(2), truncated_polynomial(2), name="N/t2^N/t2"), dict(pc=(True, PCN), length=(3, LEN), units=(1, UNITS), k0_rank=(1, K0))),
    "ntr3_z2": (lambda: smash(truncated_polynomial(3), _z(2), name="N/t3^Z2+"), dict(pc=(True, PCN), length=(3, LEN), units=(2, UNITS), k0_rank=(1, K0))),
    "z2_ntr2": (lambda: smash(_z(2), truncated_polynomial(2), name="Z2+^N/t2"), dict(pc=(True, PCN), length=(2, LEN), units=(2, UNITS), k0_rank=(1, K0))),
    "twisted": (lambda: _twisted(), dict(pc=(True, PCN), length=(2, LEN), units=(3, UNITS), k0_rank=(1, K0))),
    "idempotent": (lambda: _idempotent(), dict(pc=(False, PCN + "; e e = 1 e with e != 1"), length=(None, "no maximal ideal without pc"), units=(1, UNITS))),
}

BURN = "oracle: conjugacy classes of subgroups"
GROUPS = {
    "c1": (lambda: formats.GroupTable(cyclic_group_table(1), "C1"), dict(burnside_rank=(1, BURN))),
    "z2": (lambda: formats.GroupTable(cyclic_group_table(2), "Z2"), dict(burnside_rank=(2, BURN), marks=([[2, 0], [1, 1]], "oracle: fixed-point counts"))),
    "z3": (lambda: formats.GroupTable(cyclic_group_table(3), "Z3"), dict(burnside_rank=(2, BURN))),
    "z4": (lambda: formats.GroupTable(cyclic_group_table(4), "Z4"), dict(burnside_rank=(3, BURN))),
    "s3": (lambda: formats.GroupTable(symmetric_group_table(3), "S3"), dict(burnside_rank=(4, BURN))),
}

CLASS = "oracle: cycle detection"
NSETS = {
    "path3": (lambda: FunctionalNSet([0, 0, 1, 2], name="path3"), dict(rooted_tree=(True, CLASS))),
    "star3": (lambda: FunctionalNSet([0, 0, 0, 0], name="star3"), dict(rooted_tree=(True, CLASS))),
    "tree5": (lambda: FunctionalNSet([0, 0, 1, 1, 2, 0], name="tree5"), dict(rooted_tree=(True, CLASS))),
    "loop3": (lambda: FunctionalNSet([0, 2, 3, 1], name="loop3"), dict(rooted_tree=(False, CLASS), loops=([3], CLASS))),
    "rho": (lambda: FunctionalNSet([0, 2, 3, 4, 2], name="rho"), dict(rooted_tree=(False, CLASS), loops=([3], CLASS))),
    "two_loops": (lambda: FunctionalNSet([0, 1, 3, 2, 0], name="two_loops"), dict(rooted_tree=(False, CLASS), loops=([1, 2], CLASS))),
    "nat": (lambda: FgNSet([0, TAIL], name="nat"), dict(tails=(1, "definition of the free N-set"))),
    "nat_into_loop": (lambda: FgNSet([0, TAIL, 3, 2], name="nat_into_loop"), dict(tails=(1, "constructed"), loops=([2], CLASS))),
}


def _entries():
    out = []
    for stem, (_, exp) in MONOIDS.items():
        out.append(CorpusEntry(stem, f"{stem}.monoid", "monoid", dict(exp)))
    for stem, (_, exp) in GROUPS.items():
        out.append(CorpusEntry(f"{stem}-group", f"{stem}.group", "group", dict(exp)))
    for stem, (_, exp) in NSETS.items():
        out.append(CorpusEntry(stem, f"{stem}.nset", "nset", dict(exp)))
    return out


CORPUS = _entries()


def entry(name):
    for e in CORPUS:
        if e.name == name:
            return e
    raise KeyError(name)


def build(entry_):
    """Construct a corpus object from its recipe (not from the file)."""
    table = {"monoid": MONOIDS, "group": GROUPS, "nset": NSETS}[entry_.kind]
    stem = entry_.file.rsplit(".", 1)[0]
    return table[stem][0]()


def serialize(obj):
    if isinstance(obj, formats.GroupTable):
        return formats.serialize_group(obj)
    if isinstance(obj, (FunctionalNSet, FgNSet)):
        return formats.serialize_nset(obj)
    return formats.serialize_monoid(obj)


def write_corpus(directory=CORPUS_DIR):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for e in CORPUS:
        (directory / e.file).write_text(serialize(build(e)))


def load_file(path):
    """Parse a monoid, group or N-set text file by its header."""
    text = Path(path).read_text()
    kind = formats.kind_of(text)
    if kind == "monoid":
        return formats.parse_monoid(text)
    if kind == "group":
        return formats.parse_group(text)
    if kind == "nset":
        return formats.parse_nset(text)
    raise formats.ParseError("A-set files need their monoid; use parse_aset")


def monoids():
    """Corpus monoids loaded from disk, keyed by entry name."""
    return {e.name: e.load() for e in CORPUS if e.kind == "monoid"}


def groups():
    return {e.name: e.load() for e in CORPUS if e.kind == "group"}
