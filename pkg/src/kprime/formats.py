"""Text and JSON file formats for monoids, groups, A-sets and N-sets.

Text formats are line based with ``#`` comments. ``serialize`` output parses
back to an equal object and re-serialises to the same bytes.

monoid ``monoid <name> <n>``, optional ``names: ...``, then ``n`` rows.
group  ``group <name> <n>``, then ``n`` rows (identity is element 0).
aset   ``aset <name> over <monoid> <m>``, then one row per monoid element.
nset   ``nset <name> <n>``, ``succ: ...`` (``n`` entries, base first,
       ``-1`` for a tail root) and, for f.g. N-sets, ``tails: ...``.
"""

import json

from .aset import FiniteASet
from .errors import KPrimeError, ParseError
from .monoid import FiniteMonoid, is_group_table
from .nset import TAIL, FgNSet, FunctionalNSet


def _lines(text):
    """Non-empty lines with comments stripped, as ``(lineno, tokens)``."""
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line.split()))
    return out


def _int(tok, no):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", no) from None


def _count(tok, no, what):
    v = _int(tok, no)
    if v < 1:
        raise ParseError(f"{what} must be positive", no)
    return v


def _rows(lines, start, nrows, ncols, header_no):
    rows = []
    for k in range(nrows):
        if start + k >= len(lines):
            raise ParseError(f"expected {nrows} table rows, found {k}", header_no)
        no, toks = lines[start + k]
        if len(toks) != ncols:
            raise ParseError(f"expected {ncols} entries, found {len(toks)}", no)
        rows.append([_int(t, no) for t in toks])
    if start + nrows != len(lines):
        raise ParseError("unexpected trailing content", lines[start + nrows][0])
    return rows


def _wrap(fn, no):
    try:
        return fn()
    except ParseError:
        raise
    except (KPrimeError, ValueError) as exc:
        raise ParseError(str(exc), no) from exc


# -- monoids --------------------------------------------------------------


def parse_monoid(text, check=True):
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input", 1)
    no, head = lines[0]
    if len(head) != 3 or head[0] != "monoid":
        raise ParseError("header must be 'monoid <name> <n>'", no)
    name, n = head[1], _count(head[2], no, "n")
    start = 1
    names = None
    if len(lines) > 1 and lines[1][1][0] == "names:":
        nno, toks = lines[1]
        names = toks[1:]
        if len(names) != n:
            raise ParseError(f"expected {n} names, found {len(names)}", nno)
        start = 2
    mul = _rows(lines, start, n, n, no)
    return _wrap(lambda: FiniteMonoid(mul, name=name, names=names, check=check), no)


def serialize_monoid(A):
    out = [f"monoid {A.name} {A.n}"]
    if A.names is not None:
        out.append("names: " + " ".join(A.names))
    out += [" ".join(str(v) for v in row) for row in A.mul]
    return "\n".join(out) + "\n"


def monoid_to_json(A):
    d = {"name": A.name, "n": A.n, "mul": [list(r) for r in A.mul]}
    if A.names is not None:
        d["names"] = list(A.names)
    return d


def monoid_from_json(d):
    try:
        mul = d["mul"]
        if len(mul) != d["n"]:
            raise ValueError(f"n={d['n']} but {len(mul)} rows")
        return FiniteMonoid(mul, name=d["name"], names=d.get("names"))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed monoid JSON: {exc}") from exc
    except (KPrimeError, ValueError) as exc:
        raise ParseError(str(exc)) from exc


# -- groups ---------------------------------------------------------------


class GroupTable:
    """A finite group given by its table; element 0 is the identity."""

    __slots__ = ("name", "table")

    def __init__(self, table, name="G"):
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.name = name
        if not is_group_table(self.table):
            raise ValueError("not a group table with identity 0")

    @property
    def order(self):
        return len(self.table)

    def __eq__(self, other):
        return isinstance(other, GroupTable) and (self.name, self.table) == (other.name, other.table)

    def __hash__(self):
        return hash((self.name, self.table))


def parse_group(text):
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input", 1)
    no, head = lines[0]
    if len(head) != 3 or head[0] != "group":
        raise ParseError("header must be 'group <name> <n>'", no)
    name, n = head[1], _count(head[2], no, "n")
    table = _rows(lines, 1, n, n, no)
    return _wrap(lambda: GroupTable(table, name), no)


def serialize_group(G):
    out = [f"group {G.name} {G.order}"] + [" ".join(str(v) for v in row) for row in G.table]
    return "\n".join(out) + "\n"


def group_to_json(G):
    return {"name": G.name, "n": G.order, "mul": [list(r) for r in G.table]}


def group_from_json(d):
    try:
        return GroupTable(d["mul"], d["name"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed group JSON: {exc}") from exc
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


# -- A-sets ---------------------------------------------------------------


def parse_aset(text, monoid, check=True):
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input", 1)
    no, head = lines[0]
    if len(head) != 5 or head[0] != "aset" or head[2] != "over":
        raise ParseError("header must be 'aset <name> over <monoid> <m>'", no)
    name, mname, m = head[1], head[3], _count(head[4], no, "m")
    if mname != monoid.name:
        raise ParseError(f"A-set is over {mname!r}, not {monoid.name!r}", no)
    act = _rows(lines, 1, monoid.n, m, no)
    return _wrap(lambda: FiniteASet(monoid, act, name=name, check=check), no)


def serialize_aset(X):
    out = [f"aset {X.name} over {X.monoid.name} {X.npoints}"]
    out += [" ".join(str(v) for v in row) for row in X.act]
    return "\n".join(out) + "\n"


def aset_to_json(X):
    return {"name": X.name, "monoid": X.monoid.name, "m": X.npoints, "act": [list(r) for r in X.act]}


def aset_from_json(d, monoid):
    try:
        if d["monoid"] != monoid.name:
            raise ValueError(f"A-set is over {d['monoid']!r}, not {monoid.name!r}")
        if any(len(r) != d["m"] for r in d["act"]):
            raise ValueError("row length differs from m")
        return FiniteASet(monoid, d["act"], name=d["name"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed A-set JSON: {exc}") from exc
    except (KPrimeError, ValueError) as exc:
        raise ParseError(str(exc)) from exc


# -- N-sets ---------------------------------------------------------------


def parse_nset(text):
    """A :class:`FunctionalNSet`, or an :class:`FgNSet` when a tails line is present."""
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input", 1)
    no, head = lines[0]
    if len(head) != 3 or head[0] != "nset":
        raise ParseError("header must be 'nset <name> <n>'", no)
    name, n = head[1], _count(head[2], no, "n")
    if len(lines) < 2 or lines[1][1][0] != "succ:":
        raise ParseError("expected a 'succ:' line", lines[1][0] if len(lines) > 1 else no)
    sno, toks = lines[1]
    succ = [_int(t, sno) for t in toks[1:]]
    if len(succ) != n:
        raise ParseError(f"expected {n} successors, found {len(succ)}", sno)
    tails = None
    if len(lines) > 2:
        tno, toks = lines[2]
        if toks[0] != "tails:":
            raise ParseError("expected a 'tails:' line", tno)
        tails = [_int(t, tno) for t in toks[1:]]
        if sorted(tails) != [v for v, s in enumerate(succ) if s == TAIL]:
            raise ParseError("tails must list exactly the vertices with successor -1", tno)
        if len(lines) > 3:
            raise ParseError("unexpected trailing content", lines[3][0])
    elif TAIL in succ:
        raise ParseError("successor -1 needs a 'tails:' line", sno)
    cls = FgNSet if tails is not None else FunctionalNSet
    return _wrap(lambda: cls(succ, name=name), sno)


def serialize_nset(X):
    out = [f"nset {X.name} {len(X.succ)}", "succ: " + " ".join(str(v) for v in X.succ)]
    if isinstance(X, FgNSet):
        out.append("tails:" + "".join(f" {v}" for v in sorted(X.tails)))
    return "\n".join(out) + "\n"


def nset_to_json(X):
    d = {"name": X.name, "n": len(X.succ), "succ": list(X.succ)}
    if isinstance(X, FgNSet):
        d["tails"] = sorted(X.tails)
    return d


def nset_from_json(d):
    try:
        if len(d["succ"]) != d["n"]:
            raise ValueError("succ length differs from n")
        if "tails" in d:
            X = FgNSet(d["succ"], name=d["name"])
            if sorted(d["tails"]) != sorted(X.tails):
                raise ValueError("tails disagree with succ")
            return X
        return FunctionalNSet(d["succ"], name=d["name"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed N-set JSON: {exc}") from exc
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


# -- dispatch -------------------------------------------------------------


def kind_of(text):
    """Header keyword of a text file (``monoid``, ``group``, ``aset`` or ``nset``)."""
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input", 1)
    kind = lines[0][1][0]
    if kind not in ("monoid", "group", "aset", "nset"):
        raise ParseError(f"unknown header {kind!r}", lines[0][0])
    return kind


def dumps(obj):
    """Canonical JSON text (sorted keys, fixed separators)."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
