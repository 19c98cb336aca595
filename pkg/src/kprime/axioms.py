"""Seeded randomized checks of the exact-category axioms on concrete A-sets.

Each axiom is a function ``(rng, sampler) -> None | dict`` that builds one
random instance, verifies it by explicit construction and returns a
serialisable counterexample on failure. Reports depend only on the monoid,
the seed and the sample count.
"""

import random
from dataclasses import dataclass, field

from .aset import (
    ASetMap,
    FiniteASet,
    all_subsets,
    closure,
    induced_map,
    is_admissible,
    is_admissible_epi,
    is_admissible_monic,
    map_defect,
    noether_witness,
    point_aset,
    pullback_maps,
    pushout_maps,
    quotient_aset,
    relabel,
    subobject,
    wedge,
)
from .canon import canonical_key
from .enumerate import enumerate_asets

DEFAULT_SEED = 20240917
POOL_BOUND = 3


@dataclass
class AxiomReport:
    axiom: str
    tested: int
    failures: list = field(default_factory=list)
    seed: int = DEFAULT_SEED

    @property
    def ok(self):
        return not self.failures

    def to_dict(self):
        return {"axiom": self.axiom, "tested": self.tested, "failures": self.failures, "seed": self.seed}

    def merge(self, other):
        if other.axiom != self.axiom:
            raise ValueError("cannot merge reports of different axioms")
        return AxiomReport(self.axiom, self.tested + other.tested, self.failures + other.failures, self.seed)


class Sampler:
    """Random A-sets and A-subsets over one monoid.

    Objects are drawn from the isomorphism classes up to ``POOL_BOUND``
    points, wedges of two of them, or the point, then randomly relabelled.
    """

    def __init__(self, A, bound=POOL_BOUND):
        self.A = A
        self.pool = enumerate_asets(A, bound, "all")
        self._subsets = {}

    def aset(self, rng):
        r = rng.random()
        if r < 0.08:
            X = point_aset(self.A)
        elif r < 0.7:
            X = rng.choice(self.pool)
        else:
            X = wedge(rng.choice(self.pool), rng.choice(self.pool))[0]
        return self.shuffle(rng, X)

    def shuffle(self, rng, X):
        perm = list(range(1, X.npoints))
        rng.shuffle(perm)
        return relabel(X, [0] + perm, name="X")[0]

    def subset(self, rng, X, inside=None):
        """Closure of 0-2 random seeds (drawn from ``inside`` when given)."""
        pts = sorted(inside) if inside is not None else list(X.points)
        k = rng.choice((0, 1, 1, 2))
        seeds = [rng.choice(pts) for _ in range(k)]
        return closure(X, seeds)

    def subset_containing(self, rng, X, V):
        key = X.act
        subs = self._subsets.get(key)
        if subs is None:
            subs = all_subsets(X)
            if len(self._subsets) < 4096:
                self._subsets[key] = subs
        return rng.choice([S for S in subs if V <= S])


def _ser(X):
    return [list(row) for row in X.act]


def _iso(X, Y):
    return X.npoints == Y.npoints and canonical_key(X) == canonical_key(Y)


def _fail(kind, **data):
    out = {"check": kind}
    for k, v in data.items():
        if isinstance(v, FiniteASet):
            out[k] = _ser(v)
        elif isinstance(v, frozenset):
            out[k] = sorted(v)
        else:
            out[k] = v
    return out


def _admissible_pair(X, Y):
    S, i = subobject(X, Y)
    Q, j = quotient_aset(X, Y)
    return S, i, Q, j


# -- quasi-exact ----------------------------------------------------------


def qe_iso_invariance(rng, smp):
    X = smp.aset(rng)
    Y = smp.subset(rng, X)
    S, i, Q, j = _admissible_pair(X, Y)
    # transport along random isomorphisms of all three objects
    X2, sx = relabel(X, [0] + rng.sample(range(1, X.npoints), X.size))
    S2, ss = relabel(S, [0] + rng.sample(range(1, S.npoints), S.size))
    Q2, sq = relabel(Q, [0] + rng.sample(range(1, Q.npoints), Q.size))
    i2 = sx.compose(i).compose(ss.inverse())
    j2 = sq.compose(j).compose(sx.inverse())
    i2 = ASetMap(S2, X2, i2.map, check=False)
    j2 = ASetMap(X2, Q2, j2.map, check=False)
    if not is_admissible(i2, j2):
        return _fail("iso-invariance", X=X, Y=Y)
    return None


def qe_kernel_cokernel(rng, smp):
    X = smp.aset(rng)
    Y = smp.subset(rng, X)
    S, i, Q, j = _admissible_pair(X, Y)
    if j.kernel() != i.image() or not is_admissible(i, j):
        return _fail("kernel", X=X, Y=Y)
    # cokernel universal property against X ->> X/Y' with Y <= Y'
    Y2 = smp.subset_containing(rng, X, Y)
    Q2, f = quotient_aset(X, Y2)
    if any(f.map[v] for v in i.map):
        return _fail("test map", X=X, Y=Y)
    g = induced_map(j, ASetMap(Q2, Q2, range(Q2.npoints), check=False), f)
    if g is None or map_defect(Q, Q2, g.map) is not None:
        return _fail("cokernel factorisation", X=X, Y=Y, Y2=Y2)
    # kernel universal property: Z <= Y factors through i
    Z = smp.subset(rng, X, inside=Y)
    if not Z <= Y or not all(j.map[z] == 0 for z in Z):
        return _fail("kernel factorisation", X=X, Y=Y, Z=Z)
    return None


def qe_split(rng, smp):
    X = smp.aset(rng)
    W = smp.aset(rng)
    S, inj1, inj2 = wedge(X, W)
    proj = [0] * S.npoints
    for w, s in enumerate(inj2.map):
        proj[s] = w
    p = ASetMap(S, W, proj, check=False)
    if map_defect(S, W, p.map) is not None or not is_admissible(inj1, p):
        return _fail("split", X=X, W=W)
    return None


def qe_composition_pullback(rng, smp):
    X = smp.aset(rng)
    Y = smp.subset(rng, X)
    Z = smp.subset_containing(rng, X, Y)
    # epis X ->> X/Y ->> X/Z compose
    Q1, p1 = quotient_aset(X, Y)
    QZ, _ = quotient_aset(X, Z)
    Q2, p2 = quotient_aset(Q1, frozenset(p1.map[z] for z in Z))
    comp = p2.compose(p1)
    if not is_admissible_epi(comp) or comp.kernel() != Z or not _iso(Q2, QZ):
        return _fail("epi composition", X=X, Y=Y, Z=Z)
    # monics Y >-> Z >-> X compose
    SZ, iz = subobject(X, Z)
    pos = {x: k for k, x in enumerate(iz.map)}
    SY, iy = subobject(SZ, [pos[y] for y in Y])
    mono = iz.compose(iy)
    if not is_admissible_monic(mono) or mono.image() != Y:
        return _fail("monic composition", X=X, Y=Y, Z=Z)
    # pullback of the epi X ->> X/Y along a monic W >-> X/Y
    W = smp.subset(rng, Q1)
    SW, iw = subobject(Q1, W)
    P, pr_x, pr_w = pullback_maps(p1, iw)
    if not is_admissible_epi(pr_w) or not is_admissible_monic(pr_x):
        return _fail("epi pullback", X=X, Y=Y, W=W)
    # pullback of the monic Y >-> X along the epi X ->> X/V
    V = smp.subset(rng, X)
    QV, pv = quotient_aset(X, V)
    QYV = frozenset(pv.map[y] for y in Y)
    SYV, iyv = subobject(QV, QYV)
    P, pr1, pr2 = pullback_maps(pv, iyv)
    if not is_admissible_monic(pr1):
        return _fail("monic pullback", X=X, Y=Y, V=V)
    return None


# -- CGW ------------------------------------------------------------------


def cgw_zero(rng, smp):
    X = smp.aset(rng)
    pt = point_aset(smp.A)
    into = ASetMap(pt, X, [0], check=False)
    out = ASetMap(X, pt, [0] * X.npoints, check=False)
    if map_defect(pt, X, into.map) or map_defect(X, pt, out.map):
        return _fail("zero maps", X=X)
    if not is_admissible(into, ASetMap(X, X, range(X.npoints), check=False)):
        return _fail("zero monic", X=X)
    if not is_admissible(ASetMap(X, X, range(X.npoints), check=False), out):
        return _fail("zero epi", X=X)
    return None


def cgw_iso(rng, smp):
    X = smp.aset(rng)
    Y, s = relabel(X, [0] + rng.sample(range(1, X.npoints), X.size))
    t = s.inverse()
    for f in (s, t):
        if map_defect(f.source, f.target, f.map) is not None:
            return _fail("iso equivariance", X=X)
        if not (is_admissible_monic(f) and is_admissible_epi(f)):
            return _fail("iso admissible", X=X)
    return None


def cgw_additivity(rng, smp):
    X = smp.aset(rng)
    W = smp.aset(rng)
    S, inj1, inj2 = wedge(X, W)
    Q1, p1 = quotient_aset(S, inj1.image())
    Q2, p2 = quotient_aset(S, inj2.image())
    if not (_iso(Q1, W) and _iso(Q2, X)):
        return _fail("split cokernels", X=X, W=W)
    return None


def cgw_kc(rng, smp):
    X = smp.aset(rng)
    Y = smp.subset(rng, X)
    S, i, Q, j = _admissible_pair(X, Y)
    # k(c(i)) = i
    if j.kernel() != i.image():
        return _fail("k(c(i))", X=X, Y=Y)
    # c(k(j)) = j up to isomorphism of the target
    K = j.kernel()
    Q2, j2 = quotient_aset(X, K)
    if not _iso(Q2, Q) or [bool(v) for v in j2.map] != [bool(v) for v in j.map]:
        return _fail("c(k(j))", X=X, Y=Y)
    return None


def cgw_mono_epi(rng, smp):
    X = smp.aset(rng)
    Y = smp.subset(rng, X)
    S, i, Q, j = _admissible_pair(X, Y)
    if not i.is_injective() or not j.is_surjective():
        return _fail("monic/epi", X=X, Y=Y)
    if not is_admissible(i, j):
        return _fail("kernel/cokernel", X=X, Y=Y)
    return None


def distinguished_square(rng, smp):
    """``W <= Y' <= X'`` gives the square ``Y'/W >-> X'/W`` over ``Y' >-> X'``."""
    X = smp.aset(rng)
    Yp = smp.subset(rng, X)
    W = smp.subset(rng, X, inside=Yp)
    Xq, px = quotient_aset(X, W)
    Yq = frozenset(px.map[y] for y in Yp)
    # map of cokernels X'/Y' -> X/Y
    C1, c1 = quotient_aset(X, Yp)
    C2, c2 = quotient_aset(Xq, Yq)
    f = induced_map(c1, c2, px)
    if f is None or not f.is_iso() or map_defect(C1, C2, f.map) is not None:
        return _fail("cokernel iso", X=X, Y=Yp, W=W)
    # a distinguished square is a pullback: Y' = Y x_X X'
    SY, iy = subobject(Xq, Yq)
    P, pr1, pr2 = pullback_maps(px, iy)
    if P.npoints != len(Yp) or pr1.image() != Yp:
        return _fail("pullback", X=X, Y=Yp, W=W)
    return None


# -- ACGW -----------------------------------------------------------------


def acgw_p(rng, smp):
    X = smp.aset(rng)
    Y = smp.subset(rng, X)
    Z = smp.subset(rng, X)
    SY, iy = subobject(X, Y)
    SZ, iz = subobject(X, Z)
    P, p1, p2 = pullback_maps(iy, iz)
    if not (p1.is_injective() and p2.is_injective()):
        return _fail("pullback monic", X=X, Y=Y, Z=Z)
    if frozenset(iy.map[v] for v in p1.map) != Y & Z:
        return _fail("pullback is intersection", X=X, Y=Y, Z=Z)
    QY, qy = quotient_aset(X, Y)
    QZ, qz = quotient_aset(X, Z)
    PO, e1, e2 = pushout_maps(qy, qz)
    if not (is_admissible_epi(e1) and is_admissible_epi(e2)):
        return _fail("pushout epi", X=X, Y=Y, Z=Z)
    if not _iso(PO, quotient_aset(X, Y | Z)[0]):
        return _fail("pushout is quotient by union", X=X, Y=Y, Z=Z)
    return None


def acgw_u(rng, smp):
    X = smp.aset(rng)
    Y = smp.subset(rng, X)
    Z = smp.subset(rng, X)
    I, U = Y & Z, Y | Z
    SY, iY = subobject(X, Y)
    SZ, iZ = subobject(X, Z)
    posY = {x: k for k, x in enumerate(iY.map)}
    posZ = {x: k for k, x in enumerate(iZ.map)}
    SI_Y, iIY = subobject(SY, [posY[x] for x in I])
    SI_Z, iIZ = subobject(SZ, [posZ[x] for x in I])
    QY, qY = quotient_aset(X, Y)  # X ->> X/Y
    QZ, qZ = quotient_aset(X, Z)  # X ->> X/Z
    box, qbox = quotient_aset(SY, [posY[x] for x in I])  # Y ->> Y/(Y n Z)
    D, qD = quotient_aset(SZ, [posZ[x] for x in I])  # Z ->> Z/(Y n Z)
    corner, e1, e2 = pushout_maps(qZ, qY)  # X/Z ->> corner <<- X/Y
    # monic box >-> X/Z induced by Y >-> X
    m_top = induced_map(qbox, qZ, iY)
    m_right = induced_map(qD, qY, iZ)
    if m_top is None or m_right is None:
        return _fail("induced monics", X=X, Y=Y, Z=Z)
    rows = [
        (iIY, qbox, "left column"),
        (iY, qY, "middle row"),
        (iIZ, qD, "bottom row"),
        (iZ, qZ, "middle column"),
        (m_top, e1, "top row"),
        (m_right, e2, "right column"),
    ]
    for i, j, where in rows:
        if not is_admissible(i, j):
            return _fail(where, X=X, Y=Y, Z=Z)
    # commutativity of the four squares
    if any(e1.map[qZ.map[x]] != e2.map[qY.map[x]] for x in X.points):
        return _fail("corner square", X=X, Y=Y, Z=Z)
    if any(qZ.map[iY.map[y]] != m_top.map[qbox.map[y]] for y in SY.points):
        return _fail("top-left square", X=X, Y=Y, Z=Z)
    if any(qY.map[iZ.map[z]] != m_right.map[qD.map[z]] for z in SZ.points):
        return _fail("bottom-right square", X=X, Y=Y, Z=Z)
    if any(iY.map[iIY.map[v]] != iZ.map[iIZ.map[v]] for v in SI_Y.points):
        return _fail("bottom-left square", X=X, Y=Y, Z=Z)
    SU, iU = subobject(X, U)
    if not _iso(box, quotient_aset(SU, [k for k, x in enumerate(iU.map) if x in Z])[0]):
        return _fail("box", X=X, Y=Y, Z=Z)
    if not _iso(corner, quotient_aset(X, U)[0]):
        return _fail("corner", X=X, Y=Y, Z=Z)
    return None


def acgw_s(rng, smp):
    X = smp.aset(rng)
    Y = smp.subset(rng, X)
    Z = smp.subset(rng, X)
    I, U = Y & Z, Y | Z
    SY, iY = subobject(X, Y)
    SZ, iZ = subobject(X, Z)
    posY = {x: k for k, x in enumerate(iY.map)}
    posZ = {x: k for k, x in enumerate(iZ.map)}
    SI, iIY = subobject(SY, [posY[x] for x in I])
    iIZ = ASetMap(SI, SZ, [posZ[iY.map[v]] for v in iIY.map], check=False)
    P, g1, g2 = pushout_maps(iIY, iIZ)
    SU, _ = subobject(X, U)
    if not _iso(P, SU):
        return _fail("Y u_(YnZ) Z = Y u Z", X=X, Y=Y, Z=Z)
    QY, qY = quotient_aset(X, Y)
    QZ, qZ = quotient_aset(X, Z)
    PO, e1, e2 = pushout_maps(qY, qZ)
    QU, _ = quotient_aset(X, U)
    if not _iso(PO, QU):
        return _fail("X/P is the pushout", X=X, Y=Y, Z=Z)
    # dual: fibre product of X/Y and X/Z over X/(Y u Z)
    L, l1, l2 = pullback_maps(e1, e2)
    pos = {(a, b): k for k, (a, b) in enumerate(zip(l1.map, l2.map))}
    xl = [pos[(qY.map[x], qZ.map[x])] for x in X.points]
    if map_defect(X, L, xl) is not None:
        return _fail("map to pullback", X=X, Y=Y, Z=Z)
    ker = frozenset(x for x in X.points if xl[x] == 0)
    hits = [v for v in xl if v]
    if ker != I or len(hits) != len(set(hits)):
        return _fail("pullback kernel", X=X, Y=Y, Z=Z)
    return None


def acgw_pp(rng, smp):
    X = smp.aset(rng)
    V = smp.subset(rng, X)
    U = smp.subset_containing(rng, X, V)
    SU, iU = subobject(X, U)
    posU = {x: k for k, x in enumerate(iU.map)}
    SV, iVX = subobject(X, V)
    iVY = ASetMap(SV, SU, [posU[x] for x in iVX.map], check=False)
    if rng.random() < 0.5:
        Wd = smp.aset(rng)
        SU2, inj1, _ = wedge(SU, Wd)
        iVY = ASetMap(SV, SU2, [inj1.map[v] for v in iVY.map], check=False)
    P, jX, jY = pushout_maps(iVX, iVY)
    if not (jX.is_injective() and jY.is_injective()):
        return _fail("pushout legs monic", X=X, V=V, U=U)
    L, l1, l2 = pullback_maps(jX, jY)
    if not _iso(L, SV) or l1.image() != V:
        return _fail("V is the intersection", X=X, V=V, U=U)
    # dual: epis X ->> Z and Y ->> Z with Y = X/W', Z = X/W, W' <= W
    W = smp.subset(rng, X)
    W2 = smp.subset(rng, X, inside=W)
    Zq, pz = quotient_aset(X, W)
    Yq, py = quotient_aset(X, W2)
    q = ASetMap(Yq, Zq, [0] * Yq.npoints, check=False)
    qm = list(q.map)
    for x in X.points:
        qm[py.map[x]] = pz.map[x]
    q = ASetMap(Yq, Zq, qm, check=False)
    if map_defect(Yq, Zq, q.map) is not None or not is_admissible_epi(q):
        return _fail("dual epi", X=X, W=W, W2=W2)
    F, f1, f2 = pullback_maps(pz, q)
    kerF = f1.kernel()
    K1, _ = subobject(F, kerF)
    K2, _ = subobject(Yq, q.kernel())
    if not _iso(K1, K2):
        return _fail("dual kernels", X=X, W=W, W2=W2)
    return None


def first_isomorphism(rng, smp):
    X = smp.aset(rng)
    Y = smp.subset(rng, X)
    Z = smp.subset(rng, X)
    f = noether_witness(X, Y, Z)
    if not f.is_iso():
        return _fail("noether", X=X, Y=Y, Z=Z)
    SY, iY = subobject(X, Y)
    posY = {x: k for k, x in enumerate(iY.map)}
    box, qbox = quotient_aset(SY, [posY[x] for x in Y & Z])
    QZ, qZ = quotient_aset(X, Z)
    QU, qU = quotient_aset(X, Y | Z)
    i = induced_map(qbox, qZ, iY)
    j = induced_map(qZ, qU, ASetMap(X, X, range(X.npoints), check=False))
    if i is None or j is None or not is_admissible(i, j):
        return _fail("sequence", X=X, Y=Y, Z=Z)
    return None


QUASI_EXACT = {
    "qe-i": qe_iso_invariance,
    "qe-ii": qe_kernel_cokernel,
    "qe-iii": qe_split,
    "qe-iv": qe_composition_pullback,
}
CGW = {
    "cgw-Z": cgw_zero,
    "cgw-I": cgw_iso,
    "cgw-A": cgw_additivity,
    "cgw-K": cgw_kc,
    "cgw-M": cgw_mono_epi,
    "square": distinguished_square,
}
ACGW = {
    "acgw-P": acgw_p,
    "acgw-U": acgw_u,
    "acgw-S": acgw_s,
    "acgw-PP": acgw_pp,
    "first-isom": first_isomorphism,
}
ALL_AXIOMS = {**QUASI_EXACT, **CGW, **ACGW}


def _run(A, checks, samples, seed, sampler=None):
    smp = sampler or Sampler(A)
    reports = []
    for name, fn in checks.items():
        rng = random.Random(f"{seed}:{A.name}:{name}")
        failures = []
        for _ in range(samples):
            bad = fn(rng, smp)
            if bad is not None:
                bad["monoid"] = A.name
                failures.append(bad)
        reports.append(AxiomReport(name, samples, failures, seed))
    return reports


def check_quasi_exact(A, samples=1000, seed=DEFAULT_SEED, sampler=None):
    return _run(A, QUASI_EXACT, samples, seed, sampler)


def check_cgw(A, samples=1000, seed=DEFAULT_SEED, sampler=None):
    return _run(A, CGW, samples, seed, sampler)


def check_acgw(A, samples=1000, seed=DEFAULT_SEED, sampler=None):
    return _run(A, ACGW, samples, seed, sampler)


def check_all(A, samples=1000, seed=DEFAULT_SEED):
    smp = Sampler(A)
    return (
        check_quasi_exact(A, samples, seed, smp)
        + check_cgw(A, samples, seed, smp)
        + check_acgw(A, samples, seed, smp)
    )


def merge_reports(groups):
    """Combine per-monoid report lists axiom by axiom."""
    out = {}
    for reports in groups:
        for r in reports:
            out[r.axiom] = out[r.axiom].merge(r) if r.axiom in out else r
    return list(out.values())
