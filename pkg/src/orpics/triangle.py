"""Triviality oracles for generalised triangle groups
H = <x, y | x^p, y^q, R'(x,y)^n>.

Two independent routes: a PSL(2,C) matrix representation with trace-based
order detection, and bounded Todd-Coxeter coset enumeration over the
trivial subgroup.  The enumerator is the exact oracle; the representation
is floating point with a fixed tolerance.
"""

import cmath
import math
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .words import INFINITE

EPS = 1e-9

COMPLETE = "COMPLETE"
EXCEEDED = "EXCEEDED"


class TriangleError(ValueError):
    code = "TRIANGLE_ERROR"


class UnsupportedOrder(TriangleError):
    code = "UNSUPPORTED_ORDER"


class BadMatrix(TriangleError):
    code = "BAD_MATRIX"


class OracleUnavailable(TriangleError):
    code = "ORACLE_UNAVAILABLE"


def build_rep(p, q):
    """The two unimodular matrices sending x, y to elements of orders p, q
    whose product has trace zero (hence order 2); needs p, q >= 3 finite."""
    if p is INFINITE or q is INFINITE or p == 2 or q == 2:
        raise UnsupportedOrder("representation needs finite p, q >= 3")
    t = -2.0 * math.cos(math.pi / p + math.pi / q)
    x = np.array([[cmath.exp(1j * math.pi / p), 0.0],
                  [1.0, cmath.exp(-1j * math.pi / p)]], dtype=complex)
    y = np.array([[cmath.exp(1j * math.pi / q), t],
                  [0.0, cmath.exp(-1j * math.pi / q)]], dtype=complex)
    return x, y


def psl2_order(m, m_max=100, eps=EPS):
    """Order of an element of PSL(2,C) by trace matching, or None (unknown).

    Searches orders up to m_max for a delta coprime to the order with
    trace = ±2 cos(delta pi / order); both trace signs are tested since the
    matrix only represents its class up to sign.
    """
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(det - 1.0) > eps:
        raise BadMatrix("matrix is not unimodular: det = %r" % det)
    if (abs(abs(m[0, 0]) - 1.0) < eps and abs(m[0, 1]) < eps and abs(m[1, 0]) < eps
            and abs(m[0, 0] - m[1, 1]) < eps):
        return 1
    tr = m[0, 0] + m[1, 1]
    if abs(tr.imag) > eps:
        return None
    tr = tr.real
    for order in range(2, m_max + 1):
        for delta in range(1, order):
            if gcd(delta, order) != 1:
                continue
            target = 2.0 * math.cos(delta * math.pi / order)
            if abs(tr - target) < eps or abs(tr + target) < eps:
                return order
    return None


def mat_power(m, e):
    return np.linalg.matrix_power(m, e)


@dataclass(frozen=True)
class TrianglePresentation:
    """<x, y | x^p, y^q, (prod_i x^{alpha_i} y^{beta_i})^n>."""

    p: int
    q: int
    exps: tuple  # pairs (alpha_i, beta_i)
    n: int

    def __post_init__(self):
        object.__setattr__(self, "exps", tuple(tuple(e) for e in self.exps))
        for al, be in self.exps:
            if not (0 < al < self.p and 0 < be < self.q):
                raise TriangleError("exponents must lie strictly inside (0,p)x(0,q)")

    @property
    def k(self):
        return len(self.exps)

    def relator_word(self):
        """The kernel word as generator indices: 0 = x, 1 = y."""
        out = []
        for _ in range(self.n):
            for al, be in self.exps:
                out.extend([0] * al)
                out.extend([1] * be)
        return tuple(out)


def triangle(p, q, r):
    """The ordinary (p,q,r) triangle group <x,y | x^p, y^q, (xy)^r>."""
    return TrianglePresentation(p, q, ((1, 1),), r)


@dataclass
class CosetTable:
    """Result of a bounded enumeration: a permutation action of x and y on
    cosets of the trivial subgroup when COMPLETE, or the bound that was hit."""

    status: str
    order: int = 0
    x_perm: tuple = ()
    y_perm: tuple = ()
    bound: int = 0
    presentation: TrianglePresentation = None

    def rows(self):
        """Tab-separated rows coset -> images under x, x^-1, y, y^-1."""
        x, y = list(self.x_perm), list(self.y_perm)
        xi = [0] * len(x)
        yi = [0] * len(y)
        for i, j in enumerate(x):
            xi[j] = i
        for i, j in enumerate(y):
            yi[j] = i
        return ["%d\t%d\t%d\t%d\t%d" % (c, x[c], xi[c], y[c], yi[c])
                for c in range(len(x))]


def _relator_tables(pres):
    """Relators as generator-index sequences: x^p, y^q, W^n."""
    rels = []
    if pres.p is not INFINITE:
        rels.append((0,) * pres.p)
    if pres.q is not INFINITE:
        rels.append((1,) * pres.q)
    rels.append(pres.relator_word())
    return rels


def todd_coxeter(pres, max_cosets=100000):
    """Enumerate cosets of the trivial subgroup; deterministic numbering by
    first definition.  Exceeding max_cosets ever-defined cosets reports
    EXCEEDED with the bound."""
    if pres.p is INFINITE or pres.q is INFINITE:
        raise TriangleError("enumeration needs finite p and q")
    rels = _relator_tables(pres)
    # columns: x, x^-1, y, y^-1
    neighbors = [[None, None, None, None]]
    labels = [0]

    def find(c):
        while labels[c] != c:
            labels[c] = labels[labels[c]]
            c = labels[c]
        return c

    def define(c, col):
        neighbors.append([None, None, None, None])
        labels.append(len(labels))
        d = len(labels) - 1
        neighbors[c][col] = d
        neighbors[d][col ^ 1] = c
        return d

    def unify(c, d):
        queue = [(c, d)]
        while queue:
            c, d = queue.pop()
            c, d = find(c), find(d)
            if c == d:
                continue
            if d < c:
                c, d = d, c
            labels[d] = c
            for col in range(4):
                n_c, n_d = neighbors[c][col], neighbors[d][col]
                if n_c is None:
                    neighbors[c][col] = n_d
                elif n_d is not None:
                    queue.append((n_c, n_d))

    def scan(c, rel):
        """Walk rel from coset c, defining cosets as needed; close with a
        unification at the end."""
        cur = c
        for g in rel[:-1]:
            cur = find(cur)
            col = 2 * g
            nxt = neighbors[cur][col]
            if nxt is None:
                nxt = define(cur, col)
            cur = find(nxt)
        # last step must return to c
        g = rel[-1]
        col = 2 * g
        cur = find(cur)
        c = find(c)
        nxt = neighbors[cur][col]
        back = neighbors[c][col ^ 1]
        if nxt is None and back is None:
            neighbors[cur][col] = c
            neighbors[c][col ^ 1] = cur
        elif nxt is None:
            unify(find(back), cur)
        elif back is None:
            unify(find(nxt), c)
        else:
            unify(find(nxt), c)

    visit = 0
    while visit < len(labels):
        if len(labels) > max_cosets:
            return CosetTable(EXCEEDED, bound=max_cosets, presentation=pres)
        if find(visit) != visit:
            visit += 1
            continue
        for rel in rels:
            scan(visit, rel)
            if len(labels) > max_cosets:
                return CosetTable(EXCEEDED, bound=max_cosets, presentation=pres)
        # ensure both generators are defined everywhere reachable
        for col in range(4):
            if find(visit) == visit and neighbors[visit][col] is None:
                define(visit, col)
        visit += 1

    live = sorted({find(c) for c in range(len(labels))})
    index = {c: i for i, c in enumerate(live)}
    x_perm = [index[find(neighbors[c][0])] for c in live]
    y_perm = [index[find(neighbors[c][2])] for c in live]
    return CosetTable(COMPLETE, order=len(live), x_perm=tuple(x_perm),
                      y_perm=tuple(y_perm), bound=max_cosets, presentation=pres)


def trace_word(table, word):
    """Image of coset 0... of every coset under a generator-index word; the
    word is a sequence of 0 (x), 1 (y) or pairs (gen, exp)."""
    if table.status != COMPLETE:
        raise OracleUnavailable("coset table is not complete")
    n = table.order
    perms = {0: table.x_perm, 1: table.y_perm}
    invs = {}
    for g, perm in perms.items():
        inv = [0] * n
        for i, j in enumerate(perm):
            inv[j] = i
        invs[g] = tuple(inv)
    out = list(range(n))
    for item in word:
        gen, exp = item if isinstance(item, tuple) else (item, 1)
        perm = perms[gen] if exp > 0 else invs[gen]
        for _ in range(abs(exp)):
            out = [perm[c] for c in out]
    return out


def is_trivial_in_h(table, word):
    """True when the word acts trivially on every coset."""
    return trace_word(table, word) == list(range(table.order))


def word_from_exps(pairs):
    return tuple((g, e) for al, be in pairs for g, e in ((0, al), (1, be)))


def verify_power_tuples(p, q, table):
    """Brute-force all x^a y^b x^c y^d over the (p,q,2) triangle group and
    report which are trivial; beyond p=2 or q=2 the trivial ones must be
    exactly the all-ones and all-top tuples."""
    if p == 2 or q == 2:
        return {"skipped": True, "reason": "order 2 in {p,q}", "trivial": []}
    trivial = []
    for a in range(1, p):
        for b in range(1, q):
            for c in range(1, p):
                for d in range(1, q):
                    word = ((0, a), (1, b), (0, c), (1, d))
                    if is_trivial_in_h(table, word):
                        trivial.append((a, b, c, d))
    expected = [(1, 1, 1, 1), (p - 1, q - 1, p - 1, q - 1)]
    return {"skipped": False, "trivial": trivial,
            "ok": sorted(trivial) == sorted(expected)}


def verify_spelling(pres, table):
    """Enumerate all alternating words with fewer than k*n syllable pairs and
    check none is trivial; returns the count checked and any violations."""
    bound = pres.k * pres.n
    checked = 0
    violations = []
    ranges_a = range(1, pres.p)
    ranges_b = range(1, pres.q)

    def rec(prefix, length):
        nonlocal checked
        if length > 0:
            word = word_from_exps(prefix)
            checked += 1
            if is_trivial_in_h(table, word):
                violations.append(tuple(prefix))
        if length == bound - 1:
            return
        for al in ranges_a:
            for be in ranges_b:
                rec(prefix + [(al, be)], length + 1)

    rec([], 0)
    return {"checked": checked, "violations": violations, "bound": bound}
