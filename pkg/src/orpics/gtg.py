"""Generalised-triangle-group descriptions of a relator.

A description fixes letters a, b, a conjugating word U and exponent lists,
presenting the relator R = prod_i a^{alpha_i} U b^{beta_i} U^-1.  This
module decides admissibility, computes special letters and the ~ classes
on nonidentity factor elements, checks virtual periodicity of clique
labels, and searches for refinements (strictly shorter descriptions of the
same relator) up to maximality.
"""

from dataclasses import dataclass
from math import gcd

from .freeprod import FpLetter, FpWord, UndecidedError, free_product_length
from .words import INFINITE, Word

EQUAL = "EQUAL"
POWERS_OF_A = "POWERS_OF_A"
POWERS_OF_B = "POWERS_OF_B"
POWERS_OF_COMMON_ROOT = "POWERS_OF_COMMON_ROOT"


class DescriptionError(ValueError):
    code = "DESCRIPTION_ERROR"


class NotMaximal(DescriptionError):
    code = "NOT_MAXIMAL"


def _power_exponent(grp, base, g):
    """Exponent e with base^e == g, nonidentity; None when g is no power.

    Finite orders return the least e in (0, order); infinite cyclic factors
    divide exactly (negative exponents allowed).
    """
    order = grp.element_order(base)
    if order is INFINITE:
        # infinite order only arises for integer cyclic factors here
        if g % base == 0 and g != 0:
            return g // base
        return None
    cur = grp.identity()
    for e in range(1, int(order)):
        cur = grp.multiply(cur, base)
        if cur == g:
            return e
    return None


def is_power_of(grp, base, g):
    return _power_exponent(grp, base, g) is not None


@dataclass(frozen=True)
class Description:
    """The tuple (a, b, U, exponent lists, n) presenting the relator."""

    fp: object
    a: FpLetter
    b: FpLetter
    u: FpWord
    alpha: tuple
    beta: tuple
    n: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(self.alpha))
        object.__setattr__(self, "beta", tuple(self.beta))
        if self.n < 2:
            raise DescriptionError("relator exponent n must be at least 2")
        if len(self.alpha) != len(self.beta) or not self.alpha:
            raise DescriptionError("exponent lists must be nonempty, equal length")
        for exps, z, order in ((self.alpha, self.a, self.p), (self.beta, self.b, self.q)):
            for e in exps:
                if e == 0 or (order is not INFINITE and not 0 < e < order):
                    raise DescriptionError("exponent %d out of range for order %s"
                                           % (e, order))
        letters = self.relator_letters()
        for i, z in enumerate(letters):
            if z.factor == letters[(i + 1) % len(letters)].factor:
                raise DescriptionError("relator is not cyclically reduced at %d" % i)

    @property
    def p(self):
        return self.fp.letter_order(self.a)

    @property
    def q(self):
        return self.fp.letter_order(self.b)

    @property
    def k(self):
        return len(self.alpha)

    @property
    def l(self):
        return 2 + 2 * len(self.u)

    def a_power(self, e):
        return self.fp.letter(self.a.factor,
                              self.fp.factor(self.a.factor).power(self.a.element, e))

    def b_power(self, e):
        return self.fp.letter(self.b.factor,
                              self.fp.factor(self.b.factor).power(self.b.element, e))

    def chunk_letters(self, alpha, beta):
        """Letters of a^alpha U b^beta U^-1."""
        u = tuple(self.u)
        uinv = tuple(self.fp.invert_letter(z) for z in reversed(u))
        return (self.a_power(alpha),) + u + (self.b_power(beta),) + uinv

    def relator_letters(self):
        out = ()
        for al, be in zip(self.alpha, self.beta):
            out += self.chunk_letters(al, be)
        return out

    def label(self, alphas=None, betas=None):
        if alphas is None:
            alphas, betas = self.alpha, self.beta
        return CliqueLabel(self, tuple(alphas), tuple(betas))

    def relator_word(self):
        return FpWord(self.relator_letters())

    def free_product_length_in_generators(self):
        """Length of R as a word in <a> * <U b U^-1>: two syllables per chunk."""
        return 2 * self.k


@dataclass(frozen=True)
class CliqueLabel:
    """A word of the clique-label shape prod_i a^{alpha_i} U b^{beta_i} U^-1."""

    desc: Description
    alphas: tuple
    betas: tuple

    @property
    def chunks(self):
        return len(self.alphas)

    @property
    def length(self):
        return self.chunks * self.desc.l

    def letters(self):
        cached = self.__dict__.get("_letters")
        if cached is None:
            out = ()
            for al, be in zip(self.alphas, self.betas):
                out += self.desc.chunk_letters(al, be)
            self.__dict__["_letters"] = cached = out
        return cached

    def letter(self, i):
        return self.letters()[i % self.length]

    def special_positions(self):
        """Positions congruent to 0 mod l/2; each letter there is a power of
        a (even multiples) or of b (odd multiples)."""
        half = self.desc.l // 2
        return set(range(0, self.length, half))


def special_positions(desc):
    return desc.label().special_positions()


def admissible(fp, a, b):
    """Two letters are admissible when they share no factor, or their common
    factor sees <a,b> cyclic or <a> meet <b> trivial."""
    if a.factor != b.factor:
        return True
    grp = fp.factor(a.factor)
    from .freeprod import CyclicGroup
    if isinstance(grp, CyclicGroup):
        return True
    els = grp.elements()  # raises UndecidedError for non-enumerable factors
    sub = grp.generated_subgroup([a.element, b.element])
    if any(set(grp.cyclic_subgroup(g)) == sub for g in sub):
        return True
    meet = set(grp.cyclic_subgroup(a.element)) & set(grp.cyclic_subgroup(b.element))
    return meet == {grp.identity()}


def common_root(fp, a, b):
    """A letter c with a and b both powers of c, of maximal order; None when
    the letters sit in different factors or no root exists."""
    if a.factor != b.factor:
        return None
    grp = fp.factor(a.factor)
    from .freeprod import CyclicGroup
    if isinstance(grp, CyclicGroup) and grp.order is INFINITE:
        g = gcd(a.element, b.element)
        return fp.letter(a.factor, g)
    best = None
    for c in grp.elements():
        if grp.is_identity(c):
            continue
        if is_power_of(grp, c, a.element) and is_power_of(grp, c, b.element):
            if best is None or grp.element_order(c) > grp.element_order(best):
                best = c
    return None if best is None else fp.letter(a.factor, best)


def has_common_power(fp, a, b):
    if a.factor != b.factor:
        return False
    grp = fp.factor(a.factor)
    from .freeprod import CyclicGroup
    if isinstance(grp, CyclicGroup) and grp.order is INFINITE:
        return True
    pa = {g for g in grp.cyclic_subgroup(a.element) if not grp.is_identity(g)}
    pb = {g for g in grp.cyclic_subgroup(b.element) if not grp.is_identity(g)}
    return bool(pa & pb)


class SimClasses:
    """The smallest equivalence on nonidentity factor elements collapsing
    nontrivial powers of a to a and powers of b to b.

    When some element is a power of both, the two classes merge.  The
    involution descends, fixing the classes of a and b.
    """

    def __init__(self, desc):
        self.desc = desc
        self.fp = desc.fp
        self.merged = has_common_power(self.fp, desc.a, desc.b)

    def _is_a_power(self, z):
        d = self.desc
        return z.factor == d.a.factor and is_power_of(
            self.fp.factor(z.factor), d.a.element, z.element)

    def _is_b_power(self, z):
        d = self.desc
        return z.factor == d.b.factor and is_power_of(
            self.fp.factor(z.factor), d.b.element, z.element)

    def of(self, z):
        pa, pb = self._is_a_power(z), self._is_b_power(z)
        if self.merged and (pa or pb):
            return ("ab",)
        if pa:
            return ("a",)
        if pb:
            return ("b",)
        return ("letter", z.factor, z.element)

    def equal(self, z1, z2):
        return self.of(z1) == self.of(z2)

    def inverse_class(self, key):
        if key[0] in ("a", "b", "ab"):
            return key
        _, factor, element = key
        return ("letter", factor, self.fp.factor(factor).invert(element))

    def words_equal(self, zs1, zs2):
        return (len(zs1) == len(zs2)
                and all(self.equal(x, y) for x, y in zip(zs1, zs2)))


@dataclass(frozen=True)
class VirtualPeriodWitness:
    """Per-position clause tags certifying virtual periodicity of a segment."""

    start: int
    length: int
    mu: int
    tags: tuple  # (clause, special_position or None) per i in [start, start+length-1-mu]


def _positions(start, length):
    return range(start, start + length)


def virtual_period_check(label, start, length, mu):
    """Tag every position of the cyclic subword [start, start+length) with
    one of the four virtual-periodicity clauses for period mu, or return
    None when some position fails all clauses.

    Segments longer than the label are allowed and wrap (used to express
    cyclic periodicity of a full label).
    """
    if mu <= 0:
        raise DescriptionError("virtual period must be positive")
    d = label.desc
    L = label.length
    letters = label.letters()
    l, half = d.l, d.l // 2
    fp = d.fp
    root = common_root(fp, d.a, d.b)

    def letter_at(pos):
        return letters[pos % L]

    def is_pow(base, z):
        return (z.factor == base.factor
                and is_power_of(fp.factor(base.factor), base.element, z.element))

    special = [pos for pos in _positions(start, length) if (pos % L) % half == 0]
    tags = []
    for i in range(start, start + length - mu):
        zi, zj = letter_at(i), letter_at(i + mu)
        if zi == zj:
            tags.append((EQUAL, None))
            continue
        tag = None
        if is_pow(d.a, zi) and is_pow(d.a, zj):
            for dpos in special:
                if (dpos % L) % l == 0 and (i - dpos) % mu == 0:
                    tag = (POWERS_OF_A, dpos)
                    break
        if tag is None and is_pow(d.b, zi) and is_pow(d.b, zj):
            for dpos in special:
                if (dpos % L) % l == half and (i - dpos) % mu == 0:
                    tag = (POWERS_OF_B, dpos)
                    break
        if tag is None and root is not None and is_pow(root, zi) and is_pow(root, zj):
            for dpos in special:
                if (i - dpos) % mu == 0:
                    tag = (POWERS_OF_COMMON_ROOT, dpos)
                    break
        if tag is None:
            return None
        tags.append(tag)
    return VirtualPeriodWitness(start, length, mu, tuple(tags))


def combine_virtual_periods(label, seg1, mu, seg2, nu):
    """Merge two virtually periodic segments into one of period gcd(mu, nu).

    seg1 and seg2 are (start, length) integer intervals whose union must be
    an interval; the intersection must have length at least mu + nu - gcd.
    The witness is built by chaining steps through the two segments, as the
    combination argument requires; None when a precondition fails.
    """
    s1, len1 = seg1
    s2, len2 = seg2
    w1 = virtual_period_check(label, s1, len1, mu)
    w2 = virtual_period_check(label, s2, len2, nu)
    if w1 is None or w2 is None:
        return None
    e1, e2 = s1 + len1 - 1, s2 + len2 - 1
    lo, hi = min(s1, s2), max(e1, e2)
    overlap = min(e1, e2) - max(s1, s2) + 1
    if overlap < 0:
        return None
    g = gcd(mu, nu)
    if overlap < mu + nu - g:
        return None

    d = label.desc
    fp = d.fp
    letters = label.letters()
    L = label.length
    root = common_root(fp, d.a, d.b)

    def letter_at(pos):
        return letters[pos % L]

    def in1(pos):
        return s1 <= pos <= e1

    def in2(pos):
        return s2 <= pos <= e2

    def chain(i, target):
        """Breadth-first path i -> target via ±mu steps inside seg1 and ±nu
        steps inside seg2."""
        prev = {i: None}
        frontier = [i]
        while frontier:
            nxt = []
            for pos in frontier:
                for step, inside in ((mu, in1), (-mu, in1), (nu, in2), (-nu, in2)):
                    new = pos + step
                    if new in prev or not (inside(pos) and inside(new)):
                        continue
                    prev[new] = pos
                    if new == target:
                        path = [new]
                        while path[-1] != i:
                            path.append(prev[path[-1]])
                        return list(reversed(path))
                    nxt.append(new)
            frontier = nxt
        return None

    def step_tag(pos_from, pos_to):
        lo_pos = min(pos_from, pos_to)
        if abs(pos_to - pos_from) == mu and in1(lo_pos) and in1(lo_pos + mu):
            return w1.tags[lo_pos - s1]
        return w2.tags[lo_pos - s2]

    def is_pow(base, z):
        return (z.factor == base.factor
                and is_power_of(fp.factor(base.factor), base.element, z.element))

    tags = []
    for i in range(lo, hi + 1 - g):
        path = chain(i, i + g)
        if path is None:
            raise DescriptionError("no combination chain from %d to %d" % (i, i + g))
        pairs = list(zip(path, path[1:]))
        if all(letter_at(x) == letter_at(y) for x, y in pairs):
            tags.append((EQUAL, None))
            continue
        clause, dpos = next(step_tag(x, y) for x, y in pairs
                            if letter_at(x) != letter_at(y))
        if root is not None:
            base, out_clause = root, POWERS_OF_COMMON_ROOT
        elif clause == POWERS_OF_A:
            base, out_clause = d.a, POWERS_OF_A
        else:
            base, out_clause = d.b, POWERS_OF_B
        if not all(is_pow(base, letter_at(pos)) for pos in path):
            raise DescriptionError("combination chain letters are not common powers")
        tags.append((out_clause, dpos))
    return VirtualPeriodWitness(lo, hi - lo + 1, g, tuple(tags))


def mirror_image(desc, seg):
    """Reflect a segment (start, length) of one period through the special
    letters: position j goes to l - j mod l, so U reflects onto U^-1."""
    start, length = seg
    l = desc.l
    if length > l:
        raise DescriptionError("segment exceeds one period")
    end = start + length - 1
    return ((l - end) % l, length)


def parse_label(fp, letters, a, b, u):
    """Read a letter sequence as prod_i a^{alpha_i} u b^{beta_i} u^-1;
    returns the exponent lists or None."""
    lu = len(tuple(u))
    l = 2 + 2 * lu
    L = len(letters)
    if L == 0 or L % l:
        return None
    u_l = tuple(u)
    uinv = tuple(fp.invert_letter(z) for z in reversed(u_l))
    grp_a, grp_b = fp.factor(a.factor), fp.factor(b.factor)
    alphas, betas = [], []
    for i in range(L // l):
        chunk = letters[i * l:(i + 1) * l]
        if chunk[0].factor != a.factor or chunk[1 + lu].factor != b.factor:
            return None
        al = _power_exponent(grp_a, a.element, chunk[0].element)
        be = _power_exponent(grp_b, b.element, chunk[1 + lu].element)
        if al is None or be is None:
            return None
        if chunk[1:1 + lu] != u_l or chunk[2 + lu:] != uinv:
            return None
        alphas.append(al)
        betas.append(be)
    return tuple(alphas), tuple(betas)


def _rebuild(desc, a, b, u_letters):
    """Reparse the relator of desc over new generators; None when it does
    not fit the chunk shape."""
    parsed = parse_label(desc.fp, desc.relator_letters(), a, b, tuple(u_letters))
    if parsed is None:
        return None
    alphas, betas = parsed
    try:
        cand = Description(desc.fp, a, b, FpWord(tuple(u_letters)), alphas, betas,
                           desc.n)
    except (DescriptionError, ValueError):
        return None
    if cand.relator_letters() != desc.relator_letters():
        return None
    return cand


def _exponent_range(order, present):
    if order is INFINITE:
        vals = {1, -1} | {e for e in present} | {-e for e in present}
        return sorted(vals)
    return list(range(1, int(order)))


def _omega_word(desc, letters):
    from .freeprod import OmegaAlphabet
    return Word(OmegaAlphabet(desc.fp), tuple(letters))


def _refine_from_conjugacy(desc, alpha, beta, j):
    """Lemma-route refinement from a chunk word that is a proper cyclic
    conjugate of another chunk word (rotation by j)."""
    from .words import NotConjugateForm, mirror_decompose

    fp = desc.fp
    w1 = desc.chunk_letters(alpha, beta)
    l = desc.l
    half = l // 2
    if j % half == 0:
        # rotation by half a period: U = V x V^-1 with x of order 2, and the
        # rotated a-power equals a b-power, so a and b have a common root
        u = tuple(desc.u)
        if len(u) % 2 == 0 or len(u) == 0:
            return None
        uinv = tuple(fp.invert_letter(z) for z in reversed(u))
        if u != uinv:
            return None
        mid = len(u) // 2
        x = u[mid]
        if fp.letter_order(x) != 2:
            return None
        c = common_root(fp, desc.a, desc.b)
        if c is None:
            return None
        return _rebuild(desc, c, x, u[:mid])
    try:
        dec = mirror_decompose(_omega_word(desc, w1), j)
    except NotConjugateForm:
        return None
    v3 = tuple(dec.v3.letters)
    if dec.case == "ODD":
        return _rebuild(desc, desc.a, desc.b, v3)
    c = common_root(fp, desc.a, desc.b)
    if c is None:
        return None
    return _rebuild(desc, c, c, v3)


def _refine_from_virtual_period(desc, mu):
    """Refinement from a virtual period mu properly dividing l."""
    label = desc.label()
    if virtual_period_check(label, 0, label.length + mu, mu) is None:
        return None
    s = desc.l // mu
    letters = label.letters()
    v = letters[1:mu // 2]
    if s % 2 == 1:
        return _rebuild(desc, desc.a, desc.b, v)
    c = common_root(desc.fp, desc.a, desc.b)
    if c is None:
        return None
    x = letters[mu // 2]
    if desc.fp.letter_order(x) != 2:
        return None
    return _rebuild(desc, c, x, v)


def detect_refinement(desc):
    """Search the two constructive refinement sources: chunk-word cyclic
    conjugacies and proper virtual periods of the relator label.

    Returns the strictly shorter description minimizing (new l, new chunk
    count, formatted form), or None.
    """
    candidates = []
    try:
        adm = admissible(desc.fp, desc.a, desc.b)
    except UndecidedError:
        adm = None
    if adm:
        exps_a = _exponent_range(desc.p, desc.alpha)
        exps_b = _exponent_range(desc.q, desc.beta)
        chunk_cache = {}
        for al in exps_a:
            for be in exps_b:
                chunk_cache[(al, be)] = desc.chunk_letters(al, be)
        l = desc.l
        for (al, be), w1 in chunk_cache.items():
            for j in range(1, l):
                rotated = w1[j:] + w1[:j]
                if rotated not in chunk_cache.values():
                    continue
                cand = _refine_from_conjugacy(desc, al, be, j)
                if cand is not None:
                    candidates.append(cand)
    l = desc.l
    for mu in range(2, l, 2):
        if l % mu == 0:
            cand = _refine_from_virtual_period(desc, mu)
            if cand is not None:
                candidates.append(cand)

    candidates = [c for c in candidates if c.l < desc.l]
    if not candidates:
        return None

    def key(c):
        return (c.l, c.k, c.fp.format_word(FpWord((c.a,))),
                c.fp.format_word(FpWord((c.b,))), c.fp.format_word(c.u),
                c.alpha, c.beta)

    return min(candidates, key=key)


def refinement_chain(desc, max_steps=None):
    """Iterate detect_refinement to a fixpoint; the l measure strictly
    decreases, so this terminates within len(R) steps."""
    if max_steps is None:
        max_steps = desc.k * desc.l
    chain = [desc]
    for _ in range(max_steps):
        nxt = detect_refinement(chain[-1])
        if nxt is None:
            return chain
        if nxt.l >= chain[-1].l:
            raise DescriptionError("refinement did not decrease the measure")
        chain.append(nxt)
    raise DescriptionError("refinement chain exceeded %d steps" % max_steps)


def maximal_refinement(desc):
    return refinement_chain(desc)[-1]


def is_maximal(desc):
    return detect_refinement(desc) is None
