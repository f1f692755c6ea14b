"""Combinatorics on words over an alphabet with involution.

Periods, borders, Fine-Wilf arithmetic, cyclic words, and the structural
decompositions of mirror-shaped words (x V y V^-1).  Everything here is
plain free-monoid combinatorics at desk scale: naive O(n^2) scans, no
group arithmetic.

Letters may be any hashable, orderable objects; the alphabet object only
needs to answer ``inverse(letter)``, ``order(letter)`` and membership.
"""

import math
from dataclasses import dataclass
from math import gcd

INFINITE = math.inf

ODD = "ODD"
EVEN = "EVEN"


class WordError(ValueError):
    """An operation's stated precondition failed."""

    code = "WORD_ERROR"


class EmptyWordError(WordError):
    code = "EMPTY_WORD"


class NotABorder(WordError):
    code = "NOT_A_BORDER"


class NotAPeriod(WordError):
    code = "NOT_A_PERIOD"


class BadCover(WordError):
    code = "BAD_COVER"


class NotConjugateForm(WordError):
    code = "NOT_CONJUGATE_FORM"


class DegenerateOffset(WordError):
    code = "DEGENERATE_OFFSET"


class HypothesisFail(WordError):
    code = "HYPOTHESIS_FAIL"


class TheoremViolation(WordError):
    """A checked statement failed on inputs satisfying its hypotheses.

    Test-only signal: seeing this exception means either the inputs were
    corrupted or the implementation is wrong.
    """

    code = "THEOREM_VIOLATION"


class Alphabet:
    """Finite symbol set closed under a formal inverse, with element orders.

    ``pairs`` lists (symbol, inverse_symbol, order) for mutually inverse
    symbol pairs (order > 2, or INFINITE); ``involutions`` lists symbols of
    order exactly 2, which are their own inverses.  Identity markers are
    not representable.
    """

    def __init__(self, pairs=(), involutions=()):
        self._inv = {}
        self._order = {}
        for sym, inv_sym, order in pairs:
            if sym == inv_sym:
                raise ValueError("mutually inverse pair must be distinct: %r" % (sym,))
            if order == 2:
                raise ValueError("order 2 requires a self-inverse symbol: %r" % (sym,))
            if order is not INFINITE and (order != int(order) or order < 2):
                raise ValueError("bad order %r for %r" % (order, sym))
            self._inv[sym] = inv_sym
            self._inv[inv_sym] = sym
            self._order[sym] = order
            self._order[inv_sym] = order
        for sym in involutions:
            self._inv[sym] = sym
            self._order[sym] = 2

    def symbols(self):
        return set(self._inv)

    def inverse(self, sym):
        return self._inv[sym]

    def order(self, sym):
        return self._order[sym]

    def __contains__(self, sym):
        return sym in self._inv

    def has_order_two_letter(self):
        return any(o == 2 for o in self._order.values())

    def word(self, letters):
        return Word(self, tuple(letters))


@dataclass(frozen=True)
class Word:
    """A finite sequence of letters from one alphabet."""

    alphabet: object
    letters: tuple

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for z in self.letters:
            if z not in self.alphabet:
                raise ValueError("letter %r not in alphabet" % (z,))

    def __len__(self):
        return len(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.alphabet, self.letters[i])
        return self.letters[i]

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other):
        return Word(self.alphabet, self.letters + tuple(other))

    def __str__(self):
        return " ".join(str(z) for z in self.letters)

    def involute(self):
        inv = self.alphabet.inverse
        return Word(self.alphabet, tuple(inv(z) for z in reversed(self.letters)))

    def rotate(self, j):
        """Cyclic permutation starting at position j."""
        n = len(self.letters)
        if n == 0:
            return self
        j %= n
        return Word(self.alphabet, self.letters[j:] + self.letters[:j])

    def is_reduced(self):
        inv = self.alphabet.inverse
        return all(self.letters[i + 1] != inv(self.letters[i])
                   for i in range(len(self.letters) - 1))

    def is_cyclically_reduced(self):
        if len(self.letters) < 2:
            return True
        inv = self.alphabet.inverse
        return self.is_reduced() and self.letters[0] != inv(self.letters[-1])

    def segment(self, start, end, cyclic=False):
        return Segment(self, start, end, cyclic)


@dataclass(frozen=True)
class CyclicWord:
    """A word considered up to cyclic permutation.

    Equality and hashing go through the lexicographically least rotation,
    so distinct representatives of the same cyclic word compare equal.
    """

    representative: Word

    def __len__(self):
        return len(self.representative)

    def canonical(self):
        w = self.representative
        n = len(w)
        if n == 0:
            return w.letters
        key = sorted(range(n), key=lambda j: tuple(str(z) for z in w.rotate(j).letters))
        return w.rotate(key[0]).letters

    def __eq__(self, other):
        if not isinstance(other, CyclicWord):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __getitem__(self, i):
        return self.representative.letters[i % len(self.representative)]

    def subword(self, start, length):
        """Cyclic subword of the given length starting at position start."""
        w = self.representative
        n = len(w)
        return Word(w.alphabet, tuple(w.letters[(start + t) % n] for t in range(length)))

    def occurrences(self, x):
        """Start positions where the word x occurs as a cyclic subword."""
        n = len(self.representative)
        m = len(x)
        if m > n:
            return []
        return [i for i in range(n)
                if all(self[i + t] == x[t] for t in range(m))]


@dataclass(frozen=True)
class Segment:
    """Consecutive letters of a parent word; end is inclusive.

    With cyclic=True indices are read modulo the parent length, and end may
    exceed it.
    """

    parent: Word
    start: int
    end: int
    cyclic: bool = False

    def __post_init__(self):
        n = len(self.parent)
        if not self.cyclic and not (0 <= self.start <= self.end < n):
            raise ValueError("segment [%d,%d] out of range for length %d"
                             % (self.start, self.end, n))

    def __len__(self):
        return self.end - self.start + 1

    def letters(self):
        if not self.cyclic:
            return self.parent.letters[self.start:self.end + 1]
        n = len(self.parent)
        return tuple(self.parent.letters[i % n] for i in range(self.start, self.end + 1))

    def word(self):
        return Word(self.parent.alphabet, self.letters())

    def is_proper(self):
        return len(self) < len(self.parent)

    def is_initial(self):
        return not self.cyclic and self.start == 0

    def is_terminal(self):
        return not self.cyclic and self.end == len(self.parent) - 1


def involute(w):
    """Reverse w and invert every letter; an involution on words."""
    return w.involute()


def periods(w):
    """All periods of w, always including len(w)."""
    n = len(w)
    if n == 0:
        raise EmptyWordError("periods of the empty word")
    out = set()
    for g in range(1, n + 1):
        if all(w[i] == w[i + g] for i in range(n - g)):
            out.add(g)
    return out


def border_period(w, u):
    """Period len(w) - len(u) arising from a border u of w."""
    if isinstance(u, Segment):
        u = u.word()
    n, m = len(w), len(u)
    if not (0 < m < n):
        raise NotABorder("border must be proper and nonempty")
    if w.letters[:m] != u.letters or w.letters[n - m:] != u.letters:
        raise NotABorder("%s does not border %s" % (u, w))
    g = n - m
    if g not in periods(w):
        raise TheoremViolation("border of length %d gave no period %d" % (m, g))
    return g


def fine_wilf(w, gamma, rho):
    """Combine two periods into gcd(gamma, rho) when w is long enough.

    Returns the gcd period, or None when the length bound
    len(w) >= gamma + rho - gcd fails (the combination is inapplicable).
    """
    if rho > gamma:
        gamma, rho = rho, gamma
    ps = periods(w)
    if gamma not in ps or rho not in ps:
        raise NotAPeriod("%d or %d is not a period" % (gamma, rho))
    g = gcd(gamma, rho)
    if len(w) < gamma + rho - g:
        return None
    if g not in ps:
        raise TheoremViolation("gcd period %d missing" % g)
    return g


def overlap_periods(w, w1, gamma, w2, rho):
    """Combine periods of an initial and a terminal segment that cover w.

    Returns gcd(gamma, rho) as a period of w when the overlap is at least
    gamma + rho - gcd, else None.
    """
    if not (w1.parent is w and w2.parent is w):
        raise BadCover("segments must belong to w")
    if not w1.is_initial() or not w2.is_terminal():
        raise BadCover("need an initial and a terminal segment")
    if w1.end + 1 < w2.start:
        raise BadCover("segments do not cover w")
    if gamma not in periods(w1.word()):
        raise NotAPeriod("%d is not a period of the initial segment" % gamma)
    if rho not in periods(w2.word()):
        raise NotAPeriod("%d is not a period of the terminal segment" % rho)
    g = gcd(gamma, rho)
    overlap = w1.end - w2.start + 1
    if overlap < gamma + rho - g:
        return None
    if g not in periods(w):
        raise TheoremViolation("gcd period %d missing on the full word" % g)
    return g


def is_proper_power(w):
    """True when w = u^t for a proper initial segment u, i.e. some period
    properly divides len(w)."""
    n = len(w)
    return any(g < n and n % g == 0 for g in periods(w))


def is_mirror_form(w):
    """True if w = x V y V^-1: positions i and -i are mutually inverse
    except at 0 and the midpoint."""
    n = len(w)
    if n < 2 or n % 2:
        return False
    k = n // 2
    inv = w.alphabet.inverse
    return all(w[i] == inv(w[n - i])
               for i in range(1, n) if i != k)


def _rotated_mirror_form(w, j):
    n = len(w)
    k = n // 2
    inv = w.alphabet.inverse
    return all(w[i % n] == inv(w[(2 * j - i) % n])
               for i in range(j + 1, j + n) if (i - j) % k != 0)


@dataclass(frozen=True)
class MirrorDecomposition:
    """Product decomposition prod_t [x^alpha(t) V3 y^beta(t) V3^-1].

    In the ODD case the base letters are (x1, y1) from the input word; in
    the EVEN case they are (x1, x2) with y_i = x_i^-1.
    """

    v3: Word
    m: int
    s: int
    case: str
    alpha: tuple
    beta: tuple
    letter_pair: tuple

    def expand(self):
        inv = self.v3.alphabet.inverse
        x, y = self.letter_pair
        v3 = self.v3.letters
        v3i = tuple(inv(z) for z in reversed(v3))
        out = []
        for t in range(self.s):
            out.append(x if self.alpha[t] == 1 else inv(x))
            out.extend(v3)
            out.append(y if self.beta[t] == 1 else inv(y))
            out.extend(v3i)
        return Word(self.v3.alphabet, tuple(out))


def mirror_decompose(w, j):
    """Decompose a mirror-form word whose rotation by j is also mirror-form.

    w must be cyclically reduced of even length 2k with w = x1 V1 y1 V1^-1,
    and its rotation by j (j not divisible by k) must have the same shape.
    The result expands to w letter-for-letter.
    """
    if isinstance(w, CyclicWord):
        w = w.representative
    n = len(w)
    if n < 2 or n % 2:
        raise NotConjugateForm("length must be even and positive")
    k = n // 2
    if j % k == 0:
        raise DegenerateOffset("rotation offset %d is 0 mod %d" % (j, k))
    if not w.is_cyclically_reduced():
        raise NotConjugateForm("word is not cyclically reduced")
    if not is_mirror_form(w):
        raise NotConjugateForm("word is not of shape x V y V^-1")
    if not _rotated_mirror_form(w, j % n):
        raise NotConjugateForm("rotation by %d is not of shape x V y V^-1" % j)

    inv = w.alphabet.inverse
    m = gcd(j % k, k)
    s = k // m
    v3 = w[1:m] if m > 1 else Word(w.alphabet, ())
    xi = [w[2 * t * m] for t in range(s)]
    eta = [w[(2 * t + 1) * m] for t in range(s)]

    def signs(seq, base):
        out = []
        for z in seq:
            if z == base:
                out.append(1)
            elif z == inv(base):
                out.append(-1)
            else:
                raise TheoremViolation("slot letter %r is not %r^±1" % (z, base))
        return tuple(out)

    if s % 2:
        x1, y1 = w[0], w[k]
        dec = MirrorDecomposition(v3, m, s, ODD, signs(xi, x1), signs(eta, y1),
                                  (x1, y1))
    else:
        x1, x2 = w[0], w[(j % n)]
        if w[k] != inv(x1) or w[(j + k) % n] != inv(x2):
            raise TheoremViolation("even case without y_i = x_i^-1")
        dec = MirrorDecomposition(v3, m, s, EVEN, signs(xi, x1), signs(eta, x2),
                                  (x1, x2))
    if dec.expand().letters != w.letters:
        raise TheoremViolation("decomposition does not expand to the input")
    return dec


def order2_in_overlap(w, x):
    """Locate an order-2 letter forced by x and x^-1 both occurring in w.

    w must be cyclically reduced of length 2m and x reduced of length m with
    both x and its involute occurring as cyclic subwords of w.  The letter
    returned is the middle of the self-inverse overlap segment.
    """
    if isinstance(w, Word):
        w = CyclicWord(w)
    rep = w.representative
    n = len(rep)
    if n == 0 or n % 2:
        raise HypothesisFail("need even positive length")
    m = n // 2
    if len(x) != m:
        raise HypothesisFail("need len(x) = len(w)/2")
    if not rep.is_cyclically_reduced():
        raise HypothesisFail("w is not cyclically reduced")
    if not x.is_reduced():
        raise HypothesisFail("x is not reduced")
    occ_x = w.occurrences(x)
    occ_xi = w.occurrences(x.involute())
    if not occ_x or not occ_xi:
        raise HypothesisFail("x and x^-1 must both occur as cyclic subwords")
    order = rep.alphabet.order
    for i in occ_x:
        for j in occ_xi:
            d = (j - i) % n
            if d == m:
                continue
            if d < m:
                length, start = m - d, j
            else:
                length, start = d - m, i
            if length % 2 == 0:
                continue
            mid = w[(start + (length - 1) // 2) % n]
            if order(mid) == 2:
                return mid
    raise TheoremViolation("overlap produced no order-2 letter")


def find_letter_conjugate_subwords(w, gamma):
    """Positions (start, half_len) of subwords u r u^-1 with 2*len(u) >= gamma.

    gamma must be a verified period of w smaller than len(w).  When w has
    no order-2 letter and gamma is even, the returned list is empty.
    """
    n = len(w)
    if gamma >= n or gamma not in periods(w):
        raise NotAPeriod("%d is not a proper period of w" % gamma)
    inv = w.alphabet.inverse
    hits = []
    h_min = (gamma + 1) // 2
    for h in range(h_min, (n - 1) // 2 + 1):
        for p in range(n - 2 * h):
            if all(w[p + t] == inv(w[p + 2 * h - t]) for t in range(h)):
                hits.append((p, h))
    return hits
