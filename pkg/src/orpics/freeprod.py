"""Words in a free product of two factor groups.

Factor groups answer multiply/invert/identity/order queries (and, when
finite, full enumeration); words are alternating sequences of nonidentity
factor elements.  Built-in factors are cyclic groups (finite or infinite)
and permutation groups given by generator images.
"""

from dataclasses import dataclass
from functools import total_ordering
from math import gcd, lcm

from .words import INFINITE


class FreeProductError(ValueError):
    code = "FREE_PRODUCT_ERROR"


class IdentityLetter(FreeProductError):
    code = "IDENTITY_LETTER"


class UndecidedError(FreeProductError):
    """A query needs enumeration the factor oracle cannot provide."""

    code = "UNDECIDED"


class FactorGroup:
    """Oracle interface for one factor of the free product."""

    name = "factor"

    def multiply(self, g, h):
        raise NotImplementedError

    def invert(self, g):
        raise NotImplementedError

    def identity(self):
        raise NotImplementedError

    def is_identity(self, g):
        return g == self.identity()

    def element_order(self, g):
        raise NotImplementedError

    def elements(self):
        """All elements, for finite factors; raises UndecidedError otherwise."""
        raise UndecidedError("factor %s is not enumerable" % self.name)

    def power(self, g, e):
        out = self.identity()
        base = g if e >= 0 else self.invert(g)
        for _ in range(abs(e)):
            out = self.multiply(out, base)
        return out

    def cyclic_subgroup(self, g):
        """Elements of <g>; requires finite order."""
        o = self.element_order(g)
        if o is INFINITE:
            raise UndecidedError("cyclic subgroup of infinite-order element")
        out, cur = [self.identity()], self.identity()
        for _ in range(int(o) - 1):
            cur = self.multiply(cur, g)
            out.append(cur)
        return out

    def generated_subgroup(self, gens):
        """Closure of gens under multiplication; must terminate (finite factor)."""
        out = {self.identity()}
        frontier = [self.identity()]
        while frontier:
            nxt = []
            for h in frontier:
                for g in gens:
                    prod = self.multiply(h, g)
                    if prod not in out:
                        out.add(prod)
                        nxt.append(prod)
            frontier = nxt
        return out

    def format_element(self, g):
        return str(g)

    def parse_element(self, text):
        raise NotImplementedError


class CyclicGroup(FactorGroup):
    """Cyclic group of order m >= 2, or infinite cyclic when m is 0/INFINITE.

    Elements are integers: exponents of the generator, reduced mod m when
    finite.
    """

    def __init__(self, order, generator="c"):
        if order in (0, INFINITE):
            self.order = INFINITE
        else:
            if order < 2:
                raise ValueError("cyclic factor needs order >= 2, got %r" % order)
            self.order = int(order)
        self.generator = generator
        self.name = "C%s" % ("inf" if self.order is INFINITE else self.order)

    def _red(self, g):
        return g if self.order is INFINITE else g % self.order

    def multiply(self, g, h):
        return self._red(g + h)

    def invert(self, g):
        return self._red(-g)

    def identity(self):
        return 0

    def element_order(self, g):
        g = self._red(g)
        if g == 0:
            return 1
        if self.order is INFINITE:
            return INFINITE
        return self.order // gcd(g, self.order)

    def elements(self):
        if self.order is INFINITE:
            raise UndecidedError("infinite cyclic factor is not enumerable")
        return list(range(self.order))

    def format_element(self, g):
        g = self._red(g)
        return self.generator if g == 1 else "%s^%d" % (self.generator, g)

    def parse_element(self, text):
        if text == self.generator:
            return self._red(1)
        if text.startswith(self.generator + "^"):
            return self._red(int(text[len(self.generator) + 1:]))
        raise ValueError("cannot parse %r as a power of %s" % (text, self.generator))


class PermutationGroup(FactorGroup):
    """Permutation group on {0..degree-1} generated by the given images.

    Elements are tuples mapping i -> perm[i]; used as an independent oracle
    next to cyclic factors.
    """

    def __init__(self, degree, generators, names=None):
        self.degree = degree
        self.generators = [tuple(g) for g in generators]
        for g in self.generators:
            if sorted(g) != list(range(degree)):
                raise ValueError("not a permutation of 0..%d: %r" % (degree - 1, g))
        self.names = list(names) if names else ["g%d" % i for i in range(len(generators))]
        self.name = "Perm%d" % degree
        self._elements = None

    def multiply(self, g, h):
        # g then h, acting on the left of points: (g*h)(i) = h(g(i))
        return tuple(h[g[i]] for i in range(self.degree))

    def invert(self, g):
        out = [0] * self.degree
        for i, j in enumerate(g):
            out[j] = i
        return tuple(out)

    def identity(self):
        return tuple(range(self.degree))

    def element_order(self, g):
        seen = [False] * self.degree
        order = 1
        for i in range(self.degree):
            if seen[i]:
                continue
            n, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = g[j]
                n += 1
            order = lcm(order, n)
        return order

    def elements(self):
        if self._elements is None:
            self._elements = sorted(self.generated_subgroup(self.generators))
        return list(self._elements)

    def format_element(self, g):
        return "(" + " ".join(str(i) for i in g) + ")"

    def parse_element(self, text):
        return tuple(int(t) for t in text.strip("()").split())


@total_ordering
@dataclass(frozen=True)
class FpLetter:
    """Nonidentity element of one factor, tagged by factor index (1 or 2)."""

    factor: int
    element: object

    def sort_key(self):
        return (self.factor, str(self.element))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return "f%d:%r" % (self.factor, self.element)


@dataclass(frozen=True)
class FpWord:
    """Reduced word in the free product: adjacent syllables alternate factors."""

    syllables: tuple

    def __post_init__(self):
        object.__setattr__(self, "syllables", tuple(self.syllables))
        for s, t in zip(self.syllables, self.syllables[1:]):
            if s.factor == t.factor:
                raise FreeProductError("word is not reduced at %s %s" % (s, t))

    def __len__(self):
        return len(self.syllables)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return FpWord(self.syllables[i])
        return self.syllables[i]

    def __iter__(self):
        return iter(self.syllables)

    def is_cyclically_reduced(self):
        return len(self) <= 1 or self.syllables[0].factor != self.syllables[-1].factor


class FreeProduct:
    """Two factor groups with oracle-backed word arithmetic."""

    def __init__(self, factor1, factor2):
        self.factors = {1: factor1, 2: factor2}

    def factor(self, i):
        return self.factors[i]

    def letter(self, factor, element):
        grp = self.factors[factor]
        if grp.is_identity(element):
            raise IdentityLetter("identity element of factor %d" % factor)
        return FpLetter(factor, element)

    def invert_letter(self, z):
        return FpLetter(z.factor, self.factors[z.factor].invert(z.element))

    def letter_order(self, z):
        return self.factors[z.factor].element_order(z.element)

    def invert_word(self, w):
        return FpWord(tuple(self.invert_letter(z) for z in reversed(tuple(w))))

    def normalize(self, raw):
        """Merge same-factor neighbours and drop identities, to fixpoint."""
        out = []
        for z in raw:
            grp = self.factors[z.factor]
            if grp.is_identity(z.element):
                continue
            while out and out[-1].factor == z.factor:
                merged = grp.multiply(out.pop().element, z.element)
                if grp.is_identity(merged):
                    z = None
                    break
                z = FpLetter(z.factor, merged)
            if z is not None:
                out.append(z)
        return FpWord(tuple(out))

    def multiply(self, u, v):
        return self.normalize(tuple(u) + tuple(v))

    def cyclic_reduce(self, w):
        """Return (core, conjugator) with w = conjugator * core * conjugator^-1."""
        core = list(self.normalize(tuple(w)))
        conj = []
        while len(core) >= 2 and core[0].factor == core[-1].factor:
            grp = self.factors[core[0].factor]
            first, last = core[0], core[-1]
            conj.append(first)
            merged = grp.multiply(last.element, first.element)
            core = core[1:-1]
            if not grp.is_identity(merged):
                core = core + [FpLetter(first.factor, merged)]
        return FpWord(tuple(core)), FpWord(tuple(conj))

    def word(self, letters):
        return self.normalize(tuple(letters))

    def format_word(self, w):
        return " ".join("f%d:%s" % (z.factor, self.factors[z.factor].format_element(z.element))
                        for z in w)

    def parse_word(self, text):
        letters = []
        for tok in text.split():
            if ":" not in tok:
                raise ValueError("bad free-product token %r" % tok)
            fpart, epart = tok.split(":", 1)
            if fpart not in ("f1", "f2"):
                raise ValueError("bad factor tag in %r" % tok)
            i = int(fpart[1])
            letters.append(self.letter(i, self.factors[i].parse_element(epart)))
        return self.normalize(letters)


def free_product_length(w):
    """Syllable count of a reduced word."""
    return len(w)


class OmegaAlphabet:
    """Adapter exposing the nonidentity factor elements as a word alphabet.

    Lets the word-combinatorics operations run on free-product letters:
    inverse and order queries are answered by the factor oracles.
    """

    def __init__(self, fp):
        self.fp = fp

    def inverse(self, z):
        return self.fp.invert_letter(z)

    def order(self, z):
        return self.fp.letter_order(z)

    def __contains__(self, z):
        return (isinstance(z, FpLetter) and z.factor in (1, 2)
                and not self.fp.factors[z.factor].is_identity(z.element))

    def has_order_two_letter(self):
        for i in (1, 2):
            try:
                els = self.fp.factors[i].elements()
            except UndecidedError:
                continue
            if any(self.fp.factors[i].element_order(g) == 2 for g in els):
                return True
        return False
