"""Words with constants: reduced elements of the free product F_t * G.

A word is a sequence of syllables, each a variable power y_i^k or a
constant (a fixed group element).  The group element type is generic; it
must provide compose, inverse, is_identity, equality and hashing, which
both PLMap and FinPerm do.

Words act right to left: the rightmost syllable is applied first.
"""

from __future__ import annotations


class Var:
    """Variable syllable y_idx^power, power != 0."""

    __slots__ = ("idx", "power")

    def __init__(self, idx: int, power: int = 1):
        if idx < 1:
            raise ValueError("variable index must be >= 1")
        if power == 0:
            raise ValueError("variable power must be nonzero")
        self.idx = idx
        self.power = power

    def __eq__(self, other):
        return (isinstance(other, Var)
                and self.idx == other.idx and self.power == other.power)

    def __hash__(self):
        return hash(("v", self.idx, self.power))

    def __repr__(self):
        if self.power == 1:
            return f"y{self.idx}"
        return f"y{self.idx}^{self.power}"


class Const:
    """Constant syllable: a non-identity group element."""

    __slots__ = ("elem",)

    def __init__(self, elem):
        self.elem = elem

    def __eq__(self, other):
        return isinstance(other, Const) and self.elem == other.elem

    def __hash__(self):
        return hash(("c", self.elem))

    def __repr__(self):
        return repr(self.elem)


class Word:
    """Reduced word in F_t * G."""

    __slots__ = ("arity", "syllables")

    def __init__(self, arity: int, syllables=()):
        if arity < 1:
            raise ValueError("arity must be >= 1")
        self.arity = arity
        self.syllables = _reduce(syllables, arity)

    @classmethod
    def identity(cls, arity: int) -> "Word":
        return cls(arity)

    @classmethod
    def var(cls, arity: int, idx: int, power: int = 1) -> "Word":
        return cls(arity, [Var(idx, power)])

    @classmethod
    def const(cls, arity: int, elem) -> "Word":
        return cls(arity, [Const(elem)])

    def is_identity_word(self) -> bool:
        return not self.syllables

    def is_variable_only(self) -> bool:
        return all(isinstance(s, Var) for s in self.syllables)

    def is_constant_only(self) -> bool:
        return all(isinstance(s, Const) for s in self.syllables)

    def constant_count(self) -> int:
        return sum(1 for s in self.syllables if isinstance(s, Const))

    def multiply(self, other: "Word") -> "Word":
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        return Word(self.arity, self.syllables + other.syllables)

    def __mul__(self, other: "Word") -> "Word":
        return self.multiply(other)

    def invert(self) -> "Word":
        out = []
        for s in reversed(self.syllables):
            if isinstance(s, Var):
                out.append(Var(s.idx, -s.power))
            else:
                out.append(Const(s.elem.inverse()))
        return Word(self.arity, out)

    def conjugate(self, by: "Word") -> "Word":
        """by * self * by^-1."""
        return by.multiply(self).multiply(by.invert())

    def substitute(self, tup):
        """Evaluate the word at the tuple (g_1, ..., g_t) in G."""
        if len(tup) != self.arity:
            raise ValueError("tuple length must equal arity")
        out = None
        for s in self.syllables:
            val = tup[s.idx - 1] ** s.power if isinstance(s, Var) else s.elem
            out = val if out is None else out.compose(val)
        if out is None:
            ident = tup[0] ** 0
            return ident
        return out

    def __eq__(self, other):
        return (isinstance(other, Word) and self.arity == other.arity
                and self.syllables == other.syllables)

    def __hash__(self):
        return hash((self.arity, self.syllables))

    def __repr__(self):
        if not self.syllables:
            return "1"
        return " ".join(repr(s) for s in self.syllables)


def _reduce(syllables, arity):
    stack = []
    for s in syllables:
        if isinstance(s, Var):
            if not 1 <= s.idx <= arity:
                raise ValueError(f"variable index {s.idx} exceeds arity {arity}")
        elif isinstance(s, Const):
            if s.elem.is_identity():
                continue
        else:
            raise TypeError(f"not a syllable: {s!r}")
        stack.append(s)
        while len(stack) >= 2:
            a, b = stack[-2], stack[-1]
            if isinstance(a, Var) and isinstance(b, Var) and a.idx == b.idx:
                stack.pop()
                stack.pop()
                if a.power + b.power != 0:
                    stack.append(Var(a.idx, a.power + b.power))
            elif isinstance(a, Const) and isinstance(b, Const):
                stack.pop()
                stack.pop()
                prod = a.elem.compose(b.elem)
                if not prod.is_identity():
                    stack.append(Const(prod))
            else:
                break
    return tuple(stack)


class Form11:
    """The block form w = u_n v_n ... u_1 v_1: variable blocks u_j and
    non-identity constants v_j, the pair (u_1, v_1) rightmost.

    u_n may be empty (the word may begin with a constant); all other u_j
    are nonempty since the word is reduced.  ``conjugator`` c records the
    cyclic normalization applied: word = c^-1 * (reassembled form) * c.
    """

    __slots__ = ("arity", "pairs", "conjugator", "word")

    def __init__(self, arity, pairs, conjugator, word):
        self.arity = arity
        self.pairs = tuple(pairs)  # (u_j, v_j) for j = 1..n, index 0 is j=1
        self.conjugator = conjugator
        self.word = word

    @property
    def n(self) -> int:
        return len(self.pairs)

    def constants(self):
        """v_1, ..., v_n in that order."""
        return [v for _, v in self.pairs]

    def reassemble(self) -> Word:
        out = Word.identity(self.arity)
        for u, v in reversed(self.pairs):
            out = out.multiply(u).multiply(Word.const(self.arity, v))
        return out

    def normalized_word(self) -> Word:
        return self.reassemble()

    def product_of_constants(self):
        vs = self.constants()
        out = vs[-1]
        for v in reversed(vs[:-1]):
            out = out.compose(v)
        return out


def to_form11(w: Word) -> Form11:
    """Split w into the block form, cyclically conjugating a trailing
    variable block to the front when the word does not end in a constant."""
    if w.is_identity_word():
        raise ValueError("identity word has no block form")
    if w.is_constant_only():
        raise ValueError("constant word has no block form")
    sylls = list(w.syllables)
    conjugator = Word.identity(w.arity)
    if isinstance(sylls[-1], Var):
        i = len(sylls)
        while i > 0 and isinstance(sylls[i - 1], Var):
            i -= 1
        if i == 0:
            raise ValueError("variable-only word has no block form")
        conjugator = Word(w.arity, sylls[i:])
        normalized = conjugator.multiply(Word(w.arity, sylls[:i]))
        sylls = list(normalized.syllables)
        if not sylls or not isinstance(sylls[-1], Const):
            raise ValueError("cyclic normalization degenerated")
    pairs = []
    i = len(sylls)
    while i > 0:
        v = sylls[i - 1]
        assert isinstance(v, Const)
        i -= 1
        j = i
        while j > 0 and isinstance(sylls[j - 1], Var):
            j -= 1
        pairs.append((Word(w.arity, sylls[j:i]), v.elem))
        i = j
    return Form11(w.arity, pairs, conjugator, w)


class Form12:
    """Single-letter expansion of the block form, with the length
    bookkeeping L_j = l_1 + ... + l_j."""

    __slots__ = ("form11", "letters", "lengths", "prefix")

    def __init__(self, form11: Form11):
        self.form11 = form11
        self.letters = []   # letters of u_j, rightmost first within block
        self.lengths = []
        for u, _ in form11.pairs:
            block = []
            for s in reversed(u.syllables):  # rightmost syllable first
                step = 1 if s.power > 0 else -1
                for _ in range(abs(s.power)):
                    block.append(Var(s.idx, step))
            self.letters.append(block)
            self.lengths.append(len(block))
        self.prefix = [0]
        for l in self.lengths:
            self.prefix.append(self.prefix[-1] + l)

    @property
    def length(self) -> int:
        """L_n, the total number of variable letters."""
        return self.prefix[-1]

    def block_of(self, r: int) -> int:
        """The block index j (1-based) with L_{j-1} < r <= L_j."""
        if not 1 <= r <= self.length:
            raise ValueError(f"letter index {r} out of range")
        j = 1
        while self.prefix[j] < r:
            j += 1
        return j

    def final_segment(self, r: int) -> Word:
        """(w)_r: the suffix of the expanded word containing exactly r
        variable letters; (w)_0 is the identity word."""
        arity = self.form11.arity
        if r == 0:
            return Word.identity(arity)
        if not 1 <= r <= self.length:
            raise ValueError(f"letter index {r} out of range")
        out = Word.identity(arity)
        remaining = r
        for block, (u, v) in zip(self.letters, self.form11.pairs):
            take = min(remaining, len(block))
            taken = block[:take]
            piece = Word(arity, list(reversed(taken)))
            out = piece.multiply(Word.const(arity, v)).multiply(out)
            remaining -= take
            if remaining == 0:
                break
        return out

    def segments(self, r: int):
        """((w)_r, [w]_r) with [w]_r * (w)_r = w (the normalized word)."""
        final = self.final_segment(r)
        head = self.form11.normalized_word().multiply(final.invert())
        return final, head


def to_form12(f: Form11) -> Form12:
    return Form12(f)
