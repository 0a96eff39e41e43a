"""Oscillation calculus for words with constants.

Computes the oscillation region O_w, the image families of signed partial
products of the constants, and runs the cell-splitting procedure that
classifies every non-constant word as explicitly oscillating, oscillating
(some derived word oscillates on some cell) or rigid (all derived words
trivialize).
"""

from __future__ import annotations

from .regions import Space
from .words import Form11, Var, Word, to_form11

EXPLICITLY_OSCILLATING = "ExplicitlyOscillating"
OSCILLATING = "Oscillating"
RIGID = "Rigid"
CONSTANT_NONTRIVIAL = "ConstantNontrivial"
DEGENERATE = "Degenerate"

DEFAULT_MAX_CONSTANTS = 16


class BudgetError(Exception):
    """A configured resource budget was exceeded; results are never
    silently truncated."""


def _form_of(w, space: Space):
    if isinstance(w, Form11):
        return w
    return to_form11(w)


def osc_region(w, space: Space):
    """O_w: the intersection of the pulled-back supports of the constants,
    pulled back by v_1^-1 ... v_i^-1 (innermost applied first).

    For a word without constants, O_w is the whole ambient region.
    """
    if isinstance(w, Word):
        if w.is_variable_only():
            return space.ambient()
        w = to_form11(w)
    vs = w.constants()
    region = space.ambient()
    pullback = None  # v_1^-1 ... v_i^-1 as one group element
    for i, v in enumerate(vs):
        supp = v.support().intersect(space.ambient())
        term = supp if pullback is None else pullback.apply_region(supp)
        region = region.intersect(term)
        if region.is_empty():
            return region
        inv = v.inverse()
        pullback = inv if pullback is None else pullback.compose(inv)
    return region


def is_explicitly_oscillating(w: Word, space: Space, region=None) -> bool:
    """w is non-trivial and O_w meets the given region (default: all of X)."""
    if w.is_identity_word() or w.is_constant_only():
        return False
    O = osc_region(w, space)
    if region is None:
        return not O.is_empty()
    return not region.intersect(O).is_empty()


def signed_products(vs, variant: str = "signed",
                    max_constants: int = DEFAULT_MAX_CONSTANTS):
    """Distinct partial products of the constants v_1, ..., v_n.

    signed:   v_j^(e_j) ... v_1^(e_1) with e in {0,1}^j, any j <= n;
    inverse:  v_1^(e_1) ... v_j^(e_j) with e in {0,-1}^j;
    positive: v_j ... v_1 for j = 1..n.
    """
    vs = list(vs)
    if len(vs) > max_constants:
        raise BudgetError(f"{len(vs)} constants exceed budget {max_constants}")
    if variant == "positive":
        out = []
        acc = None
        for v in vs:
            acc = v if acc is None else v.compose(acc)
            if acc not in out:
                out.append(acc)
        return out
    if variant not in ("signed", "inverse"):
        raise ValueError(f"unknown variant {variant!r}")
    ident = vs[0] ** 0 if vs else None
    out = [ident] if ident is not None else []
    for v in vs:
        grow = []
        for m in out:
            m2 = v.compose(m) if variant == "signed" else m.compose(v.inverse())
            if m2 not in out and m2 not in grow:
                grow.append(m2)
        out.extend(grow)
    return out


def v_family(f: Form11, A, variant: str = "signed",
             max_constants: int = DEFAULT_MAX_CONSTANTS):
    """The family of image regions of A under the signed partial products
    of the constants of f; deduplicated, deterministic order.

    For the signed and inverse variants the family always contains A
    itself (the all-zero pattern); the positive variant lists the images
    v_j ... v_1 (A) only.
    """
    vs = f.constants()
    if variant == "positive":
        out = []
        img = A
        for v in vs:
            img = v.apply_region(img)
            if img not in out:
                out.append(img)
        return out
    return [m.apply_region(A)
            for m in signed_products(vs, variant, max_constants)]


def family_points(vs, points, variant: str = "signed",
                  max_constants: int = DEFAULT_MAX_CONSTANTS):
    """Images of a finite point set under a whole product family."""
    out = []
    for m in signed_products(vs, variant, max_constants):
        for p in points:
            q = m.apply_point(p)
            if q not in out:
                out.append(q)
    return out


class TransitionNode:
    """One cell of the splitting tree: an open region plus the word the
    input specializes to on that region."""

    __slots__ = ("region", "word", "level", "parent", "epsilon",
                 "conjugator", "children")

    def __init__(self, region, word, level, parent=None, epsilon=None,
                 conjugator=None):
        self.region = region
        self.word = word
        self.level = level
        self.parent = parent
        self.epsilon = epsilon
        self.conjugator = conjugator
        self.children = []

    def constant_count(self) -> int:
        return self.word.constant_count()

    def ancestors(self):
        node = self.parent
        while node is not None:
            yield node
            node = node.parent

    def __repr__(self):
        return (f"TransitionNode(level={self.level}, region={self.region}, "
                f"word={self.word})")


class Classification:
    """Result of classifying a word: verdict, the splitting tree, the
    oscillation witnesses and the solvable region."""

    __slots__ = ("verdict", "word", "space", "conjugator", "region",
                 "root", "levels", "p_os", "hat", "constant_product",
                 "notes")

    def __init__(self, verdict, word, space, conjugator, region, root,
                 levels, p_os, hat, constant_product, notes):
        self.verdict = verdict
        self.word = word
        self.space = space
        self.conjugator = conjugator
        self.region = region          # O_w of the normalized word
        self.root = root
        self.levels = levels          # levels[k] = nodes of level k
        self.p_os = p_os              # list of witness TransitionNodes
        self.hat = hat
        self.constant_product = constant_product
        self.notes = notes

    def cells(self, level: int):
        return [node.region for node in self.levels[level]]

    def __repr__(self):
        return f"Classification({self.verdict}, O_w={self.region})"


def hat_region(c: Classification):
    if c.verdict not in (EXPLICITLY_OSCILLATING, OSCILLATING):
        raise ValueError(f"no solvable region for verdict {c.verdict}")
    return c.hat


def _derived_word(f: Form11, epsilon) -> Word:
    """The word with each constant v_j kept (e_j = 1) or dropped (e_j = 0),
    reduced and cyclically conjugated back to constant-tail form.

    Returns (word, conjugator): word = conjugator * raw * conjugator^-1.
    """
    arity = f.arity
    out = Word.identity(arity)
    for (u, v), e in zip(reversed(f.pairs), reversed(epsilon)):
        out = out.multiply(u)
        if e:
            out = out.multiply(Word.const(arity, v))
    conj = Word.identity(arity)
    sylls = out.syllables
    if sylls and out.constant_count() > 0 and not out.is_constant_only():
        if isinstance(sylls[-1], Var):
            i = len(sylls)
            while i > 0 and isinstance(sylls[i - 1], Var):
                i -= 1
            conj = Word(arity, sylls[i:])
            out = conj.multiply(out).multiply(conj.invert())
    return out, conj


def _expand(node: TransitionNode, space: Space, max_constants: int):
    """Split the ambient space by the supports of the node's constants and
    attach one child per nonempty cell."""
    f = to_form11(node.word)
    vs = f.constants()
    if len(vs) > max_constants:
        raise BudgetError(f"{len(vs)} constants exceed budget {max_constants}")
    ambient = space.ambient()
    pulled = []  # pulled[i][e]: v_1^-1 ... v_i^-1 image of supp(v_{i+1})^e
    pullback = None
    for v in vs:
        s1 = v.support().intersect(ambient)
        s0 = space.interior_complement(s1)
        if pullback is not None:
            s1 = pullback.apply_region(s1)
            s0 = pullback.apply_region(s0)
        pulled.append((s0, s1))
        inv = v.inverse()
        pullback = inv if pullback is None else pullback.compose(inv)
    # depth-first over sign patterns, pruning empty intersections
    stack = [((), ambient)]
    cells = []
    while stack:
        eps, region = stack.pop()
        i = len(eps)
        if i == len(vs):
            cells.append((eps, region))
            continue
        for e in (1, 0):
            nxt = region.intersect(pulled[i][e])
            if not nxt.is_empty():
                stack.append((eps + (e,), nxt))
    cells.sort(key=lambda c: c[0], reverse=True)  # lexicographic in epsilon
    for eps, region in cells:
        word, conj = _derived_word(f, eps)
        child = TransitionNode(region, word, node.level + 1, node, eps, conj)
        # the all-ones cell (possible only when O_w is nonempty, e.g. a
        # finite oscillation region over the discrete space) keeps every
        # constant; every other cell drops at least one
        if any(e == 0 for e in eps) and word.constant_count() >= node.constant_count():
            raise AssertionError("constant count did not decrease")
        node.children.append(child)
    return node.children


def transition(w: Word, space: Space,
               max_constants: int = DEFAULT_MAX_CONSTANTS,
               force: bool = False) -> Classification:
    """Classify w by iterated cell splitting.

    Level k expands every nonempty cell of level k-1 whose word still has
    constants; the procedure stops at the first level containing a word
    that oscillates on its own cell (verdict Oscillating, witnesses
    collected from that level only) or whose words all trivialize
    (verdict Rigid).  A word oscillating on the whole space short-circuits
    at level 0 unless ``force`` is set, which runs the splitting anyway
    (useful over the discrete space, where the oscillation region is
    always finite and therefore useless for trajectory building).
    """
    if w.is_identity_word():
        raise ValueError("cannot classify the identity word")
    if w.is_constant_only():
        raise ValueError("cannot classify a constant word")
    notes = []
    ambient = space.ambient()
    conjugator = Word.identity(w.arity)
    if w.is_variable_only():
        root = TransitionNode(ambient, w, 0)
        return Classification(EXPLICITLY_OSCILLATING, w, space, conjugator,
                              ambient, root, [[root]], [root], ambient,
                              None, notes)
    f = to_form11(w)
    conjugator = f.conjugator
    normalized = f.normalized_word()
    if not conjugator.is_identity_word():
        notes.append(f"conjugated by {conjugator} to constant-tail form")
    if normalized.is_constant_only():
        # w is a conjugate of a nontrivial constant: every tuple solves
        notes.append("word is conjugate to a nontrivial constant")
        root = TransitionNode(ambient, normalized, 0)
        return Classification(CONSTANT_NONTRIVIAL, w, space, conjugator,
                              osc_region(f, space), root, [[root]], [],
                              None, normalized.syllables[0].elem, notes)
    product = f.product_of_constants()
    if not product.is_identity():
        notes.append("non-trivial product of constants: "
                     "the identity tuple already solves w != 1")
    O = osc_region(f, space)
    root = TransitionNode(ambient, normalized, 0)
    levels = [[root]]
    if not O.is_empty() and not force:
        return Classification(EXPLICITLY_OSCILLATING, w, space, conjugator,
                              O, root, levels, [root], O, product, notes)
    frontier = [root]
    while True:
        nxt = []
        for node in frontier:
            nxt.extend(_expand(node, space, max_constants))
        live = [n for n in nxt if not n.word.is_identity_word()]
        levels.append(nxt)
        if not live:
            notes.append(f"all level-{len(levels) - 1} words trivialize")
            return Classification(RIGID, w, space, conjugator, O, root,
                                  levels, [], None, product, notes)
        witnesses = [n for n in live
                     if is_explicitly_oscillating(n.word, space, n.region)]
        if witnesses:
            hat = space.empty()
            for n in witnesses:
                contrib = n.region.intersect(osc_region(n.word, space))
                hat = hat.union(contrib)
            hat = hat.regularize()
            return Classification(OSCILLATING, w, space, conjugator, O,
                                  root, levels, witnesses, hat, product,
                                  notes)
        frontier = [n for n in live if n.word.constant_count() > 0
                    and not n.word.is_constant_only()]
        if not frontier:
            # nontrivial words remain (constant-free, or a bare nontrivial
            # constant) but none oscillates and none can be split further;
            # the procedure cannot decide
            notes.append("nontrivial unsplittable words remain without "
                         "oscillation")
            return Classification(DEGENERATE, w, space, conjugator, O,
                                  root, levels, [], None, product, notes)


def gab_cells(f: Form11, space: Space,
              max_constants: int = DEFAULT_MAX_CONSTANTS):
    """Cells of the discrete separation condition: for each sign pattern,
    the intersection of v_s ... v_1 (O_w) or its plain complement.

    Returns (cells, separation) where cells is the list of nonempty
    (pattern, region) pairs and separation holds iff every nonempty cell
    is infinite.
    """
    O = osc_region(f, space)
    vs = f.constants()
    if len(vs) > max_constants:
        raise BudgetError(f"{len(vs)} constants exceed budget {max_constants}")
    images = []
    img = O
    for v in vs:
        img = v.apply_region(img)
        images.append(img)
    ambient = space.ambient()
    stack = [((), ambient)]
    cells = []
    while stack:
        eps, region = stack.pop()
        i = len(eps)
        if i == len(vs):
            cells.append((eps, region))
            continue
        for e in (1, 0):
            part = images[i] if e else ambient.difference(images[i])
            nxt = region.intersect(part)
            if not nxt.is_empty():
                stack.append((eps + (e,), nxt))
    cells.sort(key=lambda c: c[0], reverse=True)
    separation = all(cell.is_infinite() for _, cell in cells)
    return cells, separation
