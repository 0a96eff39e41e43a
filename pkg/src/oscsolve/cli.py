"""Command-line tool and the session DSL.

A session file declares one acting space, named constants and named
words; commands classify words, construct and verify solution
certificates, evaluate words at explicit tuples and display elements.

Exit codes: 0 success (or verified), 1 negative-but-correct outcomes
(a Rigid classification, a failed certificate check), 2 errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import solver
from .exactnum import format_rational, is_dyadic, parse_rational
from .finperm import FinPerm
from .oscillation import (DEGENERATE, RIGID, BudgetError, transition)
from .regions import DISCRETE, INTERVAL, parse_region
from .thompson import PLMap, generator, rel_generator
from .words import Const, Var, Word

FORMAT_VERSION = 1


class CliError(Exception):
    pass


# ---------------------------------------------------------------- lexer

_SYMBOLS = set("=;*^()[]{},/-")


class _Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind, value, line, col):
        self.kind = kind
        self.value = value
        self.line = line
        self.col = col

    def where(self):
        return f"line {self.line}:{self.col}"


def _tokenize(text):
    toks = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Token("number", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in _SYMBOLS:
            toks.append(_Token("sym", ch, line, col))
            i += 1
            col += 1
            continue
        raise CliError(f"line {line}:{col}: unexpected character {ch!r}")
    toks.append(_Token("end", "", line, col))
    return toks


# --------------------------------------------------------------- parser

class SessionFile:
    """One space, named constants, named words (in declaration order)."""

    __slots__ = ("space", "consts", "words", "const_order", "word_order")

    def __init__(self, space, consts, words, const_order, word_order):
        self.space = space
        self.consts = consts
        self.words = words
        self.const_order = const_order
        self.word_order = word_order


class _Parser:
    def __init__(self, toks, space=None, consts=None):
        self.toks = toks
        self.pos = 0
        self.space = space
        self.consts = consts if consts is not None else {}

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.next()
        if tok.kind != kind or (value is not None and tok.value != value):
            want = value if value is not None else kind
            raise CliError(f"{tok.where()}: expected {want!r}, "
                           f"got {tok.value!r}")
        return tok

    def at_sym(self, ch):
        tok = self.peek()
        return tok.kind == "sym" and tok.value == ch

    # -- shared pieces --------------------------------------------------

    def rational(self) -> Fraction:
        tok = self.expect("number")
        num = int(tok.value)
        if self.at_sym("/"):
            self.next()
            den = int(self.expect("number").value)
            if den == 0:
                raise CliError(f"{tok.where()}: zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def _need_interval(self, tok):
        if not self.space.is_interval:
            raise CliError(f"{tok.where()}: {tok.value!r} is an interval-"
                           "space element in a discrete session")

    def _need_discrete(self, tok):
        if self.space.is_interval:
            raise CliError(f"{tok.where()}: {tok.value!r} is a discrete-"
                           "space element in an interval session")

    def _pl_literal(self, tok):
        self._need_interval(tok)
        self.expect("sym", "{")
        pairs = []
        while self.at_sym("("):
            self.next()
            a = self.rational()
            self.expect("sym", ",")
            b = self.rational()
            self.expect("sym", ")")
            pairs.append((a, b))
        self.expect("sym", "}")
        try:
            return PLMap(pairs)
        except (ValueError, ZeroDivisionError) as exc:
            raise CliError(f"{tok.where()}: bad pl literal: {exc}") from None

    def _perm_literal(self, tok):
        self._need_discrete(tok)
        self.expect("sym", "(")
        cycles = []
        while self.at_sym("("):
            self.next()
            cyc = []
            while self.peek().kind == "number":
                cyc.append(int(self.next().value))
            self.expect("sym", ")")
            cycles.append(cyc)
        self.expect("sym", ")")
        try:
            return FinPerm.from_cycles(cycles)
        except ValueError as exc:
            raise CliError(f"{tok.where()}: bad perm literal: {exc}") from None

    def _rel_generator(self, tok):
        self._need_interval(tok)
        self.expect("sym", "[")
        a = self.rational()
        self.expect("sym", ",")
        b = self.rational()
        self.expect("sym", "]")
        sub = self.expect("ident")
        if not (sub.value.startswith("_") and sub.value[1:].isdigit()):
            raise CliError(f"{sub.where()}: expected a subscript like _0")
        n = int(sub.value[1:])
        if not (0 <= a < b <= 1) or not is_dyadic(a) or not is_dyadic(b):
            raise CliError(f"{tok.where()}: endpoints must be dyadic "
                           "rationals with 0 <= a < b <= 1")
        return rel_generator(a, b, n)

    # -- expressions ----------------------------------------------------
    # arity None: element expression; arity t: word expression

    def expression(self, arity=None):
        left = self.term(arity)
        while self.at_sym("*"):
            self.next()
            right = self.term(arity)
            left = (left.multiply(right) if arity is not None
                    else left.compose(right))
        return left

    def term(self, arity=None):
        base = self.atom(arity)
        if self.at_sym("^"):
            self.next()
            sign = 1
            if self.at_sym("-"):
                self.next()
                sign = -1
            k = sign * int(self.expect("number").value)
            if arity is None:
                return base ** k
            return _word_power(base, k)
        return base

    def atom(self, arity=None):
        tok = self.next()
        if tok.kind == "sym" and tok.value == "(":
            inner = self.expression(arity)
            self.expect("sym", ")")
            return inner
        if tok.kind != "ident":
            raise CliError(f"{tok.where()}: unexpected {tok.value!r}")
        name = tok.value
        if name == "pl":
            elem = self._pl_literal(tok)
        elif name == "perm":
            elem = self._perm_literal(tok)
        elif name == "x" and self.at_sym("["):
            elem = self._rel_generator(tok)
        elif name.startswith("x") and name[1:].isdigit():
            self._need_interval(tok)
            elem = generator(int(name[1:]))
        elif name.startswith("y") and name[1:].isdigit():
            if arity is None:
                raise CliError(f"{tok.where()}: variables are only allowed "
                               "in word expressions")
            idx = int(name[1:])
            if not 1 <= idx <= arity:
                raise CliError(f"{tok.where()}: variable y{idx} exceeds "
                               f"arity {arity}")
            return Word.var(arity, idx)
        elif name in self.consts:
            elem = self.consts[name]
        else:
            raise CliError(f"{tok.where()}: unknown name {name!r}")
        if arity is not None:
            return Word.const(arity, elem)
        return elem


def _word_power(w: Word, k: int) -> Word:
    out = Word.identity(w.arity)
    base = w if k >= 0 else w.invert()
    for _ in range(abs(k)):
        out = out.multiply(base)
    return out


def parse_session(text: str) -> SessionFile:
    p = _Parser(_tokenize(text))
    tok = p.expect("ident", "space")
    which = p.expect("ident")
    if which.value not in ("interval", "discrete"):
        raise CliError(f"{which.where()}: space must be interval or discrete")
    p.space = INTERVAL if which.value == "interval" else DISCRETE
    p.expect("sym", ";")
    consts, words = {}, {}
    const_order, word_order = [], []
    while p.peek().kind != "end":
        head = p.expect("ident")
        if head.value == "const":
            name = p.expect("ident").value
            if name in consts or name in words:
                raise CliError(f"{head.where()}: name {name!r} already bound")
            p.expect("sym", "=")
            consts[name] = p.expression(None)
            p.consts = consts
            p.expect("sym", ";")
            const_order.append(name)
        elif head.value == "word":
            name = p.expect("ident").value
            if name in consts or name in words:
                raise CliError(f"{head.where()}: name {name!r} already bound")
            p.expect("sym", "[")
            arity = int(p.expect("number").value)
            p.expect("sym", "]")
            if arity < 1:
                raise CliError(f"{head.where()}: arity must be >= 1")
            p.expect("sym", "=")
            words[name] = p.expression(arity)
            p.expect("sym", ";")
            word_order.append(name)
        else:
            raise CliError(f"{head.where()}: expected const or word, "
                           f"got {head.value!r}")
    return SessionFile(p.space, consts, words, const_order, word_order)


def parse_element(text: str, space):
    """One element expression, e.g. a pl{...} or perm(...) literal."""
    p = _Parser(_tokenize(text), space=space)
    elem = p.expression(None)
    p.expect("end")
    return elem


def parse_word_dsl(text: str, arity: int, space) -> Word:
    if not text.strip():
        return Word.identity(arity)
    p = _Parser(_tokenize(text), space=space)
    w = p.expression(arity)
    p.expect("end")
    return w


# -------------------------------------------------------- serialization

def word_to_dsl(w: Word) -> str:
    if w.is_identity_word():
        return ""
    return " * ".join(repr(s) for s in w.syllables)


def _point_out(space, p):
    return format_rational(p) if space.is_interval else int(p)


def _point_in(space, v):
    return parse_rational(str(v)) if space.is_interval else int(v)


def classification_to_doc(name, c) -> dict:
    levels = []
    for lev in c.levels:
        levels.append([{"region": str(n.region), "word": word_to_dsl(n.word),
                        "epsilon": list(n.epsilon) if n.epsilon else None}
                       for n in lev])
    return {
        "format_version": FORMAT_VERSION,
        "kind": "classification",
        "name": name,
        "word": word_to_dsl(c.word),
        "arity": c.word.arity,
        "space": c.space.name,
        "verdict": c.verdict,
        "oscillation_region": str(c.region),
        "solvable_region": None if c.hat is None else str(c.hat),
        "witnesses": [{"region": str(n.region), "word": word_to_dsl(n.word)}
                      for n in c.p_os],
        "levels": levels,
        "notes": list(c.notes),
    }


def classification_to_text(name, c) -> str:
    lines = [f"{name}: {c.verdict}, O_w = {c.region}"]
    if c.hat is not None:
        lines.append(f"  solvable region: {c.hat}")
    for k, lev in enumerate(c.levels):
        if k == 0:
            continue
        lines.append(f"  level {k}:")
        for n in lev:
            word = word_to_dsl(n.word) or "1"
            lines.append(f"    {n.region}: {word}")
    for note in c.notes:
        lines.append(f"  note: {note}")
    return "\n".join(lines)


def certificate_to_doc(cert, report) -> dict:
    space = cert.space
    return {
        "format_version": FORMAT_VERSION,
        "kind": "certificate",
        "space": space.name,
        "certificate_kind": cert.kind,
        "arity": len(cert.solution),
        "words": [{
            "word": word_to_dsl(r.word),
            "arity": r.word.arity,
            "trajectory_word": (None if r.trajectory_word is None
                                else word_to_dsl(r.trajectory_word)),
            "conjugator": (None if r.conjugator is None
                           else word_to_dsl(r.conjugator)),
            "record_kind": r.kind,
            "base_point": _point_out(space, r.base_point),
            "trajectory": [_point_out(space, p) for p in r.trajectory],
            "note": r.note,
        } for r in cert.records],
        "tuple": [repr(g) for g in cert.solution],
        "support_bound": str(cert.support_bound),
        "invariant_regions": [str(v) for v in cert.invariant_regions],
        "epsilon": (None if cert.epsilon is None
                    else format_rational(cert.epsilon)),
        "notes": list(cert.notes),
        "checks": [{"name": n, "ok": ok, "detail": d}
                   for n, ok, d in report.entries],
    }


def certificate_from_doc(doc) -> solver.Certificate:
    if doc.get("kind") != "certificate":
        raise CliError("not a certificate document")
    if doc.get("format_version") != FORMAT_VERSION:
        raise CliError("unsupported format version")
    space = INTERVAL if doc["space"] == "interval" else DISCRETE
    records = []
    for rd in doc["words"]:
        arity = int(rd["arity"])
        records.append(solver.WordRecord(
            parse_word_dsl(rd["word"], arity, space),
            (None if rd["trajectory_word"] is None
             else parse_word_dsl(rd["trajectory_word"], arity, space)),
            (None if rd["conjugator"] is None
             else parse_word_dsl(rd["conjugator"], arity, space)),
            rd["record_kind"],
            _point_in(space, rd["base_point"]),
            tuple(_point_in(space, p) for p in rd["trajectory"]),
            rd.get("note", "")))
    tup = [parse_element(s, space) for s in doc["tuple"]]
    return solver.Certificate(
        space, doc["certificate_kind"], records, tup,
        parse_region(doc["support_bound"]),
        [parse_region(s) for s in doc["invariant_regions"]],
        None if doc["epsilon"] is None else parse_rational(doc["epsilon"]),
        tuple(doc.get("notes", ())))


def certificate_to_text(cert, report) -> str:
    lines = [f"certificate: {cert.kind} over the {cert.space.name} space"]
    for r in cert.records:
        lines.append(f"word: {word_to_dsl(r.word)}")
        pts = " -> ".join(str(_point_out(cert.space, p))
                          for p in r.trajectory)
        lines.append(f"  base point {_point_out(cert.space, r.base_point)}")
        lines.append(f"  trajectory: {pts}")
        if r.note:
            lines.append(f"  note: {r.note}")
    for i, g in enumerate(cert.solution):
        lines.append(f"g{i + 1} = {g!r}")
    lines.append(f"support bound: {cert.support_bound}")
    if cert.invariant_regions:
        lines.append("invariant regions: "
                     + "; ".join(str(v) for v in cert.invariant_regions))
    if cert.epsilon is not None:
        lines.append(f"epsilon: {format_rational(cert.epsilon)}")
    lines.append("checks:")
    for name, ok, detail in report.entries:
        lines.append(f"  {'PASS' if ok else 'FAIL'} {name}: {detail}")
    return "\n".join(lines)


# ------------------------------------------------------------- commands

def _emit(text, args):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_session(path) -> SessionFile:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_session(fh.read())
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from None


def _get_words(session, names):
    if not names or names == ["*"]:
        names = list(session.word_order)
    out = []
    for name in names:
        if name not in session.words:
            raise CliError(f"unknown word {name!r}")
        out.append((name, session.words[name]))
    return out


def _cmd_classify(args):
    session = _load_session(args.file)
    pairs = _get_words(session, args.names)
    docs, texts = [], []
    worst = 0
    for name, w in pairs:
        c = transition(w, session.space)
        if c.verdict in (RIGID, DEGENERATE):
            worst = max(worst, 1)
        docs.append(classification_to_doc(name, c))
        texts.append(classification_to_text(name, c))
    if args.format == "machine":
        payload = docs[0] if len(docs) == 1 else {
            "format_version": FORMAT_VERSION, "kind": "classifications",
            "items": docs}
        _emit(json.dumps(payload, indent=2), args)
    else:
        _emit("\n".join(texts), args)
    return worst


def _solve_one(session, w, region_text, epsilon):
    region = parse_region(region_text) if region_text else None
    if session.space.is_interval:
        if region is not None:
            return solver.solve_explicit(w, session.space, region=region,
                                         epsilon=epsilon)
        return solver.solve_oscillating(w, session.space, epsilon=epsilon)
    if epsilon is not None:
        raise CliError("--epsilon requires the interval space")
    if region is not None:
        return solver.solve_explicit(w, session.space, region=region)
    return solver.solve_discrete(w)


def _report_cert(cert, args):
    report = solver.verify(cert)
    if args.format == "machine":
        _emit(json.dumps(certificate_to_doc(cert, report), indent=2), args)
    else:
        _emit(certificate_to_text(cert, report), args)
    if not report.ok:
        print("certificate failed verification", file=sys.stderr)
        return 2
    return 0


def _cmd_solve(args):
    session = _load_session(args.file)
    [(_, w)] = _get_words(session, [args.word])
    epsilon = parse_rational(args.epsilon) if args.epsilon else None
    cert = _solve_one(session, w, args.region, epsilon)
    return _report_cert(cert, args)


def _cmd_solve_system(args):
    session = _load_session(args.file)
    pairs = _get_words(session, args.words)
    epsilon = parse_rational(args.epsilon) if args.epsilon else None
    cert = solver.solve_system([w for _, w in pairs], session.space,
                               epsilon=epsilon)
    return _report_cert(cert, args)


def _cmd_verify(args):
    try:
        with open(args.certfile, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {args.certfile}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise CliError(f"bad certificate file: {exc}") from None
    cert = certificate_from_doc(doc)
    report = solver.verify(cert)
    if args.format == "machine":
        _emit(json.dumps(certificate_to_doc(cert, report), indent=2), args)
    else:
        _emit(str(report), args)
    return 0 if report.ok else 1


def _cmd_eval(args):
    session = _load_session(args.file)
    [(_, w)] = _get_words(session, [args.word])
    tup = []
    for text in args.values:
        if text in session.consts:
            tup.append(session.consts[text])
        else:
            tup.append(parse_element(text, session.space))
    if len(tup) != w.arity:
        raise CliError(f"word has arity {w.arity}, got {len(tup)} values")
    val = w.substitute(tup)
    _emit(f"{val!r}\nsupport: {val.support()}", args)
    return 0


def _cmd_show(args):
    session = _load_session(args.file)
    names = args.names or (session.const_order + session.word_order)
    lines = []
    for name in names:
        if name in session.consts:
            elem = session.consts[name]
            lines.append(f"const {name} = {elem!r}")
            lines.append(f"  support: {elem.support()}")
        elif name in session.words:
            w = session.words[name]
            lines.append(f"word {name}[{w.arity}] = {word_to_dsl(w)}")
        else:
            raise CliError(f"unknown name {name!r}")
    _emit("\n".join(lines), args)
    return 0


def _build_argparser():
    ap = argparse.ArgumentParser(
        prog="oscsolve",
        description="classify words with constants over group actions and "
                    "solve mixed inequalities with checkable certificates")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["text", "machine"],
                       default="text")
        p.add_argument("--out", default=None)

    p = sub.add_parser("classify", help="classify words")
    p.add_argument("file")
    p.add_argument("names", nargs="*")
    common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("solve", help="solve one inequality")
    p.add_argument("file")
    p.add_argument("word")
    p.add_argument("region", nargs="?", default=None)
    p.add_argument("--epsilon", default=None)
    common(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("solve-system", help="solve several inequalities "
                                            "with one tuple")
    p.add_argument("file")
    p.add_argument("words", nargs="+")
    p.add_argument("--epsilon", default=None)
    common(p)
    p.set_defaults(func=_cmd_solve_system)

    p = sub.add_parser("verify", help="re-check a stored certificate")
    p.add_argument("certfile")
    common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("eval", help="evaluate a word at explicit values")
    p.add_argument("file")
    p.add_argument("word")
    p.add_argument("values", nargs="*")
    common(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("show", help="display constants and words")
    p.add_argument("file")
    p.add_argument("names", nargs="*")
    common(p)
    p.set_defaults(func=_cmd_show)
    return ap


def main(argv=None) -> int:
    ap = _build_argparser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, solver.SolveError, BudgetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
