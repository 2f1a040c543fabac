"""Binary term trees over one operation symbol, with a fixed concrete
syntax: identifiers for variables, `*` for the operation, parentheses,
left-associative. Printing is fully parenthesized, e.g. `(x*(y*x))`,
and round-trips through the parser bit-exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


@dataclass(frozen=True)
class Term:
    sym: str = ""
    args: tuple["Term", ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.args

    def __str__(self):
        return format_term(self)


def var(name: str) -> Term:
    return Term(name, ())


def app(left: Term, right: Term) -> Term:
    return Term("*", (left, right))


def canonical_var(i: int) -> str:
    """Variable order used by identity checks: x, y, z1, z2, ..."""
    if i == 0:
        return "x"
    if i == 1:
        return "y"
    return f"z{i - 1}"


def format_term(t: Term) -> str:
    if t.is_leaf:
        return t.sym
    return f"({format_term(t.args[0])}*{format_term(t.args[1])})"


_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\(|\)|\*)")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"bad character at {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


def parse_term(text: str) -> Term:
    """Parse `a*b*c` (left-associative) and parenthesized forms."""
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty term")
    pos = 0

    def atom() -> Term:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of term")
        tok = tokens[pos]
        if tok == "(":
            pos += 1
            t = expr()
            if pos >= len(tokens) or tokens[pos] != ")":
                raise ValueError("missing ')'")
            pos += 1
            return t
        if tok in ("*", ")"):
            raise ValueError(f"unexpected {tok!r}")
        pos += 1
        return var(tok)

    def expr() -> Term:
        nonlocal pos
        t = atom()
        while pos < len(tokens) and tokens[pos] == "*":
            pos += 1
            t = app(t, atom())
        return t

    t = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing tokens {tokens[pos:]!r}")
    return t


def variables(t: Term) -> list[str]:
    """Variable names in first-occurrence order."""
    out: list[str] = []

    def walk(u):
        if u.is_leaf:
            if u.sym not in out:
                out.append(u.sym)
        else:
            walk(u.args[0])
            walk(u.args[1])

    walk(t)
    return out


def subterms(t: Term) -> list[Term]:
    """All distinct subterms, leaves first within each branch."""
    seen: dict[Term, None] = {}

    def walk(u):
        if u in seen:
            return
        if not u.is_leaf:
            walk(u.args[0])
            walk(u.args[1])
        seen[u] = None

    walk(t)
    return list(seen)


def substitute(t: Term, env: dict[str, Term]) -> Term:
    if t.is_leaf:
        return env.get(t.sym, t)
    return app(substitute(t.args[0], env), substitute(t.args[1], env))


def evaluate(t: Term, table, n: int, env: dict[str, int]) -> int:
    """Evaluate over a flat operation table with variables bound by env."""
    if t.is_leaf:
        try:
            return env[t.sym]
        except KeyError:
            raise ValueError(f"unbound variable {t.sym!r}") from None
    a = evaluate(t.args[0], table, n, env)
    b = evaluate(t.args[1], table, n, env)
    return table[a * n + b]


def to_postfix(t: Term, var_index: dict[str, int]) -> tuple[int, ...]:
    """Postfix program for the kernel evaluator: >=0 pushes a variable,
    -1 applies the operation."""
    prog: list[int] = []

    def walk(u):
        if u.is_leaf:
            if u.sym not in var_index:
                raise ValueError(f"unknown variable {u.sym!r}")
            prog.append(var_index[u.sym])
        else:
            walk(u.args[0])
            walk(u.args[1])
            prog.append(-1)

    walk(t)
    return tuple(prog)


def postfix_stack_need(prog) -> int:
    depth = high = 0
    for opcode in prog:
        depth += 1 if opcode >= 0 else -1
        high = max(high, depth)
    return high
