"""A checker and evaluator for the SMT-LIB 2 subset the sentence exporter writes.

The accepted grammar is documented in ``docs/sentence-grammar.md``.  The
evaluator substitutes an exact rational witness into every assertion; it
is how the tests confirm satisfiability without an external solver.
"""

from __future__ import annotations

import re
from fractions import Fraction

_TOKEN = re.compile(r"\s+|;[^\n]*|(\()|(\))|([^\s();]+)")
_DECIMAL = re.compile(r"(0|[1-9]\d*)\.\d+")
_NUMERAL = re.compile(r"0|[1-9]\d*")
_SYMBOL = re.compile(r"[A-Za-z~!@$%^&*_+=<>.?/\-][A-Za-z0-9~!@$%^&*_+=<>.?/\-]*")

ARITH = {"+", "-", "*", "/"}
COMPARE = {"=", "<", "<=", ">", ">="}
CONNECTIVES = {"and", "or", "not", "=>"}
RESERVED = ARITH | COMPARE | CONNECTIVES | {"true", "false"}


class SmtSyntaxError(ValueError):
    pass


def tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SmtSyntaxError(f"unexpected character at offset {pos}")
        pos = m.end()
        tok = m.group(1) or m.group(2) or m.group(3)
        if tok:
            out.append(tok)
    return out


def parse_sexprs(text: str) -> list:
    """Nested Python lists of atoms."""
    stack = [[]]
    for tok in tokenize(text):
        if tok == "(":
            stack.append([])
        elif tok == ")":
            if len(stack) == 1:
                raise SmtSyntaxError("unbalanced ')'")
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(tok)
    if len(stack) != 1:
        raise SmtSyntaxError("missing ')'")
    return stack[0]


class Script:
    def __init__(self, logic, variables, assertions, check_sat):
        self.logic = logic
        self.variables = variables
        self.assertions = assertions
        self.check_sat = check_sat


def _sort_of(term, env) -> str:
    """'Real' or 'Bool'; raises on anything outside the grammar."""
    if isinstance(term, str):
        if _DECIMAL.fullmatch(term) or _NUMERAL.fullmatch(term):
            return "Real"
        if term in ("true", "false"):
            return "Bool"
        if term in env:
            return env[term]
        raise SmtSyntaxError(f"undeclared symbol {term!r}")
    if not term or not isinstance(term[0], str):
        raise SmtSyntaxError("empty or malformed application")
    head, args = term[0], term[1:]
    sorts = [_sort_of(a, env) for a in args]
    if head in ARITH:
        if not args or any(s != "Real" for s in sorts):
            raise SmtSyntaxError(f"{head} expects Real arguments")
        if head in ("*", "/", "+") and len(args) < 2:
            raise SmtSyntaxError(f"{head} expects at least two arguments")
        return "Real"
    if head in COMPARE:
        if len(args) < 2 or len(set(sorts)) != 1 or (head != "=" and sorts[0] != "Real"):
            raise SmtSyntaxError(f"ill-sorted {head}")
        return "Bool"
    if head in CONNECTIVES:
        if any(s != "Bool" for s in sorts):
            raise SmtSyntaxError(f"{head} expects Bool arguments")
        if head == "not" and len(args) != 1 or head == "=>" and len(args) < 2 or not args:
            raise SmtSyntaxError(f"wrong arity for {head}")
        return "Bool"
    raise SmtSyntaxError(f"unknown function {head!r}")


def check_script(text: str) -> Script:
    """Parse and sort-check a script; raises :class:`SmtSyntaxError` on any violation."""
    logic = None
    env = {}
    order = []
    assertions = []
    check_sat = False
    for cmd in parse_sexprs(text):
        if not isinstance(cmd, list) or not cmd or not isinstance(cmd[0], str):
            raise SmtSyntaxError("top level must be a sequence of commands")
        name, args = cmd[0], cmd[1:]
        if check_sat and name not in ("exit", "get-model", "get-value"):
            raise SmtSyntaxError(f"{name} after check-sat")
        if name == "set-logic":
            if logic is not None or args != ["QF_NRA"]:
                raise SmtSyntaxError("expected a single (set-logic QF_NRA)")
            logic = "QF_NRA"
        elif name in ("set-info", "set-option"):
            if not args or not args[0].startswith(":"):
                raise SmtSyntaxError(f"malformed {name}")
        elif name in ("declare-fun", "declare-const"):
            if logic is None:
                raise SmtSyntaxError("declaration before set-logic")
            if name == "declare-fun":
                ok = len(args) == 3 and args[1] == [] and args[2] == "Real"
            else:
                ok = len(args) == 2 and args[1] == "Real"
            sym = args[0] if args else None
            if not ok or not isinstance(sym, str) or not _SYMBOL.fullmatch(sym) or sym in RESERVED:
                raise SmtSyntaxError(f"malformed declaration {cmd!r}")
            if sym in env:
                raise SmtSyntaxError(f"{sym} declared twice")
            env[sym] = "Real"
            order.append(sym)
        elif name == "assert":
            if logic is None:
                raise SmtSyntaxError("assert before set-logic")
            if len(args) != 1 or _sort_of(args[0], env) != "Bool":
                raise SmtSyntaxError("assert needs one Bool term")
            assertions.append(args[0])
        elif name == "check-sat":
            if args:
                raise SmtSyntaxError("check-sat takes no arguments")
            check_sat = True
        elif name in ("exit", "get-model", "get-value"):
            pass
        else:
            raise SmtSyntaxError(f"unsupported command {name!r}")
    if logic is None:
        raise SmtSyntaxError("missing set-logic")
    if not check_sat:
        raise SmtSyntaxError("missing check-sat")
    return Script(logic, order, assertions, check_sat)


def evaluate(term, env):
    """Evaluate a sort-checked term with exact rationals."""
    if isinstance(term, str):
        if term == "true":
            return True
        if term == "false":
            return False
        if term in env:
            return Fraction(env[term])
        return Fraction(term)
    head, args = term[0], term[1:]
    if head == "and":
        return all(evaluate(a, env) for a in args)
    if head == "or":
        return any(evaluate(a, env) for a in args)
    if head == "not":
        return not evaluate(args[0], env)
    if head == "=>":
        vals = [evaluate(a, env) for a in args]
        out = vals[-1]
        for v in reversed(vals[:-1]):
            out = (not v) or out
        return out
    vals = [evaluate(a, env) for a in args]
    if head == "+":
        return sum(vals, Fraction(0))
    if head == "-":
        if len(vals) == 1:
            return -vals[0]
        out = vals[0]
        for v in vals[1:]:
            out -= v
        return out
    if head == "*":
        out = Fraction(1)
        for v in vals:
            out *= v
        return out
    if head == "/":
        out = vals[0]
        for v in vals[1:]:
            out /= v
        return out
    pairs = list(zip(vals, vals[1:]))
    if head == "=":
        return all(a == b for a, b in pairs)
    if head == "<":
        return all(a < b for a, b in pairs)
    if head == "<=":
        return all(a <= b for a, b in pairs)
    if head == ">":
        return all(a > b for a, b in pairs)
    if head == ">=":
        return all(a >= b for a, b in pairs)
    raise SmtSyntaxError(f"unknown function {head!r}")


def satisfied_by(script: Script | str, witness: dict) -> bool:
    """True iff every assertion holds under ``witness`` (symbol -> rational)."""
    if isinstance(script, str):
        script = check_script(script)
    missing = [v for v in script.variables if v not in witness]
    if missing:
        raise ValueError(f"witness misses {missing}")
    return all(evaluate(a, witness) for a in script.assertions)
