"""Bounded classical validity for elementary formulas.

Two layers, cheap one first:

* `tautological` abstracts maximal non-propositional subformulas (atoms,
  equations, blind-quantified subformulas) into propositional letters --
  pairing each quantified subformula with its De Morgan dual -- and checks all
  assignments.

* `classical_valid` refutes the negation in a ground tableau: conjunctions
  expand, disjunctions branch, existentials get fresh constants, universals
  are instantiated fairly over the branch's term pool.  Equality is logical
  identity, handled by congruence closure over the branch's positive
  equations.  The search is budgeted; running out of budget means
  "not proved", never "valid".

Nonlogical letters (including the interpreted ones such as `leq`) are treated
as uninterpreted: arithmetic facts about them are not logical validities.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..formula_core import (
    BlindAll,
    BlindEx,
    Bot,
    ElemAtom,
    Eq,
    Formula,
    GenAtom,
    Not,
    ParAnd,
    ParOr,
    Prod,
    Succ,
    Sum,
    Term,
    Top,
    Var,
    Zero,
    ZERO,
    free_vars,
    is_elementary,
    iter_paths,
    iter_subterms,
    negate,
    print_formula,
    substitute_vars,
)

DEFAULT_TABLEAU_BUDGET = 20_000
_MAX_PROP_LETTERS = 18


class SearchBudgetExceeded(RuntimeError):
    pass


def _prop_keys(f: Formula, keys: dict[Formula, int]) -> None:
    """Register the propositional abstraction letters of f in `keys`, pairing
    each blind-quantified subformula with its negation."""
    if isinstance(f, (Top, Bot)):
        return
    if isinstance(f, Not):
        _prop_keys(f.f, keys)
        return
    if isinstance(f, (ParAnd, ParOr)):
        for c in f.children:
            _prop_keys(c, keys)
        return
    # atom, equation, or blind-quantified block: opaque
    if f not in keys and negate(f) not in keys:
        keys[f] = len(keys)


def _prop_eval(f: Formula, keys: dict[Formula, int], val: tuple[bool, ...]) -> bool:
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Not):
        return not _prop_eval(f.f, keys, val)
    if isinstance(f, ParAnd):
        return all(_prop_eval(c, keys, val) for c in f.children)
    if isinstance(f, ParOr):
        return any(_prop_eval(c, keys, val) for c in f.children)
    if f in keys:
        return val[keys[f]]
    return not val[keys[negate(f)]]


def tautological(f: Formula) -> bool:
    """Propositional validity after abstracting non-propositional parts."""
    keys: dict[Formula, int] = {}
    _prop_keys(f, keys)
    if len(keys) > _MAX_PROP_LETTERS:
        return False
    return all(
        _prop_eval(f, keys, val) for val in product((False, True), repeat=len(keys))
    )


def _term_key(t: Term):
    if isinstance(t, Var):
        return ("v", t.name)
    return (type(t).__name__,)


def _term_args(t: Term) -> tuple[Term, ...]:
    if hasattr(t, "args"):
        return t.args  # pragma: no cover - no n-ary heads currently
    out = []
    for attr in ("t", "u", "a", "b", "body"):
        if hasattr(t, attr):
            out.append(getattr(t, attr))
    return tuple(out)


class _Congruence:
    """Union-find with congruence over a fixed ground-term universe."""

    def __init__(self, terms: set[Term], equations: list[tuple[Term, Term]]):
        self.parent: dict[Term, Term] = {}
        universe = set()
        for t in terms:
            universe.update(iter_subterms(t))
        for t, u in equations:
            universe.update(iter_subterms(t))
            universe.update(iter_subterms(u))
        for t in universe:
            self.parent[t] = t
        for t, u in equations:
            self._union(t, u)
        self._close()

    def find(self, t: Term) -> Term:
        if t not in self.parent:
            self.parent[t] = t
        while self.parent[t] is not t:
            self.parent[t] = self.parent[self.parent[t]]
            t = self.parent[t]
        return t

    def _union(self, t: Term, u: Term) -> None:
        rt, ru = self.find(t), self.find(u)
        if rt is not ru:
            self.parent[rt] = ru

    def _close(self) -> None:
        items = list(self.parent)
        changed = True
        while changed:
            changed = False
            for i, t in enumerate(items):
                for u in items[i + 1 :]:
                    if self.find(t) is self.find(u):
                        continue
                    if _term_key(t) != _term_key(u):
                        continue
                    ta, ua = _term_args(t), _term_args(u)
                    if len(ta) == len(ua) and all(
                        self.find(a) is self.find(b) for a, b in zip(ta, ua)
                    ):
                        self._union(t, u)
                        changed = True

    def same(self, t: Term, u: Term) -> bool:
        return self.find(t) is self.find(u)


def _atom_sig(f: Formula):
    if isinstance(f, (ElemAtom, GenAtom)):
        return (type(f).__name__, f.letter, len(f.args)), f.args
    if isinstance(f, Eq):
        return ("=", 2), (f.t, f.u)
    return None, ()


def _branch_closed(literals: list[Formula]) -> bool:
    equations = []
    disequations = []
    pos: list[tuple] = []
    neg: list[tuple] = []
    terms: set[Term] = set()
    for lit in literals:
        body = lit.f if isinstance(lit, Not) else lit
        sig, args = _atom_sig(body)
        terms.update(args)
        if isinstance(body, Eq):
            (equations if not isinstance(lit, Not) else disequations).append(
                (body.t, body.u)
            )
        elif sig is not None:
            (neg if isinstance(lit, Not) else pos).append((sig, args))
    cc = _Congruence(terms, equations)
    for t, u in disequations:
        if cc.same(t, u):
            return True
    for sig_p, args_p in pos:
        for sig_n, args_n in neg:
            if sig_p == sig_n and all(
                cc.same(a, b) for a, b in zip(args_p, args_n)
            ):
                return True
    return False


class _Tableau:
    def __init__(self, budget: int):
        self.budget = budget
        self.fresh_count = 0

    def _tick(self) -> None:
        self.budget -= 1
        if self.budget <= 0:
            raise SearchBudgetExceeded

    def _fresh(self) -> Term:
        self.fresh_count += 1
        return Var(f"_c{self.fresh_count}")

    def closes(
        self,
        pending: list[Formula],
        literals: list[Formula],
        universals: list[tuple[BlindAll, set[Term]]],
    ) -> bool:
        while pending:
            self._tick()
            g = pending.pop()
            if isinstance(g, Bot):
                return True
            if isinstance(g, Top):
                continue
            if isinstance(g, ParAnd):
                pending.extend(g.children)
                continue
            if isinstance(g, ParOr):
                return all(
                    self.closes(
                        pending + [c],
                        list(literals),
                        [(u, set(used)) for u, used in universals],
                    )
                    for c in g.children
                )
            if isinstance(g, BlindEx):
                pending.append(substitute_vars(g.body, {g.var: self._fresh()}))
                continue
            if isinstance(g, BlindAll):
                universals.append((g, set()))
                continue
            literals.append(g)
            if _branch_closed(literals):
                return True
        # Saturation: feed universals every term in the branch's pool.
        pool: set[Term] = set()
        for lit in literals:
            body = lit.f if isinstance(lit, Not) else lit
            for arg in _atom_sig(body)[1]:
                pool.update(iter_subterms(arg))
        if not pool:
            pool.add(ZERO)
        for univ, used in universals:
            for t in sorted(pool, key=print_term_key):
                if t not in used:
                    used.add(t)
                    inst = substitute_vars(univ.body, {univ.var: t})
                    return self.closes([inst], literals, universals)
        return False


def print_term_key(t: Term) -> str:
    from ..formula_core import print_term

    return print_term(t)


def classical_valid(f: Formula, budget: int = DEFAULT_TABLEAU_BUDGET) -> bool:
    """Bounded first-order validity with equality; False means "not proved
    within budget", not "invalid"."""
    if not is_elementary(f):
        raise ValueError(
            f"classical validity applies to elementary formulas: {print_formula(f)}"
        )
    if tautological(f):
        return True
    try:
        return _Tableau(budget).closes([negate(f)], [], [])
    except SearchBudgetExceeded:
        return False


# -- finite countermodels ---------------------------------------------------

VALID = "valid"
INVALID = "invalid"
EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class Countermodel:
    """A falsifying finite interpretation over the domain {0..size-1} with the
    arithmetic function letters read modulo the domain size."""

    size: int
    variables: dict[str, int]
    tables: dict[tuple[str, int], frozenset[tuple[int, ...]]]

    def __str__(self) -> str:
        vs = ", ".join(f"{x}={v}" for x, v in sorted(self.variables.items()))
        ts = "; ".join(
            f"{letter}/{arity} true on {sorted(rows)}"
            for (letter, arity), rows in sorted(self.tables.items())
        )
        return f"domain Z_{self.size}: {vs or 'no free variables'}; {ts or 'no letters'}"


@dataclass(frozen=True)
class ClassicalResult:
    status: str  # VALID, INVALID or EXHAUSTED
    countermodel: Countermodel | None = None


def _eval_term_mod(t: Term, env: dict[str, int], n: int) -> int:
    if isinstance(t, Var):
        return env.get(t.name, 0)
    if isinstance(t, Zero):
        return 0
    if isinstance(t, Succ):
        return (_eval_term_mod(t.t, env, n) + 1) % n
    if isinstance(t, Sum):
        return (_eval_term_mod(t.t, env, n) + _eval_term_mod(t.u, env, n)) % n
    if isinstance(t, Prod):
        return (_eval_term_mod(t.t, env, n) * _eval_term_mod(t.u, env, n)) % n
    raise TypeError(f"unknown term {t!r}")


def _eval_mod(f: Formula, env: dict[str, int], tables, n: int) -> bool:
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Not):
        return not _eval_mod(f.f, env, tables, n)
    if isinstance(f, ParAnd):
        return all(_eval_mod(c, env, tables, n) for c in f.children)
    if isinstance(f, ParOr):
        return any(_eval_mod(c, env, tables, n) for c in f.children)
    if isinstance(f, Eq):
        return _eval_term_mod(f.t, env, n) == _eval_term_mod(f.u, env, n)
    if isinstance(f, (ElemAtom, GenAtom)):
        row = tuple(_eval_term_mod(a, env, n) for a in f.args)
        return row in tables[(f.letter, len(f.args))]
    if isinstance(f, BlindAll):
        return all(
            _eval_mod(f.body, {**env, f.var: v}, tables, n) for v in range(n)
        )
    if isinstance(f, BlindEx):
        return any(
            _eval_mod(f.body, {**env, f.var: v}, tables, n) for v in range(n)
        )
    raise TypeError(f"not an elementary formula: {f!r}")


def find_countermodel(
    f: Formula, max_domain: int = 3, budget: int = DEFAULT_TABLEAU_BUDGET
) -> Countermodel | None:
    """Search domains Z_1..Z_max_domain for a falsifying interpretation.

    All nonlogical letters (interpreted ones included) range over arbitrary
    truth tables, matching `classical_valid`'s uninterpreted reading."""
    letters = sorted(
        {
            (g.letter, len(g.args))
            for _, g in iter_paths(f)
            if isinstance(g, (ElemAtom, GenAtom))
        }
    )
    xs = sorted(free_vars(f))
    for n in range(1, max_domain + 1):
        rows = {sig: list(product(range(n), repeat=sig[1])) for sig in letters}
        table_space = [
            [frozenset(r for r, on in zip(rows[sig], bits) if on)
             for bits in product((False, True), repeat=len(rows[sig]))]
            for sig in letters
        ]
        for choice in product(*table_space):
            tables = dict(zip(letters, choice))
            for vals in product(range(n), repeat=len(xs)):
                budget -= 1
                if budget <= 0:
                    return None
                env = dict(zip(xs, vals))
                if not _eval_mod(f, env, tables, n):
                    return Countermodel(n, env, tables)
    return None


def decide_classical(
    f: Formula,
    budget: int = DEFAULT_TABLEAU_BUDGET,
    max_domain: int = 3,
) -> ClassicalResult:
    """Three-way classical verdict: proved valid, refuted by a finite
    countermodel, or honestly exhausted."""
    if classical_valid(f, budget):
        return ClassicalResult(VALID)
    cm = find_countermodel(f, max_domain, budget)
    if cm is not None:
        return ClassicalResult(INVALID, cm)
    return ClassicalResult(EXHAUSTED)
