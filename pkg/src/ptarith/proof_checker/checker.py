"""Step-by-step verification of proof scripts.

Every rule application is re-derived: the checker reconstructs the formula (or
the required premise shapes) the rule dictates from the step's arguments and
compares syntactically.  Side conditions are checked exactly as stated and a
rejection names the violated condition.  Axiom steps tagged ``pa`` are not
derived; they are recorded in the report as trusted obligations.
"""

from __future__ import annotations

from collections import Counter

from ..formula_core import (
    BB,
    BOUND_VAR,
    BlindAll,
    BlindEx,
    ChoAll,
    ChoAnd,
    ChoEx,
    ChoOr,
    ElemAtom,
    Eq,
    Formula,
    GenAtom,
    INTERPRETED,
    Not,
    OccPath,
    ParAnd,
    ParOr,
    Prod,
    Substitution,
    SubstitutionError,
    Succ,
    Sum,
    Var,
    ZERO,
    all_vars,
    apply_substitution,
    bin0,
    bin1,
    bound_vars,
    check_free_bound_disjoint,
    children,
    elem_letters,
    elementarize,
    free_vars,
    general_letters,
    implies,
    is_bound_term,
    is_elementary,
    is_surface,
    negate,
    parse_substitution,
    parse_term,
    print_formula,
    replace_at,
    subformula_at,
    substitute_vars,
    surface_choice_occurrences,
)
from ..proof_search import DEFAULT_TABLEAU_BUDGET, classical_valid, tautological
from .report import (
    CheckReport,
    Obligation,
    VERDICT_ACCEPTED,
    VERDICT_REJECTED,
)
from .script import ProofScript, ProofStep


class Violation(ValueError):
    """A named side-condition failure at a single step."""


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise Violation(message)


def _parse_path(token: str) -> OccPath:
    if token == "-":
        return ()
    try:
        return tuple(int(seg) for seg in token.split("."))
    except ValueError:
        raise Violation(f"malformed occurrence path {token!r}") from None


def _at(f: Formula, path: OccPath) -> Formula:
    try:
        return subformula_at(f, path)
    except (IndexError, TypeError):
        raise Violation(f"no subformula at path {'.'.join(map(str, path)) or '-'}") from None


def _split_implication(f: Formula) -> tuple[Formula, Formula]:
    _require(
        isinstance(f, ParOr) and len(f.children) == 2,
        "formula is not implication-shaped (2-ary parallel disjunction)",
    )
    return negate(f.children[0]), f.children[1]


def _disjunctive_context(f: Formula, path: OccPath) -> bool:
    """True when every operator above `path` is a parallel disjunction."""
    node = f
    for i in path:
        if not isinstance(node, ParOr):
            return False
        node = node.children[i]
    return True


def _surface_context(f: Formula, path: OccPath) -> bool:
    """True when no operator above `path` is a choice operator.

    Parallel connectives and blind quantifiers are transparent; choice
    operators are not, since a subgame below one may be discarded before
    it is ever reached.
    """
    node = f
    for i in path:
        if isinstance(node, (ChoAnd, ChoOr, ChoAll, ChoEx)):
            return False
        kids = children(node)
        if i >= len(kids):
            return False
        node = kids[i]
    return True


def _leq(t, u) -> Formula:
    return ElemAtom("leq", (t, u))


def _lt(t, u) -> Formula:
    return Not(_leq(u, t))


def _len_le_bound(t) -> Formula:
    return ElemAtom("len", (t, BB))


# ---------------------------------------------------------------------------
# Axiom schemata
# ---------------------------------------------------------------------------


def _nonbound_var(t, what: str) -> str:
    _require(isinstance(t, Var), f"{what} must be a variable")
    return t.name


def _check_peano(k: int, f: Formula) -> None:
    if k == 1:
        _require(isinstance(f, BlindAll), "axiom 1 is a blind-universal sentence")
        x = f.var
        _require(x != BOUND_VAR, "quantified variable may not be the bound variable")
        _require(
            f == BlindAll(x, Not(Eq(ZERO, Succ(Var(x))))),
            "formula does not match the zero-is-no-successor schema",
        )
        return
    if k in (2, 4, 6):
        _require(
            isinstance(f, BlindAll) and isinstance(f.body, BlindAll),
            f"axiom {k} is a doubly blind-universal sentence",
        )
        x, y = f.var, f.body.var
        _require(
            x != y and BOUND_VAR not in (x, y),
            "quantified variables must be distinct and not the bound variable",
        )
        vx, vy = Var(x), Var(y)
        if k == 2:
            body = implies(Eq(Succ(vx), Succ(vy)), Eq(vx, vy))
            name = "successor-injectivity"
        elif k == 4:
            body = Eq(Sum(vx, Succ(vy)), Succ(Sum(vx, vy)))
            name = "sum-recursion"
        else:
            body = Eq(Prod(vx, Succ(vy)), Sum(Prod(vx, vy), vx))
            name = "product-recursion"
        _require(f == BlindAll(x, BlindAll(y, body)), f"formula does not match the {name} schema")
        return
    if k in (3, 5):
        _require(isinstance(f, BlindAll), f"axiom {k} is a blind-universal sentence")
        x = f.var
        _require(x != BOUND_VAR, "quantified variable may not be the bound variable")
        vx = Var(x)
        body = Eq(Sum(vx, ZERO), vx) if k == 3 else Eq(Prod(vx, ZERO), ZERO)
        name = "sum-zero" if k == 3 else "product-zero"
        _require(f == BlindAll(x, body), f"formula does not match the {name} schema")
        return
    # k == 7: induction over any elementary F(x), closed under its free variables
    node = f
    outer: list[str] = []
    while isinstance(node, BlindAll) and not isinstance(node.body, ParOr):
        outer.append(node.var)
        node = node.body
    if isinstance(node, BlindAll):
        # The walk stops one quantifier early when the implication itself is
        # the body; that quantifier belongs to the closure prefix too.
        outer.append(node.var)
        node = node.body
    _require(isinstance(node, ParOr), "axiom 7 core must be an implication")
    ant, cons = _split_implication(node)
    _require(
        isinstance(cons, BlindAll),
        "axiom 7 consequent must be a blind-universal formula",
    )
    x, fx = cons.var, cons.body
    _require(x != BOUND_VAR, "induction variable may not be the bound variable")
    _require(is_elementary(fx), "axiom 7 requires an elementary induction formula")
    step_body = implies(fx, substitute_vars(fx, {x: Succ(Var(x))}))
    expected_core = implies(
        ParAnd((substitute_vars(fx, {x: ZERO}), BlindAll(x, step_body))), cons
    )
    _require(node == expected_core, "formula does not match the induction schema")
    _require(
        len(set(outer)) == len(outer) and BOUND_VAR not in outer,
        "closure variables must be distinct and not the bound variable",
    )
    _require(
        set(outer) == free_vars(fx) - {x, BOUND_VAR},
        "axiom 7 must be closed under exactly the free variables of the induction formula",
    )


def _check_extra_peano(k: int, f: Formula) -> None:
    if k == 8:
        _require(isinstance(f, ChoEx), "axiom 8 is a choice-existential formula")
        x = f.var
        _require(f == ChoEx(x, Eq(Var(x), ZERO)), "formula does not match the name-zero schema")
        return
    if k == 9:
        _require(
            isinstance(f, ChoOr)
            and len(f.children) == 2
            and isinstance(f.children[0], Eq)
            and isinstance(f.children[0].t, Var),
            "axiom 9 is a two-way choice on equality with zero",
        )
        s = f.children[0].t.name
        _require(
            f == ChoOr((Eq(Var(s), ZERO), Not(Eq(Var(s), ZERO)))),
            "formula does not match the zero-test schema",
        )
        return
    if k in (10, 11):
        ant, cons = _split_implication(f)
        _require(isinstance(cons, ChoEx), f"axiom {k} consequent must be choice-existential")
        x = cons.var
        body = cons.body
        _require(
            isinstance(body, Eq) and isinstance(body.t, Var) and body.t.name == x,
            f"axiom {k} consequent must name the successor value",
        )
        target = body.u
        if k == 10:
            _require(isinstance(target, Succ), "axiom 10 names a unary successor")
            s = _nonbound_var(target.t, "successor argument")
        else:
            _require(
                isinstance(target, Prod) and target.t == Succ(Succ(ZERO)),
                "axiom 11 names a binary 0-successor",
            )
            s = _nonbound_var(target.u, "doubling argument")
        _require(x not in (BOUND_VAR, s), "choice variable must differ from the bound variable and s")
        expected = implies(_len_le_bound(target), ChoEx(x, Eq(Var(x), target)))
        _require(f == expected, f"formula does not match the axiom {k} schema")
        return
    if k == 12:
        _require(isinstance(f, ChoEx), "axiom 12 is a choice-existential formula")
        x = f.var
        body = f.body
        _require(
            isinstance(body, ChoOr)
            and len(body.children) == 2
            and isinstance(body.children[0], Eq)
            and isinstance(body.children[0].t, Var),
            "axiom 12 body is a two-way choice of parity",
        )
        s = body.children[0].t.name
        _require(x not in (BOUND_VAR, s), "choice variable must differ from the bound variable and s")
        expected = ChoEx(
            x, ChoOr((Eq(Var(s), bin0(Var(x))), Eq(Var(s), bin1(Var(x)))))
        )
        _require(f == expected, "formula does not match the binary-predecessor schema")
        return
    if k == 13:
        _require(
            isinstance(f, ElemAtom)
            and f.letter == "len"
            and len(f.args) == 2
            and isinstance(f.args[0], Var)
            and f.args[1] == BB,
            "formula does not match the size-bound schema",
        )
        return
    raise Violation(f"unknown extra-Peano axiom index {k}")


# ---------------------------------------------------------------------------
# The checker
# ---------------------------------------------------------------------------

_PTA_ONLY = {
    "ax-peano-1",
    "ax-peano-2",
    "ax-peano-3",
    "ax-peano-4",
    "ax-peano-5",
    "ax-peano-6",
    "ax-peano-7",
    "ax-x8",
    "ax-x9",
    "ax-x10",
    "ax-x11",
    "ax-x12",
    "ax-x13",
    "pti",
    "wpti",
    "wpti+",
    "bsi",
    "bsi+",
    "pti+",
    "bpi",
    "ind18a",
    "ind18b",
}


class _Checker:
    def __init__(
        self,
        imports: dict[str, ProofScript],
        fol_budget: int,
        _stack: frozenset[str] = frozenset(),
        _cache: dict[str, CheckReport] | None = None,
    ):
        self.imports = imports
        self.fol_budget = fol_budget
        self.stack = _stack
        self.cache = _cache if _cache is not None else {}

    # -- script-level ------------------------------------------------------

    def check(self, script: ProofScript) -> CheckReport:
        obligations: list[Obligation] = []
        rules = Counter()
        for step in script.steps:
            try:
                self._check_vocabulary(script.system, step.formula)
                self._check_step(script, step, obligations)
            except Violation as err:
                return CheckReport(
                    script_name=script.name,
                    verdict=VERDICT_REJECTED,
                    failed_step=step.id,
                    reason=str(err),
                    steps=len(script.steps),
                    rules_used=dict(rules),
                )
            rules[step.rule] += 1
        return CheckReport(
            script_name=script.name,
            verdict=VERDICT_ACCEPTED,
            obligations=tuple(obligations),
            steps=len(script.steps),
            rules_used=dict(rules),
        )

    def _import(self, name: str) -> ProofScript:
        if name not in self.imports:
            raise Violation(f"referenced script {name!r} is not imported")
        if name in self.stack:
            raise Violation(f"import cycle through {name!r}")
        script = self.imports[name]
        if name not in self.cache:
            sub = _Checker(
                self.imports, self.fol_budget, self.stack | {name}, self.cache
            )
            self.cache[name] = sub.check(script)
        report = self.cache[name]
        if not report.accepted:
            raise Violation(
                f"imported script {name!r} does not check "
                f"(step {report.failed_step}: {report.reason})"
            )
        return script

    @staticmethod
    def _check_vocabulary(system: str, f: Formula) -> None:
        problem = check_free_bound_disjoint(f)
        _require(problem is None, f"ill-formed formula: {problem}")
        if system in ("CL3", "PTA"):
            _require(
                not general_letters(f),
                "general letters are not part of this system's language",
            )
        if system == "PTA":
            strays = elem_letters(f) - set(INTERPRETED)
            _require(
                not strays,
                f"nonlogical predicate letters {sorted(strays)} are outside the arithmetic vocabulary",
            )

    # -- step dispatch -----------------------------------------------------

    def _check_step(
        self, script: ProofScript, step: ProofStep, obligations: list[Obligation]
    ) -> None:
        rule = step.rule
        if rule in _PTA_ONLY:
            _require(script.system == "PTA", f"rule {rule} is arithmetic-only")
        if rule == "match":
            _require(script.system == "CL4", "the match rule requires general letters")

        def premise(token: str) -> Formula:
            try:
                pid = int(token)
            except ValueError:
                raise Violation(f"expected a premise id, got {token!r}") from None
            _require(pid < step.id, f"premise {pid} does not precede step {step.id}")
            _require(pid in script.by_id, f"premise {pid} does not exist")
            return script.by_id[pid].formula

        handler = getattr(self, "_rule_" + rule.replace("-", "_").replace("+", "_plus"))
        handler(script, step, premise, obligations)

    # -- axioms ------------------------------------------------------------

    def _rule_ax_log(self, script, step, premise, obligations) -> None:
        _require(len(step.args) == 1, "ax-log takes exactly one tag: taut, fol or pa")
        tag = step.args[0]
        f = step.formula
        _require(is_elementary(f), "logical axioms must be elementary")
        if tag == "taut":
            _require(tautological(f), "formula is not a propositional tautology")
        elif tag == "fol":
            _require(
                classical_valid(f, self.fol_budget),
                "formula was not validated by the bounded first-order prover",
            )
        elif tag == "pa":
            _require(
                script.system == "PTA",
                "arithmetic trust is only available in the arithmetic system",
            )
            obligations.append(Obligation(step.id, f))
        else:
            raise Violation(f"unknown axiom tag {tag!r}")

    def _rule_ax_peano_1(self, *a):
        _check_peano(1, a[1].formula)

    def _rule_ax_peano_2(self, *a):
        _check_peano(2, a[1].formula)

    def _rule_ax_peano_3(self, *a):
        _check_peano(3, a[1].formula)

    def _rule_ax_peano_4(self, *a):
        _check_peano(4, a[1].formula)

    def _rule_ax_peano_5(self, *a):
        _check_peano(5, a[1].formula)

    def _rule_ax_peano_6(self, *a):
        _check_peano(6, a[1].formula)

    def _rule_ax_peano_7(self, *a):
        _check_peano(7, a[1].formula)

    def _rule_ax_x8(self, *a):
        _check_extra_peano(8, a[1].formula)

    def _rule_ax_x9(self, *a):
        _check_extra_peano(9, a[1].formula)

    def _rule_ax_x10(self, *a):
        _check_extra_peano(10, a[1].formula)

    def _rule_ax_x11(self, *a):
        _check_extra_peano(11, a[1].formula)

    def _rule_ax_x12(self, *a):
        _check_extra_peano(12, a[1].formula)

    def _rule_ax_x13(self, *a):
        _check_extra_peano(13, a[1].formula)

    # -- primitive logical rules -------------------------------------------

    def _rule_cor_choose(self, script, step, premise, obligations) -> None:
        _require(len(step.args) == 3, "usage: cor-choose <premise> <path> <i>")
        p = premise(step.args[0])
        path = _parse_path(step.args[1])
        try:
            i = int(step.args[2])
        except ValueError:
            raise Violation("choice index must be an integer") from None
        c = step.formula
        _require(is_surface(c, path), "chosen occurrence is not a surface occurrence")
        node = _at(c, path)
        _require(isinstance(node, ChoOr), "path does not address a choice disjunction")
        _require(len(node.children) >= 2, "choice disjunction must have at least two options")
        _require(0 <= i < len(node.children), f"choice index {i} out of range")
        expected = replace_at(c, path, node.children[i])
        _require(
            p == expected,
            f"premise is not the conclusion with option {i} chosen "
            f"(expected {print_formula(expected)})",
        )

    def _rule_cex_choose(self, script, step, premise, obligations) -> None:
        # Several witnesses peel nested choice-existentials at the same
        # position, one application per witness.
        _require(len(step.args) >= 3, "usage: cex-choose <premise> <path> <var>...")
        p = premise(step.args[0])
        path = _parse_path(step.args[1])
        c = step.formula
        _require(is_surface(c, path), "chosen occurrence is not a surface occurrence")
        expected = c
        for s in step.args[2:]:
            node = _at(expected, path)
            _require(
                isinstance(node, ChoEx), "path does not address a choice-existential"
            )
            _require(
                node.var != BOUND_VAR,
                "the quantified variable may not be the bound variable",
            )
            _require(
                s not in bound_vars(p),
                f"witness variable {s!r} has bound occurrences in the premise",
            )
            expected = replace_at(
                expected, path, substitute_vars(node.body, {node.var: Var(s)})
            )
        witnesses = ", ".join(repr(s) for s in step.args[2:])
        _require(
            p == expected,
            f"premise is not the conclusion instantiated at {witnesses} "
            f"(expected {print_formula(expected)})",
        )

    def _rule_wait(self, script, step, premise, obligations) -> None:
        _require(len(step.args) >= 1, "usage: wait <special> [<ordinary>...]")
        c = step.formula
        special = premise(step.args[0])
        expected_special = elementarize(c, cl4=(script.system == "CL4"))
        _require(
            special == expected_special,
            f"special premise must be the elementarization "
            f"{print_formula(expected_special)}",
        )
        ordinaries = [premise(tok) for tok in step.args[1:]]
        used = [False] * len(ordinaries)
        for path, node in surface_choice_occurrences(c):
            if isinstance(node, ChoAnd):
                for i, child in enumerate(node.children):
                    want = replace_at(c, path, child)
                    for j, r in enumerate(ordinaries):
                        if r == want:
                            used[j] = True
                            break
                    else:
                        raise Violation(
                            f"missing ordinary premise for component {i} of the "
                            f"choice conjunction at {'.'.join(map(str, path)) or '-'}"
                        )
            elif isinstance(node, ChoAll):
                matched = False
                for j, r in enumerate(ordinaries):
                    if self._call_premise_matches(c, path, node, r):
                        used[j] = True
                        matched = True
                if not matched:
                    raise Violation(
                        "missing ordinary premise with a fresh variable for the "
                        f"choice-universal at {'.'.join(map(str, path)) or '-'}"
                    )
        for j, flag in enumerate(used):
            _require(
                flag,
                f"premise {step.args[1 + j]} is not an ordinary premise of this conclusion",
            )

    @staticmethod
    def _call_premise_matches(c: Formula, path: OccPath, node: ChoAll, r: Formula) -> bool:
        x, h = node.var, node.body
        taken = all_vars(c)
        if x not in free_vars(h):
            return r == replace_at(c, path, h)
        for s in sorted(free_vars(r)):
            if s == BOUND_VAR or s in taken:
                continue
            if r == replace_at(c, path, substitute_vars(h, {x: Var(s)})):
                return True
        return False

    def _rule_mp(self, script, step, premise, obligations) -> None:
        _require(len(step.args) >= 1, "usage: mp <antecedents...> <implication>")
        c = step.formula
        formulas = [premise(tok) for tok in step.args]
        if len(formulas) == 1:
            _require(
                formulas[0] == c,
                "degenerate modus ponens requires the premise to equal the conclusion",
            )
            return
        *antecedents, impl = formulas
        body = antecedents[0] if len(antecedents) == 1 else ParAnd(tuple(antecedents))
        expected = implies(body, c)
        _require(
            impl == expected,
            f"implication premise must be {print_formula(expected)}",
        )

    def _rule_match(self, script, step, premise, obligations) -> None:
        _require(len(step.args) == 4, "usage: match <premise> <pospath> <negpath> <letter>")
        p = premise(step.args[0])
        pos_path = _parse_path(step.args[1])
        neg_path = _parse_path(step.args[2])
        q = step.args[3]
        c = step.formula
        _require(pos_path != neg_path, "the two matched occurrences must be distinct")
        _require(
            is_surface(c, pos_path) and is_surface(c, neg_path),
            "matched occurrences must be surface occurrences",
        )
        pos = _at(c, pos_path)
        neg = _at(c, neg_path)
        _require(isinstance(pos, GenAtom), "positive occurrence must be a general atom")
        _require(
            isinstance(neg, Not) and isinstance(neg.f, GenAtom),
            "negative occurrence must be a negated general atom",
        )
        _require(
            pos.letter == neg.f.letter and len(pos.args) == len(neg.f.args),
            "matched literals must carry the same general letter",
        )
        _require(q[0].islower(), "match letter must be elementary (lowercase)")
        _require(q not in INTERPRETED, f"match letter {q!r} is interpreted")
        _require(
            q not in elem_letters(c),
            f"match letter {q!r} already occurs in the conclusion",
        )
        expected = replace_at(c, pos_path, ElemAtom(q, pos.args))
        expected = replace_at(expected, neg_path, Not(ElemAtom(q, neg.f.args)))
        _require(
            p == expected,
            f"premise must be the conclusion with the matched literals renamed "
            f"(expected {print_formula(expected)})",
        )

    # -- instantiation and lemma reuse -------------------------------------

    def _rule_cl4inst(self, script, step, premise, obligations) -> None:
        _require(len(step.args) == 1, "usage: cl4inst <proofref> sub={...}")
        ref = self._import(step.args[0])
        _require(
            ref.system == "CL4",
            f"instantiation source {ref.name!r} is not a general-letter proof",
        )
        try:
            sigma = parse_substitution(step.kwargs.get("sub", ""))
        except ValueError as err:
            raise Violation(f"bad substitution: {err}") from None
        scheme = ref.theorem
        missing = sorted(general_letters(scheme) - set(sigma.general))
        _require(not missing, f"substitution omits general letters {missing}")
        missing_e = sorted(
            (elem_letters(scheme) - set(INTERPRETED)) - set(sigma.elementary)
        )
        _require(not missing_e, f"substitution omits elementary letters {missing_e}")
        try:
            instance = apply_substitution(scheme, sigma)
        except SubstitutionError as err:
            raise Violation(f"substitution does not apply: {err}") from None
        _require(
            instance == step.formula,
            f"formula is not the named instance (expected {print_formula(instance)})",
        )

    def _rule_lemma(self, script, step, premise, obligations) -> None:
        _require(
            len(step.args) == 1,
            "usage: lemma <name> [ren={x := y; ...}] [close={s := x; ...}]",
        )
        ref = self._import(step.args[0])
        _require(
            ref.system == script.system,
            f"lemma {ref.name!r} belongs to system {ref.system}, not {script.system}",
        )
        thm = ref.theorem
        ren_text = step.kwargs.get("ren", "")
        if ren_text:
            mapping: dict[str, Var] = {}
            for entry in ren_text.split(";"):
                entry = entry.strip()
                if not entry:
                    continue
                parts = [p.strip() for p in entry.split(":=")]
                _require(
                    len(parts) == 2 and parts[0].isidentifier() and parts[1].isidentifier(),
                    "lemma renaming entries must map variables to variables",
                )
                _require(
                    parts[0] != BOUND_VAR and parts[1] != BOUND_VAR,
                    "the bound variable cannot be renamed",
                )
                mapping[parts[0]] = Var(parts[1])
            thm = substitute_vars(thm, mapping)
        close_text = step.kwargs.get("close", "")
        if close_text:
            # A theorem with a free variable holds for every value of it, so
            # its choice-universal closure may be cited directly; each entry
            # generalizes one free variable, applied left to right (outward).
            for entry in close_text.split(";"):
                entry = entry.strip()
                if not entry:
                    continue
                parts = [p.strip() for p in entry.split(":=")]
                _require(
                    len(parts) == 2 and parts[0].isidentifier() and parts[1].isidentifier(),
                    "lemma closure entries must map a free variable to a bound one",
                )
                s, x = parts
                _require(s != BOUND_VAR, "the bound variable cannot be generalized")
                _require(
                    x != BOUND_VAR,
                    "the quantified variable may not be the bound variable",
                )
                _require(
                    s in free_vars(thm),
                    f"closure variable {s!r} is not free in the cited theorem",
                )
                _require(
                    x not in all_vars(thm),
                    f"closure binder {x!r} already occurs in the cited theorem",
                )
                thm = ChoAll(x, substitute_vars(thm, {s: Var(x)}))
        _require(
            thm == step.formula,
            f"formula differs from the cited theorem (expected {print_formula(thm)})",
        )

    # -- admissible logical rules ------------------------------------------

    def _rule_tr(self, script, step, premise, obligations) -> None:
        _require(len(step.args) == 2, "usage: tr <left> <right>")
        p1 = premise(step.args[0])
        p2 = premise(step.args[1])
        _require(
            isinstance(p1, ParOr) and len(p1.children) == 2,
            "left premise is not implication-shaped",
        )
        _require(
            isinstance(p2, ParOr) and len(p2.children) == 2,
            "right premise is not implication-shaped",
        )
        _require(
            p2.children[0] == negate(p1.children[1]),
            "premises do not share the middle formula",
        )
        expected = ParOr((p1.children[0], p2.children[1]))
        _require(
            step.formula == expected,
            f"conclusion must chain the premises (expected {print_formula(expected)})",
        )

    def _rule_weaken(self, script, step, premise, obligations) -> None:
        _require(len(step.args) == 2, "usage: weaken <premise> <path-of-new-disjunct>")
        p = premise(step.args[0])
        path = _parse_path(step.args[1])
        _require(len(path) >= 1, "path must address a disjunct, not the whole formula")
        c = step.formula
        parent_path = path[:-1]
        _require(
            _disjunctive_context(c, parent_path),
            "weakened disjunction must not be in the scope of any operator other "
            "than parallel disjunction",
        )
        parent = _at(c, parent_path)
        _require(isinstance(parent, ParOr), "path parent is not a parallel disjunction")
        i = path[-1]
        _require(0 <= i < len(parent.children), "disjunct index out of range")
        rest = parent.children[:i] + parent.children[i + 1 :]
        replacement = rest[0] if len(rest) == 1 else ParOr(rest)
        expected = replace_at(c, parent_path, replacement)
        _require(
            p == expected,
            f"premise must be the conclusion without the new disjunct "
            f"(expected {print_formula(expected)})",
        )

    def _rule_cand_intro(self, script, step, premise, obligations) -> None:
        _require("at" in step.kwargs, "usage: cand-intro <premises...> at=<path>")
        path = _parse_path(step.kwargs["at"])
        c = step.formula
        _require(
            _disjunctive_context(c, path),
            "introduced choice conjunction must sit in a disjunction-only context",
        )
        node = _at(c, path)
        _require(isinstance(node, ChoAnd), "path does not address a choice conjunction")
        _require(
            len(step.args) == len(node.children),
            f"rule needs one premise per component ({len(node.children)})",
        )
        for i, tok in enumerate(step.args):
            want = replace_at(c, path, node.children[i])
            _require(
                premise(tok) == want,
                f"premise {tok} must be the conclusion with component {i} in place "
                f"(expected {print_formula(want)})",
            )

    def _rule_call_intro(self, script, step, premise, obligations) -> None:
        _require(
            len(step.args) == 1 and "at" in step.kwargs and "s" in step.kwargs,
            "usage: call-intro <premise> at=<path> s=<var>",
        )
        p = premise(step.args[0])
        path = _parse_path(step.kwargs["at"])
        s = step.kwargs["s"]
        c = step.formula
        _require(
            _surface_context(c, path),
            "introduced choice universal must sit at a surface position",
        )
        node = _at(c, path)
        _require(isinstance(node, ChoAll), "path does not address a choice universal")
        _require(s != BOUND_VAR, "generalized variable may not be the bound variable")
        _require(
            s not in all_vars(c),
            f"generalized variable {s!r} occurs in the conclusion",
        )
        expected = replace_at(c, path, substitute_vars(node.body, {node.var: Var(s)}))
        _require(
            p == expected,
            f"premise must instantiate the quantifier at {s!r} "
            f"(expected {print_formula(expected)})",
        )

    def _rule_call_elim(self, script, step, premise, obligations) -> None:
        _require(
            len(step.args) == 1 and "s" in step.kwargs,
            "usage: call-elim <premise> s=<var>",
        )
        p = premise(step.args[0])
        s = step.kwargs["s"]
        _require(isinstance(p, ChoAll), "premise is not a choice-universal formula")
        _require(
            s not in bound_vars(p),
            f"instantiating variable {s!r} is bound in the premise",
        )
        expected = substitute_vars(p.body, {p.var: Var(s)})
        _require(
            step.formula == expected,
            f"conclusion must instantiate the premise at {s!r} "
            f"(expected {print_formula(expected)})",
        )

    def _rule_cor_elim(self, script, step, premise, obligations) -> None:
        _require(len(step.args) >= 2, "usage: cor-elim <disjunction> <implications...>")
        d = premise(step.args[0])
        _require(isinstance(d, ChoOr), "first premise is not a choice disjunction")
        _require(
            len(step.args) - 1 == len(d.children),
            f"rule needs one implication per option ({len(d.children)})",
        )
        for i, tok in enumerate(step.args[1:]):
            want = implies(d.children[i], step.formula)
            _require(
                premise(tok) == want,
                f"premise {tok} must be {print_formula(want)}",
            )

    # -- induction ---------------------------------------------------------

    def _induction_vars(self, step) -> tuple[str, Formula | None]:
        _require("s" in step.kwargs, "missing induction variable s=<var>")
        s = step.kwargs["s"]
        _require(s != BOUND_VAR, "induction variable may not be the bound variable")
        tau = None
        if "tau" in step.kwargs:
            try:
                tau = parse_term(step.kwargs["tau"])
            except ValueError as err:
                raise Violation(f"bad bound term: {err}") from None
            _require(
                is_bound_term(tau),
                "the induction bound must be a term of the bound variable only",
            )
        return s, tau

    def _split_conjunction(self, cons: Formula, split: str) -> tuple[Formula, Formula]:
        _require(
            isinstance(cons, ParAnd),
            "conclusion consequent must be a parallel conjunction",
        )
        try:
            k = int(split)
        except ValueError:
            raise Violation("split must be an integer") from None
        _require(
            1 <= k < len(cons.children),
            f"split index {k} does not divide a {len(cons.children)}-ary conjunction",
        )
        left = cons.children[0] if k == 1 else ParAnd(cons.children[:k])
        right = cons.children[k] if k == len(cons.children) - 1 else ParAnd(cons.children[k:])
        return left, right

    def _rule_pti(self, script, step, premise, obligations) -> None:
        _require(
            len(step.args) == 2 and "split" in step.kwargs,
            "usage: pti <left> <right> s=<var> tau=<term> split=<k>",
        )
        s, tau = self._induction_vars(step)
        _require(tau is not None, "missing induction bound tau=<term>")
        ant, cons = _split_implication(step.formula)
        _require(
            ant == _leq(Var(s), tau),
            "conclusion antecedent must bound the induction variable by tau",
        )
        e, f = self._split_conjunction(cons, step.kwargs["split"])
        e0 = substitute_vars(e, {s: ZERO})
        f0 = substitute_vars(f, {s: ZERO})
        _require(
            premise(step.args[0]) == ParAnd((e0, f0)),
            f"basis must be {print_formula(ParAnd((e0, f0)))}",
        )
        e1 = substitute_vars(e, {s: Succ(Var(s))})
        f1 = substitute_vars(f, {s: Succ(Var(s))})
        expected_step = implies(ParAnd((e, f)), ChoAnd((e1, ParAnd((f1, e)))))
        _require(
            premise(step.args[1]) == expected_step,
            f"inductive step must be {print_formula(expected_step)}",
        )

    def _rule_pti_plus(self, script, step, premise, obligations) -> None:
        _require(
            len(step.args) == 2 and "split" in step.kwargs,
            "usage: pti+ <left> <right> s=<var> tau=<term> split=<k>",
        )
        s, tau = self._induction_vars(step)
        _require(tau is not None, "missing induction bound tau=<term>")
        ant, cons = _split_implication(step.formula)
        _require(
            ant == _leq(Var(s), tau),
            "conclusion antecedent must bound the induction variable by tau",
        )
        e, f = self._split_conjunction(cons, step.kwargs["split"])
        e0 = substitute_vars(e, {s: ZERO})
        f0 = substitute_vars(f, {s: ZERO})
        _require(
            premise(step.args[0]) == ParAnd((e0, f0)),
            f"basis must be {print_formula(ParAnd((e0, f0)))}",
        )
        e1 = substitute_vars(e, {s: Succ(Var(s))})
        f1 = substitute_vars(f, {s: Succ(Var(s))})
        guard_lt = _lt(Var(s), tau)
        guard_len = _len_le_bound(Succ(Var(s)))
        expected_step = implies(
            ParAnd((guard_lt, guard_len, e, f)), ChoAnd((e1, ParAnd((f1, e))))
        )
        _require(
            premise(step.args[1]) == expected_step,
            f"inductive step must be {print_formula(expected_step)}",
        )

    def _rule_wpti(self, script, step, premise, obligations) -> None:
        _require(len(step.args) == 2, "usage: wpti <left> <right> s=<var> tau=<term>")
        s, tau = self._induction_vars(step)
        _require(tau is not None, "missing induction bound tau=<term>")
        ant, f = _split_implication(step.formula)
        _require(
            ant == _leq(Var(s), tau),
            "conclusion antecedent must bound the induction variable by tau",
        )
        f0 = substitute_vars(f, {s: ZERO})
        _require(premise(step.args[0]) == f0, f"basis must be {print_formula(f0)}")
        expected_step = implies(f, substitute_vars(f, {s: Succ(Var(s))}))
        _require(
            premise(step.args[1]) == expected_step,
            f"inductive step must be {print_formula(expected_step)}",
        )

    def _rule_wpti_plus(self, script, step, premise, obligations) -> None:
        _require(len(step.args) == 2, "usage: wpti+ <left> <right> s=<var> tau=<term>")
        s, tau = self._induction_vars(step)
        _require(tau is not None, "missing induction bound tau=<term>")
        ant, f = _split_implication(step.formula)
        _require(
            ant == _leq(Var(s), tau),
            "conclusion antecedent must bound the induction variable by tau",
        )
        f0 = substitute_vars(f, {s: ZERO})
        _require(premise(step.args[0]) == f0, f"basis must be {print_formula(f0)}")
        expected_step = implies(
            ParAnd((_lt(Var(s), tau), _len_le_bound(Succ(Var(s))), f)),
            substitute_vars(f, {s: Succ(Var(s))}),
        )
        _require(
            premise(step.args[1]) == expected_step,
            f"inductive step must be {print_formula(expected_step)}",
        )

    def _rule_bsi(self, script, step, premise, obligations) -> None:
        _require(len(step.args) == 2, "usage: bsi <left> <right> s=<var>")
        s, _ = self._induction_vars(step)
        f = step.formula
        f0 = substitute_vars(f, {s: ZERO})
        _require(premise(step.args[0]) == f0, f"basis must be {print_formula(f0)}")
        expected_step = implies(
            f,
            ChoAnd(
                (
                    substitute_vars(f, {s: bin0(Var(s))}),
                    substitute_vars(f, {s: bin1(Var(s))}),
                )
            ),
        )
        _require(
            premise(step.args[1]) == expected_step,
            f"inductive step must be {print_formula(expected_step)}",
        )

    def _rule_bsi_plus(self, script, step, premise, obligations) -> None:
        _require(len(step.args) == 2, "usage: bsi+ <left> <right> s=<var>")
        s, _ = self._induction_vars(step)
        f = step.formula
        f0 = substitute_vars(f, {s: ZERO})
        _require(premise(step.args[0]) == f0, f"basis must be {print_formula(f0)}")
        expected_step = implies(
            ParAnd((_len_le_bound(bin0(Var(s))), f)),
            ChoAnd(
                (
                    substitute_vars(f, {s: bin0(Var(s))}),
                    substitute_vars(f, {s: bin1(Var(s))}),
                )
            ),
        )
        _require(
            premise(step.args[1]) == expected_step,
            f"inductive step must be {print_formula(expected_step)}",
        )

    def _rule_bpi(self, script, step, premise, obligations) -> None:
        _require(len(step.args) == 2, "usage: bpi <left> <right> s=<var>")
        s, _ = self._induction_vars(step)
        f = step.formula
        f0 = substitute_vars(f, {s: ZERO})
        _require(premise(step.args[0]) == f0, f"basis must be {print_formula(f0)}")
        right = premise(step.args[1])
        _require(
            isinstance(right, ParOr)
            and len(right.children) == 2
            and isinstance(right.children[0], BlindEx),
            "inductive step must be an implication from the binary-predecessor hypothesis",
        )
        z = right.children[0].var
        hypothesis = BlindAll(
            z,
            implies(
                ParOr((Eq(Var(s), bin0(Var(z))), Eq(Var(s), bin1(Var(z))))),
                substitute_vars(f, {s: Var(z)}),
            ),
        )
        expected_step = implies(hypothesis, f)
        _require(
            right == expected_step,
            f"inductive step must be {print_formula(expected_step)}",
        )

    def _rule_ind18a(self, script, step, premise, obligations) -> None:
        _require(
            len(step.args) == 2 and "t" in step.kwargs and "split" in step.kwargs,
            "usage: ind18a <left> <right> t=<var> split=<k>",
        )
        t = step.kwargs["t"]
        _require(t != BOUND_VAR, "induction variable may not be the bound variable")
        ant, cons = _split_implication(step.formula)
        _require(
            isinstance(ant, ParAnd) and len(ant.children) == 3,
            "conclusion antecedent must be R & w <= t & t <= tau",
        )
        r, low, high = ant.children
        _require(is_elementary(r), "the side condition R must be elementary")
        _require(
            isinstance(low, ElemAtom)
            and low.letter == "leq"
            and isinstance(low.args[0], Var)
            and low.args[1] == Var(t),
            "second conjunct must be w <= t",
        )
        w = low.args[0].name
        _require(
            isinstance(high, ElemAtom)
            and high.letter == "leq"
            and high.args[0] == Var(t),
            "third conjunct must be t <= tau",
        )
        tau = high.args[1]
        _require(
            is_bound_term(tau),
            "the induction bound must be a term of the bound variable only",
        )
        e, f = self._split_conjunction(cons, step.kwargs["split"])
        ew = substitute_vars(e, {t: Var(w)})
        fw = substitute_vars(f, {t: Var(w)})
        expected_left = implies(r, ParAnd((ew, fw)))
        _require(
            premise(step.args[0]) == expected_left,
            f"basis must be {print_formula(expected_left)}",
        )
        e1 = substitute_vars(e, {t: Succ(Var(t))})
        f1 = substitute_vars(f, {t: Succ(Var(t))})
        expected_right = implies(
            ParAnd((_len_le_bound(Succ(Var(t))), e, f)),
            ParAnd((e, ChoAnd((e1, f1)))),
        )
        _require(
            premise(step.args[1]) == expected_right,
            f"inductive step must be {print_formula(expected_right)}",
        )

    def _rule_ind18b(self, script, step, premise, obligations) -> None:
        _require(
            len(step.args) == 2 and "t" in step.kwargs,
            "usage: ind18b <left> <right> t=<var>",
        )
        t = step.kwargs["t"]
        _require(t != BOUND_VAR, "induction variable may not be the bound variable")
        ant, f = _split_implication(step.formula)
        _require(
            isinstance(ant, ParAnd) and len(ant.children) == 3,
            "conclusion antecedent must be R & w <= t & t <= tau",
        )
        r, low, high = ant.children
        _require(is_elementary(r), "the side condition R must be elementary")
        _require(
            t not in all_vars(r), "induction variable must not occur in the side condition"
        )
        _require(
            isinstance(low, ElemAtom)
            and low.letter == "leq"
            and isinstance(low.args[0], Var)
            and low.args[1] == Var(t),
            "second conjunct must be w <= t",
        )
        w = low.args[0].name
        _require(
            isinstance(high, ElemAtom)
            and high.letter == "leq"
            and high.args[0] == Var(t),
            "third conjunct must be t <= tau",
        )
        tau = high.args[1]
        _require(
            is_bound_term(tau),
            "the induction bound must be a term of the bound variable only",
        )
        expected_left = implies(r, substitute_vars(f, {t: Var(w)}))
        _require(
            premise(step.args[0]) == expected_left,
            f"basis must be {print_formula(expected_left)}",
        )
        expected_right = implies(
            ParAnd((r, _leq(Var(w), Var(t)), _lt(Var(t), tau), f)),
            substitute_vars(f, {t: Succ(Var(t))}),
        )
        _require(
            premise(step.args[1]) == expected_right,
            f"inductive step must be {print_formula(expected_right)}",
        )


def check(
    script: ProofScript,
    imports: dict[str, ProofScript] | None = None,
    fol_budget: int = DEFAULT_TABLEAU_BUDGET,
) -> CheckReport:
    """Verify every step of `script`; imported scripts are re-checked on use."""
    return _Checker(dict(imports or {}), fol_budget).check(script)
