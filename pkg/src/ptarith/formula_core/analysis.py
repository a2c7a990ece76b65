"""Syntactic predicates and occurrence machinery: surface positions, move
addresses, elementarization, criticality, safety, deletions."""

from __future__ import annotations

from dataclasses import dataclass

from .formulas import (
    Atom,
    BlindAll,
    BlindEx,
    BOT,
    Bot,
    ChoAll,
    ChoAnd,
    ChoEx,
    ChoOr,
    ElemAtom,
    Eq,
    Formula,
    GenAtom,
    Not,
    OccPath,
    ParAnd,
    ParOr,
    Top,
    TOP,
    children,
    free_vars,
    is_elementary,
    iter_paths,
    rebuild,
    replace_at,
    subformula_at,
)

FRESH_STEM = "_v"


def fresh_var(used: set[str], hint: str | None = None) -> str:
    """A variable from the reserved `_v` namespace not present in `used`."""
    i = 1
    while f"{FRESH_STEM}{i}" in used:
        i += 1
    return f"{FRESH_STEM}{i}"


def is_surface(f: Formula, path: OccPath) -> bool:
    """A surface occurrence is one not in the scope of any choice operator."""
    for i in path:
        if isinstance(f, (ChoAnd, ChoOr, ChoAll, ChoEx)):
            return False
        f = children(f)[i]
    return True


def move_prefix(f: Formula, path: OccPath) -> list[str]:
    """Move-address segments for the node at `path`: one binary-numeral index
    per parallel connective crossed; blind quantifiers are transparent.

    The path must be surface and must not cross Not.
    """
    segs: list[str] = []
    for i in path:
        if isinstance(f, (ParAnd, ParOr)):
            segs.append(format(i, "b"))
        elif isinstance(f, (BlindAll, BlindEx)):
            pass
        else:
            raise ValueError(
                f"path crosses a {type(f).__name__}; no move address exists there"
            )
        f = children(f)[i]
    return segs


def elementarize(f: Formula, cl4: bool = False) -> Formula:
    """Replace surface choice subformulas by their moveless defaults (ChoAnd,
    ChoAll -> T; ChoOr, ChoEx -> F) and, in CL4 mode, surface general literals
    by F.  The result is elementary."""
    if isinstance(f, (ChoAnd, ChoAll)):
        return TOP
    if isinstance(f, (ChoOr, ChoEx)):
        return BOT
    if isinstance(f, GenAtom):
        return BOT if cl4 else f
    if isinstance(f, Not) and isinstance(f.f, GenAtom):
        return BOT if cl4 else f
    if isinstance(f, (ParAnd, ParOr, BlindAll, BlindEx)):
        return rebuild(f, [elementarize(c, cl4) for c in children(f)])
    return f


def is_critical(f: Formula) -> bool:
    """The four-clause recursion; a critical formula's elementarization is false
    and a play ending on it is lost by the machine."""
    if isinstance(f, (ChoOr, ChoEx)):
        return True
    if isinstance(f, (BlindAll, BlindEx)):
        return is_critical(f.body)
    if isinstance(f, ParOr):
        return all(is_critical(c) for c in f.children)
    if isinstance(f, ParAnd):
        return any(is_critical(c) for c in f.children)
    return False


def is_safe(f: Formula) -> bool:
    """No two quantifier occurrences bind the same variable."""
    seen: set[str] = set()
    for _, g in iter_paths(f):
        if isinstance(g, (BlindAll, BlindEx, ChoAll, ChoEx)):
            if g.var in seen:
                return False
            seen.add(g.var)
    return True


def politerals(f: Formula) -> list[OccPath]:
    """Paths of the positive literal occurrences (in NNF a negated atom is a
    literal occurrence at its Not node)."""
    out = []
    for path, g in iter_paths(f):
        if isinstance(g, Not):
            out.append(path)
        elif isinstance(g, Atom):
            if not (path and isinstance(subformula_at(f, path[:-1]), Not)):
                out.append(path)
    return out


@dataclass(frozen=True)
class Classification:
    critical: bool
    safe: bool
    elementary: bool
    free_vars: frozenset[str]
    politerals: tuple[OccPath, ...]


def classify(f: Formula) -> Classification:
    return Classification(
        critical=is_critical(f),
        safe=is_safe(f),
        elementary=is_elementary(f),
        free_vars=frozenset(free_vars(f)),
        politerals=tuple(politerals(f)),
    )


@dataclass(frozen=True)
class Deletion:
    """A surface choice resolution: the move that effects it and the result.

    For a ChoOr the move is fixed; for a ChoEx the chosen constant is open and
    `var` names the parameter slot kept free in `result`.
    """

    kind: str  # "cor" | "cex"
    path: OccPath
    prefix: tuple[str, ...]
    index: int | None
    var: str | None
    result: Formula

    def move(self, constant: int | None = None) -> str:
        if self.kind == "cor":
            return ".".join((*self.prefix, format(self.index, "b")))
        if constant is None:
            raise ValueError("cex deletion needs a constant")
        return ".".join((*self.prefix, format(constant, "b") if constant else "0"))

    @property
    def move_template(self) -> str:
        if self.kind == "cor":
            return self.move()
        return ".".join((*self.prefix, self.var))


def deletions(f: Formula) -> list[Deletion]:
    """All surface ChoOr/ChoEx resolutions of f (the machine's options)."""
    out: list[Deletion] = []

    def walk(g: Formula, path: OccPath, prefix: tuple[str, ...]) -> None:
        if isinstance(g, ChoOr):
            for i, child in enumerate(g.children):
                out.append(
                    Deletion("cor", path, prefix, i, None, replace_at(f, path, child))
                )
        elif isinstance(g, ChoEx):
            out.append(
                Deletion("cex", path, prefix, None, g.var, replace_at(f, path, g.body))
            )
        elif isinstance(g, (ParAnd, ParOr)):
            for i, child in enumerate(g.children):
                walk(child, path + (i,), prefix + (format(i, "b"),))
        elif isinstance(g, (BlindAll, BlindEx)):
            walk(g.body, path + (0,), prefix)

    walk(f, (), ())
    return out


def surface_choice_occurrences(f: Formula) -> list[tuple[OccPath, Formula]]:
    """Surface ChoAnd/ChoOr/ChoAll/ChoEx occurrences with their paths."""
    out: list[tuple[OccPath, Formula]] = []

    def walk(g: Formula, path: OccPath) -> None:
        if isinstance(g, (ChoAnd, ChoOr, ChoAll, ChoEx)):
            out.append((path, g))
        elif isinstance(g, (ParAnd, ParOr, BlindAll, BlindEx)):
            for i, child in enumerate(children(g)):
                walk(child, path + (i,))

    walk(f, ())
    return out
