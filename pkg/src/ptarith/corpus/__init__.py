"""Bundled library of proof scripts and their verification entry point.

Scripts live under ``scripts/`` as package data.  `load_corpus` parses all of
them; `verify_corpus` checks each one (resolving `#import` references within
the corpus) and returns the reports plus a one-line summary of the form
``accepted: 12/12 scripts, pa-obligations: 38``.
"""

from __future__ import annotations

from importlib import resources

from ..proof_checker import CheckReport, ProofScript, check, parse_script

_SUFFIXES = (".clp", ".cl4")


def script_names() -> list[str]:
    root = resources.files(__package__) / "scripts"
    return sorted(
        entry.name for entry in root.iterdir() if entry.name.endswith(_SUFFIXES)
    )


def load_corpus() -> dict[str, ProofScript]:
    """Parse every bundled script, keyed by its stem (import name)."""
    root = resources.files(__package__) / "scripts"
    corpus: dict[str, ProofScript] = {}
    for filename in script_names():
        stem = filename.rsplit(".", 1)[0]
        text = (root / filename).read_text(encoding="utf-8")
        corpus[stem] = parse_script(text, name=stem)
    return corpus


def verify_corpus(
    corpus: dict[str, ProofScript] | None = None,
) -> tuple[dict[str, CheckReport], str]:
    """Check every corpus script; return per-script reports and a summary line."""
    corpus = load_corpus() if corpus is None else corpus
    imports = {
        ref_name: corpus[ref_name]
        for script in corpus.values()
        for ref_name, _path in script.imports
        if ref_name in corpus
    }
    reports = {name: check(script, imports=imports) for name, script in corpus.items()}
    accepted = sum(1 for r in reports.values() if r.accepted)
    obligations = sum(len(r.obligations) for r in reports.values())
    summary = (
        f"accepted: {accepted}/{len(reports)} scripts, pa-obligations: {obligations}"
    )
    return reports, summary
