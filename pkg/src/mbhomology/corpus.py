"""Worked examples shipped as flow-presentation files, with expected
homology, plus the independence checks across presentations of the same
manifold."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .chain import HomologyGroup
from .cli import (
    expected_from_doc,
    morse_from_doc,
    presentation_from_doc,
)
from .flowdata import build_multicomplex, morse_to_flow
from .multicomplex import homology_table, validate_multicomplex


@dataclass
class CorpusEntry:
    name: str
    manifold: str
    kind: str
    expected: dict
    notes: str = ""
    flow: object = None
    morse: object = None

    def presentation(self):
        if self.kind == "morse":
            return morse_to_flow(self.morse)
        return self.flow

    def build(self):
        return build_multicomplex(self.presentation())


@dataclass
class EntryReport:
    name: str
    built: bool
    diagnostics: str = ""
    table: list = field(default_factory=list)
    mismatches: list = field(default_factory=list)

    @property
    def ok(self):
        return self.built and not self.mismatches


@dataclass
class IndependenceReport:
    groups: dict
    comparisons: list

    @property
    def ok(self):
        return all(iso for (_, _, iso) in self.comparisons)


def data_dir():
    return resources.files(__package__) / "data"


def entry_names():
    return sorted(p.name[:-len(".json")] for p in data_dir().iterdir()
                  if p.name.endswith(".json"))


def load_entry(name):
    doc = json.loads((data_dir() / f"{name}.json").read_text("utf-8"))
    expected = expected_from_doc(doc, where=name) or {}
    entry = CorpusEntry(
        name=doc.get("name", name),
        manifold=doc.get("manifold", ""),
        kind=doc.get("kind", "flow"),
        expected={k: HomologyGroup(b, t) for k, (b, t) in expected.items()},
        notes=doc.get("notes", ""),
    )
    if entry.kind == "morse":
        entry.morse = morse_from_doc(doc, where=name)
    else:
        entry.flow = presentation_from_doc(doc, where=name)
    return entry


def load_entries():
    return [load_entry(name) for name in entry_names()]


def run_entry(entry):
    """Build, validate, compute the table, and compare degree by degree."""
    try:
        mc = entry.build()
    except ValueError as err:
        return EntryReport(name=entry.name, built=False,
                           diagnostics=str(err))
    report = validate_multicomplex(mc)
    if not report.ok:
        return EntryReport(name=entry.name, built=False,
                           diagnostics=report.describe())
    table = homology_table(mc)
    mismatches = []
    for degree, want in sorted(entry.expected.items()):
        got = table[degree] if degree < len(table) else HomologyGroup(0, ())
        if not got.iso(want):
            mismatches.append(
                f"degree {degree}: computed {got}, expected {want}")
    return EntryReport(name=entry.name, built=True, table=table,
                       mismatches=mismatches)


def independence_suite(entries=None):
    """Pairwise homology comparison within each manifold group.

    The homology of a presentation must not depend on the choice of
    function or finite model, so all tables in a group must agree in
    degrees up to the ambient dimension.
    """
    if entries is None:
        entries = load_entries()
    groups = {}
    for entry in entries:
        groups.setdefault(entry.manifold or entry.name, []).append(entry)
    comparisons = []
    for manifold in sorted(groups):
        members = groups[manifold]
        tables = {}
        for entry in members:
            mc = entry.build()
            tables[entry.name] = (mc.ambient_dim, homology_table(mc))
        names = sorted(tables)
        for a_pos in range(len(names)):
            for b_pos in range(a_pos + 1, len(names)):
                a, b = names[a_pos], names[b_pos]
                dim_a, table_a = tables[a]
                dim_b, table_b = tables[b]
                top = min(dim_a, dim_b)
                iso = all(table_a[k].iso(table_b[k])
                          for k in range(0, top + 1))
                comparisons.append((a, b, iso))
    return IndependenceReport(
        groups={m: [e.name for e in members]
                for m, members in groups.items()},
        comparisons=comparisons,
    )
