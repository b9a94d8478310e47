"""Entry-by-entry comparison of engine results with the reference table.

For every case and every component (``T``, ``N``) the comparison walks the
pipeline in order and names the first step at which the reference chain
departs from the engine:

``trace_integrand``      the stated integrand integrates to a different
                         value than the engine's own trace
``residue_evaluation``   the stated integrand, with the stated prefactor
                         and sphere reading, does not give the stated value
``sphere_normalization`` the two sphere readings differ for this component
``prefactor``            the stated prefactor differs from the master one
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coeffs import CoeffPoly, N, T
from .paper_values import paper_value
from .pipeline import (
    CaseResult,
    Path,
    SphereReading,
    compute_phi,
    contract,
    enumerate_cases,
)
from .sphere import Pattern
from .transcribed import get_transcription

__all__ = ["STEPS", "ComponentDiff", "EntryDiff", "verify"]

STEPS = ("trace_integrand", "residue_evaluation", "sphere_normalization", "prefactor")
_COMPONENTS = (("T", T, Pattern.XY), ("N", N, Pattern.NN))


def component(poly: CoeffPoly, sym) -> CoeffPoly:
    return poly.with_symbol(sym)


@dataclass
class ComponentDiff:
    name: str
    engine_value: CoeffPoly
    engine_value_reference_sphere: CoeffPoly
    paper_value: CoeffPoly
    reference_chain_value: CoeffPoly | None
    divergent_steps: list[str]

    @property
    def match(self) -> str:
        return "exact" if self.engine_value == self.paper_value else "mismatch"

    @property
    def first_divergent_step(self) -> str:
        return self.divergent_steps[0] if self.divergent_steps else "none"

    def to_json(self) -> dict:
        return {
            "match": self.match,
            "engine_value": self.engine_value.canonical(),
            "engine_value_reference_sphere": self.engine_value_reference_sphere.canonical(),
            "paper_value": self.paper_value.canonical(),
            "reference_chain_value": None if self.reference_chain_value is None else self.reference_chain_value.canonical(),
            "first_divergent_step": self.first_divergent_step,
            "divergent_steps": list(self.divergent_steps),
        }


@dataclass
class EntryDiff:
    dim: int
    label: str
    path: Path
    phi: CoeffPoly
    reference: CoeffPoly | None
    components: list[ComponentDiff]
    flags: list[str] = field(default_factory=list)
    source: str = ""

    @property
    def match(self) -> str:
        if self.reference is None:
            return "mismatch"
        return "exact" if self.phi == self.reference else "mismatch"

    @property
    def first_divergent_step(self) -> str:
        found = {s for c in self.components for s in c.divergent_steps}
        for s in STEPS:
            if s in found:
                return s
        return "none"

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "path": self.path.value,
            "phi": self.phi.canonical(),
            "paper_value": None if self.reference is None else self.reference.canonical(),
            "match": self.match,
            "first_divergent_step": self.first_divergent_step,
            "components": {c.name: c.to_json() for c in self.components},
            "source": self.source,
            "flags": list(self.flags),
        }


def _ordered(steps: set[str]) -> list[str]:
    return [s for s in STEPS if s in steps]


def _compare_case(n: int, res: CaseResult, full: CaseResult, trn: CaseResult) -> EntryDiff:
    pv = paper_value(n, res.label)
    tr = get_transcription(n, res.label)
    comps = []
    for name, sym, pattern in _COMPONENTS:
        steps: set[str] = set()
        pval = component(pv.value, sym) if pv else CoeffPoly()
        f_rad = full.radial.get(pattern, CoeffPoly())
        t_rad = trn.radial.get(pattern, CoeffPoly())
        if res.path is Path.FULL and f_rad != t_rad:
            steps.add("trace_integrand")
        # the reference chain: stated integrand, stated prefactor, its own sphere reading
        chain = None
        if trn.prefactor:
            chain = t_rad * (tr.stated_prefactor / trn.prefactor) * contract(pattern, n, SphereReading.REFERENCE)
            if chain != pval:
                steps.add("residue_evaluation")
        rad = res.radial.get(pattern, CoeffPoly())
        eng = rad * contract(pattern, n, SphereReading.ENGINE)
        eng_p = rad * contract(pattern, n, SphereReading.REFERENCE)
        if (rad or pval) and contract(pattern, n, SphereReading.ENGINE) != contract(pattern, n, SphereReading.REFERENCE):
            steps.add("sphere_normalization")
        if tr.stated_prefactor != trn.prefactor and (t_rad or pval):
            steps.add("prefactor")
        comps.append(ComponentDiff(name, eng, eng_p, pval, chain, _ordered(steps)))
    return EntryDiff(n, res.label, res.path, res.phi, pv.value if pv else None, comps,
                     list(res.flags) + ([pv.note] if pv and pv.note else []),
                     pv.source if pv else "")


def _total_entry(n: int, path: Path, cases: list[EntryDiff], results: list[CaseResult]) -> EntryDiff:
    pv = paper_value(n, "total")
    phi = CoeffPoly()
    phi_p = CoeffPoly()
    for r in results:
        phi = phi + r.phi
        phi_p = phi_p + r.sphere(SphereReading.REFERENCE)
    comps = []
    for name, sym, _ in _COMPONENTS:
        steps = set()
        chain = CoeffPoly()
        have_chain = True
        for e in cases:
            c = next(c for c in e.components if c.name == name)
            steps.update(c.divergent_steps)
            if c.reference_chain_value is None:
                have_chain = False
            else:
                chain = chain + c.reference_chain_value
        pval = component(pv.value, sym)
        comps.append(ComponentDiff(name, component(phi, sym), component(phi_p, sym), pval,
                                   chain if have_chain else None, _ordered(steps)))
    flags = []
    if n != 3:
        summed = CoeffPoly()
        for e in cases:
            summed = summed + (e.reference if e.reference is not None else CoeffPoly())
        diff = summed - pv.value
        flags.append("reference cases sum to the reference total" if not diff
                     else f"reference cases minus reference total = {diff.canonical()}")
    if n == 4:
        flags.append("computed for the nabla nabla D^-1 with D^-3 pairing; "
                     "the reference total is stated for a D^-2 with D^-2 pairing")
    return EntryDiff(n, "total", path, phi, pv.value, comps, flags, pv.source)


def verify(n: int, paths=(Path.FULL, Path.TRANSCRIBED), jobs: int = 1) -> list[EntryDiff]:
    full = compute_phi(n, Path.FULL, jobs)
    trn = compute_phi(n, Path.TRANSCRIBED, jobs)
    by_path = {Path.FULL: full, Path.TRANSCRIBED: trn}
    out = []
    for path in paths:
        path = Path(path)
        entries = [
            _compare_case(n, r, f, t)
            for r, f, t in zip(by_path[path].cases, full.cases, trn.cases)
        ]
        if n == 3:
            out.extend(entries)
            continue
        out.extend(entries)
        out.append(_total_entry(n, path, entries, by_path[path].cases))
    return out


def case_labels(n: int) -> list[str]:
    return [c.label for c in enumerate_cases(n)]
