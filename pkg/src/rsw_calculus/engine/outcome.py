from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Mapping

from ..model import Chamber, RealSpinC, Violation


def sw_key(chamber, m: int) -> str:
    return f"sw_mod2/{Chamber(chamber).value}/{m}"


@dataclass(frozen=True)
class RuleOutcome:
    """What one rule concluded.

    ``assignments`` maps field paths (``sw_mod2/<chamber>/<m>``, ``sw_int``,
    ``deg_r``, ...) to forced values.  A field whose stored value contradicts
    the rule appears in ``violations`` instead.  ``notes`` records why a
    clause was skipped.
    """

    rule: str
    assignments: Mapping[str, Any] = field(default_factory=dict)
    violations: tuple = ()
    relations: tuple = ()
    notes: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "assignments", MappingProxyType(dict(self.assignments)))
        object.__setattr__(self, "violations", tuple(sorted(self.violations)))
        object.__setattr__(self, "relations", tuple(self.relations))
        object.__setattr__(self, "notes", tuple(self.notes))
        clash = {v.locus.rsplit(":", 1)[-1] for v in self.violations} & set(self.assignments)
        if clash:
            raise ValueError(f"fields both assigned and violated: {sorted(clash)}")

    @property
    def ok(self) -> bool:
        return not self.violations


class OutcomeBuilder:
    """Collects forced values, comparing each against what is stored."""

    def __init__(self, rule: str, spinc: RealSpinC = None, locus: str = ""):
        self.rule = rule
        self.spinc = spinc
        self.locus = locus
        self.assignments: dict[str, Any] = {}
        self.violations: list[Violation] = []
        self.relations: list[str] = []
        self.notes: list[str] = []

    def _where(self, key: str) -> str:
        return f"{self.locus}:{key}" if self.locus else key

    def force(self, key: str, value, stored, message: str = "") -> None:
        if stored is not None and stored != value:
            self.violations.append(Violation(self.rule, self._where(key),
                                             message or f"stored {_show(stored)}, rule forces {_show(value)}"))
            self.assignments.pop(key, None)
        elif not any(v.locus == self._where(key) for v in self.violations):
            self.assignments[key] = value

    def force_sw(self, chamber, m: int, value) -> None:
        stored = self.spinc.sw(m, chamber) if self.spinc is not None else None
        self.force(sw_key(chamber, m), value, stored)

    def violate(self, locus: str, message: str) -> None:
        self.violations.append(Violation(self.rule, self._where(locus), message))

    def relate(self, text: str) -> None:
        self.relations.append(text)

    def note(self, text: str) -> None:
        self.notes.append(text)

    def build(self) -> RuleOutcome:
        return RuleOutcome(self.rule, self.assignments, self.violations, self.relations, self.notes)


def _show(value) -> str:
    if hasattr(value, "rep"):
        return f"±({value.rep})"
    return str(value)


def apply_outcome(s: RealSpinC, outcome: RuleOutcome) -> RealSpinC:
    """Fill the unknown fields of ``s`` from the outcome's assignments."""
    sw = dict(s.sw_mod2)
    changes = {}
    for key, value in outcome.assignments.items():
        parts = key.split("/")
        if parts[0] == "sw_mod2" and len(parts) == 3:
            k = (Chamber(parts[1]), int(parts[2]))
            sw.setdefault(k, value)
        elif parts[0] in ("sw_int", "deg_r") and getattr(s, parts[0]) is None:
            changes[parts[0]] = value
    return s.evolve(sw_mod2=sw, **changes)
