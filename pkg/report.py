# report.py
"""
ResultDocument: what a CLI command computed, rendered either as JSON
(stdout of `--json`) or as aligned pandas tables.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import pandas as pd

from hilbert import HilbertData

MATCH, MISMATCH = "match", "mismatch"


def _flatten(prefix: str, value: Any, out: Dict[str, Any]) -> None:
    if isinstance(value, dict):
        for k in sorted(value, key=str):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], out)
    elif isinstance(value, (list, tuple)):
        out[prefix] = " ".join(str(v) if not isinstance(v, (list, tuple)) else "(" + ",".join(map(str, v)) + ")"
                               for v in value) or "-"
    else:
        out[prefix] = value


@dataclass
class ResultDocument:
    command: List[str]
    scheme: Optional[dict] = None
    hilbert: Dict[str, HilbertData] = field(default_factory=dict)
    values: Dict[str, Any] = field(default_factory=dict)
    comparison: Optional[str] = None
    verdict: Optional[bool] = None

    def add_hilbert(self, name: str, data: HilbertData) -> None:
        self.hilbert[name] = data

    def add_value(self, name: str, value: Any) -> None:
        """Scalars, or anything with to_dict() (verdicts)."""
        self.values[name] = value.to_dict() if hasattr(value, "to_dict") else value

    def compare(self, engine: Any, formula: Any) -> bool:
        ok = engine == formula
        self.comparison = MATCH if ok else MISMATCH
        return ok

    # --- renderings -------------------------------------------------------------
    def to_dict(self) -> dict:
        doc: Dict[str, Any] = {"command": list(self.command)}
        if self.scheme is not None:
            doc["scheme"] = self.scheme
        if self.hilbert:
            doc["hilbert"] = {name: data.to_dict() for name, data in self.hilbert.items()}
        if self.values:
            doc["values"] = self.values
        if self.comparison is not None:
            doc["comparison"] = self.comparison
        if self.verdict is not None:
            doc["verdict"] = self.verdict
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def hilbert_frame(self) -> pd.DataFrame:
        width = max((d.ri + 2 for d in self.hilbert.values()), default=0)
        rows = []
        for name, data in self.hilbert.items():
            row: Dict[str, Any] = {"quantity": name}
            row.update({str(i): data.value(i) for i in range(width)})
            row["hp"] = data.hp
            row["ri"] = data.ri
            rows.append(row)
        return pd.DataFrame(rows)

    def values_frame(self) -> pd.DataFrame:
        flat: Dict[str, Any] = {}
        _flatten("", self.values, flat)
        return pd.DataFrame({"key": list(flat), "value": [flat[k] for k in flat]})

    def to_table(self) -> str:
        lines = ["command: " + " ".join(self.command)]
        if self.scheme is not None:
            s = self.scheme
            lines.append(f"scheme: {s.get('label') or '-'} over {s['field']} in P^{s['n']}, deg {s['deg']}, r {s['r']}")
            lines.append(f"HF_X: {' '.join(map(str, s['hf']['values']))}")
        if self.verdict is not None:
            lines.append(f"verdict: {str(self.verdict).lower()}")
        for name, data in self.hilbert.items():
            shown = " ".join(str(v) for v in data.upto(data.ri + 1))
            lines.append(f"{name}: {shown}  (hp {data.hp}, ri {data.ri})")
        if self.hilbert:
            lines += ["", self.hilbert_frame().to_string(index=False)]
        if self.values:
            lines += ["", self.values_frame().to_string(index=False)]
        if self.comparison is not None:
            lines += ["", f"engine vs formula: {self.comparison}"]
        return "\n".join(lines)

    def render(self, as_json: bool) -> str:
        return self.to_json() if as_json else self.to_table()
