"""Verification reports and their JSON form."""
from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    """Named residuals paired with thresholds.

    A residual of ``None`` means the check did not apply (for instance dual
    checks on a Bessel-only system) and is skipped when deciding ``passed``.
    ``premises`` holds hypothesis checks that gate other checks but do not
    count toward ``passed`` themselves.
    """

    bounds: object
    residuals: dict
    thresholds: dict
    seed: object = None
    premises: dict = field(default_factory=dict)

    def failures(self):
        return [
            name
            for name, value in self.residuals.items()
            if value is not None and not value <= self.thresholds[name]
        ]

    @property
    def passed(self):
        return not self.failures()

    def to_json_dict(self, tool_version):
        doc = {
            "bounds": {
                "lower": float(self.bounds.lower),
                "upper": float(self.bounds.upper),
                "kind": self.bounds.kind,
            },
            "residuals": {k: _num(v) for k, v in self.residuals.items()},
            "thresholds": {k: _num(v) for k, v in self.thresholds.items()},
        }
        if self.premises:
            doc["premises"] = {
                k: {"residual": _num(r), "threshold": _num(t), "holds": bool(r <= t)}
                for k, (r, t) in self.premises.items()
            }
        doc["pass"] = self.passed
        doc["seed"] = self.seed
        doc["tool_version"] = tool_version
        return doc

    def summary_lines(self):
        lines = [
            f"bounds: lower={self.bounds.lower:.12g} upper={self.bounds.upper:.12g} "
            f"kind={self.bounds.kind}"
        ]
        for name, (r, t) in self.premises.items():
            lines.append(f"premise {name}: {r:.3e} <= {t:.3e} {'holds' if r <= t else 'fails'}")
        for name, value in self.residuals.items():
            limit = self.thresholds[name]
            if value is None:
                lines.append(f"{name}: n/a")
            else:
                status = "PASS" if value <= limit else "FAIL"
                lines.append(f"{name}: {value:.3e} <= {limit:.3e} {status}")
        lines.append("pass" if self.passed else "FAIL")
        return lines


def _num(x):
    return None if x is None else float(x)
