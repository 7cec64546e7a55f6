"""Machine-readable invariant records.

All rationals serialize as "numerator/denominator" strings, never floats;
JSON objects use sorted keys so byte-stable output falls out of exact
arithmetic.  The JSON schema is documented in the README under
"Output format".
"""

import json
from dataclasses import dataclass

from .modular import QMPolynomial
from .rational import rat_str
from .series import PowerSeries

FORMAT_VERSION = "1"

THEORIES = ("gw_curve", "fjrw_cubic")
REPRESENTATIONS = ("qm_polynomial", "q_series", "s_series", "rational")


@dataclass(frozen=True)
class InvariantRecord:
    theory: str
    genus: int
    insertions: tuple
    representation: str
    payload: object

    def payload_obj(self):
        if self.representation == "qm_polynomial":
            assert isinstance(self.payload, QMPolynomial)
            return [
                {"a": a, "b": b, "c": c, "coeff": rat_str(v)}
                for (a, b, c), v in self.payload.sorted_terms()
            ]
        if self.representation in ("q_series", "s_series"):
            assert isinstance(self.payload, PowerSeries)
            return {
                "variable": self.payload.var,
                "coefficients": [rat_str(c) for c in self.payload.coeffs],
            }
        if self.representation == "rational":
            return rat_str(self.payload)
        raise ValueError(f"unknown representation {self.representation!r}")

    def to_obj(self):
        return {
            "version": FORMAT_VERSION,
            "theory": self.theory,
            "genus": self.genus,
            "insertions": list(self.insertions),
            "representation": self.representation,
            "payload": self.payload_obj(),
        }

    def to_json_line(self):
        return json.dumps(self.to_obj(), sort_keys=True, separators=(",", ":"))


def records_to_json(records):
    return "\n".join(r.to_json_line() for r in records) + "\n"


def records_to_csv(records):
    """Flat CSV: generator polynomials expand to one monomial per row."""
    lines = [
        "version,theory,genus,insertions,representation,key,value"
    ]
    for r in records:
        ins = ";".join(str(i) for i in r.insertions)
        base = f"{FORMAT_VERSION},{r.theory},{r.genus},{ins},{r.representation}"
        obj = r.payload_obj()
        if r.representation == "qm_polynomial":
            for row in obj:
                key = f"E2^{row['a']}*E4^{row['b']}*E6^{row['c']}"
                lines.append(f"{base},{key},{row['coeff']}")
            if not obj:
                lines.append(f"{base},zero,0/1")
        elif r.representation in ("q_series", "s_series"):
            var = obj["variable"]
            for n, c in enumerate(obj["coefficients"]):
                lines.append(f"{base},{var}^{n},{c}")
        else:
            lines.append(f"{base},value,{obj}")
    return "\n".join(lines) + "\n"


def records_to_text(records):
    lines = []
    for r in records:
        ins = ", ".join(str(i) for i in r.insertions)
        lines.append(
            f"{r.theory} genus {r.genus} insertions [{ins}] "
            f"({r.representation}):"
        )
        obj = r.payload_obj()
        if r.representation == "qm_polynomial":
            if not obj:
                lines.append("  0")
            for row in obj:
                lines.append(
                    f"  E2^{row['a']} E4^{row['b']} E6^{row['c']}: "
                    f"{row['coeff']}"
                )
        elif r.representation in ("q_series", "s_series"):
            var = obj["variable"]
            body = " + ".join(
                f"({c}) {var}^{n}"
                for n, c in enumerate(obj["coefficients"])
                if c != "0/1"
            )
            lines.append("  " + (body or "0"))
        else:
            lines.append(f"  {obj}")
    return "\n".join(lines) + "\n"


SERIALIZERS = {
    "json": records_to_json,
    "csv": records_to_csv,
    "text": records_to_text,
}
