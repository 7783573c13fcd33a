"""Two-state, nine-cell totalistic rules and their integer codes.

A rule maps the neighborhood total ``n`` (0..9, center counted once) to the
next cell state ``f(n)``.  The code packs the table as ``sum(f(n) * 2**n)``,
so bit 0 of the code is the output for an empty neighborhood.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

STATES = 2
NEIGHBORHOOD_SIZE = 9
N_TOTALS = NEIGHBORHOOD_SIZE + 1
RULE_SPACE_SIZE = STATES ** N_TOTALS  # 1024


@dataclass(frozen=True)
class TotalisticRule:
    """Output table of a totalistic rule, indexed by neighborhood total.

    Construct with :func:`decode_rule` or :meth:`from_active`; the
    constructor checks that ``code`` and ``outputs`` agree.
    """

    code: int
    outputs: tuple[int, ...]
    states: int = STATES

    def __post_init__(self) -> None:
        if self.states != STATES:
            raise ValueError(f"only {STATES}-state rules are supported, got states={self.states}")
        _check_outputs(self.outputs)
        if self.code != _pack(self.outputs):
            raise ValueError(f"code {self.code} does not match output table {self.outputs}")

    @classmethod
    def from_active(cls, totals: Iterable[int]) -> "TotalisticRule":
        """Rule that turns a cell on exactly for the given neighborhood totals."""
        active = set(totals)
        bad = [t for t in active if not 0 <= t < N_TOTALS]
        if bad:
            raise ValueError(f"totals must lie in 0..{N_TOTALS - 1}, got {sorted(bad)}")
        outputs = tuple(int(n in active) for n in range(N_TOTALS))
        return cls(_pack(outputs), outputs)

    @property
    def active_totals(self) -> tuple[int, ...]:
        return tuple(n for n, bit in enumerate(self.outputs) if bit)

    @property
    def binary(self) -> str:
        """Ten-character bit string, most significant (total 9) first."""
        return format(self.code, f"0{N_TOTALS}b")

    def __str__(self) -> str:
        return render_rule(self)


def _check_outputs(outputs: Sequence[int]) -> None:
    if len(outputs) != N_TOTALS:
        raise ValueError(f"output table must have {N_TOTALS} entries, got {len(outputs)}")
    for n, bit in enumerate(outputs):
        if bit not in (0, 1) or isinstance(bit, float):
            raise ValueError(f"output for total {n} must be 0 or 1, got {bit!r}")


def _pack(outputs: Sequence[int]) -> int:
    return sum(int(bit) << n for n, bit in enumerate(outputs))


def check_code(code: int) -> int:
    if isinstance(code, bool) or not isinstance(code, int):
        raise TypeError(f"rule code must be an int, got {type(code).__name__}")
    if not 0 <= code < RULE_SPACE_SIZE:
        raise ValueError(f"rule code must be in 0..{RULE_SPACE_SIZE - 1}, got {code}")
    return code


def decode_rule(code: int) -> TotalisticRule:
    """Unpack an integer code into its output table.

    >>> decode_rule(816).active_totals
    (4, 5, 8, 9)
    """
    check_code(code)
    outputs = tuple((code >> n) & 1 for n in range(N_TOTALS))
    return TotalisticRule(code, outputs)


def encode_rule(rule: TotalisticRule) -> int:
    """Pack the output table back into the integer code.

    The table is re-validated, so a hand-built object with a bad table is
    rejected rather than silently encoded.
    """
    _check_outputs(rule.outputs)
    return _pack(rule.outputs)


def rule_output(rule: TotalisticRule, total: int) -> int:
    if not 0 <= total < N_TOTALS:
        raise ValueError(
            f"neighborhood total must be in 0..{N_TOTALS - 1}, got {total}"
        )
    return rule.outputs[total]


def render_rule(rule: TotalisticRule) -> str:
    active = ",".join(str(n) for n in rule.active_totals)
    return f"rule {rule.code} binary={rule.binary} active={{{active}}}"


def all_rules() -> list[TotalisticRule]:
    return [decode_rule(c) for c in range(RULE_SPACE_SIZE)]
