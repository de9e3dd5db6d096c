"""Catalog of irreducible bounded symmetric domains.

A domain is identified by the root-multiplicity triple (a, b, r); the
complex dimension d, the genus N and the Szego exponent rho are derived:

    d   = r + (a/2) r (r-1) + b r
    N   = 2 + a (r-1) + b
    rho = 1 + (a/2)(r-1) + b

The six Cartan families fix (a, b) as functions of their size
parameters; ``make_domain`` accepts either a Cartan label or a raw
triple.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction


class DomainError(ValueError):
    """Invalid Cartan label or inadmissible (a, b, r) triple."""


@dataclass(frozen=True, eq=False)
class DomainParams:
    """An irreducible bounded symmetric domain with its derived invariants.

    Equality and hashing use (a, b, r) only: the triple determines the
    domain up to biholomorphism, while ``label`` is a display tag.
    """

    a: int
    b: int
    r: int
    label: str | None = None
    d: int = field(init=False)
    N: int = field(init=False)
    rho: Fraction = field(init=False)

    def __post_init__(self) -> None:
        a, b, r = self.a, self.b, self.r
        if r < 1:
            raise DomainError(f"rank must be positive, got r={r}")
        if a < 0 or b < 0:
            raise DomainError(f"multiplicities must be nonnegative, got a={a}, b={b}")
        if r >= 2 and a < 1:
            raise DomainError("a must be >= 1 for rank >= 2 (irreducible domains)")
        # a*r*(r-1) is even for every integer a, so d is an integer
        twice_d = 2 * r + a * r * (r - 1) + 2 * b * r
        assert twice_d % 2 == 0
        object.__setattr__(self, "d", twice_d // 2)
        object.__setattr__(self, "N", 2 + a * (r - 1) + b)
        object.__setattr__(self, "rho", 1 + Fraction(a, 2) * (r - 1) + b)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DomainParams):
            return NotImplemented
        return (self.a, self.b, self.r) == (other.a, other.b, other.r)

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.r))

    def __repr__(self) -> str:
        tag = f" [{self.label}]" if self.label else ""
        return f"DomainParams(a={self.a}, b={self.b}, r={self.r}, d={self.d}, N={self.N}, rho={self.rho}){tag}"

    def half_a(self) -> Fraction:
        return Fraction(self.a, 2)

    def to_dict(self) -> dict:
        """JSON-ready view; rho rendered as an exact rational string."""
        return {
            "label": self.label,
            "a": self.a,
            "b": self.b,
            "r": self.r,
            "d": self.d,
            "N": self.N,
            "rho": str(self.rho),
        }


@dataclass(frozen=True)
class TableRow:
    """One Cartan family of the classification table (symbolic sizes)."""

    label: str
    F_description: str
    B_gamma_description: str
    schatten_condition: str


_LABEL_RE = re.compile(r"^(VI|V|IV|III|II|I)\s*(?:\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\))?$")


def _from_label(label: str) -> DomainParams:
    m = _LABEL_RE.match(label.strip())
    if not m:
        raise DomainError(f"unrecognized Cartan label: {label!r}")
    fam, p1, p2 = m.group(1), m.group(2), m.group(3)

    def need(*names: str) -> list[int]:
        got = [p1, p2][: len(names)]
        if any(g is None for g in got):
            raise DomainError(f"type {fam} needs size parameters ({', '.join(names)})")
        return [int(g) for g in got]  # type: ignore[arg-type]

    if fam == "I":
        r, s = need("r", "s")
        if not 1 <= r <= s:
            raise DomainError(f"type I needs 1 <= r <= s, got ({r},{s})")
        dp = DomainParams(a=2 if r > 1 else 1, b=s - r, r=r, label=f"I({r},{s})")
        assert dp.d == r * s and dp.N == r + s
        return dp
    if fam == "II":
        (n,) = need("n")
        if n < 4:
            raise DomainError(f"type II needs n >= 4, got n={n}")
        if p2 is not None:
            raise DomainError("type II takes a single size parameter n")
        r, eps = divmod(n, 2)
        dp = DomainParams(a=4, b=2 * eps, r=r, label=f"II({n})")
        assert dp.d == n * (n - 1) // 2 and dp.N == 2 * n - 2
        return dp
    if fam == "III":
        (r,) = need("r")
        if r < 2:
            raise DomainError(f"type III needs r >= 2, got r={r} (r=1 is the disk I(1,1))")
        if p2 is not None:
            raise DomainError("type III takes a single size parameter r")
        dp = DomainParams(a=1, b=0, r=r, label=f"III({r})")
        assert dp.d == r * (r + 1) // 2 and dp.N == r + 1
        return dp
    if fam == "IV":
        (s,) = need("s")
        if s < 4:
            raise DomainError(f"type IV needs s >= 4, got s={s}")
        if p2 is not None:
            raise DomainError("type IV takes a single size parameter s")
        dp = DomainParams(a=s - 2, b=0, r=2, label=f"IV({s})")
        assert dp.d == s and dp.N == s
        return dp
    if fam == "V":
        if p1 is not None:
            raise DomainError("type V takes no size parameters")
        dp = DomainParams(a=6, b=4, r=2, label="V")
        assert dp.d == 16 and dp.N == 12
        return dp
    # VI
    if p1 is not None:
        raise DomainError("type VI takes no size parameters")
    dp = DomainParams(a=8, b=0, r=3, label="VI")
    assert dp.d == 27 and dp.N == 18
    return dp


def make_domain(
    label: str | None = None,
    *,
    a: int | None = None,
    b: int | None = None,
    r: int | None = None,
    s: int | None = None,
    n: int | None = None,
) -> DomainParams:
    """Construct a domain from a Cartan label or a raw (a, b, r) triple.

    Accepted forms::

        make_domain("I(2,3)")          # sizes inside the label
        make_domain("I", r=2, s=3)     # sizes as keywords
        make_domain("V")
        make_domain(a=2, b=1, r=2)     # raw triple

    Rank-one inputs normalize a to 1 (the multiplicity a is vacuous at
    rank one, and the catalog lists the disk with a = 1).
    """
    if label is not None:
        if a is not None or b is not None:
            raise DomainError("give either a Cartan label or a raw (a, b, r) triple, not both")
        label = label.strip()
        if "(" not in label and (r, s, n) != (None, None, None):
            if label == "I":
                if r is None or s is None:
                    raise DomainError("type I needs both r and s")
                label = f"I({r},{s})"
            elif label == "II":
                if n is None:
                    raise DomainError("type II needs n")
                label = f"II({n})"
            elif label == "III":
                if r is None:
                    raise DomainError("type III needs r")
                label = f"III({r})"
            elif label == "IV":
                if s is None:
                    raise DomainError("type IV needs s")
                label = f"IV({s})"
            else:
                raise DomainError(f"type {label} takes no size parameters")
        return _from_label(label)
    if a is None or b is None or r is None:
        raise DomainError("raw construction needs all of a, b, r")
    if a < 0 or b < 0:
        raise DomainError(f"multiplicities must be nonnegative, got a={a}, b={b}")
    if r == 1:
        a = 1
    return DomainParams(a=a, b=b, r=r)


def f_chain_tops(domain: DomainParams) -> list[Fraction]:
    """Maximal elements of the descending integer chains whose union is
    the F-set {(a/2)(l-1) - k : 1 <= l <= r, k in N}.

    Chains with tops differing by an integer nest, so one top per
    residue class (mod 1) suffices; returned in decreasing order.
    """
    tops = [Fraction(domain.a, 2) * (l - 1) for l in range(1, domain.r + 1)]
    best: dict[Fraction, Fraction] = {}
    for t in tops:
        key = t % 1
        if key not in best or t > best[key]:
            best[key] = t
    return sorted(best.values(), reverse=True)


def _fmt_q(q: Fraction) -> str:
    return str(q)


def _fmt_offset(base: str, shift: Fraction) -> str:
    """Render ``base + shift`` with the shift suppressed when zero."""
    if shift == 0:
        return base
    if shift > 0:
        return f"{base}+{_fmt_q(shift)}"
    return f"{base}-{_fmt_q(-shift)}"


def classification_table(gamma: Fraction | int | str) -> list[TableRow]:
    """The six-family classification table at weight ``gamma``.

    Each row carries the F-set, the admissible-exponent set B_gamma and
    the Schatten S_p threshold, rendered symbolically in the family's
    size parameters with ``gamma`` substituted.
    """
    g = Fraction(gamma)
    if g <= -1:
        raise DomainError(f"gamma must exceed -1, got {g}")

    def row(label: str, fset: str, genus: str | Fraction, nm1: str | Fraction) -> TableRow:
        if isinstance(genus, Fraction):
            upper = _fmt_q(genus + g)
        else:
            upper = _fmt_offset(genus, g)
        denom = _fmt_offset(genus if isinstance(genus, str) else _fmt_q(genus), g) + "-alpha"
        num = f"({nm1})" if isinstance(nm1, str) else _fmt_q(nm1)
        return TableRow(
            label=label,
            F_description=fset,
            B_gamma_description=f"(-inf, {upper}) \\ {fset}",
            schatten_condition=f"p > {num}/({denom})",
        )

    return [
        row("I(r,s)", "{r-1-k}", "r+s", "r+s-1"),
        row("II(2r+e)", "{2r-2-k}", "4r+2e-2", "4r+2e-3"),
        row("III(r)", "{(r-1)/2-k, (r-2)/2-k}", "r+1", "r"),
        row("IV(s)", "{(s-2)/2-k, -k}", "s", "s-1"),
        row("V", "{3-k}", Fraction(12), Fraction(11)),
        row("VI", "{8-k}", Fraction(18), Fraction(17)),
    ]


# Size-parameter columns of the catalog, one row per Cartan family.
CARTAN_FAMILIES: list[dict[str, str]] = [
    {"type": "I(r,s)", "d": "r*s", "a": "2", "b": "s-r", "r": "r", "N": "r+s"},
    {"type": "II(2r+e)", "d": "r*(2r+2e-1)", "a": "4", "b": "2e", "r": "r", "N": "4r+2e-2"},
    {"type": "III(r)", "d": "r*(r+1)/2", "a": "1", "b": "0", "r": "r", "N": "r+1"},
    {"type": "IV(s)", "d": "s", "a": "s-2", "b": "0", "r": "2", "N": "s"},
    {"type": "V", "d": "16", "a": "6", "b": "4", "r": "2", "N": "12"},
    {"type": "VI", "d": "27", "a": "8", "b": "0", "r": "3", "N": "18"},
]
