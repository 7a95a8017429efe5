"""Arrow-diagram patterns and the subdiagram pairing.

An arrow pattern is a Gauss diagram used as a counting template: the
pairing of a pattern A with a diagram D counts the subdiagrams of D that
are order-isomorphic to A (cyclically for closed diagrams, linearly for
long ones), weighted by the signs of the matched chords wherever the
pattern leaves a sign free.  Integer combinations of patterns evaluate
linearly; this realizes the classical Polyak-Viro style formulas, and the
two built-in degree-2 invariants v21/v22 of long virtual knots arise from
the two interleaved two-chord patterns that survive all Reidemeister moves.

Finite-type behaviour under virtualization is tested by
:func:`gpv_alt_sum`, the alternating sum over deletions of a chosen set of
chords (GPV-order).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .diagram import HEAD, TAIL, DiagramError, GaussDiagram, Kind

Invariant = Callable[[GaussDiagram], int]

FREE = "free"


class ArrowError(ValueError):
    """Raised for malformed arrow patterns/polynomials."""


@dataclass(frozen=True)
class ArrowPattern:
    """Ordered endpoint sequence of (chord label, role) with sign constraints.

    ``signs[label]`` is +1, -1 or "free" (default free).  Each label must
    occur exactly once as a tail and once as a head.
    """

    kind: Kind
    endpoints: tuple[tuple[str, str], ...]
    signs: Mapping[str, object] = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        seen: dict[str, set[str]] = {}
        for label, role in self.endpoints:
            if role not in (TAIL, HEAD):
                raise ArrowError(f"label {label}: role must be {TAIL!r} or {HEAD!r}")
            if role in seen.setdefault(label, set()):
                raise ArrowError(f"label {label} appears twice as {role!r}")
            seen[label].add(role)
        for label, roles in seen.items():
            if roles != {TAIL, HEAD}:
                raise ArrowError(f"label {label} is missing a {(({TAIL, HEAD}) - roles).pop()!r} endpoint")
        signs = dict(self.signs or {})
        for label, s in signs.items():
            if label not in seen:
                raise ArrowError(f"sign constraint for unknown label {label}")
            if s not in (1, -1, FREE):
                raise ArrowError(f"label {label}: sign must be +1, -1 or 'free'")
        for label in seen:
            signs.setdefault(label, FREE)
        object.__setattr__(self, "signs", signs)

    @property
    def order(self) -> int:
        return len(self.endpoints) // 2

    def labels(self) -> tuple[str, ...]:
        out: list[str] = []
        for label, _ in self.endpoints:
            if label not in out:
                out.append(label)
        return tuple(out)


@dataclass(frozen=True)
class ArrowPolynomial:
    """Integer combination of arrow patterns of one common kind."""

    terms: tuple[tuple[int, ArrowPattern], ...]

    def __post_init__(self) -> None:
        kinds = {p.kind for _, p in self.terms}
        if len(kinds) > 1:
            raise ArrowError("all terms of an arrow polynomial must share a kind")

    @property
    def kind(self) -> Kind | None:
        return self.terms[0][1].kind if self.terms else None


@dataclass(frozen=True)
class Matching:
    """Injective, order/role/sign-respecting map pattern label -> chord id."""

    assignment: tuple[tuple[str, int], ...]

    def as_dict(self) -> dict[str, int]:
        return dict(self.assignment)


def _subdiagram_sequence(
    diagram: GaussDiagram, chord_ids: Sequence[int]
) -> list[tuple[int, str]]:
    """Endpoint sequence (chord id, role) of a chord subset, in slot order."""
    chosen = set(chord_ids)
    return [
        (c.id, role)
        for slot in range(diagram.slot_count)
        for c, role in [diagram.at(slot)]
        if c.id in chosen
    ]


def _match_sequence(
    pattern: ArrowPattern, seq: Sequence[tuple[int, str]]
) -> dict[str, int] | None:
    """Positionwise label identification, or None when shapes disagree."""
    assign: dict[str, int] = {}
    rev: dict[int, str] = {}
    for (label, role), (cid, drole) in zip(pattern.endpoints, seq):
        if role != drole:
            return None
        if assign.setdefault(label, cid) != cid or rev.setdefault(cid, label) != label:
            return None
    return assign


def embeddings(pattern: ArrowPattern, diagram: GaussDiagram) -> list[Matching]:
    """All matchings of ``pattern`` into ``diagram``.

    One matching per chord subset: closed-kind matching is up to rotation of
    the based circle, and a rotation-symmetric pattern still counts a
    matched subset once (the subdiagram expansion counts subdiagrams, not
    symmetries).
    """
    if pattern.kind != diagram.kind:
        raise ArrowError(f"pattern kind {pattern.kind!r} != diagram kind {diagram.kind!r}")
    k = pattern.order
    out = []
    for subset in itertools.combinations(diagram.chord_ids(), k):
        seq = _subdiagram_sequence(diagram, subset)
        rotations = range(1) if diagram.kind == "long" else range(max(2 * k, 1))
        for r in rotations:
            rotated = seq[r:] + seq[:r]
            assign = _match_sequence(pattern, rotated)
            if assign is None:
                continue
            ok = True
            for label, cid in assign.items():
                want = pattern.signs[label]
                if want != FREE and diagram.chord(cid).sign != want:
                    ok = False
                    break
            if ok:
                out.append(Matching(tuple(sorted(assign.items()))))
                break
    return out


def matching_weight(
    pattern: ArrowPattern, diagram: GaussDiagram, matching: Matching
) -> int:
    """Product of matched chord signs over the pattern's free labels."""
    w = 1
    for label, cid in matching.assignment:
        if pattern.signs[label] == FREE:
            w *= diagram.chord(cid).sign
    return w


def pairing(poly: ArrowPolynomial | ArrowPattern, diagram: GaussDiagram) -> int:
    """Evaluate an arrow polynomial against a diagram.

    A free-signed pattern stands for its sum over sign assignments weighted
    by the product of the signs, so each matching contributes the sign
    product of its free-labelled chords; sign-fixed labels contribute 1.
    """
    if isinstance(poly, ArrowPattern):
        poly = ArrowPolynomial(((1, poly),))
    if poly.kind is not None and poly.kind != diagram.kind:
        raise ArrowError(f"polynomial kind {poly.kind!r} != diagram kind {diagram.kind!r}")
    total = 0
    for coeff, pattern in poly.terms:
        for m in embeddings(pattern, diagram):
            total += coeff * matching_weight(pattern, diagram, m)
    return total


def subdiagram_expand(diagram: GaussDiagram, cap: int = 16) -> list[GaussDiagram]:
    """All 2**n chord-subset subdiagrams (slots renormalized).

    Exists as a small-n oracle for the pairing; the pairing itself never
    expands.
    """
    if diagram.n > cap:
        raise DiagramError(f"subdiagram expansion capped at {cap} chords, got {diagram.n}")
    ids = diagram.chord_ids()
    out = []
    for r in range(len(ids) + 1):
        for keep in itertools.combinations(ids, r):
            out.append(diagram.delete_chords(set(ids) - set(keep)))
    return out


# -- built-in degree-2 invariants ---------------------------------------------
#
# Of the four interleaved two-chord endpoint orders, only the two below are
# unchanged by a parallel R2 pair (the other two count exactly the chord
# pair such a move creates).  Both evaluate to 1 on the long right trefoil
# and to the second Conway coefficient on classical knots; they differ on
# general virtual long knots.

V21_PATTERN = ArrowPattern(
    "long", (("1", TAIL), ("2", HEAD), ("1", HEAD), ("2", TAIL))
)
V22_PATTERN = ArrowPattern(
    "long", (("1", HEAD), ("2", TAIL), ("1", TAIL), ("2", HEAD))
)


def v21(diagram: GaussDiagram) -> int:
    """Degree-2 invariant of long virtual knots (interleaved pattern t1 h2 h1 t2)."""
    if diagram.kind != "long":
        raise DiagramError("v21 is defined for long diagrams")
    return pairing(V21_PATTERN, diagram)


def v22(diagram: GaussDiagram) -> int:
    """Companion degree-2 invariant (interleaved pattern h1 t2 t1 h2)."""
    if diagram.kind != "long":
        raise DiagramError("v22 is defined for long diagrams")
    return pairing(V22_PATTERN, diagram)


# -- GPV-order alternating sums --------------------------------------------------


def gpv_alt_sum(
    invariant: Invariant, diagram: GaussDiagram, chord_ids: Iterable[int]
) -> int:
    """Alternating sum of ``invariant`` over all virtualizations of ``chord_ids``.

    Sum over subsets V of the chosen chords of (-1)**|V| applied to the
    diagram with V deleted.  Vanishing for every set of n+1 chords is the
    defining property of GPV-order <= n.
    """
    ids = sorted(set(chord_ids))
    for cid in ids:
        diagram.chord(cid)
    total = 0
    for r in range(len(ids) + 1):
        for drop in itertools.combinations(ids, r):
            total += (-1) ** r * invariant(diagram.delete_chords(drop))
    return total


# -- JSON interface ---------------------------------------------------------------


def load_arrow_polynomial(data: bytes | str) -> ArrowPolynomial:
    """Parse the arrow-polynomial JSON wire form.

    Schema: ``{"kind": "long"|"closed", "terms": [{"coeff": int,
    "endpoints": [["1","t"], ...], "signs": {"1": "free"|"+"|"-"}}]}``.
    """
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ArrowError(f"arrow polynomial is not valid JSON: {exc}") from None
    if not isinstance(obj, dict) or "kind" not in obj or "terms" not in obj:
        raise ArrowError("arrow polynomial JSON needs 'kind' and 'terms'")
    kind = obj["kind"]
    if kind not in ("long", "closed"):
        raise ArrowError(f"unknown kind {kind!r}")
    terms = []
    for i, term in enumerate(obj["terms"]):
        if not isinstance(term, dict) or "coeff" not in term or "endpoints" not in term:
            raise ArrowError(f"term {i}: needs 'coeff' and 'endpoints'")
        coeff = term["coeff"]
        if not isinstance(coeff, int):
            raise ArrowError(f"term {i}: coeff must be an integer")
        endpoints = []
        for ep in term["endpoints"]:
            if (
                not isinstance(ep, (list, tuple))
                or len(ep) != 2
                or not isinstance(ep[0], str)
            ):
                raise ArrowError(f"term {i}: endpoint {ep!r} must be [label, role]")
            endpoints.append((ep[0], ep[1]))
        signs = {}
        for label, s in (term.get("signs") or {}).items():
            signs[label] = {"+": 1, "-": -1, FREE: FREE}.get(s, s)
        try:
            terms.append((coeff, ArrowPattern(kind, tuple(endpoints), signs)))
        except ArrowError as exc:
            raise ArrowError(f"term {i}: {exc}") from None
    return ArrowPolynomial(tuple(terms))
